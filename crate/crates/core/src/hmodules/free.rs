//! Modules free of finite rank over U(h), stored as one polynomial matrix per
//! basis element.
//!
//! For x of weight α, x·(p·v_j) = σ_α(p)·Σ_i (A_x)_{ij} v_i. Composing gives
//! the bracket condition A_{[x,y]} = A_x σ_α(A_y) − A_y σ_β(A_x).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{Poly, PolyMatrix, Rat};
use crate::liealg::{build_algebra, default_central_elements, gelfand_invariant, Family, LieAlgebraData, UEAWord};

/// Provenance of a module.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ModuleMeta {
    pub constructor: String,
    pub params: Value,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct FreeHModule {
    pub algebra: Arc<LieAlgebraData>,
    pub rank: usize,
    /// A_x per basis label.
    pub action: Vec<PolyMatrix>,
    pub meta: ModuleMeta,
}

#[derive(Clone, Debug)]
pub struct BracketReport {
    /// ((a, b), A_a σ(A_b) − A_b σ(A_a) − A_{[a,b]}) for every pair with a nonzero residual.
    pub residuals: Vec<((usize, usize), PolyMatrix)>,
    /// Cartan labels whose matrix is not h·I.
    pub cartan_failures: Vec<usize>,
    pub pairs_checked: usize,
    pub pass: bool,
}

/// Value of a central element on a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CentralValue {
    Scalar(Rat),
    /// Not c·I; carries the deviation Z − Z₀₀·I.
    NotScalar(String),
}

impl CentralValue {
    pub fn scalar(&self) -> Option<&Rat> {
        match self {
            CentralValue::Scalar(c) => Some(c),
            CentralValue::NotScalar(_) => None,
        }
    }
}

pub type Fingerprint = BTreeMap<usize, CentralValue>;

impl FreeHModule {
    pub fn new(algebra: Arc<LieAlgebraData>, rank: usize, action: Vec<PolyMatrix>, meta: ModuleMeta) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::Dimension(format!("{} action matrices for a {}-dimensional algebra", action.len(), algebra.dim())));
        }
        let nv = algebra.cartan_dim();
        if action.iter().any(|m| m.rows() != rank || m.cols() != rank || m.nvars() != nv) {
            return Err(Error::Dimension("action matrix of the wrong shape".into()));
        }
        Ok(FreeHModule { algebra, rank, action, meta })
    }

    pub fn nvars(&self) -> usize {
        self.algebra.cartan_dim()
    }

    /// Offsets of σ_α for the weight of a basis element.
    pub fn shift_of(&self, label: usize) -> &[Rat] {
        &self.algebra.weight_of(label).0
    }

    /// x · Σ_j p_j v_j.
    pub fn act(&self, label: usize, v: &[Poly]) -> Vec<Poly> {
        let a = &self.action[label];
        let off = self.shift_of(label);
        let shifted: Vec<Poly> = v.iter().map(|p| p.shift_unchecked(off)).collect();
        (0..self.rank)
            .map(|i| {
                let mut s = Poly::zero(self.nvars());
                for (j, p) in shifted.iter().enumerate() {
                    if !p.is_zero() && !a[(i, j)].is_zero() {
                        s = &s + &(&a[(i, j)] * p);
                    }
                }
                s
            })
            .collect()
    }

    /// Matrix of a word x_{w_1} ⋯ x_{w_k}: rightmost letter first, P ↦ A_x σ_{α_x}(P).
    pub fn word_matrix(&self, word: &[usize]) -> PolyMatrix {
        let mut cache = HashMap::new();
        self.suffix_matrix(word, &mut cache)
    }

    fn suffix_matrix(&self, w: &[usize], cache: &mut HashMap<Vec<usize>, PolyMatrix>) -> PolyMatrix {
        if w.is_empty() {
            return PolyMatrix::identity(self.rank, self.nvars());
        }
        if let Some(m) = cache.get(w) {
            return m.clone();
        }
        let tail = self.suffix_matrix(&w[1..], cache);
        let m = if tail.is_zero() {
            tail
        } else {
            self.action[w[0]].mul(&tail.shift(self.shift_of(w[0])))
        };
        cache.insert(w.to_vec(), m.clone());
        m
    }

    /// Action matrix of an element of U(g). Suffixes are shared through a cache.
    pub fn uea_matrix(&self, z: &UEAWord) -> PolyMatrix {
        let mut cache = HashMap::new();
        let mut total = PolyMatrix::zeros(self.rank, self.rank, self.nvars());
        for (w, c) in z.terms() {
            let m = self.suffix_matrix(w, &mut cache);
            if !m.is_zero() {
                total = total.add(&m.scale(c));
            }
        }
        total
    }

    /// Matrix of Σ c_a x_a.
    pub fn combine(&self, terms: &[(usize, Rat)]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.rank, self.rank, self.nvars());
        for (a, c) in terms {
            m = m.add(&self.action[*a].scale(c));
        }
        m
    }

    pub fn validate_bracket(&self) -> BracketReport {
        validate_bracket(self)
    }

    /// Values of the given Gelfand invariants.
    pub fn central_fingerprint(&self, degrees: &[usize]) -> Result<Fingerprint> {
        let mut out = BTreeMap::new();
        for &k in degrees {
            let z = gelfand_invariant(&self.algebra, k)?;
            out.insert(k, central_value(&self.uea_matrix(&z)));
        }
        Ok(out)
    }

    /// Fingerprint over the default degrees 2, …, min(N, 4).
    pub fn default_fingerprint(&self) -> Result<Fingerprint> {
        let degrees: Vec<usize> = (2..=self.algebra.size.min(4)).collect();
        self.central_fingerprint(&degrees)
    }

    /// Structured dump: action matrices in canonical polynomial text.
    pub fn dump(&self) -> Value {
        let g = &self.algebra;
        let mut action = serde_json::Map::new();
        for a in 0..g.dim() {
            let m = &self.action[a];
            let rows: Vec<Vec<String>> =
                (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_canonical()).collect()).collect();
            action.insert(g.name(a).to_string(), json!(rows));
        }
        let vars: Vec<String> = g.cartan_labels().iter().map(|&l| g.name(l).to_string()).collect();
        json!({
            "algebra": { "family": g.family.to_string(), "n": g.n },
            "rank": self.rank,
            "variables": vars,
            "variable_basis": g.family.basis_tag(),
            "constructor": self.meta.constructor,
            "params": self.meta.params,
            "notes": self.meta.notes,
            "action": action,
        })
    }

    /// Inverse of [`FreeHModule::dump`]. Matrices are taken as given; run
    /// [`validate_bracket`] before trusting them.
    pub fn from_dump(v: &Value) -> Result<FreeHModule> {
        let bad = |m: &str| Error::Parse(format!("module dump: {m}"));
        let alg = v.get("algebra").ok_or_else(|| bad("missing algebra"))?;
        let family = alg.get("family").and_then(Value::as_str).ok_or_else(|| bad("missing family"))?;
        let n = alg.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))? as usize;
        let g = Arc::new(build_algebra(Family::parse(family)?, n)?);
        let rank = v.get("rank").and_then(Value::as_u64).ok_or_else(|| bad("missing rank"))? as usize;
        let table = v.get("action").and_then(Value::as_object).ok_or_else(|| bad("missing action"))?;
        let nv = g.cartan_dim();
        let mut action = Vec::with_capacity(g.dim());
        for a in 0..g.dim() {
            let rows = table.get(g.name(a)).and_then(Value::as_array).ok_or_else(|| bad(&format!("no matrix for {}", g.name(a))))?;
            let mut entries = Vec::with_capacity(rank * rank);
            for row in rows {
                let row = row.as_array().ok_or_else(|| bad("matrix rows must be arrays"))?;
                for e in row {
                    entries.push(Poly::parse(e.as_str().ok_or_else(|| bad("entries must be strings"))?, nv)?);
                }
            }
            if rows.len() != rank || entries.len() != rank * rank {
                return Err(Error::Dimension(format!("matrix for {} is not {rank}×{rank}", g.name(a))));
            }
            action.push(PolyMatrix::from_entries(rank, rank, nv, entries));
        }
        let meta = ModuleMeta {
            constructor: v.get("constructor").and_then(Value::as_str).unwrap_or("dump").to_string(),
            params: v.get("params").cloned().unwrap_or(Value::Null),
            notes: vec!["loaded from a dump".into()],
        };
        FreeHModule::new(g, rank, action, meta)
    }
}

pub fn central_value(z: &PolyMatrix) -> CentralValue {
    if let Some(p) = z.as_scalar() {
        if let Some(c) = p.as_constant() {
            return CentralValue::Scalar(c);
        }
    }
    let c0 = if z.rows() > 0 { z[(0, 0)].clone() } else { Poly::zero(z.nvars()) };
    let dev = z.sub(&PolyMatrix::scalar(z.rows(), &c0));
    CentralValue::NotScalar(format!("{dev:?}"))
}

pub fn validate_bracket(m: &FreeHModule) -> BracketReport {
    let g = &m.algebra;
    let nv = m.nvars();
    let mut cartan_failures = Vec::new();
    for (i, &l) in g.cartan_labels().iter().enumerate() {
        if m.action[l] != PolyMatrix::scalar(m.rank, &Poly::var(nv, i)) {
            cartan_failures.push(l);
        }
    }
    let mut residuals = Vec::new();
    let mut pairs = 0;
    for a in 0..g.dim() {
        for b in a + 1..g.dim() {
            pairs += 1;
            let lhs = m.action[a]
                .mul(&m.action[b].shift(m.shift_of(a)))
                .sub(&m.action[b].mul(&m.action[a].shift(m.shift_of(b))));
            let r = lhs.sub(&m.combine(g.bracket(a, b)));
            if !r.is_zero() {
                residuals.push(((a, b), r));
            }
        }
    }
    let pass = residuals.is_empty() && cartan_failures.is_empty();
    BracketReport { residuals, cartan_failures, pairs_checked: pairs, pass }
}

/// All default invariants as words, cached per algebra by the caller if needed.
pub fn default_invariants(g: &LieAlgebraData) -> Result<Vec<(usize, UEAWord)>> {
    Ok((2..).zip(default_central_elements(g)?).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hmodules::{exponential_module, from_sp2n_m0};
    use crate::exactalg::q;
    use crate::liealg::Weight;

    #[test]
    fn dump_round_trip() {
        let mods = [
            from_sp2n_m0(2).unwrap(),
            exponential_module(&[q(1, 1), q(-1, 2)], &Weight::from_ints(&[1, 0]), &[2]).unwrap(),
        ];
        for m in mods {
            let back = FreeHModule::from_dump(&m.dump()).unwrap();
            assert_eq!(back.action, m.action);
            assert_eq!(back.rank, m.rank);
        }
        let mut d = from_sp2n_m0(2).unwrap().dump();
        d["action"]["e(2e1)"] = json!([["1/1*h1 + 5/1"]]);
        let m = FreeHModule::from_dump(&d).unwrap();
        assert!(!m.validate_bracket().pass);
        d["action"]["e(2e1)"] = json!([["1/1*h1", "0/1"]]);
        assert!(FreeHModule::from_dump(&d).is_err());
    }
}
