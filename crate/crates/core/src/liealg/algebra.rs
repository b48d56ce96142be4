//! Chevalley data for sl(n+1), sp(2n) and the Levi factor gl(n).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Rat, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// sl(n+1), Cartan basis h_k = E_kk − E_{k+1,k+1}.
    A,
    /// sp(2n), Cartan basis h̃_i = E_ii − E_{n+i,n+i}.
    C,
    /// gl(n), Cartan basis E_kk. Only used for Levi factors.
    Gl,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.trim() {
            "A" | "a" | "sl" => Ok(Family::A),
            "C" | "c" | "sp" => Ok(Family::C),
            "gl" | "GL" => Ok(Family::Gl),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }

    /// Tag used when weights are serialized.
    pub fn basis_tag(self) -> &'static str {
        match self {
            Family::A => "h",
            Family::C => "htilde",
            Family::Gl => "E",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::C => "C",
            Family::Gl => "gl",
        })
    }
}

/// Values of a weight on the fixed Cartan basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<Rat>);

impl Weight {
    pub fn zero(n: usize) -> Weight {
        Weight(vec![Rat::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Weight {
        Weight(v.iter().map(|&x| Rat::from_int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn pretty(&self) -> String {
        let v: Vec<String> = self.0.iter().map(Rat::pretty).collect();
        format!("({})", v.join(", "))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        assert_eq!(self.len(), o.len());
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        assert_eq!(self.len(), o.len());
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// Index into the Cartan basis.
    Cartan(usize),
    /// Index into `roots`.
    Root(usize),
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub name: String,
    pub matrix: RatMatrix,
    pub weight: Weight,
    pub kind: BasisKind,
}

#[derive(Clone, Debug)]
pub struct Root {
    pub weight: Weight,
    /// Basis label of the root vector.
    pub label: usize,
    /// Root index of −α.
    pub opposite: usize,
    /// h_α in Cartan-basis coordinates, normalized by α(h_α) = 2.
    pub coroot: Vec<Rat>,
    /// Coordinates in the simple roots.
    pub simple_coords: Vec<i64>,
    pub positive: bool,
}

/// Roots, coroots, Chevalley matrices and structure constants.
#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    pub family: Family,
    pub n: usize,
    /// Size of the defining matrices.
    pub size: usize,
    pub basis: Vec<BasisElement>,
    pub roots: Vec<Root>,
    /// Root indices of the simple roots, in order α_1, …, α_r.
    pub simple: Vec<usize>,
    pub rho: Weight,
    /// Fundamental weights ω_1, …, ω_r.
    pub fundamental: Vec<Weight>,
    bracket: Vec<Vec<Vec<(usize, Rat)>>>,
    names: HashMap<String, usize>,
    extract_rows: Vec<(usize, usize)>,
    extract_inv: RatMatrix,
}

fn unit(n: usize, i: usize, j: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    m[(i, j)] = Rat::one();
    m
}

fn commutator(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.mul(b).sub(&b.mul(a))
}

struct Raw {
    name: String,
    matrix: RatMatrix,
    cartan: bool,
}

/// Build sl(n+1) (`A`), sp(2n) (`C`) or gl(n) (`Gl`).
pub fn build_algebra(family: Family, n: usize) -> Result<LieAlgebraData> {
    if n == 0 {
        return Err(Error::Invalid("rank must be at least 1".into()));
    }
    let mut raw: Vec<Raw> = Vec::new();
    let size;
    let mut simple_pairs: Vec<String> = Vec::new();
    match family {
        Family::A => {
            size = n + 1;
            for k in 0..n {
                raw.push(Raw {
                    name: format!("h{}", k + 1),
                    matrix: unit(size, k, k).sub(&unit(size, k + 1, k + 1)),
                    cartan: true,
                });
            }
            for i in 0..size {
                for j in 0..size {
                    if i != j {
                        raw.push(Raw { name: format!("E{},{}", i + 1, j + 1), matrix: unit(size, i, j), cartan: false });
                    }
                }
            }
            for k in 0..n {
                simple_pairs.push(format!("E{},{}", k + 1, k + 2));
            }
        }
        Family::Gl => {
            size = n;
            for k in 0..n {
                raw.push(Raw { name: format!("E{},{}", k + 1, k + 1), matrix: unit(size, k, k), cartan: true });
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        raw.push(Raw { name: format!("E{},{}", i + 1, j + 1), matrix: unit(size, i, j), cartan: false });
                    }
                }
            }
            for k in 0..n.saturating_sub(1) {
                simple_pairs.push(format!("E{},{}", k + 1, k + 2));
            }
        }
        Family::C => {
            size = 2 * n;
            for i in 0..n {
                raw.push(Raw {
                    name: format!("ht{}", i + 1),
                    matrix: unit(size, i, i).sub(&unit(size, n + i, n + i)),
                    cartan: true,
                });
            }
            // e_{ε_i−ε_k} = E_{i,k} − E_{n+k,n+i}
            for i in 0..n {
                for k in 0..n {
                    if i != k {
                        raw.push(Raw {
                            name: format!("e(e{}-e{})", i + 1, k + 1),
                            matrix: unit(size, i, k).sub(&unit(size, n + k, n + i)),
                            cartan: false,
                        });
                    }
                }
            }
            // e_{ε_i+ε_j} = E_{i,n+j} + E_{j,n+i} and e_{−ε_i−ε_j} = −E_{n+i,j} − E_{n+j,i};
            // for i = j these read 2E_{i,n+i} and −2E_{n+i,i}.
            for i in 0..n {
                for j in i..n {
                    let up = unit(size, i, n + j).add(&unit(size, j, n + i));
                    let down = unit(size, n + i, j).add(&unit(size, n + j, i)).scale(&Rat::from_int(-1));
                    let (pn, mn) = if i == j {
                        (format!("e(2e{})", i + 1), format!("e(-2e{})", i + 1))
                    } else {
                        (format!("e(e{}+e{})", i + 1, j + 1), format!("e(-e{}-e{})", i + 1, j + 1))
                    };
                    raw.push(Raw { name: pn, matrix: up, cartan: false });
                    raw.push(Raw { name: mn, matrix: down, cartan: false });
                }
            }
            for k in 0..n - 1 {
                simple_pairs.push(format!("e(e{}-e{})", k + 1, k + 2));
            }
            simple_pairs.push(format!("e(2e{n})"));
        }
    }

    let cartan: Vec<usize> = (0..raw.len()).filter(|&i| raw[i].cartan).collect();
    let cdim = cartan.len();

    // Root weights from [H, x] = α(H) x.
    let mut weights = Vec::with_capacity(raw.len());
    for r in &raw {
        if r.cartan {
            weights.push(Weight::zero(cdim));
            continue;
        }
        let (pi, pj) = first_nonzero(&r.matrix);
        let mut w = Vec::with_capacity(cdim);
        for &c in &cartan {
            let br = commutator(&raw[c].matrix, &r.matrix);
            let val = &br[(pi, pj)] / &r.matrix[(pi, pj)];
            if br != r.matrix.scale(&val) {
                return Err(Error::Invalid(format!("{} is not a weight vector", r.name)));
            }
            w.push(val);
        }
        weights.push(Weight(w));
    }

    // Coordinate extraction: independent entry positions of the basis.
    let dim = raw.len();
    let mut bt = RatMatrix::zeros(dim, size * size);
    for (a, r) in raw.iter().enumerate() {
        for i in 0..size {
            for j in 0..size {
                bt[(a, i * size + j)] = r.matrix[(i, j)].clone();
            }
        }
    }
    let piv = bt.rref().pivots;
    if piv.len() != dim {
        return Err(Error::Invalid("basis matrices are linearly dependent".into()));
    }
    let extract_rows: Vec<(usize, usize)> = piv.iter().map(|&p| (p / size, p % size)).collect();
    let sub = bt.select_cols(&piv).transpose();
    let extract_inv = sub.inverse().expect("pivot submatrix is invertible");

    let names: HashMap<String, usize> = raw.iter().enumerate().map(|(i, r)| (r.name.clone(), i)).collect();
    let mut alg = LieAlgebraData {
        family,
        n,
        size,
        basis: Vec::new(),
        roots: Vec::new(),
        simple: Vec::new(),
        rho: Weight::zero(cdim),
        fundamental: Vec::new(),
        bracket: Vec::new(),
        names,
        extract_rows,
        extract_inv,
    };

    // Roots, with kinds pointing back.
    let mut kinds = Vec::with_capacity(dim);
    let mut ci = 0;
    for (a, r) in raw.iter().enumerate() {
        if r.cartan {
            kinds.push(BasisKind::Cartan(ci));
            ci += 1;
        } else {
            kinds.push(BasisKind::Root(alg.roots.len()));
            alg.roots.push(Root {
                weight: weights[a].clone(),
                label: a,
                opposite: usize::MAX,
                coroot: Vec::new(),
                simple_coords: Vec::new(),
                positive: false,
            });
        }
    }
    alg.basis = raw
        .into_iter()
        .zip(weights)
        .zip(kinds)
        .map(|((r, w), k)| BasisElement { name: r.name, matrix: r.matrix, weight: w, kind: k })
        .collect();

    let nroots = alg.roots.len();
    for r in 0..nroots {
        let neg = -&alg.roots[r].weight;
        let opp = (0..nroots).find(|&s| alg.roots[s].weight == neg).expect("root system closed under negation");
        alg.roots[r].opposite = opp;
        let e = &alg.basis[alg.roots[r].label].matrix;
        let f = &alg.basis[alg.roots[opp].label].matrix;
        let hc = alg.expand(&commutator(e, f))?;
        let mut h = vec![Rat::zero(); cdim];
        for (lab, c) in hc {
            match alg.basis[lab].kind {
                BasisKind::Cartan(i) => h[i] = c,
                BasisKind::Root(_) => return Err(Error::Invalid("[e_α, e_−α] left the Cartan".into())),
            }
        }
        let val: Rat = h.iter().zip(&alg.roots[r].weight.0).map(|(a, b)| a * b).sum();
        let s = Rat::from_int(2) / val;
        alg.roots[r].coroot = h.iter().map(|x| x * &s).collect();
    }

    alg.simple = simple_pairs.iter().map(|nm| alg.root_of_label(alg.names[nm]).unwrap()).collect();
    let rank = alg.simple.len();
    let simple_mat = RatMatrix::from_cols(
        &alg.simple.iter().map(|&s| alg.roots[s].weight.0.clone()).collect::<Vec<_>>(),
        cdim,
    );
    for r in 0..nroots {
        let rhs = RatMatrix::from_cols(&[alg.roots[r].weight.0.clone()], cdim);
        let x = simple_mat.solve(&rhs).ok_or_else(|| Error::Invalid("root outside the simple root span".into()))?;
        let coords: Vec<i64> = (0..rank)
            .map(|i| x[(i, 0)].to_i64().ok_or_else(|| Error::Invalid("non-integral root coordinates".into())))
            .collect::<Result<_>>()?;
        let pos = coords.iter().all(|&c| c >= 0);
        let neg = coords.iter().all(|&c| c <= 0);
        if !(pos || neg) {
            return Err(Error::Invalid("root with mixed-sign coordinates".into()));
        }
        alg.roots[r].simple_coords = coords;
        alg.roots[r].positive = pos;
    }

    // ρ as half the sum of positive roots.
    let mut rho = Weight::zero(cdim);
    for r in alg.roots.iter().filter(|r| r.positive) {
        rho = &rho + &r.weight;
    }
    alg.rho = rho.scale(&Rat::new(1, 2));

    alg.fundamental = match family {
        Family::Gl => (1..n)
            .map(|k| Weight((0..n).map(|i| if i < k { Rat::one() } else { Rat::zero() }).collect()))
            .collect(),
        _ => {
            let cmat = RatMatrix::from_rows(alg.simple.iter().map(|&s| alg.roots[s].coroot.clone()).collect());
            let inv = cmat.inverse().ok_or_else(|| Error::Invalid("singular coroot matrix".into()))?;
            (0..rank).map(|i| Weight(inv.col(i))).collect()
        }
    };

    let mut table = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            if a == b {
                continue;
            }
            table[a][b] = alg.expand(&commutator(&alg.basis[a].matrix, &alg.basis[b].matrix))?;
        }
    }
    alg.bracket = table;
    Ok(alg)
}

fn first_nonzero(m: &RatMatrix) -> (usize, usize) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() {
                return (i, j);
            }
        }
    }
    panic!("zero basis matrix")
}

impl LieAlgebraData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the Cartan subalgebra (= number of polynomial variables).
    pub fn cartan_dim(&self) -> usize {
        self.basis.iter().filter(|b| matches!(b.kind, BasisKind::Cartan(_))).count()
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn label(&self, name: &str) -> Result<usize> {
        self.names.get(name).copied().ok_or_else(|| Error::Invalid(format!("no basis element named {name:?}")))
    }

    pub fn name(&self, label: usize) -> &str {
        &self.basis[label].name
    }

    pub fn cartan_labels(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&a| matches!(self.basis[a].kind, BasisKind::Cartan(_))).collect()
    }

    pub fn root_of_label(&self, label: usize) -> Option<usize> {
        match self.basis[label].kind {
            BasisKind::Root(r) => Some(r),
            BasisKind::Cartan(_) => None,
        }
    }

    pub fn is_cartan(&self, label: usize) -> bool {
        matches!(self.basis[label].kind, BasisKind::Cartan(_))
    }

    pub fn weight_of(&self, label: usize) -> &Weight {
        &self.basis[label].weight
    }

    /// Root-lattice coordinates of a basis element's weight (zeros for Cartan).
    pub fn lattice_coords(&self, label: usize) -> Vec<i64> {
        match self.basis[label].kind {
            BasisKind::Root(r) => self.roots[r].simple_coords.clone(),
            BasisKind::Cartan(_) => vec![0; self.rank()],
        }
    }

    /// Label of e_{−α} for a root vector, of the same element for Cartan labels.
    pub fn opposite_label(&self, label: usize) -> usize {
        match self.basis[label].kind {
            BasisKind::Root(r) => self.roots[self.roots[r].opposite].label,
            BasisKind::Cartan(_) => label,
        }
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.roots[self.simple[i]]
    }

    /// Label of e_{α_i} (0-based i).
    pub fn simple_label(&self, i: usize) -> usize {
        self.simple_root(i).label
    }

    /// Label of e_{−α_i} (0-based i).
    pub fn simple_neg_label(&self, i: usize) -> usize {
        self.roots[self.simple_root(i).opposite].label
    }

    /// Weight of Σ c_i α_i.
    pub fn lattice_weight(&self, c: &[i64]) -> Weight {
        let mut w = Weight::zero(self.cartan_dim());
        for (i, &k) in c.iter().enumerate() {
            if k != 0 {
                w = &w + &self.simple_root(i).weight.scale(&Rat::from_int(k));
            }
        }
        w
    }

    /// Expansion of an arbitrary matrix in the basis; errors if it is outside the span.
    pub fn expand(&self, x: &RatMatrix) -> Result<Vec<(usize, Rat)>> {
        let v: Vec<Rat> = self.extract_rows.iter().map(|&(i, j)| x[(i, j)].clone()).collect();
        let c = self.extract_inv.mul_vec(&v);
        let mut recon = RatMatrix::zeros(self.size, self.size);
        for (a, ca) in c.iter().enumerate() {
            if !ca.is_zero() {
                recon = recon.add(&self.basis[a].matrix.scale(ca));
            }
        }
        if &recon != x {
            return Err(Error::Invalid("matrix is not in the algebra".into()));
        }
        Ok(c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
    }

    /// Matrix of Σ c_a x_a.
    pub fn combine(&self, terms: &[(usize, Rat)]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.size, self.size);
        for (a, c) in terms {
            m = m.add(&self.basis[*a].matrix.scale(c));
        }
        m
    }

    /// Structure constants: [x_a, x_b] = Σ c x_c.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Rat)] {
        &self.bracket[a][b]
    }

    /// ⟨λ, h_α⟩.
    pub fn pair(&self, lambda: &Weight, root: usize) -> Rat {
        lambda.0.iter().zip(&self.roots[root].coroot).map(|(a, b)| a * b).sum()
    }

    /// ⟨λ, h_i⟩ for the i-th simple coroot (0-based).
    pub fn pair_simple(&self, lambda: &Weight, i: usize) -> Rat {
        self.pair(lambda, self.simple[i])
    }

    /// Coordinates (⟨λ, h_1⟩, …, ⟨λ, h_r⟩).
    pub fn to_fundamental(&self, lambda: &Weight) -> Vec<Rat> {
        (0..self.rank()).map(|i| self.pair_simple(lambda, i)).collect()
    }

    /// Σ a_i ω_i. For gl(n) this covers only the sl-part; see [`Self::gl_weight`].
    pub fn from_fundamental(&self, a: &[Rat]) -> Weight {
        assert_eq!(a.len(), self.rank());
        let mut w = Weight::zero(self.cartan_dim());
        for (ai, om) in a.iter().zip(&self.fundamental) {
            w = &w + &om.scale(ai);
        }
        w
    }

    pub fn from_fundamental_ints(&self, a: &[i64]) -> Weight {
        self.from_fundamental(&a.iter().map(|&x| Rat::from_int(x)).collect::<Vec<_>>())
    }

    pub fn simple_reflection(&self, i: usize, lambda: &Weight) -> Weight {
        let r = self.simple[i];
        let k = self.pair(lambda, r);
        lambda - &self.roots[r].weight.scale(&k)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&r| self.roots[r].positive)
    }

    /// λ ∈ P: ⟨λ, h_α⟩ ∈ ℤ for every root.
    pub fn is_integral(&self, lambda: &Weight) -> bool {
        (0..self.roots.len()).all(|r| self.pair(lambda, r).is_integer())
    }

    /// λ ∈ P⁺.
    pub fn is_dominant_integral(&self, lambda: &Weight) -> bool {
        (0..self.rank()).all(|i| {
            let v = self.pair_simple(lambda, i);
            v.is_integer() && !v.is_negative()
        })
    }

    /// λ ∈ D: ⟨λ, h_α⟩ ∉ ℤ_{≤−1} for α > 0.
    pub fn in_d(&self, lambda: &Weight) -> bool {
        self.positive_roots().all(|r| {
            let v = self.pair(lambda, r);
            !(v.is_integer() && v.is_negative())
        })
    }

    /// λ + ρ is regular.
    pub fn is_regular(&self, lambda: &Weight) -> bool {
        let lr = lambda + &self.rho;
        self.positive_roots().all(|r| !self.pair(&lr, r).is_zero())
    }

    /// Cartan matrix entry α_j(h_i).
    pub fn cartan_entry(&self, i: usize, j: usize) -> Rat {
        self.pair(&self.simple_root(j).weight, self.simple[i])
    }

    /// The Cartan element with the given coordinates, as a matrix.
    pub fn cartan_matrix_of(&self, coords: &[Rat]) -> RatMatrix {
        let labels = self.cartan_labels();
        self.combine(&labels.iter().zip(coords).map(|(&l, c)| (l, c.clone())).collect::<Vec<_>>())
    }

    /// Cartan coordinates of a diagonal matrix lying in h.
    pub fn cartan_coords_of(&self, m: &RatMatrix) -> Result<Vec<Rat>> {
        let mut out = vec![Rat::zero(); self.cartan_dim()];
        for (a, c) in self.expand(m)? {
            match self.basis[a].kind {
                BasisKind::Cartan(i) => out[i] = c,
                BasisKind::Root(_) => return Err(Error::Invalid("element is not in the Cartan subalgebra".into())),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    #[test]
    fn sl2_basis() {
        let a = build_algebra(Family::A, 1).unwrap();
        let names: Vec<&str> = a.basis.iter().map(|b| b.name.as_str()).collect();
        assert_eq!(names, vec!["h1", "E1,2", "E2,1"]);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.rho, Weight::from_ints(&[1]));
    }

    #[test]
    fn dimension_counts() {
        let a2 = build_algebra(Family::A, 2).unwrap();
        assert_eq!(a2.dim(), 8);
        assert_eq!(a2.roots.len(), 6);
        let c3 = build_algebra(Family::C, 3).unwrap();
        assert_eq!(c3.dim(), 21);
        assert_eq!(c3.roots.len(), 18);
        let g3 = build_algebra(Family::Gl, 3).unwrap();
        assert_eq!(g3.dim(), 9);
        assert_eq!(g3.rank(), 2);
    }

    #[test]
    fn sp4_long_root_bracket() {
        let c = build_algebra(Family::C, 2).unwrap();
        let e = c.label("e(2e1)").unwrap();
        let f = c.label("e(-2e1)").unwrap();
        // [2E_{1,3}, −2E_{3,1}] = −4(E_11 − E_33) = −4 h̃_1
        assert_eq!(c.bracket(e, f), &[(c.label("ht1").unwrap(), q(-4, 1))]);
        assert_eq!(c.weight_of(e), &Weight::from_ints(&[2, 0]));
    }

    #[test]
    fn bracket_table_matches_matrices() {
        for (fam, n) in [(Family::A, 1), (Family::A, 3), (Family::C, 2), (Family::C, 3), (Family::Gl, 2)] {
            let g = build_algebra(fam, n).unwrap();
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    let m = commutator(&g.basis[a].matrix, &g.basis[b].matrix);
                    assert_eq!(g.combine(g.bracket(a, b)), m);
                    // [g_α, g_β] ⊆ g_{α+β}
                    let w = &g.basis[a].weight + &g.basis[b].weight;
                    for (c, _) in g.bracket(a, b) {
                        assert_eq!(g.basis[*c].weight, w);
                    }
                }
            }
        }
    }

    #[test]
    fn matrices_in_the_algebra() {
        let a = build_algebra(Family::A, 3).unwrap();
        assert!(a.basis.iter().all(|b| b.matrix.trace().is_zero()));
        let c = build_algebra(Family::C, 3).unwrap();
        // X^T J + J X = 0 with J = [[0, I], [−I, 0]]
        let n = 3;
        let mut j = RatMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            j[(i, n + i)] = Rat::one();
            j[(n + i, i)] = -Rat::one();
        }
        for b in &c.basis {
            let lhs = b.matrix.transpose().mul(&j).add(&j.mul(&b.matrix));
            assert!(lhs.is_zero(), "{} is not symplectic", b.name);
        }
    }

    #[test]
    fn cartan_matrices() {
        let a = build_algebra(Family::A, 3).unwrap();
        let want = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]];
        let c = build_algebra(Family::C, 3).unwrap();
        // α_j(h_i): type C_3 has the long simple root last.
        let want_c = [[2, -1, 0], [-1, 2, -2], [0, -1, 2]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a.cartan_entry(i, j), q(want[i][j], 1));
                assert_eq!(c.pair(&c.simple_root(j).weight, c.simple[i]), q(want_c[i][j], 1));
            }
        }
    }

    #[test]
    fn fundamental_round_trip() {
        for (fam, n) in [(Family::A, 3), (Family::C, 3)] {
            let g = build_algebra(fam, n).unwrap();
            let lam = Weight(vec![q(1, 2), q(-3, 1), q(2, 7)]);
            let f = g.to_fundamental(&lam);
            assert_eq!(g.from_fundamental(&f), lam);
            let s = g.to_fundamental(&g.rho);
            assert!(s.iter().all(Rat::is_one));
        }
    }

    #[test]
    fn type_c_omega_plus_coordinates() {
        let c = build_algebra(Family::C, 2).unwrap();
        // ω_2 in h̃-coordinates is (1, 1); ω⁺ = −ω_2/2.
        assert_eq!(c.fundamental[1], Weight::from_ints(&[1, 1]));
        assert_eq!(c.fundamental[0], Weight::from_ints(&[1, 0]));
    }
}
