//! Windowed tensor and translation functors, and almost-equivalence.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::window::{add, lattice_offset, Probe, Slot, WeightWindow};
use crate::error::{Error, Result};
use crate::exactalg::{Rat, RatMatrix};
use crate::liealg::{
    default_central_elements, dominant_conjugate, irrep, translation_compatible, verma_hc_eigenvalue, FiniteRep,
    UEAWord, Weight,
};

/// Lattice offsets d_k with μ_k = top − Σ d_k α.
fn rep_offsets(w: &WeightWindow, v: &FiniteRep) -> Result<Vec<Slot>> {
    v.weights
        .iter()
        .map(|mu| {
            lattice_offset(&w.lattice_inv, mu, &v.highest_weight)
                .ok_or_else(|| Error::Invalid("finite module weights are not in one root-lattice coset".into()))
        })
        .collect()
}

/// slot(λ) = ⊕_k slot_W(λ − μ_k) ⊗ w_k. Only slots whose every summand is in W
/// are kept; the new base is λ₀ + highest weight of V.
pub fn window_tensor(w: &WeightWindow, v: &FiniteRep) -> Result<WeightWindow> {
    let g = &w.algebra;
    if v.action.len() != g.dim() || v.weights.iter().any(|x| x.len() != g.cartan_dim()) {
        return Err(Error::Incompatible("finite module is over a different algebra".into()));
    }
    let d = rep_offsets(w, v)?;
    let mut dims = BTreeMap::new();
    let mut offsets: HashMap<Slot, Vec<usize>> = HashMap::new();
    for (c, _) in w.slots() {
        let parts: Option<Vec<usize>> = d.iter().map(|dk| w.dim(&add(c, dk))).collect();
        if let Some(parts) = parts {
            let mut off = Vec::with_capacity(parts.len() + 1);
            let mut s = 0;
            for p in &parts {
                off.push(s);
                s += p;
            }
            off.push(s);
            dims.insert(c.clone(), s);
            offsets.insert(c.clone(), off);
        }
    }
    let labels: Vec<usize> = (0..g.dim()).filter(|&a| !g.is_cartan(a)).collect();
    let keys: Vec<Slot> = dims.keys().cloned().collect();
    let maps: HashMap<(usize, Slot), RatMatrix> = keys
        .par_iter()
        .flat_map_iter(|c| {
            let mut out = Vec::new();
            'label: for &a in &labels {
                let to = add(c, &g.lattice_coords(a));
                let Some(&dt) = dims.get(&to) else { continue };
                let (oc, ot) = (&offsets[c], &offsets[&to]);
                let mut m = RatMatrix::zeros(dt, dims[c]);
                for (k, dk) in d.iter().enumerate() {
                    let Some((x, _)) = w.map(a, &add(c, dk)) else { continue 'label };
                    m.set_block(ot[k], oc[k], &x);
                    for l in 0..v.dim {
                        let coef = &v.action[a][(l, k)];
                        if !coef.is_zero() {
                            let n = oc[k + 1] - oc[k];
                            let cur = m.block(ot[l], oc[k], n, n);
                            m.set_block(ot[l], oc[k], &cur.add(&RatMatrix::scalar(n, coef)));
                        }
                    }
                }
                out.push(((a, c.clone()), m));
            }
            out
        })
        .collect();
    let base = &w.base + &v.highest_weight;
    let mut t = WeightWindow::from_parts(g.clone(), base, dims, maps)?;
    t.degree_hint = w.degree_hint.clone();
    Ok(t)
}

/// Σ_μ tr(u₁|slot_W(λ − μ)) · tr(u₂|V_μ) for weight-zero words u₁, u₂, at slot
/// c of `window_tensor(w, v)`.
pub fn split_trace(w: &WeightWindow, v: &FiniteRep, u1: &[usize], u2: &[usize], c: &[i64]) -> Result<Rat> {
    let g = &w.algebra;
    if !UEAWord::word_weight(g, u1).is_zero() || !UEAWord::word_weight(g, u2).is_zero() {
        return Err(Error::NotWeightZero("split probe".into()));
    }
    let d = rep_offsets(w, v)?;
    let mut vm = RatMatrix::identity(v.dim);
    for &x in u2.iter().rev() {
        vm = v.action[x].mul(&vm);
    }
    let mut total = Rat::zero();
    for (_, idx) in v.weight_spaces() {
        let tv: Rat = idx.iter().map(|&i| vm[(i, i)].clone()).sum();
        if tv.is_zero() {
            continue;
        }
        let (m, _) = w.compose(u1, &add(c, &d[idx[0]]))?;
        total += &(m.trace() * tv);
    }
    Ok(total)
}

/// tr(u | slot c of W ⊗ V) through Δ(x₁⋯x_k) = Π (x_i ⊗ 1 + 1 ⊗ x_i): only
/// splits with both halves of weight zero contribute to a trace.
pub fn coproduct_trace(w: &WeightWindow, v: &FiniteRep, word: &[usize], c: &[i64]) -> Result<Rat> {
    let g = &w.algebra;
    let k = word.len();
    if k > 20 {
        return Err(Error::Invalid("word too long for subset expansion".into()));
    }
    let mut total = Rat::zero();
    for mask in 0u32..(1 << k) {
        let (mut u1, mut u2) = (Vec::new(), Vec::new());
        for (i, &x) in word.iter().enumerate() {
            if mask & (1 << i) != 0 {
                u1.push(x);
            } else {
                u2.push(x);
            }
        }
        if UEAWord::word_weight(g, &u1).is_zero() && UEAWord::word_weight(g, &u2).is_zero() {
            total += &split_trace(w, v, &u1, &u2, c)?;
        }
    }
    Ok(total)
}

/// Matrix of a weight-zero element at a slot; `None` if some word leaves the window.
fn slot_action(w: &WeightWindow, z: &UEAWord, c: &[i64]) -> Option<RatMatrix> {
    let d = w.dim(c)?;
    let mut m = RatMatrix::zeros(d, d);
    for (word, coef) in z.terms() {
        let (x, _) = w.compose(word, c).ok()?;
        m = m.add(&x.scale(coef));
    }
    Some(m)
}

fn vstack(ms: &[RatMatrix]) -> RatMatrix {
    let cols = ms.first().map_or(0, |m| m.cols());
    let rows: Vec<Vec<Rat>> = ms.iter().flat_map(|m| (0..m.rows()).map(|i| m.row(i))).collect();
    if rows.is_empty() {
        return RatMatrix::zeros(0, cols);
    }
    RatMatrix::from_rows(rows)
}

/// Basis (as columns) of ∩_k ker(Z_k − c_k)^{dim}.
fn generalized_eigenspace(zs: &[RatMatrix], cs: &[Rat]) -> RatMatrix {
    let d = zs.first().map_or(0, |z| z.rows());
    if d == 0 {
        return RatMatrix::zeros(0, 0);
    }
    let powers: Vec<RatMatrix> =
        zs.iter().zip(cs).map(|(z, c)| z.sub(&RatMatrix::scalar(d, c)).pow(d as u32)).collect();
    let k = vstack(&powers).kernel();
    if k.is_empty() {
        return RatMatrix::zeros(d, 0);
    }
    RatMatrix::from_cols(&k, d)
}

#[derive(Clone, Debug)]
pub struct Translation {
    pub window: WeightWindow,
    /// Highest weight of the finite module tensored in.
    pub nu: Weight,
    /// Slot dimension of W ⊗ L(ν) before projecting.
    pub tensor_dims: BTreeMap<Slot, usize>,
    /// Generalized-eigenspace dimension per central character χ_{μ+ν'}, ν' a weight of L(ν).
    pub blocks: BTreeMap<Slot, Vec<(Weight, usize)>>,
}

impl Translation {
    /// Whether the character blocks add up to the tensor slot dimension everywhere.
    pub fn bookkeeping_ok(&self) -> bool {
        self.blocks.iter().all(|(c, b)| b.iter().map(|x| x.1).sum::<usize>() == self.tensor_dims[c])
    }
}

/// T_μ^λ on a window: (W ⊗ L(ν))^{χ_λ} with ν the dominant conjugate of λ − μ.
/// W must have generalized central character χ_μ on every slot where the
/// invariants are defined. The output keeps the slots where the projection is.
pub fn window_translate(w: &WeightWindow, mu: &Weight, lambda: &Weight) -> Result<Translation> {
    let g = w.algebra.clone();
    if !translation_compatible(&g, lambda, mu) {
        return Err(Error::Incompatible(format!("{lambda:?} and {mu:?}")));
    }
    let zs = default_central_elements(&g)?;
    let chi_mu: Vec<Rat> = zs.iter().map(|z| verma_hc_eigenvalue(&g, z, mu)).collect::<Result<_>>()?;
    let keys = w.slot_keys();
    let checked: Vec<bool> = keys
        .par_iter()
        .filter_map(|c| {
            let acts: Option<Vec<RatMatrix>> = zs.iter().map(|z| slot_action(w, z, c)).collect();
            acts.map(|a| generalized_eigenspace(&a, &chi_mu).cols() == w.dim(c).unwrap())
        })
        .collect();
    if checked.is_empty() {
        return Err(Error::OutsideWindow("no slot supports the central elements".into()));
    }
    if checked.iter().any(|ok| !ok) {
        return Err(Error::FingerprintMismatch(format!("window is not of central character χ_{mu:?}")));
    }
    let (nu, _) = dominant_conjugate(&g, &(lambda - mu));
    let v = irrep(&g, &nu)?;
    let t = window_tensor(w, &v)?;
    let chi_lambda: Vec<Rat> = zs.iter().map(|z| verma_hc_eigenvalue(&g, z, lambda)).collect::<Result<_>>()?;
    // characters that can occur in W ⊗ L(ν), deduplicated by their values
    let mut chars: Vec<(Weight, Vec<Rat>)> = Vec::new();
    for wt in v.weight_spaces().keys() {
        let rep = mu + wt;
        let vals: Vec<Rat> = zs.iter().map(|z| verma_hc_eigenvalue(&g, z, &rep)).collect::<Result<_>>()?;
        if !chars.iter().any(|(_, x)| *x == vals) {
            chars.push((rep, vals));
        }
    }
    let tkeys = t.slot_keys();
    let projected: Vec<(Slot, RatMatrix, Vec<(Weight, usize)>)> = tkeys
        .par_iter()
        .filter_map(|c| {
            let acts: Vec<RatMatrix> = zs.iter().map(|z| slot_action(&t, z, c)).collect::<Option<_>>()?;
            let blocks = chars.iter().map(|(r, vals)| (r.clone(), generalized_eigenspace(&acts, vals).cols())).collect();
            Some((c.clone(), generalized_eigenspace(&acts, &chi_lambda), blocks))
        })
        .collect();
    let basis: HashMap<Slot, RatMatrix> = projected.iter().map(|(c, b, _)| (c.clone(), b.clone())).collect();
    let mut maps = HashMap::new();
    for (c, b, _) in &projected {
        for a in (0..g.dim()).filter(|&a| !g.is_cartan(a)) {
            let Some((x, to)) = t.map(a, c) else { continue };
            let Some(bt) = basis.get(&to) else { continue };
            let img = x.mul(b);
            let m = if bt.cols() == 0 {
                if !img.is_zero() {
                    return Err(Error::Invalid("projection is not stable under the action".into()));
                }
                RatMatrix::zeros(0, b.cols())
            } else {
                bt.solve(&img).ok_or_else(|| Error::Invalid("projection is not stable under the action".into()))?
            };
            maps.insert((a, c.clone()), m);
        }
    }
    let dims = projected.iter().map(|(c, b, _)| (c.clone(), b.cols())).collect();
    let window = WeightWindow::from_parts(g.clone(), t.base.clone(), dims, maps)?;
    Ok(Translation {
        window,
        nu,
        tensor_dims: projected.iter().map(|(c, _, _)| (c.clone(), t.dim(c).unwrap())).collect(),
        blocks: projected.into_iter().map(|(c, _, b)| (c, b)).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    /// Slots of the first window where some probe disagrees.
    pub exceptional: BTreeSet<Slot>,
    pub probes: Vec<String>,
    pub compared_slots: usize,
    pub threshold: usize,
}

impl EquivalenceVerdict {
    pub fn to_json(&self, w: &WeightWindow) -> Value {
        let exc: Vec<Weight> = self.exceptional.iter().map(|c| w.weight(c)).collect();
        json!({
            "equivalent": self.equivalent,
            "evidence_only": true,
            "exceptional": exc,
            "probes": self.probes,
            "compared_slots": self.compared_slots,
            "threshold": self.threshold,
        })
    }
}

/// Compares trace tables on common slots. Equivalent iff the disagreement set
/// has at most `threshold` slots (default: the boundary shell of W₁).
pub fn almost_equivalent(
    w1: &WeightWindow,
    w2: &WeightWindow,
    probes: &[Probe],
    threshold: Option<usize>,
) -> Result<EquivalenceVerdict> {
    if !w1.same_coset(w2) {
        return Err(Error::Incompatible("windows are on different algebras or cosets".into()));
    }
    let t1 = w1.trace_tables(probes)?;
    let t2 = w2.trace_tables(probes)?;
    let mut compared = BTreeSet::new();
    let mut exceptional = BTreeSet::new();
    for (a, b) in t1.iter().zip(&t2) {
        for (c, v) in &a.values {
            let Some(c2) = w2.slot_of(&w1.weight(c)) else { continue };
            let Some(v2) = b.values.get(&c2) else { continue };
            compared.insert(c.clone());
            if v != v2 {
                exceptional.insert(c.clone());
            }
        }
    }
    if compared.is_empty() {
        return Err(Error::OutsideWindow("windows share no slot where a probe is defined".into()));
    }
    let threshold = threshold.unwrap_or_else(|| w1.boundary_shell().len());
    Ok(EquivalenceVerdict {
        equivalent: exceptional.len() <= threshold,
        exceptional,
        probes: probes.iter().map(|p| p.name.clone()).collect(),
        compared_slots: compared.len(),
        threshold,
    })
}
