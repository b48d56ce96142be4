//! Finite windows of 𝒲(M) = ⊕_λ M/m_λM on a coset λ₀ + Q.
//!
//! Slots are addressed by root-lattice offsets c, with weight λ₀ + Σ c_i α_i.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{Rat, RatMatrix};
use crate::hmodules::FreeHModule;
use crate::liealg::{gelfand_invariant, LieAlgebraData, UEAWord, Weight};

/// Root-lattice offset of a slot from the window base.
pub type Slot = Vec<i64>;

/// Default box radius in root-lattice coordinates.
pub const DEFAULT_RADIUS: i64 = 6;

#[derive(Clone, Debug)]
pub struct WeightWindow {
    pub algebra: Arc<LieAlgebraData>,
    pub base: Weight,
    /// Box radius when the slot set is a full box around the base.
    pub radius: Option<i64>,
    dims: BTreeMap<Slot, usize>,
    /// Non-Cartan label and source slot ↦ matrix slot(c) → slot(c + α).
    maps: HashMap<(usize, Slot), RatMatrix>,
    /// Max entry degree of each A_x, when the window came from a free module.
    pub degree_hint: Option<Vec<u32>>,
    pub(crate) lattice_inv: RatMatrix,
}

/// A weight-zero element of U(g) under a display name.
#[derive(Clone, Debug)]
pub struct Probe {
    pub name: String,
    pub word: UEAWord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceTable {
    pub probe: String,
    pub values: BTreeMap<Slot, Rat>,
}

fn lattice_inverse(g: &LieAlgebraData) -> Result<RatMatrix> {
    let r = g.rank();
    let cols: Vec<Vec<Rat>> = (0..r).map(|i| g.simple_root(i).weight.0.clone()).collect();
    let m = RatMatrix::from_cols(&cols, g.cartan_dim());
    if m.rows() != r {
        return Err(Error::Invalid("windows need simple roots spanning h*".into()));
    }
    m.inverse().ok_or_else(|| Error::Invalid("simple roots are not a basis of h*".into()))
}

impl WeightWindow {
    /// Assembles a window, checking every stored matrix against the slot dimensions.
    pub fn from_parts(
        algebra: Arc<LieAlgebraData>,
        base: Weight,
        dims: BTreeMap<Slot, usize>,
        maps: HashMap<(usize, Slot), RatMatrix>,
    ) -> Result<WeightWindow> {
        if base.len() != algebra.cartan_dim() {
            return Err(Error::Dimension(format!("base weight has {} coordinates", base.len())));
        }
        let lattice_inv = lattice_inverse(&algebra)?;
        for ((a, c), m) in &maps {
            if algebra.is_cartan(*a) {
                return Err(Error::Invalid("Cartan slot maps are implicit".into()));
            }
            let to = add(c, &algebra.lattice_coords(*a));
            match (dims.get(c), dims.get(&to)) {
                (Some(&dc), Some(&dt)) if m.rows() == dt && m.cols() == dc => {}
                _ => return Err(Error::Dimension(format!("slot map {} at {c:?} has the wrong shape", algebra.name(*a)))),
            }
        }
        Ok(WeightWindow { algebra, base, radius: None, dims, maps, degree_hint: None, lattice_inv })
    }

    pub fn slots(&self) -> impl Iterator<Item = (&Slot, usize)> {
        self.dims.iter().map(|(k, &d)| (k, d))
    }

    pub fn slot_keys(&self) -> Vec<Slot> {
        self.dims.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, c: &[i64]) -> Option<usize> {
        self.dims.get(c).copied()
    }

    pub fn weight(&self, c: &[i64]) -> Weight {
        &self.base + &self.algebra.lattice_weight(c)
    }

    /// Slot carrying weight λ, if λ is on the coset and in the window.
    pub fn slot_of(&self, lambda: &Weight) -> Option<Slot> {
        let c = lattice_offset(&self.lattice_inv, &self.base, lambda)?;
        self.dims.contains_key(&c).then_some(c)
    }

    /// Whether two windows live on the same coset of h*/Q.
    pub fn same_coset(&self, other: &WeightWindow) -> bool {
        self.algebra.family == other.algebra.family
            && self.algebra.n == other.algebra.n
            && lattice_offset(&self.lattice_inv, &self.base, &other.base).is_some()
    }

    /// Matrix of x from slot c, with its target slot.
    pub fn map(&self, label: usize, c: &[i64]) -> Option<(Cow<'_, RatMatrix>, Slot)> {
        let d = *self.dims.get(c)?;
        if let Some(i) = self.algebra.cartan_labels().iter().position(|&l| l == label) {
            let w = self.weight(c);
            return Some((Cow::Owned(RatMatrix::scalar(d, &w.0[i])), c.to_vec()));
        }
        let to = add(c, &self.algebra.lattice_coords(label));
        self.maps.get(&(label, c.to_vec())).map(|m| (Cow::Borrowed(m), to))
    }

    /// Composite slot map of a word, rightmost letter first.
    pub fn compose(&self, word: &[usize], c: &[i64]) -> Result<(RatMatrix, Slot)> {
        let d = self.dims.get(c).ok_or_else(|| Error::OutsideWindow(format!("slot {c:?}")))?;
        let mut m = RatMatrix::identity(*d);
        let mut at = c.to_vec();
        for &x in word.iter().rev() {
            let (a, to) = self
                .map(x, &at)
                .ok_or_else(|| Error::OutsideWindow(format!("{} from {at:?}", self.algebra.name(x))))?;
            m = a.mul(&m);
            at = to;
        }
        Ok((m, at))
    }

    /// Traces of several weight-zero elements at one slot, sharing suffix products.
    /// `None` where some word of the element leaves the window.
    pub fn slot_traces(&self, words: &[&UEAWord], c: &[i64]) -> Vec<Option<Rat>> {
        let mut cache: HashMap<Vec<usize>, Option<(RatMatrix, Slot)>> = HashMap::new();
        words
            .iter()
            .map(|u| {
                let mut t = Rat::zero();
                for (w, coef) in u.terms() {
                    let (m, _) = self.suffix(w, c, &mut cache)?;
                    t += &(coef * &m.trace());
                }
                Some(t)
            })
            .collect()
    }

    fn suffix(
        &self,
        w: &[usize],
        c: &[i64],
        cache: &mut HashMap<Vec<usize>, Option<(RatMatrix, Slot)>>,
    ) -> Option<(RatMatrix, Slot)> {
        if w.is_empty() {
            return Some((RatMatrix::identity(*self.dims.get(c)?), c.to_vec()));
        }
        if let Some(v) = cache.get(w) {
            return v.clone();
        }
        let out = self.suffix(&w[1..], c, cache).and_then(|(tail, at)| {
            let (a, to) = self.map(w[0], &at)?;
            Some((a.mul(&tail), to))
        });
        cache.insert(w.to_vec(), out.clone());
        out
    }

    /// Tr(λ, u) = tr u|_{slot λ}.
    pub fn trace_map(&self, u: &UEAWord, c: &[i64]) -> Result<Rat> {
        if !u.is_weight_zero(&self.algebra) {
            return Err(Error::NotWeightZero("trace probe".into()));
        }
        if !self.dims.contains_key(c) {
            return Err(Error::OutsideWindow(format!("slot {c:?}")));
        }
        self.slot_traces(&[u], c)
            .pop()
            .flatten()
            .ok_or_else(|| Error::OutsideWindow(format!("excursion from {c:?}")))
    }

    /// Trace tables of several probes over every slot where they are defined.
    pub fn trace_tables(&self, probes: &[Probe]) -> Result<Vec<TraceTable>> {
        if let Some(p) = probes.iter().find(|p| !p.word.is_weight_zero(&self.algebra)) {
            return Err(Error::NotWeightZero(p.name.clone()));
        }
        let words: Vec<&UEAWord> = probes.iter().map(|p| &p.word).collect();
        let keys = self.slot_keys();
        let per_slot: Vec<Vec<Option<Rat>>> = keys.par_iter().map(|c| self.slot_traces(&words, c)).collect();
        Ok(probes
            .iter()
            .enumerate()
            .map(|(i, p)| TraceTable {
                probe: p.name.clone(),
                values: keys
                    .iter()
                    .zip(&per_slot)
                    .filter_map(|(c, v)| v[i].clone().map(|t| (c.clone(), t)))
                    .collect(),
            })
            .collect())
    }

    pub fn trace_table(&self, probe: &Probe) -> Result<TraceTable> {
        Ok(self.trace_tables(std::slice::from_ref(probe))?.remove(0))
    }

    /// Slots with a missing simple-root neighbour.
    pub fn boundary_shell(&self) -> BTreeSet<Slot> {
        let r = self.algebra.rank();
        self.dims
            .keys()
            .filter(|c| {
                (0..r).any(|i| {
                    [-1, 1].iter().any(|s| {
                        let mut d = (*c).clone();
                        d[i] += s;
                        !self.dims.contains_key(&d)
                    })
                })
            })
            .cloned()
            .collect()
    }

    /// Slots of maximal dimension.
    pub fn essential_support(&self) -> BTreeSet<Slot> {
        let Some(top) = self.dims.values().max() else { return BTreeSet::new() };
        self.dims.iter().filter(|(_, d)| *d == top).map(|(c, _)| c.clone()).collect()
    }

    /// Maximal slot dimension.
    pub fn degree(&self) -> usize {
        self.dims.values().copied().max().unwrap_or(0)
    }

    /// Pairs (slot, a, b) where x_a x_b − x_b x_a ≠ [x_a, x_b] on a slot with
    /// every composite inside the window.
    pub fn bracket_defects(&self) -> Vec<(Slot, usize, usize)> {
        let g = &self.algebra;
        let keys = self.slot_keys();
        keys.par_iter()
            .flat_map_iter(|c| {
                let mut bad = Vec::new();
                for a in 0..g.dim() {
                    for b in a + 1..g.dim() {
                        let (Ok((ab, _)), Ok((ba, _))) = (self.compose(&[a, b], c), self.compose(&[b, a], c)) else {
                            continue;
                        };
                        let mut rhs = RatMatrix::zeros(ab.rows(), ab.cols());
                        let mut ok = true;
                        for (z, k) in g.bracket(a, b) {
                            match self.map(*z, c) {
                                Some((m, _)) => rhs = rhs.add(&m.scale(k)),
                                None => ok = false,
                            }
                        }
                        if ok && ab.sub(&ba) != rhs {
                            bad.push((c.clone(), a, b));
                        }
                    }
                }
                bad
            })
            .collect()
    }

    /// Replaces every matrix into and out of slot c by zero.
    pub fn with_zeroed_slot(&self, c: &[i64]) -> WeightWindow {
        let mut w = self.clone();
        for ((a, from), m) in w.maps.iter_mut() {
            let to = add(from, &self.algebra.lattice_coords(*a));
            if from == c || to == c {
                *m = RatMatrix::zeros(m.rows(), m.cols());
            }
        }
        w
    }

    /// Keeps only the given slots.
    pub fn restrict(&self, keep: &BTreeSet<Slot>) -> WeightWindow {
        let mut w = self.clone();
        w.dims.retain(|c, _| keep.contains(c));
        let g = self.algebra.clone();
        w.maps.retain(|(a, c), _| keep.contains(c) && keep.contains(&add(c, &g.lattice_coords(*a))));
        w.radius = None;
        w
    }

    pub fn summary(&self) -> Value {
        let dims: Vec<Value> = self
            .dims
            .iter()
            .map(|(c, d)| json!({ "slot": self.weight(c), "dim": d }))
            .collect();
        json!({
            "base": self.base,
            "radius": self.radius,
            "slots": self.dims.len(),
            "degree": self.degree(),
            "dims": dims,
        })
    }
}

impl TraceTable {
    pub fn to_json(&self, w: &WeightWindow) -> Value {
        let values: Vec<Value> = self
            .values
            .iter()
            .map(|(c, v)| json!({ "slot": w.weight(c), "value": v }))
            .collect();
        json!({ "probe": self.probe, "values": values })
    }
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> Slot {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn lattice_offset(inv: &RatMatrix, base: &Weight, lambda: &Weight) -> Option<Slot> {
    if lambda.len() != base.len() {
        return None;
    }
    let d = lambda - base;
    inv.mul_vec(&d.0).iter().map(|x| x.to_i64().filter(|_| x.is_integer())).collect()
}

/// All offsets in [−r, r]^rank.
pub fn box_slots(rank: usize, r: i64) -> Vec<Slot> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|c: Slot| (-r..=r).map(move |k| [c.clone(), vec![k]].concat())).collect();
    }
    out
}

/// 𝒲(M) on the box of radius r around λ₀. The matrix of x from λ to λ + α is A_x(λ + α).
pub fn weighting(m: &FreeHModule, base: &Weight, radius: i64) -> Result<WeightWindow> {
    let g = &m.algebra;
    if base.len() != g.cartan_dim() {
        return Err(Error::Dimension(format!("base weight has {} coordinates, expected {}", base.len(), g.cartan_dim())));
    }
    if radius < 0 {
        return Err(Error::Invalid("negative window radius".into()));
    }
    let keys = box_slots(g.rank(), radius);
    let dims: BTreeMap<Slot, usize> = keys.iter().map(|c| (c.clone(), m.rank)).collect();
    let labels: Vec<usize> = (0..g.dim()).filter(|&a| !g.is_cartan(a)).collect();
    let lat: Vec<Slot> = (0..g.dim()).map(|a| g.lattice_coords(a)).collect();
    let maps: HashMap<(usize, Slot), RatMatrix> = keys
        .par_iter()
        .flat_map_iter(|c| {
            let mut out = Vec::new();
            for &a in &labels {
                let to = add(c, &lat[a]);
                if dims.contains_key(&to) {
                    let w = base + &g.lattice_weight(&to);
                    out.push(((a, c.clone()), m.action[a].eval_unchecked(&w.0)));
                }
            }
            out
        })
        .collect();
    let mut w = WeightWindow::from_parts(g.clone(), base.clone(), dims, maps)?;
    w.radius = Some(radius);
    w.degree_hint = Some(m.action.iter().map(|a| a.max_degree()).collect());
    Ok(w)
}

/// Cartan labels; e_α f_α and f_α e_α for simple α; Gelfand invariants of degree 2 and 3.
pub fn default_probes(g: &LieAlgebraData) -> Result<Vec<Probe>> {
    let mut out = vec![Probe { name: "1".into(), word: UEAWord::one() }];
    for l in g.cartan_labels() {
        out.push(Probe { name: g.name(l).to_string(), word: UEAWord::letter(l) });
    }
    for i in 0..g.rank() {
        let (e, f) = (g.simple_label(i), g.simple_neg_label(i));
        let (en, fname) = (g.name(e), g.name(f));
        out.push(Probe { name: format!("{en}*{fname}"), word: UEAWord::from_terms([(vec![e, f], Rat::one())]) });
        out.push(Probe { name: format!("{fname}*{en}"), word: UEAWord::from_terms([(vec![f, e], Rat::one())]) });
    }
    for k in 2..=g.size.min(3) {
        out.push(Probe { name: format!("C{k}"), word: gelfand_invariant(g, k)? });
    }
    Ok(out)
}
