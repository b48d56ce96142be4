//! Polynomial fits of slot functions and the cuspidality test.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::window::{add, Probe, Slot, WeightWindow};
use crate::error::{Error, Result};
use crate::exactalg::{fit_polynomial, simplex_offsets, Poly, Rat, RatMatrix};
use crate::liealg::UEAWord;

/// Fraction of usable slots held out of every fit.
pub const HOLDOUT_FRACTION: f64 = 0.25;

#[derive(Clone, Debug, Serialize)]
pub struct SlotFit {
    pub degree_bound: u32,
    pub poly: Poly,
    pub training: usize,
    pub holdout: usize,
    /// Held-out slots where the fitted polynomial disagrees.
    pub residual_slots: Vec<Slot>,
}

impl SlotFit {
    pub fn pass(&self) -> bool {
        self.residual_slots.is_empty()
    }
}

/// Fits a polynomial in the weight coordinates on the corner simplex of the
/// usable slots, then checks it exactly on every other slot.
pub fn fit_slot_function(
    w: &WeightWindow,
    values: &BTreeMap<Slot, Rat>,
    degree_bound: u32,
    holdout_fraction: f64,
) -> Result<SlotFit> {
    let Some(first) = values.keys().next() else {
        return Err(Error::Underdetermined("no usable slots".into()));
    };
    let r = first.len();
    let corner: Slot = (0..r).map(|i| values.keys().map(|c| c[i]).min().unwrap()).collect();
    let train: Vec<Slot> = simplex_offsets(r, degree_bound).iter().map(|t| add(&corner, t)).collect();
    if let Some(miss) = train.iter().find(|c| !values.contains_key(*c)) {
        return Err(Error::Underdetermined(format!("training slot {miss:?} unavailable for degree {degree_bound}")));
    }
    let holdout = values.len() - train.len();
    if (holdout as f64) < holdout_fraction * values.len() as f64 {
        return Err(Error::Underdetermined(format!(
            "{holdout} held-out slots of {} for degree {degree_bound}",
            values.len()
        )));
    }
    let samples: Vec<(Vec<Rat>, Rat)> = train.iter().map(|c| (w.weight(c).0, values[c].clone())).collect();
    let poly = fit_polynomial(&samples, degree_bound)?;
    let residual_slots = values
        .par_iter()
        .filter(|(c, v)| poly.eval_unchecked(&w.weight(c).0) != **v)
        .map(|(c, _)| c.clone())
        .collect();
    Ok(SlotFit { degree_bound, poly, training: train.len(), holdout, residual_slots })
}

/// Sum over the letters of max entry degree, maximized over the words of u.
pub fn default_degree_bound(w: &WeightWindow, u: &UEAWord) -> Option<u32> {
    let hint = w.degree_hint.as_ref()?;
    Some(u.terms().keys().map(|word| word.iter().map(|&a| hint[a]).sum()).max().unwrap_or(0))
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceFit {
    pub probe: String,
    #[serde(flatten)]
    pub fit: SlotFit,
}

/// The polynomial λ ↦ tr u|_{slot λ}. Held-out disagreements are returned in
/// `residual_slots` as candidate exceptional points.
pub fn trace_polynomial(
    w: &WeightWindow,
    probe: &Probe,
    degree_bound: Option<u32>,
    holdout_fraction: f64,
) -> Result<TraceFit> {
    let d = match degree_bound {
        Some(d) => d,
        None => default_degree_bound(w, &probe.word)
            .ok_or_else(|| Error::Invalid("window carries no degree information; pass a bound".into()))?,
    };
    let table = w.trace_table(probe)?;
    let fit = fit_slot_function(w, &table.values, d, holdout_fraction)?;
    Ok(TraceFit { probe: probe.name.clone(), fit })
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDeterminant {
    /// Name of e_α; f_α is e_{−α}.
    pub root: String,
    /// det(e_α f_α) at each sampled slot.
    pub samples: usize,
    /// Fitted p_α, when the window carries a degree bound and enough slots.
    pub poly: Option<Poly>,
    pub zero_slots: Vec<Slot>,
    pub identically_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspidalityReport {
    pub cuspidal: bool,
    /// Rank-zero window.
    pub degenerate: bool,
    pub roots: Vec<RootDeterminant>,
}

/// p_α(λ) = det e_α f_α|_{slot λ} for every root α of either sign, f_α applied
/// first. The sampled coset is `offsets` if given, all slots otherwise.
pub fn cuspidality_test(w: &WeightWindow, offsets: Option<&[Slot]>) -> Result<CuspidalityReport> {
    let g = &w.algebra;
    let sample: Vec<Slot> = match offsets {
        Some(o) => o.to_vec(),
        None => w.slot_keys(),
    };
    if w.degree() == 0 {
        return Ok(CuspidalityReport { cuspidal: false, degenerate: true, roots: Vec::new() });
    }
    let mut roots = Vec::new();
    for e in (0..g.dim()).filter(|&a| !g.is_cartan(a)) {
        let f = g.opposite_label(e);
        let dets: BTreeMap<Slot, Rat> = sample
            .par_iter()
            .filter_map(|c| w.compose(&[e, f], c).ok().map(|(m, _)| (c.clone(), m.det())))
            .collect();
        if dets.is_empty() {
            return Err(Error::OutsideWindow(format!("no sampled slot supports {}·{}", g.name(e), g.name(f))));
        }
        let zero_slots: Vec<Slot> = dets.iter().filter(|(_, v)| v.is_zero()).map(|(c, _)| c.clone()).collect();
        let poly = w.degree_hint.as_ref().and_then(|h| {
            let d = (h[e] + h[f]) * w.degree() as u32;
            fit_slot_function(w, &dets, d, HOLDOUT_FRACTION).ok().filter(SlotFit::pass).map(|f| f.poly)
        });
        let identically_zero = match &poly {
            Some(p) => p.is_zero(),
            None => zero_slots.len() == dets.len(),
        };
        roots.push(RootDeterminant { root: g.name(e).to_string(), samples: dets.len(), poly, zero_slots, identically_zero });
    }
    let cuspidal = roots.iter().all(|r| !r.identically_zero && r.zero_slots.is_empty());
    Ok(CuspidalityReport { cuspidal, degenerate: false, roots })
}

/// det via the Faddeev–LeVerrier recursion, as a cross-check of Bareiss.
pub fn leverrier_det(m: &RatMatrix) -> Rat {
    let n = m.rows();
    let mut mk = RatMatrix::zeros(n, n);
    let mut c = Rat::one();
    for k in 1..=n {
        mk = m.mul(&mk.add(&RatMatrix::scalar(n, &c)));
        c = -mk.trace() / Rat::from_int(k as i64);
    }
    if n % 2 == 0 {
        c
    } else {
        -c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::hmodules::{exponential_module, from_sp2n_m0};
    use crate::liealg::Weight;
    use crate::weightcat::window::{default_probes, weighting};

    fn m0_window(base: Weight) -> WeightWindow {
        weighting(&from_sp2n_m0(2).unwrap(), &base, 6).unwrap()
    }

    #[test]
    fn m0_trace_fit() {
        let w = m0_window(Weight(vec![q(1, 3), q(1, 5)]));
        let g = &w.algebra;
        let (e, f) = (g.label("e(2e1)").unwrap(), g.label("e(-2e1)").unwrap());
        let p = Probe { name: "fe".into(), word: UEAWord::from_terms([(vec![f, e], Rat::one())]) };
        let t = trace_polynomial(&w, &p, None, HOLDOUT_FRACTION).unwrap();
        assert_eq!(t.fit.degree_bound, 2);
        assert!(t.fit.pass());
        assert!(t.fit.holdout * 4 >= t.fit.training + t.fit.holdout);
        assert_eq!(t.fit.poly.to_canonical(), "1/1*h1^2 + 2/1*h1 + 3/4");
        let one = Probe { name: "1".into(), word: UEAWord::one() };
        assert_eq!(trace_polynomial(&w, &one, None, HOLDOUT_FRACTION).unwrap().fit.poly, Poly::one(2));
    }

    #[test]
    fn free_windows_fit_every_probe() {
        let m = exponential_module(&[q(2, 1), q(-1, 3)], &Weight::from_ints(&[0, 1]), &[1]).unwrap();
        let w = weighting(&m, &Weight(vec![q(1, 2), q(1, 3)]), 5).unwrap();
        for p in default_probes(&m.algebra).unwrap() {
            let t = trace_polynomial(&w, &p, None, HOLDOUT_FRACTION).unwrap();
            assert!(t.fit.pass(), "{}", p.name);
        }
    }

    #[test]
    fn m0_cuspidality() {
        // generic coset: no determinant vanishes
        let w = m0_window(Weight(vec![q(1, 3), q(1, 5)]));
        let r = cuspidality_test(&w, None).unwrap();
        assert!(r.cuspidal && !r.degenerate);
        assert_eq!(r.roots.len(), 8);
        // half-integral coset: e_{2ε_1} then back vanishes at λ_1 ∈ {−3/2, −1/2}
        let w = m0_window(Weight(vec![q(1, 2), q(1, 2)]));
        let r = cuspidality_test(&w, None).unwrap();
        assert!(!r.cuspidal);
        let f = r.roots.iter().find(|x| x.root == "e(-2e1)").unwrap();
        let p = f.poly.as_ref().unwrap();
        assert_eq!(p.to_canonical(), "1/1*h1^2 + 2/1*h1 + 3/4");
        let mut zeros: Vec<Rat> = f.zero_slots.iter().map(|c| w.weight(c).0[0].clone()).collect();
        zeros.sort();
        zeros.dedup();
        assert_eq!(zeros, vec![q(-3, 2), q(-1, 2)]);
        // e_{2ε_1} f_{2ε_1} with f first: zeros at λ_1 ∈ {1/2, 3/2}
        let e = r.roots.iter().find(|x| x.root == "e(2e1)").unwrap();
        let mut zeros: Vec<Rat> = e.zero_slots.iter().map(|c| w.weight(c).0[0].clone()).collect();
        zeros.sort();
        zeros.dedup();
        assert_eq!(zeros, vec![q(1, 2), q(3, 2)]);
    }

    #[test]
    fn degenerate_window() {
        let w = m0_window(Weight(vec![q(1, 3), q(1, 5)]));
        let empty = WeightWindow::from_parts(
            w.algebra.clone(),
            w.base.clone(),
            w.slot_keys().into_iter().map(|c| (c, 0)).collect(),
            Default::default(),
        )
        .unwrap();
        let r = cuspidality_test(&empty, None).unwrap();
        assert!(r.degenerate && !r.cuspidal);
    }

    #[test]
    fn leverrier_matches_bareiss() {
        let m = RatMatrix::from_ints(&[&[2, -1, 0, 3], &[1, 4, 2, 0], &[0, 5, -3, 1], &[7, 0, 1, 1]]);
        assert_eq!(leverrier_det(&m), m.det());
        let m = RatMatrix::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(leverrier_det(&m), m.det());
    }
}
