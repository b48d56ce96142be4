//! Almost-coherence certificates for windows.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::exactalg::Poly;
use crate::weightcat::{trace_polynomial, Probe, Slot, WeightWindow, HOLDOUT_FRACTION};

#[derive(Clone, Debug, Serialize)]
pub struct ProbeFit {
    pub probe: String,
    pub poly: Option<Poly>,
    pub degree_bound: Option<u32>,
    pub residual_slots: Vec<Slot>,
    /// Why no fit was produced.
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlmostCoherentCertificate {
    pub degree: usize,
    pub slots: usize,
    pub fits: Vec<ProbeFit>,
    /// Slots of the wrong dimension or with a held-out trace off its polynomial.
    pub exceptional: BTreeSet<Slot>,
    pub pass: bool,
}

/// d = maximal slot dimension; then one trace fit per probe.
pub fn certify_almost_coherent(w: &WeightWindow, probes: &[Probe]) -> AlmostCoherentCertificate {
    let degree = w.degree();
    let mut exceptional: BTreeSet<Slot> = w.slots().filter(|(_, d)| *d != degree).map(|(c, _)| c.clone()).collect();
    let mut fits = Vec::with_capacity(probes.len());
    for p in probes {
        match trace_polynomial(w, p, None, HOLDOUT_FRACTION) {
            Ok(t) => {
                exceptional.extend(t.fit.residual_slots.iter().cloned());
                fits.push(ProbeFit {
                    probe: t.probe,
                    poly: Some(t.fit.poly),
                    degree_bound: Some(t.fit.degree_bound),
                    residual_slots: t.fit.residual_slots,
                    error: None,
                });
            }
            Err(e) => fits.push(ProbeFit {
                probe: p.name.clone(),
                poly: None,
                degree_bound: None,
                residual_slots: Vec::new(),
                error: Some(e.to_string()),
            }),
        }
    }
    let pass = degree > 0 && exceptional.is_empty() && fits.iter().all(|f| f.error.is_none());
    AlmostCoherentCertificate { degree, slots: w.len(), fits, exceptional, pass }
}

impl AlmostCoherentCertificate {
    /// Structured report with slots as weights and polynomials in canonical text.
    pub fn to_json(&self, w: &WeightWindow) -> Value {
        let fits: Vec<Value> = self
            .fits
            .iter()
            .map(|f| {
                json!({
                    "probe": f.probe,
                    "poly": f.poly.as_ref().map(Poly::to_canonical),
                    "degree_bound": f.degree_bound,
                    "residual_slots": f.residual_slots.iter().map(|c| w.weight(c)).collect::<Vec<_>>(),
                    "error": f.error,
                })
            })
            .collect();
        json!({
            "pass": self.pass,
            "degree": self.degree,
            "window": { "base": w.base, "radius": w.radius, "slots": self.slots },
            "fits": fits,
            "exceptional": self.exceptional.iter().map(|c| w.weight(c)).collect::<Vec<_>>(),
        })
    }
}
