//! Nilsson's rank-one sp(2n)-module M₀ and its simplicity reduction.

use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use super::free::{FreeHModule, ModuleMeta};
use crate::error::{Error, Result};
use crate::exactalg::{Poly, PolyMatrix, Rat};
use crate::liealg::{build_algebra, Family};

/// M₀ = ℂ[h̃_1, …, h̃_n] with
/// e_{2ε_i} ↦ (h̃_i − 1/2)(h̃_i − 3/2), e_{−2ε_i} ↦ 1,
/// e_{ε_i+ε_j} ↦ (h̃_i − 1/2)(h̃_j − 1/2), e_{−ε_i−ε_j} ↦ 1,
/// e_{ε_i−ε_j} ↦ h̃_i − 1/2.
pub fn from_sp2n_m0(n: usize) -> Result<FreeHModule> {
    if n < 2 {
        return Err(Error::Invalid("M₀ is defined for sp(2n) with n ≥ 2".into()));
    }
    let g = Arc::new(build_algebra(Family::C, n)?);
    let half = Rat::new(1, 2);
    let lin = |i: usize, c: &Rat| &Poly::var(n, i) - &Poly::constant(n, c.clone());
    let mut action = Vec::with_capacity(g.dim());
    for a in 0..g.dim() {
        let name = g.name(a);
        let p = if let Some(i) = parse_idx(name, "ht") {
            Poly::var(n, i)
        } else if let Some(i) = parse_idx(name, "e(2e") {
            &lin(i, &half) * &lin(i, &Rat::new(3, 2))
        } else if name.starts_with("e(-") {
            Poly::one(n)
        } else if let Some((i, j)) = parse_pair(name, '+') {
            &lin(i, &half) * &lin(j, &half)
        } else if let Some((i, _)) = parse_pair(name, '-') {
            lin(i, &half)
        } else {
            return Err(Error::Invalid(format!("unexpected basis element {name}")));
        };
        action.push(PolyMatrix::scalar(1, &p));
    }
    FreeHModule::new(
        g,
        1,
        action,
        ModuleMeta { constructor: "m0".into(), params: json!({ "n": n }), notes: Vec::new() },
    )
}

fn parse_idx(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let rest = rest.strip_suffix(')').unwrap_or(rest);
    rest.parse::<usize>().ok().map(|i| i - 1)
}

/// Parses "e(e{i}{op}e{j})".
fn parse_pair(name: &str, op: char) -> Option<(usize, usize)> {
    let inner = name.strip_prefix("e(e")?.strip_suffix(')')?;
    let (a, b) = inner.split_once(op)?;
    let b = b.strip_prefix('e')?;
    Some((a.parse::<usize>().ok()? - 1, b.parse::<usize>().ok()? - 1))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionStep {
    /// 1-based index i of the operator 1 − e_{−2ε_i}.
    pub index: usize,
    pub before: Poly,
    pub after: Poly,
}

/// Applies f ↦ f − σ_i^{−2}(f) until a nonzero constant remains.
///
/// i maximizes the degree in h̃_i of the top homogeneous part (smallest i on
/// ties), which makes every step lower the total degree by exactly one.
pub fn m0_reduction_witness(f: &Poly) -> Result<Vec<ReductionStep>> {
    if f.is_zero() {
        return Err(Error::Invalid("cannot reduce the zero polynomial".into()));
    }
    let n = f.nvars();
    let mut cur = f.clone();
    let mut steps = Vec::new();
    while cur.total_degree() > 0 {
        let top = cur.leading_form();
        let i = (0..n).max_by_key(|&i| (top.degree_in(i), std::cmp::Reverse(i))).unwrap();
        let mut off = vec![Rat::zero(); n];
        off[i] = Rat::from_int(-2);
        let next = &cur - &cur.shift_unchecked(&off);
        if next.is_zero() || next.total_degree() + 1 != cur.total_degree() {
            return Err(Error::Invalid("reduction step failed to lower the degree".into()));
        }
        steps.push(ReductionStep { index: i + 1, before: cur, after: next.clone() });
        cur = next;
    }
    Ok(steps)
}
