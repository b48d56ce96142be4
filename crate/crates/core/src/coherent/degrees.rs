//! Degrees of the coherent families 𝓔𝓧𝓣(L(w_k·λ)) for sl(n+1).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Rat, RatMatrix};
use crate::hmodules::htilde_values;
use crate::liealg::{w_k, weyl_dim, Family, LieAlgebraData, Levi, Weight};

fn check_type_a(g: &LieAlgebraData) -> Result<()> {
    if g.family != Family::A {
        return Err(Error::Invalid("degree formulas are for sl(n+1)".into()));
    }
    Ok(())
}

/// The Levi 𝔩 ≅ gl(n) on α_1, …, α_{n−1}.
pub fn levi_l(g: &LieAlgebraData) -> Levi {
    Levi { simple: (0..g.rank().saturating_sub(1)).collect() }
}

/// dim L_𝔩(w_k·λ).
pub fn levi_dim(g: &LieAlgebraData, lambda: &Weight, k: usize) -> Result<Rat> {
    weyl_dim(g, &levi_l(g), &w_k(g, k).dot(g, lambda))
}

/// deg_k(λ) = Σ_{i=0}^{n−k} (−1)^i dim L_𝔩(w_{k+i}·λ).
pub fn deg_k(g: &LieAlgebraData, lambda: &Weight, k: usize) -> Result<Rat> {
    check_type_a(g)?;
    let n = g.rank();
    if !(1..=n).contains(&k) {
        return Err(Error::Invalid(format!("k = {k} outside 1..={n}")));
    }
    if !g.is_dominant_integral(lambda) {
        return Err(Error::NotDominant(lambda.pretty()));
    }
    let mut total = Rat::zero();
    for i in 0..=n - k {
        let d = levi_dim(g, lambda, k + i)?;
        if i % 2 == 0 {
            total += &d;
        } else {
            total -= &d;
        }
    }
    Ok(total)
}

/// dim L_{gl(n)}(μ) = Π_{i<j} (μ_i − μ_j + j − i)/(j − i).
pub fn gl_dim(mu: &[Rat]) -> Rat {
    let mut out = Rat::one();
    for i in 0..mu.len() {
        for j in i + 1..mu.len() {
            let gap = Rat::from_int((j - i) as i64);
            out *= (&mu[i] - &mu[j] + &gap) / gap;
        }
    }
    out
}

/// The gl(n)-weight (ν(h̃_1), …, ν(h̃_n)) of an sl(n+1)-weight ν.
pub fn gl_weight(nu: &Weight) -> Vec<Rat> {
    htilde_values(nu)
}

#[derive(Clone, Debug, Serialize)]
pub struct DegIdentityRow {
    pub k: usize,
    pub deg_k: Rat,
    /// deg_{k+1}, zero at k = n.
    pub deg_next: Rat,
    /// dim L_{gl(n)}(w_k·λ) by the gl(n) Weyl formula.
    pub gl_dim: Rat,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegIdentityReport {
    pub lambda: Weight,
    pub rows: Vec<DegIdentityRow>,
    pub pass: bool,
}

/// deg_k(λ) + deg_{k+1}(λ) = dim L_{gl(n)}(w_k·λ) for 1 ≤ k ≤ n.
pub fn deg_identity_check(g: &LieAlgebraData, lambda: &Weight) -> Result<DegIdentityReport> {
    let n = g.rank();
    let degs: Vec<Rat> = (1..=n).map(|k| deg_k(g, lambda, k)).collect::<Result<_>>()?;
    let rows: Vec<DegIdentityRow> = (1..=n)
        .map(|k| {
            let next = if k < n { degs[k].clone() } else { Rat::zero() };
            let d = gl_dim(&gl_weight(&w_k(g, k).dot(g, lambda)));
            let ok = &degs[k - 1] + &next == d;
            DegIdentityRow { k, deg_k: degs[k - 1].clone(), deg_next: next, gl_dim: d, ok }
        })
        .collect();
    let pass = rows.iter().all(|r| r.ok);
    Ok(DegIdentityReport { lambda: lambda.clone(), rows, pass })
}

/// Rank of the n × m matrix (deg_k(λ_j)).
pub fn deg_linear_independence(g: &LieAlgebraData, samples: &[Weight]) -> Result<usize> {
    check_type_a(g)?;
    let n = g.rank();
    if samples.len() < n {
        return Err(Error::Underdetermined(format!("{} samples for {n} polynomials", samples.len())));
    }
    let rows: Vec<Vec<Rat>> = (1..=n)
        .map(|k| samples.iter().map(|l| deg_k(g, l, k)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Ok(RatMatrix::from_rows(rows).rank())
}
