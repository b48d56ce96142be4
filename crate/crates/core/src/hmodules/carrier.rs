//! Tensor modules 𝒪e^{b·x} ⊗ V over sl(n+1) through ω_S, and their
//! conversion to U(h)-free form.
//!
//! The displayed ω_S formulas have three places that admit two readings
//! each. [`OmegaReading`] selects one; [`consistent_readings`] tests all eight
//! against the bracket relations.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::free::{FreeHModule, ModuleMeta};
use crate::error::{Error, Result};
use crate::exactalg::{Monomial, Poly, PolyMatrix, Rat, RatMatrix};
use crate::liealg::{build_algebra, irrep_gl, Family, FiniteRep, LieAlgebraData, Weight};

/// Choices for the ambiguous terms of ω_S in the i ∈ S cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OmegaReading {
    /// E_{ij}, i ∈ S, j ∉ S: "x_i t_j" read as x_i x_j (true) or x_i ∂_j.
    pub xx_mixed: bool,
    /// E_{i,n+1}, i ∈ S: "x_j ⊗ E_{i,r}" read as x_r ⊗ E_{i,r} (true) or x_i ⊗ E_{i,r}.
    pub x_r_factor: bool,
    /// E_{i,n+1}, i ∈ S: ∂_j ⊗ E_{ij} enters with sign −1 (true) or +1 as typeset.
    pub minus_dj: bool,
}

impl OmegaReading {
    pub fn all() -> Vec<OmegaReading> {
        let mut v = Vec::new();
        for a in [true, false] {
            for b in [true, false] {
                for c in [true, false] {
                    v.push(OmegaReading { xx_mixed: a, x_r_factor: b, minus_dj: c });
                }
            }
        }
        v
    }

    /// The reading under which ω_S is a homomorphism.
    pub fn consistent() -> OmegaReading {
        OmegaReading { xx_mixed: true, x_r_factor: true, minus_dj: true }
    }

    pub fn describe(&self) -> String {
        format!(
            "E_ij (i in S, j not in S): {}; E_i,n+1 (i in S): {} (x) E_ir, {} d_j (x) E_ij",
            if self.xx_mixed { "x_i x_j" } else { "x_i d_j" },
            if self.x_r_factor { "x_r" } else { "x_i" },
            if self.minus_dj { "-" } else { "+" },
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Letter {
    X(usize),
    D(usize),
}

/// c · (product of Weyl letters) ⊗ (E_{ij} or 1), 0-based indices.
#[derive(Clone, Debug)]
struct Term {
    c: Rat,
    ops: Vec<Letter>,
    gl: Option<(usize, usize)>,
}

fn t(c: i64, ops: Vec<Letter>, gl: Option<(usize, usize)>) -> Term {
    Term { c: Rat::from_int(c), ops, gl }
}

use Letter::{D, X};

/// An element Σ x^m e^{b·x} ⊗ v_m.
pub type CarrierElement = BTreeMap<Monomial, Vec<Rat>>;

#[derive(Clone, Debug)]
pub struct WeylCarrier {
    pub n: usize,
    pub b: Vec<Rat>,
    pub s: Vec<bool>,
    pub v: FiniteRep,
    pub reading: OmegaReading,
    gl: Arc<LieAlgebraData>,
    sl: Arc<LieAlgebraData>,
    /// ω_S of each sl(n+1) basis element.
    images: Vec<Vec<Term>>,
}

/// S given as 1-based indices.
pub fn weyl_carrier(b: &[Rat], v: FiniteRep, s: &[usize]) -> Result<WeylCarrier> {
    weyl_carrier_with(b, v, s, OmegaReading::consistent())
}

pub fn weyl_carrier_with(b: &[Rat], v: FiniteRep, s: &[usize], reading: OmegaReading) -> Result<WeylCarrier> {
    let n = b.len();
    if n == 0 {
        return Err(Error::Invalid("b must be nonempty".into()));
    }
    if b.iter().any(Rat::is_zero) {
        return Err(Error::Invalid("b has a zero entry".into()));
    }
    let mut set = vec![false; n];
    for &i in s {
        if i == 0 || i > n {
            return Err(Error::Invalid(format!("S contains {i}, outside 1..={n}")));
        }
        set[i - 1] = true;
    }
    let gl = Arc::new(build_algebra(Family::Gl, n)?);
    if v.action.len() != gl.dim() {
        return Err(Error::Dimension("V is not a gl(n)-representation".into()));
    }
    let sl = Arc::new(build_algebra(Family::A, n)?);
    let mut c = WeylCarrier { n, b: b.to_vec(), s: set, v, reading, gl, sl, images: Vec::new() };
    c.images = (0..c.sl.dim()).map(|a| c.omega_of_matrix(&c.sl.basis[a].matrix.clone())).collect();
    Ok(c)
}

impl WeylCarrier {
    pub fn algebra(&self) -> &Arc<LieAlgebraData> {
        &self.sl
    }

    pub fn dim_v(&self) -> usize {
        self.v.dim
    }

    fn omega_e(&self, i: usize, j: usize) -> Vec<Term> {
        let n = self.n;
        let s = &self.s;
        let r = self.reading;
        let size = (0..n).filter(|&k| s[k]).count() as i64;
        if i < n && j < n {
            let weyl = match (s[i], s[j]) {
                (false, false) => t(-1, vec![X(j), D(i)], None),
                (true, true) => t(1, vec![X(i), D(j)], None),
                (true, false) => t(1, if r.xx_mixed { vec![X(i), X(j)] } else { vec![X(i), D(j)] }, None),
                (false, true) => t(-1, vec![D(i), D(j)], None),
            };
            return vec![t(1, vec![], Some((i, j))), weyl];
        }
        if i == n {
            return vec![if s[j] { t(-1, vec![D(j)], None) } else { t(-1, vec![X(j)], None) }];
        }
        // E_{i,n+1}
        let mut out = Vec::new();
        if !s[i] {
            for j in (0..n).filter(|&j| !s[j]) {
                out.push(t(1, vec![X(j), D(j), D(i)], None));
                out.push(t(-1, vec![D(j)], Some((i, j))));
            }
            for rr in (0..n).filter(|&rr| s[rr]) {
                out.push(t(-1, vec![X(rr), D(rr), D(i)], None));
                out.push(t(1, vec![X(rr)], Some((i, rr))));
            }
            for j in 0..n {
                out.push(t(-1, vec![D(i)], Some((j, j))));
            }
            out.push(t(n as i64 + 1 - size, vec![D(i)], None));
        } else {
            for rr in (0..n).filter(|&rr| s[rr]) {
                out.push(t(1, vec![X(i), X(rr), D(rr)], None));
                out.push(t(1, vec![X(if r.x_r_factor { rr } else { i })], Some((i, rr))));
            }
            for j in (0..n).filter(|&j| !s[j]) {
                out.push(t(-1, vec![X(i), X(j), D(j)], None));
                out.push(t(if r.minus_dj { -1 } else { 1 }, vec![D(j)], Some((i, j))));
            }
            for j in 0..n {
                out.push(t(1, vec![X(i)], Some((j, j))));
            }
            out.push(t(-(n as i64 - size), vec![X(i)], None));
        }
        out
    }

    /// h̃_k ↦ ∓x_k∂_k + E_kk (− 1 when k ∉ S).
    fn omega_htilde(&self, k: usize) -> Vec<Term> {
        if self.s[k] {
            vec![t(1, vec![X(k), D(k)], None), t(1, vec![], Some((k, k)))]
        } else {
            vec![t(-1, vec![X(k), D(k)], None), t(1, vec![], Some((k, k))), t(-1, vec![], None)]
        }
    }

    fn omega_of_matrix(&self, x: &RatMatrix) -> Vec<Term> {
        let n = self.n;
        let mut out = Vec::new();
        let scaled = |terms: Vec<Term>, c: &Rat, out: &mut Vec<Term>| {
            for mut tm in terms {
                tm.c *= c;
                out.push(tm);
            }
        };
        for i in 0..=n {
            for j in 0..=n {
                if i != j && !x[(i, j)].is_zero() {
                    scaled(self.omega_e(i, j), &x[(i, j)], &mut out);
                }
            }
        }
        // diagonal D = Σ_k (D_kk − D_{n+1,n+1}) h̃_k
        for k in 0..n {
            let d = &x[(k, k)] - &x[(n, n)];
            if !d.is_zero() {
                scaled(self.omega_htilde(k), &d, &mut out);
            }
        }
        out
    }

    fn gl_action(&self, i: usize, j: usize) -> &RatMatrix {
        let lab = self.gl.label(&format!("E{},{}", i + 1, j + 1)).expect("gl basis");
        &self.v.action[lab]
    }

    fn apply_terms(&self, terms: &[Term], el: &CarrierElement) -> CarrierElement {
        let mut out: CarrierElement = BTreeMap::new();
        let d = self.v.dim;
        for tm in terms {
            for (m, vec) in el {
                let w = match tm.gl {
                    Some((i, j)) => self.gl_action(i, j).mul_vec(vec),
                    None => vec.clone(),
                };
                if w.iter().all(Rat::is_zero) {
                    continue;
                }
                let mut poly: BTreeMap<Monomial, Rat> = BTreeMap::new();
                poly.insert(m.clone(), tm.c.clone());
                for op in tm.ops.iter().rev() {
                    poly = self.apply_letter(*op, &poly);
                }
                for (m2, c) in poly {
                    let e = out.entry(m2).or_insert_with(|| vec![Rat::zero(); d]);
                    for (a, x) in e.iter_mut().zip(&w) {
                        *a += &c * x;
                    }
                }
            }
        }
        out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        out
    }

    fn apply_letter(&self, op: Letter, p: &BTreeMap<Monomial, Rat>) -> BTreeMap<Monomial, Rat> {
        let mut out: BTreeMap<Monomial, Rat> = BTreeMap::new();
        let mut add = |m: Monomial, c: Rat| {
            let e = out.entry(m).or_insert_with(Rat::zero);
            *e += c;
        };
        for (m, c) in p {
            match op {
                X(i) => {
                    let mut m2 = m.clone();
                    m2[i] += 1;
                    add(m2, c.clone());
                }
                // ∂_i (x^m e^{b·x}) = (m_i x^{m−e_i} + b_i x^m) e^{b·x}
                D(i) => {
                    if m[i] > 0 {
                        let mut m2 = m.clone();
                        m2[i] -= 1;
                        add(m2, c * Rat::from_int(m[i] as i64));
                    }
                    add(m.clone(), c * &self.b[i]);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// x · el for an sl(n+1) basis label.
    pub fn act(&self, label: usize, el: &CarrierElement) -> CarrierElement {
        self.apply_terms(&self.images[label], el)
    }

    /// Action of an arbitrary element of sl(n+1), given as a matrix.
    pub fn act_matrix(&self, x: &RatMatrix, el: &CarrierElement) -> CarrierElement {
        self.apply_terms(&self.omega_of_matrix(x), el)
    }

    /// e^{b·x} ⊗ v_μ.
    pub fn generator(&self, mu: usize) -> CarrierElement {
        let mut v = vec![Rat::zero(); self.v.dim];
        v[mu] = Rat::one();
        BTreeMap::from([(vec![0; self.n], v)])
    }

    /// Seeded random element: monomials of degree ≤ `deg`, small integer coefficients.
    pub fn random_element(&self, rng: &mut ChaCha8Rng, terms: usize, deg: u32) -> CarrierElement {
        let mut el: CarrierElement = BTreeMap::new();
        for _ in 0..terms {
            let mut m = vec![0u32; self.n];
            for _ in 0..rng.gen_range(0..=deg) {
                m[rng.gen_range(0..self.n)] += 1;
            }
            let v: Vec<Rat> = (0..self.v.dim).map(|_| Rat::from_int(rng.gen_range(-3..=3))).collect();
            let e = el.entry(m).or_insert_with(|| vec![Rat::zero(); self.v.dim]);
            for (a, x) in e.iter_mut().zip(v) {
                *a += x;
            }
        }
        el.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        el
    }

    /// Number of basis pairs (x, y) with ω([x,y])c ≠ ω(x)ω(y)c − ω(y)ω(x)c on some sample.
    pub fn bracket_failures(&self, samples: &[CarrierElement]) -> usize {
        let g = &self.sl;
        let mut bad = 0;
        for a in 0..g.dim() {
            for b in a + 1..g.dim() {
                let ok = samples.iter().all(|c| {
                    let xy = self.act(a, &self.act(b, c));
                    let yx = self.act(b, &self.act(a, c));
                    let lhs = self.act_matrix(&g.combine(g.bracket(a, b)), c);
                    sub(&sub(&xy, &yx), &lhs).is_empty()
                });
                if !ok {
                    bad += 1;
                }
            }
        }
        bad
    }

    /// Action of a polynomial in the sl(n+1) Cartan basis h_1, …, h_n.
    pub fn act_poly(&self, p: &Poly, el: &CarrierElement) -> CarrierElement {
        let labels = self.sl.cartan_labels();
        let mut out: CarrierElement = BTreeMap::new();
        for (e, c) in p.terms() {
            let mut cur = el.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    cur = self.act(labels[i], &cur);
                }
            }
            out = add_scaled(&out, &cur, c);
        }
        out
    }
}

fn add_scaled(a: &CarrierElement, b: &CarrierElement, c: &Rat) -> CarrierElement {
    let mut out = a.clone();
    for (m, v) in b {
        let e = out.entry(m.clone()).or_insert_with(|| vec![Rat::zero(); v.len()]);
        for (x, y) in e.iter_mut().zip(v) {
            *x += c * y;
        }
    }
    out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    out
}

fn sub(a: &CarrierElement, b: &CarrierElement) -> CarrierElement {
    add_scaled(a, b, &Rat::from_int(-1))
}

/// Readings consistent with the bracket relations for every S ⊆ {1..n},
/// on seeded random samples with V = `v`.
pub fn consistent_readings(b: &[Rat], v: &FiniteRep, samples: usize, seed: u64) -> Result<Vec<OmegaReading>> {
    let n = b.len();
    let mut ok = Vec::new();
    'reading: for r in OmegaReading::all() {
        for mask in 0..(1usize << n) {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            let c = weyl_carrier_with(b, v.clone(), &s, r)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ mask as u64);
            let els: Vec<_> = (0..samples).map(|_| c.random_element(&mut rng, 3, 2)).collect();
            if c.bracket_failures(&els) > 0 {
                continue 'reading;
            }
        }
        ok.push(r);
    }
    Ok(ok)
}

/// θ^m e^{b·x} in monomials, θ_k = x_k∂_k acting by x^a ↦ a_k x^a + b_k x^{a+e_k}.
fn theta_power_on_exp(m: &[u32], b: &[Rat]) -> BTreeMap<Monomial, Rat> {
    let mut cur: BTreeMap<Monomial, Rat> = BTreeMap::from([(vec![0; m.len()], Rat::one())]);
    for (k, &mk) in m.iter().enumerate() {
        for _ in 0..mk {
            let mut next: BTreeMap<Monomial, Rat> = BTreeMap::new();
            for (a, c) in &cur {
                if a[k] > 0 {
                    *next.entry(a.clone()).or_insert_with(Rat::zero) += c * Rat::from_int(a[k] as i64);
                }
                let mut a2 = a.clone();
                a2[k] += 1;
                *next.entry(a2).or_insert_with(Rat::zero) += c * &b[k];
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
    }
    cur
}

/// P(θ) with P(θ) e^{b·x} = q(x) e^{b·x}, by descending graded order.
fn solve_theta(q: &BTreeMap<Monomial, Rat>, b: &[Rat]) -> Result<Poly> {
    let n = b.len();
    let mut rem = q.clone();
    let mut out = Poly::zero(n);
    let key = |m: &Monomial| (m.iter().sum::<u32>(), m.clone());
    while let Some(m) = rem.keys().max_by_key(|m| key(m)).cloned() {
        let c = rem[&m].clone();
        let lead: Rat = m.iter().zip(b).map(|(&k, bk)| bk.pow(k as i32)).product();
        if lead.is_zero() {
            return Err(Error::Invalid("triangular solve hit a zero pivot".into()));
        }
        let coef = &c / &lead;
        for (a, x) in theta_power_on_exp(&m, b) {
            let e = rem.entry(a).or_insert_with(Rat::zero);
            *e -= &coef * &x;
        }
        rem.retain(|_, x| !x.is_zero());
        if rem.contains_key(&m) {
            return Err(Error::Invalid("triangular solve did not eliminate its pivot".into()));
        }
        out.add_term(m, coef);
    }
    Ok(out)
}

/// h̃_k in h-coordinates: h̃_k = Σ_j ([j ≥ k] − j/(n+1)) h_j (1-based j, k).
pub fn htilde_in_h(n: usize, k: usize) -> Poly {
    let coeffs: Vec<Rat> = (0..n)
        .map(|j| {
            let ind = if j >= k { Rat::one() } else { Rat::zero() };
            ind - Rat::new(j as i64 + 1, n as i64 + 1)
        })
        .collect();
    Poly::linear(&coeffs, Rat::zero())
}

/// λ(h̃_k) for λ in h-coordinates.
pub fn htilde_values(lambda: &Weight) -> Vec<Rat> {
    let n = lambda.len();
    (0..n).map(|k| htilde_in_h(n, k).eval_unchecked(&lambda.0)).collect()
}

/// The U(h)-free form of T(𝒪e^{b·x}, V, S) on generators e^{b·x} ⊗ v_μ.
pub fn weyl_to_free(c: &WeylCarrier) -> Result<FreeHModule> {
    let n = c.n;
    let g = c.sl.clone();
    let r = c.v.dim;
    let to_h: Vec<Poly> = (0..n).map(|k| htilde_in_h(n, k)).collect();
    let mut action = Vec::with_capacity(g.dim());
    for a in 0..g.dim() {
        let mut m = PolyMatrix::zeros(r, r, n);
        for mu in 0..r {
            let img = c.act(a, &c.generator(mu));
            for nu in 0..r {
                let q: BTreeMap<Monomial, Rat> = img
                    .iter()
                    .filter(|(_, v)| !v[nu].is_zero())
                    .map(|(mono, v)| (mono.clone(), v[nu].clone()))
                    .collect();
                if q.is_empty() {
                    continue;
                }
                let p_theta = solve_theta(&q, &c.b)?;
                // θ_k = −h̃_k + ν_k − 1 (k ∉ S) or h̃_k − ν_k (k ∈ S), ν_k = ν(E_kk)
                let nu_w = &c.v.weights[nu].0;
                let subs: Vec<Poly> = (0..n)
                    .map(|k| {
                        if c.s[k] {
                            &to_h[k] - &Poly::constant(n, nu_w[k].clone())
                        } else {
                            &Poly::constant(n, &nu_w[k] - &Rat::one()) - &to_h[k]
                        }
                    })
                    .collect();
                m[(nu, mu)] = p_theta.compose(&subs);
            }
        }
        action.push(m);
    }
    let s: Vec<usize> = (0..n).filter(|&k| c.s[k]).map(|k| k + 1).collect();
    FreeHModule::new(
        g,
        r,
        action,
        ModuleMeta {
            constructor: "weyl".into(),
            params: json!({ "b": c.b, "S": s, "v_highest_weight": c.v.highest_weight }),
            notes: vec![format!("omega_S reading: {}", c.reading.describe())],
        },
    )
}

/// E(b, λ, S) = T(𝒪e^{b·x}, L_{gl(n)}(λ + (n+1)ω_n), S), λ in h-coordinates.
pub fn exponential_module(b: &[Rat], lambda: &Weight, s: &[usize]) -> Result<FreeHModule> {
    let n = b.len();
    if lambda.len() != n {
        return Err(Error::Dimension(format!("λ has {} coordinates, expected {n}", lambda.len())));
    }
    // (n+1)ω_n takes the value 1 on every h̃_k.
    let mu = Weight(htilde_values(lambda).into_iter().map(|x| x + Rat::one()).collect());
    let v = irrep_gl(n, &mu)?;
    let c = weyl_carrier(b, v, s)?;
    let mut m = weyl_to_free(&c)?;
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    m.meta.constructor = "exponential".into();
    m.meta.params = json!({ "b": b, "lambda": lambda, "S": sorted });
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::liealg::Levi;
    use proptest::prelude::*;
    use rand::Rng;

    fn gl_rep(mu: &[Rat]) -> FiniteRep {
        irrep_gl(mu.len(), &Weight(mu.to_vec())).unwrap()
    }

    #[test]
    fn htilde_conversion() {
        let g = build_algebra(Family::A, 3).unwrap();
        for k in 0..3 {
            let p = htilde_in_h(3, k);
            let coords: Vec<Rat> = (0..3).map(|j| p.coeff(&{
                let mut e = vec![0; 3];
                e[j] = 1;
                e
            })).collect();
            let mut expect = RatMatrix::scalar(4, &q(-1, 4));
            expect[(k, k)] += Rat::one();
            assert_eq!(g.cartan_matrix_of(&coords), expect);
        }
    }

    #[test]
    fn generator_actions() {
        let b = vec![q(2, 1), q(-1, 3)];
        let v = gl_rep(&[q(5, 2), q(1, 2)]);
        let c = weyl_carrier(&b, v, &[]).unwrap();
        let g = c.algebra().clone();
        // E_{n+1,j} · e^{b·x} ⊗ v = −x_j e^{b·x} ⊗ v
        let e31 = g.label("E3,1").unwrap();
        let out = c.act(e31, &c.generator(0));
        assert_eq!(out.len(), 1);
        assert_eq!(out[&vec![1, 0]][0], q(-1, 1));
        // h̃_k · e^{b·x} ⊗ v_μ = (−b_k x_k + μ(E_kk) − 1) e^{b·x} ⊗ v_μ
        let mu = c.v.weights[0].clone();
        let mut ht = RatMatrix::scalar(3, &q(-1, 3));
        ht[(0, 0)] += Rat::one();
        let out = c.act_matrix(&ht, &c.generator(0));
        assert_eq!(out[&vec![1, 0]][0], -&b[0]);
        assert_eq!(out[&vec![0, 0]][0], &mu.0[0] - &Rat::one());
    }

    #[test]
    fn unique_consistent_reading() {
        let b = vec![q(1, 1), q(2, 1)];
        let v = gl_rep(&[q(1, 1), q(0, 1)]);
        let ok = consistent_readings(&b, &v, 4, 11).unwrap();
        assert_eq!(ok, vec![OmegaReading::consistent()]);
    }

    #[test]
    fn sl2_exponential_is_degree_one() {
        let m = exponential_module(&[q(3, 1)], &Weight(vec![q(0, 1)]), &[]).unwrap();
        assert_eq!(m.rank, 1);
        let f = m.algebra.label("E2,1").unwrap();
        assert_eq!(m.action[f][(0, 0)].total_degree(), 1);
        assert!(m.validate_bracket().pass);
    }

    #[test]
    fn exponential_modules_validate() {
        for (b, s) in [(vec![q(1, 1), q(1, 1)], vec![]), (vec![q(2, 1), q(-1, 3)], vec![2]), (vec![q(1, 1), q(1, 1)], vec![1, 2])] {
            for lam in [Weight(vec![q(0, 1), q(0, 1)]), Weight(vec![q(1, 1), q(-1, 2)])] {
                let m = exponential_module(&b, &lam, &s).unwrap();
                let r = m.validate_bracket();
                assert!(r.pass, "b={b:?} S={s:?} λ={}", lam.pretty());
                let gl = build_algebra(Family::Gl, 2).unwrap();
                let mu = Weight(htilde_values(&lam).into_iter().map(|x| x + Rat::one()).collect());
                assert_eq!(Rat::from(m.rank), crate::liealg::weyl_dim(&gl, &Levi::full(&gl), &mu).unwrap());
            }
        }
    }

    #[test]
    fn fingerprint_matches_highest_weight() {
        // E(b, λ, ∅) has the central character of L(λ)
        let g = build_algebra(Family::A, 2).unwrap();
        let lam = Weight(vec![q(1, 1), q(1, 3)]);
        let m = exponential_module(&[q(1, 1), q(2, 1)], &lam, &[]).unwrap();
        let fp = m.default_fingerprint().unwrap();
        for (k, val) in fp {
            let z = crate::liealg::gelfand_invariant(&g, k).unwrap();
            let hc = crate::liealg::verma_hc_eigenvalue(&g, &z, &lam).unwrap();
            assert_eq!(val.scalar(), Some(&hc), "C_{k}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]
        #[test]
        fn free_form_matches_carrier(seed in 0u64..1000, mask in 0usize..4) {
            let b = vec![q(2, 1), q(-1, 3)];
            let s: Vec<usize> = (0..2).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            let c = weyl_carrier(&b, gl_rep(&[q(2, 1), q(1, 1)]), &s).unwrap();
            let m = weyl_to_free(&c).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..2 {
                let a = rng.gen_range(0..m.algebra.dim());
                let mu = rng.gen_range(0..m.rank);
                let p = Poly::from_terms(2, (0..3).map(|_| (vec![rng.gen_range(0..2), rng.gen_range(0..2)], Rat::from_int(rng.gen_range(-3..4)))));
                let mut coeffs = vec![Poly::zero(2); m.rank];
                coeffs[mu] = p.clone();
                let free = m.act(a, &coeffs);
                let via_free = free.iter().enumerate().fold(BTreeMap::new(), |acc, (nu, q)| add_scaled(&acc, &c.act_poly(q, &c.generator(nu)), &Rat::one()));
                let direct = c.act(a, &c.act_poly(&p, &c.generator(mu)));
                prop_assert_eq!(via_free, direct);
            }
        }
    }
}
