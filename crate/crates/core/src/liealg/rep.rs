//! Finite-dimensional irreducible representations and Weyl's dimension formula.
//!
//! An irrep L(λ) is cut out of ⊗_k (Λ^k ℂ^N)^{⊗a_k}, where a_k = ⟨λ, h_k⟩: the
//! product of top wedges e_1∧⋯∧e_k is a highest-weight vector of weight λ, and
//! the span of its images under the lowering operators is L(λ). For gl(n) the
//! remaining central part acts by a scalar.

use std::collections::{BTreeMap, HashMap};

use super::algebra::{Family, LieAlgebraData, Weight};
use crate::error::{Error, Result};
use crate::exactalg::{Rat, RatMatrix};

#[derive(Clone, Debug)]
pub struct FiniteRep {
    pub dim: usize,
    /// Action matrix per basis label.
    pub action: Vec<RatMatrix>,
    /// Weight of each basis vector (the basis is a weight basis).
    pub weights: Vec<Weight>,
    pub highest_weight: Weight,
}

impl FiniteRep {
    /// The one-dimensional representation on which h acts by `weight` and
    /// root vectors by zero. Only a representation when `weight` vanishes on
    /// [g, g] ∩ h, e.g. the trivial one or a gl(n) determinant power.
    pub fn character(g: &LieAlgebraData, weight: Weight) -> FiniteRep {
        let labels = g.cartan_labels();
        let action = (0..g.dim())
            .map(|a| match labels.iter().position(|&l| l == a) {
                Some(i) => RatMatrix::scalar(1, &weight.0[i]),
                None => RatMatrix::zeros(1, 1),
            })
            .collect();
        FiniteRep { dim: 1, action, weights: vec![weight.clone()], highest_weight: weight }
    }

    pub fn trivial(g: &LieAlgebraData) -> FiniteRep {
        FiniteRep::character(g, Weight::zero(g.cartan_dim()))
    }

    /// Action of an arbitrary element Σ c_a x_a.
    pub fn act(&self, terms: &[(usize, Rat)]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for (a, c) in terms {
            m = m.add(&self.action[*a].scale(c));
        }
        m
    }

    /// Action of an element given as a matrix in the defining representation.
    pub fn act_matrix(&self, g: &LieAlgebraData, x: &RatMatrix) -> Result<RatMatrix> {
        Ok(self.act(&g.expand(x)?))
    }

    /// Distinct weights with the basis indices carrying them, sorted.
    pub fn weight_spaces(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut m: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            m.entry(w.clone()).or_default().push(i);
        }
        m
    }

    /// Residuals of ρ([x,y]) = [ρ(x), ρ(y)] over all basis pairs.
    pub fn bracket_defects(&self, g: &LieAlgebraData) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for a in 0..g.dim() {
            for b in a + 1..g.dim() {
                let lhs = self.act(g.bracket(a, b));
                let rhs = self.action[a].mul(&self.action[b]).sub(&self.action[b].mul(&self.action[a]));
                if lhs != rhs {
                    bad.push((a, b));
                }
            }
        }
        bad
    }
}

type Key = Vec<usize>;
type SparseVec = BTreeMap<Key, Rat>;

/// k-subsets of 0..n in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

struct Wedge {
    subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Wedge {
    fn new(n: usize, k: usize) -> Wedge {
        let subsets = subsets(n, k);
        let index = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Wedge { subsets, index }
    }

    /// X acting on e_S as a derivation: Σ_{j∈S} Σ_i X_{ij} e_{S[j→i]}.
    fn apply(&self, x: &RatMatrix, s: usize) -> Vec<(usize, Rat)> {
        let set = &self.subsets[s];
        let mut out: BTreeMap<usize, Rat> = BTreeMap::new();
        for (pos, &j) in set.iter().enumerate() {
            for i in 0..x.rows() {
                let c = &x[(i, j)];
                if c.is_zero() || (i != j && set.contains(&i)) {
                    continue;
                }
                let mut t = set.clone();
                t[pos] = i;
                // sort with sign
                let mut sign = 1i64;
                let mut p = pos;
                while p > 0 && t[p - 1] > t[p] {
                    t.swap(p - 1, p);
                    p -= 1;
                    sign = -sign;
                }
                while p + 1 < t.len() && t[p] > t[p + 1] {
                    t.swap(p, p + 1);
                    p += 1;
                    sign = -sign;
                }
                let e = out.entry(self.index[&t]).or_insert_with(Rat::zero);
                *e += c * Rat::from_int(sign);
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

struct TensorSpace<'a> {
    g: &'a LieAlgebraData,
    factors: Vec<usize>,
    wedges: HashMap<usize, Wedge>,
}

impl<'a> TensorSpace<'a> {
    fn apply(&self, label: usize, v: &SparseVec) -> SparseVec {
        let x = &self.g.basis[label].matrix;
        let mut out = SparseVec::new();
        for (key, c) in v {
            for (f, &k) in self.factors.iter().enumerate() {
                for (s2, d) in self.wedges[&k].apply(x, key[f]) {
                    let mut nk = key.clone();
                    nk[f] = s2;
                    let e = out.entry(nk).or_insert_with(Rat::zero);
                    *e += c * &d;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn key_weight(&self, key: &Key) -> Weight {
        let labels = self.g.cartan_labels();
        Weight(
            labels
                .iter()
                .map(|&l| {
                    let m = &self.g.basis[l].matrix;
                    let mut t = Rat::zero();
                    for (f, &k) in self.factors.iter().enumerate() {
                        for &i in &self.wedges[&k].subsets[key[f]] {
                            t += &m[(i, i)];
                        }
                    }
                    t
                })
                .collect(),
        )
    }
}

/// Echelon basis of one weight space: vectors normalized to 1 at their pivot.
#[derive(Default)]
struct Echelon {
    vecs: Vec<SparseVec>,
    pivots: Vec<Key>,
}

impl Echelon {
    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (b, p) in self.vecs.iter().zip(&self.pivots) {
            if let Some(c) = r.get(p).cloned() {
                for (k, x) in b {
                    let e = r.entry(k.clone()).or_insert_with(Rat::zero);
                    *e -= &c * x;
                }
                r.retain(|_, x| !x.is_zero());
            }
        }
        r
    }

    /// Insert if independent; returns whether it was added.
    fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((p, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.recip();
        let r: SparseVec = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        // keep the basis fully reduced so coordinates are read off at pivots
        for b in &mut self.vecs {
            if let Some(cb) = b.get(&p).cloned() {
                for (k, x) in &r {
                    let e = b.entry(k.clone()).or_insert_with(Rat::zero);
                    *e -= &cb * x;
                }
                b.retain(|_, x| !x.is_zero());
            }
        }
        self.vecs.push(r);
        self.pivots.push(p);
        true
    }

    fn coords(&self, v: &SparseVec) -> Option<Vec<Rat>> {
        let c: Vec<Rat> = self.pivots.iter().map(|p| v.get(p).cloned().unwrap_or_else(Rat::zero)).collect();
        let mut r = v.clone();
        for (b, ci) in self.vecs.iter().zip(&c) {
            for (k, x) in b {
                let e = r.entry(k.clone()).or_insert_with(Rat::zero);
                *e -= ci * x;
            }
        }
        r.values().all(Rat::is_zero).then_some(c)
    }
}

/// L(λ) for λ dominant integral (for gl(n): sl-part dominant integral, any
/// rational central part).
pub fn irrep(g: &LieAlgebraData, lambda: &Weight) -> Result<FiniteRep> {
    if lambda.len() != g.cartan_dim() {
        return Err(Error::Dimension("weight length differs from the Cartan dimension".into()));
    }
    if !g.is_dominant_integral(lambda) {
        return Err(Error::NotDominant(lambda.pretty()));
    }
    let a: Vec<usize> = g.to_fundamental(lambda).iter().map(|x| x.to_i64().unwrap() as usize).collect();
    // Greedy factor choice: a_k copies of Λ^k.
    let mut factors = Vec::new();
    for (k, &ak) in a.iter().enumerate() {
        factors.extend(std::iter::repeat(k + 1).take(ak));
    }
    let mut wedges = HashMap::new();
    for &k in &factors {
        wedges.entry(k).or_insert_with(|| Wedge::new(g.size, k));
    }
    let space = TensorSpace { g, factors: factors.clone(), wedges };
    let top: Key = factors.iter().map(|_| 0).collect();
    let mut v0 = SparseVec::new();
    v0.insert(top.clone(), Rat::one());

    let sl_weight = space.key_weight(&top);
    let central = lambda - &sl_weight;
    if g.family != Family::Gl && !central.is_zero() {
        return Err(Error::Invalid("highest weight is not a sum of wedge weights".into()));
    }
    if g.family == Family::Gl && !central.0.windows(2).all(|w| w[0] == w[1]) {
        return Err(Error::Invalid("gl weight has a non-central remainder".into()));
    }
    for r in g.positive_roots() {
        if !space.apply(g.roots[r].label, &v0).is_empty() {
            return Err(Error::Invalid("top wedge vector is not highest".into()));
        }
    }

    // Generate level by level under the simple lowering operators.
    let lowering: Vec<usize> = (0..g.rank()).map(|i| g.simple_neg_label(i)).collect();
    let mut spaces: BTreeMap<Weight, Echelon> = BTreeMap::new();
    let mut order: Vec<(Weight, usize)> = Vec::new();
    spaces.entry(sl_weight.clone()).or_default().insert(&v0);
    order.push((sl_weight.clone(), 0));
    let mut frontier = vec![v0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for &f in &lowering {
                let u = space.apply(f, v);
                if u.is_empty() {
                    continue;
                }
                let w = space.key_weight(u.keys().next().unwrap());
                let e = spaces.entry(w.clone()).or_default();
                if e.insert(&u) {
                    order.push((w, e.vecs.len() - 1));
                    next.push(u);
                }
            }
        }
        frontier = next;
    }

    // Basis: weight spaces in sorted order, each in echelon order.
    let mut weights = Vec::new();
    let mut offset: BTreeMap<Weight, usize> = BTreeMap::new();
    for (w, e) in &spaces {
        offset.insert(w.clone(), weights.len());
        weights.extend(std::iter::repeat(w.clone()).take(e.vecs.len()));
    }
    let dim = weights.len();
    let labels = g.cartan_labels();
    let mut action = Vec::with_capacity(g.dim());
    for a in 0..g.dim() {
        let mut m = RatMatrix::zeros(dim, dim);
        for (w, e) in &spaces {
            let col0 = offset[w];
            let target = w + g.weight_of(a);
            for (j, v) in e.vecs.iter().enumerate() {
                let u = space.apply(a, v);
                if u.is_empty() {
                    continue;
                }
                let te = spaces
                    .get(&target)
                    .ok_or_else(|| Error::Invalid("generated space is not stable".into()))?;
                let c = te.coords(&u).ok_or_else(|| Error::Invalid("generated space is not stable".into()))?;
                let row0 = offset[&target];
                for (i, ci) in c.into_iter().enumerate() {
                    m[(row0 + i, col0 + j)] = ci;
                }
            }
        }
        if let Some(ci) = labels.iter().position(|&l| l == a) {
            if !central.0[ci].is_zero() {
                m = m.add(&RatMatrix::scalar(dim, &central.0[ci]));
            }
        }
        action.push(m);
    }
    let weights = weights.into_iter().map(|w| &w + &central).collect();
    Ok(FiniteRep { dim, action, weights, highest_weight: lambda.clone() })
}

/// L_{gl(n)}(μ), μ given in E_kk-coordinates.
pub fn irrep_gl(n: usize, mu: &Weight) -> Result<FiniteRep> {
    let g = super::algebra::build_algebra(Family::Gl, n)?;
    irrep(&g, mu)
}

/// A Levi subalgebra, given by a subset of simple roots (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Levi {
    pub simple: Vec<usize>,
}

impl Levi {
    pub fn full(g: &LieAlgebraData) -> Levi {
        Levi { simple: (0..g.rank()).collect() }
    }

    /// Positive roots of g supported on the Levi's simple roots.
    pub fn positive_roots(&self, g: &LieAlgebraData) -> Vec<usize> {
        g.positive_roots()
            .filter(|&r| g.roots[r].simple_coords.iter().enumerate().all(|(i, &c)| c == 0 || self.simple.contains(&i)))
            .collect()
    }
}

/// ∏_{α>0 in 𝔩} ⟨λ+ρ_𝔩, h_α⟩ / ⟨ρ_𝔩, h_α⟩.
pub fn weyl_dim(g: &LieAlgebraData, levi: &Levi, lambda: &Weight) -> Result<Rat> {
    for &i in &levi.simple {
        let v = g.pair_simple(lambda, i);
        if !v.is_integer() || v.is_negative() {
            return Err(Error::NotDominant(format!("{} for the Levi {:?}", lambda.pretty(), levi.simple)));
        }
    }
    let rank = g.rank();
    // coroots of g in the basis of simple coroots
    let simple_coroots = RatMatrix::from_cols(&(0..rank).map(|i| g.roots[g.simple[i]].coroot.clone()).collect::<Vec<_>>(), g.cartan_dim());
    let mut num = Rat::one();
    let mut den = Rat::one();
    for r in levi.positive_roots(g) {
        let rhs = RatMatrix::from_cols(&[g.roots[r].coroot.clone()], g.cartan_dim());
        let c = simple_coroots.solve(&rhs).ok_or_else(|| Error::Invalid("coroot outside simple coroot span".into()))?;
        let mut a = Rat::zero();
        let mut b = Rat::zero();
        for i in 0..rank {
            let ci = &c[(i, 0)];
            if ci.is_zero() {
                continue;
            }
            a += ci * (g.pair_simple(lambda, i) + Rat::one());
            b += ci.clone();
        }
        num *= a;
        den *= b;
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::liealg::algebra::build_algebra;
    use proptest::prelude::*;

    #[test]
    fn trivial_and_natural() {
        let g = build_algebra(Family::Gl, 2).unwrap();
        let t = irrep(&g, &Weight::zero(2)).unwrap();
        assert_eq!(t.dim, 1);
        assert!(t.action.iter().all(|m| m.is_zero()));
        let nat = irrep(&g, &Weight(vec![q(3, 2), q(1, 2)])).unwrap();
        assert_eq!(nat.dim, 2);
        // E_11 + E_22 acts by the central scalar 2 on the shifted natural rep
        let trace = nat.action[0].add(&nat.action[1]);
        assert_eq!(trace, RatMatrix::scalar(2, &q(2, 1)));
        assert!(nat.bracket_defects(&g).is_empty());
        let sym2 = irrep(&g, &Weight::from_ints(&[2, 0])).unwrap();
        assert_eq!(sym2.dim, 3);
    }

    #[test]
    fn gl1_is_a_character() {
        let g = build_algebra(Family::Gl, 1).unwrap();
        let r = irrep(&g, &Weight(vec![q(-7, 3)])).unwrap();
        assert_eq!(r.dim, 1);
        assert_eq!(r.action[0], RatMatrix::scalar(1, &q(-7, 3)));
        assert_eq!(weyl_dim(&g, &Levi::full(&g), &Weight(vec![q(5, 1)])).unwrap(), q(1, 1));
    }

    #[test]
    fn weyl_dim_examples() {
        let a1 = build_algebra(Family::A, 1).unwrap();
        for m in 0..6 {
            assert_eq!(weyl_dim(&a1, &Levi::full(&a1), &Weight::from_ints(&[m])).unwrap(), q(m + 1, 1));
        }
        let a2 = build_algebra(Family::A, 2).unwrap();
        assert_eq!(weyl_dim(&a2, &Levi::full(&a2), &a2.rho).unwrap(), q(8, 1));
        let adj = irrep(&a2, &a2.rho).unwrap();
        assert_eq!(adj.dim, 8);
        assert!(weyl_dim(&a2, &Levi::full(&a2), &Weight::from_ints(&[-1, 0])).is_err());
        // a Levi ignores the coordinates outside it
        assert_eq!(weyl_dim(&a2, &Levi { simple: vec![0] }, &Weight(vec![q(2, 1), q(-5, 3)])).unwrap(), q(3, 1));
    }

    #[test]
    fn type_c_irreps() {
        let c2 = build_algebra(Family::C, 2).unwrap();
        let nat = irrep(&c2, &c2.fundamental[0].clone()).unwrap();
        assert_eq!(nat.dim, 4);
        let w2 = irrep(&c2, &c2.fundamental[1].clone()).unwrap();
        assert_eq!(w2.dim, 5);
        let adj = irrep(&c2, &Weight::from_ints(&[2, 0])).unwrap();
        assert_eq!(adj.dim, 10);
        for r in [&nat, &w2, &adj] {
            assert!(r.bracket_defects(&c2).is_empty());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn dims_match_weyl(a in 0i64..3, b in 0i64..3, c in -3i64..3, d in 1i64..4) {
            let g = build_algebra(Family::Gl, 3).unwrap();
            // sl-part aω_1 + bω_2, central shift c/d
            let shift = Rat::new(c, d);
            let mu = Weight(vec![
                Rat::from_int(a + b) + &shift,
                Rat::from_int(b) + &shift,
                shift.clone(),
            ]);
            let r = irrep(&g, &mu).unwrap();
            prop_assert_eq!(Rat::from(r.dim), weyl_dim(&g, &Levi::full(&g), &mu).unwrap());
            prop_assert!(r.bracket_defects(&g).is_empty());
            // highest weight vector killed by positive root vectors
            let top = r.weights.iter().position(|w| w == &mu).unwrap();
            for rt in g.positive_roots() {
                prop_assert!(r.action[g.roots[rt].label].col(top).iter().all(Rat::is_zero));
            }
        }

        #[test]
        fn sl3_dims(a in 0i64..3, b in 0i64..3) {
            let g = build_algebra(Family::A, 2).unwrap();
            let lam = g.from_fundamental_ints(&[a, b]);
            let r = irrep(&g, &lam).unwrap();
            prop_assert_eq!(Rat::from(r.dim), weyl_dim(&g, &Levi::full(&g), &lam).unwrap());
            prop_assert_eq!(r.dim as i64, (a + 1) * (b + 1) * (a + b + 2) / 2);
        }
    }
}
