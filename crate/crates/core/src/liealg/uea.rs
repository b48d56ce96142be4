//! Elements of U(g) as linear combinations of words, Gelfand's central
//! elements, and Harish-Chandra eigenvalues on Verma modules.

use std::collections::{BTreeMap, HashMap};

use super::algebra::{BasisKind, LieAlgebraData, Weight};
use super::rep::FiniteRep;
use crate::error::{Error, Result};
use crate::exactalg::{Poly, Rat, RatMatrix};

/// Σ c_w x_{w_1} ⋯ x_{w_k}, words over basis labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UEAWord {
    terms: BTreeMap<Vec<usize>, Rat>,
}

impl UEAWord {
    pub fn zero() -> UEAWord {
        UEAWord::default()
    }

    pub fn one() -> UEAWord {
        UEAWord::from_terms([(Vec::new(), Rat::one())])
    }

    pub fn letter(a: usize) -> UEAWord {
        UEAWord::from_terms([(vec![a], Rat::one())])
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Vec<usize>, Rat)>) -> UEAWord {
        let mut terms: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
        for (w, c) in it {
            *terms.entry(w).or_insert_with(Rat::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        UEAWord { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, o: &UEAWord) -> UEAWord {
        UEAWord::from_terms(self.terms.iter().chain(&o.terms).map(|(w, c)| (w.clone(), c.clone())))
    }

    pub fn scale(&self, c: &Rat) -> UEAWord {
        UEAWord::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    /// Concatenation product.
    pub fn mul(&self, o: &UEAWord) -> UEAWord {
        let mut out = Vec::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.push((w, x * y));
            }
        }
        UEAWord::from_terms(out)
    }

    /// Weight of a single word: the sum of its letters' weights.
    pub fn word_weight(g: &LieAlgebraData, w: &[usize]) -> Weight {
        w.iter().fold(Weight::zero(g.cartan_dim()), |acc, &a| &acc + g.weight_of(a))
    }

    /// Lies in the commutant of U(h).
    pub fn is_weight_zero(&self, g: &LieAlgebraData) -> bool {
        self.terms.keys().all(|w| UEAWord::word_weight(g, w).is_zero())
    }

    /// Action matrix on a finite-dimensional representation.
    pub fn act(&self, rep: &FiniteRep) -> RatMatrix {
        let mut total = RatMatrix::zeros(rep.dim, rep.dim);
        // Cache products of suffixes: words share tails in practice.
        let mut cache: HashMap<Vec<usize>, RatMatrix> = HashMap::new();
        for (w, c) in &self.terms {
            let m = suffix_product(w, rep, &mut cache);
            total = total.add(&m.scale(c));
        }
        total
    }
}

fn suffix_product(w: &[usize], rep: &FiniteRep, cache: &mut HashMap<Vec<usize>, RatMatrix>) -> RatMatrix {
    if w.is_empty() {
        return RatMatrix::identity(rep.dim);
    }
    if let Some(m) = cache.get(w) {
        return m.clone();
    }
    let tail = suffix_product(&w[1..], rep, cache);
    let m = rep.action[w[0]].mul(&tail);
    cache.insert(w.to_vec(), m.clone());
    m
}

/// Gram-dual basis of the trace form of the defining representation.
fn dual_basis(g: &LieAlgebraData) -> Result<Vec<RatMatrix>> {
    let d = g.dim();
    let mut gram = RatMatrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            gram[(a, b)] = g.basis[a].matrix.mul(&g.basis[b].matrix).trace();
        }
    }
    let inv = gram.inverse().ok_or_else(|| Error::Invalid("trace form is degenerate".into()))?;
    Ok((0..d)
        .map(|a| {
            let mut m = RatMatrix::zeros(g.size, g.size);
            for b in 0..d {
                if !inv[(a, b)].is_zero() {
                    m = m.add(&g.basis[b].matrix.scale(&inv[(a, b)]));
                }
            }
            m
        })
        .collect())
}

/// C_k = Σ tr(x^{a_1} ⋯ x^{a_k}) x_{a_1} ⋯ x_{a_k}, with x^a dual to x_a under
/// the trace form. This is the image of the invariant tensor tr(X^k), so it is
/// central. For gl(N) it is the familiar Σ E_{i_1 i_2} E_{i_2 i_3} ⋯ E_{i_k i_1}.
pub fn gelfand_invariant(g: &LieAlgebraData, k: usize) -> Result<UEAWord> {
    if k < 2 || k > g.size {
        return Err(Error::Invalid(format!("Gelfand invariant degree {k} outside 2..={}", g.size)));
    }
    let dual = dual_basis(g)?;
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(k);
    fn dfs(
        dual: &[RatMatrix],
        k: usize,
        prefix: &RatMatrix,
        word: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Rat)>,
    ) {
        if word.len() == k {
            let t = prefix.trace();
            if !t.is_zero() {
                out.push((word.clone(), t));
            }
            return;
        }
        for (a, m) in dual.iter().enumerate() {
            let p = prefix.mul(m);
            if p.is_zero() {
                continue;
            }
            word.push(a);
            dfs(dual, k, &p, word, out);
            word.pop();
        }
    }
    dfs(&dual, k, &RatMatrix::identity(g.size), &mut word, &mut out);
    Ok(UEAWord::from_terms(out))
}

/// The default central elements: C_2, …, C_{min(N,4)}.
pub fn default_central_elements(g: &LieAlgebraData) -> Result<Vec<UEAWord>> {
    (2..=g.size.min(4)).map(|k| gelfand_invariant(g, k)).collect()
}

/// Verma module M(λ) with λ symbolic: vectors are Σ p_w(λ) f_w v_λ over
/// ordered words f_w in the negative root vectors (PBW basis, labels sorted).
struct SymbolicVerma<'a> {
    g: &'a LieAlgebraData,
    nvars: usize,
    negative: Vec<bool>,
    act_memo: HashMap<(usize, Vec<usize>), Vec<(Vec<usize>, Poly)>>,
    lmul_memo: HashMap<(usize, Vec<usize>), Vec<(Vec<usize>, Rat)>>,
}

type State = BTreeMap<Vec<usize>, Poly>;

impl<'a> SymbolicVerma<'a> {
    fn new(g: &'a LieAlgebraData) -> Self {
        let negative =
            (0..g.dim()).map(|a| matches!(g.basis[a].kind, BasisKind::Root(r) if !g.roots[r].positive)).collect();
        SymbolicVerma { g, nvars: g.cartan_dim(), negative, act_memo: HashMap::new(), lmul_memo: HashMap::new() }
    }

    /// f · f_w inside U(n⁻), re-sorted into PBW order.
    fn lmul(&mut self, f: usize, w: &[usize]) -> Vec<(Vec<usize>, Rat)> {
        if w.is_empty() || f <= w[0] {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(f);
            v.extend_from_slice(w);
            return vec![(v, Rat::one())];
        }
        let key = (f, w.to_vec());
        if let Some(r) = self.lmul_memo.get(&key) {
            return r.clone();
        }
        // f g_1 rest = g_1 (f rest) + [f, g_1] rest
        let g1 = w[0];
        let mut acc: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
        for (u, c) in self.lmul(f, &w[1..]) {
            for (v, d) in self.lmul(g1, &u) {
                *acc.entry(v).or_insert_with(Rat::zero) += &c * &d;
            }
        }
        let br: Vec<(usize, Rat)> = self.g.bracket(f, g1).to_vec();
        for (h, c) in br {
            for (v, d) in self.lmul(h, &w[1..]) {
                *acc.entry(v).or_insert_with(Rat::zero) += &c * &d;
            }
        }
        let r: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.lmul_memo.insert(key, r.clone());
        r
    }

    /// x · f_w v_λ.
    fn act(&mut self, x: usize, w: &[usize]) -> Vec<(Vec<usize>, Poly)> {
        if let BasisKind::Cartan(i) = self.g.basis[x].kind {
            let shift = UEAWord::word_weight(self.g, w);
            let p = &Poly::var(self.nvars, i) + &Poly::constant(self.nvars, shift.0[i].clone());
            return if p.is_zero() { vec![] } else { vec![(w.to_vec(), p)] };
        }
        if self.negative[x] {
            return self.lmul(x, w).into_iter().map(|(v, c)| (v, Poly::constant(self.nvars, c))).collect();
        }
        if w.is_empty() {
            return vec![];
        }
        let key = (x, w.to_vec());
        if let Some(r) = self.act_memo.get(&key) {
            return r.clone();
        }
        // x f_1 rest = f_1 (x rest) + [x, f_1] rest
        let f1 = w[0];
        let mut acc: State = BTreeMap::new();
        for (u, p) in self.act(x, &w[1..]) {
            for (v, d) in self.lmul(f1, &u) {
                let e = acc.entry(v).or_insert_with(|| Poly::zero(self.nvars));
                *e = &*e + &p.scale(&d);
            }
        }
        let br: Vec<(usize, Rat)> = self.g.bracket(x, f1).to_vec();
        for (h, c) in br {
            for (v, p) in self.act(h, &w[1..]) {
                let e = acc.entry(v).or_insert_with(|| Poly::zero(self.nvars));
                *e = &*e + &p.scale(&c);
            }
        }
        let r: Vec<_> = acc.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        self.act_memo.insert(key, r.clone());
        r
    }

    fn apply_word(&mut self, word: &[usize]) -> State {
        let mut state: State = BTreeMap::new();
        state.insert(Vec::new(), Poly::one(self.nvars));
        for &x in word.iter().rev() {
            let mut next: State = BTreeMap::new();
            for (w, p) in &state {
                for (v, q) in self.act(x, w) {
                    let e = next.entry(v).or_insert_with(|| Poly::zero(self.nvars));
                    *e = &*e + &(p * &q);
                }
            }
            next.retain(|_, p| !p.is_zero());
            state = next;
            if state.is_empty() {
                break;
            }
        }
        state
    }
}

/// The polynomial λ ↦ χ_λ(z), in the Cartan-basis coordinates of λ.
pub fn hc_polynomial(g: &LieAlgebraData, z: &UEAWord) -> Result<Poly> {
    if !z.is_weight_zero(g) {
        return Err(Error::NotWeightZero("element has words of nonzero weight".into()));
    }
    let mut verma = SymbolicVerma::new(g);
    let mut total = Poly::zero(g.cartan_dim());
    for (w, c) in z.terms() {
        let st = verma.apply_word(w);
        // weight zero: only the highest-weight line survives
        if let Some(p) = st.get(&Vec::new()) {
            total = &total + &p.scale(c);
        }
    }
    Ok(total)
}

/// Scalar by which z acts on the highest-weight vector of M(λ).
pub fn verma_hc_eigenvalue(g: &LieAlgebraData, z: &UEAWord, lambda: &Weight) -> Result<Rat> {
    hc_polynomial(g, z)?.eval(&lambda.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::liealg::algebra::{build_algebra, Family};
    use crate::liealg::rep::irrep;
    use crate::liealg::weyl::weyl_group;
    use proptest::prelude::*;

    fn commutes_with_generators(z: &UEAWord, rep: &FiniteRep) -> bool {
        let m = z.act(rep);
        rep.action.iter().all(|x| x.mul(&m) == m.mul(x))
    }

    #[test]
    fn trivial_eigenvalues() {
        let g = build_algebra(Family::A, 2).unwrap();
        let lam = Weight(vec![q(3, 7), q(-2, 1)]);
        assert_eq!(verma_hc_eigenvalue(&g, &UEAWord::one(), &lam).unwrap(), q(1, 1));
        for i in 0..2 {
            let h = g.label(&format!("h{}", i + 1)).unwrap();
            assert_eq!(verma_hc_eigenvalue(&g, &UEAWord::letter(h), &lam).unwrap(), lam.0[i]);
        }
        let e = g.label("E1,2").unwrap();
        assert!(matches!(verma_hc_eigenvalue(&g, &UEAWord::letter(e), &lam), Err(Error::NotWeightZero(_))));
    }

    #[test]
    fn sl2_casimir() {
        let g = build_algebra(Family::A, 1).unwrap();
        let c = gelfand_invariant(&g, 2).unwrap();
        assert!(c.is_weight_zero(&g));
        // trace-dual Casimir: h²/2 + ef + fe, so χ_λ = λ²/2 + λ
        assert_eq!(hc_polynomial(&g, &c).unwrap().to_canonical(), "1/2*h1^2 + 1/1*h1");
        for m in 0..5 {
            let rep = irrep(&g, &Weight::from_ints(&[m])).unwrap();
            let mat = c.act(&rep);
            let v = q(m * m, 2) + q(m, 1);
            assert_eq!(mat, RatMatrix::scalar(rep.dim, &v));
        }
        let lam = Weight(vec![q(5, 3)]);
        let s = crate::liealg::weyl::WeylElement::new(&g, vec![1]);
        assert_eq!(
            verma_hc_eigenvalue(&g, &c, &lam).unwrap(),
            verma_hc_eigenvalue(&g, &c, &s.dot(&g, &lam)).unwrap()
        );
    }

    #[test]
    fn invariants_are_central_on_irreps() {
        for (fam, n) in [(Family::A, 2), (Family::C, 2)] {
            let g = build_algebra(fam, n).unwrap();
            let reps = [g.fundamental[0].clone(), g.rho.clone()];
            for k in 2..=g.size.min(4) {
                let z = gelfand_invariant(&g, k).unwrap();
                assert!(z.is_weight_zero(&g));
                let p = hc_polynomial(&g, &z).unwrap();
                for hw in &reps {
                    let rep = irrep(&g, hw).unwrap();
                    assert!(commutes_with_generators(&z, &rep), "{fam:?}{n} C_{k}");
                    // acts by χ_λ(z), read off on the highest weight vector
                    let m = z.act(&rep);
                    assert_eq!(m, RatMatrix::scalar(rep.dim, &p.eval(&hw.0).unwrap()));
                }
            }
        }
    }

    #[test]
    fn gl_invariant_matches_matrix_units() {
        // For gl(2), C_2 = Σ E_ij E_ji.
        let g = build_algebra(Family::Gl, 2).unwrap();
        let z = gelfand_invariant(&g, 2).unwrap();
        let mut expect = Vec::new();
        for i in 1..=2 {
            for j in 1..=2 {
                let a = g.label(&format!("E{i},{j}")).unwrap();
                let b = g.label(&format!("E{j},{i}")).unwrap();
                expect.push((vec![a, b], Rat::one()));
            }
        }
        assert_eq!(z, UEAWord::from_terms(expect));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn harish_chandra_invariance(a in -6i64..6, b in -6i64..6, d in 1i64..4) {
            for fam in [Family::A, Family::C] {
                let g = build_algebra(fam, 2).unwrap();
                let lam = Weight(vec![Rat::new(a, d), Rat::new(b, 1)]);
                for k in 2..=3 {
                    let z = gelfand_invariant(&g, k).unwrap();
                    let p = hc_polynomial(&g, &z).unwrap();
                    let base = p.eval(&lam.0).unwrap();
                    for w in weyl_group(&g) {
                        prop_assert_eq!(p.eval(&w.dot(&g, &lam).0).unwrap(), base.clone());
                    }
                }
            }
        }
    }
}
