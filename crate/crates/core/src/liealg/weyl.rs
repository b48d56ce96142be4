//! Weyl group elements, the dot action, orbits and stabilizers.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::algebra::{LieAlgebraData, Weight};

/// A word s_{i_1} ⋯ s_{i_k} in simple reflections, 1-based indices.
///
/// Acting on a weight, the rightmost letter is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    pub word: Vec<usize>,
    /// A reduced word for the same element.
    pub reduced: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> WeylElement {
        WeylElement { word: Vec::new(), reduced: Vec::new() }
    }

    pub fn new(g: &LieAlgebraData, word: Vec<usize>) -> WeylElement {
        assert!(word.iter().all(|&i| i >= 1 && i <= g.rank()), "simple reflection index out of range");
        let reduced = reduced_word(g, &apply_word(g, &word, &g.rho));
        WeylElement { word, reduced }
    }

    /// w(λ).
    pub fn act(&self, g: &LieAlgebraData, lambda: &Weight) -> Weight {
        apply_word(g, &self.reduced, lambda)
    }

    /// w·λ = w(λ+ρ) − ρ.
    pub fn dot(&self, g: &LieAlgebraData, lambda: &Weight) -> Weight {
        &self.act(g, &(lambda + &g.rho)) - &g.rho
    }

    pub fn length(&self) -> usize {
        self.reduced.len()
    }

    pub fn is_reduced(&self) -> bool {
        self.word.len() == self.reduced.len()
    }

    pub fn inverse(&self, g: &LieAlgebraData) -> WeylElement {
        WeylElement::new(g, self.word.iter().rev().copied().collect())
    }

    /// Canonical key: the image of ρ determines the element.
    pub fn key(&self, g: &LieAlgebraData) -> Weight {
        self.act(g, &g.rho)
    }

    pub fn compose(&self, g: &LieAlgebraData, other: &WeylElement) -> WeylElement {
        let mut w = self.word.clone();
        w.extend_from_slice(&other.word);
        WeylElement::new(g, w)
    }
}

fn apply_word(g: &LieAlgebraData, word: &[usize], lambda: &Weight) -> Weight {
    let mut w = lambda.clone();
    for &i in word.iter().rev() {
        w = g.simple_reflection(i - 1, &w);
    }
    w
}

/// Reduced word for the element sending ρ to `mu`.
fn reduced_word(g: &LieAlgebraData, mu: &Weight) -> Vec<usize> {
    let mut mu = mu.clone();
    let mut word = Vec::new();
    while let Some(i) = (0..g.rank()).find(|&i| g.pair_simple(&mu, i).is_negative()) {
        word.push(i + 1);
        mu = g.simple_reflection(i, &mu);
    }
    word
}

/// dot_action(w, λ) = w·λ.
pub fn dot_action(g: &LieAlgebraData, w: &WeylElement, lambda: &Weight) -> Weight {
    w.dot(g, lambda)
}

/// All elements of W, in breadth-first order from the identity.
pub fn weyl_group(g: &LieAlgebraData) -> Vec<WeylElement> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(g.rho.clone());
    queue.push_back(g.rho.clone());
    while let Some(mu) = queue.pop_front() {
        let word = reduced_word(g, &mu);
        out.push(WeylElement { word: word.clone(), reduced: word });
        for i in 0..g.rank() {
            let nu = g.simple_reflection(i, &mu);
            if seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    out
}

/// The dot-orbit W·λ, sorted.
pub fn dot_orbit(g: &LieAlgebraData, lambda: &Weight) -> Vec<Weight> {
    let shifted = lambda + &g.rho;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(shifted.clone());
    queue.push_back(shifted);
    while let Some(mu) = queue.pop_front() {
        for i in 0..g.rank() {
            let nu = g.simple_reflection(i, &mu);
            if seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    seen.into_iter().map(|w| &w - &g.rho).collect()
}

/// χ_λ = χ_μ, i.e. μ ∈ W·λ.
pub fn same_central_character(g: &LieAlgebraData, lambda: &Weight, mu: &Weight) -> bool {
    dot_orbit(g, lambda).binary_search(mu).is_ok()
}

/// W_λ under the dot action, as canonical keys.
pub fn dot_stabilizer(g: &LieAlgebraData, lambda: &Weight) -> BTreeSet<Weight> {
    weyl_group(g).into_iter().filter(|w| &w.dot(g, lambda) == lambda).map(|w| w.key(g)).collect()
}

/// (λ, μ) ∈ Υ′: λ+ρ, μ+ρ ∈ D, λ−μ ∈ P and W_λ = W_μ.
pub fn translation_compatible(g: &LieAlgebraData, lambda: &Weight, mu: &Weight) -> bool {
    g.in_d(&(lambda + &g.rho))
        && g.in_d(&(mu + &g.rho))
        && g.is_integral(&(lambda - mu))
        && dot_stabilizer(g, lambda) == dot_stabilizer(g, mu)
}

/// The dominant element of the (linear) W-orbit of λ, with a word reaching it.
pub fn dominant_conjugate(g: &LieAlgebraData, lambda: &Weight) -> (Weight, WeylElement) {
    let mut mu = lambda.clone();
    let mut word = Vec::new();
    // Only terminates for real weights, which is all we ever have.
    while let Some(i) = (0..g.rank()).find(|&i| g.pair_simple(&mu, i).is_negative()) {
        word.insert(0, i + 1);
        mu = g.simple_reflection(i, &mu);
    }
    let w = WeylElement::new(g, word);
    (mu, w)
}

/// w_k = s_n s_{n−1} ⋯ s_{n−k+1}; w_0 is the identity.
pub fn w_k(g: &LieAlgebraData, k: usize) -> WeylElement {
    let n = g.rank();
    assert!(k <= n);
    WeylElement::new(g, (n - k + 1..=n).rev().collect())
}

/// Positive-root inversions of w, a cross-check on reduced-word length.
pub fn inversion_count(g: &LieAlgebraData, w: &WeylElement) -> usize {
    let inv = w.inverse(g);
    g.positive_roots().filter(|&r| is_negative_root(g, &inv.act(g, &g.roots[r].weight))).count()
}

fn is_negative_root(g: &LieAlgebraData, w: &Weight) -> bool {
    g.roots.iter().any(|r| !r.positive && &r.weight == w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rat;
    use crate::liealg::algebra::{build_algebra, Family};
    use proptest::prelude::*;

    #[test]
    fn group_orders() {
        assert_eq!(weyl_group(&build_algebra(Family::A, 1).unwrap()).len(), 2);
        assert_eq!(weyl_group(&build_algebra(Family::A, 3).unwrap()).len(), 24);
        assert_eq!(weyl_group(&build_algebra(Family::C, 2).unwrap()).len(), 8);
        assert_eq!(weyl_group(&build_algebra(Family::C, 3).unwrap()).len(), 48);
    }

    #[test]
    fn dot_action_examples() {
        let g = build_algebra(Family::A, 2).unwrap();
        let zero = Weight::zero(2);
        assert_eq!(WeylElement::identity().dot(&g, &zero), zero);
        // w_n·0 = −(n+1)ω_n
        assert_eq!(w_k(&g, 2).dot(&g, &zero), g.from_fundamental_ints(&[0, -3]));
        // s_1·0 = −2ω_1 + ω_2
        assert_eq!(WeylElement::new(&g, vec![1]).dot(&g, &zero), g.from_fundamental_ints(&[-2, 1]));
        let g3 = build_algebra(Family::A, 3).unwrap();
        assert_eq!(w_k(&g3, 3).dot(&g3, &Weight::zero(3)), g3.from_fundamental_ints(&[0, 0, -4]));
        // s_n·0 = −α_n, not −ω_1
        let sn = WeylElement::new(&g3, vec![3]).dot(&g3, &Weight::zero(3));
        assert_eq!(sn, -&g3.simple_root(2).weight);
    }

    #[test]
    fn central_character_examples() {
        let g = build_algebra(Family::A, 1).unwrap();
        let z = Weight::zero(1);
        assert!(same_central_character(&g, &z, &z));
        assert!(same_central_character(&g, &z, &g.from_fundamental_ints(&[-2])));
        assert!(!same_central_character(&g, &z, &g.from_fundamental_ints(&[1])));
    }

    #[test]
    fn compatibility_examples() {
        let g = build_algebra(Family::A, 1).unwrap();
        let z = Weight::zero(1);
        assert!(translation_compatible(&g, &z, &z));
        assert!(!translation_compatible(&g, &z, &g.from_fundamental_ints(&[-1])));
        let g2 = build_algebra(Family::A, 2).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let lam = g2.from_fundamental_ints(&[a, b]);
                assert!(translation_compatible(&g2, &lam, &Weight::zero(2)));
            }
        }
    }

    #[test]
    fn reduced_words() {
        let g = build_algebra(Family::A, 2).unwrap();
        let w = WeylElement::new(&g, vec![1, 1, 2]);
        assert_eq!(w.reduced, vec![2]);
        let lw = WeylElement::new(&g, vec![1, 2, 1]);
        assert_eq!(lw.length(), 3);
        assert!(lw.is_reduced());
        for w in weyl_group(&g) {
            assert_eq!(inversion_count(&g, &w), w.length());
        }
    }

    fn weight3() -> impl Strategy<Value = Weight> {
        prop::collection::vec((-6i64..6, 1i64..4), 3).prop_map(|v| Weight(v.into_iter().map(|(a, b)| Rat::new(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn orbit_bounded_and_consistent(lam in weight3()) {
            for fam in [Family::A, Family::C] {
                let g = build_algebra(fam, 3).unwrap();
                let wg = weyl_group(&g);
                let orbit = dot_orbit(&g, &lam);
                prop_assert!(orbit.len() <= wg.len());
                for w in &wg {
                    let mu = w.dot(&g, &lam);
                    prop_assert!(same_central_character(&g, &lam, &mu));
                    prop_assert!(same_central_character(&g, &mu, &lam));
                    // w(w⁻¹λ) = λ
                    prop_assert_eq!(w.act(&g, &w.inverse(&g).act(&g, &lam)), lam.clone());
                }
            }
        }

        #[test]
        fn central_character_is_transitive(a in weight3(), k in 0usize..24, l in 0usize..24) {
            let g = build_algebra(Family::A, 3).unwrap();
            let wg = weyl_group(&g);
            let b = wg[k].dot(&g, &a);
            let c = wg[l].dot(&g, &b);
            prop_assert!(same_central_character(&g, &a, &c));
        }
    }
}
