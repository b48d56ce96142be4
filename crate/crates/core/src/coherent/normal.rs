//! Normal forms wt(χ) of admissible central characters, the admissible Weyl
//! words of type A, and recognition of degree-one families.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Poly, Rat};
use crate::hmodules::{CentralValue, Fingerprint};
use crate::liealg::{dot_orbit, gelfand_invariant, hc_polynomial, Family, LieAlgebraData, Weight, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharClass {
    IntegralRegular,
    IntegralSingular,
    NonIntegral,
    /// sp(2n): the single admissible class.
    Symplectic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralCharClass {
    pub input: Weight,
    pub class: CharClass,
    pub wt: Weight,
    /// 1-based i_χ with (wt + ρ)(h_{i_χ}) = 0.
    pub singular_index: Option<usize>,
}

fn int_nonneg(x: &Rat) -> bool {
    x.is_integer() && !x.is_negative()
}

/// Which class's constraints ν satisfies, with i_χ for the singular class.
fn classify_type_a(g: &LieAlgebraData, nu: &Weight) -> Option<(CharClass, Option<usize>)> {
    let n = g.rank();
    let a: Vec<Rat> = (0..n).map(|i| g.pair_simple(nu, i)).collect();
    if a.iter().all(int_nonneg) {
        return Some((CharClass::IntegralRegular, None));
    }
    // (ν + ρ)(h_i) = a_i + 1
    let shifted: Vec<Rat> = a.iter().map(|x| x + &Rat::one()).collect();
    let zeros: Vec<usize> = (0..n).filter(|&i| shifted[i].is_zero()).collect();
    if zeros.len() == 1 && (0..n).all(|i| i == zeros[0] || shifted[i].is_integer() && shifted[i].is_positive()) {
        return Some((CharClass::IntegralSingular, Some(zeros[0] + 1)));
    }
    if !a[0].is_integer() && a[1..].iter().all(int_nonneg) {
        return Some((CharClass::NonIntegral, None));
    }
    None
}

/// All three constraints of the type C classification, checked literally.
fn satisfies_type_c(g: &LieAlgebraData, nu: &Weight) -> bool {
    let n = g.rank();
    let a: Vec<Rat> = (0..n).map(|i| g.pair_simple(nu, i)).collect();
    let half = Rat::new(1, 2);
    let last = &a[n - 1];
    let third = if n >= 2 { &a[n - 2] + &(last * &Rat::from_int(2)) } else { last * &Rat::from_int(2) };
    a[..n - 1].iter().all(int_nonneg)
        && (last - &half).is_integer()
        && *last >= -half
        && int_nonneg(&(third + Rat::from_int(2)))
}

/// The unique element of W·λ meeting one class's constraints.
pub fn wt_normal_form(g: &LieAlgebraData, lambda: &Weight) -> Result<CentralCharClass> {
    let orbit = dot_orbit(g, lambda);
    let mut found: Vec<(Weight, CharClass, Option<usize>)> = Vec::new();
    for nu in orbit {
        match g.family {
            Family::A => {
                if let Some((c, i)) = classify_type_a(g, &nu) {
                    found.push((nu, c, i));
                }
            }
            Family::C => {
                if satisfies_type_c(g, &nu) {
                    found.push((nu, CharClass::Symplectic, None));
                }
            }
            Family::Gl => return Err(Error::Invalid("normal forms are for sl(n+1) and sp(2n)".into())),
        }
    }
    match found.len() {
        0 => Err(Error::NotInScope(lambda.pretty())),
        1 => {
            let (wt, class, singular_index) = found.remove(0);
            Ok(CentralCharClass { input: lambda.clone(), class, wt, singular_index })
        }
        _ => Err(Error::Ambiguous(format!(
            "{} has {} normal-form candidates: {}",
            lambda.pretty(),
            found.len(),
            found.iter().map(|f| f.0.pretty()).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// Weights on the grid (1/den)ℤ ∩ [−bound, bound] in fundamental coordinates
/// whose central character matches every scalar of the fingerprint.
pub fn weights_from_fingerprint(g: &LieAlgebraData, fp: &Fingerprint, den: i64, bound: i64) -> Result<Vec<Weight>> {
    let mut targets: Vec<(Poly, Rat)> = Vec::new();
    for (k, v) in fp {
        let CentralValue::Scalar(c) = v else {
            return Err(Error::Invalid(format!("C{k} does not act by a scalar")));
        };
        targets.push((hc_polynomial(g, &gelfand_invariant(g, *k)?)?, c.clone()));
    }
    let steps: Vec<Rat> = (-bound * den..=bound * den).map(|t| Rat::new(t, den)).collect();
    let mut out = Vec::new();
    let mut coords = vec![0usize; g.rank()];
    loop {
        let a: Vec<Rat> = coords.iter().map(|&i| steps[i].clone()).collect();
        let w = g.from_fundamental(&a);
        if targets.iter().all(|(p, c)| p.eval_unchecked(&w.0) == *c) {
            out.push(w);
        }
        let mut i = 0;
        loop {
            if i == coords.len() {
                return Ok(out);
            }
            coords[i] += 1;
            if coords[i] < steps.len() {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
    }
}

/// Normal form of the central character carried by a fingerprint, by grid
/// search; every matching weight must give the same normal form.
pub fn normal_form_of_fingerprint(g: &LieAlgebraData, fp: &Fingerprint, den: i64, bound: i64) -> Result<CentralCharClass> {
    let cands = weights_from_fingerprint(g, fp, den, bound)?;
    let mut forms: Vec<CentralCharClass> = Vec::new();
    for c in &cands {
        if let Ok(f) = wt_normal_form(g, c) {
            if !forms.iter().any(|x| x.wt == f.wt) {
                forms.push(f);
            }
        }
    }
    match forms.len() {
        0 => Err(Error::NotInScope(format!("{} grid weights match, none admissible", cands.len()))),
        1 => Ok(forms.remove(0)),
        _ => Err(Error::Ambiguous("the fingerprint does not separate the candidate normal forms".into())),
    }
}

/// Families with one central character, each with the words w for which
/// L(w·wt(χ)) is admissible and belongs to it.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleFamily {
    /// Word w with the family being 𝓔𝓧𝓣(L(w·wt(χ))).
    pub representative: Vec<usize>,
    pub words: Vec<Vec<usize>>,
}

/// s_j s_{j∓1} ⋯ s_i as a 1-based word.
fn run(j: usize, i: usize) -> Vec<usize> {
    if j >= i {
        (i..=j).rev().collect()
    } else {
        (j..=i).collect()
    }
}

fn dedup(words: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    words.into_iter().filter(|w| seen.insert(w.clone())).collect()
}

/// The admissible words of the type A classification, case by case. For
/// sp(2n) there is a single family and the identity is returned.
pub fn admissible_word_list(g: &LieAlgebraData, class: &CentralCharClass) -> Result<Vec<AdmissibleFamily>> {
    let n = g.rank();
    Ok(match class.class {
        CharClass::IntegralRegular => (1..=n)
            .map(|i| {
                let mut words: Vec<Vec<usize>> = (i..=n).map(|j| run(j, i)).collect();
                words.extend((1..=i).map(|j| run(j, i)));
                AdmissibleFamily { representative: vec![i], words: dedup(words) }
            })
            .collect(),
        CharClass::IntegralSingular => {
            let ic = class.singular_index.ok_or_else(|| Error::Invalid("singular class without i_χ".into()))?;
            let mut words: Vec<Vec<usize>> = (1..ic).map(|j| run(j, ic - 1)).collect();
            words.extend((ic + 1..=n).map(|j| run(j, ic + 1)));
            vec![AdmissibleFamily { representative: Vec::new(), words: dedup(words) }]
        }
        CharClass::NonIntegral => {
            vec![AdmissibleFamily { representative: Vec::new(), words: (1..=n).map(|k| run(k, 1)).collect() }]
        }
        CharClass::Symplectic => vec![AdmissibleFamily { representative: Vec::new(), words: vec![Vec::new()] }],
    })
}

/// Whether every listed word is reduced.
pub fn words_reduced(g: &LieAlgebraData, fams: &[AdmissibleFamily]) -> bool {
    fams.iter().flat_map(|f| &f.words).all(|w| WeylElement::new(g, w.clone()).is_reduced())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DegreeOne {
    NotDegreeOne { degree: usize },
    /// aω_1 with a ∉ ℤ_{≥0}, in the dot-orbit of wt(χ).
    MultipleOfOmega1 { a: Rat },
    /// −(N+2)ω_1 + (N+1)ω_2 in the dot-orbit of wt(χ).
    Shifted { big_n: i64 },
    /// sp(2n): wt(χ) = ω⁺.
    ShaleWeil,
    NoMatch,
}

/// Degree-one patterns matched by the central character, up to dot-orbit.
pub fn degree_one_recognition(g: &LieAlgebraData, class: &CentralCharClass, degree: usize) -> Vec<DegreeOne> {
    if degree != 1 {
        return vec![DegreeOne::NotDegreeOne { degree }];
    }
    let mut out = Vec::new();
    if g.family == Family::C {
        let n = g.rank();
        let mut a = vec![Rat::zero(); n];
        a[n - 1] = Rat::new(-1, 2);
        if class.wt == g.from_fundamental(&a) {
            out.push(DegreeOne::ShaleWeil);
        }
    } else {
        for nu in dot_orbit(g, &class.wt) {
            let a = g.to_fundamental(&nu);
            if a[1..].iter().all(Rat::is_zero) && !int_nonneg(&a[0]) {
                out.push(DegreeOne::MultipleOfOmega1 { a: a[0].clone() });
            }
            if a.len() >= 2 && a[2..].iter().all(Rat::is_zero) {
                let m = &a[1] - &Rat::one();
                if int_nonneg(&m) && a[0] == -(&m + &Rat::from_int(2)) {
                    out.push(DegreeOne::Shifted { big_n: m.to_i64().unwrap() });
                }
            }
        }
    }
    if out.is_empty() {
        out.push(DegreeOne::NoMatch);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::hmodules::from_sp2n_m0;
    use crate::liealg::{build_algebra, same_central_character};
    use proptest::prelude::*;

    fn omega_plus(g: &LieAlgebraData) -> Weight {
        let n = g.rank();
        let mut a = vec![Rat::zero(); n];
        a[n - 1] = q(-1, 2);
        g.from_fundamental(&a)
    }

    #[test]
    fn type_a_classes() {
        let g = build_algebra(Family::A, 2).unwrap();
        let l = g.from_fundamental_ints(&[2, 1]);
        let c = wt_normal_form(&g, &l).unwrap();
        assert_eq!(c.class, CharClass::IntegralRegular);
        assert_eq!(c.wt, l);
        let s1 = WeylElement::new(&g, vec![1, 2]).dot(&g, &l);
        assert_eq!(wt_normal_form(&g, &s1).unwrap().wt, l);
        let ni = g.from_fundamental(&[q(1, 2), q(3, 1)]);
        let c = wt_normal_form(&g, &ni).unwrap();
        assert_eq!(c.class, CharClass::NonIntegral);
        assert_eq!(c.wt, ni);
        // −ρ is singular for every root
        assert!(wt_normal_form(&g, &(-&g.rho)).is_err());
        let sing = g.from_fundamental_ints(&[-1, 0]);
        let c = wt_normal_form(&g, &sing).unwrap();
        assert_eq!((c.class, c.singular_index), (CharClass::IntegralSingular, Some(1)));
        // n = 1: λ and −λ − 2 both pass the non-integral constraints
        let a1 = build_algebra(Family::A, 1).unwrap();
        assert!(matches!(wt_normal_form(&a1, &Weight(vec![q(1, 3)])), Err(Error::Ambiguous(_))));
    }

    #[test]
    fn m0_normal_form() {
        for n in 2..=3 {
            let m = from_sp2n_m0(n).unwrap();
            let g = &m.algebra;
            let fp = m.default_fingerprint().unwrap();
            let c = normal_form_of_fingerprint(g, &fp, 2, 3).unwrap();
            assert_eq!(c.wt, omega_plus(g));
            assert_eq!(degree_one_recognition(g, &c, 1), vec![DegreeOne::ShaleWeil]);
        }
    }

    #[test]
    fn word_lists() {
        let g = build_algebra(Family::A, 3).unwrap();
        let reg = wt_normal_form(&g, &Weight::zero(3)).unwrap();
        let fams = admissible_word_list(&g, &reg).unwrap();
        assert_eq!(fams.len(), 3);
        assert!(words_reduced(&g, &fams));
        let w2: BTreeSet<Vec<usize>> = fams[1].words.iter().cloned().collect();
        let expect: BTreeSet<Vec<usize>> = [vec![2], vec![3, 2], vec![1, 2]].into_iter().collect();
        assert_eq!(w2, expect);
        let ni = wt_normal_form(&g, &g.from_fundamental(&[q(1, 3), q(0, 1), q(2, 1)])).unwrap();
        let f = admissible_word_list(&g, &ni).unwrap();
        assert_eq!(f[0].words, vec![vec![1], vec![2, 1], vec![3, 2, 1]]);
        let sing = wt_normal_form(&g, &g.from_fundamental_ints(&[0, -1, 0])).unwrap();
        assert_eq!(sing.singular_index, Some(2));
        let f = admissible_word_list(&g, &sing).unwrap();
        assert_eq!(f[0].words, vec![vec![1], vec![3]]);
    }

    #[test]
    fn degree_one_patterns() {
        let g = build_algebra(Family::A, 2).unwrap();
        let reg = wt_normal_form(&g, &Weight::zero(2)).unwrap();
        assert_eq!(degree_one_recognition(&g, &reg, 2), vec![DegreeOne::NotDegreeOne { degree: 2 }]);
        let hits = degree_one_recognition(&g, &reg, 1);
        assert!(hits.contains(&DegreeOne::Shifted { big_n: 0 }));
        let a1 = build_algebra(Family::A, 1).unwrap();
        let c = wt_normal_form(&a1, &Weight::from_ints(&[-1])).unwrap();
        assert_eq!(degree_one_recognition(&a1, &c, 1), vec![DegreeOne::MultipleOfOmega1 { a: q(-1, 1) }]);
    }

    proptest! {
        #[test]
        fn normal_form_idempotent(a in -4i64..5, b in -4i64..5, num in -7i64..8) {
            let g = build_algebra(Family::A, 2).unwrap();
            let l = g.from_fundamental(&[q(num, 3), Rat::from_int(b)]);
            if let Ok(c) = wt_normal_form(&g, &l) {
                prop_assert!(same_central_character(&g, &l, &c.wt));
                prop_assert_eq!(wt_normal_form(&g, &c.wt).unwrap().wt, c.wt.clone());
            }
            let l = g.from_fundamental_ints(&[a, b]);
            if let Ok(c) = wt_normal_form(&g, &l) {
                prop_assert!(same_central_character(&g, &l, &c.wt));
                prop_assert_eq!(wt_normal_form(&g, &c.wt).unwrap().wt, c.wt);
            }
        }
    }
}
