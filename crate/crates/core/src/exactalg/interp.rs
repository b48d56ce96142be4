//! Exact polynomial interpolation.

use super::matrix::RatMatrix;
use super::poly::{Monomial, Poly};
use super::rat::Rat;
use crate::error::{Error, Result};

/// All exponent vectors in `n` variables of total degree ≤ `d`, low degree first.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}

/// Number of monomials of degree ≤ d in n variables, C(n+d, n).
pub fn monomial_count(n: usize, d: u32) -> usize {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * (d as u128 + 1 + i) / (i + 1);
    }
    c as usize
}

/// Lattice points t ≥ 0 with Σ t ≤ d: the corner simplex, unisolvent for degree ≤ d.
pub fn simplex_offsets(n: usize, d: u32) -> Vec<Vec<i64>> {
    monomials_up_to(n, d).into_iter().map(|e| e.into_iter().map(|x| x as i64).collect()).collect()
}

/// The unique polynomial of total degree ≤ `degree_bound` through all samples.
///
/// Extra samples beyond the monomial count are checked exactly; any
/// disagreement is `NoFit`. A rank-deficient system is `Underdetermined`.
pub fn fit_polynomial(samples: &[(Vec<Rat>, Rat)], degree_bound: u32) -> Result<Poly> {
    let Some(n) = samples.first().map(|s| s.0.len()) else {
        return Err(Error::Underdetermined("no samples".into()));
    };
    if samples.iter().any(|s| s.0.len() != n) {
        return Err(Error::Dimension("sample points of different lengths".into()));
    }
    let monos = monomials_up_to(n, degree_bound);
    if samples.len() < monos.len() {
        return Err(Error::Underdetermined(format!(
            "{} samples for {} unknown coefficients",
            samples.len(),
            monos.len()
        )));
    }
    let mut a = RatMatrix::zeros(samples.len(), monos.len());
    let mut b = RatMatrix::zeros(samples.len(), 1);
    for (i, (pt, v)) in samples.iter().enumerate() {
        for (j, e) in monos.iter().enumerate() {
            let mut t = Rat::one();
            for (x, &k) in pt.iter().zip(e) {
                if k > 0 {
                    t *= x.pow(k as i32);
                }
            }
            a[(i, j)] = t;
        }
        b[(i, 0)] = v.clone();
    }
    if a.rank() < monos.len() {
        return Err(Error::Underdetermined("sample points not in general position".into()));
    }
    let x = a.solve(&b).ok_or(Error::NoFit)?;
    Ok(Poly::from_terms(n, monos.into_iter().enumerate().map(|(j, e)| (e, x[(j, 0)].clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::q;
    use proptest::prelude::*;

    #[test]
    fn counts() {
        assert_eq!(monomials_up_to(2, 2).len(), 6);
        assert_eq!(monomial_count(2, 2), 6);
        assert_eq!(monomial_count(3, 8), 165);
        assert_eq!(monomials_up_to(3, 4).len(), monomial_count(3, 4));
    }

    #[test]
    fn fits_m0_trace() {
        // λ ↦ λ² + 2λ + 3/4 sampled on integers.
        let samples: Vec<_> = (-3..5)
            .map(|k| {
                let x = q(k, 1);
                let v = &x * &x + q(2, 1) * &x + q(3, 4);
                (vec![x], v)
            })
            .collect();
        let p = fit_polynomial(&samples, 2).unwrap();
        assert_eq!(p.to_canonical(), "1/1*h1^2 + 2/1*h1 + 3/4");
    }

    #[test]
    fn constant_and_nofit() {
        let samples: Vec<_> = (0..3).map(|k| (vec![q(k, 1)], q(7, 2))).collect();
        assert_eq!(fit_polynomial(&samples, 0).unwrap(), Poly::constant(1, q(7, 2)));
        let mut bad: Vec<_> = (0..6).map(|k| (vec![q(k, 1)], q(k * k, 1))).collect();
        bad[4].1 = q(17, 1);
        assert!(matches!(fit_polynomial(&bad, 2), Err(Error::NoFit)));
        assert!(matches!(fit_polynomial(&bad[..2], 2), Err(Error::Underdetermined(_))));
    }

    proptest! {
        #[test]
        fn recovers_polynomial(coeffs in prop::collection::vec((-9i64..9, 1i64..4), 10), bx in -5i64..5, by in 1i64..7) {
            // random degree-3 polynomial in two variables, sampled on a shifted simplex plus extras
            let monos = monomials_up_to(2, 3);
            let p = Poly::from_terms(2, monos.iter().cloned().zip(coeffs.iter().map(|&(n, d)| q(n, d))));
            let base = [q(bx, by), q(1, 3)];
            let mut samples = Vec::new();
            for t in simplex_offsets(2, 5) {
                let pt = vec![&base[0] + &q(t[0], 1), &base[1] + &q(t[1], 1)];
                let v = p.eval(&pt).unwrap();
                samples.push((pt, v));
            }
            prop_assert_eq!(fit_polynomial(&samples, 3).unwrap(), p);
        }
    }
}
