//! Sparse multivariate polynomials over `Rat`, standing in for U(h).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize, Serializer};

use super::rat::Rat;
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in `nvars` variables named `h1, h2, ...`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

/// The shift σ_s: h_i ↦ h_i − s_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftMap {
    pub offset: Vec<Rat>,
}

impl ShiftMap {
    pub fn new(offset: Vec<Rat>) -> ShiftMap {
        ShiftMap { offset }
    }

    pub fn zero(n: usize) -> ShiftMap {
        ShiftMap { offset: vec![Rat::zero(); n] }
    }

    /// σ_s ∘ σ_t = σ_{s+t}.
    pub fn compose(&self, other: &ShiftMap) -> ShiftMap {
        assert_eq!(self.offset.len(), other.offset.len());
        ShiftMap { offset: self.offset.iter().zip(&other.offset).map(|(a, b)| a + b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.offset.iter().all(Rat::is_zero)
    }
}

/// Graded-lex: higher total degree first, then lexicographically larger.
pub fn grlex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

fn binomial(n: u32, k: u32) -> Rat {
    let mut r = Rat::one();
    for i in 0..k {
        r = r * Rat::from_int((n - i) as i64) / Rat::from_int((i + 1) as i64);
    }
    r
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Rat::one())
    }

    /// The variable `h_{i+1}` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Poly {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Rat::one())
    }

    pub fn monomial(exps: Monomial, c: Rat) -> Poly {
        let nvars = exps.len();
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Σ coeffs[i]·h_i + c.
    pub fn linear(coeffs: &[Rat], c: Rat) -> Poly {
        let n = coeffs.len();
        let mut p = Poly::constant(n, c);
        for (i, a) in coeffs.iter().enumerate() {
            if !a.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, a.clone());
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; the zero polynomial has degree 0 here.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// The homogeneous component of top total degree.
    pub fn leading_form(&self) -> Poly {
        let d = self.total_degree();
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms in canonical (graded-lex descending) order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }

    pub fn add_term(&mut self, e: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "evaluating a {}-variable polynomial at a point of length {}",
                self.nvars,
                point.len()
            )));
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[Rat]) -> Rat {
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= x.pow(k as i32);
                }
            }
            total += t;
        }
        total
    }

    /// Substitute h_i ↦ h_i − s_i.
    pub fn apply_shift(&self, s: &ShiftMap) -> Result<Poly> {
        if s.offset.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "shift of length {} applied to a {}-variable polynomial",
                s.offset.len(),
                self.nvars
            )));
        }
        Ok(self.shift_unchecked(&s.offset))
    }

    pub(crate) fn shift_unchecked(&self, offset: &[Rat]) -> Poly {
        let mut cur = self.clone();
        for (i, si) in offset.iter().enumerate() {
            if si.is_zero() || cur.degree_in(i) == 0 {
                continue;
            }
            let neg = -si;
            let mut next = Poly::zero(self.nvars);
            for (e, c) in &cur.terms {
                let k = e[i];
                // (h_i - s_i)^k = Σ_j C(k,j) h_i^j (−s_i)^{k−j}
                for j in 0..=k {
                    let mut f = e.clone();
                    f[i] = j;
                    next.add_term(f, c * binomial(k, j) * neg.pow((k - j) as i32));
                }
            }
            cur = next;
        }
        cur
    }

    /// Substitute each variable h_i by `images[i]` (all in the same ring).
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let m = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars), p.clone()]).collect();
        let mut out = Poly::zero(m);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Rename into a larger ring, variable i going to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Poly {
        let mut p = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                f[map[i]] += k;
            }
            p.add_term(f, c.clone());
        }
        p
    }

    /// Canonical text with variables `h1, h2, ...`.
    pub fn to_canonical(&self) -> String {
        self.render("h")
    }

    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0/1".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if idx == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push(' ');
                out.push_str(sign);
                out.push(' ');
            }
            out.push_str(&mag.to_string());
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    out.push_str(&format!("*{var}{}", i + 1));
                } else if k > 1 {
                    out.push_str(&format!("*{var}{}^{k}", i + 1));
                }
            }
        }
        out
    }

    /// Parse the canonical text form (also accepts bare integer coefficients).
    pub fn parse(text: &str, nvars: usize) -> Result<Poly> {
        let bad = |m: &str| Error::Parse(format!("polynomial {text:?}: {m}"));
        let mut p = Poly::zero(nvars);
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.is_empty() {
            return Err(bad("empty"));
        }
        let mut sign_next = 1i64;
        let mut expect_term = true;
        for tok in toks {
            if !expect_term {
                match tok {
                    "+" => sign_next = 1,
                    "-" => sign_next = -1,
                    _ => return Err(bad("expected + or -")),
                }
                expect_term = true;
                continue;
            }
            let mut parts = tok.split('*');
            let coef: Rat = parts.next().unwrap().parse().map_err(|_| bad("bad coefficient"))?;
            let mut e = vec![0u32; nvars];
            for f in parts {
                let f = f.strip_prefix('h').ok_or_else(|| bad("bad variable"))?;
                let (v, k) = match f.split_once('^') {
                    Some((v, k)) => (v, k.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (f, 1),
                };
                let v: usize = v.parse().map_err(|_| bad("bad variable index"))?;
                if v == 0 || v > nvars {
                    return Err(bad("variable index out of range"));
                }
                e[v - 1] += k;
            }
            p.add_term(e, coef * Rat::from_int(sign_next));
            expect_term = false;
        }
        if expect_term {
            return Err(bad("dangling operator"));
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let (mut big, small) = if self.terms.len() >= o.terms.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (e, c) in &small.terms {
            big.add_term(e.clone(), c.clone());
        }
        big
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut r = Poly::zero(self.nvars);
        if self.is_zero() || o.is_zero() {
            return r;
        }
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Rat::from_int(-1))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical())
    }
}

/// Deserializing needs the variable count; dumps carry it alongside, so this
/// wrapper only holds the text until the ring is known.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyText(pub String);

impl PolyText {
    pub fn resolve(&self, nvars: usize) -> Result<Poly> {
        Poly::parse(&self.0, nvars)
    }
}

/// Convenience: evaluate with an error on length mismatch.
pub fn eval_poly(p: &Poly, point: &[Rat]) -> Result<Rat> {
    p.eval(point)
}

pub fn apply_shift(p: &Poly, s: &ShiftMap) -> Result<Poly> {
    p.apply_shift(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::q;
    use proptest::prelude::*;

    fn h(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }
    fn c(n: usize, v: Rat) -> Poly {
        Poly::constant(n, v)
    }

    #[test]
    fn shift_linear() {
        let p = h(1, 0);
        let s = p.apply_shift(&ShiftMap::new(vec![q(2, 1)])).unwrap();
        assert_eq!(s, &h(1, 0) - &c(1, q(2, 1)));
    }

    #[test]
    fn shift_m0_coefficient() {
        // (h - 1/2)(h - 3/2) shifted by -2 is (h + 3/2)(h + 1/2), expanded by hand:
        // h^2 + 2h + 3/4.
        let p = &(&h(1, 0) - &c(1, q(1, 2))) * &(&h(1, 0) - &c(1, q(3, 2)));
        let s = p.apply_shift(&ShiftMap::new(vec![q(-2, 1)])).unwrap();
        let want = Poly::from_terms(1, [(vec![2], q(1, 1)), (vec![1], q(2, 1)), (vec![0], q(3, 4))]);
        assert_eq!(s, want);
        assert_eq!(s.eval(&[q(-3, 2)]).unwrap(), Rat::zero());
        assert_eq!(s.eval(&[q(-1, 2)]).unwrap(), Rat::zero());
    }

    #[test]
    fn shift_errors_on_mismatch() {
        assert!(h(2, 0).apply_shift(&ShiftMap::zero(1)).is_err());
        assert!(h(2, 0).eval(&[q(1, 1)]).is_err());
    }

    #[test]
    fn eval_basics() {
        let p = &h(2, 0) * &h(2, 1);
        assert_eq!(p.eval(&[q(2, 1), q(3, 1)]).unwrap(), q(6, 1));
        assert_eq!(c(3, q(5, 7)).eval(&[q(1, 1), q(9, 1), q(-4, 3)]).unwrap(), q(5, 7));
    }

    #[test]
    fn canonical_text() {
        let p = Poly::from_terms(1, [(vec![2], q(1, 1)), (vec![1], q(2, 1)), (vec![0], q(3, 4))]);
        assert_eq!(p.to_canonical(), "1/1*h1^2 + 2/1*h1 + 3/4");
        let r = Poly::from_terms(2, [(vec![0, 1], q(-1, 2)), (vec![1, 1], q(1, 1)), (vec![1, 0], q(3, 1))]);
        assert_eq!(r.to_canonical(), "1/1*h1*h2 + 3/1*h1 - 1/2*h2");
        assert_eq!(Poly::parse(&r.to_canonical(), 2).unwrap(), r);
        assert_eq!(Poly::zero(2).to_canonical(), "0/1");
        assert_eq!(Poly::parse("0/1", 2).unwrap(), Poly::zero(2));
        assert_eq!(Poly::parse("-2*h1^2 + 1", 1).unwrap().to_canonical(), "-2/1*h1^2 + 1/1");
        assert!(Poly::parse("1/1*h3", 2).is_err());
        assert!(Poly::parse("1/1 +", 2).is_err());
    }

    #[test]
    fn compose_and_leading_form() {
        // h1 ↦ h1 + h2, h2 ↦ 2 in (h1 h2)
        let p = &h(2, 0) * &h(2, 1);
        let imgs = vec![&h(2, 0) + &h(2, 1), c(2, q(2, 1))];
        let r = p.compose(&imgs);
        assert_eq!(r, (&h(2, 0) + &h(2, 1)).scale(&q(2, 1)));
        let f = &(&p * &h(2, 0)) + &h(2, 1);
        assert_eq!(f.leading_form(), &p * &h(2, 0));
    }

    fn poly2() -> impl Strategy<Value = Poly> {
        prop::collection::vec(((0u32..4, 0u32..4), -20i64..20, 1i64..6), 0..6).prop_map(|ts| {
            Poly::from_terms(2, ts.into_iter().map(|((a, b), n, d)| (vec![a, b], q(n, d))))
        })
    }

    fn vec2() -> impl Strategy<Value = Vec<Rat>> {
        prop::collection::vec((-30i64..30, 1i64..5).prop_map(|(n, d)| q(n, d)), 2)
    }

    proptest! {
        #[test]
        fn shifts_compose(p in poly2(), s in vec2(), t in vec2()) {
            let s = ShiftMap::new(s);
            let t = ShiftMap::new(t);
            let lhs = p.apply_shift(&s).unwrap().apply_shift(&t).unwrap();
            prop_assert_eq!(lhs, p.apply_shift(&s.compose(&t)).unwrap());
        }

        #[test]
        fn shift_then_eval(p in poly2(), s in vec2(), x in vec2()) {
            let shifted = p.apply_shift(&ShiftMap::new(s.clone())).unwrap();
            let xs: Vec<Rat> = x.iter().zip(&s).map(|(a, b)| a - b).collect();
            prop_assert_eq!(shifted.eval(&x).unwrap(), p.eval(&xs).unwrap());
        }

        #[test]
        fn text_roundtrip(p in poly2()) {
            prop_assert_eq!(Poly::parse(&p.to_canonical(), 2).unwrap(), p);
        }

        #[test]
        fn ring_laws(a in poly2(), b in poly2(), x in vec2()) {
            let ab = &a * &b;
            prop_assert_eq!(ab.eval(&x).unwrap(), a.eval(&x).unwrap() * b.eval(&x).unwrap());
            prop_assert_eq!((&a - &a).is_zero(), true);
            prop_assert_eq!(&a + &b, &b + &a);
        }
    }
}
