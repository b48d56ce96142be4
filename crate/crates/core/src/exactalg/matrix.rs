//! Dense matrices over `Rat` and over `Poly`.

use std::fmt;

use super::poly::{Poly, ShiftMap};
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].pretty()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of Gauss–Jordan elimination.
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Rat) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> RatMatrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect())
    }

    /// Columns given as vectors.
    pub fn from_cols(cols: &[Vec<Rat>], rows: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    /// `Some(c)` when the matrix is c·I.
    pub fn as_scalar(&self) -> Option<Rat> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(Rat::zero());
        }
        let c = self[(0, 0)].clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &c } else { &Rat::zero() };
                if &self[(i, j)] != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut m = RatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).filter(|&k| !v[k].is_zero()).map(|k| &self[(i, k)] * &v[k]).sum())
            .collect()
    }

    pub fn pow(&self, k: u32) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Kronecker product.
    pub fn kron(&self, o: &RatMatrix) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        m[(i * o.rows + k, j * o.cols + l)] = a * &o[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// Copy `block` into position (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m[(i, j)] = self[(i, c)].clone();
            }
        }
        m
    }

    pub fn hstack(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, o.rows);
        let mut m = RatMatrix::zeros(self.rows, self.cols + o.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, o);
        m
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &(&f * &m[(r, j)]);
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let Rref { matrix: m, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&m[(r, f)];
                }
                v
            })
            .collect()
    }

    /// Kernel basis as the columns of a matrix.
    pub fn kernel_matrix(&self) -> RatMatrix {
        RatMatrix::from_cols(&self.kernel(), self.cols)
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        let mut m = self.clone();
        let mut sign = Rat::one();
        let mut prev = Rat::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Rat::zero();
                };
                for j in 0..n {
                    m.data.swap(p * n + j, k * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    /// Solve `self · X = b`; `None` if inconsistent. Free variables are set to 0.
    pub fn solve(&self, b: &RatMatrix) -> Option<RatMatrix> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let Rref { matrix: m, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = RatMatrix::zeros(self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = m[(r, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() || self.rank() != self.rows {
            return None;
        }
        self.solve(&RatMatrix::identity(self.rows))
    }

    pub fn to_poly(&self, nvars: usize) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars,
            data: self.data.iter().map(|x| Poly::constant(nvars, x.clone())).collect(),
        }
    }
}

/// Kernel of a rational matrix, as a list of basis vectors.
pub fn rat_kernel(m: &RatMatrix) -> Vec<Vec<Rat>> {
    m.kernel()
}

/// A dense matrix with entries in U(h).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<Poly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over {} vars]", self.rows, self.cols, self.nvars)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_canonical()).collect();
            writeln!(f, "  [{}]", row.join(" | "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = Poly;
    fn index(&self, (r, c): (usize, usize)) -> &Poly {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Poly {
        &mut self.data[r * self.cols + c]
    }
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> PolyMatrix {
        PolyMatrix { rows, cols, nvars, data: vec![Poly::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> PolyMatrix {
        PolyMatrix::scalar(n, &Poly::one(nvars))
    }

    /// p·I.
    pub fn scalar(n: usize, p: &Poly) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(n, n, p.nvars());
        for i in 0..n {
            m[(i, i)] = p.clone();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, nvars: usize, data: Vec<Poly>) -> PolyMatrix {
        assert_eq!(data.len(), rows * cols);
        assert!(data.iter().all(|p| p.nvars() == nvars));
        PolyMatrix { rows, cols, nvars, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    /// `Some(p)` when the matrix is p·I.
    pub fn as_scalar(&self) -> Option<Poly> {
        if self.rows != self.cols {
            return None;
        }
        if self.rows == 0 {
            return Some(Poly::zero(self.nvars));
        }
        let p = self[(0, 0)].clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let ok = if i == j { self[(i, j)] == p } else { self[(i, j)].is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(p)
    }

    pub fn max_degree(&self) -> u32 {
        self.data.iter().map(Poly::total_degree).max().unwrap_or(0)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, nvars: self.nvars, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Rat) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut m = PolyMatrix::zeros(self.rows, o.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        m[(i, j)] = &m[(i, j)] + &prod;
                    }
                }
            }
        }
        m
    }

    /// Entrywise σ_s.
    pub fn apply_shift(&self, s: &ShiftMap) -> Result<PolyMatrix> {
        if s.offset.len() != self.nvars {
            return Err(Error::Dimension("shift length differs from variable count".into()));
        }
        Ok(self.shift(&s.offset))
    }

    pub(crate) fn shift(&self, offset: &[Rat]) -> PolyMatrix {
        if offset.iter().all(Rat::is_zero) {
            return self.clone();
        }
        self.map(|p| p.shift_unchecked(offset))
    }

    pub fn eval(&self, point: &[Rat]) -> Result<RatMatrix> {
        if point.len() != self.nvars {
            return Err(Error::Dimension("evaluation point length differs from variable count".into()));
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[Rat]) -> RatMatrix {
        RatMatrix::from_rows(
            (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].eval_unchecked(point)).collect()).collect(),
        )
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(rows, cols, self.nvars);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::q;
    use proptest::prelude::*;

    #[test]
    fn kernel_examples() {
        assert!(rat_kernel(&RatMatrix::identity(3)).is_empty());
        assert_eq!(rat_kernel(&RatMatrix::zeros(2, 3)).len(), 3);
        let k = rat_kernel(&RatMatrix::from_ints(&[&[1, 1], &[2, 2]]));
        assert_eq!(k, vec![vec![q(-1, 1), q(1, 1)]]);
    }

    #[test]
    fn det_matches_cofactor() {
        let m = RatMatrix::from_ints(&[&[0, 2, 1], &[3, -1, 4], &[5, 2, 0]]);
        // cofactor expansion along the first row: -2*(0-20) + 1*(6+5) = 51
        assert_eq!(m.det(), q(51, 1));
        let s = RatMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det(), Rat::zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = RatMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(2));
        let b = RatMatrix::from_ints(&[&[1], &[2]]);
        let x = RatMatrix::from_ints(&[&[1, 1], &[1, 1]]).solve(&b);
        assert!(x.is_none());
    }

    #[test]
    fn poly_matrix_shift_and_eval() {
        let h = Poly::var(1, 0);
        let m = PolyMatrix::scalar(2, &h);
        let s = m.apply_shift(&ShiftMap::new(vec![q(1, 1)])).unwrap();
        assert_eq!(s.eval(&[q(3, 1)]).unwrap(), RatMatrix::scalar(2, &q(2, 1)));
        assert_eq!(s.as_scalar(), Some(&h - &Poly::one(1)));
    }

    fn mat(r: usize, c: usize) -> impl Strategy<Value = RatMatrix> {
        prop::collection::vec(-3i64..4, r * c).prop_map(move |v| {
            RatMatrix::from_rows(v.chunks(c).map(|row| row.iter().map(|&x| q(x, 1)).collect()).collect())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in mat(3, 5)) {
            let k = rat_kernel(&m);
            prop_assert_eq!(k.len(), 5 - m.rank());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(Rat::is_zero));
            }
        }

        #[test]
        fn det_multiplicative(a in mat(3, 3), b in mat(3, 3)) {
            prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
        }

        #[test]
        fn det_zero_iff_singular(a in mat(4, 4)) {
            prop_assert_eq!(a.det().is_zero(), a.rank() < 4);
        }
    }
}
