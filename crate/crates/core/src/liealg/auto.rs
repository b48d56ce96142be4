//! Automorphisms τ, θ_b and φ_a, and the complements g = h ⊕ q_b.

use super::algebra::{Family, LieAlgebraData};
use crate::error::{Error, Result};
use crate::exactalg::{Rat, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutoKind {
    /// x ↦ −xᵀ.
    Tau,
    /// exp(−x_b) with x_b = Σ b_j E_{n+1,j}; type A only.
    Theta(Vec<Rat>),
    /// Conjugation by diag(a) (type A, n+1 entries) or diag(a, a⁻¹) (type C, n entries).
    Diag(Vec<Rat>),
}

#[derive(Clone, Debug)]
pub struct AlgebraAutomorphism {
    pub kind: AutoKind,
    /// φ(x) = P x P⁻¹, absent for τ.
    conj: Option<(RatMatrix, RatMatrix)>,
    /// Image of each basis element, expanded in the basis.
    pub images: Vec<Vec<(usize, Rat)>>,
    pub preserves_h: bool,
}

impl AlgebraAutomorphism {
    pub fn apply_matrix(&self, x: &RatMatrix) -> RatMatrix {
        match &self.conj {
            Some((p, pinv)) => p.mul(x).mul(pinv),
            None => x.transpose().scale(&Rat::from_int(-1)),
        }
    }

    pub fn apply_inverse_matrix(&self, x: &RatMatrix) -> RatMatrix {
        match &self.conj {
            Some((p, pinv)) => pinv.mul(x).mul(p),
            None => x.transpose().scale(&Rat::from_int(-1)),
        }
    }

    /// φ(x_a) expanded in the basis.
    pub fn image(&self, label: usize) -> &[(usize, Rat)] {
        &self.images[label]
    }

    /// φ⁻¹ as an automorphism of the same kind.
    pub fn inverse(&self, g: &LieAlgebraData) -> Result<AlgebraAutomorphism> {
        let kind = match &self.kind {
            AutoKind::Tau => AutoKind::Tau,
            AutoKind::Theta(b) => AutoKind::Theta(b.iter().map(|x| -x).collect()),
            AutoKind::Diag(a) => AutoKind::Diag(a.iter().map(Rat::recip).collect()),
        };
        make_automorphism(g, kind)
    }

    /// Basis pairs on which φ([x,y]) ≠ [φ(x), φ(y)].
    pub fn bracket_defects(&self, g: &LieAlgebraData) -> Vec<(usize, usize)> {
        let img: Vec<RatMatrix> = (0..g.dim()).map(|a| g.combine(&self.images[a])).collect();
        let mut bad = Vec::new();
        for a in 0..g.dim() {
            for b in a + 1..g.dim() {
                let lhs = g.combine(&g.bracket(a, b).iter().flat_map(|(c, x)| self.images[*c].iter().map(move |(d, y)| (*d, x * y))).collect::<Vec<_>>());
                let rhs = img[a].mul(&img[b]).sub(&img[b].mul(&img[a]));
                if lhs != rhs {
                    bad.push((a, b));
                }
            }
        }
        bad
    }
}

fn diag(v: &[Rat]) -> RatMatrix {
    let mut m = RatMatrix::zeros(v.len(), v.len());
    for (i, x) in v.iter().enumerate() {
        m[(i, i)] = x.clone();
    }
    m
}

/// x_b = Σ b_j E_{n+1,j}.
pub fn theta_nilpotent(n: usize, b: &[Rat]) -> RatMatrix {
    let mut x = RatMatrix::zeros(n + 1, n + 1);
    for (j, bj) in b.iter().enumerate() {
        x[(n, j)] = bj.clone();
    }
    x
}

pub fn make_automorphism(g: &LieAlgebraData, kind: AutoKind) -> Result<AlgebraAutomorphism> {
    let conj = match &kind {
        AutoKind::Tau => None,
        AutoKind::Theta(b) => {
            if g.family != Family::A {
                return Err(Error::NotInScope("θ_b is defined for sl(n+1) only".into()));
            }
            if b.len() != g.n {
                return Err(Error::Dimension(format!("b has {} entries, expected {}", b.len(), g.n)));
            }
            if b.iter().any(Rat::is_zero) {
                return Err(Error::Invalid("b has a zero entry".into()));
            }
            // x_b² = 0, so exp(−x_b) = 1 − x_b.
            let x = theta_nilpotent(g.n, b);
            let id = RatMatrix::identity(g.size);
            Some((id.sub(&x), id.add(&x)))
        }
        AutoKind::Diag(a) => {
            if a.iter().any(Rat::is_zero) {
                return Err(Error::Invalid("a has a zero entry".into()));
            }
            let entries: Vec<Rat> = match g.family {
                Family::C => {
                    if a.len() != g.n {
                        return Err(Error::Dimension(format!("a has {} entries, expected {}", a.len(), g.n)));
                    }
                    a.iter().cloned().chain(a.iter().map(Rat::recip)).collect()
                }
                _ => {
                    if a.len() != g.size {
                        return Err(Error::Dimension(format!("a has {} entries, expected {}", a.len(), g.size)));
                    }
                    a.clone()
                }
            };
            Some((diag(&entries), diag(&entries.iter().map(Rat::recip).collect::<Vec<_>>())))
        }
    };
    let mut auto = AlgebraAutomorphism { kind, conj, images: Vec::new(), preserves_h: true };
    for a in 0..g.dim() {
        let img = g.expand(&auto.apply_matrix(&g.basis[a].matrix))?;
        if g.is_cartan(a) && img.iter().any(|(c, _)| !g.is_cartan(*c)) {
            auto.preserves_h = false;
        }
        auto.images.push(img);
    }
    Ok(auto)
}

/// q_b = θ_b(𝔩 ⊕ 𝔲⁺) with 𝔩 ≅ gl(n) the upper-left Levi and 𝔲⁺ = span E_{j,n+1}.
#[derive(Clone, Debug)]
pub struct ParabolicComplement {
    pub b: Vec<Rat>,
    pub theta: AlgebraAutomorphism,
    /// Basis y_k of 𝔩 ⊕ 𝔲⁺, as matrices.
    pub preimages: Vec<RatMatrix>,
    /// θ_b(y_k).
    pub basis: Vec<RatMatrix>,
    /// Whether y_k lies in 𝔲⁺.
    pub in_nilradical: Vec<bool>,
    /// Inverse of [h | q_b] in basis coordinates.
    solver: RatMatrix,
}

impl ParabolicComplement {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// x = h_x + q_x: Cartan coordinates of h_x and q_b-coordinates of q_x.
    pub fn decompose(&self, g: &LieAlgebraData, x: &RatMatrix) -> Result<(Vec<Rat>, Vec<Rat>)> {
        let mut v = vec![Rat::zero(); g.dim()];
        for (a, c) in g.expand(x)? {
            v[a] = c;
        }
        let sol = self.solver.mul_vec(&v);
        let c = g.cartan_dim();
        Ok((sol[..c].to_vec(), sol[c..].to_vec()))
    }

    /// ι: 𝔩 → gl(n), the upper-left block minus the (n+1, n+1) entry times I_n.
    pub fn levi_image(n: usize, y: &RatMatrix) -> RatMatrix {
        let mut m = y.block(0, 0, n, n);
        let z = y[(n, n)].clone();
        for i in 0..n {
            m[(i, i)] -= &z;
        }
        m
    }
}

pub fn parabolic_complement(g: &LieAlgebraData, b: &[Rat]) -> Result<ParabolicComplement> {
    let theta = make_automorphism(g, AutoKind::Theta(b.to_vec()))?;
    let n = g.n;
    let mut preimages = Vec::new();
    let mut in_nil = Vec::new();
    for &l in &g.cartan_labels() {
        preimages.push(g.basis[l].matrix.clone());
        in_nil.push(false);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                preimages.push(g.basis[g.label(&format!("E{},{}", i + 1, j + 1))?].matrix.clone());
                in_nil.push(false);
            }
        }
    }
    for j in 0..n {
        preimages.push(g.basis[g.label(&format!("E{},{}", j + 1, n + 1))?].matrix.clone());
        in_nil.push(true);
    }
    let basis: Vec<RatMatrix> = preimages.iter().map(|y| theta.apply_matrix(y)).collect();

    let d = g.dim();
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for &l in &g.cartan_labels() {
        let mut v = vec![Rat::zero(); d];
        v[l] = Rat::one();
        cols.push(v);
    }
    for m in &basis {
        let mut v = vec![Rat::zero(); d];
        for (a, c) in g.expand(m)? {
            v[a] = c;
        }
        cols.push(v);
    }
    let mat = RatMatrix::from_cols(&cols, d);
    let solver = mat.inverse().ok_or_else(|| Error::Invalid("h + q_b is not a direct sum decomposition of g".into()))?;
    Ok(ParabolicComplement { b: b.to_vec(), theta, preimages, basis, in_nilradical: in_nil, solver })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::liealg::algebra::build_algebra;
    use proptest::prelude::*;

    fn unit(n: usize, i: usize, j: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        m[(i, j)] = Rat::one();
        m
    }

    #[test]
    fn theta_examples() {
        let g = build_algebra(Family::A, 2).unwrap();
        let b = vec![q(2, 1), q(-1, 3)];
        let th = make_automorphism(&g, AutoKind::Theta(b.clone())).unwrap();
        assert!(!th.preserves_h);
        assert!(th.bracket_defects(&g).is_empty());
        for j in 0..2 {
            let e = unit(3, 2, j);
            assert_eq!(th.apply_matrix(&e), e);
        }
        // θ_b(h̃_k) = h̃_k − b_k E_{n+1,k}, h̃_k = E_kk − I/(n+1)
        for k in 0..2 {
            let ht = unit(3, k, k).sub(&RatMatrix::scalar(3, &q(1, 3)));
            let expect = ht.sub(&unit(3, 2, k).scale(&b[k]));
            assert_eq!(th.apply_matrix(&ht), expect);
        }
        let inv = th.inverse(&g).unwrap();
        for a in 0..g.dim() {
            let x = &g.basis[a].matrix;
            assert_eq!(inv.apply_matrix(&th.apply_matrix(x)), *x);
        }
        assert!(make_automorphism(&g, AutoKind::Theta(vec![q(1, 1), q(0, 1)])).is_err());
        let c = build_algebra(Family::C, 2).unwrap();
        assert!(matches!(make_automorphism(&c, AutoKind::Theta(vec![q(1, 1), q(1, 1)])), Err(Error::NotInScope(_))));
    }

    #[test]
    fn tau_examples() {
        for (fam, n) in [(Family::A, 1), (Family::A, 3), (Family::C, 2), (Family::C, 3)] {
            let g = build_algebra(fam, n).unwrap();
            let t = make_automorphism(&g, AutoKind::Tau).unwrap();
            assert!(t.preserves_h);
            assert!(t.bracket_defects(&g).is_empty());
            for a in 0..g.dim() {
                let x = &g.basis[a].matrix;
                assert_eq!(t.apply_matrix(&t.apply_matrix(x)), *x);
            }
        }
        let g = build_algebra(Family::A, 2).unwrap();
        let t = make_automorphism(&g, AutoKind::Tau).unwrap();
        let e12 = g.label("E1,2").unwrap();
        assert_eq!(t.image(e12), &[(g.label("E2,1").unwrap(), q(-1, 1))]);
    }

    #[test]
    fn diagonal_scaling() {
        let g = build_algebra(Family::A, 2).unwrap();
        let a = vec![q(2, 1), q(3, 1), q(-5, 7)];
        let p = make_automorphism(&g, AutoKind::Diag(a.clone())).unwrap();
        assert!(p.preserves_h && p.bracket_defects(&g).is_empty());
        assert_eq!(p.image(g.label("E1,3").unwrap()), &[(g.label("E1,3").unwrap(), &a[0] / &a[2])]);
        let c = build_algebra(Family::C, 2).unwrap();
        let pc = make_automorphism(&c, AutoKind::Diag(vec![q(2, 1), q(1, 3)])).unwrap();
        assert!(pc.preserves_h && pc.bracket_defects(&c).is_empty());
    }

    #[test]
    fn complement_examples() {
        for n in 1..=3 {
            let g = build_algebra(Family::A, n).unwrap();
            let b: Vec<Rat> = (0..n).map(|i| q(i as i64 + 1, 2)).collect();
            let pc = parabolic_complement(&g, &b).unwrap();
            assert_eq!(pc.dim(), n * n + n);
            let h1 = g.basis[g.label("h1").unwrap()].matrix.clone();
            let (hc, qc) = pc.decompose(&g, &h1).unwrap();
            assert_eq!(hc[0], q(1, 1));
            assert!(hc[1..].iter().chain(&qc).all(Rat::is_zero));
            // q_b is a subalgebra
            for x in &pc.basis {
                for y in &pc.basis {
                    let (hpart, _) = pc.decompose(&g, &x.mul(y).sub(&y.mul(x))).unwrap();
                    assert!(hpart.iter().all(Rat::is_zero));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn decomposition_reconstructs(b in prop::collection::vec((1i64..5, 1i64..4, any::<bool>()), 2), xs in prop::collection::vec(-4i64..5, 8)) {
            let g = build_algebra(Family::A, 2).unwrap();
            let b: Vec<Rat> = b.into_iter().map(|(p, d, s)| Rat::new(if s { p } else { -p }, d)).collect();
            let pc = parabolic_complement(&g, &b).unwrap();
            let terms: Vec<(usize, Rat)> = xs.iter().enumerate().map(|(a, &c)| (a, Rat::from_int(c))).collect();
            let x = g.combine(&terms);
            let (hc, qc) = pc.decompose(&g, &x).unwrap();
            let mut recon = g.cartan_matrix_of(&hc);
            for (m, c) in pc.basis.iter().zip(&qc) {
                recon = recon.add(&m.scale(c));
            }
            prop_assert_eq!(recon, x);
            let th = make_automorphism(&g, AutoKind::Theta(b.clone())).unwrap();
            let back = th.inverse(&g).unwrap();
            for a in 0..g.dim() {
                let m = &g.basis[a].matrix;
                prop_assert_eq!(&back.apply_matrix(&th.apply_matrix(m)), m);
            }
        }
    }
}
