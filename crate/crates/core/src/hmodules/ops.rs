//! Parabolic Verma modules, twists, tensor products with finite-dimensional
//! modules, and the duality (−)^∨.

use std::sync::Arc;

use serde_json::json;

use super::free::{FreeHModule, ModuleMeta};
use crate::error::{Error, Result};
use crate::exactalg::{Poly, PolyMatrix, Rat, RatMatrix};
use crate::liealg::{
    build_algebra, irrep_gl, AlgebraAutomorphism, Family, FiniteRep, LieAlgebraData, ParabolicComplement, Weight,
};

/// M_q(V) = U(g) ⊗_{U(q)} V ≅ U(h) ⊗ V, with V a gl(n)-module on which
/// θ_b(y) acts as ι(y) for y ∈ 𝔩 and 𝔲⁺ acts by zero.
pub fn parabolic_verma(g: &Arc<LieAlgebraData>, pc: &ParabolicComplement, v: &FiniteRep) -> Result<FreeHModule> {
    let n = g.n;
    let gl = build_algebra(Family::Gl, n)?;
    if v.action.len() != gl.dim() {
        return Err(Error::Dimension("V is not a gl(n)-representation".into()));
    }
    // ρ_V(ι(y_k)) for each basis element of q_b
    let q_action: Vec<RatMatrix> = pc
        .preimages
        .iter()
        .zip(&pc.in_nilradical)
        .map(|(y, &nil)| {
            if nil {
                Ok(RatMatrix::zeros(v.dim, v.dim))
            } else {
                v.act_matrix(&gl, &ParabolicComplement::levi_image(n, y))
            }
        })
        .collect::<Result<_>>()?;
    let nv = g.cartan_dim();
    let mut action = Vec::with_capacity(g.dim());
    for a in 0..g.dim() {
        let (hc, qc) = pc.decompose(g, &g.basis[a].matrix)?;
        let hpoly = Poly::linear(&hc, Rat::zero());
        let mut c = RatMatrix::zeros(v.dim, v.dim);
        for (m, x) in q_action.iter().zip(&qc) {
            if !x.is_zero() {
                c = c.add(&m.scale(x));
            }
        }
        let mut m = c.to_poly(nv);
        if !hpoly.is_zero() {
            m = m.add(&PolyMatrix::scalar(v.dim, &hpoly));
        }
        action.push(m);
    }
    FreeHModule::new(
        g.clone(),
        v.dim,
        action,
        ModuleMeta {
            constructor: "verma".into(),
            params: json!({ "b": pc.b, "v_highest_weight": v.highest_weight }),
            notes: Vec::new(),
        },
    )
}

/// Parabolic Verma for V = L_{gl(n)}(μ) with μ_k = λ(h̃_k), λ in h-coordinates.
pub fn parabolic_verma_from_weight(b: &[Rat], lambda: &Weight) -> Result<FreeHModule> {
    let n = b.len();
    if lambda.len() != n {
        return Err(Error::Dimension(format!("λ has {} coordinates, expected {n}", lambda.len())));
    }
    let g = Arc::new(build_algebra(Family::A, n)?);
    let pc = crate::liealg::parabolic_complement(&g, b)?;
    let mu = Weight(super::carrier::htilde_values(lambda));
    let v = irrep_gl(n, &mu)?;
    let mut m = parabolic_verma(&g, &pc, &v)?;
    m.meta.params = json!({ "b": b, "lambda": lambda });
    Ok(m)
}

/// M^ψ: x acts as ψ(x), coefficients rewritten through ψ⁻¹ on h.
pub fn twist(m: &FreeHModule, psi: &AlgebraAutomorphism) -> Result<FreeHModule> {
    let g = &m.algebra;
    if !psi.preserves_h {
        return Err(Error::Invalid("twist needs an automorphism preserving h".into()));
    }
    let nv = m.nvars();
    let labels = g.cartan_labels();
    // T[i][j]: ψ(h_i) = Σ_j T_ij h_j
    let mut t = RatMatrix::zeros(nv, nv);
    for (i, &l) in labels.iter().enumerate() {
        for (c, x) in psi.image(l) {
            let j = labels.iter().position(|&k| k == *c).expect("Cartan image");
            t[(i, j)] = x.clone();
        }
    }
    let tinv = t.inverse().ok_or_else(|| Error::Invalid("ψ is singular on h".into()))?;
    // old coefficient q(h) becomes q(ψ⁻¹(h)) in the new structure
    let subs: Vec<Poly> = (0..nv).map(|i| Poly::linear(&tinv.row(i), Rat::zero())).collect();
    let action = (0..g.dim()).map(|a| m.combine(psi.image(a)).map(|p| p.compose(&subs))).collect();
    let mut meta = m.meta.clone();
    meta.constructor = "twist".into();
    meta.params = json!({ "kind": format!("{:?}", psi.kind), "base": m.meta.params });
    FreeHModule::new(g.clone(), m.rank, action, meta)
}

/// M ⊗ V on generators v_j ⊗ w_μ, index j·dim V + μ, with
/// p•(v_j ⊗ w_μ) = (σ_{−μ}(p) v_j) ⊗ w_μ. The M-blocks are therefore σ_μ(A_x).
pub fn tensor_finite(m: &FreeHModule, v: &FiniteRep) -> Result<FreeHModule> {
    let g = &m.algebra;
    if v.action.len() != g.dim() || v.weights.first().is_some_and(|w| w.len() != g.cartan_dim()) {
        return Err(Error::Incompatible("finite module is over a different algebra".into()));
    }
    let nv = m.nvars();
    let d = v.dim;
    let r = m.rank * d;
    let mut action = Vec::with_capacity(g.dim());
    for a in 0..g.dim() {
        let mut out = PolyMatrix::zeros(r, r, nv);
        let shifted: Vec<PolyMatrix> = (0..d).map(|mu| m.action[a].shift(&v.weights[mu].0)).collect();
        for j in 0..m.rank {
            for i in 0..m.rank {
                for mu in 0..d {
                    let p = &shifted[mu][(i, j)];
                    if !p.is_zero() {
                        out[(i * d + mu, j * d + mu)] = p.clone();
                    }
                }
            }
            for mu in 0..d {
                for nu in 0..d {
                    let c = &v.action[a][(nu, mu)];
                    if !c.is_zero() {
                        let e = &mut out[(j * d + nu, j * d + mu)];
                        *e = &*e + &Poly::constant(nv, c.clone());
                    }
                }
            }
        }
        action.push(out);
    }
    let mut meta = m.meta.clone();
    meta.constructor = "tensor".into();
    meta.params = json!({ "rep": v.highest_weight, "base": m.meta.params });
    FreeHModule::new(g.clone(), r, action, meta)
}

/// A^∨_x = σ_{α_x}(A_{xᵀ})ᵀ, the transpose being −τ.
pub fn dual_module(m: &FreeHModule) -> Result<FreeHModule> {
    let g = &m.algebra;
    let mut action = Vec::with_capacity(g.dim());
    for a in 0..g.dim() {
        let xt = g.expand(&g.basis[a].matrix.transpose())?;
        action.push(m.combine(&xt).shift(m.shift_of(a)).transpose());
    }
    let mut meta = m.meta.clone();
    meta.constructor = "dual".into();
    meta.params = json!({ "base": m.meta.params });
    FreeHModule::new(g.clone(), m.rank, action, meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::hmodules::{exponential_module, from_sp2n_m0};
    use crate::liealg::{irrep, make_automorphism, parabolic_complement, AutoKind};

    #[test]
    fn verma_examples() {
        for n in 1..=2 {
            let g = Arc::new(build_algebra(Family::A, n).unwrap());
            let b: Vec<Rat> = (0..n).map(|i| q(i as i64 + 1, 1)).collect();
            let pc = parabolic_complement(&g, &b).unwrap();
            let gl = build_algebra(Family::Gl, n).unwrap();
            let triv = FiniteRep::trivial(&gl);
            let m = parabolic_verma(&g, &pc, &triv).unwrap();
            assert_eq!(m.rank, 1);
            assert!(m.validate_bracket().pass);
            assert!(m.action.iter().all(|a| a.max_degree() <= 1));
        }
        let m = parabolic_verma_from_weight(&[q(2, 1), q(-1, 3)], &Weight(vec![q(1, 1), q(1, 2)])).unwrap();
        assert_eq!(m.rank, 2);
        assert!(m.validate_bracket().pass);
    }

    #[test]
    fn twists() {
        let m = from_sp2n_m0(2).unwrap();
        let g = m.algebra.clone();
        let id = make_automorphism(&g, AutoKind::Diag(vec![q(1, 1), q(1, 1)])).unwrap();
        assert_eq!(twist(&m, &id).unwrap().action, m.action);
        let tau = make_automorphism(&g, AutoKind::Tau).unwrap();
        let mt = twist(&m, &tau).unwrap();
        assert!(mt.validate_bracket().pass);
        assert_eq!(twist(&mt, &tau).unwrap().action, m.action);
        let phi = make_automorphism(&g, AutoKind::Diag(vec![q(3, 1), q(-1, 2)])).unwrap();
        let mp = twist(&m, &phi).unwrap();
        assert!(mp.validate_bracket().pass);
        assert_eq!(mp.default_fingerprint().unwrap(), m.default_fingerprint().unwrap());
        let a2 = Arc::new(build_algebra(Family::A, 2).unwrap());
        let th = make_automorphism(&a2, AutoKind::Theta(vec![q(1, 1), q(1, 1)])).unwrap();
        let e = exponential_module(&[q(1, 1), q(1, 1)], &Weight::zero(2), &[]).unwrap();
        assert!(twist(&e, &th).is_err());
    }

    #[test]
    fn tensors() {
        let m = exponential_module(&[q(1, 1)], &Weight(vec![q(1, 3)]), &[]).unwrap();
        let g = m.algebra.clone();
        let triv = FiniteRep::trivial(&g);
        assert_eq!(tensor_finite(&m, &triv).unwrap().action, m.action);
        let nat = irrep(&g, &Weight::from_ints(&[1])).unwrap();
        let t = tensor_finite(&m, &nat).unwrap();
        assert_eq!(t.rank, 2);
        assert!(t.validate_bracket().pass);
    }

    #[test]
    fn duals() {
        let m = from_sp2n_m0(2).unwrap();
        let d = dual_module(&m).unwrap();
        assert_eq!(d.rank, 1);
        assert!(d.validate_bracket().pass);
        assert_eq!(dual_module(&d).unwrap().action, m.action);
        assert_eq!(d.default_fingerprint().unwrap(), m.default_fingerprint().unwrap());
        // e_{2ε_1}ᵀ = −e_{−2ε_1}, so the dual entry is −σ_{2ε_1}(1) = −1
        let e = m.algebra.label("e(2e1)").unwrap();
        let f = m.algebra.label("e(-2e1)").unwrap();
        assert_eq!(d.action[e][(0, 0)], Poly::constant(2, q(-1, 1)));
        // and e_{−2ε_1} picks up −σ_{−2ε_1}((h̃_1 − 1/2)(h̃_1 − 3/2))
        assert_eq!(d.action[f][(0, 0)].to_canonical(), "-1/1*h1^2 - 2/1*h1 - 3/4");
    }
}
