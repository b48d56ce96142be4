//! sl(n+1), sp(2n) and gl(n): bases, roots, Weyl groups, finite-dimensional
//! irreducibles, the enveloping algebra and automorphisms.

pub mod algebra;
pub mod auto;
pub mod rep;
pub mod uea;
pub mod weyl;

pub use algebra::{build_algebra, BasisElement, BasisKind, Family, LieAlgebraData, Root, Weight};
pub use auto::{make_automorphism, parabolic_complement, AlgebraAutomorphism, AutoKind, ParabolicComplement};
pub use rep::{irrep, irrep_gl, weyl_dim, FiniteRep, Levi};
pub use uea::{default_central_elements, gelfand_invariant, hc_polynomial, verma_hc_eigenvalue, UEAWord};
pub use weyl::{
    dominant_conjugate, dot_action, dot_orbit, dot_stabilizer, same_central_character, translation_compatible,
    w_k, weyl_group, WeylElement,
};
