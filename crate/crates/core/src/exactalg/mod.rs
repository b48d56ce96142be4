//! Exact arithmetic: rationals, polynomials in the Cartan variables, shift
//! maps, matrices and interpolation.

pub mod interp;
pub mod matrix;
pub mod poly;
pub mod rat;

pub use interp::{fit_polynomial, monomial_count, monomials_up_to, simplex_offsets};
pub use matrix::{rat_kernel, PolyMatrix, RatMatrix};
pub use poly::{apply_shift, eval_poly, Monomial, Poly, PolyText, ShiftMap};
pub use rat::{parse_rat_list, q, Rat};
