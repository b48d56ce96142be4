//! Coherent-family computations: degree polynomials, central-character normal
//! forms, admissible word lists and almost-coherence certificates.

pub mod certify;
pub mod degrees;
pub mod normal;

pub use certify::{certify_almost_coherent, AlmostCoherentCertificate, ProbeFit};
pub use degrees::{
    deg_identity_check, deg_k, deg_linear_independence, gl_dim, gl_weight, levi_dim, levi_l, DegIdentityReport,
    DegIdentityRow,
};
pub use normal::{
    admissible_word_list, degree_one_recognition, normal_form_of_fingerprint, weights_from_fingerprint,
    words_reduced, wt_normal_form, AdmissibleFamily, CentralCharClass, CharClass, DegreeOne,
};
