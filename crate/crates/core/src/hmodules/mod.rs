//! The category of U(h)-free modules: constructors, validation, duality,
//! twists and tensor products.

pub mod carrier;
pub mod free;
pub mod m0;
pub mod ops;
pub mod spec;

pub use carrier::{
    consistent_readings, exponential_module, htilde_in_h, htilde_values, weyl_carrier, weyl_carrier_with, weyl_to_free,
    CarrierElement, OmegaReading, WeylCarrier,
};
pub use free::{central_value, validate_bracket, BracketReport, CentralValue, Fingerprint, FreeHModule, ModuleMeta};
pub use m0::{from_sp2n_m0, m0_reduction_witness, ReductionStep};
pub use ops::{dual_module, parabolic_verma, parabolic_verma_from_weight, tensor_finite, twist};
pub use spec::{AlgebraSpec, ModuleSpec};
