//! The weighting functor and its windowed shadows: slot matrices, trace maps,
//! cuspidality, tensor and translation functors, almost-equivalence.

pub mod fit;
pub mod functors;
pub mod window;

pub use fit::{
    cuspidality_test, default_degree_bound, fit_slot_function, leverrier_det, trace_polynomial, CuspidalityReport,
    RootDeterminant, SlotFit, TraceFit, HOLDOUT_FRACTION,
};
pub use functors::{
    almost_equivalent, coproduct_trace, split_trace, window_tensor, window_translate, EquivalenceVerdict, Translation,
};
pub use window::{box_slots, default_probes, weighting, Probe, Slot, TraceTable, WeightWindow, DEFAULT_RADIUS};
