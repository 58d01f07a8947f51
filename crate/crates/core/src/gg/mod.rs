//! Averaged braid quasi-morphisms on area-preserving disk maps.
//!
//! `Gamma_3(phi)(f)` integrates `phi(gamma(f^p; x)) / p` over triples `x` of points of the
//! disk. The integral is estimated by stratified Monte Carlo; see [`sampling`] for how
//! strata and random streams are laid out.

mod audit;
mod certificate;
mod estimate;
pub mod sampling;
mod sequence;

pub use audit::{audit_strata, trace_samples, BraidSample, SampleBatch, StratumAudit};
pub use certificate::{area_bound, bound_certificate, braid_certificate, AreaBound, BoundCertificate, Validity};
pub use estimate::{
    gamma_estimate, gamma_extrapolate, paired_gamma, scaling_check, Extrapolation, GGEstimate, ScalingReport,
    ScalingStatus, StratumEstimate,
};
pub use sequence::{
    sequence_experiment, sequence_point, sequence_preconditions, sequence_report, SequenceParams, SequencePoint,
    SequenceReport, CALABI_TOLERANCE,
};
