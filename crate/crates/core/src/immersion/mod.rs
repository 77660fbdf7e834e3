//! Submanifolds immersed in a model ambient: radial-graph domains, closed
//! curves and revolution surfaces, with the weighted integrals and the
//! checks built on them.

mod ambient;
mod curve;
mod domain;
mod hypersurface;
mod metric;
mod minimal;
mod param;
mod surface;
mod verify;

pub use ambient::{AmbientModel, CurvatureRelation, WarpPair};
pub use curve::ClosedCurve;
pub use domain::{Boundary, BoundaryPoint, RadialGraphDomain};
pub use hypersurface::{FramePoint, Hypersurface};
pub use minimal::{
    extrinsic_exhaustion_monotonicity, minimal_isoperimetric_check, MinimalIsoReport, MonotonicityReport,
    MonotonicitySample, RadialPlane,
};
pub use param::{ParamFn, Resolution};
pub use surface::{ProfileKind, RevolutionSurface};
pub use verify::{
    bola_profile_bound, cmc_check, hk_functional, jellett_residual, k_iso_quotient, radius_isoperimetric_check,
    unuacol_check, CmcReport, CmcVerdict, Expected, HkReport, Immersed, JellettReport, RadiusIsoReport, UnuacolReport,
    Verdict,
};
