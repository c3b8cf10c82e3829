//! Frobenius-manifold side: prepotentials, WDVV, flat-coordinate maps and the
//! initial-conditions comparison of the GW and orbit-space product tensors.

pub mod duality;
pub mod flatfile;
pub mod initial;
pub mod prepotential;
pub mod wdvv;

pub use duality::{
    ell_aw, ell_gw, g_matrix, unit_contraction, verify_duality, AwData, CheckRecord, DualityOptions, DualityReport,
    PointRecord,
};
pub use flatfile::{parse_flatmap, serialize_flatmap};
pub use initial::{
    admissible_exponents, initial_conditions, sample_points, vandermonde_certificate, vandermonde_matrix,
    InitialConditions, PointSampler,
};
pub use prepotential::{e6_prepotential, FlatPoint, Prepotential, TermKey};
pub use wdvv::{c_tensor_upper, find_unit_and_eta, wdvv_residual, WdvvResidual};
