//! Spin models that produce two-qubit thermal states.

pub mod xxz;
pub mod xy;
pub mod xyz2;

/// Lowest temperature accepted by the model backends; zero-temperature
/// queries are answered at this value.
pub const KT_FLOOR: f64 = 1e-3;
