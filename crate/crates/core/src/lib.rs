//! Thermal quantum discord and entanglement of formation for two-qubit
//! reduced states of spin-1/2 chains, with finite-temperature critical-point
//! estimation from derivative extrema.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix `f64`, which is what the command-line tool uses.

pub mod critical;
pub mod error;
pub mod linalg;
pub mod models;
pub mod qcorr;
pub mod quadrature;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Real;

pub use critical::{CpEstimate, Measure, ModelSpec, Rule, SweepSeries};
pub use qcorr::{MeasurementAngles, Side};

pub type XState = qcorr::XState<f64>;
pub type CorrelationSet = qcorr::CorrelationSet<f64>;
pub type SymMatrix = spectral::SymMatrix<f64>;
pub type EigenSystem = spectral::EigenSystem<f64>;
pub type TwoSpinXYZParams = models::xyz2::TwoSpinXYZParams<f64>;
pub type XXZParams = models::xxz::XXZParams<f64>;
pub type XXZCorrelators = models::xxz::XXZCorrelators<f64>;
pub type XYParams = models::xy::XYParams<f64>;
pub type XYCorrelators = models::xy::XYCorrelators<f64>;
