//! Two spins under the XYZ Hamiltonian with a uniform longitudinal field,
//!
//! `H = (jx XX + jy YY + jz ZZ) / 4 + b (Z1 + Z2) / 2`,
//!
//! whose Gibbs state is an X state known in closed form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcorr::{CorrelationSet, XState};
use crate::scalar::Real;
use crate::spectral::SymMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoSpinXYZParams<T> {
    pub jx: T,
    pub jy: T,
    pub jz: T,
    pub b: T,
    pub kt: T,
}

impl<T: Real> TwoSpinXYZParams<T> {
    pub fn new(jx: T, jy: T, jz: T, b: T, kt: T) -> Result<Self> {
        let p = Self { jx, jy, jz, b, kt };
        p.validate()?;
        Ok(p)
    }

    /// Isotropic exchange `jx = jy = jz = j`.
    pub fn xxx(j: T, b: T, kt: T) -> Result<Self> {
        Self::new(j, j, j, b, kt)
    }

    /// Planar exchange `jx = jy = j` with separate `jz`.
    pub fn xxz(j: T, jz: T, b: T, kt: T) -> Result<Self> {
        Self::new(j, j, jz, b, kt)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kt > T::zero()) {
            return Err(Error::NonPositiveTemperature(self.kt.as_f64()));
        }
        let all = [self.jx, self.jy, self.jz, self.b, self.kt];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite XYZ parameter".into()));
        }
        Ok(())
    }

    /// The 4x4 Hamiltonian in the computational basis.
    pub fn hamiltonian(&self) -> SymMatrix<T> {
        let q = T::of(0.25);
        let mut h = SymMatrix::zeros(4).expect("nonzero dimension");
        h.set(0, 0, self.jz * q + self.b);
        h.set(1, 1, -self.jz * q);
        h.set(2, 2, -self.jz * q);
        h.set(3, 3, self.jz * q - self.b);
        h.set(0, 3, (self.jx - self.jy) * q);
        h.set(1, 2, (self.jx + self.jy) * q);
        h
    }
}

/// Closed-form Gibbs state.
///
/// Every exponential is scaled by the largest one, so temperatures far below
/// the coupling scale stay finite.
pub fn thermal_state<T: Real>(p: &TwoSpinXYZParams<T>) -> Result<XState<T>> {
    p.validate()?;
    let four = T::of(4.0);
    let half = T::of(0.5);
    let delta = p.jx - p.jy;
    let sigma = p.jx + p.jy;
    let eta = delta.hypot(four * p.b);
    let alpha = p.jz / (four * p.kt);
    let beta = eta / (four * p.kt);
    let gamma = sigma / (four * p.kt);
    let g = gamma.abs();

    let shift = (beta - alpha).max(alpha + g);
    let e1 = (beta - alpha - shift).exp();
    let e2 = (alpha + g - shift).exp();
    let two = T::of(2.0);
    // cosh and sinh, each times exp(-beta) (resp. exp(-|gamma|)).
    let ch_b = (T::one() + (-two * beta).exp()) * half;
    let sh_b = -(-two * beta).exp_m1() * half;
    let ch_g = (T::one() + (-two * g).exp()) * half;
    let sh_g = -(-two * g).exp_m1() * half;

    let ratio = if eta > T::zero() { sh_b / eta } else { T::zero() };
    let a11 = e1 * (ch_b - four * p.b * ratio);
    let a22 = e1 * (ch_b + four * p.b * ratio);
    let a12 = -delta * e1 * ratio;
    let b11 = e2 * ch_g;
    let b12 = -gamma.signum() * e2 * sh_g;
    let z = two * (e1 * ch_b + e2 * ch_g);
    XState::new(a11 / z, b11 / z, b11 / z, a22 / z, a12 / z, b12 / z)
}

pub fn correlations<T: Real>(p: &TwoSpinXYZParams<T>) -> Result<CorrelationSet<T>> {
    Ok(CorrelationSet::from_state(&thermal_state(p)?))
}
