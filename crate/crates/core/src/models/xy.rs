//! Infinite XY chain in a transverse field,
//!
//! `H = -(lambda/2) sum_i [(1+gamma) X_i X_{i+1} + (1-gamma) Y_i Y_{i+1}] - sum_i Z_i`,
//!
//! through its free-fermion solution: every correlator follows from the
//! integrals `G_m` and Toeplitz determinants built from them.
//!
//! Temperatures follow the scale of the integral representation, in which
//! `beta = 1/kt` multiplies the quasiparticle energy `omega` below. On that
//! scale the Hamiltonian above is thermalized at `2 kt`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::qcorr::{CorrelationSet, XState};
use crate::quadrature::{integrate, QuadSettings};
use crate::scalar::Real;

/// Largest neighbour distance supported.
pub const MAX_DISTANCE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XYParams<T> {
    pub lambda: T,
    pub gamma: T,
    pub kt: T,
    /// Distance between the two spins.
    pub k: usize,
}

impl<T: Real> XYParams<T> {
    pub fn new(lambda: T, gamma: T, kt: T, k: usize) -> Result<Self> {
        let p = Self {
            lambda,
            gamma,
            kt,
            k,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kt > T::zero()) {
            return Err(Error::NonPositiveTemperature(self.kt.as_f64()));
        }
        if !self.lambda.is_finite() || self.lambda < T::zero() {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and non-negative, got {}",
                self.lambda
            )));
        }
        if !self.gamma.is_finite() || self.gamma.abs() > T::one() {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in [-1, 1], got {}",
                self.gamma
            )));
        }
        if self.k == 0 || self.k > MAX_DISTANCE {
            return Err(Error::InvalidParameter(format!(
                "distance k must be in 1..={MAX_DISTANCE}, got {}",
                self.k
            )));
        }
        Ok(())
    }

    fn beta(&self) -> T {
        T::one() / self.kt
    }
}

/// Quasiparticle energy at mode angle `phi`.
pub fn omega<T: Real>(phi: T, p: &XYParams<T>) -> T {
    let a = p.gamma * p.lambda * phi.sin();
    let b = T::one() + p.lambda * phi.cos();
    a.hypot(b) * T::of(0.5)
}

/// The values `G_m` for `m in -k..=k` together with the magnetization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GFunction<T> {
    k: usize,
    /// `G_{-k} .. G_k`.
    values: Vec<T>,
    magnetization: T,
    /// Panels per breakpoint interval at convergence.
    pub panels: usize,
    /// Largest change at the final panel doubling.
    pub change: T,
}

impl<T: Real> GFunction<T> {
    pub fn k(&self) -> usize {
        self.k
    }

    /// `G_m` for `|m| <= k`.
    pub fn get(&self, m: i64) -> T {
        assert!(m.unsigned_abs() as usize <= self.k, "G index {m} outside cache bound {}", self.k);
        self.values[(m + self.k as i64) as usize]
    }

    pub fn magnetization(&self) -> T {
        self.magnetization
    }
}

/// Mode angle where `omega` is smallest, if inside `(0, pi]`.
fn gap_angle<T: Real>(p: &XYParams<T>) -> Option<T> {
    let s = p.lambda * (T::one() - p.gamma * p.gamma);
    let c = if s > T::zero() { -T::one() / s } else { -T::one() };
    if p.lambda == T::zero() {
        return None;
    }
    Some(c.max(-T::one()).min(T::one()).acos())
}

/// Breakpoints grading geometrically towards the gap minimum so that the
/// thermal step of width about `kt` around a near-zero `omega` is resolved.
fn breakpoints<T: Real>(p: &XYParams<T>) -> Vec<T> {
    let pi = T::PI();
    let mut pts = vec![T::zero(), pi];
    if let Some(c) = gap_angle(p) {
        pts.push(c);
        let floor = p.kt * T::of(0.125);
        let mut w = pi * T::of(0.5);
        for _ in 0..60 {
            if w < floor {
                break;
            }
            for x in [c - w, c + w] {
                if x > T::zero() && x < pi {
                    pts.push(x);
                }
            }
            w = w * T::of(0.5);
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    pts.dedup_by(|a, b| (*a - *b).abs() <= T::epsilon() * T::of(8.0));
    pts
}

pub fn g_function<T: Real>(p: &XYParams<T>) -> Result<GFunction<T>> {
    g_function_with(p, QuadSettings::default())
}

/// As [`g_function`] with explicit quadrature controls.
pub fn g_function_with<T: Real>(p: &XYParams<T>, settings: QuadSettings) -> Result<GFunction<T>> {
    p.validate()?;
    let k = p.k;
    let beta = p.beta();
    let two_pi = T::PI() + T::PI();
    let tiny = T::epsilon();
    // out[0..=k] = cosine integrals C_m, out[k+1..2k] = sine integrals S_m, m >= 1
    let f = |phi: T, out: &mut [T]| {
        let w = omega(phi, p);
        let t = if w > tiny { (beta * w).tanh() / w } else { beta } / two_pi;
        let a = T::one() + p.lambda * phi.cos();
        let s = phi.sin();
        for m in 0..=k {
            let mp = T::of_usize(m) * phi;
            out[m] = t * mp.cos() * a;
            if m > 0 {
                out[k + m] = t * mp.sin() * s;
            }
        }
    };
    let r = integrate(f, &breakpoints(p), 2 * k + 1, settings)?;
    let gl = p.gamma * p.lambda;
    let mut values = Vec::with_capacity(2 * k + 1);
    for m in -(k as i64)..=(k as i64) {
        let a = m.unsigned_abs() as usize;
        let sin_term = if a == 0 { T::zero() } else { r.values[k + a] };
        let sign = T::of(m.signum() as f64);
        values.push(r.values[a] - gl * sign * sin_term);
    }
    Ok(GFunction {
        k,
        values,
        magnetization: r.values[0],
        panels: r.panels,
        change: r.change,
    })
}

/// `<Z>`, the same for every site.
pub fn transverse_magnetization<T: Real>(p: &XYParams<T>) -> Result<T> {
    Ok(g_function(&XYParams { k: 1, ..*p })?.magnetization())
}

fn toeplitz<T: Real>(g: &GFunction<T>, offset: i64) -> T {
    let k = g.k();
    let mut a = Vec::with_capacity(k * k);
    for i in 0..k as i64 {
        for j in 0..k as i64 {
            a.push(g.get(i - j + offset));
        }
    }
    determinant(k, &a)
}

/// `<X_0 X_k>`.
pub fn xx_from<T: Real>(g: &GFunction<T>) -> T {
    toeplitz(g, -1)
}

/// `<Y_0 Y_k>`.
pub fn yy_from<T: Real>(g: &GFunction<T>) -> T {
    toeplitz(g, 1)
}

/// `<Z_0 Z_k>`.
pub fn zz_from<T: Real>(g: &GFunction<T>) -> T {
    let k = g.k() as i64;
    let s = g.magnetization();
    s * s - g.get(k) * g.get(-k)
}

pub fn xx_correlator<T: Real>(p: &XYParams<T>) -> Result<T> {
    Ok(xx_from(&g_function(p)?))
}

pub fn yy_correlator<T: Real>(p: &XYParams<T>) -> Result<T> {
    Ok(yy_from(&g_function(p)?))
}

pub fn zz_correlator<T: Real>(p: &XYParams<T>) -> Result<T> {
    Ok(zz_from(&g_function(p)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XYCorrelators<T> {
    pub sz: T,
    pub sxx: T,
    pub syy: T,
    pub szz: T,
}

impl<T: Real> XYCorrelators<T> {
    pub fn to_state(&self) -> Result<XState<T>> {
        XState::from_correlators(self.sz, self.sxx, self.syy, self.szz)
    }
}

/// All four correlators from one set of integrals.
pub fn correlators<T: Real>(p: &XYParams<T>) -> Result<XYCorrelators<T>> {
    let g = g_function(p)?;
    Ok(XYCorrelators {
        sz: g.magnetization(),
        sxx: xx_from(&g),
        syy: yy_from(&g),
        szz: zz_from(&g),
    })
}

/// Two-spin state at distance `k`.
pub fn reduced_state<T: Real>(p: &XYParams<T>) -> Result<XState<T>> {
    correlators(p)?.to_state()
}

pub fn correlation_set<T: Real>(p: &XYParams<T>) -> Result<CorrelationSet<T>> {
    Ok(CorrelationSet::from_state(&reduced_state(p)?))
}
