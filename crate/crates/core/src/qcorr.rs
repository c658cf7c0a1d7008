//! Entropic and entanglement measures of two-qubit X states.
//!
//! Basis order is `|00>, |01>, |10>, |11>` with the first index belonging to
//! qubit A. Discord minimizes the measured conditional entropy over
//! projective measurements along an arbitrary Bloch axis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{binary_entropy, xlog2x, Real};

/// Which qubit the projective measurement acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Side {
    A,
    #[default]
    B,
}

/// Measurement axis `n = (sin t cos p, sin t sin p, cos t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementAngles<T> {
    pub theta: T,
    pub phi: T,
}

impl<T: Real> MeasurementAngles<T> {
    /// Builds angles, wrapping `phi` into `[0, 2 pi)`.
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() || theta < T::zero() || theta > T::PI() {
            return Err(Error::InvalidParameter(format!(
                "measurement angles out of range: theta = {theta}, phi = {phi}"
            )));
        }
        let two_pi = T::PI() + T::PI();
        let mut phi = phi % two_pi;
        if phi < T::zero() {
            phi = phi + two_pi;
        }
        Ok(Self { theta, phi })
    }

    pub fn z() -> Self {
        Self {
            theta: T::zero(),
            phi: T::zero(),
        }
    }
}

/// Two-qubit density matrix whose only nonzero entries are on the diagonal
/// and the anti-diagonal, with real coherences.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XState<T> {
    r11: T,
    r22: T,
    r33: T,
    r44: T,
    r14: T,
    r23: T,
}

impl<T: Real> XState<T> {
    /// Validates the state; populations within `1e-12` below zero are
    /// clamped to zero.
    pub fn new(r11: T, r22: T, r33: T, r44: T, r14: T, r23: T) -> Result<Self> {
        let all = [r11, r22, r33, r44, r14, r23];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let neg = T::tol(1e-12);
        for (i, p) in [r11, r22, r33, r44].iter().enumerate() {
            if *p < -neg {
                return Err(Error::InvalidState(format!(
                    "population r{0}{0} = {1} is negative",
                    i + 1,
                    p
                )));
            }
        }
        let clamp = |p: T| p.max(T::zero());
        let (r11, r22, r33, r44) = (clamp(r11), clamp(r22), clamp(r33), clamp(r44));
        let trace = r11 + r22 + r33 + r44;
        if (trace - T::one()).abs() > T::tol(1e-10) {
            return Err(Error::InvalidState(format!("trace is {trace}, not 1")));
        }
        let pos = T::tol(1e-10);
        if r14 * r14 > r11 * r44 + pos {
            return Err(Error::InvalidState(format!(
                "outer block not positive: r14^2 = {} > r11 r44 = {}",
                r14 * r14,
                r11 * r44
            )));
        }
        if r23 * r23 > r22 * r33 + pos {
            return Err(Error::InvalidState(format!(
                "inner block not positive: r23^2 = {} > r22 r33 = {}",
                r23 * r23,
                r22 * r33
            )));
        }
        Ok(Self {
            r11,
            r22,
            r33,
            r44,
            r14,
            r23,
        })
    }

    /// `I / 4`.
    pub fn maximally_mixed() -> Self {
        let q = T::of(0.25);
        Self {
            r11: q,
            r22: q,
            r33: q,
            r44: q,
            r14: T::zero(),
            r23: T::zero(),
        }
    }

    /// State with the given single-site magnetization and Pauli correlators.
    ///
    /// `rho = (I + sz (Z1 + Z2) + sxx XX + syy YY + szz ZZ) / 4`.
    pub fn from_correlators(sz: T, sxx: T, syy: T, szz: T) -> Result<Self> {
        let q = T::of(0.25);
        let two = T::of(2.0);
        Self::new(
            (T::one() + two * sz + szz) * q,
            (T::one() - szz) * q,
            (T::one() - szz) * q,
            (T::one() - two * sz + szz) * q,
            (sxx - syy) * q,
            (sxx + syy) * q,
        )
    }

    pub fn r11(&self) -> T {
        self.r11
    }
    pub fn r22(&self) -> T {
        self.r22
    }
    pub fn r33(&self) -> T {
        self.r33
    }
    pub fn r44(&self) -> T {
        self.r44
    }
    pub fn r14(&self) -> T {
        self.r14
    }
    pub fn r23(&self) -> T {
        self.r23
    }

    /// Dense 4x4 matrix, row-major.
    pub fn to_matrix(&self) -> [[T; 4]; 4] {
        let z = T::zero();
        [
            [self.r11, z, z, self.r14],
            [z, self.r22, self.r23, z],
            [z, self.r23, self.r33, z],
            [self.r14, z, z, self.r44],
        ]
    }

    /// The four eigenvalues (unordered), from the two 2x2 blocks.
    pub fn eigenvalues(&self) -> [T; 4] {
        let (a1, a2) = block_eigs(self.r11, self.r44, self.r14);
        let (b1, b2) = block_eigs(self.r22, self.r33, self.r23);
        [a1, a2, b1, b2]
    }

    /// Diagonal of the reduced state of qubit A.
    pub fn reduced_a(&self) -> [T; 2] {
        [self.r11 + self.r22, self.r33 + self.r44]
    }

    /// Diagonal of the reduced state of qubit B.
    pub fn reduced_b(&self) -> [T; 2] {
        [self.r11 + self.r33, self.r22 + self.r44]
    }

    pub fn entropy(&self) -> T {
        von_neumann_entropy(&self.eigenvalues())
    }

    /// Rank one within numerical tolerance.
    pub fn is_pure(&self, tol: T) -> bool {
        let mut e = self.eigenvalues();
        e.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        (e[0] - T::one()).abs() <= tol
    }
}

fn block_eigs<T: Real>(a: T, d: T, b: T) -> (T, T) {
    let half = T::of(0.5);
    let mean = (a + d) * half;
    let rad = ((a - d) * half).hypot(b);
    (mean + rad, mean - rad)
}

/// `-sum l log2 l` over a spectrum; entries are clamped to `[0, 1]`.
pub fn von_neumann_entropy<T: Real>(spectrum: &[T]) -> T {
    spectrum.iter().map(|&l| xlog2x(l)).sum()
}

/// `S(A) + S(B) - S(AB)`.
pub fn mutual_information<T: Real>(state: &XState<T>) -> T {
    von_neumann_entropy(&state.reduced_a()) + von_neumann_entropy(&state.reduced_b())
        - state.entropy()
}

/// Average entropy of the unmeasured qubit after a projective measurement
/// along `m` on `side`.
pub fn conditional_entropy<T: Real>(state: &XState<T>, m: MeasurementAngles<T>, side: Side) -> T {
    let (c, s) = (m.theta.cos(), m.theta.sin());
    let (cp, sp) = (m.phi.cos(), m.phi.sin());
    let plus = state.r14 + state.r23;
    let minus = state.r14 - state.r23;
    let coh = (plus * plus * cp * cp + minus * minus * sp * sp).sqrt() * s * T::of(0.5);
    let coh2 = coh * coh;
    // (upper, lower) populations paired with the projector's (00, 11) entries.
    let (u, l) = match side {
        Side::B => ((state.r11, state.r22), (state.r33, state.r44)),
        Side::A => ((state.r11, state.r33), (state.r22, state.r44)),
    };
    let half = T::of(0.5);
    let tiny = T::min_positive_value().sqrt();
    let mut total = T::zero();
    for sign in [T::one(), -T::one()] {
        let p00 = (T::one() + sign * c) * half;
        let p11 = (T::one() - sign * c) * half;
        let m00 = u.0 * p00 + u.1 * p11;
        let m11 = l.0 * p00 + l.1 * p11;
        let p = m00 + m11;
        if p <= tiny {
            continue;
        }
        let d = m00 - m11;
        let disc = (d * d + T::of(4.0) * coh2).sqrt();
        let lam = ((T::one() + disc / p) * half).min(T::one());
        total = total + p * binary_entropy(lam);
    }
    total
}

const GRID: usize = 61;
const SEEDS: usize = 3;
const OBJ_TOL: f64 = 1e-10;

/// Minimum of [`conditional_entropy`] over measurement axes.
///
/// A 61 x 61 grid over `theta in [0, pi]`, `phi in [0, 2 pi]` seeds
/// coordinate-wise golden-section refinement from its best few points.
pub fn min_conditional_entropy<T: Real>(state: &XState<T>, side: Side) -> (T, MeasurementAngles<T>) {
    let pi = T::PI();
    let two_pi = pi + pi;
    let dt = pi / T::of_usize(GRID - 1);
    let dp = two_pi / T::of_usize(GRID - 1);
    let mut pts: Vec<(T, usize, usize)> = Vec::with_capacity(GRID * GRID);
    for i in 0..GRID {
        let theta = dt * T::of_usize(i);
        for j in 0..GRID {
            let phi = dp * T::of_usize(j);
            let v = conditional_entropy(state, MeasurementAngles { theta, phi }, side);
            pts.push((v, i, j));
        }
    }
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite objective"));

    let mut best_v = pts[0].0;
    let mut best = MeasurementAngles {
        theta: dt * T::of_usize(pts[0].1),
        phi: dp * T::of_usize(pts[0].2),
    };
    for &(v0, i, j) in pts.iter().take(SEEDS) {
        let start = MeasurementAngles {
            theta: dt * T::of_usize(i),
            phi: dp * T::of_usize(j),
        };
        let (v, m) = refine(state, side, start, v0, dt, dp);
        if v < best_v {
            best_v = v;
            best = m;
        }
    }
    if best.phi >= two_pi {
        best.phi = best.phi - two_pi;
    }
    (best_v, best)
}

fn refine<T: Real>(
    state: &XState<T>,
    side: Side,
    start: MeasurementAngles<T>,
    v0: T,
    dt: T,
    dp: T,
) -> (T, MeasurementAngles<T>) {
    let pi = T::PI();
    let tol = T::tol(OBJ_TOL);
    let mut m = start;
    let mut v = v0;
    for _ in 0..50 {
        let before = v;
        let lo = (m.theta - dt).max(T::zero());
        let hi = (m.theta + dt).min(pi);
        let phi = m.phi;
        let (t, vt) = golden(|x| conditional_entropy(state, MeasurementAngles { theta: x, phi }, side), lo, hi);
        if vt < v {
            v = vt;
            m.theta = t;
        }
        let theta = m.theta;
        let (p, vp) = golden(
            |x| conditional_entropy(state, MeasurementAngles { theta, phi: x }, side),
            m.phi - dp,
            m.phi + dp,
        );
        if vp < v {
            v = vp;
            m.phi = p;
        }
        if before - v <= tol {
            break;
        }
    }
    let two_pi = pi + pi;
    let mut phi = m.phi % two_pi;
    if phi < T::zero() {
        phi = phi + two_pi;
    }
    m.phi = phi;
    (v, m)
}

/// Golden-section search on `[a, b]`, also comparing the endpoints.
fn golden<T: Real>(f: impl Fn(T) -> T, a: T, b: T) -> (T, T) {
    let g = T::of(0.618_033_988_749_894_8);
    let (mut a, mut b) = (a, b);
    let (fa0, fb0) = (f(a), f(b));
    let (a0, b0) = (a, b);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let xtol = T::epsilon().sqrt() * T::of(0.1);
    while (b - a).abs() > xtol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    if fa0 < best.1 {
        best = (a0, fa0);
    }
    if fb0 < best.1 {
        best = (b0, fb0);
    }
    best
}

/// Quantum discord with measurement on `side`, clamped at zero.
pub fn discord<T: Real>(state: &XState<T>, side: Side) -> T {
    let (smin, _) = min_conditional_entropy(state, side);
    let unmeasured = match side {
        Side::B => state.reduced_b(),
        Side::A => state.reduced_a(),
    };
    let classical = state.entropy() - von_neumann_entropy(&unmeasured);
    (smin - classical).max(T::zero())
}

/// Wootters concurrence in closed X-state form.
pub fn concurrence<T: Real>(state: &XState<T>) -> T {
    let l1 = state.r14.abs() - (state.r22 * state.r33).sqrt();
    let l2 = state.r23.abs() - (state.r11 * state.r44).sqrt();
    (T::of(2.0) * l1.max(l2).max(T::zero())).min(T::one())
}

/// Entanglement of formation from a concurrence value.
pub fn eof_from_concurrence<T: Real>(c: T) -> T {
    let c = c.max(T::zero()).min(T::one());
    if c == T::zero() {
        return T::zero();
    }
    let g = (T::one() + (T::one() - c * c).max(T::zero()).sqrt()) * T::of(0.5);
    binary_entropy(g)
}

pub fn eof<T: Real>(state: &XState<T>) -> T {
    eof_from_concurrence(concurrence(state))
}

/// Every measure at one parameter point; discord is the B-side value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationSet<T> {
    pub discord: T,
    pub eof: T,
    pub concurrence: T,
    pub mutual_info: T,
    pub sz: T,
    pub sxx: T,
    pub syy: T,
    pub szz: T,
}

impl<T: Real> CorrelationSet<T> {
    /// Evaluates all measures; Pauli expectations are read off the matrix
    /// (`sz` is the site average).
    pub fn from_state(state: &XState<T>) -> Self {
        let c = concurrence(state);
        let two = T::of(2.0);
        Self {
            discord: discord(state, Side::B),
            eof: eof_from_concurrence(c),
            concurrence: c,
            mutual_info: mutual_information(state).max(T::zero()),
            sz: state.r11 - state.r44,
            sxx: two * (state.r14 + state.r23),
            syy: two * (state.r23 - state.r14),
            szz: state.r11 - state.r22 - state.r33 + state.r44,
        }
    }
}
