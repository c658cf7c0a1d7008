//! Periodic spin-1/2 XXZ chain in a longitudinal field,
//!
//! `H = j sum_i (X_i X_{i+1} + Y_i Y_{i+1} + delta Z_i Z_{i+1}) - (h/2) sum_i Z_i`,
//!
//! solved by exact diagonalization of a finite ring.
//!
//! Two routes are provided. [`sector_spectra`] diagonalizes each fixed
//! magnetization sector in the computational basis and is used as a
//! reference. [`XxzSpectrum`] additionally splits sectors by lattice momentum
//! and by global spin flip; its levels do not depend on `h`, so one spectrum
//! serves every field and temperature.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcorr::{CorrelationSet, XState};
use crate::scalar::Real;
use crate::spectral::{eigh, thermal_weights, EigenSystem, SymMatrix};

/// Longest ring accepted.
pub const MAX_LENGTH: usize = 16;
/// Largest sector [`sector_spectra`] diagonalizes densely (the middle sector at `L = 14`).
pub const DEFAULT_SECTOR_CAP: usize = 3432;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XXZParams<T> {
    pub delta: T,
    pub h: T,
    pub j: T,
    pub kt: T,
    pub length: usize,
}

impl<T: Real> XXZParams<T> {
    pub fn new(delta: T, h: T, j: T, kt: T, length: usize) -> Result<Self> {
        let p = Self {
            delta,
            h,
            j,
            kt,
            length,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kt > T::zero()) {
            return Err(Error::NonPositiveTemperature(self.kt.as_f64()));
        }
        if [self.delta, self.h, self.j, self.kt].iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite XXZ parameter".into()));
        }
        if self.length < 4 || self.length % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "chain length must be even and at least 4, got {}",
                self.length
            )));
        }
        if self.length > MAX_LENGTH {
            return Err(Error::LengthTooLarge {
                length: self.length,
                max: MAX_LENGTH,
            });
        }
        Ok(())
    }
}

/// Nearest-neighbour thermal expectations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XXZCorrelators<T> {
    pub sz: T,
    pub szz: T,
    pub sxx: T,
}

impl<T: Real> XXZCorrelators<T> {
    /// Nearest-neighbour reduced state; `syy = sxx` by rotation symmetry about z.
    pub fn to_state(&self) -> Result<XState<T>> {
        XState::from_correlators(self.sz, self.sxx, self.sxx, self.szz)
    }
}

#[inline]
fn bit(s: u32, i: usize) -> u32 {
    (s >> i) & 1
}

/// `sum_i Z_i Z_{i+1}` for a basis state (bit 1 = spin up).
fn zz_bonds(s: u32, l: usize) -> i32 {
    (0..l)
        .map(|i| if bit(s, i) == bit(s, (i + 1) % l) { 1 } else { -1 })
        .sum()
}

fn sector_states(l: usize, n_up: usize) -> Vec<u32> {
    (0u32..(1u32 << l))
        .filter(|s| s.count_ones() as usize == n_up)
        .collect()
}

/// Spectrum of one fixed-magnetization sector in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorSpectrum<T> {
    pub n_up: usize,
    /// Eigenvalue of `sum_i Z_i`.
    pub magnetization: i32,
    /// Basis states, ascending bit patterns.
    pub states: Vec<u32>,
    /// Eigensystem of the zero-field Hamiltonian.
    pub system: EigenSystem<T>,
}

/// Zero-field sector Hamiltonians, diagonalized one by one.
pub fn sector_spectra<T: Real>(p: &XXZParams<T>) -> Result<Vec<SectorSpectrum<T>>> {
    sector_spectra_with_cap(p, DEFAULT_SECTOR_CAP)
}

pub fn sector_spectra_with_cap<T: Real>(p: &XXZParams<T>, cap: usize) -> Result<Vec<SectorSpectrum<T>>> {
    p.validate()?;
    let l = p.length;
    let largest = binomial(l, l / 2);
    if largest > cap {
        return Err(Error::LengthTooLarge { length: l, max: max_length_for_cap(cap) });
    }
    let two = T::of(2.0);
    let mut out = Vec::with_capacity(l + 1);
    for n in 0..=l {
        let states = sector_states(l, n);
        let d = states.len();
        let mut data = vec![T::zero(); d * d];
        for (a, &s) in states.iter().enumerate() {
            data[a * d + a] = p.j * p.delta * T::of(zz_bonds(s, l) as f64);
            for i in 0..l {
                let k = (i + 1) % l;
                if bit(s, i) != bit(s, k) {
                    let t = s ^ ((1 << i) | (1 << k));
                    let b = states.binary_search(&t).expect("flip stays in sector");
                    data[b * d + a] = data[b * d + a] + two * p.j;
                }
            }
        }
        let system = eigh(&SymMatrix::new(d, data)?)?;
        out.push(SectorSpectrum {
            n_up: n,
            magnetization: 2 * n as i32 - l as i32,
            states,
            system,
        });
    }
    Ok(out)
}

fn max_length_for_cap(cap: usize) -> usize {
    (4..=MAX_LENGTH)
        .step_by(2)
        .filter(|&l| binomial(l, l / 2) <= cap)
        .max()
        .unwrap_or(0)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Correlators evaluated on the bond `(0, 1)` directly from sector
/// eigenvectors; no translation symmetry is used.
pub fn correlators_from_sectors<T: Real>(p: &XXZParams<T>, sectors: &[SectorSpectrum<T>]) -> Result<XXZCorrelators<T>> {
    let half = T::of(0.5);
    let mut energies = Vec::new();
    for s in sectors {
        let m = T::of(s.magnetization as f64);
        energies.extend(s.system.values().iter().map(|&e| e - p.h * half * m));
    }
    let (w, _) = thermal_weights(&energies, T::one() / p.kt)?;
    let (mut sz, mut szz, mut sxx) = (T::zero(), T::zero(), T::zero());
    let mut idx = 0;
    for s in sectors {
        for lvl in 0..s.system.dim() {
            let wt = w[idx];
            idx += 1;
            let v = s.system.vector(lvl);
            let (mut z0, mut zz, mut xx) = (T::zero(), T::zero(), T::zero());
            for (a, &st) in s.states.iter().enumerate() {
                let amp2 = v[a] * v[a];
                let b0 = bit(st, 0);
                let b1 = bit(st, 1);
                z0 = z0 + if b0 == 1 { amp2 } else { -amp2 };
                zz = zz + if b0 == b1 { amp2 } else { -amp2 };
                if b0 != b1 {
                    let t = st ^ 0b11;
                    let b = s.states.binary_search(&t).expect("flip stays in sector");
                    xx = xx + v[a] * v[b];
                }
            }
            sz = sz + wt * z0;
            szz = szz + wt * zz;
            sxx = sxx + wt * xx;
        }
    }
    Ok(XXZCorrelators { sz, szz, sxx })
}

/// One zero-field energy level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level<T> {
    pub energy: T,
    pub magnetization: i32,
    /// Expectation of `sum_i Z_i Z_{i+1}` in the level.
    pub zz: T,
}

/// Full zero-field spectrum of a ring, reusable for any `h` and `kt`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XxzSpectrum<T> {
    pub length: usize,
    pub delta: T,
    pub j: T,
    pub levels: Vec<Level<T>>,
}

struct Orbits {
    /// Representative of each state's translation orbit.
    rep: Vec<u32>,
    /// `s = T^shift rep`, with `T` the left rotation by one site.
    shift: Vec<u8>,
    period: Vec<u8>,
}

fn rotl(s: u32, l: usize) -> u32 {
    ((s << 1) | (s >> (l - 1))) & ((1u32 << l) - 1)
}

fn orbits(l: usize) -> Orbits {
    let n = 1usize << l;
    let mut rep = vec![0u32; n];
    let mut shift = vec![0u8; n];
    let mut period = vec![0u8; n];
    for s in 0..n as u32 {
        let mut t = s;
        let mut best = s;
        let mut at = 0;
        let mut per = l;
        for r in 1..=l {
            t = rotl(t, l);
            if t == s && per == l {
                per = r;
            }
            if t < best {
                best = t;
                at = r;
            }
        }
        rep[s as usize] = best;
        shift[s as usize] = ((l - at % l) % l) as u8;
        period[s as usize] = per as u8;
    }
    Orbits { rep, shift, period }
}

impl<T: Real> XxzSpectrum<T> {
    pub fn compute(length: usize, delta: T, j: T) -> Result<Self> {
        XXZParams::new(delta, T::zero(), j, T::one(), length)?;
        let l = length;
        let orb = orbits(l);
        let mut levels = Vec::with_capacity(1 << l);
        for n in 0..=l / 2 {
            let sector = momentum_sector(l, n, delta, j, &orb)?;
            let m = 2 * n as i32 - l as i32;
            for &(e, zz) in &sector {
                levels.push(Level { energy: e, magnetization: m, zz });
            }
            if 2 * n != l {
                for &(e, zz) in &sector {
                    levels.push(Level { energy: e, magnetization: -m, zz });
                }
            }
        }
        Ok(Self {
            length,
            delta,
            j,
            levels,
        })
    }

    /// Thermal correlators at field `h` and temperature `kt`.
    pub fn correlators(&self, h: T, kt: T) -> Result<XXZCorrelators<T>> {
        if !(kt > T::zero()) {
            return Err(Error::NonPositiveTemperature(kt.as_f64()));
        }
        let half = T::of(0.5);
        let energies: Vec<T> = self
            .levels
            .iter()
            .map(|lv| lv.energy - h * half * T::of(lv.magnetization as f64))
            .collect();
        let (w, _) = thermal_weights(&energies, T::one() / kt)?;
        let (mut m, mut zz, mut e0) = (T::zero(), T::zero(), T::zero());
        for (wt, lv) in w.iter().zip(&self.levels) {
            m = m + *wt * T::of(lv.magnetization as f64);
            zz = zz + *wt * lv.zz;
            e0 = e0 + *wt * lv.energy;
        }
        let l = T::of_usize(self.length);
        let sz = m / l;
        let szz = zz / l;
        // <H0>/L = 2 j sxx + j delta szz
        let sxx = if self.j == T::zero() {
            T::zero()
        } else {
            (e0 / l - self.j * self.delta * szz) / (T::of(2.0) * self.j)
        };
        let clip = |v: T| v.max(-T::one()).min(T::one());
        Ok(XXZCorrelators {
            sz: clip(sz),
            szz: clip(szz),
            sxx: clip(sxx),
        })
    }

    pub fn energies(&self) -> Vec<T> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

/// Levels `(energy, <sum ZZ>)` of sector `n_up`, one per state.
fn momentum_sector<T: Real>(l: usize, n_up: usize, delta: T, j: T, orb: &Orbits) -> Result<Vec<(T, T)>> {
    let reps: Vec<u32> = sector_states(l, n_up)
        .into_iter()
        .filter(|&s| orb.rep[s as usize] == s)
        .collect();
    let two_j = T::of(2.0) * j;
    let mut out = Vec::with_capacity(binomial(l, n_up));
    let mut local = vec![usize::MAX; 1 << l];
    let lf = T::of_usize(l);
    for m in 0..=l / 2 {
        let valid: Vec<u32> = reps
            .iter()
            .copied()
            .filter(|&s| (m * orb.period[s as usize] as usize) % l == 0)
            .collect();
        if valid.is_empty() {
            continue;
        }
        for (i, &s) in valid.iter().enumerate() {
            local[s as usize] = i;
        }
        let d = valid.len();
        let k = T::of(2.0) * T::PI() * T::of_usize(m) / lf;
        let real = m == 0 || 2 * m == l;
        let diag: Vec<T> = valid
            .iter()
            .map(|&s| T::of(zz_bonds(s, l) as f64))
            .collect();
        let mut re = vec![T::zero(); d * d];
        let mut im = vec![T::zero(); d * d];
        for (a, &s) in valid.iter().enumerate() {
            re[a * d + a] = j * delta * diag[a];
            let ra = T::of(orb.period[s as usize] as f64);
            for i in 0..l {
                let nb = (i + 1) % l;
                if bit(s, i) == bit(s, nb) {
                    continue;
                }
                let t = s ^ ((1 << i) | (1 << nb));
                let b = local[orb.rep[t as usize] as usize];
                if b == usize::MAX {
                    continue;
                }
                let rb = T::of(orb.period[orb.rep[t as usize] as usize] as f64);
                let amp = two_j * (ra / rb).sqrt();
                let phase = k * T::of(orb.shift[t as usize] as f64);
                re[b * d + a] = re[b * d + a] + amp * phase.cos();
                im[b * d + a] = im[b * d + a] + amp * phase.sin();
            }
        }
        for &s in &valid {
            local[s as usize] = usize::MAX;
        }
        if real {
            let es = eigh(&SymMatrix::symmetrized(d, re)?)?;
            for c in 0..d {
                let v = es.vector(c);
                let zz = (0..d).map(|r| diag[r] * v[r] * v[r]).sum();
                out.push((es.values()[c], zz));
            }
        } else {
            // [[A, -B], [B, A]] carries the spectra of momenta k and -k.
            let n2 = 2 * d;
            let mut emb = vec![T::zero(); n2 * n2];
            for r in 0..d {
                for c in 0..d {
                    let (a, b) = (re[r * d + c], im[r * d + c]);
                    emb[r * n2 + c] = a;
                    emb[(r + d) * n2 + c + d] = a;
                    emb[r * n2 + c + d] = -b;
                    emb[(r + d) * n2 + c] = b;
                }
            }
            let es = eigh(&SymMatrix::symmetrized(n2, emb)?)?;
            for c in 0..n2 {
                let v = es.vector(c);
                let zz = (0..d).map(|r| diag[r] * (v[r] * v[r] + v[r + d] * v[r + d])).sum();
                out.push((es.values()[c], zz));
            }
        }
    }
    debug_assert_eq!(out.len(), binomial(l, n_up));
    Ok(out)
}

/// Thermal nearest-neighbour correlators.
pub fn correlators<T: Real>(p: &XXZParams<T>) -> Result<XXZCorrelators<T>> {
    p.validate()?;
    XxzSpectrum::compute(p.length, p.delta, p.j)?.correlators(p.h, p.kt)
}

pub fn reduced_state<T: Real>(p: &XXZParams<T>) -> Result<XState<T>> {
    correlators(p)?.to_state()
}

pub fn correlation_set<T: Real>(p: &XXZParams<T>) -> Result<CorrelationSet<T>> {
    Ok(CorrelationSet::from_state(&reduced_state(p)?))
}

/// First-order transition `h / (4 j) - 1`.
pub fn cp_first_order<T: Real>(h: T, j: T) -> Result<T> {
    if j == T::zero() {
        return Err(Error::ZeroExchange);
    }
    Ok(h / (T::of(4.0) * j) - T::one())
}

const DELTA_MAX: f64 = 1e3;
const DELTA_MIN: f64 = 1.0 + 1e-9;

/// `4 j sinh(eta) sum_n (-1)^n / cosh(n eta)` with `eta = acosh(delta)`.
pub fn cp_infinite_order_rhs<T: Real>(delta: T, j: T) -> T {
    let eta = delta.acosh();
    if !(eta > T::zero()) {
        return T::zero();
    }
    let n = ((T::of(30.0) / eta).ceil().to_f64().unwrap_or(1e6) + 10.0).min(1e6) as usize;
    // Alternating tail summed in pairs, smallest terms first.
    let mut tail = T::zero();
    let mut k = n;
    while k >= 1 {
        let term = T::one() / (T::of_usize(k) * eta).cosh();
        tail = if k % 2 == 0 { tail + term } else { tail - term };
        k -= 1;
    }
    T::of(4.0) * j * eta.sinh() * (T::one() + T::of(2.0) * tail)
}

/// Infinite-order critical anisotropy for field `h`, by bisection.
pub fn cp_infinite_order<T: Real>(h: T, j: T) -> Result<T> {
    if j == T::zero() {
        return Err(Error::ZeroExchange);
    }
    if !(j > T::zero()) || !h.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "critical-point equation needs j > 0 and finite h, got j = {j}, h = {h}"
        )));
    }
    if h == T::zero() {
        return Ok(T::one());
    }
    let mut lo = T::of(DELTA_MIN);
    let mut hi = T::of(DELTA_MAX);
    let max_h = cp_infinite_order_rhs(hi, j);
    if h < T::zero() || h > max_h {
        return Err(Error::NoRoot {
            h: h.as_f64(),
            max_h: max_h.as_f64(),
        });
    }
    let tol = T::tol(1e-10);
    let mut iters = 0;
    while hi - lo > tol && iters < 200 {
        let mid = (lo + hi) * T::of(0.5);
        if cp_infinite_order_rhs(mid, j) < h {
            lo = mid;
        } else {
            hi = mid;
        }
        iters += 1;
    }
    Ok((lo + hi) * T::of(0.5))
}
