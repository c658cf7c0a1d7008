//! Composite Gauss-Legendre quadrature with global panel doubling.
//!
//! Several integrands sharing one abscissa are integrated together, which is
//! how the XY correlators use it: every `G_m` shares the same `tanh(beta w)/w`
//! factor.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Nodes per panel.
pub const ORDER: usize = 16;

/// Convergence controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSettings {
    /// Absolute change allowed between successive doublings.
    pub tolerance: f64,
    /// Panels per breakpoint interval at which doubling gives up.
    pub max_panels: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            max_panels: 1 << 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Integrals<T> {
    pub values: Vec<T>,
    /// Panels per breakpoint interval in the accepted estimate.
    pub panels: usize,
    /// Largest change from the previous (half as many panels) estimate.
    pub change: T,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.reverse();
    out
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule16() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(ORDER))
}

fn composite<T: Real, F>(f: &F, breaks: &[T], panels: usize, count: usize, buf: &mut [T]) -> Vec<T>
where
    F: Fn(T, &mut [T]),
{
    let rule = rule16();
    let mut acc = vec![T::zero(); count];
    let half = T::of(0.5);
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let h = (b - a) / T::of_usize(panels);
        for p in 0..panels {
            let lo = a + h * T::of_usize(p);
            let mid = lo + h * half;
            let scale = h * half;
            for &(x, wt) in rule {
                f(mid + scale * T::of(x), buf);
                let wt = T::of(wt) * scale;
                for (s, v) in acc.iter_mut().zip(buf.iter()) {
                    *s = *s + wt * *v;
                }
            }
        }
    }
    acc
}

/// Integrates `count` functions over `[breaks[0], breaks.last()]`.
///
/// `f(x, out)` writes all integrand values at `x`. Each interval between
/// consecutive breakpoints gets the same number of panels, which is doubled
/// until no integral moves by more than the tolerance.
pub fn integrate<T: Real, F>(f: F, breaks: &[T], count: usize, settings: QuadSettings) -> Result<Integrals<T>>
where
    F: Fn(T, &mut [T]),
{
    if breaks.len() < 2 {
        return Err(Error::InvalidParameter(
            "quadrature needs at least two breakpoints".into(),
        ));
    }
    let tol = T::tol(settings.tolerance);
    let mut buf = vec![T::zero(); count];
    let mut panels = 1;
    let mut prev = composite(&f, breaks, panels, count, &mut buf);
    loop {
        let next_panels = panels * 2;
        if next_panels > settings.max_panels {
            return Err(Error::QuadratureFailure {
                tolerance: settings.tolerance,
                panels,
            });
        }
        let next = composite(&f, breaks, next_panels, count, &mut buf);
        let change = prev
            .iter()
            .zip(&next)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
        panels = next_panels;
        if change.is_nan() {
            return Err(Error::QuadratureFailure {
                tolerance: settings.tolerance,
                panels,
            });
        }
        if change < tol {
            return Ok(Integrals {
                values: next,
                panels,
                change,
            });
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_symmetric_and_weights_sum_to_two() {
        let r = gauss_legendre(ORDER);
        let s: f64 = r.iter().map(|p| p.1).sum();
        assert!((s - 2.0).abs() < 1e-14);
        for i in 0..ORDER {
            assert!((r[i].0 + r[ORDER - 1 - i].0).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_for_high_degree_polynomials() {
        let r = gauss_legendre(ORDER);
        let v: f64 = r.iter().map(|&(x, w)| w * x.powi(30)).sum();
        assert!((v - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_integrals() {
        let pi = std::f64::consts::PI;
        let out = integrate(
            |x: f64, o: &mut [f64]| {
                o[0] = x.sin();
                o[1] = (x.cos()).exp();
            },
            &[0.0, pi],
            2,
            QuadSettings::default(),
        )
        .unwrap();
        assert!((out.values[0] - 2.0).abs() < 1e-13);
        // pi * I0(1)
        assert!((out.values[1] - pi * 1.266_065_877_752_008_4).abs() < 1e-12);
        assert!(out.change < 1e-10);
    }

    #[test]
    fn single_precision_uses_relaxed_tolerance() {
        let out = integrate(|x: f32, o: &mut [f32]| o[0] = x * x, &[0.0, 1.0], 1, QuadSettings::default())
            .unwrap();
        assert!((out.values[0] - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn panel_cap_reports_failure() {
        let s = QuadSettings {
            tolerance: 1e-14,
            max_panels: 4,
        };
        let r = integrate(|x: f64, o: &mut [f64]| o[0] = x.abs().sqrt(), &[-1.0, 1.0], 1, s);
        assert!(matches!(r, Err(Error::QuadratureFailure { .. })));
    }
}
