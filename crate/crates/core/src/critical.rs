//! Parameter sweeps, finite differences and critical-point estimation from
//! extrema of derivatives.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::xxz::{self, XXZParams, XxzSpectrum};
use crate::models::xy::{self, XYParams};
use crate::models::xyz2::{self, TwoSpinXYZParams};
use crate::qcorr::CorrelationSet;
use crate::scalar::Real;

/// Minimum sweep length.
pub const MIN_STEPS: usize = 16;
/// Minimum series length for estimation.
pub const MIN_ESTIMATION_POINTS: usize = 32;
/// Candidates must reach this fraction of the global extremum.
pub const CANDIDATE_FRACTION: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Discord,
    Eof,
    Concurrence,
    MutualInfo,
    Sz,
    Sxx,
    Syy,
    Szz,
}

impl Measure {
    pub const ALL: [Measure; 8] = [
        Measure::Discord,
        Measure::Eof,
        Measure::Concurrence,
        Measure::MutualInfo,
        Measure::Sz,
        Measure::Sxx,
        Measure::Syy,
        Measure::Szz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Discord => "discord",
            Measure::Eof => "eof",
            Measure::Concurrence => "concurrence",
            Measure::MutualInfo => "mutual_info",
            Measure::Sz => "sz",
            Measure::Sxx => "sxx",
            Measure::Syy => "syy",
            Measure::Szz => "szz",
        }
    }

    pub fn get<T: Real>(self, c: &CorrelationSet<T>) -> T {
        match self {
            Measure::Discord => c.discord,
            Measure::Eof => c.eof,
            Measure::Concurrence => c.concurrence,
            Measure::MutualInfo => c.mutual_info,
            Measure::Sz => c.sz,
            Measure::Sxx => c.sxx,
            Measure::Syy => c.syy,
            Measure::Szz => c.szz,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown measure '{s}'")))
    }
}

/// Which derivative locates the transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Extremum of the first derivative.
    FirstOrder,
    /// Extremum of the second derivative.
    InfiniteOrder,
    /// Both of the above.
    Auto,
}

impl Rule {
    pub fn orders(self) -> &'static [u8] {
        match self {
            Rule::FirstOrder => &[1],
            Rule::InfiniteOrder => &[2],
            Rule::Auto => &[1, 2],
        }
    }

    fn for_order(order: u8) -> Rule {
        if order == 1 {
            Rule::FirstOrder
        } else {
            Rule::InfiniteOrder
        }
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first-order" => Ok(Rule::FirstOrder),
            "infinite-order" => Ok(Rule::InfiniteOrder),
            "auto" => Ok(Rule::Auto),
            _ => Err(Error::InvalidParameter(format!(
                "unknown rule '{s}' (expected first-order, infinite-order or auto)"
            ))),
        }
    }
}

/// A model with every parameter fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelSpec<T> {
    /// Two-spin XYZ; with `xxx` set, parameter `j` drives all three couplings.
    Xyz2 { params: TwoSpinXYZParams<T>, xxx: bool },
    Xxz { params: XXZParams<T> },
    Xy { params: XYParams<T> },
}

impl<T: Real> ModelSpec<T> {
    pub fn id(&self) -> &'static str {
        match self {
            ModelSpec::Xyz2 { .. } => "xyz2",
            ModelSpec::Xxz { .. } => "xxz",
            ModelSpec::Xy { .. } => "xy",
        }
    }

    /// Names accepted by [`ModelSpec::with_param`].
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            ModelSpec::Xyz2 { .. } => &["j", "jx", "jy", "jz", "b", "kt"],
            ModelSpec::Xxz { .. } => &["delta", "h", "j", "kt"],
            ModelSpec::Xy { .. } => &["lambda", "gamma", "kt"],
        }
    }

    fn check_param(&self, name: &str) -> Result<()> {
        if self.param_names().contains(&name) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "model {} has no parameter '{name}' (expected one of {})",
                self.id(),
                self.param_names().join(", ")
            )))
        }
    }

    /// Copy with one parameter replaced; validated.
    pub fn with_param(&self, name: &str, v: T) -> Result<Self> {
        self.check_param(name)?;
        let out = match *self {
            ModelSpec::Xyz2 { mut params, xxx } => {
                match name {
                    "j" => {
                        params.jx = v;
                        params.jy = v;
                        if xxx {
                            params.jz = v;
                        }
                    }
                    "jx" => params.jx = v,
                    "jy" => params.jy = v,
                    "jz" => params.jz = v,
                    "b" => params.b = v,
                    _ => params.kt = v,
                }
                params.validate()?;
                ModelSpec::Xyz2 { params, xxx }
            }
            ModelSpec::Xxz { mut params } => {
                match name {
                    "delta" => params.delta = v,
                    "h" => params.h = v,
                    "j" => params.j = v,
                    _ => params.kt = v,
                }
                params.validate()?;
                ModelSpec::Xxz { params }
            }
            ModelSpec::Xy { mut params } => {
                match name {
                    "lambda" => params.lambda = v,
                    "gamma" => params.gamma = v,
                    _ => params.kt = v,
                }
                params.validate()?;
                ModelSpec::Xy { params }
            }
        };
        Ok(out)
    }

    pub fn kt(&self) -> T {
        match self {
            ModelSpec::Xyz2 { params, .. } => params.kt,
            ModelSpec::Xxz { params } => params.kt,
            ModelSpec::Xy { params } => params.kt,
        }
    }

    /// All parameter values, in a fixed order.
    pub fn parameters(&self) -> Vec<(&'static str, f64)> {
        match self {
            ModelSpec::Xyz2 { params: p, .. } => vec![
                ("jx", p.jx.as_f64()),
                ("jy", p.jy.as_f64()),
                ("jz", p.jz.as_f64()),
                ("b", p.b.as_f64()),
                ("kt", p.kt.as_f64()),
            ],
            ModelSpec::Xxz { params: p } => vec![
                ("delta", p.delta.as_f64()),
                ("h", p.h.as_f64()),
                ("j", p.j.as_f64()),
                ("kt", p.kt.as_f64()),
                ("length", p.length as f64),
            ],
            ModelSpec::Xy { params: p } => vec![
                ("lambda", p.lambda.as_f64()),
                ("gamma", p.gamma.as_f64()),
                ("kt", p.kt.as_f64()),
                ("k", p.k as f64),
            ],
        }
    }

    pub fn evaluate(&self) -> Result<CorrelationSet<T>> {
        match self {
            ModelSpec::Xyz2 { params, .. } => xyz2::correlations(params),
            ModelSpec::Xxz { params } => xxz::correlation_set(params),
            ModelSpec::Xy { params } => xy::correlation_set(params),
        }
    }

    /// Exact critical value of `param` for the transition `rule` looks for,
    /// when the model has one. `Auto` is read as first order.
    pub fn reference_cp(&self, param: &str, rule: Rule) -> Option<T> {
        match self {
            ModelSpec::Xxz { params } if param == "delta" => match rule {
                Rule::InfiniteOrder => xxz::cp_infinite_order(params.h, params.j).ok(),
                _ => xxz::cp_first_order(params.h, params.j).ok(),
            },
            ModelSpec::Xy { .. } if param == "lambda" => Some(T::one()),
            ModelSpec::Xy { params } if param == "gamma" && params.lambda > T::one() => Some(T::zero()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hole {
    pub index: usize,
    pub message: String,
}

/// Measures on a uniform grid of one parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSeries<T> {
    pub param_name: String,
    pub grid: Vec<T>,
    /// `None` where the model failed; see `holes`.
    pub values: Vec<Option<CorrelationSet<T>>>,
    /// The model at the sweep start; the swept parameter varies along `grid`.
    pub model: ModelSpec<T>,
    pub holes: Vec<Hole>,
}

impl<T: Real> SweepSeries<T> {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Fails with the first failed grid point, if any.
    pub fn require_complete(&self) -> Result<()> {
        match self.holes.first() {
            None => Ok(()),
            Some(h) => Err(Error::SweepPoint {
                param: self.param_name.clone(),
                value: self.grid[h.index].as_f64(),
                message: h.message.clone(),
            }),
        }
    }

    /// One measure along the grid; fails if any point is missing.
    pub fn column(&self, m: Measure) -> Result<Vec<T>> {
        if !self.holes.is_empty() {
            return Err(Error::HolesPresent(self.holes.len()));
        }
        Ok(self
            .values
            .iter()
            .map(|v| m.get(v.as_ref().expect("no holes")))
            .collect())
    }
}

/// `steps` equally spaced points from `from` to `to` inclusive.
pub fn uniform_grid<T: Real>(from: T, to: T, steps: usize) -> Result<Vec<T>> {
    if steps < MIN_STEPS {
        return Err(Error::TooFewPoints {
            min: MIN_STEPS,
            got: steps,
        });
    }
    if !(from < to) || !from.is_finite() || !to.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "sweep window needs from < to, got [{from}, {to}]"
        )));
    }
    let h = (to - from) / T::of_usize(steps - 1);
    Ok((0..steps)
        .map(|i| if i + 1 == steps { to } else { from + h * T::of_usize(i) })
        .collect())
}

fn collect<T: Real>(
    param: &str,
    grid: Vec<T>,
    model: ModelSpec<T>,
    results: Vec<Result<CorrelationSet<T>>>,
) -> SweepSeries<T> {
    let mut holes = Vec::new();
    let values = results
        .into_iter()
        .enumerate()
        .map(|(i, r)| match r {
            Ok(c) => Some(c),
            Err(e) => {
                holes.push(Hole {
                    index: i,
                    message: e.to_string(),
                });
                None
            }
        })
        .collect();
    SweepSeries {
        param_name: param.to_string(),
        grid,
        values,
        model,
        holes,
    }
}

/// Evaluates the model on a uniform grid of `param`, in parallel.
///
/// Points where the model fails are kept as holes.
pub fn sweep<T: Real>(model: &ModelSpec<T>, param: &str, from: T, to: T, steps: usize) -> Result<SweepSeries<T>> {
    model.check_param(param)?;
    let grid = uniform_grid(from, to, steps)?;
    // Field and temperature leave the XXZ spectrum unchanged.
    if let ModelSpec::Xxz { params } = model {
        if param == "h" || param == "kt" {
            let spec = XxzSpectrum::compute(params.length, params.delta, params.j)?;
            let results = grid
                .par_iter()
                .map(|&v| {
                    let (h, kt) = if param == "h" { (v, params.kt) } else { (params.h, v) };
                    let c = spec.correlators(h, kt)?;
                    Ok(CorrelationSet::from_state(&c.to_state()?))
                })
                .collect();
            return Ok(collect(param, grid, *model, results));
        }
    }
    let results = grid
        .par_iter()
        .map(|&v| model.with_param(param, v)?.evaluate())
        .collect();
    Ok(collect(param, grid, *model, results))
}

/// One sweep per temperature. XXZ spectra along an anisotropy sweep are
/// computed once and shared by all temperatures.
pub fn sweep_temperatures<T: Real>(
    model: &ModelSpec<T>,
    param: &str,
    from: T,
    to: T,
    steps: usize,
    kts: &[T],
) -> Result<Vec<SweepSeries<T>>> {
    model.check_param(param)?;
    if param == "kt" {
        return Err(Error::InvalidParameter(
            "cannot sweep kt over a list of temperatures".into(),
        ));
    }
    let models: Vec<ModelSpec<T>> = kts
        .iter()
        .map(|&kt| model.with_param("kt", kt))
        .collect::<Result<_>>()?;
    match model {
        ModelSpec::Xxz { params } if param == "delta" => {
            let grid = uniform_grid(from, to, steps)?;
            let spectra: Vec<Result<XxzSpectrum<T>>> = grid
                .par_iter()
                .map(|&d| XxzSpectrum::compute(params.length, d, params.j))
                .collect();
            Ok(models
                .into_iter()
                .map(|m| {
                    let kt = m.kt();
                    let results = spectra
                        .par_iter()
                        .map(|s| {
                            let s = s.as_ref().map_err(Clone::clone)?;
                            let c = s.correlators(params.h, kt)?;
                            Ok(CorrelationSet::from_state(&c.to_state()?))
                        })
                        .collect();
                    collect(param, grid.clone(), m, results)
                })
                .collect())
        }
        _ => models
            .iter()
            .map(|m| sweep(m, param, from, to, steps))
            .collect(),
    }
}

fn check_uniform<T: Real>(grid: &[T]) -> Result<T> {
    if grid.len() < 3 {
        return Err(Error::TooFewPoints {
            min: 3,
            got: grid.len(),
        });
    }
    let h = grid[1] - grid[0];
    let scale = grid
        .iter()
        .fold(h.abs(), |m, x| m.max(x.abs()));
    let tol = T::tol(1e-12) * scale;
    if !(h > T::zero()) {
        return Err(Error::NonUniformGrid(1));
    }
    for i in 1..grid.len() {
        if ((grid[i] - grid[i - 1]) - h).abs() > tol {
            return Err(Error::NonUniformGrid(i));
        }
    }
    Ok(h)
}

/// Central differences of `f` on a uniform grid; the two endpoints are dropped.
pub fn derivative_values<T: Real>(grid: &[T], f: &[T], order: u8) -> Result<Vec<T>> {
    if grid.len() != f.len() {
        return Err(Error::InvalidParameter(format!(
            "grid has {} points but values have {}",
            grid.len(),
            f.len()
        )));
    }
    let h = check_uniform(grid)?;
    let two = T::of(2.0);
    match order {
        1 => Ok(f.windows(3).map(|w| (w[2] - w[0]) / (two * h)).collect()),
        2 => Ok(f
            .windows(3)
            .map(|w| (w[2] - two * w[1] + w[0]) / (h * h))
            .collect()),
        _ => Err(Error::InvalidParameter(format!(
            "derivative order must be 1 or 2, got {order}"
        ))),
    }
}

pub fn derivative<T: Real>(series: &SweepSeries<T>, measure: Measure, order: u8) -> Result<Vec<T>> {
    derivative_values(&series.grid, &series.column(measure)?, order)
}

/// Divides by the largest magnitude.
pub fn normalize<T: Real>(d: &[T]) -> Result<Vec<T>> {
    if d.is_empty() {
        return Err(Error::TooFewPoints { min: 1, got: 0 });
    }
    let m = d.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if m == T::zero() {
        return Err(Error::AllZero);
    }
    Ok(d.iter().map(|&v| v / m).collect())
}

/// An interior local maximum of `|derivative|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Candidate<T> {
    /// Refined location.
    pub location: T,
    /// Derivative at the grid point.
    pub value: T,
    /// `|value|` over the global maximum.
    pub relative: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CpEstimate<T> {
    pub estimator: Measure,
    pub derivative_order: u8,
    /// Parabola-refined location of the largest `|derivative|`.
    pub location: T,
    /// Grid point of the discrete maximum.
    pub grid_location: T,
    pub reference: Option<T>,
    /// Derivative at the discrete maximum.
    pub extremum_value: T,
    /// Every interior local maximum of `|derivative|` reaching half the
    /// global one, ascending in location; includes the headline.
    pub candidates: Vec<Candidate<T>>,
}

impl<T: Real> CpEstimate<T> {
    /// `|reference - location|`.
    pub fn error(&self) -> Option<T> {
        self.reference.map(|r| (r - self.location).abs())
    }

    /// Candidate nearest `target`.
    pub fn nearest_candidate(&self, target: T) -> Option<&Candidate<T>> {
        self.candidates.iter().min_by(|a, b| {
            (a.location - target)
                .abs()
                .partial_cmp(&(b.location - target).abs())
                .expect("finite")
        })
    }
}

fn parabola_offset<T: Real>(y0: T, y1: T, y2: T) -> T {
    let den = y0 - T::of(2.0) * y1 + y2;
    if den == T::zero() {
        return T::zero();
    }
    let half = T::of(0.5);
    (half * (y0 - y2) / den).max(-half).min(half)
}

/// Derivative extremum of raw samples; `reference` is attached verbatim.
pub fn estimate_from_values<T: Real>(
    grid: &[T],
    f: &[T],
    order: u8,
    estimator: Measure,
    reference: Option<T>,
) -> Result<CpEstimate<T>> {
    if grid.len() < MIN_ESTIMATION_POINTS {
        return Err(Error::TooFewPoints {
            min: MIN_ESTIMATION_POINTS,
            got: grid.len(),
        });
    }
    let d = derivative_values(grid, f, order)?;
    let h = grid[1] - grid[0];
    let a: Vec<T> = d.iter().map(|v| v.abs()).collect();
    let mut imax = 0;
    for i in 1..a.len() {
        if a[i] > a[imax] {
            imax = i;
        }
    }
    let peak = a[imax];
    if peak == T::zero() || !peak.is_finite() {
        return Err(Error::AllZero);
    }
    // d[i] sits at grid[i + 1]
    if imax == 0 || imax + 1 == a.len() {
        return Err(Error::ExtremumOnBoundary {
            location: grid[imax + 1].as_f64(),
        });
    }
    let refine = |i: usize| grid[i + 1] + h * parabola_offset(a[i - 1], a[i], a[i + 1]);
    let threshold = peak * T::of(CANDIDATE_FRACTION);
    let candidates = (1..a.len() - 1)
        .filter(|&i| i == imax || (a[i] > a[i - 1] && a[i] >= a[i + 1] && a[i] >= threshold))
        .map(|i| Candidate {
            location: refine(i),
            value: d[i],
            relative: a[i] / peak,
        })
        .collect();
    Ok(CpEstimate {
        estimator,
        derivative_order: order,
        location: refine(imax),
        grid_location: grid[imax + 1],
        reference,
        extremum_value: d[imax],
        candidates,
    })
}

/// Locates the critical point from the extremum of a measure's derivative.
///
/// Returns one estimate for a fixed rule and two (first then second order)
/// for [`Rule::Auto`].
pub fn estimate_cp<T: Real>(series: &SweepSeries<T>, estimator: Measure, rule: Rule) -> Result<Vec<CpEstimate<T>>> {
    if series.len() < MIN_ESTIMATION_POINTS {
        return Err(Error::TooFewPoints {
            min: MIN_ESTIMATION_POINTS,
            got: series.len(),
        });
    }
    let f = series.column(estimator)?;
    rule.orders()
        .iter()
        .map(|&o| {
            let reference = series.model.reference_cp(&series.param_name, Rule::for_order(o));
            estimate_from_values(&series.grid, &f, o, estimator, reference)
        })
        .collect()
}

/// One line of an estimator comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow<T> {
    pub kt: T,
    pub estimator: Measure,
    pub derivative_order: u8,
    pub location: Option<T>,
    pub reference: Option<T>,
    /// `|reference - location|`.
    pub error: Option<T>,
    /// Why no location was produced.
    pub failure: Option<String>,
}

/// Estimation error of each measure at each temperature.
#[allow(clippy::too_many_arguments)]
pub fn estimator_comparison<T: Real>(
    model: &ModelSpec<T>,
    param: &str,
    window: (T, T),
    steps: usize,
    kts: &[T],
    estimators: &[Measure],
    rule: Rule,
) -> Result<Vec<ComparisonRow<T>>> {
    let series = sweep_temperatures(model, param, window.0, window.1, steps, kts)?;
    let mut rows = Vec::new();
    for s in &series {
        s.require_complete()?;
        let kt = s.model.kt();
        for &m in estimators {
            match estimate_cp(s, m, rule) {
                Ok(list) => rows.extend(list.into_iter().map(|e| ComparisonRow {
                    kt,
                    estimator: m,
                    derivative_order: e.derivative_order,
                    location: Some(e.location),
                    reference: e.reference,
                    error: e.error(),
                    failure: None,
                })),
                Err(e @ (Error::ExtremumOnBoundary { .. } | Error::AllZero)) => {
                    for &o in rule.orders() {
                        rows.push(ComparisonRow {
                            kt,
                            estimator: m,
                            derivative_order: o,
                            location: None,
                            reference: s.model.reference_cp(param, Rule::for_order(o)),
                            error: None,
                            failure: Some(e.to_string()),
                        });
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(from: f64, to: f64, n: usize) -> Vec<f64> {
        uniform_grid(from, to, n).unwrap()
    }

    #[test]
    fn stencils() {
        let g = grid(-1.0, 2.0, 40);
        let sq: Vec<f64> = g.iter().map(|x| x * x).collect();
        for v in derivative_values(&g, &sq, 2).unwrap() {
            assert!((v - 2.0).abs() < 1e-8);
        }
        let c = vec![3.0; 40];
        assert!(derivative_values(&g, &c, 1).unwrap().iter().all(|&v| v == 0.0));
        assert!(derivative_values(&g, &c, 2).unwrap().iter().all(|&v| v == 0.0));
        assert_eq!(derivative_values(&g, &c, 1).unwrap().len(), 38);

        let h = 1e-3;
        let g: Vec<f64> = (0..2000).map(|i| i as f64 * h).collect();
        let s: Vec<f64> = g.iter().map(|x| x.sin()).collect();
        for (i, v) in derivative_values(&g, &s, 1).unwrap().iter().enumerate() {
            assert!((v - g[i + 1].cos()).abs() < 1e-6);
        }
        assert!(derivative_values(&g, &s, 3).is_err());
    }

    #[test]
    fn nonuniform_grid_is_rejected() {
        let mut g = grid(0.0, 1.0, 20);
        g[7] += 1e-4;
        let f = vec![0.0; 20];
        assert_eq!(derivative_values(&g, &f, 1), Err(Error::NonUniformGrid(7)));
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize(&[2.0, -4.0, 1.0]).unwrap(), vec![0.5, -1.0, 0.25]);
        assert_eq!(normalize(&[0.5, -1.0]).unwrap(), vec![0.5, -1.0]);
        assert_eq!(normalize(&[0.0, 0.0]), Err(Error::AllZero));
    }

    #[test]
    fn kink_detector() {
        let g = grid(-1.0, 1.0, 101);
        let f: Vec<f64> = g.iter().map(|x| (x - 0.3).abs()).collect();
        let e = estimate_from_values(&g, &f, 2, Measure::Discord, None).unwrap();
        assert!((e.grid_location - 0.3).abs() <= 0.02 + 1e-12);
        assert!((e.location - 0.3).abs() <= 0.02);
    }

    #[test]
    fn boundary_extremum_is_an_error() {
        let g = grid(0.0, 1.0, 64);
        let f: Vec<f64> = g.iter().map(|x| x.exp()).collect();
        assert!(matches!(
            estimate_from_values(&g, &f, 1, Measure::Eof, None),
            Err(Error::ExtremumOnBoundary { .. })
        ));
    }

    #[test]
    fn secondary_extrema_are_listed() {
        let g = grid(0.0, 1.0, 201);
        let f: Vec<f64> = g
            .iter()
            .map(|x| ((x - 0.3) / 0.02).tanh() + 0.7 * ((x - 0.7) / 0.02).tanh())
            .collect();
        let e = estimate_from_values(&g, &f, 1, Measure::Discord, Some(0.7)).unwrap();
        assert!((e.location - 0.3).abs() < 0.005);
        assert_eq!(e.candidates.len(), 2);
        assert!((e.nearest_candidate(0.7).unwrap().location - 0.7).abs() < 0.005);
        assert!((e.error().unwrap() - 0.4).abs() < 0.005);
    }

    #[test]
    fn parameter_names_are_checked() {
        let m = ModelSpec::Xy {
            params: XYParams::new(1.0, 1.0, 0.1, 1).unwrap(),
        };
        assert!(m.with_param("delta", 1.0).is_err());
        assert!(m.with_param("gamma", 2.0).is_err());
        let x = ModelSpec::Xyz2 {
            params: TwoSpinXYZParams::xxx(1.0, 0.0, 0.5).unwrap(),
            xxx: true,
        };
        match x.with_param("j", 0.3).unwrap() {
            ModelSpec::Xyz2 { params, .. } => assert_eq!((params.jx, params.jy, params.jz), (0.3, 0.3, 0.3)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn sweep_shape_and_holes() {
        let m = ModelSpec::Xxz {
            params: XXZParams::new(0.0, 0.0, 1.0, 0.1, 8).unwrap(),
        };
        let s = sweep(&m, "delta", -2.0, 2.0, 64).unwrap();
        assert_eq!(s.values.len(), 64);
        assert!(s.holes.is_empty());
        let t = sweep(&m, "kt", -0.5, 0.5, 16).unwrap();
        assert_eq!(t.holes.len(), 8);
        assert!(matches!(t.require_complete(), Err(Error::SweepPoint { .. })));
        assert_eq!(derivative(&t, Measure::Szz, 1), Err(Error::HolesPresent(8)));
        assert!(sweep(&m, "delta", 0.0, 1.0, 8).is_err());
        assert!(sweep(&m, "delta", 1.0, 0.0, 32).is_err());
    }

    #[test]
    fn cached_temperature_sweeps_match_plain_ones() {
        let m = ModelSpec::Xxz {
            params: XXZParams::new(0.0, 6.0, 1.0, 0.2, 6).unwrap(),
        };
        let many = sweep_temperatures(&m, "delta", 0.0, 3.0, 16, &[0.2, 0.7]).unwrap();
        let one = sweep(&m.with_param("kt", 0.7).unwrap(), "delta", 0.0, 3.0, 16).unwrap();
        assert_eq!(many[1].values, one.values);
    }

    #[test]
    fn references() {
        let m = ModelSpec::Xxz {
            params: XXZParams::new(0.0f64, 12.0, 1.0, 0.2, 6).unwrap(),
        };
        assert_eq!(m.reference_cp("delta", Rule::FirstOrder), Some(2.0));
        assert!((m.reference_cp("delta", Rule::InfiniteOrder).unwrap() - 4.88).abs() < 0.01);
        assert_eq!(m.reference_cp("h", Rule::FirstOrder), None);
        let x = ModelSpec::Xy {
            params: XYParams::new(1.5, 1.0, 0.1, 1).unwrap(),
        };
        assert_eq!(x.reference_cp("lambda", Rule::Auto), Some(1.0));
        assert_eq!(x.reference_cp("gamma", Rule::Auto), Some(0.0));
    }
}
