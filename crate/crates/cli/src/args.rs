use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thermodiscord::models::{xxz::XXZParams, xy::XYParams, xyz2::TwoSpinXYZParams, KT_FLOOR};
use thermodiscord::{Measure, ModelSpec, Rule};

use crate::failure::{CmdResult, Failure};

#[derive(Debug, Parser)]
#[command(name = "thermodiscord", version, about = "Thermal quantum discord and entanglement of spin chains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every measure along a parameter sweep.
    Sweep(SweepArgs),
    /// Estimate a critical point from a derivative extremum.
    Cp(CpArgs),
    /// Tabulate critical-point estimation errors of several measures over temperatures.
    Compare(CompareArgs),
    /// Write the datasets behind one figure.
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Xyz2,
    Xxz,
    Xy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Model selection and fixed parameters.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Exchange: `jx = jy` for xyz2 (and `jz` with --xxx), the chain coupling for xxz.
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub jx: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub jy: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub jz: Option<f64>,
    /// Tie `jz` to `j` (two-spin model).
    #[arg(long)]
    pub xxx: bool,
    /// Longitudinal field of the two-spin model.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Field of the XXZ chain.
    #[arg(long, allow_negative_numbers = true)]
    pub h: Option<f64>,
    /// XXZ ring length.
    #[arg(long = "L", default_value_t = 12)]
    pub length: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Neighbour distance for the XY chain.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub param: String,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long, default_value_t = 400)]
    pub steps: usize,
    /// One temperature or a comma-separated list.
    #[arg(long, value_delimiter = ',')]
    pub kt: Vec<f64>,
    /// Comma-separated subset of discord,eof,concurrence,mutual_info,sz,sxx,syy,szz.
    #[arg(long, value_delimiter = ',')]
    pub measures: Vec<String>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    /// Destination file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CpArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Swept parameter; defaults to delta (xxz) or lambda (xy).
    #[arg(long)]
    pub param: Option<String>,
    /// Sweep window `from,to`.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_negative_numbers = true)]
    pub window: Vec<f64>,
    #[arg(long, default_value_t = 400)]
    pub steps: usize,
    #[arg(long)]
    pub kt: f64,
    #[arg(long, default_value = "discord")]
    pub estimator: String,
    #[arg(long, default_value = "auto")]
    pub rule: String,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub param: Option<String>,
    #[arg(long, value_delimiter = ',', num_args = 1, allow_negative_numbers = true)]
    pub window: Vec<f64>,
    #[arg(long, default_value_t = 400)]
    pub steps: usize,
    #[arg(long, value_delimiter = ',')]
    pub kt: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "discord,eof,sxx,szz")]
    pub estimators: Vec<String>,
    #[arg(long, default_value = "auto")]
    pub rule: String,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    #[arg(long)]
    pub id: String,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// XXZ ring length for fig4, fig5 and fig6.
    #[arg(long = "L", default_value_t = 12)]
    pub length: usize,
    /// Grid points per sweep.
    #[arg(long, default_value_t = 400)]
    pub steps: usize,
}

impl ModelArgs {
    /// Builds the model at temperature `kt`; `swept` names a parameter that
    /// the sweep will supply, so it may be missing here.
    pub fn spec(&self, kt: f64, swept: Option<&str>) -> CmdResult<ModelSpec<f64>> {
        let need = |name: &str, v: Option<f64>| -> CmdResult<f64> {
            match v {
                Some(x) => Ok(x),
                None if swept == Some(name) => Ok(placeholder(name)),
                None => Err(Failure::config(format!("--{name} is required for model {}", self.model_name()))),
            }
        };
        let spec = match self.model {
            ModelKind::Xyz2 => {
                let j_swept = swept == Some("j");
                let (jx, jy) = match (self.j, self.jx, self.jy) {
                    (Some(j), None, None) => (j, j),
                    (None, jx, jy) if j_swept => (jx.unwrap_or(0.0), jy.unwrap_or(0.0)),
                    (None, jx, jy) => (need("jx", jx)?, need("jy", jy)?),
                    _ => return Err(Failure::config("give either --j or --jx/--jy, not both")),
                };
                let jz = match (self.xxx, self.jz) {
                    (true, Some(_)) => return Err(Failure::config("--xxx fixes jz = j; drop --jz")),
                    (true, None) => jx,
                    (false, jz) => jz.unwrap_or(0.0),
                };
                if self.xxx && (self.jx.is_some() || self.jy.is_some()) {
                    return Err(Failure::config("--xxx needs --j, not --jx/--jy"));
                }
                let params = TwoSpinXYZParams::new(jx, jy, jz, self.b.unwrap_or(0.0), kt).map_err(config)?;
                ModelSpec::Xyz2 { params, xxx: self.xxx }
            }
            ModelKind::Xxz => {
                let params = XXZParams::new(
                    need("delta", self.delta)?,
                    self.h.unwrap_or(0.0),
                    self.j.unwrap_or(1.0),
                    kt,
                    self.length,
                )
                .map_err(config)?;
                ModelSpec::Xxz { params }
            }
            ModelKind::Xy => {
                let params =
                    XYParams::new(need("lambda", self.lambda)?, need("gamma", self.gamma)?, kt, self.k).map_err(config)?;
                ModelSpec::Xy { params }
            }
        };
        self.reject_foreign()?;
        Ok(spec)
    }

    fn model_name(&self) -> &'static str {
        match self.model {
            ModelKind::Xyz2 => "xyz2",
            ModelKind::Xxz => "xxz",
            ModelKind::Xy => "xy",
        }
    }

    /// Flags belonging to another model are errors rather than silently ignored.
    fn reject_foreign(&self) -> CmdResult<()> {
        let given = |v: Option<f64>| v.is_some();
        let foreign: Vec<&str> = match self.model {
            ModelKind::Xyz2 => [
                ("delta", given(self.delta)),
                ("h", given(self.h)),
                ("lambda", given(self.lambda)),
                ("gamma", given(self.gamma)),
            ]
            .into_iter()
            .filter(|x| x.1)
            .map(|x| x.0)
            .collect(),
            ModelKind::Xxz => [
                ("jx", given(self.jx)),
                ("jy", given(self.jy)),
                ("jz", given(self.jz)),
                ("b", given(self.b)),
                ("xxx", self.xxx),
                ("lambda", given(self.lambda)),
                ("gamma", given(self.gamma)),
            ]
            .into_iter()
            .filter(|x| x.1)
            .map(|x| x.0)
            .collect(),
            ModelKind::Xy => [
                ("j", given(self.j)),
                ("jx", given(self.jx)),
                ("jy", given(self.jy)),
                ("jz", given(self.jz)),
                ("b", given(self.b)),
                ("xxx", self.xxx),
                ("delta", given(self.delta)),
                ("h", given(self.h)),
            ]
            .into_iter()
            .filter(|x| x.1)
            .map(|x| x.0)
            .collect(),
        };
        if foreign.is_empty() {
            Ok(())
        } else {
            Err(Failure::config(format!(
                "model {} does not take --{}",
                self.model_name(),
                foreign.join(", --")
            )))
        }
    }

    pub fn default_param(&self) -> Option<&'static str> {
        match self.model {
            ModelKind::Xyz2 => None,
            ModelKind::Xxz => Some("delta"),
            ModelKind::Xy => Some("lambda"),
        }
    }
}

fn placeholder(name: &str) -> f64 {
    if name == "kt" {
        1.0
    } else {
        0.0
    }
}

fn config(e: thermodiscord::Error) -> Failure {
    Failure::Config(e.into())
}

pub fn check_kt(kt: f64) -> CmdResult<()> {
    if kt.is_finite() && kt >= KT_FLOOR {
        Ok(())
    } else {
        Err(Failure::config(format!("kt must be at least {KT_FLOOR}, got {kt}")))
    }
}

pub fn check_grid(from: f64, to: f64, steps: usize) -> CmdResult<()> {
    if !(from.is_finite() && to.is_finite() && from < to) {
        return Err(Failure::config(format!("sweep needs from < to, got {from} and {to}")));
    }
    if steps < thermodiscord::critical::MIN_STEPS {
        return Err(Failure::config(format!(
            "--steps must be at least {}, got {steps}",
            thermodiscord::critical::MIN_STEPS
        )));
    }
    Ok(())
}

pub fn window(w: &[f64]) -> CmdResult<(f64, f64)> {
    match w {
        [a, b] => Ok((*a, *b)),
        _ => Err(Failure::config("--window takes two values, from,to")),
    }
}

pub fn measures(names: &[String]) -> CmdResult<Vec<Measure>> {
    if names.is_empty() {
        return Ok(Measure::ALL.to_vec());
    }
    let mut out = Vec::new();
    for n in names {
        let m: Measure = n.trim().parse().map_err(config)?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

pub fn rule(s: &str) -> CmdResult<Rule> {
    s.parse().map_err(config)
}
