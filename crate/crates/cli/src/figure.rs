//! Datasets behind each figure, with the caption parameters frozen here.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};
use thermodiscord::critical::{self, derivative, normalize, SweepSeries};
use thermodiscord::models::{xxz::XXZParams, xy::XYParams, xyz2::TwoSpinXYZParams, KT_FLOOR};
use thermodiscord::{Measure, ModelSpec, Rule};

use crate::args::FigureArgs;
use crate::commands::{comparison_table, model_meta, run_sweeps};
use crate::failure::{CmdResult, Failure};
use crate::output::{Cell, Table};

pub const IDS: [&str; 13] = [
    "fig1a", "fig1b", "fig2", "fig3", "fig4a", "fig4b", "fig4c", "fig4d", "fig5", "fig6", "fig7", "fig8", "fig9",
];

pub const FIG1A_JZ: f64 = -0.5;
pub const FIG1A_J: [f64; 4] = [0.1, 0.2, 0.3, 0.4];
pub const FIG1B_J: f64 = 0.4;
pub const FIG1B_JZ: [f64; 4] = [-0.8, -0.7, -0.6, -0.5];
pub const FIG1_KT_WINDOW: (f64, f64) = (KT_FLOOR, 2.0);

pub const FIG2_KT: [f64; 4] = [0.05, 0.1, 0.5, 1.0];
pub const FIG2_J_WINDOW: (f64, f64) = (-2.0, 2.0);

pub const FIG3_JX: f64 = 2.6;
pub const FIG3_JY: f64 = 1.4;
pub const FIG3_B: [f64; 3] = [1.1, 2.0, 2.5];
pub const FIG3_KT_WINDOW: (f64, f64) = (KT_FLOOR, 3.0);

/// `0` is drawn at the temperature floor.
pub const FIG4_KT: [f64; 5] = [0.0, 0.1, 0.5, 1.0, 2.0];
pub const FIG4_H: [f64; 2] = [0.0, 12.0];
pub const FIG4_WINDOW_H0: (f64, f64) = (-2.0, 2.0);
pub const FIG4_WINDOW_H12: (f64, f64) = (0.0, 6.0);

pub const FIG5_H: f64 = 12.0;
pub const FIG5_KT: [f64; 3] = [0.02, 0.1, 0.5];
pub const FIG5_WINDOW: (f64, f64) = (0.0, 6.0);

pub const FIG6_H: [f64; 2] = [6.0, 12.0];
pub const FIG6_WINDOW_H6: (f64, f64) = (-0.5, 5.0);
pub const FIG6_WINDOW_H12: (f64, f64) = (0.0, 6.0);
pub const FIG6_KT: [f64; 11] = [0.02, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];
pub const FIG6_ESTIMATORS: [Measure; 4] = [Measure::Discord, Measure::Eof, Measure::Sxx, Measure::Szz];

pub const FIG7_GAMMA: [f64; 3] = [0.0, 0.5, 1.0];
pub const FIG7_KT: [f64; 3] = [0.01, 0.1, 0.5];
pub const FIG7_LAMBDA_WINDOW: (f64, f64) = (0.0, 2.0);

pub const FIG8_GAMMA: [f64; 3] = [0.0, 0.5, 1.0];
pub const FIG8_KT: [f64; 7] = [0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5];
pub const FIG8_LAMBDA_WINDOW: (f64, f64) = (0.5, 1.5);

pub const FIG9_LAMBDA: f64 = 1.5;
pub const FIG9_KT: [f64; 5] = [0.001, 0.1, 0.5, 1.0, 2.0];
pub const FIG9_GAMMA_WINDOW: (f64, f64) = (-1.0, 1.0);

const PAIR: [Measure; 2] = [Measure::Discord, Measure::Eof];

struct Writer<'a> {
    id: &'a str,
    dir: &'a Path,
    files: Vec<Value>,
    notes: Vec<String>,
    length: Option<usize>,
}

impl Writer<'_> {
    fn file(&mut self, curve: &str, table: &Table, info: Value) -> CmdResult<()> {
        let name = format!("{}_{curve}.csv", self.id);
        fs::write(self.dir.join(&name), table.to_csv())?;
        let mut entry = Map::new();
        entry.insert("file".into(), json!(name));
        if let Value::Object(m) = info {
            entry.extend(m);
        }
        self.files.push(Value::Object(entry));
        Ok(())
    }

    fn note(&mut self, s: &str) {
        if !self.notes.iter().any(|n| n == s) {
            self.notes.push(s.to_string());
        }
    }

    /// One CSV per measure for a single series.
    fn curves(&mut self, s: &SweepSeries<f64>, measures: &[Measure], label: &str) -> CmdResult<()> {
        for &m in measures {
            let mut t = Table::new(vec!["param".into(), "kt".into(), m.name().into()], Map::new());
            let swept_kt = s.param_name == "kt";
            for (x, v) in s.grid.iter().zip(&s.values) {
                let c = v.as_ref().expect("complete series");
                let kt = if swept_kt { *x } else { s.model.kt() };
                t.push(vec![Cell::Num(*x), Cell::Num(kt), Cell::Num(m.get(c))]);
            }
            let info = json!({
                "measure": m.name(),
                "model": s.model.id(),
                "parameters": model_meta(&s.model, &[s.param_name.as_str()]),
                "param": s.param_name,
                "from": s.grid[0],
                "to": s.grid[s.grid.len() - 1],
                "steps": s.grid.len(),
            });
            self.file(&format!("{}_{label}", m.name()), &t, info)?;
        }
        Ok(())
    }

    fn finish(self, params: Value) -> CmdResult<()> {
        let mut m = Map::new();
        m.insert("figure".into(), json!(self.id));
        m.insert("parameters".into(), params);
        if let Some(l) = self.length {
            m.insert("length".into(), json!(l));
        }
        m.insert("notes".into(), json!(self.notes));
        m.insert("files".into(), Value::Array(self.files));
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
        s.push('\n');
        fs::write(self.dir.join(format!("{}_manifest.json", self.id)), s)?;
        Ok(())
    }
}

fn tag(v: f64) -> String {
    format!("{v}")
}

fn floor_kt(kt: f64, w: &mut Writer) -> f64 {
    if kt < KT_FLOOR {
        w.note(&format!("zero-temperature curves are evaluated at kt = {KT_FLOOR}"));
        KT_FLOOR
    } else {
        kt
    }
}

fn xyz(jx: f64, jy: f64, jz: f64, b: f64, xxx: bool) -> CmdResult<ModelSpec<f64>> {
    Ok(ModelSpec::Xyz2 {
        params: TwoSpinXYZParams::new(jx, jy, jz, b, 1.0)?,
        xxx,
    })
}

fn xxz_model(h: f64, length: usize) -> CmdResult<ModelSpec<f64>> {
    Ok(ModelSpec::Xxz {
        params: XXZParams::new(0.0, h, 1.0, 1.0, length).map_err(|e| Failure::Config(e.into()))?,
    })
}

fn xy_model(lambda: f64, gamma: f64) -> CmdResult<ModelSpec<f64>> {
    Ok(ModelSpec::Xy {
        params: XYParams::new(lambda, gamma, 1.0, 1)?,
    })
}

/// Midpoint between the two critical anisotropies at field `h`.
fn fig6_split(h: f64) -> CmdResult<f64> {
    let first = thermodiscord::models::xxz::cp_first_order(h, 1.0)?;
    let inf = thermodiscord::models::xxz::cp_infinite_order(h, 1.0)?;
    Ok(0.5 * (first + inf))
}

pub fn run(a: &FigureArgs) -> CmdResult<()> {
    let id = a.id.as_str();
    if !IDS.contains(&id) {
        return Err(Failure::config(format!("unknown figure id '{id}' (expected one of {})", IDS.join(", "))));
    }
    crate::args::check_grid(0.0, 1.0, a.steps)?;
    fs::create_dir_all(&a.out_dir)?;
    let mut w = Writer {
        id,
        dir: &a.out_dir,
        files: Vec::new(),
        notes: Vec::new(),
        length: None,
    };
    let steps = a.steps;
    let params = match id {
        "fig1a" | "fig1b" => {
            let curves: Vec<(f64, f64, String)> = if id == "fig1a" {
                FIG1A_J.iter().map(|&j| (j, FIG1A_JZ, format!("j{}", tag(j)))).collect()
            } else {
                FIG1B_JZ.iter().map(|&jz| (FIG1B_J, jz, format!("jz{}", tag(jz)))).collect()
            };
            for (j, jz, label) in curves {
                let m = xyz(j, j, jz, 0.0, false)?;
                let s = run_sweeps(&m, "kt", FIG1_KT_WINDOW.0, FIG1_KT_WINDOW.1, steps, &[])?;
                w.curves(&s[0], &[Measure::Discord], &label)?;
            }
            if id == "fig1a" {
                json!({"b": 0.0, "jz": FIG1A_JZ, "j": FIG1A_J, "kt_window": FIG1_KT_WINDOW})
            } else {
                json!({"b": 0.0, "j": FIG1B_J, "jz": FIG1B_JZ, "kt_window": FIG1_KT_WINDOW})
            }
        }
        "fig2" => {
            let m = xyz(0.0, 0.0, 0.0, 0.0, true)?;
            let series = run_sweeps(&m, "j", FIG2_J_WINDOW.0, FIG2_J_WINDOW.1, steps, &FIG2_KT)?;
            for (s, kt) in series.iter().zip(FIG2_KT) {
                w.curves(s, &PAIR, &format!("kt{}", tag(kt)))?;
            }
            json!({"b": 0.0, "xxx": true, "kt": FIG2_KT, "j_window": FIG2_J_WINDOW})
        }
        "fig3" => {
            for b in FIG3_B {
                let m = xyz(FIG3_JX, FIG3_JY, 0.0, b, false)?;
                let s = run_sweeps(&m, "kt", FIG3_KT_WINDOW.0, FIG3_KT_WINDOW.1, steps, &[])?;
                w.curves(&s[0], &PAIR, &format!("b{}", tag(b)))?;
            }
            json!({"jx": FIG3_JX, "jy": FIG3_JY, "jz": 0.0, "b": FIG3_B, "kt_window": FIG3_KT_WINDOW})
        }
        "fig4a" | "fig4b" | "fig4c" | "fig4d" => {
            let h = if id == "fig4a" || id == "fig4c" { FIG4_H[0] } else { FIG4_H[1] };
            let measure = if id == "fig4a" || id == "fig4b" { Measure::Discord } else { Measure::Eof };
            let window = if h == 0.0 { FIG4_WINDOW_H0 } else { FIG4_WINDOW_H12 };
            w.length = Some(a.length);
            let kts: Vec<f64> = FIG4_KT.iter().map(|&k| floor_kt(k, &mut w)).collect();
            let series = run_sweeps(&xxz_model(h, a.length)?, "delta", window.0, window.1, steps, &kts)?;
            for (s, kt) in series.iter().zip(FIG4_KT) {
                w.curves(s, &[measure], &format!("kt{}", tag(kt)))?;
            }
            json!({"h": h, "j": 1.0, "kt": FIG4_KT, "delta_window": window})
        }
        "fig5" => {
            w.length = Some(a.length);
            let series = run_sweeps(&xxz_model(FIG5_H, a.length)?, "delta", FIG5_WINDOW.0, FIG5_WINDOW.1, steps, &FIG5_KT)?;
            w.note("derivatives are central differences divided by their largest magnitude");
            for (s, kt) in series.iter().zip(FIG5_KT) {
                for order in [1u8, 2] {
                    let d = normalize(&derivative(s, Measure::Discord, order)?)?;
                    let col = format!("discord_d{order}");
                    let mut t = Table::new(vec!["param".into(), "kt".into(), col.clone()], Map::new());
                    for (i, v) in d.iter().enumerate() {
                        t.push(vec![Cell::Num(s.grid[i + 1]), Cell::Num(kt), Cell::Num(*v)]);
                    }
                    let info = json!({"measure": col, "model": "xxz", "param": "delta", "kt": kt, "steps": steps});
                    w.file(&format!("d{order}_kt{}", tag(kt)), &t, info)?;
                }
            }
            json!({"h": FIG5_H, "j": 1.0, "kt": FIG5_KT, "delta_window": FIG5_WINDOW})
        }
        "fig6" => {
            w.length = Some(a.length);
            let mut meta = Map::new();
            meta.insert("figure".into(), json!(id));
            let mut all = Table::new(Vec::new(), meta);
            let mut windows = Map::new();
            for h in FIG6_H {
                let window = if h == 6.0 { FIG6_WINDOW_H6 } else { FIG6_WINDOW_H12 };
                let split = fig6_split(h)?;
                let model = xxz_model(h, a.length)?;
                for (rule, part) in [(Rule::FirstOrder, (window.0, split)), (Rule::InfiniteOrder, (split, window.1))] {
                    let rows =
                        critical::estimator_comparison(&model, "delta", part, steps, &FIG6_KT, &FIG6_ESTIMATORS, rule)?;
                    let t = comparison_table(&rows, &[("h", h)], Map::new());
                    all.columns = t.columns;
                    all.rows.extend(t.rows);
                }
                windows.insert(tag(h), json!({"first_order": [window.0, split], "infinite_order": [split, window.1]}));
            }
            w.note("each transition is estimated on its own part of the window, split midway between the two critical points");
            w.file("comparison", &all, json!({"model": "xxz", "param": "delta"}))?;
            json!({"h": FIG6_H, "j": 1.0, "kt": FIG6_KT, "windows": windows,
                   "estimators": FIG6_ESTIMATORS.iter().map(|m| m.name()).collect::<Vec<_>>()})
        }
        "fig7" => {
            for g in FIG7_GAMMA {
                let series = run_sweeps(
                    &xy_model(1.0, g)?,
                    "lambda",
                    FIG7_LAMBDA_WINDOW.0,
                    FIG7_LAMBDA_WINDOW.1,
                    steps,
                    &FIG7_KT,
                )?;
                for (s, kt) in series.iter().zip(FIG7_KT) {
                    w.curves(s, &PAIR, &format!("gamma{}_kt{}", tag(g), tag(kt)))?;
                }
            }
            json!({"gamma": FIG7_GAMMA, "kt": FIG7_KT, "k": 1, "lambda_window": FIG7_LAMBDA_WINDOW})
        }
        "fig8" => {
            let mut all = Table::new(Vec::new(), Map::new());
            for g in FIG8_GAMMA {
                let rows = critical::estimator_comparison(
                    &xy_model(1.0, g)?,
                    "lambda",
                    FIG8_LAMBDA_WINDOW,
                    steps,
                    &FIG8_KT,
                    &PAIR,
                    Rule::Auto,
                )?;
                let t = comparison_table(&rows, &[("gamma", g)], Map::new());
                all.columns = t.columns;
                all.rows.extend(t.rows);
            }
            w.file("comparison", &all, json!({"model": "xy", "param": "lambda", "rule": "auto"}))?;
            json!({"gamma": FIG8_GAMMA, "kt": FIG8_KT, "k": 1, "lambda_window": FIG8_LAMBDA_WINDOW})
        }
        "fig9" => {
            // an odd count puts gamma = 0 on the grid
            let odd = steps | 1;
            let series = run_sweeps(
                &xy_model(FIG9_LAMBDA, 0.0)?,
                "gamma",
                FIG9_GAMMA_WINDOW.0,
                FIG9_GAMMA_WINDOW.1,
                odd,
                &FIG9_KT,
            )?;
            for (s, kt) in series.iter().zip(FIG9_KT) {
                w.curves(s, &PAIR, &format!("kt{}", tag(kt)))?;
            }
            json!({"lambda": FIG9_LAMBDA, "kt": FIG9_KT, "k": 1, "gamma_window": FIG9_GAMMA_WINDOW})
        }
        _ => unreachable!("checked above"),
    };
    w.finish(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caption_parameters() {
        assert_eq!((FIG3_JX, FIG3_JY), (2.6, 1.4));
        assert_eq!(FIG3_B, [1.1, 2.0, 2.5]);
        assert_eq!(FIG2_KT, [0.05, 0.1, 0.5, 1.0]);
        assert_eq!(FIG1A_JZ, -0.5);
        assert_eq!(FIG1A_J, [0.1, 0.2, 0.3, 0.4]);
        assert_eq!(FIG1B_J, 0.4);
        assert_eq!(FIG1B_JZ, [-0.8, -0.7, -0.6, -0.5]);
        assert_eq!(FIG4_KT, [0.0, 0.1, 0.5, 1.0, 2.0]);
        assert_eq!(FIG4_H, [0.0, 12.0]);
        assert_eq!(FIG5_KT, [0.02, 0.1, 0.5]);
        assert_eq!(FIG6_H, [6.0, 12.0]);
        assert_eq!(FIG7_KT, [0.01, 0.1, 0.5]);
        assert_eq!(FIG7_GAMMA, [0.0, 0.5, 1.0]);
        assert_eq!(FIG8_GAMMA, [0.0, 0.5, 1.0]);
        assert_eq!(FIG9_LAMBDA, 1.5);
        assert_eq!(FIG9_KT, [0.001, 0.1, 0.5, 1.0, 2.0]);
    }

    #[test]
    fn windows_contain_the_critical_points() {
        let inside = |w: (f64, f64), x: f64| w.0 < x && x < w.1;
        assert!(inside(FIG4_WINDOW_H0, -1.0) && inside(FIG4_WINDOW_H0, 1.0));
        assert!(inside(FIG5_WINDOW, 2.0) && inside(FIG5_WINDOW, 4.88));
        assert!(inside(FIG6_WINDOW_H6, 0.5) && inside(FIG6_WINDOW_H6, 3.3));
        for (h, w) in [(6.0, FIG6_WINDOW_H6), (12.0, FIG6_WINDOW_H12)] {
            let split = fig6_split(h).unwrap();
            assert!(inside((w.0, split), h / 4.0 - 1.0));
            assert!(inside((split, w.1), thermodiscord::models::xxz::cp_infinite_order(h, 1.0).unwrap()));
        }
        assert!(inside(FIG8_LAMBDA_WINDOW, 1.0));
        assert!(inside(FIG9_GAMMA_WINDOW, 0.0));
    }
}
