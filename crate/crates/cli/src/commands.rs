use serde_json::{json, Map, Value};
use thermodiscord::critical::{self, ComparisonRow, CpEstimate, SweepSeries};
use thermodiscord::{Measure, ModelSpec, Rule};

use crate::args::{self, CompareArgs, CpArgs, ReportFormat, SweepArgs, TableFormat};
use crate::failure::{CmdResult, Failure};
use crate::output::{emit, format_number, rounded, Cell, Table};

fn check_param(model: &ModelSpec<f64>, param: &str) -> CmdResult<()> {
    if model.param_names().contains(&param) {
        Ok(())
    } else {
        Err(Failure::config(format!(
            "model {} has no parameter '{param}' (expected one of {})",
            model.id(),
            model.param_names().join(", ")
        )))
    }
}

fn temperatures(kts: &[f64], param: &str) -> CmdResult<Vec<f64>> {
    if param == "kt" {
        if !kts.is_empty() {
            return Err(Failure::config("--kt cannot be combined with a kt sweep"));
        }
        return Ok(Vec::new());
    }
    if kts.is_empty() {
        return Err(Failure::config("--kt is required"));
    }
    for &kt in kts {
        args::check_kt(kt)?;
    }
    Ok(kts.to_vec())
}

/// Per-temperature sweeps; a kt sweep is a single series.
pub fn run_sweeps(
    base: &ModelSpec<f64>,
    param: &str,
    from: f64,
    to: f64,
    steps: usize,
    kts: &[f64],
) -> CmdResult<Vec<SweepSeries<f64>>> {
    let series = if param == "kt" {
        vec![critical::sweep(base, "kt", from, to, steps)?]
    } else {
        critical::sweep_temperatures(base, param, from, to, steps, kts)?
    };
    for s in &series {
        s.require_complete()?;
    }
    Ok(series)
}

pub fn model_meta(model: &ModelSpec<f64>, skip: &[&str]) -> Value {
    let mut m = Map::new();
    for (k, v) in model.parameters() {
        if !skip.contains(&k) {
            m.insert(k.into(), json!(v));
        }
    }
    if let ModelSpec::Xyz2 { xxx: true, .. } = model {
        m.insert("xxx".into(), json!(true));
    }
    Value::Object(m)
}

pub fn sweep_table(series: &[SweepSeries<f64>], measures: &[Measure], meta: Map<String, Value>) -> Table {
    let mut columns = vec!["param".to_string(), "kt".to_string()];
    columns.extend(measures.iter().map(|m| m.name().to_string()));
    let mut t = Table::new(columns, meta);
    for s in series {
        let swept_kt = s.param_name == "kt";
        for (x, v) in s.grid.iter().zip(&s.values) {
            let c = v.as_ref().expect("complete series");
            let kt = if swept_kt { *x } else { s.model.kt() };
            let mut row = vec![Cell::Num(*x), Cell::Num(kt)];
            row.extend(measures.iter().map(|m| Cell::Num(m.get(c))));
            t.push(row);
        }
    }
    t
}

fn render(t: &Table, format: TableFormat) -> String {
    match format {
        TableFormat::Csv => t.to_csv(),
        TableFormat::Json => t.to_json(),
    }
}

pub fn sweep(a: &SweepArgs) -> CmdResult<()> {
    args::check_grid(a.from, a.to, a.steps)?;
    let measures = args::measures(&a.measures)?;
    let param = a.param.as_str();
    let kts = temperatures(&a.kt, param)?;
    if param == "kt" {
        args::check_kt(a.from)?;
    }
    let base = a.model.spec(kts.first().copied().unwrap_or(1.0), Some(param))?;
    check_param(&base, param)?;
    let series = run_sweeps(&base, param, a.from, a.to, a.steps, &kts)?;

    let mut meta = Map::new();
    meta.insert("command".into(), json!("sweep"));
    meta.insert("model".into(), json!(base.id()));
    meta.insert("parameters".into(), model_meta(&base, &[param, "kt"]));
    meta.insert("param".into(), json!(param));
    meta.insert("from".into(), json!(a.from));
    meta.insert("to".into(), json!(a.to));
    meta.insert("steps".into(), json!(a.steps));
    meta.insert("kt".into(), json!(kts));
    meta.insert("measures".into(), json!(measures.iter().map(|m| m.name()).collect::<Vec<_>>()));
    let t = sweep_table(&series, &measures, meta);
    emit(&render(&t, a.format), a.output.as_deref())
}

fn resolve_param(model: &args::ModelArgs, param: &Option<String>) -> CmdResult<String> {
    match (param, model.default_param()) {
        (Some(p), _) => Ok(p.clone()),
        (None, Some(p)) => Ok(p.to_string()),
        (None, None) => Err(Failure::config("--param is required for this model")),
    }
}

fn rule_name(order: u8) -> &'static str {
    if order == 1 {
        "first-order"
    } else {
        "infinite-order"
    }
}

fn estimate_json(e: &CpEstimate<f64>) -> Value {
    json!({
        "estimator": e.estimator.name(),
        "rule": rule_name(e.derivative_order),
        "derivative_order": e.derivative_order,
        "location": rounded(e.location),
        "grid_location": rounded(e.grid_location),
        "reference": e.reference.map(rounded),
        "error": e.error().map(rounded),
        "extremum_value": rounded(e.extremum_value),
        "candidates": e.candidates.iter().map(|c| json!({
            "location": rounded(c.location),
            "relative": rounded(c.relative),
        })).collect::<Vec<_>>(),
    })
}

fn estimate_text(e: &CpEstimate<f64>) -> String {
    let opt = |v: Option<f64>| v.map_or_else(|| "unknown".to_string(), format_number);
    let cands: Vec<String> = e
        .candidates
        .iter()
        .map(|c| format!("{} ({:.3})", format_number(c.location), c.relative))
        .collect();
    format!(
        "estimator   {}\nrule        {}\norder       {}\nlocation    {}\ngrid point  {}\nreference   {}\nerror       {}\ncandidates  {}\n",
        e.estimator,
        rule_name(e.derivative_order),
        e.derivative_order,
        format_number(e.location),
        format_number(e.grid_location),
        opt(e.reference),
        opt(e.error()),
        cands.join(", ")
    )
}

pub fn cp(a: &CpArgs) -> CmdResult<()> {
    let param = resolve_param(&a.model, &a.param)?;
    let (from, to) = args::window(&a.window)?;
    args::check_grid(from, to, a.steps)?;
    args::check_kt(a.kt)?;
    let estimator: Measure = a.estimator.parse().map_err(|e: thermodiscord::Error| Failure::Config(e.into()))?;
    let rule = args::rule(&a.rule)?;
    let model = a.model.spec(a.kt, Some(&param))?;
    check_param(&model, &param)?;
    if param == "kt" {
        return Err(Failure::config("cp sweeps a model parameter, not kt"));
    }
    let s = critical::sweep(&model, &param, from, to, a.steps)?;
    s.require_complete()?;
    // each order on its own, so one boundary extremum does not hide the other
    let mut outcomes = Vec::new();
    for &order in rule.orders() {
        let single = if order == 1 { Rule::FirstOrder } else { Rule::InfiniteOrder };
        match critical::estimate_cp(&s, estimator, single) {
            Ok(mut e) => outcomes.push((order, Ok(e.remove(0)))),
            Err(e @ thermodiscord::Error::ExtremumOnBoundary { .. }) => outcomes.push((order, Err(e))),
            Err(e) => return Err(e.into()),
        }
    }
    if outcomes.iter().all(|o| o.1.is_err()) {
        let (_, first) = outcomes.swap_remove(0);
        return Err(first.expect_err("all failed").into());
    }
    let text = match a.format {
        ReportFormat::Text => outcomes
            .iter()
            .map(|(order, o)| match o {
                Ok(e) => estimate_text(e),
                Err(err) => format!("rule        {}
failure     {err}
", rule_name(*order)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        ReportFormat::Json => {
            let list: Vec<Value> = outcomes
                .iter()
                .map(|(order, o)| match o {
                    Ok(e) => estimate_json(e),
                    Err(err) => json!({
                        "estimator": estimator.name(),
                        "rule": rule_name(*order),
                        "derivative_order": order,
                        "failure": err.to_string(),
                    }),
                })
                .collect();
            let v = json!({
                "model": model.id(),
                "parameters": model_meta(&model, &[param.as_str()]),
                "param": param,
                "window": [from, to],
                "steps": a.steps,
                "estimates": list,
            });
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            s
        }
    };
    emit(&text, None)
}

pub fn comparison_table(rows: &[ComparisonRow<f64>], extra: &[(&str, f64)], meta: Map<String, Value>) -> Table {
    let mut columns: Vec<String> = extra.iter().map(|e| e.0.to_string()).collect();
    columns.extend(
        ["kt", "estimator", "derivative_order", "location", "reference", "error", "failure"]
            .iter()
            .map(|s| s.to_string()),
    );
    let mut t = Table::new(columns, meta);
    for r in rows {
        let mut row: Vec<Cell> = extra.iter().map(|e| Cell::Num(e.1)).collect();
        row.extend([
            Cell::Num(r.kt),
            Cell::from(r.estimator.name()),
            Cell::Num(r.derivative_order as f64),
            Cell::from(r.location),
            Cell::from(r.reference),
            Cell::from(r.error),
            r.failure.as_deref().map_or(Cell::Empty, Cell::from),
        ]);
        t.push(row);
    }
    t
}

pub fn compare(a: &CompareArgs) -> CmdResult<()> {
    let param = resolve_param(&a.model, &a.param)?;
    if param == "kt" {
        return Err(Failure::config("compare sweeps a model parameter, not kt"));
    }
    let (from, to) = args::window(&a.window)?;
    args::check_grid(from, to, a.steps)?;
    let kts = temperatures(&a.kt, &param)?;
    let estimators = args::measures(&a.estimators)?;
    let rule: Rule = args::rule(&a.rule)?;
    let model = a.model.spec(kts[0], Some(&param))?;
    check_param(&model, &param)?;
    let rows = critical::estimator_comparison(&model, &param, (from, to), a.steps, &kts, &estimators, rule)?;
    let mut meta = Map::new();
    meta.insert("command".into(), json!("compare"));
    meta.insert("model".into(), json!(model.id()));
    meta.insert("parameters".into(), model_meta(&model, &[param.as_str(), "kt"]));
    meta.insert("param".into(), json!(param));
    meta.insert("window".into(), json!([from, to]));
    meta.insert("steps".into(), json!(a.steps));
    meta.insert("rule".into(), json!(a.rule));
    let t = comparison_table(&rows, &[], meta);
    emit(&render(&t, a.format), a.output.as_deref())
}
