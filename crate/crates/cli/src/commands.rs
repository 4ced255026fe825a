use std::path::{Path, PathBuf};

use qhelper_core::channels::random_isometry;
use qhelper_core::qcore::{AnyState, QuantumState};
use qhelper_core::rates::{converse_audit_with, AuditMap, HelperInstance, RateReport};
use qhelper_core::region::{trace_frontier, FrontierConfig, FrontierResult};
use qhelper_core::ricalc::{
    builtin, evaluate, evaluate_expr, parse_expr, parse_file, Bindings, CertificateFile, EntropicExpr, RIStatement,
    ResourceAmount, BUILTIN_NAMES,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{AuditArgs, EntropyArgs, FrontierArgs, GlobalOpts, RatesArgs, RiArgs};
use crate::error::{CliError, CliResult};
use crate::inputs::{load_channel, load_source, load_state, STATE_PRESETS};
use crate::output::{csv, json as to_json, want_json, write_file, Report};

/// Exit status when some lambda stopped at `max_iters`.
pub const EXIT_NOT_CONVERGED: i32 = 3;
/// Exit status for a failed certificate.
pub const EXIT_CERTIFICATE_FAILED: i32 = 1;

/// Shortest round-trip form, as in the JSON reports.
fn fmt_f(v: f64) -> String {
    serde_json::to_string(&v).unwrap_or_else(|_| "nan".into())
}

/// Flattens a JSON object into `(dotted.key, value)` rows.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Null => {}
        other => out.push(vec![prefix.to_string(), other.to_string()]),
    }
}

fn layout_json(s: &AnyState) -> Value {
    json!({ "labels": s.layout().labels(), "dims": s.layout().dims() })
}

#[derive(Serialize)]
struct QuantityRow {
    quantity: String,
    value: f64,
}

fn default_quantities(s: &AnyState) -> Vec<EntropicExpr> {
    let labels = s.layout().labels();
    let h = |x: Vec<String>| EntropicExpr::Entropy { x, given: None, tag: None };
    let mut out: Vec<EntropicExpr> = labels.iter().map(|l| h(vec![l.clone()])).collect();
    if labels.len() > 1 {
        out.push(h(labels.to_vec()));
    }
    for (i, x) in labels.iter().enumerate() {
        for y in &labels[i + 1..] {
            out.push(EntropicExpr::MutualInfo { x: vec![x.clone()], y: vec![y.clone()], given: None, tag: None });
        }
    }
    out
}

pub fn entropy(a: &EntropyArgs, g: &GlobalOpts) -> CliResult<Report> {
    let state = load_state(&a.state)?;
    let exprs = if a.quantities.is_empty() {
        default_quantities(&state)
    } else {
        a.quantities
            .iter()
            .map(|q| parse_expr(q).map_err(|e| CliError::input(format!("`{q}`: {e}"))))
            .collect::<CliResult<Vec<_>>>()?
    };
    let bindings = Bindings::new();
    let rows = exprs
        .iter()
        .map(|e| Ok(QuantityRow { quantity: e.to_string(), value: evaluate_expr(e, &state, &bindings)? }))
        .collect::<CliResult<Vec<_>>>()?;
    let body = if want_json(g) {
        to_json(&json!({ "state": layout_json(&state), "quantities": rows }))?
    } else {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| vec![r.quantity.clone(), fmt_f(r.value)]).collect();
        csv(&["quantity", "value"], &rows)
    };
    Ok(Report::ok(body))
}

pub fn rates(a: &RatesArgs, g: &GlobalOpts) -> CliResult<Report> {
    let rho = load_source(&a.state)?;
    let dim_b = rho.layout().dim_of("B")?;
    let helper = load_channel(&a.channel)?.to_isometry(dim_b)?;
    let report = RateReport::compute(&HelperInstance::new(rho, helper)?)?;
    let v = json!({ "state": a.state, "channel": a.channel, "report": report });
    let body = if want_json(g) {
        to_json(&v)?
    } else {
        let mut rows = Vec::new();
        flatten("", &v["report"], &mut rows);
        csv(&["metric", "value"], &rows)
    };
    Ok(Report::ok(body))
}

fn frontier_config(a: &FrontierArgs, g: &GlobalOpts, dim_b: usize) -> CliResult<FrontierConfig> {
    let mut cfg = FrontierConfig::new(a.dim_c.unwrap_or(dim_b), a.dim_e.unwrap_or(dim_b));
    cfg.seed = g.seed;
    if let Some(l) = &a.lambdas {
        cfg.lambda_grid = l.clone();
    }
    if let Some(r) = a.restarts {
        cfg.restarts = r;
    }
    if let Some(m) = a.max_iters {
        cfg.max_iters = m;
    }
    if let Some(t) = g.tol {
        cfg.step_tol = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// `r2 r1` per hull vertex, for gnuplot and friends.
pub fn hull_dat(res: &FrontierResult) -> String {
    let mut s = String::from("# r2 r1\n");
    for h in &res.hull {
        s.push_str(&format!("{} {}\n", fmt_f(h.r2), fmt_f(h.r1)));
    }
    s
}

fn default_hull_path(out: &Path) -> PathBuf {
    let mut name = out.file_stem().unwrap_or_default().to_os_string();
    name.push(".hull.dat");
    out.with_file_name(name)
}

pub fn frontier(a: &FrontierArgs, g: &GlobalOpts) -> CliResult<Report> {
    let rho = load_source(&a.state)?;
    let cfg = frontier_config(a, g, rho.layout().dim_of("B")?)?;
    let res = trace_frontier(&rho, &cfg)?;
    let body = if want_json(g) {
        to_json(&json!({
            "seed": cfg.seed,
            "state": a.state,
            "all_converged": res.all_converged(),
            "config": res.config,
            "points": res.points,
            "hull": res.hull,
        }))?
    } else {
        let rows: Vec<Vec<String>> = res
            .points
            .iter()
            .map(|p| vec![fmt_f(p.lambda), fmt_f(p.r1), fmt_f(p.r2), p.converged.to_string(), p.iters.to_string()])
            .collect();
        csv(&["lambda", "r1", "r2", "converged", "iters"], &rows)
    };
    let hull_path = a.hull_out.clone().or_else(|| g.out.as_deref().map(default_hull_path));
    if let Some(p) = hull_path {
        write_file(&p, &hull_dat(&res))?;
    }
    let mut report = Report::ok(body);
    if !res.all_converged() {
        let stuck: Vec<String> = res.points.iter().filter(|p| !p.converged).map(|p| fmt_f(p.lambda)).collect();
        eprintln!("warning: max_iters reached for lambda = {}", stuck.join(", "));
        report.status = EXIT_NOT_CONVERGED;
    }
    Ok(report)
}

pub fn audit(a: &AuditArgs, g: &GlobalOpts) -> CliResult<Report> {
    let rho = load_source(&a.state)?;
    let dim_b = rho.layout().dim_of("B")?;
    if a.n == 0 {
        return Err(CliError::input("-n must be at least 1"));
    }
    let dim_in = if a.joint {
        u32::try_from(a.n).ok().and_then(|n| dim_b.checked_pow(n)).ok_or_else(|| CliError::input("B^n is too large"))?
    } else {
        dim_b
    };
    let iso = match &a.channel {
        Some(c) => load_channel(c)?.to_isometry(dim_in)?,
        None => random_isometry(dim_in, a.dim_c.unwrap_or(dim_b), a.dim_e, g.seed)?,
    };
    let (map, kind) = if a.joint { (AuditMap::Joint(iso), "joint") } else { (AuditMap::PerCopy(iso), "per_copy") };
    let residuals = converse_audit_with(&rho, &map, a.n)?;
    let passed = residuals.iter().all(|r| r.passed);
    let body = if want_json(g) {
        to_json(&json!({ "seed": g.seed, "n": a.n, "map": kind, "passed": passed, "residuals": residuals }))?
    } else {
        let rows: Vec<Vec<String>> = residuals
            .iter()
            .map(|r| {
                vec![
                    r.check.to_string(),
                    r.copy.map(|c| c.to_string()).unwrap_or_default(),
                    fmt_f(r.residual),
                    r.passed.to_string(),
                ]
            })
            .collect();
        csv(&["check", "copy", "residual", "passed"], &rows)
    };
    Ok(Report::ok(body))
}

fn parse_maps(maps: &[String]) -> CliResult<Bindings> {
    let mut b = Bindings::new();
    for m in maps {
        let (k, v) = m
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("binding `{m}` is not of the form LABEL=LABELS")))?;
        let targets: Vec<String> = v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
        b = b.bind(k.trim(), targets);
    }
    Ok(b)
}

#[derive(Serialize)]
struct StatementRow {
    source: String,
    statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    resources: Option<Vec<ResourceAmount>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unresolvable: Option<String>,
}

fn read_input(p: &Path) -> CliResult<String> {
    std::fs::read_to_string(p).map_err(|e| CliError::input(format!("cannot read `{}`: {e}", p.display())))
}

fn collect_statements(a: &RiArgs) -> CliResult<Vec<(String, RIStatement)>> {
    let mut out = Vec::new();
    let mut errors = Vec::new();
    if let Some(path) = &a.file {
        for line in parse_file(&read_input(path)?) {
            let src = format!("{}:{}", path.display(), line.line);
            match line.parsed {
                Ok(ri) => out.push((src, ri)),
                Err(e) => errors.push(format!("{src}: {e}")),
            }
        }
    }
    for (i, t) in a.text.iter().enumerate() {
        let src = format!("text:{}", i + 1);
        let parsed = if BUILTIN_NAMES.contains(&t.trim()) {
            Ok(builtin(t.trim()).expect("listed"))
        } else {
            qhelper_core::ricalc::parse(t)
        };
        match parsed {
            Ok(ri) => out.push((src, ri)),
            Err(e) => errors.push(format!("{src}: {e}")),
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(CliError::Input(errors.join("\n")))
    }
}

pub fn ri(a: &RiArgs, g: &GlobalOpts) -> CliResult<Report> {
    if a.file.is_none() && a.text.is_empty() && a.certify.is_none() {
        return Err(CliError::input("nothing to do: give a file, --text or --certify"));
    }
    let statements = collect_statements(a)?;
    let bindings = parse_maps(&a.maps)?;
    let state = a.bind.as_deref().map(load_state).transpose()?;
    let rows: Vec<StatementRow> = statements
        .iter()
        .map(|(src, ri)| {
            let mut row =
                StatementRow { source: src.clone(), statement: ri.to_string(), resources: None, unresolvable: None };
            if let Some(s) = &state {
                match evaluate(ri, s, &bindings) {
                    Ok(ev) => row.resources = Some(ev.rows()),
                    Err(qhelper_core::Error::Unresolvable(m)) => row.unresolvable = Some(m),
                    Err(e) => return Err(CliError::input(format!("{src}: {e}"))),
                }
            }
            Ok(row)
        })
        .collect::<CliResult<_>>()?;

    let cert = match &a.certify {
        Some(p) => {
            let file = CertificateFile::from_json_str(&read_input(p)?)?;
            Some(file.run()?)
        }
        None => None,
    };

    let body = if want_json(g) {
        to_json(&json!({ "statements": rows, "certificate": cert }))?
    } else if let Some(c) = &cert {
        let rows: Vec<Vec<String>> = c
            .samples
            .iter()
            .map(|s| vec![s.index.to_string(), fmt_f(s.residual), fmt_f(s.classical_residual)])
            .collect();
        csv(&["sample", "residual", "classical_residual"], &rows)
    } else {
        let mut out = Vec::new();
        for r in &rows {
            match (&r.resources, &r.unresolvable) {
                (Some(res), _) => {
                    for x in res {
                        out.push(vec![r.source.clone(), x.resource.clone(), fmt_f(x.lhs), fmt_f(x.rhs), fmt_f(x.net)]);
                    }
                }
                (None, Some(m)) => out.push(vec![
                    r.source.clone(),
                    format!("unresolvable: {m}"),
                    String::new(),
                    String::new(),
                    String::new(),
                ]),
                (None, None) => {
                    out.push(vec![r.source.clone(), r.statement.clone(), String::new(), String::new(), String::new()])
                }
            }
        }
        csv(&["source", "resource", "lhs", "rhs", "net"], &out)
    };
    let mut report = Report::ok(body);
    if let Some(c) = &cert {
        eprintln!(
            "certificate {}: max residual {:e} (tolerance {:e})",
            if c.passed { "PASS" } else { "FAIL" },
            c.max_residual,
            c.tolerance
        );
        if !c.passed {
            report.status = EXIT_CERTIFICATE_FAILED;
        }
    }
    Ok(report)
}

const CHANNEL_PRESETS: &[(&str, &str)] = &[
    ("identity", "forward B unchanged"),
    ("discard", "trace out B; one-dimensional output"),
    ("reset", "replace B by |0>"),
    ("depolarizing:p", "(1 - p) rho + p I/d"),
    ("dephasing:p", "(1 - p) rho + p/(d-1) sum_k Z^k rho Z^-k"),
    ("amplitude_damping:g", "qubit amplitude damping with decay probability g"),
];

pub fn presets(g: &GlobalOpts) -> CliResult<Report> {
    let named = |list: &[(&str, &str)]| -> Vec<Value> {
        list.iter().map(|(n, d)| json!({ "name": n, "description": d })).collect()
    };
    let ris: Vec<(String, String)> =
        BUILTIN_NAMES.iter().map(|n| (n.to_string(), builtin(n).expect("listed").to_string())).collect();
    let body = if want_json(g) {
        let ri_json: Vec<Value> = ris.iter().map(|(n, t)| json!({ "name": n, "statement": t })).collect();
        to_json(&json!({ "states": named(STATE_PRESETS), "channels": named(CHANNEL_PRESETS), "ri": ri_json }))?
    } else {
        let mut rows = Vec::new();
        for (kind, list) in [("state", STATE_PRESETS), ("channel", CHANNEL_PRESETS)] {
            rows.extend(list.iter().map(|(n, d)| vec![kind.to_string(), n.to_string(), d.to_string()]));
        }
        rows.extend(ris.into_iter().map(|(n, t)| vec!["ri".to_string(), n, t]));
        csv(&["kind", "name", "description"], &rows)
    };
    Ok(Report::ok(body))
}
