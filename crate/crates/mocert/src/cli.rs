//! Command-line front end: loads instances and candidate sets, runs the
//! certification pipelines, and emits machine-readable reports.
//!
//! Exit codes: 0 when the run succeeded and the certification answer is
//! positive, 1 when it ran fine but the answer is negative, 2 for input
//! and configuration errors, 3 for numerical failures. Reports are
//! deterministic: fixed field order and floats rendered with 17
//! significant digits, so identical configs produce byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::geoffrion::{geoffrion_set, min_m_for_point, qi_system_feasible};
use crate::kkt::{is_modified_eps_kkt, kkt_residual};
use crate::lagrangian::{search_saddle_certificate, verify_saddle, default_mu_probe};
use crate::pareto::{eps_pareto_set, is_eps_pareto, DominanceMode};
use crate::problem::{
    load_instance, make_grid, read_candidates_csv, registry_instance, CandidatePoint,
    EpsilonVector, InstanceConfig, RegistryEntry,
};
use crate::sequences::{build_kkt_sequence, make_schedule, verify_limit_kkt};

/// Environment variable that prefixes relative report paths.
pub const OUTPUT_DIR_ENV: &str = "MOCERT_OUTPUT_DIR";

// ---------------------------------------------------------------------------
// Deterministic JSON rendering
// ---------------------------------------------------------------------------

/// A JSON document with stable field order and fixed float formatting.
#[derive(Debug, Clone)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(&'static str, Json)>),
}

impl Json {
    pub fn floats(values: &[f64]) -> Json {
        Json::Array(values.iter().map(|&v| Json::Float(v)).collect())
    }

    fn render_into(&self, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Json::Float(v) => {
                if v.is_nan() {
                    out.push_str("\"nan\"");
                } else if v.is_infinite() {
                    out.push_str(if *v > 0.0 { "\"inf\"" } else { "\"-inf\"" });
                } else {
                    // 17 significant digits round-trip every f64 exactly.
                    let _ = write!(out, "{v:.16e}");
                }
            }
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        '\r' => out.push_str("\\r"),
                        '\t' => out.push_str("\\t"),
                        c if (c as u32) < 0x20 => {
                            let _ = write!(out, "\\u{:04x}", c as u32);
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.render_into(out);
                }
                out.push(']');
            }
            Json::Object(fields) => {
                out.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    let _ = write!(out, "\"{key}\":");
                    value.render_into(out);
                }
                out.push('}');
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliCommand {
    Pareto,
    Geoffrion,
    Kkt,
    Saddle,
    Sequence,
    Example,
}

impl CliCommand {
    pub fn name(&self) -> &'static str {
        match self {
            CliCommand::Pareto => "pareto",
            CliCommand::Geoffrion => "geoffrion",
            CliCommand::Kkt => "kkt",
            CliCommand::Saddle => "saddle",
            CliCommand::Sequence => "sequence",
            CliCommand::Example => "example",
        }
    }
}

/// Approximation budget as given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum EpsilonSpec {
    Zero,
    Uniform(f64),
    Vector(Vec<f64>),
}

impl EpsilonSpec {
    /// Parses either a scalar (`0.1`) or a comma list (`0.1,0,0.2`).
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        let values: Vec<f64> = parts
            .iter()
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Input(format!("cannot parse epsilon entry `{p}`")))
            })
            .collect::<Result<_>>()?;
        if values.iter().any(|&v| v < 0.0) {
            return Err(Error::Input("epsilon entries must be nonnegative".into()));
        }
        Ok(if values.len() == 1 { EpsilonSpec::Uniform(values[0]) } else { EpsilonSpec::Vector(values) })
    }

    fn materialize(&self, m: usize) -> Result<EpsilonVector> {
        match self {
            EpsilonSpec::Zero => Ok(EpsilonVector::zero(m)),
            EpsilonSpec::Uniform(e) => EpsilonVector::uniform(*e, m),
            EpsilonSpec::Vector(v) => {
                if v.len() != m {
                    return Err(Error::Input(format!(
                        "epsilon has {} entries, instance has {m} objectives",
                        v.len()
                    )));
                }
                EpsilonVector::new(v.clone())
            }
        }
    }

    fn echo(&self) -> Json {
        match self {
            EpsilonSpec::Zero => Json::Int(0),
            EpsilonSpec::Uniform(e) => Json::Float(*e),
            EpsilonSpec::Vector(v) => Json::floats(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CliCommand,
    /// Registry key, or a path to a JSON instance configuration.
    pub instance: String,
    pub point: Option<Vec<f64>>,
    pub epsilon: EpsilonSpec,
    pub m_hat: Option<f64>,
    pub weights: Option<Vec<f64>>,
    pub grid_resolution: Option<usize>,
    pub tol: f64,
    pub seed: u64,
    /// Optional CSV candidate file replacing the instance's default set.
    pub candidates: Option<PathBuf>,
    pub output_format: OutputFormat,
    /// Report destination; stdout when absent.
    pub output_path: Option<PathBuf>,
    pub eps0: f64,
    pub factor: f64,
    pub count: usize,
}

impl RunConfig {
    pub fn new(command: CliCommand, instance: impl Into<String>) -> Self {
        RunConfig {
            command,
            instance: instance.into(),
            point: None,
            epsilon: EpsilonSpec::Zero,
            m_hat: None,
            weights: None,
            grid_resolution: None,
            tol: 1e-8,
            seed: 0,
            candidates: None,
            output_format: OutputFormat::Json,
            output_path: None,
            eps0: 0.1,
            factor: 0.5,
            count: 8,
        }
    }

    fn echo(&self) -> Json {
        Json::Object(vec![
            ("command", Json::Str(self.command.name().into())),
            ("instance", Json::Str(self.instance.clone())),
            (
                "point",
                self.point.as_ref().map_or(Json::Null, |p| Json::floats(p)),
            ),
            ("epsilon", self.epsilon.echo()),
            ("m_hat", self.m_hat.map_or(Json::Null, Json::Float)),
            (
                "weights",
                self.weights.as_ref().map_or(Json::Null, |w| Json::floats(w)),
            ),
            (
                "grid_resolution",
                self.grid_resolution.map_or(Json::Null, |r| Json::Int(r as i64)),
            ),
            ("tol", Json::Float(self.tol)),
            ("seed", Json::Int(self.seed as i64)),
            ("eps0", Json::Float(self.eps0)),
            ("factor", Json::Float(self.factor)),
            ("count", Json::Int(self.count as i64)),
        ])
    }
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

fn point_json(p: &CandidatePoint) -> Json {
    Json::Object(vec![
        ("x", Json::floats(&p.x)),
        ("f", Json::floats(&p.fvals)),
        ("g", Json::floats(&p.gvals)),
        ("feasible", Json::Bool(p.feasible)),
    ])
}

fn load_entry(config: &RunConfig) -> Result<RegistryEntry> {
    let looks_like_path =
        config.instance.ends_with(".json") || Path::new(&config.instance).exists();
    let mut entry = if looks_like_path {
        let text = std::fs::read_to_string(&config.instance)?;
        let parsed: InstanceConfig = serde_json::from_str(&text)?;
        load_instance(&parsed)?
    } else {
        registry_instance(&config.instance)?
    };
    if let Some(res) = config.grid_resolution {
        entry.problem.grid_resolution = res;
        entry.candidates = make_grid(&entry.problem, res)?;
    }
    if let Some(path) = &config.candidates {
        let file = std::fs::File::open(path)?;
        entry.candidates = read_candidates_csv(file, &entry.problem)?;
    }
    Ok(entry)
}

struct Outcome {
    negative: bool,
    results: Vec<Json>,
    diagnostics: Vec<String>,
}

fn execute(config: &RunConfig) -> Result<Outcome> {
    match config.command {
        CliCommand::Pareto => run_pareto(config),
        CliCommand::Geoffrion => run_geoffrion(config),
        CliCommand::Kkt => run_kkt(config),
        CliCommand::Saddle => run_saddle(config),
        CliCommand::Sequence => run_sequence(config),
        CliCommand::Example => run_example(),
    }
}

fn query_point(config: &RunConfig, entry: &RegistryEntry) -> Result<Option<CandidatePoint>> {
    config
        .point
        .as_ref()
        .map(|x| crate::problem::evaluate(&entry.problem, x))
        .transpose()
}

fn run_pareto(config: &RunConfig) -> Result<Outcome> {
    let entry = load_entry(config)?;
    let eps = config.epsilon.materialize(entry.problem.m)?;
    let set = &entry.candidates;
    let members = eps_pareto_set(set, &eps, DominanceMode::StrictCone)?;
    let mut results = Vec::new();
    let mut negative = false;
    if let Some(point) = query_point(config, &entry)? {
        let verdict = is_eps_pareto(&point, set, &eps)?;
        negative = verdict.dominated;
        results.push(Json::Object(vec![
            ("kind", Json::Str("query".into())),
            ("point", point_json(&point)),
            ("eps_pareto", Json::Bool(!verdict.dominated)),
            (
                "dominating_witness",
                verdict.witness.as_ref().map_or(Json::Null, point_json),
            ),
        ]));
    }
    results.push(Json::Object(vec![
        ("kind", Json::Str("set".into())),
        ("set_size", Json::Int(set.len() as i64)),
        ("member_count", Json::Int(members.len() as i64)),
        (
            "members",
            Json::Array(members.iter().map(point_json).collect()),
        ),
    ]));
    Ok(Outcome { negative, results, diagnostics: vec![] })
}

fn run_geoffrion(config: &RunConfig) -> Result<Outcome> {
    let entry = load_entry(config)?;
    let m_hat = config
        .m_hat
        .ok_or_else(|| Error::Input("geoffrion requires --m-hat".into()))?;
    let eps = config.epsilon.materialize(entry.problem.m)?;
    let set = &entry.candidates;
    let members = geoffrion_set(set, m_hat, &eps)?;
    let mut results = Vec::new();
    let mut negative = false;
    if let Some(point) = query_point(config, &entry)? {
        let augmented = set.with_point(point.clone());
        let pareto = !is_eps_pareto(&point, &augmented, &eps)?.dominated;
        let mut fields = vec![
            ("kind", Json::Str("query".into())),
            ("point", point_json(&point)),
            ("eps_pareto", Json::Bool(pareto)),
        ];
        if pareto {
            let cert = min_m_for_point(&point, &augmented, &eps)?;
            let member = cert.minimal_m <= m_hat;
            negative = !member;
            let consistent: Vec<usize> = (0..entry.problem.m)
                .filter(|&i| qi_system_feasible(&point, i, m_hat, &eps, &augmented).is_some())
                .collect();
            fields.push(("minimal_m", Json::Float(cert.minimal_m)));
            fields.push(("vacuous", Json::Bool(cert.vacuous)));
            fields.push(("member", Json::Bool(member)));
            fields.push((
                "consistent_systems",
                Json::Array(consistent.iter().map(|&i| Json::Int(i as i64)).collect()),
            ));
        } else {
            negative = true;
            fields.push(("member", Json::Bool(false)));
        }
        results.push(Json::Object(fields));
    }
    let mut member_entries = Vec::new();
    for p in members.iter() {
        let cert = min_m_for_point(p, set, &eps)?;
        member_entries.push(Json::Object(vec![
            ("point", point_json(p)),
            ("minimal_m", Json::Float(cert.minimal_m)),
            ("vacuous", Json::Bool(cert.vacuous)),
        ]));
    }
    results.push(Json::Object(vec![
        ("kind", Json::Str("set".into())),
        ("m_hat", Json::Float(m_hat)),
        ("set_size", Json::Int(set.len() as i64)),
        ("member_count", Json::Int(members.len() as i64)),
        ("members", Json::Array(member_entries)),
    ]));
    Ok(Outcome { negative, results, diagnostics: vec![] })
}

fn run_kkt(config: &RunConfig) -> Result<Outcome> {
    let entry = load_entry(config)?;
    let point = query_point(config, &entry)?
        .ok_or_else(|| Error::Input("kkt requires --point".into()))?;
    let report = kkt_residual(&point, &entry.problem)?;
    let negative = report.residual > config.tol;
    let mut results = vec![Json::Object(vec![
        ("kind", Json::Str("residual".into())),
        ("point", point_json(&point)),
        ("residual", Json::Float(report.residual)),
        ("lambda", Json::floats(&report.multipliers.lambda)),
        ("mu", Json::floats(&report.multipliers.mu)),
        ("comp_slack", Json::Float(report.comp_slack)),
        ("epsilon", Json::Float(report.epsilon)),
        ("within_tol", Json::Bool(!negative)),
    ])];
    let mut diagnostics = Vec::new();
    if let EpsilonSpec::Uniform(eps) = config.epsilon {
        let membership = is_modified_eps_kkt(&point, eps, &entry.problem, &entry.candidates)?;
        match &membership {
            Some(r) => results.push(Json::Object(vec![
                ("kind", Json::Str("modified_eps_kkt".into())),
                ("eps", Json::Float(eps)),
                ("companion", point_json(&r.companion)),
                ("residual", Json::Float(r.residual)),
                ("lambda", Json::floats(&r.multipliers.lambda)),
                ("mu", Json::floats(&r.multipliers.mu)),
                ("comp_slack", Json::Float(r.comp_slack)),
            ])),
            None => {
                diagnostics
                    .push(format!("no modified eps-KKT certificate at eps = {eps}"));
                results.push(Json::Object(vec![
                    ("kind", Json::Str("modified_eps_kkt".into())),
                    ("eps", Json::Float(eps)),
                    ("certified", Json::Bool(false)),
                ]));
            }
        }
    }
    Ok(Outcome { negative, results, diagnostics })
}

fn run_saddle(config: &RunConfig) -> Result<Outcome> {
    let entry = load_entry(config)?;
    let point = query_point(config, &entry)?
        .ok_or_else(|| Error::Input("saddle requires --point".into()))?;
    let m_hat = config
        .m_hat
        .ok_or_else(|| Error::Input("saddle requires --m-hat".into()))?;
    let eps = config.epsilon.materialize(entry.problem.m)?;
    let probes = default_mu_probe(entry.problem.l);
    let mut results = Vec::new();
    let mut all_found = true;
    for i in 0..entry.problem.m {
        let found = search_saddle_certificate(
            i,
            &point,
            &eps,
            m_hat,
            &entry.problem,
            &entry.candidates,
            false,
        )?;
        match found {
            Some((tau, mu)) => {
                let report = verify_saddle(
                    i,
                    &point,
                    &tau,
                    &mu,
                    &eps,
                    m_hat,
                    &entry.candidates,
                    &probes,
                    false,
                )?;
                results.push(Json::Object(vec![
                    ("objective", Json::Int(i as i64)),
                    ("certified", Json::Bool(true)),
                    ("tau", Json::floats(tau.components())),
                    ("mu", Json::floats(&mu)),
                    ("eps_bar", Json::Float(report.eps_bar)),
                    ("left_ok", Json::Bool(report.left_ok)),
                    ("right_ok", Json::Bool(report.right_ok)),
                    ("slack_ok", Json::Bool(report.slack_ok)),
                    ("right_gap", Json::Float(report.right_gap)),
                ]));
            }
            None => {
                all_found = false;
                results.push(Json::Object(vec![
                    ("objective", Json::Int(i as i64)),
                    ("certified", Json::Bool(false)),
                ]));
            }
        }
    }
    Ok(Outcome { negative: !all_found, results, diagnostics: vec![] })
}

fn run_sequence(config: &RunConfig) -> Result<Outcome> {
    let entry = load_entry(config)?;
    let point = query_point(config, &entry)?
        .ok_or_else(|| Error::Input("sequence requires --point".into()))?;
    let schedule = make_schedule(config.eps0, config.factor, config.count)?;
    let trace = build_kkt_sequence(&entry.problem, &point, &schedule, &entry.candidates)?;
    let limit_ok = verify_limit_kkt(&trace, config.tol)?;
    let mut steps = Vec::new();
    let mut all_certified = true;
    for (k, budget) in trace.schedule.iter().enumerate() {
        let mut fields = vec![
            ("k", Json::Int(k as i64)),
            ("eps", Json::Float(*budget)),
            ("point", point_json(&trace.points[k])),
        ];
        match &trace.reports[k] {
            Some(r) => {
                fields.push(("certified", Json::Bool(true)));
                fields.push(("companion", point_json(&r.companion)));
                fields.push(("residual", Json::Float(r.residual)));
                fields.push(("comp_slack", Json::Float(r.comp_slack)));
            }
            None => {
                all_certified = false;
                fields.push(("certified", Json::Bool(false)));
            }
        }
        steps.push(Json::Object(fields));
    }
    let results = vec![Json::Object(vec![
        ("kind", Json::Str("sequence".into())),
        ("guess_membership", Json::Str(format!("{:?}", trace.guess_membership))),
        ("steps", Json::Array(steps)),
        ("limit", point_json(&trace.limit)),
        ("limit_residual", Json::Float(trace.limit_residual)),
        ("limit_comp_slack", Json::Float(trace.limit_report.comp_slack)),
        ("limit_kkt", Json::Bool(limit_ok)),
    ])];
    Ok(Outcome {
        negative: !(limit_ok && all_certified),
        results,
        diagnostics: vec![],
    })
}

fn run_example() -> Result<Outcome> {
    let entry = registry_instance("paper-discrete")?;
    let set = &entry.candidates;
    let zero = EpsilonVector::zero(3);
    let mut results = Vec::new();
    let mut sizes = Vec::new();
    for m_hat in [2.0, 1.0, 0.99] {
        let members = geoffrion_set(set, m_hat, &zero)?;
        sizes.push(members.len());
        results.push(Json::Object(vec![
            ("kind", Json::Str("proper_set".into())),
            ("m_hat", Json::Float(m_hat)),
            ("member_count", Json::Int(members.len() as i64)),
            (
                "members",
                Json::Array(members.iter().map(point_json).collect()),
            ),
        ]));
    }
    let mut bounds = Vec::new();
    for p in set.iter() {
        let cert = min_m_for_point(p, set, &zero)?;
        bounds.push(cert.minimal_m);
        results.push(Json::Object(vec![
            ("kind", Json::Str("minimal_bound".into())),
            ("point", point_json(p)),
            ("minimal_m", Json::Float(cert.minimal_m)),
        ]));
    }
    // The discrete example's published answer: four proper points at bound
    // two, the three unit vectors at bound one, nothing below one.
    let expected = sizes == [4, 3, 0]
        && bounds.iter().take(3).all(|&b| (b - 1.0).abs() < 1e-12)
        && (bounds[3] - (1.0 + 3.0_f64.sqrt()) / 2.0).abs() < 1e-9;
    Ok(Outcome {
        negative: !expected,
        results,
        diagnostics: if expected {
            vec![]
        } else {
            vec!["computed sets disagree with the published example".into()]
        },
    })
}

// ---------------------------------------------------------------------------
// Report assembly and writing
// ---------------------------------------------------------------------------

pub const SCHEMA_VERSION: i64 = 1;

fn assemble_report(config: &RunConfig, results: Vec<Json>, diagnostics: Vec<String>) -> Json {
    Json::Object(vec![
        ("schema_version", Json::Int(SCHEMA_VERSION)),
        ("command", Json::Str(config.command.name().into())),
        ("config", config.echo()),
        ("results", Json::Array(results)),
        (
            "diagnostics",
            Json::Array(diagnostics.into_iter().map(Json::Str).collect()),
        ),
    ])
}

/// CSV rendering: candidate rows (`x1..xn,f1..fm`) for set reports, which
/// round-trips through the candidate reader; `key,value` rows otherwise.
fn render_csv(results: &[Json]) -> String {
    let mut out = String::new();
    fn find_points(v: &Json, rows: &mut Vec<(Vec<f64>, Vec<f64>)>) {
        match v {
            Json::Object(fields) => {
                let mut x = None;
                let mut f = None;
                for (k, val) in fields {
                    match (*k, val) {
                        ("x", Json::Array(items)) => {
                            x = Some(
                                items
                                    .iter()
                                    .filter_map(|j| match j {
                                        Json::Float(v) => Some(*v),
                                        _ => None,
                                    })
                                    .collect::<Vec<f64>>(),
                            )
                        }
                        ("f", Json::Array(items)) => {
                            f = Some(
                                items
                                    .iter()
                                    .filter_map(|j| match j {
                                        Json::Float(v) => Some(*v),
                                        _ => None,
                                    })
                                    .collect::<Vec<f64>>(),
                            )
                        }
                        _ => {}
                    }
                }
                if let (Some(x), Some(f)) = (x, f) {
                    rows.push((x, f));
                }
                for (_, val) in fields {
                    find_points(val, rows);
                }
            }
            Json::Array(items) => {
                for item in items {
                    find_points(item, rows);
                }
            }
            _ => {}
        }
    }
    let mut point_rows: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    for r in results {
        find_points(r, &mut point_rows);
    }
    if point_rows.is_empty() {
        out.push_str("key,value\n");
        for (i, r) in results.iter().enumerate() {
            let _ = writeln!(out, "result{i},\"{}\"", r.render().replace('"', "\"\""));
        }
        return out;
    }
    point_rows.sort_by(|a, b| {
        a.0.iter()
            .zip(&b.0)
            .find_map(|(u, v)| {
                let c = u.total_cmp(v);
                (c != std::cmp::Ordering::Equal).then_some(c)
            })
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    point_rows.dedup_by(|a, b| a.0 == b.0);
    let n = point_rows[0].0.len();
    let m = point_rows[0].1.len();
    let mut header: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    header.extend((1..=m).map(|i| format!("f{i}")));
    out.push_str(&header.join(","));
    out.push('\n');
    for (x, f) in &point_rows {
        let cells: Vec<String> =
            x.iter().chain(f.iter()).map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn resolve_output_path(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) => PathBuf::from(dir).join(path),
        None => path.to_path_buf(),
    }
}

/// Executes the configured pipeline, writes the report, and returns the
/// process exit code together with the rendered report text.
pub fn run(config: &RunConfig) -> (i32, String) {
    let (code, report) = match execute(config) {
        Ok(outcome) => {
            let rendered = match config.output_format {
                OutputFormat::Json => {
                    assemble_report(config, outcome.results, outcome.diagnostics).render()
                }
                OutputFormat::Csv => render_csv(&outcome.results),
            };
            (if outcome.negative { 1 } else { 0 }, rendered)
        }
        Err(err) => {
            let report = assemble_report(
                config,
                vec![Json::Object(vec![
                    ("kind", Json::Str("error".into())),
                    ("message", Json::Str(err.to_string())),
                ])],
                vec![err.to_string()],
            );
            (err.exit_code(), report.render())
        }
    };
    if let Some(path) = &config.output_path {
        let target = resolve_output_path(path);
        if let Err(io_err) = std::fs::write(&target, &report) {
            eprintln!("failed to write report to {}: {io_err}", target.display());
            return (2, report);
        }
    }
    (code, report)
}
