//! Problem instances, scalar oracles, and finite candidate sets.
//!
//! An instance bundles objective and constraint oracles together with the
//! dimensions and an optional box used for grid generation. All set-level
//! certification in this crate happens on finite candidate sets: explicit
//! lists, feasible box grids, or seeded samples.

use std::io::Read;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::numerics;

/// Feasibility tolerance on constraint values: `g_r(x) <= FEASIBILITY_TOL`
/// counts as feasible.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Coordinate tolerance below which two candidate points count as duplicates.
pub const DUPLICATE_TOL: f64 = 1e-12;
/// Constraint activity tolerance used by multiplier and qualification checks.
pub const ACTIVITY_TOL: f64 = 1e-6;
/// A piece of a piecewise-max oracle counts as active within this gap of the max.
const PIECE_ACTIVE_TOL: f64 = 1e-9;

// ---------------------------------------------------------------------------
// Scalar oracles
// ---------------------------------------------------------------------------

/// A smooth scalar function with an analytic gradient.
#[derive(Debug, Clone, PartialEq)]
pub enum SmoothFn {
    /// `a . x + b`
    Affine { coeffs: Vec<f64>, offset: f64 },
    /// `0.5 x' Q x + b . x + c` with `Q` symmetric.
    Quadratic { matrix: Vec<Vec<f64>>, linear: Vec<f64>, constant: f64 },
}

impl SmoothFn {
    pub fn dim(&self) -> usize {
        match self {
            SmoothFn::Affine { coeffs, .. } => coeffs.len(),
            SmoothFn::Quadratic { linear, .. } => linear.len(),
        }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        match self {
            SmoothFn::Affine { coeffs, offset } => numerics::dot(coeffs, x) + offset,
            SmoothFn::Quadratic { matrix, linear, constant } => {
                let mut q = 0.0;
                for (row, &xi) in matrix.iter().zip(x) {
                    q += xi * numerics::dot(row, x);
                }
                0.5 * q + numerics::dot(linear, x) + constant
            }
        }
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        match self {
            SmoothFn::Affine { coeffs, .. } => coeffs.clone(),
            SmoothFn::Quadratic { matrix, linear, .. } => matrix
                .iter()
                .zip(linear)
                .map(|(row, &b)| numerics::dot(row, x) + b)
                .collect(),
        }
    }

    fn is_convex(&self) -> bool {
        match self {
            SmoothFn::Affine { .. } => true,
            SmoothFn::Quadratic { matrix, .. } => {
                let zero = matrix.iter().all(|row| row.iter().all(|&v| v == 0.0));
                zero || numerics::cholesky(matrix).is_some()
            }
        }
    }
}

/// A scalar oracle: either smooth, or a pointwise maximum of smooth pieces.
/// For the latter the Clarke subdifferential at a point is the convex hull
/// of the gradients of the active pieces, exposed as a finite generator list.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarOracle {
    Smooth(SmoothFn),
    PiecewiseMax(Vec<SmoothFn>),
}

impl ScalarOracle {
    pub fn dim(&self) -> usize {
        match self {
            ScalarOracle::Smooth(f) => f.dim(),
            ScalarOracle::PiecewiseMax(pieces) => pieces[0].dim(),
        }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        match self {
            ScalarOracle::Smooth(f) => f.value(x),
            ScalarOracle::PiecewiseMax(pieces) => pieces
                .iter()
                .map(|p| p.value(x))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// A single (sub)gradient: the analytic gradient for smooth oracles, the
    /// gradient of the first maximal piece otherwise.
    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        match self {
            ScalarOracle::Smooth(f) => f.gradient(x),
            ScalarOracle::PiecewiseMax(pieces) => {
                let vmax = self.value(x);
                pieces
                    .iter()
                    .find(|p| p.value(x) >= vmax - PIECE_ACTIVE_TOL)
                    .expect("piecewise oracle has at least one piece")
                    .gradient(x)
            }
        }
    }

    /// Generators of the Clarke subdifferential at `x`: one gradient for
    /// smooth oracles, the active-piece gradients otherwise.
    pub fn clarke_generators(&self, x: &[f64]) -> Vec<Vec<f64>> {
        match self {
            ScalarOracle::Smooth(f) => vec![f.gradient(x)],
            ScalarOracle::PiecewiseMax(pieces) => {
                let vmax = self.value(x);
                pieces
                    .iter()
                    .filter(|p| p.value(x) >= vmax - PIECE_ACTIVE_TOL)
                    .map(|p| p.gradient(x))
                    .collect()
            }
        }
    }

    /// The `(Q, b, c)` data when this oracle is a plain quadratic.
    pub fn quadratic_descriptor(&self) -> Option<(&Vec<Vec<f64>>, &Vec<f64>, f64)> {
        match self {
            ScalarOracle::Smooth(SmoothFn::Quadratic { matrix, linear, constant }) => {
                Some((matrix, linear, *constant))
            }
            _ => None,
        }
    }

    fn is_convex(&self) -> bool {
        match self {
            ScalarOracle::Smooth(f) => f.is_convex(),
            ScalarOracle::PiecewiseMax(pieces) => pieces.iter().all(|p| p.is_convex()),
        }
    }
}

/// An oracle together with its analytic-class flags.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionOracle {
    pub form: ScalarOracle,
    /// True when the function is convex (affine, positive-definite quadratic,
    /// or a max of such pieces). Conservative: a convex function this check
    /// cannot certify is flagged false and handled by grid fallbacks.
    pub convex: bool,
    /// All supported forms are locally Lipschitz.
    pub lipschitz: bool,
}

impl FunctionOracle {
    pub fn new(form: ScalarOracle) -> Self {
        let convex = form.is_convex();
        FunctionOracle { form, convex, lipschitz: true }
    }

    pub fn affine(coeffs: Vec<f64>, offset: f64) -> Self {
        Self::new(ScalarOracle::Smooth(SmoothFn::Affine { coeffs, offset }))
    }

    pub fn quadratic(matrix: Vec<Vec<f64>>, linear: Vec<f64>, constant: f64) -> Self {
        Self::new(ScalarOracle::Smooth(SmoothFn::Quadratic { matrix, linear, constant }))
    }

    /// `||x - center||^2` as a quadratic oracle.
    pub fn squared_distance(center: &[f64]) -> Self {
        let n = center.len();
        let mut matrix = vec![vec![0.0; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 2.0;
        }
        let linear: Vec<f64> = center.iter().map(|&c| -2.0 * c).collect();
        let constant = numerics::dot(center, center);
        Self::quadratic(matrix, linear, constant)
    }
}

// ---------------------------------------------------------------------------
// Problem instances
// ---------------------------------------------------------------------------

/// A multiobjective instance: minimize `f(x)` subject to `g(x) <= 0`, with
/// an optional box used for grid and sample generation.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub objectives: Vec<FunctionOracle>,
    pub constraints: Vec<FunctionOracle>,
    pub box_bounds: Option<Vec<(f64, f64)>>,
    /// Resolution used when a solver falls back to exhaustive grid search.
    pub grid_resolution: usize,
}

impl ProblemInstance {
    pub fn new(
        name: impl Into<String>,
        n: usize,
        objectives: Vec<FunctionOracle>,
        constraints: Vec<FunctionOracle>,
        box_bounds: Option<Vec<(f64, f64)>>,
    ) -> Result<Self> {
        if n == 0 || objectives.is_empty() {
            return Err(Error::Input("instance needs n >= 1 and m >= 1".into()));
        }
        for (idx, o) in objectives.iter().enumerate() {
            if o.form.dim() != n {
                return Err(Error::Input(format!("objective {idx} has wrong dimension")));
            }
        }
        for (idx, c) in constraints.iter().enumerate() {
            if c.form.dim() != n {
                return Err(Error::Input(format!("constraint {idx} has wrong dimension")));
            }
        }
        if let Some(b) = &box_bounds {
            if b.len() != n || b.iter().any(|(lo, hi)| lo >= hi) {
                return Err(Error::Input("box bounds must be n proper intervals".into()));
            }
        }
        Ok(ProblemInstance {
            name: name.into(),
            n,
            m: objectives.len(),
            l: constraints.len(),
            objectives,
            constraints,
            box_bounds,
            grid_resolution: 41,
        })
    }

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.grid_resolution = resolution;
        self
    }

    pub fn all_objectives_convex(&self) -> bool {
        self.objectives.iter().all(|o| o.convex)
    }

    pub fn all_constraints_convex(&self) -> bool {
        self.constraints.iter().all(|c| c.convex)
    }
}

// ---------------------------------------------------------------------------
// Candidate points and sets
// ---------------------------------------------------------------------------

/// A decision point with cached objective and constraint values.
#[derive(Debug, Clone)]
pub struct CandidatePoint {
    pub x: Vec<f64>,
    pub fvals: Vec<f64>,
    pub gvals: Vec<f64>,
    pub feasible: bool,
}

impl CandidatePoint {
    pub fn distance_to(&self, other: &CandidatePoint) -> f64 {
        numerics::dist(&self.x, &other.x)
    }

    pub fn coincides_with(&self, other: &CandidatePoint) -> bool {
        self.x.len() == other.x.len()
            && self
                .x
                .iter()
                .zip(&other.x)
                .all(|(a, b)| (a - b).abs() <= DUPLICATE_TOL)
    }
}

/// Where a candidate set came from, with its generation parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    ExplicitList,
    Grid { resolution: usize },
    Sample { count: usize, seed: u64 },
}

/// An ordered, duplicate-free list of evaluated candidate points.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    pub points: Vec<CandidatePoint>,
    pub provenance: Provenance,
}

impl CandidateSet {
    /// Builds a set, rejecting duplicates within coordinate tolerance.
    pub fn new(points: Vec<CandidatePoint>, provenance: Provenance) -> Result<Self> {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            points[a]
                .x
                .iter()
                .zip(&points[b].x)
                .find_map(|(u, v)| {
                    let c = u.total_cmp(v);
                    (c != std::cmp::Ordering::Equal).then_some(c)
                })
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        for w in order.windows(2) {
            if points[w[0]].coincides_with(&points[w[1]]) {
                return Err(Error::Input(format!(
                    "duplicate candidate points at indices {} and {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(CandidateSet { points, provenance })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CandidatePoint> {
        self.points.iter()
    }

    /// A subset preserving input order and provenance; used by filters.
    pub fn retain_indices(&self, keep: &[usize]) -> CandidateSet {
        CandidateSet {
            points: keep.iter().map(|&i| self.points[i].clone()).collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// Appends an extra evaluated point (e.g. a solver output) to an existing
    /// set, unless it coincides with a member.
    pub fn with_point(&self, point: CandidatePoint) -> CandidateSet {
        let mut out = self.clone();
        if !out.points.iter().any(|p| p.coincides_with(&point)) {
            out.points.push(point);
        }
        out
    }
}

/// A componentwise-nonnegative approximation budget, one entry per objective.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonVector {
    eps: Vec<f64>,
}

impl EpsilonVector {
    pub fn new(eps: Vec<f64>) -> Result<Self> {
        if eps.iter().any(|&e| !(e >= 0.0)) {
            return Err(Error::Input("epsilon components must be nonnegative".into()));
        }
        Ok(EpsilonVector { eps })
    }

    pub fn zero(m: usize) -> Self {
        EpsilonVector { eps: vec![0.0; m] }
    }

    /// The uniform form `eps * (1, ..., 1)`.
    pub fn uniform(eps: f64, m: usize) -> Result<Self> {
        Self::new(vec![eps; m])
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    pub fn components(&self) -> &[f64] {
        &self.eps
    }

    pub fn get(&self, i: usize) -> f64 {
        self.eps[i]
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &EpsilonVector) -> bool {
        self.eps.len() == other.eps.len()
            && self.eps.iter().zip(&other.eps).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.eps.iter().map(|e| e * factor).collect())
    }
}

// ---------------------------------------------------------------------------
// Evaluation and set construction
// ---------------------------------------------------------------------------

/// Evaluates every oracle at `x` and caches the results.
pub fn evaluate(problem: &ProblemInstance, x: &[f64]) -> Result<CandidatePoint> {
    if x.len() != problem.n {
        return Err(Error::Input(format!(
            "point has dimension {}, instance expects {}",
            x.len(),
            problem.n
        )));
    }
    let mut fvals = Vec::with_capacity(problem.m);
    for (i, o) in problem.objectives.iter().enumerate() {
        let v = o.form.value(x);
        if !v.is_finite() {
            return Err(Error::Evaluation {
                oracle: format!("objective {i}"),
                detail: format!("non-finite value {v} at {x:?}"),
            });
        }
        fvals.push(v);
    }
    let mut gvals = Vec::with_capacity(problem.l);
    for (r, c) in problem.constraints.iter().enumerate() {
        let v = c.form.value(x);
        if !v.is_finite() {
            return Err(Error::Evaluation {
                oracle: format!("constraint {r}"),
                detail: format!("non-finite value {v} at {x:?}"),
            });
        }
        gvals.push(v);
    }
    let feasible = gvals.iter().all(|&g| g <= FEASIBILITY_TOL);
    Ok(CandidatePoint { x: x.to_vec(), fvals, gvals, feasible })
}

/// The feasible subset of the uniform box grid with `resolution` points per
/// axis, in lexicographic coordinate order.
pub fn make_grid(problem: &ProblemInstance, resolution: usize) -> Result<CandidateSet> {
    let bounds = problem
        .box_bounds
        .as_ref()
        .ok_or_else(|| Error::Config("grid generation requires box bounds".into()))?;
    if resolution < 2 {
        return Err(Error::Input("grid resolution must be at least 2".into()));
    }
    let n = problem.n;
    let mut points = Vec::new();
    let mut index = vec![0usize; n];
    loop {
        let x: Vec<f64> = (0..n)
            .map(|d| {
                let (lo, hi) = bounds[d];
                lo + (hi - lo) * index[d] as f64 / (resolution - 1) as f64
            })
            .collect();
        let point = evaluate(problem, &x)?;
        if point.feasible {
            points.push(point);
        }
        // Advance the lexicographic counter (last coordinate fastest).
        let mut d = n;
        loop {
            if d == 0 {
                return CandidateSet::new(points, Provenance::Grid { resolution });
            }
            d -= 1;
            index[d] += 1;
            if index[d] < resolution {
                break;
            }
            index[d] = 0;
        }
    }
}

/// Feasible points sampled uniformly from the box with a fixed seed.
pub fn sample_box(problem: &ProblemInstance, count: usize, seed: u64) -> Result<CandidateSet> {
    use rand::Rng;
    use rand::SeedableRng;
    let bounds = problem
        .box_bounds
        .as_ref()
        .ok_or_else(|| Error::Config("sampling requires box bounds".into()))?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    for _ in 0..count {
        let x: Vec<f64> = bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
        let point = evaluate(problem, &x)?;
        if point.feasible {
            points.push(point);
        }
    }
    CandidateSet::new(points, Provenance::Sample { count, seed })
}

/// Builds an explicit candidate set from raw coordinates.
pub fn explicit_set(problem: &ProblemInstance, xs: &[Vec<f64>]) -> Result<CandidateSet> {
    let points = xs.iter().map(|x| evaluate(problem, x)).collect::<Result<Vec<_>>>()?;
    CandidateSet::new(points, Provenance::ExplicitList)
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// A registered instance together with its default candidate set.
#[derive(Debug, Clone)]
pub struct RegistryEntry {
    pub problem: ProblemInstance,
    pub candidates: CandidateSet,
}

pub fn registry_names() -> Vec<&'static str> {
    vec!["paper-discrete", "biobjective-quadratic", "tri-quadratic"]
}

/// Returns the named built-in instance and its default candidate set.
pub fn registry_instance(name: &str) -> Result<RegistryEntry> {
    match name {
        "paper-discrete" => {
            // Three objectives given by the identity map on four explicit
            // points: the three coordinate unit vectors and the diagonal
            // point (1/sqrt(3), 1/sqrt(3), 1/sqrt(3)).
            let objectives = (0..3)
                .map(|i| {
                    let mut coeffs = vec![0.0; 3];
                    coeffs[i] = 1.0;
                    FunctionOracle::affine(coeffs, 0.0)
                })
                .collect();
            let problem = ProblemInstance::new("paper-discrete", 3, objectives, vec![], None)?;
            let d = 1.0 / 3.0_f64.sqrt();
            let candidates = explicit_set(
                &problem,
                &[
                    vec![0.0, 0.0, 1.0],
                    vec![0.0, 1.0, 0.0],
                    vec![1.0, 0.0, 0.0],
                    vec![d, d, d],
                ],
            )?;
            Ok(RegistryEntry { problem, candidates })
        }
        "biobjective-quadratic" => {
            // f = (x^2, (x-1)^2) with g = (-x, x-1) on the box [-1, 2].
            let objectives = vec![
                FunctionOracle::quadratic(vec![vec![2.0]], vec![0.0], 0.0),
                FunctionOracle::quadratic(vec![vec![2.0]], vec![-2.0], 1.0),
            ];
            let constraints = vec![
                FunctionOracle::affine(vec![-1.0], 0.0),
                FunctionOracle::affine(vec![1.0], -1.0),
            ];
            let problem = ProblemInstance::new(
                "biobjective-quadratic",
                1,
                objectives,
                constraints,
                Some(vec![(-1.0, 2.0)]),
            )?
            .with_resolution(121);
            let candidates = make_grid(&problem, 121)?;
            Ok(RegistryEntry { problem, candidates })
        }
        "tri-quadratic" => {
            // f_i(x) = ||x - c_i||^2 with the centers on the unit circle of
            // the plane, on the box [-1, 2]^2.
            let s = 1.0 / 2.0_f64.sqrt();
            let centers = [vec![1.0, 0.0], vec![0.0, 1.0], vec![s, s]];
            let objectives = centers.iter().map(|c| FunctionOracle::squared_distance(c)).collect();
            let problem = ProblemInstance::new(
                "tri-quadratic",
                2,
                objectives,
                vec![],
                Some(vec![(-1.0, 2.0), (-1.0, 2.0)]),
            )?
            .with_resolution(41);
            let candidates = make_grid(&problem, 41)?;
            Ok(RegistryEntry { problem, candidates })
        }
        other => Err(Error::UnknownInstance {
            name: other.to_string(),
            known: registry_names().iter().map(|s| s.to_string()).collect(),
        }),
    }
}

// ---------------------------------------------------------------------------
// External interfaces: CSV candidate ingestion and JSON instance config
// ---------------------------------------------------------------------------

/// Reads candidates from CSV with header `x1,...,xn` and optional columns
/// `f1,...,fm`. Present objective columns are verified against the oracles;
/// a mismatch beyond 1e-9 rejects the file.
pub fn read_candidates_csv(reader: impl Read, problem: &ProblemInstance) -> Result<CandidateSet> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rd.headers()?.clone();
    let expected_x: Vec<String> = (1..=problem.n).map(|i| format!("x{i}")).collect();
    let expected_f: Vec<String> = (1..=problem.m).map(|i| format!("f{i}")).collect();
    let cols: Vec<&str> = headers.iter().collect();
    let has_f = if cols.len() == problem.n {
        false
    } else if cols.len() == problem.n + problem.m {
        true
    } else {
        return Err(Error::Ingestion(format!(
            "expected {} or {} columns, found {}",
            problem.n,
            problem.n + problem.m,
            cols.len()
        )));
    };
    for (i, want) in expected_x.iter().enumerate() {
        if cols[i] != want {
            return Err(Error::Ingestion(format!(
                "header column {} is `{}`, expected `{}`",
                i + 1,
                cols[i],
                want
            )));
        }
    }
    if has_f {
        for (i, want) in expected_f.iter().enumerate() {
            if cols[problem.n + i] != want {
                return Err(Error::Ingestion(format!(
                    "header column {} is `{}`, expected `{}`",
                    problem.n + i + 1,
                    cols[problem.n + i],
                    want
                )));
            }
        }
    }

    let mut points = Vec::new();
    for (row_idx, record) in rd.records().enumerate() {
        let record = record?;
        let parse = |field: &str| -> Result<f64> {
            field.parse::<f64>().map_err(|_| {
                Error::Ingestion(format!("row {}: cannot parse `{}`", row_idx + 1, field))
            })
        };
        let x: Vec<f64> = record
            .iter()
            .take(problem.n)
            .map(parse)
            .collect::<Result<Vec<_>>>()?;
        let point = evaluate(problem, &x)?;
        if has_f {
            for (i, field) in record.iter().skip(problem.n).enumerate() {
                let claimed = parse(field)?;
                if (claimed - point.fvals[i]).abs() > 1e-9 {
                    return Err(Error::Ingestion(format!(
                        "row {}: column f{} is {} but the oracle gives {}",
                        row_idx + 1,
                        i + 1,
                        claimed,
                        point.fvals[i]
                    )));
                }
            }
        }
        points.push(point);
    }
    CandidateSet::new(points, Provenance::ExplicitList)
}

/// JSON instance configuration: a registry key plus optional overrides.
#[derive(Debug, Clone, Deserialize)]
pub struct InstanceConfig {
    pub instance: String,
    #[serde(default, rename = "box")]
    pub box_bounds: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    pub grid_resolution: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// Loads a registry instance applying the config's overrides; when the box
/// or resolution changes, the candidate set is regenerated as a grid.
pub fn load_instance(config: &InstanceConfig) -> Result<RegistryEntry> {
    let mut entry = registry_instance(&config.instance)?;
    let mut regenerate = false;
    if let Some(b) = &config.box_bounds {
        if b.len() != entry.problem.n || b.iter().any(|(lo, hi)| lo >= hi) {
            return Err(Error::Config("override box must be n proper intervals".into()));
        }
        entry.problem.box_bounds = Some(b.clone());
        regenerate = true;
    }
    if let Some(res) = config.grid_resolution {
        entry.problem.grid_resolution = res;
        regenerate = true;
    }
    if regenerate {
        entry.candidates = make_grid(&entry.problem, entry.problem.grid_resolution)?;
    }
    Ok(entry)
}

pub fn load_instance_json(json: &str) -> Result<RegistryEntry> {
    let config: InstanceConfig = serde_json::from_str(json)?;
    load_instance(&config)
}
