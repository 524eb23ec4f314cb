//! The per-objective Lagrangian with a preset trade-off bound, saddle-point
//! verification, epsilon-subdifferential membership, and the derived
//! epsilon-KKT conditions.
//!
//! For objective `i`, simplex weights `tau` and nonnegative `mu`:
//!
//! ```text
//! L_i(x, tau, mu) = f_i(x) + sum_{j != i} tau_j * M * f_j(x) + sum_r mu_r * g_r(x)
//! ```
//!
//! A proper point admits multipliers making `x0` an approximate
//! unconstrained minimizer of every `L_i` with complementarity slack
//! bounded below; conversely such certificates force properness at the
//! inflated bound `(1 + M)(m - 1)` and doubled budget.

use crate::error::{Error, Result};
use crate::numerics::{self, min_norm, MinNormProblem};
use crate::problem::{
    CandidatePoint, CandidateSet, EpsilonVector, FunctionOracle, ProblemInstance, ScalarOracle,
    SmoothFn, ACTIVITY_TOL,
};

/// A point of the unit simplex: entries in [0, 1] summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexVector {
    tau: Vec<f64>,
}

impl SimplexVector {
    pub fn new(tau: Vec<f64>) -> Result<Self> {
        if tau.is_empty() {
            return Err(Error::Input("simplex vector cannot be empty".into()));
        }
        if tau.iter().any(|&t| !(-1e-12..=1.0 + 1e-12).contains(&t)) {
            return Err(Error::Input("simplex entries must lie in [0, 1]".into()));
        }
        let sum: f64 = tau.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Input(format!(
                "simplex entries sum to {sum}, expected 1"
            )));
        }
        Ok(SimplexVector { tau })
    }

    /// The vertex concentrated at index `i`.
    pub fn vertex(i: usize, m: usize) -> Self {
        let mut tau = vec![0.0; m];
        tau[i] = 1.0;
        SimplexVector { tau }
    }

    pub fn components(&self) -> &[f64] {
        &self.tau
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn get(&self, j: usize) -> f64 {
        self.tau[j]
    }
}

fn validate_mu(mu: &[f64], l: usize) -> Result<()> {
    if mu.len() != l {
        return Err(Error::Input(format!(
            "mu has {} entries, expected {l}",
            mu.len()
        )));
    }
    if mu.iter().any(|&v| !(v >= 0.0)) {
        return Err(Error::Input("mu components must be nonnegative".into()));
    }
    Ok(())
}

/// Evaluates the `(M, i)`-Lagrangian from the point's cached values. The
/// `tau_i` entry contributes nothing: the weighted sum skips `j = i`.
pub fn lagrangian_value(
    i: usize,
    m_hat: f64,
    x: &CandidatePoint,
    tau: &SimplexVector,
    mu: &[f64],
) -> Result<f64> {
    let m = x.fvals.len();
    if i >= m || tau.len() != m {
        return Err(Error::Input("objective index or tau dimension invalid".into()));
    }
    validate_mu(mu, x.gvals.len())?;
    let mut value = x.fvals[i];
    for j in 0..m {
        if j != i {
            value += tau.get(j) * m_hat * x.fvals[j];
        }
    }
    value += numerics::dot(mu, &x.gvals);
    Ok(value)
}

/// The inflated budget `eps_i + sum_{j != i} tau_j * M * eps_j`.
pub fn eps_bar(i: usize, eps: &EpsilonVector, tau: &SimplexVector, m_hat: f64) -> f64 {
    let mut out = eps.get(i);
    for j in 0..eps.len() {
        if j != i {
            out += tau.get(j) * m_hat * eps.get(j);
        }
    }
    out
}

/// Outcome of a saddle verification for one objective.
#[derive(Debug, Clone)]
pub struct SaddleReport {
    pub objective: usize,
    pub point: CandidatePoint,
    pub tau: SimplexVector,
    pub mu: Vec<f64>,
    /// The inflated budget of the theorem form, recomputable from its formula.
    pub eps_bar: f64,
    /// Whether the plain `eps_i` tolerance (remark form) was used instead.
    pub strict_eps: bool,
    /// Left saddle inequality over the mu probes.
    pub left_ok: bool,
    /// Right saddle inequality over the verification set.
    pub right_ok: bool,
    /// Complementarity slack condition at the point.
    pub slack_ok: bool,
    /// `L(x0) - min over the set of L(x)`; the right inequality holds when
    /// this does not exceed the tolerance.
    pub right_gap: f64,
}

/// Checks the two saddle inequalities and the slack condition for one
/// objective over a finite set: with `strict_eps` the plain `eps_i`
/// tolerance is used (remark form), otherwise the inflated `eps_bar`
/// (theorem form).
#[allow(clippy::too_many_arguments)]
pub fn verify_saddle(
    i: usize,
    x0: &CandidatePoint,
    tau: &SimplexVector,
    mu: &[f64],
    eps: &EpsilonVector,
    m_hat: f64,
    set: &CandidateSet,
    mu_probe: &[Vec<f64>],
    strict_eps: bool,
) -> Result<SaddleReport> {
    let l = x0.gvals.len();
    validate_mu(mu, l)?;
    if mu_probe.is_empty() || !mu_probe.iter().any(|p| p.iter().all(|&v| v == 0.0)) {
        return Err(Error::Input(
            "mu probes must be nonempty and include the zero vector".into(),
        ));
    }
    let bar = eps_bar(i, eps, tau, m_hat);
    let tol = if strict_eps { eps.get(i) } else { bar };

    let l_here = lagrangian_value(i, m_hat, x0, tau, mu)?;
    let mut left_ok = true;
    for probe in mu_probe {
        validate_mu(probe, l)?;
        if lagrangian_value(i, m_hat, x0, tau, probe)? - tol > l_here {
            left_ok = false;
            break;
        }
    }
    let mut min_over_set = f64::INFINITY;
    for x in set.iter() {
        min_over_set = min_over_set.min(lagrangian_value(i, m_hat, x, tau, mu)?);
    }
    let right_gap = l_here - min_over_set;
    let right_ok = right_gap <= tol;
    let slack_ok = numerics::dot(mu, &x0.gvals) >= -tol;

    Ok(SaddleReport {
        objective: i,
        point: x0.clone(),
        tau: tau.clone(),
        mu: mu.to_vec(),
        eps_bar: bar,
        strict_eps,
        left_ok,
        right_ok,
        slack_ok,
        right_gap,
    })
}

/// The default probe list for the left saddle inequality: the zero vector
/// and coordinate rays at growing scales. The Lagrangian is linear in `mu`,
/// so violations surface along coordinate directions, and the large scales
/// expose infeasibility of the candidate point.
pub fn default_mu_probe(l: usize) -> Vec<Vec<f64>> {
    let mut probes = vec![vec![0.0; l]];
    for r in 0..l {
        for scale in [1.0, 10.0, 100.0] {
            let mut p = vec![0.0; l];
            p[r] = scale;
            probes.push(p);
        }
    }
    probes
}

/// Verdict of an epsilon-subdifferential membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubdiffVerdict {
    /// Membership decided exactly (conjugate test on a definite quadratic).
    CertifiedYes,
    /// Non-membership decided exactly, or a violating probe point found.
    CertifiedNo,
    /// No probe point violated the defining inequality.
    SampledNoViolation,
}

/// Decides `v in eps-subdifferential of the oracle at x`.
///
/// For a positive-definite quadratic the Fenchel gap
/// `f*(v) + f(x) - <v, x>` is computed in closed form and compared with
/// `eps`, which decides membership exactly. Otherwise the defining
/// inequality is checked at every probe point; one violation certifies
/// non-membership.
pub fn eps_subdiff_contains(
    oracle: &FunctionOracle,
    x: &[f64],
    v: &[f64],
    eps: f64,
    probe: &CandidateSet,
) -> Result<SubdiffVerdict> {
    if !oracle.convex {
        return Err(Error::Precondition(
            "epsilon-subdifferential test requires a convex oracle".into(),
        ));
    }
    if !(eps >= 0.0) {
        return Err(Error::Input("eps must be nonnegative".into()));
    }
    if let Some((matrix, linear, constant)) = oracle.form.quadratic_descriptor() {
        if let Some(factor) = numerics::cholesky(matrix) {
            let shifted: Vec<f64> = v.iter().zip(linear).map(|(a, b)| a - b).collect();
            let solved = numerics::cholesky_solve(&factor, &shifted);
            let conjugate = 0.5 * numerics::dot(&shifted, &solved) - constant;
            let gap = conjugate + oracle.form.value(x) - numerics::dot(v, x);
            return Ok(if gap <= eps {
                SubdiffVerdict::CertifiedYes
            } else {
                SubdiffVerdict::CertifiedNo
            });
        }
    }
    let fx = oracle.form.value(x);
    for y in probe.iter() {
        let lhs = oracle.form.value(&y.x) - fx;
        let rhs = numerics::dot(v, &numerics::sub(&y.x, x)) - eps;
        // Guard against declaring a violation out of 1-ulp rounding noise
        // when the two sides are algebraically equal.
        let guard = 1e-12 * (1.0 + lhs.abs().max(rhs.abs()));
        if lhs < rhs - guard {
            return Ok(SubdiffVerdict::CertifiedNo);
        }
    }
    Ok(SubdiffVerdict::SampledNoViolation)
}

/// Assembles the quadratic data of `L_i` when every participating oracle
/// is affine or quadratic; `None` otherwise.
fn lagrangian_quadratic(
    i: usize,
    m_hat: f64,
    tau: &SimplexVector,
    mu: &[f64],
    problem: &ProblemInstance,
) -> Option<FunctionOracle> {
    let n = problem.n;
    let mut matrix = vec![vec![0.0; n]; n];
    let mut linear = vec![0.0; n];
    let mut constant = 0.0;
    let mut add = |form: &ScalarOracle, weight: f64| -> bool {
        match form {
            ScalarOracle::Smooth(SmoothFn::Affine { coeffs, offset }) => {
                for (t, c) in linear.iter_mut().zip(coeffs) {
                    *t += weight * c;
                }
                constant += weight * offset;
                true
            }
            ScalarOracle::Smooth(SmoothFn::Quadratic { matrix: q, linear: b, constant: c }) => {
                for (rt, rs) in matrix.iter_mut().zip(q) {
                    for (t, s) in rt.iter_mut().zip(rs) {
                        *t += weight * s;
                    }
                }
                for (t, s) in linear.iter_mut().zip(b) {
                    *t += weight * s;
                }
                constant += weight * c;
                true
            }
            ScalarOracle::PiecewiseMax(_) => false,
        }
    };
    if !add(&problem.objectives[i].form, 1.0) {
        return None;
    }
    for j in 0..problem.m {
        if j != i && tau.get(j) != 0.0 && !add(&problem.objectives[j].form, tau.get(j) * m_hat) {
            return None;
        }
    }
    for (r, c) in problem.constraints.iter().enumerate() {
        if mu[r] != 0.0 && !add(&c.form, mu[r]) {
            return None;
        }
    }
    Some(FunctionOracle::quadratic(matrix, linear, constant))
}

/// Checks the epsilon-subdifferential KKT pair for a full certificate
/// family, one `(tau, mu)` per objective.
///
/// The slack condition is checked exactly per objective. The inclusion
/// `0 in sum_i d_{eps_bar_i} L_i(x0)` is verified through its sound
/// consequences: first the per-term conjugate shortcut (each `L_i` is an
/// exactly decidable quadratic and `0` is in every term), then the
/// aggregate relaxation that `x0` minimizes `sum_i L_i` over the set up to
/// `sum_i eps_bar_i`.
pub fn verify_eps_kkt(
    x0: &CandidatePoint,
    certs: &[(SimplexVector, Vec<f64>)],
    eps: &EpsilonVector,
    m_hat: f64,
    set: &CandidateSet,
    problem: Option<&ProblemInstance>,
) -> Result<bool> {
    let m = x0.fvals.len();
    if certs.len() != m {
        return Err(Error::Input(format!(
            "expected {m} certificates, got {}",
            certs.len()
        )));
    }
    let mut bars = Vec::with_capacity(m);
    for (i, (tau, mu)) in certs.iter().enumerate() {
        validate_mu(mu, x0.gvals.len())?;
        let bar = eps_bar(i, eps, tau, m_hat);
        // Condition (B): complementarity slack per objective.
        if numerics::dot(mu, &x0.gvals) < -bar {
            return Ok(false);
        }
        bars.push(bar);
    }

    // Exact per-term shortcut on all-quadratic instances: zero in every
    // term's epsilon-subdifferential implies the inclusion with the zero
    // decomposition.
    if let Some(problem) = problem {
        let zero = vec![0.0; problem.n];
        let empty = CandidateSet {
            points: vec![],
            provenance: crate::problem::Provenance::ExplicitList,
        };
        let mut all_yes = true;
        for (i, (tau, mu)) in certs.iter().enumerate() {
            let Some(oracle) = lagrangian_quadratic(i, m_hat, tau, mu, problem) else {
                all_yes = false;
                break;
            };
            match eps_subdiff_contains(&oracle, &x0.x, &zero, bars[i], &empty) {
                Ok(SubdiffVerdict::CertifiedYes) => {}
                _ => {
                    all_yes = false;
                    break;
                }
            }
        }
        if all_yes {
            return Ok(true);
        }
    }

    // Aggregate relaxation: x0 approximately minimizes the summed
    // Lagrangian over the verification set.
    let total = |p: &CandidatePoint| -> Result<f64> {
        let mut acc = 0.0;
        for (i, (tau, mu)) in certs.iter().enumerate() {
            acc += lagrangian_value(i, m_hat, p, tau, mu)?;
        }
        Ok(acc)
    };
    let budget: f64 = bars.iter().sum();
    let here = total(x0)?;
    let mut min_over_set = f64::INFINITY;
    for x in set.iter() {
        min_over_set = min_over_set.min(total(x)?);
    }
    Ok(here <= min_over_set + budget)
}

/// Enumerates the simplex at a fixed resolution (entries are multiples of
/// `1/steps`).
fn simplex_grid(m: usize, steps: usize) -> Vec<SimplexVector> {
    let mut out = Vec::new();
    let mut current = vec![0usize; m];
    fn recurse(
        slot: usize,
        remaining: usize,
        steps: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<SimplexVector>,
    ) {
        if slot + 1 == current.len() {
            current[slot] = remaining;
            let tau: Vec<f64> = current.iter().map(|&k| k as f64 / steps as f64).collect();
            out.push(SimplexVector::new(tau).expect("grid point is on the simplex"));
            return;
        }
        for k in 0..=remaining {
            current[slot] = k;
            recurse(slot + 1, remaining - k, steps, current, out);
        }
    }
    recurse(0, steps, steps, &mut current, &mut out);
    out
}

/// Searches for a certificate `(tau, mu)` passing all three saddle checks
/// for objective `i`: `tau` ranges over the simplex at resolution 0.05 and
/// `mu` comes from the min-norm kernel applied to the stationarity system
/// at `x0` over the constraints active there.
#[allow(clippy::too_many_arguments)]
pub fn search_saddle_certificate(
    i: usize,
    x0: &CandidatePoint,
    eps: &EpsilonVector,
    m_hat: f64,
    problem: &ProblemInstance,
    set: &CandidateSet,
    strict_eps: bool,
) -> Result<Option<(SimplexVector, Vec<f64>)>> {
    if problem.m > 3 {
        return Err(Error::Input(
            "certificate search enumerates the simplex only up to three objectives".into(),
        ));
    }
    let probes = default_mu_probe(problem.l);
    let active: Vec<usize> = (0..problem.l)
        .filter(|&r| x0.gvals[r].abs() <= ACTIVITY_TOL)
        .collect();
    for tau in simplex_grid(problem.m, 20) {
        // Direction the constraint multipliers must cancel.
        let mut target = problem.objectives[i].form.gradient(&x0.x);
        for j in 0..problem.m {
            if j != i {
                let g = problem.objectives[j].form.gradient(&x0.x);
                for (t, gi) in target.iter_mut().zip(g) {
                    *t += tau.get(j) * m_hat * gi;
                }
            }
        }
        let mut mu = vec![0.0; problem.l];
        if !active.is_empty() {
            let mut columns = vec![target.clone()];
            for &r in &active {
                columns.push(problem.constraints[r].form.gradient(&x0.x));
            }
            let kernel = MinNormProblem::new(columns, 1)?;
            let solution = min_norm(&kernel, 1e-10)?;
            for (slot, &r) in active.iter().enumerate() {
                mu[r] = solution.coefficients[1 + slot].max(0.0);
            }
        }
        let report = verify_saddle(i, x0, &tau, &mu, eps, m_hat, set, &probes, strict_eps)?;
        if report.left_ok && report.right_ok && report.slack_ok {
            return Ok(Some((tau, mu)));
        }
    }
    Ok(None)
}
