//! Modified approximate KKT membership, KKT residuals via constrained
//! min-norm multiplier estimation, and constraint qualification checks.
//!
//! The residual at `x` is the smallest attainable norm of
//! `sum_i lambda_i u_i + sum_r mu_r v_r` over admissible multipliers and
//! subgradient generators, with `lambda` nonnegative of unit Euclidean
//! norm and `mu` nonnegative. Constraints enter only where they are active
//! or violated at the evaluation point; a multiplier on a strictly
//! satisfied constraint would break the complementarity slack as the
//! budget shrinks, so those columns are excluded up front.

use crate::error::{Error, Result};
use crate::numerics::{self, min_norm, MinNormProblem};
use crate::problem::{
    CandidatePoint, CandidateSet, ProblemInstance, ACTIVITY_TOL, FEASIBILITY_TOL,
};

/// Multiplier pair: `lambda` on the nonnegative unit sphere, `mu >= 0`.
#[derive(Debug, Clone)]
pub struct Multipliers {
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
}

/// Chosen subgradients behind a residual report, one per objective and one
/// per constraint that carried a multiplier column.
#[derive(Debug, Clone)]
pub struct SelectedGenerators {
    pub objectives: Vec<Vec<f64>>,
    pub constraints: Vec<Option<Vec<f64>>>,
}

/// A certified multiplier combination at a point.
#[derive(Debug, Clone)]
pub struct KKTReport {
    /// Query point.
    pub x: CandidatePoint,
    /// Point where gradients were taken (equals `x` for plain residuals).
    pub companion: CandidatePoint,
    pub multipliers: Multipliers,
    /// Norm of the reported multiplier combination.
    pub residual: f64,
    /// `sum_r mu_r g_r(x)` at the query point.
    pub comp_slack: f64,
    pub selected_generators: SelectedGenerators,
    /// The approximation budget this report certifies.
    pub epsilon: f64,
}

const KERNEL_TOL: f64 = 1e-10;

/// Minimizes the multiplier-combination norm at `x`.
///
/// Piecewise oracles contribute one column per active-piece gradient; the
/// kernel then optimizes jointly over convex combinations, which keeps the
/// residual a true minimum over the Clarke subdifferentials.
pub fn kkt_residual(x: &CandidatePoint, problem: &ProblemInstance) -> Result<KKTReport> {
    if x.x.len() != problem.n {
        return Err(Error::Input("point dimension does not match instance".into()));
    }
    // Objective generator columns (simplex block).
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut objective_spans: Vec<(usize, usize)> = Vec::new();
    for o in &problem.objectives {
        let gens = o.form.clarke_generators(&x.x);
        let start = columns.len();
        columns.extend(gens);
        objective_spans.push((start, columns.len()));
    }
    let simplex_len = columns.len();
    // Constraint generator columns (nonnegative block) for constraints
    // active or violated at x.
    let mut constraint_spans: Vec<Option<(usize, usize)>> = Vec::new();
    for (r, c) in problem.constraints.iter().enumerate() {
        if x.gvals[r] >= -ACTIVITY_TOL {
            let gens = c.form.clarke_generators(&x.x);
            let start = columns.len();
            columns.extend(gens);
            constraint_spans.push(Some((start, columns.len())));
        } else {
            constraint_spans.push(None);
        }
    }

    let kernel_problem = MinNormProblem::new(columns.clone(), simplex_len)?;
    let solution = min_norm(&kernel_problem, KERNEL_TOL)?;
    if !solution.converged {
        return Err(Error::Numerical(format!(
            "min-norm kernel failed to converge after {} iterations; best residual {:.16e} with coefficients {:?}",
            solution.iterations, solution.residual, solution.coefficients
        )));
    }
    let coeffs = &solution.coefficients;

    // Assemble per-function multipliers and effective generators.
    let mut lambda = Vec::with_capacity(problem.m);
    let mut objective_gens = Vec::with_capacity(problem.m);
    for (i, &(start, end)) in objective_spans.iter().enumerate() {
        let weight: f64 = coeffs[start..end].iter().sum();
        lambda.push(weight.max(0.0));
        if weight > 1e-15 {
            let mut combo = vec![0.0; problem.n];
            for (k, col) in columns.iter().enumerate().take(end).skip(start) {
                for (c, v) in combo.iter_mut().zip(col) {
                    *c += coeffs[k] / weight * v;
                }
            }
            objective_gens.push(combo);
        } else {
            objective_gens.push(problem.objectives[i].form.gradient(&x.x));
        }
    }
    let mut mu = vec![0.0; problem.l];
    let mut constraint_gens: Vec<Option<Vec<f64>>> = vec![None; problem.l];
    for (r, span) in constraint_spans.iter().enumerate() {
        if let Some((start, end)) = span {
            let weight: f64 = coeffs[*start..*end].iter().sum();
            mu[r] = weight.max(0.0);
            if weight > 1e-15 {
                let mut combo = vec![0.0; problem.n];
                for (k, col) in columns.iter().enumerate().take(*end).skip(*start) {
                    for (c, v) in combo.iter_mut().zip(col) {
                        *c += coeffs[k] / weight * v;
                    }
                }
                constraint_gens[r] = Some(combo);
            }
        }
    }

    // Rescale from the simplex to the unit sphere; the zero-residual set is
    // unchanged and the distortion is at most sqrt(m).
    let lambda_norm = numerics::norm2(&lambda);
    debug_assert!(lambda_norm > 0.0);
    let scale = 1.0 / lambda_norm;
    for v in lambda.iter_mut() {
        *v *= scale;
    }
    for v in mu.iter_mut() {
        *v *= scale;
    }

    // Recompute the residual from the reported multipliers and generators.
    let mut combination = vec![0.0; problem.n];
    for (w, gen) in lambda.iter().zip(&objective_gens) {
        for (c, v) in combination.iter_mut().zip(gen) {
            *c += w * v;
        }
    }
    for (w, gen) in mu.iter().zip(&constraint_gens) {
        if let Some(gen) = gen {
            for (c, v) in combination.iter_mut().zip(gen) {
                *c += w * v;
            }
        }
    }
    let residual = numerics::norm2(&combination);
    let comp_slack = numerics::dot(&mu, &x.gvals);

    Ok(KKTReport {
        x: x.clone(),
        companion: x.clone(),
        multipliers: Multipliers { lambda, mu },
        residual,
        comp_slack,
        selected_generators: SelectedGenerators {
            objectives: objective_gens,
            constraints: constraint_gens,
        },
        epsilon: residual * residual,
    })
}

/// Searches for a companion `x_eps` in the set within `sqrt(eps)` of `x0`
/// whose residual is at most `sqrt(eps)` and whose multipliers keep the
/// complementarity slack at `x0` above `-eps`. Gradients are taken at the
/// companion, the slack at the query point, exactly as the membership
/// definition asymmetrically demands.
pub fn is_modified_eps_kkt(
    x0: &CandidatePoint,
    eps: f64,
    problem: &ProblemInstance,
    search: &CandidateSet,
) -> Result<Option<KKTReport>> {
    if !(eps >= 0.0) {
        return Err(Error::Input("eps must be nonnegative".into()));
    }
    let radius = eps.sqrt();
    let mut candidates: Vec<(f64, usize)> = search
        .iter()
        .enumerate()
        .filter_map(|(idx, p)| {
            let d = p.distance_to(x0);
            (d <= radius).then_some((d, idx))
        })
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut best: Option<(f64, f64, KKTReport)> = None;
    for (d, idx) in candidates {
        let companion = &search.points[idx];
        let report = kkt_residual(companion, problem)?;
        if report.residual > radius {
            continue;
        }
        let slack_at_x0 = numerics::dot(&report.multipliers.mu, &x0.gvals);
        if slack_at_x0 < -eps {
            continue;
        }
        let better = match &best {
            None => true,
            Some((br, bd, _)) => {
                report.residual < br - 1e-15 || (report.residual <= br + 1e-15 && d < *bd)
            }
        };
        if better {
            best = Some((
                report.residual,
                d,
                KKTReport {
                    x: x0.clone(),
                    companion: companion.clone(),
                    comp_slack: slack_at_x0,
                    epsilon: eps,
                    ..report
                },
            ));
        }
    }
    Ok(best.map(|(_, _, report)| report))
}

/// Looks for a Slater point: all constraints strictly below `-1e-9`.
pub fn check_scq(
    problem: &ProblemInstance,
    set: &CandidateSet,
) -> Result<Option<CandidatePoint>> {
    if problem.l == 0 {
        return Err(Error::NotApplicable(
            "instance has no inequality constraints".into(),
        ));
    }
    Ok(set
        .iter()
        .find(|p| p.gvals.iter().all(|&g| g < -FEASIBILITY_TOL))
        .cloned())
}

/// Basic constraint qualification at `x`: no nonnegative unit combination
/// of active-constraint subgradients vanishes. Returns the qualification
/// verdict and the attained margin (infinite when nothing is active).
pub fn check_bcq(x: &CandidatePoint, problem: &ProblemInstance) -> Result<(bool, f64)> {
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut spans: Vec<(usize, usize)> = Vec::new();
    for (r, c) in problem.constraints.iter().enumerate() {
        if x.gvals[r].abs() <= ACTIVITY_TOL {
            let gens = c.form.clarke_generators(&x.x);
            let start = columns.len();
            columns.extend(gens);
            spans.push((start, columns.len()));
        }
    }
    if columns.is_empty() {
        return Ok((true, f64::INFINITY));
    }
    let simplex_len = columns.len();
    let kernel_problem = MinNormProblem::new(columns, simplex_len)?;
    let solution = min_norm(&kernel_problem, KERNEL_TOL)?;
    let p: Vec<f64> = spans
        .iter()
        .map(|&(s, e)| solution.coefficients[s..e].iter().sum::<f64>().max(0.0))
        .collect();
    let p_norm = numerics::norm2(&p);
    if p_norm <= 0.0 {
        return Err(Error::Numerical("bcq kernel produced zero multipliers".into()));
    }
    let margin = solution.residual / p_norm;
    if margin > 1e-9 {
        Ok((true, margin))
    } else {
        Ok((false, 0.0))
    }
}
