//! The weighted-sum scalar problem `min <s, f(x)>` and its two-way bridge
//! to Geoffrion properness.
//!
//! With strictly positive weights, an approximate minimizer of the scalar
//! problem is proper with trade-off bound `(m-1) max s_i/s_j`; conversely,
//! Gordan certificates of a proper point assemble into weights under which
//! the point is an approximate scalar minimum.

use crate::error::{Error, Result};
use crate::geoffrion::GordanCertificate;
use crate::numerics;
use crate::problem::{evaluate, make_grid, CandidatePoint, CandidateSet, EpsilonVector, ProblemInstance};

/// Strictly positive objective weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    s: Vec<f64>,
}

impl WeightVector {
    pub fn new(s: Vec<f64>) -> Result<Self> {
        if s.is_empty() || s.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::Input(
                "weights must be nonempty and strictly positive".into(),
            ));
        }
        Ok(WeightVector { s })
    }

    pub fn components(&self) -> &[f64] {
        &self.s
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

/// How a scalar solve was carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    ProjectedGradient,
    GridExhaustive,
}

/// Result of minimizing `<s, f(x)>` over the instance box.
#[derive(Debug, Clone)]
pub struct ScalarSolveReport {
    pub minimizer: CandidatePoint,
    pub value: f64,
    pub iterations: usize,
    pub tolerance_met: bool,
    pub method: SolveMethod,
}

/// `sum_i s_i f_i(x)` from the cached objective values.
pub fn weighted_sum_value(s: &WeightVector, x: &CandidatePoint) -> Result<f64> {
    if s.len() != x.fvals.len() {
        return Err(Error::Input(format!(
            "weight dimension {} does not match objective count {}",
            s.len(),
            x.fvals.len()
        )));
    }
    Ok(numerics::dot(s.components(), &x.fvals))
}

const ARMIJO_SIGMA: f64 = 1e-4;
const ARMIJO_SHRINK: f64 = 0.5;
const SOLVE_CAP: usize = 10_000;

fn clamp_to_box(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (xi, &(lo, hi)) in x.iter_mut().zip(bounds) {
        *xi = xi.clamp(lo, hi);
    }
}

/// Minimizes the weighted sum over the instance box: projected gradient
/// with Armijo backtracking when every objective is convex, exhaustive
/// search on the registered grid otherwise.
pub fn solve_weighted_sum(
    problem: &ProblemInstance,
    s: &WeightVector,
    tol: f64,
) -> Result<ScalarSolveReport> {
    if s.len() != problem.m {
        return Err(Error::Input(format!(
            "weight dimension {} does not match objective count {}",
            s.len(),
            problem.m
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Input("tolerance must be positive".into()));
    }
    let bounds = problem
        .box_bounds
        .as_ref()
        .ok_or_else(|| Error::Config("weighted-sum solve requires box bounds".into()))?;

    if !problem.all_objectives_convex() {
        return solve_on_grid(problem, s);
    }

    let objective = |x: &[f64]| -> f64 {
        problem
            .objectives
            .iter()
            .zip(s.components())
            .map(|(o, w)| w * o.form.value(x))
            .sum()
    };
    let gradient = |x: &[f64]| -> Vec<f64> {
        let mut g = vec![0.0; problem.n];
        for (o, w) in problem.objectives.iter().zip(s.components()) {
            for (gi, d) in g.iter_mut().zip(o.form.gradient(x)) {
                *gi += w * d;
            }
        }
        g
    };

    let pg_norm = |x: &[f64], g: &[f64]| -> f64 {
        // Unit-step gradient mapping measures stationarity on the box.
        let mut probe: Vec<f64> = x.iter().zip(g).map(|(xi, gi)| xi - gi).collect();
        clamp_to_box(&mut probe, bounds);
        numerics::dist(x, &probe)
    };
    let finish = |x: &[f64], iterations: usize| -> Result<ScalarSolveReport> {
        let minimizer = evaluate(problem, x)?;
        let value = weighted_sum_value(s, &minimizer)?;
        Ok(ScalarSolveReport {
            minimizer,
            value,
            iterations,
            tolerance_met: true,
            method: SolveMethod::ProjectedGradient,
        })
    };

    let mut x: Vec<f64> = bounds.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect();
    let mut fx = objective(&x);
    let mut iterations = 0;
    let mut best = x.clone();
    let mut best_pg = f64::INFINITY;
    let mut since_progress = 0;
    while iterations < SOLVE_CAP {
        iterations += 1;
        let g = gradient(&x);
        let pg = pg_norm(&x, &g);
        if pg <= tol {
            return finish(&x, iterations);
        }
        if pg < 0.99 * best_pg {
            best_pg = pg;
            best = x.clone();
            since_progress = 0;
        } else {
            // Near the float noise floor Armijo can keep "accepting" cyclic
            // steps without getting any closer to stationarity; hand over
            // to the fixed-step endgame once that happens.
            since_progress += 1;
            if since_progress >= 30 {
                break;
            }
        }
        // Armijo backtracking along the projection arc.
        let mut step = 1.0;
        let mut moved = false;
        while step >= 1e-18 {
            let mut trial: Vec<f64> =
                x.iter().zip(&g).map(|(xi, gi)| xi - step * gi).collect();
            clamp_to_box(&mut trial, bounds);
            if trial == x {
                // The step rounds away entirely; shrinking cannot help.
                break;
            }
            let decrease: f64 = numerics::dot(&g, &numerics::sub(&x, &trial));
            let ft = objective(&trial);
            if ft <= fx - ARMIJO_SIGMA * decrease {
                x = trial;
                fx = ft;
                moved = true;
                break;
            }
            step *= ARMIJO_SHRINK;
        }
        if !moved {
            break;
        }
    }

    // Endgame from the best iterate seen: projected steepest descent with
    // exact Cauchy steps along the projected direction. The directional
    // curvature comes from one extra gradient evaluation, which is exact
    // for the quadratic objectives this path serves, so no function-value
    // comparisons (and none of their float-noise stalls) are involved.
    x = best.clone();
    for _ in 0..2000 {
        iterations += 1;
        let g = gradient(&x);
        let mut target: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - gi).collect();
        clamp_to_box(&mut target, bounds);
        let direction = numerics::sub(&target, &x);
        let pg = numerics::norm2(&direction);
        if pg <= tol {
            return finish(&x, iterations);
        }
        if pg < best_pg {
            best_pg = pg;
            best = x.clone();
        } else if pg > 1e3 * best_pg {
            break;
        }
        let probe_point: Vec<f64> = x.iter().zip(&direction).map(|(a, b)| a + b).collect();
        let g_probe = gradient(&probe_point);
        let curvature: f64 = g_probe
            .iter()
            .zip(&g)
            .zip(&direction)
            .map(|((gp, gi), d)| (gp - gi) * d)
            .sum();
        let slope: f64 = numerics::dot(&g, &direction);
        let t = if curvature > 1e-300 { (-slope / curvature).clamp(1e-6, 1e6) } else { 1.0 };
        let mut trial: Vec<f64> =
            x.iter().zip(&direction).map(|(xi, d)| xi + t * d).collect();
        clamp_to_box(&mut trial, bounds);
        if trial == x {
            break;
        }
        x = trial;
    }
    x = best;
    {
        let g = gradient(&x);
        if pg_norm(&x, &g) <= tol {
            return finish(&x, iterations);
        }
    }
    let best = evaluate(problem, &x)?;
    Err(Error::Solver(format!(
        "projected gradient stalled after {iterations} iterations above tolerance {tol}; \
         best iterate x = {:?} with value {:.16e}",
        best.x,
        weighted_sum_value(s, &best)?
    )))
}

fn solve_on_grid(problem: &ProblemInstance, s: &WeightVector) -> Result<ScalarSolveReport> {
    let grid = make_grid(problem, problem.grid_resolution)?;
    if grid.is_empty() {
        return Err(Error::Config("instance grid has no feasible points".into()));
    }
    let mut best: Option<(f64, &CandidatePoint)> = None;
    for p in grid.iter() {
        let v = weighted_sum_value(s, p)?;
        if best.map_or(true, |(bv, _)| v < bv) {
            best = Some((v, p));
        }
    }
    let (value, point) = best.expect("grid is nonempty");
    Ok(ScalarSolveReport {
        minimizer: point.clone(),
        value,
        iterations: grid.len(),
        tolerance_met: true,
        method: SolveMethod::GridExhaustive,
    })
}

/// Is `x0` a `<s, eps>`-minimum of the scalar problem over the finite set:
/// `<s, f(x0)> <= <s, f(x)> + <s, eps>` for every member?
pub fn is_s_eps_minimum(
    x0: &CandidatePoint,
    s: &WeightVector,
    eps: &EpsilonVector,
    set: &CandidateSet,
) -> Result<bool> {
    let v0 = weighted_sum_value(s, x0)?;
    let slack = numerics::dot(s.components(), eps.components());
    for x in set.iter() {
        if v0 > weighted_sum_value(s, x)? + slack {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The properness bound `(m - 1) max_{i,j} s_i / s_j` guaranteed for
/// `<s, eps>`-minima by the forward scalarization theorem.
pub fn m_bound_from_weights(s: &WeightVector, m: usize) -> Result<f64> {
    if m != s.len() {
        return Err(Error::Input(format!(
            "objective count {m} does not match weight dimension {}",
            s.len()
        )));
    }
    let max = s.components().iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let min = s.components().iter().fold(f64::INFINITY, |a, &b| a.min(b));
    Ok((m as f64 - 1.0) * (max / min))
}

/// Assembles weights from one normalized Gordan certificate per objective:
/// `s_j = 1 + M * sum_{i != j} tau^i_j`. Every component is at least one,
/// hence strictly positive.
pub fn weights_from_certificates(
    certs: &[GordanCertificate],
    m_hat: f64,
) -> Result<WeightVector> {
    let m = certs.len();
    if m == 0 {
        return Err(Error::Input("no certificates supplied".into()));
    }
    let mut by_objective: Vec<Option<&GordanCertificate>> = vec![None; m];
    for c in certs {
        if c.objective >= m {
            return Err(Error::Input(format!(
                "certificate objective {} out of range (m = {m})",
                c.objective
            )));
        }
        if c.tau.len() != m {
            return Err(Error::Input("certificate tau has wrong dimension".into()));
        }
        if !c.normalized {
            return Err(Error::Input("certificates must be normalized".into()));
        }
        if by_objective[c.objective].replace(c).is_some() {
            return Err(Error::Input(format!(
                "duplicate certificate for objective {}",
                c.objective
            )));
        }
    }
    let mut s = vec![1.0; m];
    for (i, slot) in by_objective.iter().enumerate() {
        let cert = slot
            .ok_or_else(|| Error::Input(format!("missing certificate for objective {i}")))?;
        for (j, w) in s.iter_mut().enumerate() {
            if j != i {
                *w += m_hat * cert.tau[j];
            }
        }
    }
    WeightVector::new(s)
}
