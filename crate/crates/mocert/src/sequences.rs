//! Convergence harness: approximation schedules, certified point sequences,
//! KKT verification of limits, and grid search for the perturbed point of
//! the vector variational principle.
//!
//! The existential content of the underlying theorems is realized here by
//! exhaustive search over finite grids: where a certified point exists on
//! the grid, the harness finds it; gaps are recorded honestly as absent
//! reports rather than being papered over.

use crate::error::{Error, Result};
use crate::kkt::{is_modified_eps_kkt, kkt_residual, KKTReport};
use crate::pareto::{eps_dominates, eps_pareto_set, DominanceMode};
use crate::problem::{CandidatePoint, CandidateSet, EpsilonVector, ProblemInstance};

/// How the limit guess sat inside the grid's Pareto structure when the
/// trace was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuessMembership {
    Pareto,
    WeakParetoOnly,
    Neither,
}

/// A certified approximation sequence along a decreasing schedule.
#[derive(Debug, Clone)]
pub struct SequenceTrace {
    /// Strictly decreasing positive budgets.
    pub schedule: Vec<f64>,
    /// The selected near-minimal point per budget.
    pub points: Vec<CandidatePoint>,
    /// Membership certificates where they exist on the search grid.
    pub reports: Vec<Option<KKTReport>>,
    pub limit: CandidatePoint,
    pub limit_report: KKTReport,
    pub limit_residual: f64,
    pub guess_membership: GuessMembership,
}

/// Geometric schedule `eps0 * factor^k` for `k = 0..count`.
pub fn make_schedule(eps0: f64, factor: f64, count: usize) -> Result<Vec<f64>> {
    if !(eps0 > 0.0) {
        return Err(Error::Input("eps0 must be positive".into()));
    }
    if !(factor > 0.0 && factor < 1.0) {
        return Err(Error::Input("factor must lie strictly between 0 and 1".into()));
    }
    if count < 1 {
        return Err(Error::Input("schedule needs at least one entry".into()));
    }
    let mut out = Vec::with_capacity(count);
    let mut value = eps0;
    for _ in 0..count {
        out.push(value);
        value *= factor;
    }
    Ok(out)
}

fn check_schedule(schedule: &[f64]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::Input("schedule is empty".into()));
    }
    if schedule.iter().any(|&e| !(e > 0.0)) {
        return Err(Error::Input("schedule entries must be positive".into()));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Input("schedule must be strictly decreasing".into()));
    }
    Ok(())
}

/// For each budget, selects the feasible grid point nearest the limit guess
/// among the uniform-budget Pareto points of the grid, then attaches a
/// modified KKT certificate where one exists on the grid.
pub fn build_kkt_sequence(
    problem: &ProblemInstance,
    limit_guess: &CandidatePoint,
    schedule: &[f64],
    grid: &CandidateSet,
) -> Result<SequenceTrace> {
    check_schedule(schedule)?;
    if !limit_guess.feasible {
        return Err(Error::Precondition("limit guess must be feasible".into()));
    }
    if grid.is_empty() {
        return Err(Error::Input("search grid is empty".into()));
    }
    let m = limit_guess.fvals.len();

    // Restrict to the ball spanned by the grid around the guess. With the
    // radius taken as the farthest grid point this keeps the whole grid,
    // which is the finite stand-in for the neighborhood of the theorems.
    let radius = grid
        .iter()
        .map(|p| p.distance_to(limit_guess))
        .fold(0.0_f64, f64::max);
    let keep: Vec<usize> = (0..grid.len())
        .filter(|&i| grid.points[i].distance_to(limit_guess) <= radius)
        .collect();
    let neighborhood = grid.retain_indices(&keep);
    if neighborhood.is_empty() {
        return Err(Error::Input("restricted grid is empty".into()));
    }

    let zero = EpsilonVector::zero(m);
    let strictly_dominated = neighborhood
        .iter()
        .any(|x| eps_dominates(x, limit_guess, &zero, DominanceMode::StrictCone).unwrap_or(false));
    let weakly_dominated = neighborhood
        .iter()
        .any(|x| eps_dominates(x, limit_guess, &zero, DominanceMode::InteriorCone).unwrap_or(false));
    let guess_membership = if !strictly_dominated {
        GuessMembership::Pareto
    } else if !weakly_dominated {
        GuessMembership::WeakParetoOnly
    } else {
        GuessMembership::Neither
    };

    let mut points = Vec::with_capacity(schedule.len());
    let mut reports = Vec::with_capacity(schedule.len());
    for &budget in schedule {
        let eps = EpsilonVector::uniform(budget, m)?;
        let near_minimal = eps_pareto_set(&neighborhood, &eps, DominanceMode::StrictCone)?;
        let selected = near_minimal
            .iter()
            .min_by(|a, b| {
                a.distance_to(limit_guess).total_cmp(&b.distance_to(limit_guess))
            })
            .ok_or_else(|| Error::Input("no near-minimal point for schedule entry".into()))?
            .clone();
        let report = is_modified_eps_kkt(&selected, budget, problem, &neighborhood)?;
        points.push(selected);
        reports.push(report);
    }

    let limit_report = kkt_residual(limit_guess, problem)?;
    let limit_residual = limit_report.residual;
    Ok(SequenceTrace {
        schedule: schedule.to_vec(),
        points,
        reports,
        limit: limit_guess.clone(),
        limit_report,
        limit_residual,
        guess_membership,
    })
}

/// Does the trace's limit satisfy the KKT conditions at tolerance `tol`:
/// residual at most `tol` and complementarity slack at least `-tol`?
pub fn verify_limit_kkt(trace: &SequenceTrace, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(Error::Input("tolerance must be positive".into()));
    }
    Ok(trace.limit_residual <= tol && trace.limit_report.comp_slack >= -tol)
}

/// Result of the grid search for a perturbed minimal point.
#[derive(Debug, Clone)]
pub enum EkelandOutcome {
    /// A grid point within `sqrt(rho)` of the base point satisfying both
    /// perturbed non-domination conclusions against the whole grid.
    Point(CandidatePoint),
    /// The premise held but no grid point satisfies the conclusions.
    NoneFound,
    /// The premise fails on the grid: this point rho-dominates the base.
    PremiseViolated { witness: CandidatePoint },
}

/// Exhaustive verifier for the vector variational principle on a grid,
/// with the interior direction fixed to the all-ones vector.
///
/// Premise: no grid point `x` has `f(x) + rho*e - f(x0)` in the negative
/// orthant minus the origin. Among grid points within `sqrt(rho)` of `x0`
/// (nearest first), returns the first whose two conclusions hold against
/// every other grid point, using exact comparisons throughout.
pub fn ekeland_point(
    grid: &CandidateSet,
    problem: &ProblemInstance,
    rho: f64,
    x0: &CandidatePoint,
) -> Result<EkelandOutcome> {
    if !(rho > 0.0) {
        return Err(Error::Input("rho must be positive".into()));
    }
    if grid.is_empty() {
        return Err(Error::Input("grid is empty".into()));
    }
    let m = problem.m;
    let rho_eps = EpsilonVector::uniform(rho, m)?;
    for x in grid.iter() {
        if eps_dominates(x, x0, &rho_eps, DominanceMode::StrictCone)? {
            return Ok(EkelandOutcome::PremiseViolated { witness: x.clone() });
        }
    }

    let radius = rho.sqrt();
    let mut candidates: Vec<(f64, usize)> = grid
        .iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let d = p.distance_to(x0);
            (d <= radius).then_some((d, i))
        })
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    'candidate: for (_, idx) in candidates {
        let center = &grid.points[idx];
        for (j, x) in grid.iter().enumerate() {
            if j == idx {
                continue;
            }
            // First conclusion: rho-shifted values never improve strictly
            // in every component.
            if eps_dominates(x, center, &rho_eps, DominanceMode::InteriorCone)? {
                continue 'candidate;
            }
            // Second conclusion: the distance-weighted shift cannot either.
            let shift = EpsilonVector::uniform(radius * center.distance_to(x), m)?;
            if eps_dominates(x, center, &shift, DominanceMode::InteriorCone)? {
                continue 'candidate;
            }
        }
        return Ok(EkelandOutcome::Point(center.clone()));
    }
    Ok(EkelandOutcome::NoneFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{
        evaluate, make_grid, registry_instance, FunctionOracle, ProblemInstance,
    };

    #[test]
    fn schedule_examples() {
        assert_eq!(make_schedule(1.0, 0.5, 4).unwrap(), vec![1.0, 0.5, 0.25, 0.125]);
        assert_eq!(make_schedule(0.1, 0.1, 3).unwrap(), vec![0.1, 0.010000000000000002, 0.0010000000000000002]);
        assert_eq!(make_schedule(0.3, 0.9, 1).unwrap(), vec![0.3]);
        assert!(make_schedule(0.0, 0.5, 3).is_err());
        assert!(make_schedule(1.0, 1.0, 3).is_err());
        assert!(make_schedule(1.0, 0.5, 0).is_err());
    }

    #[test]
    fn sequence_on_biobjective_certifies_every_step() {
        let entry = registry_instance("biobjective-quadratic").unwrap();
        let guess = entry
            .candidates
            .iter()
            .find(|p| (p.x[0] - 0.5).abs() < 1e-12)
            .unwrap()
            .clone();
        let schedule = vec![0.1, 0.05, 0.025];
        let trace =
            build_kkt_sequence(&entry.problem, &guess, &schedule, &entry.candidates).unwrap();
        assert_eq!(trace.guess_membership, GuessMembership::Pareto);
        for (k, report) in trace.reports.iter().enumerate() {
            let report = report.as_ref().unwrap_or_else(|| panic!("no certificate at k={k}"));
            assert!((report.companion.x[0] - 0.5).abs() <= schedule[k].sqrt() + 0.5_f64.sqrt());
            assert!(report.residual <= schedule[k].sqrt());
        }
        assert!(verify_limit_kkt(&trace, 1e-6).unwrap());
    }

    #[test]
    fn sequence_single_huge_budget_is_trivially_certified() {
        let entry = registry_instance("biobjective-quadratic").unwrap();
        let guess = evaluate(&entry.problem, &[0.25]).unwrap();
        let trace =
            build_kkt_sequence(&entry.problem, &guess, &[100.0], &entry.candidates).unwrap();
        assert!(trace.reports[0].is_some());
    }

    #[test]
    fn sequence_trailing_certificates_absent_at_bad_guess() {
        let entry = registry_instance("tri-quadratic").unwrap();
        let guess = evaluate(&entry.problem, &[2.0, 2.0]).unwrap();
        let schedule = make_schedule(0.5, 0.25, 6).unwrap();
        let trace =
            build_kkt_sequence(&entry.problem, &guess, &schedule, &entry.candidates).unwrap();
        assert_eq!(trace.guess_membership, GuessMembership::Neither);
        assert!(trace.reports.last().unwrap().is_none(), "tiny budget should fail");
        assert!(!verify_limit_kkt(&trace, 1e-6).unwrap());
    }

    #[test]
    fn degenerate_single_point_trace_at_exact_kkt_point() {
        let entry = registry_instance("biobjective-quadratic").unwrap();
        let guess = entry
            .candidates
            .iter()
            .find(|p| (p.x[0] - 0.5).abs() < 1e-12)
            .unwrap()
            .clone();
        let trace =
            build_kkt_sequence(&entry.problem, &guess, &[1e-12], &entry.candidates).unwrap();
        assert!(verify_limit_kkt(&trace, 1e-6).unwrap());
    }

    #[test]
    fn infeasible_guess_rejected() {
        let entry = registry_instance("biobjective-quadratic").unwrap();
        let guess = evaluate(&entry.problem, &[1.5]).unwrap();
        assert!(matches!(
            build_kkt_sequence(&entry.problem, &guess, &[0.1], &entry.candidates),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn ekeland_constant_objectives_return_base_point() {
        let problem = ProblemInstance::new(
            "flat",
            1,
            vec![
                FunctionOracle::affine(vec![0.0], 1.0),
                FunctionOracle::affine(vec![0.0], 2.0),
            ],
            vec![],
            Some(vec![(0.0, 1.0)]),
        )
        .unwrap();
        let grid = make_grid(&problem, 11).unwrap();
        let x0 = grid.points[4].clone();
        match ekeland_point(&grid, &problem, 0.01, &x0).unwrap() {
            EkelandOutcome::Point(p) => assert_eq!(p.x, x0.x),
            other => panic!("expected the base point, got {other:?}"),
        }
    }

    #[test]
    fn ekeland_biobjective_returns_nearby_point() {
        let entry = registry_instance("biobjective-quadratic").unwrap();
        let x0 = entry
            .candidates
            .iter()
            .find(|p| (p.x[0] - 0.5).abs() < 1e-12)
            .unwrap()
            .clone();
        let rho = 0.01;
        match ekeland_point(&entry.candidates, &entry.problem, rho, &x0).unwrap() {
            EkelandOutcome::Point(p) => {
                assert!(p.distance_to(&x0) <= rho.sqrt());
                // Re-verify both conclusions exhaustively and exactly.
                let m = 2;
                let rho_eps = EpsilonVector::uniform(rho, m).unwrap();
                for x in entry.candidates.iter() {
                    if x.x == p.x {
                        continue;
                    }
                    assert!(!eps_dominates(x, &p, &rho_eps, DominanceMode::InteriorCone)
                        .unwrap());
                    let shift =
                        EpsilonVector::uniform(rho.sqrt() * p.distance_to(x), m).unwrap();
                    assert!(
                        !eps_dominates(x, &p, &shift, DominanceMode::InteriorCone).unwrap()
                    );
                }
            }
            other => panic!("expected a point, got {other:?}"),
        }
    }

    #[test]
    fn ekeland_premise_violation_signalled() {
        let entry = registry_instance("tri-quadratic").unwrap();
        let x0 = evaluate(&entry.problem, &[2.0, 2.0]).unwrap();
        match ekeland_point(&entry.candidates, &entry.problem, 0.01, &x0).unwrap() {
            EkelandOutcome::PremiseViolated { witness } => {
                let rho_eps = EpsilonVector::uniform(0.01, 3).unwrap();
                assert!(eps_dominates(&witness, &x0, &rho_eps, DominanceMode::StrictCone)
                    .unwrap());
            }
            other => panic!("expected premise violation, got {other:?}"),
        }
    }
}
