//! Dominance and (weak, local) epsilon-Pareto membership on finite sets.
//!
//! A point `x` eps-dominates `x*` when `f(x) + eps - f(x*)` lies in the
//! negative orthant minus the origin (strict cone) or in its interior
//! (interior cone). Membership checks are exact componentwise comparisons
//! on cached objective values; no tolerances are applied.

use crate::error::{Error, Result};
use crate::problem::{CandidatePoint, CandidateSet, EpsilonVector};

/// Which dominance cone applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceMode {
    /// Pareto: componentwise `<=` with at least one strict component.
    StrictCone,
    /// Weak Pareto: componentwise strict `<`.
    InteriorCone,
}

/// The answer of a set-level dominance query.
#[derive(Debug, Clone)]
pub struct DominanceVerdict {
    pub dominated: bool,
    /// First dominating point in set order, when one exists.
    pub witness: Option<CandidatePoint>,
    pub mode: DominanceMode,
}

fn check_dims(x: &CandidatePoint, xstar: &CandidatePoint, eps: &EpsilonVector) -> Result<()> {
    if x.fvals.len() != xstar.fvals.len() || x.fvals.len() != eps.len() {
        return Err(Error::Input(format!(
            "objective dimensions disagree: {} vs {} vs eps {}",
            x.fvals.len(),
            xstar.fvals.len(),
            eps.len()
        )));
    }
    Ok(())
}

/// Does `x` eps-dominate `xstar` in the given mode?
pub fn eps_dominates(
    x: &CandidatePoint,
    xstar: &CandidatePoint,
    eps: &EpsilonVector,
    mode: DominanceMode,
) -> Result<bool> {
    check_dims(x, xstar, eps)?;
    let diffs = x
        .fvals
        .iter()
        .zip(&xstar.fvals)
        .zip(eps.components())
        .map(|((fx, fs), e)| fx + e - fs);
    Ok(match mode {
        DominanceMode::StrictCone => {
            let mut all_le = true;
            let mut any_lt = false;
            for d in diffs {
                if d > 0.0 {
                    all_le = false;
                    break;
                }
                if d < 0.0 {
                    any_lt = true;
                }
            }
            all_le && any_lt
        }
        DominanceMode::InteriorCone => diffs.into_iter().all(|d| d < 0.0),
    })
}

/// Is `xstar` an eps-Pareto point of the set (strict cone)?
pub fn is_eps_pareto(
    xstar: &CandidatePoint,
    set: &CandidateSet,
    eps: &EpsilonVector,
) -> Result<DominanceVerdict> {
    if !xstar.feasible {
        return Err(Error::Precondition("query point is infeasible".into()));
    }
    if set.is_empty() {
        return Err(Error::Precondition("candidate set is empty".into()));
    }
    for x in set.iter() {
        if eps_dominates(x, xstar, eps, DominanceMode::StrictCone)? {
            return Ok(DominanceVerdict {
                dominated: true,
                witness: Some(x.clone()),
                mode: DominanceMode::StrictCone,
            });
        }
    }
    Ok(DominanceVerdict { dominated: false, witness: None, mode: DominanceMode::StrictCone })
}

/// All undominated members of the set under the given mode, in input order.
pub fn eps_pareto_set(
    set: &CandidateSet,
    eps: &EpsilonVector,
    mode: DominanceMode,
) -> Result<CandidateSet> {
    if set.is_empty() {
        return Err(Error::Precondition("candidate set is empty".into()));
    }
    let mut keep = Vec::new();
    for (i, xstar) in set.iter().enumerate() {
        let mut dominated = false;
        for x in set.iter() {
            if eps_dominates(x, xstar, eps, mode)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            keep.push(i);
        }
    }
    Ok(set.retain_indices(&keep))
}

/// Is `xstar` undominated (strict cone, eps = 0) by set members within
/// Euclidean distance `delta`?
pub fn is_local_pareto(
    xstar: &CandidatePoint,
    set: &CandidateSet,
    delta: f64,
) -> Result<bool> {
    if !(delta > 0.0) {
        return Err(Error::Input("delta must be positive".into()));
    }
    let zero = EpsilonVector::zero(xstar.fvals.len());
    for x in set.iter() {
        if x.distance_to(xstar) <= delta
            && eps_dominates(x, xstar, &zero, DominanceMode::StrictCone)?
        {
            return Ok(false);
        }
    }
    Ok(true)
}
