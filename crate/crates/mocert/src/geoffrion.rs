//! Geoffrion properness with a preset trade-off bound.
//!
//! A feasible eps-Pareto point `x0` is (M, eps)-proper on a set when every
//! gain of at least `eps_i` in some objective `i` at another point `x` is
//! paid for by a loss in some objective `j`, at a gain/loss ratio of at
//! most `M`. This module computes the minimal such bound per point, the
//! associated inequality system `Q_i(x0)` whose inconsistency characterizes
//! properness, and nonnegative multiplier certificates for that
//! inconsistency via the phase-I kernel.

use crate::error::{Error, Result};
use crate::numerics::{phase1_feasible, Phase1Outcome};
use crate::pareto::is_eps_pareto;
use crate::problem::{CandidatePoint, CandidateSet, EpsilonVector};

/// One trade-off pair `(i, x)` with its best compensating objective.
#[derive(Debug, Clone)]
pub struct TradeoffWitness {
    /// Objective that improves by more than `eps_i` at `point`.
    pub objective: usize,
    pub point: CandidatePoint,
    /// Compensating objective attaining the smallest ratio.
    pub best_j: usize,
    pub ratio: f64,
}

/// Minimal trade-off bound for one point over a finite set.
#[derive(Debug, Clone)]
pub struct PropernessCertificate {
    pub point: CandidatePoint,
    /// Max over trade-off pairs of the per-pair minimal ratio;
    /// `f64::INFINITY` when some pair has no compensating objective,
    /// `0.0` when no trade-off pair exists at all (see `vacuous`).
    pub minimal_m: f64,
    /// True when no trade-off pair occurs, so properness holds vacuously.
    pub vacuous: bool,
    pub witnesses: Vec<TradeoffWitness>,
    pub eps: EpsilonVector,
}

/// Nonnegative multipliers certifying inconsistency of `Q_i(x0)` on a set.
#[derive(Debug, Clone)]
pub struct GordanCertificate {
    /// The objective index whose system this certificate refutes.
    pub objective: usize,
    pub tau: Vec<f64>,
    pub mu: Vec<f64>,
    /// True when `tau` was rescaled to sum to one.
    pub normalized: bool,
}

fn check_indices(x0: &CandidatePoint, i: usize, j: usize, eps: &EpsilonVector) -> Result<()> {
    let m = x0.fvals.len();
    if eps.len() != m {
        return Err(Error::Input(format!("eps has {} entries, expected {}", eps.len(), m)));
    }
    if i >= m || j >= m {
        return Err(Error::Input(format!("objective index out of range (m = {m})")));
    }
    Ok(())
}

/// The quotient `(f_i(x0) - f_i(x) - eps_i) / (f_j(x) - f_j(x0) + eps_j)`.
///
/// Defined only when objective `i` strictly improves beyond `eps_i` at `x`
/// and objective `j` strictly deteriorates beyond `-eps_j`.
pub fn tradeoff_ratio(
    x0: &CandidatePoint,
    x: &CandidatePoint,
    i: usize,
    j: usize,
    eps: &EpsilonVector,
) -> Result<f64> {
    check_indices(x0, i, j, eps)?;
    let gain = x0.fvals[i] - x.fvals[i] - eps.get(i);
    let loss = x.fvals[j] - x0.fvals[j] + eps.get(j);
    if !(gain > 0.0) {
        return Err(Error::Domain(format!(
            "f_{i}(x) < f_{i}(x0) - eps_{i} fails: gain {gain} is not positive"
        )));
    }
    if !(loss > 0.0) {
        return Err(Error::Domain(format!(
            "f_{j}(x0) - eps_{j} < f_{j}(x) fails: loss {loss} is not positive"
        )));
    }
    Ok(gain / loss)
}

/// Computes the minimal trade-off bound of `x0` over the set.
///
/// Requires `x0` to be eps-Pareto within the set, as the definition does.
pub fn min_m_for_point(
    x0: &CandidatePoint,
    set: &CandidateSet,
    eps: &EpsilonVector,
) -> Result<PropernessCertificate> {
    let verdict = is_eps_pareto(x0, set, eps)?;
    if verdict.dominated {
        return Err(Error::Precondition(
            "point is not eps-Pareto in the given set".into(),
        ));
    }
    let m = x0.fvals.len();
    let mut minimal_m = f64::NEG_INFINITY;
    let mut any_pair = false;
    let mut unbounded = false;
    let mut witnesses = Vec::new();
    for x in set.iter() {
        for i in 0..m {
            let gain = x0.fvals[i] - x.fvals[i] - eps.get(i);
            if !(gain > 0.0) {
                continue;
            }
            any_pair = true;
            let mut best: Option<(usize, f64)> = None;
            for j in 0..m {
                if j == i {
                    continue;
                }
                let loss = x.fvals[j] - x0.fvals[j] + eps.get(j);
                if loss > 0.0 {
                    let ratio = gain / loss;
                    if best.map_or(true, |(_, r)| ratio < r) {
                        best = Some((j, ratio));
                    }
                }
            }
            match best {
                Some((j, ratio)) => {
                    witnesses.push(TradeoffWitness {
                        objective: i,
                        point: x.clone(),
                        best_j: j,
                        ratio,
                    });
                    minimal_m = minimal_m.max(ratio);
                }
                None => unbounded = true,
            }
        }
    }
    let minimal_m = if unbounded {
        f64::INFINITY
    } else if !any_pair {
        0.0
    } else {
        minimal_m
    };
    Ok(PropernessCertificate {
        point: x0.clone(),
        minimal_m,
        vacuous: !any_pair,
        witnesses,
        eps: eps.clone(),
    })
}

/// All (M, eps)-proper members of the set, in input order.
pub fn geoffrion_set(
    set: &CandidateSet,
    m_hat: f64,
    eps: &EpsilonVector,
) -> Result<CandidateSet> {
    if !(m_hat > 0.0) {
        return Err(Error::Input("trade-off bound must be positive".into()));
    }
    let mut keep = Vec::new();
    for (idx, p) in set.iter().enumerate() {
        if !p.feasible {
            continue;
        }
        if is_eps_pareto(p, set, eps)?.dominated {
            continue;
        }
        let cert = min_m_for_point(p, set, eps)?;
        if cert.minimal_m <= m_hat {
            keep.push(idx);
        }
    }
    Ok(set.retain_indices(&keep))
}

/// Values of the `Q_i(x0)` inequality functions at a candidate `x`, in the
/// order: base inequality, one per objective `j != i`, one per constraint.
/// The system is consistent at `x` exactly when all entries are negative.
fn qi_values(
    x0: &CandidatePoint,
    x: &CandidatePoint,
    i: usize,
    m_hat: f64,
    eps: &EpsilonVector,
) -> Vec<f64> {
    let m = x0.fvals.len();
    let base = x.fvals[i] - x0.fvals[i] + eps.get(i);
    let mut vals = Vec::with_capacity(m + x.gvals.len());
    vals.push(base);
    for j in 0..m {
        if j != i {
            vals.push(base + m_hat * (x.fvals[j] - x0.fvals[j] + eps.get(j)));
        }
    }
    vals.extend(x.gvals.iter().copied());
    vals
}

/// Searches the set for a point satisfying every strict inequality of
/// `Q_i(x0)`; returns the first witness in set order.
pub fn qi_system_feasible(
    x0: &CandidatePoint,
    i: usize,
    m_hat: f64,
    eps: &EpsilonVector,
    set: &CandidateSet,
) -> Option<CandidatePoint> {
    set.iter()
        .find(|x| {
            x.feasible && qi_values(x0, x, i, m_hat, eps).iter().all(|&v| v < 0.0)
        })
        .cloned()
}

/// Minimal substituted slack of a certificate over the whole set:
/// `min over x of sum_k p_k Q_ik(x)`. Nonnegative (up to roundoff) for a
/// valid certificate.
pub fn gordan_slack(
    cert: &GordanCertificate,
    x0: &CandidatePoint,
    m_hat: f64,
    eps: &EpsilonVector,
    set: &CandidateSet,
) -> f64 {
    let i = cert.objective;
    let m = x0.fvals.len();
    let mut min_slack = f64::INFINITY;
    for x in set.iter() {
        let vals = qi_values(x0, x, i, m_hat, eps);
        let mut acc = cert.tau[i] * vals[0];
        let mut pos = 1;
        for j in 0..m {
            if j != i {
                acc += cert.tau[j] * vals[pos];
                pos += 1;
            }
        }
        for (r, &mu) in cert.mu.iter().enumerate() {
            acc += mu * vals[pos + r];
        }
        min_slack = min_slack.min(acc);
    }
    min_slack
}

/// Derives nonnegative multipliers `(tau, mu)` certifying that `Q_i(x0)` is
/// inconsistent over the set: the aggregated inequality
/// `sum_k p_k Q_ik(x) >= 0` holds at every set point. The multipliers are
/// found by the phase-I kernel and re-verified by substitution; `tau` is
/// normalized to sum to one.
pub fn gordan_multipliers(
    x0: &CandidatePoint,
    i: usize,
    m_hat: f64,
    eps: &EpsilonVector,
    set: &CandidateSet,
) -> Result<GordanCertificate> {
    let m = x0.fvals.len();
    let l = x0.gvals.len();
    if i >= m {
        return Err(Error::Input(format!("objective index {i} out of range (m = {m})")));
    }
    if let Some(w) = qi_system_feasible(x0, i, m_hat, eps, set) {
        return Err(Error::Precondition(format!(
            "Q_{i}(x0) is consistent over the set (witness at x = {:?})",
            w.x
        )));
    }
    let k = m + l;
    // Variables y = (tau_i, tau_j for j != i, mu). Strict row forces positive
    // total mass on the tau block; weak rows demand nonnegative aggregated
    // slack at every set point and nonnegativity of y itself.
    let mut strict = vec![0.0; k];
    for item in strict.iter_mut().take(m) {
        *item = -1.0;
    }
    let mut weak: Vec<Vec<f64>> = Vec::with_capacity(set.len() + k);
    for x in set.iter() {
        let vals = qi_values(x0, x, i, m_hat, eps);
        weak.push(vals.iter().map(|v| -v).collect());
    }
    for t in 0..k {
        let mut row = vec![0.0; k];
        row[t] = -1.0;
        weak.push(row);
    }
    let outcome = phase1_feasible(&[strict], &weak)?;
    let y = match outcome {
        Phase1Outcome::Witness(y) => y,
        Phase1Outcome::Certificate { .. } => {
            return Err(Error::Numerical(
                "no multiplier certificate exists over this set: \
                 a convex combination of set points solves the system"
                    .into(),
            ))
        }
    };
    let total: f64 = y[..m].iter().map(|v| v.max(0.0)).sum();
    if total <= 0.0 {
        return Err(Error::Numerical("certificate has no mass on the tau block".into()));
    }
    // Positions: y[0] belongs to the base inequality (tau_i), the next m-1
    // entries to the objectives j != i in ascending order.
    let mut tau = vec![0.0; m];
    tau[i] = y[0].max(0.0) / total;
    let mut pos = 1;
    for (j, slot) in tau.iter_mut().enumerate() {
        if j != i {
            *slot = y[pos].max(0.0) / total;
            pos += 1;
        }
    }
    let mu: Vec<f64> = y[m..].iter().map(|v| v.max(0.0) / total).collect();
    let cert = GordanCertificate { objective: i, tau, mu, normalized: true };
    let slack = gordan_slack(&cert, x0, m_hat, eps, set);
    if slack < -1e-9 {
        return Err(Error::Numerical(format!(
            "certificate failed substitution check with slack {slack}"
        )));
    }
    Ok(cert)
}
