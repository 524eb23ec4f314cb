//! Minimal trade-off bounds and the inequality systems behind them.
//!
//! For points on the biobjective grid, computes the per-point minimal
//! bound with its witnessing trade-off pairs, and shows the equivalence
//! with inconsistency of the systems Q_i.
//!
//! Run with: `cargo run --example properness_bounds`

use mocert::geoffrion::{min_m_for_point, qi_system_feasible};
use mocert::problem::{make_grid, registry_instance, EpsilonVector};

fn main() -> mocert::Result<()> {
    let entry = registry_instance("biobjective-quadratic")?;
    let grid = make_grid(&entry.problem, 41)?;
    let eps = EpsilonVector::uniform(1e-6, 2)?;

    println!("point      minimal M    worst witness (i -> j at x)");
    for target in [0.35, 0.5, 0.65, 0.875] {
        let x0 = grid
            .iter()
            .min_by(|a, b| {
                (a.x[0] - target).abs().total_cmp(&(b.x[0] - target).abs())
            })
            .unwrap();
        let cert = min_m_for_point(x0, &grid, &eps)?;
        let worst = cert
            .witnesses
            .iter()
            .max_by(|a, b| a.ratio.total_cmp(&b.ratio));
        match worst {
            Some(w) => println!(
                "x = {:<6.3} {:<12.6} gain in f{} paid by f{} at x = {:.3} (ratio {:.4})",
                x0.x[0], cert.minimal_m, w.objective, w.best_j, w.point.x[0], w.ratio
            ),
            None => println!("x = {:<6.3} {:<12.6} (vacuous)", x0.x[0], cert.minimal_m),
        }

        // Properness at a bound is the same as all systems Q_i being
        // inconsistent over the set.
        let m_hat = 1.5;
        let consistent: Vec<usize> = (0..2)
            .filter(|&i| qi_system_feasible(x0, i, m_hat, &eps, &grid).is_some())
            .collect();
        let member = cert.minimal_m <= m_hat;
        println!(
            "           proper at M = {m_hat}: {member}; consistent systems: {consistent:?}"
        );
    }
    Ok(())
}
