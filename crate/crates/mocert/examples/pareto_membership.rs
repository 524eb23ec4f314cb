//! Approximate Pareto membership on a feasible box grid.
//!
//! Builds the grid of the biobjective quadratic instance, filters it by
//! eps-dominance at a few budgets, and checks one point's local
//! Pareto status.
//!
//! Run with: `cargo run --example pareto_membership`

use mocert::pareto::{eps_pareto_set, is_eps_pareto, is_local_pareto, DominanceMode};
use mocert::problem::{evaluate, make_grid, registry_instance, EpsilonVector};

fn main() -> mocert::Result<()> {
    let entry = registry_instance("biobjective-quadratic")?;
    let grid = make_grid(&entry.problem, 41)?;
    println!("feasible grid points: {}", grid.len());

    for eps in [0.0, 0.01, 0.1] {
        let budget = EpsilonVector::uniform(eps, 2)?;
        let strict = eps_pareto_set(&grid, &budget, DominanceMode::StrictCone)?;
        let weak = eps_pareto_set(&grid, &budget, DominanceMode::InteriorCone)?;
        println!(
            "eps = {eps:<5}: {} eps-Pareto points, {} weak eps-Pareto points",
            strict.len(),
            weak.len()
        );
    }

    // A dominated query point and its witness.
    let query = evaluate(&entry.problem, &[0.998])?;
    let verdict = is_eps_pareto(&query, &grid, &EpsilonVector::uniform(0.05, 2)?)?;
    println!(
        "\nx = 0.998 at eps = 0.05: dominated = {}, witness = {:?}",
        verdict.dominated,
        verdict.witness.map(|w| w.x)
    );

    // Local membership only looks inside a ball.
    let mid = grid.iter().find(|p| (p.x[0] - 0.5).abs() < 1e-12).unwrap();
    println!(
        "x = 0.5 is local Pareto at delta = 0.1: {}",
        is_local_pareto(mid, &grid, 0.1)?
    );
    Ok(())
}
