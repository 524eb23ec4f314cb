//! The two-way bridge between weighted-sum minimization and properness.
//!
//! Forward: a minimizer of `<s, f(x)>` with strictly positive weights is
//! proper at bound `(m-1) max s_i/s_j`. Converse: multiplier certificates
//! of a proper point assemble into weights under which it is an
//! approximate scalar minimum.
//!
//! Run with: `cargo run --example weighted_sum_bridge`

use mocert::geoffrion::{gordan_multipliers, min_m_for_point};
use mocert::problem::{make_grid, registry_instance, EpsilonVector};
use mocert::scalarization::{
    is_s_eps_minimum, m_bound_from_weights, solve_weighted_sum, weights_from_certificates,
    WeightVector,
};

fn main() -> mocert::Result<()> {
    let entry = registry_instance("tri-quadratic")?;
    let problem = &entry.problem;
    let grid = make_grid(problem, 60)?;
    let eps = EpsilonVector::uniform(1e-6, problem.m)?;

    println!("forward bridge on {} (m = {}):", problem.name, problem.m);
    for s in [vec![1.0, 1.0, 1.0], vec![3.0, 1.0, 1.0], vec![0.5, 2.0, 1.0]] {
        let weights = WeightVector::new(s.clone())?;
        let report = solve_weighted_sum(problem, &weights, 1e-8)?;
        let bound = m_bound_from_weights(&weights, problem.m)?;
        let augmented = grid.with_point(report.minimizer.clone());
        let cert = min_m_for_point(&report.minimizer, &augmented, &eps)?;
        println!(
            "  s = {s:?}: x* = [{:.4}, {:.4}], minimal M = {:.4} <= bound {:.4}",
            report.minimizer.x[0], report.minimizer.x[1], cert.minimal_m, bound
        );
    }

    println!("\nconverse bridge on biobjective-quadratic:");
    let entry = registry_instance("biobjective-quadratic")?;
    let grid = make_grid(&entry.problem, 41)?;
    let eps = EpsilonVector::uniform(1e-6, 2)?;
    let m_hat = 2.0;
    let x0 = grid.iter().find(|p| (p.x[0] - 0.5).abs() < 1e-12).unwrap();
    let certs = (0..2)
        .map(|i| gordan_multipliers(x0, i, m_hat, &eps, &grid))
        .collect::<mocert::Result<Vec<_>>>()?;
    for cert in &certs {
        println!("  objective {}: tau = {:?}", cert.objective, cert.tau);
    }
    let s = weights_from_certificates(&certs, m_hat)?;
    let cushion = eps.scaled(1.1)?;
    println!(
        "  assembled weights s = {:?}; x0 = 0.5 is a <s, eps>-minimum on the grid: {}",
        s.components(),
        is_s_eps_minimum(x0, &s, &cushion, &grid)?
    );
    Ok(())
}
