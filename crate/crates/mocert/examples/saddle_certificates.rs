//! Saddle-point certificates of the per-objective Lagrangian and the
//! derived epsilon-KKT conditions.
//!
//! Run with: `cargo run --example saddle_certificates`

use mocert::lagrangian::{
    default_mu_probe, eps_bar, lagrangian_value, search_saddle_certificate, verify_eps_kkt,
    verify_saddle,
};
use mocert::problem::{make_grid, registry_instance, EpsilonVector};

fn main() -> mocert::Result<()> {
    let entry = registry_instance("biobjective-quadratic")?;
    let problem = &entry.problem;
    let grid = make_grid(problem, 41)?;
    let eps = EpsilonVector::uniform(1e-6, 2)?;
    let m_hat = 2.0;
    let x0 = grid.iter().find(|p| (p.x[0] - 0.5).abs() < 1e-12).unwrap();
    let probes = default_mu_probe(problem.l);

    println!("searching saddle certificates at x0 = 0.5, bound {m_hat}:");
    let mut certs = Vec::new();
    for i in 0..problem.m {
        match search_saddle_certificate(i, x0, &eps, m_hat, problem, &grid, false)? {
            Some((tau, mu)) => {
                let report =
                    verify_saddle(i, x0, &tau, &mu, &eps, m_hat, &grid, &probes, false)?;
                println!(
                    "  objective {i}: tau = {:?}, mu = {:?}",
                    tau.components(),
                    mu
                );
                println!(
                    "    L(x0) = {:.6}, inflated budget = {:.2e}, left/right/slack = {}/{}/{}",
                    lagrangian_value(i, m_hat, x0, &tau, &mu)?,
                    eps_bar(i, &eps, &tau, m_hat),
                    report.left_ok,
                    report.right_ok,
                    report.slack_ok
                );
                certs.push((tau, mu));
            }
            None => println!("  objective {i}: no certificate found"),
        }
    }

    if certs.len() == problem.m {
        let ok = verify_eps_kkt(x0, &certs, &eps, m_hat, &grid, Some(problem))?;
        println!("\nepsilon-KKT conditions (A) and (B) hold at x0: {ok}");
    }
    Ok(())
}
