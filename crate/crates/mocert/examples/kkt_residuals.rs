//! KKT residuals, modified approximate KKT membership, and the two
//! constraint qualifications.
//!
//! Run with: `cargo run --example kkt_residuals`

use mocert::kkt::{check_bcq, check_scq, is_modified_eps_kkt, kkt_residual};
use mocert::problem::{evaluate, registry_instance};

fn main() -> mocert::Result<()> {
    let entry = registry_instance("biobjective-quadratic")?;
    let problem = &entry.problem;
    let grid = &entry.candidates;

    println!("residuals along the interval:");
    for x in [0.0, 0.25, 0.5, 0.9, 1.2] {
        let p = evaluate(problem, &[x])?;
        let report = kkt_residual(&p, problem)?;
        println!(
            "  x = {x:<5}: residual = {:.6}  lambda = [{:.4}, {:.4}]  slack = {:.2e}",
            report.residual,
            report.multipliers.lambda[0],
            report.multipliers.lambda[1],
            report.comp_slack
        );
    }

    // Membership needs a companion within sqrt(eps) whose residual and
    // slack both fit the budget.
    let x0 = evaluate(problem, &[0.55])?;
    for eps in [1e-2, 1e-6] {
        match is_modified_eps_kkt(&x0, eps, problem, grid)? {
            Some(report) => println!(
                "x0 = 0.55 certified at eps = {eps}: companion = {:?}, residual = {:.2e}",
                report.companion.x, report.residual
            ),
            None => println!("x0 = 0.55 has no certificate at eps = {eps} on this grid"),
        }
    }

    // Constraint qualifications.
    match check_scq(problem, grid)? {
        Some(p) => println!("Slater point found at x = {:?}", p.x),
        None => println!("no Slater point in the sample"),
    }
    for x in [0.0, 0.5] {
        let p = evaluate(problem, &[x])?;
        let (holds, margin) = check_bcq(&p, problem)?;
        println!("BCQ at x = {x}: holds = {holds}, margin = {margin}");
    }
    Ok(())
}
