//! A certified approximation sequence as a stopping-criterion harness:
//! shrink the budget geometrically, certify membership at every step, and
//! check the KKT property of the limit.
//!
//! Run with: `cargo run --example kkt_sequence`

use mocert::problem::{evaluate, registry_instance};
use mocert::sequences::{build_kkt_sequence, make_schedule, verify_limit_kkt};

fn main() -> mocert::Result<()> {
    let entry = registry_instance("biobjective-quadratic")?;
    let guess = entry
        .candidates
        .iter()
        .find(|p| (p.x[0] - 0.5).abs() < 1e-12)
        .unwrap()
        .clone();
    let schedule = make_schedule(0.1, 0.5, 10)?;
    let trace = build_kkt_sequence(&entry.problem, &guess, &schedule, &entry.candidates)?;

    println!("guess membership on the grid: {:?}", trace.guess_membership);
    println!("  k   eps        point     certified  residual");
    for (k, budget) in trace.schedule.iter().enumerate() {
        match &trace.reports[k] {
            Some(r) => println!(
                "  {k:<3} {budget:<9.5} x = {:<6.3} yes        {:.2e}",
                trace.points[k].x[0], r.residual
            ),
            None => println!(
                "  {k:<3} {budget:<9.5} x = {:<6.3} no         -",
                trace.points[k].x[0]
            ),
        }
    }
    println!(
        "limit x = {:?}: residual = {:.2e}, KKT at 1e-6: {}",
        trace.limit.x,
        trace.limit_residual,
        verify_limit_kkt(&trace, 1e-6)?
    );

    // A bad guess on the three-objective instance: trailing certificates
    // disappear once the budget undercuts the grid's resolution.
    let entry = registry_instance("tri-quadratic")?;
    let guess = evaluate(&entry.problem, &[2.0, 2.0])?;
    let schedule = make_schedule(0.5, 0.25, 6)?;
    let trace = build_kkt_sequence(&entry.problem, &guess, &schedule, &entry.candidates)?;
    let certified: Vec<bool> = trace.reports.iter().map(|r| r.is_some()).collect();
    println!(
        "\nbad guess (2, 2) on tri-quadratic: certificates per step = {certified:?}, limit KKT: {}",
        verify_limit_kkt(&trace, 1e-6)?
    );
    Ok(())
}
