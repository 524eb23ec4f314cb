//! The built-in discrete four-point instance: three unit vectors plus the
//! diagonal point, objectives given by the identity map.
//!
//! Shows how the proper set shrinks as the trade-off bound tightens, and
//! that the minimal bound over this set is exactly one.
//!
//! Run with: `cargo run --example paper_discrete`

use mocert::geoffrion::{geoffrion_set, min_m_for_point};
use mocert::problem::{registry_instance, EpsilonVector};

fn main() -> mocert::Result<()> {
    let entry = registry_instance("paper-discrete")?;
    let set = &entry.candidates;
    let zero = EpsilonVector::zero(3);

    println!("candidate set ({} points):", set.len());
    for p in set.iter() {
        println!("  f = {:?}", p.fvals);
    }

    for m_hat in [2.0, 1.0, 0.99] {
        let members = geoffrion_set(set, m_hat, &zero)?;
        println!("\nproper points at trade-off bound {m_hat}: {}", members.len());
        for p in members.iter() {
            println!("  f = {:?}", p.fvals);
        }
    }

    println!("\nminimal trade-off bound per point:");
    for p in set.iter() {
        let cert = min_m_for_point(p, set, &zero)?;
        println!(
            "  f = {:?}  ->  minimal M = {:.10}{}",
            p.fvals,
            cert.minimal_m,
            if cert.vacuous { " (vacuous)" } else { "" }
        );
    }
    println!("\nthe smallest bound with a nonempty proper set is 1");
    Ok(())
}
