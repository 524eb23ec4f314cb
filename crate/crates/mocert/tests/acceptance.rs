//! Acceptance suite: one test per release criterion, each printing a
//! `[PASS]`/`[FAIL]` line. Every expected value asserted here is either
//! taken from the published discrete example or recomputed by the
//! independent brute-force oracles at the top of this file, which do not
//! share code with the library paths they check.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use mocert::geoffrion::{geoffrion_set, min_m_for_point, qi_system_feasible};
use mocert::kkt::kkt_residual;
use mocert::lagrangian::{
    eps_bar, eps_subdiff_contains, lagrangian_value, verify_saddle, SimplexVector,
    SubdiffVerdict,
};
use mocert::numerics::{finite_diff, min_norm, MinNormProblem};
use mocert::pareto::{eps_pareto_set, DominanceMode};
use mocert::problem::{
    evaluate, make_grid, registry_instance, CandidatePoint, CandidateSet, EpsilonVector,
    FunctionOracle, ProblemInstance, Provenance, ScalarOracle,
};
use mocert::scalarization::{
    is_s_eps_minimum, m_bound_from_weights, solve_weighted_sum, weighted_sum_value,
    WeightVector,
};
use mocert::sequences::{build_kkt_sequence, make_schedule, verify_limit_kkt};

// ---------------------------------------------------------------------------
// Independent oracles (no shared code with the library paths under test)
// ---------------------------------------------------------------------------

/// Brute-force minimal trade-off bound: direct triple enumeration over
/// (improving objective, candidate, compensating objective).
fn oracle_min_m(x0: &[f64], set: &[Vec<f64>], eps: &[f64]) -> f64 {
    let m = x0.len();
    let mut worst = 0.0_f64;
    for f in set {
        for i in 0..m {
            if f[i] < x0[i] - eps[i] {
                let mut best = f64::INFINITY;
                for j in 0..m {
                    if j != i && x0[j] - eps[j] < f[j] {
                        best = best.min((x0[i] - f[i] - eps[i]) / (f[j] - x0[j] + eps[j]));
                    }
                }
                worst = worst.max(best);
            }
        }
    }
    worst
}

/// Brute-force eps-Pareto membership by pairwise comparison.
fn oracle_is_pareto(x0: &[f64], set: &[Vec<f64>], eps: &[f64]) -> bool {
    !set.iter().any(|f| {
        let d: Vec<f64> = f.iter().zip(x0).zip(eps).map(|((a, b), e)| a + e - b).collect();
        d.iter().all(|&v| v <= 0.0) && d.iter().any(|&v| v < 0.0)
    })
}

/// Exhaustive residual search over a discretized multiplier domain:
/// `steps` points per unit along the simplex block, constraint block
/// swept over [0, mu_max] at the same resolution.
fn oracle_min_norm(columns: &[Vec<f64>], simplex_len: usize, steps: usize, mu_max: f64) -> f64 {
    let k = columns.len();
    let n = columns[0].len();
    let gram: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..n).map(|t| columns[i][t] * columns[j][t]).sum())
                .collect()
        })
        .collect();
    let sq = |c: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..k {
            for j in 0..k {
                acc += c[i] * c[j] * gram[i][j];
            }
        }
        acc
    };
    let mu_steps = (mu_max * steps as f64).round() as usize;
    let mut best = f64::INFINITY;
    let mut c = vec![0.0; k];
    // Enumerate the simplex block at the given resolution.
    let mut simplex_points: Vec<Vec<f64>> = Vec::new();
    match simplex_len {
        1 => simplex_points.push(vec![1.0]),
        2 => {
            for a in 0..=steps {
                let t = a as f64 / steps as f64;
                simplex_points.push(vec![t, 1.0 - t]);
            }
        }
        3 => {
            for a in 0..=steps {
                for b in 0..=steps - a {
                    let (x, y) = (a as f64 / steps as f64, b as f64 / steps as f64);
                    simplex_points.push(vec![x, y, 1.0 - x - y]);
                }
            }
        }
        _ => unreachable!("oracle supports at most three simplex coordinates"),
    }
    for sp in &simplex_points {
        c[..simplex_len].copy_from_slice(sp);
        if simplex_len == k {
            best = best.min(sq(&c));
        } else {
            for mt in 0..=mu_steps {
                c[simplex_len] = mt as f64 / steps as f64;
                best = best.min(sq(&c));
            }
        }
    }
    best.max(0.0).sqrt()
}

fn random_feasible_points(rng: &mut ChaCha8Rng, m: usize, count: usize) -> CandidateSet {
    let points: Vec<CandidatePoint> = (0..count)
        .map(|k| CandidatePoint {
            x: vec![k as f64],
            fvals: (0..m).map(|_| rng.gen_range(0.0..1.0)).collect(),
            gvals: vec![],
            feasible: true,
        })
        .collect();
    CandidateSet::new(points, Provenance::ExplicitList).unwrap()
}

fn pass(line: &str) {
    println!("[PASS] {line}");
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_paper_example_reproduction() {
    let start = Instant::now();
    let entry = registry_instance("paper-discrete").unwrap();
    let set = &entry.candidates;
    let zero = EpsilonVector::zero(3);

    let g2 = geoffrion_set(set, 2.0, &zero).unwrap();
    assert_eq!(g2.len(), 4, "bound two must keep all four points");
    for (a, b) in g2.iter().zip(set.iter()) {
        assert_eq!(a.x, b.x);
    }

    let g1 = geoffrion_set(set, 1.0, &zero).unwrap();
    assert_eq!(g1.len(), 3, "bound one must keep the three unit vectors");
    for (a, b) in g1.iter().zip(set.iter().take(3)) {
        assert_eq!(a.x, b.x);
    }

    let g099 = geoffrion_set(set, 0.99, &zero).unwrap();
    assert!(g099.is_empty(), "below the minimal bound the set is empty");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(&format!(
        "criterion 1: discrete example sets G_2 = 4, G_1 = 3 unit vectors, G_0.99 = {{}} in {elapsed:?}"
    ));
}

#[test]
fn criterion_2_minimal_bound_at_diagonal_point() {
    let entry = registry_instance("paper-discrete").unwrap();
    let set = &entry.candidates;
    let diagonal = &set.points[3];

    // Independent oracle value, computed by triple enumeration.
    let fvals: Vec<Vec<f64>> = set.iter().map(|p| p.fvals.clone()).collect();
    let expected = oracle_min_m(&diagonal.fvals, &fvals, &[0.0; 3]);
    let closed_form = (1.0 + 3.0_f64.sqrt()) / 2.0;
    assert!((expected - closed_form).abs() < 1e-12, "oracle disagrees with algebra");

    let cert = min_m_for_point(diagonal, set, &EpsilonVector::zero(3)).unwrap();
    assert!(
        (cert.minimal_m - expected).abs() < 1e-9,
        "library {} vs oracle {expected}",
        cert.minimal_m
    );
    pass(&format!(
        "criterion 2: minimal bound at the diagonal point = {:.10} (= (1+sqrt(3))/2) within 1e-9",
        cert.minimal_m
    ));
}

#[test]
fn criterion_3_qi_equivalence_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked_points = 0;
    for trial in 0..200 {
        let m = if trial % 2 == 0 { 2 } else { 3 };
        let count = rng.gen_range(5..=20);
        let set = random_feasible_points(&mut rng, m, count);
        let eps = EpsilonVector::uniform(rng.gen_range(0.0..0.15), m).unwrap();
        let m_hat = rng.gen_range(0.2..3.0);
        let members = geoffrion_set(&set, m_hat, &eps).unwrap();
        for p in set.iter() {
            let via_ratio = members.iter().any(|q| q.x == p.x);
            let via_systems =
                (0..m).all(|i| qi_system_feasible(p, i, m_hat, &eps, &set).is_none());
            assert_eq!(
                via_ratio, via_systems,
                "disagreement at trial {trial} point {:?}",
                p.x
            );
            checked_points += 1;
        }
    }
    pass(&format!(
        "criterion 3: ratio definition and Q_i inconsistency agree on {checked_points} points across 200 random sets"
    ));
}

#[test]
fn criterion_4_weighted_sum_forward_bridge() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut checked = 0;
    for name in ["biobjective-quadratic", "tri-quadratic"] {
        let entry = registry_instance(name).unwrap();
        let problem = &entry.problem;
        let grid = make_grid(problem, 200).unwrap();
        let eps = EpsilonVector::uniform(1e-6, problem.m).unwrap();
        for _ in 0..25 {
            let s = WeightVector::new(
                (0..problem.m).map(|_| rng.gen_range(0.1..5.0)).collect(),
            )
            .unwrap();
            let report = solve_weighted_sum(problem, &s, 1e-8).unwrap();
            assert!(report.tolerance_met);
            let xstar = report.minimizer.clone();
            let augmented = grid.with_point(xstar.clone());
            assert!(
                is_s_eps_minimum(&xstar, &s, &eps, &augmented).unwrap(),
                "{name}: solver output not a scalar eps-minimum on the verification grid"
            );
            let bound = m_bound_from_weights(&s, problem.m).unwrap();
            let cert = min_m_for_point(&xstar, &augmented, &eps).unwrap();
            assert!(
                cert.minimal_m <= bound,
                "{name}: minimal bound {} exceeds theorem bound {bound} for weights {:?}",
                cert.minimal_m,
                s.components()
            );
            checked += 1;
        }
    }
    pass(&format!(
        "criterion 4: all {checked} weighted-sum minimizers proper at (m-1)*max(s_i/s_j) on 200-per-axis grids"
    ));
}

#[test]
fn criterion_5_kkt_residual_oracle() {
    // Hand-derived case first: gradients 2.4 and 0.4.
    let hand = MinNormProblem::new(vec![vec![2.4], vec![0.4]], 2).unwrap();
    let sol = min_norm(&hand, 1e-11).unwrap();
    assert!((sol.residual - 0.4).abs() < 1e-9, "hand case residual {}", sol.residual);
    assert!(sol.coefficients[0].abs() < 1e-9 && (sol.coefficients[1] - 1.0).abs() < 1e-9);
    let hand_oracle = oracle_min_norm(&[vec![2.4], vec![0.4]], 2, 1000, 0.0);
    assert!((sol.residual - hand_oracle).abs() < 1e-9);

    // Random small instances with m + l <= 3: the kernel must match or
    // beat the exhaustive 1e-3-resolution search within 1e-6. (Near flat
    // minima the grid value sits above the true one by more than 1e-6,
    // so matching is asserted one-sidedly; see the design notes.)
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for trial in 0..100 {
        let (simplex_len, nonneg) = match trial % 4 {
            0 => (2, 0),
            1 => (1, 1),
            2 => (3, 0),
            _ => (2, 1),
        };
        let n = rng.gen_range(1..=3);
        let columns: Vec<Vec<f64>> = (0..simplex_len + nonneg)
            .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let problem = MinNormProblem::new(columns.clone(), simplex_len).unwrap();
        let sol = min_norm(&problem, 1e-11).unwrap();
        let grid_best = oracle_min_norm(&columns, simplex_len, 1000, 3.0);
        assert!(
            sol.residual <= grid_best + 1e-6,
            "trial {trial}: kernel {} worse than discretized search {grid_best}",
            sol.residual
        );
    }
    pass("criterion 5: min-norm kernel matches the 1e-3 exhaustive search (100 instances) and the hand case exactly");
}

#[test]
fn criterion_6_limit_theorem_harness() {
    let start = Instant::now();
    let entry = registry_instance("biobjective-quadratic").unwrap();
    let guess = entry
        .candidates
        .iter()
        .find(|p| (p.x[0] - 0.5).abs() < 1e-12)
        .expect("0.5 lies on the registry grid")
        .clone();
    let schedule = make_schedule(0.1, 0.5, 13).unwrap();
    assert!((schedule[12] - 0.1 * 2.0_f64.powi(-12)).abs() < 1e-18);
    let trace =
        build_kkt_sequence(&entry.problem, &guess, &schedule, &entry.candidates).unwrap();
    for (k, report) in trace.reports.iter().enumerate() {
        assert!(report.is_some(), "certificate missing at schedule index {k}");
    }
    assert!(verify_limit_kkt(&trace, 1e-6).unwrap());
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    pass(&format!(
        "criterion 6: 13-step schedule certified at every step, limit KKT at 1e-6, in {elapsed:?}"
    ));
}

#[test]
fn criterion_7_saddle_sufficiency_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(999);
    for trial in 0..20 {
        // Random convex quadratic instance on a box, optionally with one
        // affine constraint that keeps a Slater point.
        let n = rng.gen_range(1..=2usize);
        let m = rng.gen_range(2..=3usize);
        let l = usize::from(trial % 4 == 0);
        let objectives: Vec<FunctionOracle> = (0..m)
            .map(|_| {
                let center: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5..1.5)).collect();
                let scale = rng.gen_range(0.5..2.0);
                let mut matrix = vec![vec![0.0; n]; n];
                for (d, row) in matrix.iter_mut().enumerate() {
                    row[d] = 2.0 * scale;
                }
                let linear: Vec<f64> = center.iter().map(|c| -2.0 * scale * c).collect();
                let constant =
                    scale * center.iter().map(|c| c * c).sum::<f64>() + rng.gen_range(-1.0..1.0);
                FunctionOracle::quadratic(matrix, linear, constant)
            })
            .collect();
        let constraints: Vec<FunctionOracle> = (0..l)
            .map(|_| {
                // x_0 <= 1.5 keeps most of the box feasible.
                let mut coeffs = vec![0.0; n];
                coeffs[0] = 1.0;
                FunctionOracle::affine(coeffs, -1.5)
            })
            .collect();
        let problem = ProblemInstance::new(
            format!("rand-{trial}"),
            n,
            objectives,
            constraints,
            Some(vec![(-1.0, 2.0); n]),
        )
        .unwrap();
        let resolution = if n == 1 { 41 } else { 15 };
        let grid = make_grid(&problem, resolution).unwrap();
        let m_hat = rng.gen_range(0.5..3.0);
        let x0 = grid.points[rng.gen_range(0..grid.len())].clone();

        // Build certificates that pass the strict (plain-eps) saddle form
        // by construction: random simplex weights, kernel-free mu = 0, and
        // a budget just above the measured gaps.
        let mut taus = Vec::new();
        let mut eps_components = vec![0.0; m];
        for i in 0..m {
            let raw: Vec<f64> = (0..m).map(|_| rng.gen_range(0.01..1.0)).collect();
            let sum: f64 = raw.iter().sum();
            let tau = SimplexVector::new(raw.iter().map(|t| t / sum).collect()).unwrap();
            let mu = vec![0.0; l];
            let here = lagrangian_value(i, m_hat, &x0, &tau, &mu).unwrap();
            let mut min_over = f64::INFINITY;
            for x in grid.iter() {
                min_over = min_over.min(lagrangian_value(i, m_hat, x, &tau, &mu).unwrap());
            }
            eps_components[i] = (here - min_over).max(0.0) + 1e-9;
            taus.push((tau, mu));
        }
        let eps = EpsilonVector::new(eps_components).unwrap();
        let probes = mocert::lagrangian::default_mu_probe(l);
        for (i, (tau, mu)) in taus.iter().enumerate() {
            let report =
                verify_saddle(i, &x0, tau, mu, &eps, m_hat, &grid, &probes, true).unwrap();
            assert!(
                report.left_ok && report.right_ok && report.slack_ok,
                "trial {trial}: constructed certificate fails the strict saddle form"
            );
        }
        // The sufficiency chain: membership at the inflated bound and
        // doubled budget.
        let inflated = (1.0 + m_hat) * (m as f64 - 1.0);
        let doubled = eps.scaled(2.0).unwrap();
        let members = geoffrion_set(&grid, inflated, &doubled).unwrap();
        assert!(
            members.iter().any(|q| q.x == x0.x),
            "trial {trial}: saddle-certified point missing from the inflated proper set"
        );
    }
    pass("criterion 7: strict saddle certificates imply properness at (1+M)(m-1) with doubled budget on 20 random convex instances");
}

#[test]
fn criterion_8_eps_subdifferential_exact_tests() {
    let mut rng = ChaCha8Rng::seed_from_u64(314);
    let empty = CandidateSet::new(vec![], Provenance::ExplicitList).unwrap();
    for trial in 0..100 {
        let n = if trial % 2 == 0 { 1 } else { 2 };
        // Diagonal positive-definite quadratic with independent closed form.
        let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..4.0)).collect();
        let linear: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let constant = rng.gen_range(-1.0..1.0);
        let mut matrix = vec![vec![0.0; n]; n];
        for (d, row) in matrix.iter_mut().enumerate() {
            row[d] = diag[d];
        }
        let oracle = FunctionOracle::quadratic(matrix, linear.clone(), constant);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let eps = rng.gen_range(0.0..2.0);
        let verdict =
            eps_subdiff_contains(&oracle, &x, &vec![0.0; n], eps, &empty).unwrap();
        // Closed form: the minimum of a diagonal quadratic.
        let fmin = constant
            - (0..n).map(|d| linear[d] * linear[d] / (2.0 * diag[d])).sum::<f64>();
        let fx = (0..n)
            .map(|d| 0.5 * diag[d] * x[d] * x[d] + linear[d] * x[d])
            .sum::<f64>()
            + constant;
        let expected = fx <= fmin + eps;
        assert_eq!(
            verdict == SubdiffVerdict::CertifiedYes,
            expected,
            "trial {trial}: conjugate test disagrees with the closed-form criterion"
        );
        assert_ne!(verdict, SubdiffVerdict::SampledNoViolation, "must decide exactly");
    }
    pass("criterion 8: conjugate-test verdicts match the closed-form minimality criterion on 100 random pairs");
}

#[test]
fn criterion_9_property_suites() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(555);

    // Epsilon-monotonicity of Pareto sets and strict-implies-weak.
    for _ in 0..50 {
        let m = rng.gen_range(2..=3);
        let count = rng.gen_range(4..=15);
        let set = random_feasible_points(&mut rng, m, count);
        let small = rng.gen_range(0.0..0.2);
        let large = small + rng.gen_range(0.0..0.3);
        let eps_small = EpsilonVector::uniform(small, m).unwrap();
        let eps_large = EpsilonVector::uniform(large, m).unwrap();
        let s_small = eps_pareto_set(&set, &eps_small, DominanceMode::StrictCone).unwrap();
        let s_large = eps_pareto_set(&set, &eps_large, DominanceMode::StrictCone).unwrap();
        for p in s_small.iter() {
            assert!(s_large.iter().any(|q| q.x == p.x), "eps-monotonicity violated");
        }
        let weak = eps_pareto_set(&set, &eps_small, DominanceMode::InteriorCone).unwrap();
        for p in s_small.iter() {
            assert!(weak.iter().any(|q| q.x == p.x), "Pareto not inside weak Pareto");
        }
        // Cross-check a few memberships against the brute-force oracle.
        let fvals: Vec<Vec<f64>> = set.iter().map(|p| p.fvals.clone()).collect();
        for p in set.iter() {
            let in_small = s_small.iter().any(|q| q.x == p.x);
            assert_eq!(
                in_small,
                oracle_is_pareto(&p.fvals, &fvals, eps_small.components()),
                "library membership disagrees with the oracle"
            );
        }
    }

    // M-monotonicity of the proper sets.
    for _ in 0..30 {
        let m = rng.gen_range(2..=3);
        let count = rng.gen_range(4..=12);
        let set = random_feasible_points(&mut rng, m, count);
        let eps = EpsilonVector::uniform(rng.gen_range(0.0..0.1), m).unwrap();
        let lo = rng.gen_range(0.3..1.5);
        let hi = lo + rng.gen_range(0.0..2.0);
        let g_lo = geoffrion_set(&set, lo, &eps).unwrap();
        let g_hi = geoffrion_set(&set, hi, &eps).unwrap();
        for p in g_lo.iter() {
            assert!(g_hi.iter().any(|q| q.x == p.x), "M-monotonicity violated");
        }
    }

    // Residual nonnegativity and exact recomputation on registry instances.
    for name in ["biobjective-quadratic", "tri-quadratic"] {
        let entry = registry_instance(name).unwrap();
        for _ in 0..20 {
            let x: Vec<f64> =
                (0..entry.problem.n).map(|_| rng.gen_range(-1.0..2.0)).collect();
            let p = evaluate(&entry.problem, &x).unwrap();
            let report = kkt_residual(&p, &entry.problem).unwrap();
            assert!(report.residual >= 0.0);
            let mut combo = vec![0.0; entry.problem.n];
            for (w, gen) in report
                .multipliers
                .lambda
                .iter()
                .zip(&report.selected_generators.objectives)
            {
                for (c, v) in combo.iter_mut().zip(gen) {
                    *c += w * v;
                }
            }
            for (w, gen) in report
                .multipliers
                .mu
                .iter()
                .zip(&report.selected_generators.constraints)
            {
                if let Some(gen) = gen {
                    for (c, v) in combo.iter_mut().zip(gen) {
                        *c += w * v;
                    }
                }
            }
            let norm: f64 = combo.iter().map(|v| v * v).sum::<f64>().sqrt();
            assert!((norm - report.residual).abs() <= 1e-12);
        }
    }

    // Gradient versus central finite differences at seeded random points.
    for name in ["paper-discrete", "biobjective-quadratic", "tri-quadratic"] {
        let entry = registry_instance(name).unwrap();
        let oracles = entry
            .problem
            .objectives
            .iter()
            .chain(entry.problem.constraints.iter());
        for oracle in oracles {
            if let ScalarOracle::Smooth(f) = &oracle.form {
                for _ in 0..100 {
                    let x: Vec<f64> =
                        (0..entry.problem.n).map(|_| rng.gen_range(-2.0..2.0)).collect();
                    let analytic = f.gradient(&x);
                    let fd = finite_diff(|y| f.value(y), &x, 1e-6);
                    for (a, d) in analytic.iter().zip(&fd) {
                        assert!((a - d).abs() / a.abs().max(1.0) <= 1e-6);
                    }
                }
            }
        }
    }

    // Inflated-budget dominance and weighted-sum value coherence.
    for _ in 0..50 {
        let m = rng.gen_range(2..=3);
        let raw: Vec<f64> = (0..m).map(|_| rng.gen_range(0.01..1.0)).collect();
        let sum: f64 = raw.iter().sum();
        let tau = SimplexVector::new(raw.iter().map(|t| t / sum).collect()).unwrap();
        let eps =
            EpsilonVector::new((0..m).map(|_| rng.gen_range(0.0..1.0)).collect()).unwrap();
        let m_hat = rng.gen_range(0.1..3.0);
        for i in 0..m {
            assert!(eps_bar(i, &eps, &tau, m_hat) >= eps.get(i));
        }
        let s =
            WeightVector::new((0..m).map(|_| rng.gen_range(0.1..4.0)).collect()).unwrap();
        let p = CandidatePoint {
            x: vec![0.0],
            fvals: (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            gvals: vec![],
            feasible: true,
        };
        let v = weighted_sum_value(&s, &p).unwrap();
        let direct: f64 = s.components().iter().zip(&p.fvals).map(|(a, b)| a * b).sum();
        assert!((v - direct).abs() <= 1e-12);
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "property suites took {elapsed:?}");
    pass(&format!("criterion 9: property suites complete in {elapsed:?}"));
}
