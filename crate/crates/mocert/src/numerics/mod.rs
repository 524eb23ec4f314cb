//! Small dense numerical kernels: simplex projection, constrained min-norm
//! solves, phase-I linear feasibility with alternative certificates, and
//! finite differences.
//!
//! Everything here is deterministic and sized for desk-scale certification
//! work (dimensions in the tens at most).

mod lp;

use crate::error::{Error, Result};

pub(crate) use lp::{solve_standard, LpOutcome};

// ---------------------------------------------------------------------------
// Vector and matrix helpers
// ---------------------------------------------------------------------------

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    norm2(&sub(a, b))
}

/// Solves a dense square system by Gaussian elimination with partial
/// pivoting. Returns `None` when the matrix is numerically singular.
pub(crate) fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = a.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot_row][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                for k in col..n {
                    a[row][k] -= factor * a[col][k];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Cholesky factor of a symmetric positive-definite matrix, or `None` when
/// the matrix is not positive definite to working precision.
pub(crate) fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 1e-14 {
                    return None;
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

/// Solves `A x = b` given the Cholesky factor of A.
pub(crate) fn cholesky_solve(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = l.len();
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    x
}

// ---------------------------------------------------------------------------
// Simplex projection
// ---------------------------------------------------------------------------

/// Euclidean projection onto the unit simplex `{w >= 0, sum w = 1}` by the
/// sorted-threshold method.
pub fn project_simplex(v: &[f64]) -> Vec<f64> {
    assert!(!v.is_empty(), "project_simplex needs at least one coordinate");
    let mut sorted: Vec<f64> = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let candidate = (cumsum - 1.0) / (j + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

// ---------------------------------------------------------------------------
// Min-norm kernel
// ---------------------------------------------------------------------------

/// Find coefficients minimizing the norm of a column combination subject to
/// block constraints: the first `simplex_len` coefficients live on the unit
/// simplex, the remainder are only required to be nonnegative.
#[derive(Debug, Clone)]
pub struct MinNormProblem {
    pub columns: Vec<Vec<f64>>,
    pub simplex_len: usize,
}

impl MinNormProblem {
    pub fn new(columns: Vec<Vec<f64>>, simplex_len: usize) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Input("min_norm: no columns".into()));
        }
        if simplex_len == 0 || simplex_len > columns.len() {
            return Err(Error::Input(
                "min_norm: simplex block must be nonempty and within bounds".into(),
            ));
        }
        let n = columns[0].len();
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::Input("min_norm: ragged columns".into()));
        }
        Ok(MinNormProblem { columns, simplex_len })
    }

    fn combine(&self, c: &[f64]) -> Vec<f64> {
        let n = self.columns[0].len();
        let mut out = vec![0.0; n];
        for (coeff, col) in c.iter().zip(&self.columns) {
            for (o, v) in out.iter_mut().zip(col) {
                *o += coeff * v;
            }
        }
        out
    }

    fn project(&self, c: &[f64]) -> Vec<f64> {
        let mut out = project_simplex(&c[..self.simplex_len]);
        out.extend(c[self.simplex_len..].iter().map(|&v| v.max(0.0)));
        out
    }
}

#[derive(Debug, Clone)]
pub struct MinNormSolution {
    pub coefficients: Vec<f64>,
    pub residual: f64,
    pub converged: bool,
    pub iterations: usize,
}

const MIN_NORM_CAP: usize = 50_000;

/// Projected gradient with a Lipschitz step on the quadratic
/// `0.5 ||G c||^2`, followed by an active-set refinement that solves the
/// support-restricted problem exactly. The refinement removes the gradient
/// method's flat-tail error near degenerate minima.
pub fn min_norm(problem: &MinNormProblem, tol: f64) -> Result<MinNormSolution> {
    if tol <= 0.0 {
        return Err(Error::Input("min_norm: tolerance must be positive".into()));
    }
    let k = problem.columns.len();
    let sl = problem.simplex_len;
    // Gram matrix of the columns.
    let q: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| dot(&problem.columns[i], &problem.columns[j])).collect())
        .collect();
    // trace(G'G) = sum of squared column norms bounds the spectral norm,
    // so 1/trace is a valid Lipschitz step; it is zero only when every
    // column is zero.
    let lip: f64 = (0..k).map(|i| q[i][i]).sum();

    let mut c = vec![0.0; k];
    for item in c.iter_mut().take(sl) {
        *item = 1.0 / sl as f64;
    }
    if lip < 1e-300 {
        // All columns are zero: any feasible point is optimal.
        return Ok(MinNormSolution { coefficients: c, residual: 0.0, converged: true, iterations: 0 });
    }
    let step = 1.0 / lip;

    let mut iterations = 0;
    let mut pg_converged = false;
    while iterations < MIN_NORM_CAP {
        iterations += 1;
        let grad: Vec<f64> = (0..k).map(|i| dot(&q[i], &c)).collect();
        let trial: Vec<f64> = c.iter().zip(&grad).map(|(x, g)| x - step * g).collect();
        let next = problem.project(&trial);
        let pg_norm = dist(&c, &next) / step;
        c = next;
        if pg_norm <= tol {
            pg_converged = true;
            break;
        }
    }

    let (c, polished_optimal) = refine_support(problem, &q, c);
    let residual = norm2(&problem.combine(&c));
    Ok(MinNormSolution {
        coefficients: c,
        residual,
        converged: pg_converged || polished_optimal,
        iterations,
    })
}

/// Active-set polish: solve the equality-constrained quadratic on the
/// current support, dropping negative coefficients and re-adding violated
/// ones until the KKT conditions hold or the iteration budget runs out.
fn refine_support(problem: &MinNormProblem, q: &[Vec<f64>], start: Vec<f64>) -> (Vec<f64>, bool) {
    let k = q.len();
    let sl = problem.simplex_len;
    let base_residual = norm2(&problem.combine(&start));

    let mut in_support: Vec<bool> = start.iter().map(|&v| v > 1e-10).collect();
    if !in_support[..sl].iter().any(|&b| b) {
        in_support[0] = true;
    }

    let mut best = start.clone();
    let mut best_residual = base_residual;
    let mut optimal = false;

    'outer: for _ in 0..4 * k + 8 {
        let support: Vec<usize> = (0..k).filter(|&j| in_support[j]).collect();
        let t = support.len();
        // KKT system of: min 0.5 c'Qc  s.t.  sum over simplex support = 1.
        let mut mat = vec![vec![0.0; t + 1]; t + 1];
        let mut rhs = vec![0.0; t + 1];
        for (a, &ja) in support.iter().enumerate() {
            for (b, &jb) in support.iter().enumerate() {
                mat[a][b] = q[ja][jb];
            }
            if ja < sl {
                mat[a][t] = 1.0;
                mat[t][a] = 1.0;
            }
        }
        rhs[t] = 1.0;
        let Some(sol) = solve_linear(mat, rhs) else {
            break;
        };

        if let Some((worst_pos, _)) = support
            .iter()
            .enumerate()
            .filter(|&(a, _)| sol[a] < -1e-12)
            .min_by(|x, y| sol[x.0].total_cmp(&sol[y.0]))
            .map(|(a, &j)| (a, j))
        {
            let j = support[worst_pos];
            // Never empty the simplex block.
            if j < sl && support.iter().filter(|&&s| s < sl).count() == 1 {
                break;
            }
            in_support[j] = false;
            continue;
        }

        let mut c = vec![0.0; k];
        for (a, &j) in support.iter().enumerate() {
            c[j] = sol[a].max(0.0);
        }
        // Keep the simplex block exactly on the simplex after clamping.
        let ssum: f64 = c[..sl].iter().sum();
        if ssum > 0.0 {
            for item in c.iter_mut().take(sl) {
                *item /= ssum;
            }
        }
        let residual = norm2(&problem.combine(&c));
        if residual <= best_residual + 1e-15 {
            best = c.clone();
            best_residual = residual;
        } else {
            break;
        }

        // Check global optimality: simplex coordinates off the support must
        // have gradient above the support level, nonnegative ones must have
        // nonnegative gradient.
        let grad: Vec<f64> = (0..k).map(|i| dot(&q[i], &c)).collect();
        let level = support
            .iter()
            .filter(|&&j| j < sl)
            .map(|&j| grad[j])
            .fold(f64::INFINITY, f64::min);
        for j in 0..k {
            if in_support[j] {
                continue;
            }
            let violated = if j < sl { grad[j] < level - 1e-10 } else { grad[j] < -1e-10 };
            if violated {
                in_support[j] = true;
                continue 'outer;
            }
        }
        optimal = true;
        break;
    }
    (best, optimal)
}

// ---------------------------------------------------------------------------
// Phase-I feasibility and alternative certificates
// ---------------------------------------------------------------------------

/// Outcome of a strict/weak homogeneous feasibility query.
#[derive(Debug, Clone)]
pub enum Phase1Outcome {
    /// A point `y` with `strict_rows . y < 0` and `weak_rows . y <= 0`.
    Witness(Vec<f64>),
    /// No such point exists: nonnegative multipliers, not all zero on the
    /// strict block, combining the rows to the zero vector.
    Certificate { strict: Vec<f64>, weak: Vec<f64> },
}

const PHASE1_SLACK: f64 = 1e-9;

/// Decides whether some `y` satisfies every strict row inequality
/// `row . y < 0` together with the weak rows `row . y <= 0`, searching the
/// box `||y||_inf <= 1` (the system is homogeneous, so this is no loss).
///
/// The search is the dual of a certificate program: when no witness exists,
/// the optimal multipliers of that program combine the rows to zero, which
/// is the theorem-of-the-alternative certificate. Both outputs are
/// re-verified by substitution before they are returned.
pub fn phase1_feasible(strict_rows: &[Vec<f64>], weak_rows: &[Vec<f64>]) -> Result<Phase1Outcome> {
    if strict_rows.is_empty() {
        return Err(Error::Input("phase1: at least one strict row required".into()));
    }
    let dim = strict_rows[0].len();
    if dim == 0
        || strict_rows.iter().any(|r| r.len() != dim)
        || weak_rows.iter().any(|r| r.len() != dim)
    {
        return Err(Error::Input("phase1: ragged or empty rows".into()));
    }
    let ns = strict_rows.len();
    let nw = weak_rows.len();

    // Certificate program in standard form over w = (p, nu, u+, u-) >= 0:
    //   min  sum(u+) + sum(u-)
    //   s.t. sum_k p_k A_k + sum_j nu_j B_j + u+ - u- = 0   (dim rows)
    //        sum_k p_k = 1
    // Its dual is exactly `max s : A y <= -s, B y <= 0, |y| <= 1`.
    let cols = ns + nw + 2 * dim;
    let mut cost = vec![0.0; cols];
    for item in cost.iter_mut().skip(ns + nw) {
        *item = 1.0;
    }
    let mut a = vec![vec![0.0; cols]; dim + 1];
    for t in 0..dim {
        for (kk, row) in strict_rows.iter().enumerate() {
            a[t][kk] = row[t];
        }
        for (jj, row) in weak_rows.iter().enumerate() {
            a[t][ns + jj] = row[t];
        }
        a[t][ns + nw + t] = 1.0;
        a[t][ns + nw + dim + t] = -1.0;
    }
    for kk in 0..ns {
        a[dim][kk] = 1.0;
    }
    let mut b = vec![0.0; dim + 1];
    b[dim] = 1.0;

    let solution = match solve_standard(&cost, &a, &b)? {
        LpOutcome::Optimal(sol) => sol,
        LpOutcome::Infeasible => {
            return Err(Error::Numerical("phase1: certificate program infeasible".into()))
        }
        LpOutcome::Unbounded => {
            return Err(Error::Numerical("phase1: certificate program unbounded".into()))
        }
    };

    if solution.value > PHASE1_SLACK {
        // Witness from the equality-row duals.
        let y = solution.duals[..dim].to_vec();
        for row in strict_rows {
            if dot(row, &y) >= -PHASE1_SLACK * 0.5 {
                return Err(Error::Numerical(
                    "phase1: witness failed strict re-verification".into(),
                ));
            }
        }
        for row in weak_rows {
            if dot(row, &y) > PHASE1_SLACK {
                return Err(Error::Numerical(
                    "phase1: witness failed weak re-verification".into(),
                ));
            }
        }
        return Ok(Phase1Outcome::Witness(y));
    }

    let strict: Vec<f64> = solution.x[..ns].iter().map(|&v| v.max(0.0)).collect();
    let weak: Vec<f64> = solution.x[ns..ns + nw].iter().map(|&v| v.max(0.0)).collect();
    // Substitute back: the nonnegative combination must vanish.
    for t in 0..dim {
        let mut combo = 0.0;
        for (kk, row) in strict_rows.iter().enumerate() {
            combo += strict[kk] * row[t];
        }
        for (jj, row) in weak_rows.iter().enumerate() {
            combo += weak[jj] * row[t];
        }
        if combo.abs() > 1e-7 {
            return Err(Error::Numerical(
                "phase1: certificate failed re-verification".into(),
            ));
        }
    }
    if strict.iter().sum::<f64>() < 0.5 {
        return Err(Error::Numerical("phase1: certificate has zero strict mass".into()));
    }
    Ok(Phase1Outcome::Certificate { strict, weak })
}

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

/// Central finite differences per coordinate.
pub fn finite_diff(oracle: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut grad = vec![0.0; x.len()];
    let mut work = x.to_vec();
    for i in 0..x.len() {
        work[i] = x[i] + h;
        let fp = oracle(&work);
        work[i] = x[i] - h;
        let fm = oracle(&work);
        work[i] = x[i];
        grad[i] = (fp - fm) / (2.0 * h);
    }
    grad
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_projection_examples() {
        assert_eq!(project_simplex(&[0.2, 0.8]), vec![0.2, 0.8]);
        assert_eq!(project_simplex(&[2.0, 0.0]), vec![1.0, 0.0]);
        let p = project_simplex(&[0.6, 0.6]);
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn simplex_projection_kkt_reconstruction() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let k = rng.gen_range(1..=6);
            let v: Vec<f64> = (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let out = project_simplex(&v);
            let sum: f64 = out.iter().sum();
            assert!((sum - 1.0).abs() <= 1e-12);
            assert!(out.iter().all(|&w| w >= 0.0));
            // There must exist theta with out_j = max(v_j - theta, 0).
            let thetas: Vec<f64> = v
                .iter()
                .zip(&out)
                .filter(|(_, &o)| o > 0.0)
                .map(|(&vi, &o)| vi - o)
                .collect();
            let theta = thetas[0];
            assert!(thetas.iter().all(|t| (t - theta).abs() < 1e-9));
            for (vi, o) in v.iter().zip(&out) {
                assert!(((vi - theta).max(0.0) - o).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn min_norm_cancelling_pair() {
        let p = MinNormProblem::new(vec![vec![1.0], vec![-1.0]], 2).unwrap();
        let sol = min_norm(&p, 1e-10).unwrap();
        assert!(sol.residual < 1e-9);
        assert!((sol.coefficients[0] - 0.5).abs() < 1e-6);
        assert!((sol.coefficients[1] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn min_norm_one_sided_pair() {
        let p = MinNormProblem::new(vec![vec![2.4], vec![0.4]], 2).unwrap();
        let sol = min_norm(&p, 1e-10).unwrap();
        assert!((sol.residual - 0.4).abs() < 1e-9);
        assert!(sol.coefficients[0].abs() < 1e-9);
        assert!((sol.coefficients[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn min_norm_zero_column() {
        let p = MinNormProblem::new(vec![vec![0.0, 0.0]], 1).unwrap();
        let sol = min_norm(&p, 1e-10).unwrap();
        assert_eq!(sol.residual, 0.0);
        assert!(sol.converged);
    }

    #[test]
    fn min_norm_nonneg_block_cancels() {
        // One simplex column plus a free nonnegative column that cancels it.
        let p = MinNormProblem::new(vec![vec![1.0, 0.5], vec![-1.0, -0.5]], 1).unwrap();
        let sol = min_norm(&p, 1e-10).unwrap();
        assert!(sol.residual < 1e-9);
        assert!((sol.coefficients[1] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn min_norm_matches_exhaustive_search() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=3);
            let sl = rng.gen_range(1..=2usize);
            let extra = rng.gen_range(0..=1usize);
            let cols: Vec<Vec<f64>> = (0..sl + extra)
                .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let p = MinNormProblem::new(cols, sl).unwrap();
            let sol = min_norm(&p, 1e-11).unwrap();
            // Coarse grid over the feasible set.
            let res = 200;
            let mut best = f64::INFINITY;
            for t in 0..=res {
                let lam = t as f64 / res as f64;
                let simplex_part = if sl == 2 { vec![lam, 1.0 - lam] } else { vec![1.0] };
                let mu_range = if extra == 1 { 4 * res } else { 0 };
                for mt in 0..=mu_range {
                    let mut c = simplex_part.clone();
                    if extra == 1 {
                        c.push(mt as f64 / res as f64);
                    }
                    let r = norm2(&p.combine(&c));
                    if r < best {
                        best = r;
                    }
                }
                if sl == 1 && extra == 0 {
                    break;
                }
            }
            assert!(
                sol.residual <= best + 1e-7,
                "kernel {} worse than grid {}",
                sol.residual,
                best
            );
        }
    }

    #[test]
    fn phase1_classic_alternative() {
        // y < 0 and -y < 0 cannot hold together.
        let out = phase1_feasible(&[vec![1.0], vec![-1.0]], &[]).unwrap();
        match out {
            Phase1Outcome::Certificate { strict, weak } => {
                assert!((strict[0] - 0.5).abs() < 1e-9);
                assert!((strict[1] - 0.5).abs() < 1e-9);
                assert!(weak.is_empty());
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn phase1_single_strict_row() {
        let out = phase1_feasible(&[vec![1.0]], &[]).unwrap();
        match out {
            Phase1Outcome::Witness(y) => {
                assert!((y[0] + 1.0).abs() < 1e-9, "expected y = -1, got {}", y[0]);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn phase1_weak_rows_respected() {
        // Want y1 < 0 while y1 >= 0 is imposed weakly: infeasible.
        let out = phase1_feasible(&[vec![1.0, 0.0]], &[vec![-1.0, 0.0]]).unwrap();
        match out {
            Phase1Outcome::Certificate { strict, weak } => {
                assert!((strict[0] - 1.0).abs() < 1e-9);
                assert!((weak[0] - 1.0).abs() < 1e-9);
            }
            other => panic!("expected certificate, got {other:?}"),
        }
        // Same strict row with a harmless weak row: feasible.
        let out = phase1_feasible(&[vec![1.0, 0.0]], &[vec![0.0, 1.0]]).unwrap();
        match out {
            Phase1Outcome::Witness(y) => {
                assert!(y[0] < 0.0 && y[1] <= 1e-9);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn phase1_random_outcomes_verify() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let dim = rng.gen_range(1..=4);
            let ns = rng.gen_range(1..=3);
            let nw = rng.gen_range(0..=3);
            let strict: Vec<Vec<f64>> = (0..ns)
                .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let weak: Vec<Vec<f64>> = (0..nw)
                .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            match phase1_feasible(&strict, &weak).unwrap() {
                Phase1Outcome::Witness(y) => {
                    assert!(strict.iter().all(|r| dot(r, &y) < 0.0));
                    assert!(weak.iter().all(|r| dot(r, &y) <= 1e-9));
                }
                Phase1Outcome::Certificate { strict: p, weak: nu } => {
                    assert!(p.iter().chain(&nu).all(|&v| v >= 0.0));
                    assert!(p.iter().sum::<f64>() > 1e-9);
                    for t in 0..dim {
                        let combo: f64 = strict
                            .iter()
                            .zip(&p)
                            .map(|(r, &c)| c * r[t])
                            .chain(weak.iter().zip(&nu).map(|(r, &c)| c * r[t]))
                            .sum();
                        assert!(combo.abs() < 1e-7);
                    }
                }
            }
        }
    }

    #[test]
    fn finite_diff_matches_calculus() {
        let g = finite_diff(|x| x[0] * x[0], &[3.0], 1e-6);
        assert!((g[0] - 6.0).abs() < 1e-6);
        let g = finite_diff(|x| 2.0 * x[0] - 3.0 * x[1], &[0.3, -0.7], 1e-6);
        assert!((g[0] - 2.0).abs() < 1e-8 && (g[1] + 3.0).abs() < 1e-8);
        let g = finite_diff(|x| x[0] * x[0] + x[1] * x[1], &[1.0, 2.0], 1e-6);
        assert!((g[0] - 2.0).abs() < 1e-5 && (g[1] - 4.0).abs() < 1e-5);
    }

    #[test]
    fn linear_solver_roundtrip() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve_linear(a.clone(), vec![5.0, 10.0]).unwrap();
        assert!((2.0 * x[0] + x[1] - 5.0).abs() < 1e-12);
        assert!((x[0] + 3.0 * x[1] - 10.0).abs() < 1e-12);
        assert!(solve_linear(vec![vec![1.0, 1.0], vec![1.0, 1.0]], vec![1.0, 2.0]).is_none());
    }

    #[test]
    fn cholesky_spd_solve() {
        let a = vec![vec![4.0, 1.0], vec![1.0, 3.0]];
        let l = cholesky(&a).unwrap();
        let x = cholesky_solve(&l, &[1.0, 2.0]);
        assert!((4.0 * x[0] + x[1] - 1.0).abs() < 1e-12);
        assert!((x[0] + 3.0 * x[1] - 2.0).abs() < 1e-12);
        assert!(cholesky(&[vec![0.0]]).is_none());
        assert!(cholesky(&[vec![1.0, 2.0], vec![2.0, 1.0]]).is_none());
    }
}
