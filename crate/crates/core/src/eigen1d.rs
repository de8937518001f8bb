//! Finite-difference bound-state solver for operators of the form
//!
//! ```text
//!     -c₂ u''(x) + V(x) u(x) = E u(x),   0 <= x <= extent,
//! ```
//!
//! with a Dirichlet or Robin condition at x = 0 and Dirichlet at the outer
//! edge. Second-order central differences on a uniform grid give a symmetric
//! tridiagonal matrix; the lowest eigenpairs come from Sturm bisection plus
//! inverse iteration. Eigenvalues are Richardson-extrapolated from the base
//! grid and an internally refined doubled grid, so the returned energies
//! converge as h⁴ while the sampled eigenfunctions stay on the base grid.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    /// u(0) = 0.
    Dirichlet,
    /// u'(0) = beta · u(0), imposed through a ghost node.
    Robin { beta: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Eigen1dError {
    #[error("grid must have at least {needed} intervals, got {got}")]
    GridTooSmall { needed: usize, got: usize },
    #[error("requested {requested} states but the grid supports at most {max}")]
    TooManyStates { requested: usize, max: usize },
    #[error("inverse iteration failed to converge for eigenvalue index {index}")]
    InverseIteration { index: usize },
}

/// Uniform grid on [0, extent] with `n_intervals` cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1d {
    pub extent: f64,
    pub n_intervals: usize,
}

impl Grid1d {
    pub fn new(extent: f64, n_intervals: usize) -> Self {
        assert!(extent > 0.0 && n_intervals >= 4);
        Self { extent, n_intervals }
    }

    pub fn step(&self) -> f64 {
        self.extent / self.n_intervals as f64
    }

    /// All node positions, 0..=n_intervals.
    pub fn points(&self) -> Vec<f64> {
        let h = self.step();
        (0..=self.n_intervals).map(|i| i as f64 * h).collect()
    }

    /// Trapezoid weights matching [`points`](Self::points).
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let h = self.step();
        let mut w = vec![h; self.n_intervals + 1];
        w[0] = 0.5 * h;
        w[self.n_intervals] = 0.5 * h;
        w
    }
}

/// Lowest eigenpairs on the base grid; `functions[k]` holds u_k sampled on
/// all base nodes (including both endpoints) and normalized so that the
/// trapezoid integral of u² is one.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    pub grid: Grid1d,
    pub energies: Vec<f64>,
    pub functions: Vec<Vec<f64>>,
    pub node_counts: Vec<usize>,
}

/// Solve for the `n_states` lowest eigenpairs of -c₂ u'' + V u with the
/// given boundary condition at the origin. `potential` is evaluated at
/// every node of both the base and the refined grid.
pub fn solve_lowest(
    grid: &Grid1d,
    kinetic: f64,
    potential: impl Fn(f64) -> f64,
    bc: BoundaryCondition,
    n_states: usize,
) -> Result<EigenSolution, Eigen1dError> {
    if grid.n_intervals < 8 {
        return Err(Eigen1dError::GridTooSmall {
            needed: 8,
            got: grid.n_intervals,
        });
    }
    if n_states * 4 > grid.n_intervals {
        return Err(Eigen1dError::TooManyStates {
            requested: n_states,
            max: grid.n_intervals / 4,
        });
    }

    let coarse = discretize(grid, kinetic, &potential, bc);
    let fine_grid = Grid1d::new(grid.extent, 2 * grid.n_intervals);
    let fine = discretize(&fine_grid, kinetic, &potential, bc);

    let coarse_vals = lowest_eigenvalues(&coarse, n_states);
    let (fine_vals, fine_vecs) = lowest_eigenpairs(&fine, n_states)?;

    // Richardson: the central-difference eigenvalue error is A h² + O(h⁴).
    let energies: Vec<f64> = coarse_vals
        .iter()
        .zip(&fine_vals)
        .map(|(ec, ef)| (4.0 * ef - ec) / 3.0)
        .collect();

    // Restrict the fine-grid eigenvectors to the base nodes, undo the
    // boundary scaling, renormalize under the base trapezoid rule and fix a
    // deterministic sign.
    let h = grid.step();
    let n = grid.n_intervals;
    let robin = matches!(bc, BoundaryCondition::Robin { .. });
    let mut functions = Vec::with_capacity(n_states);
    let mut node_counts = Vec::with_capacity(n_states);
    for vec in &fine_vecs {
        let mut u = vec![0.0; n + 1];
        for i in 0..=n {
            u[i] = unknown_to_u(vec, 2 * i, 2 * fine_grid.n_intervals, robin);
        }
        let mut norm = 0.0;
        for (i, ui) in u.iter().enumerate() {
            let w = if i == 0 || i == n { 0.5 * h } else { h };
            norm += w * ui * ui;
        }
        let scale = 1.0 / norm.sqrt();
        let first_big = u
            .iter()
            .find(|v| v.abs() > 1e-3 * max_abs(&u))
            .copied()
            .unwrap_or(1.0);
        let sign = if first_big < 0.0 { -1.0 } else { 1.0 };
        for ui in &mut u {
            *ui *= scale * sign;
        }
        node_counts.push(count_sign_changes(&u));
        functions.push(u);
    }

    Ok(EigenSolution {
        grid: grid.clone(),
        energies,
        functions,
        node_counts,
    })
}

/// Value of u at physical node `i` given the unknown vector of the
/// symmetric problem (scaled boundary node under a Robin condition).
fn unknown_to_u(x: &[f64], i: usize, n_intervals: usize, robin: bool) -> f64 {
    if robin {
        // unknowns are nodes 0..n_intervals-1, u_0 = √2 x_0
        if i == n_intervals {
            0.0
        } else if i == 0 {
            std::f64::consts::SQRT_2 * x[0]
        } else {
            x[i]
        }
    } else {
        // unknowns are nodes 1..n_intervals-1
        if i == 0 || i == n_intervals {
            0.0
        } else {
            x[i - 1]
        }
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// Interior sign changes with a relative amplitude floor, which is the node
/// count of a Sturm-Liouville eigenfunction.
pub fn count_sign_changes(values: &[f64]) -> usize {
    let floor = 1e-8 * max_abs(values);
    let mut changes = 0;
    let mut prev = 0.0_f64;
    for &v in values {
        if v.abs() <= floor {
            continue;
        }
        if prev != 0.0 && v.signum() != prev.signum() {
            changes += 1;
        }
        prev = v;
    }
    changes
}

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

fn discretize(
    grid: &Grid1d,
    kinetic: f64,
    potential: &impl Fn(f64) -> f64,
    bc: BoundaryCondition,
) -> Tridiagonal {
    let h = grid.step();
    let n = grid.n_intervals;
    let k = kinetic / (h * h);
    match bc {
        BoundaryCondition::Dirichlet => {
            // unknowns at nodes 1..n-1
            let m = n - 1;
            let mut diag = Vec::with_capacity(m);
            for i in 1..n {
                diag.push(2.0 * k + potential(i as f64 * h));
            }
            let offdiag = vec![-k; m - 1];
            Tridiagonal { diag, offdiag }
        }
        BoundaryCondition::Robin { beta } => {
            // unknowns at nodes 0..n-1 with the boundary node scaled by √2
            // so the ghost-point row stays symmetric
            let m = n;
            let mut diag = Vec::with_capacity(m);
            diag.push(2.0 * k + 2.0 * kinetic * beta / h + potential(0.0));
            for i in 1..n {
                diag.push(2.0 * k + potential(i as f64 * h));
            }
            let mut offdiag = vec![-k; m - 1];
            offdiag[0] = -std::f64::consts::SQRT_2 * k;
            Tridiagonal { diag, offdiag }
        }
    }
}

/// Number of eigenvalues strictly below `sigma` (Sturm count via the LDLᵀ
/// pivot signs).
fn count_below(t: &Tridiagonal, sigma: f64) -> usize {
    let tiny = 1e-300;
    let mut count = 0;
    let mut q = t.diag[0] - sigma;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..t.diag.len() {
        if q.abs() < tiny {
            q = -tiny;
        }
        let e = t.offdiag[i - 1];
        q = t.diag[i] - sigma - e * e / q;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` lowest eigenvalues by bisection on the Sturm count.
pub fn lowest_eigenvalues(t: &Tridiagonal, k: usize) -> Vec<f64> {
    let n = t.diag.len();
    assert!(k <= n);
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { t.offdiag[i - 1].abs() } else { 0.0 }
            + if i + 1 < n { t.offdiag[i].abs() } else { 0.0 };
        lo = lo.min(t.diag[i] - r);
        hi = hi.max(t.diag[i] + r);
    }
    let mut out = Vec::with_capacity(k);
    for idx in 0..k {
        let mut a = lo;
        let mut b = hi;
        // eigenvalue idx is the smallest sigma with count_below(sigma) > idx
        for _ in 0..120 {
            let mid = 0.5 * (a + b);
            if count_below(t, mid) > idx {
                b = mid;
            } else {
                a = mid;
            }
            if b - a <= f64::EPSILON * (b.abs() + a.abs() + 1.0) {
                break;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// Lowest eigenvalues together with inverse-iteration eigenvectors
/// (ℓ²-normalized in the unknown vector).
pub fn lowest_eigenpairs(
    t: &Tridiagonal,
    k: usize,
) -> Result<(Vec<f64>, Vec<Vec<f64>>), Eigen1dError> {
    let values = lowest_eigenvalues(t, k);
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
    for (idx, &lambda) in values.iter().enumerate() {
        let mut v = inverse_iteration(t, lambda, idx)?;
        // Orthogonalize inside near-degenerate clusters; simple spectra
        // leave this a no-op.
        for (jdx, prev) in vectors.iter().enumerate() {
            if (values[jdx] - lambda).abs() < 1e-6 * (1.0 + lambda.abs()) {
                let dot: f64 = v.iter().zip(prev).map(|(a, b)| a * b).sum();
                for (vi, pi) in v.iter_mut().zip(prev) {
                    *vi -= dot * pi;
                }
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for vi in &mut v {
            *vi /= norm;
        }
        vectors.push(v);
    }
    Ok((values, vectors))
}

fn inverse_iteration(t: &Tridiagonal, lambda: f64, index: usize) -> Result<Vec<f64>, Eigen1dError> {
    let n = t.diag.len();
    let shift = lambda + 1e-12 * (1.0 + lambda.abs());
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * (3.7 * i as f64).sin()).collect();
    let norm0: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut v {
        *x /= norm0;
    }
    for _ in 0..4 {
        let mut w = solve_shifted(t, shift, &v).ok_or(Eigen1dError::InverseIteration { index })?;
        let norm: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Eigen1dError::InverseIteration { index });
        }
        for x in &mut w {
            *x /= norm;
        }
        v = w;
    }
    Ok(v)
}

/// Solve (T - sigma I) x = b by tridiagonal LU with partial pivoting.
fn solve_shifted(t: &Tridiagonal, sigma: f64, b: &[f64]) -> Option<Vec<f64>> {
    let n = t.diag.len();
    // Band storage: d (main), du (first super), du2 (second super, fill-in).
    let mut d: Vec<f64> = t.diag.iter().map(|x| x - sigma).collect();
    let mut dl: Vec<f64> = t.offdiag.clone();
    let mut du: Vec<f64> = t.offdiag.clone();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let mut x = b.to_vec();

    for i in 0..n - 1 {
        if dl[i].abs() > d[i].abs() {
            // swap rows i and i+1
            std::mem::swap(&mut d[i], &mut dl[i]);
            let tmp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = tmp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = 0.0;
            }
            x.swap(i, i + 1);
        }
        if d[i] == 0.0 {
            d[i] = 1e-300;
        }
        let m = dl[i] / d[i];
        d[i + 1] -= m * du[i];
        if i + 2 < n {
            du[i + 1] -= m * du2[i];
        }
        x[i + 1] -= m * x[i];
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = 1e-300;
    }
    // back substitution
    x[n - 1] /= d[n - 1];
    if n >= 2 {
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
    if x.iter().all(|v| v.is_finite()) {
        Some(x)
    } else {
        None
    }
}
