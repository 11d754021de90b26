//! Small dense linear-algebra kernels: projections, SPD solves, a symmetric
//! eigensolver, and a spectral-radius estimate. Only the kernels the learners
//! need; this is not a general-purpose linear algebra layer.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::error::{CoreError, Result};

/// Dense double-precision vector used throughout the crate.
pub type Vector = Array1<f64>;
/// Dense double-precision matrix used throughout the crate.
pub type Matrix = Array2<f64>;

/// Euclidean norm.
#[inline]
pub fn norm2(v: &ArrayView1<f64>) -> f64 {
    v.dot(v).sqrt()
}

/// Rank-one product `a b^T`.
pub fn outer(a: &ArrayView1<f64>, b: &ArrayView1<f64>) -> Matrix {
    let mut m = Matrix::zeros((a.len(), b.len()));
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            m[[i, j]] = ai * bj;
        }
    }
    m
}

/// Exact Euclidean projection onto the L2 ball of the given radius:
/// identity inside the ball, radial rescaling outside.
pub fn project_l2_ball(v: &ArrayView1<f64>, radius: f64) -> Vector {
    assert!(radius > 0.0, "projection radius must be positive");
    let norm = norm2(v);
    if norm <= radius {
        v.to_owned()
    } else {
        v.mapv(|x| x * (radius / norm))
    }
}

fn frobenius(a: &ArrayView2<f64>) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Spectral radius estimate via Gelfand's formula rho = lim ||A^k||^(1/k),
/// computed by repeated squaring with Frobenius renormalization until
/// successive estimates differ by less than `tol` (relative).
///
/// Repeated squaring handles complex dominant eigenvalue pairs (rotations)
/// that defeat plain power iteration.
pub fn spectral_radius(a: &ArrayView2<f64>, tol: f64) -> Result<f64> {
    if a.nrows() != a.ncols() {
        return Err(CoreError::InvalidArgument(format!(
            "spectral_radius needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    assert!(tol > 0.0, "tolerance must be positive");
    let mut b = a.to_owned();
    let mut power = 1.0f64; // current k in A^k
    let mut log_scale = 0.0f64; // log of the norm factored out of b
    let mut prev = f64::INFINITY;
    for _ in 0..120 {
        let norm = frobenius(&b.view());
        if norm == 0.0 {
            return Ok(0.0); // nilpotent: A^k vanished exactly
        }
        let estimate = ((norm.ln() + log_scale) / power).exp();
        if (estimate - prev).abs() <= tol * estimate.max(f64::MIN_POSITIVE) {
            return Ok(estimate);
        }
        prev = estimate;
        b.mapv_inplace(|x| x / norm);
        log_scale += norm.ln();
        b = b.dot(&b);
        power *= 2.0;
        log_scale *= 2.0;
    }
    Ok(prev)
}

/// Lower-triangular Cholesky factor of a symmetric matrix, or `None` when a
/// pivot falls below the positive-definiteness floor.
pub(crate) fn cholesky(a: &ArrayView2<f64>) -> Option<Matrix> {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    let scale = a
        .diag()
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let mut l = Matrix::zeros((n, n));
    for j in 0..n {
        let mut d = a[[j, j]];
        for k in 0..j {
            d -= l[[j, k]] * l[[j, k]];
        }
        if !(d > scale * 1e-13) {
            return None;
        }
        let dj = d.sqrt();
        l[[j, j]] = dj;
        for i in (j + 1)..n {
            let mut s = a[[i, j]];
            for k in 0..j {
                s -= l[[i, k]] * l[[j, k]];
            }
            l[[i, j]] = s / dj;
        }
    }
    Some(l)
}

fn cholesky_solve(l: &Matrix, g: &ArrayView1<f64>) -> Vector {
    let n = l.nrows();
    // forward: L z = g
    let mut z = Vector::zeros(n);
    for i in 0..n {
        let mut s = g[i];
        for k in 0..i {
            s -= l[[i, k]] * z[k];
        }
        z[i] = s / l[[i, i]];
    }
    // backward: L^T x = z
    let mut x = Vector::zeros(n);
    for i in (0..n).rev() {
        let mut s = z[i];
        for k in (i + 1)..n {
            s -= l[[k, i]] * x[k];
        }
        x[i] = s / l[[i, i]];
    }
    x
}

/// Solve `(F + damping I) x = g` for symmetric positive semidefinite `F` via
/// Cholesky; on failure retries once with ten times the damping.
pub fn solve_linear_system(f: &ArrayView2<f64>, g: &ArrayView1<f64>, damping: f64) -> Result<Vector> {
    if f.nrows() != f.ncols() {
        return Err(CoreError::InvalidArgument(format!(
            "solve_linear_system needs a square matrix, got {}x{}",
            f.nrows(),
            f.ncols()
        )));
    }
    if f.nrows() != g.len() {
        return Err(CoreError::DimensionMismatch {
            context: "solve_linear_system",
            expected: f.nrows(),
            got: g.len(),
        });
    }
    assert!(damping >= 0.0, "damping must be nonnegative");
    let damped = |lambda: f64| {
        let mut m = f.to_owned();
        for i in 0..m.nrows() {
            m[[i, i]] += lambda;
        }
        m
    };
    if let Some(l) = cholesky(&damped(damping).view()) {
        return Ok(cholesky_solve(&l, g));
    }
    if let Some(l) = cholesky(&damped(10.0 * damping).view()) {
        return Ok(cholesky_solve(&l, g));
    }
    Err(CoreError::NotPositiveDefinite)
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns (eigenvalues, eigenvectors as columns); no ordering guarantee.
pub(crate) fn sym_eigen(a: &ArrayView2<f64>) -> (Vector, Matrix) {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    let mut m = a.to_owned();
    let mut v = Matrix::eye(n);
    let scale = frobenius(a).max(f64::MIN_POSITIVE);
    for _sweep in 0..60 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[[i, j]] * m[[i, j]];
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[[p, q]];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[[q, q]] - m[[p, p]]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[[k, p]];
                    let mkq = m[[k, q]];
                    m[[k, p]] = c * mkp - s * mkq;
                    m[[k, q]] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[[p, k]];
                    let mqk = m[[q, k]];
                    m[[p, k]] = c * mpk - s * mqk;
                    m[[q, k]] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }
    (m.diag().to_owned(), v)
}
