//! Optimizers and running statistics: bias-corrected ADAM, SGD with momentum,
//! a ridge least-squares Newton step, and Welford moment tracking.

use ndarray::{Array1, ArrayView1, ArrayView2};

use crate::error::{CoreError, Result};
use crate::linalg::{solve_linear_system, Vector};

/// State for the ADAM optimizer (descent convention: parameters move against
/// the supplied gradient). Defaults beta1=0.9, beta2=0.999, eps=1e-8.
#[derive(Debug, Clone)]
pub struct AdamState {
    pub m: Vector,
    pub v: Vector,
    pub t: u64,
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl AdamState {
    pub fn new(dim: usize, lr: f64) -> Self {
        AdamState {
            m: Vector::zeros(dim),
            v: Vector::zeros(dim),
            t: 0,
            lr,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }

    /// One bias-corrected descent step in place.
    pub fn step(&mut self, params: &mut Vector, grad: &ArrayView1<f64>) -> Result<()> {
        if params.len() != self.m.len() || grad.len() != self.m.len() {
            return Err(CoreError::DimensionMismatch {
                context: "adam_step",
                expected: self.m.len(),
                got: if params.len() != self.m.len() {
                    params.len()
                } else {
                    grad.len()
                },
            });
        }
        self.t += 1;
        let b1 = self.beta1;
        let b2 = self.beta2;
        for i in 0..params.len() {
            let g = grad[i];
            self.m[i] = b1 * self.m[i] + (1.0 - b1) * g;
            self.v[i] = b2 * self.v[i] + (1.0 - b2) * g * g;
        }
        let corr1 = 1.0 - b1.powi(self.t as i32);
        let corr2 = 1.0 - b2.powi(self.t as i32);
        for i in 0..params.len() {
            let m_hat = self.m[i] / corr1;
            let v_hat = self.v[i] / corr2;
            params[i] -= self.lr * m_hat / (v_hat.sqrt() + self.eps);
        }
        Ok(())
    }
}

/// SGD with momentum: `velocity <- momentum*velocity + grad`,
/// `params <- params - lr*velocity`.
pub fn sgd_momentum_step(
    params: &mut Vector,
    velocity: &mut Vector,
    grad: &ArrayView1<f64>,
    lr: f64,
    momentum: f64,
) -> Result<()> {
    if params.len() != velocity.len() || grad.len() != params.len() {
        return Err(CoreError::DimensionMismatch {
            context: "sgd_momentum_step",
            expected: params.len(),
            got: if velocity.len() != params.len() {
                velocity.len()
            } else {
                grad.len()
            },
        });
    }
    for i in 0..params.len() {
        velocity[i] = momentum * velocity[i] + grad[i];
        params[i] -= lr * velocity[i];
    }
    Ok(())
}

/// Least-squares minimizer of `||X w - y||^2 + ridge ||w||^2` via the normal
/// equations. For square loss a single Newton step from anywhere lands here.
pub fn newton_ls_step(
    x_batch: &ArrayView2<f64>,
    y_batch: &ArrayView1<f64>,
    ridge: f64,
) -> Result<Vector> {
    if x_batch.nrows() == 0 {
        return Err(CoreError::InvalidArgument("empty batch".into()));
    }
    if x_batch.nrows() != y_batch.len() {
        return Err(CoreError::DimensionMismatch {
            context: "newton_ls_step",
            expected: x_batch.nrows(),
            got: y_batch.len(),
        });
    }
    assert!(ridge >= 0.0, "ridge must be nonnegative");
    let xtx = x_batch.t().dot(x_batch);
    let xty = x_batch.t().dot(y_batch);
    solve_linear_system(&xtx.view(), &xty.view(), ridge).map_err(|e| match e {
        CoreError::NotPositiveDefinite => CoreError::RankDeficient,
        other => other,
    })
}

/// Welford running mean and sum of squared deviations, entrywise.
/// Variance uses the population convention `M2 / n`.
#[derive(Debug, Clone)]
pub struct RunningMoments {
    pub count: u64,
    pub mean: Vector,
    pub m2: Vector,
}

impl RunningMoments {
    pub fn new(dim: usize) -> Self {
        RunningMoments {
            count: 0,
            mean: Vector::zeros(dim),
            m2: Vector::zeros(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// Single-pass Welford update.
    pub fn update(&mut self, x: &ArrayView1<f64>) -> Result<()> {
        if x.len() != self.mean.len() {
            return Err(CoreError::DimensionMismatch {
                context: "running_moments_update",
                expected: self.mean.len(),
                got: x.len(),
            });
        }
        self.count += 1;
        let n = self.count as f64;
        for i in 0..x.len() {
            let delta = x[i] - self.mean[i];
            self.mean[i] += delta / n;
            self.m2[i] += delta * (x[i] - self.mean[i]);
        }
        Ok(())
    }

    /// Entrywise population variance; zeros when empty.
    pub fn variance(&self) -> Vector {
        if self.count == 0 {
            return Vector::zeros(self.mean.len());
        }
        self.m2.mapv(|m| m / self.count as f64)
    }

    pub fn std(&self) -> Vector {
        self.variance().mapv(f64::sqrt)
    }
}
