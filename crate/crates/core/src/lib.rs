//! Benchmark lab for exploration-based gradient estimation: online linear
//! regression under three feedback models, REINFORCE-family estimators,
//! augmented random search, a finite-horizon LQR environment with a Riccati
//! oracle, and a deterministic experiment harness.

pub mod error;
pub mod linalg;
pub mod optim;
pub mod rng;

pub use error::{CoreError, Result};
pub use linalg::{Matrix, Vector};
pub use rng::{rng_derive, Label, RngStream};
