//! Time-series econometrics toolkit: unit-root testing, ARDL bounds
//! cointegration with error correction, FMOLS/DOLS/CCR robustness
//! estimators, Granger causality, residual and stability diagnostics,
//! and a seeded Monte Carlo engine that doubles as the verification
//! oracle for every statistical procedure in the crate.

pub mod dataio;
pub mod error;
pub mod linreg;
pub mod ardl;
pub mod coint;
pub mod unitroot;

pub use error::{Error, Result};
