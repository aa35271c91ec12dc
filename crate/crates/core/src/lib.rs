//! Error-probability bounds for Gaussian quantum illumination.
//!
//! The crate is organised bottom-up:
//!
//! - [`symplectic`]: covariance matrices, symplectic transforms, Williamson
//!   decomposition and logarithmic negativity for `n`-mode Gaussian states.
//! - [`models`]: the target-absent / target-present hypothesis pairs for the
//!   three probe families (two-mode squeezed vacuum, locally squeezed TMSV,
//!   globally two-mode-squeezed TMSV), together with their closed-form
//!   symplectic data.
//! - [`bounds`]: the Gaussian overlap `Q_s = Tr[ρ0^s ρ1^(1-s)]`, the
//!   Bhattacharyya and Chernoff bounds, the coherent-state benchmark, the
//!   large-background asymptotics and the advantage factors.
//! - [`oracle`]: a brute-force truncated Fock-space simulation of the same
//!   protocol, used to validate everything above.
//!
//! # Conventions
//!
//! Quadratures are ordered `(x1, p1, x2, p2, ...)` with `x = a + a†` and
//! `p = -i(a - a†)`, so the vacuum covariance matrix is the identity and a
//! thermal mode with mean photon number `N` has variance `2N + 1`. Mode 1 is
//! the signal (or the return from the target region), mode 2 is the idler.

pub mod bounds;
pub mod error;
pub mod minimize;
pub mod models;
pub mod oracle;
pub mod precision;
pub mod symplectic;

pub use error::{Error, Result};
