//! Exact arithmetic on a finitely representable fragment of the surreal
//! numbers, viewed as a field of transseries over the monomials `exp(gamma)`.
//!
//! Values are finite Hahn series with rational coefficients, optionally
//! carrying schematic tails `c * sum_{i >= s} log_i(kappa_{-alpha})` and an
//! additive remainder bound `O(m)`. On top of the field operations the crate
//! provides the order hierarchy (dominance, levels, kappa classes), exp/log,
//! nested truncations and their rank, the path-based derivation and
//! asymptotic integration.
//!
//! ```
//! use surreal_core::{deriv, PrecisionContext, Transseries};
//!
//! let ctx = PrecisionContext::default();
//! let w = Transseries::omega();
//! let log_w = Transseries::atom(0, -1);
//! let x = w.mul(&log_w, &ctx);
//! let dx = deriv::derive(&x, &deriv::DerivationConfig::SIMPLEST, &ctx);
//! assert_eq!(dx, log_w.add(&Transseries::one()));
//! ```
#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod context;
pub mod deriv;
pub mod error;
pub mod explog;
mod fmt;
pub mod integrate;
pub mod monomial;
pub mod nested;
pub mod order;
pub mod series;

pub use context::PrecisionContext;
pub use error::{Error, Result};
pub use monomial::Monomial;
pub use series::{Coefficient, PurelyInfinite, TailFamily, Term, Transseries};
