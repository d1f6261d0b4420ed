//! Evaluation of generalized Kontsevich integrals as Airy-function
//! determinants, exponential Pade approximants and their zero
//! configurations, exact Lenard-Magri differential polynomials, and
//! numerical residual checks against the first Painleve hierarchy.
//!
//! All floating work runs on one of two fixed precision tiers (32 or 64
//! decimal digits) and is deterministic at a fixed tier.

pub mod airy;
pub mod error;
pub mod kontsevich;
pub mod lenard;
pub mod num;
pub mod pade;
pub mod painleve;
pub(crate) mod quad;

pub use error::{Error, Result};
