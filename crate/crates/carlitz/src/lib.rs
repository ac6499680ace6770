//! Exact arithmetic for Carlitz q-Euler and q-Changhee numbers and
//! polynomials.
//!
//! Everything is computed over the rational-function field in q, with q^x
//! carried as an independent formal variable y, so each identity in the suite
//! is decided by canonical-form equality rather than numerics. A small p-adic
//! laboratory corroborates the same identities a second way, as finite
//! truncations of fermionic p-adic q-integrals with valuation diagnostics.

pub mod changhee;
pub mod combinat;
pub mod error;
pub mod euler;
pub mod exact;
pub mod padic;

pub use error::{Error, Result};
