//! Exact arithmetic layer: rationals, polynomials in q, canonical rational
//! functions, polynomials in y = q^x, and truncated power series.

mod gcd;
mod qpoly;
mod ratfn;
mod series;
mod ypoly;

pub use qpoly::{rat, rat_int, BigRat, QPoly};
pub use ratfn::QRatFn;
pub use series::{QSeries, TSeries};
pub use ypoly::{q_bracket_x, YPoly};
