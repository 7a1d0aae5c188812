//! Associated Laguerre polynomials, Kummer's function M and quadrature.

mod kummer;
mod laguerre;
mod quadrature;

pub use kummer::kummer_m;
pub use laguerre::{binomial_upper, laguerre, laguerre_derivative, laguerre_second_derivative};
pub(crate) use laguerre::laguerre_unchecked;
pub use quadrature::{
    envelope_cutoff, integrate, QuadratureKind, QuadratureResult, QuadratureRule,
};
