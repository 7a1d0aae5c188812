use super::laguerre::{binomial_upper, laguerre_unchecked};
use crate::error::{DkpError, Result};

const MAX_TERMS: usize = 500;
const TERM_RATIO_CUTOFF: f64 = 1e-17;

/// If `a` is a nonpositive integer −n, return n.
fn polynomial_degree(a: f64) -> Option<usize> {
    if a <= 0.0 && a.fract() == 0.0 {
        Some((-a) as usize)
    } else {
        None
    }
}

/// Confluent hypergeometric function ₁F₁(a; b; z) = M(a, b, z).
///
/// For a = −n and b > 0 the polynomial is evaluated as L_n^{(b−1)}(z)/C(n+b−1, n)
/// through the Laguerre recurrence, since the alternating series cancels badly
/// for large z. Other terminating cases sum the polynomial directly. Otherwise the power series is summed until two consecutive terms
/// fall below 1e−17 of the partial sum, with at most 500 terms.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    if !b.is_finite() || (b <= 0.0 && b == b.round()) {
        return Err(DkpError::Domain {
            function: "kummer_m",
            reason: format!("b = {b} must not be zero or a negative integer"),
        });
    }
    if !a.is_finite() || !z.is_finite() {
        return Err(DkpError::Domain {
            function: "kummer_m",
            reason: format!("non-finite argument (a = {a}, z = {z})"),
        });
    }

    let mut term = 1.0;
    let mut sum = 1.0;

    if let Some(n) = polynomial_degree(a) {
        if b > 0.0 {
            return Ok(laguerre_unchecked(n, b - 1.0, z) / binomial_upper(n, b - 1.0));
        }
        for k in 0..n {
            let kf = k as f64;
            term *= (a + kf) / (b + kf) * z / (kf + 1.0);
            sum += term;
        }
        return Ok(sum);
    }

    let mut small_in_a_row = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * z / (kf + 1.0);
        sum += term;
        if term.abs() < TERM_RATIO_CUTOFF * sum.abs() {
            small_in_a_row += 1;
            if small_in_a_row == 2 {
                return Ok(sum);
            }
        } else {
            small_in_a_row = 0;
        }
    }
    Err(DkpError::Convergence { terms: MAX_TERMS })
}
