use crate::error::{DkpError, Result};

fn check_order(a: f64) -> Result<()> {
    if !(a > -1.0) || !a.is_finite() {
        return Err(DkpError::Domain {
            function: "laguerre",
            reason: format!("order a = {a} must be finite and > -1"),
        });
    }
    Ok(())
}

/// Associated Laguerre polynomial L_n^{(a)}(z) by forward recurrence.
pub fn laguerre(n: usize, a: f64, z: f64) -> Result<f64> {
    check_order(a)?;
    Ok(laguerre_unchecked(n, a, z))
}

/// Recurrence without the `a > −1` check. The derivative identities shift
/// the order upward, so callers that already validated `a` use this.
pub(crate) fn laguerre_unchecked(n: usize, a: f64, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + a - z;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - z) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// d/dz L_n^{(a)}(z) = −L_{n−1}^{(a+1)}(z)
pub fn laguerre_derivative(n: usize, a: f64, z: f64) -> Result<f64> {
    check_order(a)?;
    Ok(if n == 0 {
        0.0
    } else {
        -laguerre_unchecked(n - 1, a + 1.0, z)
    })
}

/// d²/dz² L_n^{(a)}(z) = L_{n−2}^{(a+2)}(z)
pub fn laguerre_second_derivative(n: usize, a: f64, z: f64) -> Result<f64> {
    check_order(a)?;
    Ok(if n < 2 {
        0.0
    } else {
        laguerre_unchecked(n - 2, a + 2.0, z)
    })
}

/// Generalized binomial coefficient C(n + a, n) = Γ(n + a + 1) / (Γ(a + 1) n!).
pub fn binomial_upper(n: usize, a: f64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * (a + k as f64) / k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Σ_k (−1)^k C(n+a, n−k) z^k / k!, summed directly. Also returns the
    /// sum of magnitudes, the scale of the cancellation error.
    fn explicit_series_with_scale(n: usize, a: f64, z: f64) -> (f64, f64) {
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for k in 0..=n {
            // C(n+a, n−k) = Π_{j=1}^{n−k} (a + k + j) / j
            let binom = (1..=(n - k)).fold(1.0, |acc, j| acc * (a + (k + j) as f64) / j as f64);
            let fact: f64 = (1..=k).map(|j| j as f64).product();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let term = binom * z.powi(k as i32) / fact;
            sum += sign * term;
            abs_sum += term.abs();
        }
        (sum, abs_sum)
    }

    fn explicit_series(n: usize, a: f64, z: f64) -> f64 {
        explicit_series_with_scale(n, a, z).0
    }

    #[test]
    fn zeroth_is_one() {
        for &(a, z) in &[(0.0, 0.0), (0.3, 7.0), (-0.5, 100.0)] {
            assert_eq!(laguerre(0, a, z).unwrap(), 1.0);
        }
    }

    #[test]
    fn first_is_linear() {
        assert_eq!(laguerre(1, 0.5, 2.0).unwrap(), -0.5);
    }

    #[test]
    fn second_matches_explicit_series() {
        let expected = explicit_series(2, 0.0, 1.0);
        assert!((expected + 0.5).abs() < 1e-15);
        assert!((laguerre(2, 0.0, 1.0).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn recurrence_matches_series_for_moderate_degree() {
        for n in 0..=12 {
            for &a in &[0.2, 0.69, 0.8] {
                for &z in &[0.0, 0.5, 3.0, 9.0] {
                    let lhs = laguerre(n, a, z).unwrap();
                    let (rhs, scale) = explicit_series_with_scale(n, a, z);
                    assert!((lhs - rhs).abs() < 1e-12 * scale, "n={n} a={a} z={z}");
                }
            }
        }
    }

    #[test]
    fn value_at_origin_is_binomial() {
        for n in 0..10 {
            let a = 0.7;
            let l = laguerre(n, a, 0.0).unwrap();
            assert!((l - binomial_upper(n, a)).abs() < 1e-13 * l.abs());
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let (n, a, z) = (5, 0.6, 2.3);
        let h = 1e-5;
        let fd = (laguerre(n, a, z + h).unwrap() - laguerre(n, a, z - h).unwrap()) / (2.0 * h);
        assert!((laguerre_derivative(n, a, z).unwrap() - fd).abs() < 1e-8);
        let fd2 = (laguerre_derivative(n, a, z + h).unwrap()
            - laguerre_derivative(n, a, z - h).unwrap())
            / (2.0 * h);
        assert!((laguerre_second_derivative(n, a, z).unwrap() - fd2).abs() < 1e-7);
    }

    #[test]
    fn rejects_order_at_or_below_minus_one() {
        assert!(matches!(laguerre(3, -1.0, 1.0), Err(DkpError::Domain { .. })));
        assert!(laguerre(3, -1.5, 1.0).is_err());
        assert!(laguerre(3, f64::NAN, 1.0).is_err());
    }
}
