//! Adaptive Dormand–Prince 5(4) stepper for linear second-order equations
//! u'' = k(x) u, written as a first-order system in (u, u').

use crate::error::{DkpError, Result};

const MAX_STEPS: usize = 2_000_000;
const RESCALE_ABOVE: f64 = 1e100;
const SAFETY: f64 = 0.9;

// Dormand–Prince tableau
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b − b* (fifth minus embedded fourth order weights)
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

pub type State = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearRun {
    /// Final (u, u'), rescaled by an unrecorded positive factor when the
    /// solution grew past 1e100.
    pub state: State,
    /// Sign changes of u at accepted step boundaries.
    pub sign_changes: usize,
    pub steps: usize,
    pub rejected: usize,
}

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Integrate u'' = k(x) u from `x0` to `x1` (either direction).
///
/// The local error of each step is measured against tol·(|u| + |x|·|u'|) for
/// u and the same scale divided by |x| for u', so a solution that passes
/// through zero keeps a sensible error scale.
pub fn integrate_linear(
    k: impl Fn(f64) -> f64,
    x0: f64,
    y0: State,
    x1: f64,
    tol: f64,
    h0: f64,
) -> Result<LinearRun> {
    if !(tol > 0.0) || !x0.is_finite() || !x1.is_finite() {
        return Err(DkpError::InvalidParameter {
            name: "ode",
            reason: format!("tol = {tol}, interval [{x0}, {x1}]"),
        });
    }
    let f = |x: f64, y: &State| -> State { [y[1], k(x) * y[0]] };
    let dir = if x1 >= x0 { 1.0 } else { -1.0 };
    let span = (x1 - x0).abs();
    let mut h = h0.abs().min(span).max(f64::MIN_POSITIVE) * dir;
    let mut x = x0;
    let mut y = y0;
    let mut k1 = f(x, &y);
    let mut run = LinearRun {
        state: y,
        sign_changes: 0,
        steps: 0,
        rejected: 0,
    };
    if span == 0.0 {
        return Ok(run);
    }

    while (x1 - x) * dir > 0.0 {
        if run.steps + run.rejected >= MAX_STEPS {
            return Err(DkpError::OdeStep {
                x,
                reason: format!("step budget {MAX_STEPS} exhausted"),
            });
        }
        let last = (x + h - x1) * dir >= 0.0;
        if last {
            h = x1 - x;
        }
        let k2 = f(x + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = f(x + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(x + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            x + C5 * h,
            &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            x + h,
            &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        );
        let y_new = axpy(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let x_new = if last { x1 } else { x + h };
        let k7 = f(x_new, &y_new);
        let err = axpy(
            &[0.0, 0.0],
            h,
            &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
        );

        let ax = x.abs().max(x_new.abs());
        let scale = y[0].abs().max(y_new[0].abs()) + ax * y[1].abs().max(y_new[1].abs());
        let ratio = if scale > 0.0 {
            (err[0].abs() / scale).max(ax * err[1].abs() / scale) / tol
        } else {
            f64::INFINITY
        };
        if !ratio.is_finite() || !y_new[0].is_finite() || !y_new[1].is_finite() {
            return Err(DkpError::OdeStep {
                x,
                reason: "non-finite state or error estimate".into(),
            });
        }

        if ratio <= 1.0 {
            if y_new[0] != 0.0 && y[0] != 0.0 && (y_new[0] > 0.0) != (y[0] > 0.0) {
                run.sign_changes += 1;
            }
            x = x_new;
            y = y_new;
            k1 = k7;
            run.steps += 1;
            let mag = y[0].abs().max(ax * y[1].abs());
            if mag > RESCALE_ABOVE {
                let s = 1.0 / mag;
                y = [y[0] * s, y[1] * s];
                k1 = [k1[0] * s, k1[1] * s];
            }
        } else {
            run.rejected += 1;
        }
        let factor = if ratio == 0.0 {
            5.0
        } else {
            (SAFETY * ratio.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h.abs() <= 4.0 * f64::EPSILON * x.abs() {
            return Err(DkpError::OdeStep {
                x,
                reason: format!("step size {h} underflows"),
            });
        }
    }
    run.state = y;
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_phase() {
        // u'' = −u, u(0)=0, u'(0)=1 → sin x; counts zeros at π, 2π, 3π
        let run = integrate_linear(|_| -1.0, 0.0, [0.0, 1.0], 10.0, 1e-12, 1e-3).unwrap();
        assert!((run.state[0] - 10f64.sin()).abs() < 1e-9);
        assert!((run.state[1] - 10f64.cos()).abs() < 1e-9);
        assert_eq!(run.sign_changes, 3);
    }

    #[test]
    fn backward_decaying_exponential() {
        // u'' = u from x = 5 inward with e^{−x}
        let y0 = [(-5f64).exp(), -(-5f64).exp()];
        let run = integrate_linear(|_| 1.0, 5.0, y0, 1.0, 1e-12, -1e-3).unwrap();
        let want = (-1f64).exp();
        assert!((run.state[0] - want).abs() < 1e-10 * want);
    }

    #[test]
    fn rescaling_preserves_log_derivative() {
        let run = integrate_linear(|_| 4.0, 0.0, [1.0, 2.0], 200.0, 1e-11, 1e-3).unwrap();
        assert!(run.state[0].abs() <= 1e101);
        assert!((run.state[1] / run.state[0] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn euler_type_power_law() {
        // u'' = s(s−1)/x² u has the solution x^s
        let s = 0.8;
        let k = |x: f64| s * (s - 1.0) / (x * x);
        let x0: f64 = 1e-6;
        let run = integrate_linear(k, x0, [x0.powf(s), s * x0.powf(s - 1.0)], 3.0, 1e-11, 1e-8).unwrap();
        let want = 3f64.powf(s);
        assert!((run.state[0] - want).abs() < 1e-8 * want);
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(integrate_linear(|_| 0.0, 0.0, [1.0, 0.0], 1.0, 0.0, 0.1).is_err());
    }
}
