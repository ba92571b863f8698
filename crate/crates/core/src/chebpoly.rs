//! Chebyshev polynomials of the second kind.
//!
//! `U_n` is defined by `U_n(x) = 2x U_{n-1}(x) - U_{n-2}(x)` with `U_0 = 1` and
//! `U_{-1} = 0`. On `[-1, 1]` it is `sin((n+1)v)/sin v` with `x = cos v`; off
//! the interval it is `sinh((n+1)u)/sinh u` with `|x| = cosh u` and grows like
//! `e^{nu}`, so large-degree values are also available in log-magnitude form.
//!
//! The tridiagonal determinants that reduce the ribbon eigenproblems to
//! secular equations live here as well.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Above this value of `n * arccosh|x|` the plain value is computed from its
/// logarithm instead of the forward recurrence.
pub const LOG_DOMAIN_THRESHOLD: f64 = 300.0;

const RESCALE_AT: f64 = 1e150;

/// A real number stored as `sign * exp(ln_abs)`. Zero has `sign == 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub sign: f64,
    pub ln_abs: f64,
}

impl SignedLog {
    pub fn zero() -> Self {
        SignedLog {
            sign: 0.0,
            ln_abs: f64::NEG_INFINITY,
        }
    }

    pub fn from_f64(value: f64) -> Self {
        if value == 0.0 {
            Self::zero()
        } else {
            SignedLog {
                sign: value.signum(),
                ln_abs: value.abs().ln(),
            }
        }
    }

    /// May overflow to `±inf`.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }

    /// `self / other` as an ordinary float.
    pub fn ratio(self, other: SignedLog) -> f64 {
        if self.sign == 0.0 {
            return 0.0;
        }
        self.sign * other.sign * (self.ln_abs - other.ln_abs).exp()
    }
}

/// `ln sinh(t)` for `t > 0`, without overflow.
pub fn ln_sinh(t: f64) -> f64 {
    debug_assert!(t > 0.0);
    if t > 20.0 {
        t - std::f64::consts::LN_2 + (-(-2.0 * t).exp()).ln_1p()
    } else {
        t.sinh().ln()
    }
}

/// `sinh(a u) / sinh(b u)` for `a >= 0`, `b > 0`, `u > 0`, stable for large `u`.
pub fn sinh_ratio(a: f64, b: f64, u: f64) -> f64 {
    debug_assert!(b > 0.0 && u > 0.0 && a >= 0.0);
    if a == 0.0 {
        return 0.0;
    }
    if a.max(b) * u > 20.0 {
        ((a - b) * u).exp() * (-(-2.0 * a * u).exp_m1()) / (-(-2.0 * b * u).exp_m1())
    } else {
        (a * u).sinh() / (b * u).sinh()
    }
}

/// `U_n(x)` by the three-term recurrence.
///
/// Negative degrees follow the backward recurrence, `U_{-1} = 0` and
/// `U_{-m} = -U_{m-2}`. When `n * arccosh|x|` exceeds
/// [`LOG_DOMAIN_THRESHOLD`] the value is rebuilt from [`u_eval_log`]; it is
/// `±inf` once it leaves the range of `f64`.
pub fn u_eval(n: i64, x: f64) -> f64 {
    if n == -1 {
        return 0.0;
    }
    if n < -1 {
        return -u_eval(-n - 2, x);
    }
    if x.abs() > 1.0 && n as f64 * x.abs().acosh() > LOG_DOMAIN_THRESHOLD {
        return u_eval_log(n, x).to_f64();
    }
    recurrence(n, x)
}

fn recurrence(n: i64, x: f64) -> f64 {
    let two_x = 2.0 * x;
    let mut prev = 0.0;
    let mut cur = 1.0;
    for _ in 0..n {
        let next = two_x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_n(x)` in log-magnitude + sign form. Finite for any `|x| <= 10` and any
/// degree representable here.
pub fn u_eval_log(n: i64, x: f64) -> SignedLog {
    if n == -1 {
        return SignedLog::zero();
    }
    if n < -1 {
        let v = u_eval_log(-n - 2, x);
        return SignedLog {
            sign: -v.sign,
            ln_abs: v.ln_abs,
        };
    }
    if x.abs() <= 1.0 {
        return SignedLog::from_f64(recurrence(n, x));
    }
    // Reflection U_n(-x) = (-1)^n U_n(x).
    let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let u = x.abs().acosh();
    if u == 0.0 {
        return SignedLog::from_f64(sign * (n + 1) as f64);
    }
    SignedLog {
        sign,
        ln_abs: ln_sinh((n + 1) as f64 * u) - ln_sinh(u),
    }
}

/// `U_n(cos v) = sin((n+1)v) / sin v`.
pub fn u_trig(n: i64, v: f64) -> Result<f64> {
    let turns = v / PI;
    if (turns - turns.round()).abs() < 1e-12 {
        return Err(Error::Singular(format!(
            "v = {v} is a multiple of pi; use u_eval"
        )));
    }
    Ok(((n + 1) as f64 * v).sin() / v.sin())
}

/// `U_n(cosh u) = sinh((n+1)u) / sinh u` for `u > 0`.
pub fn u_hyp(n: i64, u: f64) -> Result<f64> {
    let ln = u_hyp_ln(n, u)?;
    if n < -1 {
        return Ok(-ln.exp());
    }
    Ok(ln.exp())
}

/// `ln |U_n(cosh u)|`, the ratio-safe form of [`u_hyp`].
pub fn u_hyp_ln(n: i64, u: f64) -> Result<f64> {
    if u <= 0.0 || u.is_nan() {
        return Err(Error::Domain(format!("decay parameter u = {u} must be > 0")));
    }
    if n == -1 {
        return Ok(f64::NEG_INFINITY);
    }
    let m = if n < -1 { -n - 2 } else { n };
    Ok(ln_sinh((m + 1) as f64 * u) - ln_sinh(u))
}

/// The `n` zeros `cos(pi j / (n+1))`, `j = 1..n`, in descending order.
pub fn u_zeros(n: i64) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::Domain(format!("U_{n} has no zeros")));
    }
    let denom = 2.0 * (n + 1) as f64;
    // cos(pi j/(n+1)) written as a sine so the middle zero is exactly 0 and
    // the set is exactly symmetric.
    Ok((1..=n)
        .map(|j| ((n + 1 - 2 * j) as f64 * PI / denom).sin())
        .collect())
}

/// `U_n`, `U_{n-1}`, `U_{n-2}` at the same argument, each multiplied by
/// `exp(-ln_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledTriple {
    pub ln_scale: f64,
    pub un: f64,
    pub un1: f64,
    pub un2: f64,
}

/// Forward recurrence with periodic rescaling, so that linear combinations of
/// neighbouring degrees can be formed for any `n` without overflow.
pub fn u_scaled(n: i64, x: f64) -> ScaledTriple {
    if n < 1 {
        return ScaledTriple {
            ln_scale: 0.0,
            un: u_eval(n, x),
            un1: u_eval(n - 1, x),
            un2: u_eval(n - 2, x),
        };
    }
    let two_x = 2.0 * x;
    let mut ln_scale = 0.0;
    // (U_{m-2}, U_{m-1}, U_m) starting at m = 0.
    let (mut a, mut b, mut c) = (-1.0, 0.0, 1.0);
    for _ in 0..n {
        let next = two_x * c - b;
        a = b;
        b = c;
        c = next;
        if c.abs() > RESCALE_AT {
            a /= RESCALE_AT;
            b /= RESCALE_AT;
            c /= RESCALE_AT;
            ln_scale += RESCALE_AT.ln();
        }
    }
    ScaledTriple {
        ln_scale,
        un: c,
        un1: b,
        un2: a,
    }
}

/// `A_n`: determinant of the `n x n` tridiagonal matrix with `w/|xi|` on the
/// diagonal and ones beside it; equals `U_n(w / (2|xi|))`.
pub fn det_unperturbed(n: i64, w: f64, xi_abs: f64) -> f64 {
    u_eval(n, w / (2.0 * xi_abs))
}

/// `D_n`: as [`det_unperturbed`] but with `w_tilde/|xi|` in the upper-left
/// corner. Expanding along the first row gives
/// `D_n = (w_tilde/|xi|) A_{n-1} - A_{n-2}`.
pub fn det_perturbed_corner(n: i64, w: f64, w_tilde: f64, xi_abs: f64) -> f64 {
    debug_assert!(n >= 1 && xi_abs > 0.0);
    w_tilde / xi_abs * det_unperturbed(n - 1, w, xi_abs) - det_unperturbed(n - 2, w, xi_abs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn base_cases() {
        assert_eq!(u_eval(-1, 0.7), 0.0);
        assert_eq!(u_eval(0, 0.3), 1.0);
        assert_eq!(u_eval(4, 1.0), 5.0);
        assert_eq!(u_eval(3, 0.5), -1.0);
        assert_eq!(u_eval(-2, 0.4), -1.0);
    }

    #[test]
    fn trig_examples() {
        assert!((u_trig(1, PI / 3.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((u_trig(2, PI / 2.0).unwrap() + 1.0).abs() < 1e-15);
        let v = 0.7;
        assert!(rel(u_trig(5, v).unwrap(), u_eval(5, v.cos())) < 1e-12);
        assert!(matches!(u_trig(3, 0.0), Err(Error::Singular(_))));
        assert!(matches!(u_trig(3, -2.0 * PI), Err(Error::Singular(_))));
    }

    #[test]
    fn hyperbolic_examples() {
        assert!((u_hyp(0, 0.9).unwrap() - 1.0).abs() < 1e-15);
        let u: f64 = 0.37;
        assert!(rel(u_hyp(1, u).unwrap(), 2.0 * u.cosh()) < 1e-14);
        assert!(rel(u_hyp(30, 1.0).unwrap(), recurrence(30, 1f64.cosh())) < 1e-10);
        assert!(matches!(u_hyp(3, 0.0), Err(Error::Domain(_))));
        assert!(matches!(u_hyp(3, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn zeros_small() {
        assert_eq!(u_zeros(1).unwrap(), vec![0.0]);
        let z = u_zeros(2).unwrap();
        assert!((z[0] - 0.5).abs() < 1e-15 && (z[1] + 0.5).abs() < 1e-15);
        let z = u_zeros(5).unwrap();
        assert_eq!(z.len(), 5);
        for x in z {
            assert!(u_eval(5, x).abs() < 1e-12);
        }
        assert!(u_zeros(0).is_err());
    }

    #[test]
    fn reflection() {
        for n in 0..40 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for &x in &[0.3, 0.99, 1.7, 4.0] {
                assert!(rel(u_eval(n, -x), sign * u_eval(n, x)) < 1e-13);
            }
        }
        let l = u_eval_log(401, -3.0);
        assert_eq!(l.sign, -1.0);
    }

    #[test]
    fn log_domain_is_finite() {
        let l = u_eval_log(10_000, 10.0);
        assert!(l.ln_abs.is_finite());
        let expected = (10_001.0 * 10f64.acosh()) - std::f64::consts::LN_2 - 10f64.acosh().sinh().ln();
        assert!(rel(l.ln_abs, expected) < 1e-12);
        assert_eq!(u_eval(10_000, 10.0), f64::INFINITY);
        assert_eq!(u_eval(10_001, -10.0), f64::NEG_INFINITY);
    }

    #[test]
    fn scaled_triple_matches_plain_values() {
        for &x in &[-1.3, -0.4, 0.9, 2.5] {
            let s = u_scaled(25, x);
            assert_eq!(s.ln_scale, 0.0);
            assert!(rel(s.un, u_eval(25, x)) < 1e-12);
            assert!(rel(s.un1, u_eval(24, x)) < 1e-12);
            assert!(rel(s.un2, u_eval(23, x)) < 1e-12);
        }
        let s = u_scaled(2000, 3.0);
        assert!(s.ln_scale > 0.0);
        let ln = u_eval_log(2000, 3.0).ln_abs;
        assert!(rel(s.un.ln() + s.ln_scale, ln) < 1e-12);
        let ratio = s.un1 / s.un;
        assert!(rel(ratio, u_eval_log(1999, 3.0).ratio(u_eval_log(2000, 3.0))) < 1e-12);
    }

    #[test]
    fn sinh_ratio_stable() {
        assert!(rel(sinh_ratio(5.0, 6.0, 0.3), (1.5f64).sinh() / (1.8f64).sinh()) < 1e-14);
        let big = sinh_ratio(30.0, 31.0, 50.0);
        assert!(rel(big, (-50.0f64).exp()) < 1e-12);
        assert_eq!(sinh_ratio(0.0, 3.0, 1.0), 0.0);
    }

    #[test]
    fn small_determinants() {
        let (w, wt, xi) = (1.3, 2.3, 0.8);
        assert!((det_perturbed_corner(1, w, wt, xi) - wt / xi).abs() < 1e-15);
        assert!((det_perturbed_corner(2, w, wt, xi) - (wt * w / (xi * xi) - 1.0)).abs() < 1e-14);
    }
}
