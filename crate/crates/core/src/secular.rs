//! Root bracketing for secular equations of the form
//! `a_0 U_N(x) + a_1 U_{N-1}(x) + a_2 U_{N-2}(x) = 0`.
//!
//! Roots inside `[-1, 1]` (bulk states) are found in the angle `v` with
//! `x = cos v` on a uniform grid over `[0, pi]` followed by bisection. Roots
//! outside the interval (edge states, `x = ±cosh u`) are supplied by the
//! model-specific closed-form inversions.

use crate::chebpoly::{u_eval, u_scaled};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Grid density factors tried in turn before giving up on a root count.
const GRID_FACTORS: [usize; 4] = [8, 32, 128, 512];

#[derive(Debug, Clone, Copy)]
pub(crate) struct SecularPoly {
    pub n: i64,
    pub coeffs: [f64; 3],
}

impl SecularPoly {
    pub fn eval(&self, x: f64) -> f64 {
        let [a0, a1, a2] = self.coeffs;
        let mut value = a0 * u_eval(self.n, x);
        if a1 != 0.0 {
            value += a1 * u_eval(self.n - 1, x);
        }
        if a2 != 0.0 {
            value += a2 * u_eval(self.n - 2, x);
        }
        value
    }

    /// The residual divided by the sum of the magnitudes of its terms; lies in
    /// `[-1, 1]` and stays meaningful where `U_N` overflows.
    pub fn eval_normalized(&self, x: f64) -> f64 {
        let [a0, a1, a2] = self.coeffs;
        let s = u_scaled(self.n, x);
        let terms = [a0 * s.un, a1 * s.un1, a2 * s.un2];
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        if scale == 0.0 {
            return 0.0;
        }
        terms.iter().sum::<f64>() / scale
    }

    fn eval_angle(&self, v: f64) -> f64 {
        self.eval(v.cos())
    }

    /// Angles `v` in `[0, pi]` at which the residual changes sign, on a grid of
    /// `cells` intervals. Returned in ascending order (descending `x`).
    pub fn bulk_angles(&self, cells: usize) -> Vec<f64> {
        let grid: Vec<f64> = (0..=cells).map(|i| PI * i as f64 / cells as f64).collect();
        let values: Vec<f64> = grid.iter().map(|&v| self.eval_angle(v)).collect();
        let mut roots = Vec::new();
        for i in 0..cells {
            let (fa, fb) = (values[i], values[i + 1]);
            if fa == 0.0 {
                roots.push(grid[i]);
                continue;
            }
            if fa * fb < 0.0 {
                roots.push(self.bisect_angle(grid[i], grid[i + 1], fa));
            }
        }
        if values[cells] == 0.0 {
            roots.push(PI);
        }
        roots
    }

    fn bisect_angle(&self, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let f_mid = self.eval_angle(mid);
            if f_mid == 0.0 {
                return mid;
            }
            if f_lo * f_mid < 0.0 {
                hi = mid;
            } else {
                lo = mid;
                f_lo = f_mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Bulk angles, refining the grid until `expected` roots are found.
    pub fn bulk_angles_counted(&self, expected: usize) -> Result<Vec<f64>> {
        let width = (self.n.max(1) + 1) as usize;
        let mut found = 0;
        for factor in GRID_FACTORS {
            let roots = self.bulk_angles(factor * width);
            if roots.len() == expected {
                return Ok(roots);
            }
            found = roots.len();
        }
        Err(Error::RootCount(format!(
            "expected {expected} roots in [-1, 1], bracketed {found}"
        )))
    }

    /// Like [`Self::bulk_angles_counted`], for parameters within rounding of
    /// the threshold where an edge root leaves the band through
    /// `x = cos(endpoint)`. A root missing or doubled at the endpoint is
    /// repaired so that the total count stays right.
    pub fn bulk_angles_at_threshold(&self, expected: usize, endpoint: f64) -> Result<Vec<f64>> {
        if let Ok(v) = self.bulk_angles_counted(expected) {
            return Ok(v);
        }
        let width = (self.n.max(1) + 1) as usize;
        let mut roots = self.bulk_angles(GRID_FACTORS[1] * width);
        if roots.len() + 1 == expected {
            roots.push(endpoint);
        } else if roots.len() == expected + 1 {
            let nearest = (0..roots.len())
                .min_by(|&i, &j| {
                    (roots[i] - endpoint)
                        .abs()
                        .total_cmp(&(roots[j] - endpoint).abs())
                })
                .expect("non-empty");
            roots.remove(nearest);
        } else {
            return Err(Error::RootCount(format!(
                "expected {expected} roots in [-1, 1] near threshold, bracketed {}",
                roots.len()
            )));
        }
        roots.sort_by(f64::total_cmp);
        Ok(roots)
    }
}

/// Bisection for `f(u) = target` with `f` strictly monotone on `(0, inf)`.
/// `increasing` gives the direction. The upper bracket is grown by doubling.
pub(crate) fn invert_monotone(f: impl Fn(f64) -> f64, target: f64, increasing: bool) -> f64 {
    let above = |u: f64| {
        let v = f(u);
        if increasing {
            v > target
        } else {
            v < target
        }
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    while !above(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 {
            return hi;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
