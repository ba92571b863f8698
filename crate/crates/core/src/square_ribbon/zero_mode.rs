//! Zero-energy states of the general square ribbon.
//!
//! `E = 0` requires `det T = 0`. `T` is tridiagonal Toeplitz and a similarity
//! transform `diag(r^n)` makes it symmetric, so its eigenvalues are
//! `t_u + t_d e^{2ika} - 2 sqrt(t_r t_l) e^{ika} cos(pi j/(N+1))` (the sign is
//! absorbed by `j -> N+1-j`). Zero modes then occur either at `k = 0` with
//! `t_u + t_d = 2 sqrt(t_r t_l) cos(pi j/(N+1))`, or for `t_u = t_d` at
//! `cos(ka) = sqrt(t_r t_l)/t_u cos(pi j/(N+1))`.

use super::zigzag::Sublattice;
use crate::error::{Error, Result};
use crate::hamiltonian::{fix_phase, SquareHoppings};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Relative tolerance for the `k = 0` condition and for `t_u = t_d`.
pub const ZERO_MODE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroModeFamily {
    /// `k = 0`, `t_u + t_d = 2 sqrt(t_r t_l) cos(pi j/(N+1))`.
    ZoneCenter,
    /// `t_u = t_d`, `cos(ka) = sqrt(t_r t_l)/t_u cos(pi j/(N+1))`.
    EqualVertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroMode {
    pub k: f64,
    pub j: usize,
    pub family: ZeroModeFamily,
}

fn require_lateral(h: &SquareHoppings) -> Result<f64> {
    if h.tr > 0.0 && h.tl > 0.0 {
        Ok((h.tr * h.tl).sqrt())
    } else {
        Err(Error::Domain(format!(
            "zero-mode analysis needs tr, tl > 0 (got {}, {})",
            h.tr, h.tl
        )))
    }
}

fn cos_j(n: usize, j: usize) -> f64 {
    (PI * j as f64 / (n + 1) as f64).cos()
}

/// Folds `k` into `[-pi/(2a), pi/(2a))`; `H(k)` has period `pi/a`.
fn fold(k: f64, a: f64) -> f64 {
    let period = PI / a;
    let mut folded = (k + 0.5 * period).rem_euclid(period) - 0.5 * period;
    if folded >= 0.5 * period {
        folded -= period;
    }
    folded
}

/// Necessary condition `t_u + t_d <= 2 sqrt(t_r t_l)`.
pub fn zero_mode_feasible(h: &SquareHoppings) -> Result<bool> {
    let g = require_lateral(h)?;
    Ok(h.tu + h.td <= 2.0 * g)
}

/// The value of `t_u + t_d` that puts mode `j` at zero energy at `k = 0`.
pub fn solve_vertical_sum(h: &SquareHoppings, n: usize, j: usize) -> Result<f64> {
    let g = require_lateral(h)?;
    if j == 0 || j > n {
        return Err(Error::Domain(format!("mode index j = {j} outside 1..={n}")));
    }
    Ok(2.0 * g * cos_j(n, j))
}

/// `|t_u e^{-ika} + t_d e^{ika} - 2 sqrt(t_r t_l) cos(pi j/(N+1))|`, zero
/// exactly at a zero mode of index `j`.
pub fn zero_mode_mismatch(h: &SquareHoppings, n: usize, k: f64, a: f64, j: usize) -> Result<f64> {
    let g = require_lateral(h)?;
    let z = Complex64::from_polar(h.tu, -k * a) + Complex64::from_polar(h.td, k * a)
        - 2.0 * g * cos_j(n, j);
    Ok(z.norm())
}

/// All `(k, j)` in the zone at which a zero mode exists.
pub fn zero_mode_momenta(h: &SquareHoppings, n: usize, a: f64) -> Result<Vec<ZeroMode>> {
    let g = require_lateral(h)?;
    let scale = h.tu.max(h.td).max(g);
    let mut modes = Vec::new();
    for j in 1..=n {
        let target = 2.0 * g * cos_j(n, j);
        if (h.tu + h.td - target).abs() <= ZERO_MODE_TOL * scale {
            modes.push(ZeroMode {
                k: 0.0,
                j,
                family: ZeroModeFamily::ZoneCenter,
            });
        }
    }
    if (h.tu - h.td).abs() <= ZERO_MODE_TOL * scale && h.tu > 0.0 {
        for j in 1..=n {
            let c = g / h.tu * cos_j(n, j);
            // Roots with c < 0 lie outside the zone; shifting k by pi/a maps
            // them onto the c > 0 roots of index N+1-j.
            if !(0.0..=1.0).contains(&c) {
                continue;
            }
            let ka = c.acos();
            for k in [fold(ka / a, a), fold(-ka / a, a)] {
                let duplicate = modes
                    .iter()
                    .any(|m| m.j == j && fold(m.k - k, a).abs() < 1e-9 / a);
                if !duplicate {
                    modes.push(ZeroMode {
                        k,
                        j,
                        family: ZeroModeFamily::EqualVertical,
                    });
                }
            }
        }
    }
    modes.sort_by(|x, y| x.k.total_cmp(&y.k).then(x.j.cmp(&y.j)));
    Ok(modes)
}

/// Zero-mode profile on one sublattice, scaled to unit largest magnitude:
///
/// ```text
/// psi_bullet_n = (-1)^n e^{-inka} (t_r/t_l)^{n/2}     sin(pi n j/(N+1)) / sin(pi j/(N+1))
/// psi_circ_n   = (-1)^n e^{-inka} (t_r/t_l)^{(N-n)/2} sin(pi n j/(N+1)) / sin(pi j/(N+1))
/// ```
pub fn zero_mode_profile(
    h: &SquareHoppings,
    n: usize,
    k: f64,
    a: f64,
    j: usize,
    sublattice: Sublattice,
) -> Result<Vec<Complex64>> {
    require_lateral(h)?;
    if j == 0 || j > n {
        return Err(Error::Domain(format!("mode index j = {j} outside 1..={n}")));
    }
    let ln_ratio = (h.tr / h.tl).ln();
    let s1 = (PI * j as f64 / (n + 1) as f64).sin();
    let sites: Vec<(f64, f64, f64)> = (1..=n)
        .map(|site| {
            let sign = if site % 2 == 0 { 1.0 } else { -1.0 };
            let f = sign * (PI * (site * j) as f64 / (n + 1) as f64).sin() / s1;
            let exponent = match sublattice {
                Sublattice::Bullet => site as f64 / 2.0,
                Sublattice::Circ => (n - site) as f64 / 2.0,
            };
            (f, exponent * ln_ratio, -(site as f64) * k * a)
        })
        .collect();
    // Work with logs so steep anisotropy cannot overflow before scaling.
    let ln_max = sites
        .iter()
        .filter(|(f, _, _)| f.abs() > 1e-12)
        .map(|(f, ln_w, _)| f.abs().ln() + ln_w)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut v: Vec<Complex64> = sites
        .into_iter()
        .map(|(f, ln_w, phase)| Complex64::from_polar(f * (ln_w - ln_max).exp(), phase))
        .collect();
    fix_phase(&mut v);
    Ok(v)
}

/// `2N` zero-energy vector `[psi_circ; 0]` or `[0; psi_bullet]`, unit norm.
pub fn zero_mode_vector(
    h: &SquareHoppings,
    n: usize,
    k: f64,
    a: f64,
    j: usize,
    sublattice: Sublattice,
) -> Result<Vec<Complex64>> {
    let p = zero_mode_profile(h, n, k, a, j, sublattice)?;
    let norm = p.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; 2 * n];
    let offset = match sublattice {
        Sublattice::Circ => 0,
        Sublattice::Bullet => n,
    };
    for (i, z) in p.into_iter().enumerate() {
        v[offset + i] = z / norm;
    }
    Ok(v)
}
