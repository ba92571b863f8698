//! Square ribbon with `t_l = t_r`.
//!
//! The gauge `G = diag(e^{-inka})` turns `T` into
//! `t_u + t_d e^{2ika} + t_r e^{ika} (beta + beta^dag)`, which is diagonal in
//! the standing waves `f_j(n) = sin(pi j n/(N+1)) / sin(pi j/(N+1))`. Each `j`
//! then leaves a 2x2 block with off-diagonal entry
//! `z_j = 2 t_r cos(pi j/(N+1)) + t_u e^{-ika} + t_d e^{ika}` and energies
//! `E = ±|z_j|`.

use crate::error::{Error, Result};
use crate::hamiltonian::{normalize, SquareHoppings};
use num_complex::Complex64;
use std::f64::consts::PI;

fn check(h: &SquareHoppings, n: usize, j: usize) -> Result<()> {
    if h.tl != h.tr {
        return Err(Error::Domain(format!(
            "isotropic closed form needs tl = tr (got {}, {})",
            h.tl, h.tr
        )));
    }
    if j == 0 || j > n {
        return Err(Error::Domain(format!("mode index j = {j} outside 1..={n}")));
    }
    Ok(())
}

fn cos_j(n: usize, j: usize) -> f64 {
    (PI * j as f64 / (n + 1) as f64).cos()
}

/// `z_j(k)`.
pub fn lr_block_coupling(h: &SquareHoppings, n: usize, k: f64, a: f64, j: usize) -> Result<Complex64> {
    check(h, n, j)?;
    Ok(Complex64::new(2.0 * h.tr * cos_j(n, j), 0.0)
        + Complex64::from_polar(h.tu, -k * a)
        + Complex64::from_polar(h.td, k * a))
}

/// `|E_j|` from
/// `E^2 = (t_u - t_d)^2 sin^2(ka) + [2 t_r cos(pi j/(N+1)) + (t_u + t_d) cos(ka)]^2`.
pub fn lr_energy_closed_form(h: &SquareHoppings, n: usize, k: f64, a: f64, j: usize) -> Result<f64> {
    check(h, n, j)?;
    let (s, c) = (k * a).sin_cos();
    let im = (h.tu - h.td) * s;
    let re = 2.0 * h.tr * cos_j(n, j) + (h.tu + h.td) * c;
    Ok(im.hypot(re))
}

/// All `2N` energies, ascending.
pub fn lr_isotropic_spectrum(h: &SquareHoppings, n: usize, k: f64, a: f64) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * n);
    for j in 1..=n {
        let e = lr_block_coupling(h, n, k, a, j)?.norm();
        out.push(e);
        out.push(-e);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Normalized, phase-fixed eigenvector of mode `j` with energy
/// `sign * |z_j|`. At `z_j = 0` the level is doubly degenerate and the two
/// sublattice-polarized states are returned (`sign > 0` gives the circ one).
pub fn lr_isotropic_state(
    h: &SquareHoppings,
    n: usize,
    k: f64,
    a: f64,
    j: usize,
    sign: f64,
) -> Result<Vec<Complex64>> {
    let z = lr_block_coupling(h, n, k, a, j)?;
    let e = sign.signum() * z.norm();
    let (a_circ, a_bullet) = if z.norm() == 0.0 {
        if sign > 0.0 {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
        }
    } else {
        (Complex64::new(1.0, 0.0), e / z)
    };
    let s1 = (PI * j as f64 / (n + 1) as f64).sin();
    let mut v = vec![Complex64::new(0.0, 0.0); 2 * n];
    for site in 1..=n {
        let f = (PI * (j * site) as f64 / (n + 1) as f64).sin() / s1;
        let gauge = -(site as f64) * k * a;
        v[site - 1] = a_circ * Complex64::from_polar(f, gauge + 0.5 * k * a);
        v[n + site - 1] = a_bullet * Complex64::from_polar(f, gauge - 0.5 * k * a);
    }
    normalize(&mut v);
    Ok(v)
}
