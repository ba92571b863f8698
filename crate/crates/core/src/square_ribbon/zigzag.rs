//! Square ribbon with `t_l = 0` (zigzag honeycomb).
//!
//! With `xi = (t_u + t_d e^{2ika}) / t_r` and `omega = E / t_r` the squared
//! eigenproblem is tridiagonal and the spectrum solves
//!
//! ```text
//! U_N(x) + U_{N-1}(x) / |xi| = 0,    x = (omega^2 - |xi|^2 - 1) / (2 |xi|)
//! ```
//!
//! Roots with `x` in `[-1, 1]` are bulk states. A root with `x = -cosh u < -1`
//! is the edge state, parameterized by `u` through
//! `|xi| = sinh(Nu) / sinh((N+1)u)` and `omega = sinh u / sinh((N+1)u)`.

use crate::chebpoly::{ln_sinh, sinh_ratio, u_eval};
use crate::error::{Error, Result};
use crate::hamiltonian::{normalize, SquareHoppings};
use crate::secular::{invert_monotone, SecularPoly};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Below this `|xi|` the reduced problem is treated as degenerate.
pub const XI_DEGENERATE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sublattice {
    Circ,
    Bullet,
}

/// `xi = (t_u + t_d e^{2ika}) / t_r`.
pub fn xi_of_k(h: &SquareHoppings, k: f64, a: f64) -> Result<Complex64> {
    if !(h.tr > 0.0) {
        return Err(Error::Domain("xi needs tr > 0".into()));
    }
    Ok((Complex64::new(h.tu, 0.0) + Complex64::from_polar(h.td, 2.0 * k * a)) / h.tr)
}

/// The reduced zigzag problem at one momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZigzagReduced {
    pub xi: Complex64,
    /// `arg xi` (principal value).
    pub theta: f64,
    pub width: usize,
    /// `t_r`, the energy unit: `E = t_r * omega`.
    pub tr: f64,
}

impl ZigzagReduced {
    pub fn new(h: &SquareHoppings, k: f64, a: f64, width: usize) -> Result<Self> {
        let xi = xi_of_k(h, k, a)?;
        Ok(ZigzagReduced {
            xi,
            theta: xi.arg(),
            width,
            tr: h.tr,
        })
    }

    pub fn xi_abs(&self) -> f64 {
        self.xi.norm()
    }

    pub fn is_degenerate(&self) -> bool {
        self.xi_abs() < XI_DEGENERATE
    }

    /// All `2N` energies `E = t_r omega`, ascending.
    pub fn energies(&self) -> Result<Vec<f64>> {
        Ok(zigzag_spectrum_full(self.xi_abs(), self.width)?
            .into_iter()
            .map(|w| w * self.tr)
            .collect())
    }
}

fn check_xi(xi_abs: f64) -> Result<()> {
    if xi_abs > 0.0 {
        Ok(())
    } else {
        Err(Error::DegenerateParameter(format!(
            "|xi| = {xi_abs}; the secular equation divides by |xi|"
        )))
    }
}

fn poly(xi_abs: f64, n: usize) -> SecularPoly {
    SecularPoly {
        n: n as i64,
        coeffs: [1.0, 1.0 / xi_abs, 0.0],
    }
}

/// `(omega^2 - |xi|^2 - 1) / (2|xi|)`.
pub fn chebyshev_argument(omega: f64, xi_abs: f64) -> f64 {
    (omega * omega - xi_abs * xi_abs - 1.0) / (2.0 * xi_abs)
}

/// Left-hand side of the zigzag secular equation.
pub fn zigzag_secular_residual(omega: f64, xi_abs: f64, n: usize) -> Result<f64> {
    check_xi(xi_abs)?;
    Ok(poly(xi_abs, n).eval(chebyshev_argument(omega, xi_abs)))
}

/// The residual divided by `|U_N| + |U_{N-1}|/|xi|`; usable when `U_N`
/// is astronomically large on the edge branch.
pub fn zigzag_secular_residual_normalized(omega: f64, xi_abs: f64, n: usize) -> Result<f64> {
    check_xi(xi_abs)?;
    Ok(poly(xi_abs, n).eval_normalized(chebyshev_argument(omega, xi_abs)))
}

/// `|xi|_cr = N/(N+1)`, where the edge branch meets the bulk.
pub fn critical_xi(n: usize) -> f64 {
    n as f64 / (n + 1) as f64
}

/// `|omega|_cr = 1/(N+1)`.
pub fn critical_omega(n: usize) -> f64 {
    1.0 / (n + 1) as f64
}

/// The `N` non-negative roots `omega` of the secular equation, ascending.
pub fn zigzag_spectrum(xi_abs: f64, n: usize) -> Result<Vec<f64>> {
    check_xi(xi_abs)?;
    let mut omegas = Vec::with_capacity(n);
    if xi_abs < critical_xi(n) {
        let u = zigzag_edge_u_from_xi(xi_abs, n)?;
        omegas.push(sinh_ratio(1.0, (n + 1) as f64, u));
    }
    let p = poly(xi_abs, n);
    // At |xi| = N/(N+1) the edge root sits on the band edge v = pi.
    let bulk = if (xi_abs - critical_xi(n)).abs() < 1e-9 {
        p.bulk_angles_at_threshold(n - omegas.len(), std::f64::consts::PI)?
    } else {
        p.bulk_angles_counted(n - omegas.len())?
    };
    for v in bulk {
        // omega^2 = 1 + |xi|^2 + 2|xi| cos v, written without cancellation.
        let half = (0.5 * v).cos();
        let w2 = (1.0 - xi_abs).powi(2) + 4.0 * xi_abs * half * half;
        omegas.push(w2.sqrt());
    }
    omegas.sort_by(f64::total_cmp);
    Ok(omegas)
}

/// All `2N` roots, mirrored through zero, ascending.
pub fn zigzag_spectrum_full(xi_abs: f64, n: usize) -> Result<Vec<f64>> {
    let positive = zigzag_spectrum(xi_abs, n)?;
    let mut all: Vec<f64> = positive.iter().rev().map(|w| -w).collect();
    all.extend(positive);
    Ok(all)
}

/// Bulk profile at `x = cos v`, signed, anchored to 1 at `n = 1` (circ) or
/// `n = N` (bullet). Its modulus is the oscillating amplitude across the
/// ribbon.
pub fn zigzag_bulk_state(v: f64, xi_abs: f64, n: usize, sublattice: Sublattice) -> Result<Vec<f64>> {
    check_xi(xi_abs)?;
    let s = v.sin();
    if !(v > 0.0 && v < std::f64::consts::PI) || s.abs() < 1e-14 {
        return Err(Error::Singular(format!(
            "v = {v} is outside (0, pi); use the edge branch or the oracle"
        )));
    }
    let term = |m: usize| {
        let m = m as f64;
        (m * v).sin() / s + ((m - 1.0) * v).sin() / (xi_abs * s)
    };
    Ok((1..=n)
        .map(|site| match sublattice {
            Sublattice::Circ => term(site),
            Sublattice::Bullet => term(n - site + 1),
        })
        .collect())
}

/// The unique `u > 0` with `sinh(Nu) / sinh((N+1)u) = |xi|`.
pub fn zigzag_edge_u_from_xi(xi_abs: f64, n: usize) -> Result<f64> {
    if !(xi_abs > 0.0) {
        return Err(Error::Domain(format!("|xi| = {xi_abs} must be > 0")));
    }
    if xi_abs >= critical_xi(n) {
        return Err(Error::NoEdgeState(format!(
            "|xi| = {xi_abs} >= N/(N+1) = {}",
            critical_xi(n)
        )));
    }
    let nf = n as f64;
    Ok(invert_monotone(|u| sinh_ratio(nf, nf + 1.0, u), xi_abs, false))
}

/// One point of the zigzag edge branch.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBranchPoint {
    pub u: f64,
    pub xi_abs: f64,
    pub omega: f64,
    /// Profiles at `theta = 0` for the `+omega` state, scaled so the full
    /// vector has unit norm. `psi_circ[n-1] / psi_circ[0]` is
    /// `(-1)^{n-1} sinh((N-n+1)u)/sinh(Nu)`.
    pub psi_circ: Vec<Complex64>,
    pub psi_bullet: Vec<Complex64>,
    /// `|psi_circ_1|` giving unit norm.
    pub norm_const: f64,
}

impl EdgeBranchPoint {
    pub fn width(&self) -> usize {
        self.psi_circ.len()
    }

    /// Full `2N` eigenvector `(psi_circ, psi_bullet)` at `arg xi = theta` for
    /// energy `sign * omega`.
    pub fn state_vector(&self, theta: f64, sign: f64) -> Vec<Complex64> {
        let n = self.width();
        let mut v = Vec::with_capacity(2 * n);
        for (i, c) in self.psi_circ.iter().enumerate() {
            v.push(c * Complex64::from_polar(1.0, -(i as f64) * theta));
        }
        for (i, b) in self.psi_bullet.iter().enumerate() {
            // e^{i(N-n)theta} from the profile times e^{-iN theta} from the
            // sublattice link.
            let site = (i + 1) as f64;
            v.push(b * Complex64::from_polar(sign, -site * theta));
        }
        v
    }
}

/// `|Psi|^2 / |psi_circ_1|^2` on the edge branch:
/// `[sinh((2N+1)u) - (2N+1) sinh u] / (2 sinh u sinh^2(Nu))`.
pub fn edge_norm_factor(u: f64, n: usize) -> f64 {
    let m = (2 * n + 1) as f64;
    let nf = n as f64;
    if m * u < 0.5 {
        // sinh(mu) - m sinh(u) by its Taylor series.
        let mut excess = 0.0;
        let mut power = u; // u^{2k+1}
        let mut fact = 1.0; // (2k+1)!
        for k in 1..30 {
            power *= u * u;
            fact *= (2 * k) as f64 * (2 * k + 1) as f64;
            let odd = 2 * k + 1;
            let term = (m.powi(odd) - m) * power / fact;
            excess += term;
            if term.abs() < 1e-18 * excess.abs() {
                break;
            }
        }
        excess / (2.0 * u.sinh() * (nf * u).sinh().powi(2))
    } else if m * u < 700.0 {
        ((m * u).sinh() - m * u.sinh()) / (2.0 * u.sinh() * (nf * u).sinh().powi(2))
    } else {
        let lead = (ln_sinh(m * u) - std::f64::consts::LN_2 - ln_sinh(u) - 2.0 * ln_sinh(nf * u)).exp();
        lead - m * 0.5 * (-2.0 * ln_sinh(nf * u)).exp()
    }
}

/// Edge branch point at decay parameter `u > 0`.
pub fn zigzag_edge_branch(u: f64, n: usize) -> Result<EdgeBranchPoint> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::Domain(format!("u = {u} must be > 0")));
    }
    let nf = n as f64;
    let xi_abs = sinh_ratio(nf, nf + 1.0, u);
    let omega = sinh_ratio(1.0, nf + 1.0, u);
    let norm_const = 1.0 / edge_norm_factor(u, n).sqrt();
    let alt = |p: usize| if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    let psi_circ = (1..=n)
        .map(|site| {
            let amp = alt(site - 1) * sinh_ratio((n - site + 1) as f64, nf, u);
            Complex64::new(norm_const * amp, 0.0)
        })
        .collect();
    // psi_bullet_N = (-1)^{N+1} psi_circ_1 because omega U_N = (-1)^N here.
    let link = -alt(n);
    let psi_bullet = (1..=n)
        .map(|site| {
            let amp = alt(n - site) * sinh_ratio(site as f64, nf, u);
            Complex64::new(norm_const * link * amp, 0.0)
        })
        .collect();
    Ok(EdgeBranchPoint {
        u,
        xi_abs,
        omega,
        psi_circ,
        psi_bullet,
        norm_const,
    })
}

/// `psi_circ_1 / psi_bullet_N = -e^{iN theta} / (omega U_N)`.
///
/// For `omega U_N = 0` the sublattices decouple; the ratio then follows the
/// `u -> inf` limit of the edge branch, `-(-1)^N e^{iN theta}`.
pub fn sublattice_link(omega: f64, theta: f64, n: usize, u_n_value: f64) -> Complex64 {
    let phase = Complex64::from_polar(1.0, n as f64 * theta);
    let product = omega * u_n_value;
    if product == 0.0 {
        let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
        return phase * sign;
    }
    -phase / product
}

/// Normalized, phase-fixed `2N` eigenvector for the root `omega` of the
/// reduced problem. Edge roots use the closed-form branch profile; bulk roots
/// use the Chebyshev profiles and the sublattice link.
pub fn zigzag_state(reduced: &ZigzagReduced, omega: f64) -> Result<Vec<Complex64>> {
    let xi_abs = reduced.xi_abs();
    check_xi(xi_abs)?;
    let n = reduced.width;
    let theta = reduced.theta;
    if zigzag_secular_residual_normalized(omega, xi_abs, n)?.abs() > 1e-6 {
        return Err(Error::Domain(format!(
            "omega = {omega} is not a root at |xi| = {xi_abs}"
        )));
    }
    let x = chebyshev_argument(omega, xi_abs);
    let mut v = if x < -1.0 && xi_abs < critical_xi(n) {
        let u = zigzag_edge_u_from_xi(xi_abs, n)?;
        zigzag_edge_branch(u, n)?.state_vector(theta, omega.signum())
    } else {
        let mut v = Vec::with_capacity(2 * n);
        let profile = |m: i64| u_eval(m, x) + u_eval(m - 1, x) / xi_abs;
        for site in 1..=n as i64 {
            v.push(Complex64::from_polar(profile(site - 1), -((site - 1) as f64) * theta));
        }
        let ratio = sublattice_link(omega, theta, n, u_eval(n as i64, x));
        let bullet_n = Complex64::new(1.0, 0.0) / ratio;
        for site in 1..=n as i64 {
            let amp = profile(n as i64 - site);
            v.push(bullet_n * Complex64::from_polar(amp, (n as i64 - site) as f64 * theta));
        }
        v
    };
    normalize(&mut v);
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeVerdict {
    /// `|t_u - t_d| > t_r N/(N+1)`.
    NeverEmerge,
    /// `t_u + t_d < t_r N/(N+1)`: edge states at every k.
    AlwaysEdge,
    /// The edge branch merges into the bulk inside the zone.
    EdgeBulkTransition,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeRegime {
    pub verdict: EdgeVerdict,
    pub xi_cr: f64,
    pub omega_cr: f64,
    /// `|t_u - t_d| / t_r`, the smallest `|xi|` over the zone.
    pub xi_min: f64,
    /// `(t_u + t_d) / t_r`.
    pub xi_max: f64,
}

pub fn edge_regime(h: &SquareHoppings, n: usize) -> Result<EdgeRegime> {
    if !(h.tr > 0.0) {
        return Err(Error::Domain("edge regime needs tr > 0".into()));
    }
    let xi_cr = critical_xi(n);
    let threshold = h.tr * xi_cr;
    let verdict = if (h.tu - h.td).abs() > threshold {
        EdgeVerdict::NeverEmerge
    } else if h.tu + h.td < threshold {
        EdgeVerdict::AlwaysEdge
    } else {
        EdgeVerdict::EdgeBulkTransition
    };
    Ok(EdgeRegime {
        verdict,
        xi_cr,
        omega_cr: critical_omega(n),
        xi_min: (h.tu - h.td).abs() / h.tr,
        xi_max: (h.tu + h.td) / h.tr,
    })
}

/// `omega^2 + (N+2)/N |xi|^2 - 1`; zero on the ellipse through the subband
/// extrema.
pub fn extrema_ellipse_residual(omega: f64, xi_abs: f64, n: usize) -> f64 {
    let nf = n as f64;
    omega * omega + (nf + 2.0) / nf * xi_abs * xi_abs - 1.0
}

/// Slope `d omega / d|xi|` of a subband through `(|xi|, omega)`.
pub fn d_omega_d_xi(omega: f64, xi_abs: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    let w2 = omega * omega;
    let x2 = xi_abs * xi_abs;
    let num = nf * w2 + (nf + 2.0) * x2 - nf;
    let den = (2.0 * nf + 1.0) * w2 + x2 - 1.0;
    if den == 0.0 || xi_abs == 0.0 {
        return Err(Error::Singular(format!(
            "vertical tangent at (|xi|, omega) = ({xi_abs}, {omega})"
        )));
    }
    Ok(omega / xi_abs * num / den)
}
