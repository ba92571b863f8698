//! Closed-form analysis of anisotropic triangular ribbons.
//!
//! With `zeta = t_1 + t_2 e^{-ika} = |zeta| e^{i theta}` and
//! `tau = 2 t_3 cos(ka)`, the gauge `psi_n = e^{in theta} phi_n` turns the
//! Bloch Hamiltonian into `tau + |zeta| (beta + beta^dag)` minus `tau` on the
//! truncated zigzag rows. With `x = (E - tau)/(2|zeta|)` and
//! `c = tau/|zeta|` the spectra are
//!
//! ```text
//! linear:    x = cos(pi j/(N+1))
//! zigzag1:   U_N(x) + c U_{N-1}(x) = 0
//! zigzag2:   U_N(x) + 2c U_{N-1}(x) + c^2 U_{N-2}(x) = 0
//! ```
//!
//! Edge states sit at `x = ±cosh u` on the side opposite to the sign of `tau`.

use crate::chebpoly::{sinh_ratio, u_eval};
use crate::error::{Error, Result};
use crate::hamiltonian::{normalize, ModelKind, RibbonModel, TriangleEdge, TriangleHoppings};
use crate::secular::{invert_monotone, SecularPoly};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Below this `|zeta|` the reduced problem is treated as degenerate.
pub const ZETA_DEGENERATE: f64 = 1e-12;

/// The `±` of `(E - tau)/(2|zeta|) = ±cosh u`. `Plus` lies above the bulk
/// band, needs `tau < 0` and is governed by `|t_1 - t_2|`; `Minus` lies below
/// and is governed by `t_1 + t_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchSign {
    Plus,
    Minus,
}

impl BranchSign {
    pub const BOTH: [BranchSign; 2] = [BranchSign::Plus, BranchSign::Minus];

    pub fn value(self) -> f64 {
        match self {
            BranchSign::Plus => 1.0,
            BranchSign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BranchSign::Plus => "+",
            BranchSign::Minus => "-",
        }
    }
}

/// Edge-state family. The single-side zigzag ribbon has family `A` only; on
/// the two-side zigzag ribbon `A` is the symmetric and `B` the antisymmetric
/// combination of the two edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeFamily {
    A,
    B,
}

/// Reduced quantities at one momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleReduced {
    pub zeta: Complex64,
    pub tau: f64,
    pub theta: f64,
    pub width: usize,
    pub edge: TriangleEdge,
}

impl TriangleReduced {
    pub fn new(h: &TriangleHoppings, n: usize, k: f64, a: f64, edge: TriangleEdge) -> Self {
        let zeta = Complex64::new(h.t1, 0.0) + Complex64::from_polar(h.t2, -k * a);
        TriangleReduced {
            zeta,
            tau: 2.0 * h.t3 * (k * a).cos(),
            theta: zeta.arg(),
            width: n,
            edge,
        }
    }

    pub fn zeta_abs(&self) -> f64 {
        self.zeta.norm()
    }

    pub fn is_degenerate(&self) -> bool {
        self.zeta_abs() < ZETA_DEGENERATE
    }

    /// `c = tau/|zeta|`.
    pub fn c(&self) -> f64 {
        self.tau / self.zeta_abs()
    }

    /// `w = E - tau`.
    pub fn w(&self, energy: f64) -> f64 {
        energy - self.tau
    }

    pub fn x_of(&self, energy: f64) -> f64 {
        self.w(energy) / (2.0 * self.zeta_abs())
    }

    pub fn energy_of(&self, x: f64) -> f64 {
        self.tau + 2.0 * self.zeta_abs() * x
    }

    fn require_zeta(&self) -> Result<()> {
        if !self.is_degenerate() {
            Ok(())
        } else {
            Err(Error::DegenerateParameter(
                "|zeta| ~ 0 (t1 = t2 at ka = pi); use the dense solver".into(),
            ))
        }
    }

    fn poly(&self) -> Result<SecularPoly> {
        self.require_zeta()?;
        let n = self.width as i64;
        let c = self.c();
        match self.edge {
            TriangleEdge::Linear => Ok(SecularPoly {
                n,
                coeffs: [1.0, 0.0, 0.0],
            }),
            TriangleEdge::Zigzag1 => Ok(SecularPoly {
                n,
                coeffs: [1.0, c, 0.0],
            }),
            TriangleEdge::Zigzag2 => {
                require_two_side(self.width)?;
                Ok(SecularPoly {
                    n,
                    coeffs: [1.0, 2.0 * c, c * c],
                })
            }
        }
    }
}

fn require_two_side(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::Domain(
            "two-side zigzag analytics need N >= 2; N = 1 is left to the dense solver".into(),
        ))
    }
}

/// Eigenvalues of the linear-edge ribbon with their states,
/// `E_j = tau + 2|zeta| cos(pi j/(N+1))` and
/// `psi_n = e^{i(n-1) theta} sin(pi j n/(N+1)) / sin(pi j/(N+1))`, ascending
/// in energy. States are normalized and phase-fixed.
pub fn linear_spectrum(
    h: &TriangleHoppings,
    n: usize,
    k: f64,
    a: f64,
) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let r = TriangleReduced::new(h, n, k, a, TriangleEdge::Linear);
    let mut pairs: Vec<(f64, Vec<Complex64>)> = (1..=n)
        .map(|j| {
            let angle = PI * j as f64 / (n + 1) as f64;
            let energy = r.tau + 2.0 * r.zeta_abs() * angle.cos();
            let mut psi: Vec<Complex64> = (1..=n)
                .map(|site| {
                    let f = (angle * site as f64).sin() / angle.sin();
                    Complex64::from_polar(f, (site - 1) as f64 * r.theta)
                })
                .collect();
            normalize(&mut psi);
            (energy, psi)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    pairs.into_iter().unzip()
}

/// `U_N(x) + (tau/|zeta|) U_{N-1}(x)` at `x = (E - tau)/(2|zeta|)`.
pub fn zz1_secular_residual(energy: f64, h: &TriangleHoppings, n: usize, k: f64, a: f64) -> Result<f64> {
    let r = TriangleReduced::new(h, n, k, a, TriangleEdge::Zigzag1);
    Ok(r.poly()?.eval(r.x_of(energy)))
}

/// `U_N + (2tau/|zeta|) U_{N-1} + (tau/|zeta|)^2 U_{N-2}` at
/// `x = (E - tau)/(2|zeta|)`.
pub fn zz2_secular_residual(energy: f64, h: &TriangleHoppings, n: usize, k: f64, a: f64) -> Result<f64> {
    let r = TriangleReduced::new(h, n, k, a, TriangleEdge::Zigzag2);
    Ok(r.poly()?.eval(r.x_of(energy)))
}

/// Secular residual divided by the sum of the magnitudes of its terms.
pub fn secular_residual_normalized(reduced: &TriangleReduced, energy: f64) -> Result<f64> {
    Ok(reduced.poly()?.eval_normalized(reduced.x_of(energy)))
}

/// `|c|` on the single-side edge branch: `sinh((N+1)u)/sinh(Nu)`.
fn zz1_edge_ratio(n: usize, u: f64) -> f64 {
    1.0 / sinh_ratio(n as f64, (n + 1) as f64, u)
}

/// `|c|` on the two-side branches: `(sinh(Nu) ∓ sinh u)/sinh((N-1)u)`.
fn zz2_edge_ratio(n: usize, family: EdgeFamily, u: f64) -> f64 {
    let nf = n as f64;
    let main = sinh_ratio(nf, nf - 1.0, u);
    let corr = sinh_ratio(1.0, nf - 1.0, u);
    match family {
        EdgeFamily::A => main - corr,
        EdgeFamily::B => main + corr,
    }
}

/// Smallest `|c|` at which an edge root exists.
fn threshold_ratio(edge: TriangleEdge, n: usize, family: EdgeFamily) -> Option<f64> {
    let nf = n as f64;
    match (edge, family) {
        (TriangleEdge::Zigzag1, EdgeFamily::A) => Some((nf + 1.0) / nf),
        (TriangleEdge::Zigzag2, EdgeFamily::A) => Some(1.0),
        (TriangleEdge::Zigzag2, EdgeFamily::B) => Some((nf + 1.0) / (nf - 1.0)),
        _ => None,
    }
}

fn families(edge: TriangleEdge) -> &'static [EdgeFamily] {
    match edge {
        TriangleEdge::Linear => &[],
        TriangleEdge::Zigzag1 => &[EdgeFamily::A],
        TriangleEdge::Zigzag2 => &[EdgeFamily::A, EdgeFamily::B],
    }
}

/// The decay `u` of the edge root of `family` for `|c| = ratio`, if any.
pub fn edge_u_from_ratio(edge: TriangleEdge, n: usize, family: EdgeFamily, ratio: f64) -> Option<f64> {
    let threshold = threshold_ratio(edge, n, family)?;
    if !(ratio > threshold) || !ratio.is_finite() {
        return None;
    }
    Some(match edge {
        TriangleEdge::Zigzag1 => {
            let nf = n as f64;
            invert_monotone(|u| sinh_ratio(nf, nf + 1.0, u), 1.0 / ratio, false)
        }
        _ => invert_monotone(|u| zz2_edge_ratio(n, family, u), ratio, true),
    })
}

/// One root of the reduced secular equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleRoot {
    pub energy: f64,
    pub x: f64,
    /// Present for edge roots (`|x| > 1`).
    pub edge: Option<EdgeRoot>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeRoot {
    pub sign: BranchSign,
    pub family: EdgeFamily,
    pub u: f64,
}

/// All `N` roots at one momentum, ascending in energy.
pub fn triangle_roots(reduced: &TriangleReduced) -> Result<Vec<TriangleRoot>> {
    let n = reduced.width;
    if reduced.edge == TriangleEdge::Linear {
        let mut roots: Vec<TriangleRoot> = (1..=n)
            .map(|j| {
                let x = (PI * j as f64 / (n + 1) as f64).cos();
                TriangleRoot {
                    energy: reduced.energy_of(x),
                    x,
                    edge: None,
                }
            })
            .collect();
        roots.sort_by(|p, q| p.energy.total_cmp(&q.energy));
        return Ok(roots);
    }
    let poly = reduced.poly()?;
    let c = reduced.c();
    // The edge side is opposite to the sign of tau.
    let sign = if c < 0.0 { BranchSign::Plus } else { BranchSign::Minus };
    let s = sign.value();
    let mut roots = Vec::with_capacity(n);
    let mut near_threshold = None;
    for &family in families(reduced.edge) {
        let threshold = threshold_ratio(reduced.edge, n, family).expect("zigzag family");
        if (c.abs() - threshold).abs() < 1e-9 * threshold {
            near_threshold = Some(if s > 0.0 { 0.0 } else { PI });
        }
        if let Some(u) = edge_u_from_ratio(reduced.edge, n, family, c.abs()) {
            let x = s * u.cosh();
            roots.push(TriangleRoot {
                energy: reduced.energy_of(x),
                x,
                edge: Some(EdgeRoot { sign, family, u }),
            });
        }
    }
    let expected = n - roots.len();
    let angles = match near_threshold {
        Some(endpoint) => poly.bulk_angles_at_threshold(expected, endpoint)?,
        None => poly.bulk_angles_counted(expected)?,
    };
    for v in angles {
        let x = v.cos();
        roots.push(TriangleRoot {
            energy: reduced.energy_of(x),
            x,
            edge: None,
        });
    }
    roots.sort_by(|p, q| p.energy.total_cmp(&q.energy));
    Ok(roots)
}

/// Signed profile `(±1)^{n-1} sinh((N-n+1)u)/sinh(Nu)` times `e^{in theta}`.
pub fn zz1_edge_profile(u: f64, n: usize, sign: BranchSign, theta: f64) -> Vec<Complex64> {
    let nf = n as f64;
    let s = sign.value();
    (1..=n)
        .map(|site| {
            let amp = s.powi(site as i32 - 1) * sinh_ratio((n - site + 1) as f64, nf, u);
            Complex64::from_polar(amp, site as f64 * theta)
        })
        .collect()
}

/// Signed two-side profile
/// `(±1)^{n-1} [sinh((N-n)u) ± sinh((n-1)u)] / sinh((N-1)u)` (plus for family
/// `A`, minus for `B`) times `e^{in theta}`.
///
/// Passing `-theta` reproduces the `e^{-in theta}` prefactor, which is the
/// eigenstate at momentum `-k`.
pub fn zz2_edge_profile(u: f64, n: usize, sign: BranchSign, family: EdgeFamily, theta: f64) -> Result<Vec<Complex64>> {
    require_two_side(n)?;
    let d = (n - 1) as f64;
    let s = sign.value();
    let mix = match family {
        EdgeFamily::A => 1.0,
        EdgeFamily::B => -1.0,
    };
    Ok((1..=n)
        .map(|site| {
            let amp = sinh_ratio((n - site) as f64, d, u) + mix * sinh_ratio((site - 1) as f64, d, u);
            Complex64::from_polar(s.powi(site as i32 - 1) * amp, site as f64 * theta)
        })
        .collect())
}

/// `e^{in theta} [U_{n-1}(x) + c U_{n-2}(x)]`, the zigzag profile for any root.
fn chebyshev_profile(reduced: &TriangleReduced, x: f64) -> Vec<Complex64> {
    let c = reduced.c();
    (1..=reduced.width as i64)
        .map(|site| {
            let amp = u_eval(site - 1, x) + c * u_eval(site - 2, x);
            Complex64::from_polar(amp, site as f64 * reduced.theta)
        })
        .collect()
}

/// Profile of the root `root`, unnormalized, first component `e^{i theta}`.
/// Edge roots use the closed-form decaying profiles, which avoid the
/// cancellation of the Chebyshev form at large `N u`.
pub fn root_profile(reduced: &TriangleReduced, root: &TriangleRoot) -> Result<Vec<Complex64>> {
    let n = reduced.width;
    match (reduced.edge, root.edge) {
        (TriangleEdge::Linear, _) => {
            let j = ((root.x.clamp(-1.0, 1.0)).acos() * (n + 1) as f64 / PI).round();
            let angle = PI * j / (n + 1) as f64;
            Ok((1..=n)
                .map(|site| {
                    let f = (angle * site as f64).sin() / angle.sin();
                    Complex64::from_polar(f, site as f64 * reduced.theta)
                })
                .collect())
        }
        (TriangleEdge::Zigzag1, Some(e)) => Ok(zz1_edge_profile(e.u, n, e.sign, reduced.theta)),
        (TriangleEdge::Zigzag2, Some(e)) => zz2_edge_profile(e.u, n, e.sign, e.family, reduced.theta),
        (_, None) => Ok(chebyshev_profile(reduced, root.x)),
    }
}

fn state_for_energy(reduced: &TriangleReduced, energy: f64) -> Result<Vec<Complex64>> {
    let residual = secular_residual_normalized(reduced, energy)?;
    let roots = triangle_roots(reduced)?;
    let scale = 1.0 + energy.abs();
    let root = roots
        .iter()
        .min_by(|p, q| (p.energy - energy).abs().total_cmp(&(q.energy - energy).abs()))
        .filter(|r| residual.abs() < 1e-6 && (r.energy - energy).abs() < 1e-6 * scale)
        .ok_or_else(|| Error::Domain(format!("E = {energy} is not on the spectrum")))?;
    let profile = root_profile(reduced, root)?;
    if root.edge.is_some() {
        return Ok(profile);
    }
    // Bulk roots: evaluate the Chebyshev form at the supplied energy.
    Ok(chebyshev_profile(reduced, reduced.x_of(energy)))
}

/// Single-side zigzag eigenstate at energy `E`, unnormalized with
/// `psi_1 = e^{i theta}`.
pub fn zz1_state(energy: f64, h: &TriangleHoppings, n: usize, k: f64, a: f64) -> Result<Vec<Complex64>> {
    state_for_energy(&TriangleReduced::new(h, n, k, a, TriangleEdge::Zigzag1), energy)
}

/// Two-side zigzag eigenstate at energy `E`, unnormalized with
/// `psi_1 = e^{i theta}`.
pub fn zz2_state(energy: f64, h: &TriangleHoppings, n: usize, k: f64, a: f64) -> Result<Vec<Complex64>> {
    state_for_energy(&TriangleReduced::new(h, n, k, a, TriangleEdge::Zigzag2), energy)
}

/// A point of an edge branch, parameterized by its decay `u`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleEdgeSolution {
    pub u: f64,
    pub sign: BranchSign,
    pub family: EdgeFamily,
    /// The branch coefficient: `2 sinh(Nu)/sinh((N+1)u)` (single side),
    /// `2 sinh((N-1)u)/(sinh(Nu) ∓ sinh u)` (two side, families A/B).
    pub coefficient: f64,
    pub cos_ka: f64,
    /// Non-negative representative; `-k` carries the same energy.
    pub k: f64,
    pub energy: f64,
    /// Unit-norm profile at `k`, phase-fixed.
    pub psi: Vec<Complex64>,
}

/// `cos(ka) = (t1 t2 ∓ sqrt(t1^2 t2^2 + P^2 (t1^2 + t2^2) t3^2)) / (P^2 t3^2)`,
/// upper sign for [`BranchSign::Plus`].
pub fn branch_cos_ka(h: &TriangleHoppings, coefficient: f64, sign: BranchSign) -> f64 {
    let (t1, t2, t3) = (h.t1, h.t2, h.t3);
    let p2 = coefficient * coefficient;
    let root = (t1 * t1 * t2 * t2 + p2 * (t1 * t1 + t2 * t2) * t3 * t3).sqrt();
    (t1 * t2 - sign.value() * root) / (p2 * t3 * t3)
}

fn branch_coefficient(edge: TriangleEdge, n: usize, family: EdgeFamily, u: f64) -> f64 {
    match edge {
        TriangleEdge::Zigzag2 => 2.0 / zz2_edge_ratio(n, family, u),
        _ => 2.0 / zz1_edge_ratio(n, u),
    }
}

/// `n_points` decays log-spaced over `[1e-4, 10]`.
pub fn default_u_grid(n_points: usize) -> Vec<f64> {
    log_grid(1e-4, 10.0, n_points)
}

pub fn log_grid(lo: f64, hi: f64, n_points: usize) -> Vec<f64> {
    if n_points < 2 {
        return vec![lo];
    }
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..n_points)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n_points - 1) as f64).exp())
        .collect()
}

fn edge_solution(
    h: &TriangleHoppings,
    n: usize,
    a: f64,
    edge: TriangleEdge,
    sign: BranchSign,
    family: EdgeFamily,
    u: f64,
) -> Result<Option<TriangleEdgeSolution>> {
    let coefficient = branch_coefficient(edge, n, family, u);
    let cos_ka = branch_cos_ka(h, coefficient, sign);
    if !(cos_ka.abs() < 1.0) {
        return Ok(None);
    }
    let k = cos_ka.acos() / a;
    let r = TriangleReduced::new(h, n, k, a, edge);
    let x = sign.value() * u.cosh();
    let mut psi = match edge {
        TriangleEdge::Zigzag2 => zz2_edge_profile(u, n, sign, family, r.theta)?,
        _ => zz1_edge_profile(u, n, sign, r.theta),
    };
    normalize(&mut psi);
    Ok(Some(TriangleEdgeSolution {
        u,
        sign,
        family,
        coefficient,
        cos_ka,
        k,
        energy: r.energy_of(x),
        psi,
    }))
}

/// Single-side zigzag edge branch with sign `sign`, sampled on `u_grid`.
/// Decays whose momentum falls outside the zone are skipped; an empty list
/// means no edge states of that sign.
pub fn zz1_edge_solutions(
    h: &TriangleHoppings,
    n: usize,
    a: f64,
    sign: BranchSign,
    u_grid: &[f64],
) -> Result<Vec<TriangleEdgeSolution>> {
    h.require_positive()?;
    let mut out = Vec::new();
    for &u in u_grid {
        if let Some(s) = edge_solution(h, n, a, TriangleEdge::Zigzag1, sign, EdgeFamily::A, u)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Two-side zigzag edge branch `(sign, family)` sampled on `u_grid`.
pub fn zz2_edge_solutions(
    h: &TriangleHoppings,
    n: usize,
    a: f64,
    sign: BranchSign,
    family: EdgeFamily,
    u_grid: &[f64],
) -> Result<Vec<TriangleEdgeSolution>> {
    h.require_positive()?;
    require_two_side(n)?;
    let mut out = Vec::new();
    for &u in u_grid {
        if let Some(s) = edge_solution(h, n, a, TriangleEdge::Zigzag2, sign, family, u)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Normalized two-side residual
/// `S_{N+1}/S_{N-1} ± 2 (S_N/S_{N-1}) c + c^2` over the sum of term magnitudes,
/// with `S_m = sinh(mu)` and `c = tau/|zeta|`.
pub fn zz2_branch_residual(n: usize, u: f64, sign: BranchSign, c: f64) -> f64 {
    let nf = n as f64;
    let t0 = sinh_ratio(nf + 1.0, nf - 1.0, u);
    let t1 = sign.value() * 2.0 * sinh_ratio(nf, nf - 1.0, u) * c;
    let t2 = c * c;
    (t0 + t1 + t2) / (t0.abs() + t1.abs() + t2.abs())
}

/// One evaluated existence inequality `|t1 ∓ t2|/(2 t3) < bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyExistence {
    pub sign: BranchSign,
    pub family: EdgeFamily,
    pub lhs: f64,
    pub bound: f64,
    pub exists: bool,
}

/// Existence of each edge family anywhere in the zone. Bounds are
/// `N/(N+1)` (single side), `1` and `(N-1)/(N+1)` (two side, A and B). The
/// inequalities are strict.
pub fn edge_existence(h: &TriangleHoppings, n: usize, edge: TriangleEdge) -> Result<Vec<FamilyExistence>> {
    h.require_positive()?;
    if edge == TriangleEdge::Zigzag2 {
        require_two_side(n)?;
    }
    let mut out = Vec::new();
    for &family in families(edge) {
        let bound = 1.0 / threshold_ratio(edge, n, family).expect("zigzag family");
        for sign in BranchSign::BOTH {
            let lhs = match sign {
                BranchSign::Plus => (h.t1 - h.t2).abs(),
                BranchSign::Minus => h.t1 + h.t2,
            } / (2.0 * h.t3);
            out.push(FamilyExistence {
                sign,
                family,
                lhs,
                bound,
                exists: lhs < bound,
            });
        }
    }
    Ok(out)
}

/// Analytic energies of a triangular ribbon at `k`, ascending; `Ok(None)`
/// where the closed forms do not apply (`|zeta|` below [`ZETA_DEGENERATE`] on
/// zigzag edges, two-side zigzag with `N = 1`).
pub fn analytic_energies(model: &RibbonModel, k: f64) -> Result<Option<Vec<f64>>> {
    let h = model
        .triangle_hoppings()
        .ok_or_else(|| Error::Domain("not a triangular ribbon".into()))?;
    let edge = match model.kind {
        ModelKind::TriangleLinear => TriangleEdge::Linear,
        ModelKind::TriangleZigzag1 => TriangleEdge::Zigzag1,
        ModelKind::TriangleZigzag2 => TriangleEdge::Zigzag2,
        _ => return Err(Error::Domain("not a triangular ribbon".into())),
    };
    let r = TriangleReduced::new(h, model.width, k, model.a, edge);
    if edge != TriangleEdge::Linear && (r.is_degenerate() || (edge == TriangleEdge::Zigzag2 && model.width < 2)) {
        return Ok(None);
    }
    Ok(Some(triangle_roots(&r)?.into_iter().map(|r| r.energy).collect()))
}
