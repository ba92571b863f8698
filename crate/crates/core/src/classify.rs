//! Bulk/edge classification of eigenstates.
//!
//! Analytic verdicts read the Chebyshev argument of a root: inside `(-1, 1)`
//! the profile oscillates (bulk), outside it decays from a boundary (edge).
//! Numeric verdicts work on any vector, e.g. an oracle eigenvector, by fitting
//! `ln|psi_n|` near each boundary, so the two can be compared without
//! circularity.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Distance from `|x| = 1` below which a root counts as a transition point.
pub const TRANSITION_TOL: f64 = 1e-9;
/// Smallest boundary log-slope accepted as exponential decay.
pub const MIN_SLOPE: f64 = 1e-2;
/// Smallest coefficient of determination accepted for a boundary fit.
pub const MIN_R2: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateLabel {
    Bulk,
    EdgeLeft,
    EdgeRight,
    EdgeBoth,
    Transition,
}

impl StateLabel {
    pub fn is_edge(self) -> bool {
        matches!(self, StateLabel::EdgeLeft | StateLabel::EdgeRight | StateLabel::EdgeBoth)
    }

    pub fn name(self) -> &'static str {
        match self {
            StateLabel::Bulk => "bulk",
            StateLabel::EdgeLeft => "edge-left",
            StateLabel::EdgeRight => "edge-right",
            StateLabel::EdgeBoth => "edge-both",
            StateLabel::Transition => "transition",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateClass {
    pub label: StateLabel,
    /// Decay per site; present exactly for edge labels.
    pub u_estimate: Option<f64>,
    pub ipr: f64,
}

/// Where the Chebyshev argument of a root lies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnalyticKind {
    Bulk,
    /// `x = -cosh u` for the square ribbon, `x = ±cosh u` for the triangular.
    Edge,
    Transition,
    /// `x > 1` for the square ribbon, which its spectrum never produces.
    OutOfBand,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticVerdict {
    pub kind: AnalyticKind,
    pub ratio: f64,
    /// `arccosh |ratio|` for edge roots.
    pub u: Option<f64>,
}

impl AnalyticVerdict {
    /// Label for a model whose edge states sit on the given side.
    pub fn label(&self, edge_label: StateLabel) -> StateLabel {
        match self.kind {
            AnalyticKind::Edge => edge_label,
            AnalyticKind::Transition => StateLabel::Transition,
            AnalyticKind::Bulk | AnalyticKind::OutOfBand => StateLabel::Bulk,
        }
    }
}

fn verdict(ratio: f64, allow_upper: bool) -> AnalyticVerdict {
    let (kind, u) = if (ratio.abs() - 1.0).abs() < TRANSITION_TOL {
        (AnalyticKind::Transition, None)
    } else if ratio.abs() < 1.0 {
        (AnalyticKind::Bulk, None)
    } else if ratio < 0.0 || allow_upper {
        (AnalyticKind::Edge, Some(ratio.abs().acosh()))
    } else {
        (AnalyticKind::OutOfBand, None)
    };
    AnalyticVerdict { kind, ratio, u }
}

/// Verdict for a square zigzag root from `(omega^2 - |xi|^2 - 1)/(2|xi|)`.
pub fn classify_analytic_square(omega: f64, xi_abs: f64) -> Result<AnalyticVerdict> {
    if !(xi_abs > 0.0) {
        return Err(Error::Domain(format!("|xi| = {xi_abs} must be > 0")));
    }
    Ok(verdict((omega * omega - xi_abs * xi_abs - 1.0) / (2.0 * xi_abs), false))
}

/// Verdict for a triangular root from `(E - tau)/(2|zeta|)`.
pub fn classify_analytic_triangle(energy: f64, tau: f64, zeta_abs: f64) -> Result<AnalyticVerdict> {
    if !(zeta_abs > 0.0) {
        return Err(Error::Domain(format!("|zeta| = {zeta_abs} must be > 0")));
    }
    Ok(verdict((energy - tau) / (2.0 * zeta_abs), true))
}

/// Inverse participation ratio `sum |psi|^4 / (sum |psi|^2)^2`.
pub fn ipr(psi: &[Complex64]) -> f64 {
    let (p2, p4) = psi.iter().fold((0.0, 0.0), |(s2, s4), z| {
        let m = z.norm_sqr();
        (s2 + m, s4 + m * m)
    });
    if p2 == 0.0 {
        0.0
    } else {
        p4 / (p2 * p2)
    }
}

/// `sqrt(|psi_circ_n|^2 + |psi_bullet_n|^2)` for a `2N` square-ribbon vector.
pub fn chain_profile(psi: &[Complex64]) -> Vec<f64> {
    let n = psi.len() / 2;
    (0..n)
        .map(|i| (psi[i].norm_sqr() + psi[n + i].norm_sqr()).sqrt())
        .collect()
}

/// `3 / dim`.
pub fn default_ipr_threshold(dim: usize) -> f64 {
    3.0 / dim as f64
}

/// `min(8, len/3)` for a profile of `len` sites.
pub fn default_fit_window(len: usize) -> usize {
    (len / 3).min(8)
}

struct Fit {
    slope: f64,
    r2: f64,
}

/// Least-squares line through `(site, ln value)`, skipping zeros.
fn fit_log(sites: impl Iterator<Item = (f64, f64)>) -> Option<Fit> {
    let pts: Vec<(f64, f64)> = sites.filter(|(_, m)| *m > 0.0).map(|(x, m)| (x, m.ln())).collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 0.0 } else { sxy * sxy / (sxx * syy) };
    Some(Fit { slope, r2 })
}

/// Classifies a magnitude profile whose inverse participation ratio is `ipr`.
pub fn classify_profile(magnitudes: &[f64], ipr: f64, threshold_ipr: f64, fit_window: usize) -> Result<StateClass> {
    let len = magnitudes.len();
    if fit_window < 3 || len < 2 * fit_window {
        return Err(Error::Domain(format!(
            "fit window {fit_window} does not fit twice into {len} sites (need >= 3 and 2*window <= len)"
        )));
    }
    if magnitudes.iter().all(|&m| m == 0.0) {
        return Err(Error::Domain("zero vector".into()));
    }
    let localized = ipr > threshold_ipr;
    let left = fit_log((0..fit_window).map(|i| (i as f64, magnitudes[i])))
        .filter(|f| localized && f.slope < -MIN_SLOPE && f.r2 > MIN_R2);
    let right = fit_log((len - fit_window..len).map(|i| (i as f64, magnitudes[i])))
        .filter(|f| localized && f.slope > MIN_SLOPE && f.r2 > MIN_R2);
    let (label, u) = match (left, right) {
        (Some(l), Some(r)) => (StateLabel::EdgeBoth, Some(0.5 * (l.slope.abs() + r.slope.abs()))),
        (Some(l), None) => (StateLabel::EdgeLeft, Some(l.slope.abs())),
        (None, Some(r)) => (StateLabel::EdgeRight, Some(r.slope.abs())),
        (None, None) => (StateLabel::Bulk, None),
    };
    Ok(StateClass {
        label,
        u_estimate: u,
        ipr,
    })
}

/// Classifies `psi` from the decay of `ln|psi_n|` near each boundary.
pub fn classify_numeric(psi: &[Complex64], threshold_ipr: f64, fit_window: usize) -> Result<StateClass> {
    let magnitudes: Vec<f64> = psi.iter().map(|z| z.norm()).collect();
    classify_profile(&magnitudes, ipr(psi), threshold_ipr, fit_window)
}

/// Default classification of an eigenvector of a model: square-ribbon vectors
/// (`2N` entries, `square = true`) are fitted on their chain profile, with the
/// IPR of the full vector compared to `3/(2N)`.
pub fn classify_eigenvector(psi: &[Complex64], square: bool) -> Result<StateClass> {
    let dim = psi.len();
    if square {
        let profile = chain_profile(psi);
        classify_profile(&profile, ipr(psi), default_ipr_threshold(dim), default_fit_window(profile.len()))
    } else {
        classify_numeric(psi, default_ipr_threshold(dim), default_fit_window(dim))
    }
}

/// Pairs two energy lists by nearest energy, each index used once: all
/// candidate pairs are taken greedily in order of increasing distance.
/// Returns `(i, j)` pairs sorted by `i`.
pub fn pair_by_energy(first: &[f64], second: &[f64]) -> Vec<(usize, usize)> {
    let mut candidates: Vec<(f64, usize, usize)> = first
        .iter()
        .enumerate()
        .flat_map(|(i, a)| second.iter().enumerate().map(move |(j, b)| ((a - b).abs(), i, j)))
        .collect();
    candidates.sort_by(|p, q| p.0.total_cmp(&q.0).then((p.1, p.2).cmp(&(q.1, q.2))));
    let mut used_first = vec![false; first.len()];
    let mut used_second = vec![false; second.len()];
    let mut pairs = Vec::new();
    for (_, i, j) in candidates {
        if !used_first[i] && !used_second[j] {
            used_first[i] = true;
            used_second[j] = true;
            pairs.push((i, j));
        }
    }
    pairs.sort();
    pairs
}
