//! `edges`: edge-state regime, existence inequalities and the branch table.

use crate::config::Settings;
use crate::output::{emit, json};
use crate::CliError;
use anisoribbon::hamiltonian::{ModelKind, RibbonModel, TriangleEdge};
use anisoribbon::square_ribbon::{edge_regime, zigzag_edge_branch, EdgeRegime};
use anisoribbon::triangle_ribbon::{
    default_u_grid, edge_existence, zz1_edge_solutions, zz2_edge_solutions, BranchSign, EdgeFamily,
    FamilyExistence,
};
use serde::Serialize;

/// Decays sampled for the branch table.
pub const BRANCH_POINTS: usize = 400;

#[derive(Debug, Serialize)]
pub struct CriticalValues {
    /// `N/(N+1)`
    pub n_over_n_plus_1: f64,
    /// `1/(N+1)`
    pub one_over_n_plus_1: f64,
    /// `(N-1)/(N+1)`
    pub n_minus_1_over_n_plus_1: f64,
}

#[derive(Debug, Serialize)]
pub struct SquareBranchRow {
    pub u: f64,
    pub xi_abs: f64,
    pub omega: f64,
    pub energy: f64,
    /// Non-negative momentum with this `|xi|`, when the zone reaches it.
    pub k: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct TriangleBranchRow {
    pub sign: BranchSign,
    pub family: EdgeFamily,
    pub u: f64,
    pub coefficient: f64,
    pub cos_ka: f64,
    pub k: f64,
    pub energy: f64,
}

#[derive(Debug, Serialize)]
pub struct EdgesReport {
    pub model: &'static str,
    pub width: usize,
    pub critical: CriticalValues,
    pub regime: Option<EdgeRegime>,
    pub families: Vec<FamilyExistence>,
    pub square_branch: Vec<SquareBranchRow>,
    pub triangle_branch: Vec<TriangleBranchRow>,
    pub note: Option<String>,
}

fn square_k_for_xi(model: &RibbonModel, xi_abs: f64) -> Option<f64> {
    let h = model.square_hoppings()?;
    if h.tu == 0.0 || h.td == 0.0 {
        return ((xi_abs - (h.tu + h.td) / h.tr).abs() < 1e-12).then_some(0.0);
    }
    let c = ((h.tr * xi_abs).powi(2) - h.tu * h.tu - h.td * h.td) / (2.0 * h.tu * h.td);
    (c.abs() <= 1.0).then(|| c.acos() / (2.0 * model.a))
}

pub fn report(model: &RibbonModel) -> Result<EdgesReport, CliError> {
    let n = model.width as f64;
    let mut report = EdgesReport {
        model: model.kind.name(),
        width: model.width,
        critical: CriticalValues {
            n_over_n_plus_1: n / (n + 1.0),
            one_over_n_plus_1: 1.0 / (n + 1.0),
            n_minus_1_over_n_plus_1: (n - 1.0) / (n + 1.0),
        },
        regime: None,
        families: Vec::new(),
        square_branch: Vec::new(),
        triangle_branch: Vec::new(),
        note: None,
    };
    let grid = default_u_grid(BRANCH_POINTS);
    match model.kind {
        ModelKind::SquareGeneral => {
            return Err(CliError::Config(
                "edges covers square-zigzag, square-lr and the triangular models; use zeromodes for square-general".into(),
            ))
        }
        ModelKind::SquareLrIsotropic => {
            report.note = Some("tl = tr: all states are standing waves; no edge states".into());
        }
        ModelKind::SquareZigzag => {
            let h = model.square_hoppings().expect("square model");
            let regime = edge_regime(h, model.width)?;
            for &u in &grid {
                let p = zigzag_edge_branch(u, model.width)?;
                if p.xi_abs < regime.xi_min || p.xi_abs > regime.xi_max {
                    continue;
                }
                report.square_branch.push(SquareBranchRow {
                    u,
                    xi_abs: p.xi_abs,
                    omega: p.omega,
                    energy: h.tr * p.omega,
                    k: square_k_for_xi(model, p.xi_abs),
                });
            }
            report.regime = Some(regime);
        }
        ModelKind::TriangleLinear => {
            report.note = Some("linear edges: all states are bulk standing waves".into());
        }
        ModelKind::TriangleZigzag1 | ModelKind::TriangleZigzag2 => {
            let h = model.triangle_hoppings().expect("triangle model");
            let edge = model.kind.triangle_edge().expect("triangle model");
            report.families = edge_existence(h, model.width, edge)?;
            for fam in &report.families {
                if !fam.exists {
                    continue;
                }
                let sols = match edge {
                    TriangleEdge::Zigzag2 => zz2_edge_solutions(h, model.width, model.a, fam.sign, fam.family, &grid)?,
                    _ => zz1_edge_solutions(h, model.width, model.a, fam.sign, &grid)?,
                };
                report.triangle_branch.extend(sols.into_iter().map(|s| TriangleBranchRow {
                    sign: s.sign,
                    family: s.family,
                    u: s.u,
                    coefficient: s.coefficient,
                    cos_ka: s.cos_ka,
                    k: s.k,
                    energy: s.energy,
                }));
            }
        }
    }
    Ok(report)
}

pub fn run(settings: &Settings) -> Result<(), CliError> {
    let model = settings.ribbon()?;
    emit(settings.out.as_deref(), &json(&report(&model)?)?)
}
