//! Closed-form spectra and eigenstates of the anisotropic square ribbon.

mod isotropic;
mod zero_mode;
mod zigzag;

pub use isotropic::{lr_block_coupling, lr_energy_closed_form, lr_isotropic_spectrum, lr_isotropic_state};
pub use zero_mode::{
    solve_vertical_sum, zero_mode_feasible, zero_mode_mismatch, zero_mode_momenta, zero_mode_profile,
    zero_mode_vector, ZeroMode, ZeroModeFamily, ZERO_MODE_TOL,
};
pub use zigzag::{
    chebyshev_argument, critical_omega, critical_xi, d_omega_d_xi, edge_norm_factor, edge_regime,
    extrema_ellipse_residual, sublattice_link, xi_of_k, zigzag_bulk_state, zigzag_edge_branch,
    zigzag_edge_u_from_xi, zigzag_secular_residual, zigzag_secular_residual_normalized,
    zigzag_spectrum, zigzag_spectrum_full, zigzag_state, EdgeBranchPoint, EdgeRegime, EdgeVerdict,
    Sublattice, ZigzagReduced, XI_DEGENERATE,
};

use crate::error::{Error, Result};
use crate::hamiltonian::{ModelKind, RibbonModel};

/// Analytic energies of a square ribbon at momentum `k`, ascending.
///
/// Returns `Ok(None)` when no closed form applies (the general model, or the
/// zigzag model at `|xi| <` [`XI_DEGENERATE`]); callers fall back to the dense
/// solver.
pub fn analytic_energies(model: &RibbonModel, k: f64) -> Result<Option<Vec<f64>>> {
    let h = model
        .square_hoppings()
        .ok_or_else(|| Error::Domain("not a square ribbon".into()))?;
    match model.kind {
        ModelKind::SquareZigzag => {
            let r = ZigzagReduced::new(h, k, model.a, model.width)?;
            if r.is_degenerate() {
                return Ok(None);
            }
            r.energies().map(Some)
        }
        ModelKind::SquareLrIsotropic => lr_isotropic_spectrum(h, model.width, k, model.a).map(Some),
        _ => Ok(None),
    }
}
