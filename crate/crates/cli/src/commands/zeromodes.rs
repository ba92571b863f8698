//! `zeromodes`: zero-energy states of the square ribbon.

use crate::config::Settings;
use crate::output::{emit, json};
use crate::CliError;
use anisoribbon::hamiltonian::SquareHoppings;
use anisoribbon::square_ribbon::{solve_vertical_sum, zero_mode_feasible, zero_mode_momenta, ZeroMode};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Solve {
    pub j: usize,
    pub tu_plus_td: f64,
}

#[derive(Debug, Serialize)]
pub struct ZeroModeReport {
    pub model: &'static str,
    pub width: usize,
    pub hoppings: SquareHoppings,
    /// `2 sqrt(tr tl)`
    pub bound: f64,
    /// `tu + td <= 2 sqrt(tr tl)`, the condition for zone-centre modes; equal verticals can still host modes beyond it
    pub feasible: bool,
    pub modes: Vec<ZeroMode>,
    pub localization: String,
    pub solve: Option<Solve>,
}

/// Where the two sublattice components of a zero mode concentrate.
pub fn localization(h: &SquareHoppings) -> String {
    if h.tr == h.tl {
        "tr = tl: no edge localization; zero modes are standing waves".into()
    } else if h.tr < h.tl {
        format!(
            "tr < tl: bullet component localized at n = 1, circ component at n = N (decay ln(tl/tr)/2 = {} per chain)",
            0.5 * (h.tl / h.tr).ln()
        )
    } else {
        format!(
            "tr > tl: bullet component localized at n = N, circ component at n = 1 (decay ln(tr/tl)/2 = {} per chain)",
            0.5 * (h.tr / h.tl).ln()
        )
    }
}

pub fn report(settings: &Settings) -> Result<ZeroModeReport, CliError> {
    let model = settings.ribbon()?;
    let h = *model
        .square_hoppings()
        .ok_or_else(|| CliError::Config("zeromodes needs a square model".into()))?;
    let solve = match settings.solve_j {
        Some(j) => Some(Solve {
            j,
            tu_plus_td: solve_vertical_sum(&h, model.width, j)?,
        }),
        None => None,
    };
    Ok(ZeroModeReport {
        model: model.kind.name(),
        width: model.width,
        hoppings: h,
        bound: 2.0 * (h.tr * h.tl).sqrt(),
        feasible: zero_mode_feasible(&h)?,
        modes: zero_mode_momenta(&h, model.width, model.a)?,
        localization: localization(&h),
        solve,
    })
}

pub fn run(settings: &Settings) -> Result<(), CliError> {
    emit(settings.out.as_deref(), &json(&report(settings)?)?)
}
