//! Run configuration: command-line flags layered over an optional JSON file.

use anisoribbon::hamiltonian::{Hoppings, ModelKind, RibbonModel, SquareHoppings, TriangleHoppings};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every subcommand. Every field is optional so that a
/// config file can supply it; flags win over the file.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// square-general, square-zigzag, square-lr, triangle-linear,
    /// triangle-zigzag1 or triangle-zigzag2
    #[arg(long)]
    pub model: Option<String>,
    /// Ribbon width (number of chains)
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub tu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub td: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tl: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tr: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t3: Option<f64>,
    /// Lattice constant
    #[arg(long)]
    pub a: Option<f64>,
    /// Momenta on the half-open zone [-K, K)
    #[arg(long = "k-points")]
    pub k_points: Option<usize>,
    /// Validation tolerance on eigenvalues
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output file (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for k scans (0 = all cores)
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Single momentum instead of the grid
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    /// Band index (0-based, ascending energy)
    #[arg(long)]
    pub band: Option<usize>,
    /// Edge decay parameter
    #[arg(long)]
    pub u: Option<f64>,
    /// Standing-wave index j (1..=N)
    #[arg(long)]
    pub j: Option<usize>,
    /// Edge branch sign, + or -
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<String>,
    /// Edge family, A or B
    #[arg(long)]
    pub family: Option<String>,
    /// Report t_u + t_d putting mode j at zero energy
    #[arg(long = "solve-j")]
    pub solve_j: Option<usize>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident, $($field:ident),*) => {
        $( if $src.$field.is_some() { $dst.$field = $src.$field.clone(); } )*
    };
}

impl Settings {
    /// `self` over `base`.
    pub fn over(&self, base: Settings) -> Settings {
        let mut merged = base;
        let src = self;
        overlay!(
            merged, src, model, n, tu, td, tl, tr, t1, t2, t3, a, k_points, tol, out, format, jobs, k,
            band, u, j, sign, family, solve_j
        );
        merged
    }

    pub fn load(path: &Path) -> Result<Settings, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }

    pub fn model_kind(&self) -> Result<ModelKind, CliError> {
        let name = self
            .model
            .as_deref()
            .ok_or_else(|| CliError::Config("--model is required".into()))?;
        ModelKind::parse(name).ok_or_else(|| {
            let names: Vec<&str> = ModelKind::ALL.iter().map(|m| m.name()).collect();
            CliError::Config(format!("unknown model '{name}' (expected one of {})", names.join(", ")))
        })
    }

    /// Builds the ribbon. Missing amplitudes default to 1, except `tl`,
    /// which defaults to 0 on square-zigzag and to `tr` on square-lr.
    pub fn ribbon(&self) -> Result<RibbonModel, CliError> {
        let kind = self.model_kind()?;
        let width = self.n.ok_or_else(|| CliError::Config("--N is required".into()))?;
        let a = self.a.unwrap_or(1.0);
        let hoppings = if kind.is_square() {
            if self.t1.is_some() || self.t2.is_some() || self.t3.is_some() {
                return Err(CliError::Config(format!("{} takes --tu --td --tl --tr", kind.name())));
            }
            let tr = self.tr.unwrap_or(1.0);
            let tl = self.tl.unwrap_or(match kind {
                ModelKind::SquareZigzag => 0.0,
                ModelKind::SquareLrIsotropic => tr,
                _ => 1.0,
            });
            let h = SquareHoppings::new(self.tu.unwrap_or(1.0), self.td.unwrap_or(1.0), tl, tr)?;
            Hoppings::Square(h)
        } else {
            if self.tu.is_some() || self.td.is_some() || self.tl.is_some() || self.tr.is_some() {
                return Err(CliError::Config(format!("{} takes --t1 --t2 --t3", kind.name())));
            }
            let h = TriangleHoppings::new(
                self.t1.unwrap_or(1.0),
                self.t2.unwrap_or(1.0),
                self.t3.unwrap_or(1.0),
            )?;
            Hoppings::Triangle(h)
        };
        Ok(RibbonModel::new(kind, hoppings, width, a)?)
    }

    pub fn k_points(&self) -> Result<usize, CliError> {
        match self.k_points.unwrap_or(64) {
            0 => Err(CliError::Config("--k-points must be >= 1".into())),
            p => Ok(p),
        }
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    pub fn jobs(&self) -> usize {
        self.jobs.unwrap_or(0)
    }

    pub fn tol(&self) -> f64 {
        self.tol.unwrap_or(1e-8)
    }

    /// The requested momenta: `--k` alone, or the zone grid.
    pub fn momenta(&self, model: &RibbonModel) -> Result<Vec<f64>, CliError> {
        match self.k {
            Some(k) if k.is_finite() => Ok(vec![k]),
            Some(k) => Err(CliError::Config(format!("--k = {k} is not finite"))),
            None => Ok(model.k_grid(self.k_points()?)),
        }
    }
}
