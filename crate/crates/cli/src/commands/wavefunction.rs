//! `wavefunction`: amplitude profile of one state.
//!
//! The state is chosen by `--u` (edge branch at decay `u`, phase factor
//! omitted), `--j` (zero mode of the square ribbon at `--k`), or `--band`
//! (eigenstate number `band` at `--k`, closed form where available).

use crate::config::{Format, Settings};
use crate::output::{csv, emit, float, json};
use crate::CliError;
use anisoribbon::hamiltonian::{ModelKind, RibbonModel};
use anisoribbon::scan::{solve_k, Source};
use anisoribbon::square_ribbon::{zero_mode_profile, zigzag_edge_branch, Sublattice};
use anisoribbon::triangle_ribbon::{zz1_edge_profile, zz2_edge_profile, BranchSign, EdgeFamily};
use anisoribbon::Complex64;
use serde::Serialize;

pub const HEADER: [&str; 6] = ["n", "sublattice", "abs", "re", "im", "source"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    pub sublattice: Option<Sublattice>,
    pub abs: f64,
    pub re: f64,
    pub im: f64,
    pub source: Source,
}

fn parse_sign(s: Option<&str>) -> Result<BranchSign, CliError> {
    match s.unwrap_or("+") {
        "+" | "plus" => Ok(BranchSign::Plus),
        "-" | "minus" => Ok(BranchSign::Minus),
        other => Err(CliError::Config(format!("--sign must be + or - (got '{other}')"))),
    }
}

fn parse_family(s: Option<&str>) -> Result<EdgeFamily, CliError> {
    match s.unwrap_or("A") {
        "A" | "a" => Ok(EdgeFamily::A),
        "B" | "b" => Ok(EdgeFamily::B),
        other => Err(CliError::Config(format!("--family must be A or B (got '{other}')"))),
    }
}

fn rows_from(values: &[Complex64], sublattice: Option<Sublattice>, source: Source) -> Vec<ProfileRow> {
    values
        .iter()
        .enumerate()
        .map(|(i, z)| ProfileRow {
            n: i + 1,
            sublattice,
            abs: z.norm(),
            re: z.re,
            im: z.im,
            source,
        })
        .collect()
}

fn split_square(v: &[Complex64], source: Source) -> Vec<ProfileRow> {
    let n = v.len() / 2;
    let mut rows = rows_from(&v[..n], Some(Sublattice::Circ), source);
    rows.extend(rows_from(&v[n..], Some(Sublattice::Bullet), source));
    rows
}

pub fn profile(settings: &Settings) -> Result<Vec<ProfileRow>, CliError> {
    let model: RibbonModel = settings.ribbon()?;
    let n = model.width;
    if let Some(u) = settings.u {
        let sign = parse_sign(settings.sign.as_deref())?;
        let rows = match model.kind {
            ModelKind::SquareZigzag => {
                let p = zigzag_edge_branch(u, n)?;
                split_square(&p.state_vector(0.0, sign.value()), Source::Analytic)
            }
            ModelKind::TriangleZigzag1 => rows_from(&zz1_edge_profile(u, n, sign, 0.0), None, Source::Analytic),
            ModelKind::TriangleZigzag2 => {
                let family = parse_family(settings.family.as_deref())?;
                rows_from(&zz2_edge_profile(u, n, sign, family, 0.0)?, None, Source::Analytic)
            }
            other => {
                return Err(CliError::Config(format!(
                    "--u selects an edge branch; {} has none",
                    other.name()
                )))
            }
        };
        return Ok(rows);
    }
    let k = settings.k.unwrap_or(0.0);
    if let Some(j) = settings.j {
        let h = model
            .square_hoppings()
            .ok_or_else(|| CliError::Config("--j selects a square-ribbon zero mode".into()))?;
        let mut rows = Vec::new();
        for sub in [Sublattice::Circ, Sublattice::Bullet] {
            rows.extend(rows_from(&zero_mode_profile(h, n, k, model.a, j, sub)?, Some(sub), Source::Analytic));
        }
        return Ok(rows);
    }
    let band = settings
        .band
        .ok_or_else(|| CliError::Config("wavefunction needs --u, --j or --band".into()))?;
    let result = solve_k(&model, k)?;
    let state = result.states.get(band).ok_or_else(|| {
        CliError::Config(format!("band {band} out of range (0..{})", result.states.len()))
    })?;
    Ok(if model.kind.is_square() {
        split_square(&state.vector, result.source)
    } else {
        rows_from(&state.vector, None, result.source)
    })
}

pub fn render(settings: &Settings, rows: &[ProfileRow]) -> Result<String, CliError> {
    match settings.format() {
        Format::Csv => Ok(csv(
            &HEADER,
            rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    match r.sublattice {
                        Some(Sublattice::Circ) => "circ".into(),
                        Some(Sublattice::Bullet) => "bullet".into(),
                        None => String::new(),
                    },
                    float(r.abs),
                    float(r.re),
                    float(r.im),
                    r.source.name().into(),
                ]
            }),
        )),
        Format::Json => json(&rows),
    }
}

pub fn run(settings: &Settings) -> Result<(), CliError> {
    let rows = profile(settings)?;
    emit(settings.out.as_deref(), &render(settings, &rows)?)
}
