//! `bands`: the band table over the zone.

use crate::config::{Format, Settings};
use crate::output::{csv, emit, float, json, opt_float};
use crate::CliError;
use anisoribbon::scan::{band_rows, parallel_map, solve_k, BandRow, KPointResult};
use serde::Serialize;

pub const HEADER: [&str; 7] = ["k", "band", "energy", "class", "u", "ipr", "source"];

#[derive(Serialize)]
struct BandReport<'a> {
    model: &'a str,
    width: usize,
    rows: Vec<BandRow>,
    /// Momenta where the closed form was expected but not used.
    notes: Vec<(f64, String)>,
}

pub fn compute(settings: &Settings) -> Result<Vec<KPointResult>, CliError> {
    let model = settings.ribbon()?;
    let momenta = settings.momenta(&model)?;
    Ok(parallel_map(&momenta, settings.jobs(), |&k| solve_k(&model, k))?)
}

pub fn render(settings: &Settings, results: &[KPointResult]) -> Result<String, CliError> {
    let model = settings.ribbon()?;
    let rows = band_rows(results);
    match settings.format() {
        Format::Csv => Ok(csv(
            &HEADER,
            rows.iter().map(|r| {
                vec![
                    float(r.k),
                    r.band.to_string(),
                    float(r.energy),
                    r.class.name().to_string(),
                    opt_float(r.u),
                    float(r.ipr),
                    r.source.name().to_string(),
                ]
            }),
        )),
        Format::Json => json(&BandReport {
            model: model.kind.name(),
            width: model.width,
            rows,
            notes: results
                .iter()
                .filter_map(|r| r.note.clone().map(|n| (r.k, n)))
                .collect(),
        }),
    }
}

pub fn run(settings: &Settings) -> Result<(), CliError> {
    let results = compute(settings)?;
    for r in &results {
        if let Some(note) = &r.note {
            eprintln!("k = {}: {note}", r.k);
        }
    }
    emit(settings.out.as_deref(), &render(settings, &results)?)
}
