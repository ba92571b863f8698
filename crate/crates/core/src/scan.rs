//! Brillouin-zone scans: per-momentum eigenpairs with classification, from the
//! closed forms where they apply and from the dense solver elsewhere.

use crate::classify::{
    classify_analytic_square, classify_analytic_triangle, classify_eigenvector, ipr, StateLabel,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{eigensolve_dense, normalize, ModelKind, RibbonModel, TriangleEdge};
use crate::square_ribbon::{lr_block_coupling, lr_isotropic_state, zigzag_spectrum_full, zigzag_state, ZigzagReduced};
use crate::triangle_ribbon::{root_profile, triangle_roots, TriangleReduced};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Analytic,
    Oracle,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Analytic => "analytic",
            Source::Oracle => "oracle",
        }
    }
}

/// One eigenpair with its classification.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedState {
    pub energy: f64,
    pub vector: Vec<Complex64>,
    pub label: StateLabel,
    pub u: Option<f64>,
    pub ipr: f64,
    /// Chebyshev argument of the root for closed forms that have one.
    pub ratio: Option<f64>,
}

/// All eigenpairs at one momentum, ascending in energy.
#[derive(Debug, Clone, PartialEq)]
pub struct KPointResult {
    pub k: f64,
    pub states: Vec<ClassifiedState>,
    pub source: Source,
    /// Why the closed form was not used, when it was expected to apply.
    pub note: Option<String>,
}

/// Closed-form eigenpairs at `k`, or `Ok(None)` where no closed form applies
/// (general square ribbon, degenerate reduced parameters).
pub fn analytic_states(model: &RibbonModel, k: f64) -> Result<Option<Vec<ClassifiedState>>> {
    let n = model.width;
    let mut states = Vec::with_capacity(2 * n);
    match model.kind {
        ModelKind::SquareGeneral => return Ok(None),
        ModelKind::SquareZigzag => {
            let h = model.square_hoppings().expect("square model");
            let r = ZigzagReduced::new(h, k, model.a, n)?;
            if r.is_degenerate() {
                return Ok(None);
            }
            for omega in zigzag_spectrum_full(r.xi_abs(), n)? {
                let vector = zigzag_state(&r, omega)?;
                let v = classify_analytic_square(omega.abs(), r.xi_abs())?;
                states.push(ClassifiedState {
                    energy: h.tr * omega,
                    ipr: ipr(&vector),
                    vector,
                    label: v.label(StateLabel::EdgeBoth),
                    u: v.u,
                    ratio: Some(v.ratio),
                });
            }
        }
        ModelKind::SquareLrIsotropic => {
            let h = model.square_hoppings().expect("square model");
            for j in 1..=n {
                let e = lr_block_coupling(h, n, k, model.a, j)?.norm();
                for sign in [1.0, -1.0] {
                    let vector = lr_isotropic_state(h, n, k, model.a, j, sign)?;
                    states.push(ClassifiedState {
                        energy: sign * e,
                        ipr: ipr(&vector),
                        vector,
                        label: StateLabel::Bulk,
                        u: None,
                        ratio: None,
                    });
                }
            }
        }
        ModelKind::TriangleLinear | ModelKind::TriangleZigzag1 | ModelKind::TriangleZigzag2 => {
            let h = model.triangle_hoppings().expect("triangle model");
            let edge = model.kind.triangle_edge().expect("triangle model");
            let r = TriangleReduced::new(h, n, k, model.a, edge);
            if (edge != TriangleEdge::Linear && r.is_degenerate())
                || (edge == TriangleEdge::Zigzag2 && n < 2)
            {
                return Ok(None);
            }
            let edge_label = match edge {
                TriangleEdge::Zigzag1 => StateLabel::EdgeLeft,
                _ => StateLabel::EdgeBoth,
            };
            for root in triangle_roots(&r)? {
                let mut vector = root_profile(&r, &root)?;
                normalize(&mut vector);
                let (label, u) = if edge == TriangleEdge::Linear {
                    (StateLabel::Bulk, None)
                } else {
                    let v = classify_analytic_triangle(root.energy, r.tau, r.zeta_abs())?;
                    (v.label(edge_label), root.edge.map(|e| e.u).or(v.u))
                };
                states.push(ClassifiedState {
                    energy: root.energy,
                    ipr: ipr(&vector),
                    vector,
                    label,
                    u,
                    ratio: (edge != TriangleEdge::Linear).then_some(root.x),
                });
            }
        }
    }
    states.sort_by(|p, q| p.energy.total_cmp(&q.energy));
    Ok(Some(states))
}

/// Dense-solver eigenpairs at `k`, classified numerically.
pub fn oracle_states(model: &RibbonModel, k: f64) -> Result<Vec<ClassifiedState>> {
    let spectrum = eigensolve_dense(&model.bloch(k))?;
    let square = model.kind.is_square();
    spectrum
        .energies
        .into_iter()
        .zip(spectrum.vectors)
        .map(|(energy, vector)| {
            let class = classify_eigenvector(&vector, square).or_else(|_| {
                // Ribbons too narrow for a boundary fit are reported as bulk.
                Ok::<_, Error>(crate::classify::StateClass {
                    label: StateLabel::Bulk,
                    u_estimate: None,
                    ipr: ipr(&vector),
                })
            })?;
            Ok(ClassifiedState {
                energy,
                vector,
                label: class.label,
                u: class.u_estimate,
                ipr: class.ipr,
                ratio: None,
            })
        })
        .collect()
}

/// Eigenpairs at `k`: analytic where available, oracle otherwise.
pub fn solve_k(model: &RibbonModel, k: f64) -> Result<KPointResult> {
    match analytic_states(model, k) {
        Ok(Some(states)) => Ok(KPointResult {
            k,
            states,
            source: Source::Analytic,
            note: None,
        }),
        Ok(None) => Ok(KPointResult {
            k,
            states: oracle_states(model, k)?,
            source: Source::Oracle,
            note: (model.kind != ModelKind::SquareGeneral)
                .then(|| "degenerate reduced parameters; dense solver used".to_string()),
        }),
        Err(e) => Ok(KPointResult {
            k,
            states: oracle_states(model, k)?,
            source: Source::Oracle,
            note: Some(format!("closed form failed ({e}); dense solver used")),
        }),
    }
}

/// Runs `f` over `items` on `jobs` worker threads (0 = rayon default),
/// preserving order.
pub fn parallel_map<T, R, F>(items: &[T], jobs: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| items.par_iter().map(&f).collect())
}

/// Solves every point of the model's `k_points` grid.
pub fn scan(model: &RibbonModel, k_points: usize, jobs: usize) -> Result<Vec<KPointResult>> {
    let grid = model.k_grid(k_points);
    parallel_map(&grid, jobs, |&k| solve_k(model, k))
}

/// One row of a band table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandRow {
    pub k: f64,
    pub band: usize,
    pub energy: f64,
    pub class: StateLabel,
    pub u: Option<f64>,
    pub ipr: f64,
    pub source: Source,
}

/// Flattens scan results into rows ordered by `(k index, band index)`.
pub fn band_rows(results: &[KPointResult]) -> Vec<BandRow> {
    results
        .iter()
        .flat_map(|r| {
            r.states.iter().enumerate().map(move |(band, s)| BandRow {
                k: r.k,
                band,
                energy: s.energy,
                class: s.label,
                u: s.u,
                ipr: s.ipr,
                source: r.source,
            })
        })
        .collect()
}

/// Maximal runs of `true` in a periodic sequence, as `(start, len)`. A run
/// crossing the end wraps around to the start. An all-true sequence is one run.
pub fn cyclic_runs(flags: &[bool]) -> Vec<(usize, usize)> {
    let n = flags.len();
    if n == 0 {
        return Vec::new();
    }
    if flags.iter().all(|&f| f) {
        return vec![(0, n)];
    }
    let first_false = flags.iter().position(|&f| !f).expect("some false");
    let mut runs = Vec::new();
    let mut current: Option<(usize, usize)> = None;
    for step in 1..=n {
        let i = (first_false + step) % n;
        if flags[i] {
            current = Some(match current {
                Some((s, l)) => (s, l + 1),
                None => (i, 1),
            });
        } else if let Some(run) = current.take() {
            runs.push(run);
        }
    }
    runs.sort();
    runs
}

/// Edge-labeled segments of each band over a periodic scan: entry `b` lists the
/// runs of band `b`.
pub fn edge_segments(results: &[KPointResult]) -> Vec<Vec<(usize, usize)>> {
    let bands = results.first().map_or(0, |r| r.states.len());
    (0..bands)
        .map(|b| {
            let flags: Vec<bool> = results.iter().map(|r| r.states[b].label.is_edge()).collect();
            cyclic_runs(&flags)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{SquareHoppings, TriangleHoppings};

    #[test]
    fn runs_wrap_around() {
        assert_eq!(cyclic_runs(&[true, false, false, true, true]), vec![(3, 3)]);
        assert_eq!(cyclic_runs(&[false, true, false, true]), vec![(1, 1), (3, 1)]);
        assert_eq!(cyclic_runs(&[true, true]), vec![(0, 2)]);
        assert!(cyclic_runs(&[false, false]).is_empty());
    }

    #[test]
    fn scan_is_deterministic_and_ordered() {
        let h = SquareHoppings::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let model = RibbonModel::square(ModelKind::SquareZigzag, h, 5).unwrap();
        let a = band_rows(&scan(&model, 16, 1).unwrap());
        let b = band_rows(&scan(&model, 16, 4).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.len(), 16 * 10);
        assert!(a.windows(2).all(|w| w[0].k < w[1].k || (w[0].k == w[1].k && w[0].band + 1 == w[1].band)));
    }

    #[test]
    fn degenerate_point_falls_back() {
        let h = SquareHoppings::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let model = RibbonModel::square(ModelKind::SquareZigzag, h, 4).unwrap();
        let r = solve_k(&model, -std::f64::consts::FRAC_PI_2).unwrap();
        assert_eq!(r.source, Source::Oracle);
        assert!(r.note.is_some());
        let t = TriangleHoppings::new(1.0, 1.0, 1.0).unwrap();
        let model = RibbonModel::triangle(ModelKind::TriangleZigzag1, t, 4).unwrap();
        assert_eq!(solve_k(&model, std::f64::consts::PI).unwrap().source, Source::Oracle);
    }
}
