//! `validate`: closed forms against the dense solver.
//!
//! Without `--model` a default matrix covering every ribbon type runs, plus a
//! list of spot checks that touch each closed-form routine at least once.

use crate::config::{Format, Settings};
use crate::output::{emit, json};
use crate::CliError;
use anisoribbon::chebpoly::{u_eval, u_hyp, u_trig};
use anisoribbon::classify::{classify_eigenvector, pair_by_energy, StateLabel};
use anisoribbon::hamiltonian::{
    build_square_bloch, build_triangle_bloch, eigensolve_dense, normalize, ModelKind, RibbonModel,
    SquareHoppings, TriangleEdge, TriangleHoppings,
};
use anisoribbon::scan::{analytic_states, parallel_map};
use anisoribbon::square_ribbon::{
    d_omega_d_xi, edge_norm_factor, edge_regime, extrema_ellipse_residual, lr_block_coupling,
    lr_energy_closed_form, solve_vertical_sum, sublattice_link, xi_of_k, zero_mode_momenta,
    zero_mode_vector, zigzag_bulk_state, zigzag_edge_branch, zigzag_edge_u_from_xi,
    zigzag_secular_residual_normalized, zigzag_spectrum, EdgeVerdict, Sublattice, ZigzagReduced,
};
use anisoribbon::triangle_ribbon::{
    default_u_grid, edge_existence, linear_spectrum, secular_residual_normalized, zz1_edge_solutions,
    zz1_secular_residual, zz1_state, zz2_edge_solutions, zz2_secular_residual, zz2_state, BranchSign,
    EdgeFamily, TriangleReduced,
};
use anisoribbon::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Largest accepted `1 - <psi|P|psi>` for closed-form eigenvectors.
pub const OVERLAP_TOL: f64 = 1e-6;
/// Smallest accepted fraction of matching bulk/edge verdicts.
pub const AGREEMENT_MIN: f64 = 0.99;
/// Distance of `|x|` from 1 inside which a verdict mismatch is attributed to
/// the transition.
pub const NEAR_TRANSITION: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct ModelValidation {
    pub model: String,
    pub width: usize,
    pub hoppings: Vec<f64>,
    pub k_points: usize,
    /// `max |E_analytic - E_oracle| / max(1, |E|)`
    pub max_eigenvalue_deviation: f64,
    pub max_overlap_deficit: f64,
    pub classification_agreement: f64,
    /// Mismatched verdicts with `||x| - 1| >= 1e-3`.
    pub disagreements_away_from_transition: usize,
    /// Momenta where the closed form found a different number of roots.
    pub root_count_mismatches: usize,
    /// Momenta where no closed form applied.
    pub oracle_only_points: usize,
    /// `(k, band)` pairs outside tolerance.
    pub offending: Vec<(f64, usize)>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    fn below(name: &str, value: f64, limit: f64) -> Check {
        Check {
            name: name.into(),
            value,
            limit,
            passed: value < limit,
        }
    }

    fn holds(name: &str, ok: bool) -> Check {
        Check {
            name: name.into(),
            value: if ok { 0.0 } else { 1.0 },
            limit: 0.5,
            passed: ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationSummary {
    pub tolerance: f64,
    pub models: Vec<ModelValidation>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

struct PointStats {
    deviation: f64,
    deficit: f64,
    agree: usize,
    total: usize,
    far_disagreements: usize,
    offending: Vec<usize>,
    count_mismatch: bool,
    analytic: bool,
}

fn validate_point(model: &RibbonModel, k: f64, tol: f64) -> anisoribbon::Result<PointStats> {
    let spectrum = eigensolve_dense(&model.bloch(k))?;
    let mut stats = PointStats {
        deviation: 0.0,
        deficit: 0.0,
        agree: 0,
        total: 0,
        far_disagreements: 0,
        offending: Vec::new(),
        count_mismatch: false,
        analytic: false,
    };
    let Some(states) = analytic_states(model, k)? else {
        return Ok(stats);
    };
    stats.analytic = true;
    let analytic: Vec<f64> = states.iter().map(|s| s.energy).collect();
    for (band, j) in pair_by_energy(&analytic, &spectrum.energies) {
        let s = &states[band];
        let e = spectrum.energies[j];
        let dev = (s.energy - e).abs() / e.abs().max(1.0);
        let deficit = 1.0 - spectrum.projector_overlap(s.energy, &s.vector);
        stats.deviation = stats.deviation.max(dev);
        stats.deficit = stats.deficit.max(deficit);
        if dev >= tol || deficit >= OVERLAP_TOL {
            stats.offending.push(band);
        }
        if s.label == StateLabel::Transition {
            continue;
        }
        let numeric = classify_eigenvector(&spectrum.vectors[j], model.kind.is_square())
            .map(|c| c.label)
            .unwrap_or(StateLabel::Bulk);
        stats.total += 1;
        if numeric.is_edge() == s.label.is_edge() {
            stats.agree += 1;
        } else if s.ratio.is_none_or(|x| (x.abs() - 1.0).abs() >= NEAR_TRANSITION) {
            stats.far_disagreements += 1;
        }
    }
    stats.count_mismatch = states.len() != spectrum.energies.len();
    Ok(stats)
}

fn hopping_list(model: &RibbonModel) -> Vec<f64> {
    match (model.square_hoppings(), model.triangle_hoppings()) {
        (Some(h), _) => vec![h.tu, h.td, h.tl, h.tr],
        (_, Some(h)) => vec![h.t1, h.t2, h.t3],
        _ => Vec::new(),
    }
}

/// Compares closed forms with the dense solver over the zone grid.
pub fn validate_model(model: &RibbonModel, k_points: usize, tol: f64, jobs: usize) -> Result<ModelValidation, CliError> {
    let grid = model.k_grid(k_points);
    let points = parallel_map(&grid, jobs, |&k| validate_point(model, k, tol))?;
    let mut v = ModelValidation {
        model: model.kind.name().into(),
        width: model.width,
        hoppings: hopping_list(model),
        k_points,
        max_eigenvalue_deviation: 0.0,
        max_overlap_deficit: 0.0,
        classification_agreement: 1.0,
        disagreements_away_from_transition: 0,
        root_count_mismatches: 0,
        oracle_only_points: 0,
        offending: Vec::new(),
        passed: true,
    };
    let (mut agree, mut total) = (0, 0);
    for (k, p) in grid.iter().zip(points) {
        if !p.analytic {
            v.oracle_only_points += 1;
            continue;
        }
        v.max_eigenvalue_deviation = v.max_eigenvalue_deviation.max(p.deviation);
        v.max_overlap_deficit = v.max_overlap_deficit.max(p.deficit);
        agree += p.agree;
        total += p.total;
        v.disagreements_away_from_transition += p.far_disagreements;
        v.root_count_mismatches += usize::from(p.count_mismatch);
        v.offending.extend(p.offending.into_iter().map(|b| (*k, b)));
    }
    if total > 0 {
        v.classification_agreement = agree as f64 / total as f64;
    }
    v.passed = v.offending.is_empty() && v.root_count_mismatches == 0 && v.classification_agreement >= AGREEMENT_MIN;
    Ok(v)
}

fn square(kind: ModelKind, h: (f64, f64, f64, f64), n: usize) -> RibbonModel {
    let h = SquareHoppings::new(h.0, h.1, h.2, h.3).expect("valid hoppings");
    RibbonModel::square(kind, h, n).expect("valid model")
}

fn triangle(kind: ModelKind, t: (f64, f64, f64), n: usize) -> RibbonModel {
    let h = TriangleHoppings::new(t.0, t.1, t.2).expect("valid hoppings");
    RibbonModel::triangle(kind, h, n).expect("valid model")
}

/// Models and grid sizes of the default run.
pub fn default_matrix() -> Vec<(RibbonModel, usize)> {
    vec![
        (square(ModelKind::SquareZigzag, (1.0, 1.0, 0.0, 1.0), 13), 256),
        (square(ModelKind::SquareZigzag, (0.3, 0.2, 0.0, 1.0), 13), 128),
        (square(ModelKind::SquareLrIsotropic, (0.7, 1.3, 0.9, 0.9), 13), 128),
        (triangle(ModelKind::TriangleLinear, (1.0, 1.0, 1.0), 13), 128),
        (triangle(ModelKind::TriangleZigzag1, (0.9, 0.1, 1.0), 13), 128),
        (triangle(ModelKind::TriangleZigzag2, (1.5, 0.1, 1.0), 13), 128),
        (triangle(ModelKind::TriangleZigzag2, (0.9, 0.1, 1.0), 13), 128),
    ]
}

fn overlap_deficit(spectrum: &anisoribbon::hamiltonian::Spectrum, energy: f64, psi: &[Complex64]) -> f64 {
    1.0 - spectrum.projector_overlap(energy, psi)
}

/// Spot checks of every closed-form routine.
pub fn analytic_checks() -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();

    // Chebyshev closed forms against the recurrence.
    let mut worst: f64 = 0.0;
    for n in [0i64, 1, 7, 40, 200] {
        let v = 0.7;
        worst = worst.max((u_trig(n, v)? - u_eval(n, v.cos())).abs() / (n + 1) as f64);
        let u = 0.9;
        let exact = u_hyp(n, u)?;
        worst = worst.max((exact - u_eval(n, u.cosh())).abs() / exact.abs());
    }
    checks.push(Check::below("chebyshev closed forms vs recurrence", worst, 1e-10));

    // Square zigzag.
    let h = SquareHoppings::new(1.0, 1.0, 0.0, 1.0)?;
    let n = 5;
    let k = 0.3;
    let r = ZigzagReduced::new(&h, k, 1.0, n)?;
    let spectrum = eigensolve_dense(&build_square_bloch(&h, n, k, 1.0))?;
    let worst = spectrum
        .energies
        .iter()
        .map(|&e| zigzag_secular_residual_normalized(e, r.xi_abs(), n).map(f64::abs))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    checks.push(Check::below("zigzag secular residual at oracle eigenvalues", worst, 1e-8));
    let omegas = zigzag_spectrum(r.xi_abs(), n)?;
    let worst = omegas
        .iter()
        .map(|w| {
            spectrum
                .energies
                .iter()
                .map(|e| (e - w).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    checks.push(Check::below("zigzag spectrum vs oracle", worst, 1e-9));

    let branch = zigzag_edge_branch(1e-6, 5)?;
    let dist = (branch.xi_abs - 5.0 / 6.0).abs().max((branch.omega - 1.0 / 6.0).abs());
    checks.push(Check::below("critical point N = 5", dist, 1e-5));

    let (n, u) = (30, 1.0);
    let branch = zigzag_edge_branch(u, n)?;
    let k = (branch.xi_abs / 2.0).acos();
    let reduced = ZigzagReduced::new(&h, k, 1.0, n)?;
    let spectrum = eigensolve_dense(&build_square_bloch(&h, n, k, 1.0))?;
    let psi = branch.state_vector(reduced.theta, 1.0);
    checks.push(Check::below(
        "zigzag edge profile vs oracle (N = 30, u = 1)",
        overlap_deficit(&spectrum, branch.omega, &psi),
        OVERLAP_TOL,
    ));
    let u_back = zigzag_edge_u_from_xi(branch.xi_abs, n)?;
    checks.push(Check::below("edge u inversion", (u_back - u).abs(), 1e-10));
    let direct: f64 = (1..=n).map(|m| 2.0 * (m as f64 * u).sinh().powi(2)).sum::<f64>() / (n as f64 * u).sinh().powi(2);
    checks.push(Check::below(
        "edge norm closed form vs sum",
        (edge_norm_factor(u, n) - direct).abs() / direct,
        1e-12,
    ));
    let x = -u.cosh();
    let link = sublattice_link(branch.omega, 0.4, n, u_eval(n as i64, x));
    checks.push(Check::below("sublattice link modulus on edge branch", (link.norm() - 1.0).abs(), 1e-10));
    let bulk = zigzag_bulk_state(PI / 3.0, 1.0, 5, Sublattice::Circ)?;
    checks.push(Check::below("bulk profile second site", (bulk[1] - 2.0).abs(), 1e-14));

    let regimes = [
        ((1.0, 1.0), EdgeVerdict::EdgeBulkTransition),
        ((2.0, 0.1), EdgeVerdict::NeverEmerge),
        ((0.2, 0.2), EdgeVerdict::AlwaysEdge),
    ];
    let ok = regimes.iter().all(|&((tu, td), want)| {
        SquareHoppings::new(tu, td, 0.0, 1.0)
            .and_then(|h| edge_regime(&h, 5))
            .map(|r| r.verdict == want)
            .unwrap_or(false)
    });
    checks.push(Check::holds("edge regime trichotomy", ok));

    // Extremum of the lowest positive subband of omega(|xi|) on the ellipse.
    let n = 5;
    let f = |xi: f64| zigzag_spectrum(xi, n).map(|w| w[1]);
    let (mut lo, mut hi) = (0.05, 2.0);
    for _ in 0..100 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1)? < f(m2)? {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let xi = 0.5 * (lo + hi);
    let w = f(xi)?;
    checks.push(Check::below("subband minimum on extrema ellipse", extrema_ellipse_residual(w, xi, n).abs(), 1e-6));
    let xi = 1.5;
    let w = f(xi)?;
    let step = 1e-6;
    let fd = (f(xi + step)? - f(xi - step)?) / (2.0 * step);
    checks.push(Check::below("subband slope formula vs finite difference", (d_omega_d_xi(w, xi, n)? - fd).abs(), 1e-6));
    let xi_c = xi_of_k(&h, 0.0, 1.0)?;
    checks.push(Check::below("xi at k = 0", (xi_c - 2.0).norm(), 1e-15));

    // Left-right isotropic ribbon.
    let h = SquareHoppings::new(0.7, 1.3, 0.9, 0.9)?;
    let worst = (1..=5)
        .map(|j| {
            Ok((lr_block_coupling(&h, 5, 0.4, 1.0, j)?.norm() - lr_energy_closed_form(&h, 5, 0.4, 1.0, j)?).abs())
        })
        .collect::<Result<Vec<f64>, CliError>>()?
        .into_iter()
        .fold(0.0, f64::max);
    checks.push(Check::below("isotropic closed-form energy", worst, 1e-12));

    // Zero modes.
    let h = SquareHoppings::new(0.5, 0.5, 1.0, 1.0)?;
    let spectrum = eigensolve_dense(&build_square_bloch(&h, 2, 0.0, 1.0))?;
    let modes = zero_mode_momenta(&h, 2, 1.0)?;
    let mut worst: f64 = if modes.iter().any(|m| m.k == 0.0 && m.j == 1) { 0.0 } else { 1.0 };
    for sub in [Sublattice::Circ, Sublattice::Bullet] {
        worst = worst.max(overlap_deficit(&spectrum, 0.0, &zero_mode_vector(&h, 2, 0.0, 1.0, 1, sub)?));
    }
    checks.push(Check::below("zero mode N = 2 vs oracle", worst, 1e-8));
    let sum = solve_vertical_sum(&SquareHoppings::new(0.0, 0.0, 1.0, 1.0)?, 2, 1)?;
    checks.push(Check::below("zero-mode solve N = 2, j = 1", (sum - 1.0).abs(), 1e-14));

    // Triangular ribbons.
    let t = TriangleHoppings::new(0.9, 0.1, 1.0)?;
    let (n, k) = (5, 0.7);
    let spectrum = eigensolve_dense(&build_triangle_bloch(&t, n, k, 1.0, TriangleEdge::Linear))?;
    let (energies, states) = linear_spectrum(&t, n, k, 1.0);
    let mut worst: f64 = 0.0;
    for (e, psi) in energies.iter().zip(&states) {
        worst = worst.max(overlap_deficit(&spectrum, *e, psi));
    }
    checks.push(Check::below("linear-edge states vs oracle", worst, 1e-8));

    for (edge, name) in [(TriangleEdge::Zigzag1, "single"), (TriangleEdge::Zigzag2, "two-side")] {
        let spectrum = eigensolve_dense(&build_triangle_bloch(&t, n, k, 1.0, edge))?;
        let reduced = TriangleReduced::new(&t, n, k, 1.0, edge);
        let mut residual: f64 = 0.0;
        let mut deficit: f64 = 0.0;
        for &e in &spectrum.energies {
            residual = residual.max(secular_residual_normalized(&reduced, e)?.abs());
            let (raw, mut psi) = match edge {
                TriangleEdge::Zigzag1 => (zz1_secular_residual(e, &t, n, k, 1.0)?, zz1_state(e, &t, n, k, 1.0)?),
                _ => (zz2_secular_residual(e, &t, n, k, 1.0)?, zz2_state(e, &t, n, k, 1.0)?),
            };
            residual = residual.max(if raw.is_finite() { 0.0 } else { 1.0 });
            normalize(&mut psi);
            deficit = deficit.max(overlap_deficit(&spectrum, e, &psi));
        }
        checks.push(Check::below(&format!("{name} zigzag residual at oracle eigenvalues"), residual, 1e-8));
        checks.push(Check::below(&format!("{name} zigzag states vs oracle"), deficit, 1e-8));
    }

    let grid = default_u_grid(64);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for sign in BranchSign::BOTH {
        let mut sols = zz1_edge_solutions(&t, 5, 1.0, sign, &grid)?;
        for family in [EdgeFamily::A, EdgeFamily::B] {
            sols.extend(zz2_edge_solutions(&t, 5, 1.0, sign, family, &grid)?);
        }
        for s in sols {
            let r = TriangleReduced::new(&t, 5, s.k, 1.0, TriangleEdge::Linear);
            worst = worst.max((r.x_of(s.energy) - sign.value() * s.u.cosh()).abs() / s.u.cosh());
            count += 1;
        }
    }
    checks.push(Check::holds("edge solutions found", count > 0));
    checks.push(Check::below("edge solutions on their cosh branch", worst, 1e-10));
    let ok = edge_existence(&TriangleHoppings::new(1.5, 0.1, 1.0)?, 5, TriangleEdge::Zigzag2)?
        .iter()
        .all(|f| f.exists == (f.family == EdgeFamily::A));
    checks.push(Check::holds("two-side existence (1.5, 0.1, 1)", ok));
    Ok(checks)
}

pub fn summary(settings: &Settings) -> Result<ValidationSummary, CliError> {
    let tol = settings.tol();
    let jobs = settings.jobs();
    let mut models = Vec::new();
    let mut checks = Vec::new();
    if settings.model.is_some() {
        let model = settings.ribbon()?;
        if model.kind == ModelKind::SquareGeneral {
            let h = model.square_hoppings().expect("square model");
            for m in zero_mode_momenta(h, model.width, model.a)? {
                let spectrum = eigensolve_dense(&model.bloch(m.k))?;
                for sub in [Sublattice::Circ, Sublattice::Bullet] {
                    let psi = zero_mode_vector(h, model.width, m.k, model.a, m.j, sub)?;
                    checks.push(Check::below(
                        &format!("zero mode k = {}, j = {}, {}", m.k, m.j, format!("{sub:?}").to_lowercase()),
                        overlap_deficit(&spectrum, 0.0, &psi),
                        OVERLAP_TOL,
                    ));
                }
            }
        } else {
            models.push(validate_model(&model, settings.k_points()?, tol, jobs)?);
        }
    } else {
        for (model, points) in default_matrix() {
            models.push(validate_model(&model, points, tol, jobs)?);
        }
        checks = analytic_checks()?;
    }
    let passed = models.iter().all(|m| m.passed) && checks.iter().all(|c| c.passed);
    Ok(ValidationSummary {
        tolerance: tol,
        models,
        checks,
        passed,
    })
}

fn render_text(s: &ValidationSummary) -> String {
    let mut out = String::new();
    for m in &s.models {
        out.push_str(&format!(
            "{} {} N={} hoppings={:?} k_points={} max_dev={:e} max_overlap_deficit={:e} agreement={:.4} far_disagreements={} root_count_mismatches={} oracle_only={}\n",
            if m.passed { "PASS" } else { "FAIL" },
            m.model,
            m.width,
            m.hoppings,
            m.k_points,
            m.max_eigenvalue_deviation,
            m.max_overlap_deficit,
            m.classification_agreement,
            m.disagreements_away_from_transition,
            m.root_count_mismatches,
            m.oracle_only_points,
        ));
        for (k, band) in &m.offending {
            out.push_str(&format!("  offending k={k} band={band}\n"));
        }
    }
    for c in &s.checks {
        out.push_str(&format!(
            "{} {}: {:e} (limit {:e})\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            c.limit
        ));
    }
    out.push_str(if s.passed { "validation passed\n" } else { "validation FAILED\n" });
    out
}

pub fn run(settings: &Settings) -> Result<(), CliError> {
    let s = summary(settings)?;
    let text = match settings.format() {
        Format::Json => json(&s)?,
        Format::Csv => render_text(&s),
    };
    emit(settings.out.as_deref(), &text)?;
    if s.passed {
        Ok(())
    } else {
        Err(CliError::Validation("one or more comparisons exceeded tolerance".into()))
    }
}
