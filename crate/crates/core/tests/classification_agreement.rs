//! Numeric classification of dense-solver eigenvectors against the closed-form
//! verdict of the matching eigenvalue, over full zone scans at width 13.

use anisoribbon::classify::{classify_eigenvector, pair_by_energy, StateLabel};
use anisoribbon::hamiltonian::{eigensolve_dense, ModelKind, RibbonModel, SquareHoppings, TriangleHoppings};
use anisoribbon::scan::analytic_states;

const N: usize = 13;

struct Tally {
    agree: usize,
    total: usize,
    /// Mismatches whose Chebyshev argument is at least 1e-3 away from +-1.
    far: Vec<(f64, f64)>,
}

fn tally(model: &RibbonModel, points: usize) -> Tally {
    let mut t = Tally { agree: 0, total: 0, far: Vec::new() };
    for k in model.k_grid(points) {
        let Some(states) = analytic_states(model, k).unwrap() else { continue };
        let spectrum = eigensolve_dense(&model.bloch(k)).unwrap();
        let energies: Vec<f64> = states.iter().map(|s| s.energy).collect();
        for (i, j) in pair_by_energy(&energies, &spectrum.energies) {
            let s = &states[i];
            if s.label == StateLabel::Transition {
                continue;
            }
            let numeric = classify_eigenvector(&spectrum.vectors[j], model.kind.is_square())
                .map(|c| c.label)
                .unwrap_or(StateLabel::Bulk);
            t.total += 1;
            if numeric.is_edge() == s.label.is_edge() {
                t.agree += 1;
            } else if let Some(x) = s.ratio.filter(|x| (x.abs() - 1.0).abs() >= 1e-3) {
                t.far.push((k, x));
            } else if s.ratio.is_none() {
                t.far.push((k, f64::NAN));
            }
        }
    }
    t
}

fn models() -> Vec<RibbonModel> {
    let sq = |kind, h: (f64, f64, f64, f64)| {
        RibbonModel::square(kind, SquareHoppings::new(h.0, h.1, h.2, h.3).unwrap(), N).unwrap()
    };
    let tri = |kind, t: (f64, f64, f64)| {
        RibbonModel::triangle(kind, TriangleHoppings::new(t.0, t.1, t.2).unwrap(), N).unwrap()
    };
    vec![
        sq(ModelKind::SquareZigzag, (1.0, 1.0, 0.0, 1.0)),
        sq(ModelKind::SquareLrIsotropic, (0.7, 1.3, 0.9, 0.9)),
        tri(ModelKind::TriangleLinear, (1.0, 1.0, 1.0)),
        tri(ModelKind::TriangleZigzag1, (0.9, 0.1, 1.0)),
        tri(ModelKind::TriangleZigzag2, (1.5, 0.1, 1.0)),
        tri(ModelKind::TriangleZigzag2, (0.9, 0.1, 1.0)),
    ]
}

#[test]
fn numeric_and_analytic_verdicts_agree() {
    let mut failures = Vec::new();
    for model in models() {
        let t = tally(&model, 256);
        let rate = t.agree as f64 / t.total as f64;
        println!("{}: agreement {rate:.4}, {} mismatches away from transition", model.kind.name(), t.far.len());
        if rate < 0.99 || !t.far.is_empty() {
            let worst = t.far.iter().map(|(_, x)| (x.abs() - 1.0).abs()).fold(0.0, f64::max);
            failures.push(format!(
                "{}: rate {rate:.4}, {} far mismatches (largest ||x|-1| = {worst:.3})",
                model.kind.name(),
                t.far.len()
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("; "));
}
