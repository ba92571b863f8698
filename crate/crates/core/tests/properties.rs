//! Randomized invariants of the closed forms, checked against the dense
//! solver where one is involved.

use anisoribbon::chebpoly::{sinh_ratio, u_eval, u_eval_log, u_hyp};
use anisoribbon::classify::{
    classify_analytic_square, classify_analytic_triangle, classify_numeric, default_fit_window,
    default_ipr_threshold, ipr, pair_by_energy, StateLabel,
};
use anisoribbon::hamiltonian::{
    build_square_bloch, eigensolve_dense, ModelKind, RibbonModel, SquareHoppings, TriangleEdge, TriangleHoppings,
};
use anisoribbon::square_ribbon::{
    self, edge_regime, solve_vertical_sum, xi_of_k, zero_mode_momenta, zero_mode_vector, zigzag_edge_branch,
    zigzag_secular_residual_normalized, zigzag_spectrum_full, EdgeVerdict, Sublattice, ZigzagReduced,
};
use anisoribbon::triangle_ribbon::{
    self, default_u_grid, edge_existence, zz1_edge_profile, zz1_edge_solutions, zz2_branch_residual,
    zz2_edge_profile, zz2_edge_solutions, BranchSign, EdgeFamily, TriangleReduced,
};
use anisoribbon::Complex64;
use proptest::prelude::*;

fn width() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![2usize, 3, 5, 13])
}

fn hopping() -> impl Strategy<Value = f64> {
    0.05f64..2.0
}

fn complex_vector(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chebyshev_reflection_and_base_cases(n in 0i64..300, x in -3.0f64..3.0) {
        prop_assert_eq!(u_eval(-1, x), 0.0);
        prop_assert_eq!(u_eval(0, x), 1.0);
        let (p, m) = (u_eval(n, x), u_eval(n, -x));
        let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((p - parity * m).abs() <= 1e-12 * p.abs().max(1.0));
    }

    #[test]
    fn chebyshev_log_form_is_finite(n in 0i64..10_000, x in -10.0f64..10.0) {
        let v = u_eval_log(n, x);
        prop_assert!(v.ln_abs.is_finite() || v.ln_abs == f64::NEG_INFINITY);
        prop_assert!(v.sign.is_finite());
    }

    #[test]
    fn hyperbolic_form_matches_recurrence(n in 0i64..150, u in 0.01f64..2.0) {
        let rec = u_eval(n, u.cosh());
        prop_assert!((u_hyp(n, u).unwrap() - rec).abs() < 1e-10 * rec.abs());
    }

    #[test]
    fn bloch_matrices_are_hermitian_and_solved(
        n in width(), tu in hopping(), td in hopping(), tl in hopping(), tr in hopping(), k in -2.0f64..2.0,
    ) {
        let model = RibbonModel::square(ModelKind::SquareGeneral, SquareHoppings::new(tu, td, tl, tr).unwrap(), n).unwrap();
        let h = model.bloch(k);
        prop_assert_eq!(h.dim(), 2 * n);
        prop_assert_eq!(h.hermiticity_defect(), 0.0);
        let s = eigensolve_dense(&h).unwrap();
        prop_assert!(s.energies.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(s.max_residual(&h) < 1e-10);
        prop_assert!(s.orthonormality_defect() < 1e-10);
    }

    #[test]
    fn triangle_matrices_have_width_dimension(n in width(), t1 in hopping(), t2 in hopping(), t3 in hopping(), k in -3.0f64..3.0) {
        let t = TriangleHoppings::new(t1, t2, t3).unwrap();
        for kind in [ModelKind::TriangleLinear, ModelKind::TriangleZigzag1, ModelKind::TriangleZigzag2] {
            let h = RibbonModel::triangle(kind, t, n).unwrap().bloch(k);
            prop_assert_eq!(h.dim(), n);
            prop_assert_eq!(h.hermiticity_defect(), 0.0);
        }
    }

    #[test]
    fn xi_stays_in_its_annulus(tu in hopping(), td in hopping(), tr in hopping(), k in -2.0f64..2.0) {
        let h = SquareHoppings::new(tu, td, 0.0, tr).unwrap();
        let xi = xi_of_k(&h, k, 1.0).unwrap().norm();
        prop_assert!(xi >= (tu - td).abs() / tr - 1e-12 && xi <= (tu + td) / tr + 1e-12);
    }

    #[test]
    fn zigzag_spectrum_is_symmetric(n in width(), xi in 0.01f64..3.0) {
        let w = zigzag_spectrum_full(xi, n).unwrap();
        prop_assert_eq!(w.len(), 2 * n);
        for i in 0..w.len() {
            prop_assert!((w[i] + w[w.len() - 1 - i]).abs() < 1e-12);
        }
    }

    #[test]
    fn zigzag_secular_matches_oracle(n in width(), tu in hopping(), td in hopping(), tr in hopping()) {
        let h = SquareHoppings::new(tu, td, 0.0, tr).unwrap();
        let model = RibbonModel::square(ModelKind::SquareZigzag, h, n).unwrap();
        for k in model.k_grid(64) {
            let r = ZigzagReduced::new(&h, k, 1.0, n).unwrap();
            if r.is_degenerate() {
                continue;
            }
            let oracle = eigensolve_dense(&model.bloch(k)).unwrap().energies;
            for e in &oracle {
                prop_assert!(zigzag_secular_residual_normalized(e / tr, r.xi_abs(), n).unwrap().abs() < 1e-8);
            }
            let analytic = square_ribbon::analytic_energies(&model, k).unwrap().unwrap();
            prop_assert_eq!(analytic.len(), oracle.len());
        }
    }

    #[test]
    fn edge_branch_lies_on_the_secular_curve(n in width(), u in 1e-3f64..5.0) {
        let b = zigzag_edge_branch(u, n).unwrap();
        let x = (b.omega * b.omega - b.xi_abs * b.xi_abs - 1.0) / (2.0 * b.xi_abs);
        prop_assert!((x + u.cosh()).abs() < 1e-10 * u.cosh());
        prop_assert!(zigzag_secular_residual_normalized(b.omega, b.xi_abs, n).unwrap().abs() < 1e-9);
    }

    #[test]
    fn flat_band_limit_is_monotone(n in width(), u in 0.01f64..20.0) {
        let (a, b) = (zigzag_edge_branch(u, n).unwrap(), zigzag_edge_branch(1.01 * u, n).unwrap());
        prop_assert!(b.omega < a.omega);
        prop_assert!(zigzag_edge_branch(40.0, n).unwrap().omega < 1e-15);
    }

    #[test]
    fn admissible_zero_modes_are_annihilated(n in width(), tl in hopping(), tr in hopping(), jf in 0.0f64..1.0) {
        let j = 1 + ((n as f64 * jf) as usize).min(n - 1);
        let sum = solve_vertical_sum(&SquareHoppings::new(0.0, 0.0, tl, tr).unwrap(), n, j).unwrap();
        prop_assume!(sum > 0.0);
        let h = SquareHoppings::new(0.3 * sum, 0.7 * sum, tl, tr).unwrap();
        for m in zero_mode_momenta(&h, n, 1.0).unwrap() {
            let bloch = build_square_bloch(&h, n, m.k, 1.0);
            for sub in [Sublattice::Circ, Sublattice::Bullet] {
                let psi = zero_mode_vector(&h, n, m.k, 1.0, m.j, sub).unwrap();
                let residual = bloch.apply(&psi).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                prop_assert!(residual < 1e-9, "k = {}, j = {}, residual {residual}", m.k, m.j);
            }
        }
    }

    #[test]
    fn zeta_identities(t1 in hopping(), t2 in hopping(), t3 in hopping(), k in -3.0f64..3.0) {
        let r = TriangleReduced::new(&TriangleHoppings::new(t1, t2, t3).unwrap(), 5, k, 1.0, TriangleEdge::Linear);
        let z = r.zeta_abs();
        prop_assert!((z * z - (t1 * t1 + t2 * t2 + 2.0 * t1 * t2 * k.cos())).abs() < 1e-12);
        prop_assert!(z >= (t1 - t2).abs() - 1e-12 && z <= t1 + t2 + 1e-12);
    }

    #[test]
    fn triangle_closed_forms_match_oracle(n in width(), t1 in hopping(), t2 in hopping(), t3 in hopping()) {
        let t = TriangleHoppings::new(t1, t2, t3).unwrap();
        for kind in [ModelKind::TriangleLinear, ModelKind::TriangleZigzag1, ModelKind::TriangleZigzag2] {
            let model = RibbonModel::triangle(kind, t, n).unwrap();
            for k in model.k_grid(64) {
                let Some(analytic) = triangle_ribbon::analytic_energies(&model, k).unwrap() else { continue };
                let oracle = eigensolve_dense(&model.bloch(k)).unwrap().energies;
                prop_assert_eq!(analytic.len(), oracle.len());
                for (i, j) in pair_by_energy(&analytic, &oracle) {
                    prop_assert!((analytic[i] - oracle[j]).abs() < 1e-8, "{kind:?} k = {k}");
                }
            }
        }
    }

    #[test]
    fn single_zigzag_solutions_pair_signs(n in width(), t1 in hopping(), t2 in hopping(), t3 in hopping()) {
        let t = TriangleHoppings::new(t1, t2, t3).unwrap();
        for sign in BranchSign::BOTH {
            for s in zz1_edge_solutions(&t, n, 1.0, sign, &default_u_grid(48)).unwrap() {
                let r = TriangleReduced::new(&t, n, s.k, 1.0, TriangleEdge::Zigzag1);
                let want = -sign.value() * sinh_ratio(n as f64 + 1.0, n as f64, s.u);
                prop_assert!((r.c() - want).abs() < 1e-9 * want.abs());
                // Plus lies above the band, where tau < 0.
                prop_assert_eq!(r.tau < 0.0, sign == BranchSign::Plus);
                let x = (s.energy - r.tau) / (2.0 * r.zeta_abs());
                prop_assert!((x - sign.value() * s.u.cosh()).abs() < 1e-10 * s.u.cosh());
            }
        }
    }

    #[test]
    fn two_side_solutions_satisfy_branch_equation(n in 2usize..14, t1 in hopping(), t2 in hopping(), t3 in hopping()) {
        let t = TriangleHoppings::new(t1, t2, t3).unwrap();
        for sign in BranchSign::BOTH {
            for family in [EdgeFamily::A, EdgeFamily::B] {
                for s in zz2_edge_solutions(&t, n, 1.0, sign, family, &default_u_grid(48)).unwrap() {
                    let r = TriangleReduced::new(&t, n, s.k, 1.0, TriangleEdge::Zigzag2);
                    prop_assert!(zz2_branch_residual(n, s.u, sign, r.c()).abs() < 1e-9);
                    let x = (s.energy - r.tau) / (2.0 * r.zeta_abs());
                    prop_assert!((x - sign.value() * s.u.cosh()).abs() < 1e-10 * s.u.cosh());
                }
            }
        }
    }

    #[test]
    fn two_side_profiles_are_mirror_symmetric(n in 2usize..40, u in 0.01f64..4.0) {
        for (family, parity) in [(EdgeFamily::A, 1.0), (EdgeFamily::B, -1.0)] {
            let p = zz2_edge_profile(u, n, BranchSign::Plus, family, 0.0).unwrap();
            for i in 0..n {
                prop_assert!((p[n - 1 - i] - parity * p[i]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn single_zigzag_profile_peaks_at_the_edge(n in 2usize..40, u in 1e-4f64..10.0) {
        for sign in BranchSign::BOTH {
            let p = zz1_edge_profile(u, n, sign, 0.3);
            prop_assert!(p.iter().all(|z| z.norm() <= p[0].norm() * (1.0 + 1e-12)));
        }
    }

    #[test]
    fn ipr_bounds(v in complex_vector(12)) {
        prop_assume!(v.iter().any(|z| z.norm() > 1e-6));
        let p = ipr(&v);
        prop_assert!((1.0 / 12.0 - 1e-12..=1.0 + 1e-12).contains(&p));
        let c = classify_numeric(&v, default_ipr_threshold(12), default_fit_window(12)).unwrap();
        prop_assert_eq!(c.u_estimate.is_some(), c.label.is_edge());
    }

    #[test]
    fn decay_estimate_recovers_u(u in 0.1f64..3.0) {
        let n = 30;
        let psi: Vec<Complex64> = (1..=n)
            .map(|m| Complex64::new(sinh_ratio((n - m + 1) as f64, n as f64, u), 0.0))
            .collect();
        let c = classify_numeric(&psi, default_ipr_threshold(n), default_fit_window(n)).unwrap();
        prop_assert_eq!(c.label, StateLabel::EdgeLeft);
        let est = c.u_estimate.unwrap();
        prop_assert!((est - u).abs() < 0.02 * u, "u = {u}, estimate {est}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// The regime verdict against a 64-point oracle scan. The grid contains
    /// both extremes of `|xi|` (k = 0 and k = -pi/2a).
    #[test]
    fn regime_matches_oracle_scan(tu in 0.01f64..2.0, td in 0.01f64..2.0, tr in 0.2f64..2.0, n in 1usize..9) {
        let h = SquareHoppings::new(tu, td, 0.0, tr).unwrap();
        let verdict = edge_regime(&h, n).unwrap().verdict;
        let model = RibbonModel::square(ModelKind::SquareZigzag, h, n).unwrap();
        let (mut with_edge, mut without_edge) = (0, 0);
        for k in model.k_grid(64) {
            let r = ZigzagReduced::new(&h, k, 1.0, n).unwrap();
            if r.is_degenerate() {
                continue;
            }
            let energies = eigensolve_dense(&model.bloch(k)).unwrap().energies;
            let edge = energies.iter().any(|e| {
                classify_analytic_square((e / tr).abs(), r.xi_abs())
                    .unwrap()
                    .label(StateLabel::EdgeBoth)
                    .is_edge()
            });
            if edge { with_edge += 1 } else { without_edge += 1 }
        }
        match verdict {
            EdgeVerdict::NeverEmerge => prop_assert_eq!(with_edge, 0),
            EdgeVerdict::AlwaysEdge => prop_assert_eq!(without_edge, 0),
            EdgeVerdict::EdgeBulkTransition => prop_assert!(with_edge > 0 && without_edge > 0),
        }
    }
}

#[test]
fn existence_bounds_are_suprema() {
    for n in [2usize, 3, 5, 13, 30] {
        let nf = n as f64;
        let grid = default_u_grid(400);
        let t = TriangleHoppings::new(1.0, 0.5, 1.0).unwrap();
        let zz1 = edge_existence(&t, n, TriangleEdge::Zigzag1).unwrap();
        let ratio = |u: f64| sinh_ratio(nf, nf + 1.0, u);
        assert!(grid.iter().all(|&u| ratio(u) < zz1[0].bound));
        assert!((ratio(1e-7) - zz1[0].bound).abs() < 1e-10);

        let zz2 = edge_existence(&t, n, TriangleEdge::Zigzag2).unwrap();
        let bound = |family| zz2.iter().find(|f| f.family == family).unwrap().bound;
        // Family coefficients (S_N -+ sinh u)/S_{N-1}; their inverses are bounded
        // by the family thresholds.
        let inv_a = |u: f64| 1.0 / (sinh_ratio(nf, nf - 1.0, u) - sinh_ratio(1.0, nf - 1.0, u));
        let inv_b = |u: f64| 1.0 / (sinh_ratio(nf, nf - 1.0, u) + sinh_ratio(1.0, nf - 1.0, u));
        assert!(grid.iter().all(|&u| inv_b(u) < bound(EdgeFamily::B) + 1e-12));
        assert!((inv_b(1e-7) - bound(EdgeFamily::B)).abs() < 1e-10);
        assert!(grid.iter().all(|&u| inv_a(u) < bound(EdgeFamily::A) + 1e-12));
        assert!((inv_a(1e-7) - bound(EdgeFamily::A)).abs() < 1e-6);
    }
}

#[test]
fn linear_profile_at_vanishing_decay() {
    let b = zigzag_edge_branch(1e-6, 30).unwrap();
    let first = b.psi_circ[0].re.abs();
    for (i, z) in b.psi_circ.iter().enumerate() {
        assert!((z.re.abs() / first - (30 - i) as f64 / 30.0).abs() < 1e-4);
    }
}

#[test]
fn analytic_triangle_verdict_needs_nonzero_zeta() {
    assert!(classify_analytic_triangle(0.0, 0.0, 0.0).is_err());
}
