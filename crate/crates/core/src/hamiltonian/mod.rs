//! Bloch Hamiltonians of the ribbon models and the dense reference solver.
//!
//! Square ribbons are periodic with period `2a` along the ribbon and carry two
//! sublattices, so `H(k)` is `2N x 2N` in the basis `(psi_circ, psi_bullet)`:
//!
//! ```text
//! H = [[0, T], [T^dag, 0]],   T = t_u + t_d e^{2ika} + t_r beta^dag + t_l e^{2ika} beta
//! ```
//!
//! Triangular ribbons have period `a` and one site per chain:
//!
//! ```text
//! H = 2 t_3 cos(ka) + zeta^* beta + zeta beta^dag,   zeta = t_1 + t_2 e^{-ika}
//! ```
//!
//! with `beta` the `N x N` matrix of ones on the first superdiagonal. Both are
//! periodic in `k`; builders accept any real `k`.

mod eigen;

use crate::error::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Hopping amplitudes of the anisotropic square ribbon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquareHoppings {
    pub tu: f64,
    pub td: f64,
    pub tl: f64,
    pub tr: f64,
}

impl SquareHoppings {
    pub fn new(tu: f64, td: f64, tl: f64, tr: f64) -> Result<Self> {
        let h = SquareHoppings { tu, td, tl, tr };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, t) in [("tu", self.tu), ("td", self.td), ("tl", self.tl), ("tr", self.tr)] {
            if !(t >= 0.0) || !t.is_finite() {
                return Err(Error::Config(format!("{name} = {t} must be a finite amplitude >= 0")));
            }
        }
        if self.tu == 0.0 && self.td == 0.0 && self.tr == 0.0 {
            return Err(Error::Config("at least one of tu, td, tr must be positive".into()));
        }
        Ok(())
    }
}

/// Hopping amplitudes of the anisotropic triangular ribbon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleHoppings {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl TriangleHoppings {
    /// Accepts zero amplitudes; see [`TriangleHoppings::require_positive`].
    pub fn new(t1: f64, t2: f64, t3: f64) -> Result<Self> {
        for (name, t) in [("t1", t1), ("t2", t2), ("t3", t3)] {
            if !(t >= 0.0) || !t.is_finite() {
                return Err(Error::Config(format!("{name} = {t} must be a finite amplitude >= 0")));
            }
        }
        Ok(TriangleHoppings { t1, t2, t3 })
    }

    /// Edge-state criteria assume strictly positive amplitudes.
    pub fn require_positive(&self) -> Result<()> {
        if self.t1 > 0.0 && self.t2 > 0.0 && self.t3 > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "edge criteria need t1, t2, t3 > 0 (got {}, {}, {})",
                self.t1, self.t2, self.t3
            )))
        }
    }
}

/// Boundary termination of a triangular ribbon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriangleEdge {
    Linear,
    Zigzag1,
    Zigzag2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    SquareGeneral,
    /// `t_l = 0`: topologically a zigzag honeycomb ribbon.
    SquareZigzag,
    /// `t_l = t_r`.
    SquareLrIsotropic,
    TriangleLinear,
    TriangleZigzag1,
    TriangleZigzag2,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::SquareGeneral,
        ModelKind::SquareZigzag,
        ModelKind::SquareLrIsotropic,
        ModelKind::TriangleLinear,
        ModelKind::TriangleZigzag1,
        ModelKind::TriangleZigzag2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::SquareGeneral => "square-general",
            ModelKind::SquareZigzag => "square-zigzag",
            ModelKind::SquareLrIsotropic => "square-lr",
            ModelKind::TriangleLinear => "triangle-linear",
            ModelKind::TriangleZigzag1 => "triangle-zigzag1",
            ModelKind::TriangleZigzag2 => "triangle-zigzag2",
        }
    }

    pub fn parse(name: &str) -> Option<ModelKind> {
        ModelKind::ALL.into_iter().find(|m| m.name() == name)
    }

    pub fn is_square(self) -> bool {
        matches!(
            self,
            ModelKind::SquareGeneral | ModelKind::SquareZigzag | ModelKind::SquareLrIsotropic
        )
    }

    pub fn triangle_edge(self) -> Option<TriangleEdge> {
        match self {
            ModelKind::TriangleLinear => Some(TriangleEdge::Linear),
            ModelKind::TriangleZigzag1 => Some(TriangleEdge::Zigzag1),
            ModelKind::TriangleZigzag2 => Some(TriangleEdge::Zigzag2),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Hoppings {
    Square(SquareHoppings),
    Triangle(TriangleHoppings),
}

/// A ribbon of `width` chains with lattice constant `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RibbonModel {
    pub kind: ModelKind,
    pub hoppings: Hoppings,
    pub width: usize,
    pub a: f64,
}

impl RibbonModel {
    pub fn new(kind: ModelKind, hoppings: Hoppings, width: usize, a: f64) -> Result<Self> {
        if width == 0 {
            return Err(Error::Config("ribbon width N must be >= 1".into()));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Config(format!("lattice constant a = {a} must be > 0")));
        }
        match (kind.is_square(), &hoppings) {
            (true, Hoppings::Square(h)) => {
                h.validate()?;
                if kind == ModelKind::SquareZigzag && h.tl != 0.0 {
                    return Err(Error::Config(format!(
                        "square-zigzag requires tl = 0 (got {})",
                        h.tl
                    )));
                }
                if kind == ModelKind::SquareLrIsotropic && h.tl != h.tr {
                    return Err(Error::Config(format!(
                        "square-lr requires tl = tr (got tl = {}, tr = {})",
                        h.tl, h.tr
                    )));
                }
            }
            (false, Hoppings::Triangle(h)) => {
                TriangleHoppings::new(h.t1, h.t2, h.t3)?;
            }
            _ => {
                return Err(Error::Config(format!(
                    "hopping set does not match model {}",
                    kind.name()
                )))
            }
        }
        Ok(RibbonModel {
            kind,
            hoppings,
            width,
            a,
        })
    }

    pub fn square(kind: ModelKind, h: SquareHoppings, width: usize) -> Result<Self> {
        Self::new(kind, Hoppings::Square(h), width, 1.0)
    }

    pub fn triangle(kind: ModelKind, h: TriangleHoppings, width: usize) -> Result<Self> {
        Self::new(kind, Hoppings::Triangle(h), width, 1.0)
    }

    /// `pi/(2a)` for square ribbons (period `2a`), `pi/a` for triangular ones.
    pub fn zone_half_width(&self) -> f64 {
        if self.kind.is_square() {
            PI / (2.0 * self.a)
        } else {
            PI / self.a
        }
    }

    /// `points` momenta spanning one zone on the half-open interval
    /// `[-K, K)`.
    pub fn k_grid(&self, points: usize) -> Vec<f64> {
        let half = self.zone_half_width();
        (0..points)
            .map(|i| -half + 2.0 * half * i as f64 / points as f64)
            .collect()
    }

    pub fn bloch(&self, k: f64) -> BlochMatrix {
        match (&self.hoppings, self.kind.triangle_edge()) {
            (Hoppings::Square(h), _) => build_square_bloch(h, self.width, k, self.a),
            (Hoppings::Triangle(h), Some(edge)) => {
                build_triangle_bloch(h, self.width, k, self.a, edge)
            }
            (Hoppings::Triangle(h), None) => {
                build_triangle_bloch(h, self.width, k, self.a, TriangleEdge::Linear)
            }
        }
    }

    pub fn square_hoppings(&self) -> Option<&SquareHoppings> {
        match &self.hoppings {
            Hoppings::Square(h) => Some(h),
            Hoppings::Triangle(_) => None,
        }
    }

    pub fn triangle_hoppings(&self) -> Option<&TriangleHoppings> {
        match &self.hoppings {
            Hoppings::Triangle(h) => Some(h),
            Hoppings::Square(_) => None,
        }
    }
}

/// Dense Hermitian `H(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochMatrix {
    pub k: f64,
    pub entries: Array2<Complex64>,
}

impl BlochMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Largest `|H_ij - conj(H_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.entries[[i, j]] - self.entries[[j, i]].conj()).norm());
            }
        }
        worst
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[[i, j]] * v[j]).sum())
            .collect()
    }
}

/// `N x N` matrix with ones on the first superdiagonal.
pub fn build_beta(n: usize) -> Result<Array2<f64>> {
    if n == 0 {
        return Err(Error::Domain("beta needs N >= 1".into()));
    }
    let mut beta = Array2::zeros((n, n));
    for i in 0..n - 1 {
        beta[[i, i + 1]] = 1.0;
    }
    Ok(beta)
}

/// Square-ribbon `H(k)` in the basis `(psi_circ, psi_bullet)`. The boundary
/// truncation of the `t_r` and `t_l` hops is carried by the shape of `beta`.
pub fn build_square_bloch(h: &SquareHoppings, n: usize, k: f64, a: f64) -> BlochMatrix {
    let phase2 = Complex64::from_polar(1.0, 2.0 * k * a);
    let onsite = Complex64::new(h.tu, 0.0) + phase2 * h.td;
    // T = onsite + t_r beta^dag + t_l e^{2ika} beta
    let mut t = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        t[[i, i]] = onsite;
        if i + 1 < n {
            t[[i + 1, i]] += Complex64::new(h.tr, 0.0);
            t[[i, i + 1]] += phase2 * h.tl;
        }
    }
    let mut m = Array2::<Complex64>::zeros((2 * n, 2 * n));
    for i in 0..n {
        for j in 0..n {
            m[[i, n + j]] = t[[i, j]];
            m[[n + j, i]] = t[[i, j]].conj();
        }
    }
    BlochMatrix { k, entries: m }
}

/// Triangular-ribbon `H(k)`: diagonal `2 t_3 cos(ka)` (zero on the truncated
/// zigzag rows), `zeta^*` on the superdiagonal and `zeta` on the subdiagonal
/// with `zeta = t_1 + t_2 e^{-ika}`. For `N = 1` with two-side zigzag edges
/// the single row is truncated once.
pub fn build_triangle_bloch(
    h: &TriangleHoppings,
    n: usize,
    k: f64,
    a: f64,
    edge: TriangleEdge,
) -> BlochMatrix {
    let tau = 2.0 * h.t3 * (k * a).cos();
    let zeta = Complex64::new(h.t1, 0.0) + Complex64::from_polar(h.t2, -k * a);
    let mut m = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        m[[i, i]] = Complex64::new(tau, 0.0);
        if i + 1 < n {
            m[[i, i + 1]] = zeta.conj();
            m[[i + 1, i]] = zeta;
        }
    }
    match edge {
        TriangleEdge::Linear => {}
        TriangleEdge::Zigzag1 => m[[0, 0]] = Complex64::new(0.0, 0.0),
        TriangleEdge::Zigzag2 => {
            m[[0, 0]] = Complex64::new(0.0, 0.0);
            m[[n - 1, n - 1]] = Complex64::new(0.0, 0.0);
        }
    }
    BlochMatrix { k, entries: m }
}

/// Eigenpairs of a [`BlochMatrix`], sorted by energy.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub k: f64,
    pub energies: Vec<f64>,
    /// `vectors[i]` belongs to `energies[i]`; unit norm, largest-magnitude
    /// component real and positive.
    pub vectors: Vec<Vec<Complex64>>,
}

/// Energies closer than this are treated as one degenerate level.
pub const DEGENERACY_TOL: f64 = 1e-9;

impl Spectrum {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    /// Weight of `psi` inside the eigenspace of all levels within
    /// [`DEGENERACY_TOL`] of `energy`, i.e. `<psi|P|psi>/<psi|psi>`.
    pub fn projector_overlap(&self, energy: f64, psi: &[Complex64]) -> f64 {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        self.energies
            .iter()
            .zip(&self.vectors)
            .filter(|(e, _)| (**e - energy).abs() < DEGENERACY_TOL)
            .map(|(_, v)| inner(v, psi).norm_sqr())
            .sum::<f64>()
            / norm
    }

    /// Largest `|H v - E v|` over all stored pairs.
    pub fn max_residual(&self, h: &BlochMatrix) -> f64 {
        self.energies
            .iter()
            .zip(&self.vectors)
            .map(|(&e, v)| {
                h.apply(v)
                    .iter()
                    .zip(v)
                    .map(|(hv, vi)| (hv - vi * e).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Largest deviation of the Gram matrix of `vectors` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((inner(a, b) - target).norm());
            }
        }
        worst
    }
}

/// `<a|b>`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Rotates `v` so that its largest-magnitude component is real and positive.
/// Ties (within a relative `1e-9`) go to the lowest index.
pub fn fix_phase(v: &mut [Complex64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = v
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-9))
        .expect("max is attained");
    let rot = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z *= rot;
    }
    v[pivot] = Complex64::new(v[pivot].norm(), 0.0);
}

/// Normalizes `v` to unit length and applies [`fix_phase`].
pub fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
    fix_phase(v);
}

/// Full spectrum of `h` by cyclic Jacobi rotations.
pub fn eigensolve_dense(h: &BlochMatrix) -> Result<Spectrum> {
    let defect = h.hermiticity_defect();
    if defect > 1e-13 {
        return Err(Error::Integrity(format!(
            "matrix is not Hermitian (defect {defect:e})"
        )));
    }
    let (values, vectors) = eigen::jacobi_hermitian(&h.entries);
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let energies = order.iter().map(|&i| values[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| {
            let mut v: Vec<Complex64> = vectors.column(i).to_vec();
            normalize(&mut v);
            v
        })
        .collect();
    Ok(Spectrum {
        k: h.k,
        energies,
        vectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zigzag(tu: f64, td: f64, tr: f64) -> SquareHoppings {
        SquareHoppings::new(tu, td, 0.0, tr).unwrap()
    }

    #[test]
    fn beta_shapes() {
        assert_eq!(build_beta(1).unwrap(), Array2::<f64>::zeros((1, 1)));
        let b2 = build_beta(2).unwrap();
        assert_eq!(b2, ndarray::array![[0.0, 1.0], [0.0, 0.0]]);
        assert!(build_beta(0).is_err());
    }

    #[test]
    fn beta_plus_dagger_spectrum() {
        for n in [3usize, 5] {
            let b = build_beta(n).unwrap();
            let sym = &b + &b.t();
            let h = BlochMatrix {
                k: 0.0,
                entries: sym.mapv(|x| Complex64::new(x, 0.0)),
            };
            let s = eigensolve_dense(&h).unwrap();
            let mut expected: Vec<f64> = (1..=n)
                .map(|j| 2.0 * (PI * j as f64 / (n + 1) as f64).cos())
                .collect();
            expected.sort_by(f64::total_cmp);
            for (e, x) in s.energies.iter().zip(&expected) {
                assert!((e - x).abs() < 1e-12, "{e} vs {x}");
            }
        }
    }

    #[test]
    fn single_dimer() {
        let h = SquareHoppings::new(1.0, 0.0, 0.0, 0.0).unwrap();
        for k in [0.0, 0.4, -1.2] {
            let s = eigensolve_dense(&build_square_bloch(&h, 1, k, 1.0)).unwrap();
            assert!((s.energies[0] + 1.0).abs() < 1e-14);
            assert!((s.energies[1] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn pauli_x() {
        let m = ndarray::array![[0.0, 1.0], [1.0, 0.0]].mapv(|x| Complex64::new(x, 0.0));
        let s = eigensolve_dense(&BlochMatrix { k: 0.0, entries: m }).unwrap();
        assert!((s.energies[0] + 1.0).abs() < 1e-15 && (s.energies[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hermitian_by_construction() {
        let h = SquareHoppings::new(0.7, 1.3, 0.4, 0.9).unwrap();
        let m = build_square_bloch(&h, 6, 0.37, 1.0);
        assert_eq!(m.hermiticity_defect(), 0.0);
        let t = TriangleHoppings::new(0.9, 0.1, 1.0).unwrap();
        for edge in [TriangleEdge::Linear, TriangleEdge::Zigzag1, TriangleEdge::Zigzag2] {
            assert_eq!(build_triangle_bloch(&t, 5, 1.1, 1.0, edge).hermiticity_defect(), 0.0);
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = build_square_bloch(&zigzag(1.0, 1.0, 1.0), 2, 0.0, 1.0);
        m.entries[[0, 2]] += Complex64::new(1e-6, 0.0);
        assert!(matches!(eigensolve_dense(&m), Err(Error::Integrity(_))));
    }

    #[test]
    fn chiral_pairing_and_invariants() {
        let h = zigzag(1.0, 1.0, 1.0);
        let m = build_square_bloch(&h, 5, 0.3, 1.0);
        let s = eigensolve_dense(&m).unwrap();
        assert_eq!(s.len(), 10);
        for i in 0..10 {
            assert!((s.energies[i] + s.energies[9 - i]).abs() < 1e-10);
        }
        assert!(s.max_residual(&m) < 1e-10);
        assert!(s.orthonormality_defect() < 1e-10);
    }

    #[test]
    fn triangle_small_cases() {
        let t = TriangleHoppings::new(1.0, 1.0, 1.0).unwrap();
        let s = eigensolve_dense(&build_triangle_bloch(&t, 1, 0.0, 1.0, TriangleEdge::Linear)).unwrap();
        assert!((s.energies[0] - 2.0).abs() < 1e-15);
        let s = eigensolve_dense(&build_triangle_bloch(&t, 1, 0.0, 1.0, TriangleEdge::Zigzag1)).unwrap();
        assert_eq!(s.energies[0], 0.0);
        let s = eigensolve_dense(&build_triangle_bloch(&t, 2, 0.0, 1.0, TriangleEdge::Linear)).unwrap();
        assert!(s.energies[0].abs() < 1e-14 && (s.energies[1] - 4.0).abs() < 1e-14);
    }

    #[test]
    fn phase_convention() {
        let mut v = vec![
            Complex64::new(0.1, 0.2),
            Complex64::new(0.0, -0.9),
            Complex64::new(0.3, 0.0),
        ];
        normalize(&mut v);
        assert!(v[1].im == 0.0 && v[1].re > 0.0);
        let mut tie = vec![Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0)];
        fix_phase(&mut tie);
        assert_eq!(tie[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn model_validation() {
        let h = SquareHoppings::new(1.0, 1.0, 0.5, 1.0).unwrap();
        assert!(RibbonModel::square(ModelKind::SquareZigzag, h, 5).is_err());
        assert!(RibbonModel::square(ModelKind::SquareLrIsotropic, h, 5).is_err());
        assert!(RibbonModel::square(ModelKind::SquareGeneral, h, 5).is_ok());
        assert!(RibbonModel::square(ModelKind::SquareGeneral, h, 0).is_err());
        assert!(SquareHoppings::new(1.0, 1.0, 0.0, -1.0).is_err());
        assert!(SquareHoppings::new(0.0, 0.0, 1.0, 0.0).is_err());
        let t = TriangleHoppings::new(1.0, 0.0, 1.0).unwrap();
        assert!(t.require_positive().is_err());
        assert!(RibbonModel::triangle(ModelKind::SquareGeneral, t, 3).is_err());
        let m = RibbonModel::triangle(ModelKind::TriangleLinear, t, 3).unwrap();
        assert!((m.zone_half_width() - PI).abs() < 1e-15);
        let g = m.k_grid(4);
        assert_eq!(g.len(), 4);
        assert!((g[0] + PI).abs() < 1e-15 && (g[2]).abs() < 1e-15);
    }
}
