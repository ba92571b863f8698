//! Cyclic Jacobi diagonalization of dense complex Hermitian matrices.
//!
//! Each step removes the `(p, q)` off-diagonal entry with the unitary
//! `J = diag(1, e^{-i phi}) R(theta)`, where the phase turns the pivot real
//! and `R` is the usual real Jacobi rotation. The matrices here are small
//! (at most a few hundred rows) and Jacobi gives eigenvectors that are
//! orthonormal to working precision.

use ndarray::Array2;
use num_complex::Complex64;

const MAX_SWEEPS: usize = 100;

/// Returns `(eigenvalues, eigenvectors)` with eigenvectors stored as columns.
/// Eigenvalues are not sorted.
pub(crate) fn jacobi_hermitian(matrix: &Array2<Complex64>) -> (Vec<f64>, Array2<Complex64>) {
    let n = matrix.nrows();
    let mut a = matrix.clone();
    let mut v = Array2::<Complex64>::eye(n);
    for i in 0..n {
        a[[i, i]] = Complex64::new(a[[i, i]].re, 0.0);
    }

    let total: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let threshold = (f64::EPSILON * f64::EPSILON) * total.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[[i, j]].norm_sqr())
            .sum();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a[[p, p]].re;
                let aqq = a[[q, q]].re;
                // Skip entries that are already negligible against both
                // diagonal entries.
                if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
                    a[[p, q]] = Complex64::new(0.0, 0.0);
                    a[[q, p]] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let phase = apq / g;
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;

                for k in 0..n {
                    let akp = a[[k, p]];
                    let akq = a[[k, q]];
                    a[[k, p]] = akp * jpp + akq * jqp;
                    a[[k, q]] = akp * jpq + akq * jqq;
                }
                for k in 0..n {
                    let apk = a[[p, k]];
                    let aqk = a[[q, k]];
                    a[[p, k]] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[[q, k]] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[[p, q]] = Complex64::new(0.0, 0.0);
                a[[q, p]] = Complex64::new(0.0, 0.0);
                a[[p, p]] = Complex64::new(a[[p, p]].re, 0.0);
                a[[q, q]] = Complex64::new(a[[q, q]].re, 0.0);

                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = vkp * jpp + vkq * jqp;
                    v[[k, q]] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[[i, i]].re).collect();
    (values, v)
}
