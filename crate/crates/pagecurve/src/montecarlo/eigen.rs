//! Dense Hermitian eigensolver.
//!
//! A cyclic complex Jacobi iteration: each rotation zeroes one off-diagonal
//! pair through a phase factorization followed by a real Givens rotation,
//! and sweeps repeat until the off-diagonal mass is negligible. For the
//! small matrices handled here (reduced states of dimension up to a few
//! hundred) Jacobi is simple, backward-stable, and accurate to a few ulps
//! in every eigenvalue, which the estimator accuracy contract relies on.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum number of full sweeps before reporting non-convergence. Cyclic
/// Jacobi converges quadratically; well-conditioned inputs finish in well
/// under ten sweeps even at dimension 256.
const MAX_SWEEPS: usize = 50;

/// Hermiticity tolerance relative to the largest entry modulus.
const HERMITICITY_TOL: f64 = 1e-12;

/// Off-diagonal Frobenius mass (relative to the matrix Frobenius norm) at
/// which the diagonal is accepted as the spectrum. Weyl's inequality then
/// bounds each eigenvalue error by the same amount, far inside the
/// 1e-10·max-norm accuracy contract.
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Eigenvalues of an `dim`×`dim` complex Hermitian matrix, sorted in
/// descending order.
///
/// `entries` is row-major. The input only needs to be Hermitian to within
/// `1e-12` times its largest entry modulus (roundoff from forming Gram
/// matrices is fine); it is symmetrized exactly before iterating.
///
/// # Errors
///
/// [`Error::Domain`] if `dim` is zero, the entry count is not `dim`², an
/// entry is non-finite, or the matrix is not Hermitian within tolerance.
/// [`Error::EigenNotConverged`] if the sweep budget is exhausted.
///
/// # Examples
///
/// ```
/// use num_complex::Complex64;
/// use pagecurve::montecarlo::eigen::hermitian_eigenvalues;
///
/// let b = Complex64::new(0.3, -0.4);
/// let entries = vec![
///     Complex64::new(2.0, 0.0), b,
///     b.conj(),                 Complex64::new(1.0, 0.0),
/// ];
/// let eig = hermitian_eigenvalues(2, &entries).unwrap();
/// // (a+c)/2 ± sqrt((a-c)^2/4 + |b|^2) with a=2, c=1, |b|=1/2
/// assert!((eig[0] - (1.5 + 0.5 * 2.0f64.sqrt())).abs() < 1e-14);
/// assert!((eig[1] - (1.5 - 0.5 * 2.0f64.sqrt())).abs() < 1e-14);
/// ```
pub fn hermitian_eigenvalues(dim: usize, entries: &[Complex64]) -> Result<Vec<f64>> {
    if dim == 0 {
        return Err(Error::Domain(
            "eigensolver needs a matrix of dimension at least 1".into(),
        ));
    }
    if entries.len() != dim * dim {
        return Err(Error::Domain(format!(
            "a {dim}x{dim} matrix needs {} entries, got {}",
            dim * dim,
            entries.len()
        )));
    }
    let mut max_abs = 0.0f64;
    for z in entries {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        max_abs = max_abs.max(z.norm());
    }
    if max_abs == 0.0 {
        return Ok(vec![0.0; dim]);
    }
    let hermiticity_tol = HERMITICITY_TOL * max_abs;
    for i in 0..dim {
        for j in i..dim {
            let deviation = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
            if deviation > hermiticity_tol {
                return Err(Error::Domain(format!(
                    "matrix is not Hermitian: |A[{i}][{j}] - conj(A[{j}][{i}])| = \
                     {deviation:e} exceeds {hermiticity_tol:e}"
                )));
            }
        }
    }

    // Work on an exactly Hermitian copy so rotations can maintain the
    // conjugate pairs by construction.
    let mut a = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        a[i * dim + i] = Complex64::new(entries[i * dim + i].re, 0.0);
        for j in (i + 1)..dim {
            let upper = 0.5 * (entries[i * dim + j] + entries[j * dim + i].conj());
            a[i * dim + j] = upper;
            a[j * dim + i] = upper.conj();
        }
    }

    let frobenius = a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    let stop = (OFF_DIAGONAL_TOL * frobenius).max(f64::MIN_POSITIVE);

    let mut off = off_diagonal_norm(dim, &a);
    for _sweep in 0..MAX_SWEEPS {
        if off <= stop {
            let mut eigenvalues: Vec<f64> = (0..dim).map(|i| a[i * dim + i].re).collect();
            eigenvalues.sort_by(|x, y| y.total_cmp(x));
            return Ok(eigenvalues);
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                rotate(dim, &mut a, p, q);
            }
        }
        off = off_diagonal_norm(dim, &a);
    }
    Err(Error::EigenNotConverged(format!(
        "Jacobi iteration left off-diagonal norm {off:e} above {stop:e} \
         after {MAX_SWEEPS} sweeps"
    )))
}

/// Frobenius norm of the strictly off-diagonal part.
fn off_diagonal_norm(dim: usize, a: &[Complex64]) -> f64 {
    let mut sum = 0.0;
    for p in 0..dim {
        for q in (p + 1)..dim {
            sum += a[p * dim + q].norm_sqr();
        }
    }
    (2.0 * sum).sqrt()
}

/// One Jacobi rotation zeroing the (p, q) entry.
///
/// The 2×2 block is first made real by the phase `a_pq/|a_pq|`, then a
/// Givens rotation with |angle| ≤ π/4 annihilates it. The combined unitary
/// has columns U[:,p] = (c·phase, −s), U[:,q] = (s·phase, c) on the (p, q)
/// plane.
fn rotate(dim: usize, a: &mut [Complex64], p: usize, q: usize) {
    let apq = a[p * dim + q];
    let b_abs = apq.norm();
    if b_abs == 0.0 {
        return;
    }
    let phase = apq / b_abs;
    let app = a[p * dim + p].re;
    let aqq = a[q * dim + q].re;
    let tau = (aqq - app) / (2.0 * b_abs);
    let t = if tau.is_finite() {
        tau.signum() / (tau.abs() + tau.hypot(1.0))
    } else {
        // |a_pq| is negligible against the diagonal gap; the rotation
        // degenerates to dropping the entry.
        0.0
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    for k in 0..dim {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * dim + p];
        let akq = a[k * dim + q];
        let new_kp = c * phase * akp - s * akq;
        let new_kq = s * phase * akp + c * akq;
        a[k * dim + p] = new_kp;
        a[p * dim + k] = new_kp.conj();
        a[k * dim + q] = new_kq;
        a[q * dim + k] = new_kq.conj();
    }
    let shift = t * b_abs;
    a[p * dim + p] = Complex64::new(app - shift, 0.0);
    a[q * dim + q] = Complex64::new(aqq + shift, 0.0);
    a[p * dim + q] = Complex64::new(0.0, 0.0);
    a[q * dim + p] = Complex64::new(0.0, 0.0);
}

/// Closed-form spectrum of a 3×3 Hermitian matrix via the characteristic
/// polynomial (trigonometric solution of the depressed cubic). Test oracle
/// only — completely independent of the Jacobi iteration.
#[cfg(test)]
pub(crate) fn cubic_hermitian_eigenvalues(entries: &[Complex64]) -> Vec<f64> {
    assert_eq!(entries.len(), 9, "oracle handles 3x3 matrices only");
    let a11 = entries[0].re;
    let a22 = entries[4].re;
    let a33 = entries[8].re;
    let a12 = entries[1];
    let a13 = entries[2];
    let a23 = entries[5];

    let off_sq = a12.norm_sqr() + a13.norm_sqr() + a23.norm_sqr();
    let mean = (a11 + a22 + a33) / 3.0;
    if off_sq == 0.0 {
        let mut eig = vec![a11, a22, a33];
        eig.sort_by(|x, y| y.total_cmp(x));
        return eig;
    }
    let spread = (a11 - mean).powi(2) + (a22 - mean).powi(2) + (a33 - mean).powi(2) + 2.0 * off_sq;
    let p = (spread / 6.0).sqrt();
    // B = (A − mean·I)/p; r = det(B)/2, with the Hermitian determinant
    // det = b11 b22 b33 + 2 Re(b12 b23 conj(b13))
    //       − b11|b23|² − b22|b13|² − b33|b12|².
    let b11 = (a11 - mean) / p;
    let b22 = (a22 - mean) / p;
    let b33 = (a33 - mean) / p;
    let b12 = a12 / p;
    let b13 = a13 / p;
    let b23 = a23 / p;
    let det = b11 * b22 * b33 + 2.0 * (b12 * b23 * b13.conj()).re
        - b11 * b23.norm_sqr()
        - b22 * b13.norm_sqr()
        - b33 * b12.norm_sqr();
    let r = (det / 2.0).clamp(-1.0, 1.0);
    let angle = r.acos() / 3.0;
    let lam1 = mean + 2.0 * p * angle.cos();
    let lam3 = mean + 2.0 * p * (angle + 2.0 * std::f64::consts::PI / 3.0).cos();
    let lam2 = 3.0 * mean - lam1 - lam3;
    let mut eig = vec![lam1, lam2, lam3];
    eig.sort_by(|x, y| y.total_cmp(x));
    eig
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_spectrum_is_all_ones() {
        let dim = 3;
        let mut entries = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c(1.0, 0.0);
        }
        let eig = hermitian_eigenvalues(dim, &entries).unwrap();
        assert_eq!(eig, vec![1.0; dim]);
    }

    #[test]
    fn diagonal_matrix_returns_sorted_diagonal() {
        let entries = vec![c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let eig = hermitian_eigenvalues(2, &entries).unwrap();
        assert_eq!(eig, vec![3.0, 1.0]);
    }

    #[test]
    fn one_by_one_matrix_is_its_entry() {
        let eig = hermitian_eigenvalues(1, &[c(-2.5, 0.0)]).unwrap();
        assert_eq!(eig, vec![-2.5]);
    }

    #[test]
    fn zero_matrix_has_zero_spectrum() {
        let eig = hermitian_eigenvalues(2, &[c(0.0, 0.0); 4]).unwrap();
        assert_eq!(eig, vec![0.0, 0.0]);
    }

    #[test]
    fn two_by_two_matches_closed_form() {
        // eig = (a+c)/2 ± sqrt((a−c)²/4 + |b|²) for [[a, b], [conj(b), c]].
        let cases = [
            (1.3, -0.4, c(0.7, -0.2)),
            (2.0, 2.0, c(0.0, 1.0)),
            (-1.0, 4.0, c(0.3, 0.0)),
            (5.0, -3.0, c(1e-3, 2e-3)),
        ];
        for (a, d, b) in cases {
            let entries = vec![c(a, 0.0), b, b.conj(), c(d, 0.0)];
            let eig = hermitian_eigenvalues(2, &entries).unwrap();
            let radius = ((a - d).powi(2) / 4.0 + b.norm_sqr()).sqrt();
            let hi = (a + d) / 2.0 + radius;
            let lo = (a + d) / 2.0 - radius;
            assert!(
                (eig[0] - hi).abs() <= 1e-13 * hi.abs().max(1.0),
                "high eigenvalue {} vs closed form {hi}",
                eig[0]
            );
            assert!(
                (eig[1] - lo).abs() <= 1e-13 * lo.abs().max(1.0),
                "low eigenvalue {} vs closed form {lo}",
                eig[1]
            );
        }
    }

    #[test]
    fn three_by_three_matches_characteristic_polynomial() {
        let entries = vec![
            c(2.0, 0.0),
            c(0.5, 0.3),
            c(-0.2, 0.7),
            c(0.5, -0.3),
            c(-1.0, 0.0),
            c(0.1, -0.4),
            c(-0.2, -0.7),
            c(0.1, 0.4),
            c(0.6, 0.0),
        ];
        let eig = hermitian_eigenvalues(3, &entries).unwrap();
        let oracle = cubic_hermitian_eigenvalues(&entries);
        for (got, want) in eig.iter().zip(&oracle) {
            assert!(
                (got - want).abs() <= 1e-10,
                "Jacobi {got} vs characteristic polynomial {want}"
            );
        }
    }

    #[test]
    fn rank_one_projector_spectrum() {
        // P = v v† for a unit vector v has spectrum (1, 0, 0, 0).
        let v = [c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)];
        let mut entries = vec![c(0.0, 0.0); 16];
        for i in 0..4 {
            for j in 0..4 {
                entries[i * 4 + j] = v[i] * v[j].conj();
            }
        }
        let eig = hermitian_eigenvalues(4, &entries).unwrap();
        assert!((eig[0] - 1.0).abs() <= 1e-14);
        for &lam in &eig[1..] {
            assert!(lam.abs() <= 1e-14, "spurious eigenvalue {lam}");
        }
    }

    #[test]
    fn gram_matrix_spectrum_satisfies_trace_identities() {
        // A = B B† is positive semidefinite with tr A = Σλ and ‖A‖_F² = Σλ².
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let dim = 24;
        let cols = 48;
        let b: Vec<Complex64> = (0..dim * cols)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mut a = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut dot = c(0.0, 0.0);
                for k in 0..cols {
                    dot += b[i * cols + k] * b[j * cols + k].conj();
                }
                a[i * dim + j] = dot;
            }
        }
        let eig = hermitian_eigenvalues(dim, &a).unwrap();
        let trace: f64 = (0..dim).map(|i| a[i * dim + i].re).sum();
        let frob_sq: f64 = a.iter().map(Complex64::norm_sqr).sum();
        let sum: f64 = eig.iter().sum();
        let sum_sq: f64 = eig.iter().map(|l| l * l).sum();
        assert!((sum - trace).abs() <= 1e-12 * trace.abs());
        assert!((sum_sq - frob_sq).abs() <= 1e-12 * frob_sq);
        assert!(eig.iter().all(|&l| l >= -1e-12 * trace));
        assert!(
            eig.windows(2).all(|w| w[0] >= w[1]),
            "not sorted descending"
        );
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let entries = vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let err = hermitian_eigenvalues(2, &entries).unwrap_err();
        assert!(matches!(err, Error::Domain(_)), "got {err:?}");
    }

    #[test]
    fn complex_diagonal_is_rejected() {
        let entries = vec![c(1.0, 0.5), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let err = hermitian_eigenvalues(2, &entries).unwrap_err();
        assert!(matches!(err, Error::Domain(_)), "got {err:?}");
    }

    #[test]
    fn shape_and_finiteness_are_validated() {
        assert!(matches!(
            hermitian_eigenvalues(0, &[]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hermitian_eigenvalues(2, &[c(1.0, 0.0)]),
            Err(Error::Domain(_))
        ));
        let entries = vec![c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(
            hermitian_eigenvalues(2, &entries),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn cubic_oracle_reproduces_diagonal_case() {
        let mut entries = vec![c(0.0, 0.0); 9];
        entries[0] = c(0.7, 0.0);
        entries[4] = c(0.2, 0.0);
        entries[8] = c(0.1, 0.0);
        let eig = cubic_hermitian_eigenvalues(&entries);
        assert!((eig[0] - 0.7).abs() <= 1e-15);
        assert!((eig[1] - 0.2).abs() <= 1e-15);
        assert!((eig[2] - 0.1).abs() <= 1e-15);
    }
}
