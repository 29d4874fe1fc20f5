//! Haar-random bipartite pure states and Monte-Carlo entropy estimators.
//!
//! A pure state of an m×n bipartite system is drawn by filling an m×n
//! coefficient matrix with independent standard complex Gaussians and
//! normalizing: the Gaussian measure is invariant under left and right
//! unitary rotations, so the normalized matrix is distributed by the unique
//! unitarily invariant (Haar) measure on pure states. The reduced state of
//! the m-dimensional side is the m×m Gram matrix of the coefficients, whose
//! eigenvalues feed the empirical moment and entropy estimators.
//!
//! These estimators are the independent check on every closed-form result
//! in the crate: they know nothing about gamma functions, only about
//! matrices and eigenvalues.
//!
//! Reproducibility: sample i of a run keyed by `seed` draws from a
//! counter-based RNG stream derived from `(seed, i)`, and the reduction to
//! mean and standard error is a sequential compensated sum over samples in
//! index order. Estimates are therefore bitwise identical no matter how
//! many worker threads participate.

pub mod eigen;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::specfun::KahanSum;

/// Magnitude below zero an eigenvalue may reach before it is treated as an
/// eigensolver failure instead of roundoff; anything in `[-CLAMP, 0)` is
/// clamped to zero.
pub const EIGENVALUE_CLAMP: f64 = 1e-12;

/// Tolerance on |Σλ − 1| for a reduced spectrum.
const SPECTRUM_SUM_TOL: f64 = 1e-10;

/// Tolerance on |Σ|entry|² − 1| for a state accepted as normalized.
const UNIT_NORM_TOL: f64 = 1e-12;

/// Floor applied to eigenvalues entering p^α for α < 1, so the subsequent
/// logarithm of the moment sum stays finite even for defective spectra.
const POWER_FLOOR: f64 = 1e-300;

/// Largest m·n accepted by the sampling entry points (2³¹ amplitudes is
/// already ~64 GiB of samples per worker — far beyond sensible use).
const MAX_STATE_AMPLITUDES: u64 = 1 << 31;

// ---------------------------------------------------------------------------
// domain types
// ---------------------------------------------------------------------------

/// Coefficient matrix of a normalized pure state on an m×n bipartite
/// system, row-major with the m-dimensional (subsystem) index first.
#[derive(Debug, Clone, PartialEq)]
pub struct StateMatrix {
    m: usize,
    n: usize,
    entries: Vec<Complex64>,
}

impl StateMatrix {
    /// Wraps entries that are already normalized.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if the shape is empty, the entry count is not
    /// m·n, an entry is non-finite, or |Σ|z|² − 1| > 1e-12.
    pub fn from_entries(m: usize, n: usize, entries: Vec<Complex64>) -> Result<Self> {
        let state = Self::validate_shape(m, n, entries)?;
        let deviation = (state.squared_norm() - 1.0).abs();
        if deviation > UNIT_NORM_TOL {
            return Err(Error::Domain(format!(
                "state is not normalized: |Σ|entry|² − 1| = {deviation:e}"
            )));
        }
        Ok(state)
    }

    /// Normalizes arbitrary entries to a unit-norm state.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] on shape/finiteness problems or when the entries
    /// are all zero (no direction to normalize).
    pub fn from_unnormalized(m: usize, n: usize, entries: Vec<Complex64>) -> Result<Self> {
        let mut state = Self::validate_shape(m, n, entries)?;
        let norm = state.squared_norm().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Domain(format!(
                "cannot normalize a state of norm {norm}"
            )));
        }
        for z in &mut state.entries {
            *z /= norm;
        }
        Ok(state)
    }

    fn validate_shape(m: usize, n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Domain(
                "state dimensions must both be at least 1".into(),
            ));
        }
        if entries.len() != m * n {
            return Err(Error::Domain(format!(
                "an {m}x{n} state needs {} amplitudes, got {}",
                m * n,
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Domain("state amplitudes must be finite".into()));
        }
        Ok(Self { m, n, entries })
    }

    /// Subsystem dimension (row count).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Environment dimension (column count).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major amplitudes.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Amplitude at subsystem index `i`, environment index `k`.
    pub fn entry(&self, i: usize, k: usize) -> Complex64 {
        self.entries[i * self.n + k]
    }

    /// Σ|entry|², compensated.
    pub fn squared_norm(&self) -> f64 {
        let mut acc = KahanSum::default();
        for z in &self.entries {
            acc.add(z.norm_sqr());
        }
        acc.value()
    }
}

/// Eigenvalues of a reduced state: nonnegative, sorted descending, summing
/// to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSample {
    eigenvalues: Vec<f64>,
}

impl SpectralSample {
    /// The spectrum, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}

/// A Monte-Carlo estimate with its sampling provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    /// Sample mean of the statistic.
    pub mean: f64,
    /// Standard error of the mean: √(sample variance / samples).
    pub std_error: f64,
    /// Number of independent draws.
    pub samples: u64,
    /// Base seed of the run.
    pub seed: u64,
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

/// The RNG stream for one sample: ChaCha8 keyed by the run seed, with the
/// sample index as the stream counter. Streams are statistically
/// independent and reproducible in isolation, which is what makes the
/// estimators order- and thread-count-insensitive.
pub fn sample_stream(seed: u64, sample_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample_index);
    rng
}

/// One Haar-random pure state on an m×n bipartite system.
///
/// Draws 2·m·n independent standard normals (real and imaginary parts, row
/// major) and normalizes.
///
/// # Panics
///
/// If `m` or `n` is zero. (The estimator entry points validate dimensions
/// and report domain errors instead.)
pub fn sample_haar_state<R: rand::Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> StateMatrix {
    assert!(m >= 1 && n >= 1, "state dimensions must be at least 1");
    let entries: Vec<Complex64> = (0..m * n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    StateMatrix::from_unnormalized(m, n, entries)
        .expect("Gaussian amplitudes are finite and almost surely nonzero")
}

/// The m×m Gram matrix M·M† of the coefficient matrix — the reduced
/// density matrix of the subsystem. Built exactly Hermitian (upper
/// triangle computed, lower mirrored, diagonal real).
pub(crate) fn gram_matrix(state: &StateMatrix) -> Vec<Complex64> {
    let m = state.m;
    let n = state.n;
    let rows = &state.entries;
    let mut gram = vec![Complex64::new(0.0, 0.0); m * m];
    for i in 0..m {
        let mut diag = KahanSum::default();
        for k in 0..n {
            diag.add(rows[i * n + k].norm_sqr());
        }
        gram[i * m + i] = Complex64::new(diag.value(), 0.0);
        for j in (i + 1)..m {
            let mut re = KahanSum::default();
            let mut im = KahanSum::default();
            for k in 0..n {
                let term = rows[i * n + k] * rows[j * n + k].conj();
                re.add(term.re);
                im.add(term.im);
            }
            let dot = Complex64::new(re.value(), im.value());
            gram[i * m + j] = dot;
            gram[j * m + i] = dot.conj();
        }
    }
    gram
}

/// Spectrum of the reduced density matrix of `state`'s m-dimensional side.
///
/// Eigenvalues are sorted descending, checked against the positivity and
/// trace tolerances, clamped into [0, 1], and rescaled to sum to one
/// exactly, so downstream entropy statistics see a genuine probability
/// vector.
///
/// # Errors
///
/// [`Error::Numeric`] if an eigenvalue lies below −1e-12 or above
/// 1 + 1e-12, or the spectrum's sum strays from 1 by more than 1e-10 —
/// all signs of eigensolver failure rather than roundoff.
/// [`Error::EigenNotConverged`] if the Jacobi sweep budget is exhausted.
pub fn reduced_eigenvalues(state: &StateMatrix) -> Result<SpectralSample> {
    let gram = gram_matrix(state);
    let raw = eigen::hermitian_eigenvalues(state.m, &gram)?;
    let mut eigenvalues = Vec::with_capacity(raw.len());
    for lambda in raw {
        if !(-EIGENVALUE_CLAMP..=1.0 + EIGENVALUE_CLAMP).contains(&lambda) {
            return Err(Error::Numeric(format!(
                "reduced-state eigenvalue {lambda:e} lies outside [−1e-12, 1 + 1e-12]"
            )));
        }
        eigenvalues.push(lambda.clamp(0.0, 1.0));
    }
    let mut acc = KahanSum::default();
    for &lambda in &eigenvalues {
        acc.add(lambda);
    }
    let sum = acc.value();
    if (sum - 1.0).abs() > SPECTRUM_SUM_TOL {
        return Err(Error::Numeric(format!(
            "reduced spectrum sums to {sum} instead of 1"
        )));
    }
    for lambda in &mut eigenvalues {
        *lambda /= sum;
    }
    Ok(SpectralSample { eigenvalues })
}

// ---------------------------------------------------------------------------
// estimators
// ---------------------------------------------------------------------------

/// Shared Monte-Carlo driver: samples `samples` independent spectra and
/// reduces a per-spectrum statistic to mean and standard error.
fn mc_estimate<F>(m: u64, n: u64, samples: u64, seed: u64, statistic: F) -> Result<Estimate>
where
    F: Fn(&SpectralSample) -> f64 + Sync,
{
    if m == 0 || n == 0 {
        return Err(Error::Domain(
            "subsystem dimensions must both be at least 1".into(),
        ));
    }
    if m.checked_mul(n)
        .is_none_or(|total| total > MAX_STATE_AMPLITUDES)
    {
        return Err(Error::Domain(format!(
            "state of {m}·{n} amplitudes is too large to sample"
        )));
    }
    if samples < 2 {
        return Err(Error::Domain(format!(
            "at least 2 samples are needed for a standard error, got {samples}"
        )));
    }
    let (m_dim, n_dim) = (m as usize, n as usize);
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|index| -> Result<f64> {
            let mut rng = sample_stream(seed, index);
            let state = sample_haar_state(m_dim, n_dim, &mut rng);
            let spectrum =
                reduced_eigenvalues(&state).map_err(|e| annotate_sample_error(e, seed, index))?;
            Ok(statistic(&spectrum))
        })
        .collect::<Result<Vec<f64>>>()?;

    let mut total = KahanSum::default();
    for &v in &values {
        total.add(v);
    }
    let mean = total.value() / samples as f64;
    let mut spread = KahanSum::default();
    for &v in &values {
        let d = v - mean;
        spread.add(d * d);
    }
    let variance = spread.value() / (samples as f64 - 1.0);
    let std_error = (variance.max(0.0) / samples as f64).sqrt();
    Ok(Estimate {
        mean,
        std_error,
        samples,
        seed,
    })
}

/// Tags a per-sample failure with enough provenance to reproduce the
/// offending matrix: the run seed and the sample's stream index.
fn annotate_sample_error(e: Error, seed: u64, index: u64) -> Error {
    let tag = format!(" (seed {seed}, sample stream {index})");
    match e {
        Error::EigenNotConverged(msg) => Error::EigenNotConverged(msg + &tag),
        Error::Numeric(msg) => Error::Numeric(msg + &tag),
        other => other,
    }
}

/// Validates a finite positive Monte-Carlo moment order.
fn validate_mc_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "Monte-Carlo order must be a positive finite real, got {alpha}"
        )));
    }
    Ok(())
}

/// Σᵢ pᵢ^α over one spectrum, with the α < 1 floor.
fn moment_sum(spectrum: &SpectralSample, alpha: f64) -> f64 {
    let mut acc = KahanSum::default();
    for &p in spectrum.eigenvalues() {
        let base = if alpha < 1.0 { p.max(POWER_FLOOR) } else { p };
        acc.add(base.powf(alpha));
    }
    acc.value()
}

/// Monte-Carlo estimate of the moment ⟨Σᵢ pᵢ^α⟩.
///
/// # Errors
///
/// [`Error::Domain`] for non-positive or non-finite `alpha`, zero
/// dimensions, or fewer than 2 samples; sampling errors propagate with
/// seed/stream provenance attached.
///
/// # Examples
///
/// ```
/// use pagecurve::montecarlo::mc_moment_sum;
///
/// // At α = 1 every spectrum sums to one, so the estimate is exact.
/// let est = mc_moment_sum(2, 3, 1.0, 200, 7).unwrap();
/// assert!((est.mean - 1.0).abs() < 1e-13);
/// assert!(est.std_error < 1e-12);
/// ```
pub fn mc_moment_sum(m: u64, n: u64, alpha: f64, samples: u64, seed: u64) -> Result<Estimate> {
    validate_mc_alpha(alpha)?;
    mc_estimate(m, n, samples, seed, move |spectrum| {
        moment_sum(spectrum, alpha)
    })
}

/// Monte-Carlo estimate of the true average Rényi entropy
/// ⟨ln(Σᵢ pᵢ^α)⟩ / (1 − α).
///
/// This is the quenched average ⟨S_α⟩ — the logarithm is taken per sample
/// — as opposed to the annealed S̃_α = ln⟨Σ pᵢ^α⟩/(1 − α) computed by the
/// closed-form evaluators. The two differ at small n and converge as the
/// moment concentrates.
///
/// # Errors
///
/// [`Error::Domain`] for α ≤ 0, α = 1 (the von Neumann point has its own
/// estimator), non-finite α, zero dimensions, or fewer than 2 samples.
pub fn mc_average_renyi(m: u64, n: u64, alpha: f64, samples: u64, seed: u64) -> Result<Estimate> {
    validate_mc_alpha(alpha)?;
    if alpha == 1.0 {
        return Err(Error::Domain(
            "Rényi order 1 is the von Neumann point; use the von Neumann estimator".into(),
        ));
    }
    let scale = 1.0 / (1.0 - alpha);
    mc_estimate(m, n, samples, seed, move |spectrum| {
        scale * moment_sum(spectrum, alpha).ln()
    })
}

/// Monte-Carlo estimate of the average von Neumann entropy ⟨−Σᵢ pᵢ ln pᵢ⟩,
/// with 0·ln 0 read as 0.
///
/// # Errors
///
/// [`Error::Domain`] for zero dimensions or fewer than 2 samples.
pub fn mc_average_von_neumann(m: u64, n: u64, samples: u64, seed: u64) -> Result<Estimate> {
    mc_estimate(m, n, samples, seed, |spectrum| {
        let mut acc = KahanSum::default();
        for &p in spectrum.eigenvalues() {
            if p > 0.0 {
                acc.add(p * p.ln());
            }
        }
        -acc.value()
    })
}
