//! Gauss quadrature rules built by the Golub–Welsch procedure.
//!
//! For a weight function with known recurrence coefficients, the nodes of
//! the N-point Gauss rule are the eigenvalues of the symmetric tridiagonal
//! Jacobi matrix, and each weight is µ₀ times the squared first component
//! of the corresponding normalized eigenvector. The eigenproblem is solved
//! with an implicit-shift QL iteration that tracks only the first row of
//! the accumulated eigenvector product — all that the weights need.
//!
//! Two weights are provided:
//!
//! * generalized Gauss–Laguerre, weight x^a e^{−x} on [0, ∞)
//!   (Jacobi diagonal 2k+a+1, off-diagonal √(k(k+a)), µ₀ = Γ(a+1));
//! * Gauss–Legendre mapped to [0, 1] for smooth bounded integrands
//!   (diagonal 0, off-diagonal k/√(4k²−1), µ₀ = 2).

use super::log_gamma_raw;
use crate::error::{Error, Result};

/// Maximum implicit-shift QL iterations allowed per eigenvalue.
const MAX_QL_ITERATIONS: usize = 50;

/// Nodes and weights of an N-point generalized Gauss–Laguerre rule.
///
/// Integrates f against the weight x^`weight_exponent` e^{−x} over
/// [0, ∞): ∫ x^a e^{−x} f(x) dx ≈ Σ wᵢ f(xᵢ), exactly (to roundoff) for
/// polynomial f of degree ≤ 2N−1.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    weight_exponent: f64,
}

impl QuadratureRule {
    /// Quadrature nodes, strictly increasing and all positive.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Quadrature weights, all positive; they sum to Γ(a+1).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of points N.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// The exponent a of the weight x^a e^{−x}.
    pub fn weight_exponent(&self) -> f64 {
        self.weight_exponent
    }

    /// Σ wᵢ f(xᵢ): the quadrature approximation of ∫ x^a e^{−x} f(x) dx.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Builds the N-point generalized Gauss–Laguerre rule for the weight
/// x^`weight_exponent` e^{−x} on [0, ∞).
///
/// # Errors
///
/// * [`Error::Domain`] if `order` is 0 or `weight_exponent ≤ −1`
///   (the weight would not be integrable).
/// * [`Error::EigenNotConverged`] if the QL iteration stalls (not
///   observed for any practical order).
///
/// # Examples
///
/// ```
/// use pagecurve::specfun::gauss_laguerre_rule;
///
/// // The 1-point rule for e^{−x} is node 1, weight 1.
/// let rule = gauss_laguerre_rule(1, 0.0).unwrap();
/// assert!((rule.nodes()[0] - 1.0).abs() < 1e-14);
/// assert!((rule.weights()[0] - 1.0).abs() < 1e-14);
/// ```
pub fn gauss_laguerre_rule(order: usize, weight_exponent: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::Domain(
            "quadrature order must be at least 1".to_string(),
        ));
    }
    if weight_exponent.is_nan() || weight_exponent <= -1.0 {
        return Err(Error::Domain(format!(
            "Laguerre weight exponent must exceed -1, got {weight_exponent}"
        )));
    }
    let a = weight_exponent;
    let diag: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + a + 1.0).collect();
    let off: Vec<f64> = (1..order)
        .map(|k| ((k as f64) * (k as f64 + a)).sqrt())
        .collect();
    let (nodes, first_components) = symmetric_tridiagonal_eigen(diag, &off)?;

    let mu0 = log_gamma_raw(a + 1.0).exp();
    let weights: Vec<f64> = first_components.iter().map(|&z| mu0 * z * z).collect();

    let rule = QuadratureRule {
        nodes,
        weights,
        weight_exponent,
    };
    validate_rule(&rule)?;
    Ok(rule)
}

/// Nodes and weights of the N-point Gauss–Legendre rule mapped onto
/// [0, 1]: ∫₀¹ f(t) dt ≈ Σ wᵢ f(tᵢ). Intended for smooth bounded
/// integrands, where convergence in N is geometric.
///
/// # Errors
///
/// [`Error::Domain`] if `order` is 0; [`Error::EigenNotConverged`] if the
/// eigen iteration stalls.
pub fn gauss_legendre_unit(order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if order == 0 {
        return Err(Error::Domain(
            "quadrature order must be at least 1".to_string(),
        ));
    }
    let diag = vec![0.0; order];
    let off: Vec<f64> = (1..order)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let (nodes, first_components) = symmetric_tridiagonal_eigen(diag, &off)?;
    // µ₀ = ∫₋₁¹ dt = 2; then map [−1,1] → [0,1].
    let nodes = nodes.into_iter().map(|x| 0.5 * (x + 1.0)).collect();
    let weights = first_components.iter().map(|&z| z * z).collect();
    Ok((nodes, weights))
}

/// Defensive checks of the rule invariants: nodes strictly increasing and
/// positive, weights positive.
fn validate_rule(rule: &QuadratureRule) -> Result<()> {
    for pair in rule.nodes.windows(2) {
        if pair[0].partial_cmp(&pair[1]) != Some(std::cmp::Ordering::Less) {
            return Err(Error::Numeric(format!(
                "quadrature nodes not strictly increasing near {}",
                pair[0]
            )));
        }
    }
    if rule.nodes.first().copied().unwrap_or(1.0) <= 0.0 {
        return Err(Error::Numeric(
            "smallest quadrature node is not positive".to_string(),
        ));
    }
    if rule.weights.iter().any(|&w| w.is_nan() || w <= 0.0) {
        return Err(Error::Numeric(
            "quadrature weights must all be positive".to_string(),
        ));
    }
    Ok(())
}

/// Eigenvalues of a symmetric tridiagonal matrix together with the first
/// component of each normalized eigenvector, by implicit-shift QL
/// iteration. Returns both sorted by ascending eigenvalue.
///
/// `diag` holds the diagonal (consumed as workspace); `off[k]` couples
/// rows k and k+1.
fn symmetric_tridiagonal_eigen(mut diag: Vec<f64>, off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    debug_assert_eq!(off.len(), n.saturating_sub(1));
    let mut first = vec![0.0; n];
    first[0] = 1.0;
    if n == 1 {
        return Ok((diag, first));
    }

    // e is padded with a trailing scratch slot, NR style.
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);

    for l in 0..n {
        let mut iterations = 0;
        loop {
            // Find the first negligible off-diagonal at or after l.
            let mut m = l;
            while m + 1 < n {
                let scale = diag[m].abs() + diag[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * scale {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::EigenNotConverged(format!(
                    "QL iteration exceeded {MAX_QL_ITERATIONS} sweeps on a \
                     {n}-point Jacobi matrix"
                )));
            }

            // Implicit Wilkinson-style shift from the leading 2×2 block.
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflow_restart = false;

            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Rotation annihilated prematurely; deflate and retry.
                    diag[i + 1] -= p;
                    e[m] = 0.0;
                    underflow_restart = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;

                // Accumulate the rotation into the tracked first row.
                f = first[i + 1];
                first[i + 1] = s * first[i] + c * f;
                first[i] = c * first[i] - s * f;
            }
            if underflow_restart {
                continue;
            }
            diag[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // Sort eigenpairs by ascending eigenvalue.
    let mut index: Vec<usize> = (0..n).collect();
    index.sort_by(|&a, &b| diag[a].total_cmp(&diag[b]));
    let nodes = index.iter().map(|&i| diag[i]).collect();
    let firsts = index.iter().map(|&i| first[i]).collect();
    Ok((nodes, firsts))
}
