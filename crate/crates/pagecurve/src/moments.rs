//! Spectral moments Z_α = ⟨Σᵢ pᵢ^α⟩ of a random reduced state and the
//! average entropies built from them.
//!
//! A pure state drawn uniformly from an (m·n)-dimensional bipartite
//! Hilbert space has a reduced m×m density matrix whose eigenvalues
//! {pᵢ} follow the fixed-trace Wishart ensemble. This module evaluates
//! the ensemble averages
//!
//! * `Z_α` — via an exact double sum over gamma-function ratios, with an
//!   integer-α fast path ([`z_alpha_int`]) and a general real-α form
//!   ([`z_alpha_real`]);
//! * `S̃_α = ln Z_α / (1 − α)` — the average Rényi entropy proxy
//!   ([`renyi_tilde`]), with the α → 1 limit routed to the exact von
//!   Neumann average ([`page_von_neumann`]) and α = ∞ to its closed
//!   limit;
//! * `I_α = ln m − S̃_α` — the information deficit ([`info_alpha`]);
//! * large-n asymptotic expansions ([`z_alpha_asymptotic`],
//!   [`renyi_asymptotic`]) and the large-α leading term
//!   ([`z_inf_leading`]).
//!
//! Everything is carried in log space ([`LogValue`]): Γ(mn) overflows
//! f64 already at mn ≈ 171, and Z_α itself underflows once α·ln m grows
//! past ~700, while ln Z_α stays perfectly representable.
//!
//! All entropies are in nats. Dimensions are canonicalized so that
//! m ≤ n (the two reduced spectra of a pure state coincide); the
//! subsystem dimension the caller asked about is retained for ln m in
//! the information deficit.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::specfun::{
    digamma_raw, inv_gamma_squared, log_gamma_raw, log_sum_accumulate, KahanSum, LogValue,
};

/// Largest odd integer step f64 resolves exactly; dimension products and
/// integer Rényi orders beyond this would silently lose integer
/// precision inside gamma arguments.
const MAX_EXACT_INTEGER: f64 = 9_007_199_254_740_992.0; // 2^53

/// Above this many factors a falling-product log ratio switches to a
/// difference of Stirling evaluations (the product would cost more than
/// it gains; at that scale the magnitudes dwarf every tolerance anyway).
const PRODUCT_CUTOFF: u64 = 200_000;

/// Harmonic tails up to this length are summed term by term (exact to a
/// few ulp); longer tails use the digamma representation.
const HARMONIC_LOOP_LIMIT: u64 = 1_000_000;

// ---------------------------------------------------------------------------
// domain types
// ---------------------------------------------------------------------------

/// Validated, canonicalized bipartition dimensions.
///
/// Construction enforces m ≤ n by swapping if necessary: the two reduced
/// density matrices of a pure state share their nonzero spectrum, so
/// every spectral average is symmetric under m ↔ n. The dimension the
/// caller originally asked about is preserved (see
/// [`subsystem_dim`](SystemDims::subsystem_dim)) because the information
/// deficit is measured against *that* subsystem's ln m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemDims {
    m: u64,
    n: u64,
    swapped: bool,
}

impl SystemDims {
    /// Validates and canonicalizes a dimension pair.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if either dimension is zero or if m·n exceeds
    /// 2^53 (beyond which integer gamma arguments are not representable).
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Domain(format!(
                "Hilbert dimensions must be at least 1, got m={m}, n={n}"
            )));
        }
        let total = m
            .checked_mul(n)
            .ok_or_else(|| Error::Domain(format!("total dimension {m}*{n} overflows u64")))?;
        if total as f64 > MAX_EXACT_INTEGER {
            return Err(Error::Domain(format!(
                "total dimension {m}*{n} exceeds 2^53; gamma arguments would lose \
                 integer precision"
            )));
        }
        let swapped = m > n;
        let (m, n) = if swapped { (n, m) } else { (m, n) };
        Ok(SystemDims { m, n, swapped })
    }

    /// Smaller factor dimension (the formulas sum over this side).
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Larger factor dimension.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// True if the constructor swapped the pair to restore m ≤ n.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// Dimension of the subsystem the caller originally asked about.
    pub fn subsystem_dim(&self) -> u64 {
        if self.swapped {
            self.n
        } else {
            self.m
        }
    }

    /// Total Hilbert dimension m·n.
    pub fn total(&self) -> u64 {
        self.m * self.n
    }
}

/// A Rényi order: a nonnegative real α or the α → ∞ limit.
///
/// Construct via [`RenyiOrder::finite`], [`RenyiOrder::Infinite`], or by
/// parsing a string (`"2"`, `"0.5"`, `"inf"`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RenyiOrder {
    /// A finite order α ≥ 0. `integer_fast_path` marks exact integers
    /// α ≥ 1, for which the evaluator may use the integer-only sum.
    Finite {
        /// The order itself.
        value: f64,
        /// True iff `value` is an exact integer ≥ 1 (and ≤ 2^53).
        integer_fast_path: bool,
    },
    /// The α → ∞ limit.
    Infinite,
}

impl RenyiOrder {
    /// Wraps a finite order, validating it.
    ///
    /// `f64::INFINITY` is accepted and becomes [`RenyiOrder::Infinite`].
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] for negative or NaN values.
    pub fn finite(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            return Err(Error::Domain(format!(
                "Rényi order must be a nonnegative real or infinity, got {value}"
            )));
        }
        if value.is_infinite() {
            return Ok(RenyiOrder::Infinite);
        }
        let integer_fast_path = (1.0..=MAX_EXACT_INTEGER).contains(&value) && value.fract() == 0.0;
        Ok(RenyiOrder::Finite {
            value,
            integer_fast_path,
        })
    }

    /// True for α = 1 exactly (the von Neumann point).
    pub fn is_one(&self) -> bool {
        matches!(self, RenyiOrder::Finite { value, .. } if *value == 1.0)
    }

    /// Compact text form: integers without a decimal point, `"inf"` for
    /// the limit. Used for CSV/JSON columns and file-friendly labels.
    pub fn label(&self) -> String {
        match self {
            RenyiOrder::Infinite => "inf".to_string(),
            RenyiOrder::Finite { value, .. } => format!("{value}"),
        }
    }
}

impl fmt::Display for RenyiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for RenyiOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(RenyiOrder::Infinite);
        }
        let value: f64 = t
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse Rényi order from {s:?}")))?;
        RenyiOrder::finite(value)
    }
}

/// Which evaluation route produced a [`MomentResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Integer-α double sum.
    ExactIntSum,
    /// Real-α double sum.
    ExactRealSum,
    /// α → 1 limit via the exact von Neumann average.
    PageLimit,
    /// α = ∞ closed limit.
    InfiniteLimit,
    /// Large-n expansion.
    Asymptotic,
}

impl Method {
    /// Stable snake_case name, used verbatim in CSV/JSON output.
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactIntSum => "exact_int_sum",
            Method::ExactRealSum => "exact_real_sum",
            Method::PageLimit => "page_limit",
            Method::InfiniteLimit => "infinite_limit",
            Method::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated point: the moment, both entropy readings, and the route
/// that produced them.
///
/// Invariants (maintained by every constructor in this module):
/// `0 ≤ entropy ≤ ln m + 1e-9` and `entropy + info = ln m_subsystem`
/// exactly, where `m_subsystem` is the dimension the caller asked about.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentResult {
    /// ln Z_α. Zero magnitude (`LogValue::ZERO`) for α = ∞, where the
    /// moment itself vanishes.
    pub log_z: LogValue,
    /// Average Rényi entropy S̃_α in nats.
    pub entropy: f64,
    /// Information deficit I_α = ln m − S̃_α in nats.
    pub info: f64,
    /// Evaluation route.
    pub method: Method,
}

// ---------------------------------------------------------------------------
// integer gamma ratios
// ---------------------------------------------------------------------------

/// ln[Γ(hi)/Γ(lo)] for integers hi ≥ lo ≥ 1, as a falling product.
///
/// Multiplying the integers in chunks below the overflow threshold and
/// taking one ln per chunk keeps the absolute error near
/// (hi−lo)·ε — typically 1e-13 — where a difference of two Stirling
/// evaluations of magnitude ~10⁶ would lose ten digits more. Ratios
/// spanning more than [`PRODUCT_CUTOFF`] factors fall back to that
/// difference: at such spans the result is ~10⁵ or larger and the
/// Stirling error is negligible relative to every stated tolerance.
pub(crate) fn ln_gamma_ratio_int(hi: u64, lo: u64) -> f64 {
    debug_assert!(lo >= 1 && hi >= lo, "need hi ≥ lo ≥ 1, got {hi}, {lo}");
    if hi == lo {
        return 0.0;
    }
    if hi - lo > PRODUCT_CUTOFF {
        return log_gamma_raw(hi as f64) - log_gamma_raw(lo as f64);
    }
    let mut chunks = KahanSum::default();
    let mut product = 1.0f64;
    for t in lo..hi {
        product *= t as f64;
        if product > 1e280 {
            chunks.add(product.ln());
            product = 1.0;
        }
    }
    chunks.add(product.ln());
    chunks.value()
}

// ---------------------------------------------------------------------------
// exact moment sums
// ---------------------------------------------------------------------------

/// ln Z_α for integer α ≥ 1, from the exact finite double sum
///
/// Z_α = [Γ(mn)/Γ(mn+α)] Σ_{k=0}^{m−1} [Γ(k+1)/Γ(k+n−m+1)]
///        Σ_{i=0}^{min(α,k)} C(α,i)² Γ(k+n−m+α−i+1)/Γ(k−i+1).
///
/// Every term is positive, so the whole sum runs through
/// [`log_sum_accumulate`]. Gamma ratios and binomials are updated
/// incrementally along k and i (one ln per step) rather than recomputed,
/// which keeps the cost at O(m·(n−m+α) + m·min(m,α)) and the rounding
/// drift below ~10⁻¹³ even for the 10⁵-term sums of large sweeps.
///
/// # Examples
///
/// ```
/// use pagecurve::moments::{z_alpha_int, SystemDims};
///
/// // For m = 2 the second moment collapses to (n+2)/(2n+1).
/// let dims = SystemDims::new(2, 5).unwrap();
/// let z = z_alpha_int(dims, 2).value();
/// assert!((z - 7.0 / 11.0).abs() < 1e-14);
/// ```
pub fn z_alpha_int(dims: SystemDims, alpha: u64) -> LogValue {
    debug_assert!(alpha >= 1, "integer moment sum needs α ≥ 1, got {alpha}");
    let (m, n) = (dims.m(), dims.n());
    if m == 1 {
        // A one-dimensional subsystem has the single eigenvalue 1, so every
        // moment is exactly 1; the sum would only add rounding drift.
        return LogValue::from_ln(0.0);
    }
    let mn = dims.total();
    let gap = n - m;

    let ln_prefactor = -ln_gamma_ratio_int(mn + alpha, mn);

    let mut terms = Vec::with_capacity((m * (m.min(alpha + 1))) as usize);
    // ln Γ(k+1)/Γ(k+gap+1) and ln Γ(k+gap+α+1)/Γ(k+1), advanced in k.
    let mut ln_front = -ln_gamma_ratio_int(gap + 1, 1);
    let mut ln_tail_anchor = ln_gamma_ratio_int(gap + alpha + 1, 1);
    for k in 0..m {
        if k > 0 {
            ln_front += (k as f64).ln() - ((k + gap) as f64).ln();
            ln_tail_anchor += ((k + gap + alpha) as f64).ln() - (k as f64).ln();
        }
        // i = 0: binomial C(α,0) = 1.
        terms.push(LogValue::from_ln(ln_front + ln_tail_anchor));
        // Slide i upward: C(α,i) gains (α−i+1)/i, the tail ratio trades
        // its top factor for the next denominator factor.
        let mut ln_binom = 0.0f64;
        let mut ln_tail = ln_tail_anchor;
        for i in 1..=k.min(alpha) {
            ln_binom += ((alpha - i + 1) as f64).ln() - (i as f64).ln();
            ln_tail += ((k - i + 1) as f64).ln() - ((k + gap + alpha - i + 1) as f64).ln();
            terms.push(LogValue::from_ln(ln_front + 2.0 * ln_binom + ln_tail));
        }
    }
    // The k = 0 term is a positive gamma ratio, so the sum is never zero.
    let body = log_sum_accumulate(terms);
    LogValue::from_ln(ln_prefactor + body.log_magnitude())
}

/// ln Z_α for any real α > 0, from the exact double sum
///
/// Z_α = [Γ(mn)Γ²(α+1)/Γ(mn+α)] Σ_{k=0}^{m−1} [Γ(k+1)/Γ(k+n−m+1)]
///        Σ_{j=0}^{m−1} Γ(n−m+α+1+j) / [Γ²(k−j+1) Γ²(α−k+j+1) Γ(j+1)].
///
/// The reciprocal Γ² factors go through [`inv_gamma_squared`], which is
/// finite everywhere and exactly zero at the gamma poles; in particular
/// every j > k term vanishes through 1/Γ²(k−j+1), so the inner loop
/// stops at j = k.
///
/// # Errors
///
/// [`Error::Domain`] for α ≤ 0. (α = 0 has the trivial moment Z₀ = m;
/// [`renyi_tilde`] handles it without touching the sum.)
pub fn z_alpha_real(dims: SystemDims, alpha: f64) -> Result<LogValue> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "real moment sum needs α > 0, got {alpha}"
        )));
    }
    let (m, n) = (dims.m(), dims.n());
    if m == 1 {
        // A one-dimensional subsystem has the single eigenvalue 1, so every
        // moment is exactly 1; the sum would only add rounding drift.
        return Ok(LogValue::from_ln(0.0));
    }
    let mn = dims.total() as f64;
    let gap = (n - m) as f64;

    let ln_prefactor =
        log_gamma_raw(mn) + 2.0 * log_gamma_raw(alpha + 1.0) - log_gamma_raw(mn + alpha);

    // Per-index tables, each advanced by one ln per step:
    //   ln_fact[d]   = ln d!                    (d = j, and d = k−j)
    //   ln_gnum[j]   = ln Γ(n−m+α+1+j)
    //   igs_shift[d] = 1/Γ²(α+1−d)              (depends on k−j only)
    let mu = m as usize;
    let mut ln_fact = Vec::with_capacity(mu);
    let mut ln_gnum = Vec::with_capacity(mu);
    let mut igs_shift = Vec::with_capacity(mu);
    let mut fact_acc = 0.0f64;
    let mut gnum_acc = log_gamma_raw(gap + alpha + 1.0);
    for d in 0..m {
        if d > 0 {
            fact_acc += (d as f64).ln();
            gnum_acc += (gap + alpha + d as f64).ln();
        }
        ln_fact.push(fact_acc);
        ln_gnum.push(gnum_acc);
        igs_shift.push(inv_gamma_squared(alpha + 1.0 - d as f64));
    }

    let mut terms = Vec::with_capacity(mu * (mu + 1) / 2);
    let mut ln_front = -ln_gamma_ratio_int(n - m + 1, 1);
    for k in 0..m {
        if k > 0 {
            ln_front += (k as f64).ln() - ((k + n - m) as f64).ln();
        }
        for j in 0..=k {
            let d = (k - j) as usize;
            let shift = igs_shift[d];
            if shift.is_zero() {
                // Integer α with α + 1 ≤ k − j: the Γ² pole kills the term.
                continue;
            }
            let ln_term = ln_front + ln_gnum[j as usize] - 2.0 * ln_fact[d] - ln_fact[j as usize]
                + shift.log_magnitude();
            terms.push(LogValue::from_ln(ln_term));
        }
    }
    let body = log_sum_accumulate(terms);
    Ok(LogValue::from_ln(ln_prefactor + body.log_magnitude()))
}

/// The weighted Laguerre normalization moment
/// I_{k,α}(x) = Γ²(k+1) Σ_{i=0}^{min(α,k)} C(α,i)² Γ(k+α+x−i+1)/Γ(k−i+1),
/// equal to ∫₀^∞ e^{−q} q^{α+x} (p_k^x(q))² dq for x > −1.
pub fn i_k_alpha(k: u64, alpha: u64, x: f64) -> LogValue {
    debug_assert!(x > -1.0, "I_k_alpha needs x > −1, got {x}");
    let ln_front = 2.0 * ln_gamma_ratio_int(k + 1, 1);
    let mut terms = Vec::with_capacity((k.min(alpha) + 1) as usize);
    let mut ln_binom = 0.0f64;
    for i in 0..=k.min(alpha) {
        if i > 0 {
            ln_binom += ((alpha - i + 1) as f64).ln() - (i as f64).ln();
        }
        let ln_term = 2.0 * ln_binom + log_gamma_raw((k + alpha - i) as f64 + x + 1.0)
            - ln_gamma_ratio_int(k - i + 1, 1);
        terms.push(LogValue::from_ln(ln_term));
    }
    let body = log_sum_accumulate(terms);
    LogValue::from_ln(ln_front + body.log_magnitude())
}

// ---------------------------------------------------------------------------
// von Neumann point
// ---------------------------------------------------------------------------

/// Exact average von Neumann entropy,
/// ⟨S⟩ = Σ_{k=n+1}^{mn} 1/k − (m−1)/(2n).
///
/// The harmonic tail is summed term by term (compensated) up to 10⁶
/// terms and switches to ψ(mn+1) − ψ(n+1) beyond, where the loop would
/// dominate divisor sweeps for no precision gain.
///
/// # Examples
///
/// ```
/// use pagecurve::moments::{page_von_neumann, SystemDims};
///
/// // Two qubits: 1/3 + 1/4 − 1/4 = 1/3.
/// let s = page_von_neumann(SystemDims::new(2, 2).unwrap());
/// assert!((s - 1.0 / 3.0).abs() < 1e-15);
/// ```
pub fn page_von_neumann(dims: SystemDims) -> f64 {
    let (m, n) = (dims.m(), dims.n());
    if m == 1 {
        return 0.0;
    }
    let mn = dims.total();
    let tail = if mn <= HARMONIC_LOOP_LIMIT {
        harmonic_tail_loop(n, mn)
    } else {
        harmonic_tail_digamma(n, mn)
    };
    tail - (m as f64 - 1.0) / (2.0 * n as f64)
}

/// Σ_{k=lo+1}^{hi} 1/k by compensated summation.
fn harmonic_tail_loop(lo: u64, hi: u64) -> f64 {
    let mut acc = KahanSum::default();
    for k in (lo + 1)..=hi {
        acc.add(1.0 / k as f64);
    }
    acc.value()
}

/// Σ_{k=lo+1}^{hi} 1/k = ψ(hi+1) − ψ(lo+1).
fn harmonic_tail_digamma(lo: u64, hi: u64) -> f64 {
    digamma_raw(hi as f64 + 1.0) - digamma_raw(lo as f64 + 1.0)
}

/// The von Neumann average recovered from the moment generating
/// function: −dZ_α/dα at α = 1, by a central difference of step h.
///
/// Agrees with [`page_von_neumann`] to O(h²) (the third derivative of
/// Z_α at α = 1 is O(ln³m)), so h = 1e-4 reaches ~1e-6 absolute.
///
/// # Errors
///
/// [`Error::Domain`] unless 1e-7 ≤ h ≤ 1e-3 (larger steps truncate,
/// smaller ones cancel in f64).
pub fn von_neumann_from_z_derivative(dims: SystemDims, h: f64) -> Result<f64> {
    if !(1e-7..=1e-3).contains(&h) {
        return Err(Error::Domain(format!(
            "derivative step must lie in [1e-7, 1e-3], got {h}"
        )));
    }
    let plus = z_alpha_real(dims, 1.0 + h)?.value();
    let minus = z_alpha_real(dims, 1.0 - h)?.value();
    Ok(-(plus - minus) / (2.0 * h))
}

// ---------------------------------------------------------------------------
// entropy dispatch
// ---------------------------------------------------------------------------

/// Average Rényi entropy S̃_α(m,n) = ln Z_α / (1−α), with every special
/// order routed to its exact form.
///
/// Dispatch:
/// * α = 0 → S̃ = ln m (Z₀ = m, the rank);
/// * α = 1 → the exact von Neumann average ([`page_von_neumann`]);
/// * integer α ≥ 2 → [`z_alpha_int`];
/// * other finite α > 0 → [`z_alpha_real`];
/// * α = ∞ → S̃ = 0, I = ln m (the moment itself vanishes).
///
/// The entropy is computed from ln Z directly — never from Z, which
/// underflows once α·ln m passes ~700 — and clamped at 0 against
/// last-ulp rounding. `info` is measured against the subsystem the
/// caller named, which matters when the dimensions arrived swapped.
///
/// # Examples
///
/// ```
/// use pagecurve::moments::{renyi_tilde, RenyiOrder, SystemDims};
///
/// let dims = SystemDims::new(2, 5).unwrap();
/// let r = renyi_tilde(dims, RenyiOrder::finite(2.0).unwrap());
/// // S̃₂(2,5) = −ln(7/11)
/// assert!((r.entropy - (11.0f64 / 7.0).ln()).abs() < 1e-14);
/// ```
pub fn renyi_tilde(dims: SystemDims, order: RenyiOrder) -> MomentResult {
    let ln_sub = (dims.subsystem_dim() as f64).ln();
    match order {
        RenyiOrder::Infinite => MomentResult {
            log_z: LogValue::ZERO,
            entropy: 0.0,
            info: ln_sub,
            method: Method::InfiniteLimit,
        },
        RenyiOrder::Finite {
            value,
            integer_fast_path,
        } => {
            if value == 0.0 {
                // Z₀ counts the nonzero eigenvalues: exactly m.
                let entropy = (dims.m() as f64).ln();
                return MomentResult {
                    log_z: LogValue::from_value(dims.m() as f64),
                    entropy,
                    info: ln_sub - entropy,
                    method: Method::ExactRealSum,
                };
            }
            if value == 1.0 {
                let entropy = page_von_neumann(dims);
                return MomentResult {
                    log_z: LogValue::from_value(1.0),
                    entropy,
                    info: ln_sub - entropy,
                    method: Method::PageLimit,
                };
            }
            let (log_z, method) = if integer_fast_path {
                (z_alpha_int(dims, value as u64), Method::ExactIntSum)
            } else {
                // α > 0 and α ∉ {0, 1} here, so the sum cannot reject it.
                let z = z_alpha_real(dims, value)
                    .expect("positive non-unit order was validated at construction");
                (z, Method::ExactRealSum)
            };
            let entropy = (log_z.log_magnitude() / (1.0 - value)).max(0.0);
            MomentResult {
                log_z,
                entropy,
                info: ln_sub - entropy,
                method,
            }
        }
    }
}

/// Information deficit I_α = ln m − S̃_α for the *caller's* m, with the
/// evaluation itself on canonicalized dimensions.
///
/// # Errors
///
/// [`Error::Domain`] for invalid dimensions.
pub fn info_alpha(m: u64, n: u64, order: RenyiOrder) -> Result<f64> {
    Ok(renyi_tilde(SystemDims::new(m, n)?, order).info)
}

// ---------------------------------------------------------------------------
// asymptotics
// ---------------------------------------------------------------------------

/// Large-n expansion of the moment:
/// Z_α ≈ m^{1−α} [1 + α(α−1)(m − m⁻¹)/(2n)].
///
/// Meaningful for n ≳ 10m; the remainder is O(n⁻²). Returned as a plain
/// value (it underflows for α·ln m ≳ 700 — use the exact log-space
/// evaluators there).
pub fn z_alpha_asymptotic(dims: SystemDims, alpha: f64) -> f64 {
    let m = dims.m() as f64;
    let n = dims.n() as f64;
    m.powf(1.0 - alpha) * (1.0 + alpha * (alpha - 1.0) * (m - 1.0 / m) / (2.0 * n))
}

/// Large-n entropy expansion: the log form and its further-linearized
/// simplification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEntropy {
    /// ln m − ln[1 + α(α−1)(m−m⁻¹)/(2n)]/(α−1)   (α ≠ 1),
    /// ln m − (m−m⁻¹)/(2n)                        (α = 1 limit).
    pub entropy: f64,
    /// The linearized form ln m − α(m−m⁻¹)/(2n).
    pub simplified: f64,
}

/// Large-n expansion of S̃_α, with the α → 1 limit built in.
pub fn renyi_asymptotic(dims: SystemDims, alpha: f64) -> AsymptoticEntropy {
    let m = dims.m() as f64;
    let n = dims.n() as f64;
    let ln_m = m.ln();
    let correction = (m - 1.0 / m) / (2.0 * n);
    let entropy = if alpha == 1.0 {
        ln_m - correction
    } else {
        ln_m - (1.0 + alpha * (alpha - 1.0) * correction).ln() / (alpha - 1.0)
    };
    AsymptoticEntropy {
        entropy,
        simplified: ln_m - alpha * correction,
    }
}

/// Leading large-α behavior of the moment:
/// Z_α → [Γ(mn)/(Γ(m)Γ(n))] α^{−(m−1)(n−1)}.
///
/// The precondition is α > 0 (the caller guarantees it; only the ln α
/// scale is meaningful here).
pub fn z_inf_leading(dims: SystemDims, alpha: f64) -> LogValue {
    debug_assert!(alpha > 0.0, "z_inf_leading needs α > 0, got {alpha}");
    let (m, n) = (dims.m(), dims.n());
    let ln = ln_gamma_ratio_int(dims.total(), n)
        - ln_gamma_ratio_int(m, 1)
        - ((m - 1) * (n - 1)) as f64 * alpha.ln();
    LogValue::from_ln(ln)
}
