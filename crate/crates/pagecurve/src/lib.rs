//! Average entanglement entropy of Haar-random bipartite pure states.
//!
//! For a random pure state on an m·n-dimensional bipartite Hilbert space
//! (subsystem dimensions m ≤ n), the eigenvalues p₁,…,p_m of the reduced
//! density matrix follow the fixed-trace Wishart law, and the ensemble
//! moments Z_α = ⟨Σᵢ pᵢ^α⟩ admit closed gamma-function sum formulas. This
//! crate evaluates those sums in log space (so they remain exact at
//! dimensions like m·n = 291600 and orders like α = 1000), and from them:
//!
//! * the approximate Rényi entropy S̃_α(m,n) = ln Z_α / (1−α) and the
//!   information deficit I_α = ln m − S̃_α ([`moments`]);
//! * the average von Neumann entropy (Page's formula) and its α→1
//!   derivative cross-check ([`moments`]);
//! * the exact average Rényi-2 entropy of a 2×n system via quadrature of
//!   the special function F(m,n) ([`exact_small`]);
//! * large-n and large-α asymptotics ([`moments`]);
//! * a Monte-Carlo sampler of Haar-random states serving as an
//!   independent oracle for every formula ([`montecarlo`]);
//! * a CLI producing Page-curve sweeps (CSV/JSON) over the divisors of a
//!   fixed total dimension, and the m_* threshold search ([`cli`]).
//!
//! Numerical foundations — log-gamma, digamma, 1/Γ², log-sum-exp
//! accumulation, Laguerre polynomials, and Gauss quadrature — live in
//! [`specfun`].

pub mod cli;
pub mod error;
pub mod exact_small;
pub mod moments;
pub mod montecarlo;
pub mod specfun;

pub use error::{Error, Result};
