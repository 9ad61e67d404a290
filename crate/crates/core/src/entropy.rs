//! Shannon and von Neumann entropies, in bits.

use crate::error::{DiscordError, Result};
use crate::linalg::{hermitian_eigenvalues, HermitianMatrix};

/// Entries in `[-PROB_CLAMP_TOL, 0)` clamp to 0 and in `(1, 1 + PROB_CLAMP_TOL]` to 1.
pub const PROB_CLAMP_TOL: f64 = 1e-9;
/// Largest accepted |Σ p_i − 1|.
pub const PROB_SUM_TOL: f64 = 1e-6;
/// Largest accepted |Tr ρ − 1| for a density operator.
pub const TRACE_TOL: f64 = 1e-9;

/// −p·log₂p with 0·log₂0 = 0.
#[inline]
pub fn neg_xlog2x(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// A finite distribution whose entries have been clamped into [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(DiscordError::InvalidProbability("empty distribution".into()));
        }
        let mut clamped = Vec::with_capacity(values.len());
        for &p in values {
            if !p.is_finite() || p < -PROB_CLAMP_TOL || p > 1.0 + PROB_CLAMP_TOL {
                return Err(DiscordError::InvalidProbability(format!("entry {p} outside [0, 1]")));
            }
            clamped.push(p.clamp(0.0, 1.0));
        }
        let sum: f64 = clamped.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(DiscordError::InvalidProbability(format!("entries sum to {sum}")));
        }
        Ok(Self(clamped))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn entropy(&self) -> f64 {
        self.0.iter().map(|&p| neg_xlog2x(p)).sum()
    }
}

/// h_m(q₁,…,q_m) = −Σ q_i log₂ q_i.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    Ok(ProbabilityVector::new(p)?.entropy())
}

/// h₂(x) = −x log₂x − (1−x) log₂(1−x).
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !x.is_finite() || x < -PROB_CLAMP_TOL || x > 1.0 + PROB_CLAMP_TOL {
        return Err(DiscordError::InvalidProbability(format!("{x} outside [0, 1]")));
    }
    Ok(binary_entropy_unchecked(x.clamp(0.0, 1.0)))
}

/// h₂ without range checks; callers guarantee `x ∈ [0, 1]`.
#[inline]
pub(crate) fn binary_entropy_unchecked(x: f64) -> f64 {
    neg_xlog2x(x) + neg_xlog2x(1.0 - x)
}

/// S(ρ) = h(eigenvalues of ρ).
pub fn von_neumann_entropy(m: &HermitianMatrix) -> Result<f64> {
    let trace = m.trace();
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(DiscordError::NotAState(format!("trace {trace} differs from 1")));
    }
    let eigenvalues = hermitian_eigenvalues(m);
    let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -PROB_CLAMP_TOL {
        return Err(DiscordError::NotAState(format!("negative eigenvalue {min:e}")));
    }
    Ok(eigenvalues.iter().map(|&mu| neg_xlog2x(mu.max(0.0))).sum())
}
