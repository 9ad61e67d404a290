//! Projective measurements {Π₀, Π₁} on qubit B along a direction n̂, and
//! the conditional entropy of A they induce.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::entropy::{binary_entropy_unchecked, neg_xlog2x, PROB_CLAMP_TOL};
use crate::error::{DiscordError, Result};
use crate::linalg::{hermitian_eigenvalues, kron2, matmul4, partial_trace_second, HermitianMatrix, C64, IDENTITY2};
use crate::state::{matrix_from_triple, qubit_from_bloch, BlochTriple};

/// Probabilities at or below this are treated as impossible outcomes.
pub const ZERO_BRANCH_TOL: f64 = 1e-12;

/// Unit vector n̂ defining Π_k = (I + n̂_k·σ)/2 with n̂₀ = −n̂₁ = n̂.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", try_from = "[f64; 3]")]
pub struct MeasurementDirection(Vector3<f64>);

impl MeasurementDirection {
    /// Normalizes `v`; fails for zero or non-finite input.
    pub fn new(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(DiscordError::InvalidParameter(format!("cannot normalize {v:?}")));
        }
        Ok(Self(v / norm))
    }

    /// n̂ = (sinθ cosφ, sinθ sinφ, cosθ).
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self(Vector3::new(st * cp, st * sp, ct))
    }

    pub fn axis(i: usize) -> Self {
        let mut v = Vector3::zeros();
        v[i] = 1.0;
        Self(v)
    }

    pub fn vector(&self) -> &Vector3<f64> {
        &self.0
    }

    /// (θ ∈ [0, π], φ ∈ [0, 2π)).
    pub fn angles(&self) -> (f64, f64) {
        let n = &self.0;
        let theta = n[2].clamp(-1.0, 1.0).acos();
        let mut phi = n[1].atan2(n[0]);
        if phi < 0.0 {
            phi += TAU;
        }
        if phi >= TAU {
            phi -= TAU;
        }
        (theta, phi)
    }

    /// n̂ for outcome `k`: n̂ for k = 0, −n̂ for k = 1.
    pub fn outcome_vector(&self, k: usize) -> Vector3<f64> {
        if k == 0 {
            self.0
        } else {
            -self.0
        }
    }

    /// Angle between the measurement axes, identifying n̂ with −n̂.
    pub fn axis_distance(&self, other: &Self) -> f64 {
        let c = self.0.dot(&other.0).abs().min(1.0);
        // atan2 form keeps precision for nearly parallel axes
        self.0.cross(&other.0).norm().atan2(c)
    }

    /// ∂n̂/∂θ and ∂n̂/∂φ at this direction.
    pub fn angle_derivatives(&self) -> (Vector3<f64>, Vector3<f64>) {
        let (theta, phi) = self.angles();
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        (Vector3::new(ct * cp, ct * sp, -st), Vector3::new(-st * sp, st * cp, 0.0))
    }
}

impl std::ops::Neg for MeasurementDirection {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl From<MeasurementDirection> for [f64; 3] {
    fn from(n: MeasurementDirection) -> Self {
        [n.0[0], n.0[1], n.0[2]]
    }
}

impl TryFrom<[f64; 3]> for MeasurementDirection {
    type Error = DiscordError;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        Self::new(Vector3::from(v))
    }
}

/// Π_k = (I + n̂_k·σ)/2.
pub fn projector_bloch(k: usize, n: &MeasurementDirection) -> HermitianMatrix {
    qubit_from_bloch(&n.outcome_vector(k))
}

/// Outcome probabilities and the four joint weights w₁..w₄.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementProbabilities {
    pub p0: f64,
    pub p1: f64,
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub w4: f64,
}

impl MeasurementProbabilities {
    pub fn weights(&self) -> [f64; 4] {
        [self.w1, self.w2, self.w3, self.w4]
    }
}

/// p_k = (1 + yᵗn̂_k)/2.
pub fn outcome_probabilities(t: &BlochTriple, n: &MeasurementDirection) -> (f64, f64) {
    let yn = t.y.dot(n.vector());
    ((1.0 + yn) / 2.0, (1.0 - yn) / 2.0)
}

/// Unclamped (p₀, p₁, |x + Tn̂|, |x − Tn̂|).
#[inline]
pub(crate) fn raw_terms(t: &BlochTriple, n: &Vector3<f64>) -> (f64, f64, f64, f64) {
    let yn = t.y.dot(n);
    let tn = t.t * n;
    let plus = (t.x + tn).norm();
    let minus = (t.x - tn).norm();
    ((1.0 + yn) / 2.0, (1.0 - yn) / 2.0, plus, minus)
}

#[inline]
pub(crate) fn weights_from_terms(p0: f64, p1: f64, plus: f64, minus: f64) -> [f64; 4] {
    [
        (2.0 * p0 + plus) / 4.0,
        (2.0 * p0 - plus) / 4.0,
        (2.0 * p1 + minus) / 4.0,
        (2.0 * p1 - minus) / 4.0,
    ]
}

/// w₁,₂ = (2p₀ ± |x + Tn̂|)/4, w₃,₄ = (2p₁ ± |x − Tn̂|)/4, clamped to [0, 1].
///
/// Negative weights beyond rounding mean the triple is not a state.
pub fn joint_probabilities(t: &BlochTriple, n: &MeasurementDirection) -> Result<MeasurementProbabilities> {
    let (p0, p1, plus, minus) = raw_terms(t, n.vector());
    let w = weights_from_terms(p0, p1, plus, minus);
    for (name, v) in [("p0", p0), ("p1", p1), ("w1", w[0]), ("w2", w[1]), ("w3", w[2]), ("w4", w[3])] {
        if !(v >= -PROB_CLAMP_TOL) {
            return Err(DiscordError::NotAState(format!("{name} = {v:e} along {:?}", n.vector())));
        }
    }
    let c = |v: f64| v.clamp(0.0, 1.0);
    Ok(MeasurementProbabilities { p0: c(p0), p1: c(p1), w1: c(w[0]), w2: c(w[1]), w3: c(w[2]), w4: c(w[3]) })
}

/// Conditional state of A after outcome `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PostMeasurementState {
    pub k: usize,
    /// x̃_k = (x + T n̂_k)/(1 + yᵗn̂_k)
    pub x_tilde: Vector3<f64>,
    pub probability: f64,
}

impl PostMeasurementState {
    /// Eigenvalues (1 ± |x̃_k|)/2 of ρᴬ_k.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let r = self.x_tilde.norm();
        ((1.0 + r) / 2.0, (1.0 - r) / 2.0)
    }
}

pub fn post_measurement_state(t: &BlochTriple, n: &MeasurementDirection, k: usize) -> Result<PostMeasurementState> {
    if k > 1 {
        return Err(DiscordError::InvalidParameter(format!("outcome {k} (expected 0 or 1)")));
    }
    let nk = n.outcome_vector(k);
    let denom = 1.0 + t.y.dot(&nk);
    let probability = denom / 2.0;
    if probability <= ZERO_BRANCH_TOL {
        return Err(DiscordError::ZeroProbabilityBranch { outcome: k, probability });
    }
    Ok(PostMeasurementState { k, x_tilde: (t.x + t.t * nk) / denom, probability })
}

/// S(ρᴬ|{Π_k}) = h₄(w) − h₂(p₀).
///
/// Evaluated as [(f(w₁)+f(w₂)) + (f(w₃)+f(w₄))] − [f(p₀)+f(p₁)] so that
/// n̂ → −n̂, which swaps the pairs, gives a bitwise-identical result.
#[inline]
pub fn conditional_entropy(t: &BlochTriple, n: &MeasurementDirection) -> f64 {
    conditional_entropy_at(t, n.vector())
}

#[inline]
pub(crate) fn conditional_entropy_at(t: &BlochTriple, n: &Vector3<f64>) -> f64 {
    let (p0, p1, plus, minus) = raw_terms(t, n);
    let w = weights_from_terms(p0, p1, plus, minus);
    let f = |v: f64| neg_xlog2x(v.clamp(0.0, 1.0));
    let h4 = (f(w[0]) + f(w[1])) + (f(w[2]) + f(w[3]));
    let h2 = f(p0) + f(p1);
    h4 - h2
}

/// Σ_k p_k S(ρᴬ_k), computed from the 4×4 matrix: project with I⊗Π_k,
/// trace out B, and diagonalize the conditional state of A.
pub fn conditional_entropy_direct(t: &BlochTriple, n: &MeasurementDirection) -> f64 {
    let rho = matrix_from_triple(t).rows4();
    let mut total = 0.0;
    for k in 0..2 {
        let pi = projector_bloch(k, n);
        let pi_rows = [[pi.get(0, 0), pi.get(0, 1)], [pi.get(1, 0), pi.get(1, 1)]];
        let lift = kron2(&IDENTITY2, &pi_rows);
        let projected = matmul4(&matmul4(&lift, &rho), &lift);
        let reduced = partial_trace_second(&projected);
        let p = reduced[0][0].re + reduced[1][1].re;
        if p <= ZERO_BRANCH_TOL {
            continue;
        }
        let scaled: [[C64; 2]; 2] = reduced.map(|row| row.map(|z| z / p));
        let sym = [
            [C64::new(scaled[0][0].re, 0.0), (scaled[0][1] + scaled[1][0].conj()) * 0.5],
            [(scaled[1][0] + scaled[0][1].conj()) * 0.5, C64::new(scaled[1][1].re, 0.0)],
        ];
        let rho_a = HermitianMatrix::from_rows2(&sym).expect("symmetrized");
        let s: f64 = hermitian_eigenvalues(&rho_a).iter().map(|&mu| neg_xlog2x(mu.clamp(0.0, 1.0))).sum();
        total += p * s;
    }
    total
}

/// Conditional entropy when the outcome on B carries no information about A
/// beyond fixing its coherence vector: h₂((1 + |v|)/2).
pub(crate) fn h2_of_radius(r: f64) -> f64 {
    binary_entropy_unchecked(((1.0 + r) / 2.0).clamp(0.0, 1.0))
}

/// Wraps θ into [0, π] and φ into [0, 2π), flipping φ by π when θ reflects.
pub fn wrap_angles(theta: f64, phi: f64) -> (f64, f64) {
    let mut th = theta.rem_euclid(TAU);
    let mut ph = phi;
    if th > PI {
        th = TAU - th;
        ph += PI;
    }
    (th, ph.rem_euclid(TAU))
}
