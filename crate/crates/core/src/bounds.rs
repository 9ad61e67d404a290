//! Bounds from restricting the measurement axis to the orthogonal complement
//! of R = span{Tᵗx, y}.
//!
//! On R⊥ both outcomes are equally likely and |x + Tn̂| = |x − Tn̂|, so the
//! conditional entropy reduces to h₂((1 + √(|x|² + n̂ᵗTᵗTn̂))/2). Maximizing
//! the quadratic form over R⊥ gives an upper bound on min S.

use std::io::Write;

use nalgebra::{DMatrix, Matrix3, SymmetricEigen, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{ab_state, AbState};
use crate::error::Result;
use crate::measurement::{h2_of_radius, MeasurementDirection};
use crate::optimizer::{quantum_discord_with, OptimizerOptions, SATURATION_TOL};
use crate::state::{BlochTriple, DensityMatrix};

/// Relative singular-value threshold for the rank of span{Tᵗx, y}.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "t0sq")]
    pub t0sq: f64,
    #[serde(rename = "perpDim")]
    pub perp_dim: usize,
    pub e0: MeasurementDirection,
    #[serde(rename = "condEntropyUB")]
    pub cond_entropy_ub: f64,
    #[serde(rename = "discordUB")]
    pub discord_ub: f64,
    #[serde(rename = "classicalLB")]
    pub classical_lb: f64,
    #[serde(rename = "xiBound")]
    pub xi_bound: f64,
    pub saturated: bool,
}

/// Orthonormal basis of R⊥. R = {0} gives the standard basis.
pub fn perp_subspace(t: &BlochTriple) -> Vec<Vector3<f64>> {
    let ttx = t.t.transpose() * t.x;
    let m = Matrix3::from_columns(&[ttx, t.y, Vector3::zeros()]);
    let scale = 1.0_f64.max(t.t.norm()).max(t.x.norm()).max(t.y.norm());
    let threshold = RANK_TOL * scale;
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested U");
    let rank = svd.singular_values.iter().filter(|&&s| s > threshold).count();
    if rank == 0 {
        return (0..3).map(|k| *MeasurementDirection::axis(k).vector()).collect();
    }
    (0..3)
        .filter(|&k| svd.singular_values[k] <= threshold)
        .map(|k| u.column(k).into_owned())
        .collect()
}

/// t₀² = max over unit ê ∈ R⊥ of êᵗTᵗTê, and a maximizer ê₀.
pub fn t0_squared(t: &BlochTriple) -> (f64, MeasurementDirection) {
    let basis = perp_subspace(t);
    let b = DMatrix::from_fn(3, basis.len(), |i, j| basis[j][i]);
    let q = DMatrix::from_iterator(3, 3, (t.t.transpose() * t.t).iter().copied());
    let restricted = b.transpose() * &q * &b;
    let eig = SymmetricEigen::new(restricted);
    let mut best = 0;
    for k in 1..eig.eigenvalues.len() {
        if eig.eigenvalues[k] > eig.eigenvalues[best] {
            best = k;
        }
    }
    let e0 = &b * eig.eigenvectors.column(best);
    let e0 = MeasurementDirection::new(Vector3::new(e0[0], e0[1], e0[2])).expect("unit combination of an orthonormal basis");
    let t0sq = eig.eigenvalues[best].max(0.0);
    (t0sq, e0)
}

/// All bound quantities except `saturated`, which needs the optimizer.
pub fn bound_report(t: &BlochTriple, entropy_a: f64, entropy_b: f64, entropy_ab: f64) -> BoundReport {
    let perp_dim = perp_subspace(t).len();
    let (t0sq, e0) = t0_squared(t);
    let cond_entropy_ub = h2_of_radius((t.x.norm_squared() + t0sq).sqrt());
    BoundReport {
        t0sq,
        perp_dim,
        e0,
        cond_entropy_ub,
        discord_ub: entropy_b - entropy_ab + cond_entropy_ub,
        classical_lb: entropy_a - cond_entropy_ub,
        xi_bound: entropy_b,
        saturated: false,
    }
}

/// Bounds of `rho`, with saturation judged against the optimizer's discord.
pub fn theorem1_bounds(rho: &DensityMatrix) -> BoundReport {
    quantum_discord_with(rho, &OptimizerOptions::default()).bounds
}

/// A one- or two-parameter family of states for comparison tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily {
    /// ρ(a, b) with (param1, param2) = (a, b).
    Ab,
    /// Bell-diagonal states t = s·ray with param1 = s; param2 is t_max.
    BellDiagonalRay([f64; 3]),
}

impl StateFamily {
    fn state(&self, p1: f64, p2: f64) -> Result<(DensityMatrix, f64)> {
        match self {
            StateFamily::Ab => Ok((ab_state(&AbState::new(p1, p2)?)?, p2)),
            StateFamily::BellDiagonalRay(r) => {
                let t = BlochTriple::bell_diagonal(p1 * r[0], p1 * r[1], p1 * r[2]);
                let t_max = t.t.diagonal().amax();
                Ok((DensityMatrix::from_triple(&t)?, t_max))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub param1: f64,
    pub param2: f64,
    pub discord: f64,
    pub discord_ub: f64,
    pub xi_bound: f64,
    pub saturated: bool,
}

/// Discord, its upper bound and S(ρᴮ) at every parameter tuple, in input
/// order. For the Bell-diagonal ray only the first entry of each tuple is read.
pub fn bound_comparison_scan(family: &StateFamily, params: &[(f64, f64)], opts: &OptimizerOptions) -> Result<Vec<ScanRow>> {
    params
        .par_iter()
        .map(|&(p1, p2)| {
            let (rho, param2) = family.state(p1, p2)?;
            let r = quantum_discord_with(&rho, opts);
            Ok(ScanRow {
                param1: p1,
                param2,
                discord: r.discord,
                discord_ub: r.bounds.discord_ub,
                xi_bound: r.bounds.xi_bound,
                saturated: (r.bounds.discord_ub - r.discord).abs() <= SATURATION_TOL,
            })
        })
        .collect()
}

/// Nine significant digits in the shortest form that round-trips at that precision.
pub fn format_sig9(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v.is_nan() { "NaN".into() } else if v == 0.0 { "0".into() } else { format!("{v}") };
    }
    let rounded: f64 = format!("{v:.8e}").parse().expect("valid float");
    let plain = format!("{rounded}");
    let exp = rounded.abs().log10().floor();
    if (-5.0..16.0).contains(&exp) {
        plain
    } else {
        format!("{rounded:e}")
    }
}

pub const SCAN_CSV_HEADER: &str = "param1,param2,discord,discord_ub,xi_bound,saturated";

pub fn write_scan_csv<W: Write>(rows: &[ScanRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{SCAN_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_sig9(r.param1),
            format_sig9(r.param2),
            format_sig9(r.discord),
            format_sig9(r.discord_ub),
            format_sig9(r.xi_bound),
            r.saturated
        )?;
    }
    Ok(())
}
