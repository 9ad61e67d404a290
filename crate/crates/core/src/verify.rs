//! Seeded property sweeps over random states, for self-checks from the CLI.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closed_forms::{bell_diagonal_discord, random_bell_diagonal};
use crate::measurement::{conditional_entropy, conditional_entropy_direct, MeasurementDirection};
use crate::optimizer::{grid_refine_minimum, quantum_discord_with, stationary_vector, OptimizerOptions};
use crate::state::{random_state, BlochTriple, DensityMatrix, Su2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// h₄(w) − h₂(p₀) against the matrix route Σ p_k S(ρᴬ_k).
    Identity,
    /// Analytic angular gradient against central differences.
    Gradient,
    /// Numerical discord of Bell-diagonal states against the closed form.
    Oracle,
    /// discord ≤ discordUB and C ≥ classicalLB.
    Bounds,
    /// n̂ → −n̂ bitwise and local-unitary invariance of discord.
    Symmetry,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Identity, Suite::Gradient, Suite::Oracle, Suite::Bounds, Suite::Symmetry];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identity => "identity",
            Suite::Gradient => "gradient",
            Suite::Oracle => "oracle",
            Suite::Bounds => "bounds",
            Suite::Symmetry => "symmetry",
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Suite::Identity => 1e-10,
            Suite::Gradient | Suite::Oracle | Suite::Bounds | Suite::Symmetry => 1e-6,
        }
    }

    /// Default number of cases, sized to finish in seconds.
    pub fn default_cases(self) -> usize {
        match self {
            Suite::Identity => 1000,
            Suite::Gradient => 100,
            Suite::Oracle | Suite::Symmetry => 50,
            Suite::Bounds => 200,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}' (expected identity, gradient, oracle, bounds or symmetry)"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

struct Tally {
    cases: usize,
    failures: usize,
    max_deviation: f64,
    tolerance: f64,
}

impl Tally {
    fn new(tolerance: f64) -> Self {
        Self { cases: 0, failures: 0, max_deviation: 0.0, tolerance }
    }

    fn record(&mut self, deviation: f64) {
        self.cases += 1;
        self.max_deviation = self.max_deviation.max(deviation);
        if !(deviation <= self.tolerance) {
            self.failures += 1;
        }
    }

    fn report(self, suite: Suite) -> SuiteReport {
        SuiteReport {
            suite,
            cases: self.cases,
            failures: self.failures,
            max_deviation: self.max_deviation,
            tolerance: self.tolerance,
            passed: self.failures == 0,
        }
    }
}

fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> MeasurementDirection {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    MeasurementDirection::from_angles(z.acos(), phi)
}

fn full_rank(rng: &mut ChaCha8Rng) -> BlochTriple {
    random_state(None, rng).expect("Ginibre sample is a state").triple()
}

/// Runs `suite` on `n` cases drawn from a generator seeded with `seed`.
pub fn run_suite(suite: Suite, n: usize, seed: u64, opts: &OptimizerOptions) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new(suite.tolerance());
    match suite {
        Suite::Identity => {
            for i in 0..n {
                let rank = [None, Some(1), Some(2), Some(3)][i % 4];
                let t = random_state(rank, &mut rng).expect("state").triple();
                let mut worst: f64 = 0.0;
                for _ in 0..10 {
                    let d = random_direction(&mut rng);
                    worst = worst.max((conditional_entropy(&t, &d) - conditional_entropy_direct(&t, &d)).abs());
                }
                tally.record(worst);
            }
        }
        Suite::Gradient => {
            let h = 1e-6;
            while tally.cases < n {
                let t = full_rank(&mut rng);
                let theta = rng.random_range(0.1..std::f64::consts::PI - 0.1);
                let phi = rng.random_range(0.0..std::f64::consts::TAU);
                let Some(d) = stationary_vector(&t, &MeasurementDirection::from_angles(theta, phi)) else { continue };
                let s = |a: f64, b: f64| conditional_entropy(&t, &MeasurementDirection::from_angles(a, b));
                let ft = (s(theta + h, phi) - s(theta - h, phi)) / (2.0 * h);
                let fp = (s(theta, phi + h) - s(theta, phi - h)) / (2.0 * h);
                let scale = 1.0 + d.grad_theta.abs().max(d.grad_phi.abs());
                tally.record((d.grad_theta - ft).abs().max((d.grad_phi - fp).abs()) / scale);
            }
        }
        Suite::Oracle => {
            for _ in 0..n {
                let t = random_bell_diagonal(&mut rng);
                let exact = bell_diagonal_discord(t.t[(0, 0)], t.t[(1, 1)], t.t[(2, 2)]).expect("in tetrahedron");
                let m = grid_refine_minimum(&t, opts);
                tally.record((m.value - exact.min_conditional_entropy).abs());
            }
        }
        Suite::Bounds => {
            for _ in 0..n {
                let rho = DensityMatrix::from_triple(&full_rank(&mut rng)).expect("state");
                let r = quantum_discord_with(&rho, opts);
                let over = (r.discord - r.bounds.discord_ub).max(r.bounds.classical_lb - r.classical_correlation);
                tally.record(over.max(0.0));
            }
        }
        Suite::Symmetry => {
            for _ in 0..n {
                let rho = random_state(None, &mut rng).expect("state");
                let t = rho.triple();
                let d = random_direction(&mut rng);
                let flip = conditional_entropy(&t, &d).to_bits() != conditional_entropy(&t, &-d).to_bits();
                let (u1, u2) = (Su2::random(&mut rng), Su2::random(&mut rng));
                let moved = rho.conjugate_local(&u1, &u2).expect("unitary image of a state");
                let a = quantum_discord_with(&rho, opts).discord;
                let b = quantum_discord_with(&moved, opts).discord;
                tally.record(if flip { f64::INFINITY } else { (a - b).abs() });
            }
        }
    }
    tally.report(suite)
}
