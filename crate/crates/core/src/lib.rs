//! Quantum discord of arbitrary two-qubit states.
//!
//! The conditional entropy of qubit A after a projective measurement on
//! qubit B along n̂ is evaluated as the difference of two Shannon entropies,
//! h₄(w) − h₂(p₀), and minimized over n̂ either in closed form (Bell-diagonal
//! states and the Tᵗx = 0, y = 0 family) or numerically (grid search plus
//! stationary-point refinement). Upper bounds on discord come from
//! restricting n̂ to the complement of span{Tᵗx, y}.

pub mod error;
pub mod linalg;
pub mod entropy;
pub mod state;
pub mod measurement;
pub mod closed_forms;
pub mod optimizer;
pub mod bounds;
pub mod verify;

pub use error::{DiscordError, Result};

pub use bounds::{theorem1_bounds, BoundReport};
pub use measurement::{conditional_entropy, MeasurementDirection};
pub use optimizer::{quantum_discord, quantum_discord_with, DiscordReport, OptimizerOptions};
pub use state::{BlochTriple, DensityMatrix};
