use thiserror::Error;

use crate::state::StateDiagnostics;

pub type Result<T, E = DiscordError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiscordError {
    #[error("matrix is not Hermitian (max |m_ij - conj(m_ji)| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("unsupported matrix shape: {0}")]
    BadShape(String),

    #[error("invalid probability distribution: {0}")]
    InvalidProbability(String),

    #[error("input is not a valid two-qubit state: {0}")]
    NotAState(String),

    #[error("state rejected by validation: {0}")]
    Rejected(StateDiagnostics),

    #[error("outcome {outcome} has vanishing probability {probability:e}")]
    ZeroProbabilityBranch { outcome: usize, probability: f64 },

    #[error("state is outside the requested closed-form class: {0}")]
    WrongClass(String),

    #[error("matrix is not a proper rotation: {0}")]
    InvalidRotation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl DiscordError {
    /// True for every variant that means "the input does not describe a
    /// physical state", as opposed to a malformed request.
    pub fn is_not_a_state(&self) -> bool {
        matches!(
            self,
            DiscordError::NotAState(_) | DiscordError::Rejected(_) | DiscordError::NotHermitian { .. }
        )
    }
}
