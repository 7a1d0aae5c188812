use thiserror::Error;

pub type Result<T> = std::result::Result<T, DkpError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DkpError {
    /// g1² + g2² ≥ 1/4: the indicial exponent reaches 1/2 or turns complex.
    #[error("critical coupling: g1^2 + g2^2 = {coupling_sq} must be below 1/4")]
    CriticalCoupling { coupling_sq: f64 },

    #[error("free case: g1 = g2 = 0 has no inverse-square singularity")]
    FreeCase,

    /// Pure nonminimal coupling (g1 = 0) supports no bound states.
    #[error("no bound states: minimal coupling g1 vanishes")]
    NoBoundStates,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain error in {function}: {reason}")]
    Domain {
        function: &'static str,
        reason: String,
    },

    #[error("series did not converge after {terms} terms")]
    Convergence { terms: usize },

    #[error("quadrature tolerance not met: estimate {value} with error bound {est_error}")]
    ToleranceNotMet { value: f64, est_error: f64 },

    #[error("ODE step failure at x = {x}: {reason}")]
    OdeStep { x: f64, reason: String },

    #[error("no root in bracket: {reason}")]
    NoRootInBracket { reason: String },

    #[error("bracket exhausted for level {n}: {reason}")]
    BracketExhausted { n: usize, reason: String },
}

impl DkpError {
    /// Stable machine-readable code used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            DkpError::CriticalCoupling { .. } => "critical_coupling",
            DkpError::FreeCase => "free_case",
            DkpError::NoBoundStates => "no_bound_states",
            DkpError::InvalidParameter { .. } => "invalid_parameter",
            DkpError::Domain { .. } => "domain",
            DkpError::Convergence { .. } => "convergence",
            DkpError::ToleranceNotMet { .. } => "tolerance_not_met",
            DkpError::OdeStep { .. } => "ode_step",
            DkpError::NoRootInBracket { .. } => "no_root_in_bracket",
            DkpError::BracketExhausted { .. } => "bracket_exhausted",
        }
    }

    /// Physics outcomes (as opposed to numerical failures).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            DkpError::CriticalCoupling { .. }
                | DkpError::FreeCase
                | DkpError::NoBoundStates
                | DkpError::InvalidParameter { .. }
                | DkpError::Domain { .. }
        )
    }
}
