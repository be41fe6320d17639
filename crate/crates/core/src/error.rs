use thiserror::Error;

use crate::classical::RegularityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("phi and psi cannot both be the zero polynomial")]
    ZeroPair,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pair is not admissible: d_{index} = 0")]
    NotAdmissible { index: usize },

    #[error("pair is not regular up to n = {}", .0.regular_up_to)]
    NotRegular(Box<RegularityReport>),

    #[error("insufficient moments: need degree {needed}, functional is valid up to {available}")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("functionals are expressed in different frames")]
    FrameMismatch,

    #[error("the two evaluation routes disagree at moment index {index}")]
    RouteMismatch { index: usize },

    #[error("cannot parse rational {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
