use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid signed permutation: {0}")]
    InvalidSignedPermutation(String),

    #[error("enumerating {class} at n = {n} exceeds the cap of {cap}")]
    ResourceLimit { class: String, n: usize, cap: usize },

    #[error("statistic `{stat}` is not defined under the {convention} convention")]
    UndefinedUnderConvention { stat: String, convention: String },

    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),

    #[error("statistic `{stat}` does not apply to {target}")]
    StatisticTarget { stat: String, target: String },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid Laguerre history: {0}")]
    InvalidHistory(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("permutation has a fixed point at {0}")]
    NotADerangement(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("series has constant term {0}, expected 1")]
    NotInvertible(String),

    #[error("polynomial is not expandable in the requested basis; residual {residual}")]
    NotGammaExpandable { residual: String },

    #[error("division is not exact: {0}")]
    InexactDivision(String),

    #[error("orbit has {0} members with the vanishing statistic, expected exactly one")]
    CanonicalNotUnique(usize),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
