use thiserror::Error;

/// Rejected geometric input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("rectangle width must be positive")]
    NonPositiveWidth,
    #[error("coordinate is not finite")]
    NonFinite,
    #[error("interval must satisfy lo < hi")]
    EmptyInterval,
    #[error("interval weight must be nonnegative")]
    NegativeWeight,
}

/// Failure of a solver or oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("point {point} is covered by no object")]
    Infeasible { point: usize },
    #[error("no 3-colorable cover exists")]
    NotThreeColorable,
    #[error("no cover found with ply budget up to {ell_max}")]
    BudgetExceeded { ell_max: usize },
    #[error("no general-position rotation found after {attempts} attempts")]
    DegenerateInstance { attempts: usize },
    #[error("instance has {size} objects, exact search is capped at {cap}")]
    InstanceTooLarge { size: usize, cap: usize },
    #[error("input is not sorted: {0}")]
    UnsortedInput(&'static str),
}
