use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("{0} is not abelian")]
    NotAbelian(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operands belong to different structures")]
    Mismatch,

    #[error("{0}")]
    Precondition(String),

    #[error("budget exceeded for {what}: need {needed}, budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("{0} out of range")]
    OutOfRange(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
