use thiserror::Error;

/// Errors shared by all laboratory modules.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// `|x̄|² + a_d` is within the configured epsilon of zero, i.e. the input
    /// lies on the singularity of the transformation map.
    #[error("singular input: |x|^2 + a_d vanishes within epsilon")]
    SingularInput,

    #[error("non-finite result in numerical differentiation")]
    NonFiniteResult,

    /// Requested the canonical rotation but the degenerate region is empty.
    #[error("degenerate region absent: |a_bar|^2 + a_d <= 0")]
    DegenerateAbsent,

    #[error("no surface samples fall inside the direction cap")]
    EmptyDomain,

    #[error("origin lies inside or on the sphere; no tangent tube exists")]
    OriginInside,

    #[error("lattice scale q^(1/s) exceeds representable range")]
    ScaleOverflow,

    #[error("need at least {min} scales, got {got}")]
    InsufficientScales { min: usize, got: usize },

    #[error("problem size {size} exceeds budget {budget} (override via budget flag)")]
    SizeOverflow { size: u128, budget: u128 },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
