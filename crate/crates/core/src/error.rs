use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime {0} is too large (must be below 2^31)")]
    PrimeTooLarge(u64),

    #[error("entries of different characteristics mixed in one computation")]
    MixedCharacteristic,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial is not weight-homogeneous")]
    NotHomogeneous,

    #[error("rows are linearly dependent over Q")]
    DependentRows,

    #[error("zero vector is not allowed here")]
    ZeroVector,

    #[error("generator {index} is not invertible over Z (determinant {det})")]
    NonInvertibleGenerator { index: usize, det: String },

    #[error("group closure exceeded the maximum order {max_order}")]
    OrderExceeded { max_order: usize },

    #[error("integer overflow while multiplying group elements")]
    Overflow,

    #[error("characteristic {p} divides the group order {order}; only non-modular characteristics are supported")]
    ModularCharacteristic { p: u64, order: usize },

    #[error("fixed lattice does not reduce to the fixed space mod {p}: lattice rank {lattice_rank}, F_p fixed dimension {fp_dim}")]
    ModPVerification {
        p: u64,
        lattice_rank: usize,
        fp_dim: usize,
    },

    #[error("fixed lattice has rank 0; only the trivial torus fixes it")]
    RankZeroFixedLattice,

    #[error("no representative point of height <= {height} has stabilizer exactly this subgroup; try a larger height bound, a larger prime, or characteristic 0")]
    RepresentativeNotFound { height: u32 },

    #[error("invariant dimension at weight {weight} is {found}, but the Molien coefficient is {expected}")]
    MolienMismatch {
        weight: u32,
        expected: String,
        found: usize,
    },

    #[error("classifier and Jacobian oracle disagree at {point}: classifier says {classifier}, oracle says {oracle}")]
    VerdictDisagreement {
        point: String,
        classifier: String,
        oracle: String,
    },

    #[error("witness module requested for a smooth stratum")]
    SmoothStratum,

    #[error("invalid group description: {0}")]
    Parse(String),

    #[error("{0}")]
    Internal(String),
}
