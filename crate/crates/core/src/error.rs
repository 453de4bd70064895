use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {p}^{exponent} does not fit in 63 bits")]
    ModulusTooLarge { p: u64, exponent: u32 },
    #[error("not a unit")]
    NotAUnit,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid Frobenius lift: {0}")]
    InvalidLift(String),
    #[error("nonzerodivisor required")]
    ZeroDivisor,
    #[error("J does not become full: no power f^n with n <= {cap} lies in the pulled-back ideal")]
    NotFull { cap: u64 },
    #[error("residue {residue} out of range for level {level}")]
    ResidueOutOfRange { residue: u64, level: u32 },
    #[error("level does not separate roots")]
    LevelTooCoarse,
    #[error("max level {level} too small: p^(level+m) = {window} must exceed {required}")]
    LevelTooSmall {
        level: u32,
        window: u64,
        required: u64,
    },
    #[error("level window p^{0} overflows 64 bits")]
    WindowTooLarge(u32),
    #[error("{0} is not p-integral")]
    NotPIntegral(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
