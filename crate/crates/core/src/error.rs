use thiserror::Error;

/// Tolerance for exact algebraic identities (normalization, orthogonality, unbiasedness).
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Tolerance for results of iterative procedures.
pub const ITERATIVE_TOL: f64 = 1e-10;
/// Tolerance for attack-parameter constraints (unitarity, mixedness pattern, column norm).
pub const ATTACK_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {0} out of range (expected 0..=2)")]
    IndexOutOfRange(usize),

    #[error("non-finite value in {0}")]
    NotFinite(&'static str),

    #[error("{what} is not normalized: squared norm {norm_sq}")]
    NotNormalized { what: &'static str, norm_sq: f64 },

    #[error("operator is not unitary: max residual {0:.3e}")]
    NotUnitary(f64),

    #[error("operator violates the complete-mixedness modulus pattern: max residual {0:.3e}")]
    MixednessViolated(f64),

    #[error("matrix is not Hermitian: max residual {0:.3e}")]
    NotHermitian(f64),

    #[error("cubic has complex roots (discriminant {0:.3e}); parameters are not physical")]
    ComplexRoots(f64),

    #[error("no circulant unitary realizes the column moduli ({0:.6}, {1:.6}, {2:.6})")]
    InfeasibleCirculant(f64, f64, f64),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("eigenvalue {0:.3e} outside [0, 1]; inputs are inconsistent")]
    EigenvalueOutOfRange(f64),

    #[error("{what} = {value} outside its allowed range {range}")]
    OutOfRange { what: &'static str, value: f64, range: &'static str },

    #[error("invalid frequency table: {0}")]
    InvalidFrequencies(String),

    #[error("invalid basis weights: {0}")]
    InvalidWeights(String),

    #[error("unknown basis label {0:?}")]
    UnknownBasis(String),

    #[error("undetectable attack: detection probability is zero")]
    Undetectable,

    #[error("invalid attack specification: {0}")]
    InvalidAttack(String),

    #[error("invalid protocol configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of a numerical procedure rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ComplexRoots(_)
                | Error::InfeasibleCirculant(..)
                | Error::NoConvergence(_)
                | Error::EigenvalueOutOfRange(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
