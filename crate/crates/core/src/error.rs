use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point {point:?} lies outside chart `{chart}`")]
    OutsideChart { chart: String, point: Vec<f64> },
    #[error("trajectory left chart `{chart}` at t = {time}")]
    TrajectoryLeftChart { chart: String, time: f64 },
    #[error("expected a form of degree {expected}, found {found:?}")]
    DegreeMismatch { expected: usize, found: Option<usize> },
    #[error("matrix is not skew-symmetric (asymmetry {0:.3e})")]
    NotSkew(f64),
    #[error("matrix is singular: {0}")]
    Singular(String),
    #[error("matrix does not square to -1 (residual {0:.3e})")]
    NotComplexStructure(f64),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("kernel has dimension {0}, expected 1")]
    KernelDimension(usize),
    #[error("assumption {which} violated (magnitude {magnitude:.3e}, witness {witness:?})")]
    AssumptionViolated {
        which: u8,
        magnitude: f64,
        witness: Vec<f64>,
    },
    #[error("subspace is not contained in the covectors (leak {0:.3e})")]
    KNotInCovectors(f64),
    #[error("connection form fails θ_i(X_j) = δ_ij (residual {0:.3e})")]
    NotConnection(f64),
    #[error("field is not invariant (residual {0:.3e})")]
    NotInvariant(f64),
    #[error("form is not closed (residual {0:.3e})")]
    NotClosed(f64),
    #[error("slice leaves the level set (residual {0:.3e})")]
    SliceOffLevel(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("jet order {requested} exceeds what the field supports ({supported})")]
    OrderUnsupported { requested: usize, supported: usize },
}

pub type Result<T> = std::result::Result<T, GeomError>;
