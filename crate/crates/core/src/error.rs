use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("curves too close: minimum distance {d_min:.3e} is below {threshold:.3e}")]
    DistanceTooSmall { d_min: f64, threshold: f64 },

    #[error("no generic projection direction found after {attempts} attempts")]
    DegenerateProjection { attempts: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("linking engines disagree: gauss integral {gauss:.6e}, crossing count {crossing}")]
    OracleDisagreement { gauss: f64, crossing: f64 },

    #[error("moment mismatch: expected integral {expected:.6e}, found {found:.6e}")]
    MomentMismatch { expected: f64, found: f64 },

    #[error("separation margin {margin:.4e} does not exceed mollifier reach {reach:.4e}")]
    SeparationMargin { margin: f64, reach: f64 },

    #[error("result depends on the chosen surface: spread {spread:.3e} exceeds {tolerance:.3e}")]
    SurfaceDependence { spread: f64, tolerance: f64 },

    #[error("grid unresolved: value {value:.6e}, refinement difference {estimate:.3e}")]
    UnresolvedGrid { value: f64, estimate: f64 },

    #[error("integrand does not decay: relative tail {tail:.3e} at the radial cutoff")]
    NonDecaying { tail: f64 },

    #[error("tensor is not antisymmetric (defect {defect:.3e})")]
    NotAntisymmetric { defect: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
