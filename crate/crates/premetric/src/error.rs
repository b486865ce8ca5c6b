use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid constitutive data: {0}")]
    InvalidConstitutive(String),

    #[error("invalid observer frame: {0}")]
    InvalidFrame(String),

    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),

    #[error("covector is characteristic: |G(k)| = {value:.3e} below tolerance {tol:.3e}")]
    CharacteristicCovector { value: f64, tol: f64 },

    #[error("singular gauge choice: {0}")]
    SingularGauge(String),

    #[error("gauge shift inconsistency: residual {0:.3e}")]
    GaugeShiftMismatch(f64),

    #[error("Fresnel tensor is not hyperbolic: {0}")]
    NotHyperbolic(String),

    #[error("invalid cone data: {0}")]
    InvalidCone(String),

    #[error("bicharacteristic start is not characteristic: |G(k0)| = {0:.3e}")]
    NotCharacteristic(f64),

    #[error("lattice field mismatch: {0}")]
    FieldMismatch(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("time window violation: {0}")]
    WindowViolation(String),

    #[error("three-form is not discretely closed: |dJ|/|J| = {0:.3e}")]
    NotClosed(f64),

    #[error("solution residual too large: {0:.3e}")]
    NotASolution(f64),

    #[error("zero-mode ambiguity: {0}")]
    ZeroMode(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
