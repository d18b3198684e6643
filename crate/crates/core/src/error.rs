use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("invalid wavenumber {k}: {reason}")]
    InvalidWavenumber { k: Complex64, reason: &'static str },

    #[error("asymptotic region too small: x_max = {x_max} does not exceed decay radius {decay_radius}")]
    AsymptoticRegionTooSmall { x_max: f64, decay_radius: f64 },

    #[error("ODE integration diverged near x = {x}")]
    IntegrationDiverged { x: f64 },

    #[error("Jost function vanishes on the real axis: |F({k})| = {modulus:e}")]
    JostZeroOnRealAxis { k: f64, modulus: f64 },

    #[error("invalid factorization constant a = {a}: {reason}")]
    InvalidFactorization { a: Complex64, reason: &'static str },

    #[error("transformation function has a node near x = {x} (grid index {index}, scaled |u| = {modulus:e})")]
    NodalTransformationFunction { x: f64, index: usize, modulus: f64 },

    #[error("wave sample does not live on the system grid")]
    GridMismatch,

    #[error("k = {k} is the spectral singularity (|k^2 - alpha| = {distance:e}); use the regularized kernel")]
    SpectralSingularityPoint { k: f64, distance: f64 },

    #[error("quadrature did not converge: estimated error {estimated_error:e} exceeds {tolerance:e}")]
    QuadratureNotConverged { estimated_error: f64, tolerance: f64 },

    #[error("operation requires the {expected} regime")]
    WrongRegime { expected: &'static str },

    #[error("pole on the integration contour: singular regime needs epsilon != 0")]
    PoleOnContour,

    #[error("Jost solution of the transformed Hamiltonian degenerates at k = {k} (asymptotic amplitude {amplitude:e})")]
    DegenerateJost { k: f64, amplitude: f64 },

    #[error("k = {k} is the singular point of the closed-form eigenfunction")]
    AtSingularPoint { k: f64 },

    #[error("Re(beta) = 0 lies on the branch boundary of the tabulated integrals")]
    OnBranchBoundary,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("table parse error at line {line}: {message}")]
    TableParse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
