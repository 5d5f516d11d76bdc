use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be 1, 2 or 3, got {0}")]
    UnsupportedDimension(usize),

    #[error("points per axis must be even and at least 4, got {0}")]
    BadPointCount(usize),

    #[error("half width must be positive and finite, got {0}")]
    BadHalfWidth(f64),

    #[error("`{name}` must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{got} values do not fill a grid of {expected} points")]
    LengthMismatch { expected: usize, got: usize },

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("operation needs a one-dimensional grid, got dimension {0}")]
    NotOneDimensional(usize),

    #[error("operation needs an integrable function, got decay tag `{0}`")]
    NotIntegrable(&'static str),

    #[error("breakpoint index {index} is outside the lattice of {len} points")]
    BreakpointOutOfRange { index: usize, len: usize },

    #[error("interval support needs a <= b, got [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },

    #[error("support endpoint {0} is not a lattice node")]
    OffLatticeSupport(f64),

    #[error("spectrum has support {found}, operation needs {required}")]
    SupportMismatch {
        found: String,
        required: &'static str,
    },

    #[error("spectrum value at xi = {xi} lies outside the declared support")]
    SupportViolation { xi: f64 },

    #[error("point with imaginary part {y} is outside the {side} half-plane")]
    WrongHalfPlane { y: f64, side: &'static str },

    #[error("stencil of radius {reach} around y = {y} crosses the boundary")]
    StencilCrossesBoundary { y: f64, reach: f64 },

    #[error("invalid schedule: {0}")]
    BadSchedule(String),

    #[error("quadrature error estimate {estimate:e} exceeds budget {budget:e}")]
    QuadratureBudget { estimate: f64, budget: f64 },

    #[error("|f(iy)| vanishes at y = {0}; resample with jittered y")]
    VanishingSample(f64),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("lattice is empty")]
    EmptyLattice,
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}
