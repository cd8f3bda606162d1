use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {0} is not in the open upper half-plane")]
    NotInUpperHalfPlane(Complex64),
    #[error("point {0} is an endpoint of the interval")]
    EndpointSingularity(f64),
    #[error("quadrature did not reach tolerance {tol:e} (error estimate {estimate:e})")]
    QuadratureFailure { estimate: f64, tol: f64 },
    #[error("the power map is undefined at the origin")]
    ZeroPoint,
    #[error("point {0} is not interior to the sector")]
    PointNotInSector(Complex64),
    #[error("invalid interval [{0}, {1}]")]
    InvalidInterval(f64, f64),
    #[error("invalid sector ({0}, {1})")]
    InvalidSector(f64, f64),
    #[error("invalid ray system: {0}")]
    InvalidRaySystem(String),
    #[error("invalid boundary segment: {0}")]
    InvalidSegment(String),
    #[error("invalid charge: {0}")]
    InvalidCharge(String),
    #[error("invalid step function: {0}")]
    InvalidStepFunction(String),
    #[error("invalid genus schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("charge has an atom off the real axis at {0}")]
    SupportOffAxis(Complex64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("gauge value {g} does not exceed radius {r}")]
    BadGauge { g: f64, r: f64 },
    #[error("charge has an atom at {0} on the interval")]
    SupportTouchesInterval(f64),
    #[error("kernel evaluated at coincident points {0}")]
    CoincidentPoints(Complex64),
    #[error("kernel of genus q >= 0 needs a nonzero center")]
    ZeroCenter,
    #[error("kernel derivative is singular at t = {0}")]
    Singularity(f64),
    #[error("atom at {0} lies on an integration circle")]
    AtomOnCircle(Complex64),
    #[error("tail bound {bound:e} exceeds tolerance {tol:e}")]
    TailTooLarge { bound: f64, tol: f64 },
    #[error("principal value did not stabilize (last change {0:e})")]
    SingularityUnresolved(f64),
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::QuadratureFailure { .. }
                | Error::TailTooLarge { .. }
                | Error::SingularityUnresolved(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
