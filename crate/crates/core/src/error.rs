use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Whether a failure stems from bad input or from a numerical routine giving up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("points coincide; no circle pair is defined")]
    DegeneratePair,
    #[error("points are {distance} apart, more than the diameter 2r = {}", 2.0 * .r)]
    PairTooFar { distance: f64, r: f64 },
    #[error("chord half-length {half_chord} exceeds radius {r}")]
    ChordTooLong { half_chord: f64, r: f64 },
    #[error("vertices are not in counter-clockwise order (signed area {signed_area})")]
    NotCounterClockwise { signed_area: f64 },
    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("empty point set")]
    EmptyInput,
    #[error("points need an enclosing circle of radius {enclosing_radius}, larger than r = {r}")]
    NotRFeasible { enclosing_radius: f64, r: f64 },
    #[error("disc intersection has no interior (enclosing radius {enclosing_radius}, r = {r})")]
    EmptyIntersection { enclosing_radius: f64, r: f64 },
    #[error("body spec parse error at position {position}: {message}")]
    BodyParse { position: usize, message: String },
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("cutting circle does not cut a cap at theta = {theta}, t = {t}")]
    NoIntersection { theta: f64, t: f64 },
    #[error("could not bracket a boundary crossing at theta = {theta}, t = {t}")]
    RootBracketFailure { theta: f64, t: f64 },
    #[error("point ({x}, {y}) lies outside the body")]
    OutsideBody { x: f64, y: f64 },
    #[error("Jacobian is singular: |u1 x u2| = {cross}")]
    SingularJacobian { cross: f64 },
    #[error("argument {value} outside the domain {domain}")]
    DomainError { value: f64, domain: &'static str },
    #[error("r-dual needs r > r_M = {r_max}, got r = {r}")]
    DualInfeasible { r: f64, r_max: f64 },
    #[error("quadrature did not converge (last difference {last_delta:e})")]
    QuadratureNoConvergence { last_delta: f64 },
    #[error("integrand singular: kappa - 1/r reaches {min_gap} with exponent {p}")]
    SingularIntegrand { p: f64, min_gap: f64 },
    #[error("{0}")]
    Infeasible(String),
    #[error("slope fit needs at least 4 positive points spanning two decades; {0}")]
    InsufficientPoints(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("intersection does not contain the body at theta = {theta} (excess {excess:e})")]
    ContainmentViolated { theta: f64, excess: f64 },
    #[error("csv: {0}")]
    Csv(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::QuadratureNoConvergence { .. }
            | Error::RootBracketFailure { .. }
            | Error::SingularJacobian { .. }
            | Error::SingularIntegrand { .. }
            | Error::ContainmentViolated { .. } => ErrorClass::Numeric,
            _ => ErrorClass::Validation,
        }
    }

    /// Short machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegeneratePair => "degenerate-pair",
            Error::PairTooFar { .. } => "pair-too-far",
            Error::ChordTooLong { .. } => "chord-too-long",
            Error::NotCounterClockwise { .. } => "not-ccw",
            Error::TooFewVertices { .. } => "too-few-vertices",
            Error::InvalidRadius(_) => "invalid-radius",
            Error::NonFinite => "non-finite",
            Error::EmptyInput => "empty-input",
            Error::NotRFeasible { .. } => "not-r-feasible",
            Error::EmptyIntersection { .. } => "empty-intersection",
            Error::BodyParse { .. } => "body-parse",
            Error::InvalidBody(_) => "invalid-body",
            Error::NoIntersection { .. } => "no-intersection",
            Error::RootBracketFailure { .. } => "root-bracket",
            Error::OutsideBody { .. } => "outside-body",
            Error::SingularJacobian { .. } => "singular-jacobian",
            Error::DomainError { .. } => "domain",
            Error::DualInfeasible { .. } => "dual-infeasible",
            Error::QuadratureNoConvergence { .. } => "quadrature",
            Error::SingularIntegrand { .. } => "singular-integrand",
            Error::Infeasible(_) => "infeasible",
            Error::InsufficientPoints(_) => "insufficient-points",
            Error::Config(_) => "config",
            Error::ContainmentViolated { .. } => "containment",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
