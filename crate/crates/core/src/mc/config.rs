use crate::body::{BodySpec, ConvexBody, Shape};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Which random disc-polygon is being studied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// r-hull of uniform points in a smooth body with `r > r_M`.
    Inscribed,
    /// r-hull of uniform points in the disc of radius `r` itself.
    Circle,
    /// Intersection of radius-`r` discs around uniform points of the r-dual.
    Circumscribed,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Inscribed => "inscribed",
            Model::Circle => "circle",
            Model::Circumscribed => "circumscribed",
        }
    }

    /// Exponents `(a, b, c, d)` so that the normalized columns are
    /// `mean_f0 n^a`, `mean_missed n^b`, `var_f0 n^c` and `var_missed n^d`.
    pub fn normalization(self) -> (f64, f64, f64, f64) {
        match self {
            Model::Circle => (0.0, 1.0, 0.0, 2.0),
            Model::Inscribed | Model::Circumscribed => (-1.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0, 5.0 / 3.0),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inscribed" => Ok(Model::Inscribed),
            "circle" => Ok(Model::Circle),
            "circumscribed" => Ok(Model::Circumscribed),
            other => Err(Error::Config(format!(
                "unknown model '{other}' (expected inscribed, circle or circumscribed)"
            ))),
        }
    }
}

/// Relative tolerance on `R = r` for the circle model.
const CIRCLE_TOL: f64 = 1e-12;
/// Margin on `r * kappa_m` for the circumscribed model.
const CIRCUMSCRIBED_MARGIN: f64 = 1e-6;

/// The circle model needs the body to be a disc of radius `r`.
pub fn require_circle(body: &ConvexBody, r: f64) -> Result<()> {
    match body.shape() {
        Shape::Disc { radius } if (radius - r).abs() <= CIRCLE_TOL * r => Ok(()),
        _ => Err(Error::Infeasible(format!(
            "circle model needs the body disc:R with R = r = {r}, got {}",
            body.label()
        ))),
    }
}

/// Checks the hypotheses of `model` for `(body, r)`.
pub fn check_feasible(body: &ConvexBody, r: f64, model: Model) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidRadius(r));
    }
    let (_, r_max) = body.rolling_radii();
    match model {
        Model::Circle => require_circle(body, r),
        Model::Inscribed if r > r_max => Ok(()),
        Model::Inscribed => Err(Error::Infeasible(format!(
            "inscribed model needs r > r_M, but r_M = {r_max:.6} >= r = {r}{}",
            if matches!(body.shape(), Shape::Disc { .. }) {
                " (use the circle model for a disc of radius r)"
            } else {
                ""
            }
        ))),
        Model::Circumscribed if r / r_max >= 1.0 + CIRCUMSCRIBED_MARGIN => Ok(()),
        Model::Circumscribed => Err(Error::Infeasible(format!(
            "circumscribed model needs r * kappa_m >= 1 + {CIRCUMSCRIBED_MARGIN}, but r_M = {r_max:.6} and r = {r}"
        ))),
    }
}

fn serialize_spec<S: Serializer>(spec: &BodySpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(spec.as_str())
}

/// A Monte Carlo plan.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    #[serde(serialize_with = "serialize_spec")]
    pub body: BodySpec,
    pub r: f64,
    pub model: Model,
    pub n_values: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    #[serde(skip)]
    pub workers: usize,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(body: BodySpec, r: f64, model: Model, n_values: Vec<usize>, replications: usize, seed: u64) -> Self {
        Self {
            body,
            r,
            model,
            n_values,
            replications,
            seed,
            workers: 1,
            output: None,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    /// Checks the plan and returns the body it describes.
    pub fn validate(&self) -> Result<ConvexBody> {
        if self.replications < 2 {
            return Err(Error::Config(format!(
                "replications must be at least 2, got {}",
                self.replications
            )));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::Config("n_values is empty".into()));
        }
        if self.n_values[0] == 0 {
            return Err(Error::Config("n_values must be positive".into()));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("n_values must be strictly increasing".into()));
        }
        let body = self.body.build()?;
        check_feasible(&body, self.r, self.model)?;
        Ok(body)
    }
}
