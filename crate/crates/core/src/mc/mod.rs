//! Seeded parallel Monte Carlo over the inscribed, circle and circumscribed
//! models.

mod config;
pub mod rng;
mod stats;
pub mod table;

pub use config::{check_feasible, require_circle, ExperimentConfig, Model};
pub use stats::{variance_slope, Observables, RunningStats, SlopeFit, StatField, SummaryStats};
pub use table::{read_csv, to_csv_string, write_csv, HEADER};

use crate::body::{ConvexBody, UniformSampler};
use crate::dual::CircumscribedModel;
use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::hull::r_hull;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Replications per work unit. Statistics are accumulated inside a block in
/// replication order and blocks are merged in block order, so the output is
/// identical for any worker count.
pub const BLOCK: usize = 32;

/// Per-replication sampler for one model.
enum Engine {
    Hull {
        sampler: UniformSampler,
        area: f64,
    },
    Intersection(CircumscribedModel),
}

/// One replication's `(f0, missed, perimeter difference, f0 mismatch)`.
type Replication = (f64, f64, f64, bool);

impl Engine {
    fn new(body: &ConvexBody, r: f64, model: Model) -> Result<Self> {
        Ok(match model {
            Model::Inscribed | Model::Circle => Engine::Hull {
                sampler: UniformSampler::new(body),
                area: body.area()?,
            },
            Model::Circumscribed => Engine::Intersection(CircumscribedModel::new(body, r)?),
        })
    }

    fn replicate<R: Rng + ?Sized>(
        &self,
        n: usize,
        r: f64,
        rng: &mut R,
        buf: &mut Vec<Point2>,
    ) -> Result<Replication> {
        match self {
            Engine::Hull { sampler, area } => {
                buf.clear();
                sampler.sample_into(rng, n, buf);
                let hull = r_hull(buf, r)?;
                Ok((hull.f0() as f64, area - hull.area()?, 0.0, false))
            }
            Engine::Intersection(model) => {
                let (_, obs) = model.sample_with(n, rng, buf)?;
                Ok((obs.f0 as f64, obs.area_diff, obs.perim_diff, obs.f0 != obs.f0_direct))
            }
        }
    }
}

fn run_block(
    engine: &Engine,
    config: &ExperimentConfig,
    n: usize,
    block: usize,
    buf: &mut Vec<Point2>,
) -> Result<Observables> {
    let mut obs = Observables::default();
    let start = block * BLOCK;
    let end = (start + BLOCK).min(config.replications);
    for rep in start..end {
        let mut rng = rng::replication_rng(config.seed, n as u64, rep as u64);
        let (f0, missed, perim, mismatch) = engine.replicate(n, config.r, &mut rng, buf)?;
        obs.f0.push(f0);
        obs.missed.push(missed);
        obs.perim.push(perim);
        obs.mismatches += mismatch as u64;
    }
    Ok(obs)
}

/// Runs every sample size of `config`, returning one row per `n`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<SummaryStats>> {
    let body = config.validate()?;
    let engine = Engine::new(&body, config.r, config.model)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let blocks = config.replications.div_ceil(BLOCK);
    let mut rows = Vec::with_capacity(config.n_values.len());
    for &n in &config.n_values {
        let parts: Vec<Observables> = pool.install(|| {
            (0..blocks)
                .into_par_iter()
                .map_init(
                    || Vec::with_capacity(n),
                    |buf, b| run_block(&engine, config, n, b, buf),
                )
                .collect::<Result<Vec<_>>>()
        })?;
        let mut total = Observables::default();
        for p in &parts {
            total.merge(p);
        }
        rows.push(SummaryStats::from_observables(
            config.model,
            config.body.as_str(),
            config.r,
            n,
            config.seed,
            &total,
        ));
    }
    Ok(rows)
}

/// Reproducibility block embedded in every output.
pub fn metadata(config: &ExperimentConfig) -> serde_json::Map<String, serde_json::Value> {
    let mut m = serde_json::Map::new();
    m.insert("tool".into(), "spindle".into());
    m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    m.insert(
        "config".into(),
        serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
    );
    m.insert("seed".into(), config.seed.into());
    m
}

/// One checkpoint of a nested sample path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LlnPoint {
    pub n: usize,
    pub f0: usize,
    pub missed: f64,
    /// `f0 n^{-1/3}`, or `f0` itself for the circle model.
    pub norm_f0: f64,
    /// `missed n^{2/3}`, or `missed n` for the circle model.
    pub norm_missed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LlnTrajectory {
    pub model: Model,
    pub points: Vec<LlnPoint>,
}

/// Relative slack allowing `r = r_M` (the circle case) on a nested path.
const LLN_SLACK: f64 = 1e-12;

/// Grows one sample path to `n_max` points and recomputes the r-hull at
/// every power of two (and at `n_max`). A disc of radius `r` uses the
/// circle normalization, everything else the smooth-body one.
pub fn lln_trajectory(body: &ConvexBody, r: f64, seed: u64, n_max: usize) -> Result<LlnTrajectory> {
    if n_max == 0 {
        return Err(Error::Config("n_max must be positive".into()));
    }
    let model = if require_circle(body, r).is_ok() {
        Model::Circle
    } else {
        let (_, r_max) = body.rolling_radii();
        if r < r_max * (1.0 - LLN_SLACK) {
            return Err(Error::Infeasible(format!(
                "nested path needs r >= r_M, but r_M = {r_max:.6} > r = {r}"
            )));
        }
        Model::Inscribed
    };
    let (a, b, _, _) = model.normalization();
    let sampler = UniformSampler::new(body);
    let area = body.area()?;
    let mut rng = rng::lln_rng(seed);
    let mut pts = Vec::with_capacity(n_max);
    let mut points = Vec::new();
    let mut checkpoint = 1;
    while pts.len() < n_max {
        let target = checkpoint.min(n_max);
        sampler.sample_into(&mut rng, target - pts.len(), &mut pts);
        let hull = r_hull(&pts, r)?;
        let missed = area - hull.area()?;
        let nf = target as f64;
        points.push(LlnPoint {
            n: target,
            f0: hull.f0(),
            missed,
            norm_f0: hull.f0() as f64 * nf.powf(a),
            norm_missed: missed * nf.powf(b),
        });
        checkpoint *= 2;
    }
    Ok(LlnTrajectory { model, points })
}
