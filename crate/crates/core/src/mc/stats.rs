use super::Model;
use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// One-pass mean and variance (Welford), mergeable (Chan et al.).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / total as f64;
        self.mean += delta * w;
        self.m2 += other.m2 + delta * delta * self.count as f64 * w;
        self.count = total;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero with fewer than two observations.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.m2 / (self.count - 1) as f64).max(0.0)
        }
    }

    /// Standard error of the mean.
    pub fn se(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Estimates at one sample size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryStats {
    pub model: Model,
    pub body: String,
    pub r: f64,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub mean_f0: f64,
    pub se_f0: f64,
    pub var_f0: f64,
    pub mean_missed: f64,
    pub se_missed: f64,
    pub var_missed: f64,
    pub mean_perim_diff: Option<f64>,
    pub se_perim_diff: Option<f64>,
    pub var_perim_diff: Option<f64>,
    pub norm_mean_f0: f64,
    pub norm_mean_missed: f64,
    pub norm_var_f0: f64,
    pub norm_var_missed: f64,
    /// Circumscribed replications whose two vertex counts disagreed.
    #[serde(skip)]
    pub f0_mismatches: u64,
}

/// Accumulated observables of a batch of replications.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Observables {
    pub f0: RunningStats,
    pub missed: RunningStats,
    pub perim: RunningStats,
    pub mismatches: u64,
}

impl Observables {
    pub fn merge(&mut self, other: &Self) {
        self.f0.merge(&other.f0);
        self.missed.merge(&other.missed);
        self.perim.merge(&other.perim);
        self.mismatches += other.mismatches;
    }
}

impl SummaryStats {
    pub fn from_observables(
        model: Model,
        body: &str,
        r: f64,
        n: usize,
        seed: u64,
        obs: &Observables,
    ) -> Self {
        let (a, b, c, d) = model.normalization();
        let nf = n as f64;
        let perim = (model == Model::Circumscribed).then_some(obs.perim);
        Self {
            model,
            body: body.to_string(),
            r,
            n,
            reps: obs.f0.count() as usize,
            seed,
            mean_f0: obs.f0.mean(),
            se_f0: obs.f0.se(),
            var_f0: obs.f0.variance(),
            mean_missed: obs.missed.mean(),
            se_missed: obs.missed.se(),
            var_missed: obs.missed.variance(),
            mean_perim_diff: perim.map(|p| p.mean()),
            se_perim_diff: perim.map(|p| p.se()),
            var_perim_diff: perim.map(|p| p.variance()),
            norm_mean_f0: obs.f0.mean() * nf.powf(a),
            norm_mean_missed: obs.missed.mean() * nf.powf(b),
            norm_var_f0: obs.f0.variance() * nf.powf(c),
            norm_var_missed: obs.missed.variance() * nf.powf(d),
            f0_mismatches: obs.mismatches,
        }
    }
}

/// A numeric column of [`SummaryStats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatField {
    MeanF0,
    VarF0,
    MeanMissed,
    VarMissed,
    MeanPerimDiff,
    VarPerimDiff,
}

impl StatField {
    pub fn name(self) -> &'static str {
        match self {
            StatField::MeanF0 => "mean_f0",
            StatField::VarF0 => "var_f0",
            StatField::MeanMissed => "mean_missed",
            StatField::VarMissed => "var_missed",
            StatField::MeanPerimDiff => "mean_perim_diff",
            StatField::VarPerimDiff => "var_perim_diff",
        }
    }

    pub fn get(self, s: &SummaryStats) -> Option<f64> {
        match self {
            StatField::MeanF0 => Some(s.mean_f0),
            StatField::VarF0 => Some(s.var_f0),
            StatField::MeanMissed => Some(s.mean_missed),
            StatField::VarMissed => Some(s.var_missed),
            StatField::MeanPerimDiff => s.mean_perim_diff,
            StatField::VarPerimDiff => s.var_perim_diff,
        }
    }
}

impl fmt::Display for StatField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            StatField::MeanF0,
            StatField::VarF0,
            StatField::MeanMissed,
            StatField::VarMissed,
            StatField::MeanPerimDiff,
            StatField::VarPerimDiff,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| Error::Config(format!("unknown field '{s}'")))
    }
}

/// Least-squares fit of `log(value)` against `log(n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub field: String,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub n_min: usize,
    pub n_max: usize,
    pub points: usize,
}

/// Fits the growth exponent of `field` over the rows of `stats`.
pub fn variance_slope(stats: &[SummaryStats], field: StatField) -> Result<SlopeFit> {
    let pts: Vec<(f64, f64, usize)> = stats
        .iter()
        .filter_map(|s| field.get(s).map(|v| (s.n, v)))
        .filter(|&(n, v)| n > 0 && v > 0.0 && v.is_finite())
        .map(|(n, v)| ((n as f64).ln(), v.ln(), n))
        .collect();
    if pts.len() < 4 {
        return Err(Error::InsufficientPoints(format!(
            "{} usable rows for {field}",
            pts.len()
        )));
    }
    let n_min = pts.iter().map(|p| p.2).min().unwrap();
    let n_max = pts.iter().map(|p| p.2).max().unwrap();
    if (n_max as f64) < 100.0 * n_min as f64 {
        return Err(Error::InsufficientPoints(format!(
            "n spans only {n_min}..{n_max}"
        )));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(SlopeFit {
        field: field.name().to_string(),
        slope,
        intercept,
        residual,
        n_min,
        n_max,
        points: pts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn row(n: usize, var_f0: f64) -> SummaryStats {
        let mut obs = Observables::default();
        obs.f0.push(1.0);
        obs.f0.push(2.0);
        let mut s = SummaryStats::from_observables(Model::Inscribed, "disc:1", 1.0, n, 0, &obs);
        s.var_f0 = var_f0;
        s
    }

    #[test]
    fn two_sample_variance() {
        let mut s = RunningStats::default();
        s.push(3.0);
        s.push(7.0);
        assert_eq!(s.mean(), 5.0);
        assert_eq!(s.variance(), 8.0);
        assert_eq!(s.se(), 2.0);
    }

    proptest! {
        #[test]
        fn merge_matches_single_pass(xs in proptest::collection::vec(-1e3f64..1e3, 2..200), split in 0usize..200) {
            let split = split.min(xs.len());
            let mut whole = RunningStats::default();
            xs.iter().for_each(|&x| whole.push(x));
            let (mut a, mut b) = (RunningStats::default(), RunningStats::default());
            xs[..split].iter().for_each(|&x| a.push(x));
            xs[split..].iter().for_each(|&x| b.push(x));
            a.merge(&b);
            let mean = xs.iter().sum::<f64>() / xs.len() as f64;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
            prop_assert_eq!(a.count(), whole.count());
            prop_assert!((a.mean() - mean).abs() < 1e-9);
            prop_assert!((a.variance() - var).abs() < 1e-7 * var.max(1.0));
            prop_assert!((whole.variance() - var).abs() < 1e-7 * var.max(1.0));
        }
    }

    #[test]
    fn synthetic_slopes() {
        let ns = [1000usize, 3162, 10_000, 31_623, 100_000];
        let rows: Vec<SummaryStats> = ns.iter().map(|&n| row(n, 2.0 * (n as f64).cbrt())).collect();
        let fit = variance_slope(&rows, StatField::VarF0).unwrap();
        assert!((fit.slope - 1.0 / 3.0).abs() < 1e-12 && fit.residual < 1e-12);
        let rows: Vec<SummaryStats> = ns.iter().map(|&n| row(n, 0.7)).collect();
        assert!(variance_slope(&rows, StatField::VarF0).unwrap().slope.abs() < 1e-12);
    }

    #[test]
    fn slope_preconditions() {
        let rows: Vec<SummaryStats> = [10, 20, 40].iter().map(|&n| row(n, 1.0)).collect();
        assert!(matches!(variance_slope(&rows, StatField::VarF0), Err(Error::InsufficientPoints(_))));
        let rows: Vec<SummaryStats> = [10, 20, 40, 80].iter().map(|&n| row(n, 1.0)).collect();
        assert!(matches!(variance_slope(&rows, StatField::VarF0), Err(Error::InsufficientPoints(_))));
        let rows: Vec<SummaryStats> = [10, 100, 1000, 10_000].iter().map(|&n| row(n, 1.0)).collect();
        assert!(matches!(
            variance_slope(&rows, StatField::VarPerimDiff),
            Err(Error::InsufficientPoints(_))
        ));
    }

    #[test]
    fn field_names() {
        for f in ["mean_f0", "var_f0", "mean_missed", "var_missed", "mean_perim_diff", "var_perim_diff"] {
            assert_eq!(f.parse::<StatField>().unwrap().name(), f);
        }
        assert!("se_f0".parse::<StatField>().is_err());
    }
}
