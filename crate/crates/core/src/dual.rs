//! The r-dual of a body and intersections of equal-radius discs.
//!
//! The r-dual `K*` is the set of centers `x` with `K` inside the radius-`r`
//! disc around `x`; its support function is `h*(theta) = r - h(theta + pi)`.
//! Intersecting radius-`r` discs centered at points of `K*` gives a
//! disc-polygon circumscribed about `K`, which is the r-dual of the r-hull of
//! the centers.

use crate::asymptotics::boundary_integral;
use crate::body::{ConvexBody, Shape, UniformSampler};
use crate::error::{Error, Result};
use crate::geom::{arc_polygon_area, arc_polygon_perimeter, pair_centers, Point2};
use crate::hull::{convex_hull, min_enclosing_circle, r_hull, DiscPolygon};
use rand::Rng;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Grid for the pointwise identities.
pub const IDENTITY_GRID: usize = 1024;
/// Boundary points of `K` checked against every sampled intersection.
pub const PROBE_POINTS: usize = 64;
const PROBE_TOL: f64 = 1e-9;
/// Shortest arc that counts as a boundary edge in [`count_arcs_direct`].
const ARC_EPS: f64 = 1e-12;

/// `r - h(theta + pi)` as a local shape, simplified where a closed form exists.
fn dual_shape(shape: &Shape, r: f64) -> Shape {
    match shape {
        Shape::Disc { radius } => Shape::Disc { radius: r - radius },
        Shape::Trig { a0, harmonics } => Shape::Trig {
            a0: r - a0,
            harmonics: harmonics
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| {
                    // shifting by pi flips odd harmonics; negation flips all
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    (sign * a, sign * b)
                })
                .collect(),
        },
        Shape::Dual { base, r: inner } if *inner == r => (**base).clone(),
        other => Shape::Dual { base: Box::new(other.clone()), r },
    }
}

/// The r-dual of a body together with the body it came from.
#[derive(Debug, Clone)]
pub struct DualBody {
    base: ConvexBody,
    r: f64,
    body: ConvexBody,
}

impl DualBody {
    pub fn base(&self) -> &ConvexBody {
        &self.base
    }

    /// The dual as a body in its own right.
    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn into_body(self) -> ConvexBody {
        self.body
    }
}

/// Builds `K*` for `r > r_M(K)`.
pub fn r_dual(body: &ConvexBody, r: f64) -> Result<DualBody> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidRadius(r));
    }
    let (_, r_max) = body.rolling_radii();
    if !(r > r_max) {
        return Err(Error::DualInfeasible { r, r_max });
    }
    let dual = ConvexBody::unchecked(
        dual_shape(body.shape(), r),
        body.rotation(),
        body.offset(),
        format!("dual[r={r}]({})", body.label()),
    );
    dual.validate(false)?;
    Ok(DualBody {
        base: body.clone(),
        r,
        body: dual,
    })
}

/// Residuals of the four duality identities and of the double dual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualIdentityReport {
    /// `max |h(u) + h*(-u) - r|`.
    pub support: f64,
    /// `max |rho(u) + rho*(-u) - r|`.
    pub curvature: f64,
    /// `|Per + Per* - 2 pi r|`.
    pub perimeter: f64,
    /// `|A* - (A - r Per + r^2 pi)|`.
    pub area: f64,
    /// `max |h** - h|` with the double dual composed from the dual's support.
    pub double_dual: f64,
}

impl DualIdentityReport {
    pub fn max_identity(&self) -> f64 {
        self.support.max(self.curvature).max(self.perimeter).max(self.area)
    }
}

pub fn dual_identity_report(body: &ConvexBody, r: f64) -> Result<DualIdentityReport> {
    let dual = r_dual(body, r)?;
    let star = dual.body();
    let mut support: f64 = 0.0;
    let mut curvature: f64 = 0.0;
    let mut double_dual: f64 = 0.0;
    for k in 0..IDENTITY_GRID {
        let theta = TAU * k as f64 / IDENTITY_GRID as f64;
        support = support.max((body.support(theta) + star.support(theta + PI) - r).abs());
        curvature = curvature
            .max((body.radius_of_curvature(theta) + star.radius_of_curvature(theta + PI) - r).abs());
        double_dual = double_dual.max((r - star.support(theta + PI) - body.support(theta)).abs());
    }
    let (area, per) = (body.area()?, body.perimeter()?);
    Ok(DualIdentityReport {
        support,
        curvature,
        perimeter: (per + star.perimeter()? - TAU * r).abs(),
        area: (star.area()? - (area - r * per + r * r * PI)).abs(),
        double_dual,
    })
}

/// One side of the constant-width power identity at exponent `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerIdentity {
    pub p: f64,
    /// `int (kappa - 1/r)^p ds`.
    pub lhs: f64,
    /// `r^{1-2p} int (kappa - 1/r)^{1-p} ds`.
    pub rhs: f64,
}

/// Width of the body if `h(theta) + h(theta + pi)` is constant to `tol`.
pub fn constant_width(body: &ConvexBody, tol: f64) -> Option<f64> {
    let w = body.support(0.0) + body.support(PI);
    (0..IDENTITY_GRID)
        .map(|k| TAU * k as f64 / IDENTITY_GRID as f64)
        .all(|t| (body.support(t) + body.support(t + PI) - w).abs() <= tol)
        .then_some(w)
}

/// The power identity for a body of constant width `r`, at each `p`.
pub fn power_identities(body: &ConvexBody, r: f64, ps: &[f64]) -> Result<Vec<PowerIdentity>> {
    ps.iter()
        .map(|&p| {
            Ok(PowerIdentity {
                p,
                lhs: boundary_integral(body, r, p)?,
                rhs: r.powf(1.0 - 2.0 * p) * boundary_integral(body, r, 1.0 - p)?,
            })
        })
        .collect()
}

/// Intersection of the radius-`r` discs around a set of centers.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscIntersection {
    r: f64,
    hull: DiscPolygon,
    vertices: Vec<Point2>,
}

impl DiscIntersection {
    pub fn r(&self) -> f64 {
        self.r
    }

    /// The r-hull of the centers; its vertices are the centers whose circles
    /// carry a boundary arc.
    pub fn hull(&self) -> &DiscPolygon {
        &self.hull
    }

    /// Boundary vertices in ccw order; empty when a single disc remains.
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Vertex count, with one disc counting as one.
    pub fn f0(&self) -> usize {
        self.hull.f0()
    }

    pub fn area(&self) -> Result<f64> {
        if self.vertices.is_empty() {
            return Ok(PI * self.r * self.r);
        }
        arc_polygon_area(&self.vertices, self.r)
    }

    pub fn perimeter(&self) -> Result<f64> {
        if self.vertices.is_empty() {
            return Ok(TAU * self.r);
        }
        arc_polygon_perimeter(&self.vertices, self.r)
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.hull
            .vertices()
            .iter()
            .all(|c| p.distance(*c) <= self.r + tol)
    }
}

/// Builds the intersection from the r-hull of the centers: for each hull edge
/// `w_j -> w_{j+1}` the intersection vertex is the supporting-disc center of
/// that edge, and the boundary arc before it is centered at `w_j`.
pub fn disc_intersection(centers: &[Point2], r: f64) -> Result<DiscIntersection> {
    let hull = r_hull(centers, r)?;
    if let Some(c) = min_enclosing_circle(hull.vertices()) {
        if c.radius >= r * (1.0 - 1e-12) && hull.f0() > 1 {
            return Err(Error::EmptyIntersection {
                enclosing_radius: c.radius,
                r,
            });
        }
    }
    let w = hull.vertices();
    let m = w.len();
    let vertices = if m < 2 {
        Vec::new()
    } else {
        (0..m)
            .map(|j| Ok(pair_centers(w[j], w[(j + 1) % m], r)?.0))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(DiscIntersection { r, hull, vertices })
}

/// Counts the circles that carry a boundary arc of the intersection, directly:
/// on the circle around `w` the directions inside the disc around `x` form an
/// arc of half-width `acos(|x - w| / 2r)` about the direction of `x - w`, and
/// the circle contributes when all those arcs share an arc of positive length.
pub fn count_arcs_direct(centers: &[Point2], r: f64) -> usize {
    let candidates = convex_hull(centers);
    if candidates.len() <= 1 {
        return candidates.len();
    }
    candidates
        .iter()
        .filter(|&&w| {
            let mut window: Option<(f64, f64)> = None;
            for &x in &candidates {
                let d = x - w;
                let dist = d.norm();
                if dist == 0.0 {
                    continue;
                }
                let half = (dist / (2.0 * r)).min(1.0).acos();
                let mut mid = d.angle();
                let (lo, hi) = match window {
                    None => (mid - half, mid + half),
                    Some((lo, hi)) => {
                        let centre = 0.5 * (lo + hi);
                        mid += TAU * ((centre - mid) / TAU).round();
                        (lo.max(mid - half), hi.min(mid + half))
                    }
                };
                if hi - lo <= ARC_EPS {
                    return false;
                }
                window = Some((lo, hi));
            }
            true
        })
        .count()
}

/// Observables of one circumscribed replication.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircumscribedObs {
    /// Vertex count of the intersection, which is that of the r-hull of the centers.
    pub f0: usize,
    /// Number of circles carrying a boundary arc, from the direct arc test.
    pub f0_direct: usize,
    /// `A(intersection) - A(K)`.
    pub area_diff: f64,
    /// `Per(intersection) - Per(K)`.
    pub perim_diff: f64,
}

/// Sampler for the circumscribed model, reusable across replications.
#[derive(Debug, Clone)]
pub struct CircumscribedModel {
    body: ConvexBody,
    r: f64,
    sampler: UniformSampler,
    area: f64,
    perimeter: f64,
    probes: Vec<(f64, Point2)>,
}

impl CircumscribedModel {
    pub fn new(body: &ConvexBody, r: f64) -> Result<Self> {
        let dual = r_dual(body, r)?;
        let probes = (0..PROBE_POINTS)
            .map(|k| {
                let theta = TAU * k as f64 / PROBE_POINTS as f64;
                (theta, body.boundary_point(theta))
            })
            .collect();
        Ok(Self {
            body: body.clone(),
            r,
            sampler: UniformSampler::new(dual.body()),
            area: body.area()?,
            perimeter: body.perimeter()?,
            probes,
        })
    }

    pub fn dual_sampler(&self) -> &UniformSampler {
        &self.sampler
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    /// Observables for a given set of centers in the dual.
    pub fn observe(&self, centers: &[Point2]) -> Result<(DiscIntersection, CircumscribedObs)> {
        let candidates = convex_hull(centers);
        let inter = disc_intersection(&candidates, self.r)?;
        for &(theta, x) in &self.probes {
            if !inter.contains(x, PROBE_TOL) {
                let excess = inter
                    .hull()
                    .vertices()
                    .iter()
                    .map(|c| x.distance(*c) - self.r)
                    .fold(f64::NEG_INFINITY, f64::max);
                return Err(Error::ContainmentViolated { theta, excess });
            }
        }
        let obs = CircumscribedObs {
            f0: inter.f0(),
            f0_direct: count_arcs_direct(&candidates, self.r),
            area_diff: inter.area()? - self.area,
            perim_diff: inter.perimeter()? - self.perimeter,
        };
        Ok((inter, obs))
    }

    /// Draws `n` centers uniformly from the dual into `buf` and observes them.
    pub fn sample_with<R: Rng + ?Sized>(
        &self,
        n: usize,
        rng: &mut R,
        buf: &mut Vec<Point2>,
    ) -> Result<(DiscIntersection, CircumscribedObs)> {
        buf.clear();
        self.sampler.sample_into(rng, n, buf);
        self.observe(buf)
    }
}

/// One replication of the circumscribed model with `n` centers.
pub fn circumscribed_sample<R: Rng + ?Sized>(
    body: &ConvexBody,
    r: f64,
    n: usize,
    rng: &mut R,
) -> Result<(DiscIntersection, CircumscribedObs)> {
    if n == 0 {
        return Err(Error::Config("circumscribed sample needs n >= 1".into()));
    }
    CircumscribedModel::new(body, r)?.sample_with(n, rng, &mut Vec::new())
}
