//! Uniform rejection sampling from the bounding box of a body.

use super::{ConvexBody, Shape, CONTAINS_TOL};
use crate::geom::Point2;
use crate::numeric::golden_min;
use rand::Rng;
use std::f64::consts::TAU;

const INDEX_SIZE: usize = 4096;

/// Exact membership test tuned for repeated queries.
#[derive(Debug, Clone)]
enum Membership {
    Disc { center: Point2, radius_sq: f64 },
    Exact,
    Index(BoundaryIndex),
}

/// Inscribed boundary polygon with per-sector tangent lines. Points inside
/// the polygon are accepted and points beyond a tangent line rejected without
/// further work; only the thin sliver between chord and arc falls back to a
/// local support-function minimization.
#[derive(Debug, Clone)]
struct BoundaryIndex {
    reference: Point2,
    inner_radius_sq: f64,
    polar: Vec<f64>,
    points: Vec<Point2>,
    normals: Vec<Point2>,
    supports: Vec<f64>,
}

impl BoundaryIndex {
    fn new(body: &ConvexBody) -> Self {
        let thetas: Vec<f64> = (0..=INDEX_SIZE)
            .map(|k| TAU * k as f64 / INDEX_SIZE as f64)
            .collect();
        let points: Vec<Point2> = thetas.iter().map(|&t| body.boundary_point(t)).collect();
        let mut reference = Point2::default();
        for p in &points[..INDEX_SIZE] {
            reference += *p;
        }
        reference = reference * (1.0 / INDEX_SIZE as f64);

        let mut polar = Vec::with_capacity(INDEX_SIZE + 1);
        let mut prev = (points[0] - reference).angle();
        polar.push(prev);
        for p in &points[1..] {
            let mut a = (*p - reference).angle();
            while a < prev {
                a += TAU;
            }
            polar.push(a);
            prev = a;
        }
        let mut inner = f64::INFINITY;
        for k in 0..INDEX_SIZE {
            let (a, b) = (points[k], points[k + 1]);
            let e = b - a;
            let dist = e.cross(reference - a) / e.norm();
            inner = inner.min(dist);
        }
        let inner = (inner * (1.0 - 1e-9)).max(0.0);
        Self {
            reference,
            inner_radius_sq: inner * inner,
            polar,
            normals: thetas.iter().map(|&t| Point2::from_angle(t)).collect(),
            supports: thetas.iter().map(|&t| body.support(t)).collect(),
            points,
        }
    }

    fn contains(&self, body: &ConvexBody, p: Point2) -> bool {
        let v = p - self.reference;
        if v.norm_sq() <= self.inner_radius_sq {
            return true;
        }
        let mut a = v.angle();
        while a < self.polar[0] {
            a += TAU;
        }
        while a >= self.polar[0] + TAU {
            a -= TAU;
        }
        let k = self.polar.partition_point(|&x| x <= a).clamp(1, INDEX_SIZE) - 1;
        let (x0, x1) = (self.points[k], self.points[k + 1]);
        if (x1 - x0).cross(p - x0) >= 0.0 {
            return true;
        }
        if p.dot(self.normals[k]) > self.supports[k] + CONTAINS_TOL
            || p.dot(self.normals[k + 1]) > self.supports[k + 1] + CONTAINS_TOL
        {
            return false;
        }
        let lo = TAU * k as f64 / INDEX_SIZE as f64;
        let hi = TAU * (k + 1) as f64 / INDEX_SIZE as f64;
        // the support gap is convex on this tiny normal interval
        let (_, gap) = golden_min(
            |t| body.support(t) - p.dot(Point2::from_angle(t)),
            lo,
            hi,
            1e-13,
        );
        gap >= -CONTAINS_TOL
    }
}

/// Rejection sampler over a body's bounding box.
#[derive(Debug, Clone)]
pub struct UniformSampler {
    body: ConvexBody,
    lo: Point2,
    span: Point2,
    membership: Membership,
}

impl UniformSampler {
    pub fn new(body: &ConvexBody) -> Self {
        let (lo, hi) = body.bounding_box();
        let membership = match body.shape() {
            Shape::Disc { radius } => Membership::Disc {
                center: body.offset(),
                radius_sq: radius * radius,
            },
            Shape::Ellipse { .. } => Membership::Exact,
            _ => Membership::Index(BoundaryIndex::new(body)),
        };
        Self {
            body: body.clone(),
            lo,
            span: hi - lo,
            membership,
        }
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    /// Closed membership, equivalent to [`ConvexBody::contains`].
    #[inline]
    pub fn contains(&self, p: Point2) -> bool {
        match &self.membership {
            Membership::Disc { center, radius_sq } => {
                let d = (p - *center).norm_sq();
                if (d - radius_sq).abs() > 1e-9 * radius_sq {
                    d < *radius_sq
                } else {
                    self.body.contains(p)
                }
            }
            Membership::Exact => self.body.contains(p),
            Membership::Index(index) => index.contains(&self.body, p),
        }
    }

    /// Appends `count` uniform points to `out`; returns the number of proposals drawn.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, count: usize, out: &mut Vec<Point2>) -> u64 {
        out.reserve(count);
        let mut proposals = 0u64;
        let mut accepted = 0;
        while accepted < count {
            let p = Point2::new(
                self.lo.x + self.span.x * rng.gen::<f64>(),
                self.lo.y + self.span.y * rng.gen::<f64>(),
            );
            proposals += 1;
            if self.contains(p) {
                out.push(p);
                accepted += 1;
            }
        }
        proposals
    }

    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2 {
        loop {
            let p = Point2::new(
                self.lo.x + self.span.x * rng.gen::<f64>(),
                self.lo.y + self.span.y * rng.gen::<f64>(),
            );
            if self.contains(p) {
                return p;
            }
        }
    }
}

/// `count` i.i.d. uniform points in `body`.
pub fn sample_uniform<R: Rng + ?Sized>(body: &ConvexBody, rng: &mut R, count: usize) -> Vec<Point2> {
    let sampler = UniformSampler::new(body);
    let mut out = Vec::with_capacity(count);
    sampler.sample_into(rng, count, &mut out);
    out
}
