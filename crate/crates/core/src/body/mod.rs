//! Smooth convex discs described by their support function.
//!
//! A body is parametrized by the outer-normal angle `theta`. With
//! `u = (cos theta, sin theta)` the boundary point is `x = h u + h' u_perp`
//! and the radius of curvature there is `rho = h + h''`, so that boundary
//! integrals become `ds = rho dtheta`.

mod sample;
mod spec;

pub use sample::{sample_uniform, UniformSampler};
pub use spec::BodySpec;

use crate::asymptotics::quadrature::integrate;
use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::numeric::golden_min;
use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

/// Grid used to validate curvature and locate extremal radii.
pub const CURVATURE_GRID: usize = 4096;
/// Grid used by the support-function containment test.
pub const CONTAINS_GRID: usize = 1024;
/// Support-gap tolerance for closed containment.
pub const CONTAINS_TOL: f64 = 1e-12;
const QUAD_TOL: f64 = 1e-10;
const REFINE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodyKind {
    Disc,
    Ellipse,
    TrigPoly,
    Dual,
}

/// Support function in body-local coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Disc { radius: f64 },
    Ellipse { a: f64, b: f64 },
    /// `a0 + sum_k (a_k cos k theta + b_k sin k theta)`, harmonics from `k = 1`.
    Trig { a0: f64, harmonics: Vec<(f64, f64)> },
    /// `r - h_base(theta + pi)`.
    Dual { base: Box<Shape>, r: f64 },
}

impl Shape {
    /// `(h, h', h'')` at `theta`.
    pub fn support3(&self, theta: f64) -> (f64, f64, f64) {
        match self {
            Shape::Disc { radius } => (*radius, 0.0, 0.0),
            Shape::Ellipse { a, b } => {
                let (s, c) = theta.sin_cos();
                let (a2, b2) = (a * a, b * b);
                let q = a2 * c * c + b2 * s * s;
                let h = q.sqrt();
                let dq = 2.0 * (b2 - a2) * s * c;
                let ddq = 2.0 * (b2 - a2) * (c * c - s * s);
                let dh = dq / (2.0 * h);
                let ddh = ddq / (2.0 * h) - dq * dq / (4.0 * h * q);
                (h, dh, ddh)
            }
            Shape::Trig { a0, harmonics } => {
                let (mut h, mut dh, mut ddh) = (*a0, 0.0, 0.0);
                for (i, (ak, bk)) in harmonics.iter().enumerate() {
                    let k = (i + 1) as f64;
                    let (s, c) = (k * theta).sin_cos();
                    let v = ak * c + bk * s;
                    h += v;
                    dh += k * (bk * c - ak * s);
                    ddh -= k * k * v;
                }
                (h, dh, ddh)
            }
            Shape::Dual { base, r } => {
                let (h, dh, ddh) = base.support3(theta + PI);
                (r - h, -dh, -ddh)
            }
        }
    }

    fn kind(&self) -> BodyKind {
        match self {
            Shape::Disc { .. } => BodyKind::Disc,
            Shape::Ellipse { .. } => BodyKind::Ellipse,
            Shape::Trig { .. } => BodyKind::TrigPoly,
            Shape::Dual { .. } => BodyKind::Dual,
        }
    }
}

/// A convex disc with `C^2_+` boundary: a local shape, rotated by `rotation`
/// and translated by `offset`.
#[derive(Debug, Clone)]
pub struct ConvexBody {
    shape: Shape,
    rotation: f64,
    offset: Point2,
    label: String,
    measures: OnceLock<(f64, f64)>,
}

impl PartialEq for ConvexBody {
    fn eq(&self, o: &Self) -> bool {
        self.shape == o.shape && self.rotation == o.rotation && self.offset == o.offset
    }
}

impl ConvexBody {
    /// Builds a body and checks that the radius of curvature is positive and
    /// that the origin is interior (`h > 0`) on the validation grid.
    pub fn new(shape: Shape) -> Result<Self> {
        let label = describe(&shape);
        let body = Self::unchecked(shape, 0.0, Point2::default(), label);
        body.validate(true)?;
        Ok(body)
    }

    pub(crate) fn unchecked(shape: Shape, rotation: f64, offset: Point2, label: String) -> Self {
        Self {
            shape,
            rotation,
            offset,
            label,
            measures: OnceLock::new(),
        }
    }

    pub fn disc(radius: f64) -> Result<Self> {
        Self::new(Shape::Disc { radius })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Self::new(Shape::Ellipse { a, b })
    }

    /// Constant-width body `h = w/2 + b3 cos 3 theta`.
    pub fn constant_width(width: f64, b3: f64) -> Result<Self> {
        let mut body = Self::new(Shape::Trig {
            a0: 0.5 * width,
            harmonics: vec![(0.0, 0.0), (0.0, 0.0), (b3, 0.0)],
        })?;
        body.label = format!("cw:{width},{b3}");
        Ok(body)
    }

    pub(crate) fn validate(&self, require_origin: bool) -> Result<()> {
        for k in 0..CURVATURE_GRID {
            let theta = TAU * k as f64 / CURVATURE_GRID as f64;
            let (h, _, ddh) = self.support3(theta);
            let rho = h + ddh;
            if !(rho > 0.0) || !rho.is_finite() {
                return Err(Error::InvalidBody(format!(
                    "boundary is not C^2_+: radius of curvature {rho} <= 0 at theta = {theta:.6}"
                )));
            }
            if require_origin && !(h > 0.0) {
                return Err(Error::InvalidBody(format!(
                    "origin is not interior: support {h} <= 0 at theta = {theta:.6}"
                )));
            }
        }
        Ok(())
    }

    /// The same body rotated counter-clockwise by `angle` about the origin.
    pub fn rotated(&self, angle: f64) -> Self {
        Self::unchecked(
            self.shape.clone(),
            self.rotation + angle,
            self.offset.rotate(angle),
            format!("{} rotated {angle}", self.label),
        )
    }

    pub fn translated(&self, by: Point2) -> Self {
        Self::unchecked(
            self.shape.clone(),
            self.rotation,
            self.offset + by,
            format!("{} shifted ({}, {})", self.label, by.x, by.y),
        )
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn offset(&self) -> Point2 {
        self.offset
    }

    pub fn kind(&self) -> BodyKind {
        self.shape.kind()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub(crate) fn with_label(mut self, label: String) -> Self {
        self.label = label;
        self
    }

    /// `(h, h', h'')` at the outer-normal angle `theta`.
    #[inline]
    pub fn support3(&self, theta: f64) -> (f64, f64, f64) {
        let (s, ds, dds) = self.shape.support3(theta - self.rotation);
        if self.offset == Point2::default() {
            return (s, ds, dds);
        }
        let u = Point2::from_angle(theta);
        let shift = self.offset.dot(u);
        (s + shift, ds + self.offset.dot(u.perp()), dds - shift)
    }

    #[inline]
    pub fn support(&self, theta: f64) -> f64 {
        self.support3(theta).0
    }

    pub fn radius_of_curvature(&self, theta: f64) -> f64 {
        let (h, _, ddh) = self.support3(theta);
        h + ddh
    }

    pub fn curvature(&self, theta: f64) -> f64 {
        1.0 / self.radius_of_curvature(theta)
    }

    /// Boundary point whose outer normal has angle `theta`.
    #[inline]
    pub fn boundary_point(&self, theta: f64) -> Point2 {
        let (h, dh, _) = self.support3(theta);
        let u = Point2::from_angle(theta);
        u * h + u.perp() * dh
    }

    /// `(r_m, r_M)`: the smallest and largest radius of curvature.
    pub fn rolling_radii(&self) -> (f64, f64) {
        let step = TAU / CURVATURE_GRID as f64;
        let mut kmin = 0;
        let mut kmax = 0;
        let mut vmin = f64::INFINITY;
        let mut vmax = f64::NEG_INFINITY;
        for k in 0..CURVATURE_GRID {
            let rho = self.radius_of_curvature(k as f64 * step);
            if rho < vmin {
                vmin = rho;
                kmin = k;
            }
            if rho > vmax {
                vmax = rho;
                kmax = k;
            }
        }
        let around = |k: usize| (k as f64 * step - step, k as f64 * step + step);
        let (lo, hi) = around(kmin);
        let (_, rmin) = golden_min(|t| self.radius_of_curvature(t), lo, hi, REFINE_TOL);
        let (lo, hi) = around(kmax);
        let (_, rmax) = golden_min(|t| -self.radius_of_curvature(t), lo, hi, REFINE_TOL);
        (rmin.min(vmin), (-rmax).max(vmax))
    }

    fn measures(&self) -> Result<(f64, f64)> {
        if let Some(m) = self.measures.get() {
            return Ok(*m);
        }
        let area = integrate(
            |t| {
                let (h, _, ddh) = self.support3(t);
                0.5 * h * (h + ddh)
            },
            0.0,
            TAU,
            QUAD_TOL,
        )?;
        let perimeter = integrate(|t| self.radius_of_curvature(t), 0.0, TAU, QUAD_TOL)?;
        let _ = self.measures.set((area, perimeter));
        Ok((area, perimeter))
    }

    /// `A(K) = 1/2 int h rho dtheta`.
    pub fn area(&self) -> Result<f64> {
        Ok(self.measures()?.0)
    }

    /// `Per(K) = int rho dtheta`.
    pub fn perimeter(&self) -> Result<f64> {
        Ok(self.measures()?.1)
    }

    /// `min_theta h(theta) - <p, u(theta)>`; non-negative exactly when `p` is in the body.
    pub fn support_gap(&self, p: Point2) -> f64 {
        let step = TAU / CONTAINS_GRID as f64;
        let gap = |t: f64| self.support(t) - p.dot(Point2::from_angle(t));
        let mut best = f64::INFINITY;
        let mut kbest = 0;
        for k in 0..CONTAINS_GRID {
            let g = gap(k as f64 * step);
            if g < best {
                best = g;
                kbest = k;
            }
        }
        let center = kbest as f64 * step;
        let (_, refined) = golden_min(gap, center - step, center + step, REFINE_TOL);
        best.min(refined)
    }

    /// Closed containment via the support inequality.
    pub fn contains_by_support(&self, p: Point2) -> bool {
        self.support_gap(p) >= -CONTAINS_TOL
    }

    /// Closed containment test. Discs and ellipses use their implicit
    /// equation away from the boundary; everything else, and near-boundary
    /// ellipse points, go through the support inequality.
    pub fn contains(&self, p: Point2) -> bool {
        let local = (p - self.offset).rotate(-self.rotation);
        match &self.shape {
            Shape::Disc { radius } => local.norm() <= radius + CONTAINS_TOL,
            Shape::Ellipse { a, b } => {
                let f = (local.x / a).powi(2) + (local.y / b).powi(2) - 1.0;
                if f.abs() < 1e-9 {
                    self.contains_by_support(p)
                } else {
                    f < 0.0
                }
            }
            _ => self.contains_by_support(p),
        }
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        (
            Point2::new(-self.support(PI), -self.support(1.5 * PI)),
            Point2::new(self.support(0.0), self.support(0.5 * PI)),
        )
    }
}

fn describe(shape: &Shape) -> String {
    match shape {
        Shape::Disc { radius } => format!("disc:{radius}"),
        Shape::Ellipse { a, b } => format!("ellipse:{a},{b}"),
        Shape::Trig { a0, harmonics } => {
            let mut s = format!("trig:{a0}");
            for (a, b) in harmonics {
                s.push_str(&format!(",{a},{b}"));
            }
            s
        }
        Shape::Dual { base, r } => format!("dual[r={r}]({})", describe(base)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::bisect;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn builtins() -> Vec<ConvexBody> {
        vec![
            ConvexBody::disc(0.4).unwrap(),
            ConvexBody::ellipse(0.6, 0.5).unwrap(),
            ConvexBody::constant_width(1.0, 0.03).unwrap(),
            ConvexBody::new(Shape::Trig {
                a0: 0.5,
                harmonics: vec![(0.02, -0.01), (0.01, 0.015), (0.0, 0.005)],
            })
            .unwrap(),
        ]
    }

    #[test]
    fn disc_boundary_and_curvature() {
        let d = ConvexBody::disc(0.7).unwrap();
        for k in 0..16 {
            let t = 0.4 * k as f64;
            let p = d.boundary_point(t);
            assert!(p.distance(Point2::from_angle(t) * 0.7) < 1e-15);
            assert!((d.curvature(t) - 1.0 / 0.7).abs() < 1e-14);
        }
        assert_eq!(d.rolling_radii(), (0.7, 0.7));
    }

    #[test]
    fn ellipse_examples() {
        let e = ConvexBody::ellipse(0.6, 0.5).unwrap();
        assert!(e.boundary_point(0.0).distance(Point2::new(0.6, 0.0)) < 1e-15);
        // classical curvature at the end of the major axis: a / b^2
        assert!((e.curvature(0.0) - 2.4).abs() < 1e-12);
        // classical radius of curvature a^2 b^2 / h^3
        for k in 0..32 {
            let t = 0.2 * k as f64;
            let h = e.support(t);
            assert!((e.radius_of_curvature(t) - 0.09 / h.powi(3)).abs() < 1e-13);
        }
        let (rm, rmax) = e.rolling_radii();
        assert!((rm - 0.25 / 0.6).abs() < 1e-10);
        assert!((rmax - 0.72).abs() < 1e-10);
        assert!((e.area().unwrap() - PI * 0.3).abs() < 1e-10);
    }

    #[test]
    fn constant_width_examples() {
        let cw = ConvexBody::constant_width(1.0, 0.03).unwrap();
        for k in 0..50 {
            let t = 0.13 * k as f64;
            assert!((cw.boundary_point(t).distance(cw.boundary_point(t + PI)) - 1.0).abs() < 1e-12);
            assert!((cw.radius_of_curvature(t) - (0.5 - 0.24 * (3.0 * t).cos())).abs() < 1e-14);
        }
        let (rm, rmax) = cw.rolling_radii();
        assert!((rm - 0.26).abs() < 1e-10 && (rmax - 0.74).abs() < 1e-10);
        assert!((cw.perimeter().unwrap() - PI).abs() < 1e-10);
    }

    #[test]
    fn disc_measures() {
        let d = ConvexBody::disc(1.3).unwrap();
        assert!((d.area().unwrap() - PI * 1.69).abs() < 1e-10);
        assert!((d.perimeter().unwrap() - TAU * 1.3).abs() < 1e-10);
    }

    #[test]
    fn finite_difference_curvature_matches() {
        let step = 1e-5;
        for body in builtins() {
            for k in 0..64 {
                let t = 0.1 * k as f64;
                let (h, dh, _) = body.support3(t);
                let fd_dh = (body.support(t + step) - body.support(t - step)) / (2.0 * step);
                let fd_ddh = (body.support3(t + step).1 - body.support3(t - step).1) / (2.0 * step);
                let rho = body.radius_of_curvature(t);
                assert!((fd_dh - dh).abs() <= 1e-6 * h.abs().max(1.0));
                assert!(((h + fd_ddh) - rho).abs() <= 1e-6 * rho, "{}", body.label());
            }
        }
    }

    #[test]
    fn boundary_polygon_area_matches_quadrature() {
        for body in builtins() {
            let pts: Vec<Point2> = (0..4096)
                .map(|k| body.boundary_point(TAU * k as f64 / 4096.0))
                .collect();
            let poly = crate::geom::shoelace_area(&pts);
            assert!(poly > 0.0, "boundary must run counter-clockwise");
            assert!((poly - body.area().unwrap()).abs() < 1e-5);
        }
    }

    #[test]
    fn boundary_points_are_contained() {
        for body in builtins() {
            let (rm, rmax) = body.rolling_radii();
            assert!(rm <= rmax);
            for k in 0..97 {
                let t = 0.065 * k as f64;
                assert!(body.contains(body.boundary_point(t)));
                assert!(body.contains_by_support(body.boundary_point(t)));
            }
        }
    }

    #[test]
    fn disc_contains_examples() {
        let d = ConvexBody::disc(1.0).unwrap();
        assert!(d.contains(Point2::new(0.999, 0.0)));
        assert!(!d.contains(Point2::new(1.001, 0.0)));
        assert!(d.contains_by_support(Point2::new(0.999, 0.0)));
        assert!(!d.contains_by_support(Point2::new(1.001, 0.0)));
        let e = ConvexBody::ellipse(0.6, 0.5).unwrap();
        assert!(e.contains(Point2::new(0.6, 0.0)));
    }

    /// Radial oracle: walk the boundary parametrization until its polar angle
    /// matches that of `p`, then compare radii.
    fn radial_contains(body: &ConvexBody, p: Point2) -> bool {
        let target = p.angle();
        let polar = |t: f64| {
            let q = body.boundary_point(t);
            let mut d = q.angle() - target;
            while d > PI {
                d -= TAU;
            }
            while d < -PI {
                d += TAU;
            }
            d
        };
        // normal angle and polar angle differ by less than pi/2 for these bodies
        let theta = bisect(polar, target - 1.2, target + 1.2, 1e-14);
        p.norm() <= body.boundary_point(theta).norm() + 1e-12
    }

    #[test]
    fn contains_agrees_with_radial_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for body in builtins() {
            let (lo, hi) = body.bounding_box();
            let mut disagreements = 0;
            for _ in 0..10_000 {
                let p = Point2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
                if body.contains(p) != radial_contains(&body, p) {
                    disagreements += 1;
                }
            }
            assert_eq!(disagreements, 0, "{}", body.label());
        }
    }

    #[test]
    fn near_boundary_containment() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for body in builtins() {
            for _ in 0..500 {
                let t = rng.gen_range(0.0..TAU);
                let eps = rng.gen_range(1e-9..1e-6);
                let x = body.boundary_point(t);
                let u = Point2::from_angle(t);
                assert!(body.contains(x - u * eps));
                assert!(!body.contains(x + u * eps));
            }
        }
    }

    #[test]
    fn rejects_non_smooth_or_concave() {
        let r = ConvexBody::new(Shape::Trig {
            a0: 0.5,
            harmonics: vec![(0.0, 0.0), (0.0, 0.0), (0.1, 0.0)],
        });
        assert!(matches!(r, Err(Error::InvalidBody(_))));
        let r = ConvexBody::new(Shape::Trig { a0: 0.3, harmonics: vec![(0.5, 0.0)] });
        assert!(matches!(r, Err(Error::InvalidBody(_))));
    }

    #[test]
    fn rigid_motions() {
        let e = ConvexBody::ellipse(0.6, 0.5).unwrap();
        let moved = e.rotated(0.7).translated(Point2::new(0.05, -0.02));
        assert!((moved.area().unwrap() - e.area().unwrap()).abs() < 1e-10);
        let p = e.boundary_point(0.3);
        let q = moved.boundary_point(0.3 + 0.7);
        assert!(q.distance(p.rotate(0.7) + Point2::new(0.05, -0.02)) < 1e-14);
        assert!((moved.curvature(1.0) - e.curvature(0.3)).abs() < 1e-12);
        assert!(moved.contains(q));
    }
}
