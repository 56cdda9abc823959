//! Planar primitives for equal-radius circle geometry.
//!
//! Everything here works with a single radius `r` at a time: the two circles
//! through a pair of points, the spindle they bound, and polygons whose edges
//! are circular arcs of radius `r` bulging outward.

mod arc;
mod point;

pub use arc::{
    arc_polygon_area, arc_polygon_perimeter, segment_area, shoelace_area, ArcEdge, Orientation,
};
pub use point::Point2;

use crate::error::{Error, Result};

/// Relative slack used when checking `|a - b| <= 2r`.
const DIAMETER_SLACK: f64 = 1e-12;

/// Default closed-disc tolerance for radius `r`.
#[inline]
pub fn default_tol(r: f64) -> f64 {
    1e-12 * r
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleR {
    pub center: Point2,
    pub radius: f64,
}

impl CircleR {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Self { center, radius })
    }

    /// Closed-disc membership with signed tolerance `tol`.
    #[inline]
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        (p - self.center).norm() <= self.radius + tol
    }

    #[inline]
    pub fn point_at(&self, angle: f64) -> Point2 {
        self.center + Point2::from_angle(angle) * self.radius
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidRadius(r))
    }
}

/// The two radius-`r` circles passing through `a` and `b`.
///
/// The first circle has its center to the left of the directed segment
/// `a -> b`, the second to the right. For `|a - b| = 2r` both coincide.
pub fn circles_through_pair(a: Point2, b: Point2, r: f64) -> Result<(CircleR, CircleR)> {
    check_radius(r)?;
    let (left, right) = pair_centers(a, b, r)?;
    Ok((
        CircleR { center: left, radius: r },
        CircleR { center: right, radius: r },
    ))
}

/// Centers of the two circles of [`circles_through_pair`], left one first.
pub(crate) fn pair_centers(a: Point2, b: Point2, r: f64) -> Result<(Point2, Point2)> {
    let chord = b - a;
    let d = chord.norm();
    if d == 0.0 {
        return Err(Error::DegeneratePair);
    }
    if d > 2.0 * r * (1.0 + DIAMETER_SLACK) {
        return Err(Error::PairTooFar { distance: d, r });
    }
    let mid = a.midpoint(b);
    let half = 0.5 * d;
    let offset = (r * r - half * half).max(0.0).sqrt();
    let normal = chord.perp() * (1.0 / d);
    Ok((mid + normal * offset, mid - normal * offset))
}

/// Membership of `p` in the `r`-spindle of `a` and `b`, i.e. in both closed
/// discs through `a` and `b`.
pub fn spindle_contains(a: Point2, b: Point2, r: f64, p: Point2, tol: f64) -> Result<bool> {
    check_radius(r)?;
    if a == b {
        return Ok((p - a).norm() <= tol);
    }
    let (c1, c2) = pair_centers(a, b, r)?;
    Ok((p - c1).norm() <= r + tol && (p - c2).norm() <= r + tol)
}

/// The `r`-spindle `[a, b]_r`: intersection of all radius-`r` discs holding both points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpindlePair {
    pub a: Point2,
    pub b: Point2,
    pub r: f64,
}

impl SpindlePair {
    pub fn new(a: Point2, b: Point2, r: f64) -> Result<Self> {
        check_radius(r)?;
        let d = a.distance(b);
        if d > 2.0 * r * (1.0 + DIAMETER_SLACK) {
            return Err(Error::PairTooFar { distance: d, r });
        }
        Ok(Self { a, b, r })
    }

    pub fn circles(&self) -> Result<(CircleR, CircleR)> {
        circles_through_pair(self.a, self.b, self.r)
    }

    pub fn contains(&self, p: Point2) -> bool {
        // `new` already checked the diameter condition
        spindle_contains(self.a, self.b, self.r, p, default_tol(self.r)).unwrap_or(false)
    }

    pub fn area(&self) -> Result<f64> {
        if self.a == self.b {
            return Ok(0.0);
        }
        arc_polygon_area(&[self.a, self.b], self.r)
    }

    pub fn perimeter(&self) -> Result<f64> {
        if self.a == self.b {
            return Ok(0.0);
        }
        arc_polygon_perimeter(&[self.a, self.b], self.r)
    }
}
