use super::{pair_centers, CircleR, Point2};
use crate::error::{Error, Result};

/// Half-chord ratio above which the segment area switches to the angle form.
const NEAR_DIAMETER: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
}

/// A shorter circular arc of radius `r` traversed counter-clockwise around
/// the polygon it bounds; its center lies to the left of `start -> end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcEdge {
    pub circle: CircleR,
    pub start: Point2,
    pub end: Point2,
    pub orientation: Orientation,
}

impl ArcEdge {
    pub fn new(start: Point2, end: Point2, r: f64) -> Result<Self> {
        let (left, _) = pair_centers(start, end, r)?;
        Ok(Self {
            circle: CircleR { center: left, radius: r },
            start,
            end,
            orientation: Orientation::Ccw,
        })
    }

    /// Central angle in `(0, pi]`.
    pub fn central_angle(&self) -> f64 {
        let half = 0.5 * self.start.distance(self.end);
        2.0 * (half / self.circle.radius).min(1.0).asin()
    }

    pub fn length(&self) -> f64 {
        self.circle.radius * self.central_angle()
    }

    /// The point of the arc halfway between its endpoints.
    pub fn midpoint(&self) -> Point2 {
        let chord = self.end - self.start;
        let d = chord.norm();
        let mid = self.start.midpoint(self.end);
        let r = self.circle.radius;
        let half = 0.5 * d;
        let offset = (r * r - half * half).max(0.0).sqrt();
        // bulge is on the right of start -> end
        let right = -chord.perp() * (1.0 / d);
        mid + right * (r - offset)
    }
}

/// Area of the circular segment cut from a radius-`r` disc by a chord of
/// half-length `half`.
pub fn segment_area(half: f64, r: f64) -> f64 {
    let s = half / r;
    if s > NEAR_DIAMETER {
        let theta = s.min(1.0).asin();
        let (sin, cos) = theta.sin_cos();
        r * r * (theta - sin * cos)
    } else {
        r * r * s.asin() - half * (r * r - half * half).sqrt()
    }
}

/// Signed shoelace area of a closed vertex loop.
pub fn shoelace_area(vertices: &[Point2]) -> f64 {
    let m = vertices.len();
    if m < 3 {
        return 0.0;
    }
    let origin = vertices[0];
    let mut twice = 0.0;
    for i in 1..m - 1 {
        twice += (vertices[i] - origin).cross(vertices[i + 1] - origin);
    }
    0.5 * twice
}

fn half_chords(vertices: &[Point2], r: f64) -> Result<impl Iterator<Item = f64> + '_> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidRadius(r));
    }
    let m = vertices.len();
    if m < 2 {
        return Err(Error::TooFewVertices { needed: 2, got: m });
    }
    for i in 0..m {
        let half = 0.5 * vertices[i].distance(vertices[(i + 1) % m]);
        if half > r * (1.0 + 1e-12) {
            return Err(Error::ChordTooLong { half_chord: half, r });
        }
    }
    Ok((0..m).map(move |i| 0.5 * vertices[i].distance(vertices[(i + 1) % m])))
}

/// Area of the region bounded by radius-`r` arcs joining consecutive vertices,
/// each arc bulging outward. Two vertices give a spindle.
pub fn arc_polygon_area(vertices: &[Point2], r: f64) -> Result<f64> {
    let halves = half_chords(vertices, r)?;
    let base = shoelace_area(vertices);
    if base < 0.0 {
        return Err(Error::NotCounterClockwise { signed_area: base });
    }
    Ok(base + halves.map(|h| segment_area(h, r)).sum::<f64>())
}

pub fn arc_polygon_perimeter(vertices: &[Point2], r: f64) -> Result<f64> {
    let halves = half_chords(vertices, r)?;
    if shoelace_area(vertices) < 0.0 {
        return Err(Error::NotCounterClockwise {
            signed_area: shoelace_area(vertices),
        });
    }
    Ok(halves.map(|h| 2.0 * r * (h / r).min(1.0).asin()).sum())
}
