//! The r-hull of a finite point set: a disc-polygon whose edges are arcs of
//! radius `r` bulging outward.

mod enclosing;
pub mod linear;

pub use enclosing::{min_enclosing_circle, EnclosingCircle};
pub use linear::convex_hull;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::geom::{
    arc_polygon_area, arc_polygon_perimeter, default_tol, pair_centers, spindle_contains, ArcEdge,
    Point2,
};

/// Relative slack on the enclosing radius before a set counts as infeasible.
const FEASIBLE_SLACK: f64 = 1e-12;

/// A cyclic ccw list of vertices joined by radius-`r` arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscPolygon {
    r: f64,
    vertices: Vec<Point2>,
}

impl DiscPolygon {
    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2> {
        self.vertices
    }

    /// Number of vertices; a single point counts as one.
    pub fn f0(&self) -> usize {
        self.vertices.len()
    }

    /// Arc edges in ccw order; empty for a single vertex, two for a spindle.
    pub fn edges(&self) -> Result<Vec<ArcEdge>> {
        let m = self.vertices.len();
        if m < 2 {
            return Ok(Vec::new());
        }
        (0..m)
            .map(|i| ArcEdge::new(self.vertices[i], self.vertices[(i + 1) % m], self.r))
            .collect()
    }

    /// Centers of the supporting discs, one per edge.
    pub fn edge_centers(&self) -> Result<Vec<Point2>> {
        let m = self.vertices.len();
        if m < 2 {
            return Ok(Vec::new());
        }
        (0..m)
            .map(|i| Ok(pair_centers(self.vertices[i], self.vertices[(i + 1) % m], self.r)?.0))
            .collect()
    }

    pub fn area(&self) -> Result<f64> {
        if self.vertices.len() < 2 {
            return Ok(0.0);
        }
        arc_polygon_area(&self.vertices, self.r)
    }

    pub fn perimeter(&self) -> Result<f64> {
        if self.vertices.len() < 2 {
            return Ok(0.0);
        }
        arc_polygon_perimeter(&self.vertices, self.r)
    }

    /// Closed membership: the region is the intersection of the edge discs.
    pub fn contains(&self, p: Point2, tol: f64) -> Result<bool> {
        if self.vertices.len() == 1 {
            return Ok(p.distance(self.vertices[0]) <= tol);
        }
        Ok(self
            .edge_centers()?
            .iter()
            .all(|c| p.distance(*c) <= self.r + tol))
    }
}

fn check_input(points: &[Point2], r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidRadius(r));
    }
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn check_feasible(candidates: &[Point2], r: f64) -> Result<()> {
    if let Some(c) = min_enclosing_circle(candidates) {
        if c.radius > r * (1.0 + FEASIBLE_SLACK) {
            return Err(Error::NotRFeasible {
                enclosing_radius: c.radius,
                r,
            });
        }
    }
    Ok(())
}

/// Rotates a cyclic list so it starts at its lexicographically smallest point.
fn normalize_start(mut v: Vec<Point2>) -> Vec<Point2> {
    if let Some(k) = (0..v.len()).min_by(|&i, &j| v[i].lex_cmp(&v[j])) {
        v.rotate_left(k);
    }
    v
}

/// The r-hull of `points`.
///
/// Starts from the linear hull and repeatedly removes any vertex lying in the
/// spindle of its two neighbours until a full pass removes nothing.
pub fn r_hull(points: &[Point2], r: f64) -> Result<DiscPolygon> {
    check_input(points, r)?;
    let mut v = convex_hull(points);
    check_feasible(&v, r)?;
    let tol = default_tol(r);
    let mut changed = true;
    while changed && v.len() > 2 {
        changed = false;
        let mut i = 0;
        while i < v.len() && v.len() > 2 {
            let m = v.len();
            let a = v[(i + m - 1) % m];
            let c = v[(i + 1) % m];
            if spindle_contains(a, c, r, v[i], tol)? {
                v.remove(i);
                changed = true;
            } else {
                i += 1;
            }
        }
    }
    Ok(DiscPolygon {
        r,
        vertices: normalize_start(v),
    })
}

/// Brute-force r-hull: an ordered pair `(p, q)` is an edge when the radius-`r`
/// disc through both with center left of `p -> q` holds every point.
pub fn r_hull_oracle(points: &[Point2], r: f64) -> Result<DiscPolygon> {
    check_input(points, r)?;
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    check_feasible(&pts, r)?;
    if pts.len() == 1 {
        return Ok(DiscPolygon { r, vertices: pts });
    }
    let tol = default_tol(r);
    let n = pts.len();
    let mut next: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..n {
            if i == j {
                continue;
            }
            let (center, _) = pair_centers(pts[i], pts[j], r)?;
            if pts.iter().all(|p| p.distance(center) <= r + tol) {
                // cocircular candidates: the farthest one skips the middles
                let d = pts[i].distance(pts[j]);
                if best.is_none_or(|(_, bd)| d > bd) {
                    best = Some((j, d));
                }
            }
        }
        next[i] = best.map(|(j, _)| j);
    }
    let start = next
        .iter()
        .position(|s| s.is_some())
        .ok_or_else(|| Error::Infeasible("no supporting edge found".into()))?;
    let mut cur = start;
    for _ in 0..n {
        cur = next[cur].ok_or_else(|| Error::Infeasible("broken edge cycle".into()))?;
    }
    let first = cur;
    let mut vertices = vec![pts[first]];
    loop {
        cur = next[cur].ok_or_else(|| Error::Infeasible("broken edge cycle".into()))?;
        if cur == first {
            break;
        }
        vertices.push(pts[cur]);
        if vertices.len() > n {
            return Err(Error::Infeasible("edge cycle does not close".into()));
        }
    }
    Ok(DiscPolygon {
        r,
        vertices: normalize_start(vertices),
    })
}

/// Vertex count of a disc-polygon.
pub fn f0(dp: &DiscPolygon) -> usize {
    dp.f0()
}

/// `A(K) - A(dp)`.
pub fn missed_area(body: &ConvexBody, dp: &DiscPolygon) -> Result<f64> {
    Ok(body.area()? - dp.area()?)
}
