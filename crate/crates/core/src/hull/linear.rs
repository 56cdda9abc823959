//! Linear convex hull with an Akl–Toussaint style interior filter.

use crate::geom::Point2;
use std::f64::consts::TAU;

/// Inputs smaller than this go straight to the monotone chain.
const FILTER_MIN: usize = 64;

/// Extreme input points in `dirs` equally spaced directions, ccw, deduplicated.
fn extreme_polygon(points: &[Point2], dirs: usize) -> Vec<Point2> {
    let units: Vec<Point2> = (0..dirs)
        .map(|k| Point2::from_angle(TAU * k as f64 / dirs as f64))
        .collect();
    let mut best = vec![f64::NEG_INFINITY; dirs];
    let mut arg = vec![points[0]; dirs];
    for &p in points {
        for (k, u) in units.iter().enumerate() {
            let v = p.dot(*u);
            if v > best[k] {
                best[k] = v;
                arg[k] = p;
            }
        }
    }
    arg.dedup();
    while arg.len() > 1 && arg.first() == arg.last() {
        arg.pop();
    }
    arg
}

/// Keeps every point not strictly inside the convex polygon `poly` (ccw).
fn discard_interior(points: &[Point2], poly: &[Point2]) -> Vec<Point2> {
    if poly.len() < 3 {
        return points.to_vec();
    }
    let edges: Vec<(Point2, Point2)> = (0..poly.len())
        .map(|i| (poly[i], poly[(i + 1) % poly.len()] - poly[i]))
        .collect();
    points
        .iter()
        .copied()
        .filter(|&p| edges.iter().any(|&(a, e)| e.cross(p - a) <= 0.0))
        .collect()
}

/// Candidate hull vertices: a superset of the strictly convex vertices of `points`.
pub fn prefilter(points: &[Point2]) -> Vec<Point2> {
    if points.len() < FILTER_MIN {
        return points.to_vec();
    }
    let coarse = discard_interior(points, &extreme_polygon(points, 8));
    if coarse.len() < FILTER_MIN {
        return coarse;
    }
    discard_interior(&coarse, &extreme_polygon(&coarse, 64))
}

/// Strictly convex hull vertices in ccw order starting from the
/// lexicographically smallest point (Andrew's monotone chain). Duplicates
/// and collinear boundary points are dropped.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts = prefilter(points);
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: Point2, a: Point2, b: Point2| (a - o).cross(b - o);
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}
