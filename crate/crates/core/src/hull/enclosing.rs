//! Minimal enclosing circle (Welzl's algorithm, iterative form).

use crate::geom::Point2;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnclosingCircle {
    pub center: Point2,
    pub radius: f64,
}

impl EnclosingCircle {
    fn covers(&self, p: Point2) -> bool {
        p.distance(self.center) <= self.radius * (1.0 + SLACK) + SLACK
    }

    fn from_two(a: Point2, b: Point2) -> Self {
        Self {
            center: a.midpoint(b),
            radius: 0.5 * a.distance(b),
        }
    }

    fn from_three(a: Point2, b: Point2, c: Point2) -> Self {
        let (ab, ac) = (b - a, c - a);
        let d = 2.0 * ab.cross(ac);
        if d.abs() < 1e-300 {
            // collinear: the widest pair
            let cands = [Self::from_two(a, b), Self::from_two(a, c), Self::from_two(b, c)];
            return cands
                .into_iter()
                .max_by(|x, y| x.radius.total_cmp(&y.radius))
                .unwrap();
        }
        let (b2, c2) = (ab.norm_sq(), ac.norm_sq());
        let offset = Point2::new(ac.y * b2 - ab.y * c2, ab.x * c2 - ac.x * b2) * (1.0 / d);
        Self {
            center: a + offset,
            radius: offset.norm(),
        }
    }
}

/// Smallest circle containing every point. Input order is shuffled with a
/// fixed seed, so the result is deterministic.
pub fn min_enclosing_circle(points: &[Point2]) -> Option<EnclosingCircle> {
    if points.is_empty() {
        return None;
    }
    let mut pts = points.to_vec();
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
    let mut c = EnclosingCircle { center: pts[0], radius: 0.0 };
    for i in 1..pts.len() {
        if c.covers(pts[i]) {
            continue;
        }
        c = EnclosingCircle { center: pts[i], radius: 0.0 };
        for j in 0..i {
            if c.covers(pts[j]) {
                continue;
            }
            c = EnclosingCircle::from_two(pts[i], pts[j]);
            for k in 0..j {
                if !c.covers(pts[k]) {
                    c = EnclosingCircle::from_three(pts[i], pts[j], pts[k]);
                }
            }
        }
    }
    Some(c)
}
