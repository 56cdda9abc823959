//! Disc-caps: the part of a body left outside an open radius-`r` disc.
//!
//! A cap `D(theta, t)` has its vertex at the boundary point with outer normal
//! angle `theta` and is cut by the circle of radius `r` centered at
//! `x(theta) - (r + t) u(theta)`.

use crate::asymptotics::quadrature::integrate;
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::geom::{pair_centers, CircleR, Point2};
use crate::numeric::{bisect, golden_max};
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Grid used to bracket the two circle/boundary crossings.
pub const BRACKET_GRID: usize = 2048;
const ROOT_TOL: f64 = 1e-12;
const T_STAR_TOL: f64 = 1e-10;
const VERTEX_GRID: usize = 1024;
/// Below this `|u1 x u2|` the reparametrization is singular.
pub const SINGULAR_CROSS: f64 = 1e-12;

/// Area of a cap and length of its cutting arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapMeasures {
    pub area: f64,
    pub arc_length: f64,
}

/// A disc-cap with vertex normal `theta`, height `t` and cutting radius `r`.
#[derive(Debug, Clone)]
pub struct DiscCap<'a> {
    pub body: &'a ConvexBody,
    pub theta: f64,
    pub t: f64,
    pub r: f64,
}

impl DiscCap<'_> {
    pub fn cutting_circle(&self) -> Result<CircleR> {
        cap_cutting_circle(self.body, self.theta, self.t, self.r)
    }

    pub fn measures(&self) -> Result<CapMeasures> {
        cap_measures(self.body, self.theta, self.t, self.r)
    }

    pub fn vertex(&self) -> Point2 {
        self.body.boundary_point(self.theta)
    }
}

/// Coordinates of a pair of points on a cutting circle: `(theta, t)` pick the
/// circle, `phi1` and `phi2` the positions on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReparamPoint {
    pub theta: f64,
    pub t: f64,
    pub phi1: f64,
    pub phi2: f64,
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidRadius(r))
    }
}

fn cutting_center(body: &ConvexBody, theta: f64, t: f64, r: f64) -> Point2 {
    body.boundary_point(theta) - Point2::from_angle(theta) * (r + t)
}

/// Radius-`r` circle centered at `x(theta) - (r + t) u(theta)`.
pub fn cap_cutting_circle(body: &ConvexBody, theta: f64, t: f64, r: f64) -> Result<CircleR> {
    check_r(r)?;
    if !(t >= 0.0) {
        return Err(Error::DomainError { value: t, domain: "cap height t >= 0" });
    }
    CircleR::new(cutting_center(body, theta, t, r), r)
}

/// Angle of `v` unwrapped into `(center - pi, center + pi]`.
fn unwrap_about(v: Point2, center: f64) -> f64 {
    let mut a = v.angle();
    while a <= center - PI {
        a += TAU;
    }
    while a > center + PI {
        a -= TAU;
    }
    a
}

/// Normal angles `(phi1, phi2)`, `phi1 < theta < phi2`, where the boundary
/// enters the cutting disc on either side of the vertex.
fn crossings(body: &ConvexBody, theta: f64, c: Point2, r: f64, grid: usize) -> Option<(f64, f64)> {
    let g = |phi: f64| (body.boundary_point(phi) - c).norm_sq() - r * r;
    let step = TAU / grid as f64;
    let half = grid / 2;
    let scan = |dir: f64| {
        let mut prev = theta;
        for k in 1..=half {
            let phi = theta + dir * step * k as f64;
            if g(phi) <= 0.0 {
                return Some(bisect(g, prev, phi, ROOT_TOL));
            }
            prev = phi;
        }
        None
    };
    Some((scan(-1.0)?, scan(1.0)?))
}

/// Cap area and cutting-arc length, by bracketing the two crossings of the
/// cutting circle with the boundary and applying Green's theorem to the
/// boundary arc plus the circle arc.
pub fn cap_measures(body: &ConvexBody, theta: f64, t: f64, r: f64) -> Result<CapMeasures> {
    check_r(r)?;
    if !(t > 0.0) {
        return Err(Error::NoIntersection { theta, t });
    }
    let c = cutting_center(body, theta, t, r);
    let (phi1, phi2) = match crossings(body, theta, c, r, BRACKET_GRID)
        .or_else(|| crossings(body, theta, c, r, 2 * BRACKET_GRID))
    {
        Some(v) => v,
        None => {
            return Err(if t > t_star(body, theta, r)? {
                Error::NoIntersection { theta, t }
            } else {
                Error::RootBracketFailure { theta, t }
            })
        }
    };
    let a1 = unwrap_about(body.boundary_point(phi1) - c, theta);
    let a2 = unwrap_about(body.boundary_point(phi2) - c, theta);
    let swept = integrate(
        |phi| {
            let x = body.boundary_point(phi);
            let tangent = Point2::from_angle(phi).perp() * body.radius_of_curvature(phi);
            (x - c).cross(tangent)
        },
        phi1,
        phi2,
        1e-15 * r * r,
    )?;
    Ok(CapMeasures {
        area: 0.5 * swept - 0.5 * r * r * (a2 - a1),
        arc_length: r * (a2 - a1),
    })
}

/// Cap measures for the unit disc cut by a unit circle whose center is at
/// distance `t`: `A = t sqrt(1 - t^2/4) + 2 asin(t/2)` and
/// `l = 2 asin(sqrt(1 - t^2/4))`.
pub fn cap_measures_circle(t: f64) -> Result<CapMeasures> {
    if !(0.0..=2.0).contains(&t) {
        return Err(Error::DomainError { value: t, domain: "circle cap height in [0, 2]" });
    }
    let s = (1.0 - t * t / 4.0).max(0.0).sqrt();
    Ok(CapMeasures {
        area: t * s + 2.0 * (t / 2.0).asin(),
        arc_length: 2.0 * s.asin(),
    })
}

/// Largest height for which the cutting disc still meets the body: the
/// disc misses the body exactly when its center is farther than `r` away.
pub fn t_star(body: &ConvexBody, theta: f64, r: f64) -> Result<f64> {
    check_r(r)?;
    let width = body.support(theta) + body.support(theta + PI);
    let excess = |t: f64| -body.support_gap(cutting_center(body, theta, t, r)) - r;
    if excess(width) <= 0.0 {
        return Ok(width);
    }
    Ok(bisect(excess, 0.0, width, T_STAR_TOL))
}

fn map_unchecked(body: &ConvexBody, rp: &ReparamPoint, r: f64) -> (Point2, Point2) {
    let c = cutting_center(body, rp.theta, rp.t, r);
    (
        c + Point2::from_angle(rp.phi1) * r,
        c + Point2::from_angle(rp.phi2) * r,
    )
}

/// The two points at angles `phi1`, `phi2` on the cutting circle of `(theta, t)`.
pub fn phi_map(body: &ConvexBody, rp: &ReparamPoint, r: f64) -> Result<(Point2, Point2)> {
    check_r(r)?;
    let (x1, x2) = map_unchecked(body, rp, r);
    for x in [x1, x2] {
        if !body.contains(x) {
            return Err(Error::OutsideBody { x: x.x, y: x.y });
        }
    }
    Ok((x1, x2))
}

/// `|J| = r^2 (r + t - 1/kappa(theta)) |u1 x u2|`.
pub fn phi_jacobian_closed(body: &ConvexBody, rp: &ReparamPoint, r: f64) -> Result<f64> {
    check_r(r)?;
    let cross = (rp.phi2 - rp.phi1).sin();
    if cross.abs() < SINGULAR_CROSS {
        return Err(Error::SingularJacobian { cross });
    }
    let rho = body.radius_of_curvature(rp.theta);
    Ok(r * r * (r + rp.t - rho).abs() * cross.abs())
}

/// `|det|` of the central-difference Jacobian of `(theta, t, phi1, phi2) -> (x1, x2)`.
pub fn phi_jacobian_fd(body: &ConvexBody, rp: &ReparamPoint, r: f64, step: f64) -> Result<f64> {
    check_r(r)?;
    let cross = (rp.phi2 - rp.phi1).sin();
    if cross.abs() < SINGULAR_CROSS {
        return Err(Error::SingularJacobian { cross });
    }
    let eval = |q: [f64; 4]| {
        let (a, b) = map_unchecked(
            body,
            &ReparamPoint { theta: q[0], t: q[1], phi1: q[2], phi2: q[3] },
            r,
        );
        [a.x, a.y, b.x, b.y]
    };
    let base = [rp.theta, rp.t, rp.phi1, rp.phi2];
    let mut m = [[0.0; 4]; 4];
    for j in 0..4 {
        let mut hi = base;
        let mut lo = base;
        hi[j] += step;
        lo[j] -= step;
        let (fh, fl) = (eval(hi), eval(lo));
        for i in 0..4 {
            m[i][j] = (fh[i] - fl[i]) / (2.0 * step);
        }
    }
    Ok(det4(m).abs())
}

/// Determinant by Gaussian elimination with partial pivoting.
fn det4(mut m: [[f64; 4]; 4]) -> f64 {
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..4 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    det
}

/// Vertex normal angle and height of the cap cut by the radius-`r` disc
/// centered at `center`: the vertex maximizes `h(theta) - <center, u>`, and
/// the height is that maximum minus `r`.
pub fn cap_decompose(body: &ConvexBody, center: Point2, r: f64) -> Result<(f64, f64)> {
    check_r(r)?;
    let reach = |t: f64| body.support(t) - center.dot(Point2::from_angle(t));
    let step = TAU / VERTEX_GRID as f64;
    let k = (0..VERTEX_GRID)
        .max_by(|&a, &b| reach(a as f64 * step).total_cmp(&reach(b as f64 * step)))
        .unwrap();
    let mid = k as f64 * step;
    let (theta, best) = golden_max(reach, mid - step, mid + step, 1e-13);
    Ok((theta.rem_euclid(TAU), best - r))
}

/// The two caps cut by the radius-`r` circles through `x1` and `x2`, as
/// `(theta, t, area)` with the smaller area first.
pub fn spindle_caps(body: &ConvexBody, x1: Point2, x2: Point2, r: f64) -> Result<[(f64, f64, f64); 2]> {
    let (left, right) = pair_centers(x1, x2, r)?;
    let mut caps = [(0.0, 0.0, 0.0); 2];
    for (slot, center) in caps.iter_mut().zip([left, right]) {
        let (theta, t) = cap_decompose(body, center, r)?;
        let area = cap_measures(body, theta, t, r)?.area;
        *slot = (theta, t, area);
    }
    if caps[1].2 < caps[0].2 {
        caps.swap(0, 1);
    }
    Ok(caps)
}
