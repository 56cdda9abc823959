//! Curvature integrals over the boundary and the limit constants they feed.

mod gamma;
pub mod quadrature;

pub use gamma::gamma_fn;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::mc::Model;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Absolute tolerance between successive panel doublings.
pub const INTEGRAL_TOL: f64 = 1e-10;
/// Margin demanded of `r * kappa_m` before a negative power is integrated.
pub const SINGULAR_MARGIN: f64 = 1e-6;

/// First-order limit constants of one model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitConstants {
    pub model: Model,
    /// Coefficient of `n^{1/3}` in `E f0` (the constant limit for the circle).
    pub c_f0: f64,
    /// Coefficient of `n^{-2/3}` in the expected missed area (of `n^{-1}` for the circle).
    pub c_area: f64,
    /// Coefficient of `n^{-2/3}` in the expected perimeter excess (circumscribed only).
    pub c_perim: Option<f64>,
}

/// Integrates `f(kappa) * rho` over the normal angle, i.e. `f(kappa) ds` over the boundary.
pub fn curvature_integral<F: Fn(f64) -> f64>(body: &ConvexBody, f: F) -> Result<f64> {
    quadrature::integrate(
        |t| {
            let rho = body.radius_of_curvature(t);
            f(1.0 / rho) * rho
        },
        0.0,
        TAU,
        INTEGRAL_TOL,
    )
}

/// `int (kappa - 1/r)^p ds` over the boundary of `body`.
pub fn boundary_integral(body: &ConvexBody, r: f64, p: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidRadius(r));
    }
    if p == 0.0 {
        return body.perimeter();
    }
    let (_, r_max) = body.rolling_radii();
    let min_gap = 1.0 / r_max - 1.0 / r;
    let singular = if p < 0.0 {
        r / r_max < 1.0 + SINGULAR_MARGIN
    } else {
        p.fract() != 0.0 && min_gap < 0.0
    };
    if singular {
        return Err(Error::SingularIntegrand { p, min_gap });
    }
    curvature_integral(body, |k| (k - 1.0 / r).powf(p))
}

fn require_inscribed(body: &ConvexBody, r: f64) -> Result<()> {
    let (_, r_max) = body.rolling_radii();
    if r > r_max {
        Ok(())
    } else {
        Err(Error::Infeasible(format!(
            "inscribed model needs r > r_M, but r_M = {r_max} >= r = {r}"
        )))
    }
}

fn require_circumscribed(body: &ConvexBody, r: f64) -> Result<()> {
    let (_, r_max) = body.rolling_radii();
    if r / r_max >= 1.0 + SINGULAR_MARGIN {
        Ok(())
    } else {
        Err(Error::Infeasible(format!(
            "circumscribed model needs r * kappa_m >= 1 + {SINGULAR_MARGIN}, but r_M = {r_max} and r = {r}"
        )))
    }
}

/// Limits of `E f0 * n^{-1/3}` and `E A(K \ K_n^r) * n^{2/3}` for a smooth body.
pub fn inscribed_limits(body: &ConvexBody, r: f64) -> Result<LimitConstants> {
    require_inscribed(body, r)?;
    let area = body.area()?;
    let g = gamma_fn(5.0 / 3.0) * boundary_integral(body, r, 1.0 / 3.0)?;
    Ok(LimitConstants {
        model: Model::Inscribed,
        c_f0: (2.0 / (3.0 * area)).cbrt() * g,
        c_area: (2.0 * area * area / 3.0).cbrt() * g,
        c_perim: None,
    })
}

/// Limits for the disc of radius `r` sampled with the same radius: `E f0` and
/// `E A(K \ K_n^r) * n`.
///
/// `c_area` is the commonly quoted `r^2 pi^3 / 3`. Efron's identity
/// `E A(K \ K_n^r) = A(K) E f0(K_{n+1}^r) / (n + 1)` combined with `c_f0`
/// gives `r^2 pi^3 / 2` instead, and that is what simulation reproduces.
pub fn circle_limits(r: f64) -> Result<LimitConstants> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidRadius(r));
    }
    Ok(LimitConstants {
        model: Model::Circle,
        c_f0: PI * PI / 2.0,
        c_area: r * r * PI.powi(3) / 3.0,
        c_perim: None,
    })
}

/// `A(K) - r Per(K) + r^2 pi`, the area of the r-dual.
pub fn dual_area(body: &ConvexBody, r: f64) -> Result<f64> {
    Ok(body.area()? - r * body.perimeter()? + r * r * PI)
}

/// Limits for the intersection of radius-`r` discs centered at uniform points
/// of the r-dual. The perimeter and area constants assume a `C^5_+` boundary,
/// which every analytic built-in has.
pub fn circumscribed_limits(body: &ConvexBody, r: f64) -> Result<LimitConstants> {
    require_circumscribed(body, r)?;
    let a_star = dual_area(body, r)?;
    let c_f0 = (2.0 * r / (3.0 * a_star)).cbrt()
        * gamma_fn(5.0 / 3.0)
        * boundary_integral(body, r, 2.0 / 3.0)?;
    let scale = (12.0 * a_star).powf(2.0 / 3.0) * gamma_fn(2.0 / 3.0) * r.powf(-2.0 / 3.0);
    let perim_integral =
        curvature_integral(body, |k| (k - 1.0 / r).powf(-1.0 / 3.0) * (4.0 * k - 1.0 / r))?;
    let area_integral = boundary_integral(body, r, -1.0 / 3.0)?;
    Ok(LimitConstants {
        model: Model::Circumscribed,
        c_f0,
        c_area: scale / 12.0 * area_integral,
        c_perim: Some(scale / 36.0 * perim_integral),
    })
}

/// Dispatches on `model`. The circle model requires `body` to be a disc of radius `r`.
pub fn limits(body: &ConvexBody, r: f64, model: Model) -> Result<LimitConstants> {
    match model {
        Model::Inscribed => inscribed_limits(body, r),
        Model::Circumscribed => circumscribed_limits(body, r),
        Model::Circle => {
            crate::mc::require_circle(body, r)?;
            circle_limits(r)
        }
    }
}
