//! Scalar search helpers shared by the geometry modules.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of `f` on `[lo, hi]`, run until the bracket is
/// narrower than `tol`. Returns `(argmin, min)`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

pub fn golden_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_min(|t| -f(t), lo, hi, tol);
    (x, -v)
}

/// Bisection for a sign change of `f` on `[lo, hi]`; `f(lo)` and `f(hi)` must
/// differ in sign. Stops once the bracket is narrower than `tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let lo_positive = f(lo) > 0.0;
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_vertex() {
        let (x, v) = golden_min(|t| (t - 0.3) * (t - 0.3) + 2.0, -1.0, 1.0, 1e-10);
        // a flat minimum pins the argmin only to about sqrt(machine epsilon)
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-15);
        let (x, v) = golden_max(|t| t.sin(), 0.0, 3.0, 1e-10);
        assert!((x - std::f64::consts::FRAC_PI_2).abs() < 1e-7);
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bisect_cosine_root() {
        let x = bisect(f64::cos, 0.0, 3.0, 1e-14);
        assert!((x - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
        let x = bisect(|t| -t.cos(), 0.0, 3.0, 1e-14);
        assert!((x - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }
}
