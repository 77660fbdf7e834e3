use super::{NumericsError, Tolerance};

/// Solves `f(x) = target` for strictly increasing `f` on `[lo, hi]`.
///
/// Secant (regula falsi with the Illinois weighting) steps are taken while
/// they shrink the bracket fast enough, bisection otherwise; the bracket is
/// retained throughout. Returns once `|f(x) - target|` meets the tolerance
/// or the bracket has collapsed, in which case the midpoint is returned.
pub fn find_root_increasing(
    mut f: impl FnMut(f64) -> f64,
    target: f64,
    lo: f64,
    hi: f64,
    tol: &Tolerance,
) -> Result<f64, NumericsError> {
    if !(lo < hi) {
        return Err(NumericsError::BadInterval { a: lo, b: hi });
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if !fa.is_finite() {
        return Err(NumericsError::NonFinite { x: a });
    }
    if !fb.is_finite() {
        return Err(NumericsError::NonFinite { x: b });
    }
    if !(fa <= target && target <= fb) {
        return Err(NumericsError::NotBracketed {
            target,
            f_lo: fa,
            f_hi: fb,
        });
    }
    let goal = tol.bound(target);
    if (fa - target).abs() <= goal {
        return Ok(a);
    }
    if (fb - target).abs() <= goal {
        return Ok(b);
    }
    // Residuals g = f - target; the Illinois trick halves the stale side.
    let (mut ga, mut gb) = (fa - target, fb - target);
    let mut last_side = 0i8;
    let mut width = b - a;
    for iter in 0..tol.max_subdivisions.max(200) {
        let mid = 0.5 * (a + b);
        if b - a <= tol.abs.max(4.0 * f64::EPSILON * mid.abs()) {
            return Ok(mid);
        }
        let secant = a - ga * (b - a) / (gb - ga);
        let force_bisect = iter % 4 == 3 && (b - a) > 0.5 * width;
        let x = if force_bisect || !(secant > a && secant < b) {
            mid
        } else {
            secant
        };
        if iter % 4 == 3 {
            width = b - a;
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(NumericsError::NonFinite { x });
        }
        if fx < fa || fx > fb {
            return Err(NumericsError::NonMonotone {
                x,
                fx,
                f_lo: fa,
                f_hi: fb,
            });
        }
        let gx = fx - target;
        if gx.abs() <= goal {
            return Ok(x);
        }
        if gx < 0.0 {
            a = x;
            fa = fx;
            ga = gx;
            if last_side == -1 {
                gb *= 0.5;
            }
            last_side = -1;
        } else {
            b = x;
            fb = fx;
            gb = gx;
            if last_side == 1 {
                ga *= 0.5;
            }
            last_side = 1;
        }
    }
    Err(NumericsError::NoConvergence {
        iterations: tol.max_subdivisions.max(200),
    })
}
