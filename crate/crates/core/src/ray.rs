//! Ray parametrization of region boundaries: `R_b = k * R_a`, with `k = 0`
//! the `R_a` axis and `k = +inf` the `R_b` axis.

use crate::linprog::{LpBuilder, Var};
use crate::protocols::RatePair;
use crate::{Error, Result};

pub(crate) fn check_ratio(k: f64) -> Result<()> {
    if k >= 0.0 && !k.is_nan() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("ratio k must be >= 0 (or +inf)"))
    }
}

/// Adds the ray constraint and the objective `max R_a + R_b`.
pub(crate) fn constrain(lp: &mut LpBuilder, ra: Var, rb: Var, k: f64) {
    if k.is_infinite() {
        lp.eq(&[(ra, 1.0)], 0.0);
    } else {
        lp.eq(&[(rb, 1.0), (ra, -k)], 0.0);
    }
    lp.maximize(&[(ra, 1.0), (rb, 1.0)]);
}

/// Unit-sum direction `(d_a, d_b)` of the ray.
pub(crate) fn direction(k: f64) -> (f64, f64) {
    if k.is_infinite() {
        (0.0, 1.0)
    } else {
        (1.0 / (1.0 + k), k / (1.0 + k))
    }
}

/// Point where the ray leaves the box `[0, cap_a] x [0, cap_b]`.
pub(crate) fn box_point(cap_a: f64, cap_b: f64, k: f64) -> RatePair {
    if k.is_infinite() {
        return RatePair::new(0.0, cap_b);
    }
    let ra = if k == 0.0 { cap_a } else { cap_a.min(cap_b / k) };
    RatePair::new(ra, k * ra)
}

/// Point where the ray meets the segment between `(axis_a, 0)` and
/// `(0, axis_b)`, plus the weight `lambda` of the `(axis_a, 0)` end.
pub(crate) fn segment_point(axis_a: f64, axis_b: f64, k: f64) -> (RatePair, f64) {
    let (da, db) = direction(k);
    // t * (da / axis_a + db / axis_b) = 1, where a zero axis forces t = 0
    // along any direction with a component on it.
    let mut denom = 0.0;
    for (d, axis) in [(da, axis_a), (db, axis_b)] {
        if d > 0.0 {
            if axis <= 0.0 {
                return (RatePair::new(0.0, 0.0), 0.0);
            }
            denom += d / axis;
        }
    }
    let t = 1.0 / denom;
    let p = RatePair::new(t * da, t * db);
    let lambda = if axis_a > 0.0 { p.ra / axis_a } else { 0.0 };
    (p, lambda)
}
