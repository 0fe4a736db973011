//! Bracketing helpers for monotone functions on [0, ∞).

/// Bisection midpoint; geometric when the bracket spans more than a
/// factor of four so that tiny and huge roots converge equally fast.
pub(crate) fn midpoint(lo: f64, hi: f64) -> f64 {
    if lo > 0.0 && hi > 4.0 * lo {
        (lo * hi).sqrt()
    } else if lo == 0.0 && hi > 1.0 {
        // pull toward 1 so the geometric branch can take over
        (hi.sqrt()).min(hi * 0.5)
    } else {
        lo + 0.5 * (hi - lo)
    }
}

/// Bisect until `lo` and `hi` are adjacent floats. `pred(lo)` must be
/// false and `pred(hi)` true; returns the final `(lo, hi)`.
pub(crate) fn bisect<F: FnMut(f64) -> bool>(mut lo: f64, mut hi: f64, mut pred: F) -> (f64, f64) {
    for _ in 0..4000 {
        let mid = midpoint(lo, hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

const GROWTH_CAP: f64 = 1e300;

/// inf{x ≥ 0 : f(x) ≥ level} for nondecreasing f; `+inf` if never reached.
pub(crate) fn inf_ge<F: FnMut(f64) -> f64>(mut f: F, level: f64) -> f64 {
    if f(0.0) >= level {
        return 0.0;
    }
    let mut hi = 1.0;
    while !(f(hi) >= level) {
        hi *= 2.0;
        if hi > GROWTH_CAP {
            return f64::INFINITY;
        }
    }
    bisect(0.0, hi, |x| f(x) >= level).1
}

/// sup{x ≥ 0 : f(x) ≤ level} for nondecreasing f, with sup ∅ = 0;
/// `+inf` if f never exceeds `level`.
pub(crate) fn sup_le<F: FnMut(f64) -> f64>(mut f: F, level: f64) -> f64 {
    if f(0.0) > level {
        return 0.0;
    }
    let mut hi = 1.0;
    while f(hi) <= level {
        hi *= 2.0;
        if hi > GROWTH_CAP {
            return f64::INFINITY;
        }
    }
    bisect(0.0, hi, |x| f(x) > level).0
}

/// Relative difference with an absolute floor of one.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}
