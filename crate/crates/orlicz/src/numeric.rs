//! Shared numerical primitives: extended-real arithmetic on `[0, ∞]`,
//! logarithmic grids, monotone-predicate bisection and golden-section
//! minimization.
//!
//! Extended nonnegative reals are plain `f64` values with `f64::INFINITY`
//! as the point at infinity. The only convention beyond IEEE is that
//! products treat `0 · ∞ = 0` (the measure-theoretic convention), which
//! matters when growth-condition ratios mix vanishing and infinite terms.

/// Extended-real product with the `0 · ∞ = 0` convention.
pub fn ext_mul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

/// Returns `n` log-spaced points on `[lo, hi]` (inclusive endpoints).
///
/// Requires `0 < lo < hi` and `n >= 2`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(
        lo > 0.0 && hi > lo && n >= 2,
        "log_grid wants 0 < lo < hi, n >= 2"
    );
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            let f = i as f64 / (n - 1) as f64;
            (llo + f * (lhi - llo)).exp()
        })
        .collect()
}

/// Outcome of a monotone-predicate bisection.
#[derive(Debug, Clone, Copy)]
pub struct Bisection {
    /// Largest probed point where the predicate was false.
    pub lo: f64,
    /// Smallest probed point where the predicate was true.
    pub hi: f64,
    pub iterations: usize,
}

/// Bisects for the boundary of a monotone predicate `pred` on `[lo, hi]`.
///
/// `pred` must be false at `lo`, true at `hi`, and monotone (false then
/// true) in between. Stops once `hi - lo <= tol(mid)` or after `max_iter`
/// splits, whichever comes first.
pub fn bisect_monotone<P, T>(
    mut lo: f64,
    mut hi: f64,
    pred: P,
    tol: T,
    max_iter: usize,
) -> Bisection
where
    P: Fn(f64) -> bool,
    T: Fn(f64) -> f64,
{
    let mut iterations = 0;
    while iterations < max_iter {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break; // float exhaustion
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
        if hi - lo <= tol(0.5 * (lo + hi)) {
            break;
        }
    }
    Bisection { lo, hi, iterations }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimum of a unimodal `f` on `[a, b]`.
///
/// Returns `(argmin, min)`. Extended values (`+∞`) are permitted; the
/// routine only compares, so infinities just steer the bracket.
pub fn golden_min<F: Fn(f64) -> f64>(
    mut a: f64,
    mut b: f64,
    f: F,
    tol: f64,
    max_iter: usize,
) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol * (1.0 + a.abs() + b.abs()) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    // keep the best of the three probes we still hold
    if fc <= fx && fc <= fd {
        (c, fc)
    } else if fd <= fx {
        (d, fd)
    } else {
        (x, fx)
    }
}

/// Golden-section maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(
    a: f64,
    b: f64,
    f: F,
    tol: f64,
    max_iter: usize,
) -> (f64, f64) {
    let (x, v) = golden_min(a, b, |t| -f(t), tol, max_iter);
    (x, -v)
}

/// Relative closeness with an additive floor: `|a - b| <= tol * (1 + max(|a|,|b|))`.
pub fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true; // covers inf == inf
    }
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-3, 1e3, 7);
        assert_eq!(g.len(), 7);
        assert!((g[0] - 1e-3).abs() < 1e-15);
        assert!((g[6] - 1e3).abs() < 1e-12);
        assert!((g[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bisection_finds_sqrt() {
        let b = bisect_monotone(0.0, 10.0, |x| x * x >= 2.0, |_| 1e-14, 200);
        assert!((0.5 * (b.lo + b.hi) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn golden_finds_parabola_min() {
        let (x, v) = golden_min(-4.0, 9.0, |t| (t - 1.5) * (t - 1.5) + 2.0, 1e-12, 300);
        assert!((x - 1.5).abs() < 1e-6);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn golden_handles_infinite_plateau() {
        // min of 1/x on [1, 8] with +inf left of 2: boundary minimum
        let f = |x: f64| if x < 2.0 { f64::INFINITY } else { 1.0 / x };
        let (x, v) = golden_min(1.0, 8.0, f, 1e-12, 300);
        assert!((x - 8.0).abs() < 1e-6);
        assert!((v - 0.125).abs() < 1e-9);
    }

    #[test]
    fn ext_mul_zero_absorbs_inf() {
        assert_eq!(ext_mul(0.0, f64::INFINITY), 0.0);
        assert_eq!(ext_mul(f64::INFINITY, 2.0), f64::INFINITY);
    }
}
