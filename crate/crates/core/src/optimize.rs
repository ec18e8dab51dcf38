//! One-dimensional search used for width, diameter and covering optimization.
//!
//! The objectives are piecewise smooth along boundary pieces: a coarse scan
//! brackets every local extremum, and golden-section search polishes each
//! bracket.

/// Iteration cap for one golden-section run.
pub(crate) const MAX_ITER: usize = 200;
/// Bracket width at which golden-section search stops.
pub(crate) const PARAM_TOL: f64 = 1e-11;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Minimizes `f` on `[a, b]`; returns `(argmin, min)`.
pub(crate) fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..MAX_ITER {
        if (b - a).abs() < PARAM_TOL {
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
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Scans `f` on the grid `ts` and polishes every local minimum of the scan.
/// Returns the polished `(t, value)` pairs in grid order.
pub(crate) fn local_minima<F: FnMut(f64) -> f64>(mut f: F, ts: &[f64]) -> Vec<(f64, f64)> {
    let vals: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
    let n = ts.len();
    let mut out = Vec::new();
    for i in 0..n {
        let left = if i > 0 { vals[i - 1] } else { f64::INFINITY };
        let right = if i + 1 < n {
            vals[i + 1]
        } else {
            f64::INFINITY
        };
        if vals[i] <= left && vals[i] < right || vals[i] < left && vals[i] <= right {
            let lo = ts[i.saturating_sub(1)];
            let hi = ts[(i + 1).min(n - 1)];
            let polished = if hi > lo {
                golden_min(&mut f, lo, hi)
            } else {
                (ts[i], vals[i])
            };
            out.push(if polished.1 <= vals[i] {
                polished
            } else {
                (ts[i], vals[i])
            });
        }
    }
    if out.is_empty() {
        // Constant on the grid.
        out.push((ts[0], vals[0]));
    }
    out
}

/// Best of [`local_minima`]; never worse than the best grid value.
pub(crate) fn scan_and_polish_min<F: FnMut(f64) -> f64>(f: F, ts: &[f64]) -> (f64, f64) {
    debug_assert!(!ts.is_empty());
    local_minima(f, ts)
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one minimum")
}

/// Maximizing counterpart of [`scan_and_polish_min`].
pub(crate) fn scan_and_polish_max<F: FnMut(f64) -> f64>(mut f: F, ts: &[f64]) -> (f64, f64) {
    let (t, v) = scan_and_polish_min(|x| -f(x), ts);
    (t, -v)
}

/// Bisection for an increasing function with `f(lo) < 0 < f(hi)`.
pub(crate) fn bisect_increasing<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
) -> Option<f64> {
    if !(f(lo) < 0.0 && f(hi) > 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
