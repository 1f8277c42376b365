//! Bracketed one-dimensional minimization.

use crate::error::Result;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenResult {
    pub x: f64,
    pub fx: f64,
    /// Width of the final bracket.
    pub width: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Golden-section search for a minimum of `f` on `[a, b]`, stopping when the
/// bracket is narrower than `tol`. Returns the best point evaluated.
pub fn golden_section<F>(mut f: F, a: f64, b: f64, tol: f64, max_iter: usize) -> Result<GoldenResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };

    let mut iterations = 0;
    while (b - a) > tol && iterations < max_iter {
        iterations += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
            if fd < best.1 {
                best = (d, fd);
            }
        }
    }
    Ok(GoldenResult {
        x: best.0,
        fx: best.1,
        width: b - a,
        iterations,
        converged: (b - a) <= tol,
    })
}

/// Bisection for the boundary between `inside` (where `pred` holds) and
/// `outside`, to within `tol`. Returns the last point known to satisfy `pred`.
pub fn bisect_edge<P>(mut pred: P, inside: f64, outside: f64, tol: f64) -> Result<f64>
where
    P: FnMut(f64) -> Result<bool>,
{
    let (mut lo, mut hi) = (inside, outside);
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
