//! Derivative-free scalar minimization on a bounded interval.

use crate::error::{invalid, Error, Result};

/// Location and value of a minimum found by [`golden_section`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol`; fails with
/// [`Error::NoConvergence`] after `max_iter` contractions.
pub fn golden_section<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<Minimum>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(invalid("interval", format!("[{lo}, {hi}] is not a finite interval")));
    }
    if !(tol > 0.0) {
        return Err(invalid("tol", "must be positive"));
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut iterations = 0;
    while b - a > tol {
        if iterations == max_iter {
            return Err(Error::NoConvergence { iterations });
        }
        iterations += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let (x, value) = if fc <= fd { (c, fc) } else { (d, fd) };
    Ok(Minimum { x, value, iterations })
}

/// Bisection for a sign change of `f` on `[lo, hi]`, to interval width `tol`.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoRoot(format!("no sign change on [{lo}, {hi}]")));
    }
    let mut fa = fa;
    for _ in 0..max_iter {
        let m = 0.5 * (a + b);
        if b - a <= tol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Err(Error::NoConvergence { iterations: max_iter })
}
