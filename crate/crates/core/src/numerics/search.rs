//! One-dimensional maximization and root bracketing.

use crate::Real;

/// Golden-section maximization of a unimodal `f` on `[a, b]`.
///
/// Returns `(x*, f(x*), iterations)` once the bracket is narrower than
/// `rel_tol·|x|`.
pub fn golden_max<T: Real, F: FnMut(T) -> T>(
    mut a: T,
    mut b: T,
    rel_tol: T,
    max_iter: usize,
    mut f: F,
) -> (T, T, usize) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iters = 0;
    while iters < max_iter && (b - a).abs() > rel_tol * (c.abs() + d.abs()) * T::lit(0.5) {
        iters += 1;
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc, iters)
    } else {
        (d, fd, iters)
    }
}

/// Bisection for a sign change of `f` on `[a, b]`; `None` if the signs agree.
pub fn bisect<T: Real, F: FnMut(T) -> T>(
    mut a: T,
    mut b: T,
    max_iter: usize,
    mut f: F,
) -> Option<T> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == T::zero() {
        return Some(a);
    }
    if fb == T::zero() {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..max_iter {
        let m = (a + b) * T::lit(0.5);
        if m <= a.min(b) || m >= a.max(b) {
            break;
        }
        let fm = f(m);
        if fm == T::zero() {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some((a + b) * T::lit(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, fx, _) = golden_max(0.0f64, 3.0, 1e-10, 200, |x| -(x - 1.3).powi(2) + 2.0);
        assert!((x - 1.3).abs() < 1e-6);
        assert!((fx - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bisect_root() {
        let r = bisect(0.0f64, 2.0, 200, |x| x * x - 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        assert!(bisect(0.0f64, 1.0, 10, |x| x + 1.0).is_none());
    }
}
