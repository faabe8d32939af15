//! Dormand–Prince 5(4) embedded Runge–Kutta pair with step-size control.

use crate::Real;

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions<T> {
    pub rtol: T,
    pub atol: T,
    /// Smallest step accepted before giving up, relative to the segment length.
    pub min_step_fraction: T,
    pub max_steps: usize,
}

impl<T: Real> Default for OdeOptions<T> {
    fn default() -> Self {
        Self {
            rtol: T::lit(1e-11),
            atol: T::lit(1e-14),
            min_step_fraction: T::lit(1e-12),
            max_steps: 100_000,
        }
    }
}

/// Reason a segment could not be integrated to the requested tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeFailure<T> {
    pub t: T,
    pub error_estimate: T,
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Fifth-order weights equal the last row of A (FSAL); these are b5 - b4.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `y' = f(t, y)` from `t0` to `t1` and returns `y(t1)`.
///
/// `h0` is the initial step guess; it is updated in place with the last
/// accepted step so consecutive segments can reuse it.
pub fn integrate<T: Real, const D: usize, F>(
    mut f: F,
    t0: T,
    y0: [T; D],
    t1: T,
    h0: &mut T,
    opts: &OdeOptions<T>,
) -> Result<[T; D], OdeFailure<T>>
where
    F: FnMut(T, &[T; D]) -> [T; D],
{
    let span = t1 - t0;
    if span == T::zero() {
        return Ok(y0);
    }
    let min_step = span.abs() * opts.min_step_fraction;
    let mut t = t0;
    let mut y = y0;
    let mut h = h0.abs().min(span.abs()).max(min_step) * span.signum();
    let mut k = [[T::zero(); D]; 7];
    k[0] = f(t, &y);
    let mut steps = 0;
    while (t1 - t) * span.signum() > T::zero() {
        steps += 1;
        if steps > opts.max_steps {
            return Err(OdeFailure {
                t,
                error_estimate: T::infinity(),
            });
        }
        if ((t + h) - t1) * span.signum() > T::zero() {
            h = t1 - t;
        }
        for s in 1..7 {
            let mut ys = y;
            for (d, v) in ys.iter_mut().enumerate() {
                for (j, row) in A[s].iter().enumerate().take(s) {
                    *v += h * T::lit(*row) * k[j][d];
                }
            }
            k[s] = f(t + T::lit(C[s]) * h, &ys);
        }
        let mut y_new = y;
        for (d, v) in y_new.iter_mut().enumerate() {
            for j in 0..6 {
                *v += h * T::lit(A[6][j]) * k[j][d];
            }
        }
        let mut err = T::zero();
        for d in 0..D {
            let mut e = T::zero();
            for j in 0..7 {
                e += T::lit(E[j]) * k[j][d];
            }
            let scale = opts.atol + opts.rtol * y[d].abs().max(y_new[d].abs());
            let r = (h * e / scale).abs();
            err = err.max(r);
        }
        if err <= T::one() || h.abs() <= min_step {
            if err > T::one() {
                return Err(OdeFailure {
                    t,
                    error_estimate: err,
                });
            }
            t = if ((t + h) - t1).abs() <= T::epsilon() * t1.abs() {
                t1
            } else {
                t + h
            };
            y = y_new;
            k[0] = k[6];
            *h0 = h.abs();
        }
        let factor = if err == T::zero() {
            T::lit(5.0)
        } else {
            (T::lit(0.9) * err.powf(T::lit(-0.2)))
                .min(T::lit(5.0))
                .max(T::lit(0.2))
        };
        h = (h * factor).abs().max(min_step) * span.signum();
    }
    Ok(y)
}
