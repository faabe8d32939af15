//! Gauss–Legendre and adaptive Gauss–Kronrod quadrature.

use crate::Real;

// 8-point Gauss–Legendre on [-1, 1] (positive half; symmetric).
const GL8_X: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_W: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

// Kronrod 15 / Gauss 7 on [-1, 1], abscissae in decreasing order, centre last.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Nodes and weights of the 8-point Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_8<T: Real>(a: T, b: T) -> [(T, T); 8] {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    let mut out = [(T::zero(), T::zero()); 8];
    for k in 0..4 {
        let dx = half * T::lit(GL8_X[k]);
        let w = half * T::lit(GL8_W[k]);
        out[2 * k] = (mid - dx, w);
        out[2 * k + 1] = (mid + dx, w);
    }
    out
}

/// Fixed 8-point Gauss–Legendre approximation of `∫_a^b f`.
pub fn gauss_legendre<T: Real, F: FnMut(T) -> T>(a: T, b: T, mut f: F) -> T {
    gauss_legendre_8(a, b)
        .iter()
        .map(|&(x, w)| w * f(x))
        .fold(T::zero(), |acc, v| acc + v)
}

fn gk15<T: Real, F: FnMut(T) -> T>(a: T, b: T, f: &mut F) -> (T, T) {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    let fc = f(mid);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let pair = f(mid - dx) + f(mid + dx);
        kronrod += T::lit(WGK[j]) * pair;
        if j % 2 == 1 {
            gauss += T::lit(WG[j / 2]) * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive Gauss–Kronrod (7/15) integration of `f` over `[a, b]`.
///
/// Bisects the interval with the largest error estimate until the total
/// estimate drops below `max(abs_tol, rel_tol·|I|)` or `max_intervals` is hit.
pub fn integrate<T: Real, F: FnMut(T) -> T>(
    a: T,
    b: T,
    abs_tol: T,
    rel_tol: T,
    max_intervals: usize,
    mut f: F,
) -> T {
    if a == b {
        return T::zero();
    }
    let (v, e) = gk15(a, b, &mut f);
    let mut pieces = vec![(a, b, v, e)];
    loop {
        let total: T = pieces.iter().map(|p| p.2).sum();
        let err: T = pieces.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) || pieces.len() >= max_intervals {
            return total;
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |best, (i, p)| {
                if p.3 > best.1 {
                    (i, p.3)
                } else {
                    best
                }
            });
        let (lo, hi, _, _) = pieces.swap_remove(idx);
        let m = (lo + hi) * T::lit(0.5);
        if m <= lo || m >= hi {
            return total;
        }
        let (v1, e1) = gk15(lo, m, &mut f);
        let (v2, e2) = gk15(m, hi, &mut f);
        pieces.push((lo, m, v1, e1));
        pieces.push((m, hi, v2, e2));
    }
}

/// `∫_0^∞ f(x) dx` for integrands that decay at least exponentially in `x`.
pub fn integrate_decaying<T: Real, F: FnMut(T) -> T>(rel_tol: T, max_blocks: usize, f: F) -> T {
    integrate_dyadic(T::infinity(), rel_tol, max_blocks, f)
}

/// `∫_0^upper f(x) dx` over the dyadic blocks `[0,1], [1,2], [2,4], ...`,
/// stopping early once a block contributes less than `rel_tol` of the
/// running total. Suited to integrands concentrated near `x = 0`.
pub fn integrate_dyadic<T: Real, F: FnMut(T) -> T>(
    upper: T,
    rel_tol: T,
    max_blocks: usize,
    mut f: F,
) -> T {
    let mut total = T::zero();
    let mut lo = T::zero();
    let mut hi = T::one().min(upper);
    for _ in 0..max_blocks {
        if hi <= lo {
            break;
        }
        let piece = integrate(lo, hi, T::zero(), rel_tol, 64, &mut f);
        total += piece;
        if hi >= upper || piece.abs() <= rel_tol * total.abs() {
            break;
        }
        lo = hi;
        hi = (hi * T::lit(2.0)).min(upper);
    }
    total
}
