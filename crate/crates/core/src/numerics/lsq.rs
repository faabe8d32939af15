//! Small dense least-squares fits via Householder QR.

use crate::Real;

/// Solves `min ||A x - b||` for a tall matrix given as rows.
///
/// Returns the coefficients and the residual norm, or `None` if the columns
/// are numerically dependent.
pub fn least_squares<T: Real>(rows: &[Vec<T>], b: &[T]) -> Option<(Vec<T>, T)> {
    let m = rows.len();
    let n = rows.first()?.len();
    if m < n || b.len() != m {
        return None;
    }
    // Column-major working copy.
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect();
    let mut rhs = b.to_vec();
    let scale: T = a
        .iter()
        .flatten()
        .fold(T::zero(), |acc, v| acc.max(v.abs()));
    for j in 0..n {
        let norm = a[j][j..].iter().map(|v| *v * *v).sum::<T>().sqrt();
        if norm <= scale * T::epsilon() * T::from_usize_lossy(m) {
            return None;
        }
        let alpha = if a[j][j] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = a[j][j..].to_vec();
        v[0] -= alpha;
        let vnorm2 = v.iter().map(|x| *x * *x).sum::<T>();
        if vnorm2 == T::zero() {
            continue;
        }
        let two = T::lit(2.0);
        for col in a.iter_mut().skip(j) {
            let dot: T = v.iter().zip(&col[j..]).map(|(x, y)| *x * *y).sum();
            let f = two * dot / vnorm2;
            for (c, vi) in col[j..].iter_mut().zip(&v) {
                *c -= f * *vi;
            }
        }
        let dot: T = v.iter().zip(&rhs[j..]).map(|(x, y)| *x * *y).sum();
        let f = two * dot / vnorm2;
        for (c, vi) in rhs[j..].iter_mut().zip(&v) {
            *c -= f * *vi;
        }
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for j in i + 1..n {
            s -= a[j][i] * x[j];
        }
        x[i] = s / a[i][i];
    }
    let resid = rhs[n..].iter().map(|v| *v * *v).sum::<T>().sqrt();
    Some((x, resid))
}
