//! Symmetric tridiagonal pencils `K - λM`: inertia counts, solves and
//! inverse iteration.

use crate::Real;

/// Symmetric tridiagonal matrix stored as diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Real> SymTridiag<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Self {
        debug_assert_eq!(off.len() + 1, diag.len().max(1));
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        let n = self.len();
        let mut y = vec![T::zero(); n];
        for i in 0..n {
            let mut s = self.diag[i] * x[i];
            if i > 0 {
                s += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                s += self.off[i] * x[i + 1];
            }
            y[i] = s;
        }
        y
    }

    /// `self - lambda * other`.
    pub fn shifted(&self, lambda: T, other: &Self) -> Self {
        Self {
            diag: self
                .diag
                .iter()
                .zip(&other.diag)
                .map(|(a, b)| *a - lambda * *b)
                .collect(),
            off: self
                .off
                .iter()
                .zip(&other.off)
                .map(|(a, b)| *a - lambda * *b)
                .collect(),
        }
    }

    /// Number of negative pivots in the LDLᵀ factorization, which by
    /// Sylvester's law equals the number of negative eigenvalues.
    pub fn negative_count(&self) -> usize {
        let mut count = 0;
        let mut d = T::one();
        let tiny = T::min_positive_value().sqrt();
        for i in 0..self.len() {
            d = if i == 0 {
                self.diag[0]
            } else {
                self.diag[i] - self.off[i - 1] * self.off[i - 1] / d
            };
            if d == T::zero() {
                d = -tiny;
            }
            if d < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// Thomas algorithm; `None` on a zero pivot.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        let n = self.len();
        if n == 0 {
            return Some(Vec::new());
        }
        let mut piv = vec![T::zero(); n];
        let mut x = rhs.to_vec();
        piv[0] = self.diag[0];
        for i in 1..n {
            if piv[i - 1] == T::zero() {
                return None;
            }
            let l = self.off[i - 1] / piv[i - 1];
            piv[i] = self.diag[i] - l * self.off[i - 1];
            x[i] = x[i] - l * x[i - 1];
        }
        if piv[n - 1] == T::zero() || piv.iter().any(|p| !p.is_finite()) {
            return None;
        }
        x[n - 1] /= piv[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = (x[i] - self.off[i] * x[i + 1]) / piv[i];
        }
        Some(x)
    }
}

/// Smallest eigenpair of `K v = λ M v` with `M` positive definite.
///
/// Bisection on the inertia of `K - λM` brackets λ to `rel_tol`, then a few
/// steps of shifted inverse iteration recover the vector, normalized to
/// `vᵀMv = 1` with a positive first entry.
pub fn smallest_generalized_eigen<T: Real>(
    k: &SymTridiag<T>,
    m: &SymTridiag<T>,
    rel_tol: T,
) -> Option<(T, Vec<T>)> {
    let n = k.len();
    if n == 0 {
        return None;
    }
    // Upper bound from a Rayleigh quotient of the constant vector, then grow.
    let ones = vec![T::one(); n];
    let kq: T = k.mul_vec(&ones).iter().copied().sum();
    let mq: T = m.mul_vec(&ones).iter().copied().sum();
    let mut hi = (kq / mq).abs().max(T::min_positive_value());
    let mut guard = 0;
    while k.shifted(hi, m).negative_count() == 0 {
        hi *= T::lit(2.0);
        guard += 1;
        if guard > 2000 {
            return None;
        }
    }
    let mut lo = T::zero();
    if k.shifted(lo, m).negative_count() > 0 {
        lo = -hi;
        while k.shifted(lo, m).negative_count() > 0 {
            lo *= T::lit(2.0);
            guard += 1;
            if guard > 4000 {
                return None;
            }
        }
    }
    for _ in 0..400 {
        let mid = (lo + hi) * T::lit(0.5);
        if k.shifted(mid, m).negative_count() >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= rel_tol * hi.abs().max(lo.abs()) {
            break;
        }
    }
    let lambda = (lo + hi) * T::lit(0.5);
    // Shift slightly below to keep the factorization away from singular.
    let sigma = lambda - (hi - lo).max(lambda.abs() * T::epsilon() * T::lit(16.0));
    let a = k.shifted(sigma, m);
    let mut v = vec![T::one(); n];
    for _ in 0..6 {
        let rhs = m.mul_vec(&v);
        let w = a.solve(&rhs)?;
        let norm = w
            .iter()
            .zip(m.mul_vec(&w))
            .map(|(x, y)| *x * y)
            .sum::<T>()
            .sqrt();
        if !norm.is_finite() || norm == T::zero() {
            return None;
        }
        v = w.into_iter().map(|x| x / norm).collect();
    }
    if v[0] < T::zero() {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    let num: T = v.iter().zip(k.mul_vec(&v)).map(|(x, y)| *x * y).sum();
    let den: T = v.iter().zip(m.mul_vec(&v)).map(|(x, y)| *x * y).sum();
    Some((num / den, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian(n: usize, h: f64) -> (SymTridiag<f64>, SymTridiag<f64>) {
        let k = SymTridiag::new(vec![2.0 / h; n], vec![-1.0 / h; n - 1]);
        let m = SymTridiag::new(vec![4.0 * h / 6.0; n], vec![h / 6.0; n - 1]);
        (k, m)
    }

    #[test]
    fn dirichlet_laplacian_on_unit_interval() {
        let n = 399;
        let h = 1.0 / (n as f64 + 1.0);
        let (k, m) = laplacian(n, h);
        let (lambda, v) = smallest_generalized_eigen(&k, &m, 1e-14).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((lambda - pi2).abs() / pi2 < 1e-4, "{lambda}");
        assert!(v.iter().all(|x| *x > 0.0));
    }

    #[test]
    fn solve_matches_product() {
        let (k, _) = laplacian(10, 0.1);
        let x: Vec<f64> = (0..10).map(|i| (i as f64).sin()).collect();
        let b = k.mul_vec(&x);
        let y = k.solve(&b).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn inertia_counts_eigenvalues() {
        let t = SymTridiag::new(vec![1.0f64, 2.0, 3.0], vec![0.0, 0.0]);
        assert_eq!(
            t.shifted(2.5, &SymTridiag::new(vec![1.0; 3], vec![0.0; 2]))
                .negative_count(),
            2
        );
    }
}
