//! Radial grids: geometric near the pole, uniform further out.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec<T> {
    /// Total number of nodes.
    pub nodes: usize,
    /// Ratio between consecutive nodes in the geometric part.
    pub ratio: T,
    /// First node as a fraction of `r_max`.
    pub start_fraction: T,
}

impl<T: Real> Default for GridSpec<T> {
    fn default() -> Self {
        Self {
            nodes: 4096,
            ratio: T::lit(1.05),
            start_fraction: T::lit(1e-6),
        }
    }
}

impl<T: Real> GridSpec<T> {
    pub fn with_nodes(nodes: usize) -> Self {
        Self {
            nodes,
            ..Self::default()
        }
    }

    /// Nodes on `[start_fraction·r_max, r_max]`, with every breakpoint inside
    /// the range present as a node.
    pub fn build(&self, r_max: T, breakpoints: &[T]) -> Result<Vec<T>> {
        if !(r_max.is_finite() && r_max > T::zero()) {
            return Err(invalid(
                "r_max",
                r_max.as_f64(),
                "must be positive and finite",
            ));
        }
        if !(self.ratio > T::one()) {
            return Err(invalid(
                "ratio",
                self.ratio.as_f64(),
                "geometric ratio must exceed 1",
            ));
        }
        if !(self.start_fraction > T::zero() && self.start_fraction < T::one()) {
            return Err(invalid(
                "start_fraction",
                self.start_fraction.as_f64(),
                "must lie in (0, 1)",
            ));
        }
        // Geometric grading runs at least to r = 1 and continues until its
        // step matches the uniform spacing of the remaining nodes.
        let r_start = self.start_fraction * r_max;
        let step = self.ratio - T::one();
        let count_to = |x: T| -> usize {
            if x <= r_start {
                0
            } else {
                ((x / r_start).ln() / self.ratio.ln())
                    .ceil()
                    .to_usize()
                    .unwrap_or(usize::MAX)
            }
        };
        let mut switch = T::one().min(r_max);
        for _ in 0..64 {
            let remaining = self.nodes.saturating_sub(count_to(switch));
            if r_max <= switch || remaining < 2 {
                break;
            }
            let h = (r_max - switch) / T::from_usize_lossy(remaining - 1);
            if h <= switch * step * T::lit(1.000001) {
                break;
            }
            switch = (h / step).min(r_max);
        }
        let mut nodes = Vec::with_capacity(self.nodes + breakpoints.len());
        let mut r = r_start;
        while r < switch * (T::one() - T::lit(1e-9)) {
            nodes.push(r);
            r *= self.ratio;
        }
        if r_max > switch {
            let remaining = self.nodes.saturating_sub(nodes.len());
            if remaining < 2 {
                return Err(invalid(
                    "nodes",
                    self.nodes as f64,
                    "too few nodes for the uniform part of the grid",
                ));
            }
            let h = (r_max - switch) / T::from_usize_lossy(remaining - 1);
            for i in 0..remaining {
                nodes.push(if i + 1 == remaining {
                    r_max
                } else {
                    switch + h * T::from_usize_lossy(i)
                });
            }
        } else {
            nodes.push(r_max);
        }
        for &b in breakpoints {
            if b <= nodes[0] || b >= r_max {
                continue;
            }
            let idx = nodes.partition_point(|x| *x < b);
            let near = |j: usize| (nodes[j] - b).abs() <= T::lit(1e-9) * b;
            if idx < nodes.len() && near(idx) {
                nodes[idx] = b;
            } else if idx > 0 && near(idx - 1) {
                nodes[idx - 1] = b;
            } else {
                nodes.insert(idx, b);
            }
        }
        Ok(nodes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_strictly_increasing_and_hits_breakpoint() {
        let g = GridSpec::<f64>::default()
            .build(200.0, &[1.0, 3.3])
            .unwrap();
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g.contains(&3.3) && g.contains(&1.0));
        assert_eq!(*g.last().unwrap(), 200.0);
        assert!((g[0] - 2e-4).abs() < 1e-18);
    }

    #[test]
    fn small_domain_is_purely_geometric() {
        let g = GridSpec::<f64>::with_nodes(100).build(0.5, &[]).unwrap();
        assert_eq!(*g.last().unwrap(), 0.5);
        assert!(g.windows(2).all(|w| w[1] / w[0] <= 1.05 + 1e-12));
    }

    #[test]
    fn too_few_nodes_rejected() {
        assert!(GridSpec::<f64>::with_nodes(10).build(100.0, &[]).is_err());
    }
}
