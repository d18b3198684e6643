//! Composite Gauss–Legendre rules on graded panels and Richardson extrapolation.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

/// Nodes and weights of a composite rule, in increasing node order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CompositeRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl CompositeRule {
    /// Places an `order`-point Gauss–Legendre rule on every panel between
    /// consecutive `edges`. Empty or reversed panels are skipped.
    pub fn on_panels(edges: &[f64], order: usize) -> Self {
        let rule = GaussLegendre::new(NonZeroUsize::new(order).expect("order > 0"));
        let pairs = rule.as_node_weight_pairs();
        let mut nodes = Vec::with_capacity(edges.len() * order);
        let mut weights = Vec::with_capacity(edges.len() * order);
        for w in edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b <= a {
                continue;
            }
            let half = 0.5 * (b - a);
            let mid = 0.5 * (b + a);
            let mut panel: Vec<(f64, f64)> =
                pairs.iter().map(|&(t, wt)| (mid + half * t, half * wt)).collect();
            panel.sort_by(|p, q| p.0.total_cmp(&q.0));
            for (x, wt) in panel {
                nodes.push(x);
                weights.push(wt);
            }
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Panel edges on `[lo, hi]`: geometric refinement toward `center` (when it lies
/// inside), starting from `finest` next to it and doubling outward, with no panel
/// wider than `coarsest`.
pub fn graded_edges(lo: f64, hi: f64, center: Option<f64>, finest: f64, coarsest: f64) -> Vec<f64> {
    assert!(finest > 0.0 && coarsest >= finest);
    let mut edges = vec![lo, hi];
    let uniform = |a: f64, b: f64, out: &mut Vec<f64>| {
        let n = ((b - a) / coarsest).ceil().max(1.0) as usize;
        for i in 1..n {
            out.push(a + (b - a) * i as f64 / n as f64);
        }
    };
    match center.filter(|c| *c > lo && *c < hi) {
        None => uniform(lo, hi, &mut edges),
        Some(c) => {
            edges.push(c);
            let mut d = finest;
            let mut left_end = c;
            let mut right_end = c;
            while d < coarsest * 2.0 {
                if c - d > lo {
                    edges.push(c - d);
                    left_end = c - d;
                }
                if c + d < hi {
                    edges.push(c + d);
                    right_end = c + d;
                }
                d *= 2.0;
            }
            uniform(lo, left_end, &mut edges);
            uniform(right_end, hi, &mut edges);
        }
    }
    edges.sort_by(|a, b| a.total_cmp(b));
    edges.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * a.abs().max(1.0));
    edges
}

/// Richardson table for a sequence computed at steps `η_0, η_0/2, η_0/4, …`
/// with an error expansion in integer powers of `η`.
#[derive(Debug, Clone, PartialEq)]
pub struct Richardson<T> {
    /// `table[j][m]`: row `j` (finest input `j`), elimination order `m ≤ j`.
    pub table: Vec<Vec<T>>,
}

impl<T> Richardson<T>
where
    T: Copy + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
{
    pub fn new(sequence: &[T]) -> Self {
        let mut table: Vec<Vec<T>> = Vec::with_capacity(sequence.len());
        for (j, &s) in sequence.iter().enumerate() {
            let mut row = vec![s];
            for m in 1..=j {
                let f = (1u64 << m) as f64;
                let prev = table[j - 1][m - 1];
                let cur = row[m - 1];
                row.push((cur * f - prev) * (1.0 / (f - 1.0)));
            }
            table.push(row);
        }
        Self { table }
    }

    pub fn diagonal(&self) -> Vec<T> {
        self.table.iter().enumerate().map(|(j, r)| r[j]).collect()
    }
}
