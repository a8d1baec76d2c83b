//! Column-stochastic transition matrix over a fixed vertex order.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::HotspotGraph;

/// Sparse column-stochastic matrix: entry `(j, i)` is the probability of
/// moving from vertex `i` to vertex `j`. Columns of sink vertices are
/// empty (all-zero). Row/column indices follow `order`, the sorted vertex
/// ids of the graph the matrix was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    order: Vec<String>,
    /// `cols[i]` holds `(row, value)` pairs sorted by row; values > 0.
    cols: Vec<Vec<(u32, f64)>>,
}

/// Fraction of nonzero entries above which expansion switches to the
/// dense multiply path.
const DENSE_SWITCH: f64 = 0.25;

impl TransitionMatrix {
    /// Normalizes each vertex's out-edge weights into a probability
    /// column. Vertices without outgoing weight get an all-zero column.
    pub fn from_graph(g: &HotspotGraph) -> Self {
        let n = g.vertex_count();
        let mut cols = Vec::with_capacity(n);
        for i in 0..n as u32 {
            let total = g.out_weight_at(i);
            let col: Vec<(u32, f64)> = if total > 0.0 {
                g.out_edges_at(i)
                    .iter()
                    .filter(|(_, w)| *w > 0.0)
                    .map(|(j, w)| (*j, w / total))
                    .collect()
            } else {
                Vec::new()
            };
            cols.push(col);
        }
        TransitionMatrix {
            order: g.vertex_ids().to_vec(),
            cols,
        }
    }

    /// Vertex ids fixing the row/column index.
    pub fn order(&self) -> &[String] {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    /// Entry at `(row, col)`; zero when absent.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.cols[col]
            .binary_search_by_key(&(row as u32), |(r, _)| *r)
            .map(|i| self.cols[col][i].1)
            .unwrap_or(0.0)
    }

    /// Sparse column `i` as `(row, value)` pairs sorted by row.
    pub fn column(&self, i: usize) -> &[(u32, f64)] {
        &self.cols[i]
    }

    pub fn nonzero_count(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column_sum(&self, i: usize) -> f64 {
        self.cols[i].iter().map(|(_, v)| v).sum()
    }

    /// True when every nonzero column sums to one within `eps` and all
    /// entries lie in `[0, 1]`.
    pub fn is_column_stochastic(&self, eps: f64) -> bool {
        self.cols.iter().all(|col| {
            col.is_empty()
                || ((col.iter().map(|(_, v)| v).sum::<f64>() - 1.0).abs() <= eps
                    && col.iter().all(|(_, v)| (0.0..=1.0 + eps).contains(v)))
        })
    }

    /// Dense column-major copy (`n * n` values, column `i` contiguous).
    pub fn to_dense_col_major(&self) -> Vec<f64> {
        let n = self.dim();
        let mut dense = vec![0.0; n * n];
        for (i, col) in self.cols.iter().enumerate() {
            let slot = &mut dense[i * n..(i + 1) * n];
            for (r, v) in col {
                slot[*r as usize] = *v;
            }
        }
        dense
    }

    /// `self` raised to `power` by repeated multiplication. `power` zero
    /// or one returns a copy.
    pub(crate) fn expand(&self, power: u32) -> TransitionMatrix {
        let mut result = self.clone();
        for _ in 1..power.max(1) {
            result = result.multiply(self);
        }
        result
    }

    /// `self * rhs`. Chooses between a sparse scatter kernel and a packed
    /// dense kernel by density; both accumulate in ascending column order
    /// of `self`, so they produce bit-identical results.
    pub(crate) fn multiply(&self, rhs: &TransitionMatrix) -> TransitionMatrix {
        let n = self.dim();
        debug_assert_eq!(rhs.dim(), n);
        if n == 0 {
            return self.clone();
        }
        let density = self.nonzero_count() as f64 / (n as f64 * n as f64);
        let cols = if density > DENSE_SWITCH {
            self.multiply_dense(rhs)
        } else {
            self.multiply_sparse(rhs)
        };
        TransitionMatrix {
            order: self.order.clone(),
            cols,
        }
    }

    fn multiply_sparse(&self, rhs: &TransitionMatrix) -> Vec<Vec<(u32, f64)>> {
        let n = self.dim();
        let mut accum = vec![0.0f64; n];
        let mut touched: Vec<u32> = Vec::with_capacity(n);
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            for &(k, vk) in &rhs.cols[j] {
                for &(i, vi) in &self.cols[k as usize] {
                    let cell = &mut accum[i as usize];
                    if *cell == 0.0 {
                        touched.push(i);
                    }
                    *cell += vi * vk;
                }
            }
            touched.sort_unstable();
            let col: Vec<(u32, f64)> = touched
                .iter()
                .map(|&i| (i, accum[i as usize]))
                .collect();
            for &i in &touched {
                accum[i as usize] = 0.0;
            }
            touched.clear();
            cols.push(col);
        }
        cols
    }

    fn multiply_dense(&self, rhs: &TransitionMatrix) -> Vec<Vec<(u32, f64)>> {
        let n = self.dim();
        let lhs = self.to_dense_col_major();
        let mut cols = Vec::with_capacity(n);
        let mut accum = vec![0.0f64; n];
        for j in 0..n {
            accum.fill(0.0);
            for &(k, vk) in &rhs.cols[j] {
                let lhs_col = &lhs[k as usize * n..(k as usize + 1) * n];
                for (cell, &l) in accum.iter_mut().zip(lhs_col) {
                    *cell += l * vk;
                }
            }
            cols.push(
                accum
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0.0)
                    .map(|(i, v)| (i as u32, *v))
                    .collect(),
            );
        }
        cols
    }

    /// Entrywise power, pruning of entries below `prune_eps`, then column
    /// renormalization.
    pub(crate) fn inflate(&mut self, power: f64, prune_eps: f64) {
        for col in &mut self.cols {
            for (_, v) in col.iter_mut() {
                *v = libm::pow(*v, power);
            }
            col.retain(|(_, v)| *v >= prune_eps);
            let sum: f64 = col.iter().map(|(_, v)| v).sum();
            if sum > 0.0 {
                for (_, v) in col.iter_mut() {
                    *v /= sum;
                }
            }
        }
    }

    /// Largest absolute entrywise difference between two matrices over the
    /// union of their supports.
    pub(crate) fn max_abs_diff(&self, other: &TransitionMatrix) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        let mut max = 0.0f64;
        for (a, b) in self.cols.iter().zip(other.cols.iter()) {
            let (mut ia, mut ib) = (0, 0);
            while ia < a.len() || ib < b.len() {
                let d = match (a.get(ia), b.get(ib)) {
                    (Some(&(ra, va)), Some(&(rb, vb))) => {
                        if ra == rb {
                            ia += 1;
                            ib += 1;
                            (va - vb).abs()
                        } else if ra < rb {
                            ia += 1;
                            va.abs()
                        } else {
                            ib += 1;
                            vb.abs()
                        }
                    }
                    (Some(&(_, va)), None) => {
                        ia += 1;
                        va.abs()
                    }
                    (None, Some(&(_, vb))) => {
                        ib += 1;
                        vb.abs()
                    }
                    (None, None) => unreachable!(),
                };
                if d > max {
                    max = d;
                }
            }
        }
        max
    }

    /// Row indices with a nonzero diagonal entry (the attractors of a
    /// converged flow matrix).
    pub(crate) fn diagonal_support(&self) -> Vec<bool> {
        let n = self.dim();
        let mut diag = vec![false; n];
        for (j, col) in self.cols.iter().enumerate() {
            if col.binary_search_by_key(&(j as u32), |(r, _)| *r).is_ok() {
                diag[j] = true;
            }
        }
        diag
    }
}

pub(crate) struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // attach the larger root under the smaller, keeping component
            // representatives stable across union orders
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Sorted members per component, ordered by smallest member.
    pub(crate) fn components(&mut self) -> Vec<Vec<u32>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<u32>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x as u32);
        }
        by_root.retain(|c| !c.is_empty());
        by_root
    }
}
