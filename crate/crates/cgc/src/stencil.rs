//! Finite-difference and interpolation weights on uniform 1D node sets.

use std::ops::{Add, Mul};

/// Fornberg's algorithm: weights for derivatives `0..=m` at `z` from nodes `x`.
/// Returns `w[k][j]`, the weight of node `j` for the `k`-th derivative.
pub fn fornberg(z: f64, x: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// A stencil on a line of `n` unit-spaced nodes: first node index and weights.
#[derive(Debug, Clone)]
pub struct Stencil {
    pub start: usize,
    pub weights: Vec<f64>,
}

impl Stencil {
    /// `width` nodes around position `s` (in node units), shifted inward near the ends of `0..n`,
    /// for the `order`-th derivative with unit spacing.
    pub fn at(s: f64, n: usize, width: usize, order: usize) -> Stencil {
        let width = width.min(n);
        let lo = (s.floor() as isize) - (width as isize - 1) / 2;
        let start = lo.clamp(0, (n - width) as isize) as usize;
        let xs: Vec<f64> = (0..width).map(|k| (start + k) as f64).collect();
        let w = fornberg(s, &xs, order);
        Stencil { start, weights: w[order].clone() }
    }

    pub fn apply<T>(&self, get: impl Fn(usize) -> T) -> T
    where
        T: Copy + Add<Output = T> + Mul<f64, Output = T>,
    {
        let mut acc = get(self.start) * self.weights[0];
        for (k, &w) in self.weights.iter().enumerate().skip(1) {
            acc = acc + get(self.start + k) * w;
        }
        acc
    }
}

/// Derivative along a line of nodes with spacing `h`, at node `k`.
pub fn line_derivative<T>(n: usize, k: usize, h: f64, width: usize, order: usize, get: impl Fn(usize) -> T) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    let st = Stencil::at(k as f64, n, width, order);
    st.apply(get) * h.powi(-(order as i32))
}
