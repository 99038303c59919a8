//! Banded LU factorization with partial pivoting.

use crate::{Error, Result};

/// Square matrix with `kl` sub- and `ku` super-diagonals, stored row-wise
/// with room for the `kl` extra super-diagonals that row pivoting creates.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self { n, kl, ku, width, data: vec![0.0; n * width] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, row: usize, col: usize) -> usize {
        debug_assert!(col + self.kl >= row && col <= row + self.ku + self.kl);
        row * self.width + (col + self.kl - row)
    }

    /// Adds `v` to entry `(row, col)`; `col − row` must lie in `[−kl, ku]`.
    pub fn add(&mut self, row: usize, col: usize, v: f64) {
        assert!(col + self.kl >= row && col <= row + self.ku, "entry ({row}, {col}) outside the band");
        let s = self.slot(row, col);
        self.data[s] += v;
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        if col + self.kl < row || col > row + self.ku + self.kl {
            return 0.0;
        }
        self.data[self.slot(row, col)]
    }

    /// `y = A x` for the unfactored matrix.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.ku).min(self.n - 1);
                (lo..=hi).map(|c| self.data[self.slot(i, c)] * x[c]).sum()
            })
            .collect()
    }

    pub fn factor(mut self) -> Result<BandLu> {
        let n = self.n;
        let kl = self.kl;
        let reach = kl + self.ku;
        let mut lower = vec![0.0; n * kl.max(1)];
        let mut pivots = vec![0usize; n];
        for i in 0..n {
            let last_row = (i + kl).min(n - 1);
            let last_col = (i + reach).min(n - 1);
            let mut p = i;
            let mut best = self.data[self.slot(i, i)].abs();
            for r in i + 1..=last_row {
                let v = self.data[self.slot(r, i)].abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return Err(Error::Eigen(format!("singular band matrix at column {i}")));
            }
            pivots[i] = p;
            if p != i {
                for c in i..=last_col {
                    let (a, b) = (self.slot(i, c), self.slot(p, c));
                    self.data.swap(a, b);
                }
            }
            let diag = self.data[self.slot(i, i)];
            for r in i + 1..=last_row {
                let s = self.slot(r, i);
                let m = self.data[s] / diag;
                self.data[s] = 0.0;
                lower[i * kl + (r - i - 1)] = m;
                if m != 0.0 {
                    for c in i + 1..=last_col {
                        let src = self.data[self.slot(i, c)];
                        let dst = self.slot(r, c);
                        self.data[dst] -= m * src;
                    }
                }
            }
        }
        Ok(BandLu { upper: self, lower, pivots })
    }
}

/// Factors `P₁L₁P₂L₂… U` of a [`BandMatrix`].
#[derive(Debug, Clone)]
pub struct BandLu {
    upper: BandMatrix,
    lower: Vec<f64>,
    pivots: Vec<usize>,
}

impl BandLu {
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let u = &self.upper;
        let n = u.n;
        let kl = u.kl;
        for i in 0..n {
            let p = self.pivots[i];
            if p != i {
                b.swap(i, p);
            }
            let bi = b[i];
            if bi != 0.0 {
                for r in i + 1..=(i + kl).min(n - 1) {
                    b[r] -= self.lower[i * kl + (r - i - 1)] * bi;
                }
            }
        }
        let reach = kl + u.ku;
        for i in (0..n).rev() {
            let mut acc = b[i];
            for c in i + 1..=(i + reach).min(n - 1) {
                acc -= u.data[u.slot(i, c)] * b[c];
            }
            b[i] = acc / u.data[u.slot(i, i)];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_mul(rows: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
        rows.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn solves_system_needing_pivots() {
        let n = 40;
        let (kl, ku) = (3, 2);
        let mut m = BandMatrix::zeros(n, kl, ku);
        let mut dense = vec![vec![0.0; n]; n];
        for i in 0..n {
            for c in i.saturating_sub(kl)..=(i + ku).min(n - 1) {
                // tiny diagonal forces row exchanges
                let v = if c == i { 1e-3 } else { ((i * 7 + c * 3) % 11) as f64 - 5.0 };
                m.add(i, c, v);
                dense[i][c] = v;
            }
        }
        let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut b = dense_mul(&dense, &x);
        assert_eq!(m.mul_vec(&x), b);
        m.factor().unwrap().solve_in_place(&mut b);
        for (a, e) in b.iter().zip(&x) {
            assert!((a - e).abs() < 1e-10, "{a} vs {e}");
        }
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = BandMatrix::zeros(4, 1, 1);
        assert!(m.factor().is_err());
    }
}
