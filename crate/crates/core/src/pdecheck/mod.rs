//! Direct finite-difference realization of the Dirichlet-to-Neumann map on
//! axisymmetric wavy cylinders `{ |x| < R(t) } ⊂ ℝ^n × ℝ/Tℤ`.
//!
//! The meridian domain `{ (r, t) : 0 ≤ r < R(t) }` is mapped to the rectangle
//! `(ρ, t) ∈ [0, 1] × [0, T)` by `r = ρ R(t)`. With `a = R′/R` the Laplacian
//! `∂_r² + (n−1)/r ∂_r + ∂_t²` becomes
//!
//! ```text
//! (1/R² + ρ²a²) U_ρρ − 2ρa U_ρt + U_tt + ((n−1)/(ρR²) + ρ(2a² − R″/R)) U_ρ
//! ```
//!
//! discretized with second-order centered differences on `ρ_i = i/N_r`,
//! `t_j = jT/N_t`. The first Dirichlet eigenpair comes from inverse power
//! iteration with a banded LU factorization.

mod banded;

use std::f64::consts::PI;

pub use banded::{BandLu, BandMatrix};

use crate::spectrum::ln_sphere_volume;
use crate::{Error, Result};

/// Default perturbation amplitude for [`linearized_coefficient`].
pub const DEFAULT_EPS: f64 = 1e-3;
/// Default eigenvalue tolerance of the inverse iteration.
pub const DEFAULT_TOL: f64 = 1e-13;
const MAX_INVERSE_ITERATIONS: usize = 2000;

/// Axisymmetric boundary `R(t) = 1 + Σ a_m cos(2π m t / T)` on a mapped grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MeridianGrid {
    pub n: usize,
    pub period: f64,
    pub nr: usize,
    pub nt: usize,
    /// `(m, a_m)` cosine modes of `R − 1`.
    pub modes: Vec<(usize, f64)>,
    /// `R(t_j)`.
    pub radius: Vec<f64>,
    /// `R′(t_j)`.
    pub radius_dt: Vec<f64>,
    /// `R″(t_j)`.
    pub radius_dtt: Vec<f64>,
}

impl MeridianGrid {
    pub fn new(n: usize, period: f64, nr: usize, nt: usize, modes: &[(usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("dimension must be >= 1"));
        }
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::domain(format!("period must be positive, got {period}")));
        }
        if nr < 16 {
            return Err(Error::domain(format!("nr must be >= 16, got {nr}")));
        }
        if nt < 4 || !nt.is_multiple_of(2) {
            return Err(Error::domain(format!("nt must be even and >= 4, got {nt}")));
        }
        let w = 2.0 * PI / period;
        let mut radius = vec![1.0; nt];
        let mut radius_dt = vec![0.0; nt];
        let mut radius_dtt = vec![0.0; nt];
        for j in 0..nt {
            let t = period * j as f64 / nt as f64;
            for &(m, amp) in modes {
                let k = w * m as f64;
                let (s, c) = (k * t).sin_cos();
                radius[j] += amp * c;
                radius_dt[j] -= amp * k * s;
                radius_dtt[j] -= amp * k * k * c;
            }
        }
        if let Some(bad) = radius.iter().find(|r| !(**r > 0.0)) {
            return Err(Error::domain(format!("boundary radius {bad} is not positive")));
        }
        Ok(Self { n, period, nr, nt, modes: modes.to_vec(), radius, radius_dt, radius_dtt })
    }

    /// The straight cylinder `R ≡ 1`.
    pub fn cylinder(n: usize, period: f64, nr: usize, nt: usize) -> Result<Self> {
        Self::new(n, period, nr, nt, &[])
    }

    /// `R(t) = 1 + eps cos(2πkt/T)`.
    pub fn cosine(n: usize, period: f64, k: usize, eps: f64, nr: usize, nt: usize) -> Result<Self> {
        Self::new(n, period, nr, nt, &[(k, eps)])
    }

    pub fn h_rho(&self) -> f64 {
        1.0 / self.nr as f64
    }

    pub fn h_t(&self) -> f64 {
        self.period / self.nt as f64
    }

    pub fn t(&self, j: usize) -> f64 {
        self.period * j as f64 / self.nt as f64
    }

    /// Number of unknowns (`ρ_i`, `i < N_r`, times `N_t`).
    pub fn unknowns(&self) -> usize {
        self.nr * self.nt
    }

    /// Position of `t_j` in the interleaved order `0, N_t−1, 1, N_t−2, …`,
    /// which keeps periodic neighbours within distance 2.
    fn slot_t(&self, j: usize) -> usize {
        if 2 * j < self.nt {
            2 * j
        } else {
            2 * (self.nt - 1 - j) + 1
        }
    }

    /// Flat index of node `(ρ_i, t_j)`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.nt + self.slot_t(j)
    }

    fn bandwidth(&self) -> usize {
        self.nt + 2
    }

    /// Trapezoid weight of `ρ_i` times `r^{n−1} dr dt` at `(i, j)`, times `|S^{n−1}|`.
    fn volume_weight(&self, i: usize, j: usize, sphere: f64) -> f64 {
        let h = self.h_rho();
        let w = if i == 0 { 0.5 * h } else { h };
        let r = self.radius[j];
        let rho = i as f64 * h;
        sphere * w * self.h_t() * r * (rho * r).powi(self.n as i32 - 1)
    }

    /// `−Δ` on the mapped grid with homogeneous Dirichlet data at `ρ = 1`.
    pub fn assemble(&self) -> BandMatrix {
        let (nr, nt) = (self.nr, self.nt);
        let bw = self.bandwidth();
        let mut m = BandMatrix::zeros(self.unknowns(), bw, bw);
        let h = self.h_rho();
        let tau = self.h_t();
        let nf = self.n as f64;
        for j in 0..nt {
            let jp = (j + 1) % nt;
            let jm = (j + nt - 1) % nt;
            let r = self.radius[j];
            let a = self.radius_dt[j] / r;
            let rdd = self.radius_dtt[j] / r;
            for i in 0..nr {
                let row = self.index(i, j);
                let mut put = |ii: usize, jj: usize, v: f64| {
                    if ii < nr {
                        m.add(row, self.index(ii, jj), -v);
                    }
                };
                put(i, jp, 1.0 / (tau * tau));
                put(i, jm, 1.0 / (tau * tau));
                put(i, j, -2.0 / (tau * tau));
                if i == 0 {
                    // even reflection U_{−1} = U_1 and Δ_r → n ∂_r² on the axis
                    let c = 2.0 * nf / (h * h * r * r);
                    put(1, j, c);
                    put(0, j, -c);
                    continue;
                }
                let rho = i as f64 * h;
                let a_rr = 1.0 / (r * r) + rho * rho * a * a;
                let b_rt = -2.0 * rho * a;
                let d_r = (nf - 1.0) / (rho * r * r) + rho * (2.0 * a * a - rdd);
                put(i + 1, j, a_rr / (h * h) + d_r / (2.0 * h));
                put(i - 1, j, a_rr / (h * h) - d_r / (2.0 * h));
                put(i, j, -2.0 * a_rr / (h * h));
                let cross = b_rt / (4.0 * h * tau);
                if cross != 0.0 {
                    put(i + 1, jp, cross);
                    put(i + 1, jm, -cross);
                    put(i - 1, jp, -cross);
                    put(i - 1, jm, cross);
                }
            }
        }
        m
    }
}

/// Grid function `U(ρ_i, t_j)`, `i < N_r`, stored as `u[i * N_t + j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub lambda: f64,
    pub u: Vec<f64>,
    pub iterations: usize,
}

impl EigenPair {
    pub fn value(&self, grid: &MeridianGrid, i: usize, j: usize) -> f64 {
        if i >= grid.nr {
            0.0
        } else {
            self.u[i * grid.nt + j]
        }
    }

    /// `∫ u² dx` over one period, with the discrete trapezoid weights.
    pub fn norm_squared(&self, grid: &MeridianGrid) -> Result<f64> {
        let sphere = ln_sphere_volume(grid.n)?.exp();
        let mut acc = 0.0;
        for i in 0..grid.nr {
            for j in 0..grid.nt {
                let v = self.u[i * grid.nt + j];
                acc += grid.volume_weight(i, j, sphere) * v * v;
            }
        }
        Ok(acc)
    }

    /// Rescales `u` to unit discrete `L²` norm over one period.
    pub fn normalize(&mut self, grid: &MeridianGrid) -> Result<()> {
        let s = self.norm_squared(grid)?.sqrt();
        if !(s > 0.0) {
            return Err(Error::Eigen("eigenfunction has zero norm".into()));
        }
        self.u.iter_mut().for_each(|v| *v /= s);
        Ok(())
    }
}

fn to_grid_order(grid: &MeridianGrid, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    for i in 0..grid.nr {
        for j in 0..grid.nt {
            out[i * grid.nt + j] = x[grid.index(i, j)];
        }
    }
    out
}

/// Smallest Dirichlet eigenvalue of the axisymmetric Laplacian on the grid
/// and its positive eigenfunction with unit discrete `L²` norm.
pub fn first_eigenpair(grid: &MeridianGrid, tol: f64) -> Result<EigenPair> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let lu = grid.assemble().factor()?;
    let size = grid.unknowns();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();

    // start from the axisymmetric ground state shape of the straight cylinder
    let mut x = vec![0.0; size];
    for i in 0..grid.nr {
        let rho = i as f64 * grid.h_rho();
        for j in 0..grid.nt {
            x[grid.index(i, j)] = (0.5 * PI * rho).cos() + 1e-3;
        }
    }
    let s = norm(&x);
    x.iter_mut().for_each(|v| *v /= s);

    let mut lambda = f64::NAN;
    for it in 1..=MAX_INVERSE_ITERATIONS {
        let mut y = x.clone();
        lu.solve_in_place(&mut y);
        let ny = norm(&y);
        if !(ny > 0.0) || !ny.is_finite() {
            return Err(Error::Eigen("inverse iterate degenerated".into()));
        }
        let dot: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let sign = dot.signum();
        let next = sign / ny;
        let step = y
            .iter()
            .zip(&x)
            .map(|(a, b)| (a * sign / ny - b).abs())
            .fold(0.0, f64::max);
        y.iter_mut().for_each(|v| *v *= sign / ny);
        let change = (next - lambda).abs();
        lambda = next;
        x = y;
        if change < tol * lambda.abs().max(1.0) && step < 1e-11 {
            if !(lambda > 0.0) {
                return Err(Error::Eigen(format!("computed eigenvalue {lambda} is not positive")));
            }
            let mut u = to_grid_order(grid, &x);
            if u.iter().sum::<f64>() < 0.0 {
                u.iter_mut().for_each(|v| *v = -*v);
            }
            let mut pair = EigenPair { lambda, u, iterations: it };
            pair.normalize(grid)?;
            return Ok(pair);
        }
    }
    Err(Error::NoConvergence { what: "inverse power iteration", iterations: MAX_INVERSE_ITERATIONS })
}

/// Outward normal derivative `∂_ν u = U_ρ(1, t) √(1+R′²)/R` at each `t_j`, minus
/// its boundary mean weighted by `R^{n−1} √(1+R′²)`.
pub fn neumann_data(grid: &MeridianGrid, pair: &EigenPair) -> Vec<(f64, f64)> {
    let nr = grid.nr;
    let h = grid.h_rho();
    let mut raw = Vec::with_capacity(grid.nt);
    let mut weight_sum = 0.0;
    let mut weighted = 0.0;
    for j in 0..grid.nt {
        let r = grid.radius[j];
        let slope = (1.0 + grid.radius_dt[j].powi(2)).sqrt();
        let u1 = pair.value(grid, nr - 1, j);
        let u2 = pair.value(grid, nr - 2, j);
        let d_rho = (-4.0 * u1 + u2) / (2.0 * h);
        let v = d_rho * slope / r;
        let w = r.powi(grid.n as i32 - 1) * slope;
        weight_sum += w;
        weighted += w * v;
        raw.push(v);
    }
    let mean = weighted / weight_sum;
    raw.into_iter().enumerate().map(|(j, v)| (grid.t(j), v - mean)).collect()
}

/// `(2/N) Σ f_j cos(2πkj/N)` for `k ≥ 1`, the mean for `k = 0`.
pub fn cosine_coefficient(values: &[f64], k: usize) -> f64 {
    let len = values.len() as f64;
    let sum: f64 = values
        .iter()
        .enumerate()
        .map(|(j, v)| v * (2.0 * PI * (k * j) as f64 / len).cos())
        .sum();
    if k == 0 {
        sum / len
    } else {
        2.0 * sum / len
    }
}

/// Mode-`k` response of the Dirichlet-to-Neumann map together with the data
/// it was extracted from.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearResponse {
    pub k: usize,
    pub eps: f64,
    pub lambda: f64,
    /// `F(v, T)/eps` at the grid times.
    pub response: Vec<f64>,
    /// Cosine coefficient of mode `k` in `response`.
    pub coefficient: f64,
}

impl LinearResponse {
    pub fn mode(&self, m: usize) -> f64 {
        cosine_coefficient(&self.response, m)
    }
}

/// Finite-difference estimate of `σ_k(T)` from `F(eps cos(kτ), T)/eps`,
/// with the eigenfunction normalized by `∫ u² dx = T/(2π)` over one period.
pub fn linear_response(n: usize, k: usize, period: f64, eps: f64, nr: usize, nt: usize) -> Result<LinearResponse> {
    if k == 0 {
        return Err(Error::domain("mode index k must be >= 1"));
    }
    if !(1e-4..=1e-2).contains(&eps) {
        return Err(Error::domain(format!("eps must lie in [1e-4, 1e-2], got {eps}")));
    }
    if nt < 16 * k {
        return Err(Error::domain(format!("nt = {nt} cannot resolve mode {k}; need nt >= {}", 16 * k)));
    }
    let grid = MeridianGrid::cosine(n, period, k, eps, nr, nt)?;
    let pair = first_eigenpair(&grid, DEFAULT_TOL)?;
    let scale = (period / (2.0 * PI)).sqrt();
    let response: Vec<f64> = neumann_data(&grid, &pair).into_iter().map(|(_, v)| v * scale / eps).collect();
    let coefficient = cosine_coefficient(&response, k);
    Ok(LinearResponse { k, eps, lambda: pair.lambda, response, coefficient })
}

/// Mode-`k` coefficient of [`linear_response`].
pub fn linearized_coefficient(n: usize, k: usize, period: f64, eps: f64, nr: usize, nt: usize) -> Result<f64> {
    Ok(linear_response(n, k, period, eps, nr, nt)?.coefficient)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(MeridianGrid::cylinder(2, 3.0, 8, 16).is_err());
        assert!(MeridianGrid::cylinder(2, 3.0, 16, 15).is_err());
        assert!(MeridianGrid::cylinder(2, 0.0, 16, 16).is_err());
        assert!(MeridianGrid::cosine(2, 3.0, 1, 1.2, 16, 16).is_err());
    }

    #[test]
    fn interleaved_order_is_a_permutation() {
        let g = MeridianGrid::cylinder(2, 1.0, 16, 10).unwrap();
        let mut seen: Vec<usize> = (0..10).map(|j| g.index(0, j)).collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..10).collect::<Vec<_>>());
        for j in 0..10 {
            let a = g.index(0, j) as i64;
            let b = g.index(0, (j + 1) % 10) as i64;
            assert!((a - b).abs() <= 2);
        }
    }

    #[test]
    fn boundary_derivatives() {
        let g = MeridianGrid::cosine(2, 2.0, 2, 0.1, 16, 16).unwrap();
        // t = T/8: phase 2π·2/16·2 = π/2
        let j = 2;
        let w = 2.0 * PI * 2.0 / 2.0;
        assert!((g.radius[j] - 1.0).abs() < 1e-15);
        assert!((g.radius_dt[j] + 0.1 * w).abs() < 1e-12);
        assert!(g.radius_dtt[j].abs() < 1e-12);
    }

    #[test]
    fn cylinder_eigenvalues() {
        let g = MeridianGrid::cylinder(3, 2.0, 32, 16).unwrap();
        let p = first_eigenpair(&g, 1e-12).unwrap();
        assert!((p.lambda - PI * PI).abs() < 2e-2, "{}", p.lambda);
        assert!(p.u.iter().all(|&v| v > 0.0));
        assert!((p.norm_squared(&g).unwrap() - 1.0).abs() < 1e-12);

        let g1 = MeridianGrid::cylinder(1, 4.0, 32, 16).unwrap();
        let p1 = first_eigenpair(&g1, 1e-12).unwrap();
        assert!((p1.lambda - PI * PI / 4.0).abs() < 5e-3, "{}", p1.lambda);
    }

    #[test]
    fn flat_neumann_data_vanishes() {
        let g = MeridianGrid::cylinder(2, 3.0, 32, 16).unwrap();
        let p = first_eigenpair(&g, 1e-12).unwrap();
        assert!(neumann_data(&g, &p).iter().all(|&(_, v)| v.abs() < 1e-10));
    }

    #[test]
    fn cosine_coefficients() {
        let n = 32;
        let f: Vec<f64> = (0..n)
            .map(|j| {
                let x = 2.0 * PI * j as f64 / n as f64;
                0.5 + 2.0 * (3.0 * x).cos() - (x).cos()
            })
            .collect();
        assert!((cosine_coefficient(&f, 0) - 0.5).abs() < 1e-14);
        assert!((cosine_coefficient(&f, 3) - 2.0).abs() < 1e-14);
        assert!((cosine_coefficient(&f, 1) + 1.0).abs() < 1e-14);
        assert!(cosine_coefficient(&f, 2).abs() < 1e-14);
    }

    #[test]
    fn argument_checks() {
        assert!(linearized_coefficient(2, 0, 3.0, 1e-3, 16, 16).is_err());
        assert!(linearized_coefficient(2, 1, 3.0, 0.1, 16, 16).is_err());
        assert!(linearized_coefficient(2, 2, 3.0, 1e-3, 16, 16).is_err());
    }
}
