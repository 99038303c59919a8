//! Jacobi-operator eigenvalues of the unit cylinder in `ℝ³` and Delaunay
//! surfaces of revolution `(y(t) cos θ, y(t) sin θ, z(t))` with
//! `y′² = y² − ((y²+σ)/2)²`, `z′ = (y²+σ)/2`.
//!
//! Curvature here is the sum `k₁ + k₂` of the principal curvatures (twice
//! the average), the convention under which the unit cylinder and every
//! profile produced below have `H = 1`.

use std::f64::consts::PI;

use crate::analysis::{find_root, integrate, integrate_inv_sqrt, Bracket};
use crate::{Error, Result};

const PROFILE_TOL: f64 = 1e-14;

/// `σ_{j,k}(T) = ½(j² − 1 + (2πk/T)²)`.
pub fn jacobi_sigma(j: u32, k: u32, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("period must be positive, got {t}")));
    }
    let j2 = j as f64 * j as f64;
    let w = 2.0 * PI * k as f64 / t;
    Ok(0.5 * ((j2 - 1.0) + w * w))
}

/// One period of a Delaunay profile, starting at the neck `y = y_min`.
#[derive(Debug, Clone, PartialEq)]
pub struct DelaunayProfile {
    pub sigma: f64,
    /// `(t, y, z)` at `t = i·period/len` for `i = 0..len`.
    pub samples: Vec<(f64, f64, f64)>,
    pub y_min: f64,
    pub y_max: f64,
    pub period: f64,
}

impl DelaunayProfile {
    /// Uniform spacing in `t` between consecutive samples.
    pub fn step(&self) -> f64 {
        self.period / self.samples.len() as f64
    }
}

/// `y_min`, `y_max` = `1 ∓ √(1−σ)`.
pub fn turning_points(sigma: f64) -> Result<(f64, f64)> {
    check_sigma(sigma)?;
    let r = (1.0 - sigma).sqrt();
    Ok((1.0 - r, 1.0 + r))
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(Error::domain(format!("sigma must lie in (0, 1], got {sigma}")));
    }
    Ok(())
}

/// `t` from the neck to the bulge, `∫ dy / √(y² − ((y²+σ)/2)²)` over `[y_min, y_max]`.
pub fn half_period(sigma: f64) -> Result<f64> {
    let (lo, hi) = turning_points(sigma)?;
    if sigma == 1.0 {
        return Ok(PI);
    }
    integrate_inv_sqrt(
        |y: f64| {
            let h = 0.5 * (y * y + sigma);
            1.0 / ((y - h) * (y + h)).sqrt()
        },
        lo,
        hi,
    )
}

pub fn delaunay_profile(sigma: f64, samples: usize) -> Result<DelaunayProfile> {
    check_sigma(sigma)?;
    if samples < 4 {
        return Err(Error::domain(format!("need at least 4 samples, got {samples}")));
    }
    let (y_min, y_max) = turning_points(sigma)?;
    let half = half_period(sigma)?;
    let period = 2.0 * half;
    let h = period / samples as f64;

    if sigma == 1.0 {
        let samples = (0..samples).map(|i| (i as f64 * h, 1.0, i as f64 * h)).collect();
        return Ok(DelaunayProfile { sigma, samples, y_min, y_max, period });
    }

    // y = 1 − r cos θ with θ ∈ [0, π] from neck to bulge; then
    // dt = 2 dθ / √(y² + 2y + σ) has no endpoint degeneracy.
    let r = (1.0 - sigma).sqrt();
    let y_of = move |theta: f64| 1.0 - r * theta.cos();
    let dt = move |theta: f64| {
        let y = y_of(theta);
        2.0 / (y * y + 2.0 * y + sigma).sqrt()
    };
    let dz = move |theta: f64| {
        let y = y_of(theta);
        0.5 * (y * y + sigma) * dt(theta)
    };
    let t_of = |theta: f64| integrate(dt, 0.0, theta, PROFILE_TOL);
    let z_half = integrate(dz, 0.0, PI, PROFILE_TOL)?;

    let point = |t: f64| -> Result<(f64, f64)> {
        if t <= 0.0 {
            return Ok((y_min, 0.0));
        }
        if t >= half {
            return Ok((y_max, z_half));
        }
        let g = |theta: f64| t_of(theta).map(|v| v - t).unwrap_or(f64::NAN);
        let bracket = Bracket::from_values(0.0, PI, -t, half - t)?;
        let theta = find_root(g, bracket, 1e-15)?;
        Ok((y_of(theta), integrate(dz, 0.0, theta, PROFILE_TOL)?))
    };

    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = i as f64 * h;
        let (y, z) = if t <= half {
            point(t)?
        } else {
            let (y, z) = point(period - t)?;
            (y, 2.0 * z_half - z)
        };
        out.push((t, y, z));
    }
    Ok(DelaunayProfile { sigma, samples: out, y_min, y_max, period })
}

fn second_order_derivatives(p: &DelaunayProfile, i: usize) -> [f64; 4] {
    let h = p.step();
    let (_, ya, za) = p.samples[i - 1];
    let (_, y, z) = p.samples[i];
    let (_, yb, zb) = p.samples[i + 1];
    [
        (yb - ya) / (2.0 * h),
        (zb - za) / (2.0 * h),
        (yb - 2.0 * y + ya) / (h * h),
        (zb - 2.0 * z + za) / (h * h),
    ]
}

/// Mean curvature at interior sample `i`, from the first and second
/// fundamental forms with centered second-order differences in `t`.
pub fn mean_curvature_at(p: &DelaunayProfile, i: usize) -> f64 {
    let y = p.samples[i].1;
    let [dy, dz, ddy, ddz] = second_order_derivatives(p, i);
    // X_θ = (−y sin, y cos, 0), X_t = (y′ cos, y′ sin, z′); inward unit normal
    // (−z′ cos θ, −z′ sin θ, y′)/√G, evaluated at θ = 0
    let e = y * y;
    let f = 0.0;
    let g = dy * dy + dz * dz;
    let norm = g.sqrt();
    let l = y * dz / norm;
    let m = 0.0;
    let n = (dy * ddz - dz * ddy) / norm;
    (e * n - 2.0 * f * m + g * l) / (e * g - f * f)
}

/// `max |H − 1|` over interior samples.
pub fn mean_curvature_check(p: &DelaunayProfile) -> Result<f64> {
    if p.samples.len() < 64 {
        return Err(Error::domain(format!("curvature check needs >= 64 samples, got {}", p.samples.len())));
    }
    Ok((1..p.samples.len() - 1)
        .map(|i| (mean_curvature_at(p, i) - 1.0).abs())
        .fold(0.0, f64::max))
}

/// `max |y′² + z′² − y²|` over samples at distance `≥ 2` from the ends,
/// with fourth-order centered differences.
pub fn speed_residual(p: &DelaunayProfile) -> f64 {
    let h = p.step();
    let s = &p.samples;
    let d = |i: usize, pick: fn(&(f64, f64, f64)) -> f64| {
        (-pick(&s[i + 2]) + 8.0 * pick(&s[i + 1]) - 8.0 * pick(&s[i - 1]) + pick(&s[i - 2])) / (12.0 * h)
    };
    (2..s.len().saturating_sub(2))
        .map(|i| {
            let dy = d(i, |p| p.1);
            let dz = d(i, |p| p.2);
            (dy * dy + dz * dz - s[i].1 * s[i].1).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_zero_structure() {
        for t in [0.5, 1.0, 7.0] {
            assert_eq!(jacobi_sigma(1, 0, t).unwrap(), 0.0);
            assert!(jacobi_sigma(2, 0, t).unwrap() > 0.0);
        }
        for k in 1..5 {
            assert_eq!(jacobi_sigma(0, k, 2.0 * PI * k as f64).unwrap(), 0.0);
        }
        let a = jacobi_sigma(0, 1, 2.0 * PI + 0.1).unwrap();
        let b = jacobi_sigma(0, 1, 2.0 * PI - 0.1).unwrap();
        assert!(a < 0.0 && b > 0.0);
        assert!(jacobi_sigma(0, 1, 0.0).is_err());
    }

    #[test]
    fn cylinder_case() {
        let p = delaunay_profile(1.0, 64).unwrap();
        assert!(p.samples.iter().all(|&(t, y, z)| y == 1.0 && z == t));
        assert!(mean_curvature_check(&p).unwrap() < 1e-10);
    }

    #[test]
    fn turning_points_and_range() {
        let p = delaunay_profile(0.5, 256).unwrap();
        assert!((p.y_min - 0.292_893_218_813_452_5).abs() < 1e-15);
        assert!((p.y_max - 1.707_106_781_186_547_5).abs() < 1e-15);
        assert!(p.samples.iter().all(|&(_, y, _)| y >= p.y_min - 1e-15 && y <= p.y_max + 1e-15));
        assert!(p.samples.windows(2).all(|w| w[1].2 > w[0].2));
        assert!(delaunay_profile(0.0, 64).is_err());
        assert!(delaunay_profile(1.5, 64).is_err());
    }

    #[test]
    fn half_period_matches_smooth_form() {
        let sigma: f64 = 0.3;
        let r = (1.0 - sigma).sqrt();
        let smooth = integrate(
            |th: f64| {
                let y = 1.0 - r * th.cos();
                2.0 / (y * y + 2.0 * y + sigma).sqrt()
            },
            0.0,
            PI,
            1e-14,
        )
        .unwrap();
        assert!((half_period(sigma).unwrap() - smooth).abs() < 1e-10);
    }

    #[test]
    fn sphere_chain_limit() {
        let (lo, hi) = turning_points(1e-6).unwrap();
        assert!(lo < 1e-3);
        assert!((hi - 2.0).abs() < 1e-6);
    }

    #[test]
    fn curvature_and_speed() {
        let p = delaunay_profile(0.5, 1024).unwrap();
        assert!(mean_curvature_check(&p).unwrap() < 1e-4);
        assert!(speed_residual(&p) < 1e-6);
        let coarse = mean_curvature_check(&delaunay_profile(0.9, 128).unwrap()).unwrap();
        let fine = mean_curvature_check(&delaunay_profile(0.9, 256).unwrap()).unwrap();
        let ratio = coarse / fine;
        assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
    }
}
