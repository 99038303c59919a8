//! Eigenvalues `σ_k(T)` of the linearized Dirichlet-to-Neumann operator on
//! the straight cylinder `B^n × ℝ/Tℤ`, acting on even cosine modes.
//!
//! `σ_k(T) = c′(1) + φ₁″(1)` where `c` is the regular solution of
//! `c″ + (n−1)/r c′ + (λ − (2πk/T)²) c = 0` with `c(1) = −φ₁′(1)`, and `φ₁`
//! is the first radial Dirichlet eigenfunction of the unit ball. The
//! closed form solves that ODE with `I_ν` (when `2π/T > j_ν`) or `J_ν`
//! (when `2π/T < j_ν`); [`sigma1_via_ode`] integrates it directly instead.

use std::f64::consts::PI;

use crate::analysis::{bessel_zero, integrate, ode_rk4};
use crate::specfun::{bessel_i_ratio, bessel_j_prime, bessel_j_ratio, bessel_j_reduced, ln_gamma};
use crate::{Error, Result};

/// Width of the window around `μ` routed to the closed-form `σ₁(μ)`.
pub const MU_WINDOW: f64 = 1e-9;
/// Start radius of the regular (Frobenius) solution in the shooting codes.
pub const FROBENIUS_START: f64 = 1e-4;
/// Step count used by [`lambda1_via_shooting`].
pub const SHOOTING_STEPS: usize = 20_000;

const KAPPA_QUADRATURE_TOL: f64 = 1e-12;

/// Per-dimension data of the unperturbed cylinder feeding every `σ` formula.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenData {
    pub nu: f64,
    pub n: usize,
    /// First positive zero of `J_ν` (`π/2` for `n = 1`).
    pub j_nu: f64,
    /// `j_ν²`, the first Dirichlet eigenvalue of the unit ball.
    pub lambda_nu: f64,
    /// Normalization constant: `∫₀^{j_ν} κ² s^{2−n} J_ν(s)² ds = j_ν / (2π |S^{n−1}|)`.
    pub kappa_n: f64,
    pub phi1_prime_at_1: f64,
    pub phi1_second_at_1: f64,
    /// `2π / j_ν`, where `σ₁` switches from the `I_ν` to the `J_ν` branch.
    pub mu: f64,
    /// `−κ_n j_ν^{1−ν} J_ν′(j_ν) = −φ₁′(1) > 0`, the common prefactor.
    prefactor: f64,
    /// `ln` of the factor turning this normalization into `‖φ₁‖²_{L²(B^n)} = 1/(2π)`.
    ln_ball_rescale: f64,
}

/// `ln |S^{n−1}| = ln(2π^{n/2}/Γ(n/2))`.
pub fn ln_sphere_volume(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("sphere dimension requires n >= 1"));
    }
    let half = n as f64 / 2.0;
    Ok(2f64.ln() + half * PI.ln() - ln_gamma(half)?)
}

impl EigenData {
    pub fn new(n: usize) -> Result<Self> {
        match n {
            0 => Err(Error::domain("dimension must be >= 1")),
            1 => Ok(Self::strip()),
            _ => Self::ball(n),
        }
    }

    // φ₁(r) = cos(πr/2)/√(2π) on [−1, 1]
    fn strip() -> Self {
        let p = (PI / 8.0).sqrt();
        Self {
            nu: -0.5,
            n: 1,
            j_nu: PI / 2.0,
            lambda_nu: PI * PI / 4.0,
            kappa_n: 1.0 / (2.0 * PI).sqrt(),
            phi1_prime_at_1: -p,
            phi1_second_at_1: 0.0,
            mu: 4.0,
            prefactor: p,
            ln_ball_rescale: 0.0,
        }
    }

    fn ball(n: usize) -> Result<Self> {
        let nu = (n as f64 - 2.0) / 2.0;
        let j = bessel_zero(nu, 1)?;
        let jp = bessel_j_prime(nu, j)?;
        if !(jp < 0.0) {
            return Err(Error::range(format!("J_nu'(j_nu) = {jp} is not negative for n = {n}")));
        }

        // s^{-ν} J_ν(s) = J̃_ν(s) / (2^ν Γ(ν+1)), J̃ the reduced function
        let reduced_sq = |s: f64| bessel_j_reduced(nu, s).map(|v| v * v).unwrap_or(f64::NAN);
        if !reduced_sq(1e-8).is_finite() {
            return Err(Error::NonFinite("normalization integrand near the axis"));
        }
        let unrepresentable =
            |e: Error| Error::range(format!("normalization integral not representable for n = {n}: {e}"));
        let coarse = integrate(reduced_sq, 0.0, j, 1e-3 * j).map_err(unrepresentable)?;
        let q = integrate(reduced_sq, 0.0, j, KAPPA_QUADRATURE_TOL * coarse.max(1e-300)).map_err(unrepresentable)?;

        let ln_gamma_nu1 = ln_gamma(nu + 1.0)?;
        let ln_vol = ln_sphere_volume(n)?;
        let ln_kappa = 0.5
            * (j.ln() - (2.0 * PI).ln() - ln_vol - q.ln()
                + 2.0 * nu * 2f64.ln()
                + 2.0 * ln_gamma_nu1);
        let ln_prefactor = ln_kappa + (1.0 - nu) * j.ln() + (-jp).ln();
        let prefactor = ln_prefactor.exp();
        if !prefactor.is_finite() || prefactor == 0.0 {
            return Err(Error::range(format!(
                "sigma prefactor exp({ln_prefactor:.1}) not representable for n = {n}"
            )));
        }
        // φ₁ = K r^{-ν} J_ν(j r): K = κ j^{-ν} here, K² = 1/(π |S^{n-1}| J_ν'(j)²) for the ball norm
        let ln_k = ln_kappa - nu * j.ln();
        let ln_k_ball = -0.5 * (PI.ln() + ln_vol) - (-jp).ln();

        Ok(Self {
            nu,
            n,
            j_nu: j,
            lambda_nu: j * j,
            kappa_n: ln_kappa.exp(),
            phi1_prime_at_1: -prefactor,
            phi1_second_at_1: (2.0 * nu + 1.0) * prefactor,
            mu: 2.0 * PI / j,
            prefactor,
            ln_ball_rescale: ln_k_ball - ln_k,
        })
    }

    /// `−φ₁′(1)`, the positive factor in front of every branch of `σ₁`.
    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    /// Multiplicative factor mapping `σ` under this per-radius normalization
    /// of `φ₁` onto `σ` for `φ₁` normalized by `∫_{B^n} φ₁² = 1/(2π)`, the
    /// normalization a direct solve on one period of the cylinder produces.
    /// Equal to 1 for `n = 1`.
    pub fn ball_l2_rescale(&self) -> f64 {
        self.ln_ball_rescale.exp()
    }

    /// `σ₁(μ)`, the common limit of both branches.
    pub fn sigma1_at_mu(&self) -> f64 {
        (2.0 * self.nu + 1.0) * self.prefactor
    }

    pub fn sigma1(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::domain(format!("period must be positive, got {t}")));
        }
        if (t - self.mu).abs() < MU_WINDOW {
            return Ok(self.sigma1_at_mu());
        }
        let omega = 2.0 * PI / t;
        let odd = 2.0 * self.nu + 1.0;
        if t < self.mu {
            let xi = (omega * omega - self.lambda_nu).sqrt();
            let growth = if self.n == 1 {
                xi * xi.tanh()
            } else {
                xi * bessel_i_ratio(self.nu, xi)?
            };
            Ok(self.prefactor * (odd + growth))
        } else {
            let rho = (self.lambda_nu - omega * omega).sqrt();
            if self.n == 1 {
                if rho >= PI / 2.0 - 1e-12 {
                    return Err(Error::domain(format!("tan argument {rho} reaches pi/2")));
                }
                return Ok(-self.prefactor * rho * rho.tan());
            }
            Ok(self.prefactor * (odd - rho * bessel_j_ratio(self.nu, rho)?))
        }
    }

    pub fn sigma_k(&self, k: usize, t: f64) -> Result<f64> {
        if k == 0 {
            return Err(Error::domain("mode index k must be >= 1"));
        }
        self.sigma1(t / k as f64)
    }

    /// Central difference of `σ₁` at `t` with step `h`.
    pub fn sigma1_derivative(&self, t: f64, h: f64) -> Result<f64> {
        Ok((self.sigma1(t + h)? - self.sigma1(t - h)?) / (2.0 * h))
    }

    /// `σ₁(T)` from the radial ODE alone; see [`sigma1_via_ode`].
    pub fn sigma1_via_ode(&self, t: f64, steps: usize) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::domain(format!("period must be positive, got {t}")));
        }
        let omega = 2.0 * PI / t;
        let [c1, dc1] = regular_radial_solution(self.n, self.lambda_nu - omega * omega, steps)?;
        if !(c1.abs() > 1e-12 * (1.0 + dc1.abs())) {
            return Err(Error::Degenerate(format!("c(1) = {c1:e} at T = {t}")));
        }
        let scale = -self.phi1_prime_at_1 / c1;
        Ok(scale * dc1 + self.phi1_second_at_1)
    }
}

/// Regular solution of `c″ + (n−1)/r c′ + k c = 0` with `c(0) = 1`, returned
/// as `[c(1), c′(1)]`. Integrated in `u = ln r` from the two-term Frobenius
/// start at `r = 1e−4`, where the equation reads
/// `c_uu + (n−2) c_u + r² k c = 0` and has no singular coefficient.
fn regular_radial_solution(n: usize, k: f64, steps: usize) -> Result<[f64; 2]> {
    let delta = FROBENIUS_START;
    let nf = n as f64;
    let c0 = 1.0 - k * delta * delta / (2.0 * nf);
    let cu0 = -k * delta * delta / nf;
    let damping = nf - 2.0;
    let field = |u: f64, y: &[f64; 2]| {
        let r2 = (2.0 * u).exp();
        [y[1], -damping * y[1] - r2 * k * y[0]]
    };
    let [c, cu] = ode_rk4(field, delta.ln(), [c0, cu0], 0.0, steps)?;
    // at r = 1, c_u = r c_r = c_r
    Ok([c, cu])
}

pub fn eigen_data(n: usize) -> Result<EigenData> {
    EigenData::new(n)
}

pub fn sigma1(n: usize, t: f64) -> Result<f64> {
    EigenData::new(n)?.sigma1(t)
}

/// `σ_k(T) = σ₁(T/k)`.
pub fn sigma_k(n: usize, k: usize, t: f64) -> Result<f64> {
    EigenData::new(n)?.sigma_k(k, t)
}

/// Independent evaluation of `σ₁(T)`: integrates the radial ODE for `c`
/// with RK4 (no Bessel evaluations), rescales so `c(1) = −φ₁′(1)` and
/// returns `c′(1) + φ₁″(1)`.
pub fn sigma1_via_ode(n: usize, t: f64, steps: usize) -> Result<f64> {
    if steps < 1000 {
        return Err(Error::domain(format!("sigma1_via_ode needs >= 1000 steps, got {steps}")));
    }
    EigenData::new(n)?.sigma1_via_ode(t, steps)
}

/// First radial Dirichlet eigenvalue of the unit ball in `ℝ^n` by shooting:
/// bisection on `λ` until the regular solution of
/// `φ″ + (n−1)/r φ′ + λφ = 0` vanishes at `r = 1`. Independent of any
/// Bessel code; `tol` is the final bracket width on `λ`.
pub fn lambda1_via_shooting(n: usize, tol: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("lambda1_via_shooting needs n >= 2"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let end_value = |lambda: f64| regular_radial_solution(n, lambda, SHOOTING_STEPS).map(|y| y[0]);

    // φ(1; λ) > 0 below the first eigenvalue; march until it turns negative.
    // Consecutive radial eigenvalues are more than 10 apart.
    let step = 2.0;
    let mut lo = 0.0;
    let mut hi = step;
    while end_value(hi)? > 0.0 {
        lo = hi;
        hi += step;
        if hi > 1e7 {
            return Err(Error::NoSignChange("shooting eigenvalue bracket".into()));
        }
    }
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if end_value(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > 200 {
            return Err(Error::NoConvergence { what: "shooting bisection", iterations });
        }
    }
    Ok(0.5 * (lo + hi))
}
