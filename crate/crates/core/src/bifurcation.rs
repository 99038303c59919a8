//! Bifurcation periods `T_ν`, their bounds for large `ν`, checks of the
//! simple-eigenvalue bifurcation hypotheses, and first-order profiles of the
//! bifurcating domains.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::analysis::{bessel_zero, find_root, scan_bracket, Bracket};
use crate::specfun::bessel_j;
use crate::spectrum::EigenData;
use crate::{Error, Result};

/// Absolute tolerance on `ρ_ν`.
pub const RHO_TOL: f64 = 1e-12;
/// Step of the central difference used for `σ₁′(T_ν)`.
pub const DERIVATIVE_STEP: f64 = 1e-5;
/// Envelope constant `C` in `|T_ν − √2 π ν^{−1/2}| ≤ C ν^{−7/6}`. The scaled
/// gap increases towards `2√2 π a / 3 ≈ 5.497`, `a = −a₁/2^{1/3}`.
pub const ASYMPTOTIC_GAP_CONSTANT: f64 = 5.5;

/// Bifurcation period of the cylinder `B^n × ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationPoint {
    pub nu: f64,
    pub n: usize,
    /// First zero of `J_ν`; `π/2` for `n = 1`.
    pub j_nu: f64,
    /// Zero of `s J_{ν−1}(s) + J_ν(s)` in `(0, j_ν)`; `None` for `n = 1`.
    pub rho_nu: Option<f64>,
    pub t_nu: f64,
    pub mu: f64,
    /// `j_{ν−1} + 1/(j_{ν−1}+2)`, for `ν ≥ 1`.
    pub rho_minus: Option<f64>,
    /// `j_{ν−1} + 1/j_{ν−1}`, for `ν ≥ 1`.
    pub rho_plus: Option<f64>,
    /// Rigorous lower bound on `T_ν`, for `ν ≥ 10`.
    pub t_lower: Option<f64>,
    /// Rigorous upper bound on `T_ν`, for `ν ≥ 10`.
    pub t_upper: Option<f64>,
}

/// `2ν + 2` when `2ν` is given.
pub fn dimension_of(two_nu: usize) -> usize {
    two_nu + 2
}

fn period_from(lambda: f64, rho: f64) -> Result<f64> {
    let gap = lambda - rho * rho;
    if !(gap > 0.0) {
        return Err(Error::range(format!("rho^2 = {} reaches lambda = {lambda}", rho * rho)));
    }
    Ok(2.0 * PI / gap.sqrt())
}

/// The unique zero `ρ_ν` of `s J_{ν−1}(s) + J_ν(s)` on `(0, j_ν)`.
pub fn rho_nu(nu: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::domain(format!("rho_nu needs nu >= 0, got {nu}")));
    }
    let j = bessel_zero(nu, 1)?;
    rho_with_zero(nu, j)
}

fn rho_with_zero(nu: f64, j: f64) -> Result<f64> {
    if nu >= 1.0 {
        // s J_{ν+1} − (2ν+1) J_ν = −(s J_{ν−1} + J_ν), and ρ_ν > j_{ν−1}
        let g = |s: f64| match (bessel_j(nu + 1.0, s), bessel_j(nu, s)) {
            (Ok(a), Ok(b)) => s * a - (2.0 * nu + 1.0) * b,
            _ => f64::NAN,
        };
        let j_prev = bessel_zero(nu - 1.0, 1)?;
        let bracket = Bracket::new(g, j_prev + 1e-9, j - 1e-9)
            .map_err(|_| Error::NoSignChange(format!("rho_nu bracket for nu = {nu}")))?;
        find_root(g, bracket, RHO_TOL)
    } else {
        let g = |s: f64| {
            let lower = if nu == 0.0 { bessel_j(1.0, s).map(|v| -v) } else { bessel_j(nu - 1.0, s) };
            match (lower, bessel_j(nu, s)) {
                (Ok(a), Ok(b)) => s * a + b,
                _ => f64::NAN,
            }
        };
        let bracket = scan_bracket(g, 1e-3, j - 1e-9, 64)
            .map_err(|_| Error::NoSignChange(format!("rho_nu scan for nu = {nu}")))?;
        find_root(g, bracket, RHO_TOL)
    }
}

/// The bifurcation period `T_*(n)`.
pub fn t_nu(n: usize) -> Result<BifurcationPoint> {
    match n {
        0 => Err(Error::domain("dimension must be >= 1")),
        1 => Ok(BifurcationPoint {
            nu: -0.5,
            n: 1,
            j_nu: PI / 2.0,
            rho_nu: None,
            t_nu: 4.0,
            mu: 4.0,
            rho_minus: None,
            rho_plus: None,
            t_lower: None,
            t_upper: None,
        }),
        _ => {
            let nu = (n as f64 - 2.0) / 2.0;
            let j = bessel_zero(nu, 1)?;
            let rho = rho_with_zero(nu, j)?;
            let lambda = j * j;
            let (rho_minus, rho_plus) = if nu >= 1.0 {
                let (m, p) = rho_envelope(nu)?;
                (Some(m), Some(p))
            } else {
                (None, None)
            };
            let (t_lower, t_upper) = if nu >= 10.0 {
                (Some(period_from(lambda, rho_minus.unwrap())?), Some(period_from(lambda, rho_plus.unwrap())?))
            } else {
                (None, None)
            };
            Ok(BifurcationPoint {
                nu,
                n,
                j_nu: j,
                rho_nu: Some(rho),
                t_nu: period_from(lambda, rho)?,
                mu: 2.0 * PI / j,
                rho_minus,
                rho_plus,
                t_lower,
                t_upper,
            })
        }
    }
}

fn rho_envelope(nu: f64) -> Result<(f64, f64)> {
    let jp = bessel_zero(nu - 1.0, 1)?;
    Ok((jp + 1.0 / (jp + 2.0), jp + 1.0 / jp))
}

/// Bounds `(lower, upper)` on `T_ν` obtained from `ρ_ν^− < ρ_ν < ρ_ν^+`.
pub fn t_bounds(nu: f64) -> Result<(f64, f64)> {
    if !(nu >= 10.0) || !nu.is_finite() {
        return Err(Error::domain(format!("t_bounds needs nu >= 10, got {nu}")));
    }
    let lambda = bessel_zero(nu, 1)?.powi(2);
    let (m, p) = rho_envelope(nu)?;
    Ok((period_from(lambda, m)?, period_from(lambda, p)?))
}

/// Leading term `√2 π ν^{−1/2}` of `T_ν` as `ν → ∞`.
pub fn asymptotic_tnu(nu: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::domain(format!("asymptotic_tnu needs nu > 0, got {nu}")));
    }
    Ok(2f64.sqrt() * PI / nu.sqrt())
}

/// `(2ν, T_ν)` for each requested `2ν`, in input order.
pub fn table(two_nu_values: &[usize]) -> Result<Vec<(usize, f64)>> {
    Ok(table_points(two_nu_values)?.into_iter().map(|p| (p.n - 2, p.t_nu)).collect())
}

/// Full [`BifurcationPoint`] rows for each requested `2ν`, in input order.
/// Rows are computed in parallel; each row is independent, so the output
/// equals the sequential result.
pub fn table_points(two_nu_values: &[usize]) -> Result<Vec<BifurcationPoint>> {
    two_nu_values.par_iter().map(|&two_nu| t_nu(dimension_of(two_nu))).collect()
}

/// Outcome of the bifurcation hypothesis checks at `T_ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrReport {
    pub n: usize,
    pub t_nu: f64,
    /// `σ_k(T_ν)` for `k = 1..=k_max`.
    pub sigma: Vec<f64>,
    /// Central difference of `σ₁` at `T_ν`.
    pub sigma1_derivative: f64,
    /// `σ₁(T_ν) = 0`: the cosine mode spans the kernel.
    pub kernel: bool,
    /// `σ_k(T_ν) ≠ 0` for `k ≥ 2`: the kernel is one-dimensional.
    pub simple: bool,
    /// `σ₁′(T_ν) < 0`: the eigenvalue crosses zero transversally.
    pub transversal: bool,
    pub failures: Vec<String>,
}

impl CrReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `σ_k(T_ν)` for `k ≤ k_max` and the hypotheses of the
/// simple-eigenvalue bifurcation theorem. Failed assertions are reported in
/// [`CrReport::failures`], numerical errors are returned as `Err`.
pub fn check_cr_hypotheses(n: usize, k_max: usize) -> Result<CrReport> {
    if k_max < 2 {
        return Err(Error::domain(format!("k_max must be >= 2, got {k_max}")));
    }
    let point = t_nu(n)?;
    let data = EigenData::new(n)?;
    let t = point.t_nu;
    let sigma = (1..=k_max).map(|k| data.sigma_k(k, t)).collect::<Result<Vec<_>>>()?;
    let derivative = data.sigma1_derivative(t, DERIVATIVE_STEP)?;

    let mut failures = Vec::new();
    let kernel = sigma[0].abs() <= 1e-8;
    if !kernel {
        failures.push(format!("sigma_1(T_nu) = {:e} is not zero", sigma[0]));
    }
    let mut simple = true;
    for (k, s) in sigma.iter().enumerate().skip(1) {
        if !(s.abs() > 1e-6) {
            simple = false;
            failures.push(format!("sigma_{}(T_nu) = {s:e} vanishes", k + 1));
        }
    }
    let transversal = derivative < 0.0;
    if !transversal {
        failures.push(format!("sigma_1'(T_nu) = {derivative:e} is not negative"));
    }
    Ok(CrReport { n, t_nu: t, sigma, sigma1_derivative: derivative, kernel, simple, transversal, failures })
}

/// First-order boundary `R(t) = 1 + s cos(2πt/T_ν)` of the bifurcating domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainProfile {
    pub n: usize,
    pub s: f64,
    pub period: f64,
    /// `(t, R(t))` over the requested periods, endpoints included.
    pub samples: Vec<(f64, f64)>,
}

pub fn profile(n: usize, s: f64, periods: usize, samples_per_period: usize) -> Result<DomainProfile> {
    if !(s.abs() < 1.0) {
        return Err(Error::domain(format!("amplitude must satisfy |s| < 1, got {s}")));
    }
    if periods < 1 {
        return Err(Error::domain("periods must be >= 1"));
    }
    if samples_per_period < 8 {
        return Err(Error::domain(format!("samples_per_period must be >= 8, got {samples_per_period}")));
    }
    let period = t_nu(n)?.t_nu;
    let total = periods * samples_per_period;
    let samples = (0..=total)
        .map(|i| {
            let phase = 2.0 * PI * (i % samples_per_period) as f64 / samples_per_period as f64;
            let t = period * i as f64 / samples_per_period as f64;
            (t, 1.0 + s * phase.cos())
        })
        .collect();
    Ok(DomainProfile { n, s, period, samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        assert!((rho_nu(0.0).unwrap() - 1.255_783_711_794_593_6).abs() < 1e-11);
        let r = rho_nu(0.5).unwrap();
        assert!((r - 2.028_757_838_110_434).abs() < 1e-11);
        // ν = 1/2: tan ρ = −ρ
        assert!((r.tan() + r).abs() < 1e-10);
        assert!((rho_nu(1.0).unwrap() - 2.734_621_844_635_442).abs() < 1e-11);
        assert!(rho_nu(-1.0).is_err());
    }

    #[test]
    fn strip_point() {
        let p = t_nu(1).unwrap();
        assert_eq!(p.t_nu, 4.0);
        assert!(p.rho_nu.is_none());
        assert!(t_nu(0).is_err());
    }

    #[test]
    fn low_dimensional_periods() {
        assert!((t_nu(2).unwrap().t_nu - 3.063_622_555_020_648_6).abs() < 1e-10);
        assert!((t_nu(3).unwrap().t_nu - 2.619_416_289_955_782).abs() < 1e-10);
        let p = t_nu(4).unwrap();
        assert!(p.t_nu > p.mu);
        assert!(p.t_lower.is_none());
        assert!(p.rho_minus.unwrap() < p.rho_nu.unwrap());
    }

    #[test]
    fn bounds_domain_and_order() {
        assert!(matches!(t_bounds(9.5), Err(Error::Domain(_))));
        let (lo, hi) = t_bounds(10.0).unwrap();
        let t = t_nu(22).unwrap().t_nu;
        assert!(lo < t && t < hi, "{lo} < {t} < {hi}");
    }

    #[test]
    fn asymptotic_leading_term() {
        assert!((asymptotic_tnu(100.0).unwrap() - 0.444_288_293_815_836_6).abs() < 1e-12);
        assert!(asymptotic_tnu(0.0).is_err());
    }

    #[test]
    fn table_preserves_order() {
        let rows = table(&[5, 0, 12]).unwrap();
        assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), vec![5, 0, 12]);
        assert!((rows[1].1 - 3.063_622_555_020_648_6).abs() < 1e-10);
    }

    #[test]
    fn hypotheses_hold() {
        for n in [1, 2, 3] {
            let r = check_cr_hypotheses(n, 10).unwrap();
            assert!(r.passed(), "n = {n}: {:?}", r.failures);
        }
        let r = check_cr_hypotheses(1, 5).unwrap();
        let expected = -(PI / 8.0).sqrt() * PI * PI / 8.0;
        assert!((r.sigma1_derivative - expected).abs() < 1e-6);
        assert!(check_cr_hypotheses(2, 1).is_err());
    }

    #[test]
    fn profiles() {
        let flat = profile(2, 0.0, 1, 16).unwrap();
        assert!(flat.samples.iter().all(|&(_, r)| r == 1.0));
        let p = profile(2, 0.1, 1, 64).unwrap();
        assert_eq!(p.samples[0].1, 1.1);
        assert!((p.samples[32].1 - 0.9).abs() < 1e-15);
        assert!((p.samples[32].0 - p.period / 2.0).abs() < 1e-15);
        let strip = profile(1, 0.2, 2, 32).unwrap();
        assert_eq!(strip.period, 4.0);
        assert_eq!(strip.samples.last().unwrap().0, 8.0);
        assert!(profile(2, 1.0, 1, 16).is_err());
        assert!(profile(2, 0.1, 1, 4).is_err());
    }
}
