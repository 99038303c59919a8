//! Deterministic property suites behind `extremal check`.

use std::f64::consts::PI;

use clap::ValueEnum;
use extremal_core::analysis::{bessel_zero, ZeroEnvelope};
use extremal_core::bifurcation::{asymptotic_tnu, check_cr_hypotheses, t_bounds, t_nu, table, ASYMPTOTIC_GAP_CONSTANT};
use extremal_core::delaunay::{delaunay_profile, jacobi_sigma, mean_curvature_check, speed_residual};
use extremal_core::pdecheck::{first_eigenpair, linear_response, neumann_data, MeridianGrid};
use extremal_core::specfun::{bessel_i_scaled, bessel_j};
use extremal_core::spectrum::{eigen_data, lambda1_via_shooting};
use extremal_core::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Specfun,
    Spectrum,
    Bifurcation,
    Delaunay,
    Pde,
}

pub struct Check {
    pub suite: &'static str,
    pub property: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Body = fn() -> Result<(bool, String)>;

/// `T_ν` from 50-digit arithmetic, indexed by `2ν`.
const HIGH_PRECISION_T: [(usize, f64); 8] = [
    (0, 3.0636225550206486),
    (1, 2.619416289955782),
    (2, 2.340984955103269),
    (5, 1.8731352136525095),
    (12, 1.407301682520576),
    (40, 0.873455466987762),
    (200, 0.42290072202278045),
    (2000, 0.13887915934661146),
];

fn specfun_checks() -> Vec<(&'static str, Body)> {
    vec![
        ("Turan inequality for I", || {
            let mut worst = f64::INFINITY;
            for nu in [0.0, 0.5, 2.0, 10.0, 40.0] {
                for i in 1..=60 {
                    let s = 0.05 * 1.1f64.powi(i);
                    let (a, b, c) =
                        (bessel_i_scaled(nu - 1.0, s)?, bessel_i_scaled(nu, s)?, bessel_i_scaled(nu + 1.0, s)?);
                    worst = worst.min((b * b - a * c) / (b * b));
                }
            }
            Ok((worst > 0.0, format!("min relative margin {worst:.3e}")))
        }),
        ("Turan inequality for J below j_nu", || {
            let mut worst = f64::INFINITY;
            for nu in [0.5, 1.0, 3.0, 10.0, 40.0] {
                let z = bessel_zero(nu, 1)?;
                for i in 1..100 {
                    let s = z * i as f64 / 100.0;
                    let (a, b, c) = (bessel_j(nu - 1.0, s)?, bessel_j(nu, s)?, bessel_j(nu + 1.0, s)?);
                    worst = worst.min((b * b - a * c) / (b * b));
                }
            }
            Ok((worst > 0.0, format!("min relative margin {worst:.3e}")))
        }),
        ("three-term recurrences", || {
            let mut worst = 0.0f64;
            for nu in [1.0, 2.5, 10.0, 60.0] {
                for i in 1..=80 {
                    let x = i as f64;
                    let (a, b, c) = (bessel_j(nu - 1.0, x)?, bessel_j(nu, x)?, bessel_j(nu + 1.0, x)?);
                    let scale = a.abs().max(c.abs()).max(b.abs() * 2.0 * nu / x);
                    worst = worst.max((a + c - 2.0 * nu / x * b).abs() / scale);
                    let (ia, ib, ic) =
                        (bessel_i_scaled(nu - 1.0, x)?, bessel_i_scaled(nu, x)?, bessel_i_scaled(nu + 1.0, x)?);
                    worst = worst.max((ia - ic - 2.0 * nu / x * ib).abs() / ia);
                }
            }
            Ok((worst <= 1e-12, format!("max relative residual {worst:.2e}")))
        }),
        ("zero interlacing", || {
            let mut ok = true;
            for i in 2..=60 {
                let nu = i as f64 / 2.0;
                let (p, c, n) = (bessel_zero(nu - 1.0, 1)?, bessel_zero(nu, 1)?, bessel_zero(nu + 1.0, 1)?);
                ok &= p < c && c < n && c < bessel_zero(nu - 1.0, 2)?;
            }
            Ok((ok, "j_{nu-1} < j_nu < j_{nu+1}, j_nu < second zero of J_{nu-1}, nu = 1..30".into()))
        }),
        ("zero envelope for nu >= 10", || {
            let mut ok = true;
            for nu in [10.0, 10.5, 20.0, 50.0, 100.0, 500.0, 1000.0] {
                let env = ZeroEnvelope::new(nu)?;
                let z = bessel_zero(nu, 1)?;
                ok &= env.lower < z && z < env.upper;
            }
            Ok((ok, "lower < j_nu < upper at nu = 10..1000".into()))
        }),
    ]
}

fn spectrum_checks() -> Vec<(&'static str, Body)> {
    vec![
        ("positivity left of mu and strict decrease", || {
            let mut ok = true;
            for n in 1..=12 {
                let d = eigen_data(n)?;
                let mut prev = f64::INFINITY;
                for i in 1..400 {
                    let t = 0.02 * 2000f64.powf(i as f64 / 400.0);
                    let v = d.sigma1(t)?;
                    ok &= v < prev && (t >= d.mu || v > 0.0);
                    prev = v;
                }
            }
            Ok((ok, "n = 1..12, 399-point log grid on [0.02, 40]".into()))
        }),
        ("branch continuity at mu", || {
            let mut worst = 0.0f64;
            for n in 1..=12 {
                let d = eigen_data(n)?;
                let at = d.sigma1(d.mu)?;
                worst = worst.max((d.sigma1(d.mu - 1e-6)? - at).abs()).max((d.sigma1(d.mu + 1e-6)? - at).abs());
            }
            Ok((worst < 1e-4, format!("max jump at eps = 1e-6: {worst:.2e}")))
        }),
        ("negative derivative at mu", || {
            let mut ok = true;
            for n in 1..=12 {
                let d = eigen_data(n)?;
                ok &= d.sigma1_derivative(d.mu, 1e-5)? < 0.0;
            }
            Ok((ok, "central difference, h = 1e-5, n = 1..12".into()))
        }),
        ("ODE oracle equivalence", || {
            let mut worst = 0.0f64;
            for n in [1, 2, 3, 4, 5, 10] {
                let d = eigen_data(n)?;
                for i in 0..20 {
                    let t = 0.3 * 100f64.powf(i as f64 / 19.0);
                    worst = worst.max((d.sigma1(t)? - d.sigma1_via_ode(t, 100_000)?).abs());
                }
            }
            Ok((worst <= 1e-6, format!("max |closed - ode| = {worst:.2e}")))
        }),
        ("shooting eigenvalue", || {
            let mut worst = 0.0f64;
            for n in 2..=8 {
                let d = eigen_data(n)?;
                worst = worst.max((lambda1_via_shooting(n, 1e-10)? - d.lambda_nu).abs());
            }
            Ok((worst <= 1e-6, format!("max |lambda - j^2| = {worst:.2e}")))
        }),
    ]
}

fn bifurcation_checks() -> Vec<(&'static str, Body)> {
    vec![
        ("monotonicity of T_nu", || {
            let ts = table(&(0..=40).collect::<Vec<_>>())?;
            let ok = ts.windows(2).all(|w| w[1].1 < w[0].1);
            Ok((ok, "strictly decreasing over 2nu = 0..40".into()))
        }),
        ("bounds for nu >= 10", || {
            let mut ok = true;
            for two_nu in 20..=40usize {
                let t = t_nu(two_nu + 2)?.t_nu;
                let (lo, hi) = t_bounds(two_nu as f64 / 2.0)?;
                ok &= lo < t && t < hi;
            }
            Ok((ok, "strict brackets over 2nu = 20..40".into()))
        }),
        ("table against high-precision values", || {
            let keys: Vec<usize> = HIGH_PRECISION_T.iter().map(|r| r.0).collect();
            let rows = table(&keys)?;
            let worst = rows.iter().zip(HIGH_PRECISION_T).map(|(r, e)| (r.1 - e.1).abs()).fold(0.0, f64::max);
            Ok((worst < 1e-9, format!("max deviation {worst:.2e}")))
        }),
        ("asymptotic envelope", || {
            let mut worst = 0.0f64;
            for nu in [50.0f64, 100.0, 500.0, 1000.0] {
                let gap = (t_nu((2.0 * nu) as usize + 2)?.t_nu - asymptotic_tnu(nu)?).abs();
                worst = worst.max(gap * nu.powf(7.0 / 6.0));
            }
            Ok((worst <= ASYMPTOTIC_GAP_CONSTANT, format!("max gap*nu^(7/6) = {worst:.4}")))
        }),
        ("bifurcation hypotheses n = 1..12", || {
            let mut failed = Vec::new();
            for n in 1..=12 {
                let r = check_cr_hypotheses(n, 10)?;
                if !r.passed() {
                    failed.push(format!("n={n}: {}", r.failures.join(", ")));
                }
            }
            Ok((failed.is_empty(), if failed.is_empty() { "kernel, simplicity, transversality".into() } else { failed.join("; ") }))
        }),
    ]
}

fn delaunay_checks() -> Vec<(&'static str, Body)> {
    vec![
        ("mean curvature", || {
            let h = mean_curvature_check(&delaunay_profile(0.5, 1024)?)?;
            Ok((h < 1e-4, format!("max |H - 1| = {h:.2e}")))
        }),
        ("speed identity", || {
            let mut worst = 0.0f64;
            for sigma in [0.1, 0.5, 0.9] {
                worst = worst.max(speed_residual(&delaunay_profile(sigma, 512)?));
            }
            Ok((worst < 1e-6, format!("max |y'^2 + z'^2 - y^2| = {worst:.2e}")))
        }),
        ("Jacobi zero structure", || {
            let mut ok = jacobi_sigma(1, 0, 3.0)? == 0.0;
            for k in 1..=10 {
                ok &= jacobi_sigma(0, k, 2.0 * PI * k as f64)? == 0.0;
                ok &= jacobi_sigma(2, k, 1.0)? > 0.0;
            }
            Ok((ok, "sigma_{1,0} = 0, sigma_{0,k}(2 pi k) = 0, sigma_{j>=2,k} > 0".into()))
        }),
    ]
}

fn pde_checks() -> Vec<(&'static str, Body)> {
    vec![
        ("grid convergence", || {
            let exact = eigen_data(2)?.lambda_nu;
            let err = |s: usize| -> Result<f64> {
                Ok((first_eigenpair(&MeridianGrid::cylinder(2, 3.0, s, s)?, 1e-13)?.lambda - exact).abs())
            };
            let ratio = err(24)? / err(48)?;
            Ok(((3.5..=4.5).contains(&ratio), format!("error ratio on doubling {ratio:.3}")))
        }),
        ("positivity and evenness", || {
            let g = MeridianGrid::cosine(2, 3.0, 1, 0.1, 32, 32)?;
            let p = first_eigenpair(&g, 1e-13)?;
            let data = neumann_data(&g, &p);
            let even = (1..g.nt).map(|j| (data[j].1 - data[g.nt - j].1).abs()).fold(0.0, f64::max);
            let positive = p.u.iter().all(|&v| v > 0.0);
            Ok((positive && even < 1e-10, format!("u > 0: {positive}; max |F(t) - F(T-t)| = {even:.2e}")))
        }),
        ("linearization up to normalization", || {
            let d = eigen_data(2)?;
            let t = 2.0;
            let r = linear_response(2, 1, t, 1e-3, 48, 48)?;
            let factor = r.coefficient / d.sigma1(t)?;
            let ok = (factor / d.ball_l2_rescale() - 1.0).abs() < 0.01;
            Ok((ok, format!("pde/closed = {factor:.5}, normalization factor {:.5}", d.ball_l2_rescale())))
        }),
    ]
}

pub fn run(suite: Suite) -> Vec<Check> {
    let groups: Vec<(&'static str, Vec<(&'static str, Body)>)> = vec![
        ("specfun", specfun_checks()),
        ("spectrum", spectrum_checks()),
        ("bifurcation", bifurcation_checks()),
        ("delaunay", delaunay_checks()),
        ("pde", pde_checks()),
    ];
    let wanted = |name: &str| match suite {
        Suite::All => true,
        Suite::Specfun => name == "specfun",
        Suite::Spectrum => name == "spectrum",
        Suite::Bifurcation => name == "bifurcation",
        Suite::Delaunay => name == "delaunay",
        Suite::Pde => name == "pde",
    };
    let mut out = Vec::new();
    for (name, checks) in groups.into_iter().filter(|g| wanted(g.0)) {
        for (property, body) in checks {
            let (pass, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
            out.push(Check { suite: name, property, pass, detail });
        }
    }
    out
}
