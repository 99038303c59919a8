use super::gamma::{gamma, ln_gamma};
use super::sum::CompensatedSum;
use crate::{Error, Real, Result};

const MAX_SERIES_TERMS: usize = 2000;

fn check_args<F: Real>(tau: F, x: F) -> Result<()> {
    if !tau.is_finite() {
        return Err(Error::domain(format!("order must be finite, got {tau}")));
    }
    if !(x >= F::zero()) || !x.is_finite() {
        return Err(Error::domain(format!("argument must be finite and >= 0, got {x}")));
    }
    Ok(())
}

fn is_integer<F: Real>(tau: F) -> bool {
    tau.fract() == F::zero()
}

/// The ascending series loses at most a factor ~e^4 to cancellation here.
fn series_is_safe<F: Real>(tau: F, x: F) -> bool {
    x <= F::lit(8.0) || x * x <= F::lit(8.0) * (tau + F::one())
}

/// `(x/2)^τ / Γ(τ+1)` for `τ > −1`.
fn series_prefactor<F: Real>(tau: F, x: F) -> Result<F> {
    let half = x / F::lit(2.0);
    if tau == F::zero() {
        return Ok(F::one());
    }
    if tau < F::lit(160.0) {
        let p = half.powf(tau) / gamma(tau + F::one())?;
        if p.is_finite() && p != F::zero() {
            return Ok(p);
        }
    }
    Ok((tau * half.ln() - ln_gamma(tau + F::one())?).exp())
}

/// `Σ_m (∓x²/4)^m / (m! (τ+1)_m)`, i.e. `Γ(τ+1)(2/x)^τ J_τ(x)` (sign −) or
/// the `I_τ` analogue (sign +). Requires `τ > −1`.
pub(super) fn reduced_series<F: Real>(tau: F, x: F, alternating: bool) -> Result<F> {
    let q = x * x / F::lit(4.0);
    let sign = if alternating { -F::one() } else { F::one() };
    let mut term = F::one();
    let mut acc = CompensatedSum::new();
    acc.add(term);
    let eps = F::epsilon();
    for m in 1..MAX_SERIES_TERMS {
        let mf = F::of(m);
        term = term * sign * q / (mf * (tau + mf));
        acc.add(term);
        // terms decrease monotonically once m(τ+m) > q
        if mf * (tau + mf) > q && term.abs() <= eps * acc.value().abs() * F::lit(0.25) {
            return Ok(acc.value());
        }
        if term == F::zero() {
            return Ok(acc.value());
        }
    }
    Err(Error::NoConvergence { what: "Bessel ascending series", iterations: MAX_SERIES_TERMS })
}

/// Normalized `J_{α+k}(x)` for `k = 0..=top`, `0 ≤ α < 1`, by backward
/// recurrence in the order and the Neumann series
/// `(x/2)^α = Σ_i (α+2i) Γ(α+i)/i! · J_{α+2i}(x)`.
pub(super) fn miller<F: Real>(alpha: F, x: F, top: usize) -> Result<Vec<F>> {
    let reach = x.max(alpha + F::of(top));
    let margin = F::lit(30.0) + F::lit(8.0) * reach.cbrt();
    let start = (reach + margin)
        .ceil()
        .to_usize()
        .ok_or_else(|| Error::range(format!("recurrence start for x = {x}")))?
        .max(top + 2);

    let huge = F::max_value().sqrt().sqrt();
    let tiny = huge.recip();
    let mut f = vec![F::zero(); start + 2];
    f[start] = tiny;
    for k in (1..=start).rev() {
        let next = F::lit(2.0) * (alpha + F::of(k)) / x * f[k] - f[k + 1];
        f[k - 1] = next;
        if next.abs() > huge {
            for v in &mut f[k - 1..=start] {
                *v = *v * tiny;
            }
        }
    }

    let mut norm = CompensatedSum::new();
    let g1 = gamma(alpha + F::one())?;
    norm.add(g1 * f[0]);
    let mut g = g1; // Γ(α+i)/i! at i = 1
    let mut i = 1;
    while 2 * i <= start {
        let fi = F::of(i);
        norm.add((alpha + F::lit(2.0) * fi) * g * f[2 * i]);
        g = g * (alpha + fi) / (fi + F::one());
        i += 1;
    }
    let s = norm.value();
    if s == F::zero() || !s.is_finite() {
        return Err(Error::range(format!("Neumann normalization degenerate at x = {x}")));
    }
    let scale = (x / F::lit(2.0)).powf(alpha) / s;
    Ok(f[..=top].iter().map(|&v| v * scale).collect())
}

fn j_nonnegative<F: Real>(tau: F, x: F) -> Result<F> {
    if series_is_safe(tau, x) {
        return Ok(series_prefactor(tau, x)? * reduced_series(tau, x, true)?);
    }
    let alpha = tau.fract();
    let top = (tau - alpha).to_usize().expect("finite non-negative order");
    Ok(miller(alpha, x, top)?[top])
}

/// Bessel function of the first kind `J_τ(x)` for real order `τ` and `x ≥ 0`.
///
/// Negative integer orders use `J_{−m} = (−1)^m J_m`; negative non-integer
/// orders use the series when it is safe and the downward three-term
/// recurrence from `J_α, J_{α+1}` otherwise.
pub fn bessel_j<F: Real>(tau: F, x: F) -> Result<F> {
    check_args(tau, x)?;
    if x == F::zero() {
        return if tau == F::zero() {
            Ok(F::one())
        } else if tau > F::zero() || is_integer(tau) {
            Ok(F::zero())
        } else {
            Err(Error::range(format!("J_{tau}(0) is unbounded")))
        };
    }
    if tau >= F::zero() {
        return j_nonnegative(tau, x);
    }
    if is_integer(tau) {
        let m = (-tau).to_usize().expect("finite order");
        let v = j_nonnegative(-tau, x)?;
        return Ok(if m.is_multiple_of(2) { v } else { -v });
    }
    if tau > -F::one() && series_is_safe(tau, x) {
        return Ok(series_prefactor(tau, x)? * reduced_series(tau, x, true)?);
    }
    // J_{β−1} = (2β/x) J_β − J_{β+1}, from β = α + 1 down to τ + 1.
    let alpha = tau - tau.floor();
    let steps = (alpha - tau).round().to_usize().expect("finite order");
    let (mut lo, mut hi) = if series_is_safe(alpha + F::one(), x) && series_is_safe(alpha, x) {
        (j_nonnegative(alpha, x)?, j_nonnegative(alpha + F::one(), x)?)
    } else {
        let v = miller(alpha, x, 1)?;
        (v[0], v[1])
    };
    let mut beta = alpha;
    for _ in 0..steps {
        let next = F::lit(2.0) * beta / x * lo - hi;
        hi = lo;
        lo = next;
        beta = beta - F::one();
    }
    Ok(lo)
}

/// `J_τ′(x) = (J_{τ−1}(x) − J_{τ+1}(x)) / 2`.
pub fn bessel_j_prime<F: Real>(tau: F, x: F) -> Result<F> {
    check_args(tau, x)?;
    if x == F::zero() {
        // J_τ(x) ~ (x/2)^τ/Γ(τ+1)
        return if tau == F::one() || tau == -F::one() {
            Ok(F::lit(0.5) * tau)
        } else if tau == F::zero() || tau > F::one() || (is_integer(tau) && tau < -F::one()) {
            Ok(F::zero())
        } else {
            Err(Error::range(format!("J_{tau}'(0) is unbounded")))
        };
    }
    Ok((bessel_j(tau - F::one(), x)? - bessel_j(tau + F::one(), x)?) / F::lit(2.0))
}

/// `Γ(τ+1) (2/x)^τ J_τ(x)`, the entire function `0F1(; τ+1; −x²/4)`.
///
/// Equal to 1 at `x = 0` and free of the `x^τ` factor, so it stays
/// representable for large orders at small arguments. Requires `τ > −1`.
pub fn bessel_j_reduced<F: Real>(tau: F, x: F) -> Result<F> {
    check_args(tau, x)?;
    if !(tau > -F::one()) {
        return Err(Error::domain(format!("reduced J requires order > -1, got {tau}")));
    }
    if series_is_safe(tau, x) {
        return reduced_series(tau, x, true);
    }
    let j = bessel_j(tau, x)?;
    let v = j * (ln_gamma(tau + F::one())? + tau * (F::lit(2.0) / x).ln()).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        // J_τ(x) underflowed against an overflowing prefactor
        Err(Error::range(format!("reduced J_{tau}({x}) not representable")))
    }
}

/// `J_{τ+1}(x) / J_τ(x)` for `τ > −1`, evaluated without underflow for
/// small `x`.
pub fn bessel_j_ratio<F: Real>(tau: F, x: F) -> Result<F> {
    check_args(tau, x)?;
    if !(tau > -F::one()) {
        return Err(Error::domain(format!("J ratio requires order > -1, got {tau}")));
    }
    if series_is_safe(tau + F::one(), x) && series_is_safe(tau, x) {
        let num = reduced_series(tau + F::one(), x, true)?;
        let den = reduced_series(tau, x, true)?;
        return Ok(x / (F::lit(2.0) * (tau + F::one())) * num / den);
    }
    let alpha = tau.fract();
    let top = (tau - alpha).to_usize().expect("finite order");
    let v = miller(alpha, x, top + 1)?;
    Ok(v[top + 1] / v[top])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn j_half(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * x.sin()
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0.0f64, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1.0f64, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(2.5f64, 0.0).unwrap(), 0.0);
        assert_relative_eq!(bessel_j(0.0f64, 1e-12).unwrap(), 1.0, max_relative = 1e-15);
        assert!(bessel_j(1.0f64, 1e-12).unwrap().abs() < 1e-12);
        assert!(bessel_j(-0.5f64, 0.0).is_err());
    }

    #[test]
    fn j0_vanishes_at_first_zero() {
        assert!(bessel_j(0.0f64, 2.404_825_557_695_773).unwrap().abs() < 1e-12);
    }

    #[test]
    fn derivative_examples() {
        let j0 = 2.404_825_557_695_773f64;
        assert!(bessel_j_prime(0.0, j0).unwrap() < 0.0);
        assert_relative_eq!(bessel_j_prime(1.0f64, 1e-9).unwrap(), 0.5, max_relative = 1e-12);
        assert_eq!(bessel_j_prime(1.0f64, 0.0).unwrap(), 0.5);
        assert_relative_eq!(
            bessel_j_prime(0.0f64, 1.0).unwrap(),
            -bessel_j(1.0f64, 1.0).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn half_integer_closed_forms_both_regimes() {
        for &x in &[0.3, 2.0, 7.9, 8.5, 15.0, 40.0, 123.4, 700.0] {
            assert_relative_eq!(bessel_j(0.5f64, x).unwrap(), j_half(x), max_relative = 1e-12, epsilon = 1e-14);
            let jm = (2.0 / (PI * x)).sqrt() * x.cos();
            assert_relative_eq!(bessel_j(-0.5f64, x).unwrap(), jm, max_relative = 1e-12, epsilon = 1e-14);
            let j32 = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            assert_relative_eq!(bessel_j(1.5f64, x).unwrap(), j32, max_relative = 1e-12, epsilon = 1e-14);
            let jm32 = (2.0 / (PI * x)).sqrt() * (-x.cos() / x - x.sin());
            assert_relative_eq!(bessel_j(-1.5f64, x).unwrap(), jm32, max_relative = 1e-11, epsilon = 1e-13);
        }
    }

    #[test]
    fn negative_integer_order_reflection() {
        for &x in &[0.5f64, 3.0, 20.0] {
            assert_eq!(bessel_j(-1.0, x).unwrap(), -bessel_j(1.0, x).unwrap());
            assert_eq!(bessel_j(-2.0, x).unwrap(), bessel_j(2.0, x).unwrap());
        }
    }

    #[test]
    fn regimes_agree_at_switch() {
        // Series just below x = 8, Miller just above: J is continuous.
        for &tau in &[0.0f64, 0.5, 1.0, 3.5] {
            let a = bessel_j(tau, 8.0).unwrap();
            let b = bessel_j(tau, 8.0 + 1e-12).unwrap();
            assert!((a - b).abs() < 1e-12, "tau={tau}: {a} vs {b}");
            let m = miller(tau.fract(), 8.0, tau as usize).unwrap()[tau as usize];
            assert!((a - m).abs() < 1e-13, "tau={tau}: series {a} vs miller {m}");
        }
    }

    #[test]
    fn reduced_and_ratio() {
        assert_eq!(bessel_j_reduced(3.0f64, 0.0).unwrap(), 1.0);
        let x = 2.5f64;
        let r = bessel_j_reduced(2.0, x).unwrap();
        let direct = bessel_j(2.0, x).unwrap() * 2.0 * (2.0 / x).powi(2);
        assert_relative_eq!(r, direct, max_relative = 1e-14);
        for &x in &[1e-6f64, 0.7, 5.0, 30.0] {
            let ratio = bessel_j_ratio(1.0, x).unwrap();
            let direct = bessel_j(2.0, x).unwrap() / bessel_j(1.0, x).unwrap();
            assert_relative_eq!(ratio, direct, max_relative = 1e-11);
        }
        assert!(bessel_j_reduced(-1.0f64, 1.0).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(bessel_j(0.0f64, -1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(f64::NAN, 1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(0.0f64, f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn single_precision_smoke() {
        let v = bessel_j(0.0f32, 1.0).unwrap();
        assert!((v - 0.765_197_7).abs() < 1e-5);
    }
}
