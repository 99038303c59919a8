use super::bessel_j::reduced_series;
use super::gamma::ln_gamma;
use super::sum::CompensatedSum;
use crate::{Error, Real, Result};

fn check_args<F: Real>(tau: F, x: F) -> Result<()> {
    if !tau.is_finite() {
        return Err(Error::domain(format!("order must be finite, got {tau}")));
    }
    if !(x >= F::zero()) || !x.is_finite() {
        return Err(Error::domain(format!("argument must be finite and >= 0, got {x}")));
    }
    Ok(())
}

/// `e^{−x} I_τ(x)` for `τ > −1`, `x > 0`. The terms are carried relative to
/// a running log scale so neither the leading term nor the peak term of
/// the series leaves the representable range.
fn scaled_series<F: Real>(tau: F, x: F) -> Result<F> {
    let q = x * x / F::lit(4.0);
    let mut log_scale = tau * (x / F::lit(2.0)).ln() - ln_gamma(tau + F::one())? - x;
    let huge = F::max_value().sqrt().sqrt();
    let mut term = F::one();
    let mut acc = CompensatedSum::new();
    acc.add(term);
    let limit = 64 + 4 * x.to_usize().unwrap_or(usize::MAX / 8);
    for m in 1..limit {
        let mf = F::of(m);
        term = term * q / (mf * (tau + mf));
        acc.add(term);
        if term > huge {
            term = term / huge;
            let mut rescaled = CompensatedSum::new();
            rescaled.add(acc.value() / huge);
            acc = rescaled;
            log_scale = log_scale + huge.ln();
        }
        if mf * (tau + mf) > q && term <= F::epsilon() * acc.value() * F::lit(0.25) {
            return Ok(acc.value() * log_scale.exp());
        }
    }
    Err(Error::NoConvergence { what: "modified Bessel series", iterations: limit })
}

/// `e^{−x} I_τ(x)`, the exponentially scaled modified Bessel function.
pub fn bessel_i_scaled<F: Real>(tau: F, x: F) -> Result<F> {
    check_args(tau, x)?;
    if x == F::zero() {
        return if tau == F::zero() {
            Ok(F::one())
        } else if tau > F::zero() || tau.fract() == F::zero() {
            Ok(F::zero())
        } else {
            Err(Error::range(format!("I_{tau}(0) is unbounded")))
        };
    }
    if tau > -F::one() {
        return scaled_series(tau, x);
    }
    if tau.fract() == F::zero() {
        return scaled_series(-tau, x);
    }
    // I_{β−1} = (2β/x) I_β + I_{β+1}
    let alpha = tau - tau.floor();
    let steps = (alpha - tau).round().to_usize().expect("finite order");
    let mut lo = scaled_series(alpha, x)?;
    let mut hi = scaled_series(alpha + F::one(), x)?;
    let mut beta = alpha;
    for _ in 0..steps {
        let next = F::lit(2.0) * beta / x * lo + hi;
        hi = lo;
        lo = next;
        beta = beta - F::one();
    }
    Ok(lo)
}

/// Modified Bessel function of the first kind `I_τ(x)`.
///
/// Returns a range error when `I_τ(x)` overflows the scalar type.
pub fn bessel_i<F: Real>(tau: F, x: F) -> Result<F> {
    let scaled = bessel_i_scaled(tau, x)?;
    let v = scaled * x.exp();
    if !v.is_finite() {
        return Err(Error::range(format!("I_{tau}({x}) overflows")));
    }
    Ok(v)
}

/// `I_τ′(x) = (I_{τ−1}(x) + I_{τ+1}(x)) / 2`.
pub fn bessel_i_prime<F: Real>(tau: F, x: F) -> Result<F> {
    check_args(tau, x)?;
    if x == F::zero() {
        return if tau == F::one() || tau == -F::one() {
            Ok(F::lit(0.5))
        } else if tau == F::zero() || tau > F::one() || (tau.fract() == F::zero()) {
            Ok(F::zero())
        } else {
            Err(Error::range(format!("I_{tau}'(0) is unbounded")))
        };
    }
    Ok((bessel_i(tau - F::one(), x)? + bessel_i(tau + F::one(), x)?) / F::lit(2.0))
}

/// `Γ(τ+1) (2/x)^τ I_τ(x) = 0F1(; τ+1; x²/4)` for `τ > −1`.
pub fn bessel_i_reduced<F: Real>(tau: F, x: F) -> Result<F> {
    check_args(tau, x)?;
    if !(tau > -F::one()) {
        return Err(Error::domain(format!("reduced I requires order > -1, got {tau}")));
    }
    let v = reduced_series(tau, x, false)?;
    if !v.is_finite() {
        return Err(Error::range(format!("reduced I_{tau}({x}) overflows")));
    }
    Ok(v)
}

/// `I_{τ+1}(x) / I_τ(x)` for `τ > −1`, stable for both tiny and large `x`.
pub fn bessel_i_ratio<F: Real>(tau: F, x: F) -> Result<F> {
    check_args(tau, x)?;
    if !(tau > -F::one()) {
        return Err(Error::domain(format!("I ratio requires order > -1, got {tau}")));
    }
    if x <= F::lit(2.0) {
        let num = reduced_series(tau + F::one(), x, false)?;
        let den = reduced_series(tau, x, false)?;
        return Ok(x / (F::lit(2.0) * (tau + F::one())) * num / den);
    }
    Ok(scaled_series(tau + F::one(), x)? / scaled_series(tau, x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_i(0.0f64, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(2.0f64, 0.0).unwrap(), 0.0);
        assert_relative_eq!(bessel_i(0.0f64, 1e-10).unwrap(), 1.0, max_relative = 1e-15);
        assert!(bessel_i(2.0f64, 1e-10).unwrap() < 1e-20);
    }

    #[test]
    fn large_argument_asymptotics() {
        let s = 30.0f64;
        let asym = s.exp() / (2.0 * PI * s).sqrt();
        let v = bessel_i(0.0, s).unwrap();
        assert!((v / asym - 1.0).abs() < 0.02);
    }

    #[test]
    fn half_integer_closed_forms() {
        for &x in &[0.01f64, 0.5, 3.0, 25.0, 150.0] {
            let c = (2.0 / (PI * x)).sqrt();
            assert_relative_eq!(bessel_i_scaled(0.5, x).unwrap(), c * (1.0 - (-2.0 * x).exp()) / 2.0, max_relative = 1e-13);
            assert_relative_eq!(bessel_i_scaled(-0.5, x).unwrap(), c * (1.0 + (-2.0 * x).exp()) / 2.0, max_relative = 1e-13);
            assert_relative_eq!(
                bessel_i_ratio(-0.5, x).unwrap(),
                x.tanh(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn negative_orders() {
        let x = 1.7f64;
        assert_eq!(bessel_i(-1.0, x).unwrap(), bessel_i(1.0, x).unwrap());
        // I_{-3/2}(x) = sqrt(2/(πx)) (sinh x − cosh x / x)
        let expected = (2.0 / (PI * x)).sqrt() * (x.sinh() - x.cosh() / x);
        assert_relative_eq!(bessel_i(-1.5, x).unwrap(), expected, max_relative = 1e-13);
    }

    #[test]
    fn derivative_and_overflow() {
        assert_eq!(bessel_i_prime(1.0f64, 0.0).unwrap(), 0.5);
        assert_relative_eq!(bessel_i_prime(0.0f64, 2.0).unwrap(), bessel_i(1.0f64, 2.0).unwrap(), max_relative = 1e-14);
        assert!(matches!(bessel_i(0.0f64, 800.0), Err(Error::Range(_))));
        assert!(bessel_i_scaled(0.0f64, 800.0).unwrap() > 0.0);
    }

    #[test]
    fn ratio_regimes_agree() {
        for &tau in &[0.0f64, 0.5, 3.0] {
            for &x in &[1.5f64, 2.0, 2.5] {
                let r = bessel_i_ratio(tau, x).unwrap();
                let s = bessel_i_scaled(tau + 1.0, x).unwrap() / bessel_i_scaled(tau, x).unwrap();
                assert_relative_eq!(r, s, max_relative = 1e-14);
            }
        }
        assert_relative_eq!(bessel_i_ratio(0.0f64, 2.0).unwrap(), 0.697_774_657_964_007_98, max_relative = 1e-15);
        // ξ I_{ν+1}(ξ)/I_ν(ξ) -> 2(ν+1)·0 as ξ -> 0, with slope ξ²/(2(ν+1))
        let r = bessel_i_ratio(1.0f64, 1e-8).unwrap();
        assert_relative_eq!(r, 1e-8 / 4.0, max_relative = 1e-12);
    }
}
