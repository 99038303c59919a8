use super::root::{find_root, scan_bracket, Bracket};
use crate::specfun::bessel_j;
use crate::{Error, Real, Result};

/// First zero of the Airy function `Ai`.
const AIRY_A1: f64 = -2.338_107_410_459_767;
/// Lower-bound correction coefficient for `ν ≥ 10` (below 1/16).
const ENVELOPE_C: f64 = 0.061;

/// Two-sided bound `lower < j_ν < upper` valid for `ν ≥ 10`:
/// `ν + aν^{1/3} + bν^{−1/3} − cν^{−1} < j_ν < ν + aν^{1/3} + bν^{−1/3}`
/// with `a = −a₁/2^{1/3} ≈ 1.8557`, `b = (3/20)a₁²·2^{1/3} ≈ 1.0331`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroEnvelope<F> {
    pub lower: F,
    pub upper: F,
}

impl<F: Real> ZeroEnvelope<F> {
    pub fn a() -> F {
        -F::lit(AIRY_A1) / F::lit(2.0).cbrt()
    }

    pub fn b() -> F {
        F::lit(0.15) * F::lit(AIRY_A1 * AIRY_A1) * F::lit(2.0).cbrt()
    }

    pub fn c() -> F {
        F::lit(ENVELOPE_C)
    }

    pub fn new(nu: F) -> Result<Self> {
        if !(nu >= F::lit(10.0)) {
            return Err(Error::domain(format!("zero envelope needs nu >= 10, got {nu}")));
        }
        let upper = nu + Self::a() * nu.cbrt() + Self::b() / nu.cbrt();
        Ok(Self { lower: upper - Self::c() / nu, upper })
    }
}

fn first_zero<F: Real>(nu: F) -> Result<F> {
    let f = |s: F| bessel_j(nu, s).unwrap_or(F::nan());
    let bracket = if nu >= F::lit(10.0) {
        let env = ZeroEnvelope::new(nu)?;
        Bracket::new(f, env.lower - F::lit(0.1), env.upper + F::lit(0.1))?
    } else {
        let lo = nu.max(F::lit(0.1));
        let hi = nu + F::lit(3.0) * nu.cbrt() + F::lit(6.0);
        let steps = ((hi - lo) / F::lit(0.25)).ceil().to_usize().unwrap_or(1);
        scan_bracket(f, lo, hi, steps)?
    };
    polish(nu, bracket)
}

fn polish<F: Real>(nu: F, bracket: Bracket<F>) -> Result<F> {
    let tol = F::lit(1e-13).max(F::epsilon() * F::lit(8.0) * bracket.hi);
    find_root(|s| bessel_j(nu, s).unwrap_or(F::nan()), bracket, tol)
}

/// The `index`-th positive zero of `J_ν` (`index` is 1 or 2), `ν ≥ 0`.
pub fn bessel_zero<F: Real>(nu: F, index: usize) -> Result<F> {
    if !(nu >= F::zero()) || !nu.is_finite() {
        return Err(Error::domain(format!("bessel_zero needs nu >= 0, got {nu}")));
    }
    let j1 = first_zero(nu)?;
    match index {
        1 => Ok(j1),
        2 => {
            // consecutive zeros are more than π apart for ν ≥ 1/2 and
            // at least ~2.5 apart below that
            let lo = j1 + F::lit(0.5);
            let hi = j1 + F::lit(5.0);
            let f = |s: F| bessel_j(nu, s).unwrap_or(F::nan());
            let bracket = scan_bracket(f, lo, hi, 18)?;
            polish(nu, bracket)
        }
        _ => Err(Error::domain(format!("zero index must be 1 or 2, got {index}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn classical_zeros() {
        assert!((bessel_zero(0.0f64, 1).unwrap() - 2.404_825_557_695_773).abs() < 1e-11);
        assert!((bessel_zero(0.5f64, 1).unwrap() - PI).abs() < 1e-11);
        assert!((bessel_zero(0.5f64, 2).unwrap() - 2.0 * PI).abs() < 1e-11);
        assert!((bessel_zero(1.0f64, 1).unwrap() - 3.831_705_970_207_512).abs() < 1e-11);
        assert!((bessel_zero(0.0f64, 2).unwrap() - 5.520_078_110_286_311).abs() < 1e-11);
    }

    #[test]
    fn envelope_brackets_order_ten() {
        let env = ZeroEnvelope::new(10.0f64).unwrap();
        let j = bessel_zero(10.0f64, 1).unwrap();
        assert!(env.lower < j && j < env.upper);
        assert!((ZeroEnvelope::<f64>::a() - 1.8557).abs() < 1e-4);
        assert!((ZeroEnvelope::<f64>::b() - 1.0331).abs() < 1e-4);
        assert!(ZeroEnvelope::<f64>::c() < 1.0 / 16.0);
    }

    #[test]
    fn errors() {
        assert!(bessel_zero(-1.0f64, 1).is_err());
        assert!(bessel_zero(1.0f64, 3).is_err());
        assert!(ZeroEnvelope::new(9.5f64).is_err());
    }
}
