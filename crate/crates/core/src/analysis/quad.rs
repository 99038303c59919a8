use crate::{Error, Real, Result};

const MAX_DEPTH: usize = 50;
const MIN_DEPTH: usize = 3;

// 8-point Gauss–Legendre on [-1, 1].
const GL_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

struct Simpson<'a, F, G> {
    f: &'a G,
    _marker: std::marker::PhantomData<F>,
}

impl<F: Real, G: Fn(F) -> F> Simpson<'_, F, G> {
    fn eval(&self, x: F) -> Result<F> {
        let v = (self.f)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("integrand"))
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn step(&self, a: F, b: F, fa: F, fm: F, fb: F, whole: F, tol: F, depth: usize) -> Result<F> {
        let m = (a + b) / F::lit(2.0);
        let lm = (a + m) / F::lit(2.0);
        let rm = (m + b) / F::lit(2.0);
        let flm = self.eval(lm)?;
        let frm = self.eval(rm)?;
        let six = F::lit(6.0);
        let left = (m - a) * (fa + F::lit(4.0) * flm + fm) / six;
        let right = (b - m) * (fm + F::lit(4.0) * frm + fb) / six;
        let diff = left + right - whole;
        if depth >= MIN_DEPTH && diff.abs() <= F::lit(15.0) * tol {
            return Ok(left + right + diff / F::lit(15.0));
        }
        if depth >= MAX_DEPTH {
            return Err(Error::NoConvergence { what: "adaptive Simpson", iterations: depth });
        }
        let half_tol = tol / F::lit(2.0);
        Ok(self.step(a, m, fa, flm, fm, left, half_tol, depth + 1)?
            + self.step(m, b, fm, frm, fb, right, half_tol, depth + 1)?)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with Richardson
/// extrapolation; `tol` is an absolute error target.
pub fn integrate<F: Real>(f: impl Fn(F) -> F, a: F, b: F, tol: F) -> Result<F> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("integration interval [{a}, {b}]")));
    }
    if !(tol > F::zero()) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let s = Simpson { f: &f, _marker: std::marker::PhantomData };
    let m = (a + b) / F::lit(2.0);
    let (fa, fm, fb) = (s.eval(a)?, s.eval(m)?, s.eval(b)?);
    let whole = (b - a) * (fa + F::lit(4.0) * fm + fb) / F::lit(6.0);
    s.step(a, b, fa, fm, fb, whole, tol, 0)
}

fn gauss_panels<F: Real>(g: &impl Fn(F) -> Result<F>, a: F, b: F, panels: usize) -> Result<F> {
    let h = (b - a) / F::of(panels);
    let half = h / F::lit(2.0);
    let mut total = F::zero();
    for p in 0..panels {
        let mid = a + h * (F::of(p) + F::lit(0.5));
        let mut acc = F::zero();
        for (&x, &w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
            let dx = half * F::lit(x);
            acc = acc + F::lit(w) * (g(mid - dx)? + g(mid + dx)?);
        }
        total = total + acc * half;
    }
    Ok(total)
}

/// Integral over `[a, b]` of an integrand with (at most) inverse square
/// root singularities at both endpoints, `f ~ C/√(x−a)` and `f ~ C′/√(b−x)`.
///
/// Substitutes `x = a + (b−a) sin²θ`, which turns the integrand into a
/// smooth function of `θ ∈ [0, π/2]`, then applies composite Gauss–Legendre
/// with panel doubling. The endpoints themselves are never evaluated. A
/// non-finite integrand value in the interior (for instance the square root
/// of a negative radicand) is an error.
pub fn integrate_inv_sqrt<F: Real>(f: impl Fn(F) -> F, a: F, b: F) -> Result<F> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("integration interval [{a}, {b}]")));
    }
    let len = b - a;
    let g = |theta: F| -> Result<F> {
        let (s, c) = theta.sin_cos();
        let x = a + len * s * s;
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::domain(format!("integrand is not finite at interior point {x}")));
        }
        Ok(v * F::lit(2.0) * len * s * c)
    };
    let upper = F::FRAC_PI_2();
    let tol = F::lit(1e-11).max(F::epsilon() * F::lit(64.0));
    let mut panels = 1;
    let mut prev = gauss_panels(&g, F::zero(), upper, panels)?;
    while panels < 1 << 16 {
        panels *= 2;
        let cur = gauss_panels(&g, F::zero(), upper, panels)?;
        if (cur - prev).abs() <= tol * F::one().max(cur.abs()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NoConvergence { what: "integrate_inv_sqrt", iterations: panels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn polynomials() {
        assert!((integrate(|_| 1.0f64, 0.0, 1.0, 1e-12).unwrap() - 1.0).abs() < 1e-14);
        assert!((integrate(|x: f64| x * x, 0.0, 1.0, 1e-12).unwrap() - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn oscillatory_smooth() {
        let v = integrate(|x: f64| x.sin(), 0.0, PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn errors() {
        assert!(integrate(|x: f64| x, 1.0, 0.0, 1e-6).is_err());
        assert!(integrate(|x: f64| x, 0.0, 1.0, 0.0).is_err());
        assert!(matches!(integrate(|x: f64| 1.0 / x, 0.0, 1.0, 1e-6), Err(Error::NonFinite(_))));
        // Endpoint-singular integrand cannot reach the tolerance.
        let r = integrate(|x: f64| 1.0 / (x + 1e-300).sqrt(), 1e-300, 1.0, 1e-14);
        assert!(r.is_err());
    }

    #[test]
    fn inverse_sqrt_endpoints() {
        let v = integrate_inv_sqrt(|x: f64| 1.0 / (x * (1.0 - x)).sqrt(), 0.0, 1.0).unwrap();
        assert!((v - PI).abs() < 1e-9);
        let v = integrate_inv_sqrt(|x: f64| 1.0 / (1.0 - x * x).sqrt(), 0.0, 1.0).unwrap();
        assert!((v - FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn inverse_sqrt_rejects_negative_radicand() {
        let r = integrate_inv_sqrt(|x: f64| 1.0 / (x * (0.5 - x)).sqrt(), 0.0, 1.0);
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
