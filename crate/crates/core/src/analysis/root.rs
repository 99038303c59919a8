use crate::{Error, Real, Result};

pub(crate) const MAX_ROOT_ITERATIONS: usize = 200;

/// An interval `[lo, hi]` on which a function changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<F> {
    pub lo: F,
    pub hi: F,
    pub f_lo: F,
    pub f_hi: F,
}

impl<F: Real> Bracket<F> {
    /// Evaluates `f` at both ends and checks `lo < hi`, `f(lo)·f(hi) < 0`.
    pub fn new(f: impl Fn(F) -> F, lo: F, hi: F) -> Result<Self> {
        Self::from_values(lo, hi, f(lo), f(hi))
    }

    pub fn from_values(lo: F, hi: F, f_lo: F, f_hi: F) -> Result<Self> {
        let ok = lo < hi && f_lo.is_finite() && f_hi.is_finite() && f_lo * f_hi < F::zero();
        if !ok {
            return Err(Error::InvalidBracket {
                lo: lo.to_f64().unwrap_or(f64::NAN),
                hi: hi.to_f64().unwrap_or(f64::NAN),
                f_lo: f_lo.to_f64().unwrap_or(f64::NAN),
                f_hi: f_hi.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    pub fn width(&self) -> F {
        self.hi - self.lo
    }
}

/// Walks `[lo, hi]` in `steps` equal pieces and returns the first
/// sub-interval on which `f` changes sign.
pub fn scan_bracket<F: Real>(f: impl Fn(F) -> F, lo: F, hi: F, steps: usize) -> Result<Bracket<F>> {
    if !(lo < hi) || steps == 0 {
        return Err(Error::domain(format!("scan interval [{lo}, {hi}] with {steps} steps")));
    }
    let h = (hi - lo) / F::of(steps);
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..=steps {
        let b = if i == steps { hi } else { lo + h * F::of(i) };
        let fb = f(b);
        if fa.is_finite() && fb.is_finite() && fa * fb < F::zero() {
            return Bracket::from_values(a, b, fa, fb);
        }
        a = b;
        fa = fb;
    }
    Err(Error::NoSignChange(format!("no sign change on [{lo}, {hi}]")))
}

/// Brent's method: inverse quadratic interpolation and secant steps,
/// falling back to bisection whenever they do not shrink the bracket fast
/// enough. The result always lies inside the initial bracket.
pub fn find_root<F: Real>(f: impl Fn(F) -> F, bracket: Bracket<F>, tol: F) -> Result<F> {
    if !(tol > F::zero()) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let Bracket { lo, hi, f_lo, f_hi } = Bracket::from_values(bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi)?;
    let two = F::lit(2.0);
    let half = F::lit(0.5);
    let (mut a, mut fa) = (lo, f_lo);
    let (mut b, mut fb) = (hi, f_hi);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ROOT_ITERATIONS {
        if fb * fc > F::zero() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = two * F::epsilon() * b.abs() + half * tol;
        let m = half * (c - b);
        if m.abs() <= tol1 || fb == F::zero() {
            return Ok(b.max(lo).min(hi));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = F::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * m * qa * (qa - r) - (b - a) * (r - F::one()));
                q = (qa - F::one()) * (r - F::one()) * (s - F::one());
            }
            if p > F::zero() {
                q = -q;
            } else {
                p = -p;
            }
            if two * p < (F::lit(3.0) * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol1 { b + d } else if m > F::zero() { b + tol1 } else { b - tol1 };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NonFinite("find_root"));
        }
    }
    Err(Error::NoConvergence { what: "find_root", iterations: MAX_ROOT_ITERATIONS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    #[test]
    fn simple_roots() {
        let f = |s: f64| s * s - 2.0;
        let r = find_root(f, Bracket::new(f, 1.0, 2.0).unwrap(), 1e-12).unwrap();
        assert!((r - SQRT_2).abs() < 1e-12);
        let g = |s: f64| s.cos();
        let r = find_root(g, Bracket::new(g, 1.0, 2.0).unwrap(), 1e-12).unwrap();
        assert!((r - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn invalid_brackets() {
        let f = |s: f64| s * s + 1.0;
        assert!(matches!(Bracket::new(f, 0.0, 1.0), Err(Error::InvalidBracket { .. })));
        assert!(Bracket::new(|s: f64| s, 1.0, -1.0).is_err());
        let bad = Bracket { lo: 0.0, hi: 1.0, f_lo: 1.0, f_hi: 2.0 };
        assert!(find_root(f, bad, 1e-10).is_err());
        let ok = Bracket::new(|s: f64| s - 0.5, 0.0, 1.0).unwrap();
        assert!(find_root(|s: f64| s - 0.5, ok, 0.0).is_err());
    }

    #[test]
    fn discontinuous_sign_change_converges_to_jump() {
        let f = |s: f64| if s < 0.3 { -1.0 } else { 1.0 };
        let r = find_root(f, Bracket::new(f, 0.0, 1.0).unwrap(), 1e-12).unwrap();
        assert!((r - 0.3).abs() < 1e-11);
    }

    #[test]
    fn scan_finds_first_sign_change() {
        let b = scan_bracket(|s: f64| s.sin(), 0.5, 10.0, 40).unwrap();
        assert!(b.lo < std::f64::consts::PI && std::f64::consts::PI < b.hi);
        assert!(scan_bracket(|s: f64| s * s + 1.0, 0.0, 1.0, 10).is_err());
    }

    #[test]
    fn single_precision() {
        let f = |s: f32| s * s - 2.0;
        let r = find_root(f, Bracket::new(f, 1.0, 2.0).unwrap(), 1e-6).unwrap();
        assert!((r - std::f32::consts::SQRT_2).abs() < 1e-6);
    }
}
