use crate::{Error, Real, Result};

/// Classical fixed-step fourth-order Runge–Kutta from `t0` to `t1` in
/// `steps` equal steps. `t1 < t0` integrates backwards.
pub fn ode_rk4<F: Real, const N: usize>(
    field: impl Fn(F, &[F; N]) -> [F; N],
    t0: F,
    y0: [F; N],
    t1: F,
    steps: usize,
) -> Result<[F; N]> {
    if steps == 0 {
        return Err(Error::domain("ode_rk4 needs at least one step"));
    }
    let h = (t1 - t0) / F::of(steps);
    let half = h / F::lit(2.0);
    let sixth = h / F::lit(6.0);
    let two = F::lit(2.0);
    let mut y = y0;
    let shifted = |y: &[F; N], k: &[F; N], s: F| -> [F; N] { std::array::from_fn(|i| y[i] + s * k[i]) };
    for i in 0..steps {
        let t = t0 + h * F::of(i);
        let k1 = field(t, &y);
        let k2 = field(t + half, &shifted(&y, &k1, half));
        let k3 = field(t + half, &shifted(&y, &k2, half));
        let k4 = field(t + h, &shifted(&y, &k3, h));
        for j in 0..N {
            y[j] = y[j] + sixth * (k1[j] + two * k2[j] + two * k3[j] + k4[j]);
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("ode_rk4 state"));
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_2};

    #[test]
    fn exponential_growth_and_decay() {
        let up = ode_rk4(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], 1.0, 1000).unwrap();
        assert!((up[0] - E).abs() < 1e-10);
        let down = ode_rk4(|_, y: &[f64; 1]| [-y[0]], 0.0, [1.0], 1.0, 1000).unwrap();
        assert!((down[0] - 1.0 / E).abs() < 1e-10);
    }

    #[test]
    fn harmonic_quarter_period() {
        let y = ode_rk4(|_, y: &[f64; 2]| [y[1], -y[0]], 0.0, [1.0, 0.0], FRAC_PI_2, 1000).unwrap();
        assert!(y[0].abs() < 1e-8 && (y[1] + 1.0).abs() < 1e-8);
    }

    #[test]
    fn deterministic_and_errors() {
        let f = |t: f64, y: &[f64; 1]| [t * y[0]];
        let a = ode_rk4(f, 0.0, [1.0], 1.0, 77).unwrap();
        let b = ode_rk4(f, 0.0, [1.0], 1.0, 77).unwrap();
        assert_eq!(a, b);
        assert!(ode_rk4(f, 0.0, [1.0], 1.0, 0).is_err());
        let blow = ode_rk4(|_, y: &[f64; 1]| [y[0] * y[0]], 0.0, [1.0], 2.0, 100);
        assert!(matches!(blow, Err(Error::NonFinite(_))));
    }
}
