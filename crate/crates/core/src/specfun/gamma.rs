use crate::{Error, Real, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// Lanczos sum A_g(z) for z = x - 1, x >= 1/2.
fn lanczos_sum<F: Real>(z: F) -> F {
    let mut a = F::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + F::lit(c) / (z + F::of(i));
    }
    a
}

/// `Γ(x)` for `x > 0`.
pub fn gamma<F: Real>(x: F) -> Result<F> {
    if !(x > F::zero()) || !x.is_finite() {
        return Err(Error::domain(format!("gamma requires x > 0, got {x}")));
    }
    if x < F::lit(0.5) {
        return Ok(gamma(x + F::one())? / x);
    }
    let z = x - F::one();
    let t = z + F::lit(LANCZOS_G + 0.5);
    // Split the power so that t^(z+1/2) does not overflow before Γ does.
    let half = t.powf((z + F::lit(0.5)) / F::lit(2.0));
    let g = (F::lit(2.0) * F::PI()).sqrt() * half * ((-t).exp() * half) * lanczos_sum(z);
    if !g.is_finite() {
        return Err(Error::range(format!("gamma overflows at x = {x}")));
    }
    Ok(g)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma<F: Real>(x: F) -> Result<F> {
    if !(x > F::zero()) || !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x < F::lit(0.5) {
        return Ok(ln_gamma(x + F::one())? - x.ln());
    }
    let z = x - F::one();
    let t = z + F::lit(LANCZOS_G + 0.5);
    Ok(F::lit(0.5) * (F::lit(2.0) * F::PI()).ln() + (z + F::lit(0.5)) * t.ln() - t
        + lanczos_sum(z).ln())
}
