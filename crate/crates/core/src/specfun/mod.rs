//! Real-order Bessel functions of the first kind, their modified
//! counterparts, and the Gamma function.
//!
//! `J_τ` uses the ascending series where it is well conditioned and a
//! backward (Miller) recurrence in the order, normalized by the Neumann
//! addition series, elsewhere. `I_τ` is always summed from its ascending
//! series; every term is positive so there is no cancellation.

mod bessel_i;
mod bessel_j;
mod gamma;
mod sum;

pub use bessel_i::{bessel_i, bessel_i_prime, bessel_i_ratio, bessel_i_reduced, bessel_i_scaled};
pub use bessel_j::{bessel_j, bessel_j_prime, bessel_j_ratio, bessel_j_reduced};
pub use gamma::{gamma, ln_gamma};

use crate::{Error, Real, Result};

/// The Bessel order `ν = (n − 2)/2` attached to a cylinder cross-section of
/// dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order<F> {
    nu: F,
    n: Option<usize>,
}

impl<F: Real> Order<F> {
    /// A bare order `ν ≥ 0` with no dimension attached unless `2ν + 2` is an
    /// integer.
    pub fn new(nu: F) -> Result<Self> {
        if !(nu >= F::zero()) || !nu.is_finite() {
            return Err(Error::domain(format!("order must be finite and >= 0, got {nu}")));
        }
        let two_nu = nu + nu;
        let n = if two_nu.fract() == F::zero() {
            two_nu.to_usize().map(|m| m + 2)
        } else {
            None
        };
        Ok(Self { nu, n })
    }

    /// The order for dimension `n ≥ 1`. For `n = 1` the order is `−1/2`;
    /// that branch is handled in closed form and never reaches Bessel code.
    pub fn from_dimension(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("dimension must be >= 1"));
        }
        let nu = (F::of(n) - F::lit(2.0)) / F::lit(2.0);
        Ok(Self { nu, n: Some(n) })
    }

    /// Order from `2ν`, the indexing used by the bifurcation table.
    pub fn from_two_nu(two_nu: usize) -> Self {
        Self { nu: F::of(two_nu) / F::lit(2.0), n: Some(two_nu + 2) }
    }

    pub fn nu(&self) -> F {
        self.nu
    }

    pub fn dimension(&self) -> Option<usize> {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_from_dimension() {
        let o = Order::<f64>::from_dimension(2).unwrap();
        assert_eq!(o.nu(), 0.0);
        assert_eq!(o.dimension(), Some(2));
        assert_eq!(Order::<f64>::from_dimension(1).unwrap().nu(), -0.5);
        assert_eq!(Order::<f64>::from_dimension(5).unwrap().nu(), 1.5);
        assert!(Order::<f64>::from_dimension(0).is_err());
    }

    #[test]
    fn order_new_infers_dimension() {
        assert_eq!(Order::new(2.5f64).unwrap().dimension(), Some(7));
        assert_eq!(Order::new(0.3f64).unwrap().dimension(), None);
        assert!(Order::new(-0.1f64).is_err());
        assert!(Order::new(f64::NAN).is_err());
        assert_eq!(Order::<f64>::from_two_nu(20).nu(), 10.0);
    }
}
