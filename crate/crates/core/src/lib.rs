//! Bifurcating extremal domains for the first Dirichlet eigenvalue on
//! perturbed cylinders `B^n × ℝ`.
//!
//! The crate computes the spectrum `σ_k(T)` of the linearized
//! Dirichlet-to-Neumann operator on the straight cylinder, the bifurcation
//! periods `T_ν` where its kernel becomes one-dimensional, first-order
//! bifurcating domain profiles, and two independent checks of the closed
//! forms: a radial ODE shooting oracle ([`spectrum::sigma1_via_ode`]) and a
//! direct finite-difference eigensolver on wavy cylinders ([`pdecheck`]).
//!
//! The numerical primitives in [`specfun`] and [`analysis`] are generic over
//! the scalar type through [`Real`]; the higher-level modules are pinned to
//! `f64` because their tolerances are double-precision tolerances.

pub mod analysis;
pub mod bifurcation;
pub mod delaunay;
mod error;
pub mod pdecheck;
pub mod specfun;
pub mod spectrum;

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

pub use error::{Error, Result};

/// Floating-point scalar used by the generic numerical kernels.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must be representable")
    }

    /// Converts a count or index into `Self`.
    #[inline]
    fn of(n: usize) -> Self {
        Self::from_usize(n).expect("integer must be representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Bracket over `f64`, the working precision of the rest of the crate.
pub type Bracket = analysis::Bracket<f64>;
/// Bracket over `f32`.
pub type Bracket32 = analysis::Bracket<f32>;
/// Dimension-derived Bessel order over `f64`.
pub type Order = specfun::Order<f64>;






pub use bifurcation::{BifurcationPoint, CrReport, DomainProfile};
pub use delaunay::DelaunayProfile;
pub use pdecheck::{EigenPair, MeridianGrid};
pub use spectrum::EigenData;
