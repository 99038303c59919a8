//! Generic numerical primitives: bracketed root finding, adaptive
//! quadrature, fixed-step RK4, and location of Bessel zeros.

mod ode;
mod quad;
mod root;
mod zeros;

pub use ode::ode_rk4;
pub use quad::{integrate, integrate_inv_sqrt};
pub use root::{find_root, scan_bracket, Bracket};
pub use zeros::{bessel_zero, ZeroEnvelope};
