//! Spectral toolkit for rotationally symmetric model spaces.
//!
//! A model space is `R^n` carrying the warped-product metric
//! `dr^2 + J(r)^2 g_{S^{n-1}}`, where the warping function `J` solves the
//! Jacobi equation `J'' + R(r) J = 0`, `J(0) = 0`, `J'(0) = 1` for a
//! nonpositive radial curvature profile `R(r)`. The crate builds such
//! spaces from two-parameter curvature tails `-kappa + beta/r^2`, integrates
//! the Jacobi/Riccati system in log space so warped volumes never overflow,
//! and solves the associated radial spectral problems:
//!
//! - first (and higher) Dirichlet eigenvalues of geodesic balls by shooting
//!   on the radial equation with node-count bisection ([`eigen`]),
//! - eigenvalue counts below an energy via Pruefer phase integration of the
//!   Liouville-transformed 1D Schroedinger operator ([`eigen`]),
//! - the borderline Hardy eigenvalue problem on `[R, 2kR]` and a Hardy-type
//!   weight inequality on rotationally symmetric manifolds ([`hardy`]),
//! - composite experiments: spectral-gap bounds on large balls, radial
//!   transplantation of eigenfunctions, and the count-growth dichotomy
//!   across the critical inverse-square coefficient ([`experiments`]).
//!
//! Everything is `f64`, deterministic, and allocation-light; the crate is
//! `no_std`-compatible (with `alloc`) when built with the `libm` feature
//! instead of `std`.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("warpspec needs either the `std` or the `libm` feature");

extern crate alloc;

mod error;
mod fmath;
mod rk;

pub mod eigen;
pub mod experiments;
pub mod hardy;
pub mod ode;
pub mod profiles;
pub mod quad;

pub use error::{Error, Result};

/// Surface area of the unit sphere `S^{n-1}` in `R^n`, i.e.
/// `2 pi^{n/2} / Gamma(n/2)`.
pub fn unit_sphere_area(n: u32) -> f64 {
    assert!(n >= 1, "sphere dimension must be at least 1");
    // Gamma(n/2) by the recurrence from Gamma(1) = 1 or Gamma(1/2) = sqrt(pi).
    let mut gamma = if n % 2 == 0 {
        1.0
    } else {
        fmath::sqrt(core::f64::consts::PI)
    };
    let mut z = if n % 2 == 0 { 1.0 } else { 0.5 };
    while z < n as f64 / 2.0 - 0.25 {
        gamma *= z;
        z += 1.0;
    }
    2.0 * fmath::exp(0.5 * n as f64 * fmath::ln(core::f64::consts::PI)) / gamma
}

#[cfg(test)]
mod tests {
    use super::unit_sphere_area;

    #[test]
    fn sphere_areas_match_closed_forms() {
        let pi = core::f64::consts::PI;
        assert!((unit_sphere_area(2) - 2.0 * pi).abs() < 1e-12);
        assert!((unit_sphere_area(3) - 4.0 * pi).abs() < 1e-12);
        assert!((unit_sphere_area(4) - 2.0 * pi * pi).abs() < 1e-12);
        assert!((unit_sphere_area(5) - 8.0 * pi * pi / 3.0).abs() < 1e-12);
    }
}
