//! Time-harmonic and time-domain acoustics of Korteweg and nematic-Korteweg fluids.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, configuration and the
//! command-line front end live in the companion `korteweg` crate.
//!
//! Governing equation (time-harmonic, constant director `n`):
//!
//! ```text
//! -ω²S - c0²ΔS + ρ0²u1 Δ²S + ρ0²u2 Δ(n·(HS)n) = 0
//! ```
//!
//! Modules, bottom-up:
//! - [`medium`]: material constants, the director, characteristic times.
//! - [`dispersion`]: quartic dispersion relation and derived quantities.
//! - [`reflection`]: plane waves at a flat interface, Snell refraction, TIR.
//! - [`specfun`]: Bessel and Hankel functions of integer order.
//! - [`scattering`]: Mie series for a sound-soft disk and the boundary layer.
//! - [`solver`]: mixed finite-difference solver on Cartesian and polar grids.
//! - [`timedomain`]: leapfrog integration of the linearized wave equation.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod dispersion;
pub mod error;
pub mod medium;
pub mod reflection;
pub mod scattering;
pub mod solver;
pub mod specfun;
pub mod timedomain;
pub mod vec2;

pub use error::{Error, Result};
pub use medium::{Director, MaterialParams, NondimGroups};
pub use num_complex::Complex64;
pub use vec2::Vec2;
