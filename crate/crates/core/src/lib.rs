#![no_std]
//! Multiprecision kernels for the Riemann Ξ function and classical zero
//! location criteria for entire functions.

extern crate alloc;

pub mod complex;
pub mod error;
pub mod ftzeros;
pub mod lp;
pub mod moments;
pub mod numerics;
pub mod phi;
pub mod poly;
pub mod real;
pub mod xi;

pub use complex::Complex;
pub use error::{Error, Result};
pub use numerics::{Estimate, PrecisionContext, QuadratureResult, ZeroRecord};
pub use poly::{Rational, RealPolynomial};
pub use real::{Mp, Real};
