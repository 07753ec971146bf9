//! Precision policy, tail-bounded series, adaptive quadrature and real-zero
//! isolation. Every result carries an error bound; sign decisions inside the
//! bound are retried at doubled precision instead of being guessed.

mod quad;
pub mod sanity;
mod series;
mod zeros;

pub use quad::{integrate, integrate_with, Tail, TanhSinh, Upper, WeightedNodes};
pub use series::{sum_with_tail, sum_with_tail_estimate};
pub use zeros::{isolate_zeros, refine_bracket};

use crate::error::{Error, Result};
use crate::real::{Mp, Real};

/// Working precision and tolerance policy threaded through every numeric routine.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionContext {
    pub bits: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_escalations: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            bits: 128,
            rel_tol: 1e-30,
            abs_tol: 1e-24,
            max_escalations: 3,
        }
    }
}

impl PrecisionContext {
    pub fn new(bits: usize, rel_tol: f64, abs_tol: f64, max_escalations: u32) -> Result<Self> {
        let ctx = PrecisionContext {
            bits,
            rel_tol,
            abs_tol,
            max_escalations,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bits < 53 {
            return Err(Error::InvalidArgument(alloc::format!(
                "precision {} bits is below 53",
                self.bits
            )));
        }
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !ok(self.rel_tol) || !ok(self.abs_tol) {
            return Err(Error::InvalidArgument("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn with_bits(&self, bits: usize) -> Self {
        PrecisionContext { bits, ..self.clone() }
    }

    /// Context with bits doubled `k` times, or None past `max_escalations`.
    pub fn escalated(&self, k: u32) -> Option<Self> {
        if k > self.max_escalations {
            None
        } else {
            Some(self.with_bits(self.bits << k))
        }
    }

    /// Largest precision this context may escalate to.
    pub fn max_bits(&self) -> usize {
        self.bits << self.max_escalations
    }

    pub fn mp(&self) -> Mp {
        Mp::new(self.bits)
    }

    pub fn rel(&self, mp: &Mp) -> Real {
        mp.f(self.rel_tol)
    }

    pub fn abs(&self, mp: &Mp) -> Real {
        mp.f(self.abs_tol)
    }

    /// rel_tol·|magnitude| + abs_tol.
    pub fn tolerance(&self, magnitude: &Real, mp: &Mp) -> Real {
        &(&self.rel(mp) * &magnitude.abs()) + &self.abs(mp)
    }
}

/// A value with an absolute error bound.
#[derive(Clone, Debug)]
pub struct Estimate {
    pub value: Real,
    pub error: Real,
}

impl Estimate {
    pub fn new(value: Real, error: Real) -> Estimate {
        Estimate { value, error }
    }

    /// Value with a rounding-level error of a few units in the last place.
    pub fn rounded(value: Real) -> Estimate {
        let error = (&value.abs() * &value.ulp()).mul_i64(4);
        Estimate { value, error }
    }

    pub fn exact(value: Real) -> Estimate {
        let error = Real::zero(value.prec());
        Estimate { value, error }
    }

    /// Relative error bound |error/value|, infinite for a zero value.
    pub fn relative_error(&self) -> f64 {
        if self.value.is_zero() {
            return if self.error.is_zero() { 0.0 } else { f64::INFINITY };
        }
        (&self.error / &self.value.abs()).to_f64()
    }

    fn round_err(v: &Real) -> Real {
        (&v.abs() * &v.ulp()).mul_i64(2)
    }

    pub fn add(&self, o: &Estimate) -> Estimate {
        let v = &self.value + &o.value;
        let e = &(&self.error + &o.error) + &Self::round_err(&v);
        Estimate::new(v, e)
    }

    pub fn sub(&self, o: &Estimate) -> Estimate {
        let v = &self.value - &o.value;
        let e = &(&self.error + &o.error) + &Self::round_err(&v);
        Estimate::new(v, e)
    }

    pub fn mul(&self, o: &Estimate) -> Estimate {
        let v = &self.value * &o.value;
        let e = &(&(&self.value.abs() * &o.error) + &(&o.value.abs() * &self.error)) + &(&self.error * &o.error);
        Estimate::new(v.clone(), &e + &Self::round_err(&v))
    }

    /// Quotient; the divisor's error must be below half its magnitude.
    pub fn div(&self, o: &Estimate) -> Estimate {
        let v = &self.value / &o.value;
        let lo = &o.value.abs() - &o.error;
        let e = if lo.is_positive() {
            &(&self.error + &(&v.abs() * &o.error)) / &lo
        } else {
            Real::from_f64(f64::INFINITY, v.prec())
        };
        Estimate::new(v.clone(), &e + &Self::round_err(&v))
    }

    pub fn scale(&self, k: &Real) -> Estimate {
        let v = &self.value * k;
        let e = &(&self.error * &k.abs()) + &Self::round_err(&v);
        Estimate::new(v, e)
    }

    pub fn neg(&self) -> Estimate {
        Estimate::new(-&self.value, self.error.clone())
    }

    /// Sign if |value| exceeds the error bound, otherwise None.
    pub fn sign(&self) -> Option<i32> {
        if self.value.abs() > self.error {
            Some(self.value.signum())
        } else {
            None
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub value: Real,
    pub error_bound: Real,
    pub evaluations: u64,
}

#[derive(Clone, Debug)]
pub struct ZeroRecord {
    pub location: Real,
    /// Half-width of the interval across which the sign change was certified.
    pub bracket_width: Real,
    pub derivative_magnitude: Real,
    pub simple: bool,
}
