//! Classical closed-form integrals and sums used to exercise the quadrature
//! and series drivers at full precision.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::real::{Mp, Real};

use super::{integrate, sum_with_tail_estimate, PrecisionContext, QuadratureResult, Tail, Upper};

/// Bernoulli numbers B_0..=B_n as exact rationals (B_1 = −1/2).
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, k)
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// ∫_T^∞ sin²x/x² dx = 1/(2T) − ½∫_T^∞ cos(2x)/x² dx, the oscillatory part
/// expanded by repeated integration by parts. Returns (estimate, bound).
pub fn sinc_squared_tail(t: &Real, mp: &mut Mp) -> (Real, Real) {
    let bits = mp.bits();
    let two_t = t.mul_pow2(1);
    let c = mp.cos(&two_t);
    let s = mp.sin(&two_t);
    // J = ∫_T^∞ e^{2ix} x^{-2} dx = (i/2) e^{2iT} Σ_m (m+1)! (2i)^{-m} T^{-2-m} + R,
    // |R| ≤ M!/(2^M T^{M+1}).
    let inv_t = t.recip();
    let half_inv_t = inv_t.mul_pow2(-1);
    let mut re_sum = Real::zero(bits);
    let mut im_sum = Real::zero(bits);
    // coef_m = (m+1)!/(2^m T^{m+2}); after M terms the remainder is at most
    // b_M = M!/(2^M T^{M+1}).
    let mut coef = &inv_t * &inv_t;
    let mut bound = inv_t.clone();
    let floor = Real::pow2(-(2 * bits as i64), 64);
    let mut m: u64 = 0;
    loop {
        // Phase (−i)^m cycles 1, −i, −1, i.
        match m % 4 {
            0 => re_sum = &re_sum + &coef,
            1 => im_sum = &im_sum - &coef,
            2 => re_sum = &re_sum - &coef,
            _ => im_sum = &im_sum + &coef,
        }
        m += 1;
        bound = &bound.mul_i64(m as i64) * &half_inv_t;
        let ratio = &Real::from_u64(m + 1, bits) * &half_inv_t;
        if bound < floor || ratio >= Real::one(bits) {
            break;
        }
        coef = &coef * &ratio;
    }
    // (i/2) e^{2iT} (re + i im) → real part = -(1/2)(sin 2T · re + cos 2T · im).
    let re_j = (&(&s * &re_sum) + &(&c * &im_sum)).mul_pow2(-1).mul_i64(-1);
    let estimate = &inv_t.mul_pow2(-1) - &re_j.mul_pow2(-1);
    (estimate, bound.mul_pow2(-1))
}

/// ∫_{−∞}^{∞} sin²x/x² dx computed as 2∫_0^∞; equals π.
pub fn sinc_squared_integral(ctx: &PrecisionContext) -> Result<QuadratureResult> {
    let f = |x: &Real, mp: &mut Mp| {
        if x.is_zero() {
            return mp.one();
        }
        let s = mp.sin(x);
        &(&s * &s) / &(x * x)
    };
    let mut tail = sinc_squared_tail;
    let zero = Real::zero(ctx.bits);
    let half = integrate(f, &zero, &Upper::Infinity, Some(Tail::Estimate(&mut tail)), ctx)?;
    Ok(QuadratureResult {
        value: half.value.mul_pow2(1),
        error_bound: half.error_bound.mul_pow2(1),
        evaluations: half.evaluations,
    })
}

/// (4/π²) Σ_{k∈ℤ} (2k+1)^{-2} = (8/π²) Σ_{k≥0} (2k+1)^{-2}; equals 1. The tail
/// beyond the partial sum is taken from the Euler–Maclaurin expansion with its
/// standard remainder bound.
pub fn odd_square_sum(ctx: &PrecisionContext) -> Result<QuadratureResult> {
    const P: usize = 24;
    let bern = bernoulli_numbers(2 * P);
    let term = |n: u64, mp: &mut Mp| {
        let d = mp.int(2 * n as i64 - 1);
        (&d * &d).recip()
    };
    let tail = |n: u64, mp: &mut Mp| {
        // Σ_{k ≥ a} g(k), g(x) = (2x+1)^{-2}, a = n (0-based k after n terms).
        let a = n as i64;
        let q = mp.int(2 * a + 1);
        let inv_q = q.recip();
        let mut est = &inv_q.mul_pow2(-1) + &(&inv_q * &inv_q).mul_pow2(-1);
        let mut pow = &inv_q * &(&inv_q * &inv_q); // q^{-3}
        let q2 = &inv_q * &inv_q;
        let mut bound = mp.zero();
        for j in 1..=P {
            let b = mp.rat(&bern[2 * j]);
            let t = (&b * &pow).mul_pow2(2 * j as i64 - 1);
            est = &est + &t;
            if j == P {
                // The remainder after P corrections is at most the last one.
                bound = t.abs();
            }
            pow = &pow * &q2;
        }
        (est, bound)
    };
    let r = sum_with_tail_estimate(term, tail, ctx)?;
    let mut mp = ctx.mp();
    let pi = mp.pi();
    let scale = (&pi * &pi).recip().mul_pow2(3);
    let value = &r.value * &scale;
    let error_bound = &(&r.error_bound * &scale) + &(&value.abs() * &mp.eps()).mul_i64(8);
    Ok(QuadratureResult {
        value,
        error_bound,
        evaluations: r.evaluations,
    })
}
