//! Radix-2 multiprecision reals and the per-thread constant cache.
//!
//! `Real` wraps an astro-float `BigFloat` and remembers its own precision,
//! because astro-float reports zero as having none. Binary operations round
//! to the larger precision of their operands, so a low-precision literal
//! never drags a computation down.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

const RM: RoundingMode = RoundingMode::ToEven;
const WORD: usize = 64;

fn round_prec(bits: usize) -> usize {
    bits.max(WORD).div_ceil(WORD) * WORD
}

#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    prec: usize,
}

impl Real {
    fn wrap(v: BigFloat, prec: usize) -> Real {
        Real { v, prec }
    }

    pub fn from_f64(x: f64, bits: usize) -> Real {
        let p = round_prec(bits);
        Real::wrap(BigFloat::from_f64(x, p), p)
    }

    pub fn from_i64(n: i64, bits: usize) -> Real {
        let p = round_prec(bits);
        Real::wrap(BigFloat::from_i64(n, p), p)
    }

    pub fn from_u64(n: u64, bits: usize) -> Real {
        let p = round_prec(bits);
        Real::wrap(BigFloat::from_u64(n, p), p)
    }

    pub fn zero(bits: usize) -> Real {
        Real::from_u64(0, bits)
    }

    pub fn one(bits: usize) -> Real {
        Real::from_u64(1, bits)
    }

    /// 2^k exactly.
    pub fn pow2(k: i64, bits: usize) -> Real {
        Real::one(bits).mul_pow2(k)
    }

    /// Integer value, rounded to `bits` if it does not fit.
    pub fn from_bigint(n: &BigInt, bits: usize) -> Real {
        let p = round_prec(bits);
        if n.is_zero() {
            return Real::zero(p);
        }
        let words: Vec<u64> = n.magnitude().to_u64_digits();
        let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
        let e = (words.len() * WORD) as i32;
        let mut v = BigFloat::from_words(&words, sign, e);
        v.set_precision(p, RM).expect("precision");
        Real::wrap(v, p)
    }

    /// Nearest value at `bits` to the rational `r`.
    pub fn from_rational(r: &BigRational, bits: usize) -> Real {
        let p = round_prec(bits);
        let guard = p + WORD;
        let num = Real::from_bigint(r.numer(), guard);
        let den = Real::from_bigint(r.denom(), guard);
        let mut q = num.v.div(&den.v, p, RM);
        q.set_precision(p, RM).expect("precision");
        Real::wrap(q, p)
    }

    /// The exact dyadic rational equal to this value.
    ///
    /// Panics on NaN or infinity.
    pub fn to_rational(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let (m, _n, s, e, _) = self.v.as_raw_parts().expect("finite value");
        let mut digits: Vec<u32> = Vec::with_capacity(m.len() * 2);
        for w in m {
            digits.push(*w as u32);
            digits.push((*w >> 32) as u32);
        }
        let mag = BigUint::new(digits);
        let sign = if s == Sign::Neg { BigSign::Minus } else { BigSign::Plus };
        let mant = BigInt::from_biguint(sign, mag);
        let shift = e as i64 - (m.len() * WORD) as i64;
        let two = BigInt::from(2u8);
        if shift >= 0 {
            BigRational::from_integer(mant * num_traits::pow(two, shift as usize))
        } else {
            BigRational::new(mant, num_traits::pow(two, (-shift) as usize))
        }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Same value rounded to `bits`.
    pub fn with_prec(&self, bits: usize) -> Real {
        let p = round_prec(bits);
        let mut v = self.v.clone();
        v.set_precision(p, RM).expect("precision");
        Real::wrap(v, p)
    }

    /// Nearest f64; saturates to ±inf or 0 outside the f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.is_zero() {
            return 0.0;
        }
        let (m, _n, s, e, _) = self.v.as_raw_parts().expect("finite value");
        let top = m[m.len() - 1];
        let next = if m.len() > 1 { m[m.len() - 2] } else { 0 };
        // 64 leading bits plus a sticky bit give a correctly rounded f64 in all
        // but pathological halfway cases.
        let top = top | u64::from(next != 0);
        let x = libm::ldexp(top as f64, e - WORD as i32);
        if s == Sign::Neg {
            -x
        } else {
            x
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.v.is_nan() || self.v.is_inf())
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.v.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.v.is_positive()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.v.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Real {
        Real::wrap(self.v.abs(), self.prec)
    }

    /// Binary exponent e with 2^(e-1) ≤ |x| < 2^e, or None for zero.
    pub fn exponent(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            self.v.exponent()
        }
    }

    /// x·2^k exactly.
    pub fn mul_pow2(&self, k: i64) -> Real {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = self.v.clone();
        let e = v.exponent().expect("finite value") as i64 + k;
        v.set_exponent(e as i32);
        Real::wrap(v, self.prec)
    }

    pub fn sqrt(&self) -> Real {
        Real::wrap(self.v.sqrt(self.prec, RM), self.prec)
    }

    pub fn powi(&self, n: usize) -> Real {
        Real::wrap(self.v.powi(n, self.prec, RM), self.prec)
    }

    pub fn recip(&self) -> Real {
        Real::wrap(self.v.reciprocal(self.prec, RM), self.prec)
    }

    pub fn floor(&self) -> Real {
        Real::wrap(self.v.floor(), self.prec)
    }

    pub fn ceil(&self) -> Real {
        Real::wrap(self.v.ceil(), self.prec)
    }

    pub fn max(&self, other: &Real) -> Real {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &Real) -> Real {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Relative rounding unit 2^(1-prec).
    pub fn ulp(&self) -> Real {
        Real::pow2(1 - self.prec as i64, 64)
    }

    pub fn mul_i64(&self, k: i64) -> Real {
        self * &Real::from_i64(k, self.prec)
    }

    pub fn div_i64(&self, k: i64) -> Real {
        self / &Real::from_i64(k, self.prec)
    }

    pub fn add_f64(&self, x: f64) -> Real {
        self + &Real::from_f64(x, self.prec)
    }

    pub fn mul_f64(&self, x: f64) -> Real {
        self * &Real::from_f64(x, self.prec)
    }
}

fn bin_prec(a: &Real, b: &Real) -> usize {
    a.prec.max(b.prec)
}

macro_rules! real_binop {
    ($tr:ident, $m:ident, $op:ident) => {
        impl<'a> $tr<&'a Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: &'a Real) -> Real {
                let p = bin_prec(self, rhs);
                Real::wrap(self.v.$op(&rhs.v, p, RM), p)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &'a Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        let p = self.prec;
        Real::wrap(self.v.neg(), p)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.clone().neg(), self.prec)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}[{}b]", self.to_f64(), self.prec)
    }
}

/// Shows the nearest f64; use [`Mp::to_sci`] for full precision.
impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Working precision plus the constant cache needed by transcendental
/// functions. Each thread owns its own `Mp`; nothing here is global.
pub struct Mp {
    bits: usize,
    cc: Consts,
}

impl Clone for Mp {
    fn clone(&self) -> Mp {
        Mp::new(self.bits)
    }
}

impl fmt::Debug for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mp({} bits)", self.bits)
    }
}

impl Mp {
    pub fn new(bits: usize) -> Mp {
        Mp {
            bits: round_prec(bits),
            cc: Consts::new().expect("constant cache"),
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn f(&self, x: f64) -> Real {
        Real::from_f64(x, self.bits)
    }

    pub fn int(&self, n: i64) -> Real {
        Real::from_i64(n, self.bits)
    }

    pub fn zero(&self) -> Real {
        Real::zero(self.bits)
    }

    pub fn one(&self) -> Real {
        Real::one(self.bits)
    }

    /// num/den rounded once.
    pub fn ratio(&self, num: i64, den: i64) -> Real {
        &self.int(num) / &self.int(den)
    }

    pub fn rat(&self, r: &BigRational) -> Real {
        Real::from_rational(r, self.bits)
    }

    /// 2^-bits: the unit used for rounding-error budgets.
    pub fn eps(&self) -> Real {
        Real::pow2(-(self.bits as i64), 64)
    }

    fn p(&self, x: &Real) -> usize {
        self.bits.max(x.prec)
    }

    pub fn pi(&mut self) -> Real {
        Real::wrap(self.cc.pi(self.bits, RM), self.bits)
    }

    pub fn ln2(&mut self) -> Real {
        Real::wrap(self.cc.ln_2(self.bits, RM), self.bits)
    }

    pub fn exp(&mut self, x: &Real) -> Real {
        let p = self.p(x);
        Real::wrap(x.v.exp(p, RM, &mut self.cc), p)
    }

    pub fn ln(&mut self, x: &Real) -> Real {
        let p = self.p(x);
        Real::wrap(x.v.ln(p, RM, &mut self.cc), p)
    }

    pub fn sin(&mut self, x: &Real) -> Real {
        let p = self.p(x);
        Real::wrap(x.v.sin(p, RM, &mut self.cc), p)
    }

    pub fn cos(&mut self, x: &Real) -> Real {
        let p = self.p(x);
        Real::wrap(x.v.cos(p, RM, &mut self.cc), p)
    }

    pub fn sinh(&mut self, x: &Real) -> Real {
        let p = self.p(x);
        Real::wrap(x.v.sinh(p, RM, &mut self.cc), p)
    }

    pub fn cosh(&mut self, x: &Real) -> Real {
        let p = self.p(x);
        Real::wrap(x.v.cosh(p, RM, &mut self.cc), p)
    }

    pub fn atan(&mut self, x: &Real) -> Real {
        let p = self.p(x);
        Real::wrap(x.v.atan(p, RM, &mut self.cc), p)
    }

    /// x^y for x > 0.
    pub fn pow(&mut self, x: &Real, y: &Real) -> Real {
        let p = self.p(x).max(y.prec);
        Real::wrap(x.v.pow(&y.v, p, RM, &mut self.cc), p)
    }

    /// Two-argument arctangent with the usual branch conventions.
    pub fn atan2(&mut self, y: &Real, x: &Real) -> Real {
        if x.is_zero() && y.is_zero() {
            return self.zero();
        }
        let pi = self.pi();
        if x.is_zero() {
            let h = pi.mul_pow2(-1);
            return if y.is_negative() { -h } else { h };
        }
        let base = self.atan(&(y / x));
        if x.is_positive() {
            base
        } else if y.is_negative() {
            &base - &pi
        } else {
            &base + &pi
        }
    }

    /// ln Γ(n+1) = ln n! for moderate n, exact product then log.
    pub fn ln_factorial(&mut self, n: u64) -> Real {
        let mut acc = self.one();
        for k in 2..=n {
            acc = acc.mul_i64(k as i64);
        }
        self.ln(&acc)
    }

    pub fn parse(&mut self, s: &str) -> Option<Real> {
        let v = BigFloat::parse(s, Radix::Dec, self.bits, RM, &mut self.cc);
        if v.is_nan() {
            None
        } else {
            Some(Real::wrap(v, self.bits))
        }
    }

    /// Scientific decimal string with `digits` significant digits.
    pub fn to_sci(&mut self, x: &Real, digits: usize) -> String {
        sci_string(x, digits, &mut self.cc)
    }
}

fn sci_string(x: &Real, digits: usize, cc: &mut Consts) -> String {
    use alloc::format;
    if !x.is_finite() {
        return format!("{}", x.to_f64());
    }
    if x.is_zero() {
        return "0".into();
    }
    let digits = digits.max(1);
    let s = match x.v.format(Radix::Dec, RM, cc) {
        Ok(s) => s,
        Err(_) => return format!("{:e}", x.to_f64()),
    };
    // astro-float prints d.ddddde±x; re-round the mantissa to `digits`.
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.as_str()),
    };
    let (mant, exp) = match body.find('e') {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let mut ds: Vec<u8> = mant.bytes().filter(|c| c.is_ascii_digit()).map(|c| c - b'0').collect();
    let point = mant.find('.').unwrap_or(mant.len()) as i64;
    // Normalize leading zeros.
    let mut exp10 = exp + point - 1;
    while ds.len() > 1 && ds[0] == 0 {
        ds.remove(0);
        exp10 -= 1;
    }
    if ds.len() > digits {
        let round_up = ds[digits] >= 5;
        ds.truncate(digits);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.truncate(digits);
                    exp10 += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
    }
    while ds.len() > 1 && *ds.last().unwrap() == 0 {
        ds.pop();
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push((b'0' + ds[0]) as char);
    if ds.len() > 1 {
        out.push('.');
        for d in &ds[1..] {
            out.push((b'0' + d) as char);
        }
    }
    if exp10 != 0 {
        out.push_str(&format!("e{exp10}"));
    }
    out
}

/// Parses `n`, `n/d` or a plain decimal such as `-0.125` exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac.is_empty() {
        return None;
    }
    let digits: String = [int_part, frac].concat();
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = digits.parse().ok()?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(n, d);
    Some(if neg { -r } else { r })
}

/// Exact rational with numerator and denominator small enough for casual use.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact conversion of an f64 to a dyadic rational.
pub fn rational_from_f64(x: f64) -> BigRational {
    Real::from_f64(x, 64).to_rational()
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    Real::from_rational(r, 64).to_f64()
}
