//! Dense univariate polynomials with exact rational coefficients.
//!
//! Every binary float is a dyadic rational, so polynomials built from `Real`
//! data convert without loss and all reality/interlacing decisions are exact.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::complex::Complex;
use crate::real::{rational_from_f64, Real};

pub type Rational = BigRational;

/// Dense polynomial, coefficients in ascending degree, trailing zeros trimmed.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RealPolynomial {
    coeffs: Vec<Rational>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> RealPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RealPolynomial { coeffs }
    }

    pub fn zero() -> RealPolynomial {
        RealPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> RealPolynomial {
        RealPolynomial::new(vec![c])
    }

    /// The monomial z.
    pub fn x() -> RealPolynomial {
        RealPolynomial::from_i64s(&[0, 1])
    }

    pub fn from_i64s(c: &[i64]) -> RealPolynomial {
        RealPolynomial::new(c.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
    }

    pub fn from_f64s(c: &[f64]) -> RealPolynomial {
        RealPolynomial::new(c.iter().map(|&v| rational_from_f64(v)).collect())
    }

    pub fn from_reals(c: &[Real]) -> RealPolynomial {
        RealPolynomial::new(c.iter().map(Real::to_rational).collect())
    }

    /// ∏ (z − r).
    pub fn from_roots(roots: &[Rational]) -> RealPolynomial {
        let mut p = RealPolynomial::constant(Rational::one());
        for r in roots {
            p = &p * &RealPolynomial::new(vec![-r.clone(), Rational::one()]);
        }
        p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of p(x): -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Sign of the leading coefficient times (±1)^deg: sign as x → ±∞.
    pub fn sign_at_infinity(&self, positive: bool) -> i32 {
        let Some(d) = self.degree() else { return 0 };
        let s = if self.leading().is_positive() { 1 } else { -1 };
        if positive || d % 2 == 0 {
            s
        } else {
            -s
        }
    }

    pub fn eval_real(&self, x: &Real) -> Real {
        let bits = x.prec();
        let mut acc = Real::zero(bits);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Real::from_rational(c, bits);
        }
        acc
    }

    pub fn eval_complex(&self, z: &Complex) -> Complex {
        let bits = z.re.prec();
        let mut acc = Complex::zero(bits);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &Complex::real(Real::from_rational(c, bits));
        }
        acc
    }

    /// Coefficients rounded to `bits`.
    pub fn to_reals(&self, bits: usize) -> Vec<Real> {
        self.coeffs.iter().map(|c| Real::from_rational(c, bits)).collect()
    }

    pub fn derivative(&self) -> RealPolynomial {
        RealPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> RealPolynomial {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    pub fn scale(&self, k: &Rational) -> RealPolynomial {
        RealPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> RealPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&(Rational::one() / lc))
    }

    /// Coefficient-reversed polynomial z^n p(1/z) for n = deg p.
    pub fn reversed(&self) -> RealPolynomial {
        let mut c = self.coeffs.clone();
        c.reverse();
        RealPolynomial::new(c)
    }

    /// p(z + c).
    pub fn shift(&self, c: &Rational) -> RealPolynomial {
        let lin = RealPolynomial::new(vec![c.clone(), Rational::one()]);
        let mut acc = RealPolynomial::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &RealPolynomial::constant(a.clone());
        }
        acc
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &RealPolynomial) -> (RealPolynomial, RealPolynomial) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (RealPolynomial::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let f = &r[i + dd] / &lc;
            if !f.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = &r[i + j] - &f * dc;
                }
            }
            q[i] = f;
        }
        r.truncate(dd);
        (RealPolynomial::new(q), RealPolynomial::new(r))
    }

    pub fn rem(&self, d: &RealPolynomial) -> RealPolynomial {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &RealPolynomial) -> RealPolynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            // Keep coefficient size in check.
            b = r.monic();
        }
        a.monic()
    }

    /// Square-free factorization p = c·∏ f_i^i (Yun). Returns (i, f_i) for nonconstant f_i.
    pub fn square_free_factors(&self) -> Vec<(usize, RealPolynomial)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let dp = self.derivative();
        let a0 = self.gcd(&dp);
        let mut b = self.div_rem(&a0).0;
        let mut c = dp.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((i, a.clone()));
            }
            b = b.div_rem(&a).0;
            if b.is_constant() {
                break;
            }
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// The square-free part p / gcd(p, p′), made monic.
    pub fn square_free_part(&self) -> RealPolynomial {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Cauchy bound: every root has modulus < 1 + max |a_k / a_n|.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let mut m = Rational::zero();
        if let Some(d) = self.degree() {
            for c in &self.coeffs[..d] {
                let q = c.abs() / &lc;
                if q > m {
                    m = q;
                }
            }
        }
        m + Rational::one()
    }
}

impl<'a> Add<&'a RealPolynomial> for &'a RealPolynomial {
    type Output = RealPolynomial;
    fn add(self, o: &'a RealPolynomial) -> RealPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        RealPolynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a RealPolynomial> for &'a RealPolynomial {
    type Output = RealPolynomial;
    fn sub(self, o: &'a RealPolynomial) -> RealPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        RealPolynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a RealPolynomial> for &'a RealPolynomial {
    type Output = RealPolynomial;
    fn mul(self, o: &'a RealPolynomial) -> RealPolynomial {
        if self.is_zero() || o.is_zero() {
            return RealPolynomial::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RealPolynomial::new(c)
    }
}

impl Neg for &RealPolynomial {
    type Output = RealPolynomial;
    fn neg(self) -> RealPolynomial {
        RealPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::rational;

    #[test]
    fn division_and_gcd() {
        let p = RealPolynomial::from_i64s(&[-1, 0, 1]);
        let q = RealPolynomial::from_i64s(&[1, 1]);
        let (d, r) = p.div_rem(&q);
        assert_eq!(d, RealPolynomial::from_i64s(&[-1, 1]));
        assert!(r.is_zero());
        let g = p.gcd(&RealPolynomial::from_i64s(&[2, 2]));
        assert_eq!(g, q);
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (z-1)^3 (z+2)
        let p = RealPolynomial::from_roots(&[
            rational(1, 1),
            rational(1, 1),
            rational(1, 1),
            rational(-2, 1),
        ]);
        let f = p.square_free_factors();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0, 1);
        assert_eq!(f[0].1, RealPolynomial::from_i64s(&[2, 1]));
        assert_eq!(f[1].0, 3);
        assert_eq!(f[1].1, RealPolynomial::from_i64s(&[-1, 1]));
    }

    #[test]
    fn shift_matches_composition() {
        let p = RealPolynomial::from_i64s(&[1, 2, 3]);
        let s = p.shift(&rational(1, 2));
        for x in [-3i64, 0, 5] {
            let xr = rational(x, 1);
            assert_eq!(s.eval(&xr), p.eval(&(xr.clone() + rational(1, 2))));
        }
    }
}
