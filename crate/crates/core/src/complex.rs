use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::real::{Mp, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn real(re: Real) -> Complex {
        let im = Real::zero(re.prec());
        Complex { re, im }
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Complex {
        Complex::new(Real::from_f64(re, bits), Real::from_f64(im, bits))
    }

    pub fn zero(bits: usize) -> Complex {
        Complex::new(Real::zero(bits), Real::zero(bits))
    }

    pub fn one(bits: usize) -> Complex {
        Complex::new(Real::one(bits), Real::zero(bits))
    }

    pub fn i(bits: usize) -> Complex {
        Complex::new(Real::zero(bits), Real::one(bits))
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &Real) -> Complex {
        Complex::new(&self.re * k, &self.im * k)
    }

    /// Multiply by i.
    pub fn mul_i(&self) -> Complex {
        Complex::new(-&self.im, self.re.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn powi(&self, n: usize) -> Complex {
        let mut acc = Complex::one(self.re.prec());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, o: &'a Complex) -> Complex {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, o: &'a Complex) -> Complex {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, o: &'a Complex) -> Complex {
        Complex::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }
}

impl<'a> Div<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn div(self, o: &'a Complex) -> Complex {
        let d = o.norm_sqr();
        let num = self * &o.conj();
        Complex::new(&num.re / &d, &num.im / &d)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, o: Complex) -> Complex {
                (&self).$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Mp {
    pub fn cexp(&mut self, z: &Complex) -> Complex {
        let r = self.exp(&z.re);
        let c = self.cos(&z.im);
        let s = self.sin(&z.im);
        Complex::new(&r * &c, &r * &s)
    }

    /// e^{i x} for real x.
    pub fn cis(&mut self, x: &Real) -> Complex {
        let c = self.cos(x);
        let s = self.sin(x);
        Complex::new(c, s)
    }

    pub fn ccos(&mut self, z: &Complex) -> Complex {
        let c = self.cos(&z.re);
        let s = self.sin(&z.re);
        let ch = self.cosh(&z.im);
        let sh = self.sinh(&z.im);
        Complex::new(&c * &ch, -(&s * &sh))
    }

    pub fn csin(&mut self, z: &Complex) -> Complex {
        let c = self.cos(&z.re);
        let s = self.sin(&z.re);
        let ch = self.cosh(&z.im);
        let sh = self.sinh(&z.im);
        Complex::new(&s * &ch, &c * &sh)
    }

    pub fn arg(&mut self, z: &Complex) -> Real {
        self.atan2(&z.im, &z.re)
    }

    pub fn cln(&mut self, z: &Complex) -> Complex {
        let m = self.ln(&z.abs());
        let a = self.arg(z);
        Complex::new(m, a)
    }

    pub fn csqrt(&mut self, z: &Complex) -> Complex {
        let r = z.abs();
        if r.is_zero() {
            return Complex::zero(self.bits());
        }
        let re = (&(&r + &z.re).mul_pow2(-1)).abs().sqrt();
        let im_mag = (&(&r - &z.re).mul_pow2(-1)).abs().sqrt();
        let im = if z.im.is_negative() { -im_mag } else { im_mag };
        Complex::new(re, im)
    }
}
