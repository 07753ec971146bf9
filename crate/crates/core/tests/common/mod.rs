#![allow(dead_code)]

use xizero_core::{Mp, Real};

/// Φ by direct summation over n ≤ 40.
pub fn brute_phi(t: &Real, mp: &mut Mp) -> Real {
    let pi = mp.pi();
    let e9 = mp.exp(&t.mul_i64(9));
    let e5 = mp.exp(&t.mul_i64(5));
    let e4 = mp.exp(&t.mul_i64(4));
    let mut s = mp.zero();
    for n in 1..=40i64 {
        let n2 = mp.int(n * n);
        let x = &(&pi * &n2) * &e4;
        if x.to_f64() > 4000.0 {
            break;
        }
        let a = &(&(&pi * &pi).mul_pow2(1) * &(&n2 * &n2)) * &e9;
        let b = &(&pi.mul_i64(3) * &n2) * &e5;
        s = &s + &(&(&a - &b) * &mp.exp(&-&x));
    }
    s
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize, mp: &mut Mp) -> Vec<(Real, Real)> {
    let pi = mp.pi();
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let guess = ((i as f64 - 0.25) / (n as f64 + 0.5) * std::f64::consts::PI).cos();
        let _ = &pi;
        let mut x = mp.f(guess);
        let mut dp = mp.zero();
        for _ in 0..100 {
            // Three-term recurrence for P_n(x) and P_n'(x).
            let mut p0 = mp.one();
            let mut p1 = x.clone();
            for k in 2..=n as i64 {
                let p2 = &(&(&x * &p1).mul_i64(2 * k - 1) - &p0.mul_i64(k - 1)) / &mp.int(k);
                p0 = p1;
                p1 = p2;
            }
            dp = &(&(&x * &p1) - &p0).mul_i64(n as i64) / &(&(&x * &x) - &mp.one());
            let dx = &p1 / &dp;
            x = &x - &dx;
            if dx.is_zero() || dx.abs() < Real::pow2(-(mp.bits() as i64) + 4, 64) {
                break;
            }
        }
        let w = (&(&(&mp.one() - &(&x * &x)) * &dp) * &dp).recip().mul_pow2(1);
        out.push((x, w));
    }
    out
}

/// ∫₀^{1.5} Φ(t)cos(xt) dt by composite 20-point Gauss–Legendre on 60 panels
/// at 512 bits. Beyond t = 1.5, Φ < e^{−1200}.
pub struct XiOracle {
    mp: Mp,
    nodes: Vec<(Real, Real)>,
}

impl XiOracle {
    pub fn new() -> XiOracle {
        let mut mp = Mp::new(512);
        let rule = gauss_legendre(20, &mut mp);
        let panels = 60;
        let width = mp.f(1.5).div_i64(panels);
        let mut nodes = Vec::new();
        for p in 0..panels {
            let a = width.mul_i64(p);
            let half = width.mul_pow2(-1);
            let mid = &a + &half;
            for (x, w) in &rule {
                let t = &mid + &(&half * x);
                let f = brute_phi(&t, &mut mp);
                nodes.push((t, &(&f * w) * &half));
            }
        }
        XiOracle { mp, nodes }
    }

    pub fn eval(&mut self, x: &Real) -> Real {
        let x = x.with_prec(512);
        let mut s = self.mp.zero();
        for (t, w) in &self.nodes {
            let c = self.mp.cos(&(&x * t));
            s = &s + &(&c * w);
        }
        s
    }

    /// Bisection on [a, b] until the bracket is narrower than `tol`.
    pub fn bisect(&mut self, a: f64, b: f64, tol: f64) -> f64 {
        let mut lo = self.mp.f(a);
        let mut hi = self.mp.f(b);
        let mut flo = self.eval(&lo).signum();
        assert_ne!(flo, self.eval(&hi).signum(), "no sign change on [{a}, {b}]");
        while (&hi - &lo).to_f64() > tol {
            let mid = (&lo + &hi).mul_pow2(-1);
            let fm = self.eval(&mid).signum();
            if fm == flo {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        (&lo + &hi).mul_pow2(-1).to_f64()
    }
}
