//! Independent high-precision reference for the real zeros of Ŝ.
//!
//! Shares nothing with the library's evaluators: Φ is summed directly, the
//! cosine transform uses composite Gauss–Legendre, and zeros are bracketed by
//! a plain grid scan and bisection.

use xizero_core::{Mp, Real};

/// Φ(t) by direct summation; terms with πn²e^{4t} > 4000 are dropped.
pub fn phi_direct(t: &Real, mp: &mut Mp) -> Real {
    let pi = mp.pi();
    let e9 = mp.exp(&t.mul_i64(9));
    let e5 = mp.exp(&t.mul_i64(5));
    let e4 = mp.exp(&t.mul_i64(4));
    let mut s = mp.zero();
    for n in 1..=60i64 {
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

/// Gauss–Legendre nodes and weights on [−1, 1], Newton on the three-term
/// recurrence.
pub fn gauss_legendre(n: usize, mp: &mut Mp) -> Vec<(Real, Real)> {
    let tiny = Real::pow2(-(mp.bits() as i64) + 8, 64);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let guess = ((i as f64 - 0.25) / (n as f64 + 0.5) * std::f64::consts::PI).cos();
        let mut x = mp.f(guess);
        let mut dp = mp.zero();
        for _ in 0..100 {
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
            if dx.abs() < tiny {
                break;
            }
        }
        let w = (&(&(&mp.one() - &(&x * &x)) * &dp) * &dp).recip().mul_pow2(1);
        out.push((x, w));
    }
    out
}

/// ∫₀^{3/2} Φ(t)cos(xt) dt on fixed nodes. Past t = 3/2, Φ < e^{−1200}.
pub struct XiZeroOracle {
    mp: Mp,
    nodes: Vec<(Real, Real)>,
}

impl XiZeroOracle {
    /// 20-point rule on 60 panels at `bits` of precision.
    pub fn new(bits: usize) -> XiZeroOracle {
        let mut mp = Mp::new(bits);
        let rule = gauss_legendre(20, &mut mp);
        let panels = 60;
        let width = mp.ratio(3, 2).div_i64(panels);
        let half = width.mul_pow2(-1);
        let mut nodes = Vec::with_capacity(rule.len() * panels as usize);
        for p in 0..panels {
            let mid = &width.mul_i64(p) + &half;
            for (x, w) in &rule {
                let t = &mid + &(&half * x);
                let f = phi_direct(&t, &mut mp);
                nodes.push((t, &(&f * w) * &half));
            }
        }
        XiZeroOracle { mp, nodes }
    }

    pub fn eval(&mut self, x: f64) -> Real {
        let x = self.mp.f(x);
        let mut s = self.mp.zero();
        for (t, w) in &self.nodes {
            let c = self.mp.cos(&(&x * t));
            s = &s + &(&c * w);
        }
        s
    }

    /// Sign changes on a unit grid over (0, x_max], bisected to width `tol`.
    pub fn zeros(&mut self, x_max: f64, tol: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let mut a = 0.0;
        let mut sa = self.eval(a).signum();
        while a < x_max {
            let b = (a + 1.0).min(x_max);
            let sb = self.eval(b).signum();
            if sa != sb {
                let (mut lo, mut hi) = (a, b);
                while hi - lo > tol {
                    let m = 0.5 * (lo + hi);
                    if self.eval(m).signum() == sa {
                        lo = m;
                    } else {
                        hi = m;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
            a = b;
            sa = sb;
        }
        out
    }
}
