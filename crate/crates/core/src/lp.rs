//! Real-rootedness tools for polynomials and entire functions of
//! Laguerre–Pólya type: Jensen polynomials, multiplier sequences, Turán
//! differences, the Hermite–Poulain and Laguerre transforms, the L_n
//! functionals, Jensen disks, shifted sums, Sturm counting, growth estimates
//! and canonical products.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::moments::factorial;
use crate::numerics::PrecisionContext;
use crate::poly::{Rational, RealPolynomial};
use crate::real::{Mp, Real};

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(b)
}

/// Taylor data γ_n = f⁽ⁿ⁾(0), so that f = Σ γ_n zⁿ/n!.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorSeq {
    gamma: Vec<Rational>,
}

impl TaylorSeq {
    /// At least γ₀ and γ₁ are required.
    pub fn new(gamma: Vec<Rational>) -> Result<TaylorSeq> {
        if gamma.len() < 2 {
            return Err(Error::InsufficientData {
                needed: 2,
                available: gamma.len(),
            });
        }
        Ok(TaylorSeq { gamma })
    }

    pub fn from_i64s(g: &[i64]) -> Result<TaylorSeq> {
        TaylorSeq::new(g.iter().map(|&v| int(v)).collect())
    }

    /// γ_n = n!·c_n from Taylor coefficients c_n.
    pub fn from_coefficients(c: &[Rational]) -> Result<TaylorSeq> {
        TaylorSeq::new(
            c.iter()
                .enumerate()
                .map(|(n, cn)| cn * Rational::from_integer(factorial(n as u64)))
                .collect(),
        )
    }

    pub fn from_fn(len: usize, f: impl Fn(usize) -> Rational) -> Result<TaylorSeq> {
        TaylorSeq::new((0..len).map(f).collect())
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    /// Largest index N with γ_N known.
    pub fn n_max(&self) -> usize {
        self.gamma.len() - 1
    }

    /// c_n = γ_n/n!.
    pub fn coefficient(&self, n: usize) -> Option<Rational> {
        self.gamma
            .get(n)
            .map(|g| g / Rational::from_integer(factorial(n as u64)))
    }

    /// Componentwise product, truncated to the shorter sequence.
    pub fn componentwise(&self, other: &TaylorSeq) -> TaylorSeq {
        TaylorSeq {
            gamma: self.gamma.iter().zip(&other.gamma).map(|(a, b)| a * b).collect(),
        }
    }
}

/// J_{n,m}(z) = Σ_k C(n,k) γ_{k+m} z^k.
pub fn jensen_poly(g: &TaylorSeq, n: usize, m: usize) -> Result<RealPolynomial> {
    if n + m > g.n_max() {
        return Err(Error::InsufficientData {
            needed: n + m + 1,
            available: g.gamma.len(),
        });
    }
    Ok(RealPolynomial::new(
        (0..=n).map(|k| binomial(n, k) * &g.gamma[k + m]).collect(),
    ))
}

/// The Appell form zⁿ J_{n,m}(1/z) = Σ_k C(n,k) γ_{k+m} z^{n−k}.
pub fn appell_poly(g: &TaylorSeq, n: usize, m: usize) -> Result<RealPolynomial> {
    let j = jensen_poly(g, n, m)?;
    let mut c: Vec<Rational> = (0..=n).map(|k| j.coeff(k)).collect();
    c.reverse();
    Ok(RealPolynomial::new(c))
}

/// Sturm chain p, p′, −rem(p, p′), … of a square-free p.
fn sturm_chain(p: &RealPolynomial) -> Vec<RealPolynomial> {
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        // Positive rescaling keeps the signs and the coefficients small.
        let lc = r.leading().abs();
        chain.push(-&r.scale(&(Rational::one() / lc)));
    }
    chain
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// A point of the extended real line for root counting.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    NegInfinity,
    At(Rational),
    PosInfinity,
}

fn chain_variations(chain: &[RealPolynomial], x: &Point) -> usize {
    match x {
        Point::NegInfinity => variations(chain.iter().map(|q| q.sign_at_infinity(false))),
        Point::PosInfinity => variations(chain.iter().map(|q| q.sign_at_infinity(true))),
        Point::At(x) => variations(chain.iter().map(|q| q.sign_at(x))),
    }
}

/// Number of distinct real roots of p in (a, b]. The sign-variation count is
/// right-continuous at roots, so endpoints may be roots themselves.
pub fn sturm_count_between(p: &RealPolynomial, a: &Point, b: &Point) -> usize {
    if p.is_constant() {
        return 0;
    }
    let chain = sturm_chain(&p.square_free_part());
    let va = chain_variations(&chain, a);
    let vb = chain_variations(&chain, b);
    va.saturating_sub(vb)
}

/// Distinct real roots of p in (a, b].
pub fn sturm_count(p: &RealPolynomial, a: &Rational, b: &Rational) -> usize {
    sturm_count_between(p, &Point::At(a.clone()), &Point::At(b.clone()))
}

/// Distinct real roots on the whole line.
pub fn distinct_real_roots(p: &RealPolynomial) -> usize {
    sturm_count_between(p, &Point::NegInfinity, &Point::PosInfinity)
}

/// Real roots counted with multiplicity, from the square-free factorization.
pub fn real_root_count(p: &RealPolynomial) -> usize {
    p.square_free_factors()
        .iter()
        .map(|(mult, f)| mult * distinct_real_roots(f))
        .sum()
}

/// True when every root of p is real. Constants (and zero) qualify.
pub fn has_only_real_zeros(p: &RealPolynomial) -> bool {
    match p.degree() {
        None | Some(0) => true,
        Some(d) => real_root_count(p) == d,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierTest {
    pub pass: bool,
    /// Smallest n whose Jensen polynomial has a nonreal zero.
    pub first_failure: Option<usize>,
    /// Orders 1..=checked were examined.
    pub checked: usize,
}

/// Checks that J_n has real zeros only for n = 1..=N. A pass is relative to N.
pub fn multiplier_sequence_test(g: &TaylorSeq, n_max: usize) -> Result<MultiplierTest> {
    if n_max > g.n_max() {
        return Err(Error::InsufficientData {
            needed: n_max + 1,
            available: g.gamma.len(),
        });
    }
    for n in 1..=n_max {
        if !has_only_real_zeros(&jensen_poly(g, n, 0)?) {
            return Ok(MultiplierTest {
                pass: false,
                first_failure: Some(n),
                checked: n_max,
            });
        }
    }
    Ok(MultiplierTest {
        pass: true,
        first_failure: None,
        checked: n_max,
    })
}

/// Σ γ_k c_k z^k: the action of a sequence on a polynomial.
pub fn apply_sequence(g: &TaylorSeq, p: &RealPolynomial) -> Result<RealPolynomial> {
    let d = p.degree().unwrap_or(0);
    if d > g.n_max() {
        return Err(Error::InsufficientData {
            needed: d + 1,
            available: g.gamma.len(),
        });
    }
    Ok(RealPolynomial::new(
        (0..=d).map(|k| &g.gamma[k] * p.coeff(k)).collect(),
    ))
}

/// γ_n² − γ_{n−1}γ_{n+1} for n = 1..N−1.
pub fn turan_check(g: &TaylorSeq) -> Result<Vec<Rational>> {
    if g.n_max() < 2 {
        return Err(Error::InsufficientData {
            needed: 3,
            available: g.gamma.len(),
        });
    }
    let c = &g.gamma;
    Ok((1..g.n_max()).map(|n| &c[n] * &c[n] - &c[n - 1] * &c[n + 1]).collect())
}

/// a₀p + a₁p′ + ⋯ + a_n p⁽ⁿ⁾ for a multiplier a with real zeros only.
pub fn hermite_poulain(a: &RealPolynomial, p: &RealPolynomial) -> Result<RealPolynomial> {
    if !has_only_real_zeros(a) {
        return Err(Error::NonRealMultiplier);
    }
    let mut out = RealPolynomial::zero();
    let mut d = p.clone();
    for ak in a.coeffs() {
        if d.is_zero() {
            break;
        }
        out = &out + &d.scale(ak);
        d = d.derivative();
    }
    Ok(out)
}

/// Q(0)c₀ + Q(1)c₁z + ⋯ + Q(d)c_d z^d, for Q with real zeros outside [0, d].
pub fn laguerre_transform(q: &RealPolynomial, c: &[Rational], d: usize) -> Result<RealPolynomial> {
    if c.len() <= d {
        return Err(Error::InsufficientData {
            needed: d + 1,
            available: c.len(),
        });
    }
    if !has_only_real_zeros(q) {
        return Err(Error::NonRealMultiplier);
    }
    let zero = Rational::zero();
    let hit = q.sign_at(&zero) == 0 || sturm_count(q, &zero, &int(d as i64)) > 0;
    if hit {
        return Err(Error::ZeroInExclusionInterval { d });
    }
    Ok(RealPolynomial::new(
        (0..=d).map(|k| q.eval(&int(k as i64)) * &c[k]).collect(),
    ))
}

/// Nonreal zeros of p counted with multiplicity.
pub fn nonreal_count(p: &RealPolynomial) -> usize {
    p.degree().unwrap_or(0) - real_root_count(p)
}

/// L_n(p)(t) = Σ_{k=0}^{2n} (−1)^{k+n}/(2n)!·C(2n,k)·p⁽ᵏ⁾(t)p⁽²ⁿ⁻ᵏ⁾(t).
pub fn l_functional(p: &RealPolynomial, n: usize, t: &Rational) -> Rational {
    let derivs: Vec<Rational> = {
        let mut d = p.clone();
        let mut v = Vec::with_capacity(2 * n + 1);
        for _ in 0..=2 * n {
            v.push(d.eval(t));
            d = d.derivative();
        }
        v
    };
    let mut s = Rational::zero();
    for k in 0..=2 * n {
        let term = binomial(2 * n, k) * &derivs[k] * &derivs[2 * n - k];
        if (k + n) % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    s / Rational::from_integer(factorial(2 * n as u64))
}

/// Coefficient of y^{2n} in |p(t + iy)|², from the expansion of p(t + iy) in y.
pub fn abs_square_coefficient(p: &RealPolynomial, n: usize, t: &Rational) -> Rational {
    // p(t + iy) = Σ_k p⁽ᵏ⁾(t)/k! (iy)^k = A(y) + iB(y).
    let shifted = p.shift(t);
    let mut re = Vec::new();
    let mut im = Vec::new();
    for (k, c) in shifted.coeffs().iter().enumerate() {
        let (r, i) = match k % 4 {
            0 => (c.clone(), Rational::zero()),
            1 => (Rational::zero(), c.clone()),
            2 => (-c, Rational::zero()),
            _ => (Rational::zero(), -c),
        };
        re.push(r);
        im.push(i);
    }
    let a = RealPolynomial::new(re);
    let b = RealPolynomial::new(im);
    let sq = &(&a * &a) + &(&b * &b);
    sq.coeff(2 * n)
}

#[derive(Clone, Debug)]
pub struct JensenDisk {
    pub center: Real,
    pub radius: Real,
}

impl JensenDisk {
    /// Closed disk membership with `slack`.
    pub fn contains(&self, z: &Complex, slack: &Real) -> bool {
        let dx = &z.re - &self.center;
        let r = &self.radius + slack;
        &(&dx * &dx) + &(&z.im * &z.im) <= &r * &r
    }
}

const ABERTH_MAX_ITER: usize = 500;
const ABERTH_RESTARTS: u64 = 6;

/// Roots of a square-free p by Aberth–Ehrlich iteration; restarts rotate the
/// starting circle by pseudo-random angles.
fn aberth_square_free(p: &RealPolynomial, mp: &mut Mp) -> Result<Vec<Complex>> {
    let Some(n) = p.degree() else {
        return Ok(Vec::new());
    };
    let bits = mp.bits();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        let r = -(p.coeff(0) / p.coeff(1));
        return Ok(vec![Complex::real(Real::from_rational(&r, bits))]);
    }
    let pc = p.to_reals(bits);
    let dp = p.derivative().to_reals(bits);
    let horner = |c: &[Real], z: &Complex| {
        let mut acc = Complex::zero(bits);
        for a in c.iter().rev() {
            acc = &(&acc * z) + &Complex::real(a.clone());
        }
        acc
    };
    // Geometric mean of the root moduli as the start radius.
    let ratio = (p.coeff(0) / p.leading()).abs();
    let radius = if ratio.is_zero() {
        mp.one()
    } else {
        let r = Real::from_rational(&ratio, bits);
        let lr = mp.ln(&r).div_i64(n as i64);
        mp.exp(&lr)
    };
    let tol = Real::pow2(-(bits as i64) + 12, 64);
    let pi2 = mp.pi().mul_pow2(1);
    let mut seed: u64 = 0x9e37_79b9_7f4a_7c15;
    for restart in 0..ABERTH_RESTARTS {
        seed = seed.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        let offset = 0.4 + (seed >> 11) as f64 / (1u64 << 53) as f64 * (restart as f64);
        let scale = radius.mul_f64(1.0 + 0.1 * restart as f64);
        let mut z: Vec<Complex> = (0..n)
            .map(|k| {
                let ang = &(&pi2 * &mp.ratio(k as i64, n as i64)) + &mp.f(offset);
                mp.cis(&ang).scale(&scale)
            })
            .collect();
        for _ in 0..ABERTH_MAX_ITER {
            let mut converged = true;
            for k in 0..n {
                let pv = horner(&pc, &z[k]);
                if pv.is_zero() {
                    continue;
                }
                let dv = horner(&dp, &z[k]);
                let w = &pv / &dv;
                let mut s = Complex::zero(bits);
                for j in 0..n {
                    if j != k {
                        let d = &z[k] - &z[j];
                        if d.is_zero() {
                            continue;
                        }
                        s = &s + &(&Complex::one(bits) / &d);
                    }
                }
                let denom = &Complex::one(bits) - &(&w * &s);
                let step = &w / &denom;
                let rel = &step.abs() / &z[k].abs().max(&mp.one());
                if rel > tol {
                    converged = false;
                }
                z[k] = &z[k] - &step;
            }
            if converged {
                return Ok(z);
            }
        }
    }
    Err(Error::RootFindingNoConvergence { degree: n })
}

/// All complex roots of p with multiplicity, at ctx precision. Roots known to
/// be real from Sturm counts are returned with a zero imaginary part, and
/// nonreal ones in conjugate pairs.
pub fn complex_roots(p: &RealPolynomial, ctx: &PrecisionContext) -> Result<Vec<Complex>> {
    let mut mp = Mp::new(ctx.bits + 32);
    let mut out = Vec::new();
    for (mult, f) in p.square_free_factors() {
        let mut roots = aberth_square_free(&f, &mut mp)?;
        let real = distinct_real_roots(&f);
        roots.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).expect("finite"));
        let mut fixed = Vec::with_capacity(roots.len());
        for (i, r) in roots.into_iter().enumerate() {
            if i < real {
                fixed.push(Complex::real(r.re.with_prec(ctx.bits)));
            } else if r.im.is_positive() {
                let re = r.re.with_prec(ctx.bits);
                let im = r.im.with_prec(ctx.bits);
                fixed.push(Complex::new(re.clone(), im.clone()));
                fixed.push(Complex::new(re, -im));
            }
        }
        if fixed.len() != f.degree().unwrap_or(0) {
            return Err(Error::RootFindingNoConvergence {
                degree: f.degree().unwrap_or(0),
            });
        }
        for _ in 0..mult {
            out.extend(fixed.iter().cloned());
        }
    }
    out.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .expect("finite")
            .then(a.im.partial_cmp(&b.im).expect("finite"))
    });
    Ok(out)
}

/// Jensen disks of p with the nonreal critical points and which of them
/// fall outside every disk.
#[derive(Clone, Debug)]
pub struct JensenReport {
    pub roots: Vec<Complex>,
    pub disks: Vec<JensenDisk>,
    /// Nonreal zeros of p′.
    pub critical_points: Vec<Complex>,
    /// Indices into `critical_points` not covered by any disk.
    pub uncovered: Vec<usize>,
}

impl JensenReport {
    pub fn all_contained(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Disks with diameters joining each conjugate pair z_j, z̄_j, shrunk to
/// radius² = (Im z_j)² − λ² (λ = 0 gives the Jensen disks). Pairs with
/// |Im z_j| ≤ λ contribute nothing.
pub fn disks_from_roots(roots: &[Complex], lambda: &Real) -> Vec<JensenDisk> {
    let mut disks: Vec<JensenDisk> = Vec::new();
    for r in roots.iter().filter(|r| r.im.is_positive()) {
        let r2 = &(&r.im * &r.im) - &(lambda * lambda);
        if !r2.is_positive() {
            continue;
        }
        let radius = r2.sqrt();
        if disks.iter().any(|d| d.center == r.re && d.radius == radius) {
            continue;
        }
        disks.push(JensenDisk {
            center: r.re.clone(),
            radius,
        });
    }
    disks
}

fn covered(points: &[Complex], disks: &[JensenDisk], slack: &Real) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, c)| !disks.iter().any(|d| d.contains(c, slack)))
        .map(|(i, _)| i)
        .collect()
}

pub fn jensen_disks(p: &RealPolynomial, ctx: &PrecisionContext) -> Result<JensenReport> {
    let roots = complex_roots(p, ctx)?;
    let disks = disks_from_roots(&roots, &Real::zero(ctx.bits));
    let critical_points: Vec<Complex> = complex_roots(&p.derivative(), ctx)?
        .into_iter()
        .filter(|c| !c.im.is_zero())
        .collect();
    let slack = Real::from_f64(ctx.abs_tol, ctx.bits);
    let uncovered = covered(&critical_points, &disks, &slack);
    Ok(JensenReport {
        roots,
        disks,
        critical_points,
        uncovered,
    })
}

/// f(z + iλ) + f(z − iλ) = 2Σ_k (−1)^k λ^{2k}/(2k)! f⁽²ᵏ⁾(z).
pub fn shifted_sum(p: &RealPolynomial, lambda: &Rational) -> RealPolynomial {
    let mut out = RealPolynomial::zero();
    let mut d = p.clone();
    let mut coef = int(2);
    let l2 = lambda * lambda;
    let mut k = 0i64;
    while !d.is_zero() {
        out = &out + &d.scale(&coef);
        d = d.derivative().derivative();
        k += 1;
        coef = -(&coef * &l2) / int((2 * k - 1) * (2 * k));
    }
    out
}

/// Nonreal zeros of f_λ and whether each lies in a disk of f shrunk by λ.
pub fn shifted_sum_disk_check(p: &RealPolynomial, lambda: &Rational, ctx: &PrecisionContext) -> Result<JensenReport> {
    let roots = complex_roots(p, ctx)?;
    let lam = Real::from_rational(lambda, ctx.bits);
    let disks = disks_from_roots(&roots, &lam);
    let shifted = shifted_sum(p, lambda);
    let critical_points: Vec<Complex> = complex_roots(&shifted, ctx)?
        .into_iter()
        .filter(|c| !c.im.is_zero())
        .collect();
    let slack = Real::from_f64(ctx.abs_tol, ctx.bits);
    let uncovered = covered(&critical_points, &disks, &slack);
    Ok(JensenReport {
        roots,
        disks,
        critical_points,
        uncovered,
    })
}

/// Finite-N estimates of order, type and convergence exponent. These are
/// estimates over the window [N/2, N], never limits.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEstimate {
    pub window: (usize, usize),
    /// ρ from a least-squares fit of ln(1/|c_n|) = (n ln n − βn)/ρ + a ln n + b
    /// over the window.
    pub order: f64,
    /// τ = e^β/(ρe) from the same fit; NaN when the fitted order is not finite.
    pub type_: f64,
    /// sup over the window of n ln n / ln(1/|c_n|).
    pub order_ratio_sup: f64,
    /// sup over the window of n|c_n|^{ρ/n}/(ρe) at the fitted ρ.
    pub type_ratio_sup: f64,
}

fn solve_small(mut a: Vec<Vec<Real>>, mut b: Vec<Real>) -> Option<Vec<Real>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).expect("finite"))?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let v = &a[col][c] * &f;
                a[r][c] = &a[r][c] - &v;
            }
            let v = &b[col] * &f;
            b[r] = &b[r] - &v;
        }
    }
    let mut x = vec![Real::zero(b[0].prec()); n];
    for r in (0..n).rev() {
        let mut s = b[r].clone();
        for c in r + 1..n {
            s = &s - &(&a[r][c] * &x[c]);
        }
        x[r] = &s / &a[r][r];
    }
    Some(x)
}

/// Order and type estimates from |c_0|, …, |c_N| (N ≥ 16). Coefficients are
/// taken as `Real` so that values like e^{−n²} do not underflow.
pub fn growth_estimates(c: &[Real], n_max: usize) -> Result<GrowthEstimate> {
    if n_max < 16 || c.len() <= n_max {
        return Err(Error::InsufficientData {
            needed: n_max.max(16) + 1,
            available: c.len(),
        });
    }
    let mut mp = Mp::new(256);
    let lo = n_max / 2;
    let mut rows = Vec::new();
    let mut order_ratio_sup = f64::NEG_INFINITY;
    for (n, cn) in c.iter().enumerate().take(n_max + 1).skip(lo.max(2)) {
        if cn.is_zero() {
            continue;
        }
        let l = -mp.ln(&cn.abs().with_prec(256));
        let nr = mp.int(n as i64);
        let ln_n = mp.ln(&nr);
        let nln = &nr * &ln_n;
        if l.is_positive() {
            order_ratio_sup = order_ratio_sup.max((&nln / &l).to_f64());
        }
        rows.push((vec![nln, -&nr, ln_n, mp.one()], l));
    }
    if rows.len() < 4 {
        return Err(Error::InsufficientData {
            needed: 4,
            available: rows.len(),
        });
    }
    let mut ata = vec![vec![mp.zero(); 4]; 4];
    let mut atb = vec![mp.zero(); 4];
    for (x, y) in &rows {
        for i in 0..4 {
            for j in 0..4 {
                ata[i][j] = &ata[i][j] + &(&x[i] * &x[j]);
            }
            atb[i] = &atb[i] + &(&x[i] * y);
        }
    }
    let sol = solve_small(ata, atb).ok_or(Error::InsufficientData {
        needed: 4,
        available: rows.len(),
    })?;
    let inv_rho = sol[0].to_f64();
    let (order, type_) = if inv_rho > 0.0 {
        let rho = 1.0 / inv_rho;
        // L(n) = (n/ρ)(ln n − ln(ρeτ)) ⇒ β/ρ = ln(ρeτ)/ρ.
        let beta = sol[1].to_f64() / inv_rho;
        (rho, libm::exp(beta) / (rho * core::f64::consts::E))
    } else {
        (f64::INFINITY, f64::NAN)
    };
    let mut type_ratio_sup = f64::NEG_INFINITY;
    if order.is_finite() && order > 0.0 {
        for (n, cn) in c.iter().enumerate().take(n_max + 1).skip(lo.max(1)) {
            if cn.is_zero() {
                continue;
            }
            let l = mp.ln(&cn.abs().with_prec(256)).to_f64();
            let v = n as f64 * libm::exp(order * l / n as f64) / (order * core::f64::consts::E);
            type_ratio_sup = type_ratio_sup.max(v);
        }
    }
    Ok(GrowthEstimate {
        window: (lo, n_max),
        order,
        type_,
        order_ratio_sup,
        type_ratio_sup,
    })
}

/// sup over n ∈ [N/2, N] of ln n / ln r_n for increasing zero moduli r_n
/// (1-based), an estimate of the convergence exponent.
pub fn convergence_exponent_estimate(radii: &[f64]) -> Result<f64> {
    let n_max = radii.len();
    if n_max < 16 {
        return Err(Error::InsufficientData {
            needed: 16,
            available: n_max,
        });
    }
    let mut sup = f64::NEG_INFINITY;
    for n in (n_max / 2).max(2)..=n_max {
        let r = radii[n - 1];
        if r > 1.0 {
            sup = sup.max(libm::log(n as f64) / libm::log(r));
        }
    }
    Ok(sup)
}

/// E(u, p) = (1 − u) exp(u + u²/2 + ⋯ + u^p/p).
pub fn primary_factor(u: &Complex, p: u32, mp: &mut Mp) -> Complex {
    let bits = u.re.prec();
    let mut e = Complex::zero(bits);
    let mut pow = Complex::one(bits);
    for k in 1..=p {
        pow = &pow * u;
        e = &e + &pow.scale(&mp.ratio(1, k as i64));
    }
    let lin = &Complex::one(bits) - u;
    &lin * &mp.cexp(&e)
}

/// ∏ E(z/z_n, g) over a finite zero list.
pub fn canonical_product(zeros: &[Complex], genus: u32, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if genus > 2 {
        return Err(Error::InvalidArgument(alloc::format!("genus {genus} is not 0, 1 or 2")));
    }
    if zeros.iter().any(Complex::is_zero) {
        return Err(Error::ZeroAtOrigin);
    }
    let mut mp = Mp::new(ctx.bits);
    let z = Complex::new(z.re.with_prec(ctx.bits), z.im.with_prec(ctx.bits));
    let mut acc = Complex::one(ctx.bits);
    for zn in zeros {
        let zn = Complex::new(zn.re.with_prec(ctx.bits), zn.im.with_prec(ctx.bits));
        let u = &z / &zn;
        acc = &acc * &primary_factor(&u, genus, &mut mp);
    }
    Ok(acc)
}
