//! Moments b_k = ∫₀^∞ t^{2k} Φ(t) dt, the coefficients C_k = b_k/(2k)!, and
//! the determinant criteria built on them: Turán differences, the Toeplitz
//! minors D(n, r), Hankel forms in the power sums s_k, and Borchardt–Hermite.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{Estimate, PrecisionContext};
use crate::phi::{phi_fast, y_of};
use crate::poly::{Rational, RealPolynomial};
use crate::real::{Mp, Real};

/// b_0..=b_kmax with error bounds.
#[derive(Clone, Debug)]
pub struct MomentTable {
    entries: Vec<Estimate>,
    pub kmax: usize,
    /// Truncation point and final trapezoid step.
    pub window: f64,
    pub step: f64,
    pub evaluations: u64,
}

impl MomentTable {
    pub fn b(&self, k: usize) -> Option<&Estimate> {
        self.entries.get(k)
    }

    pub fn entries(&self) -> &[Estimate] {
        &self.entries
    }

    /// C_k = b_k/(2k)! with the factorial exact.
    pub fn c(&self, k: usize) -> Option<Estimate> {
        let b = self.entries.get(k)?;
        let bits = b.value.prec();
        let f = Real::from_bigint(&factorial(2 * k as u64), bits + 64);
        let one = Estimate::exact(f);
        Some(b.div(&one))
    }

    pub fn c_sequence(&self) -> CoeffSequence {
        CoeffSequence::Approx((0..=self.kmax).map(|k| self.c(k).unwrap()).collect())
    }

    /// Taylor coefficients of Ŝ(z) = Σ (−1)^k b_k z^{2k}/(2k)! through z^m:
    /// c_{2k} = (−1)^k C_k, odd orders zero.
    pub fn xi_hat_taylor(&self, m: usize) -> Result<CoeffSequence> {
        if m / 2 > self.kmax {
            return Err(Error::InsufficientData {
                needed: m / 2,
                available: self.kmax,
            });
        }
        let bits = self.entries[0].value.prec();
        let v = (0..=m)
            .map(|j| {
                if j % 2 == 1 {
                    Estimate::exact(Real::zero(bits))
                } else {
                    let c = self.c(j / 2).unwrap();
                    if (j / 2) % 2 == 1 {
                        c.neg()
                    } else {
                        c
                    }
                }
            })
            .collect();
        Ok(CoeffSequence::Approx(v))
    }

    /// Δ_n = b_n² − (2n−1)/(2n+1)·b_{n−1}b_{n+1} and
    /// C_n² − (1 + 1/n)·C_{n−1}C_{n+1}.
    pub fn turan_delta(&self, n: usize) -> Result<TuranDelta> {
        if n == 0 {
            return Err(Error::InvalidArgument("turan_delta needs n >= 1".into()));
        }
        if n + 1 > self.kmax {
            return Err(Error::InsufficientData {
                needed: n + 1,
                available: self.kmax,
            });
        }
        let b = |k: usize| self.entries[k].clone();
        let bits = self.entries[0].value.prec();
        let w = Real::from_i64(2 * n as i64 - 1, bits + 64).div_i64(2 * n as i64 + 1);
        let delta = b(n).mul(&b(n)).sub(&b(n - 1).mul(&b(n + 1)).scale(&w));
        let c = |k: usize| self.c(k).unwrap();
        let w2 = Real::from_i64(n as i64 + 1, bits + 64).div_i64(n as i64);
        let strict = c(n).mul(&c(n)).sub(&c(n - 1).mul(&c(n + 1)).scale(&w2));
        Ok(TuranDelta { n, delta, strict })
    }

    /// b₁² − b₀b₂/3, the r = 1 Hankel quantity for Ŝ up to the factor 1/(4b₀).
    pub fn hankel_combo(&self) -> Result<Estimate> {
        if self.kmax < 2 {
            return Err(Error::InsufficientData { needed: 2, available: self.kmax });
        }
        let b = &self.entries;
        let third = Real::one(b[0].value.prec() + 64).div_i64(3);
        Ok(b[1].mul(&b[1]).sub(&b[0].mul(&b[2]).scale(&third)))
    }
}

#[derive(Clone, Debug)]
pub struct TuranDelta {
    pub n: usize,
    pub delta: Estimate,
    pub strict: Estimate,
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Rigorous upper envelope of t^{2k}Φ(t)e^{gt + 4λt²} on [T, ∞): with
/// f(t) = t^{2k}·(203/202)·a(t)·e^{gt + 4λt²} the log-derivative is at most
/// 2k/t + 9 + g + 8λ⁺t − 4y, and 4y − 8λ⁺t increases for λ ≤ 1, so the tail
/// is at most f(T)/ρ with ρ = 4y(T) − 9 − g − 8λ⁺T − 2k/T.
pub(crate) fn tail_envelope_weighted(k: usize, t: &Real, h: &Real, growth: &Real, lambda: &Real, mp: &mut Mp) -> Option<Real> {
    let y = y_of(t, mp);
    let mut rho = &(&(&y.mul_i64(4) - &mp.int(9)) - &t.recip().mul_i64(2 * k as i64)) - growth;
    if lambda.is_positive() {
        rho = &rho - &(lambda * t).mul_i64(8);
    }
    if !rho.is_positive() {
        return None;
    }
    // a(t) ≤ 2e^t y² e^{−y} for y ≥ π.
    let expo = &(&(t - &y) + &(growth * t)) + &(&(lambda * t) * t).mul_i64(4);
    let a = &(&mp.exp(&expo) * &(&y * &y)).mul_pow2(1) * &mp.ratio(203, 202);
    let f = &t.powi(2 * k) * &a;
    let integral = &f / &rho;
    // Discarded trapezoid nodes beyond T: h·f(T)/(1 − e^{−ρh}), increasing
    // in h, so the coarsest step covers every level.
    let q = mp.exp(&-&(&rho * h));
    let nodes = &(&f * h) / &(&mp.one() - &q);
    Some(&integral + &nodes)
}

fn tail_envelope(k: usize, t: &Real, h: &Real, mp: &mut Mp) -> Option<Real> {
    let zero = mp.zero();
    tail_envelope_weighted(k, t, h, &zero, &zero, mp)
}

/// b_k ≥ (1/4)·(1/2)^{2k}·Φ(3/4) since Φ decreases on [1/2, 3/4].
fn moment_floor(k: usize, mp: &mut Mp) -> Real {
    let p = phi_fast(&mp.ratio(3, 4), mp);
    p.mul_pow2(-2 - 2 * k as i64)
}

const MAX_LEVEL: u32 = 10;

/// Compute b_0..=b_kmax on shared trapezoid nodes.
///
/// t^{2k}Φ(t) is even and analytic in a strip about the real axis, so the
/// half-line trapezoid rule converges geometrically in 1/h; the difference of
/// successive halvings bounds the error of the finer sum.
pub fn moment_table(kmax: usize, ctx: &PrecisionContext) -> Result<MomentTable> {
    ctx.validate()?;
    let bits = ctx.bits + 64;
    let mut mp = Mp::new(bits);
    let h0 = mp.ratio(1, 8);
    // Window: smallest T on a 1/8 grid with every tail below its target.
    let targets: Vec<Real> = (0..=kmax)
        .map(|k| (&moment_floor(k, &mut mp) * &ctx.rel(&mp)).mul_pow2(-4))
        .collect();
    let mut t_end = mp.one();
    'outer: loop {
        if t_end > mp.int(8) {
            return Err(Error::NoConvergence {
                what: "moment window",
                detail: alloc::format!("tail envelope not below target by t = 8 for kmax = {kmax}"),
            });
        }
        for (k, target) in targets.iter().enumerate() {
            match tail_envelope(k, &t_end, &h0, &mut mp) {
                Some(b) if b <= *target => {}
                _ => {
                    t_end = &t_end + &h0;
                    continue 'outer;
                }
            }
        }
        break;
    }
    let tails: Vec<Real> = (0..=kmax)
        .map(|k| tail_envelope(k, &t_end, &h0, &mut mp).unwrap())
        .collect();
    let steps0 = (&t_end / &h0).to_f64().round() as usize;
    // f_k(t) = t^{2k}Φ(t); sums Σ' over nodes with the t = 0 node halved.
    let mut sums: Vec<Real> = vec![mp.zero(); kmax + 1];
    let mut abs_sums: Vec<Real> = vec![mp.zero(); kmax + 1];
    let mut evaluations = 0u64;
    let add_node = |t: &Real, weight_half: bool, sums: &mut [Real], abs_sums: &mut [Real], mp: &mut Mp| {
        let p = phi_fast(t, mp);
        let mut tk = if weight_half { p.mul_pow2(-1) } else { p };
        let t2 = t * t;
        for k in 0..=kmax {
            sums[k] = &sums[k] + &tk;
            abs_sums[k] = &abs_sums[k] + &tk.abs();
            tk = &tk * &t2;
        }
    };
    for j in 0..=steps0 {
        let t = h0.mul_i64(j as i64);
        add_node(&t, j == 0, &mut sums, &mut abs_sums, &mut mp);
        evaluations += 1;
    }
    let mut h = h0.clone();
    let mut prev: Vec<Real> = sums.iter().map(|s| s * &h).collect();
    let mut n_steps = steps0;
    for level in 1..=MAX_LEVEL {
        let hn = h.mul_pow2(-1);
        for j in 0..n_steps {
            let t = &hn.mul_i64(2 * j as i64 + 1);
            add_node(t, false, &mut sums, &mut abs_sums, &mut mp);
            evaluations += 1;
        }
        n_steps *= 2;
        h = hn;
        let cur: Vec<Real> = sums.iter().map(|s| s * &h).collect();
        let mut done = level >= 2;
        let mut entries = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let diff = (&cur[k] - &prev[k]).abs();
            // Each Φ value is good to a few ulps plus its truncation target.
            let rounding = (&(&abs_sums[k] * &h) * &mp.eps()).mul_i64(16 + 4 * n_steps as i64);
            let err = &(&diff + &tails[k]) + &rounding;
            if err > &ctx.rel(&mp) * &cur[k].abs() {
                done = false;
            }
            entries.push(Estimate::new(cur[k].clone(), err));
        }
        if done {
            return Ok(MomentTable {
                entries,
                kmax,
                window: t_end.to_f64(),
                step: h.to_f64(),
                evaluations,
            });
        }
        prev = cur;
    }
    Err(Error::NoConvergence {
        what: "moment trapezoid",
        detail: alloc::format!("no agreement after {MAX_LEVEL} halvings for kmax = {kmax}"),
    })
}

/// b_k with its error bound.
pub fn b_moment(k: usize, ctx: &PrecisionContext) -> Result<Estimate> {
    Ok(moment_table(k, ctx)?.entries[k].clone())
}

/// C_k = b_k/(2k)!.
pub fn c_coeff(k: usize, ctx: &PrecisionContext) -> Result<Estimate> {
    Ok(moment_table(k, ctx)?.c(k).unwrap())
}

pub fn turan_delta(n: usize, ctx: &PrecisionContext) -> Result<TuranDelta> {
    moment_table(n + 1, ctx)?.turan_delta(n)
}

/// A finite coefficient sequence, either exact or carrying error bounds.
#[derive(Clone, Debug)]
pub enum CoeffSequence {
    Exact(Vec<Rational>),
    Approx(Vec<Estimate>),
}

impl CoeffSequence {
    pub fn from_i64s(v: &[i64]) -> CoeffSequence {
        CoeffSequence::Exact(v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    pub fn len(&self) -> usize {
        match self {
            CoeffSequence::Exact(v) => v.len(),
            CoeffSequence::Approx(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CoeffSequence::Exact(_))
    }

    pub fn estimates(&self, bits: usize) -> Vec<Estimate> {
        match self {
            CoeffSequence::Exact(v) => v.iter().map(|r| Estimate::exact(Real::from_rational(r, bits))).collect(),
            CoeffSequence::Approx(v) => v.clone(),
        }
    }

    /// Entry m, zero for negative m.
    fn entry_exact(v: &[Rational], m: i64) -> Rational {
        if m < 0 {
            Rational::zero()
        } else {
            v[m as usize].clone()
        }
    }
}

/// A determinant value. Exact inputs give `exact` and a zero error.
#[derive(Clone, Debug)]
pub struct Determinant {
    pub value: Real,
    pub error: Real,
    pub exact: Option<Rational>,
}

impl Determinant {
    /// Sign if decided: exact sign, or |value| beyond the error bound.
    pub fn sign(&self) -> Option<i32> {
        if let Some(r) = &self.exact {
            return Some(if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            });
        }
        Estimate::new(self.value.clone(), self.error.clone()).sign()
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Some(1)
    }
}

/// Fraction-free (Bareiss) determinant of a rational matrix: rows are scaled
/// to integers first, so every intermediate division is exact.
pub fn det_exact(m: &[Vec<Rational>]) -> Rational {
    let r = m.len();
    if r == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..r {
        if a[k][k].is_zero() {
            match (k + 1..r).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..r {
            for j in k + 1..r {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Rational::new(sign * &a[r - 1][r - 1], scale)
}

/// Partial-pivot LU determinant in working precision; also returns |L||U|.
fn lu_det(m: &[Vec<Real>]) -> (Real, Vec<Vec<Real>>) {
    let r = m.len();
    let bits = m[0][0].prec();
    let mut a: Vec<Vec<Real>> = m.to_vec();
    let mut perm: Vec<usize> = (0..r).collect();
    let mut l = vec![vec![Real::zero(bits); r]; r];
    let mut det = Real::one(bits);
    for k in 0..r {
        let p = (k..r).max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap()).unwrap();
        if p != k {
            a.swap(k, p);
            l.swap(k, p);
            perm.swap(k, p);
            det = -det;
        }
        l[k][k] = Real::one(bits);
        if a[k][k].is_zero() {
            det = Real::zero(bits);
            continue;
        }
        det = &det * &a[k][k];
        for i in k + 1..r {
            let f = &a[i][k] / &a[k][k];
            for j in k..r {
                a[i][j] = &a[i][j] - &(&f * &a[k][j]);
            }
            l[i][k] = f;
        }
    }
    // |L||U| in the original row order.
    let mut lu = vec![vec![Real::zero(bits); r]; r];
    for i in 0..r {
        for j in 0..r {
            let mut s = Real::zero(bits);
            for k in 0..=i.min(j) {
                s = &s + &(&l[i][k].abs() * &a[k][j].abs());
            }
            lu[perm[i]][j] = s;
        }
    }
    (det, lu)
}

fn minor(m: &[Vec<Real>], skip_r: usize, skip_c: usize) -> Vec<Vec<Real>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != skip_c).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Determinant of a matrix with entry error bounds. Input errors propagate
/// through the cofactors; elimination rounding is bounded by the backward
/// error γ_r|L||U| pushed through the same cofactors.
pub fn det_approx(m: &[Vec<Estimate>], ctx: &PrecisionContext) -> Result<Determinant> {
    let r = m.len();
    let bits = m.iter().flatten().map(|e| e.value.prec()).max().unwrap_or(ctx.bits).max(ctx.bits) + 64;
    if r == 0 {
        return Ok(Determinant { value: Real::one(bits), error: Real::zero(bits), exact: None });
    }
    let vals: Vec<Vec<Real>> = m.iter().map(|row| row.iter().map(|e| e.value.with_prec(bits)).collect()).collect();
    let (det, lu) = lu_det(&vals);
    let eps = Real::pow2(-(bits as i64), 64);
    let gamma = eps.mul_i64(2 * r as i64 + 2);
    let mut prop = Real::zero(bits);
    let mut rounding = Real::zero(bits);
    for i in 0..r {
        for j in 0..r {
            let cof = if r == 1 { Real::one(bits) } else { lu_det(&minor(&vals, i, j)).0.abs() };
            // Allow for the minor's own rounding.
            let cof = &cof + &(&cof * &gamma.mul_i64(r as i64));
            prop = &prop + &(&cof * &m[i][j].error);
            rounding = &rounding + &(&cof * &(&gamma * &lu[i][j]));
        }
    }
    let rel_rounding = if det.is_zero() {
        if rounding.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (&rounding / &det.abs()).to_f64()
    };
    if rel_rounding > ctx.rel_tol {
        return Err(Error::IllConditioned { relative_error: rel_rounding });
    }
    Ok(Determinant {
        value: det,
        error: &prop.mul_f64(1.0 + 1e-6) + &rounding,
        exact: None,
    })
}

fn det_any(rows_exact: Option<Vec<Vec<Rational>>>, rows: Vec<Vec<Estimate>>, ctx: &PrecisionContext) -> Result<Determinant> {
    match rows_exact {
        Some(q) => {
            let d = det_exact(&q);
            let bits = ctx.bits + 64;
            Ok(Determinant {
                value: Real::from_rational(&d, bits),
                error: Real::zero(bits),
                exact: Some(d),
            })
        }
        None => det_approx(&rows, ctx),
    }
}

/// D(n, r) = det [c_{n+i−j}]_{i,j<r} with c_m = 0 for m < 0.
pub fn dnr(seq: &CoeffSequence, n: usize, r: usize, ctx: &PrecisionContext) -> Result<Determinant> {
    if r == 0 {
        return Err(Error::InvalidArgument("D(n, r) needs r >= 1".into()));
    }
    let needed = n + r - 1;
    if seq.len() <= needed {
        return Err(Error::InsufficientData { needed, available: seq.len().saturating_sub(1) });
    }
    let idx = |i: usize, j: usize| n as i64 + i as i64 - j as i64;
    match seq {
        CoeffSequence::Exact(v) => {
            let q = (0..r).map(|i| (0..r).map(|j| CoeffSequence::entry_exact(v, idx(i, j))).collect()).collect();
            det_any(Some(q), Vec::new(), ctx)
        }
        CoeffSequence::Approx(v) => {
            let bits = v[0].value.prec();
            let rows = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| {
                            let m = idx(i, j);
                            if m < 0 {
                                Estimate::exact(Real::zero(bits))
                            } else {
                                v[m as usize].clone()
                            }
                        })
                        .collect()
                })
                .collect();
            det_any(None, rows, ctx)
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinorEntry {
    pub n: usize,
    pub r: usize,
    pub det: Determinant,
}

#[derive(Clone, Debug)]
pub struct PositivityReport {
    pub minors: Vec<MinorEntry>,
    /// (n, r) of the smallest lower confidence value det − error.
    pub min_at: (usize, usize),
    pub min_margin: Real,
    /// Minors not certified positive.
    pub nonpositive: Vec<(usize, usize)>,
}

impl PositivityReport {
    pub fn all_positive(&self) -> bool {
        self.nonpositive.is_empty()
    }
}

/// D(n, r) for n ≤ N, 1 ≤ r ≤ R over the entries the sequence supports.
pub fn total_positivity_scan(seq: &CoeffSequence, n_max: usize, r_max: usize, ctx: &PrecisionContext) -> Result<PositivityReport> {
    let mut minors = Vec::new();
    let mut nonpositive = Vec::new();
    let mut min: Option<(Real, (usize, usize))> = None;
    for r in 1..=r_max {
        for n in 0..=n_max {
            if n + r > seq.len() {
                continue;
            }
            let det = dnr(seq, n, r, ctx)?;
            let margin = &det.value - &det.error;
            if !det.is_positive() {
                nonpositive.push((n, r));
            }
            if min.as_ref().map_or(true, |(m, _)| margin < *m) {
                min = Some((margin, (n, r)));
            }
            minors.push(MinorEntry { n, r, det });
        }
    }
    let (min_margin, min_at) = min.ok_or(Error::InsufficientData { needed: 1, available: seq.len() })?;
    Ok(PositivityReport { minors, min_at, min_margin, nonpositive })
}

/// s₁..s_m from c₀s_k + c₁s_{k−1} + … + c_{k−1}s₁ + k·c_k = 0.
pub fn power_sums(c: &CoeffSequence, m: usize) -> Result<CoeffSequence> {
    if c.len() <= m {
        return Err(Error::InsufficientData { needed: m, available: c.len().saturating_sub(1) });
    }
    match c {
        CoeffSequence::Exact(v) => {
            if v[0].is_zero() {
                return Err(Error::ZeroLeadingCoefficient);
            }
            let mut s: Vec<Rational> = Vec::with_capacity(m);
            for k in 1..=m {
                let mut acc = &v[k] * Rational::from_integer(BigInt::from(k));
                for j in 1..k {
                    acc += &v[j] * &s[k - j - 1];
                }
                s.push(-acc / &v[0]);
            }
            Ok(CoeffSequence::Exact(s))
        }
        CoeffSequence::Approx(v) => {
            if v[0].value.is_zero() || v[0].sign().is_none() {
                return Err(Error::ZeroLeadingCoefficient);
            }
            let mut s: Vec<Estimate> = Vec::with_capacity(m);
            for k in 1..=m {
                let bits = v[k].value.prec();
                let mut acc = v[k].scale(&Real::from_u64(k as u64, bits));
                for j in 1..k {
                    acc = acc.add(&v[j].mul(&s[k - j - 1]));
                }
                s.push(acc.div(&v[0]).neg());
            }
            Ok(CoeffSequence::Approx(s))
        }
    }
}

#[derive(Clone, Debug)]
pub struct HankelReport {
    /// D_0..=D_r.
    pub minors: Vec<Determinant>,
    pub all_positive: bool,
}

/// Leading principal minors D_q = det [s_{2+i+j}]_{i,j≤q}, q = 0..=r, of the
/// form Σ s_{2+i+j} x_i x_j. `s` holds s₂, s₃, …, s_{2+2r}.
pub fn hankel_positive(s: &CoeffSequence, r: usize, ctx: &PrecisionContext) -> Result<HankelReport> {
    if s.len() < 2 * r + 1 {
        return Err(Error::InsufficientData { needed: 2 + 2 * r, available: s.len() + 1 });
    }
    let mut minors = Vec::with_capacity(r + 1);
    for q in 0..=r {
        let d = match s {
            CoeffSequence::Exact(v) => {
                let m = (0..=q).map(|i| (0..=q).map(|j| v[i + j].clone()).collect()).collect();
                det_any(Some(m), Vec::new(), ctx)?
            }
            CoeffSequence::Approx(v) => {
                let m = (0..=q).map(|i| (0..=q).map(|j| v[i + j].clone()).collect()).collect();
                det_any(None, m, ctx)?
            }
        };
        minors.push(d);
    }
    let all_positive = minors.iter().all(Determinant::is_positive);
    Ok(HankelReport { minors, all_positive })
}

#[derive(Clone, Debug)]
pub struct BorchardtHermite {
    /// Δ₁..Δ_n.
    pub deltas: Vec<Rational>,
    pub all_real: bool,
    pub distinct_count: usize,
}

/// Newton power sums S_0..=S_{2n−2} of the zeros of p, exactly, from
/// Σ_{k=0}^{m} a_{n−k}S_{m−k} = (n−m)a_{n−m} (zero for m ≥ n).
pub fn newton_power_sums(p: &RealPolynomial, count: usize) -> Result<Vec<Rational>> {
    let n = p.degree().filter(|&d| d >= 1).ok_or(Error::InvalidArgument("polynomial degree must be at least 1".into()))?;
    let a = |i: i64| -> Rational {
        if i < 0 {
            Rational::zero()
        } else {
            p.coeff(i as usize)
        }
    };
    let an = a(n as i64);
    let mut s: Vec<Rational> = Vec::with_capacity(count);
    for m in 0..count {
        let rhs = if m < n {
            a(n as i64 - m as i64) * Rational::from_integer(BigInt::from((n - m) as i64))
        } else {
            Rational::zero()
        };
        let mut acc = rhs;
        for k in 1..=m {
            acc -= a(n as i64 - k as i64) * &s[m - k];
        }
        s.push(acc / &an);
    }
    Ok(s)
}

/// Hankel minors Δ_k = det [S_{i+j}]_{i,j<k} of the Newton sums; zeros are
/// all real iff every Δ_k ≥ 0, and the last nonzero index counts the
/// distinct zeros.
pub fn borchardt_hermite(p: &RealPolynomial) -> Result<BorchardtHermite> {
    let n = p.degree().unwrap_or(0);
    let s = newton_power_sums(p, 2 * n.max(1) - 1)?;
    let deltas: Vec<Rational> = (1..=n)
        .map(|k| {
            let m: Vec<Vec<Rational>> = (0..k).map(|i| (0..k).map(|j| s[i + j].clone()).collect()).collect();
            det_exact(&m)
        })
        .collect();
    let all_real = deltas.iter().all(|d| !d.is_negative());
    let distinct_count = deltas.iter().rposition(|d| !d.is_zero()).map_or(0, |i| i + 1);
    Ok(BorchardtHermite { deltas, all_real, distinct_count })
}
