//! The Riemann Ξ kernel
//!
//! Φ(t) = Σ_{n≥1} (2π²n⁴e^{9t} − 3πn²e^{5t}) exp(−πn²e^{4t})
//!
//! with its first two derivatives, the tail Ψ = Σ_{n≥2}, and a ledger of the
//! explicit inequalities that give (Φ′)² − ΦΦ″ > 0 on t ≥ 0.
//!
//! With y = πe^{4t} and u = n²y the n-th term of the k-th derivative is
//! e^t·u·P_k(u)·e^{−u} where
//!
//! P₀ = 2u − 3, P₁ = −(8u² − 30u + 15), P₂ = 32u³ − 224u² + 330u − 75.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{Estimate, PrecisionContext};
use crate::real::{Mp, Real};

const MAX_TERMS: u64 = 1_000_000;
/// Working precision beyond which negative-t cancellation is reported instead
/// of chased.
const MAX_BITS: usize = 1 << 15;

#[derive(Clone, Debug)]
pub struct PhiEvaluation {
    pub t: Real,
    pub order: u8,
    pub value: Real,
    pub terms_used: u64,
    /// Bound on the discarded terms n > N.
    pub tail_bound: Real,
    /// Tail bound plus accumulated rounding.
    pub error_bound: Real,
}

impl PhiEvaluation {
    pub fn estimate(&self) -> Estimate {
        Estimate::new(self.value.clone(), self.error_bound.clone())
    }
}

fn poly_coeffs(order: u8) -> &'static [i64] {
    match order {
        0 => &[-3, 2],
        1 => &[-15, 30, -8],
        _ => &[-75, 330, -224, 32],
    }
}

/// Sum of |coefficients| of P_k, so |P_k(u)| ≤ S_k u^{k+1} for u ≥ 1.
fn poly_abs_sum(order: u8) -> i64 {
    poly_coeffs(order).iter().map(|c| c.abs()).sum()
}

fn poly_eval(order: u8, u: &Real) -> Real {
    let c = poly_coeffs(order);
    let mut acc = Real::from_i64(c[c.len() - 1], u.prec());
    for &k in c.iter().rev().skip(1) {
        acc = (&acc * u).add_f64(k as f64);
    }
    acc
}

/// y = πe^{4t}.
pub fn y_of(t: &Real, mp: &mut Mp) -> Real {
    let pi = mp.pi();
    &pi * &mp.exp(&t.mul_pow2(2))
}

/// a(t) = a₁(t) and its derivatives in closed form.
pub fn a_term(t: &Real, order: u8, mp: &mut Mp) -> Real {
    let y = y_of(t, mp);
    let e = mp.exp(&(t - &y));
    &(&e * &y) * &poly_eval(order, &y)
}

/// Geometric bound on Σ_{n>N} |e^t u P_k(u) e^{−u}|, or None if the ratio
/// argument does not yet apply at this N.
fn tail_after(n_last: u64, order: u8, y: &Real, et: &Real, mp: &mut Mp) -> Option<Real> {
    let m = order as usize + 2;
    let n1 = n_last + 1;
    let u1 = y.mul_i64((n1 * n1) as i64);
    if u1 < mp.one() {
        return None;
    }
    // r ≥ ((n+1)/n)^{2m} e^{−(2n+1)y} for every n ≥ N+1.
    let growth = mp.ratio(n1 as i64 + 1, n1 as i64).powi(2 * m);
    let r = &growth * &mp.exp(&-&y.mul_i64(2 * n1 as i64 + 1));
    if r >= mp.one() {
        return None;
    }
    let lead = &u1.powi(m) * &mp.exp(&-&u1);
    let b = &(et * &lead).mul_i64(poly_abs_sum(order)) / &(&mp.one() - &r);
    Some(b)
}

struct RawSum {
    value: Real,
    abs_sum: Real,
    rounding: Real,
    tail: Real,
    terms: u64,
}

/// Σ_{n≥start} of order-k terms, stopping once the tail bound is below `target`.
fn kernel_sum(t: &Real, order: u8, start: u64, target: &Real, mp: &mut Mp) -> Result<RawSum> {
    let bits = mp.bits();
    let t = t.with_prec(bits.max(t.prec()));
    let y = y_of(&t, mp);
    let et = mp.exp(&t);
    let q = mp.exp(&-&y);
    let q2 = &q * &q;
    // e^{−n²y} by the recurrence q^{(n+1)²} = q^{n²} q^{2n+1}.
    let mut gauss = mp.exp(&-&y.mul_i64((start * start) as i64));
    let mut step = mp.exp(&-&y.mul_i64(2 * start as i64 + 1));
    let mut value = mp.zero();
    let mut abs_sum = mp.zero();
    let mut rounding = mp.zero();
    let mut n = start;
    loop {
        let u = y.mul_i64((n * n) as i64);
        let term = &(&(&et * &u) * &poly_eval(order, &u)) * &gauss;
        let mag = term.abs();
        // Relative error of the term grows with the recurrence length.
        rounding = &rounding + &(&mag * &mp.eps().mul_i64(4 * (n - start) as i64 + 32));
        abs_sum = &abs_sum + &mag;
        value = &value + &term;
        rounding = &rounding + &(&value.abs() * &mp.eps());
        if n >= start.max(2) {
            if let Some(tail) = tail_after(n, order, &y, &et, mp) {
                if tail <= *target {
                    return Ok(RawSum {
                        value,
                        abs_sum,
                        rounding,
                        tail,
                        terms: n - start + 1,
                    });
                }
            }
        }
        n += 1;
        if n - start >= MAX_TERMS {
            return Err(Error::TailNotDecaying { index: n });
        }
        gauss = &gauss * &step;
        step = &step * &q2;
    }
}

/// Scale of the result used to set the truncation target: the first term at
/// |t| (Φ is even), times u^k for derivatives.
fn magnitude_guess(t: &Real, order: u8, start: u64, mp: &mut Mp) -> Real {
    let at = t.abs();
    let u = y_of(&at, mp).mul_i64((start * start) as i64);
    let e = mp.exp(&(&at - &u));
    (&(&e * &u) * &poly_eval(0, &u)).abs() * u.powi(order as usize)
}

fn series_eval(t: &Real, order: u8, start: u64, ctx: &PrecisionContext) -> Result<PhiEvaluation> {
    if order > 2 {
        return Err(Error::InvalidArgument(alloc::format!("derivative order {order} is not 0, 1 or 2")));
    }
    let mut bits = ctx.bits + 64;
    loop {
        let mut mp = Mp::new(bits);
        let mag = magnitude_guess(t, order, start, &mut mp);
        let target = (&ctx.rel(&mp) * &mag).mul_pow2(-4);
        let raw = kernel_sum(t, order, start, &target, &mut mp)?;
        let error_bound = &raw.tail + &raw.rounding;
        // Relative to the scale of the leading term, not abs_tol: the values
        // can be far below any fixed absolute floor.
        if error_bound <= &ctx.rel(&mp) * &mag {
            return Ok(PhiEvaluation {
                t: t.clone(),
                order,
                value: raw.value.with_prec(ctx.bits),
                terms_used: raw.terms,
                tail_bound: raw.tail,
                error_bound,
            });
        }
        // Cancellation: bits needed to resolve the result under the term sum.
        let lost = ratio_bits(&raw.abs_sum, &mag);
        let next = (ctx.bits + 64 + lost).max(bits * 2);
        if next > MAX_BITS {
            return Err(Error::NoConvergence {
                what: "phi series",
                detail: alloc::format!("cancellation at t = {} needs more than {MAX_BITS} bits", t),
            });
        }
        bits = next.div_ceil(64) * 64;
    }
}

fn ratio_bits(num: &Real, den: &Real) -> usize {
    match (num.exponent(), den.exponent()) {
        (Some(a), Some(b)) if a > b => (a - b) as usize + 8,
        _ => 0,
    }
}

/// Φ^{(order)}(t) for order 0, 1, 2.
pub fn phi_eval(t: &Real, order: u8, ctx: &PrecisionContext) -> Result<PhiEvaluation> {
    series_eval(t, order, 1, ctx)
}

/// Ψ^{(order)}(t) = Σ_{n≥2} of the same terms.
pub fn psi_eval(t: &Real, order: u8, ctx: &PrecisionContext) -> Result<PhiEvaluation> {
    series_eval(t, order, 2, ctx)
}

/// Φ at t ≥ 0 in a caller-owned context, for quadrature inner loops. The
/// truncation target is relative to the leading term.
pub fn phi_fast(t: &Real, mp: &mut Mp) -> Real {
    let mag = magnitude_guess(t, 0, 1, mp);
    let target = &mag * &mp.eps();
    match kernel_sum(t, 0, 1, &target, mp) {
        Ok(r) => r.value,
        Err(_) => mp.zero(),
    }
}

/// The kernel in the normalization Ξ(z) = ∫_{−∞}^{∞} Φ₃₈(t) e^{izt} dt, which
/// is Φ₃₈(t) = 2Φ(t/2).
pub fn phi38(t: &Real, ctx: &PrecisionContext) -> Result<Estimate> {
    let e = phi_eval(&t.mul_pow2(-1), 0, ctx)?;
    Ok(Estimate::new(e.value.mul_pow2(1), e.error_bound.mul_pow2(1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Less,
    LessEq,
    Greater,
    GreaterEq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::LessEq => "<=",
            Relation::Greater => ">",
            Relation::GreaterEq => ">=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The inequality's hypotheses exclude this point.
    Skipped,
}

#[derive(Clone, Debug)]
pub struct LedgerCheck {
    pub name: &'static str,
    pub lhs: Real,
    pub relation: Relation,
    pub rhs: Real,
    /// lhs − rhs.
    pub margin: Real,
    pub status: CheckStatus,
}

#[derive(Clone, Debug)]
pub struct LedgerPoint {
    pub t: Real,
    pub checks: Vec<LedgerCheck>,
}

#[derive(Clone, Debug, Default)]
pub struct LedgerReport {
    pub points: Vec<LedgerPoint>,
}

impl LedgerReport {
    pub fn all_pass(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn first_violation(&self) -> Option<Error> {
        for p in &self.points {
            for c in &p.checks {
                if c.status == CheckStatus::Fail {
                    return Some(Error::InequalityViolated {
                        name: c.name,
                        t: p.t.to_f64(),
                        margin: c.margin.to_f64(),
                    });
                }
            }
        }
        None
    }

    /// (t, check) pairs for one named inequality.
    pub fn check(&self, name: &str) -> Vec<(&Real, &LedgerCheck)> {
        self.points
            .iter()
            .flat_map(|p| p.checks.iter().filter(|c| c.name == name).map(move |c| (&p.t, c)))
            .collect()
    }
}

fn judge(name: &'static str, lhs: Real, relation: Relation, rhs: Real, slack: &Real) -> LedgerCheck {
    let margin = &lhs - &rhs;
    let noise = &(&lhs.abs() + &rhs.abs()) * slack;
    let ok = match relation {
        Relation::Greater | Relation::GreaterEq => margin > noise,
        Relation::Less | Relation::LessEq => margin < -&noise,
    };
    // Non-strict relations also accept equality within the noise.
    let ok = ok
        || (matches!(relation, Relation::GreaterEq | Relation::LessEq) && margin.abs() <= noise);
    LedgerCheck {
        name,
        lhs,
        relation,
        rhs,
        margin,
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
    }
}

fn skipped(name: &'static str, relation: Relation, bits: usize) -> LedgerCheck {
    LedgerCheck {
        name,
        lhs: Real::zero(bits),
        relation,
        rhs: Real::zero(bits),
        margin: Real::zero(bits),
        status: CheckStatus::Skipped,
    }
}

/// Check names in ledger order.
pub const LEDGER_CHECKS: [&str; 11] = [
    "psi_positive",
    "psi_upper",
    "psi_prime_bound",
    "psi_second_bound",
    "phi_positive",
    "phi_below_a",
    "v_lower",
    "u_bound",
    "turan_positive",
    "v_plus_u_lower",
    "log_ratio_decreasing",
];

/// Φ′(s)/(sΦ(s)).
fn log_ratio(s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let p0 = phi_eval(s, 0, ctx)?;
    let p1 = phi_eval(s, 1, ctx)?;
    Ok(&p1.value / &(s * &p0.value))
}

fn ledger_point(t: &Real, ctx: &PrecisionContext) -> Result<LedgerPoint> {
    let bits = ctx.bits + 64;
    // Differences such as (Φ′)² − ΦΦ″ cancel about log₂ y bits, so the
    // inputs are resolved well past ctx.rel_tol.
    let inner = PrecisionContext {
        bits,
        rel_tol: libm::ldexp(1.0, -(bits as i32 - 32)),
        ..ctx.clone()
    };
    let mut mp = Mp::new(bits);
    let t = t.with_prec(bits.max(t.prec()));
    let phi: Vec<Real> = (0..3).map(|k| phi_eval(&t, k, &inner).map(|e| e.value)).collect::<Result<_>>()?;
    let psi: Vec<Real> = (0..3).map(|k| psi_eval(&t, k, &inner).map(|e| e.value)).collect::<Result<_>>()?;
    let a: Vec<Real> = (0..3).map(|k| a_term(&t, k, &mut mp)).collect();
    let y = y_of(&t, &mut mp);
    let et = mp.exp(&t);
    let e4y = mp.exp(&-&y.mul_pow2(2));
    let e3y = mp.exp(&-&y.mul_i64(3));
    let e_y = &mp.exp(&(&t.mul_pow2(1) - &y.mul_pow2(1))) * &y.powi(3);
    let v = &(&a[1] * &a[1]) - &(&a[0] * &a[2]);
    let u = &(&(&a[1] * &psi[1]).mul_pow2(1) - &(&a[2] * &psi[0])) - &(&phi[0] * &psi[2]);
    let turan = &(&phi[1] * &phi[1]) - &(&phi[0] * &phi[2]);
    // Derived quantities lose a few bits to cancellation; judge with a wide
    // noise floor relative to the working precision.
    let slack = Real::pow2(-(ctx.bits as i64) / 2, bits);
    let zero = mp.zero();
    let mut checks = Vec::with_capacity(LEDGER_CHECKS.len());
    checks.push(judge("psi_positive", psi[0].clone(), Relation::Greater, zero.clone(), &slack));
    let b1 = &(&et * &y.powi(2)) * &e4y;
    checks.push(judge("psi_upper", psi[0].clone(), Relation::LessEq, b1.mul_i64(64), &slack));
    let b2 = &(&et * &y.powi(3)) * &e4y;
    checks.push(judge("psi_prime_bound", psi[1].abs(), Relation::LessEq, b2.mul_i64(565), &slack));
    let b3 = &(&(&et * &y.powi(4)) * &e4y).mul_pow2(13) * &mp.ratio(1031, 1000);
    checks.push(judge("psi_second_bound", psi[2].abs(), Relation::LessEq, b3, &slack));
    checks.push(judge("phi_positive", phi[0].clone(), Relation::Greater, zero.clone(), &slack));
    checks.push(judge("phi_below_a", phi[0].clone(), Relation::Less, &a[0] * &mp.ratio(203, 202), &slack));
    checks.push(judge("v_lower", v.clone(), Relation::GreaterEq, e_y.mul_i64(256), &slack));
    let ub = &(&e_y * &e3y) * &y.powi(3);
    checks.push(judge("u_bound", u.abs(), Relation::LessEq, ub.mul_i64(56_424), &slack));
    checks.push(judge("turan_positive", turan, Relation::Greater, zero.clone(), &slack));
    checks.push(judge("v_plus_u_lower", &v + &u, Relation::Greater, e_y.mul_i64(114), &slack));
    // d/dt (Φ′/(tΦ)) < 0 for t > 0, by a centered difference.
    let h = Real::pow2(-(ctx.bits as i64) / 2, bits);
    if t <= h.mul_pow2(1) {
        checks.push(skipped("log_ratio_decreasing", Relation::Less, bits));
    } else {
        let hi_ctx = PrecisionContext {
            bits: 2 * bits,
            rel_tol: libm::ldexp(1.0, -(2 * bits as i32 - 32)),
            ..ctx.clone()
        };
        let gp = log_ratio(&(&t + &h), &hi_ctx)?;
        let gm = log_ratio(&(&t - &h), &hi_ctx)?;
        let d = &(&gp - &gm) / &h.mul_pow2(1);
        let tiny = Real::pow2(-(ctx.bits as i64) / 4, bits);
        checks.push(judge("log_ratio_decreasing", d, Relation::Less, zero, &tiny));
    }
    Ok(LedgerPoint { t, checks })
}

/// Evaluate every ledger inequality at each grid point (t ≥ 0).
pub fn phi_ledger_report(grid: &[Real], ctx: &PrecisionContext) -> Result<LedgerReport> {
    let mut points = Vec::with_capacity(grid.len());
    for t in grid {
        if t.is_negative() {
            return Err(Error::InvalidArgument(alloc::format!("ledger point t = {t} is negative")));
        }
        points.push(ledger_point(t, ctx)?);
    }
    Ok(LedgerReport { points })
}

/// As [`phi_ledger_report`], failing with the first violated inequality.
pub fn phi_ledger(grid: &[Real], ctx: &PrecisionContext) -> Result<LedgerReport> {
    let r = phi_ledger_report(grid, ctx)?;
    match r.first_violation() {
        Some(e) => Err(e),
        None => Ok(r),
    }
}
