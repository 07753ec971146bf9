//! Real-zero isolation: grid scan, Brent refinement, certified brackets.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::real::{Mp, Real};

use super::{Estimate, PrecisionContext, ZeroRecord};

/// Evaluates with escalating precision until the sign is decided.
struct SignOracle<'a, F> {
    f: &'a mut F,
    mps: Vec<Mp>,
    ctx: &'a PrecisionContext,
}

impl<'a, F> SignOracle<'a, F>
where
    F: FnMut(&Real, &mut Mp) -> Result<Estimate>,
{
    fn new(f: &'a mut F, ctx: &'a PrecisionContext) -> Self {
        SignOracle {
            f,
            mps: Vec::new(),
            ctx,
        }
    }

    fn eval(&mut self, x: &Real) -> Result<(Option<i32>, Estimate)> {
        let mut last = None;
        for k in 0..=self.ctx.max_escalations as usize {
            while self.mps.len() <= k {
                let bits = self.ctx.bits << self.mps.len();
                self.mps.push(Mp::new(bits));
            }
            let xk = x.with_prec(x.prec().max(self.ctx.bits << k));
            let est = (self.f)(&xk, &mut self.mps[k])?;
            if let Some(s) = est.sign() {
                return Ok((Some(s), est));
            }
            last = Some(est);
        }
        Ok((None, last.expect("at least one evaluation")))
    }
}

struct Sample {
    x: Real,
    sign: Option<i32>,
    est: Estimate,
}

/// Brackets every sign change of `f` on [lo, hi] seen at `scan_step`, refines
/// each to half-width ≤ abs_tol, and flags simplicity from a centered
/// difference. A local minimum of |f| below abs_tol without a sign change is
/// reported as `SuspectedTangency` rather than guessed.
pub fn isolate_zeros<F>(mut f: F, lo: &Real, hi: &Real, scan_step: &Real, ctx: &PrecisionContext) -> Result<Vec<ZeroRecord>>
where
    F: FnMut(&Real, &mut Mp) -> Result<Estimate>,
{
    if lo >= hi || !scan_step.is_positive() {
        return Err(Error::InvalidArgument("isolate_zeros needs lo < hi and a positive step".into()));
    }
    let mut oracle = SignOracle::new(&mut f, ctx);
    let span = (hi - lo).to_f64();
    let n = libm::ceil(span / scan_step.to_f64()).max(1.0) as u64;
    let mut samples = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        let x = if i == n { hi.clone() } else { lo + &(scan_step * &Real::from_u64(i, ctx.bits)) };
        let (sign, est) = oracle.eval(&x)?;
        samples.push(Sample { x, sign, est });
    }

    let abs_tol = Real::from_f64(ctx.abs_tol, ctx.bits);
    let mut brackets: Vec<(Real, Real)> = Vec::new();
    let mut last: Option<usize> = None;
    for i in 0..samples.len() {
        let Some(s) = samples[i].sign else { continue };
        if let Some(j) = last {
            let sj = samples[j].sign.expect("decided");
            if sj != s {
                brackets.push((samples[j].x.clone(), samples[i].x.clone()));
            } else if i > j + 1 {
                // Undecided samples between equal signs: a double zero or a close pair.
                let found = split_search(&mut oracle, &samples[j].x, &samples[i].x, sj, &abs_tol)?;
                brackets.extend(found);
            }
        }
        last = Some(i);
    }
    // Decided local minima of |f| below abs_tol with no sign change around them.
    for i in 1..samples.len().saturating_sub(1) {
        let (a, b, c) = (&samples[i - 1], &samples[i], &samples[i + 1]);
        let (Some(sa), Some(sb), Some(sc)) = (a.sign, b.sign, c.sign) else {
            continue;
        };
        if sa != sb || sb != sc {
            continue;
        }
        let vb = b.est.value.abs();
        if vb < a.est.value.abs() && vb < c.est.value.abs() && vb <= abs_tol {
            let found = split_search(&mut oracle, &a.x, &c.x, sb, &abs_tol)?;
            brackets.extend(found);
        }
    }
    brackets.sort_by(|p, q| p.0.partial_cmp(&q.0).expect("finite"));
    brackets.dedup_by(|p, q| p.0 == q.0 && p.1 == q.1);

    let mut out = Vec::with_capacity(brackets.len());
    for (a, b) in brackets {
        out.push(refine(&mut oracle, &a, &b, ctx)?);
    }
    Ok(out)
}

/// Refines a single sign-change bracket [a, b].
pub fn refine_bracket<F>(mut f: F, a: &Real, b: &Real, ctx: &PrecisionContext) -> Result<ZeroRecord>
where
    F: FnMut(&Real, &mut Mp) -> Result<Estimate>,
{
    let mut oracle = SignOracle::new(&mut f, ctx);
    refine(&mut oracle, a, b, ctx)
}

/// Looks for sign changes inside (a, b) where both ends have sign `s`,
/// first on a fine grid, then by golden-section minimization of s·f.
fn split_search<F>(oracle: &mut SignOracle<'_, F>, a: &Real, b: &Real, s: i32, abs_tol: &Real) -> Result<Vec<(Real, Real)>>
where
    F: FnMut(&Real, &mut Mp) -> Result<Estimate>,
{
    const FINE: u64 = 32;
    let bits = oracle.ctx.bits;
    let step = &(b - a) / &Real::from_u64(FINE, bits);
    let mut pts: Vec<(Real, Option<i32>, Real)> = Vec::new();
    for i in 0..=FINE {
        let x = a + &(&step * &Real::from_u64(i, bits));
        let (sg, est) = oracle.eval(&x)?;
        pts.push((x, sg, est.value));
    }
    let mut found = Vec::new();
    let mut prev: Option<usize> = None;
    for i in 0..pts.len() {
        if let Some(sg) = pts[i].1 {
            if let Some(j) = prev {
                if pts[j].1 != Some(sg) {
                    found.push((pts[j].0.clone(), pts[i].0.clone()));
                }
            }
            prev = Some(i);
        }
    }
    if !found.is_empty() {
        return Ok(found);
    }
    // Golden-section search on s·f around the smallest sample.
    let (mut imin, mut vmin) = (0usize, None::<Real>);
    for (i, p) in pts.iter().enumerate() {
        let v = p.2.mul_i64(s as i64);
        if vmin.as_ref().is_none_or(|m| v < *m) {
            vmin = Some(v);
            imin = i;
        }
    }
    let lo_i = imin.saturating_sub(1);
    let hi_i = (imin + 1).min(pts.len() - 1);
    let mut lo = pts[lo_i].0.clone();
    let mut hi = pts[hi_i].0.clone();
    let g = Real::from_f64(0.381_966_011_250_105_1, bits);
    let mut best = vmin.expect("nonempty");
    let mut best_x = pts[imin].0.clone();
    for _ in 0..80 {
        let w = &hi - &lo;
        let x1 = &lo + &(&g * &w);
        let x2 = &hi - &(&g * &w);
        let (s1, e1) = oracle.eval(&x1)?;
        let (s2, e2) = oracle.eval(&x2)?;
        for (x, sg) in [(&x1, s1), (&x2, s2)] {
            if sg == Some(-s) {
                return Ok(alloc::vec![(a.clone(), x.clone()), (x.clone(), b.clone())]);
            }
        }
        let v1 = e1.value.mul_i64(s as i64);
        let v2 = e2.value.mul_i64(s as i64);
        if v1 < best {
            best = v1.clone();
            best_x = x1.clone();
        }
        if v2 < best {
            best = v2.clone();
            best_x = x2.clone();
        }
        if v1 < v2 {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    if best <= *abs_tol {
        return Err(Error::SuspectedTangency {
            location: best_x.to_f64(),
            min_abs: best.abs().to_f64(),
        });
    }
    Ok(Vec::new())
}

fn refine<F>(oracle: &mut SignOracle<'_, F>, a0: &Real, b0: &Real, ctx: &PrecisionContext) -> Result<ZeroRecord>
where
    F: FnMut(&Real, &mut Mp) -> Result<Estimate>,
{
    let bits = ctx.bits;
    let tol = Real::from_f64(ctx.abs_tol, bits);
    let eps = Real::pow2(-(bits as i64), 64);
    let (sa, ea) = oracle.eval(a0)?;
    let (sb, eb) = oracle.eval(b0)?;
    let (Some(sa), Some(sb)) = (sa, sb) else {
        return Err(Error::InvalidArgument("bracket ends must have decided signs".into()));
    };
    if sa == sb {
        return Err(Error::InvalidArgument("bracket ends have the same sign".into()));
    }
    // Brent's zeroin, driven by certified signs.
    let (mut a, mut fa) = (a0.clone(), ea.value);
    let (mut b, mut fb) = (b0.clone(), eb.value);
    let (mut c, mut fc) = (a.clone(), fa.clone());
    let mut d = &b - &a;
    let mut e = d.clone();
    let mut undecided_at: Option<Real> = None;
    for _ in 0..400 {
        if fb.signum() == fc.signum() {
            c = a.clone();
            fc = fa.clone();
            d = &b - &a;
            e = d.clone();
        }
        if fc.abs() < fb.abs() {
            a = b.clone();
            b = c.clone();
            c = a.clone();
            fa = fb.clone();
            fb = fc.clone();
            fc = fa.clone();
        }
        let tol1 = &(&eps * &b.abs()).mul_i64(2) + &tol.mul_pow2(-1);
        let xm = (&c - &b).mul_pow2(-1);
        if xm.abs() <= tol1 {
            break;
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = &fb / &fa;
            let (mut p, mut q);
            if a == c {
                p = &xm.mul_i64(2) * &s;
                q = &Real::one(bits) - &s;
            } else {
                let qq = &fa / &fc;
                let r = &fb / &fc;
                let one = Real::one(bits);
                p = &s * &(&(&(&xm.mul_i64(2) * &qq) * &(&qq - &r)) - &(&(&b - &a) * &(&r - &one)));
                q = &(&(&qq - &one) * &(&r - &one)) * &(&s - &one);
            }
            if p.is_positive() {
                q = -q;
            } else {
                p = -p;
            }
            let lim1 = &(&xm.mul_i64(3) * &q) - &(&tol1 * &q).abs();
            let lim2 = (&e * &q).abs();
            if p.mul_i64(2) < lim1.min(&lim2) {
                e = d.clone();
                d = &p / &q;
            } else {
                d = xm.clone();
                e = d.clone();
            }
        } else {
            d = xm.clone();
            e = d.clone();
        }
        a = b.clone();
        fa = fb.clone();
        if d.abs() > tol1 {
            b = &b + &d;
        } else if xm.is_positive() {
            b = &b + &tol1;
        } else {
            b = &b - &tol1;
        }
        let (sg, est) = oracle.eval(&b)?;
        match sg {
            Some(_) => fb = est.value,
            None => {
                undecided_at = Some(b.clone());
                break;
            }
        }
    }
    let (lo, hi) = match undecided_at {
        Some(x) => probe_around(oracle, &x, &a, &c, &tol)?,
        None => {
            if b <= c {
                (b.clone(), c.clone())
            } else {
                (c.clone(), b.clone())
            }
        }
    };
    let location = (&lo + &hi).mul_pow2(-1);
    let bracket_width = (&hi - &lo).mul_pow2(-1);

    // Centered difference for the slope.
    let floor = Real::pow2(-(bits as i64) / 2, 64);
    let scale = location.abs().max(&Real::one(bits));
    let h = bracket_width.mul_i64(4).max(&(&floor * &scale));
    let (sl, el) = oracle.eval(&(&location - &h))?;
    let (sr, er) = oracle.eval(&(&location + &h))?;
    let slope = (&(&er.value - &el.value) / &h.mul_pow2(1)).abs();
    let crosses = matches!((sl, sr), (Some(x), Some(y)) if x != y);
    let simple = crosses && slope > tol;
    Ok(ZeroRecord {
        location,
        bracket_width,
        derivative_magnitude: slope,
        simple,
    })
}

/// When the sign at `x` cannot be decided at the highest precision, widen a
/// symmetric probe until both sides carry opposite certified signs. Falls back
/// to the enclosing bracket [b, c].
fn probe_around<F>(oracle: &mut SignOracle<'_, F>, x: &Real, b: &Real, c: &Real, tol: &Real) -> Result<(Real, Real)>
where
    F: FnMut(&Real, &mut Mp) -> Result<Estimate>,
{
    let mut delta = tol.mul_pow2(-1);
    let span = (b - c).abs().max(tol);
    for _ in 0..200 {
        let lo = x - &delta;
        let hi = x + &delta;
        let (sl, _) = oracle.eval(&lo)?;
        let (sh, _) = oracle.eval(&hi)?;
        if let (Some(p), Some(q)) = (sl, sh) {
            if p != q {
                return Ok((lo, hi));
            }
        }
        if delta > span {
            break;
        }
        delta = delta.mul_pow2(1);
    }
    let (lo, hi) = if b <= c { (b.clone(), c.clone()) } else { (c.clone(), b.clone()) };
    Ok((lo, hi))
}
