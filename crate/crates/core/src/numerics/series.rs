use crate::error::{Error, Result};
use crate::real::{Mp, Real};

use super::{PrecisionContext, QuadratureResult};

const HARD_CAP: u64 = 1_000_000;

/// Σ_{n≥1} term(n), stopping at the first N whose proven tail bound meets
/// rel_tol·|partial| + abs_tol. The error bound is the tail bound plus a
/// rounding budget for the accumulation.
pub fn sum_with_tail<T, B>(mut term: T, mut tail_bound: B, ctx: &PrecisionContext) -> Result<QuadratureResult>
where
    T: FnMut(u64, &mut Mp) -> Real,
    B: FnMut(u64, &mut Mp) -> Real,
{
    sum_impl(&mut term, &mut |n, mp| (Real::zero(mp.bits()), tail_bound(n, mp)), ctx)
}

/// Like [`sum_with_tail`], but the tail is given as an asymptotic estimate
/// plus a bound on the estimate's remainder; the estimate is added to the sum.
pub fn sum_with_tail_estimate<T, B>(
    mut term: T,
    mut tail: B,
    ctx: &PrecisionContext,
) -> Result<QuadratureResult>
where
    T: FnMut(u64, &mut Mp) -> Real,
    B: FnMut(u64, &mut Mp) -> (Real, Real),
{
    sum_impl(&mut term, &mut tail, ctx)
}

fn sum_impl(
    term: &mut dyn FnMut(u64, &mut Mp) -> Real,
    tail: &mut dyn FnMut(u64, &mut Mp) -> (Real, Real),
    ctx: &PrecisionContext,
) -> Result<QuadratureResult> {
    let mut mp = ctx.mp();
    let mut partial = mp.zero();
    let mut abs_terms = mp.zero();
    let mut abs_partials = mp.zero();
    for n in 1..=HARD_CAP {
        let t = term(n, &mut mp);
        partial = &partial + &t;
        abs_terms = &abs_terms + &t.abs();
        abs_partials = &abs_partials + &partial.abs();
        let (est, bound) = tail(n, &mut mp);
        let total = &partial + &est;
        if bound <= ctx.tolerance(&total, &mp) {
            let rounding = &(&abs_terms.mul_i64(4) + &abs_partials) * &mp.eps();
            return Ok(QuadratureResult {
                value: total,
                error_bound: &bound + &rounding,
                evaluations: n,
            });
        }
    }
    Err(Error::TailNotDecaying { index: HARD_CAP })
}
