use proptest::prelude::*;
use xizero_core::phi::{phi38, phi_eval, phi_ledger, phi_ledger_report, psi_eval, CheckStatus, LEDGER_CHECKS};
use xizero_core::{Mp, PrecisionContext, Real};

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

/// Direct summation of (2π²n⁴e^{9t} − 3πn²e^{5t})exp(−πn²e^{4t}) over
/// n = 1..terms at 512 bits.
fn brute_phi(t: f64, terms: i64) -> Real {
    let mut mp = Mp::new(512);
    let t = mp.f(t);
    let pi = mp.pi();
    let e9 = mp.exp(&t.mul_i64(9));
    let e5 = mp.exp(&t.mul_i64(5));
    let e4 = mp.exp(&t.mul_i64(4));
    let mut s = mp.zero();
    for n in 1..=terms {
        let n2 = mp.int(n * n);
        let a = &(&(&pi * &pi).mul_pow2(1) * &(&n2 * &n2)) * &e9;
        let b = &(&pi.mul_i64(3) * &n2) * &e5;
        let g = mp.exp(&-&(&(&pi * &n2) * &e4));
        if g.is_zero() {
            break;
        }
        s = &s + &(&(&a - &b) * &g);
    }
    s
}

fn rel_err(a: &Real, b: &Real) -> f64 {
    ((a - b).abs() / b.abs()).to_f64()
}

#[test]
fn phi_at_zero_matches_direct_summation() {
    let c = ctx();
    let e = phi_eval(&Real::zero(128), 0, &c).unwrap();
    let oracle = brute_phi(0.0, 10_000);
    assert!(e.value.is_positive());
    assert!(rel_err(&e.value, &oracle) <= c.rel_tol, "{}", rel_err(&e.value, &oracle));
    assert!(e.terms_used <= 6);
}

#[test]
fn tail_bound_covers_discarded_terms() {
    let c = ctx();
    for &t in &[0.0, 0.2, 0.7] {
        let e = phi_eval(&Real::from_f64(t, 128), 0, &c).unwrap();
        let full = brute_phi(t, 200);
        let kept = brute_phi(t, e.terms_used as i64);
        let discarded = (&full - &kept).abs();
        assert!(discarded <= e.tail_bound, "t={t}");
    }
}

#[test]
fn derivatives_match_high_precision_differences() {
    // Centered differences of the 512-bit direct sum with h = 1e-25.
    let h = 1e-25;
    for &t in &[0.1, 0.3, 0.8] {
        let e1 = phi_eval(&Real::from_f64(t, 128), 1, &ctx()).unwrap();
        let e2 = phi_eval(&Real::from_f64(t, 128), 2, &ctx()).unwrap();
        let mp = Mp::new(512);
        let tp = mp.f(t) + mp.f(h);
        let tm = mp.f(t) - mp.f(h);
        let fp = brute_at(&tp);
        let fm = brute_at(&tm);
        let f0 = brute_at(&mp.f(t));
        let hh = mp.f(h);
        let d1 = &(&fp - &fm) / &hh.mul_pow2(1);
        let d2 = &(&(&fp - &f0.mul_pow2(1)) + &fm) / &(&hh * &hh);
        assert!(rel_err(&e1.value, &d1) < 1e-20, "t={t} d1");
        assert!(rel_err(&e2.value, &d2) < 1e-20, "t={t} d2");
    }
}

fn brute_at(t: &Real) -> Real {
    let mut mp = Mp::new(512);
    let pi = mp.pi();
    let e9 = mp.exp(&t.mul_i64(9));
    let e5 = mp.exp(&t.mul_i64(5));
    let e4 = mp.exp(&t.mul_i64(4));
    let mut s = mp.zero();
    for n in 1..=40 {
        let n2 = mp.int(n * n);
        let a = &(&(&pi * &pi).mul_pow2(1) * &(&n2 * &n2)) * &e9;
        let b = &(&pi.mul_i64(3) * &n2) * &e5;
        let g = mp.exp(&-&(&(&pi * &n2) * &e4));
        s = &s + &(&(&a - &b) * &g);
    }
    s
}

#[test]
fn phi_is_even() {
    let c = ctx();
    for i in 0..=15 {
        let t = Real::from_f64(i as f64 / 10.0, 128);
        let p = phi_eval(&t, 0, &c).unwrap();
        let m = phi_eval(&-&t, 0, &c).unwrap();
        let diff = (&p.value - &m.value).abs();
        assert!(diff <= &p.error_bound + &m.error_bound, "t={t} diff={diff:?}");
    }
}

#[test]
fn derivative_negative_at_one() {
    let e = phi_eval(&Real::one(128), 1, &ctx()).unwrap();
    assert!(e.value.is_negative());
    assert!(e.value.abs() > e.error_bound);
}

#[test]
fn derivative_vanishes_at_zero() {
    let e = phi_eval(&Real::zero(128), 1, &ctx()).unwrap();
    let scale = phi_eval(&Real::zero(128), 2, &ctx()).unwrap();
    assert!(e.value.abs().to_f64() <= 1e-28 * scale.value.abs().to_f64());
    assert!(scale.value.is_negative());
}

#[test]
fn positive_on_minus_one_to_three() {
    let c = ctx();
    for i in -4..=12 {
        let t = Real::from_f64(i as f64 / 4.0, 128);
        let e = phi_eval(&t, 0, &c).unwrap();
        assert!(e.value.is_positive() && e.value > e.error_bound, "t={t}");
    }
}

#[test]
fn strictly_decreasing_on_zero_to_three() {
    let c = ctx();
    let vals: Vec<Real> = (0..=12)
        .map(|i| phi_eval(&Real::from_f64(i as f64 / 4.0, 128), 0, &c).unwrap().value)
        .collect();
    for w in vals.windows(2) {
        assert!(w[0] > w[1]);
    }
}

#[test]
fn finite_difference_order_is_two() {
    let c = ctx();
    let t = Real::from_f64(0.4, 128);
    let exact = phi_eval(&t, 1, &c).unwrap().value;
    let err = |h: f64| {
        let hp = Real::from_f64(h, 128);
        let fp = phi_eval(&(&t + &hp), 0, &c).unwrap().value;
        let fm = phi_eval(&(&t - &hp), 0, &c).unwrap().value;
        let d = &(&fp - &fm) / &hp.mul_pow2(1);
        (&d - &exact).abs().to_f64()
    };
    let e1 = err(1e-3);
    let e2 = err(5e-4);
    let order = (e1 / e2).log2();
    assert!(order >= 1.9, "order {order}");
}

#[test]
fn decay_envelope_of_doubled_kernel() {
    // Φ₃₈(t) ≤ K exp(9t/2 − πe^{2t}) with K = 4π² + 1.
    let c = ctx();
    let mut mp = Mp::new(128);
    for &t in &[2.0, 3.0] {
        let tr = mp.f(t);
        let v = phi38(&tr, &c).unwrap().value;
        let pi = mp.pi();
        let e2t = mp.exp(&tr.mul_pow2(1));
        let env = mp.exp(&(&tr.mul_f64(4.5) - &(&pi * &e2t)));
        let k = (&pi * &pi).mul_i64(4).add_f64(1.0);
        assert!(v <= &k * &env, "t={t}");
    }
}

#[test]
fn psi_is_phi_without_first_term() {
    let c = ctx();
    let t = Real::from_f64(0.25, 128);
    let phi = phi_eval(&t, 0, &c).unwrap().value;
    let psi = psi_eval(&t, 0, &c).unwrap().value;
    let a = xizero_core::phi::a_term(&t, 0, &mut Mp::new(192));
    assert!(rel_err(&(&a + &psi), &phi) < 1e-29);
}

#[test]
fn ledger_at_zero_has_positive_turan_expression() {
    let r = phi_ledger(&[Real::zero(128)], &ctx()).unwrap();
    let (_, turan) = r.check("turan_positive")[0];
    assert_eq!(turan.status, CheckStatus::Pass);
    assert!(turan.margin.is_positive());
    let (_, lr) = r.check("log_ratio_decreasing")[0];
    assert_eq!(lr.status, CheckStatus::Skipped);
}

#[test]
fn ledger_phi_below_scaled_first_term() {
    let r = phi_ledger(&[Real::from_f64(0.5, 128)], &ctx()).unwrap();
    let (_, c) = r.check("phi_below_a")[0];
    assert_eq!(c.status, CheckStatus::Pass);
    assert!(c.lhs < c.rhs);
}

#[test]
fn ledger_full_grid_passes() {
    let grid: Vec<Real> = (0..=8).map(|i| Real::from_f64(i as f64 / 4.0, 128)).collect();
    let r = phi_ledger_report(&grid, &ctx()).unwrap();
    assert!(r.all_pass(), "{:?}", r.first_violation());
    for (_, c) in r.check("v_plus_u_lower") {
        assert_eq!(c.status, CheckStatus::Pass);
    }
    assert_eq!(r.points[1].checks.len(), LEDGER_CHECKS.len());
    for (_, c) in r.check("log_ratio_decreasing").into_iter().skip(1) {
        assert_eq!(c.status, CheckStatus::Pass);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn positive_and_decreasing_for_positive_t(t in 0.01f64..2.5) {
        let c = ctx();
        let tr = Real::from_f64(t, 128);
        let v = phi_eval(&tr, 0, &c).unwrap();
        let d = phi_eval(&tr, 1, &c).unwrap();
        prop_assert!(v.value.is_positive());
        prop_assert!(d.value.is_negative());
    }

    #[test]
    fn doubled_kernel_is_exact_rescaling(t in -1.0f64..2.0) {
        let c = ctx();
        let tr = Real::from_f64(t, 128);
        let a = phi38(&tr, &c).unwrap().value;
        let b = phi_eval(&tr.mul_pow2(-1), 0, &c).unwrap().value.mul_pow2(1);
        prop_assert_eq!(a, b);
    }
}
