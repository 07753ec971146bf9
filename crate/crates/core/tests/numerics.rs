use proptest::prelude::*;
use xizero_core::numerics::sanity::{odd_square_sum, sinc_squared_integral};
use xizero_core::numerics::{integrate, isolate_zeros, sum_with_tail, Estimate, Tail, Upper};
use xizero_core::{Mp, PrecisionContext, Real};

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn close(a: &Real, b: &Real, tol: f64) -> bool {
    (a - b).abs().to_f64() <= tol
}

#[test]
fn geometric_series_sums_to_one() {
    let c = ctx();
    let r = sum_with_tail(
        |n, mp: &mut Mp| Real::pow2(-(n as i64), mp.bits()),
        |n, mp: &mut Mp| Real::pow2(-(n as i64), mp.bits()),
        &c,
    )
    .unwrap();
    let one = Real::one(128);
    assert!((&r.value - &one).abs() <= r.error_bound);
    assert!(r.error_bound.to_f64() <= c.rel_tol + c.abs_tol);
}

#[test]
fn zero_series_stops_after_one_term() {
    let r = sum_with_tail(|_, mp: &mut Mp| mp.zero(), |_, mp: &mut Mp| mp.zero(), &ctx()).unwrap();
    assert!(r.value.is_zero());
    assert_eq!(r.evaluations, 1);
}

#[test]
fn integral_of_identity_on_unit_interval() {
    let c = ctx();
    let r = integrate(|t: &Real, _: &mut Mp| t.clone(), &Real::zero(128), &Upper::Finite(Real::one(128)), None, &c).unwrap();
    assert!(close(&r.value, &Real::from_f64(0.5, 128), 1e-35));
    assert!(r.error_bound.to_f64() <= 0.5 * c.rel_tol + c.abs_tol);
}

#[test]
fn infinite_interval_without_tail_is_rejected() {
    let r = integrate(|t: &Real, _: &mut Mp| t.clone(), &Real::zero(128), &Upper::Infinity, None, &ctx());
    assert_eq!(r.unwrap_err(), xizero_core::Error::TailBoundMissing);
}

/// Tolerance driven by rel_tol alone.
fn relative_ctx() -> PrecisionContext {
    PrecisionContext { abs_tol: 1e-45, ..ctx() }
}

#[test]
fn sinc_squared_integral_is_pi() {
    let c = relative_ctx();
    let r = sinc_squared_integral(&c).unwrap();
    let pi = Mp::new(256).pi();
    let err = (&r.value - &pi).abs();
    assert!(err <= r.error_bound, "err {err} bound {}", r.error_bound);
    assert!(err.to_f64() <= c.rel_tol * std::f64::consts::PI);
}

#[test]
fn odd_square_sum_is_one() {
    let c = relative_ctx();
    let r = odd_square_sum(&c).unwrap();
    let err = (&r.value - &Real::one(128)).abs();
    assert!(err <= r.error_bound, "err {err:?} bound {:?} value {:?}", r.error_bound, r.value);
    assert!(err.to_f64() <= c.rel_tol);
}

#[test]
fn exponential_decay_integral_with_bound_tail() {
    // ∫_0^∞ e^{-t} dt = 1 with tail e^{-T}.
    let c = relative_ctx();
    let mut tail = |t: &Real, mp: &mut Mp| mp.exp(&-t);
    let r = integrate(|t: &Real, mp: &mut Mp| mp.exp(&-t), &Real::zero(128), &Upper::Infinity, Some(Tail::Bound(&mut tail)), &c).unwrap();
    assert!(close(&r.value, &Real::one(128), 1e-30));
}

#[test]
fn doubled_precision_stays_inside_error_bound() {
    let c = ctx();
    let f = |t: &Real, mp: &mut Mp| {
        let s = mp.sin(&t.mul_i64(3));
        &s * &mp.exp(&-(t * t))
    };
    let a = Real::zero(128);
    let b = Upper::Finite(Real::from_f64(2.5, 128));
    let lo = integrate(f, &a, &b, None, &c).unwrap();
    let hi = integrate(f, &a, &b, None, &c.with_bits(256)).unwrap();
    assert!((&lo.value - &hi.value).abs() < lo.error_bound.max(&Real::pow2(-120, 64)));
}

fn poly_zero_fn(x: &Real, _: &mut Mp) -> xizero_core::Result<Estimate> {
    Ok(Estimate::rounded(&(x * x) - &Real::one(x.prec())))
}

#[test]
fn square_minus_one_has_single_simple_zero() {
    let c = ctx();
    let z = isolate_zeros(poly_zero_fn, &Real::zero(128), &Real::from_i64(2, 128), &Real::from_f64(0.3, 128), &c).unwrap();
    assert_eq!(z.len(), 1);
    assert!(close(&z[0].location, &Real::one(128), c.abs_tol));
    assert!(z[0].simple);
    assert!(z[0].bracket_width.to_f64() <= c.abs_tol);
}

#[test]
fn sine_zeros_between_one_and_seven() {
    let c = ctx();
    let f = |x: &Real, mp: &mut Mp| Ok(Estimate::rounded(mp.sin(x)));
    let z = isolate_zeros(f, &Real::one(128), &Real::from_i64(7, 128), &Real::from_f64(0.25, 128), &c).unwrap();
    assert_eq!(z.len(), 2);
    let pi = Mp::new(128).pi();
    assert!(close(&z[0].location, &pi, 1e-24));
    assert!(close(&z[1].location, &pi.mul_pow2(1), 1e-24));
}

/// Newton's method on tan x − x at 512 bits.
fn tan_fixed_point_oracle() -> Real {
    let mut mp = Mp::new(512);
    let mut x = mp.f(4.49);
    for _ in 0..60 {
        let s = mp.sin(&x);
        let co = mp.cos(&x);
        let t = &s / &co;
        let g = &t - &x;
        let dg = &t * &t; // sec² − 1 = tan²
        x = &x - &(&g / &dg);
    }
    x
}

#[test]
fn tangent_fixed_point_via_entire_representative() {
    // sin x − x cos x = cos x (tan x − x) is entire and shares the zero.
    let c = ctx();
    let f = |x: &Real, mp: &mut Mp| {
        let s = mp.sin(x);
        let co = mp.cos(x);
        Ok(Estimate::rounded(&s - &(x * &co)))
    };
    let z = isolate_zeros(f, &Real::from_i64(3, 128), &Real::from_i64(5, 128), &Real::from_f64(std::f64::consts::PI / 8.0, 128), &c).unwrap();
    assert_eq!(z.len(), 1);
    let oracle = tan_fixed_point_oracle();
    assert!(close(&z[0].location, &oracle, 1e-24));
    assert!((z[0].location.to_f64() - 4.493409).abs() < 1e-6);
}

#[test]
fn tangency_is_reported_not_guessed() {
    let c = ctx();
    let f = |x: &Real, _: &mut Mp| {
        let d = x.add_f64(-1.0);
        Ok(Estimate::rounded(&d * &d))
    };
    let r = isolate_zeros(f, &Real::zero(128), &Real::from_i64(2, 128), &Real::from_f64(0.25, 128), &c);
    assert!(matches!(r, Err(xizero_core::Error::SuspectedTangency { .. })), "{r:?}");
}

#[test]
fn exact_rational_round_trip() {
    let x = Real::from_f64(-0.1, 128);
    let r = x.to_rational();
    assert_eq!(Real::from_rational(&r, 128), x);
    assert_eq!(xizero_core::real::rational_to_f64(&r), -0.1);
}

#[test]
fn sci_formatting_rounds_mantissa() {
    let mut mp = Mp::new(128);
    let x = mp.f(1234.5678);
    assert_eq!(mp.to_sci(&x, 5), "1.2346e3");
    assert_eq!(mp.to_sci(&mp.f(-0.000999999), 3), "-1e-3");
    assert_eq!(mp.to_sci(&mp.zero(), 3), "0");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn quadrature_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, p in 0.5f64..4.0, q in 0.5f64..4.0) {
        let c = ctx();
        let lo = Real::zero(128);
        let hi = Upper::Finite(Real::from_f64(1.5, 128));
        let f = move |t: &Real, mp: &mut Mp| mp.sin(&t.mul_f64(p));
        let g = move |t: &Real, mp: &mut Mp| mp.exp(&t.mul_f64(-q));
        let h = move |t: &Real, mp: &mut Mp| &f(t, mp).mul_f64(a) + &g(t, mp).mul_f64(b);
        let i_f = integrate(f, &lo, &hi, None, &c).unwrap();
        let i_g = integrate(g, &lo, &hi, None, &c).unwrap();
        let i_h = integrate(h, &lo, &hi, None, &c).unwrap();
        let combo = &i_f.value.mul_f64(a) + &i_g.value.mul_f64(b);
        let bound = &(&i_h.error_bound + &i_f.error_bound.mul_f64(a.abs())) + &i_g.error_bound.mul_f64(b.abs());
        let slack = Real::pow2(-110, 64);
        prop_assert!((&i_h.value - &combo).abs() <= &bound + &slack);
    }
}
