mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use xizero_core::moments::moment_table;
use xizero_core::real::rational;
use xizero_core::xi::{
    heat_poly, positive_zeros, sum_rule_report, xi_hat, xi_hat_with, xi_heat, HeatFlow, XiEvalRequest, XiMethod,
};
use xizero_core::{Complex, Error, PrecisionContext, Rational, Real, RealPolynomial};

use common::XiOracle;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn real(x: f64) -> Complex {
    Complex::from_f64(x, 0.0, 128)
}

/// Ŝ(x) from the 512-bit Gauss–Legendre oracle.
const ORACLE_VALUES: [(f64, f64); 5] = [
    (0.0, 6.2140097273539266e-2),
    (5.0, 5.3744817455851294e-2),
    (15.0, 1.580366965740649e-2),
    (28.0, 2.516180552940719e-5),
    (40.0, -4.581928469451182e-6),
];

/// Oracle bisection to 1e-13.
const ORACLE_ZEROS: [f64; 4] = [28.269450283469411, 42.044079277543133, 50.021715160291379, 60.849752251719003];

#[test]
fn value_at_origin_is_first_moment() {
    let v = xi_hat(&real(0.0), XiMethod::Auto, &ctx()).unwrap();
    let b0 = moment_table(0, &ctx()).unwrap().b(0).unwrap().clone();
    assert!(v.value.re.is_positive());
    assert!((&v.value.re - &b0.value).abs() <= &v.error + &b0.error);
}

#[test]
fn even_in_z() {
    for m in [XiMethod::Series, XiMethod::Integral] {
        let a = xi_hat(&real(1.7), m, &ctx()).unwrap();
        let b = xi_hat(&real(-1.7), m, &ctx()).unwrap();
        assert!((&a.value - &b.value).abs() <= &a.error + &b.error, "{m:?}");
    }
}

#[test]
fn values_match_quadrature_oracle() {
    for (x, v) in ORACLE_VALUES {
        let got = xi_hat(&real(x), XiMethod::Auto, &ctx()).unwrap().value.re.to_f64();
        assert!(((got - v) / v).abs() < 1e-14, "x={x}: {got} vs {v}");
    }
}

#[test]
fn methods_agree_on_cross_check_points() {
    for x in [0.0, 5.0, 15.0, 28.0, 40.0] {
        let v = xi_hat(&real(x), XiMethod::Checked, &ctx()).unwrap();
        assert_eq!(v.method, XiMethod::Checked);
        assert!(v.real_estimate().relative_error() < 1e-30, "x={x}");
    }
}

#[test]
fn methods_agree_off_axis() {
    let z = Complex::from_f64(10.0, 0.5, 128);
    let v = xi_hat(&z, XiMethod::Checked, &ctx()).unwrap();
    let w = xi_hat(&z.conj(), XiMethod::Integral, &ctx()).unwrap();
    assert!((&v.value.conj() - &w.value).abs() <= &v.error + &w.error);
    assert!(!v.value.im.is_zero());
}

#[test]
fn strip_is_enforced() {
    let z = Complex::from_f64(3.0, 1.25, 128);
    assert!(matches!(xi_hat(&z, XiMethod::Auto, &ctx()), Err(Error::StripViolation { .. })));
    assert!(matches!(xi_heat(&z, 0.0, &ctx()), Err(Error::StripViolation { .. })));
}

#[test]
fn explicit_series_terms() {
    let mut req = XiEvalRequest::new(real(5.0), XiMethod::Series);
    req.series_terms = Some(40);
    let v = xi_hat_with(&req, &ctx()).unwrap();
    assert_eq!(v.terms, 40);
    assert!(((v.value.re.to_f64() - ORACLE_VALUES[1].1) / ORACLE_VALUES[1].1).abs() < 1e-14);
    // Terms decrease from the start at |z| = 5: a short cut is loose but valid.
    req.series_terms = Some(3);
    let v = xi_hat_with(&req, &ctx()).unwrap();
    assert!((v.value.re.to_f64() - ORACLE_VALUES[1].1).abs() <= v.error.to_f64());
    // At |z| = 28 the terms peak at k = 3; a cut at two has no alternating bound.
    req.z = real(28.0);
    req.series_terms = Some(2);
    assert!(xi_hat_with(&req, &ctx()).is_err());
}

#[test]
fn sign_change_near_first_zero() {
    let a = xi_hat(&real(28.2), XiMethod::Auto, &ctx()).unwrap();
    let b = xi_hat(&real(28.35), XiMethod::Auto, &ctx()).unwrap();
    assert_eq!(a.real_estimate().sign(), Some(1));
    assert_eq!(b.real_estimate().sign(), Some(-1));
}

#[test]
fn zero_counts_in_small_windows() {
    assert!(positive_zeros(20.0, &ctx()).unwrap().is_empty());
    assert_eq!(positive_zeros(30.0, &ctx()).unwrap().len(), 1);
    assert!(positive_zeros(250.0, &ctx()).is_err());
}

#[test]
fn window_62_matches_oracle_zeros() {
    // The oracle finds four sign changes below 62, the fourth at 60.85.
    let z = positive_zeros(62.0, &ctx()).unwrap();
    assert_eq!(z.len(), ORACLE_ZEROS.len());
    for (r, x) in z.iter().zip(ORACLE_ZEROS) {
        assert!(r.simple);
        assert!((r.location.to_f64() - x).abs() < 1e-10);
    }
    assert!(z.windows(2).all(|w| w[0].location < w[1].location));
}

#[test]
fn first_zero_matches_live_oracle() {
    let mut o = XiOracle::new();
    let x = o.bisect(28.2, 28.35, 1e-12);
    let z = positive_zeros(30.0, &ctx()).unwrap();
    assert!((z[0].location.to_f64() - x).abs() < 1e-10);
}

#[test]
fn sum_rule_gap_behaviour() {
    let r = sum_rule_report(10, &ctx()).unwrap();
    assert!(r.gaps[0].value.is_positive());
    assert!(r.gaps[9].value < r.gaps[4].value);
    assert!(r.partials.windows(2).all(|w| w[0].value < w[1].value));
    // Target against the moment ratio computed independently.
    let t = moment_table(1, &ctx()).unwrap();
    let ratio = &t.b(1).unwrap().value / &t.b(0).unwrap().value.mul_pow2(1);
    assert!(((&ratio - &r.target.value).abs() / &ratio).to_f64() < ctx().rel_tol);
    assert!((r.target.value.to_f64() - 5.776248278854743e-3).abs() < 1e-15);
}

#[test]
fn heat_flow_at_zero_is_rescaled_xi_hat() {
    let a = xi_heat(&real(5.0), 0.0, &ctx()).unwrap();
    let b = xi_hat(&real(10.0), XiMethod::Integral, &ctx()).unwrap();
    let eight = Real::from_i64(8, 128);
    assert!((&a.value.re - &(&b.value.re * &eight)).abs() <= &a.error + &(&b.error * &eight));
}

#[test]
fn heat_flow_increases_at_origin() {
    let a = xi_heat(&real(0.0), 0.1, &ctx()).unwrap();
    let b = xi_heat(&real(0.0), 0.0, &ctx()).unwrap();
    assert!(&a.value.re - &b.value.re > &a.error + &b.error);
    assert!(xi_heat(&real(1.0), 1.5, &ctx()).is_err());
}

#[test]
fn heat_flow_does_not_lose_real_zeros() {
    let step = std::f64::consts::PI / 16.0;
    let z0 = HeatFlow::new(0.0, 40.0, &ctx()).unwrap().real_zeros(0.0, 40.0, step).unwrap();
    let z8 = HeatFlow::new(0.125, 40.0, &ctx()).unwrap().real_zeros(0.0, 40.0, step).unwrap();
    assert_eq!(z0.len(), 6);
    assert!(z8.len() >= z0.len());
    // Ξ₀ zeros are half the Ŝ zeros.
    assert!((z0[0].location.to_f64() - ORACLE_ZEROS[0] / 2.0).abs() < 1e-10);
}

#[test]
fn heat_poly_quadratic() {
    // z² + A² with A = 3, λ = 5/7.
    let p = RealPolynomial::from_i64s(&[9, 0, 1]);
    let lam = rational(5, 7);
    let expect = RealPolynomial::new(vec![rational(9, 1) - rational(10, 7), rational(0, 1), rational(1, 1)]);
    assert_eq!(heat_poly(&p, &lam), expect);
    let c = RealPolynomial::from_i64s(&[4]);
    assert_eq!(heat_poly(&c, &lam), c);
}

/// Probabilists' Hermite polynomials from (−1)ⁿe^{z²/2}dⁿ/dzⁿ e^{−z²/2}:
/// differentiating q·e^{−z²/2} gives (q′ − zq)e^{−z²/2}.
fn hermite_by_derivatives(n: usize) -> RealPolynomial {
    let mut q = RealPolynomial::from_i64s(&[1]);
    for _ in 0..n {
        let zq = &RealPolynomial::x() * &q;
        q = &zq - &q.derivative();
    }
    q
}

#[test]
fn hermite_identity_up_to_ten() {
    let c: i64 = 2;
    let lam = rational(c * c, 2);
    for n in 0..=10usize {
        let mut zn = vec![Rational::from_integer(0.into()); n + 1];
        zn[n] = rational(1, 1);
        let lhs = heat_poly(&RealPolynomial::new(zn), &lam);
        let he = hermite_by_derivatives(n);
        let rhs: Vec<Rational> = (0..=n)
            .map(|j| he.coeff(j) * Rational::from_integer(BigInt::from(c).pow((n - j) as u32)))
            .collect();
        assert_eq!(lhs, RealPolynomial::new(rhs), "n={n}");
    }
}

fn small_poly() -> impl Strategy<Value = RealPolynomial> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 1..8)
        .prop_map(|c| RealPolynomial::new(c.into_iter().map(|(p, q)| rational(p, q)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn heat_semigroup(p in small_poly(), a in (-9i64..=9, 1i64..=5), b in (-9i64..=9, 1i64..=5)) {
        let mu = rational(a.0, a.1);
        let nu = rational(b.0, b.1);
        let lhs = heat_poly(&heat_poly(&p, &mu), &nu);
        let rhs = heat_poly(&p, &(&mu + &nu));
        prop_assert_eq!(lhs, rhs);
    }
}
