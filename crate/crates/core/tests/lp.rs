use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xizero_core::lp::*;
use xizero_core::moments::borchardt_hermite;
use xizero_core::real::{rational, rational_int};
use xizero_core::{Complex, Error, Mp, PrecisionContext, Real, RealPolynomial};

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn poly(c: &[i64]) -> RealPolynomial {
    RealPolynomial::from_i64s(c)
}

fn fact(n: usize) -> BigRational {
    (1..=n as i64).map(rational_int).fold(BigRational::one(), |a, b| a * b)
}

fn seq(len: usize, f: impl Fn(i64) -> i64) -> TaylorSeq {
    TaylorSeq::from_fn(len, |n| rational_int(f(n as i64))).unwrap()
}

/// Monic polynomial with the given small rational roots, times a nonzero scale.
fn random_real_rooted(rng: &mut ChaCha8Rng, max_deg: usize) -> (RealPolynomial, Vec<BigRational>) {
    let d = rng.gen_range(1..=max_deg);
    let roots: Vec<BigRational> = (0..d).map(|_| rational(rng.gen_range(-12..=12), rng.gen_range(1..=4))).collect();
    let mut scale = rng.gen_range(1..=5);
    if rng.gen_bool(0.5) {
        scale = -scale;
    }
    (RealPolynomial::from_roots(&roots).scale(&rational_int(scale)), roots)
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> RealPolynomial {
    let d = rng.gen_range(1..=max_deg);
    let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
    if c[d] == 0 {
        c[d] = 1;
    }
    poly(&c)
}

/// Real-rooted factor times one conjugate pair a ± bi with b ≠ 0.
fn random_with_pair(rng: &mut ChaCha8Rng) -> RealPolynomial {
    let (p, _) = random_real_rooted(rng, 4);
    let a = rational(rng.gen_range(-6..=6), rng.gen_range(1..=2));
    let b = rational(rng.gen_range(1..=6), rng.gen_range(1..=2));
    let quad = RealPolynomial::new(vec![&a * &a + &b * &b, -(&a * rational_int(2)), BigRational::one()]);
    &p * &quad
}

// --- Jensen polynomials ---------------------------------------------------

#[test]
fn jensen_examples() {
    let ones = seq(8, |_| 1);
    assert_eq!(jensen_poly(&ones, 3, 0).unwrap(), poly(&[1, 3, 3, 1]));
    let cos = TaylorSeq::from_i64s(&[1, 0, -1, 0, 1]).unwrap();
    assert_eq!(jensen_poly(&cos, 2, 0).unwrap(), poly(&[1, 0, -1]));
    // Shifted: γ_{k+1} for cos is (0, −1, 0, 1).
    assert_eq!(jensen_poly(&cos, 2, 1).unwrap(), poly(&[0, -2]));
    assert!(matches!(jensen_poly(&cos, 4, 1), Err(Error::InsufficientData { .. })));
    let g = TaylorSeq::from_i64s(&[1, 2, 3]).unwrap();
    assert_eq!(appell_poly(&g, 2, 0).unwrap(), poly(&[3, 4, 1]));
}

#[test]
fn taylor_seq_needs_two_terms() {
    assert!(TaylorSeq::from_i64s(&[1]).is_err());
    let g = TaylorSeq::from_coefficients(&[rational(1, 1), rational(1, 1), rational(1, 2)]).unwrap();
    assert_eq!(g.gamma(), &[rational_int(1), rational_int(1), rational_int(1)]);
    assert_eq!(g.coefficient(2).unwrap(), rational(1, 2));
}

#[test]
fn jensen_scaled_converges_to_exp() {
    // J_n(e^z; z/n) = (1 + z/n)^n; the maximum of the analytic difference on
    // |z| ≤ 2 is on the boundary circle.
    let bits = 128;
    let mut mp = Mp::new(bits);
    let ones = seq(33, |_| 1);
    let mut prev = f64::INFINITY;
    for n in [8usize, 16, 32] {
        let j = jensen_poly(&ones, n, 0).unwrap();
        let mut sup: f64 = 0.0;
        for k in 0..128 {
            let ang = &mp.pi().mul_pow2(1) * &mp.ratio(k, 128);
            let z = mp.cis(&ang).scale(&mp.int(2));
            let w = z.scale(&mp.ratio(1, n as i64));
            let diff = &j.eval_complex(&w) - &mp.cexp(&z);
            sup = sup.max(diff.abs().to_f64());
        }
        assert!(sup < prev, "n={n} sup={sup}");
        prev = sup;
    }
    assert!(prev < 0.5);
}

// --- Sturm counting -------------------------------------------------------

#[test]
fn sturm_examples() {
    assert_eq!(sturm_count(&poly(&[-1, 0, 1]), &rational_int(-2), &rational_int(2)), 2);
    assert_eq!(sturm_count(&poly(&[1, 0, 1]), &rational_int(-10), &rational_int(10)), 0);
    let roots: Vec<BigRational> = (1..=8).map(rational_int).collect();
    let w = RealPolynomial::from_roots(&roots);
    assert_eq!(sturm_count(&w, &rational_int(0), &rational_int(9)), 8);
    // Half-open: a root at a is excluded, at b included.
    assert_eq!(sturm_count(&w, &rational_int(1), &rational_int(3)), 2);
    assert_eq!(sturm_count(&w, &rational(1, 2), &rational_int(1)), 1);
}

#[test]
fn multiplicity_counting() {
    let p = &(&poly(&[-1, 1]) * &poly(&[-1, 1])) * &poly(&[1, 0, 1]);
    assert_eq!(distinct_real_roots(&p), 1);
    assert_eq!(real_root_count(&p), 2);
    assert!(!has_only_real_zeros(&p));
    assert_eq!(nonreal_count(&p), 2);
    assert!(has_only_real_zeros(&poly(&[0, 0, 0, 1])));
    assert!(has_only_real_zeros(&poly(&[5])));
}

#[test]
fn sturm_matches_constructed_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let (p, roots) = random_real_rooted(&mut rng, 7);
        let a = rational(rng.gen_range(-15..=15), 3);
        let b = &a + rational(rng.gen_range(0..=20), 2);
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        let expect = distinct.iter().filter(|r| **r > a && **r <= b).count();
        assert_eq!(sturm_count(&p, &a, &b), expect);
        assert_eq!(real_root_count(&p), roots.len());
    }
}

#[test]
fn borchardt_hermite_agrees_with_sturm() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..200 {
        let p = if i % 2 == 0 {
            random_poly(&mut rng, 6)
        } else {
            random_real_rooted(&mut rng, 6).0
        };
        let bh = borchardt_hermite(&p).unwrap();
        assert_eq!(bh.all_real, has_only_real_zeros(&p), "{p:?}");
        assert_eq!(Some(bh.distinct_count), p.square_free_part().degree(), "{p:?}");
    }
}

// --- multiplier sequences and Turán ---------------------------------------

#[test]
fn multiplier_sequence_fixtures() {
    let n = 8;
    let pass = |g: &TaylorSeq| multiplier_sequence_test(g, n).unwrap();
    assert!(pass(&seq(n + 1, |_| 1)).pass);
    assert!(pass(&seq(n + 1, |k| if k % 2 == 0 { 1 } else { -1 })).pass);
    assert!(pass(&seq(n + 1, |k| k)).pass);
    // z² e^z: γ_n = n(n − 1).
    assert!(pass(&seq(n + 1, |k| k * (k - 1))).pass);
    assert!(pass(&seq(n + 1, |k| -1 + k + k * k)).pass);
    // e^{−z²/2}: 1, 0, −1, 0, 3, 0, −15, 0, 105.
    assert!(pass(&TaylorSeq::from_i64s(&[1, 0, -1, 0, 3, 0, -15, 0, 105]).unwrap()).pass);
    assert!(pass(&TaylorSeq::from_i64s(&[1, 0, -1, 0, 1, 0, -1, 0, 1]).unwrap()).pass);
    assert!(pass(&TaylorSeq::from_i64s(&[0, 1, 0, -1, 0, 1, 0, -1, 0]).unwrap()).pass);
    // f(n) for f with negative zeros only.
    assert!(pass(&seq(n + 1, |k| (k + 1) * (k + 3))).pass);
    let inv_fact = TaylorSeq::from_fn(n + 1, |k| BigRational::one() / fact(k)).unwrap();
    assert!(pass(&inv_fact).pass);
}

#[test]
fn multiplier_sequence_failures() {
    // (z² + 1)e^z: γ_n = 1 + n(n − 1); J_1 = 1 + z, J_2 = 1 + 2z + 3z².
    let r = multiplier_sequence_test(&seq(9, |k| 1 + k * (k - 1)), 8).unwrap();
    assert!(!r.pass);
    assert_eq!(r.first_failure, Some(2));
    // 1, 0, 1: J_2 = 1 + z².
    let r = multiplier_sequence_test(&TaylorSeq::from_i64s(&[1, 0, 1]).unwrap(), 2).unwrap();
    assert_eq!(r.first_failure, Some(2));
    assert!(multiplier_sequence_test(&seq(4, |_| 1), 4).is_err());
}

#[test]
fn strict_action_and_composition() {
    // {−1 + n + n²} sends (1 + z)² to −1 + 2z + 5z², whose zeros have opposite signs.
    let g = seq(9, |k| -1 + k + k * k);
    let out = apply_sequence(&g, &poly(&[1, 2, 1])).unwrap();
    assert_eq!(out, poly(&[-1, 2, 5]));
    assert_eq!(sturm_count(&out, &rational_int(-1), &rational_int(0)), 1);
    assert_eq!(sturm_count(&out, &rational_int(0), &rational_int(1)), 1);
    let inv_fact = TaylorSeq::from_fn(11, |k| BigRational::one() / fact(k)).unwrap();
    let other = seq(11, |k| (k + 1) * (k + 2));
    assert!(multiplier_sequence_test(&other, 10).unwrap().pass);
    let prod = inv_fact.componentwise(&other);
    assert!(multiplier_sequence_test(&prod, 10).unwrap().pass);
}

/// Brute-force Taylor data of (z² + 1)e^z from the product of the two series.
fn z2_plus_one_exp(len: usize) -> Vec<BigRational> {
    let a = [rational_int(1), rational_int(0), rational_int(1)];
    (0..len)
        .map(|n| {
            let mut c = BigRational::zero();
            for (k, ak) in a.iter().enumerate() {
                if k <= n {
                    c += ak / fact(n - k);
                }
            }
            c * fact(n)
        })
        .collect()
}

#[test]
fn turan_examples() {
    // Hermite values at 0: H₀ = 1, H₁ = 0, H₂ = −2.
    let h = TaylorSeq::from_i64s(&[1, 0, -2]).unwrap();
    assert_eq!(turan_check(&h).unwrap(), vec![rational_int(2)]);
    assert_eq!(turan_check(&seq(3, |_| 1)).unwrap(), vec![rational_int(0)]);
    assert!(turan_check(&TaylorSeq::from_i64s(&[1, 1]).unwrap()).is_err());
    let g = TaylorSeq::new(z2_plus_one_exp(8)).unwrap();
    assert_eq!(g.gamma()[..4], [rational_int(1), rational_int(1), rational_int(3), rational_int(7)]);
    let t = turan_check(&g).unwrap();
    assert_eq!(t[0], rational_int(-2));
    assert!(t.iter().any(|d| d.is_negative()));
}

// --- Hermite–Poulain and Laguerre -----------------------------------------

#[test]
fn hermite_poulain_examples() {
    assert_eq!(hermite_poulain(&poly(&[1, 1]), &poly(&[-1, 0, 1])).unwrap(), poly(&[-1, 2, 1]));
    let p = poly(&[3, -1, 4, 1, 5]);
    assert_eq!(hermite_poulain(&poly(&[1]), &p).unwrap(), p);
    let q = hermite_poulain(&poly(&[1, 1]), &poly(&[1, 0, 1])).unwrap();
    assert_eq!(q, poly(&[1, 2, 1]));
    assert_eq!(real_root_count(&q), 2);
    assert!(matches!(hermite_poulain(&poly(&[1, 0, 1]), &p), Err(Error::NonRealMultiplier)));
}

#[test]
fn hermite_poulain_monotone_over_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut degree_kept = 0;
    for _ in 0..500 {
        let (a, a_roots) = random_real_rooted(&mut rng, 3);
        let p = random_poly(&mut rng, 6);
        let q = hermite_poulain(&a, &p).unwrap();
        assert!(nonreal_count(&q) <= nonreal_count(&p), "a={a:?} p={p:?}");
        // With a(0) = 0 the degree drops and real roots can be lost with it.
        if a_roots.iter().all(|r| !r.is_zero()) {
            degree_kept += 1;
            assert!(real_root_count(&q) >= real_root_count(&p), "a={a:?} p={p:?}");
        }
    }
    assert!(degree_kept > 400);
}

#[test]
fn laguerre_examples() {
    let q = poly(&[-2, 1]);
    let c = [rational_int(1), rational_int(2), rational_int(1)];
    assert_eq!(laguerre_transform(&q, &c, 1).unwrap(), poly(&[-2, -2]));
    let c = [rational_int(1), rational_int(1)];
    assert_eq!(laguerre_transform(&poly(&[1, 1]), &c, 1).unwrap(), poly(&[1, 2]));
    let cube: Vec<BigRational> = [1, 3, 3, 1].iter().map(|&v| rational_int(v)).collect();
    let t = laguerre_transform(&poly(&[-5, 1]), &cube, 3).unwrap();
    assert_eq!(t, poly(&[-5, -12, -9, -2]));
    assert!(has_only_real_zeros(&t));
    assert!(matches!(
        laguerre_transform(&poly(&[-2, 1]), &cube, 3),
        Err(Error::ZeroInExclusionInterval { d: 3 })
    ));
    assert!(matches!(
        laguerre_transform(&poly(&[0, 1]), &cube, 3),
        Err(Error::ZeroInExclusionInterval { .. })
    ));
    assert!(laguerre_transform(&poly(&[1, 0, 1]), &cube, 3).is_err());
}

#[test]
fn laguerre_never_adds_nonreal_zeros() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let p = random_poly(&mut rng, 6);
        let d = p.degree().unwrap();
        // Q with zeros in (−∞, 0) ∪ (d, ∞).
        let k = rng.gen_range(1..=3);
        let roots: Vec<BigRational> = (0..k)
            .map(|_| {
                let off = rational(rng.gen_range(1..=12), rng.gen_range(1..=3));
                if rng.gen_bool(0.5) {
                    -off
                } else {
                    rational_int(d as i64) + off
                }
            })
            .collect();
        let q = RealPolynomial::from_roots(&roots);
        let t = laguerre_transform(&q, p.coeffs(), d).unwrap();
        assert_eq!(t.degree(), Some(d));
        assert!(nonreal_count(&t) <= nonreal_count(&p), "q={q:?} p={p:?}");
    }
}

// --- L_n functionals ------------------------------------------------------

#[test]
fn l_functional_examples() {
    assert_eq!(l_functional(&poly(&[1, 0, 1]), 1, &rational_int(0)), rational_int(-2));
    assert_eq!(l_functional(&poly(&[-1, 1]), 0, &rational_int(3)), rational_int(4));
    let p = poly(&[2, -3, 0, 1]);
    let t = rational(5, 7);
    assert_eq!(l_functional(&p, 0, &t), p.eval(&t) * p.eval(&t));
}

#[test]
fn l_functional_of_truncated_series() {
    // (z² + 1)e^z truncated at degree 12; L₁ = 2(t² − 1)e^{2t}.
    let g = z2_plus_one_exp(13);
    let c: Vec<BigRational> = g.iter().enumerate().map(|(n, gn)| gn / fact(n)).collect();
    let p = RealPolynomial::new(c);
    let mut mp = Mp::new(128);
    for (num, den) in [(-3, 2), (-1, 2), (0, 1), (1, 2), (3, 4), (5, 4), (3, 2)] {
        let t = rational(num, den);
        let l = l_functional(&p, 1, &t);
        let tf = num as f64 / den as f64;
        let expect = 2.0 * (tf * tf - 1.0) * mp.exp(&mp.f(2.0 * tf)).to_f64();
        let got = Real::from_rational(&l, 128).to_f64();
        // Dropping degrees above 12 costs about 1e-4 relative at |t| = 3/2.
        assert!((got - expect).abs() <= 2e-3 * expect.abs().max(0.5), "t={tf} got {got} expect {expect}");
        assert_eq!(l.is_positive(), tf.abs() > 1.0, "t={tf}");
    }
}

#[test]
fn l_functional_matches_abs_square_coefficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..60 {
        let p = random_poly(&mut rng, 7);
        let t = rational(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        for n in 0..=3 {
            assert_eq!(l_functional(&p, n, &t), abs_square_coefficient(&p, n, &t), "p={p:?} n={n}");
        }
    }
}

fn grid() -> Vec<BigRational> {
    (0..41).map(|i| rational(i - 20, 10)).collect()
}

#[test]
fn l_functional_nonnegative_for_real_rooted() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let (p, _) = random_real_rooted(&mut rng, 6);
        for t in grid() {
            for n in 0..=3 {
                assert!(!l_functional(&p, n, &t).is_negative(), "p={p:?} n={n} t={t}");
            }
        }
    }
}

#[test]
fn l_functional_probe_with_conjugate_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut found = 0;
    for _ in 0..50 {
        let p = random_with_pair(&mut rng);
        let hit = grid()
            .iter()
            .any(|t| (1..=3).any(|n| l_functional(&p, n, t).is_negative()));
        if hit {
            found += 1;
        } else {
            eprintln!("no negative L_n on the grid for {p:?}");
        }
    }
    eprintln!("negative L_n found for {found}/50");
}

// --- Jensen disks and shifted sums ----------------------------------------

fn near(z: &Complex, re: f64, im: f64, tol: f64) -> bool {
    let (a, b) = z.to_f64();
    (a - re).abs() < tol && (b - im).abs() < tol
}

#[test]
fn jensen_disks_specimen() {
    let p = poly(&[0, 130, 35, 5, -5, 1]);
    let r = jensen_disks(&p, &ctx()).unwrap();
    assert_eq!(r.roots.len(), 5);
    for (re, im) in [(0.0, 0.0), (-1.5509, 1.6771), (-1.5509, -1.6771), (4.0509, 2.9160), (4.0509, -2.9160)] {
        assert!(r.roots.iter().any(|z| near(z, re, im, 1e-4)), "missing {re}+{im}i");
    }
    assert_eq!(r.disks.len(), 2);
    assert_eq!(r.critical_points.len(), 4);
    for (re, im) in [(-1.0, 1.0), (-1.0, -1.0), (3.0, 2.0), (3.0, -2.0)] {
        assert!(r.critical_points.iter().any(|z| near(z, re, im, 1e-20)));
    }
    assert!(r.all_contained());
    let small = r.disks.iter().find(|d| d.center.to_f64() < 0.0).unwrap();
    let mu = Complex::from_f64(-1.0, 1.0, 128);
    assert!(small.contains(&mu, &Real::zero(128)));
}

#[test]
fn jensen_disks_small_cases() {
    let r = jensen_disks(&RealPolynomial::from_roots(&[rational_int(-1), rational_int(2), rational_int(5)]), &ctx()).unwrap();
    assert!(r.disks.is_empty() && r.critical_points.is_empty());
    let r = jensen_disks(&poly(&[0, 1, 0, 1]), &ctx()).unwrap();
    assert_eq!(r.disks.len(), 1);
    assert!(r.disks[0].center.to_f64().abs() < 1e-30);
    assert!((r.disks[0].radius.to_f64() - 1.0).abs() < 1e-30);
    let s = 1.0 / 3f64.sqrt();
    assert!(r.critical_points.iter().any(|z| near(z, 0.0, s, 1e-15)));
    assert!(r.all_contained());
}

#[test]
fn jensen_containment_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..100 {
        let p = random_poly(&mut rng, 7);
        let r = jensen_disks(&p, &ctx()).unwrap();
        assert_eq!(r.roots.len(), p.degree().unwrap());
        assert!(r.all_contained(), "p={p:?}");
    }
}

#[test]
fn repeated_roots_are_found() {
    let p = &(&poly(&[1, 0, 1]) * &poly(&[1, 0, 1])) * &poly(&[-2, 1]);
    let roots = complex_roots(&p, &ctx()).unwrap();
    assert_eq!(roots.len(), 5);
    assert_eq!(roots.iter().filter(|z| near(z, 0.0, 1.0, 1e-20)).count(), 2);
    assert_eq!(roots.iter().filter(|z| near(z, 2.0, 0.0, 1e-20)).count(), 1);
}

#[test]
fn shifted_sum_examples() {
    let lam = rational(3, 2);
    assert_eq!(shifted_sum(&poly(&[0, 1]), &lam), poly(&[0, 2]));
    let q = shifted_sum(&poly(&[0, 0, 1]), &lam);
    assert_eq!(q, RealPolynomial::new(vec![-(&lam * &lam) * rational_int(2), rational_int(0), rational_int(2)]));
    assert_eq!(q.eval(&lam), BigRational::zero());
    // z³ with λ = 1: 2(z − √3)z(z + √3).
    let c = shifted_sum(&poly(&[0, 0, 0, 1]), &rational_int(1));
    assert_eq!(c, poly(&[0, -6, 0, 2]));
    let roots = complex_roots(&c, &ctx()).unwrap();
    let s3 = 3f64.sqrt();
    for (z, e) in roots.iter().zip([-s3, 0.0, s3]) {
        assert!(near(z, e, 0.0, 1e-15));
    }
}

#[test]
fn shifted_sum_keeps_real_zeros() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..200 {
        let (p, _) = random_real_rooted(&mut rng, 8);
        let lam = rational(rng.gen_range(1..=8), rng.gen_range(1..=4));
        let q = shifted_sum(&p, &lam);
        assert!(q.is_zero() || has_only_real_zeros(&q), "p={p:?} λ={lam}");
    }
}

#[test]
fn shifted_sum_zeros_in_shrunken_disks() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..40 {
        let p = random_with_pair(&mut rng);
        let lam = rational(1, rng.gen_range(2..=6));
        let r = shifted_sum_disk_check(&p, &lam, &ctx()).unwrap();
        assert!(r.all_contained(), "p={p:?} λ={lam}");
    }
}

// --- growth and canonical products ----------------------------------------

#[test]
fn growth_of_exp() {
    let mut mp = Mp::new(256);
    let c: Vec<Real> = (0..=64u64)
        .map(|n| {
            let l = mp.ln_factorial(n);
            mp.exp(&-l)
        })
        .collect();
    let g = growth_estimates(&c, 64).unwrap();
    assert_eq!(g.window, (32, 64));
    assert!((g.order - 1.0).abs() < 0.05, "{g:?}");
    assert!((g.type_ - 1.0).abs() < 0.05, "{g:?}");
}

#[test]
fn growth_of_zero_order() {
    let mut mp = Mp::new(256);
    let c: Vec<Real> = (0..=64i64).map(|n| mp.exp(&mp.int(-n * n))).collect();
    let g = growth_estimates(&c, 64).unwrap();
    assert!(g.order.abs() < 0.05, "{g:?}");
}

#[test]
fn growth_of_order_two_type_three() {
    let mut mp = Mp::new(256);
    // (ρeτ/n)^{n/ρ} with ρ = 2, τ = 3.
    let e6 = mp.exp(&mp.one()).mul_i64(6);
    let c: Vec<Real> = (0..=64i64)
        .map(|n| {
            if n == 0 {
                return mp.one();
            }
            let base = e6.div_i64(n);
            let l = mp.ln(&base);
            mp.exp(&l.mul_i64(n).div_i64(2))
        })
        .collect();
    let g = growth_estimates(&c, 64).unwrap();
    assert!((g.order - 2.0).abs() < 0.05, "{g:?}");
    assert!((g.type_ - 3.0).abs() < 0.05, "{g:?}");
    assert!((g.type_ratio_sup - 3.0).abs() < 0.05, "{g:?}");
    assert!(growth_estimates(&c, 8).is_err());
}

#[test]
fn convergence_exponent_of_integers() {
    // r_n = n²: κ = 1/2.
    let radii: Vec<f64> = (1..=4096).map(|n| (n * n) as f64).collect();
    let k = convergence_exponent_estimate(&radii).unwrap();
    assert!((k - 0.5).abs() < 1e-12);
    assert!(convergence_exponent_estimate(&radii[..4]).is_err());
}

#[test]
fn sine_product_at_half() {
    let c = ctx();
    let bits = c.bits;
    let mut zeros = Vec::new();
    for n in 1..=500i64 {
        zeros.push(Complex::from_f64(n as f64, 0.0, bits));
        zeros.push(Complex::from_f64(-n as f64, 0.0, bits));
    }
    let z = Complex::from_f64(0.5, 0.0, bits);
    let v = canonical_product(&zeros, 0, &z, &c).unwrap();
    let mut mp = Mp::new(bits);
    let target = &mp.int(2) / &mp.pi();
    // ∏_{n>500}(1 − 1/(4n²)) ∈ [1 − 1/2000, 1].
    let tail_lo = 1.0 - 1.0 / 2000.0;
    assert!(v.re >= target && v.re.to_f64() <= target.to_f64() / tail_lo);
    assert!(v.im.is_zero());
    // Genus one pairs ±n the same way.
    let v1 = canonical_product(&zeros, 1, &z, &c).unwrap();
    assert!((&v1.re - &v.re).abs().to_f64() < 1e-30);
}

#[test]
fn primary_factor_checks() {
    let c = ctx();
    let mut mp = Mp::new(c.bits);
    for p in 0..=2 {
        let e0 = primary_factor(&Complex::zero(c.bits), p, &mut mp);
        assert_eq!(e0.to_f64(), (1.0, 0.0));
    }
    let u = Complex::from_f64(0.3, 0.0, c.bits);
    let e = primary_factor(&u, 2, &mut mp);
    let dev = (&e - &Complex::one(c.bits)).abs().to_f64();
    assert!(dev <= 0.3f64.powi(3), "{dev}");
    let u = Complex::from_f64(0.2, -0.25, c.bits);
    for p in 0..=2 {
        let dev = (&primary_factor(&u, p, &mut mp) - &Complex::one(c.bits)).abs().to_f64();
        assert!(dev <= u.abs().to_f64().powi(p as i32 + 1));
    }
    assert!(matches!(
        canonical_product(&[Complex::zero(c.bits)], 0, &u, &c),
        Err(Error::ZeroAtOrigin)
    ));
    assert!(canonical_product(&[u.clone()], 3, &u, &c).is_err());
}
