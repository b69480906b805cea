//! Values checked against independent computations: exact rational
//! arithmetic, closed forms and the figure fixtures.

use alphasectors::model::{truncate_series, Normalization, DEFAULT_POLE_TOL};
use alphasectors::special::*;
use alphasectors::theorems::{predict_first_location, FirstPointForecast};
use alphasectors::{alpha_points, FunctionSpec, SectorIndex, SeriesFunction, SolveOptions, StructuredFunction};
use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn fig1() -> StructuredFunction {
    StructuredFunction::rational(-1, 3, vec![0.1, 1.0, 4.0], vec![1.0, 5.0]).unwrap()
}

fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[test]
fn fig1_value_at_half_in_exact_arithmetic() {
    let r = |n: i64, d: i64| Rational64::new(n, d);
    let z = r(1, 2);
    let u = z * z * z;
    let monic = (u + r(1, 10)) * (u + r(1, 1)) * (u + r(4, 1)) / (z * (u - r(1, 1)) * (u - r(5, 1)));
    let unit = (r(1, 1) + u * r(10, 1)) * (r(1, 1) + u) * (r(1, 1) + u / r(4, 1)) / (z * (r(1, 1) - u) * (r(1, 1) - u / r(5, 1)));
    assert_eq!(monic, r(4455, 728) * r(2, 25));
    let g = fig1().evaluate_g(c(0.5, 0.0), DEFAULT_POLE_TOL).unwrap().finite().unwrap();
    assert!((g - to_f64(monic)).norm() <= 1e-14 * to_f64(monic));
    let gu = fig1().with_normalization(Normalization::Unit).evaluate_g(c(0.5, 0.0), DEFAULT_POLE_TOL).unwrap().finite().unwrap();
    assert!((gu - to_f64(unit)).norm() <= 1e-14 * to_f64(unit));
}

#[test]
fn fig1_caption_polynomial() {
    let p = fig1().to_polynomial(c(-1.0, -1.0)).unwrap();
    let one_i = c(1.0, 1.0);
    let want = [
        c(0.4, 0.0),
        5.0 * one_i,
        c(0.0, 0.0),
        c(4.5, 0.0),
        -6.0 * one_i,
        c(0.0, 0.0),
        c(5.1, 0.0),
        one_i,
        c(0.0, 0.0),
        c(1.0, 0.0),
    ];
    assert_eq!(p.len(), want.len());
    for (got, w) in p.iter().zip(&want) {
        assert!((got - w).norm() <= 1e-12 * w.norm().max(1e-300), "{got} vs {w}");
    }
}

/// `z^max(p,0) prod(z^k + a) - alpha z^max(-p,0) prod(z^k - b)` evaluated directly.
fn direct(p: i64, k: u32, a: &[f64], b: &[f64], alpha: Complex64, z: Complex64) -> Complex64 {
    let u = z.powi(k as i32);
    let n: Complex64 = a.iter().map(|&x| u + x).product();
    let d: Complex64 = b.iter().map(|&x| u - x).product();
    z.powi(p.max(0) as i32) * n - alpha * z.powi((-p).max(0) as i32) * d
}

#[test]
fn polynomial_matches_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let k = rng.gen_range(2..6u32);
        let p = loop {
            let p: i64 = rng.gen_range(-5..=5);
            if p != 0 && alphasectors::sector::gcd(p, k as i64) == 1 {
                break p;
            }
        };
        let a: Vec<f64> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0.1..5.0)).collect();
        let b: Vec<f64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0.1..5.0)).collect();
        let f = StructuredFunction::rational(p, k, a.clone(), b.clone()).unwrap();
        let alpha = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let poly = f.to_polynomial(alpha).unwrap();
        let z = Complex64::from_polar(rng.gen_range(0.2..1.5), rng.gen_range(-PI..PI));
        let got = alphasectors::poly::horner(&poly, z);
        let want = direct(p, k, &a, &b, alpha, z);
        let scale: f64 = poly.iter().map(|x| x.norm()).sum::<f64>() * z.norm().max(1.0).powi(poly.len() as i32);
        assert!((got - want).norm() <= 1e-12 * scale, "p={p} k={k}: {got} vs {want}");
    }
}

#[test]
fn points_solve_the_equation() {
    let f = fig1();
    let alpha = c(-1.0, -1.0);
    let pts = alpha_points(&f.clone().into(), alpha, 10.0, &SolveOptions::default()).unwrap();
    assert_eq!(pts.len(), 9);
    for p in &pts {
        let v = f.evaluate_g(p.value, DEFAULT_POLE_TOL).unwrap().finite().unwrap();
        assert!((v - alpha).norm() < 1e-10, "G({}) = {v}", p.value);
    }
}

fn e(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

#[test]
fn fig2_forecasts() {
    let fa = StructuredFunction::rational(1, 3, vec![1.0, 3.0, 4.0], vec![1.0, 5.0]).unwrap();
    let fb = StructuredFunction::rational(-1, 3, vec![1.0, 3.0, 4.0], vec![1.0, 5.0]).unwrap();
    let s = |j| SectorIndex::new(j, 3);
    let tol = 1e-9;
    assert_eq!(predict_first_location(&fa, e(2.0 * PI / 3.0), tol).unwrap(), FirstPointForecast::PositiveRay { ray: s(2) });
    assert_eq!(predict_first_location(&fa, e(PI / 2.0), tol).unwrap(), FirstPointForecast::InteriorSector { sector: s(1) });
    assert!(matches!(predict_first_location(&fa, e(PI / 3.0), tol).unwrap(), FirstPointForecast::RayPairPossible { .. }));
    assert_eq!(predict_first_location(&fb, e(PI / 3.0), tol).unwrap(), FirstPointForecast::PositiveRay { ray: s(5) });
    assert_eq!(predict_first_location(&fb, e(PI / 2.0), tol).unwrap(), FirstPointForecast::InteriorSector { sector: s(4) });
    match predict_first_location(&fb, e(2.0 * PI / 3.0), tol).unwrap() {
        FirstPointForecast::RayPairPossible { sectors, .. } => {
            let mut v = [sectors[0].s, sectors[1].s];
            v.sort();
            assert_eq!(v, [3, 4]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn disturbed_exp_examples() {
    let q = c(0.3, 0.4);
    let v = disturbed_exp_coeffs(q, 3);
    assert_eq!(v[..3], [c(1.0, 0.0), c(1.0, 0.0), q / 2.0]);
    assert!((v[3] - q * q * q / 6.0).norm() < 1e-16);
    let ex = disturbed_exp_coeffs(c(1.0, 0.0), 20);
    let mut fact = 1.0;
    for (n, x) in ex.iter().enumerate() {
        if n > 0 {
            fact *= n as f64;
        }
        assert!((x.re - 1.0 / fact).abs() <= 1e-15 / fact);
    }
    // F'(z) = F(qz): (n + 1) c_{n+1} = q^n c_n.
    for q in [c(0.5, 0.0), c(0.0, 1.0), c(-0.7, 0.2), c(0.9, 0.0)] {
        let v = disturbed_exp_coeffs(q, 60);
        for n in 0..60 {
            let lhs = (n + 1) as f64 * v[n + 1];
            let rhs = qpow(q, n as u64) * v[n];
            assert!((lhs - rhs).norm() <= 1e-13 * rhs.norm().max(1e-300), "n={n}");
        }
    }
    // Entries past the f64 factorial range.
    let big = disturbed_exp_coeffs(c(1.0, 0.0), 171);
    let ln_fact: f64 = (2..=171).map(|x| (x as f64).ln()).sum();
    assert!((big[171].re / (-ln_fact).exp() - 1.0).abs() < 1e-4);
}

#[test]
fn sokal_examples() {
    let q = c(0.2, -0.5);
    assert_eq!(sokal_poly_coeffs(q, 2), vec![c(1.0, 0.0), c(2.0, 0.0), q]);
    let row = sokal_poly_coeffs(c(1.0, 0.0), 6);
    let want = [1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0];
    assert!(row.iter().zip(want).all(|(a, b)| a.re == b && a.im == 0.0));
    // P_N(z/N) approaches the disturbed exponential coefficientwise.
    let q = c(0.6, 0.0);
    let target = disturbed_exp_coeffs(q, 5);
    let err = |n: usize| -> f64 {
        let pc = sokal_poly_coeffs(q, n);
        (0..=5).map(|j| (pc[j] / (n as f64).powi(j as i32) - target[j]).norm()).fold(0.0, f64::max)
    };
    assert!(err(1000) < err(100) && err(100) < err(10) && err(1000) < 1e-2);
}

#[test]
fn partial_theta_examples() {
    let q = c(0.1, 0.7);
    let v = partial_theta_coeffs(q, 4);
    let want = [c(1.0, 0.0), c(1.0, 0.0), q, q * q * q, q.powi(6)];
    for (a, b) in v.iter().zip(want) {
        assert!((a - b).norm() < 1e-15);
    }
    for q in [c(0.3, 0.0), c(0.0, 0.7), c(-0.9, 0.1)] {
        let v = partial_theta_coeffs(q, 50);
        for n in 0..50 {
            let rhs = qpow(q, n as u64) * v[n];
            assert!((v[n + 1] - rhs).norm() <= 1e-13 * rhs.norm().max(1e-300));
        }
    }
}

#[test]
fn split_and_rotate_examples() {
    let v: Vec<Complex64> = [1.0, 2.0, 3.0, 4.0].iter().map(|&x| c(x, 0.0)).collect();
    let (f, g) = split_even_odd(&v, SplitMode::Plain).unwrap();
    assert_eq!(f, vec![c(1.0, 0.0), c(3.0, 0.0)]);
    assert_eq!(g, vec![c(2.0, 0.0), c(4.0, 0.0)]);
    let (_, g) = split_even_odd(&v, SplitMode::AlternatingOdd).unwrap();
    assert_eq!(g, vec![c(2.0, 0.0), c(-4.0, 0.0)]);

    let mu_bar = e(-PI / 4.0);
    let r = rotate_half_i(&[1.0, 2.0, 3.0, 4.0], 1).unwrap();
    let want = [c(1.0, 0.0), 2.0 * mu_bar, c(3.0, 0.0), -4.0 * mu_bar];
    for (a, b) in r.iter().zip(want) {
        assert!((a - b).norm() < 1e-15);
    }
    assert!(rotate_half_i(&[1.0], 0).is_err());
}

#[test]
fn rotation_identity_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f: Vec<f64> = (0..30).map(|_| rng.gen_range(0.0..1.0) / (1..=rng.gen_range(1..8)).product::<i32>() as f64).collect();
    for sign in [1, -1] {
        let rot = rotate_half_i(&f, sign).unwrap();
        let mu_bar = e(-(sign as f64) * PI / 4.0);
        let si = c(0.0, sign as f64);
        for _ in 0..200 {
            let z = Complex64::from_polar(rng.gen_range(0.0..1.5), rng.gen_range(-PI..PI));
            let direct: Complex64 = f
                .iter()
                .enumerate()
                .map(|(n, &x)| si.powu((n * n.saturating_sub(1) / 2) as u32 % 4) * x * (mu_bar * z).powu(n as u32))
                .sum();
            let via = alphasectors::poly::horner(&rot, z);
            assert!((direct - via).norm() <= 1e-12 * direct.norm().max(1.0));
        }
    }
}

#[test]
fn rotated_disturbed_exp_is_cosh_plus_sin() {
    let spec = QSeriesSpec::new(SeriesFamily::DisturbedExp, c(0.0, 1.0), 60).rotated();
    let coeffs = spec.coeffs(60).unwrap();
    let mu_bar = e(-PI / 4.0);
    let closed = |z: Complex64| z.cosh() + mu_bar * z.sin();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let z = Complex64::from_polar(rng.gen_range(0.0..4.0), rng.gen_range(-PI..PI));
        let v = alphasectors::poly::horner(&coeffs, z);
        assert!((v - closed(z)).norm() <= 1e-12 * closed(z).norm().max(1.0));
        // And the unrotated series evaluated at conj(mu) z.
        let raw = disturbed_exp_coeffs(c(0.0, 1.0), 60);
        let w = alphasectors::poly::horner(&raw, mu_bar * z);
        assert!((w - closed(z)).norm() <= 1e-12 * closed(z).norm().max(1.0));
    }
    assert!((spec.rotated_alpha().unwrap() + mu_bar).norm() < 1e-15);
}

#[test]
fn rotated_disturbed_exp_zeros_match_closed_form() {
    let spec = QSeriesSpec::new(SeriesFamily::DisturbedExp, c(0.0, 1.0), 40).rotated();
    let s = spec.to_series().unwrap();
    let pts = alpha_points(&FunctionSpec::Series(s.clone()), c(0.0, 0.0), s.trust_radius, &SolveOptions::default()).unwrap();
    assert!(pts.len() >= 6, "{} zeros", pts.len());
    let mu_bar = e(-PI / 4.0);
    for p in &pts {
        // Newton on the closed form from the computed zero.
        let mut z = p.value;
        for _ in 0..50 {
            let f = z.cosh() + mu_bar * z.sin();
            let d = z.sinh() + mu_bar * z.cos();
            z -= f / d;
        }
        assert!((z - p.value).norm() <= 1e-8 * p.modulus.max(1.0), "{} vs {z}", p.value);
    }
}

#[test]
fn theta_split_examples() {
    assert!(theta_split_check(0.5, 20));
    assert!(theta_split_check(0.9, 20));
    let mut v = partial_theta_coeffs(c(0.5, 0.0), 41);
    assert!(theta_split_matches(&v, 0.5));
    v[7] *= 1.0 + 1e-9;
    assert!(!theta_split_matches(&v, 0.5));
}

#[test]
fn theta_halves_have_negative_zeros() {
    for q in [0.3, 0.5, 0.7, Q_STAR * 0.999] {
        let v = partial_theta_coeffs(c(q, 0.0), 2 * 70 + 1);
        let (f, g) = split_even_odd(&v, SplitMode::Plain).unwrap();
        for half in [f, g] {
            let s: SeriesFunction = truncate_series(&half, 50, 1e-10, 2).unwrap();
            assert!(s.trust_radius > 0.0);
            let pts = alpha_points(&FunctionSpec::Series(s.clone()), c(0.0, 0.0), s.trust_radius, &SolveOptions::default()).unwrap();
            assert!(!pts.is_empty());
            for p in &pts {
                assert!(p.value.re < 0.0 && p.value.im.abs() <= 1e-9 * p.modulus, "q={q}: zero {}", p.value);
            }
        }
    }
}
