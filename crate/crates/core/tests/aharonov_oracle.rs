//! Aharonov invariants from a plain rational power-series inversion, written
//! without the crate's jet types, against the generated polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schwarzian_core::coeff::{gaussian, GaussianRational, Scalar};
use schwarzian_core::jets::HolExpr;
use schwarzian_core::polyring::PolyCache;
use schwarzian_core::schwarzian::{aharonov_psi, BasePointContext};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: usize) -> BigRational {
    (1..=n as i64).fold(BigRational::one(), |acc, k| acc * r(k, 1))
}

/// `psi_n = -[w^n] c_1 / (c_1 + c_2 w + c_3 w^2 + ...)` for `n = 1..=n_max`.
fn psi_oracle(c: &[BigRational], n_max: usize) -> Vec<BigRational> {
    let a: Vec<BigRational> = (0..=n_max).map(|k| c.get(k + 1).cloned().unwrap_or_else(BigRational::zero)).collect();
    let mut inv = vec![a[0].recip()];
    for k in 1..=n_max {
        let s = (1..=k).fold(BigRational::zero(), |acc, j| acc + &a[j] * &inv[k - j]);
        inv.push(-s / &a[0]);
    }
    (1..=n_max).map(|k| -(&c[1] * &inv[k])).collect()
}

fn random_coefficients(rng: &mut ChaCha8Rng, len: usize) -> Vec<BigRational> {
    (0..len)
        .map(|k| {
            let mut num = rng.gen_range(-9..=9);
            if k == 1 && num == 0 {
                num = 1;
            }
            r(num, rng.gen_range(1..=9))
        })
        .collect()
}

fn as_scalar(x: &BigRational) -> GaussianRational {
    GaussianRational::from_rational(x)
}

fn q_values(c: &[BigRational], n: usize) -> Vec<GaussianRational> {
    (1..=n).map(|k| as_scalar(&(factorial(k + 1) * &c[k + 1] / &c[1]))).collect()
}

#[test]
fn generated_polynomials_match_series_inversion() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA4A2);
    let cache = PolyCache::global();
    for _ in 0..20 {
        let c = random_coefficients(&mut rng, 9);
        let oracle = psi_oracle(&c, 7);
        let q = q_values(&c, 7);
        for n in 1..=7 {
            assert_eq!(cache.aharonov(n).eval(&q).unwrap(), as_scalar(&oracle[n - 1]), "n={n}, c={c:?}");
        }
    }
}

#[test]
fn frozen_psi3_matches_series_inversion() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9513);
    for _ in 0..20 {
        let c = random_coefficients(&mut rng, 5);
        let q: Vec<BigRational> = (1..=3).map(|k| factorial(k + 1) * &c[k + 1] / &c[1]).collect();
        let frozen = &q[2] / r(24, 1) - &q[0] * &q[1] / r(6, 1) + &q[0] * &q[0] * &q[0] / r(8, 1);
        assert_eq!(psi_oracle(&c, 3)[2], frozen);
    }
    assert_eq!(PolyCache::global().aharonov(3).to_text(), "1/24*x3 - 1/6*x1*x2 + 1/8*x1^3");
}

#[test]
fn point_evaluation_matches_series_inversion() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x77);
    for _ in 0..20 {
        let c = random_coefficients(&mut rng, 8);
        // f(z) = sum c_k (z - z0)^k with z0 = 0
        let f = c.iter().enumerate().rev().fold(HolExpr::constant(GaussianRational::zero()), |acc, (k, ck)| {
            let term = HolExpr::Mul(
                Box::new(HolExpr::constant(gaussian(ck.clone(), BigRational::zero()))),
                Box::new(HolExpr::Pow(Box::new(HolExpr::z()), k as i64)),
            );
            HolExpr::Add(Box::new(acc), Box::new(term))
        });
        let ctx = BasePointContext::for_order(f, GaussianRational::zero(), 6).unwrap();
        let psi = aharonov_psi(&ctx, 6).unwrap();
        let oracle = psi_oracle(&c, 6);
        for n in 1..=6 {
            assert_eq!(psi[n], as_scalar(&oracle[n - 1]));
        }
    }
}
