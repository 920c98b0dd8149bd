use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{gaussian, rational, ExactRational, GaussianRational, Scalar};
use crate::jets::{HolExpr, Mobius};

pub const DEFAULT_SEED: u64 = 0x5EED;

/// A rational test function with a regular base point.
#[derive(Clone, Debug, PartialEq)]
pub struct TestCase {
    pub f: HolExpr,
    pub z0: GaussianRational,
}

/// Seeded generator of rational test functions: polynomials of degree at most
/// six, half of them postcomposed with a Möbius map, with coefficient
/// numerators in `[-9, 9]` and denominators in `[1, 9]`.
///
/// Draws are rejected until `f'(z0) != 0` and `f` has no pole at `z0`.
#[derive(Clone, Debug)]
pub struct RandomCorpus {
    rng: ChaCha8Rng,
}

impl RandomCorpus {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn small_rational(&mut self) -> ExactRational {
        rational(self.rng.gen_range(-9..=9), self.rng.gen_range(1..=9))
    }

    fn small_gaussian(&mut self) -> GaussianRational {
        if self.rng.gen_bool(0.5) {
            gaussian(self.small_rational(), ExactRational::zero())
        } else {
            gaussian(self.small_rational(), self.small_rational())
        }
    }

    fn polynomial(&mut self) -> HolExpr {
        let degree = self.rng.gen_range(2..=6);
        let mut expr = HolExpr::Const(self.small_gaussian());
        for k in 1..=degree {
            let mut c = self.small_gaussian();
            if k == degree && c.is_zero() {
                c = GaussianRational::from_i64(1);
            }
            if c.is_zero() {
                continue;
            }
            let mono = HolExpr::Pow(Box::new(HolExpr::z()), k);
            expr = HolExpr::Add(Box::new(expr), Box::new(HolExpr::Mul(Box::new(HolExpr::Const(c)), Box::new(mono))));
        }
        expr
    }

    /// A random nondegenerate Möbius map.
    pub fn mobius(&mut self) -> Mobius {
        loop {
            let [a, b, c, d] = [(); 4].map(|_| self.small_gaussian());
            if let Ok(m) = Mobius::new(a, b, c, d) {
                return m;
            }
        }
    }

    pub fn next_case(&mut self) -> TestCase {
        loop {
            let mut f = self.polynomial();
            let z0 = self.small_gaussian();
            let p0 = f.eval_at(&z0, None).expect("polynomials are entire");
            if self.rng.gen_bool(0.5) {
                let m = self.mobius();
                if m.has_pole_at(&p0) {
                    continue;
                }
                f = f.then_mobius(&m);
            }
            let derivative_vanishes = match f.to_jet(&z0, 1) {
                Ok(j) => j.coeff(1).is_zero(),
                Err(_) => true,
            };
            if !derivative_vanishes {
                return TestCase { f, z0 };
            }
        }
    }

    pub fn cases(&mut self, count: usize) -> Vec<TestCase> {
        (0..count).map(|_| self.next_case()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_regular() {
        let a = RandomCorpus::new(DEFAULT_SEED).cases(20);
        let b = RandomCorpus::new(DEFAULT_SEED).cases(20);
        assert_eq!(a, b);
        assert_ne!(a, RandomCorpus::new(1).cases(20));
        for case in &a {
            let j = case.f.to_jet(&case.z0, 2).unwrap();
            assert!(!j.coeff(1).is_zero());
        }
    }
}
