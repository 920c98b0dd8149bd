use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::{Family, WeightedPoly};
use crate::coeff::{rational, ExactRational};

pub fn binomial(n: u64, k: u64) -> ExactRational {
    ExactRational::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

/// Append-only, compute-once store for the three polynomial families.
///
/// Every entry depends on all earlier ones, so a request for index `n` fills
/// the list up to `n` while holding the family's lock; concurrent callers
/// block and then observe the same `Arc`.
#[derive(Debug, Default)]
pub struct PolyCache {
    tamanoi: Mutex<Vec<Arc<WeightedPoly>>>,
    aharonov: Mutex<Vec<Arc<WeightedPoly>>>,
    sigma: Mutex<Vec<Arc<WeightedPoly>>>,
}

impl PolyCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache.
    pub fn global() -> &'static PolyCache {
        static CACHE: OnceLock<PolyCache> = OnceLock::new();
        CACHE.get_or_init(PolyCache::new)
    }

    /// Tamanoi polynomial `P_n` in the q-family, with `S_n[f] = P_n(q_1, ..., q_n)`.
    ///
    /// `P_0 = 1`, `P_1 = 0`, `P_2 = x_2 - (3/2) x_1^2`, and for `n >= 3`
    /// `P_n = E P_{n-1} + (1/2) P_2 sum_{k=1}^{n-1} C(n,k) P_{k-1} P_{n-k-1}`.
    pub fn tamanoi(&self, n: usize) -> Arc<WeightedPoly> {
        let mut list = self.tamanoi.lock().expect("poly cache poisoned");
        while list.len() <= n {
            let m = list.len();
            let next = match m {
                0 => WeightedPoly::one(Family::Q),
                1 => WeightedPoly::zero(Family::Q),
                2 => {
                    let x2 = WeightedPoly::var(Family::Q, 2);
                    &x2 - &WeightedPoly::var(Family::Q, 1).pow(2).scale(&rational(3, 2))
                }
                _ => {
                    let head = list[m - 1].derivation_e().expect("q-family");
                    let mut sum = WeightedPoly::zero(Family::Q);
                    for k in 1..m {
                        let prod = &*list[k - 1] * &*list[m - k - 1];
                        sum = &sum + &prod.scale(&binomial(m as u64, k as u64));
                    }
                    let tail = (&*list[2] * &sum).scale(&rational(1, 2));
                    &head + &tail
                }
            };
            list.push(Arc::new(next));
        }
        list[n].clone()
    }

    /// Aharonov polynomial `Psi_n` in the q-family, with
    /// `psi_n[f] = Psi_n(q_1, ..., q_n)`, for `n >= 1`.
    ///
    /// `Psi_1 = x_1/2`, `Psi_2 = x_2/6 - x_1^2/4`, and for `n >= 3`
    /// `(n+1) Psi_n = E Psi_{n-1} + sum_{k=2}^{n-2} Psi_k Psi_{n-k}`.
    pub fn aharonov(&self, n: usize) -> Arc<WeightedPoly> {
        assert!(n >= 1, "Aharonov invariants start at n = 1");
        let mut list = self.aharonov.lock().expect("poly cache poisoned");
        // list[i] holds Psi_{i+1}.
        while list.len() < n {
            let m = list.len() + 1;
            let next = match m {
                1 => WeightedPoly::var(Family::Q, 1).scale(&rational(1, 2)),
                2 => {
                    let a = WeightedPoly::var(Family::Q, 2).scale(&rational(1, 6));
                    &a - &WeightedPoly::var(Family::Q, 1).pow(2).scale(&rational(1, 4))
                }
                _ => {
                    let mut acc = list[m - 2].derivation_e().expect("q-family");
                    for k in 2..=m.saturating_sub(2) {
                        acc = &acc + &(&*list[k - 1] * &*list[m - k - 1]);
                    }
                    acc.scale(&rational(1, m as i64 + 1))
                }
            };
            list.push(Arc::new(next));
        }
        list[n - 1].clone()
    }

    /// `sigma_n = S_n/(n+1)!` as a polynomial in the psi-family:
    /// `sigma_0 = 1`, `sigma_1 = 0`, `sigma_n = psi_n + sum_{k=2}^{n-2} psi_k sigma_{n-k}`.
    pub fn sigma(&self, n: usize) -> Arc<WeightedPoly> {
        let mut list = self.sigma.lock().expect("poly cache poisoned");
        while list.len() <= n {
            let m = list.len();
            let next = match m {
                0 => WeightedPoly::one(Family::Psi),
                1 => WeightedPoly::zero(Family::Psi),
                _ => {
                    let mut acc = WeightedPoly::var(Family::Psi, m as u32);
                    for k in 2..=m.saturating_sub(2) {
                        let psi_k = WeightedPoly::var(Family::Psi, k as u32);
                        acc = &acc + &(&psi_k * &*list[m - k]);
                    }
                    acc
                }
            };
            list.push(Arc::new(next));
        }
        list[n].clone()
    }
}

/// The polynomial `P` in `S_n = S_{n-1}' + P(S_2, ..., S_{n-2})`, `n >= 3`,
/// obtained from `(1/2) S_2 sum_{k=1}^{n-1} C(n,k) S_{k-1} S_{n-k-1}` with
/// `S_0 = 1` and `S_1 = 0` eliminated.
pub fn recursion_remainder(n: usize) -> WeightedPoly {
    assert!(n >= 3, "the recursion starts at n = 3");
    let s = |j: usize| -> WeightedPoly {
        match j {
            0 => WeightedPoly::one(Family::S),
            1 => WeightedPoly::zero(Family::S),
            _ => WeightedPoly::var(Family::S, j as u32),
        }
    };
    let mut sum = WeightedPoly::zero(Family::S);
    for k in 1..n {
        let prod = &s(k - 1) * &s(n - k - 1);
        sum = &sum + &prod.scale(&binomial(n as u64, k as u64));
    }
    (&s(2) * &sum).scale(&rational(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::is_dyadic;
    use crate::polyring::Monomial;

    fn monomial_term(exps: &[(u32, u32)], num: i64, den: i64) -> (Monomial, ExactRational) {
        (Monomial::from_exponents(exps.iter().copied()), rational(num, den))
    }

    fn q(terms: &[(&[(u32, u32)], i64, i64)]) -> WeightedPoly {
        WeightedPoly::from_terms(
            Family::Q,
            terms.iter().map(|(e, n, d)| monomial_term(e, *n, *d)),
        )
    }

    fn in_family(family: Family, terms: &[(&[(u32, u32)], i64, i64)]) -> WeightedPoly {
        q(terms).with_family(family)
    }

    #[test]
    fn low_order_tamanoi() {
        let cache = PolyCache::new();
        assert_eq!(*cache.tamanoi(0), WeightedPoly::one(Family::Q));
        assert!(cache.tamanoi(1).is_zero());
        assert_eq!(*cache.tamanoi(2), q(&[(&[(2, 1)], 1, 1), (&[(1, 2)], -3, 2)]));
        assert_eq!(
            *cache.tamanoi(4),
            q(&[(&[(4, 1)], 1, 1), (&[(1, 1), (3, 1)], -5, 1), (&[(1, 2), (2, 1)], 5, 1)])
        );
        // Same Arc on repeated access.
        assert!(Arc::ptr_eq(&cache.tamanoi(3), &cache.tamanoi(3)));
    }

    #[test]
    fn tamanoi_coefficients_are_dyadic() {
        let cache = PolyCache::new();
        for n in 0..=14 {
            assert!(cache.tamanoi(n).terms().all(|(_, c)| is_dyadic(c)), "P{n}");
        }
    }

    #[test]
    fn aharonov_low_order() {
        let cache = PolyCache::new();
        assert_eq!(*cache.aharonov(1), q(&[(&[(1, 1)], 1, 2)]));
        assert_eq!(*cache.aharonov(2), q(&[(&[(2, 1)], 1, 6), (&[(1, 2)], -1, 4)]));
        // Frozen from the series-expansion oracle in tests/aharonov_oracle.rs.
        assert_eq!(
            *cache.aharonov(3),
            q(&[(&[(3, 1)], 1, 24), (&[(1, 1), (2, 1)], -1, 6), (&[(1, 3)], 1, 8)])
        );
    }

    #[test]
    fn sigma_low_order() {
        let cache = PolyCache::new();
        let psi = |k| WeightedPoly::var(Family::Psi, k);
        assert_eq!(*cache.sigma(0), WeightedPoly::one(Family::Psi));
        assert!(cache.sigma(1).is_zero());
        assert_eq!(*cache.sigma(2), psi(2));
        assert_eq!(*cache.sigma(3), psi(3));
        assert_eq!(*cache.sigma(4), &psi(4) + &psi(2).pow(2));
        assert_eq!(
            *cache.sigma(6),
            in_family(
                Family::Psi,
                &[(&[(6, 1)], 1, 1), (&[(2, 3)], 1, 1), (&[(3, 2)], 1, 1), (&[(2, 1), (4, 1)], 2, 1)]
            )
        );
    }

    #[test]
    fn remainder_examples() {
        assert!(recursion_remainder(3).is_zero());
        assert_eq!(recursion_remainder(4), in_family(Family::S, &[(&[(2, 2)], 4, 1)]));
        assert_eq!(recursion_remainder(5), in_family(Family::S, &[(&[(2, 1), (3, 1)], 5, 1)]));
        assert_eq!(
            recursion_remainder(6),
            in_family(Family::S, &[(&[(2, 1), (4, 1)], 6, 1), (&[(2, 3)], 10, 1)])
        );
    }
}
