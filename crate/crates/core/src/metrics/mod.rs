//! Invariant derivatives of holomorphic maps between domains carrying
//! conformal metrics.
//!
//! Quantities are jets in the Wirtinger pair `(s, t)` standing for
//! `(z - z0, conj(z) - conj(z0))`. A holomorphic `f` only involves `s`; the
//! metric densities, evaluated along `f` through `(f(z0+s), conj(f)(conj(z0)+t))`,
//! involve both. Point values are constant terms.

mod model;
mod verify;

pub use model::{MetricJet, MetricModel};
pub use verify::{validate_isometry, verify_isometry_invariance, verify_metric_q_derivative, verify_invariant_recursion};


use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::jets::{HolExpr, Jet1, Jet2};
use crate::polyring::PolyCache;
use crate::schwarzian::Indexed;

/// `d_rho phi = (1/rho) d phi/dz`; the valid order drops by one.
pub fn rho_derivative<S: Scalar>(phi: &Jet2<S>, metric: &MetricJet<S>) -> Result<Jet2<S>> {
    Ok(metric.inv_density.clone() * phi.diff_s()?)
}

/// A holomorphic map `f` near `z0` between a domain with metric `rho` and a
/// target with metric `sigma`.
#[derive(Clone, Debug)]
pub struct PeschlMindaContext<S> {
    f: HolExpr,
    z0: S,
    rho: MetricModel,
    sigma: MetricModel,
    jet: Jet1<S>,
    rho_jet: MetricJet<S>,
    sigma_jet: MetricJet<S>,
    fp: Jet2<S>,
}

impl<S: Scalar> PeschlMindaContext<S> {
    pub fn new(f: HolExpr, z0: S, rho: MetricModel, sigma: MetricModel, order_budget: usize) -> Result<Self> {
        if order_budget < 1 {
            return Err(Error::OrderExhausted { needed: 1, available: 0 });
        }
        let jet = f.to_jet(&z0, order_budget)?;
        if jet.coeff(1).is_zero() {
            return Err(Error::BranchPoint);
        }
        let rho_jet = rho.jets_at(&z0, order_budget)?;
        sigma.check_point(jet.value())?;
        let w = Jet2::from_jet1_s(&jet);
        let wbar = Jet2::from_jet1_t(&jet.conj_coeffs());
        let sigma_jet = sigma.jets_along(&w, &wbar)?;
        let fp = Jet2::from_jet1_s(&jet.diff()?);
        Ok(Self { f, z0, rho, sigma, jet, rho_jet, sigma_jet, fp })
    }

    /// Budget for `Sigma^n` and every check up to order `n`.
    pub fn for_order(f: HolExpr, z0: S, rho: MetricModel, sigma: MetricModel, n: usize) -> Result<Self> {
        Self::new(f, z0, rho, sigma, n + 2)
    }

    pub fn f(&self) -> &HolExpr {
        &self.f
    }

    pub fn z0(&self) -> &S {
        &self.z0
    }

    pub fn rho(&self) -> &MetricModel {
        &self.rho
    }

    pub fn sigma(&self) -> &MetricModel {
        &self.sigma
    }

    pub fn jet(&self) -> &Jet1<S> {
        &self.jet
    }

    pub fn order_budget(&self) -> usize {
        self.jet.order()
    }

    /// Jets of the domain metric at `z0`.
    pub fn rho_jet(&self) -> &MetricJet<S> {
        &self.rho_jet
    }

    /// Jets of the target metric along `f`.
    pub fn sigma_jet(&self) -> &MetricJet<S> {
        &self.sigma_jet
    }

    fn require(&self, needed: usize) -> Result<()> {
        if self.order_budget() < needed {
            return Err(Error::OrderExhausted { needed, available: self.order_budget() });
        }
        Ok(())
    }
}

/// `D^1 f .. D^n f`, from `D^1 f = (sigma∘f / rho) f'` and
/// `D^{k+1} f = [d_rho - k d_rho log rho + (d_sigma log sigma)∘f D^1 f] D^k f`.
pub fn peschl_minda_d<S: Scalar>(ctx: &PeschlMindaContext<S>, n: usize) -> Result<Indexed<Jet2<S>>> {
    ctx.require(n)?;
    let rho = &ctx.rho_jet;
    let d_log_rho = rho.rho_log_derivative();
    let d_log_sigma = ctx.sigma_jet.rho_log_derivative();
    let d1 = ctx.sigma_jet.density.clone() * rho.inv_density.clone() * ctx.fp.clone();
    let pull = d_log_sigma * d1.clone();
    let mut out = vec![d1];
    for k in 1..n {
        let dk = out.last().expect("nonempty");
        let next = rho_derivative(dk, rho)? - (d_log_rho.clone() * dk.clone()).scale(&S::from_i64(k as i64))
            + pull.clone() * dk.clone();
        out.push(next);
    }
    Ok(Indexed::new(1, out))
}

/// `Q^k f = D^{k+1} f / D^1 f` for `k = 1..=n`.
pub fn q_invariants<S: Scalar>(ctx: &PeschlMindaContext<S>, n: usize) -> Result<Indexed<Jet2<S>>> {
    let d = peschl_minda_d(ctx, n + 1)?;
    let inv = d[1].recip().map_err(|_| Error::VanishingDerivative)?;
    Ok(Indexed::new(1, (2..=n + 1).map(|k| d[k].clone() * inv.clone()).collect()))
}

/// `Sigma^k f = P_k(Q^1 f, ..., Q^k f)` as jets, `k = 0..=n`.
pub fn invariant_schwarzian_jets<S: Scalar>(ctx: &PeschlMindaContext<S>, n: usize) -> Result<Indexed<Jet2<S>>> {
    let q = q_invariants(ctx, n.max(1))?;
    let order = q[q.last()].order();
    let lift = |c: &crate::coeff::ExactRational| Jet2::constant(S::from_rational(c), order);
    let cache = PolyCache::global();
    let values = (0..=n)
        .map(|k| cache.tamanoi(k).eval_with(q.values(), lift, Jet2::constant(S::one(), order)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Indexed::new(0, values))
}

/// Point values of `Sigma^k f`, `k = 0..=n`.
pub fn invariant_schwarzian<S: Scalar>(ctx: &PeschlMindaContext<S>, n: usize) -> Result<Indexed<S>> {
    let q = q_invariants(ctx, n.max(1))?;
    let qv: Vec<S> = q.values().iter().map(|j| j.value().clone()).collect();
    let cache = PolyCache::global();
    let values = (0..=n).map(|k| cache.tamanoi(k).eval(&qv)).collect::<Result<Vec<_>>>()?;
    Ok(Indexed::new(0, values))
}

/// Point values of `Q^k f`, `k = 1..=n`.
pub fn q_values<S: Scalar>(ctx: &PeschlMindaContext<S>, n: usize) -> Result<Indexed<S>> {
    let q = q_invariants(ctx, n)?;
    Ok(Indexed::new(1, q.values().iter().map(|j| j.value().clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::coeff::{gaussian, rational, GaussianRational};
    use crate::jets::parse_expr;

    type G = GaussianRational;

    fn ctx(f: &str, z0: G, rho: MetricModel, sigma: MetricModel, n: usize) -> PeschlMindaContext<G> {
        PeschlMindaContext::for_order(parse_expr(f).unwrap(), z0, rho, sigma, n).unwrap()
    }

    #[test]
    fn rho_derivative_examples() {
        let z0 = G::zero();
        let s = Jet2::s_var(z0.clone(), 3);
        let e = MetricModel::euclidean().jets_at(&z0, 3).unwrap();
        assert_eq!(rho_derivative(&s, &e).unwrap(), Jet2::constant(G::from_i64(1), 2));
        let h = MetricModel::hyperbolic().jets_at(&z0, 3).unwrap();
        let d = rho_derivative(&s, &h).unwrap();
        assert_eq!(*d.value(), G::from_i64(1));
        assert_eq!(*d.coeff(1, 1), G::from_i64(-1));
        assert!(rho_derivative(&Jet2::constant(G::from_i64(5), 3), &h).unwrap().is_zero());
    }

    #[test]
    fn identity_map_with_equal_metrics() {
        for m in [MetricModel::euclidean(), MetricModel::spherical(), MetricModel::hyperbolic()] {
            let c = ctx("z", gaussian(rational(1, 3), rational(1, 4)), m.clone(), m, 5);
            let d = peschl_minda_d(&c, 4).unwrap();
            assert_eq!(*d[1].value(), G::from_i64(1));
            assert!((2..=4).all(|k| d[k].is_zero()));
            let sigma = invariant_schwarzian(&c, 5).unwrap();
            assert!(sigma.iter().skip(2).all(|(_, v)| v.is_zero()));
        }
    }

    #[test]
    fn euclidean_reduces_to_derivatives() {
        let e = MetricModel::euclidean();
        let c = ctx("z^4 + 2*z^3 - z", G::from_i64(1), e.clone(), e, 3);
        let d = peschl_minda_d(&c, 4).unwrap();
        let derivs = c.jet().derivatives();
        for k in 1..=4 {
            assert_eq!(d[k].value(), &derivs[k]);
        }
    }

    #[test]
    fn hyperbolic_first_derivative_at_origin() {
        let h = MetricModel::hyperbolic();
        let c = ctx("z/2 + z^2", G::zero(), h.clone(), h, 2);
        assert_eq!(*peschl_minda_d(&c, 1).unwrap()[1].value(), G::from_rational(&rational(1, 2)));
    }

    #[test]
    fn exponential_q_in_euclidean_metric() {
        let e = MetricModel::euclidean();
        let c = ctx("exp(z)", G::zero(), e.clone(), e, 4);
        assert!(q_values(&c, 4).unwrap().values().iter().all(|v| *v == G::from_i64(1)));
    }

    #[test]
    fn domain_and_spec_errors() {
        let h = MetricModel::hyperbolic();
        let f = parse_expr("2*z").unwrap();
        let err = PeschlMindaContext::new(f, G::from_rational(&rational(3, 4)), MetricModel::euclidean(), h, 4);
        assert!(matches!(err, Err(Error::OutsideDomain(_))));
        assert!(matches!(MetricModel::parse("flat"), Err(Error::MetricSpec(_))));
        assert!(matches!(MetricModel::parse("custom:zbar*"), Err(Error::Parse(_))));
        assert_eq!(MetricModel::parse(" spherical ").unwrap(), MetricModel::spherical());
    }

    #[test]
    fn metric_jets_are_real_valued() {
        let z0 = gaussian(rational(1, 5), rational(-2, 7));
        for m in [MetricModel::euclidean(), MetricModel::spherical(), MetricModel::hyperbolic()] {
            assert!(m.jets_at(&z0, 5).unwrap().reality_defect().is_zero(), "{m}");
        }
    }
}
