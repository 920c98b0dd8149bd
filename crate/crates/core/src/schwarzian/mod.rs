//! Aharonov invariants, Tamanoi Schwarzians and their relatives for a
//! concrete holomorphic function at a base point.
//!
//! Everything is read off Taylor jets of `f(z0 + w)`. Point invariants come
//! from univariate expansions in `w`; their `z`-derivatives come from
//! re-expanding the same quantities bivariately in `(u, w)` with `u = z - z0`.

mod corpus;
mod report;
mod verify;


pub use corpus::{RandomCorpus, TestCase, DEFAULT_SEED};
pub use report::{Indexed, Residual, ResidualReport, SchwarzianReport};
pub use verify::{
    verify_aharonov_recursion, verify_frame_flow, verify_moebius_invariance, verify_s_recursion,
    verify_q_derivative,
};

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::jets::{factorial, HolExpr, Jet1};
use crate::polyring::PolyCache;

/// A function, a regular base point and the Taylor jet of `f(z0 + w)`.
#[derive(Clone, Debug)]
pub struct BasePointContext<S> {
    f: HolExpr,
    z0: S,
    jet: Jet1<S>,
}

impl<S: Scalar> BasePointContext<S> {
    /// Expands `f` at `z0` to order `order_budget`; `f'(z0)` must not vanish.
    pub fn new(f: HolExpr, z0: S, order_budget: usize) -> Result<Self> {
        if order_budget < 2 {
            return Err(Error::OrderExhausted { needed: 2, available: order_budget });
        }
        let jet = f.to_jet(&z0, order_budget)?;
        if jet.coeff(1).is_zero() {
            return Err(Error::BranchPoint);
        }
        Ok(Self { f, z0, jet })
    }

    /// Context whose budget covers every quantity and check up to order `n`.
    pub fn for_order(f: HolExpr, z0: S, n: usize) -> Result<Self> {
        Self::new(f, z0, n + 3)
    }

    pub fn f(&self) -> &HolExpr {
        &self.f
    }

    pub fn z0(&self) -> &S {
        &self.z0
    }

    /// Jet of `f(z0 + w)`.
    pub fn jet(&self) -> &Jet1<S> {
        &self.jet
    }

    pub fn order_budget(&self) -> usize {
        self.jet.order()
    }

    pub(crate) fn require(&self, needed: usize) -> Result<()> {
        if self.order_budget() < needed {
            return Err(Error::OrderExhausted { needed, available: self.order_budget() });
        }
        Ok(())
    }

    /// `f(z0 + w) - f(z0)`.
    pub(crate) fn displacement(&self) -> Jet1<S> {
        let mut c = self.jet.coeffs().to_vec();
        c[0] = S::zero();
        Jet1::new(c)
    }
}

/// `q_k = f^{(k+1)}(z0)/f'(z0)` for `k = 1..=n`.
pub fn q_invariants<S: Scalar>(ctx: &BasePointContext<S>, n: usize) -> Result<Indexed<S>> {
    ctx.require(n + 1)?;
    let c1 = ctx.jet.coeff(1);
    let values = (1..=n)
        .map(|k| (ctx.jet.coeff(k + 1).clone() * &factorial::<S>(k + 1)).div(c1))
        .collect::<Result<Vec<_>>>()?;
    Ok(Indexed::new(1, values))
}

/// `psi_1..psi_n` from `f'(z0)/(f(z0+w) - f(z0)) = 1/w - sum psi_k w^{k-1}`.
pub fn aharonov_psi<S: Scalar>(ctx: &BasePointContext<S>, n: usize) -> Result<Indexed<S>> {
    ctx.require(n + 1)?;
    let k = ctx.displacement().div_w()?.recip()?.scale(ctx.jet.coeff(1));
    Ok(Indexed::new(1, (1..=n).map(|m| -k.coeff(m).clone()).collect()))
}

/// The frame expansion `V(w) = f'(D) / (f''/2 D + f'^2)` with `D = f(z0+w) - f(z0)`,
/// whose coefficients are `S_n/(n+1)!` at `w^{n+1}`.
pub fn frame_series<S: Scalar>(ctx: &BasePointContext<S>) -> Result<Jet1<S>> {
    let d = ctx.displacement();
    let c1 = ctx.jet.coeff(1);
    let c2 = ctx.jet.coeff(2);
    let den = d.scale(c2) + Jet1::constant(c1.clone() * c1, d.order());
    Ok(d.scale(c1) * den.recip()?)
}

/// `S_0..S_n` read off the frame expansion.
pub fn tamanoi_s_via_frame<S: Scalar>(ctx: &BasePointContext<S>, n: usize) -> Result<Indexed<S>> {
    ctx.require(n + 1)?;
    let v = frame_series(ctx)?;
    Ok(Indexed::new(0, (0..=n).map(|m| v.coeff(m + 1).clone() * &factorial::<S>(m + 1)).collect()))
}

/// `S_0..S_n` as `P_n(q_1, ..., q_n)`.
pub fn tamanoi_s_via_poly<S: Scalar>(ctx: &BasePointContext<S>, n: usize) -> Result<Indexed<S>> {
    let q = q_invariants(ctx, n)?;
    let cache = PolyCache::global();
    let values = (0..=n)
        .map(|m| cache.tamanoi(m).eval(q.values()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Indexed::new(0, values))
}

/// `psi_1..psi_n` as `Psi_k(q_1, ..., q_k)`.
pub fn aharonov_psi_via_poly<S: Scalar>(ctx: &BasePointContext<S>, n: usize) -> Result<Indexed<S>> {
    let q = q_invariants(ctx, n)?;
    let cache = PolyCache::global();
    let values = (1..=n)
        .map(|m| cache.aharonov(m).eval(q.values()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Indexed::new(1, values))
}

/// `sigma_n = S_n/(n+1)!`, `n = 0..=n`.
pub fn sigma_values<S: Scalar>(ctx: &BasePointContext<S>, n: usize) -> Result<Indexed<S>> {
    let s = tamanoi_s_via_frame(ctx, n)?;
    let values = s
        .iter()
        .map(|(m, v)| v.div(&factorial::<S>(m + 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Indexed::new(0, values))
}

/// `sigma_0..sigma_n` from the polynomials in the psi-family evaluated at the
/// Aharonov invariants.
pub fn sigma_via_psi<S: Scalar>(ctx: &BasePointContext<S>, n: usize) -> Result<Indexed<S>> {
    let psi = aharonov_psi(ctx, n.max(1))?;
    let cache = PolyCache::global();
    let values = (0..=n)
        .map(|m| cache.sigma(m).eval(psi.values()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Indexed::new(0, values))
}

/// Pre-Schwarzian `T_f = f''/f' = 2 psi_1`.
pub fn pre_schwarzian<S: Scalar>(ctx: &BasePointContext<S>) -> Result<S> {
    Ok(aharonov_psi(ctx, 1)?.values()[0].clone() * &S::from_i64(2))
}

/// Classical Schwarzian `S_f = f'''/f' - 3/2 (f''/f')^2 = 6 psi_2`.
pub fn classical_schwarzian<S: Scalar>(ctx: &BasePointContext<S>) -> Result<S> {
    ctx.require(3)?;
    Ok(aharonov_psi(ctx, 2)?.values()[1].clone() * &S::from_i64(6))
}
