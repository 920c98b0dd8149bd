//! Identity checks. Each one computes both sides along different routes: point
//! values from univariate jets in `w`, derivatives in `z` from bivariate jets in
//! `(u, w)`.


use super::{aharonov_psi, q_invariants, tamanoi_s_via_frame, BasePointContext, ResidualReport};
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::jets::{factorial, Jet1, Jet2, Mobius};
use crate::polyring::binomial;

/// Bivariate pieces around `z0`: `D(u, w) = f(z0+u+w) - f(z0+u)`, `f'(z0+u)`
/// and `f''(z0+u)/2`, all as jets in `(s, t) = (u, w)`.
struct Bivariate<S> {
    d: Jet2<S>,
    fp: Jet2<S>,
    half_fpp: Jet2<S>,
}

impl<S: Scalar> Bivariate<S> {
    fn new(jet: &Jet1<S>) -> Result<Self> {
        let d = Jet2::from_jet1_sum(jet) - Jet2::from_jet1_s(jet);
        let fp = Jet2::from_jet1_s(&jet.diff()?);
        let half_fpp = Jet2::from_jet1_s(&jet.diff()?.diff()?).scale(&S::from_i64(2).inv()?);
        Ok(Self { d, fp, half_fpp })
    }

    /// `V(u, w)`, whose `w^{n+1}` coefficient is `S_n(z0+u)/(n+1)!`.
    fn frame(&self) -> Result<Jet2<S>> {
        let den = self.half_fpp.clone() * self.d.clone() + self.fp.clone() * self.fp.clone();
        Ok(self.fp.clone() * self.d.clone() * den.recip()?)
    }

    /// `K(u, w) = f'(z0+u) w / D(u, w) = 1 - sum psi_n(z0+u) w^n`.
    fn aharonov(&self) -> Result<Jet2<S>> {
        Ok(self.fp.clone() * self.d.div_t()?.recip()?)
    }
}

/// `S_n = S_{n-1}' + (1/2) S_2 sum_{k=1}^{n-1} C(n,k) S_{k-1} S_{n-k-1}` for
/// `3 <= n <= N`. Needs budget `N + 3`.
pub fn verify_s_recursion<S: Scalar>(ctx: &BasePointContext<S>, n: usize) -> Result<ResidualReport> {
    ctx.require(n + 3)?;
    let s = tamanoi_s_via_frame(ctx, n)?;
    let v = Bivariate::new(ctx.jet())?.frame()?;
    let half = S::from_i64(2).inv()?;
    let mut report = ResidualReport::new::<S>("S_n = S_{n-1}' + S_2/2 sum C(n,k) S_{k-1} S_{n-k-1}");
    for m in 3..=n {
        let ds = v.coeff(1, m).clone() * &factorial::<S>(m);
        let mut sum = S::zero();
        for k in 1..m {
            let b = S::from_rational(&binomial(m as u64, k as u64));
            sum = sum + &(b * &s[k - 1] * &s[m - k - 1]);
        }
        let rhs = ds + &(half.clone() * &s[2] * &sum);
        report.push(format!("n={m}"), &(s[m].clone() - &rhs));
    }
    Ok(report)
}

/// `d_u V - d_w V + 1 + (1/2) S_2(z0+u) V^2 = 0` coefficientwise, with `S_2`
/// from the classical formula. Needs budget `N + 2`; residual coefficients of
/// total degree up to `N - 1` are reported by degree.
pub fn verify_frame_flow<S: Scalar>(ctx: &BasePointContext<S>, n: usize) -> Result<ResidualReport> {
    ctx.require(n + 2)?;
    let jet = ctx.jet();
    let v = Bivariate::new(jet)?.frame()?;
    let f1 = jet.diff()?;
    let f2 = f1.diff()?;
    let f3 = f2.diff()?;
    let inv1 = f1.recip()?;
    let r2 = f2.clone() * inv1.clone();
    let s2 = f3 * inv1 - (r2.clone() * r2).scale(&S::from_rational(&crate::coeff::rational(3, 2)));
    let s2 = Jet2::from_jet1_s(&s2);
    let one = Jet2::constant(S::one(), v.order());
    let half = S::from_i64(2).inv()?;
    let residual = v.diff_s()? - v.diff_t()? + one + (s2 * v.clone() * v).scale(&half);
    let mut report = ResidualReport::new::<S>("d_u V - d_w V = -1 - S_2 V^2/2");
    for d in 0..=residual.order() {
        let coeffs: Vec<&S> = residual.terms().filter(|(j, k, _)| j + k == d).map(|(_, _, c)| c).collect();
        report.push_many(format!("degree {d}"), coeffs);
    }
    Ok(report)
}

/// `(n+1) psi_n = psi_{n-1}' + sum_{k=2}^{n-2} psi_k psi_{n-k}` for
/// `3 <= n <= N`, together with the `n = 2` case in its actual form
/// `3 psi_2 = psi_1' - psi_1^2`. Needs budget `N + 2`.
pub fn verify_aharonov_recursion<S: Scalar>(ctx: &BasePointContext<S>, n: usize) -> Result<ResidualReport> {
    ctx.require(n + 2)?;
    let n = n.max(2);
    let psi = aharonov_psi(ctx, n)?;
    let k = Bivariate::new(ctx.jet())?.aharonov()?;
    // psi_m'(z0) = -[u^1 w^m] K
    let dpsi = |m: usize| -k.coeff(1, m).clone();
    let mut report = ResidualReport::new::<S>("(n+1) psi_n = psi_{n-1}' + sum psi_k psi_{n-k}");
    let r2 = psi[2].clone() * &S::from_i64(3) - &dpsi(1) + &(psi[1].clone() * &psi[1]);
    report.push("n=2 (3 psi_2 = psi_1' - psi_1^2)", &r2);
    for m in 3..=n {
        let mut rhs = dpsi(m - 1);
        for j in 2..=m - 2 {
            rhs = rhs + &(psi[j].clone() * &psi[m - j]);
        }
        report.push(format!("n={m}"), &(psi[m].clone() * &S::from_i64(m as i64 + 1) - &rhs));
    }
    Ok(report)
}

/// `q_k' = q_{k+1} - q_1 q_k` for `1 <= k <= N`, with `q_k(z0+u)` read off the
/// bivariate expansion of `f(z0+u+w)`. Needs budget `N + 2`.
pub fn verify_q_derivative<S: Scalar>(ctx: &BasePointContext<S>, n: usize) -> Result<ResidualReport> {
    ctx.require(n + 2)?;
    let m = ctx.order_budget();
    let big_f = Jet2::from_jet1_sum(ctx.jet());
    // c_j(u) = [w^j] f(z0+u+w) = f^{(j)}(z0+u)/j!
    let column = |j: usize| Jet1::new((0..=m - j).map(|i| big_f.coeff(i, j).clone()).collect());
    let inv_c1 = column(1).recip()?;
    let q = q_invariants(ctx, n + 1)?;
    let mut report = ResidualReport::new::<S>("q_k' = q_{k+1} - q_1 q_k");
    for k in 1..=n {
        let qk = (column(k + 1) * inv_c1.clone()).scale(&factorial::<S>(k + 1));
        let dq = qk.coeff(1).clone();
        report.push(format!("k={k}"), &(dq - &q[k + 1] + &(q[1].clone() * &q[k])));
    }
    Ok(report)
}

/// `psi_n` and `S_n` (`2 <= n <= N`) agree for `f` and `m ∘ f`.
pub fn verify_moebius_invariance<S: Scalar>(
    ctx: &BasePointContext<S>,
    m: &Mobius,
    n: usize,
) -> Result<ResidualReport> {
    if m.has_pole_at(ctx.jet().value()) {
        return Err(Error::PoleAtBasePoint);
    }
    let g = ctx.f().then_mobius(m);
    let other = BasePointContext::new(g, ctx.z0().clone(), ctx.order_budget())?;
    let mut report = ResidualReport::new::<S>("psi_n, S_n invariant under Mobius postcomposition");
    let (pa, pb) = (aharonov_psi(ctx, n)?, aharonov_psi(&other, n)?);
    let (sa, sb) = (tamanoi_s_via_frame(ctx, n)?, tamanoi_s_via_frame(&other, n)?);
    for k in 2..=n {
        report.push(format!("psi{k}"), &(pa[k].clone() - &pb[k]));
        report.push(format!("S{k}"), &(sa[k].clone() - &sb[k]));
    }
    Ok(report)
}
