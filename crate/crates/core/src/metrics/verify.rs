use super::{invariant_schwarzian, invariant_schwarzian_jets, q_invariants, q_values, rho_derivative};
use super::{MetricModel, PeschlMindaContext};
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::jets::{Jet2, Mobius};
use crate::polyring::binomial;
use crate::schwarzian::ResidualReport;

/// Checks `rho(g(z))^2 g'(z) conj(g'(z)) = rho(z)^2` to total order 2 around
/// `z0`.
pub fn validate_isometry<S: Scalar>(metric: &MetricModel, g: &Mobius, z0: &S) -> Result<()> {
    let not_isometry = || Error::NotIsometry(format!("{g} for the {metric} metric at {}", z0.render()));
    let jet = g.to_expr().to_jet(z0, 3)?;
    metric.check_point(z0)?;
    metric.check_point(jet.value()).map_err(|_| not_isometry())?;
    let here = metric.jets_at(z0, 3)?;
    let image = metric.jets_along(&Jet2::from_jet1_s(&jet), &Jet2::from_jet1_t(&jet.conj_coeffs()))?;
    let d = jet.diff()?;
    let gp = Jet2::from_jet1_s(&d) * Jet2::from_jet1_t(&d.conj_coeffs());
    let lhs = image.density.clone() * image.density * gp;
    let residual = (lhs - here.density.clone() * here.density).truncate(2);
    if residual.is_zero() || residual.terms().all(|(_, _, c)| c.is_negligible(1.0)) {
        Ok(())
    } else {
        Err(not_isometry())
    }
}

/// `d_rho Q^n = Q^{n+1} - (Q^1 - n d_rho log rho) Q^n` coefficientwise for
/// `1 <= n <= N`. Needs budget `N + 2`.
pub fn verify_metric_q_derivative<S: Scalar>(ctx: &PeschlMindaContext<S>, n: usize) -> Result<ResidualReport> {
    let q = q_invariants(ctx, n + 1)?;
    let rho = ctx.rho_jet();
    let d_log_rho = rho.rho_log_derivative();
    let mut report = ResidualReport::new::<S>("d_rho Q^n = Q^{n+1} - (Q^1 - n d_rho log rho) Q^n");
    for m in 1..=n {
        let coefficient = q[1].clone() - d_log_rho.scale(&S::from_i64(m as i64));
        let residual = rho_derivative(&q[m], rho)? - q[m + 1].clone() + coefficient * q[m].clone();
        report.push_many(format!("n={m}"), residual.terms().map(|(_, _, c)| c));
    }
    Ok(report)
}

/// `Sigma^n = (d_rho - (n-1) d_rho log rho) Sigma^{n-1}
/// + (1/2) Sigma^2 sum_{k=1}^{n-1} C(n,k) Sigma^{k-1} Sigma^{n-k-1}` at `z0`
/// for `3 <= n <= N`. Needs budget `N + 2`.
pub fn verify_invariant_recursion<S: Scalar>(ctx: &PeschlMindaContext<S>, n: usize) -> Result<ResidualReport> {
    let sigma = invariant_schwarzian_jets(ctx, n)?;
    let rho = ctx.rho_jet();
    let d_log_rho = rho.rho_log_derivative();
    let half = S::from_i64(2).inv()?;
    let point = |k: usize| sigma[k].value().clone();
    let mut report =
        ResidualReport::new::<S>("Sigma^n = (d_rho - (n-1) d_rho log rho) Sigma^{n-1} + Sigma^2/2 sum C(n,k) Sigma^{k-1} Sigma^{n-k-1}");
    for m in 3..=n {
        let prev = &sigma[m - 1];
        let lead = rho_derivative(prev, rho)? - (d_log_rho.clone() * prev.clone()).scale(&S::from_i64(m as i64 - 1));
        let mut sum = S::zero();
        for k in 1..m {
            let b = S::from_rational(&binomial(m as u64, k as u64));
            sum = sum + &(b * &point(k - 1) * &point(m - k - 1));
        }
        let rhs = lead.value().clone() + &(half.clone() * &point(2) * &sum);
        report.push(format!("n={m}"), &(point(m) - &rhs));
    }
    Ok(report)
}

/// Compares `Q^n` (`1 <= n <= N`) and `Sigma^n` (`2 <= n <= N`) of `h ∘ f ∘ g`
/// at `g^{-1}(z0)` with those of `f` at `z0`, for isometries `g` of `rho` and
/// `h` of `sigma`. Each index gets a modulus residual `|A|^2 - |B|^2` and a
/// factor residual `A^2 - B^2 (g'/conj(g'))^n`, where `A` belongs to
/// `h ∘ f ∘ g` and `B` to `f`.
pub fn verify_isometry_invariance<S: Scalar>(
    ctx: &PeschlMindaContext<S>,
    g: &Mobius,
    h: &Mobius,
    n: usize,
) -> Result<ResidualReport> {
    let z_hat = g.inverse().apply(ctx.z0())?;
    validate_isometry(ctx.rho(), g, &z_hat)?;
    validate_isometry(ctx.sigma(), h, ctx.jet().value())?;
    let composed = ctx.f().substitute_z(&g.to_expr()).then_mobius(h);
    let other =
        PeschlMindaContext::new(composed, z_hat.clone(), ctx.rho().clone(), ctx.sigma().clone(), ctx.order_budget())?;
    let gp = g.to_expr().to_jet(&z_hat, 1)?.coeff(1).clone();
    let unit_sq = gp.div(&gp.conj())?;
    let mut report = ResidualReport::new::<S>("Q^n, Sigma^n of h o f o g match those of f up to (g'/|g'|)^n");
    let (qa, qb) = (q_values(&other, n)?, q_values(ctx, n)?);
    let (sa, sb) = (invariant_schwarzian(&other, n)?, invariant_schwarzian(ctx, n)?);
    let mut push = |label: &str, k: usize, a: &S, b: &S| {
        report.push(format!("|{label}{k}|"), &(a.norm_sqr() - &b.norm_sqr()));
        let factor = unit_sq.powi(k as u32);
        report.push(format!("{label}{k} factor"), &(a.clone() * a - &(b.clone() * b * &factor)));
    };
    for k in 1..=n {
        push("Q", k, &qa[k], &qb[k]);
    }
    for k in 2..=n {
        push("Sigma", k, &sa[k], &sb[k]);
    }
    Ok(report)
}
