use std::fmt;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::jets::{parse_expr, HolExpr, Jet2, TruncatedSeries, Var};

/// A conformal metric `rho(z)|dz|` on a plane domain.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricModel {
    /// `|dz|/(1 + delta |z|^2)` for `delta` in `{-1, 0, 1}`; the domain is the
    /// unit disk for `delta = -1` and the plane otherwise.
    Standard(i8),
    /// `exp(l(z, zbar))|dz|` for a real-valued log-density `l`. Reality and
    /// regularity are checked at base points only.
    Custom { log_density: HolExpr, dz: HolExpr },
}

/// Wirtinger jets of a metric at a point, in the displacement variables
/// `(s, t) = (z - z0, conj(z) - conj(z0))` or along a map.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricJet<S> {
    /// `rho`.
    pub density: Jet2<S>,
    /// `1/rho`.
    pub inv_density: Jet2<S>,
    /// `d log(rho)/dz`.
    pub dlog: Jet2<S>,
    /// `log(rho) - log(rho(z0))`.
    pub log_density_rel: Jet2<S>,
}

impl<S: Scalar> MetricJet<S> {
    /// `c_{j,k} - conj(c_{k,j})` for the relative log-density; it vanishes for a
    /// real-valued density.
    pub fn reality_defect(&self) -> Jet2<S> {
        self.log_density_rel.clone() - self.log_density_rel.conj_swap()
    }

    /// `d_rho log(rho) = dlog/rho`.
    pub fn rho_log_derivative(&self) -> Jet2<S> {
        self.inv_density.clone() * self.dlog.clone()
    }
}

impl MetricModel {
    pub fn euclidean() -> Self {
        MetricModel::Standard(0)
    }

    pub fn spherical() -> Self {
        MetricModel::Standard(1)
    }

    pub fn hyperbolic() -> Self {
        MetricModel::Standard(-1)
    }

    pub fn standard(delta: i8) -> Result<Self> {
        match delta {
            -1..=1 => Ok(MetricModel::Standard(delta)),
            _ => Err(Error::MetricSpec(format!("curvature sign {delta} is not in {{-1, 0, 1}}"))),
        }
    }

    /// Metric with log-density `log_density`, an expression in `z` and `zbar`.
    pub fn custom(log_density: HolExpr) -> Self {
        let dz = log_density.derivative(Var::Z);
        MetricModel::Custom { log_density, dz }
    }

    /// `euclidean`, `spherical`, `hyperbolic` or `custom:<log-density>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "euclidean" => Ok(Self::euclidean()),
            "spherical" => Ok(Self::spherical()),
            "hyperbolic" => Ok(Self::hyperbolic()),
            _ => match spec.strip_prefix("custom:") {
                Some(text) => Ok(Self::custom(parse_expr(text)?)),
                None => Err(Error::MetricSpec(spec.to_string())),
            },
        }
    }

    pub fn delta(&self) -> Option<i8> {
        match self {
            MetricModel::Standard(d) => Some(*d),
            MetricModel::Custom { .. } => None,
        }
    }

    /// Whether the density needs `exp` away from points where the
    /// log-density vanishes.
    pub fn is_transcendental(&self) -> bool {
        matches!(self, MetricModel::Custom { .. })
    }

    /// Checks that `w` lies in the domain of the metric.
    pub fn check_point<S: Scalar>(&self, w: &S) -> Result<()> {
        match self {
            MetricModel::Standard(-1) => {
                let inside = (S::one() - w.norm_sqr()).re_sign() == std::cmp::Ordering::Greater;
                if inside {
                    Ok(())
                } else {
                    Err(Error::OutsideDomain(format!("{} is not in the unit disk", w.render())))
                }
            }
            MetricModel::Standard(_) => Ok(()),
            MetricModel::Custom { log_density, .. } => {
                let l = log_density.eval_at(w, Some(&w.conj())).map_err(|e| match e {
                    Error::NotExact(_) => e,
                    e => Error::OutsideDomain(format!("log-density undefined at {}: {e}", w.render())),
                })?;
                if l.is_real() {
                    Ok(())
                } else {
                    Err(Error::OutsideDomain(format!("log-density is not real at {}", w.render())))
                }
            }
        }
    }

    /// Jets of the metric evaluated along `(w, wbar)`, where `w` and `wbar`
    /// are jets of a point and its conjugate.
    pub fn jets_along<S: Scalar>(&self, w: &Jet2<S>, wbar: &Jet2<S>) -> Result<MetricJet<S>> {
        match self {
            MetricModel::Standard(delta) => {
                let delta = S::from_i64(i64::from(*delta));
                let inv_density = w.constant_like(S::one()) + (w.clone() * wbar.clone()).scale(&delta);
                let density = inv_density.recip()?;
                let dlog = -(wbar.clone() * density.clone()).scale(&delta);
                let inv0 = inv_density.value().inv()?;
                let log_density_rel = -inv_density.scale(&inv0).ln()?;
                Ok(MetricJet { density, inv_density, dlog, log_density_rel })
            }
            MetricModel::Custom { log_density, dz } => {
                let l = log_density.eval_series(w, Some(wbar))?;
                let l0 = l.value().clone();
                let rel = l.clone() - l.constant_like(l0.clone());
                let e_rel = rel.exp()?;
                let scale = l0.exp()?;
                let density = e_rel.scale(&scale);
                let inv_density = (-rel.clone()).exp()?.scale(&scale.inv()?);
                let dlog = dz.eval_series(w, Some(wbar))?;
                Ok(MetricJet { density, inv_density, dlog, log_density_rel: rel })
            }
        }
    }

    /// Jets at `z0` in the displacement variables.
    pub fn jets_at<S: Scalar>(&self, z0: &S, order: usize) -> Result<MetricJet<S>> {
        self.check_point(z0)?;
        let z = Jet2::s_var(z0.clone(), order);
        let zbar = Jet2::t_var(z0.conj(), order);
        self.jets_along(&z, &zbar)
    }
}

impl fmt::Display for MetricModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricModel::Standard(0) => f.write_str("euclidean"),
            MetricModel::Standard(1) => f.write_str("spherical"),
            MetricModel::Standard(_) => f.write_str("hyperbolic"),
            MetricModel::Custom { log_density, .. } => write!(f, "custom:{log_density}"),
        }
    }
}

impl std::str::FromStr for MetricModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
