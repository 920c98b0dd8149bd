use serde_json::{json, Value};

use super::{
    aharonov_psi, aharonov_psi_via_poly, classical_schwarzian, pre_schwarzian, q_invariants,
    sigma_values, sigma_via_psi, tamanoi_s_via_frame, tamanoi_s_via_poly, BasePointContext,
};
use crate::coeff::Scalar;
use crate::error::Result;

/// Values indexed from `first`, e.g. `q_1..q_N` or `S_0..S_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Indexed<T> {
    first: usize,
    values: Vec<T>,
}

impl<T> Indexed<T> {
    pub fn new(first: usize, values: Vec<T>) -> Self {
        Self { first, values }
    }

    pub fn first(&self) -> usize {
        self.first
    }

    /// Index of the last value; `first - 1` when empty.
    pub fn last(&self) -> usize {
        self.first + self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&T> {
        n.checked_sub(self.first).and_then(|i| self.values.get(i))
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &T)> {
        self.values.iter().enumerate().map(move |(i, v)| (self.first + i, v))
    }
}

impl<T> std::ops::Index<usize> for Indexed<T> {
    type Output = T;
    fn index(&self, n: usize) -> &T {
        self.get(n).unwrap_or_else(|| panic!("index {n} outside {}..", self.first))
    }
}

/// One residual of an identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub label: String,
    /// Modulus of the residual (for a coefficientwise check, the largest
    /// modulus among the coefficients it covers).
    pub value: f64,
    /// Exact vanishing.
    pub vanishes: bool,
}

/// Residuals of one identity, with the backend's exactness recorded so the
/// pass criterion can be exact zero or a tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub identity: String,
    pub exact: bool,
    pub entries: Vec<Residual>,
}

impl ResidualReport {
    pub fn new<S: Scalar>(identity: impl Into<String>) -> Self {
        Self { identity: identity.into(), exact: S::EXACT, entries: Vec::new() }
    }

    pub fn push<S: Scalar>(&mut self, label: impl Into<String>, residual: &S) {
        self.entries.push(Residual {
            label: label.into(),
            value: residual.modulus(),
            vanishes: residual.is_zero(),
        });
    }

    /// Records the worst of several residuals under one label.
    pub fn push_many<'a, S: Scalar + 'a>(&mut self, label: impl Into<String>, residuals: impl IntoIterator<Item = &'a S>) {
        let mut value = 0.0f64;
        let mut vanishes = true;
        for r in residuals {
            value = value.max(r.modulus());
            vanishes &= r.is_zero();
        }
        self.entries.push(Residual { label: label.into(), value, vanishes });
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.value).fold(0.0, f64::max)
    }

    /// Exact backends require every residual to vanish; floating ones compare
    /// the largest modulus with `tolerance`.
    pub fn passes(&self, tolerance: f64) -> bool {
        if self.exact {
            self.entries.iter().all(|e| e.vanishes)
        } else {
            self.entries.iter().all(|e| e.value <= tolerance)
        }
    }

    /// First failing entry, if any.
    pub fn witness(&self, tolerance: f64) -> Option<&Residual> {
        self.entries
            .iter()
            .find(|e| if self.exact { !e.vanishes } else { e.value > tolerance })
    }
}

/// Every point invariant up to order `N` together with the agreement of the
/// independent computation paths.
#[derive(Clone, Debug)]
pub struct SchwarzianReport<S> {
    pub q: Indexed<S>,
    pub psi: Indexed<S>,
    pub s: Indexed<S>,
    pub sigma: Indexed<S>,
    pub pre_schwarzian: S,
    pub schwarzian: S,
    /// `S_n` from the frame against `P_n(q)`.
    pub s_paths: ResidualReport,
    /// `psi_n` from the expansion of `G` against `Psi_n(q)`.
    pub psi_paths: ResidualReport,
    /// `S_n/(n+1)!` against the sigma polynomial at the psi values.
    pub sigma_paths: ResidualReport,
}

impl<S: Scalar> SchwarzianReport<S> {
    pub fn compute(ctx: &BasePointContext<S>, n: usize) -> Result<Self> {
        let n1 = n.max(2);
        let q = q_invariants(ctx, n1)?;
        let psi = aharonov_psi(ctx, n1)?;
        let s = tamanoi_s_via_frame(ctx, n1)?;
        let sigma = sigma_values(ctx, n1)?;

        let mut s_paths = ResidualReport::new::<S>("S_n via frame = P_n(q)");
        for ((m, a), (_, b)) in s.iter().zip(tamanoi_s_via_poly(ctx, n1)?.iter()) {
            s_paths.push(format!("n={m}"), &(a.clone() - b));
        }
        let mut psi_paths = ResidualReport::new::<S>("psi_n via expansion = Psi_n(q)");
        for ((m, a), (_, b)) in psi.iter().zip(aharonov_psi_via_poly(ctx, n1)?.iter()) {
            psi_paths.push(format!("n={m}"), &(a.clone() - b));
        }
        let mut sigma_paths = ResidualReport::new::<S>("S_n/(n+1)! = sigma_n(psi)");
        for ((m, a), (_, b)) in sigma.iter().zip(sigma_via_psi(ctx, n1)?.iter()) {
            sigma_paths.push(format!("n={m}"), &(a.clone() - b));
        }
        let trim = |x: Indexed<S>| {
            let first = x.first();
            Indexed::new(first, x.values()[..=n.max(first) - first].to_vec())
        };
        Ok(Self {
            pre_schwarzian: pre_schwarzian(ctx)?,
            schwarzian: classical_schwarzian(ctx)?,
            q: trim(q),
            psi: trim(psi),
            s: trim(s),
            sigma: trim(sigma),
            s_paths,
            psi_paths,
            sigma_paths,
        })
    }

    pub fn to_json(&self) -> Value {
        let list = |x: &Indexed<S>, name: &str| -> Value {
            x.iter()
                .map(|(m, v)| {
                    let (re, im) = v.decimal_parts();
                    json!({"n": m, "name": format!("{name}{m}"), "value": v.render(), "re": re, "im": im})
                })
                .collect()
        };
        json!({
            "q": list(&self.q, "q"),
            "psi": list(&self.psi, "psi"),
            "S": list(&self.s, "S"),
            "sigma": list(&self.sigma, "sigma"),
            "pre_schwarzian": self.pre_schwarzian.render(),
            "schwarzian": self.schwarzian.render(),
            "path_residuals": {
                "S": self.s_paths.max_residual(),
                "psi": self.psi_paths.max_residual(),
                "sigma": self.sigma_paths.max_residual(),
            },
        })
    }
}
