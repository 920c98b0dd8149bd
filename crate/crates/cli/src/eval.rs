use clap::Args;
use schwarzian_core::coeff::{with_precision, BigComplex, GaussianRational, Scalar, DEFAULT_PRECISION};
use schwarzian_core::jets::{parse_expr, HolExpr};
use schwarzian_core::metrics::{self, MetricModel, PeschlMindaContext};
use schwarzian_core::schwarzian::{BasePointContext, Indexed, SchwarzianReport};
use schwarzian_core::Error;
use serde_json::{json, Value};

use crate::{Backend, CliError, Format};

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Expression in `z`, e.g. `exp(2*z)` or `mobius(1, 0, 1, 1; z^2)`.
    #[arg(long)]
    pub expr: String,
    /// Base point, a complex constant such as `0.5`, `1/3 - i/4`.
    #[arg(long)]
    pub at: String,
    #[arg(long, default_value_t = 6)]
    pub max: usize,
    /// Domain metric: euclidean, spherical, hyperbolic or custom:<log-density>.
    #[arg(long)]
    pub metric_dom: Option<String>,
    /// Target metric, same syntax as `--metric-dom`.
    #[arg(long)]
    pub metric_cod: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    pub backend: Backend,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

struct Metrics {
    rho: MetricModel,
    sigma: MetricModel,
}

/// A complex constant written in the expression syntax.
pub fn parse_point(text: &str) -> Result<GaussianRational, CliError> {
    parse_expr(text)?
        .as_constant()
        .ok_or_else(|| CliError::Usage(format!("base point `{text}` is not a constant")))
}

pub fn run(args: &EvalArgs) -> Result<String, CliError> {
    let f = parse_expr(&args.expr)?;
    let z0 = parse_point(&args.at)?;
    let metrics = match (&args.metric_dom, &args.metric_cod) {
        (None, None) => None,
        (dom, cod) => {
            let parse = |m: &Option<String>| m.as_deref().map_or(Ok(MetricModel::euclidean()), MetricModel::parse);
            Some(Metrics { rho: parse(dom)?, sigma: parse(cod)? })
        }
    };
    let float = || with_precision(args.precision, || evaluate(&f, BigComplex::from_gaussian(&z0), args.max, &metrics));
    let value = match args.backend {
        Backend::Exact => evaluate(&f, z0.clone(), args.max, &metrics)?,
        Backend::Float => float()?,
        Backend::Auto => match evaluate(&f, z0.clone(), args.max, &metrics) {
            Err(Error::NotExact(_)) => float()?,
            other => other?,
        },
    };
    Ok(render(&value, args.format))
}

fn evaluate<S: Scalar>(f: &HolExpr, z0: S, n: usize, metrics: &Option<Metrics>) -> Result<Value, Error> {
    let ctx = BasePointContext::for_order(f.clone(), z0.clone(), n.max(2))?;
    let mut out = SchwarzianReport::compute(&ctx, n)?.to_json();
    out["backend"] = json!(S::NAME);
    if let Some(m) = metrics {
        let pm = PeschlMindaContext::for_order(f.clone(), z0, m.rho.clone(), m.sigma.clone(), n.max(1))?;
        let d = metrics::peschl_minda_d(&pm, n.max(1))?;
        let d = Indexed::new(1, d.values().iter().map(|j| j.value().clone()).collect());
        out["metrics"] = json!({
            "rho": m.rho.to_string(),
            "sigma": m.sigma.to_string(),
            "D": list(&d, "D"),
            "Q": list(&metrics::q_values(&pm, n.max(1))?, "Q"),
            "Sigma": list(&metrics::invariant_schwarzian(&pm, n)?, "Sigma"),
        });
    }
    Ok(out)
}

fn list<S: Scalar>(x: &Indexed<S>, name: &str) -> Value {
    x.iter()
        .map(|(m, v)| {
            let (re, im) = v.decimal_parts();
            json!({"n": m, "name": format!("{name}{m}"), "value": v.render(), "re": re, "im": im})
        })
        .collect()
}

const SECTIONS: [&str; 4] = ["q", "psi", "S", "sigma"];
const METRIC_SECTIONS: [&str; 3] = ["D", "Q", "Sigma"];

fn render(value: &Value, format: Format) -> String {
    if format == Format::Json {
        return serde_json::to_string_pretty(value).expect("report serializes");
    }
    let entry = |e: &Value| {
        let name = e["name"].as_str().unwrap_or_default();
        let v = e["value"].as_str().unwrap_or_default();
        match format {
            Format::Latex => {
                let (head, n) = name.split_at(name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len()));
                let head = match head {
                    "psi" | "sigma" | "Sigma" => format!("\\{head}"),
                    _ => head.to_string(),
                };
                format!("{head}_{{{n}}} = {v}")
            }
            _ => format!("{name} = {v}"),
        }
    };
    let mut lines = Vec::new();
    for s in SECTIONS {
        lines.extend(value[s].as_array().into_iter().flatten().map(entry));
    }
    lines.push(format!("pre_schwarzian = {}", value["pre_schwarzian"].as_str().unwrap_or_default()));
    lines.push(format!("schwarzian = {}", value["schwarzian"].as_str().unwrap_or_default()));
    if let Some(m) = value.get("metrics") {
        lines.push(format!("metrics: {} -> {}", m["rho"].as_str().unwrap_or_default(), m["sigma"].as_str().unwrap_or_default()));
        for s in METRIC_SECTIONS {
            lines.extend(m[s].as_array().into_iter().flatten().map(entry));
        }
    }
    lines.join("\n")
}
