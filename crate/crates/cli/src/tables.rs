use schwarzian_core::polyring::{recursion_remainder, PolyCache, WeightedPoly};
use serde_json::json;

use crate::{CliError, Format, TableFamily, TABLE_CAP};

struct Row {
    n: usize,
    name: &'static str,
    lhs_suffix: Option<String>,
    poly: WeightedPoly,
}

fn rows(family: TableFamily, max: usize) -> Vec<Row> {
    let cache = PolyCache::global();
    let row = |n, name, poly: WeightedPoly| Row { n, name, lhs_suffix: None, poly };
    match family {
        TableFamily::P => (0..=max).map(|n| row(n, "P", (*cache.tamanoi(n)).clone())).collect(),
        TableFamily::Sigma => (0..=max).map(|n| row(n, "sigma", (*cache.sigma(n)).clone())).collect(),
        TableFamily::Psi => (1..=max).map(|n| row(n, "Psi", (*cache.aharonov(n)).clone())).collect(),
        TableFamily::Decomp => (3..=max)
            .map(|n| Row { n, name: "S", lhs_suffix: Some(format!("{}'", n - 1)), poly: recursion_remainder(n) })
            .collect(),
    }
}

pub fn run(family: TableFamily, max: usize, format: Format) -> Result<String, CliError> {
    if max > TABLE_CAP {
        return Err(CliError::Usage(format!("--max {max} exceeds the table cap {TABLE_CAP}")));
    }
    let rows = rows(family, max);
    let out = match format {
        Format::Text => rows
            .iter()
            .map(|r| {
                let rhs = match (&r.lhs_suffix, r.poly.is_zero()) {
                    (Some(d), true) => format!("S{d}"),
                    (Some(d), false) => format!("S{d} + {}", r.poly.to_text()),
                    (None, _) => r.poly.to_text(),
                };
                format!("{}{} = {rhs}", r.name, r.n)
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Latex => rows
            .iter()
            .map(|r| {
                let name = if r.name == "sigma" { "\\sigma" } else { r.name };
                let rhs = match (&r.lhs_suffix, r.poly.is_zero()) {
                    (Some(_), true) => format!("S_{{{}}}'", r.n - 1),
                    (Some(_), false) => format!("S_{{{}}}' + {}", r.n - 1, r.poly.to_latex()),
                    (None, _) => r.poly.to_latex(),
                };
                format!("{name}_{{{}}} = {rhs}", r.n)
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let list: Vec<_> = rows
                .iter()
                .map(|r| json!({"n": r.n, "name": format!("{}{}", r.name, r.n), "text": r.poly.to_text(), "poly": r.poly.to_json()}))
                .collect();
            serde_json::to_string_pretty(&json!({"family": format!("{family:?}"), "rows": list}))
                .expect("table serializes")
        }
    };
    Ok(out)
}
