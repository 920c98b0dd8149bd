use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Family, Monomial, WeightedPoly};
use crate::coeff::ExactRational;

impl WeightedPoly {
    /// Plain-text form in canonical order, e.g. `x4 - 5*x1*x3 + 5*x1^2*x2`.
    pub fn to_text(&self) -> String {
        render(self, Style::Text)
    }

    /// LaTeX form in canonical order, e.g. `x_{4} - 5x_{1}x_{3} + \frac{15}{2}x_{1}^{2}x_{3}`.
    pub fn to_latex(&self) -> String {
        render(self, Style::Latex)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Copy)]
enum Style {
    Text,
    Latex,
}

fn render(p: &WeightedPoly, style: Style) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let mono = render_monomial(p.family(), m, style);
        if m.is_one() {
            out.push_str(&render_coeff(&mag, style));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&render_coeff(&mag, style));
            if let Style::Text = style {
                out.push('*');
            }
            out.push_str(&mono);
        }
    }
    out
}

fn render_coeff(c: &ExactRational, style: Style) -> String {
    match style {
        Style::Text if c.denom().is_one() => c.numer().to_string(),
        Style::Text => format!("{}/{}", c.numer(), c.denom()),
        Style::Latex if c.denom().is_one() => c.numer().to_string(),
        Style::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
    }
}

fn render_monomial(family: Family, m: &Monomial, style: Style) -> String {
    let parts: Vec<String> = m
        .exponents()
        .map(|(i, e)| match style {
            Style::Text if e == 1 => format!("{}{i}", family.var_name()),
            Style::Text => format!("{}{i}^{e}", family.var_name()),
            Style::Latex if e == 1 => format!("{}_{{{i}}}", family.latex_name()),
            Style::Latex => format!("{}_{{{i}}}^{{{e}}}", family.latex_name()),
        })
        .collect();
    match style {
        Style::Text => parts.join("*"),
        Style::Latex => parts.concat(),
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffRepr {
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: CoeffRepr,
    exps: BTreeMap<u32, u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    family: String,
    terms: Vec<TermRepr>,
}

impl Serialize for WeightedPoly {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        PolyRepr {
            family: self.family().tag().to_string(),
            terms: self
                .terms()
                .map(|(m, c)| TermRepr {
                    coeff: CoeffRepr {
                        num: c.numer().to_string(),
                        den: c.denom().to_string(),
                    },
                    exps: m.exponents().collect(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightedPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(deserializer)?;
        let family = Family::from_tag(&repr.family)
            .ok_or_else(|| D::Error::custom(format!("unknown family {:?}", repr.family)))?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let num: BigInt = t.coeff.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.coeff.den.parse().map_err(D::Error::custom)?;
            if den == BigInt::from(0) {
                return Err(D::Error::custom("zero denominator"));
            }
            if t.exps.contains_key(&0) {
                return Err(D::Error::custom("variable indices start at 1"));
            }
            terms.push((Monomial::from_exponents(t.exps), ExactRational::new(num, den)));
        }
        Ok(WeightedPoly::from_terms(family, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PolyCache;

    #[test]
    fn text_forms() {
        let cache = PolyCache::new();
        assert_eq!(cache.tamanoi(0).to_text(), "1");
        assert_eq!(cache.tamanoi(1).to_text(), "0");
        assert_eq!(cache.tamanoi(2).to_text(), "x2 - 3/2*x1^2");
        assert_eq!(cache.tamanoi(4).to_text(), "x4 - 5*x1*x3 + 5*x1^2*x2");
        assert_eq!(cache.sigma(4).to_text(), "psi4 + psi2^2");
    }

    #[test]
    fn latex_form() {
        let cache = PolyCache::new();
        assert_eq!(cache.tamanoi(2).to_latex(), "x_{2} - \\frac{3}{2}x_{1}^{2}");
        assert_eq!(cache.sigma(2).to_latex(), "\\psi_{2}");
    }

    #[test]
    fn json_schema() {
        let cache = PolyCache::new();
        let p5 = cache.tamanoi(5);
        let json = serde_json::to_string(&*p5).unwrap();
        assert!(json.starts_with("{\"family\":\"q\",\"terms\":["));
        assert!(json.contains("{\"coeff\":{\"num\":\"-45\",\"den\":\"2\"},\"exps\":{\"1\":5}}"));
        let back: WeightedPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, *p5);
        assert!(serde_json::from_str::<WeightedPoly>(r#"{"family":"w","terms":[]}"#).is_err());
    }
}
