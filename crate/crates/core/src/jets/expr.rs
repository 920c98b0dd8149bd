//! Expression trees for test functions and metric log-densities.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' int)?
//! int     := ('-' | '+')? digits | '(' ('-' | '+')? digits ')'
//! atom    := number 'i'? | 'i' | 'z' | 'zbar' | '(' expr ')'
//!          | 'exp' '(' expr ')' | 'log' '(' expr ')'
//!          | 'mobius' '(' expr ',' expr ',' expr ',' expr ';' expr ')'
//! number  := digits ('.' digits)? (('e' | 'E') ('-' | '+')? digits)?
//! ```
//!
//! Literals are read exactly as rationals. The four Möbius coefficients must
//! be constant expressions.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Jet1, TruncatedSeries};
use crate::coeff::{format_complex, parse_rational, ExactRational, GaussianRational, Scalar};
use crate::error::{Error, ParseError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Z,
    Zbar,
}

/// `z -> (a z + b)/(c z + d)` with `ad - bc != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius {
    a: GaussianRational,
    b: GaussianRational,
    c: GaussianRational,
    d: GaussianRational,
}

impl Mobius {
    pub fn new(
        a: GaussianRational,
        b: GaussianRational,
        c: GaussianRational,
        d: GaussianRational,
    ) -> Result<Self> {
        let m = Self { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::DegenerateMobius);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        let (one, zero) = (GaussianRational::one(), GaussianRational::zero());
        Self { a: one.clone(), b: zero.clone(), c: zero, d: one }
    }

    pub fn coefficients(&self) -> [&GaussianRational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> GaussianRational {
        self.a.clone() * &self.d - self.b.clone() * &self.c
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            a: self.a.clone() * &other.a + self.b.clone() * &other.c,
            b: self.a.clone() * &other.b + self.b.clone() * &other.d,
            c: self.c.clone() * &other.a + self.d.clone() * &other.c,
            d: self.c.clone() * &other.b + self.d.clone() * &other.d,
        }
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    /// Whether `z` is the pole `-d/c`.
    pub fn has_pole_at<S: Scalar>(&self, z: &S) -> bool {
        (S::from_gaussian(&self.c) * z + &S::from_gaussian(&self.d)).is_zero()
    }

    pub fn apply<S: Scalar>(&self, z: &S) -> Result<S> {
        let num = S::from_gaussian(&self.a) * z + &S::from_gaussian(&self.b);
        let den = S::from_gaussian(&self.c) * z + &S::from_gaussian(&self.d);
        num.div(&den).map_err(|_| Error::PoleAtBasePoint)
    }

    fn apply_series<S: Scalar, T: TruncatedSeries<S>>(&self, z: &T) -> Result<T> {
        let num = z.scale(&S::from_gaussian(&self.a)) + z.constant_like(S::from_gaussian(&self.b));
        let den = z.scale(&S::from_gaussian(&self.c)) + z.constant_like(S::from_gaussian(&self.d));
        Ok(num * den.recip().map_err(|_| Error::PoleAtBasePoint)?)
    }

    /// The map as an expression in `z`.
    pub fn to_expr(&self) -> HolExpr {
        HolExpr::Mobius(self.clone(), Box::new(HolExpr::Var(Var::Z)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HolExpr {
    Const(GaussianRational),
    Var(Var),
    Neg(Box<HolExpr>),
    Add(Box<HolExpr>, Box<HolExpr>),
    Sub(Box<HolExpr>, Box<HolExpr>),
    Mul(Box<HolExpr>, Box<HolExpr>),
    Div(Box<HolExpr>, Box<HolExpr>),
    Pow(Box<HolExpr>, i64),
    Exp(Box<HolExpr>),
    Log(Box<HolExpr>),
    Mobius(Mobius, Box<HolExpr>),
}

/// Parses `text` per the module grammar.
pub fn parse_expr(text: &str) -> Result<HolExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input").into());
    }
    Ok(e)
}

impl std::str::FromStr for HolExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

impl HolExpr {
    pub fn constant(c: GaussianRational) -> Self {
        HolExpr::Const(c)
    }

    pub fn z() -> Self {
        HolExpr::Var(Var::Z)
    }

    pub fn mentions(&self, var: Var) -> bool {
        match self {
            HolExpr::Const(_) => false,
            HolExpr::Var(v) => *v == var,
            HolExpr::Neg(a) | HolExpr::Pow(a, _) | HolExpr::Exp(a) | HolExpr::Log(a) | HolExpr::Mobius(_, a) => {
                a.mentions(var)
            }
            HolExpr::Add(a, b) | HolExpr::Sub(a, b) | HolExpr::Mul(a, b) | HolExpr::Div(a, b) => {
                a.mentions(var) || b.mentions(var)
            }
        }
    }

    pub fn is_holomorphic(&self) -> bool {
        !self.mentions(Var::Zbar)
    }

    /// Whether the tree contains `exp` or `log`.
    pub fn is_transcendental(&self) -> bool {
        match self {
            HolExpr::Const(_) | HolExpr::Var(_) => false,
            HolExpr::Exp(_) | HolExpr::Log(_) => true,
            HolExpr::Neg(a) | HolExpr::Pow(a, _) | HolExpr::Mobius(_, a) => a.is_transcendental(),
            HolExpr::Add(a, b) | HolExpr::Sub(a, b) | HolExpr::Mul(a, b) | HolExpr::Div(a, b) => {
                a.is_transcendental() || b.is_transcendental()
            }
        }
    }

    /// Replaces every `z` by `inner`.
    pub fn substitute_z(&self, inner: &HolExpr) -> HolExpr {
        let sub = |e: &HolExpr| Box::new(e.substitute_z(inner));
        match self {
            HolExpr::Var(Var::Z) => inner.clone(),
            HolExpr::Const(_) | HolExpr::Var(Var::Zbar) => self.clone(),
            HolExpr::Neg(a) => HolExpr::Neg(sub(a)),
            HolExpr::Add(a, b) => HolExpr::Add(sub(a), sub(b)),
            HolExpr::Sub(a, b) => HolExpr::Sub(sub(a), sub(b)),
            HolExpr::Mul(a, b) => HolExpr::Mul(sub(a), sub(b)),
            HolExpr::Div(a, b) => HolExpr::Div(sub(a), sub(b)),
            HolExpr::Pow(a, n) => HolExpr::Pow(sub(a), *n),
            HolExpr::Exp(a) => HolExpr::Exp(sub(a)),
            HolExpr::Log(a) => HolExpr::Log(sub(a)),
            HolExpr::Mobius(m, a) => HolExpr::Mobius(m.clone(), sub(a)),
        }
    }

    /// `m ∘ self`.
    pub fn then_mobius(&self, m: &Mobius) -> HolExpr {
        match self {
            HolExpr::Mobius(inner, a) => HolExpr::Mobius(m.compose(inner), a.clone()),
            _ => HolExpr::Mobius(m.clone(), Box::new(self.clone())),
        }
    }

    /// Symbolic partial derivative, treating `z` and `zbar` as independent.
    pub fn derivative(&self, var: Var) -> HolExpr {
        use HolExpr as E;
        let zero = || E::Const(GaussianRational::zero());
        match self {
            E::Const(_) => zero(),
            E::Var(v) if *v == var => E::Const(GaussianRational::one()),
            E::Var(_) => zero(),
            E::Neg(a) => neg(a.derivative(var)),
            E::Add(a, b) => add(a.derivative(var), b.derivative(var)),
            E::Sub(a, b) => add(a.derivative(var), neg(b.derivative(var))),
            E::Mul(a, b) => add(
                mul(a.derivative(var), (**b).clone()),
                mul((**a).clone(), b.derivative(var)),
            ),
            E::Div(a, b) => add(
                div(a.derivative(var), (**b).clone()),
                neg(div(mul((**a).clone(), b.derivative(var)), E::Pow(b.clone(), 2))),
            ),
            E::Pow(_, 0) => zero(),
            E::Pow(a, n) => mul(
                mul(E::Const(GaussianRational::from_i64(*n)), E::Pow(a.clone(), n - 1)),
                a.derivative(var),
            ),
            E::Exp(a) => mul(self.clone(), a.derivative(var)),
            E::Log(a) => div(a.derivative(var), (**a).clone()),
            E::Mobius(m, a) => {
                let den = add(
                    mul(E::Const(m.c.clone()), (**a).clone()),
                    E::Const(m.d.clone()),
                );
                mul(div(E::Const(m.det()), E::Pow(Box::new(den), 2)), a.derivative(var))
            }
        }
    }

    /// Evaluates with `z` and `zbar` replaced by the given series. Division by
    /// a series vanishing at the origin reports a pole, a logarithm of one on
    /// the branch cut reports a log branch.
    pub fn eval_series<S: Scalar, T: TruncatedSeries<S>>(&self, z: &T, zbar: Option<&T>) -> Result<T> {
        use HolExpr as E;
        let ev = |e: &HolExpr| e.eval_series(z, zbar);
        Ok(match self {
            E::Const(c) => z.constant_like(S::from_gaussian(c)),
            E::Var(Var::Z) => z.clone(),
            E::Var(Var::Zbar) => zbar
                .ok_or_else(|| Error::NotHolomorphic("zbar".to_string()))?
                .clone(),
            E::Neg(a) => -ev(a)?,
            E::Add(a, b) => ev(a)? + ev(b)?,
            E::Sub(a, b) => ev(a)? - ev(b)?,
            E::Mul(a, b) => ev(a)? * ev(b)?,
            E::Div(a, b) => ev(a)? * ev(b)?.recip().map_err(|_| Error::PoleAtBasePoint)?,
            E::Pow(a, n) => ev(a)?.powi(*n).map_err(|_| Error::PoleAtBasePoint)?,
            E::Exp(a) => ev(a)?.exp()?,
            E::Log(a) => ev(a)?.ln().map_err(|e| match e {
                Error::LogBranchCut | Error::DivisionByZero => Error::LogBranchAtBasePoint,
                other => other,
            })?,
            E::Mobius(m, a) => m.apply_series(&ev(a)?)?,
        })
    }

    /// Taylor jet of `self(z0 + w)` to order `order`.
    pub fn to_jet<S: Scalar>(&self, z0: &S, order: usize) -> Result<Jet1<S>> {
        if !self.is_holomorphic() {
            return Err(Error::NotHolomorphic(self.to_string()));
        }
        self.eval_series(&Jet1::variable(z0.clone(), order), None)
    }

    /// Point value at `z0` (and `zbar0` when the expression mentions it).
    pub fn eval_at<S: Scalar>(&self, z0: &S, zbar0: Option<&S>) -> Result<S> {
        let z = Jet1::constant(z0.clone(), 0);
        let zb = zbar0.map(|v| Jet1::constant(v.clone(), 0));
        Ok(self.eval_series(&z, zb.as_ref())?.value().clone())
    }

    /// Folds a `z`-free tree to an exact constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.mentions(Var::Z) || self.mentions(Var::Zbar) {
            return None;
        }
        self.eval_at(&GaussianRational::zero(), None).ok()
    }
}

fn neg(a: HolExpr) -> HolExpr {
    match a {
        HolExpr::Const(c) => HolExpr::Const(-c),
        a => HolExpr::Neg(Box::new(a)),
    }
}

fn is_const(a: &HolExpr, v: i64) -> bool {
    matches!(a, HolExpr::Const(c) if *c == GaussianRational::from_i64(v))
}

fn add(a: HolExpr, b: HolExpr) -> HolExpr {
    if is_const(&a, 0) {
        b
    } else if is_const(&b, 0) {
        a
    } else {
        HolExpr::Add(Box::new(a), Box::new(b))
    }
}

fn mul(a: HolExpr, b: HolExpr) -> HolExpr {
    if is_const(&a, 0) || is_const(&b, 0) {
        HolExpr::Const(GaussianRational::zero())
    } else if is_const(&a, 1) {
        b
    } else if is_const(&b, 1) {
        a
    } else {
        HolExpr::Mul(Box::new(a), Box::new(b))
    }
}

fn div(a: HolExpr, b: HolExpr) -> HolExpr {
    if is_const(&a, 0) {
        a
    } else {
        HolExpr::Div(Box::new(a), Box::new(b))
    }
}

fn render_const(c: &GaussianRational) -> String {
    let text = format_complex(&c.re, &c.im, None);
    if c.im.is_zero() && !c.re.is_negative() && c.re.is_integer() {
        text
    } else {
        format!("({text})")
    }
}

impl fmt::Display for HolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use HolExpr as E;
        match self {
            E::Const(c) => f.write_str(&render_const(c)),
            E::Var(Var::Z) => f.write_str("z"),
            E::Var(Var::Zbar) => f.write_str("zbar"),
            E::Neg(a) => write!(f, "(-{a})"),
            E::Add(a, b) => write!(f, "({a} + {b})"),
            E::Sub(a, b) => write!(f, "({a} - {b})"),
            E::Mul(a, b) => write!(f, "({a}*{b})"),
            E::Div(a, b) => write!(f, "({a}/{b})"),
            E::Pow(a, n) if *n < 0 => write!(f, "({a})^({n})"),
            E::Pow(a, n) => write!(f, "({a})^{n}"),
            E::Exp(a) => write!(f, "exp({a})"),
            E::Log(a) => write!(f, "log({a})"),
            E::Mobius(m, a) => write!(
                f,
                "mobius({}, {}, {}, {}; {a})",
                render_const(&m.a),
                render_const(&m.b),
                render_const(&m.c),
                render_const(&m.d)
            ),
        }
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// Collapses an arithmetic node whose operands are all constants. Nodes
/// that would divide by zero stay unevaluated.
fn fold(e: HolExpr) -> HolExpr {
    let constant = match &e {
        HolExpr::Neg(a) | HolExpr::Pow(a, _) => matches!(**a, HolExpr::Const(_)),
        HolExpr::Add(a, b) | HolExpr::Sub(a, b) | HolExpr::Mul(a, b) | HolExpr::Div(a, b) => {
            matches!(**a, HolExpr::Const(_)) && matches!(**b, HolExpr::Const(_))
        }
        _ => false,
    };
    if !constant {
        return e;
    }
    match e.as_constant() {
        Some(c) => HolExpr::Const(c),
        None => e,
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError::new(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<HolExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = fold(HolExpr::Add(Box::new(lhs), Box::new(self.term()?)));
            } else if self.eat(b'-') {
                lhs = fold(HolExpr::Sub(Box::new(lhs), Box::new(self.term()?)));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<HolExpr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = fold(HolExpr::Mul(Box::new(lhs), Box::new(self.unary()?)));
            } else if self.eat(b'/') {
                lhs = fold(HolExpr::Div(Box::new(lhs), Box::new(self.unary()?)));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<HolExpr> {
        if self.eat(b'-') {
            Ok(fold(HolExpr::Neg(Box::new(self.unary()?))))
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<HolExpr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let n = self.integer()?;
        if self.peek() == Some(b'^') {
            return Err(self.error("chained exponents need parentheses").into());
        }
        Ok(fold(HolExpr::Pow(Box::new(base), n)))
    }

    fn integer(&mut self) -> Result<i64> {
        let paren = self.eat(b'(');
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer exponent").into());
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let n: i64 = text.parse().map_err(|_| ParseError::new(start, "exponent out of range"))?;
        if paren {
            self.expect(b')')?;
        }
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<HolExpr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(_) => Err(self.error("expected a number, variable, function or '('").into()),
            None => Err(self.error("unexpected end of input").into()),
        }
    }

    fn number(&mut self) -> Result<HolExpr> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            return Err(ParseError::new(start, "malformed number").into());
        }
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii number");
        let value = parse_rational(text).ok_or_else(|| ParseError::new(start, "malformed number"))?;
        let imaginary = self.pos < self.src.len()
            && self.src[self.pos] == b'i'
            && !self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphanumeric());
        if imaginary {
            self.pos += 1;
            return Ok(HolExpr::Const(GaussianRational::new(ExactRational::zero(), value)));
        }
        Ok(HolExpr::Const(GaussianRational::new(value, ExactRational::zero())))
    }

    fn identifier(&mut self) -> Result<HolExpr> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        match name {
            "z" => Ok(HolExpr::Var(Var::Z)),
            "zbar" => Ok(HolExpr::Var(Var::Zbar)),
            "i" => Ok(HolExpr::Const(GaussianRational::i())),
            "exp" | "log" => {
                self.expect(b'(')?;
                let arg = Box::new(self.expr()?);
                self.expect(b')')?;
                Ok(if name == "exp" { HolExpr::Exp(arg) } else { HolExpr::Log(arg) })
            }
            "mobius" => {
                self.expect(b'(')?;
                let mut coeffs = Vec::with_capacity(4);
                for sep in [b',', b',', b',', b';'] {
                    self.skip_ws();
                    let at = self.pos;
                    let e = self.expr()?;
                    let c = e
                        .as_constant()
                        .ok_or_else(|| ParseError::new(at, "Möbius coefficients must be exact constants"))?;
                    coeffs.push(c);
                    self.expect(sep)?;
                }
                let arg = self.expr()?;
                self.expect(b')')?;
                let d = coeffs.pop().expect("four coefficients");
                let c = coeffs.pop().expect("four coefficients");
                let b = coeffs.pop().expect("four coefficients");
                let a = coeffs.pop().expect("four coefficients");
                Ok(HolExpr::Mobius(Mobius::new(a, b, c, d)?, Box::new(arg)))
            }
            _ => Err(ParseError::new(start, format!("unknown identifier '{name}'")).into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{gaussian, rational};

    type G = GaussianRational;

    fn jet(e: &str, z0: G, n: usize) -> Jet1<G> {
        parse_expr(e).unwrap().to_jet(&z0, n).unwrap()
    }

    fn ints(cs: &[i64]) -> Jet1<G> {
        Jet1::new(cs.iter().map(|&c| G::from_i64(c)).collect())
    }

    #[test]
    fn parse_shapes() {
        let e = parse_expr("exp(2*z)").unwrap();
        assert!(matches!(&e, HolExpr::Exp(inner) if matches!(**inner, HolExpr::Mul(_, _))));
        assert!(matches!(parse_expr("(z+1)/(z-1)").unwrap(), HolExpr::Div(_, _)));
        assert!(matches!(parse_expr("-z^2").unwrap(), HolExpr::Neg(_)));
        assert_eq!(parse_expr("2i").unwrap(), HolExpr::Const(gaussian(rational(0, 1), rational(2, 1))));
        assert_eq!(parse_expr(" 1.5e1 ").unwrap(), HolExpr::Const(G::from_i64(15)));
        assert!(parse_expr("zbar*z").unwrap().mentions(Var::Zbar));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let offset = |s: &str| match parse_expr(s) {
            Err(Error::Parse(p)) => p.offset,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(offset("z^^2"), 2);
        assert_eq!(offset("z +"), 3);
        assert_eq!(offset("sin(z)"), 0);
        assert_eq!(offset("(z"), 2);
        assert_eq!(offset("mobius(z, 0, 0, 1; z)"), 7);
        assert_eq!(parse_expr("mobius(1, 2, 2, 4; z)"), Err(Error::DegenerateMobius));
    }

    #[test]
    fn jets_of_examples() {
        assert_eq!(jet("z", G::from_i64(3), 2), ints(&[3, 1, 0]));
        assert_eq!(jet("1/(1-z)", G::zero(), 3), ints(&[1, 1, 1, 1]));
        let e = jet("exp(z)", G::zero(), 3);
        let expected: Vec<G> = [(1, 1), (1, 1), (1, 2), (1, 6)]
            .iter()
            .map(|&(n, d)| G::from_rational(&rational(n, d)))
            .collect();
        assert_eq!(e, Jet1::new(expected));
        assert_eq!(jet("log(1+z)", G::zero(), 2).coeffs()[2], G::from_rational(&rational(-1, 2)));
        assert_eq!(jet("mobius(0,1,1,0; z)", G::from_i64(2), 1).coeffs()[1], G::from_rational(&rational(-1, 4)));
        assert_eq!(jet("z^(-1)", G::from_i64(1), 2), ints(&[1, -1, 1]));
    }

    #[test]
    fn evaluation_errors() {
        let at0 = |s: &str| parse_expr(s).unwrap().to_jet(&G::zero(), 3).unwrap_err();
        assert_eq!(at0("1/z"), Error::PoleAtBasePoint);
        assert_eq!(at0("log(z)"), Error::LogBranchAtBasePoint);
        assert_eq!(at0("log(z - 1)"), Error::LogBranchAtBasePoint);
        assert_eq!(at0("mobius(1, 1, 1, 0; z)"), Error::PoleAtBasePoint);
        assert_eq!(at0("exp(z + 1)"), Error::NotExact("exp"));
        assert!(matches!(at0("z*zbar"), Error::NotHolomorphic(_)));
    }

    #[test]
    fn symbolic_derivative_matches_jet() {
        let z0 = gaussian(rational(1, 3), rational(1, 2));
        for text in ["z^3 - 2*z", "(z + 1)/(z - 2)", "mobius(1, 2, 3, 4; z^2)", "z^(-2)"] {
            let e = parse_expr(text).unwrap();
            let d = e.derivative(Var::Z).to_jet(&z0, 3).unwrap();
            let from_jet = e.to_jet(&z0, 4).unwrap().diff().unwrap();
            assert_eq!(d, from_jet, "{text}");
        }
    }

    #[test]
    fn display_round_trips() {
        for text in ["exp(2*z)", "(z+1)/(z-1)", "mobius(1/2, -i, 0, 1; z^(-2))", "-z^2 + 3.25i*zbar"] {
            let e = parse_expr(text).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{text}");
        }
    }

    #[test]
    fn mobius_algebra() {
        let m = Mobius::new(G::from_i64(1), G::from_i64(2), G::from_i64(3), G::from_i64(4)).unwrap();
        let z = gaussian(rational(1, 5), rational(0, 1));
        let w = m.apply(&z).unwrap();
        assert_eq!(m.inverse().apply(&w).unwrap(), z);
        let mm = m.compose(&m);
        assert_eq!(mm.apply(&z).unwrap(), m.apply(&w).unwrap());
        assert!(m.has_pole_at(&G::from_rational(&rational(-4, 3))));
    }
}
