//! Text and JSON forms of multivectors.
//!
//! Literal grammar:
//!
//! ```text
//! expr  := sign? term (("+" | "-") term)*
//! term  := coeff blade? | blade
//! coeff := decimal | p/q | "(" a ("+"|"-") b "i" ")"
//! blade := ("e" | "l") digits      (1-4 strictly ascending digits from 0..=3)
//!        | "e" | "l"               (the unit)
//! ```
//!
//! Products are not part of the literal grammar: `e0 e1` is rejected.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{Map, Value};

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::scalar::{format_rational, parse_rational, Exact, Field, Float, Scalar};

/// Symbol used when rendering basis blades.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BasisSymbol {
    /// Exterior-form basis `e^mu`.
    #[default]
    E,
    /// Clifford generators `l^mu`.
    L,
}

impl BasisSymbol {
    pub fn letter(self) -> char {
        match self {
            BasisSymbol::E => 'e',
            BasisSymbol::L => 'l',
        }
    }
}

impl std::str::FromStr for BasisSymbol {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "e" => Ok(BasisSymbol::E),
            "l" => Ok(BasisSymbol::L),
            other => Err(format!("unknown basis `{other}` (expected l|e)")),
        }
    }
}

pub(crate) struct Cursor<'a> {
    pub(crate) text: &'a str,
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    pub(crate) fn peek_at(&self, offset: usize) -> Option<char> {
        self.text[self.pos..].chars().nth(offset)
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.pos, message)
    }

    /// Unsigned decimal or `p/q`.
    pub(crate) fn number(&mut self) -> Result<BigRational> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        if self.peek() == Some('/') && matches!(self.peek_at(1), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        let token = &self.text[start..self.pos];
        if token.is_empty() {
            return Err(self.error("expected a number"));
        }
        parse_rational(token).ok_or_else(|| Error::parse(start, format!("invalid number `{token}`")))
    }

    /// `(a+bi)`, `(bi)`, `(a)`; the opening parenthesis is already consumed.
    pub(crate) fn complex_body(&mut self) -> Result<Exact> {
        let mut re = <BigRational as Field>::zero();
        let mut im = <BigRational as Field>::zero();
        let mut seen = false;
        loop {
            self.skip_ws();
            if self.eat(')') {
                if !seen {
                    return Err(self.error("empty complex coefficient"));
                }
                return Ok(Complex::new(re, im));
            }
            let negative = if self.eat('-') {
                true
            } else {
                self.eat('+');
                false
            };
            self.skip_ws();
            let magnitude = if self.peek() == Some('i') {
                BigRational::from_integer(1.into())
            } else {
                self.number()?
            };
            let value = if negative { -magnitude } else { magnitude };
            if self.eat('i') {
                im += value;
            } else {
                re += value;
            }
            seen = true;
        }
    }

    /// Blade after the basis letter; digits must be strictly ascending.
    pub(crate) fn blade_digits(&mut self) -> Result<Blade> {
        let start = self.pos;
        let mut indices = Vec::new();
        while let Some(c) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            indices.push(c as usize - '0' as usize);
            self.pos += 1;
        }
        if indices.len() > 4 {
            return Err(Error::parse(start, "blade has more than four indices"));
        }
        Blade::from_indices(&indices)
            .ok_or_else(|| Error::parse(start, "blade indices must be strictly ascending digits 0-3"))
    }

    pub(crate) fn at_blade(&self) -> bool {
        matches!(self.peek(), Some('e' | 'l'))
            && !matches!(self.peek_at(1), Some(c) if c.is_ascii_alphabetic())
    }
}

/// One `coeff blade` term; either part may be omitted but not both.
pub(crate) fn term(cur: &mut Cursor<'_>) -> Result<(Exact, Blade)> {
    cur.skip_ws();
    let mut coeff = None;
    if cur.eat('(') {
        coeff = Some(cur.complex_body()?);
    } else if matches!(cur.peek(), Some(c) if c.is_ascii_digit() || c == '.') {
        coeff = Some(Complex::new(cur.number()?, <BigRational as Field>::zero()));
    }
    cur.skip_ws();
    let blade = if cur.at_blade() {
        cur.pos += 1;
        Some(cur.blade_digits()?)
    } else {
        None
    };
    match (coeff, blade) {
        (None, None) => Err(cur.error("expected a coefficient or a blade")),
        (c, b) => Ok((c.unwrap_or_else(Exact::one), b.unwrap_or(Blade::UNIT))),
    }
}

/// Parses a multivector literal with exact coefficients.
pub fn parse_exact(text: &str) -> Result<Multivector<Exact>> {
    let mut cur = Cursor::new(text);
    let mut out = Multivector::<Exact>::zero();
    cur.skip_ws();
    let mut negative = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        let (c, b) = term(&mut cur)?;
        let c = if negative { c.negated() } else { c };
        let slot = out.coeff(b).plus(&c);
        out.set(b, slot);
        cur.skip_ws();
        if cur.at_end() {
            return Ok(out);
        }
        negative = if cur.eat('-') {
            true
        } else if cur.eat('+') {
            false
        } else {
            return Err(cur.error("expected `+` or `-` between terms"));
        };
    }
}

/// Parses a literal and rounds its coefficients to the float backend.
pub fn parse_float(text: &str) -> Result<Multivector<Float>> {
    parse_exact(text).map(|mv| mv.to_float())
}

/// Coefficient rendering for each backend.
pub trait LiteralScalar: Scalar {
    /// Plain real form without sign, or `None` if the value is not real.
    fn real_magnitude(&self) -> Option<(bool, String)>;
    fn parenthesized(&self) -> String;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl LiteralScalar for Exact {
    fn real_magnitude(&self) -> Option<(bool, String)> {
        self.im
            .is_zero()
            .then(|| (self.re.is_negative(), format_rational(&self.re.abs())))
    }

    fn parenthesized(&self) -> String {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("({}{}{}i)", format_rational(&self.re), sign, format_rational(&self.im.abs()))
    }

    fn to_json(&self) -> Value {
        Value::Array(vec![
            Value::String(format_rational(&self.re)),
            Value::String(format_rational(&self.im)),
        ])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let [re, im] = json_pair(v)?;
        let part = |x: &Value| -> Result<BigRational> {
            match x {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())),
                _ => None,
            }
            .ok_or_else(|| Error::Malformed(format!("not an exact rational: {x}")))
        };
        Ok(Complex::new(part(re)?, part(im)?))
    }
}

impl LiteralScalar for Float {
    fn real_magnitude(&self) -> Option<(bool, String)> {
        (self.im == 0.0).then(|| (self.re.is_sign_negative() && self.re != 0.0, format!("{}", self.re.abs())))
    }

    fn parenthesized(&self) -> String {
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        format!("({}{}{}i)", self.re, sign, self.im.abs())
    }

    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let [re, im] = json_pair(v)?;
        let part = |x: &Value| {
            x.as_f64()
                .ok_or_else(|| Error::Malformed(format!("not a number: {x}")))
        };
        Ok(Float::new(part(re)?, part(im)?))
    }
}

fn json_pair(v: &Value) -> Result<[&Value; 2]> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok([re, im]),
        _ => Err(Error::Malformed(format!("expected [re, im], found {v}"))),
    }
}

/// Renders a multivector in the literal grammar.
pub fn format<S: LiteralScalar>(mv: &Multivector<S>, symbol: BasisSymbol) -> String {
    let mut out = String::new();
    for (b, c) in mv.terms() {
        let blade = if b == Blade::UNIT {
            String::new()
        } else {
            format!("{}{}", symbol.letter(), b.label())
        };
        let (negative, body) = match c.real_magnitude() {
            Some((neg, mag)) if mag == "1" && !blade.is_empty() => (neg, blade),
            Some((neg, mag)) if blade.is_empty() => (neg, mag),
            Some((neg, mag)) => (neg, format!("{mag} {blade}")),
            None if blade.is_empty() => (false, c.parenthesized()),
            None => (false, format!("{} {blade}", c.parenthesized())),
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// JSON object keyed by blade label (`""`, `"0"`, ..., `"0123"`).
pub fn to_json<S: LiteralScalar>(mv: &Multivector<S>) -> Value {
    let mut map = Map::new();
    for b in Blade::all() {
        map.insert(b.label(), mv.coeff(b).to_json());
    }
    Value::Object(map)
}

pub fn from_json<S: LiteralScalar>(v: &Value) -> Result<Multivector<S>> {
    let map = v
        .as_object()
        .ok_or_else(|| Error::Malformed("multivector JSON must be an object".into()))?;
    let mut mv = Multivector::zero();
    for (key, value) in map {
        let indices: Vec<usize> = key
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Malformed(format!("bad blade key `{key}`")))?;
        let b = Blade::from_indices(&indices)
            .ok_or_else(|| Error::Malformed(format!("bad blade key `{key}`")))?;
        mv.set(b, S::from_json(value)?);
    }
    Ok(mv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact, rational};

    #[test]
    fn parses_documented_examples() {
        let a = parse_exact("1 + 2 e01").unwrap();
        assert_eq!(a, Multivector::from_i64_terms(&[(&[], 1), (&[0, 1], 2)]));
        let b = parse_exact("(1+2i) e0123").unwrap();
        assert_eq!(*b.coeff(Blade::PSEUDOSCALAR), exact(rational(1, 1), rational(2, 1)));
        let c = parse_exact("1/2 + (0-1i) e12 - 3 e0123").unwrap();
        assert_eq!(*c.coeff(Blade::UNIT), exact(rational(1, 2), rational(0, 1)));
        assert_eq!(*c.coeff(Blade::from_indices(&[1, 2]).unwrap()), exact(rational(0, 1), rational(-1, 1)));
        assert_eq!(*c.coeff(Blade::PSEUDOSCALAR), exact_int(-3));
    }

    use crate::scalar::exact_int;

    #[test]
    fn rejects_products_with_position() {
        match parse_exact("e0 e1") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_exact("e10").is_err());
        assert!(parse_exact("e4").is_err());
        assert!(parse_exact("").is_err());
        assert!(parse_exact("1 +").is_err());
    }

    #[test]
    fn accepts_l_symbol_and_bare_unit() {
        assert_eq!(parse_exact("l0").unwrap(), parse_exact("e0").unwrap());
        assert_eq!(parse_exact("e").unwrap(), Multivector::one());
        assert_eq!(parse_exact("-e1").unwrap(), Multivector::basis(&[1]).neg());
    }

    #[test]
    fn formats_canonically() {
        let mv = parse_exact("-1 + e01 - 2/3 e123 + (1-2i) e0123").unwrap();
        assert_eq!(format(&mv, BasisSymbol::E), "-1 + e01 - 2/3 e123 + (1-2i) e0123");
        assert_eq!(format(&mv, BasisSymbol::L), "-1 + l01 - 2/3 l123 + (1-2i) l0123");
        assert_eq!(format(&Multivector::<Exact>::zero(), BasisSymbol::E), "0");
    }

    #[test]
    fn json_round_trip() {
        let mv = parse_exact("1/3 e0 + (2-1i) e23").unwrap();
        let v = to_json(&mv);
        assert_eq!(v.as_object().unwrap().len(), 16);
        assert_eq!(from_json::<Exact>(&v).unwrap(), mv);
        let f = mv.to_float();
        assert_eq!(from_json::<Float>(&to_json(&f)).unwrap(), f);
    }
}
