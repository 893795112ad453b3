//! Multivector expressions for the command line.
//!
//! ```text
//! sum     := ("+"|"-")? product (("+"|"-") product)*
//! product := wedge (("*")? wedge)*        juxtaposition multiplies
//! wedge   := unary ("^" unary)*
//! unary   := "-" unary | atom
//! atom    := number | "i" | blade | "(" sum ")" | ("star"|"rev"|"conj") "(" sum ")"
//! ```
//!
//! `^` binds tighter than `*`. Evaluation is exact.

use num_complex::Complex;

use crate::error::Result;
use crate::exterior::hodge_star;
use crate::literal::Cursor;
use crate::multivector::Multivector;
use crate::scalar::{Exact, Field};

type Mv = Multivector<Exact>;

/// Evaluates `text` exactly.
pub fn evaluate(text: &str) -> Result<Mv> {
    let mut cur = Cursor::new(text);
    let value = sum(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error(format!("unexpected `{}`", cur.peek().unwrap_or(' '))));
    }
    Ok(value)
}

fn sum(cur: &mut Cursor<'_>) -> Result<Mv> {
    cur.skip_ws();
    let mut acc = if cur.eat('-') {
        product(cur)?.neg()
    } else {
        cur.eat('+');
        product(cur)?
    };
    loop {
        cur.skip_ws();
        if cur.eat('+') {
            acc = acc.add(&product(cur)?);
        } else if cur.eat('-') {
            acc = acc.sub(&product(cur)?);
        } else {
            return Ok(acc);
        }
    }
}

fn product(cur: &mut Cursor<'_>) -> Result<Mv> {
    let mut acc = wedge(cur)?;
    loop {
        cur.skip_ws();
        if cur.eat('*') || starts_atom(cur) {
            acc = acc.mul(&wedge(cur)?);
        } else {
            return Ok(acc);
        }
    }
}

fn wedge(cur: &mut Cursor<'_>) -> Result<Mv> {
    let mut acc = unary(cur)?;
    loop {
        cur.skip_ws();
        if !cur.eat('^') {
            return Ok(acc);
        }
        acc = acc.wedge(&unary(cur)?);
    }
}

fn unary(cur: &mut Cursor<'_>) -> Result<Mv> {
    cur.skip_ws();
    if cur.eat('-') {
        return Ok(unary(cur)?.neg());
    }
    atom(cur)
}

fn starts_atom(cur: &Cursor<'_>) -> bool {
    matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(' || c == '.')
}

fn atom(cur: &mut Cursor<'_>) -> Result<Mv> {
    cur.skip_ws();
    let start = cur.pos;
    match cur.peek() {
        Some(c) if c.is_ascii_digit() || c == '.' => {
            let n = cur.number()?;
            Ok(Mv::scalar(Complex::new(n, Field::zero())))
        }
        Some('(') => {
            cur.eat('(');
            let inner = sum(cur)?;
            close(cur)?;
            Ok(inner)
        }
        Some(_) if cur.at_blade() => {
            cur.pos += 1;
            Ok(Mv::blade(cur.blade_digits()?))
        }
        Some(c) if c.is_ascii_alphabetic() => {
            while matches!(cur.peek(), Some(c) if c.is_ascii_alphabetic()) {
                cur.pos += 1;
            }
            let name = &cur.text[start..cur.pos];
            if name == "i" {
                return Ok(Mv::scalar(Exact::i()));
            }
            let f: fn(&Mv) -> Mv = match name {
                "star" => hodge_star,
                "rev" => Mv::reverse,
                "conj" => Mv::star,
                _ => return Err(crate::error::Error::parse(start, format!("unknown name `{name}`"))),
            };
            cur.skip_ws();
            if !cur.eat('(') {
                return Err(cur.error(format!("expected `(` after `{name}`")));
            }
            let arg = sum(cur)?;
            close(cur)?;
            Ok(f(&arg))
        }
        Some(c) => Err(cur.error(format!("unexpected `{c}`"))),
        None => Err(cur.error("unexpected end of expression")),
    }
}

fn close(cur: &mut Cursor<'_>) -> Result<()> {
    cur.skip_ws();
    if cur.eat(')') {
        Ok(())
    } else {
        Err(cur.error("expected `)`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::literal::{format, BasisSymbol};

    fn show(text: &str) -> String {
        format(&evaluate(text).unwrap(), BasisSymbol::E)
    }

    #[test]
    fn generator_rules() {
        assert_eq!(show("e0 * e1"), "e01");
        assert_eq!(show("e1 * e1"), "-1");
        assert_eq!(show("e0 e0"), "1");
        assert_eq!(show("e1 * e0"), "-e01");
    }

    #[test]
    fn star_of_unit_is_volume() {
        assert_eq!(show("star(e)"), "e0123");
    }

    #[test]
    fn precedence_and_functions() {
        assert_eq!(show("e0 ^ e0"), "0");
        assert_eq!(show("e0 ^ e1 * e1"), show("(e0 ^ e1) * e1"));
        assert_eq!(show("rev(e01)"), "-e01");
        assert_eq!(show("conj(i e0)"), show("-i e0"));
        assert_eq!(show("-e2 + 2 e2"), "e2");
        assert_eq!(show("1/2 (e + e0) * 1/2 (e + e0)"), show("1/2 (e + e0)"));
    }

    #[test]
    fn errors_carry_positions() {
        match evaluate("e0 * (e1") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 8),
            other => panic!("{other:?}"),
        }
        assert!(matches!(evaluate("foo(e)"), Err(Error::Parse { position: 0, .. })));
        assert!(evaluate("e10").is_err());
    }
}
