//! Recursive-descent parser for polynomial expressions in `z`, `zb`, `u`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | 'z' | 'zb' | 'u' | 'i' | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant, so `1/4*z^2` works and the
//! result is always a polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use nfc_core::scalar::{GaussianRational, Rational};
use nfc_core::series::{degree, Series3};
use nfc_core::Exp3;

const MAX_EXPONENT: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Exact polynomial in `z, zb, u`, not truncated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Exp3, GaussianRational>,
}

impl Poly {
    fn constant(c: GaussianRational) -> Self {
        let mut p = Self::default();
        p.add_term((0, 0, 0), c);
        p
    }

    fn monomial(e: Exp3) -> Self {
        let mut p = Self::default();
        p.add_term(e, GaussianRational::one());
        p
    }

    fn add_term(&mut self, e: Exp3, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(GaussianRational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn add(mut self, o: &Poly, sign: &GaussianRational) -> Self {
        for (e, c) in &o.terms {
            self.add_term(*e, c * sign);
        }
        self
    }

    fn mul(&self, o: &Poly) -> Self {
        let mut out = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term((a.0 + b.0, a.1 + b.1, a.2 + b.2), x * y);
            }
        }
        out
    }

    fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&(0, 0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp3, &GaussianRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// The truncation at total degree `order`; higher terms are dropped.
    pub fn to_series(&self, order: u32) -> Series3 {
        let mut s = Series3::zero(order);
        for (e, c) in &self.terms {
            if degree(*e) <= order {
                s.add_term(*e, c);
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, column);
        let mut take = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next();
            if ch == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            ch
        };
        if ch.is_whitespace() {
            take(&mut chars);
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                s.push(take(&mut chars).unwrap());
            }
            out.push(Token { tok: Tok::Int(s), line: l, column: c });
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                s.push(take(&mut chars).unwrap());
            }
            out.push(Token { tok: Tok::Ident(s), line: l, column: c });
        } else if "+-*/^()".contains(ch) {
            take(&mut chars);
            out.push(Token { tok: Tok::Op(ch), line: l, column: c });
        } else {
            return Err(ParseError { line: l, column: c, message: format!("unexpected character {ch:?}") });
        }
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn at_op(&self, ops: &str) -> Option<char> {
        match self.peek().tok {
            Tok::Op(c) if ops.contains(c) => Some(c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while let Some(op) = self.at_op("+-") {
            self.next();
            let rhs = self.term()?;
            let sign = if op == '+' { GaussianRational::one() } else { -GaussianRational::one() };
            acc = acc.add(&rhs, &sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op) = self.at_op("*/") {
            let op_tok = self.next();
            let rhs = self.unary()?;
            if op == '*' {
                acc = acc.mul(&rhs);
                continue;
            }
            let c = rhs.as_constant().ok_or_else(|| Self::error(&op_tok, "division by a non-constant expression"))?;
            let inv = c.checked_inv().ok_or_else(|| Self::error(&op_tok, "division by zero"))?;
            acc = acc.mul(&Poly::constant(inv));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.at_op("+-") {
            Some(op) => {
                self.next();
                let p = self.unary()?;
                Ok(if op == '-' { Poly::default().add(&p, &-GaussianRational::one()) } else { p })
            }
            None => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.at_op("^").is_none() {
            return Ok(base);
        }
        self.next();
        let t = self.next();
        let e: u32 = match &t.tok {
            Tok::Int(s) => s.parse().ok().filter(|e| *e <= MAX_EXPONENT),
            _ => return Err(Self::error(&t, "expected a nonnegative integer exponent")),
        }
        .ok_or_else(|| Self::error(&t, format!("exponent larger than {MAX_EXPONENT}")))?;
        let mut out = Poly::constant(GaussianRational::one());
        for _ in 0..e {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => {
                let r: Rational = s.parse().map_err(|_| Self::error(&t, "invalid integer"))?;
                Ok(Poly::constant(GaussianRational::real(r)))
            }
            Tok::Ident(name) => match name.as_str() {
                "z" => Ok(Poly::monomial((1, 0, 0))),
                "zb" => Ok(Poly::monomial((0, 1, 0))),
                "u" => Ok(Poly::monomial((0, 0, 1))),
                "i" => Ok(Poly::constant(GaussianRational::i())),
                _ => Err(Self::error(&t, format!("unknown symbol `{name}` (expected z, zb, u or i)"))),
            },
            Tok::Op('(') => {
                let inner = self.expr()?;
                let close = self.next();
                if close.tok != Tok::Op(')') {
                    return Err(Self::error(&close, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(Self::error(&t, "unexpected end of input")),
            Tok::Op(c) => Err(Self::error(&t, format!("unexpected `{c}`"))),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser { tokens: tokenize(text)?, pos: 0 };
    let out = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(Parser::error(t, "unexpected trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nfc_core::scalar::rat;

    fn coeffs(p: &Poly) -> Vec<(Exp3, String)> {
        p.terms().map(|(e, c)| (e, c.to_string())).collect()
    }

    #[test]
    fn quadric() {
        assert_eq!(coeffs(&parse_expression("u*z*zb").unwrap()), vec![((1, 1, 1), "1".to_string())]);
    }

    #[test]
    fn rational_literals_and_distribution() {
        let p = parse_expression("u*(z*zb + 1/4*z^2*zb^2)").unwrap();
        assert_eq!(coeffs(&p), vec![((1, 1, 1), "1".into()), ((2, 2, 1), "1/4".into())]);
        let p = parse_expression("-(z - 2*i*zb)^2 / 3").unwrap();
        assert_eq!(p.to_series(4).coeff((1, 1, 0)), GaussianRational::new(rat(0, 1), rat(4, 3)));
        assert_eq!(p.to_series(4).coeff((0, 2, 0)), GaussianRational::from_int(4).scale(&rat(1, 3)));
    }

    #[test]
    fn cancellation_and_truncation() {
        assert!(parse_expression("z*zb - zb*z").unwrap().terms().next().is_none());
        let s = parse_expression("u*z*zb + u^9").unwrap().to_series(5);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn error_positions() {
        let e = parse_expression("u*z*\n  zb + x").unwrap_err();
        assert_eq!((e.line, e.column), (2, 8));
        assert!(e.message.contains("unknown symbol `x`"));
        let e = parse_expression("(z + zb").unwrap_err();
        assert_eq!((e.line, e.column), (1, 8));
        let e = parse_expression("z / zb").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        let e = parse_expression("z ^ zb").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert!(parse_expression("z $").is_err());
        assert!(parse_expression("1/0").is_err());
        assert!(parse_expression("z z").is_err());
    }
}
