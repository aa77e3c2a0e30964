//! Polynomial expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := '-'? comp ('*' comp)*
//! comp    := power ('o' comp)?          right-associative
//! power   := primary ('^' uint)?
//! primary := rational | 'X' | 'T' '(' uint ')' | '(' expr ')'
//! ```
//!
//! Rationals are `p` or `p/q`. The composition operator `o` must be
//! surrounded by whitespace. Positions in errors are byte offsets.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chebyshev::chebyshev;
use crate::error::{Error, Result};
use crate::poly::{Poly, Rational};

/// Largest degree any subexpression may reach.
pub const MAX_PARSE_DEGREE: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Const(Rational),
    X,
    Cheb(usize),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
    Compose(Box<PolyExpr>, Box<PolyExpr>),
}

impl PolyExpr {
    pub fn eval(&self) -> Poly {
        match self {
            PolyExpr::Const(c) => Poly::constant(c.clone()),
            PolyExpr::X => Poly::x(),
            PolyExpr::Cheb(n) => chebyshev(*n),
            PolyExpr::Neg(a) => -&a.eval(),
            PolyExpr::Add(a, b) => &a.eval() + &b.eval(),
            PolyExpr::Sub(a, b) => &a.eval() - &b.eval(),
            PolyExpr::Mul(a, b) => &a.eval() * &b.eval(),
            PolyExpr::Pow(a, k) => a.eval().pow(*k),
            PolyExpr::Compose(a, b) => a.eval().compose(&b.eval()),
        }
    }
}

pub fn parse(text: &str) -> Result<PolyExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let (e, _) = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_poly(text: &str) -> Result<Poly> {
    parse(text).map(|e| e.eval())
}

/// Canonical text, readable back by [`parse`].
pub fn format_poly(f: &Poly) -> String {
    f.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

/// A parsed subexpression and an upper bound on its degree.
type Node = (PolyExpr, usize);

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn checked_degree(&self, start: usize, d: Option<usize>) -> Result<usize> {
        match d {
            Some(d) if d <= MAX_PARSE_DEGREE => Ok(d),
            _ => Err(Error::Parse {
                pos: start,
                msg: format!("exponent overflow: degree exceeds {MAX_PARSE_DEGREE}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let (mut e, mut d) = self.term()?;
        loop {
            let sub = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => return Ok((e, d)),
            };
            self.pos += 1;
            let (r, rd) = self.term()?;
            e = if sub {
                PolyExpr::Sub(Box::new(e), Box::new(r))
            } else {
                PolyExpr::Add(Box::new(e), Box::new(r))
            };
            d = d.max(rd);
        }
    }

    fn term(&mut self) -> Result<Node> {
        let start = self.pos;
        let neg = self.eat(b'-');
        let (mut e, mut d) = self.comp()?;
        while self.eat(b'*') {
            let (r, rd) = self.comp()?;
            e = PolyExpr::Mul(Box::new(e), Box::new(r));
            d = self.checked_degree(start, d.checked_add(rd))?;
        }
        if neg {
            e = PolyExpr::Neg(Box::new(e));
        }
        Ok((e, d))
    }

    /// `o` is a token only when whitespace separates it from both operands.
    fn at_compose(&mut self) -> bool {
        let before = self.pos;
        self.skip_ws();
        let spaced_before = self.pos > before;
        let is_o = self.src.get(self.pos) == Some(&b'o');
        let spaced_after = self.src.get(self.pos + 1).is_some_and(u8::is_ascii_whitespace);
        if is_o && spaced_before && spaced_after {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn comp(&mut self) -> Result<Node> {
        let start = self.pos;
        let (e, d) = self.power()?;
        if !self.at_compose() {
            if self.src.get(self.pos) == Some(&b'o') {
                return Err(self.err("composition 'o' needs whitespace on both sides"));
            }
            return Ok((e, d));
        }
        let (r, rd) = self.comp()?;
        let deg = self.checked_degree(start, d.checked_mul(rd))?;
        Ok((PolyExpr::Compose(Box::new(e), Box::new(r)), deg))
    }

    fn power(&mut self) -> Result<Node> {
        let start = self.pos;
        let (e, d) = self.primary()?;
        // Whitespace before `o` is significant, so only consume it for `^`.
        let save = self.pos;
        if !self.eat(b'^') {
            self.pos = save;
            return Ok((e, d));
        }
        self.skip_ws();
        let at = self.pos;
        let k = self.uint()?;
        let k = u32::try_from(k).map_err(|_| Error::Parse { pos: at, msg: "exponent overflow".into() })?;
        let deg = self.checked_degree(start, d.checked_mul(k as usize))?;
        Ok((PolyExpr::Pow(Box::new(e), k), deg))
    }

    fn primary(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'X' | b'x') => {
                self.pos += 1;
                Ok((PolyExpr::X, 1))
            }
            Some(b'T') => {
                let start = self.pos;
                self.pos += 1;
                self.expect(b'(')?;
                self.skip_ws();
                let n = self.uint()?;
                let n = self.checked_degree(start, usize::try_from(n).ok())?;
                self.expect(b')')?;
                Ok((PolyExpr::Cheb(n), n))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let mut value = Rational::from_integer(num);
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.digits()?;
                    if den.is_zero() {
                        return Err(Error::Parse { pos: at, msg: "zero denominator".into() });
                    }
                    value /= Rational::from_integer(den);
                }
                Ok((PolyExpr::Const(value), 0))
            }
            Some(_) => Err(self.err("expected a number, 'X', 'T(n)' or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits"))
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        let v = self.digits()?;
        u64::try_from(v).map_err(|_| Error::Parse { pos: start, msg: "integer overflow".into() })
    }
}
