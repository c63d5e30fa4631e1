//! Exact literals: integers, single-letter symbols (`v` for nu, `w` for
//! omega, `a` for a finite-field generator), `+ - * / ^` and parentheses.
//! Division is only allowed by units of the target ring, and exponents are
//! non-negative integers.
//!
//! ```
//! use level3_core::exact_rings::{BElem, Ring};
//! use level3_core::literal::eval_str;
//!
//! let x = eval_str("(2*w + 1)/3^2 - v^3", &BElem::from_int(0), &[("v", BElem::nu()), ("w", BElem::omega())]).unwrap();
//! assert_eq!(x.to_string(), "(-1)*v^3 + (1/3^2 + (2/3^2)*w)");
//! ```

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_rings::Ring;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Sym {
        name: char,
        pos: usize,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div {
        num: Box<Expr>,
        den: Box<Expr>,
        pos: usize,
    },
    Pow(Box<Expr>, u32),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
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

    fn digits(&mut self) -> Option<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
            (start, s)
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(b'/') {
                let pos = self.pos;
                self.pos += 1;
                lhs = Expr::Div {
                    num: Box::new(lhs),
                    den: Box::new(self.unary()?),
                    pos,
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let (pos, d) = self
            .digits()
            .ok_or_else(|| err(at, "expected a non-negative integer exponent"))?;
        let e: u32 = d.parse().map_err(|_| err(pos, "exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(err(
                        self.pos,
                        format!("unclosed parenthesis opened at byte {open}"),
                    ));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let (_, d) = self.digits().expect("digit present");
                Ok(Expr::Int(d.parse().expect("decimal digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let pos = self.pos;
                self.pos += 1;
                if self
                    .src
                    .get(self.pos)
                    .is_some_and(u8::is_ascii_alphanumeric)
                {
                    return Err(err(pos, "symbols are single letters"));
                }
                Ok(Expr::Sym {
                    name: c as char,
                    pos,
                })
            }
            Some(b'.') => Err(err(self.pos, "decimal points are not allowed")),
            Some(c) => Err(err(
                self.pos,
                format!("unexpected character '{}'", c as char),
            )),
            None => Err(err(self.pos, "unexpected end of input")),
        }
    }
}

/// Parses a literal into an expression tree.
pub fn parse(src: &str) -> Result<Expr> {
    if let Some(i) = src.bytes().position(|b| !b.is_ascii()) {
        return Err(err(i, "non-ASCII character"));
    }
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(err(p.pos, format!("unexpected character '{}'", c as char)));
    }
    Ok(e)
}

/// Evaluates `e` in the ring of `ctx`, with `symbols` giving the value of
/// each letter.
pub fn eval<R: Ring>(e: &Expr, ctx: &R, symbols: &[(&str, R)]) -> Result<R> {
    let go = |x: &Expr| eval(x, ctx, symbols);
    Ok(match e {
        Expr::Int(n) => ctx.from_bigint_like(n),
        Expr::Sym { name, pos } => symbols
            .iter()
            .find(|(s, _)| s.len() == 1 && s.starts_with(*name))
            .map(|(_, v)| v.clone())
            .ok_or_else(|| err(*pos, format!("unknown symbol '{name}'")))?,
        Expr::Neg(a) => go(a)?.neg(),
        Expr::Add(a, b) => go(a)?.add(&go(b)?),
        Expr::Sub(a, b) => go(a)?.sub(&go(b)?),
        Expr::Mul(a, b) => go(a)?.mul(&go(b)?),
        Expr::Div { num, den, pos } => {
            let d = go(den)?;
            let inv = d
                .inverse()
                .ok_or_else(|| err(*pos, format!("division by non-unit {d}")))?;
            go(num)?.mul(&inv)
        }
        Expr::Pow(a, k) => go(a)?.pow(u64::from(*k)),
    })
}

/// [`parse`] followed by [`eval`].
pub fn eval_str<R: Ring>(src: &str, ctx: &R, symbols: &[(&str, R)]) -> Result<R> {
    eval(&parse(src)?, ctx, symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_rings::{BElem, EisElem, FiniteField, QOmega};

    fn b(src: &str) -> Result<BElem> {
        eval_str(
            src,
            &BElem::from_int(0),
            &[("v", BElem::nu()), ("w", BElem::omega())],
        )
    }

    #[test]
    fn arithmetic() {
        assert_eq!(b("1 + w + w^2").unwrap(), BElem::from_int(0));
        assert_eq!(b("-2^2").unwrap(), BElem::from_int(-4));
        assert_eq!(b("(v^3 - 1) * 1/(v^3-1)").unwrap(), BElem::from_int(1));
        assert_eq!(b("3*v").unwrap(), BElem::nu().mul(&BElem::from_int(3)));
        let q = eval_str("1/2 + w", &QOmega::from_int(0), &[("w", QOmega::omega())]).unwrap();
        assert_eq!(q.to_string(), "1/2 + w");
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(b("1 + "), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(b("(1 + v"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(b("1.5"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(b("2 / v"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(b("1 + x"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(b("v^-1"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(b("nu"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(b("1 2"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn display_round_trips() {
        let x = b("(w - 5/3^4) * v^5 / (v^3-1)^2 + 7").unwrap();
        assert_eq!(b(&x.to_string()).unwrap(), x);
        let e = EisElem::omega_bar();
        assert_eq!(b(&e.to_string()).unwrap(), BElem::from_eis(e));
        let k = FiniteField::of_order(25).unwrap();
        for el in k.elements() {
            let back = eval_str(&el.to_string(), &k.zero(), &[("a", k.generator())]).unwrap();
            assert_eq!(back, el);
        }
    }
}
