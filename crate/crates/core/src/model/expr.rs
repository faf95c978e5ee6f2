//! Expression syntax for constraint components.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' integer)?
//! primary := number | variable | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! Variables are `x1 … xn` (a bare `x` means `x1`), numbers are decimal
//! literals read exactly, functions are `sin`, `cos`, `exp`. Division is only
//! by nonzero constants.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::taylor::{Scalar, Taylor};
use crate::error::{Error, Result};
use crate::kernel::rational::{fmt_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    /// zero-based variable index
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => write!(f, "{}", fmt_rational(c)),
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Pow(a, k) => write!(f, "{a}^{k}"),
            Expr::Call(g, a) => write!(f, "{}({a})", g.name()),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src: src.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Largest variable index used, plus one.
    pub fn arity(&self) -> usize {
        match self {
            Expr::Num(_) => 0,
            Expr::Var(i) => i + 1,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.arity(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.arity().max(b.arity()),
        }
    }

    /// Lowering to a polynomial in `nvars` variables; `None` when a
    /// transcendental function is applied to a non-constant argument.
    pub fn to_poly(&self, nvars: usize) -> Option<Poly> {
        Some(match self {
            Expr::Num(c) => Poly::constant(nvars, c.clone()),
            Expr::Var(i) => Poly::var(nvars, *i),
            Expr::Neg(a) => a.to_poly(nvars)?.scale(&-Rational::one()),
            Expr::Add(a, b) => a.to_poly(nvars)?.add(&b.to_poly(nvars)?),
            Expr::Sub(a, b) => a.to_poly(nvars)?.sub(&b.to_poly(nvars)?),
            Expr::Mul(a, b) => a.to_poly(nvars)?.mul(&b.to_poly(nvars)?),
            Expr::Pow(a, k) => a.to_poly(nvars)?.pow(*k),
            Expr::Call(g, a) => {
                let c = a.to_poly(nvars)?.as_constant()?;
                if !c.is_zero() {
                    return None;
                }
                let v = match g {
                    Func::Sin => Rational::zero(),
                    Func::Cos | Func::Exp => Rational::one(),
                };
                Poly::constant(nvars, v)
            }
        })
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        match self {
            Expr::Num(c) => crate::kernel::rational::to_f64(c),
            Expr::Var(i) => x[*i],
            Expr::Neg(a) => -a.eval_f64(x),
            Expr::Add(a, b) => a.eval_f64(x) + b.eval_f64(x),
            Expr::Sub(a, b) => a.eval_f64(x) - b.eval_f64(x),
            Expr::Mul(a, b) => a.eval_f64(x) * b.eval_f64(x),
            Expr::Pow(a, k) => a.eval_f64(x).powi(*k as i32),
            Expr::Call(g, a) => {
                let v = a.eval_f64(x);
                match g {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                }
            }
        }
    }

    /// Truncated Taylor expansion of `t ↦ e(x + t·v)`.
    pub fn eval_taylor(&self, x: &[Scalar], v: &[Scalar]) -> Taylor {
        match self {
            Expr::Num(c) => Taylor::constant(Scalar::Exact(c.clone())),
            Expr::Var(i) => Taylor::variable(x[*i].clone(), v[*i].clone()),
            Expr::Neg(a) => a.eval_taylor(x, v).neg(),
            Expr::Add(a, b) => a.eval_taylor(x, v).add(&b.eval_taylor(x, v)),
            Expr::Sub(a, b) => a.eval_taylor(x, v).sub(&b.eval_taylor(x, v)),
            Expr::Mul(a, b) => a.eval_taylor(x, v).mul(&b.eval_taylor(x, v)),
            Expr::Pow(a, k) => a.eval_taylor(x, v).powi(*k),
            Expr::Call(g, a) => {
                let t = a.eval_taylor(x, v);
                match g {
                    Func::Sin => t.sin(),
                    Func::Cos => t.cos(),
                    Func::Exp => t.exp(),
                }
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, offset: usize, message: &str) -> Error {
        Error::SyntaxError {
            offset,
            message: message.to_string(),
        }
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
            } else if self.eat(b'/') {
                self.skip_ws();
                let at = self.pos;
                let rhs = self.unary()?;
                let c = rhs
                    .to_poly(rhs.arity())
                    .and_then(|p| p.as_constant())
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| self.error_at(at, "divisor must be a nonzero constant"))?;
                lhs = Expr::Mul(Box::new(lhs), Box::new(Expr::Num(c.recip())));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let k: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.error_at(start, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            Some(c) => Err(self.error(&format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        crate::kernel::rational::parse_rational(text)
            .map(Expr::Num)
            .map_err(|_| self.error_at(start, "malformed number"))
    }

    fn ident(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        if self.peek() == Some(b'(') {
            let g = match name.as_str() {
                "sin" => Func::Sin,
                "cos" => Func::Cos,
                "exp" => Func::Exp,
                _ => return Err(Error::UnknownFunction(name)),
            };
            self.pos += 1;
            let arg = self.expr()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(Expr::Call(g, Box::new(arg)));
        }
        if name == "x" {
            return Ok(Expr::Var(0));
        }
        match name.strip_prefix('x').and_then(|s| s.parse::<usize>().ok()) {
            Some(i) if i >= 1 && !name[1..].starts_with('0') => Ok(Expr::Var(i - 1)),
            _ => Err(self.error_at(start, &format!("unknown identifier `{name}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{q, qf};

    #[test]
    fn polynomial_lowering() {
        let p = Expr::parse("x1 + x1^2").unwrap().to_poly(1).unwrap();
        assert_eq!(p.coeff(&[1]), q(1));
        assert_eq!(p.coeff(&[2]), q(1));
        assert_eq!(p.terms.len(), 2);
        let p = Expr::parse("-(x - 1/2)*3 + 0.25").unwrap().to_poly(1).unwrap();
        assert_eq!(p.coeff(&[0]), qf(7, 4));
        assert_eq!(p.coeff(&[1]), q(-3));
    }

    #[test]
    fn transcendental_is_not_polynomial() {
        let e = Expr::parse("sin(x1)").unwrap();
        assert!(e.to_poly(1).is_none());
        assert_eq!(e.to_string(), "sin(x1)");
        assert!(Expr::parse("cos(0) + x2").unwrap().to_poly(2).is_some());
    }

    #[test]
    fn syntax_errors() {
        match Expr::parse("x1 + + 2") {
            Err(Error::SyntaxError { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        assert_eq!(Expr::parse("tan(x1)"), Err(Error::UnknownFunction("tan".into())));
        assert!(matches!(Expr::parse("x1 / x2"), Err(Error::SyntaxError { offset: 5, .. })));
        assert!(matches!(Expr::parse("(x1"), Err(Error::SyntaxError { .. })));
        assert!(matches!(Expr::parse("y"), Err(Error::SyntaxError { offset: 0, .. })));
        assert!(matches!(Expr::parse("x1 x2"), Err(Error::SyntaxError { offset: 3, .. })));
    }
}
