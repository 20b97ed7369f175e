//! Initial-data expressions: parsing, evaluation, differentiation, and
//! conversion to exact polynomials.
//!
//! Grammar, loosest binding first: `+ -`, then `* /`, then unary minus, then
//! `^` (right associative, integer constant exponents). Atoms are decimal
//! numbers, `pi`, `x1..xn`, parenthesised expressions and `sin`, `cos`, `exp`
//! applied to a parenthesised argument.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{fmt_rational, rational_to_f64, MultiPoly, Rational, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Pi,
    /// 1-based variable index.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty expression")]
    Empty,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token {0:?}")]
    UnexpectedToken(String),
    #[error("unknown identifier {0:?}")]
    UnknownIdentifier(String),
    #[error("variable out of range")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("exponent must be an integer constant")]
    NonIntegerExponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("expression is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression uses x{index} but only {given} values were supplied")]
    MissingValue { index: usize, given: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            let lit = &text[start..i];
            let (int, frac) = lit.split_once('.').unwrap_or((lit, ""));
            if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
                return Err(ParseError { kind: ParseErrorKind::UnexpectedToken(lit.into()), offset: start });
            }
            let digits: BigInt = format!("{int}{frac}").parse().expect("ascii digits");
            let value = Rational::new(digits, num_traits::pow(BigInt::from(10), frac.len()));
            out.push((Tok::Num(value), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().expect("in bounds");
            return Err(ParseError { kind: ParseErrorKind::UnexpectedChar(ch), offset: i });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    n: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, o)| o)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, offset: self.offset() }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ParseError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            None => self.err(ParseErrorKind::UnexpectedEnd),
            Some(Tok::Op(c)) => self.err(ParseErrorKind::UnexpectedToken(c.to_string())),
            Some(Tok::Ident(s)) => self.err(ParseErrorKind::UnexpectedToken(s.clone())),
            Some(Tok::Num(r)) => self.err(ParseErrorKind::UnexpectedToken(fmt_rational(r))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        let exponent = self.unary()?;
        let k = exponent
            .constant_value()
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_i64())
            .ok_or(ParseError { kind: ParseErrorKind::NonIntegerExponent, offset: at })?;
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Expr::Num(r))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let func = match name.as_str() {
                    "pi" => return Ok(Expr::Pi),
                    "sin" => Some(Func::Sin),
                    "cos" => Some(Func::Cos),
                    "exp" => Some(Func::Exp),
                    _ => None,
                };
                if let Some(f) = func {
                    self.expect('(')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::Call(f, Box::new(arg)));
                }
                let index = name
                    .strip_prefix('x')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or(ParseError { kind: ParseErrorKind::UnknownIdentifier(name.clone()), offset })?;
                if index < 1 || index > self.n {
                    return Err(ParseError {
                        kind: ParseErrorKind::VariableOutOfRange { index, n: self.n },
                        offset,
                    });
                }
                Ok(Expr::Var(index))
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parse `text` over the variables `x1..xn`.
pub fn parse_expression(text: &str, n: usize) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError { kind: ParseErrorKind::Empty, offset: 0 });
    }
    let mut p = Parser { toks: &toks, pos: 0, end: text.len(), n };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

fn num(r: Rational) -> Expr {
    Expr::Num(r)
}

fn int(k: i64) -> Expr {
    Expr::Num(Rational::from_integer(k.into()))
}

fn is_num(e: &Expr, k: i64) -> bool {
    matches!(e, Expr::Num(r) if *r == Rational::from_integer(k.into()))
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(r) => num(-r),
        Expr::Neg(inner) => *inner,
        a => Expr::Neg(Box::new(a)),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => num(x + y),
        (a, b) if is_num(&a, 0) => b,
        (a, b) if is_num(&b, 0) => a,
        (a, Expr::Neg(b)) => Expr::Sub(Box::new(a), b),
        (a, b) => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => num(x - y),
        (a, b) if is_num(&b, 0) => a,
        (a, b) if is_num(&a, 0) => neg(b),
        (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) => num(x * y),
        (a, b) if is_num(&a, 0) || is_num(&b, 0) => int(0),
        (a, b) if is_num(&a, 1) => b,
        (a, b) if is_num(&b, 1) => a,
        (Expr::Num(x), Expr::Mul(l, r)) if matches!(*l, Expr::Num(_)) => {
            let Expr::Num(y) = *l else { unreachable!() };
            mul(num(x * y), *r)
        }
        (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), Expr::Num(y)) if !y.is_zero() => num(x / y),
        (a, _) if is_num(&a, 0) => int(0),
        (a, b) if is_num(&b, 1) => a,
        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
    }
}

fn pow(a: Expr, k: i64) -> Expr {
    match (a, k) {
        (_, 0) => int(1),
        (a, 1) => a,
        (Expr::Num(r), k) if !(r.is_zero() && k < 0) => num(num_traits::pow(
            if k < 0 { r.recip() } else { r },
            k.unsigned_abs() as usize,
        )),
        (a, k) => Expr::Pow(Box::new(a), k),
    }
}

impl Expr {
    /// Exact value when the expression involves no variables, `pi`, or
    /// functions.
    pub fn constant_value(&self) -> Option<Rational> {
        Some(match self {
            Expr::Num(r) => r.clone(),
            Expr::Neg(a) => -a.constant_value()?,
            Expr::Add(a, b) => a.constant_value()? + b.constant_value()?,
            Expr::Sub(a, b) => a.constant_value()? - b.constant_value()?,
            Expr::Mul(a, b) => a.constant_value()? * b.constant_value()?,
            Expr::Div(a, b) => {
                let d = b.constant_value()?;
                if d.is_zero() {
                    return None;
                }
                a.constant_value()? / d
            }
            Expr::Pow(a, k) => {
                let r = a.constant_value()?;
                if r.is_zero() && *k < 0 {
                    return None;
                }
                num_traits::pow(if *k < 0 { r.recip() } else { r }, k.unsigned_abs() as usize)
            }
            Expr::Pi | Expr::Var(_) | Expr::Call(..) => return None,
        })
    }

    /// Largest variable index used.
    pub fn max_var(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Pi => 0,
            Expr::Var(i) => *i,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.max_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Evaluate at `x` (`x[0]` is `x1`).
    pub fn eval(&self, x: &[f64]) -> Result<f64, ExprError> {
        Ok(match self {
            Expr::Num(r) => rational_to_f64(r),
            Expr::Pi => std::f64::consts::PI,
            Expr::Var(i) => *x.get(i - 1).ok_or(ExprError::MissingValue { index: *i, given: x.len() })?,
            Expr::Neg(a) => -a.eval(x)?,
            Expr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Expr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Expr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Expr::Div(a, b) => a.eval(x)? / b.eval(x)?,
            Expr::Pow(a, k) => a.eval(x)?.powi(*k as i32),
            Expr::Call(f, a) => {
                let v = a.eval(x)?;
                match f {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                }
            }
        })
    }

    pub fn is_polynomial(&self) -> bool {
        self.to_poly().is_ok()
    }

    /// Exact polynomial in `x1..xn`; fails on `pi`, functions, negative
    /// powers, and division by non-constants.
    pub fn to_poly(&self) -> Result<MultiPoly, ExprError> {
        Ok(match self {
            Expr::Num(r) => MultiPoly::from_rational(r.clone()),
            Expr::Var(i) => MultiPoly::var(Var::X(*i as u32)),
            Expr::Neg(a) => -&a.to_poly()?,
            Expr::Add(a, b) => &a.to_poly()? + &b.to_poly()?,
            Expr::Sub(a, b) => &a.to_poly()? - &b.to_poly()?,
            Expr::Mul(a, b) => &a.to_poly()? * &b.to_poly()?,
            Expr::Div(a, b) => {
                let d = b
                    .constant_value()
                    .ok_or_else(|| ExprError::NotPolynomial(format!("division by {b}")))?;
                if d.is_zero() {
                    return Err(ExprError::DivisionByZero);
                }
                a.to_poly()?.scale(&d.recip())
            }
            Expr::Pow(a, k) => a
                .to_poly()?
                .checked_pow(*k)
                .map_err(|_| ExprError::NotPolynomial(format!("negative power in {self}")))?,
            Expr::Pi => return Err(ExprError::NotPolynomial("pi".into())),
            Expr::Call(f, _) => return Err(ExprError::NotPolynomial(f.name().into())),
        })
    }

    /// Symbolic derivative in `x_var`, with constant folding and removal of
    /// zero and unit factors.
    pub fn diff(&self, var: usize) -> Expr {
        match self {
            Expr::Num(_) | Expr::Pi => int(0),
            Expr::Var(i) => int((*i == var) as i64),
            Expr::Neg(a) => neg(a.diff(var)),
            Expr::Add(a, b) => add(a.diff(var), b.diff(var)),
            Expr::Sub(a, b) => sub(a.diff(var), b.diff(var)),
            Expr::Mul(a, b) => add(
                mul(a.diff(var), (**b).clone()),
                mul((**a).clone(), b.diff(var)),
            ),
            Expr::Div(a, b) => div(
                sub(mul(a.diff(var), (**b).clone()), mul((**a).clone(), b.diff(var))),
                pow((**b).clone(), 2),
            ),
            Expr::Pow(a, k) => mul(mul(int(*k), pow((**a).clone(), k - 1)), a.diff(var)),
            Expr::Call(f, a) => {
                let outer = match f {
                    Func::Sin => Expr::Call(Func::Cos, a.clone()),
                    Func::Cos => neg(Expr::Call(Func::Sin, a.clone())),
                    Func::Exp => self.clone(),
                };
                mul(a.diff(var), outer)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(r) if r.is_negative() || !r.denom().is_one() => 2,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

/// Derivative of `ast` in `x_var`.
pub fn diff_expr(ast: &Expr, var: usize) -> Expr {
    ast.diff(var)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8, f: &mut fmt::Formatter<'_>| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Num(r) => write!(f, "{}", fmt_rational(r)),
            Expr::Pi => write!(f, "pi"),
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(a, 3, f)
            }
            Expr::Add(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " + ")?;
                wrap(b, 2, f)
            }
            Expr::Sub(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " - ")?;
                wrap(b, 2, f)
            }
            Expr::Mul(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "*")?;
                wrap(b, 3, f)
            }
            Expr::Div(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "/")?;
                wrap(b, 3, f)
            }
            Expr::Pow(a, k) => {
                wrap(a, 5, f)?;
                if *k < 0 {
                    write!(f, "^({k})")
                } else {
                    write!(f, "^{k}")
                }
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl From<i64> for Expr {
    fn from(k: i64) -> Self {
        int(k)
    }
}

impl Expr {
    pub fn one() -> Self {
        num(Rational::one())
    }
}
