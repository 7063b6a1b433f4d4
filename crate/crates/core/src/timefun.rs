//! Scalar functions of time `t`: a tiny expression language with exact
//! symbolic differentiation.
//!
//! Grammar (lowest to highest precedence):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' '-'? integer)?
//! primary := number | 't' | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | sinh | cosh | exp
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum EvalError {
    #[error("division by zero at t = {t}")]
    DivisionByZero { t: f64 },
    #[error("non-finite value at t = {t}")]
    NonFinite { t: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "exp" => Func::Exp,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
        }
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Exp => x.exp(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TimeExpr {
    Const(f64),
    Time,
    Neg(Box<TimeExpr>),
    Add(Box<TimeExpr>, Box<TimeExpr>),
    Sub(Box<TimeExpr>, Box<TimeExpr>),
    Mul(Box<TimeExpr>, Box<TimeExpr>),
    Div(Box<TimeExpr>, Box<TimeExpr>),
    Pow(Box<TimeExpr>, i32),
    Call(Func, Box<TimeExpr>),
}

// Smart constructors. They fold constants and drop additive/multiplicative
// identities so that repeated differentiation stays small.
impl TimeExpr {
    pub fn constant(c: f64) -> Self {
        TimeExpr::Const(c)
    }

    pub fn time() -> Self {
        TimeExpr::Time
    }

    fn as_const(&self) -> Option<f64> {
        match self {
            TimeExpr::Const(c) => Some(*c),
            _ => None,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: TimeExpr) -> Self {
        match e {
            TimeExpr::Const(c) => TimeExpr::Const(-c),
            TimeExpr::Neg(inner) => *inner,
            e => TimeExpr::Neg(Box::new(e)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: TimeExpr, b: TimeExpr) -> Self {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => TimeExpr::Const(x + y),
            (Some(0.0), _) => b,
            (_, Some(0.0)) => a,
            _ => TimeExpr::Add(Box::new(a), Box::new(b)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: TimeExpr, b: TimeExpr) -> Self {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => TimeExpr::Const(x - y),
            (Some(0.0), _) => TimeExpr::neg(b),
            (_, Some(0.0)) => a,
            _ => TimeExpr::Sub(Box::new(a), Box::new(b)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: TimeExpr, b: TimeExpr) -> Self {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => TimeExpr::Const(x * y),
            (Some(0.0), _) | (_, Some(0.0)) => TimeExpr::Const(0.0),
            (Some(1.0), _) => b,
            (_, Some(1.0)) => a,
            (Some(-1.0), _) => TimeExpr::neg(b),
            (_, Some(-1.0)) => TimeExpr::neg(a),
            _ => TimeExpr::Mul(Box::new(a), Box::new(b)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: TimeExpr, b: TimeExpr) -> Self {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) if y != 0.0 => TimeExpr::Const(x / y),
            (Some(0.0), _) => TimeExpr::Const(0.0),
            (_, Some(1.0)) => a,
            _ => TimeExpr::Div(Box::new(a), Box::new(b)),
        }
    }

    pub fn pow(base: TimeExpr, n: i32) -> Self {
        match (n, base.as_const()) {
            (0, _) => TimeExpr::Const(1.0),
            (1, _) => base,
            (_, Some(c)) if c != 0.0 || n > 0 => TimeExpr::Const(c.powi(n)),
            _ => TimeExpr::Pow(Box::new(base), n),
        }
    }

    pub fn call(f: Func, arg: TimeExpr) -> Self {
        TimeExpr::Call(f, Box::new(arg))
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).parse_all()
    }

    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        let v = self.eval_raw(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite { t })
        }
    }

    fn eval_raw(&self, t: f64) -> Result<f64, EvalError> {
        Ok(match self {
            TimeExpr::Const(c) => *c,
            TimeExpr::Time => t,
            TimeExpr::Neg(a) => -a.eval_raw(t)?,
            TimeExpr::Add(a, b) => a.eval_raw(t)? + b.eval_raw(t)?,
            TimeExpr::Sub(a, b) => a.eval_raw(t)? - b.eval_raw(t)?,
            TimeExpr::Mul(a, b) => a.eval_raw(t)? * b.eval_raw(t)?,
            TimeExpr::Div(a, b) => {
                let d = b.eval_raw(t)?;
                if d == 0.0 {
                    return Err(EvalError::DivisionByZero { t });
                }
                a.eval_raw(t)? / d
            }
            TimeExpr::Pow(a, n) => {
                let x = a.eval_raw(t)?;
                if x == 0.0 && *n < 0 {
                    return Err(EvalError::DivisionByZero { t });
                }
                x.powi(*n)
            }
            TimeExpr::Call(f, a) => f.apply(a.eval_raw(t)?),
        })
    }

    /// Exact derivative with respect to `t`.
    pub fn differentiate(&self) -> TimeExpr {
        use TimeExpr as E;
        match self {
            E::Const(_) => E::Const(0.0),
            E::Time => E::Const(1.0),
            E::Neg(a) => E::neg(a.differentiate()),
            E::Add(a, b) => E::add(a.differentiate(), b.differentiate()),
            E::Sub(a, b) => E::sub(a.differentiate(), b.differentiate()),
            E::Mul(a, b) => E::add(
                E::mul(a.differentiate(), (**b).clone()),
                E::mul((**a).clone(), b.differentiate()),
            ),
            E::Div(a, b) => {
                // (a'b − ab') / b²
                let num = E::sub(
                    E::mul(a.differentiate(), (**b).clone()),
                    E::mul((**a).clone(), b.differentiate()),
                );
                E::div(num, E::pow((**b).clone(), 2))
            }
            E::Pow(a, n) => E::mul(
                E::mul(E::Const(f64::from(*n)), E::pow((**a).clone(), n - 1)),
                a.differentiate(),
            ),
            E::Call(f, a) => {
                let inner = (**a).clone();
                let outer = match f {
                    Func::Sin => E::call(Func::Cos, inner),
                    Func::Cos => E::neg(E::call(Func::Sin, inner)),
                    Func::Sinh => E::call(Func::Cosh, inner),
                    Func::Cosh => E::call(Func::Sinh, inner),
                    Func::Exp => E::call(Func::Exp, inner),
                };
                E::mul(outer, a.differentiate())
            }
        }
    }

    /// `n`-th derivative.
    pub fn nth_derivative(&self, n: usize) -> TimeExpr {
        let mut e = self.clone();
        for _ in 0..n {
            e = e.differentiate();
        }
        e
    }

    pub fn node_count(&self) -> usize {
        match self {
            TimeExpr::Const(_) | TimeExpr::Time => 1,
            TimeExpr::Neg(a) | TimeExpr::Pow(a, _) | TimeExpr::Call(_, a) => 1 + a.node_count(),
            TimeExpr::Add(a, b)
            | TimeExpr::Sub(a, b)
            | TimeExpr::Mul(a, b)
            | TimeExpr::Div(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            TimeExpr::Add(..) | TimeExpr::Sub(..) => 1,
            TimeExpr::Mul(..) | TimeExpr::Div(..) => 2,
            TimeExpr::Neg(_) => 3,
            TimeExpr::Pow(..) => 4,
            TimeExpr::Const(_) | TimeExpr::Time | TimeExpr::Call(..) => 5,
        }
    }
}

impl FromStr for TimeExpr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TimeExpr::parse(s)
    }
}

pub fn parse(text: &str) -> Result<TimeExpr, ParseError> {
    TimeExpr::parse(text)
}

pub fn eval(e: &TimeExpr, t: f64) -> Result<f64, EvalError> {
    e.eval(t)
}

pub fn differentiate(e: &TimeExpr) -> TimeExpr {
    e.differentiate()
}

// Printing is precedence-aware and reparses to an identical tree.
impl fmt::Display for TimeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(f: &mut fmt::Formatter<'_>, e: &TimeExpr, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        let p = self.precedence();
        match self {
            // Negative literals carry their own parentheses.
            TimeExpr::Const(c) => {
                if c.is_sign_negative() {
                    write!(f, "(-{})", -c)
                } else {
                    write!(f, "{c}")
                }
            }
            TimeExpr::Time => f.write_str("t"),
            TimeExpr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, a.precedence() < 3)
            }
            TimeExpr::Add(a, b)
            | TimeExpr::Sub(a, b)
            | TimeExpr::Mul(a, b)
            | TimeExpr::Div(a, b) => {
                let op = match self {
                    TimeExpr::Add(..) => " + ",
                    TimeExpr::Sub(..) => " - ",
                    TimeExpr::Mul(..) => " * ",
                    _ => " / ",
                };
                wrap(f, a, a.precedence() < p)?;
                f.write_str(op)?;
                wrap(f, b, b.precedence() <= p)
            }
            TimeExpr::Pow(a, n) => {
                wrap(f, a, a.precedence() < 5)?;
                write!(f, "^{n}")
            }
            TimeExpr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    peeked: Option<(usize, Token)>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            pos: 0,
            peeked: None,
        }
    }

    fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn lex(&mut self) -> Result<(usize, Token), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(self.pos) else {
            return Ok((start, Token::End));
        };
        let single = match c {
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += 1;
            return Ok((start, tok));
        }
        if c.is_ascii_digit() || c == b'.' {
            let mut end = start;
            while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
                end += 1;
            }
            if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
                let mut k = end + 1;
                if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                }
                if k < bytes.len() && bytes[k].is_ascii_digit() {
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    end = k;
                }
            }
            let text = &self.src[start..end];
            self.pos = end;
            return match text.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok((start, Token::Num(v))),
                _ => Self::err(start, format!("malformed number '{text}'")),
            };
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let mut end = start;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            self.pos = end;
            return Ok((start, Token::Ident(self.src[start..end].to_string())));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Self::err(start, format!("unexpected character '{ch}'"))
    }

    fn peek(&mut self) -> Result<&(usize, Token), ParseError> {
        if self.peeked.is_none() {
            let tok = self.lex()?;
            self.peeked = Some(tok);
        }
        Ok(self.peeked.as_ref().expect("peeked token"))
    }

    fn next(&mut self) -> Result<(usize, Token), ParseError> {
        match self.peeked.take() {
            Some(tok) => Ok(tok),
            None => self.lex(),
        }
    }

    fn parse_all(&mut self) -> Result<TimeExpr, ParseError> {
        let e = self.expr()?;
        match self.next()? {
            (_, Token::End) => Ok(e),
            (off, tok) => Self::err(off, format!("unexpected {}", describe(&tok))),
        }
    }

    fn expr(&mut self) -> Result<TimeExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek()?.1 {
                Token::Plus => {
                    self.next()?;
                    lhs = TimeExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.next()?;
                    lhs = TimeExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<TimeExpr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek()?.1 {
                Token::Star => {
                    self.next()?;
                    lhs = TimeExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Slash => {
                    self.next()?;
                    lhs = TimeExpr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<TimeExpr, ParseError> {
        if self.peek()?.1 == Token::Minus {
            self.next()?;
            let operand = self.unary()?;
            // Negated literals become negative literals; everything else keeps a Neg node.
            return Ok(match operand {
                TimeExpr::Const(c) => TimeExpr::Const(-c),
                e => TimeExpr::Neg(Box::new(e)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<TimeExpr, ParseError> {
        let base = self.primary()?;
        if self.peek()?.1 != Token::Caret {
            return Ok(base);
        }
        self.next()?;
        let (off, tok) = self.next()?;
        let (sign, (off, tok)) = if tok == Token::Minus {
            (-1.0, self.next()?)
        } else {
            (1.0, (off, tok))
        };
        let exponent = match tok {
            Token::Num(v) if v.fract() == 0.0 && v.abs() <= f64::from(i32::MAX) => {
                (sign * v) as i32
            }
            Token::Num(_) => return Self::err(off, "exponent must be an integer literal"),
            other => {
                return Self::err(
                    off,
                    format!("expected integer exponent, found {}", describe(&other)),
                )
            }
        };
        if let (off, Token::Caret) = *self.peek()? {
            return Self::err(off, "chained exponents need parentheses");
        }
        Ok(TimeExpr::Pow(Box::new(base), exponent))
    }

    fn primary(&mut self) -> Result<TimeExpr, ParseError> {
        let (off, tok) = self.next()?;
        match tok {
            Token::Num(v) => Ok(TimeExpr::Const(v)),
            Token::Ident(name) if name == "t" => Ok(TimeExpr::Time),
            Token::Ident(name) => {
                let Some(func) = Func::from_name(&name) else {
                    return Self::err(off, format!("unknown identifier '{name}'"));
                };
                match self.next()? {
                    (_, Token::LParen) => {}
                    (o, other) => {
                        return Self::err(
                            o,
                            format!("expected '(' after {name}, found {}", describe(&other)),
                        )
                    }
                }
                let arg = self.expr()?;
                self.expect_rparen()?;
                Ok(TimeExpr::Call(func, Box::new(arg)))
            }
            Token::LParen => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            other => Self::err(off, format!("expected operand, found {}", describe(&other))),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        match self.next()? {
            (_, Token::RParen) => Ok(()),
            (off, other) => Self::err(off, format!("expected ')', found {}", describe(&other))),
        }
    }
}

fn describe(tok: &Token) -> String {
    match tok {
        Token::Num(v) => format!("number {v}"),
        Token::Ident(s) => format!("identifier '{s}'"),
        Token::Plus => "'+'".into(),
        Token::Minus => "'-'".into(),
        Token::Star => "'*'".into(),
        Token::Slash => "'/'".into(),
        Token::Caret => "'^'".into(),
        Token::LParen => "'('".into(),
        Token::RParen => "')'".into(),
        Token::End => "end of input".into(),
    }
}
