//! Small arithmetic expressions in the variables `eta` and `xi`, used for
//! user-defined nonlinearities `g(eta, xi)`, forcing terms `f(eta)`, and exact
//! solutions.
//!
//! Grammar (whitespace-insensitive, standard precedence):
//!
//! ```text
//! expr   := term  (('+' | '-') term)*          left-associative
//! term   := unary (('*' | '/') unary)*         left-associative
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?               right-associative
//! atom   := number | 'eta' | 'xi' | func '(' expr ')' | '(' expr ')'
//! func   := sin | cos | exp | ln | sqrt
//! ```
//!
//! Exponents must be constant (no `eta`/`xi`); they are folded to a literal at
//! parse time, so `(1 + eta^2/3)^(-1/2)` is accepted.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Immutable expression tree. `Pow` stores its exponent as a folded literal.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Eta,
    Xi,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
    Fun(Func, Box<Expr>),
}

impl Expr {
    pub fn parse(source: &str) -> Result<Expr> {
        let mut p = Parser { src: source.as_bytes(), pos: 0 };
        p.skip_ws();
        if p.pos >= p.src.len() {
            return Err(Error::Parse { offset: 0, expected: "non-empty expression".into() });
        }
        let e = p.parse_expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(Error::Parse { offset: p.pos, expected: "end of input".into() });
        }
        Ok(e)
    }

    pub fn eval(&self, eta: f64, xi: f64) -> Result<f64> {
        match self {
            Expr::Num(v) => Ok(*v),
            Expr::Eta => Ok(eta),
            Expr::Xi => Ok(xi),
            Expr::Neg(u) => Ok(-u.eval(eta, xi)?),
            Expr::Bin(op, a, b) => {
                let x = a.eval(eta, xi)?;
                let y = b.eval(eta, xi)?;
                match op {
                    BinOp::Add => Ok(x + y),
                    BinOp::Sub => Ok(x - y),
                    BinOp::Mul => Ok(x * y),
                    BinOp::Div => {
                        if y == 0.0 {
                            Err(Error::EvalDomain {
                                op: "division by zero",
                                subtree: self.to_string(),
                            })
                        } else {
                            Ok(x / y)
                        }
                    }
                }
            }
            Expr::Pow(base, e) => Ok(libm::pow(base.eval(eta, xi)?, *e)),
            Expr::Fun(f, arg) => {
                let v = arg.eval(eta, xi)?;
                match f {
                    Func::Sin => Ok(libm::sin(v)),
                    Func::Cos => Ok(libm::cos(v)),
                    Func::Exp => Ok(libm::exp(v)),
                    Func::Ln => {
                        if v < 0.0 {
                            Err(Error::EvalDomain {
                                op: "ln of negative argument",
                                subtree: self.to_string(),
                            })
                        } else {
                            Ok(libm::log(v))
                        }
                    }
                    Func::Sqrt => {
                        if v < 0.0 {
                            Err(Error::EvalDomain {
                                op: "sqrt of negative argument",
                                subtree: self.to_string(),
                            })
                        } else {
                            Ok(libm::sqrt(v))
                        }
                    }
                }
            }
        }
    }

    /// Symbolic partial derivative with respect to `xi`.
    pub fn differentiate_xi(&self) -> Expr {
        match self {
            Expr::Num(_) | Expr::Eta => Expr::Num(0.0),
            Expr::Xi => Expr::Num(1.0),
            Expr::Neg(u) => neg(u.differentiate_xi()),
            Expr::Bin(BinOp::Add, a, b) => add(a.differentiate_xi(), b.differentiate_xi()),
            Expr::Bin(BinOp::Sub, a, b) => sub(a.differentiate_xi(), b.differentiate_xi()),
            Expr::Bin(BinOp::Mul, a, b) => add(
                mul(a.differentiate_xi(), (**b).clone()),
                mul((**a).clone(), b.differentiate_xi()),
            ),
            Expr::Bin(BinOp::Div, a, b) => {
                // (a'b - ab') / b^2
                let num = sub(
                    mul(a.differentiate_xi(), (**b).clone()),
                    mul((**a).clone(), b.differentiate_xi()),
                );
                div(num, Expr::Pow(b.clone(), 2.0))
            }
            Expr::Pow(base, e) => mul(
                mul(Expr::Num(*e), Expr::Pow(base.clone(), e - 1.0)),
                base.differentiate_xi(),
            ),
            Expr::Fun(f, arg) => {
                let du = arg.differentiate_xi();
                let outer = match f {
                    Func::Sin => Expr::Fun(Func::Cos, arg.clone()),
                    Func::Cos => neg(Expr::Fun(Func::Sin, arg.clone())),
                    Func::Exp => Expr::Fun(Func::Exp, arg.clone()),
                    Func::Ln => return div(du, (**arg).clone()),
                    Func::Sqrt => {
                        return div(
                            du,
                            mul(Expr::Num(2.0), Expr::Fun(Func::Sqrt, arg.clone())),
                        )
                    }
                };
                mul(outer, du)
            }
        }
    }

    pub fn contains_xi(&self) -> bool {
        self.any(&|e| matches!(e, Expr::Xi))
    }

    pub fn contains_eta(&self) -> bool {
        self.any(&|e| matches!(e, Expr::Eta))
    }

    fn any(&self, pred: &dyn Fn(&Expr) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Expr::Num(_) | Expr::Eta | Expr::Xi => false,
            Expr::Neg(u) | Expr::Pow(u, _) | Expr::Fun(_, u) => u.any(pred),
            Expr::Bin(_, a, b) => a.any(pred) || b.any(pred),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::Eta | Expr::Xi | Expr::Fun(..) => 5,
        }
    }
}

// Folding constructors keep derivative trees from drowning in zero terms.
fn neg(e: Expr) -> Expr {
    match e {
        Expr::Num(v) if v == 0.0 => Expr::Num(0.0),
        other => Expr::Neg(Box::new(other)),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), b) if x == 0.0 => b,
        (a, Expr::Num(y)) if y == 0.0 => a,
        (a, b) => Expr::Bin(BinOp::Add, Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (a, Expr::Num(y)) if y == 0.0 => a,
        (Expr::Num(x), b) if x == 0.0 => neg(b),
        (a, b) => Expr::Bin(BinOp::Sub, Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), _) | (_, Expr::Num(x)) if x == 0.0 => Expr::Num(0.0),
        (Expr::Num(x), b) if x == 1.0 => b,
        (a, Expr::Num(y)) if y == 1.0 => a,
        (a, b) => Expr::Bin(BinOp::Mul, Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Num(x), _) if x == 0.0 => Expr::Num(0.0),
        (a, Expr::Num(y)) if y == 1.0 => a,
        (a, b) => Expr::Bin(BinOp::Div, Box::new(a), Box::new(b)),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Eta => write!(f, "eta"),
            Expr::Xi => write!(f, "xi"),
            Expr::Neg(u) => {
                write!(f, "-")?;
                child(f, u, 3)
            }
            Expr::Bin(op, a, b) => {
                let (sym, prec) = match op {
                    BinOp::Add => ("+", 1),
                    BinOp::Sub => ("-", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                };
                child(f, a, prec)?;
                write!(f, " {sym} ")?;
                child(f, b, prec + 1)
            }
            Expr::Pow(base, e) => {
                child(f, base, 5)?;
                if *e < 0.0 {
                    write!(f, "^({e})")
                } else {
                    write!(f, "^{e}")
                }
            }
            Expr::Fun(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, expected: &str) -> Error {
        Error::Parse { offset: self.pos, expected: expected.into() }
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = Expr::Bin(BinOp::Add, Box::new(lhs), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = Expr::Bin(BinOp::Sub, Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.parse_unary()?;
                    lhs = Expr::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.parse_unary()?;
                    lhs = Expr::Bin(BinOp::Div, Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.parse_unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Expr> {
        let base = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp_offset = {
                self.skip_ws();
                self.pos
            };
            let exponent = self.parse_unary()?;
            if exponent.contains_eta() || exponent.contains_xi() {
                return Err(Error::Parse {
                    offset: exp_offset,
                    expected: "constant exponent (no eta/xi)".into(),
                });
            }
            let value = exponent.eval(0.0, 0.0).map_err(|_| Error::Parse {
                offset: exp_offset,
                expected: "evaluable constant exponent".into(),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    offset: exp_offset,
                    expected: "finite exponent".into(),
                });
            }
            return Ok(Expr::Pow(Box::new(base), value));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.parse_number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.parse_ident(),
            _ => Err(self.err("number, variable, function, or `(`")),
        }
    }

    fn parse_number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        // optional exponent suffix: e.g. 2e-3; only when digits follow
        if self.pos < self.src.len()
            && (self.src[self.pos] == b'e' || self.src[self.pos] == b'E')
        {
            let mut probe = self.pos + 1;
            if probe < self.src.len() && (self.src[probe] == b'+' || self.src[probe] == b'-') {
                probe += 1;
            }
            if probe < self.src.len() && self.src[probe].is_ascii_digit() {
                self.pos = probe;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<f64>()
            .map(Expr::Num)
            .map_err(|_| Error::Parse { offset: start, expected: format!("valid number, found `{text}`") })
    }

    fn parse_ident(&mut self) -> Result<Expr> {
        let start = self.pos;
        // apostrophe included so `xi'` reads as one (unknown) identifier
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric()
                || self.src[self.pos] == b'_'
                || self.src[self.pos] == b'\'')
        {
            self.pos += 1;
        }
        let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let func = match name {
            "eta" => return Ok(Expr::Eta),
            "xi" => return Ok(Expr::Xi),
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            _ => return Err(Error::UnknownIdentifier { name: String::from(name) }),
        };
        if self.peek() != Some(b'(') {
            return Err(self.err("`(` after function name"));
        }
        self.pos += 1;
        let arg = self.parse_expr()?;
        if self.peek() != Some(b')') {
            return Err(self.err("`)`"));
        }
        self.pos += 1;
        Ok(Expr::Fun(func, Box::new(arg)))
    }
}
