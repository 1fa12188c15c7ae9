//! Expression grammar shared by polynomial and curve inputs.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | number '/' number | ident | ident '(' expr ')' | '(' expr ')'
//! ```
//!
//! The parser builds an [`Expr`] tree; evaluation into a polynomial checks
//! which identifiers and divisions are allowed.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::Field;
use super::mpoly::KPoly;
use super::rational::Rational;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(String, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub line: usize,
    pub column: usize,
}

impl Expr {
    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    /// Identifiers occurring outside function-call names.
    pub fn identifiers(&self, out: &mut BTreeSet<String>) {
        match &self.kind {
            ExprKind::Num(_) => {}
            ExprKind::Var(v) => {
                out.insert(v.clone());
            }
            ExprKind::Neg(a) | ExprKind::Pow(a, _) | ExprKind::Call(_, a) => a.identifiers(out),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                a.identifiers(out);
                b.identifiers(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(src: &str, line: usize) -> Result<Lexer> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Num(s.parse().expect("digits")), line, col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), line, col));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Sym(c), line, col));
            i += 1;
        } else {
            return Err(Error::Parse {
                line,
                column: col,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    toks.push((Tok::End, line, chars.len() + 1));
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        (self.toks[self.pos].1, self.toks[self.pos].2)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.here();
        let found = match self.peek() {
            Tok::Num(n) => format!("'{n}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".to_string(),
        };
        Error::Parse {
            line,
            column,
            message: format!("{}, found {found}", message.into()),
        }
    }

    fn node(&self, kind: ExprKind, at: (usize, usize)) -> Expr {
        Expr {
            kind,
            line: at.0,
            column: at.1,
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let at = self.here();
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = self.node(ExprKind::Add(Box::new(lhs), Box::new(rhs)), at);
                }
                Tok::Sym('-') => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = self.node(ExprKind::Sub(Box::new(lhs), Box::new(rhs)), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let at = self.here();
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = self.node(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), at);
                }
                Tok::Sym('/') => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = self.node(ExprKind::Div(Box::new(lhs), Box::new(rhs)), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                let a = self.unary()?;
                Ok(self.node(ExprKind::Neg(Box::new(a)), at))
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == &Tok::Sym('^') {
            let at = self.here();
            self.bump();
            let before = self.pos;
            match self.bump() {
                Tok::Num(n) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Parse {
                        line: at.0,
                        column: at.1,
                        message: "exponent too large".into(),
                    })?;
                    if e == 0 {
                        return Err(Error::Parse {
                            line: at.0,
                            column: at.1 + 1,
                            message: "exponent must be a positive integer".into(),
                        });
                    }
                    return Ok(self.node(ExprKind::Pow(Box::new(base), e), at));
                }
                _ => {
                    self.pos = before;
                    return Err(self.err("expected a positive integer exponent"));
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(self.node(ExprKind::Num(n), at))
            }
            Tok::Ident(name) => {
                self.bump();
                if self.peek() == &Tok::Sym('(') {
                    self.bump();
                    let arg = self.expr()?;
                    if self.peek() != &Tok::Sym(')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.bump();
                    return Ok(self.node(ExprKind::Call(name, Box::new(arg)), at));
                }
                Ok(self.node(ExprKind::Var(name), at))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != &Tok::Sym(')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Parses one expression. `line` is used for error positions.
pub fn parse_expr(src: &str, line: usize) -> Result<Expr> {
    let mut lx = lex(src, line)?;
    if lx.peek() == &Tok::End {
        return Err(lx.err("empty expression"));
    }
    let e = lx.expr()?;
    if lx.peek() != &Tok::End {
        return Err(lx.err("unexpected token"));
    }
    Ok(e)
}

/// Whether `name` is a polynomial variable of the grammar.
pub fn is_poly_var(name: &str) -> bool {
    let b = name.as_bytes();
    match b {
        [b'L'] | [b'T'] => true,
        [b'x' | b'y', d] => d.is_ascii_digit(),
        [b'X', d] => (b'1'..=b'9').contains(d),
        _ => false,
    }
}

/// Sort key giving the canonical variable order x0..x9, L, X1..X9, y0..y9, T.
pub fn var_sort_key(name: &str) -> (u8, String) {
    let cat = match name.as_bytes().first() {
        Some(b'x') => 0,
        Some(b'L') => 1,
        Some(b'X') => 2,
        Some(b'y') => 3,
        Some(b'T') => 4,
        _ => 5,
    };
    (cat, name.to_string())
}

pub fn canonical_vars<'a>(names: impl IntoIterator<Item = &'a String>) -> Vec<String> {
    let mut v: Vec<String> = names.into_iter().cloned().collect();
    v.sort_by_key(|a| var_sort_key(a));
    v.dedup();
    v
}

fn eval_poly(e: &Expr, vars: &[String]) -> Result<KPoly> {
    Ok(match &e.kind {
        ExprKind::Num(n) => KPoly::constant(vars.to_vec(), RatFunc::constant(Rational::from_integer(n.clone()))),
        ExprKind::Var(v) if v == "t" => KPoly::constant(vars.to_vec(), RatFunc::t()),
        ExprKind::Var(v) => match vars.iter().position(|w| w == v) {
            Some(i) => KPoly::var(vars.to_vec(), i),
            None if is_poly_var(v) => {
                return Err(e.error(format!("variable '{v}' is not declared")))
            }
            None => return Err(e.error(format!("unknown identifier '{v}'"))),
        },
        ExprKind::Neg(a) => -eval_poly(a, vars)?,
        ExprKind::Add(a, b) => eval_poly(a, vars)? + eval_poly(b, vars)?,
        ExprKind::Sub(a, b) => eval_poly(a, vars)? - eval_poly(b, vars)?,
        ExprKind::Mul(a, b) => eval_poly(a, vars)? * eval_poly(b, vars)?,
        ExprKind::Div(a, b) => {
            let num = eval_poly(a, vars)?;
            let den = eval_poly(b, vars)?;
            match den.as_constant() {
                Some(c) if c.is_zero() => return Err(b.error("division by zero")),
                Some(c) => num.scale(&c.inv()),
                None => {
                    return Err(b.error(
                        "division is only allowed by expressions in t and numbers",
                    ))
                }
            }
        }
        ExprKind::Pow(a, k) => eval_poly(a, vars)?.pow(*k),
        ExprKind::Call(name, _) => {
            return Err(e.error(format!("function '{name}' is not allowed in a polynomial")))
        }
    })
}

/// Parses a polynomial with ℚ(t) coefficients. With `vars = None`, the
/// variables are those occurring, in canonical order.
pub fn parse_poly_line(src: &str, line: usize, vars: Option<&[String]>) -> Result<KPoly> {
    let e = parse_expr(src, line)?;
    let names = match vars {
        Some(v) => v.to_vec(),
        None => {
            let mut ids = BTreeSet::new();
            e.identifiers(&mut ids);
            ids.remove("t");
            canonical_vars(ids.iter().filter(|v| is_poly_var(v)))
        }
    };
    eval_poly(&e, &names)
}

pub fn parse_poly(src: &str) -> Result<KPoly> {
    parse_poly_line(src, 1, None)
}

pub fn parse_poly_in(src: &str, vars: &[String]) -> Result<KPoly> {
    parse_poly_line(src, 1, Some(vars))
}

/// A file of polynomials: optional `vars: a b c` header, `#` comments and
/// blank lines ignored, one polynomial per remaining line. All polynomials
/// share one variable list.
pub fn parse_poly_file(text: &str) -> Result<Vec<KPoly>> {
    let mut declared: Option<Vec<String>> = None;
    let mut lines: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix("vars:") {
            let names: Vec<String> = rest
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            for n in &names {
                if !is_poly_var(n) {
                    return Err(Error::Parse {
                        line: i + 1,
                        column: 1,
                        message: format!("'{n}' is not a polynomial variable"),
                    });
                }
            }
            declared = Some(names);
            continue;
        }
        // Column offsets refer to the trimmed text's position in the line.
        lines.push((i + 1, raw.split('#').next().unwrap_or("")));
    }
    let vars = match declared {
        Some(v) => v,
        None => {
            let mut ids = BTreeSet::new();
            for (n, l) in &lines {
                parse_expr(l, *n)?.identifiers(&mut ids);
            }
            ids.remove("t");
            canonical_vars(ids.iter().filter(|v| is_poly_var(v)))
        }
    };
    lines
        .iter()
        .map(|(n, l)| parse_poly_line(l, *n, Some(&vars)))
        .collect()
}

/// Parses an exact rational such as `3`, `-2/7`.
pub fn parse_rational(src: &str) -> Result<Rational> {
    let e = parse_expr(src, 1)?;
    let p = eval_poly(&e, &[])?;
    p.as_constant()
        .and_then(|c| c.as_constant())
        .ok_or_else(|| e.error("expected a rational number"))
}

/// Parses a univariate rational function in `t`.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc> {
    let e = parse_expr(src, 1)?;
    let p = eval_ratfunc(&e)?;
    Ok(p)
}

fn eval_ratfunc(e: &Expr) -> Result<RatFunc> {
    Ok(match &e.kind {
        ExprKind::Num(n) => RatFunc::constant(Rational::from_integer(n.clone())),
        ExprKind::Var(v) if v == "t" => RatFunc::t(),
        ExprKind::Var(v) => return Err(e.error(format!("unexpected identifier '{v}'"))),
        ExprKind::Neg(a) => -eval_ratfunc(a)?,
        ExprKind::Add(a, b) => eval_ratfunc(a)? + eval_ratfunc(b)?,
        ExprKind::Sub(a, b) => eval_ratfunc(a)? - eval_ratfunc(b)?,
        ExprKind::Mul(a, b) => eval_ratfunc(a)? * eval_ratfunc(b)?,
        ExprKind::Div(a, b) => {
            let d = eval_ratfunc(b)?;
            if d.is_zero() {
                return Err(b.error("division by zero"));
            }
            eval_ratfunc(a)? / d
        }
        ExprKind::Pow(a, k) => eval_ratfunc(a)?.pow(*k),
        ExprKind::Call(name, _) => return Err(e.error(format!("unexpected function '{name}'"))),
    })
}
