//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr   := sum
//! sum    := ['-'] prod (('+' | '-') prod)*
//! prod   := atom (('v' | 'o' | 'ro') atom)*        left-associative
//! atom   := scalar ['*' atom] | generator | call | '(' expr ')'
//! scalar := rational [('+' | '-') rational 'i'] | rational 'i'
//! ```

use std::fmt;
use std::str::FromStr;

use qfa_core::Scalar;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        offset,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product {
    Vee,
    Circle,
    RenormCircle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    T,
    TBar,
    TScalar,
    TBarScalar,
    Eps,
    Antipode,
    Pair,
    Z,
    MPair,
    S,
    Derivation,
    Sigma,
    ExpSigma,
    DividedPower,
    ExpVee,
    Green,
    Coproduct,
}

const FUNCS: &[(&str, Func, usize)] = &[
    ("T", Func::T, 1),
    ("Tbar", Func::TBar, 1),
    ("t", Func::TScalar, 1),
    ("tbar", Func::TBarScalar, 1),
    ("eps", Func::Eps, 1),
    ("antipode", Func::Antipode, 1),
    ("pair", Func::Pair, 2),
    ("Z", Func::Z, 2),
    ("mpair", Func::MPair, 2),
    ("S", Func::S, 1),
    ("delta", Func::Derivation, 2),
    ("Sigma", Func::Sigma, 1),
    ("expSigma", Func::ExpSigma, 1),
    ("dp", Func::DividedPower, 2),
    ("expv", Func::ExpVee, 1),
    ("green", Func::Green, 3),
    ("Delta", Func::Coproduct, 1),
];

impl Func {
    pub fn name(self) -> &'static str {
        FUNCS.iter().find(|f| f.1 == self).map(|f| f.0).unwrap()
    }

    pub fn arity(self) -> usize {
        FUNCS.iter().find(|f| f.1 == self).map(|f| f.2).unwrap()
    }

    fn lookup(name: &str) -> Option<Func> {
        FUNCS.iter().find(|f| f.0 == name).map(|f| f.1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Scalar(Scalar),
    Gen(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Prod(Product, Box<Expr>, Box<Expr>),
    ScalarMul(Scalar, Box<Expr>),
    Call(Func, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Gen(usize),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k];
        let start = k;
        if c.is_ascii_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            out.push((Tok::Int(text[start..k].to_string()), start));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while k < bytes.len() && bytes[k].is_ascii_alphabetic() {
                k += 1;
            }
            let mut word = &text[start..k];
            // "e1ve2": an operator glued to the next generator
            let glued = word.len() > 1
                && word.ends_with('e')
                && matches!(&word[..word.len() - 1], "v" | "o" | "ro")
                && bytes.get(k).is_some_and(u8::is_ascii_digit);
            if glued {
                out.push((Tok::Ident(word[..word.len() - 1].to_string()), start));
                word = "e";
            }
            let start = if glued { k - 1 } else { start };
            if word == "e" {
                let digits = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                if k == digits {
                    return err(start, "expected generator index after 'e'");
                }
                let index: usize = text[digits..k]
                    .parse()
                    .or_else(|_| err(digits, "generator index too large"))?;
                if index == 0 {
                    return err(digits, "generator indices start at 1");
                }
                out.push((Tok::Gen(index), start));
            } else {
                out.push((Tok::Ident(word.to_string()), start));
            }
            continue;
        }
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            _ => {
                let ch = text[k..].chars().next().unwrap();
                return err(start, format!("unexpected character '{ch}'"));
            }
        };
        out.push((tok, start));
        k += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let k = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[k].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            err(self.offset(), format!("expected {what}"))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = if *self.peek() == Tok::Minus {
            self.bump();
            match self.prod()? {
                Expr::Scalar(c) => Expr::Scalar(-c),
                Expr::ScalarMul(c, e) => Expr::ScalarMul(-c, e),
                e => Expr::Neg(Box::new(e)),
            }
        } else {
            self.prod()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.prod()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.prod()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product_op(&self) -> Option<Product> {
        match self.peek() {
            Tok::Ident(w) if w == "v" => Some(Product::Vee),
            Tok::Ident(w) if w == "o" => Some(Product::Circle),
            Tok::Ident(w) if w == "ro" => Some(Product::RenormCircle),
            _ => None,
        }
    }

    fn prod(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.atom()?;
        while let Some(op) = self.product_op() {
            self.bump();
            lhs = Expr::Prod(op, Box::new(lhs), Box::new(self.atom()?));
        }
        Ok(lhs)
    }

    /// Length in tokens of a rational starting `ahead` tokens on, if any.
    fn rational_len(&self, ahead: usize) -> Option<usize> {
        match (self.peek_at(ahead), self.peek_at(ahead + 1), self.peek_at(ahead + 2)) {
            (Tok::Int(_), Tok::Slash, Tok::Int(_)) => Some(3),
            (Tok::Int(_), _, _) => Some(1),
            _ => None,
        }
    }

    fn is_i(&self, ahead: usize) -> bool {
        matches!(self.peek_at(ahead), Tok::Ident(w) if w == "i")
    }

    fn take_text(&mut self, n: usize) -> String {
        (0..n)
            .map(|_| match self.bump() {
                Tok::Int(s) => s,
                Tok::Slash => "/".into(),
                Tok::Plus => "+".into(),
                Tok::Minus => "-".into(),
                Tok::Ident(w) => w,
                t => unreachable!("{t:?} in a scalar literal"),
            })
            .collect()
    }

    fn scalar(&mut self) -> Result<Scalar, ParseError> {
        let start = self.offset();
        let re = self.rational_len(0).expect("caller checked for a number");
        let mut len = re;
        if self.is_i(re) {
            len += 1;
        } else if matches!(self.peek_at(re), Tok::Plus | Tok::Minus) {
            if let Some(im) = self.rational_len(re + 1) {
                if self.is_i(re + 1 + im) {
                    len += 2 + im;
                }
            }
        }
        let text = self.take_text(len);
        Scalar::from_str(&text).or_else(|e| err(start, e.to_string()))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(_) => {
                let c = self.scalar()?;
                if *self.peek() == Tok::Star {
                    self.bump();
                    Ok(Expr::ScalarMul(c, Box::new(self.atom()?)))
                } else {
                    Ok(Expr::Scalar(c))
                }
            }
            Tok::Gen(k) => {
                self.bump();
                Ok(Expr::Gen(k))
            }
            Tok::LParen => {
                self.bump();
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let Some(func) = Func::lookup(&name) else {
                    return err(at, format!("unknown function '{name}'"));
                };
                self.bump();
                self.expect(Tok::LParen, &format!("'(' after {name}"))?;
                let mut args = vec![self.sum()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.sum()?);
                }
                self.expect(Tok::RParen, "')' or ','")?;
                if args.len() != func.arity() {
                    return err(
                        at,
                        format!("{name} takes {} argument(s), got {}", func.arity(), args.len()),
                    );
                }
                Ok(Expr::Call(func, args))
            }
            Tok::End => err(at, "unexpected end of input"),
            t => err(at, format!("unexpected {}", describe(&t))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::RParen => "')'",
        Tok::LParen => "'('",
        Tok::Comma => "','",
        _ => "token",
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        let what = match p.peek() {
            Tok::Ident(w) => format!("unexpected '{w}'"),
            t => format!("unexpected {}", describe(t)),
        };
        return err(p.offset(), what);
    }
    Ok(e)
}

/// A scalar literal with any leading sign pulled out front, so that the
/// parser's sign folding reads it back unchanged.
struct Literal<'a>(&'a Scalar);

impl fmt::Display for Literal<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_negative_lead() {
            write!(f, "-{}", -self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Fully parenthesised rendering; `parse_expr(&e.to_string()) == e`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Scalar(c) => write!(f, "({})", Literal(c)),
            Expr::Gen(k) => write!(f, "e{k}"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Prod(op, a, b) => {
                let op = match op {
                    Product::Vee => "v",
                    Product::Circle => "o",
                    Product::RenormCircle => "ro",
                };
                write!(f, "({a} {op} {b})")
            }
            Expr::ScalarMul(c, e) => write!(f, "({}*{e})", Literal(c)),
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}
