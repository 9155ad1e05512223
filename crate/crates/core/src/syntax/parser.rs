//! Parser for the map description language.
//!
//! ```text
//! map    := "map" IDENT "(" IDENT ("," IDENT)* ")" "=" "(" expr ("," expr)* ")"
//! expr   := term (("+"|"-") term)*
//! term   := RATIONAL | [RATIONAL "*"] IDENT
//!         | "min" "(" expr ("," expr)* ")" | "max" "(" expr ("," expr)* ")"
//!         | "(" expr ")" | "-" term
//! RATIONAL := integer ["/" positive-integer]
//! ```
//!
//! `#` starts a comment; one map per file. `max(e1, …)` is desugared to
//! `-min(-e1, …)` on the spot.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::linform::LinearForm;
use crate::rat::Rat;
use crate::syntax::ast::Expr;
use crate::syntax::{NormalForm, TropicalMap};

const KEYWORDS: &[&str] = &["map", "min", "max"];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(BigInt),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Equals,
    Slash,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Number(n) => format!("'{n}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Equals => "'='".into(),
            Tok::Slash => "'/'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, Error> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if ch.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if ch == '#' {
            while let Some(&c) = chars.peek() {
                bump(&mut chars);
                if c == '\n' {
                    break;
                }
            }
            continue;
        }
        let tok = match ch {
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            '+' => {
                bump(&mut chars);
                Tok::Plus
            }
            '-' => {
                bump(&mut chars);
                Tok::Minus
            }
            '*' => {
                bump(&mut chars);
                Tok::Star
            }
            '=' => {
                bump(&mut chars);
                Tok::Equals
            }
            '/' => {
                bump(&mut chars);
                Tok::Slash
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Number(digits.parse().expect("digits parse as an integer"))
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Ident(name)
            }
            other => {
                return Err(Error::Syntax {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push(Spanned {
            tok,
            line: tline,
            col: tcol,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    vars: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: at.line,
            col: at.col,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Spanned, Error> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(self.error_at(
                &t,
                format!("expected {}, found {}", want.describe(), t.tok.describe()),
            ))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Spanned), Error> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => Ok((name.clone(), t)),
            Tok::Ident(name) => Err(self.error_at(
                &t,
                format!("'{name}' is a keyword and cannot be used as a name"),
            )),
            other => Err(self.error_at(
                &t,
                format!("expected identifier, found {}", other.describe()),
            )),
        }
    }

    fn parse_map(&mut self) -> Result<(String, Vec<String>, Vec<Expr>), Error> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(kw) if kw == "map" => {}
            other => {
                return Err(self.error_at(
                    &t,
                    format!("expected 'map', found {}", other.describe()),
                ))
            }
        }
        let (name, _) = self.expect_ident()?;
        self.expect(Tok::LParen)?;
        loop {
            let (var, at) = self.expect_ident()?;
            if self.vars.contains(&var) {
                return Err(self.error_at(&at, format!("duplicate variable '{var}'")));
            }
            self.vars.push(var);
            match self.next() {
                t if t.tok == Tok::Comma => continue,
                t if t.tok == Tok::RParen => break,
                t => {
                    return Err(self.error_at(
                        &t,
                        format!("expected ',' or ')', found {}", t.tok.describe()),
                    ))
                }
            }
        }
        self.expect(Tok::Equals)?;
        self.expect(Tok::LParen)?;
        let mut coords = Vec::new();
        loop {
            coords.push(self.parse_expr()?);
            match self.next() {
                t if t.tok == Tok::Comma => continue,
                t if t.tok == Tok::RParen => break,
                t => {
                    return Err(self.error_at(
                        &t,
                        format!("expected ',' or ')', found {}", t.tok.describe()),
                    ))
                }
            }
        }
        let t = self.next();
        if t.tok != Tok::Eof {
            return Err(self.error_at(
                &t,
                format!("expected end of input, found {}", t.tok.describe()),
            ));
        }
        Ok((name, self.vars.clone(), coords))
    }

    fn parse_expr(&mut self) -> Result<Expr, Error> {
        let mut acc = self.parse_term()?;
        loop {
            match &self.peek().tok {
                Tok::Plus => {
                    self.next();
                    let rhs = self.parse_term()?;
                    acc = Expr::sum(acc, rhs);
                }
                Tok::Minus => {
                    self.next();
                    let rhs = self.parse_term()?;
                    acc = Expr::sum(acc, Expr::neg(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, Error> {
        let dim = self.vars.len();
        let t = self.next();
        match t.tok.clone() {
            Tok::Minus => Ok(Expr::neg(self.parse_term()?)),
            Tok::LParen => {
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Number(n) => {
                let value = self.finish_rational(n)?;
                if self.peek().tok == Tok::Star {
                    self.next();
                    let (var, at) = self.expect_ident()?;
                    let idx = self.lookup_var(&var, &at)?;
                    Ok(Expr::Lin(LinearForm::scaled_variable(dim, idx, value)))
                } else {
                    Ok(Expr::Lin(LinearForm::constant(dim, value)))
                }
            }
            Tok::Ident(name) if name == "min" || name == "max" => {
                self.expect(Tok::LParen)?;
                let mut args = Vec::new();
                loop {
                    args.push(self.parse_expr()?);
                    match self.next() {
                        t if t.tok == Tok::Comma => continue,
                        t if t.tok == Tok::RParen => break,
                        t => {
                            return Err(self.error_at(
                                &t,
                                format!("expected ',' or ')', found {}", t.tok.describe()),
                            ))
                        }
                    }
                }
                if name == "min" {
                    Ok(Expr::min(args))
                } else {
                    // max(e…) = -min(-e…)
                    Ok(Expr::neg(Expr::min(
                        args.into_iter().map(Expr::neg).collect(),
                    )))
                }
            }
            Tok::Ident(name) => {
                let idx = self.lookup_var(&name, &t)?;
                Ok(Expr::Lin(LinearForm::variable(dim, idx)))
            }
            other => Err(self.error_at(
                &t,
                format!("expected a term, found {}", other.describe()),
            )),
        }
    }

    /// Consumes an optional `/ positive-integer` after a numerator.
    fn finish_rational(&mut self, numer: BigInt) -> Result<Rat, Error> {
        if self.peek().tok != Tok::Slash {
            return Ok(Rat::from_integer(numer));
        }
        self.next();
        let t = self.next();
        match &t.tok {
            Tok::Number(d) if !d.is_zero() => Ok(Rat::new(numer, d.clone())),
            Tok::Number(_) => Err(self.error_at(&t, "denominator must be positive")),
            other => Err(self.error_at(
                &t,
                format!("expected denominator, found {}", other.describe()),
            )),
        }
    }

    fn lookup_var(&self, name: &str, at: &Spanned) -> Result<usize, Error> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| self.error_at(at, format!("unknown identifier '{name}'")))
    }
}

/// Parses the raw expression trees without normalizing; variables are bound
/// by declaration order.
pub fn parse_map_raw(text: &str) -> Result<(String, Vec<String>, Vec<Expr>), Error> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        vars: Vec::new(),
    };
    parser.parse_map()
}

/// Parses and normalizes a map description.
pub fn parse_map(text: &str) -> Result<TropicalMap, Error> {
    let (name, vars, exprs) = parse_map_raw(text)?;
    let dim = vars.len();
    let coords: Vec<NormalForm> = exprs
        .iter()
        .map(|e| crate::syntax::normalize(e, dim))
        .collect();
    Ok(TropicalMap::new(name, vars, coords))
}
