//! Plain ASCII polynomial syntax: `x^2*t + (g+1)*x + 3/2`.
//!
//! Sums, differences, products, non-negative integer powers, parentheses,
//! integer or `p/q` literals, the two variable names, and the field's named
//! generator (`g` for `GF(2^k)`).

use crate::bivariate::{Poly2, Vars};
use crate::error::PolyError;
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>, PolyError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text
                    .parse::<i64>()
                    .map_err(|e| PolyError::Parse(format!("bad integer `{text}`: {e}")))?;
                out.push(Token::Num(n));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(PolyError::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    tokens: Vec<Token>,
    pos: usize,
    field: &'a F,
    vars: Vars,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly2<F>, PolyError> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.next();
                self.term()?.neg()
            }
            Some(Token::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly2<F>, PolyError> {
        let mut acc = self.power()?;
        while let Some(Token::Star) = self.peek() {
            self.next();
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly2<F>, PolyError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.next();
            match self.next() {
                Some(Token::Num(e)) if e >= 0 && e <= u32::MAX as i64 => Ok(base.pow(e as u32)),
                other => Err(PolyError::Parse(format!("expected exponent, got {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly2<F>, PolyError> {
        let f = self.field;
        match self.next() {
            Some(Token::Num(n)) => {
                if let Some(Token::Slash) = self.peek() {
                    self.next();
                    match self.next() {
                        Some(Token::Num(d)) => {
                            let c = f.from_ratio(n, d).ok_or_else(|| {
                                PolyError::Parse(format!("{n}/{d} is not defined in {}", f.spec()))
                            })?;
                            Ok(Poly2::constant(f.clone(), self.vars, c))
                        }
                        other => Err(PolyError::Parse(format!("expected denominator, got {other:?}"))),
                    }
                } else {
                    Ok(Poly2::constant(f.clone(), self.vars, f.from_i64(n)))
                }
            }
            Some(Token::Ident(name)) => {
                if name == self.vars[0] {
                    Ok(Poly2::var0(f.clone(), self.vars))
                } else if name == self.vars[1] {
                    Ok(Poly2::var1(f.clone(), self.vars))
                } else if let Some((_, g)) = f.generator().filter(|(s, _)| *s == name) {
                    Ok(Poly2::constant(f.clone(), self.vars, g))
                } else {
                    Err(PolyError::Parse(format!("unknown identifier `{name}`")))
                }
            }
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(e),
                    other => Err(PolyError::Parse(format!("expected `)`, got {other:?}"))),
                }
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `text` as a polynomial in `vars` over `field`.
pub fn parse_poly<F: Field>(field: &F, vars: Vars, text: &str) -> Result<Poly2<F>, PolyError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(PolyError::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        field,
        vars,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(PolyError::Parse(format!(
            "trailing input starting at {:?}",
            p.tokens[p.pos]
        )));
    }
    Ok(out)
}
