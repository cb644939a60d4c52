//! Text syntax for polynomials: rational coefficients, `*`, `^`, `+`, `-`,
//! parentheses, and variable labels such as `y_{1,2}`, `x_3` or `t`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Coeff, Polynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(text.parse().expect("digits")));
            }
            a if a.is_alphabetic() => {
                let start = i;
                while i < chars.len() {
                    let ch = chars[i];
                    if ch == '_' && i + 1 < chars.len() && chars[i + 1] == '{' {
                        let close = chars[i..]
                            .iter()
                            .position(|&x| x == '}')
                            .ok_or_else(|| Error::Parse("unterminated '{' in label".into()))?;
                        i += close + 1;
                    } else if ch.is_alphanumeric() || ch == '_' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                let text: String = chars[start..i].iter().filter(|c| !c.is_whitespace()).collect();
                out.push(Tok::Ident(text));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a HashMap<String, usize>,
    width: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.width);
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = -1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32> {
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => n
                    .try_into()
                    .map_err(|_| Error::Parse("exponent too large".into())),
                _ => Err(Error::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = match self.next() {
            Some(Tok::Num(n)) => {
                let mut c = BigRational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => {
                            c /= BigRational::from_integer(d);
                        }
                        _ => return Err(Error::Parse("expected nonzero denominator".into())),
                    }
                }
                Polynomial::constant(self.width, c)
            }
            Some(Tok::Ident(name)) => {
                let idx = *self
                    .vars
                    .get(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Polynomial::var(self.width, idx)
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => e,
                    _ => return Err(Error::Parse("expected ')'".into())),
                }
            }
            Some(Tok::Minus) => {
                let f = self.factor()?;
                return Ok(-&f);
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        let e = self.exponent()?;
        let mut out = Polynomial::one(self.width);
        for _ in 0..e {
            out = &out * &base;
        }
        Ok(out)
    }
}

/// Parse `text` as a polynomial in the ring whose variables are `labels`.
pub fn parse_polynomial(text: &str, labels: &[String]) -> Result<Polynomial> {
    let vars: HashMap<String, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        vars: &vars,
        width: labels.len(),
    };
    if p.toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {}",
            p.pos
        )));
    }
    Ok(e)
}

/// Parse a coefficient written as `p` or `p/q`.
pub fn parse_coeff(text: &str) -> Result<Coeff> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {text:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels() -> Vec<String> {
        ["y_{}", "y_{1}", "y_{1,2}", "t"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn round_trips_rendered_text() {
        let l = labels();
        let f = parse_polynomial("y_{1}^2*t - 3/4*y_{}*y_{1,2} + 2", &l).unwrap();
        assert_eq!(f.len(), 3);
        let g = parse_polynomial(&f.to_text(&l), &l).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parentheses_and_errors() {
        let l = labels();
        let f = parse_polynomial("(t - y_{1})*(t + y_{1})", &l).unwrap();
        assert_eq!(f, parse_polynomial("t^2 - y_{1}^2", &l).unwrap());
        assert!(parse_polynomial("z + 1", &l).is_err());
        assert!(parse_polynomial("t +", &l).is_err());
        assert!(parse_polynomial("1/0", &l).is_err());
        assert!(parse_polynomial("", &l).is_err());
    }
}
