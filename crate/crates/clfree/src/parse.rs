//! Parsing and printing of polynomial expressions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (factor | '*' factor | '/' integer)*
//! factor := base ['^' integer]
//! base   := integer | variable | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies, so `5yz` and `(x-y)(x-2y)` work. Division is
//! only by nonzero integer literals, which is enough for rational
//! coefficients like `1/2x`. Variables are the single letters of the ring.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::poly::Poly;
use crate::q::{fmt_q, qi, Q, Z};
use crate::ring::{Mono, Ring};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Z),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(ring: &Ring, input: &str) -> Result<Vec<Tok>, Error> {
    let mut toks = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '+' => toks.push(Tok::Plus),
            '-' => toks.push(Tok::Minus),
            '*' => toks.push(Tok::Star),
            '/' => toks.push(Tok::Slash),
            '^' => toks.push(Tok::Caret),
            '(' => toks.push(Tok::LParen),
            ')' => toks.push(Tok::RParen),
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s
                    .parse::<Z>()
                    .map_err(|_| Error::Parse(format!("bad integer literal {s}")))?;
                toks.push(Tok::Num(n));
                continue;
            }
            _ if c.is_alphabetic() => {
                let name = c.to_string();
                let idx = ring
                    .var_index(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name} in {ring}")))?;
                toks.push(Tok::Var(idx));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
        }
        i += 1;
    }
    Ok(toks)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly, Error> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(n)) => {
                            if n.is_zero() {
                                return Err(Error::Parse("division by zero".into()));
                            }
                            acc = acc.scale(&Q::new(Z::one(), n));
                        }
                        _ => {
                            return Err(Error::Parse(
                                "division is only allowed by integer literals".into(),
                            ))
                        }
                    }
                }
                // Juxtaposition: a following base starts a new factor.
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, Error> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent out of range".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("expected integer exponent after ^".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Poly, Error> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Poly::constant(self.ring, Q::from_integer(n))),
            Some(Tok::Var(idx)) => Ok(Poly::var_idx(self.ring, idx)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses an expression into a polynomial of the given ring.
pub fn parse_poly(ring: &Ring, input: &str) -> Result<Poly, Error> {
    let toks = tokenize(ring, input)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser {
        ring,
        toks,
        pos: 0,
    };
    let p = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {}",
            parser.pos
        )));
    }
    Ok(p)
}

fn fmt_mono(ring: &Ring, m: &Mono) -> String {
    let mut s = String::new();
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        s.push_str(&ring.vars()[i]);
        if e > 1 {
            s.push('^');
            s.push_str(&e.to_string());
        }
    }
    s
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ms = fmt_mono(self.ring(), m);
            if ms.is_empty() {
                write!(f, "{}", fmt_q(&abs))?;
            } else if abs == qi(1) {
                write!(f, "{ms}")?;
            } else {
                write!(f, "{}{}", fmt_q(&abs), ms)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_paper_style_forms() {
        let r = Ring::xyz();
        let f = parse_poly(&r, "x^2-xz+5y^2-5yz").unwrap();
        assert_eq!(f.to_string(), "x^2 + 5y^2 - xz - 5yz");
        let g = parse_poly(&r, "xy(x-y)(x-2y)(x^2-xz+y^2-yz)").unwrap();
        assert_eq!(g.degree(), Some(6));
        assert!(g.is_homogeneous());
        let h = parse_poly(&r, "(x-3z)^2+(y-4z)^2-25z^2").unwrap();
        assert_eq!(h, parse_poly(&r, "x^2+y^2-6xz-8yz").unwrap());
    }

    #[test]
    fn rational_coefficients_roundtrip() {
        let r = Ring::xyz();
        let f = parse_poly(&r, "1/2x^2 - 3/4yz").unwrap();
        let printed = f.to_string();
        assert_eq!(parse_poly(&r, &printed).unwrap(), f);
    }

    #[test]
    fn explicit_star_and_unary_minus() {
        let r = Ring::xyz();
        assert_eq!(
            parse_poly(&r, "-x + 2*y").unwrap(),
            parse_poly(&r, "2y - x").unwrap()
        );
        assert_eq!(
            parse_poly(&r, "-(x - y)^2").unwrap(),
            parse_poly(&r, "-x^2 + 2xy - y^2").unwrap()
        );
    }

    #[test]
    fn rejects_garbage() {
        let r = Ring::xyz();
        assert!(parse_poly(&r, "x +").is_err());
        assert!(parse_poly(&r, "w^2").is_err());
        assert!(parse_poly(&r, "x / y").is_err());
        assert!(parse_poly(&r, "(x").is_err());
        assert!(parse_poly(&r, "").is_err());
    }

    #[test]
    fn display_constant_and_zero() {
        let r = Ring::xyz();
        assert_eq!(parse_poly(&r, "x - x").unwrap().to_string(), "0");
        assert_eq!(parse_poly(&r, "7").unwrap().to_string(), "7");
        assert_eq!(parse_poly(&r, "0 - 2x").unwrap().to_string(), "-2x");
    }
}
