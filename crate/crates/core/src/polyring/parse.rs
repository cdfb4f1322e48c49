//! Text syntax: integers, variables `[a-z]+`, `+`, `-`, `*`, `^n` (also
//! `^-n` on invertible monomials) and parentheses. Whitespace is ignored.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Poly, PolyError, Ring};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(u8),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(text[start..i].parse().unwrap())));
        } else if c.is_ascii_lowercase() {
            let start = i;
            while i < b.len() && b[i].is_ascii_lowercase() {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if b"+-*^()".contains(&c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(PolyError::Parse {
                pos: i,
                msg: format!("unexpected character {:?}", c as char),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.here(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = Poly::zero(self.ring);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let e = match self.peek() {
            Some(Tok::Num(n)) => match u32::try_from(n) {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            },
            _ => return self.err("expected an exponent"),
        };
        self.pos += 1;
        if neg {
            let inv = base.unit_inverse().ok_or_else(|| {
                let name = base
                    .terms()
                    .next()
                    .and_then(|(m, _)| m.0.iter().position(|&x| x != 0))
                    .map_or_else(|| base.to_string(), |i| self.ring.names[i].clone());
                PolyError::LaurentViolation(name)
            })?;
            Ok(inv.pow(e))
        } else {
            Ok(base.pow(e))
        }
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(self.ring, n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Poly::var(self.ring, &name)
            }
            Some(Tok::Sym(b'(')) => {
                self.pos += 1;
                let p = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(p)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(super) fn parse(ring: &Arc<Ring>, text: &str) -> Result<Poly, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser { ring, toks, pos: 0, len: text.len() };
    if p.peek().is_none() {
        return p.err("empty polynomial");
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_syntax() {
        let r = Ring::new(&["x", "y", "u", "v"]).unwrap();
        let p = parse(&r, "1 - u*x^2 - u*y^2 - v*x^2*y - 3*u*x*y - v*x*y^2").unwrap();
        assert_eq!(p.len(), 6);
        let q = parse(&r, "x^2*(u + v*x - u^2*y^2 - u^2*x*y)").unwrap();
        assert_eq!(q.len(), 4);
        let s = parse(&r, "(x + y)^2 - x^2 - 2*x*y").unwrap();
        assert_eq!(s, parse(&r, "y^2").unwrap());
    }

    #[test]
    fn errors_carry_position() {
        let r = Ring::new(&["x"]).unwrap();
        assert!(matches!(parse(&r, "x + "), Err(PolyError::Parse { pos: 4, .. })));
        assert!(matches!(parse(&r, "x $ 1"), Err(PolyError::Parse { pos: 2, .. })));
        assert!(matches!(parse(&r, "(x"), Err(PolyError::Parse { .. })));
        assert!(matches!(parse(&r, "y"), Err(PolyError::UnknownVariable(_))));
        assert!(matches!(parse(&r, ""), Err(PolyError::Parse { .. })));
        assert!(matches!(parse(&r, "x x"), Err(PolyError::Parse { .. })));
    }

    #[test]
    fn display_round_trips() {
        let r = Ring::with_laurent(&[("t", true), ("z", false)]).unwrap();
        for text in ["0", "-1", "t^-3*z^2 - 7*t + 12", "-t^-1 + z"] {
            let p = parse(&r, text).unwrap();
            assert_eq!(parse(&r, &p.to_string()).unwrap(), p);
        }
    }
}
