//! Text to polynomial.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := atom ('^' integer)?
//! atom   := integer | name | '(' expr ')'
//! ```
//!
//! Names are ring variables or caller-supplied bindings. Division is only
//! allowed by nonzero constants, so `4/3` means `4·3⁻¹ mod p`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::galois::Fq;

use super::{MPoly, Ring};

pub fn parse_poly(text: &str, ring: &Ring) -> Result<MPoly> {
    parse_poly_with(text, ring, &HashMap::new())
}

pub fn parse_poly_with(
    text: &str,
    ring: &Ring,
    bindings: &HashMap<String, MPoly>,
) -> Result<MPoly> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i, if c == '−' { '-' } else { c }))
        .collect();
    let mut p = Parser {
        s: chars,
        i: 0,
        ring,
        bindings,
        len: text.len(),
    };
    if p.s.is_empty() {
        return Err(p.err("empty input"));
    }
    let e = p.expr()?;
    if p.i < p.s.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: Vec<(usize, char)>,
    i: usize,
    ring: &'a Ring,
    bindings: &'a HashMap<String, MPoly>,
    len: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.s.get(self.i).map(|x| x.0).unwrap_or(self.len)
    }

    fn err(&self, msg: &str) -> Error {
        Error::ParseError {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.i).map(|x| x.1)
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = MPoly::zero(self.ring);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some('+') => {
                    self.i += 1;
                    false
                }
                Some('-') => {
                    self.i += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    let rhs = self.power()?;
                    acc = &acc * &rhs;
                }
                Some('/') => {
                    self.i += 1;
                    let at = self.pos();
                    let rhs = self.power()?;
                    if !rhs.is_constant() {
                        return Err(Error::ParseError {
                            pos: at,
                            msg: "division by a non-constant".into(),
                        });
                    }
                    let c = rhs.coeff(&super::Mono::one());
                    let inv = c.inv().map_err(|_| Error::DivisionByZero)?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u128> {
        let start = self.i;
        let mut v: u128 = 0;
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(c as u128 - '0' as u128))
                .ok_or_else(|| self.err("integer literal too large"))?;
            self.i += 1;
        }
        if self.i == start {
            return Err(self.err("expected an integer"));
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let ctx = self.ring.ctx();
                let r = (v % ctx.p() as u128) as u64;
                Ok(MPoly::constant(self.ring, Fq::from_u64(ctx, r)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let at = self.pos();
                let mut name = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
                    name.push(c);
                    self.i += 1;
                }
                if let Some(v) = self.ring.var_index(&name) {
                    return Ok(MPoly::var(self.ring, v));
                }
                if let Some(b) = self.bindings.get(&name) {
                    return Ok(b.clone());
                }
                Err(Error::ParseError {
                    pos: at,
                    msg: format!("unknown name '{name}'"),
                })
            }
            _ => Err(self.err("expected a number, name or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::PolyRing;

    #[test]
    fn parses_and_rejects() {
        let ctx = mk_prime_field(10007).unwrap();
        let r = PolyRing::space(&ctx);
        let f = parse_poly("x3*x1^3 + x4*x2^3", &r).unwrap();
        assert_eq!(f.to_string(), "x1^3*x3 + x2^3*x4");
        assert!(matches!(
            parse_poly("x1^^2", &r),
            Err(Error::ParseError { pos: 3, .. })
        ));
        assert!(matches!(
            parse_poly("x1 +", &r),
            Err(Error::ParseError { .. })
        ));
        assert!(matches!(
            parse_poly("y7", &r),
            Err(Error::ParseError { .. })
        ));
        assert_eq!(
            parse_poly("x1/10007", &r).unwrap_err(),
            Error::DivisionByZero
        );
        let third = parse_poly("4/3", &r).unwrap();
        let three = parse_poly("3", &r).unwrap();
        assert_eq!(&third * &three, parse_poly("4", &r).unwrap());
        assert_eq!(
            parse_poly("−x1", &r).unwrap(),
            parse_poly("-x1", &r).unwrap()
        );
    }

    #[test]
    fn bound_constants() {
        let ctx = mk_prime_field(10007).unwrap();
        let r = PolyRing::space(&ctx);
        let mut b = HashMap::new();
        for (n, v) in [("a", 2u64), ("b", 5), ("c", 7)] {
            b.insert(n.to_string(), MPoly::constant(&r, Fq::from_u64(&ctx, v)));
        }
        let t = parse_poly_with("-4*c^3*(b+4*a*c^3)*x1*x2*x4^2", &r, &b).unwrap();
        let coeff = (10007 * 10007 - 4 * 343 * (5 + 8 * 343)) % 10007;
        let expect = parse_poly(&format!("{coeff}*x1*x2*x4^2"), &r).unwrap();
        assert_eq!(t, expect);
    }
}
