//! Polynomial strings such as `x^2 + 3*x*x1 - 1`, `2x` or `(x+1)^3`.

use super::algebra::PolyAlgebra;
use super::poly::Poly;
use crate::error::{Error, Result};

pub fn parse_poly(alg: &PolyAlgebra, s: &str) -> Result<Poly> {
    let tokens = tokenize(s)?;
    let mut p = Parser { alg, tokens, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
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
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::Open);
                i += 1
            }
            ')' => {
                out.push(Tok::Close);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(text.parse().map_err(|_| Error::Parse(format!("number {text} too large")))?));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    alg: &'a PolyAlgebra,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Poly> {
        let (r, nv) = (self.alg.ring(), self.alg.nvars());
        let mut acc = Poly::zero(r, nv);
        let mut sign_neg = false;
        if let Some(Tok::Minus) = self.peek() {
            sign_neg = true;
            self.pos += 1;
        } else if let Some(Tok::Plus) = self.peek() {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = if sign_neg { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(Tok::Plus) => sign_neg = false,
                Some(Tok::Minus) => sign_neg = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                // Juxtaposition such as `2x` or `x y`.
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Open) => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Tok::Num(e)) => {
                    let e = u32::try_from(*e).map_err(|_| Error::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::Parse("expected an exponent after ^".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let (r, nv) = (self.alg.ring(), self.alg.nvars());
        let tok = self.tokens.get(self.pos).cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Poly::one(r, nv).scale(r.reduce_u64(n))),
            Tok::Ident(name) => {
                let i = self.alg.var_index(&name).ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                Ok(Poly::var(r, nv, i))
            }
            Tok::Open => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::Parse("missing )".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ModRing;
    use crate::polyalg::{Monomial, Variable};

    #[test]
    fn parses_common_shapes() {
        let r = ModRing::new(2, 2).unwrap();
        let a = PolyAlgebra::new(r, vec![Variable::new("x", 1), Variable::new("x1", 1)], Some("x")).unwrap();
        let p = parse_poly(&a, "x^2 + 3*x*x1 - 1").unwrap();
        assert_eq!(p.coeff(&Monomial(vec![2, 0])), 1);
        assert_eq!(p.coeff(&Monomial(vec![1, 1])), 3);
        assert_eq!(p.coeff(&Monomial(vec![0, 0])), 3);
        assert_eq!(parse_poly(&a, "2x").unwrap().coeff(&Monomial(vec![1, 0])), 2);
        let cube = parse_poly(&a, "(x+1)^3").unwrap();
        assert_eq!(cube.coeff(&Monomial(vec![1, 0])), 3);
        assert!(parse_poly(&a, "y").is_err());
        assert!(parse_poly(&a, "x^").is_err());
    }
}
