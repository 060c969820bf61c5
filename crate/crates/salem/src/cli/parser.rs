//! Recursive-descent parser for polynomial expressions in X and Y.
//!
//! Grammar (ASCII, case-sensitive):
//!   expr   := ['-'] term (('+' | '-') term)*
//!   term   := factor ('*' factor)*
//!   factor := base ('^' uint)?
//!   base   := 'X' | 'Y' | uint | '#' uint | '(' ['-'] expr ')'
//!
//! No implicit multiplication ("X Y" is an error). Integer literals reduce
//! modulo the characteristic; `#u` denotes the extension-field scalar with
//! encoding u and round-trips the canonical printer.

use crate::algebra::field::Field;
use crate::algebra::poly::Poly;
use crate::bivar::BivarPoly;
use crate::error::{Error, Result};

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    field: Field,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos] == b' ' {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .map(|b| b.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(err(start, "expected an unsigned integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| err(start, "integer literal too large"))
    }

    fn expr(&mut self) -> Result<BivarPoly> {
        let mut acc = if self.peek() == Some(b'-') {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivarPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BivarPoly> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let at = self.pos;
            let e = self.uint()?;
            if e > 4096 {
                return Err(err(at, "exponent too large"));
            }
            let mut acc = BivarPoly::constant(&self.field, Poly::one(&self.field));
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<BivarPoly> {
        let at = self.pos;
        match self.peek() {
            Some(b'X') => {
                self.bump();
                Ok(BivarPoly::constant(&self.field, Poly::x(&self.field)))
            }
            Some(b'Y') => {
                self.bump();
                Ok(BivarPoly::monomial(&self.field, Poly::one(&self.field), 1))
            }
            Some(b'#') => {
                self.bump();
                let at = self.pos;
                let u = self.uint()?;
                if u >= self.field.q() {
                    return Err(err(at, format!("scalar #{u} is outside the field")));
                }
                Ok(BivarPoly::constant(
                    &self.field,
                    Poly::constant(&self.field, crate::algebra::field::Fe(u)),
                ))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(BivarPoly::constant(
                    &self.field,
                    Poly::constant(&self.field, self.field.elem((n % self.field.p()) as i64)),
                ))
            }
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) => Err(err(at, format!("unexpected character '{}'", c as char))),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

/// Parse an expression into an exact bivariate polynomial over the field.
pub fn parse_poly(text: &str, field: &Field) -> Result<BivarPoly> {
    if !text.is_ascii() {
        return Err(err(0, "input must be ASCII"));
    }
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        field: field.clone(),
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(err(
            p.pos,
            "trailing input (implicit multiplication is not allowed)",
        ));
    }
    Ok(out)
}

/// Parse an extension-field modulus: a polynomial in X alone over F_p,
/// returned as its coefficient list (constant first).
pub fn parse_modulus(text: &str, p: u64) -> Result<Vec<u64>> {
    let base = Field::prime(p)?;
    let poly = parse_poly(text, &base)?;
    if poly.degree_y() > Some(0) {
        return Err(err(0, "a field modulus must not involve Y"));
    }
    Ok(poly.coeff(0).coeffs().iter().map(|c| c.0).collect())
}
