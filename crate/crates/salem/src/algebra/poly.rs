//! Dense univariate polynomials over F_q in the variable X.
//!
//! The zero polynomial has degree -infinity, modeled as `None` so that the
//! derived ordering on `Degree` is the usual one.

use std::fmt;

use crate::algebra::field::{Fe, Field};
use crate::error::{Error, Result};

/// Degree with -infinity for the zero polynomial. `None < Some(d)` holds
/// under `Option`'s ordering, which is exactly the convention we need.
pub type Degree = Option<i64>;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    /// Coefficients c_0..c_d, trailing zeros stripped; empty means zero.
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last() == Some(&Fe::ZERO) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    /// c * X^e
    pub fn monomial(field: &Field, c: Fe, e: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![Fe::ZERO; e + 1];
        coeffs[e] = c;
        Poly { field: field.clone(), coeffs }
    }

    /// X
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    /// Polynomial from integer literals (images in the prime subfield).
    pub fn from_ints(field: &Field, ints: &[i64]) -> Poly {
        Poly::new(field, ints.iter().map(|&n| field.elem(n)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as i64 - 1)
        }
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == Fe::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.field, other.field);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(self.coeff(i), other.coeff(i)));
        }
        Poly::new(f, out)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.field, other.field);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// self * X^e
    pub fn shift_up(&self, e: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fe::ZERO; e];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: (quotient, remainder) with deg r < deg divisor.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        debug_assert_eq!(self.field, divisor.field);
        let f = &self.field;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = divisor.coeffs.len() - 1;
        let lead_inv = f.inv(divisor.lc())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; self.coeffs.len().saturating_sub(db)];
        while rem.len() > db {
            let dr = rem.len() - 1;
            let c = f.mul(rem[dr], lead_inv);
            if !c.is_zero() {
                quot[dr - db] = c;
                for (j, &bc) in divisor.coeffs.iter().enumerate() {
                    let idx = dr - db + j;
                    rem[idx] = f.sub(rem[idx], f.mul(c, bc));
                }
            }
            rem.pop();
            while rem.last() == Some(&Fe::ZERO) {
                rem.pop();
            }
        }
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Inconsistency("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn evaluate(&self, x: Fe) -> Fe {
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Formal derivative with respect to X.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let mut out = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(f.mul(c, f.elem(i as i64)));
        }
        Poly::new(f, out)
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lc()).expect("nonzero lc"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    /// Canonical form accepted back by the expression parser. Prime-subfield
    /// scalars print as integers; other scalars as `#u` with u the encoding.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let scalar_part = if self.field.in_prime_subfield(c) {
                format!("{}", c.0)
            } else {
                format!("#{}", c.0)
            };
            match i {
                0 => write!(f, "{scalar_part}")?,
                _ => {
                    if c == Fe::ONE {
                        write!(f, "X")?;
                    } else {
                        write!(f, "{scalar_part}*X")?;
                    }
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
