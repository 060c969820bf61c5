//! The coefficient field F_q, q = p^k.
//!
//! Elements are stored as a single integer below q whose base-p digits are
//! the coordinates of the element over the prime field; for k = 1 this is
//! the usual residue. Extension fields reduce modulo a monic irreducible
//! polynomial over F_p, either caller-supplied or taken from a small table.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Description of a finite field, as it appears on the CLI and in JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDesc {
    pub p: u64,
    pub k: usize,
    /// Coefficients c_0..c_k of the monic modulus over F_p; `None` for k = 1
    /// or to request the built-in table.
    pub modulus: Option<Vec<u64>>,
}

#[derive(Debug, PartialEq, Eq)]
struct Repr {
    p: u64,
    k: usize,
    q: u64,
    /// Monic modulus c_0..c_k over F_p (empty for k = 1).
    modulus: Vec<u64>,
}

/// A finite field F_q with q = p^k elements.
#[derive(Clone)]
pub struct Field(Arc<Repr>);

/// An element of F_q, encoded as an integer < q (base-p digit vector).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in monic irreducible moduli c_0..c_k for the small extensions the
/// classifiers need. Each entry is re-validated at field construction.
fn default_modulus(p: u64, k: usize) -> Option<Vec<u64>> {
    let m: &[u64] = match (p, k) {
        (2, 2) => &[1, 1, 1],       // t^2+t+1
        (2, 3) => &[1, 1, 0, 1],    // t^3+t+1
        (2, 4) => &[1, 1, 0, 0, 1], // t^4+t+1
        (3, 2) => &[1, 0, 1],       // t^2+1
        (3, 3) => &[1, 2, 0, 1],    // t^3+2t+1
        (3, 4) => &[2, 1, 0, 0, 1], // t^4+t+2
        (5, 2) => &[2, 0, 1],       // t^2+2
        (5, 3) => &[1, 1, 0, 1],    // t^3+t+1
        (7, 2) => &[1, 0, 1],       // t^2+1
        _ => return None,
    };
    Some(m.to_vec())
}

// --- dense univariate arithmetic over F_p, used only for modulus handling ---

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p - c * b[i] % p) % p;
        }
        fp_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut bb = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % m as u128;
        }
        bb = bb * bb % m as u128;
        e >>= 1;
    }
    acc as u64
}

/// Exhaustive check that `m` (monic, degree k) has no monic factor of
/// degree 1..=k/2 over F_p.
fn modulus_is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        // enumerate monic polynomials of degree d: p^d choices of low coeffs
        let count = p.pow(d as u32);
        for enc in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut e = enc;
            for _ in 0..d {
                cand.push(e % p);
                e /= p;
            }
            cand.push(1);
            if fp_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(&FieldDesc { p, k: 1, modulus: None })
    }

    /// F_{p^k} with the given (or table-supplied) modulus.
    pub fn extension(p: u64, k: usize, modulus: Option<Vec<u64>>) -> Result<Field> {
        Field::new(&FieldDesc { p, k, modulus })
    }

    pub fn new(desc: &FieldDesc) -> Result<Field> {
        let p = desc.p;
        let k = desc.k;
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        if k == 1 {
            if desc.modulus.is_some() {
                return Err(Error::InvalidField("modulus given for a prime field".into()));
            }
            return Ok(Field(Arc::new(Repr { p, k, q: p, modulus: Vec::new() })));
        }
        if k > 4 {
            return Err(Error::InvalidField(format!(
                "extension degree {k} > 4 is unsupported"
            )));
        }
        let mut modulus = match &desc.modulus {
            Some(m) => m.clone(),
            None => default_modulus(p, k).ok_or_else(|| {
                Error::InvalidField(format!("no built-in modulus for GF({p}^{k}); supply one"))
            })?,
        };
        for c in modulus.iter_mut() {
            *c %= p;
        }
        if modulus.len() != k + 1 || modulus[k] != 1 {
            return Err(Error::InvalidField(format!(
                "modulus must be monic of degree {k}"
            )));
        }
        if !modulus_is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible over F_p".into()));
        }
        let q = p.checked_pow(k as u32).filter(|&q| q <= 1 << 20).ok_or_else(|| {
            Error::InvalidField("q = p^k is too large for an extension field".into())
        })?;
        Ok(Field(Arc::new(Repr { p, k, q, modulus })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        if self.0.k == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// The image of an integer literal (an element of the prime subfield).
    pub fn elem(&self, n: i64) -> Fe {
        let p = self.0.p as i64;
        Fe(n.rem_euclid(p) as u64)
    }

    /// Element from its coordinate vector c_0..c_{k-1} over F_p.
    pub fn from_digits(&self, digits: &[u64]) -> Fe {
        debug_assert!(digits.len() <= self.0.k);
        let p = self.0.p;
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            v = v * p + d % p;
        }
        Fe(v)
    }

    /// Coordinate vector c_0..c_{k-1} over F_p.
    pub fn digits(&self, a: Fe) -> Vec<u64> {
        let p = self.0.p;
        let mut v = a.0;
        let mut out = Vec::with_capacity(self.0.k);
        for _ in 0..self.0.k {
            out.push(v % p);
            v /= p;
        }
        out
    }

    /// Iterator over all q elements, in the canonical total order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.k == 1 {
            return Fe((a.0 + b.0) % p);
        }
        let mut v = 0u64;
        let (mut x, mut y) = (a.0, b.0);
        let mut mult = 1u64;
        for _ in 0..self.0.k {
            v += (x % p + y % p) % p * mult;
            x /= p;
            y /= p;
            mult *= p;
        }
        Fe(v)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.0.p;
        if self.0.k == 1 {
            return Fe((p - a.0) % p);
        }
        let mut v = 0u64;
        let mut x = a.0;
        let mut mult = 1u64;
        for _ in 0..self.0.k {
            v += (p - x % p) % p * mult;
            x /= p;
            mult *= p;
        }
        Fe(v)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.k == 1 {
            return Fe((a.0 as u128 * b.0 as u128 % p as u128) as u64);
        }
        let k = self.0.k;
        let da = self.digits(a);
        let db = self.digits(b);
        // schoolbook product, then reduce by the modulus
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let idx = i - k + j;
                prod[idx] = (prod[idx] + (p - self.0.modulus[j] % p) % p * c) % p;
            }
        }
        self.from_digits(&prod[..k])
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.0.q - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Whether the element lies in the prime subfield F_p.
    pub fn in_prime_subfield(&self, a: Fe) -> bool {
        a.0 < self.0.p
    }

    pub fn desc(&self) -> FieldDesc {
        FieldDesc {
            p: self.0.p,
            k: self.0.k,
            modulus: self.modulus().map(|m| m.to_vec()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields_under_test() -> Vec<Field> {
        vec![
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
            Field::extension(2, 2, None).unwrap(),
            Field::prime(5).unwrap(),
            Field::prime(7).unwrap(),
            Field::extension(3, 2, None).unwrap(),
        ]
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in fields_under_test() {
            for a in f.elements() {
                assert_eq!(f.add(a, f.zero()), a);
                assert_eq!(f.mul(a, f.one()), a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn every_nonzero_element_invertible_up_to_q_25() {
        for f in [
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
            Field::extension(2, 2, None).unwrap(),
            Field::prime(5).unwrap(),
            Field::prime(7).unwrap(),
            Field::extension(2, 3, None).unwrap(),
            Field::extension(3, 2, None).unwrap(),
            Field::prime(11).unwrap(),
            Field::prime(13).unwrap(),
            Field::extension(2, 4, None).unwrap(),
            Field::prime(17).unwrap(),
            Field::prime(19).unwrap(),
            Field::prime(23).unwrap(),
            Field::extension(5, 2, None).unwrap(),
        ] {
            for a in f.elements().skip(1) {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), f.one(), "a*a^-1 != 1 in {f:?}");
            }
        }
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Field::prime(6).is_err());
        assert!(Field::extension(2, 2, Some(vec![0, 0, 1])).is_err()); // t^2 reducible
        assert!(Field::extension(3, 2, Some(vec![2, 0, 1])).is_err()); // t^2+2 = (t+1)(t+2)
        assert!(Field::extension(3, 2, Some(vec![1, 0, 1])).is_ok());
    }

    #[test]
    fn digit_round_trip() {
        let f = Field::extension(3, 2, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_digits(&f.digits(a)), a);
        }
    }
}
