//! Truncated Laurent series in 1/X over F_q, i.e. elements of F_q((1/X)).
//!
//! A series is a finite window of coefficients from its top exponent
//! downward. The floor records what is known below the window: `Exact`
//! means every lower coefficient is zero, `At(f)` means coefficients are
//! known for exponents >= f and unknown below. Arithmetic propagates the
//! floor so that every retained coefficient is certified correct.

use std::fmt;

use crate::algebra::field::{Fe, Field};
use crate::algebra::poly::{Degree, Poly};
use crate::error::{Error, Result};

/// What is known about coefficients below the stored window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Floor {
    /// All coefficients below the window are zero.
    Exact,
    /// Coefficients are known (and stored) down to exponent f, unknown below.
    At(i64),
}

impl Floor {
    /// Floor of a sum: knowledge is limited by the weaker operand.
    fn join(self, other: Floor) -> Floor {
        match (self, other) {
            (Floor::Exact, f) | (f, Floor::Exact) => f,
            (Floor::At(a), Floor::At(b)) => Floor::At(a.max(b)),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    /// Exponent of coeffs[0]; meaningless when coeffs is empty.
    top: i64,
    /// Coefficients from exponent `top` downward. Invariants: coeffs[0] != 0
    /// if nonempty; when floor = At(f) the window runs exactly down to f;
    /// when Exact, trailing zeros are stripped.
    coeffs: Vec<Fe>,
    floor: Floor,
}

impl LaurentSeries {
    fn normalized(field: Field, mut top: i64, mut coeffs: Vec<Fe>, floor: Floor) -> LaurentSeries {
        while coeffs.first() == Some(&Fe::ZERO) {
            coeffs.remove(0);
            top -= 1;
        }
        match floor {
            Floor::Exact => {
                while coeffs.last() == Some(&Fe::ZERO) {
                    coeffs.pop();
                }
            }
            Floor::At(f) => {
                // keep the full window down to f
                if !coeffs.is_empty() {
                    let have_low = top - coeffs.len() as i64 + 1;
                    debug_assert!(have_low <= f, "window does not reach its floor");
                    coeffs.truncate((top - f + 1).max(0) as usize);
                    if coeffs.is_empty() {
                        // everything known is zero
                        return LaurentSeries { field, top: 0, coeffs, floor };
                    }
                }
            }
        }
        if coeffs.is_empty() {
            top = 0;
        }
        LaurentSeries { field, top, coeffs, floor }
    }

    /// The exact zero series.
    pub fn zero(field: &Field) -> LaurentSeries {
        LaurentSeries {
            field: field.clone(),
            top: 0,
            coeffs: Vec::new(),
            floor: Floor::Exact,
        }
    }

    /// A series that is zero on every known exponent (>= f), unknown below.
    pub fn zero_to_precision(field: &Field, f: i64) -> LaurentSeries {
        LaurentSeries {
            field: field.clone(),
            top: 0,
            coeffs: Vec::new(),
            floor: Floor::At(f),
        }
    }

    /// c * X^e, exact.
    pub fn monomial(field: &Field, c: Fe, e: i64) -> LaurentSeries {
        if c.is_zero() {
            return LaurentSeries::zero(field);
        }
        LaurentSeries {
            field: field.clone(),
            top: e,
            coeffs: vec![c],
            floor: Floor::Exact,
        }
    }

    /// Exact embedding of a polynomial in X.
    pub fn from_poly(p: &Poly) -> LaurentSeries {
        let coeffs: Vec<Fe> = p.coeffs().iter().rev().copied().collect();
        LaurentSeries::normalized(
            p.field().clone(),
            p.coeffs().len() as i64 - 1,
            coeffs,
            Floor::Exact,
        )
    }

    /// Build from an explicit window: coefficients for exponents top..=floor.
    pub fn from_window(field: &Field, top: i64, coeffs: Vec<Fe>, floor: Floor) -> LaurentSeries {
        LaurentSeries::normalized(field.clone(), top, coeffs, floor)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn floor(&self) -> Floor {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor == Floor::Exact
    }

    /// True when no nonzero coefficient is known.
    pub fn is_zero_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True only for the exact zero series.
    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.floor == Floor::Exact
    }

    /// Degree gamma: exponent of the leading term. `None` means either exact
    /// zero or (when the floor is finite) only that gamma < floor.
    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.top)
        }
    }

    /// Upper bound on the degree: top exponent, or floor - 1 when the whole
    /// known window is zero. `None` for the exact zero series.
    pub fn degree_bound(&self) -> Degree {
        match (self.coeffs.is_empty(), self.floor) {
            (false, _) => Some(self.top),
            (true, Floor::Exact) => None,
            (true, Floor::At(f)) => Some(f - 1),
        }
    }

    /// Leading coefficient; zero when the known window is empty.
    pub fn lc(&self) -> Fe {
        self.coeffs.first().copied().unwrap_or(Fe::ZERO)
    }

    /// Lowest known exponent: floor when finite, lowest stored otherwise.
    fn low(&self) -> Option<i64> {
        match self.floor {
            Floor::At(f) => Some(f),
            Floor::Exact => {
                if self.coeffs.is_empty() {
                    None
                } else {
                    Some(self.top - self.coeffs.len() as i64 + 1)
                }
            }
        }
    }

    /// Coefficient at exponent e, or `None` when it is below the floor.
    pub fn coeff_at(&self, e: i64) -> Option<Fe> {
        if let Floor::At(f) = self.floor {
            if e < f {
                return None;
            }
        }
        if self.coeffs.is_empty() || e > self.top {
            return Some(Fe::ZERO);
        }
        let idx = self.top - e;
        Some(self.coeffs.get(idx as usize).copied().unwrap_or(Fe::ZERO))
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        debug_assert_eq!(self.field, other.field);
        let f = &self.field;
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        let floor = self.floor.join(other.floor);
        let tops = [self.degree(), other.degree()];
        let top = match tops.iter().flatten().max() {
            Some(&t) => t,
            None => {
                // both windows all-zero; floor is finite here
                return LaurentSeries {
                    field: f.clone(),
                    top: 0,
                    coeffs: Vec::new(),
                    floor,
                };
            }
        };
        let low = match floor {
            Floor::At(fl) => fl,
            Floor::Exact => self.low().unwrap_or(top).min(other.low().unwrap_or(top)),
        };
        if low > top {
            // every known nonzero term lies below the certification floor
            return LaurentSeries {
                field: f.clone(),
                top: 0,
                coeffs: Vec::new(),
                floor,
            };
        }
        let mut coeffs = Vec::with_capacity((top - low + 1) as usize);
        for e in (low..=top).rev() {
            let a = self.coeff_at(e).unwrap_or(Fe::ZERO);
            let b = other.coeff_at(e).unwrap_or(Fe::ZERO);
            coeffs.push(f.add(a, b));
        }
        LaurentSeries::normalized(f.clone(), top, coeffs, floor)
    }

    pub fn neg(&self) -> LaurentSeries {
        let f = &self.field;
        LaurentSeries {
            field: f.clone(),
            top: self.top,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            floor: self.floor,
        }
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fe) -> LaurentSeries {
        let f = &self.field;
        if c.is_zero() {
            return match self.floor {
                Floor::Exact => LaurentSeries::zero(f),
                Floor::At(fl) => LaurentSeries::zero_to_precision(f, fl),
            };
        }
        LaurentSeries {
            field: f.clone(),
            top: self.top,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            floor: self.floor,
        }
    }

    /// self * X^k
    pub fn shift(&self, k: i64) -> LaurentSeries {
        let floor = match self.floor {
            Floor::Exact => Floor::Exact,
            Floor::At(f) => Floor::At(f + k),
        };
        LaurentSeries {
            field: self.field.clone(),
            top: self.top + k,
            coeffs: self.coeffs.clone(),
            floor,
        }
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        debug_assert_eq!(self.field, other.field);
        let f = &self.field;
        if self.is_exact_zero() || other.is_exact_zero() {
            return LaurentSeries::zero(f);
        }
        // The product coefficient at exponent e is certified when every
        // contributing pair lies in known windows: e >= ga + fb, e >= gb + fa,
        // and e >= fa + fb - 1 (a term from two unknown tails).
        let floor = match (self.floor, other.floor) {
            (Floor::Exact, Floor::Exact) => Floor::Exact,
            _ => {
                // degree_bound is None only for exact zero, handled above
                let ga = self.degree_bound().unwrap();
                let gb = other.degree_bound().unwrap();
                let mut bound = i64::MIN;
                if let Floor::At(fb) = other.floor {
                    bound = bound.max(ga + fb);
                }
                if let Floor::At(fa) = self.floor {
                    bound = bound.max(gb + fa);
                }
                if let (Floor::At(fa), Floor::At(fb)) = (self.floor, other.floor) {
                    bound = bound.max(fa + fb - 1);
                }
                Floor::At(bound)
            }
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return match floor {
                Floor::Exact => LaurentSeries::zero(f),
                Floor::At(fl) => LaurentSeries::zero_to_precision(f, fl),
            };
        }
        let top = self.top + other.top;
        let low = match floor {
            Floor::At(fl) => fl,
            Floor::Exact => {
                self.low().unwrap() + other.low().unwrap()
            }
        };
        if low > top {
            return match floor {
                Floor::Exact => LaurentSeries::zero(f),
                Floor::At(fl) => LaurentSeries::zero_to_precision(f, fl),
            };
        }
        let mut out = vec![Fe::ZERO; (top - low + 1) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.top - i as i64;
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = ea + (other.top - j as i64);
                if e < low {
                    break;
                }
                let idx = (top - e) as usize;
                out[idx] = f.add(out[idx], f.mul(a, b));
            }
        }
        LaurentSeries::normalized(f.clone(), top, out, floor)
    }

    pub fn pow(&self, e: u64) -> LaurentSeries {
        let mut acc = LaurentSeries::monomial(&self.field, self.field.one(), 0);
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

    /// Multiplicative inverse, carrying `prec` certified terms (fewer if the
    /// operand's own window is shorter). Errors on a zero window.
    pub fn invert(&self, prec: usize) -> Result<LaurentSeries> {
        let f = &self.field;
        if self.coeffs.is_empty() {
            return Err(Error::ZeroSeries);
        }
        let avail = match self.floor {
            Floor::Exact => usize::MAX,
            Floor::At(fl) => (self.top - fl + 1) as usize,
        };
        let n_terms = prec.max(1).min(avail);
        let lead_inv = f.inv(self.lc())?;
        // long division of 1 by self, in descending exponents
        let mut rem: Vec<Fe> = vec![f.one()];
        let mut out = Vec::with_capacity(n_terms);
        let mut terminated = false;
        for _ in 0..n_terms {
            if rem.iter().all(|c| c.is_zero()) {
                terminated = true;
                break;
            }
            let q = f.mul(rem[0], lead_inv);
            out.push(q);
            if rem.len() < self.coeffs.len() + 1 {
                rem.resize(self.coeffs.len() + 1, Fe::ZERO);
            }
            if !q.is_zero() {
                for (j, &c) in self.coeffs.iter().enumerate() {
                    rem[j] = f.sub(rem[j], f.mul(q, c));
                }
            }
            debug_assert!(rem[0].is_zero());
            rem.remove(0);
        }
        let top = -self.top;
        let floor = if terminated && self.floor == Floor::Exact {
            Floor::Exact
        } else {
            Floor::At(top - out.len() as i64 + 1)
        };
        Ok(LaurentSeries::normalized(f.clone(), top, out, floor))
    }

    /// Split into polynomial part [w] (exponents >= 0) and fractional part
    /// {w} (exponents < 0). Errors if exponents in 0..floor are unknown.
    pub fn split(&self) -> Result<(Poly, LaurentSeries)> {
        let f = &self.field;
        if let Floor::At(fl) = self.floor {
            if fl > 0 {
                return Err(Error::PrecisionExhausted);
            }
        }
        if self.coeffs.is_empty() || self.top < 0 {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut poly_coeffs = vec![Fe::ZERO; self.top as usize + 1];
        for e in 0..=self.top {
            poly_coeffs[e as usize] = self.coeff_at(e).unwrap_or(Fe::ZERO);
        }
        let mut frac_coeffs = Vec::new();
        if let Some(low) = self.low() {
            for e in (low..0).rev() {
                frac_coeffs.push(self.coeff_at(e).unwrap_or(Fe::ZERO));
            }
        }
        let frac = LaurentSeries::normalized(f.clone(), -1, frac_coeffs, self.floor);
        Ok((Poly::new(f, poly_coeffs), frac))
    }

    /// Weaken the floor to At(f), discarding lower coefficients.
    pub fn truncate(&self, f: i64) -> LaurentSeries {
        match self.floor {
            Floor::At(fl) if fl >= f => self.clone(),
            _ => {
                let mut coeffs = Vec::new();
                if !self.coeffs.is_empty() && self.top >= f {
                    for e in (f..=self.top).rev() {
                        coeffs.push(self.coeff_at(e).unwrap_or(Fe::ZERO));
                    }
                }
                LaurentSeries::normalized(self.field.clone(), self.top, coeffs, Floor::At(f))
            }
        }
    }

    /// Coefficients of the known window, top exponent first, with the top.
    pub fn window(&self) -> (i64, &[Fe]) {
        (self.top, &self.coeffs)
    }

    /// Reinterpret the known window as an exact series, discarding the
    /// floor. Only valid when the caller can vouch for the tail; Newton
    /// refinement uses this to keep its iterates finite.
    pub fn assume_exact(&self) -> LaurentSeries {
        LaurentSeries::normalized(
            self.field.clone(),
            self.top,
            self.coeffs.clone(),
            Floor::Exact,
        )
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (i, &c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let e = self.top - i as i64;
                let scalar = if self.field.in_prime_subfield(c) {
                    format!("{}", c.0)
                } else {
                    format!("#{}", c.0)
                };
                match e {
                    0 => write!(f, "{scalar}")?,
                    1 if c == Fe::ONE => write!(f, "X")?,
                    1 => write!(f, "{scalar}*X")?,
                    _ if c == Fe::ONE => write!(f, "X^{e}")?,
                    _ => write!(f, "{scalar}*X^{e}")?,
                }
            }
            if first {
                write!(f, "0")?;
            }
        }
        if let Floor::At(fl) = self.floor {
            write!(f, " + O(X^{})", fl - 1)?;
        }
        Ok(())
    }
}
