//! Polynomials in Y whose coefficients are polynomials in X over F_q.
//!
//! This is the input type for everything downstream: Newton polygons, root
//! expansion, and the classifiers. The same type doubles as polynomials in
//! an auxiliary variable (Z after the substitution Y = P + 1/Z, or U for the
//! characteristic polynomial of a power map).

use std::collections::HashMap;
use std::fmt;

use crate::algebra::field::Field;
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct BivarPoly {
    field: Field,
    /// Coefficients lambda_0..lambda_n of Y^0..Y^n, trailing zeros stripped.
    coeffs: Vec<Poly>,
}

/// Result of the substitution H(Z) = Z^n * Lambda(P + 1/Z).
pub struct SubstitutionResult {
    /// H as a polynomial in Z; its constant coefficient is 1 for monic
    /// Lambda and its leading coefficient is Lambda(P).
    pub h: BivarPoly,
    /// The substituted polynomial part P.
    pub shift: Poly,
    /// Lambda(P), the coefficient of Z^n.
    pub value: Poly,
    /// Lambda'(P), the coefficient of Z^(n-1).
    pub derivative: Poly,
}

impl BivarPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Poly>) -> BivarPoly {
        while coeffs.last().map(|c| c.is_zero()) == Some(true) {
            coeffs.pop();
        }
        BivarPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> BivarPoly {
        BivarPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: Poly) -> BivarPoly {
        BivarPoly::new(field, vec![c])
    }

    /// c(X) * Y^e
    pub fn monomial(field: &Field, c: Poly, e: usize) -> BivarPoly {
        if c.is_zero() {
            return BivarPoly::zero(field);
        }
        let mut coeffs = vec![Poly::zero(field); e + 1];
        coeffs[e] = c;
        BivarPoly { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in Y; `None` for the zero polynomial.
    pub fn degree_y(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Poly {
        self.coeffs.last().cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    /// Monic in Y with a constant leading coefficient 1.
    pub fn is_monic(&self) -> bool {
        self.lc() == Poly::one(&self.field)
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        BivarPoly::new(&self.field, out)
    }

    pub fn neg(&self) -> BivarPoly {
        BivarPoly::new(&self.field, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        if self.is_zero() || other.is_zero() {
            return BivarPoly::zero(&self.field);
        }
        let mut out = vec![Poly::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BivarPoly::new(&self.field, out)
    }

    pub fn scale(&self, c: &Poly) -> BivarPoly {
        BivarPoly::new(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Formal derivative with respect to Y.
    pub fn derivative_y(&self) -> BivarPoly {
        let f = &self.field;
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.scale(f.elem(i as i64)));
        }
        BivarPoly::new(f, out)
    }

    /// Evaluate at a Laurent series by Horner's rule. Exact inputs give an
    /// exact result; truncated inputs propagate their floors.
    pub fn evaluate(&self, w: &LaurentSeries) -> LaurentSeries {
        let f = &self.field;
        let mut acc = LaurentSeries::zero(f);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(w).add(&LaurentSeries::from_poly(c));
        }
        acc
    }

    /// Evaluate at a polynomial in X.
    pub fn evaluate_poly(&self, p: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(p).add(c);
        }
        acc
    }

    /// Coefficients of Lambda(P + Y), by the division-free Taylor shift
    /// (iterated synthetic division). Safe in any characteristic.
    pub fn taylor_shift(&self, p: &Poly) -> BivarPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for j in 0..n {
            for i in (j..n.saturating_sub(1)).rev() {
                a[i] = a[i].add(&a[i + 1].mul(p));
            }
        }
        BivarPoly::new(&self.field, a)
    }

    /// H(Z) = Z^n * Lambda(P + 1/Z), with Lambda(P) and Lambda'(P) exposed.
    pub fn shift_substitute(&self, p: &Poly) -> SubstitutionResult {
        let shifted = self.taylor_shift(p);
        let n = self.coeffs.len().saturating_sub(1);
        let mut coeffs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            coeffs.push(shifted.coeff(n - i));
        }
        SubstitutionResult {
            h: BivarPoly::new(&self.field, coeffs),
            shift: p.clone(),
            value: shifted.coeff(0),
            derivative: shifted.coeff(1),
        }
    }

    /// Euclidean division by a divisor that is monic in Y; coefficients stay
    /// in F_q[X] because no leading-term inversion is ever needed.
    pub fn divrem(&self, divisor: &BivarPoly) -> Result<(BivarPoly, BivarPoly)> {
        let d = divisor.degree_y().ok_or(Error::DivisionByZero)?;
        if !divisor.is_monic() {
            return Err(Error::HypothesisViolation(
                "bivariate division needs a divisor monic in Y".into(),
            ));
        }
        let f = &self.field;
        let mut rem = self.coeffs.clone();
        let n = match self.degree_y() {
            Some(n) if n >= d => n,
            _ => return Ok((BivarPoly::zero(f), self.clone())),
        };
        let mut quot = vec![Poly::zero(f); n - d + 1];
        for i in (d..=n).rev() {
            let q = rem[i].clone();
            if q.is_zero() {
                continue;
            }
            quot[i - d] = q.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] = rem[i - d + j].sub(&q.mul(dc));
            }
        }
        Ok((BivarPoly::new(f, quot), BivarPoly::new(f, rem)))
    }

    /// Reciprocal polynomial Y^n * Lambda(1/Y): the coefficient list
    /// reversed, so its roots are the reciprocals of Lambda's roots.
    pub fn reciprocal(&self) -> Result<BivarPoly> {
        if self.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(BivarPoly::new(&self.field, coeffs))
    }

    /// Characteristic polynomial of the m-th power map: the monic polynomial
    /// in U whose roots are the m-th powers of the roots of self. Computed as
    /// the resultant Res_Y(Lambda(Y), U - Y^m) by a Sylvester determinant.
    pub fn power_char_poly(&self, m: u64) -> Result<BivarPoly> {
        let f = &self.field;
        let n = self.degree_y().ok_or(Error::DivisionByZero)?;
        if n == 0 {
            return Ok(BivarPoly::constant(f, Poly::one(f)));
        }
        if !self.is_monic() {
            return Err(Error::HypothesisViolation("power map needs a monic input".into()));
        }
        if m == 0 {
            return Err(Error::HypothesisViolation("power exponent must be >= 1".into()));
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let m = m as usize;
        let size = n + m;
        if size > 24 {
            return Err(Error::ResourceBound(format!(
                "Sylvester matrix of order {size} exceeds the determinant bound"
            )));
        }
        // entries are polynomials in U with coefficients in F_q[X]
        let u_poly = |c: Poly, lin: Poly| BivarPoly::new(f, vec![c, lin]);
        let mut matrix: Vec<Vec<Option<BivarPoly>>> = vec![vec![None; size]; size];
        // m rows of Lambda's coefficients, highest first
        for r in 0..m {
            for (t, lam) in self.coeffs.iter().rev().enumerate() {
                if !lam.is_zero() {
                    matrix[r][r + t] = Some(BivarPoly::constant(f, lam.clone()));
                }
            }
        }
        // n rows of g(Y) = -Y^m + U: leading -1, constant term U
        let minus_one = Poly::constant(f, f.neg(f.one()));
        for s in 0..n {
            matrix[m + s][s] = Some(BivarPoly::constant(f, minus_one.clone()));
            matrix[m + s][s + m] = Some(u_poly(Poly::zero(f), Poly::one(f)));
        }
        // determinant by row-wise Laplace expansion memoized on column sets
        let mut layer: HashMap<u32, BivarPoly> = HashMap::new();
        layer.insert(0, BivarPoly::constant(f, Poly::one(f)));
        for row in matrix.iter() {
            let mut next: HashMap<u32, BivarPoly> = HashMap::new();
            for (mask, acc) in layer.iter() {
                for (c, entry) in row.iter().enumerate() {
                    let entry = match entry {
                        Some(e) => e,
                        None => continue,
                    };
                    let bit = 1u32 << c;
                    if mask & bit != 0 {
                        continue;
                    }
                    // sign from inversions against already-chosen columns
                    let higher = (mask >> (c + 1)).count_ones();
                    let mut term = acc.mul(entry);
                    if higher % 2 == 1 {
                        term = term.neg();
                    }
                    next.entry(mask | bit)
                        .and_modify(|t| *t = t.add(&term))
                        .or_insert(term);
                }
            }
            layer = next;
        }
        let full = (1u32 << size) - 1;
        let det = layer.remove(&full).unwrap_or_else(|| BivarPoly::zero(f));
        // resultant of monic Lambda against U - Y^m is monic in U up to the
        // sign convention of the Sylvester determinant
        let lead = det.lc();
        if !lead.is_constant() || lead.is_zero() {
            return Err(Error::Inconsistency(
                "power characteristic polynomial has a non-constant leading term".into(),
            ));
        }
        let inv = f.inv(lead.coeff(0))?;
        Ok(det.scale(&Poly::constant(f, inv)))
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let one = c == &Poly::one(&self.field);
            let coeff_str = if c.is_constant() || i == 0 {
                format!("{c}")
            } else {
                format!("({c})")
            };
            match i {
                0 => write!(f, "{coeff_str}")?,
                _ => {
                    if !one {
                        write!(f, "{coeff_str}*")?;
                    }
                    write!(f, "Y")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Fe;

    fn poly(f: &Field, ints: &[i64]) -> Poly {
        Poly::from_ints(f, ints)
    }

    /// Y^3 + (X+1)Y^2 + (X^4+X^3)Y + (X^4+X^3+X^2+X+1) over F_2.
    fn cubic_f2() -> BivarPoly {
        let f = Field::prime(2).unwrap();
        BivarPoly::new(
            &f,
            vec![
                poly(&f, &[1, 1, 1, 1, 1]),
                poly(&f, &[0, 0, 0, 1, 1]),
                poly(&f, &[1, 1]),
                poly(&f, &[1]),
            ],
        )
    }

    /// Independent route: H(Z) = sum_i lambda_i (PZ + 1)^i Z^(n-i).
    fn substitute_by_binomials(lam: &BivarPoly, p: &Poly) -> BivarPoly {
        let f = lam.field();
        let n = lam.degree_y().unwrap();
        let pz_plus_1 = BivarPoly::new(f, vec![Poly::one(f), p.clone()]);
        let mut acc = BivarPoly::zero(f);
        for (i, c) in lam.coeffs().iter().enumerate() {
            let term = pz_plus_1
                .pow_u(i as u64)
                .mul(&BivarPoly::monomial(f, c.clone(), n - i));
            acc = acc.add(&term);
        }
        acc
    }

    impl BivarPoly {
        fn pow_u(&self, e: u64) -> BivarPoly {
            let mut acc = BivarPoly::constant(&self.field, Poly::one(&self.field));
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
    }

    #[test]
    fn shift_substitute_cubic_f2() {
        let lam = cubic_f2();
        let f = lam.field().clone();
        // P = X^2 + 1: H = Z^3 + (X^3+1)Z^2 + (X^2+X)Z + 1
        let r = lam.shift_substitute(&poly(&f, &[1, 0, 1]));
        assert_eq!(r.value, Poly::one(&f));
        assert_eq!(
            r.h.coeffs(),
            &[
                poly(&f, &[1]),
                poly(&f, &[0, 1, 1]),
                poly(&f, &[1, 0, 0, 1]),
                poly(&f, &[1]),
            ]
        );
        // P = X^2 + X: leading coefficient is Lambda(P) = X^3 + X + 1
        let r2 = lam.shift_substitute(&poly(&f, &[0, 1, 1]));
        assert_eq!(r2.value, poly(&f, &[1, 1, 0, 1]));
        assert_eq!(r2.derivative, poly(&f, &[0, 0, 1, 1]));
        assert_eq!(r2.h.coeff(3), poly(&f, &[1, 1, 0, 1]));
        assert_eq!(r2.h.coeff(1), poly(&f, &[1, 0, 1]));
        assert_eq!(r2.h.coeff(0), Poly::one(&f));
    }

    #[test]
    fn shift_substitute_cubic_f3() {
        // Y^3 + (X+1)Y^2 + X^2*Y + (2X^2+2) over F_3, P = X+1
        let f = Field::prime(3).unwrap();
        let lam = BivarPoly::new(
            &f,
            vec![
                poly(&f, &[2, 0, 2]),
                poly(&f, &[0, 0, 1]),
                poly(&f, &[1, 1]),
                poly(&f, &[1]),
            ],
        );
        let r = lam.shift_substitute(&poly(&f, &[1, 1]));
        assert_eq!(r.value, Poly::one(&f));
        assert_eq!(r.derivative, poly(&f, &[2, 1]));
        assert_eq!(
            r.h.coeffs(),
            &[poly(&f, &[1]), poly(&f, &[1, 1]), poly(&f, &[2, 1]), poly(&f, &[1])]
        );
    }

    #[test]
    fn substitution_routes_agree() {
        let lam = cubic_f2();
        let f = lam.field().clone();
        for p in [
            poly(&f, &[1, 0, 1]),
            poly(&f, &[0, 1, 1]),
            poly(&f, &[1, 1, 1, 1]),
            Poly::zero(&f),
        ] {
            let a = lam.shift_substitute(&p).h;
            let b = substitute_by_binomials(&lam, &p);
            assert_eq!(a, b, "routes disagree at P = {p}");
        }
    }

    #[test]
    fn taylor_shift_round_trip() {
        let lam = cubic_f2();
        let f = lam.field().clone();
        let p = poly(&f, &[1, 1, 0, 1]);
        let there = lam.taylor_shift(&p);
        let back = there.taylor_shift(&p.neg());
        assert_eq!(back, lam);
    }

    #[test]
    fn power_char_poly_quadratic() {
        // Y^2 + XY + 1 over F_3: squares satisfy U^2 - (X^2 - 2)U + 1
        let f = Field::prime(3).unwrap();
        let lam = BivarPoly::new(
            &f,
            vec![poly(&f, &[1]), poly(&f, &[0, 1]), poly(&f, &[1])],
        );
        let chi = lam.power_char_poly(2).unwrap();
        assert_eq!(
            chi.coeffs(),
            &[poly(&f, &[1]), poly(&f, &[2, 0, 2]), poly(&f, &[1])]
        );
        // m = 1 is the identity
        assert_eq!(lam.power_char_poly(1).unwrap(), lam);
    }

    #[test]
    fn power_char_poly_quartic_square() {
        // Y^4 + X^2 Y^2 + 2X^2 over F_3 at m = 2: the squares satisfy
        // (U^2 + X^2 U + 2X^2)^2
        let f = Field::prime(3).unwrap();
        let lam = BivarPoly::new(
            &f,
            vec![
                poly(&f, &[0, 0, 2]),
                Poly::zero(&f),
                poly(&f, &[0, 0, 1]),
                Poly::zero(&f),
                poly(&f, &[1]),
            ],
        );
        let chi = lam.power_char_poly(2).unwrap();
        let factor = BivarPoly::new(
            &f,
            vec![poly(&f, &[0, 0, 2]), poly(&f, &[0, 0, 1]), poly(&f, &[1])],
        );
        assert_eq!(chi, factor.mul(&factor));
    }

    #[test]
    fn reciprocal_reverses() {
        let f = Field::prime(3).unwrap();
        let lam = BivarPoly::new(
            &f,
            vec![poly(&f, &[1]), poly(&f, &[0, 1]), poly(&f, &[1])],
        );
        let rec = lam.reciprocal().unwrap();
        assert_eq!(rec, lam); // palindrome Y^2 + XY + 1
        let lam2 = BivarPoly::new(
            &f,
            vec![poly(&f, &[2]), poly(&f, &[0, 1]), poly(&f, &[1])],
        );
        assert_eq!(lam2.reciprocal().unwrap().reciprocal().unwrap(), lam2);
        let no_const =
            BivarPoly::new(&f, vec![Poly::zero(&f), poly(&f, &[0, 1]), poly(&f, &[1])]);
        assert_eq!(no_const.reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn divrem_round_trips() {
        let f = Field::prime(3).unwrap();
        let a = BivarPoly::new(
            &f,
            vec![
                poly(&f, &[1, 2]),
                poly(&f, &[0, 0, 1]),
                poly(&f, &[2]),
                poly(&f, &[1, 1]),
                poly(&f, &[1]),
            ],
        );
        let d = BivarPoly::new(&f, vec![poly(&f, &[0, 1]), poly(&f, &[2]), poly(&f, &[1])]);
        let (q, r) = a.divrem(&d).unwrap();
        assert!(r.degree_y() < d.degree_y());
        assert_eq!(q.mul(&d).add(&r), a);
        // exact division leaves no remainder
        let prod = a.mul(&d);
        let (q2, r2) = prod.divrem(&d).unwrap();
        assert!(r2.is_zero());
        assert_eq!(q2, a);
        // degree smaller than the divisor's: quotient 0
        let small = BivarPoly::new(&f, vec![poly(&f, &[0, 1]), poly(&f, &[1, 1])]);
        let (q3, r3) = small.divrem(&d).unwrap();
        assert!(q3.is_zero());
        assert_eq!(r3, small);
        // non-monic divisor is rejected
        let nm = BivarPoly::new(&f, vec![poly(&f, &[1]), poly(&f, &[0, 1])]);
        assert!(matches!(small.divrem(&nm), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn power_char_poly_matches_newton_traces() {
        // trace of the power map from Newton's identities, division-free:
        // p_m = sum_{i=1}^{m-1} (-1)^(i-1) e_i p_{m-i} + (-1)^(m-1) m e_m
        let f = Field::prime(3).unwrap();
        let lam = BivarPoly::new(
            &f,
            vec![
                poly(&f, &[2, 0, 2]),
                poly(&f, &[0, 0, 1]),
                poly(&f, &[1, 1]),
                poly(&f, &[1]),
            ],
        );
        let n = lam.degree_y().unwrap();
        let e = |i: usize| -> Poly {
            // e_i = (-1)^i * lambda_{n-i} for monic Lambda
            if i > n {
                return Poly::zero(&f);
            }
            let c = lam.coeff(n - i);
            if i % 2 == 1 {
                c.neg()
            } else {
                c
            }
        };
        let mut p_traces: Vec<Poly> = vec![Poly::constant(&f, f.elem(n as i64))];
        for m in 1..=6usize {
            let mut acc = Poly::zero(&f);
            for i in 1..m {
                let t = e(i).mul(&p_traces[m - i]);
                acc = if i % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
            }
            let mut last = e(m).scale(f.elem(m as i64));
            if m % 2 == 0 {
                last = last.neg();
            }
            p_traces.push(acc.add(&last));
        }
        for m in 2..=6u64 {
            let chi = lam.power_char_poly(m).unwrap();
            // trace of the m-th powers = -chi_{n-1}
            let trace = chi.coeff(n - 1).neg();
            assert_eq!(trace, p_traces[m as usize], "trace mismatch at m = {m}");
        }
    }

    #[test]
    fn evaluate_at_series() {
        let f = Field::prime(2).unwrap();
        let lam = cubic_f2();
        // Lambda(X^2) = X^3 + X^2 + X + 1 for the F_2 cubic
        let x2 = LaurentSeries::monomial(&f, Fe::ONE, 2);
        let v = lam.evaluate(&x2);
        assert_eq!(v, LaurentSeries::from_poly(&poly(&f, &[1, 1, 1, 1])));
    }
}
