//! Coefficient-degree classifiers for monic Lambda in Y over F_q[X]:
//! Pisot and Salem elements, the 2-Salem profile, and the decision tree for
//! membership in the distinguished 2-Salem family T2'.
//!
//! With |omega| = q^deg, all tests reduce to comparisons of coefficient
//! degrees plus one square condition on a leading coefficient, so every
//! verdict here is exact.

use crate::algebra::field::{Fe, Field};
use crate::algebra::poly::Degree;
use crate::bivar::BivarPoly;
use crate::error::{Error, Result};

/// Bateman-Duquette classification by coefficient sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassLabel {
    /// One root with |w| > 1, all conjugates with |.| < 1.
    Pisot,
    /// One root with |w| > 1, conjugates with |.| <= 1 and equality attained.
    Salem,
    Neither,
}

/// Which constructive case of the membership theorem applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T2Case {
    /// deg lambda_{n-2} > 2 deg lambda_{n-1}, n >= 4.
    I,
    /// deg lambda_{n-2} > 2 deg lambda_{n-1}, n = 3.
    II,
    /// deg lambda_{n-2} < 2 deg lambda_{n-1}.
    III,
}

/// Why a candidate is certified outside T2'.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T2Reason {
    /// The coefficient degrees do not fit the 2-Salem profile.
    Profile,
    /// deg lambda_{n-2} is odd where the dominant pair needs even degree.
    OddDegree,
    /// -(leading coefficient of lambda_{n-2}) is not a nonzero square.
    NonSquare,
    /// n >= 4 and deg lambda_{n-3} >= deg lambda_{n-2}.
    LambdaNMinus3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum T2Verdict {
    /// Membership certified; the witness is a square root of the negated
    /// leading coefficient of lambda_{n-2} where one is used.
    InT2Prime { case: T2Case, witness: Option<Fe> },
    NotInT2Prime { reason: T2Reason },
    /// The test is inconclusive: the instance violates a strictness
    /// hypothesis of the theorem rather than a membership condition.
    OutsideHypotheses { reason: String },
}

fn coeff_degree(lam: &BivarPoly, i: usize) -> Degree {
    lam.coeff(i).degree()
}

/// |lambda| > 1, i.e. deg lambda >= 1.
fn exceeds_one(d: Degree) -> bool {
    d >= Some(1)
}

fn require_monic(lam: &BivarPoly) -> Result<usize> {
    let n = lam.degree_y().ok_or(Error::DivisionByZero)?;
    if !lam.is_monic() {
        return Err(Error::HypothesisViolation("classifier expects a monic polynomial".into()));
    }
    Ok(n)
}

/// Pisot: |lambda_{n-1}| > max(1, |lambda_i| for i <= n-2).
/// Salem: |lambda_{n-1}| = max |lambda_i| for i <= n-2, both > 1.
pub fn classify_bd(lam: &BivarPoly) -> Result<ClassLabel> {
    let n = require_monic(lam)?;
    if n == 0 {
        return Ok(ClassLabel::Neither);
    }
    let d_sub = coeff_degree(lam, n - 1);
    let d_rest = (0..n.saturating_sub(1))
        .map(|i| coeff_degree(lam, i))
        .max()
        .unwrap_or(None);
    if !exceeds_one(d_sub) {
        return Ok(ClassLabel::Neither);
    }
    if d_sub > d_rest {
        Ok(ClassLabel::Pisot)
    } else if d_sub == d_rest {
        Ok(ClassLabel::Salem)
    } else {
        Ok(ClassLabel::Neither)
    }
}

/// Coefficient-degree profile of a 2-Salem candidate:
/// |lambda_{n-1}| < |lambda_{n-2}| = max over the other |lambda_i|, > 1.
/// The strict inequality puts exactly two roots outside the unit circle (in
/// a splitting field); the equality forces at least one conjugate of
/// absolute value exactly 1, since some other elementary symmetric function
/// must reach the same degree.
pub fn two_salem_profile(lam: &BivarPoly) -> Result<bool> {
    let n = require_monic(lam)?;
    if n < 3 {
        return Err(Error::DegreeTooSmall { required: 3, actual: n });
    }
    let d2 = coeff_degree(lam, n - 2);
    if !exceeds_one(d2) {
        return Ok(false);
    }
    if d2 <= coeff_degree(lam, n - 1) {
        return Ok(false);
    }
    let others = (0..=n)
        .filter(|&i| i != n - 2)
        .map(|i| coeff_degree(lam, i))
        .max()
        .unwrap_or(None);
    Ok(others == d2)
}

/// Smallest square root of -a in the canonical element order, if one exists.
pub fn neg_square_root(field: &Field, a: Fe) -> Option<Fe> {
    let target = field.neg(a);
    field.elements().find(|&b| field.mul(b, b) == target)
}

/// Membership test for T2'. Requires q odd, monic, n >= 3, lambda_0 != 0.
pub fn t2prime_test(lam: &BivarPoly) -> Result<T2Verdict> {
    let field = lam.field().clone();
    let n = require_monic(lam)?;
    if field.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if n < 3 {
        return Err(Error::DegreeTooSmall { required: 3, actual: n });
    }
    if lam.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if !two_salem_profile(lam)? {
        return Ok(T2Verdict::NotInT2Prime { reason: T2Reason::Profile });
    }
    // profile guarantees deg lambda_{n-2} is finite and >= 1
    let d2 = coeff_degree(lam, n - 2).unwrap();
    let d1 = coeff_degree(lam, n - 1);
    let twice_d1 = d1.map(|d| 2 * d);
    if Some(d2) < twice_d1 {
        return Ok(T2Verdict::InT2Prime { case: T2Case::III, witness: None });
    }
    if Some(d2) == twice_d1 {
        return Ok(T2Verdict::OutsideHypotheses {
            reason: format!(
                "deg lambda_{} = 2 deg lambda_{}: the dominant facet degenerates",
                n - 2,
                n - 1
            ),
        });
    }
    // deg lambda_{n-2} > 2 deg lambda_{n-1}: the dominant pair is conjugate
    // of degree d2/2 each, so d2 must be even and the pair's leading
    // coefficients must be the two square roots of -alpha.
    if d2 % 2 != 0 {
        return Ok(T2Verdict::NotInT2Prime { reason: T2Reason::OddDegree });
    }
    let alpha = lam.coeff(n - 2).lc();
    let witness = match neg_square_root(&field, alpha) {
        Some(w) => w,
        None => return Ok(T2Verdict::NotInT2Prime { reason: T2Reason::NonSquare }),
    };
    if n >= 4 && coeff_degree(lam, n - 3) >= Some(d2) {
        return Ok(T2Verdict::NotInT2Prime { reason: T2Reason::LambdaNMinus3 });
    }
    let case = if n >= 4 { T2Case::I } else { T2Case::II };
    Ok(T2Verdict::InT2Prime { case, witness: Some(witness) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;

    fn poly(f: &Field, ints: &[i64]) -> Poly {
        Poly::from_ints(f, ints)
    }

    fn bivar(f: &Field, coeffs: &[&[i64]]) -> BivarPoly {
        BivarPoly::new(f, coeffs.iter().map(|c| poly(f, c)).collect())
    }

    #[test]
    fn bateman_duquette_basic() {
        let f = Field::prime(3).unwrap();
        // Y^2 + XY + 1: Pisot
        let pisot = bivar(&f, &[&[1], &[0, 1], &[1]]);
        assert_eq!(classify_bd(&pisot).unwrap(), ClassLabel::Pisot);
        // Y^2 + XY + X: Salem
        let salem = bivar(&f, &[&[0, 1], &[0, 1], &[1]]);
        assert_eq!(classify_bd(&salem).unwrap(), ClassLabel::Salem);
        // Y^2 + Y + X: neither (|lambda_1| = 1)
        let neither = bivar(&f, &[&[0, 1], &[1], &[1]]);
        assert_eq!(classify_bd(&neither).unwrap(), ClassLabel::Neither);
        // Y^2 + XY + X^2: neither (lambda_0 dominates)
        let neither2 = bivar(&f, &[&[0, 0, 1], &[0, 1], &[1]]);
        assert_eq!(classify_bd(&neither2).unwrap(), ClassLabel::Neither);
    }

    #[test]
    fn quartic_not_in_t2prime_square_obstruction() {
        // Y^4 + X^2 Y^2 + 2X^2 over F_3: profile holds, d2 = 2 even,
        // -alpha = -1 = 2 is not a square in F_3
        let f = Field::prime(3).unwrap();
        let lam = bivar(&f, &[&[0, 0, 2], &[0], &[0, 0, 1], &[0], &[1]]);
        assert!(two_salem_profile(&lam).unwrap());
        assert_eq!(
            t2prime_test(&lam).unwrap(),
            T2Verdict::NotInT2Prime { reason: T2Reason::NonSquare }
        );
    }

    #[test]
    fn quintic_case_iii() {
        // Y^5 + X^4 Y^4 + X^5 Y^3 + X^5 Y^2 + X^3 Y + 1 over F_3:
        // deg lambda_3 = 5 < 2 * deg lambda_4 = 8
        let f = Field::prime(3).unwrap();
        let lam = BivarPoly::new(
            &f,
            vec![
                poly(&f, &[1]),
                Poly::monomial(&f, f.one(), 3),
                Poly::monomial(&f, f.one(), 5),
                Poly::monomial(&f, f.one(), 5),
                Poly::monomial(&f, f.one(), 4),
                poly(&f, &[1]),
            ],
        );
        assert_eq!(
            t2prime_test(&lam).unwrap(),
            T2Verdict::InT2Prime { case: T2Case::III, witness: None }
        );
    }

    #[test]
    fn boundary_case_is_outside_hypotheses() {
        // Y^3 + (X+1)Y^2 + X^2 Y + (2X^2+2) over F_3: deg lambda_1 = 2 =
        // 2 deg lambda_2
        let f = Field::prime(3).unwrap();
        let lam = bivar(&f, &[&[2, 0, 2], &[0, 0, 1], &[1, 1], &[1]]);
        assert!(matches!(
            t2prime_test(&lam).unwrap(),
            T2Verdict::OutsideHypotheses { .. }
        ));
        // Y^4 - XY^3 + X^2 Y^2 + XY + X^2 + 1 over F_5: same boundary
        let f5 = Field::prime(5).unwrap();
        let lam5 = bivar(&f5, &[&[1, 0, 1], &[0, 1], &[0, 0, 1], &[0, -1], &[1]]);
        assert!(matches!(
            t2prime_test(&lam5).unwrap(),
            T2Verdict::OutsideHypotheses { .. }
        ));
    }

    #[test]
    fn case_i_with_witness() {
        // Y^4 + XY^3 + 2X^4 Y^2 + XY + X^4 over F_3: deg lambda_0 = 4 ties
        // the maximum, d2 = 4 > 2 deg lambda_3 = 2, -alpha = -2 = 1 = 1^2
        let f = Field::prime(3).unwrap();
        let lam = bivar(
            &f,
            &[&[0, 0, 0, 0, 1], &[0, 1], &[0, 0, 0, 0, 2], &[0, 1], &[1]],
        );
        assert_eq!(
            t2prime_test(&lam).unwrap(),
            T2Verdict::InT2Prime { case: T2Case::I, witness: Some(Fe(1)) }
        );
        // n = 3 variant lands in case II
        let lam3 = bivar(&f, &[&[0, 0, 0, 0, 1], &[0, 0, 0, 0, 2], &[0, 1], &[1]]);
        assert_eq!(
            t2prime_test(&lam3).unwrap(),
            T2Verdict::InT2Prime { case: T2Case::II, witness: Some(Fe(1)) }
        );
        // without the tie there is no unit-circle conjugate: not the profile
        let no_tie = bivar(&f, &[&[0, 1], &[1], &[0, 0, 0, 0, 2], &[0, 1], &[1]]);
        assert_eq!(
            t2prime_test(&no_tie).unwrap(),
            T2Verdict::NotInT2Prime { reason: T2Reason::Profile }
        );
    }

    #[test]
    fn lambda_n_minus_3_obstruction() {
        // Y^4 + XY^3 + X^4 Y^2 + X^4 Y + X over F_3: deg lambda_1 = 4 = d2
        let f = Field::prime(3).unwrap();
        let lam = bivar(
            &f,
            &[&[0, 1], &[0, 0, 0, 0, 1], &[0, 0, 0, 0, 2], &[0, 1], &[1]],
        );
        assert_eq!(
            t2prime_test(&lam).unwrap(),
            T2Verdict::NotInT2Prime { reason: T2Reason::LambdaNMinus3 }
        );
    }

    #[test]
    fn odd_degree_obstruction() {
        // Y^3 + Y^2 + X^3 Y + X^3 over F_3: d2 = 3 odd, > 2 deg lambda_2 = 0
        let f = Field::prime(3).unwrap();
        let lam = bivar(&f, &[&[0, 0, 0, 1], &[0, 0, 0, 1], &[1], &[1]]);
        assert_eq!(
            t2prime_test(&lam).unwrap(),
            T2Verdict::NotInT2Prime { reason: T2Reason::OddDegree }
        );
    }

    #[test]
    fn hypothesis_errors() {
        let f2 = Field::prime(2).unwrap();
        let lam2 = bivar(&f2, &[&[1], &[0, 1], &[1], &[1]]);
        assert_eq!(t2prime_test(&lam2), Err(Error::EvenCharacteristic));
        let f = Field::prime(3).unwrap();
        let small = bivar(&f, &[&[1], &[0, 1], &[1]]);
        assert_eq!(
            t2prime_test(&small),
            Err(Error::DegreeTooSmall { required: 3, actual: 2 })
        );
        let zero_const = bivar(&f, &[&[0], &[0, 0, 1], &[0, 1], &[1]]);
        assert_eq!(t2prime_test(&zero_const), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn neg_square_root_smallest() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(neg_square_root(&f3, f3.elem(1)), None); // -1 = 2 non-square
        assert_eq!(neg_square_root(&f3, f3.elem(2)), Some(Fe(1))); // -2 = 1
        let f9 = Field::extension(3, 2, None).unwrap(); // modulus t^2 + 1
        // -1 = t^2, smallest root is t (encoded 3)
        assert_eq!(neg_square_root(&f9, f9.elem(1)), Some(Fe(3)));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(neg_square_root(&f5, f5.elem(1)), Some(Fe(2))); // 2^2 = 4 = -1
    }
}
