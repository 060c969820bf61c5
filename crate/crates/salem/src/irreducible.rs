//! Irreducibility of monic Lambda over F_q[X]: two sufficient degree-pattern
//! criteria and an exhaustive desk-scale factorization oracle, plus the
//! end-to-end 2-Salem certificate that combines profile, membership, and
//! irreducibility evidence.
//!
//! The criteria only ever answer "irreducible" or "unknown"; reducibility is
//! claimed exclusively by the oracle, which exhibits an explicit factor pair.

use rayon::prelude::*;

use crate::algebra::field::{Fe, Field};
use crate::algebra::poly::{Degree, Poly};
use crate::bivar::BivarPoly;
use crate::classify::{t2prime_test, two_salem_profile, T2Verdict};
use crate::error::{Error, Result};
use crate::roots::{expand_all, initial_terms, RootExpansion, RootStatus};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrredVerdict {
    /// Certified by the odd-degree pattern: no root in F_q,
    /// max_{i<n-3} deg lambda_i < deg lambda_{n-3} = deg lambda_{n-2}
    /// >= 2 deg lambda_{n-1}, and deg lambda_{n-2} odd.
    IrreducibleByOddDegree,
    /// Certified by the strictly concave degree-chain pattern (q odd,
    /// n >= 4) with deg lambda_{n-3} = deg lambda_{n-2} < 2 deg lambda_{n-1}.
    IrreducibleByDegreeChain,
    /// Certified by exhaustive factor enumeration.
    IrreducibleByOracle,
    /// An explicit monic factor pair multiplying back to Lambda; the first
    /// factor is the enumeration-least one found.
    ReducibleWithFactors(BivarPoly, BivarPoly),
    /// Neither criterion applies; no claim is made.
    Unknown,
}

impl IrredVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(
            self,
            IrredVerdict::IrreducibleByOddDegree
                | IrredVerdict::IrreducibleByDegreeChain
                | IrredVerdict::IrreducibleByOracle
        )
    }
}

/// Smallest c in F_q with Lambda(c) = 0 identically in F_q[X], if any.
pub fn has_root_in_fq(lam: &BivarPoly) -> Option<Fe> {
    let field = lam.field();
    field
        .elements()
        .find(|&c| lam.evaluate_poly(&Poly::constant(field, c)).is_zero())
}

fn coeff_degree(lam: &BivarPoly, i: usize) -> Degree {
    lam.coeff(i).degree()
}

/// Sufficient irreducibility criteria reading only the coefficient degree
/// pattern (after an exhaustive root check over F_q). Never claims
/// reducibility: inputs outside both patterns come back `Unknown`.
pub fn criterion_irreducible(lam: &BivarPoly) -> Result<IrredVerdict> {
    let n = lam.degree_y().ok_or(Error::DivisionByZero)?;
    if !lam.is_monic() {
        return Err(Error::HypothesisViolation(
            "irreducibility criteria expect a monic polynomial".into(),
        ));
    }
    if n < 3 || has_root_in_fq(lam).is_some() {
        return Ok(IrredVerdict::Unknown);
    }
    let dd = |i: usize| coeff_degree(lam, i);
    let d1 = dd(n - 1);
    let d2 = dd(n - 2);
    let d3 = dd(n - 3);

    // odd-degree pattern: deg lambda_{n-3} = deg lambda_{n-2} odd, at least
    // twice deg lambda_{n-1}, dominating all earlier coefficients
    if let Some(v2) = d2 {
        let tail_ok = (0..n.saturating_sub(3)).all(|i| dd(i) < Some(v2));
        let twice_ok = match d1 {
            None => true,
            Some(v1) => v2 >= 2 * v1,
        };
        if v2 % 2 == 1 && d3 == d2 && twice_ok && tail_ok {
            return Ok(IrredVerdict::IrreducibleByOddDegree);
        }
    }

    // degree-chain pattern: q odd, n >= 4
    if lam.field().p() == 2 || n < 4 {
        return Ok(IrredVerdict::Unknown);
    }
    let (v1, v2) = match (d1, d2) {
        (Some(v1), Some(v2)) => (v1, v2),
        _ => return Ok(IrredVerdict::Unknown),
    };
    // (i) the two middle coefficients tie strictly above everything in
    // positions 1..=n-4 and n-1, and stay below 2 deg lambda_{n-1}
    let cond_i = d3 == d2
        && v2 < 2 * v1
        && d1 < d2
        && (1..=n.saturating_sub(4)).all(|i| dd(i) < Some(v2));
    // (ii) strict concavity along the tail
    let cond_ii = (1..=n.saturating_sub(4)).all(|i| match dd(i) {
        Some(vi) => match (dd(i + 1), dd(i - 1)) {
            (Some(a), Some(b)) => a + b < 2 * vi,
            _ => true,
        },
        None => dd(i + 1).is_none() || dd(i - 1).is_none(),
    });
    // (iii) deg lambda_{n-4} pinned strictly between v2 - v1 and v1
    let cond_iii = match dd(n - 4) {
        Some(v4) => v2 - v1 < v4 && v4 < v1,
        None => false,
    };
    if cond_i && cond_ii && cond_iii {
        return Ok(IrredVerdict::IrreducibleByDegreeChain);
    }
    Ok(IrredVerdict::Unknown)
}

/// Rank of a polynomial for deterministic enumeration order: degree first,
/// then coefficient encodings from the top down.
fn poly_rank(p: &Poly) -> Vec<u64> {
    let mut key = vec![p.coeffs().len() as u64];
    key.extend(p.coeffs().iter().rev().map(|c| c.0));
    key
}

/// All monic divisors of a nonzero lambda_0, by exhaustive trial division,
/// sorted in enumeration order.
fn monic_divisors(lam0: &Poly) -> Result<Vec<Poly>> {
    let field = lam0.field();
    let deg = match lam0.degree() {
        Some(d) => d as usize,
        None => return Err(Error::ZeroConstantTerm),
    };
    let q = field.q();
    let mut out = Vec::new();
    for d in 0..=deg {
        let count = q
            .checked_pow(d as u32)
            .filter(|&c| c <= 200_000_000)
            .ok_or_else(|| {
                Error::ResourceBound(format!("divisor enumeration at degree {d} is too large"))
            })?;
        for idx in 0..count {
            let mut coeffs = index_to_coeffs(field, idx, d);
            coeffs.push(field.one());
            let cand = Poly::new(field, coeffs);
            if lam0.divrem(&cand)?.1.is_zero() {
                out.push(cand);
            }
        }
    }
    out.sort_by_key(poly_rank);
    Ok(out)
}

/// Decode an enumeration index into `len` field elements, least Y-power
/// first, digits in the canonical element order.
fn index_to_coeffs(field: &Field, mut idx: u64, len: usize) -> Vec<Fe> {
    let q = field.q();
    let elems: Vec<Fe> = field.elements().collect();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(elems[(idx % q) as usize]);
        idx /= q;
    }
    out
}

/// Exhaustive irreducibility oracle: tries every monic factor of Y-degree
/// 1..=n/2 whose constant term divides lambda_0 and whose other coefficients
/// have X-degree at most the polygon height. Complete within its resource
/// bounds; reports the enumeration-least factor of a reducible input.
pub fn brute_force_irreducible(lam: &BivarPoly, max_xdeg: i64) -> Result<IrredVerdict> {
    let field = lam.field().clone();
    let n = lam.degree_y().ok_or(Error::DivisionByZero)?;
    if !lam.is_monic() {
        return Err(Error::HypothesisViolation(
            "the irreducibility oracle expects a monic polynomial".into(),
        ));
    }
    if n > 6 || field.q() > 7 {
        return Err(Error::ResourceBound(format!(
            "oracle limits: Y-degree <= 6 (got {n}), q <= 7 (got {})",
            field.q()
        )));
    }
    if lam.coeffs().iter().any(|c| c.degree() > Some(max_xdeg)) {
        return Err(Error::ResourceBound(format!(
            "coefficient X-degree exceeds the oracle bound {max_xdeg}"
        )));
    }
    if n <= 1 {
        return Ok(IrredVerdict::IrreducibleByOracle);
    }
    let lam0 = lam.coeff(0);
    if lam0.is_zero() {
        let y = BivarPoly::monomial(&field, Poly::one(&field), 1);
        let (quot, _) = lam.divrem(&y)?;
        return Ok(IrredVerdict::ReducibleWithFactors(y, quot));
    }

    // Y-degree 1 factors are exactly the polynomial roots: Y + a divides
    // Lambda iff Lambda(-a) = 0 in F_q[X]
    let units: Vec<Fe> = field.elements().skip(1).collect();
    let divisors = monic_divisors(&lam0)?;
    let mut const_cands: Vec<Poly> = Vec::new();
    for g in &divisors {
        for &u in &units {
            const_cands.push(g.scale(u));
        }
    }
    const_cands.sort_by_key(poly_rank);
    for a0 in &const_cands {
        if lam.evaluate_poly(&a0.neg()).is_zero() {
            let factor = BivarPoly::new(&field, vec![a0.clone(), Poly::one(&field)]);
            let (quot, rem) = lam.divrem(&factor)?;
            debug_assert!(rem.is_zero());
            return Ok(IrredVerdict::ReducibleWithFactors(factor, quot));
        }
    }

    // polygon height bounds every coefficient degree of a monic factor,
    // because each is a symmetric function of a subset of the roots
    let height = lam
        .coeffs()
        .iter()
        .filter_map(|c| c.degree())
        .max()
        .unwrap_or(0)
        .max(0) as u32;
    let q = field.q();
    let per_coeff = q.checked_pow(height + 1).ok_or_else(|| {
        Error::ResourceBound("candidate coefficient space overflows".into())
    })?;
    for s in 2..=(n / 2) {
        let middle = (s - 1) as u32;
        let space = per_coeff
            .checked_pow(middle)
            .and_then(|m| m.checked_mul(const_cands.len() as u64))
            .filter(|&c| c <= 200_000_000)
            .ok_or_else(|| {
                Error::ResourceBound(format!(
                    "factor enumeration at Y-degree {s} is too large"
                ))
            })?;
        let hit = (0..space)
            .into_par_iter()
            .filter_map(|idx| {
                let a0 = &const_cands[(idx % const_cands.len() as u64) as usize];
                let mut rest = idx / const_cands.len() as u64;
                let mut coeffs = vec![a0.clone()];
                for _ in 0..middle {
                    let c = index_to_coeffs(&field, rest % per_coeff, height as usize + 1);
                    rest /= per_coeff;
                    coeffs.push(Poly::new(&field, c));
                }
                coeffs.push(Poly::one(&field));
                let cand = BivarPoly::new(&field, coeffs);
                match lam.divrem(&cand) {
                    Ok((quot, rem)) if rem.is_zero() => Some((idx, cand, quot)),
                    _ => None,
                }
            })
            .min_by_key(|(idx, _, _)| *idx);
        if let Some((_, cand, quot)) = hit {
            return Ok(IrredVerdict::ReducibleWithFactors(cand, quot));
        }
    }
    Ok(IrredVerdict::IrreducibleByOracle)
}

/// Full factorization into monic irreducible factors (oracle-certified),
/// sorted in enumeration order. Subject to the oracle's resource bounds.
pub fn factor(lam: &BivarPoly, max_xdeg: i64) -> Result<Vec<BivarPoly>> {
    let mut queue = vec![lam.clone()];
    let mut out = Vec::new();
    while let Some(cur) = queue.pop() {
        match brute_force_irreducible(&cur, max_xdeg)? {
            IrredVerdict::ReducibleWithFactors(a, b) => {
                queue.push(a);
                queue.push(b);
            }
            _ => out.push(cur),
        }
    }
    out.sort_by_key(|p| {
        (
            p.degree_y(),
            p.coeffs().iter().map(poly_rank).collect::<Vec<_>>(),
        )
    });
    Ok(out)
}

/// End-to-end 2-Salem certificate for monic Lambda.
#[derive(Debug, Clone)]
pub struct Certificate {
    /// Coefficient-profile test: |lambda_{n-1}| strictly below the tied
    /// maximum |lambda_{n-2}| > 1.
    pub profile: bool,
    /// Membership verdict for the decidable subfamily.
    pub membership: T2Verdict,
    pub irreducibility: IrredVerdict,
    /// Expansions of the dominant roots (degree >= 1) to the requested
    /// precision.
    pub expansions: Vec<RootExpansion>,
    /// Smallest power m >= 2 whose characteristic polynomial has all
    /// dominant seeds in F_q with integer degrees, recorded when the direct
    /// membership route fails (the m-th powers escape to F_q((1/X))).
    pub power_candidate: Option<u64>,
    /// True only when profile, membership evidence, and irreducibility are
    /// all positive.
    pub certified: bool,
}

/// Combine the coefficient profile, membership test (with a constructive
/// expansion fallback where the algebraic test does not apply), and
/// irreducibility into one certificate.
pub fn two_salem_certify(lam: &BivarPoly, prec: usize) -> Result<Certificate> {
    let n = lam.degree_y().ok_or(Error::DivisionByZero)?;
    if !lam.is_monic() {
        return Err(Error::HypothesisViolation(
            "certification expects a monic polynomial".into(),
        ));
    }
    if n < 3 {
        return Err(Error::DegreeTooSmall { required: 3, actual: n });
    }
    if lam.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let profile = two_salem_profile(lam)?;
    let membership = match t2prime_test(lam) {
        Ok(v) => v,
        Err(Error::EvenCharacteristic) => T2Verdict::OutsideHypotheses {
            reason: "even characteristic: outside the algebraic membership test".into(),
        },
        Err(e) => return Err(e),
    };

    let expansions: Vec<RootExpansion> = match expand_all(lam, prec) {
        Ok(all) => all
            .into_iter()
            .filter(|e| e.degree.map(|d| d.num >= d.den) == Some(true))
            .collect(),
        Err(Error::RamificationDepthExceeded) => Vec::new(),
        Err(e) => return Err(e),
    };
    // constructive membership: exactly two dominant roots, both simple and
    // certified in F_q((1/X)) — with the profile this pins the third
    // conjugate to the unit circle and the rest strictly inside
    let expansion_membership = profile
        && expansions.len() == 2
        && expansions.iter().all(|e| {
            e.multiplicity == 1
                && matches!(e.status, RootStatus::Exact | RootStatus::Certified)
        });
    let membership_ok =
        matches!(membership, T2Verdict::InT2Prime { .. }) || expansion_membership;

    let max_xdeg = lam
        .coeffs()
        .iter()
        .filter_map(|c| c.degree())
        .max()
        .unwrap_or(0);
    let mut irreducibility = criterion_irreducible(lam)?;
    if irreducibility == IrredVerdict::Unknown {
        match brute_force_irreducible(lam, max_xdeg) {
            Ok(v) => irreducibility = v,
            Err(Error::ResourceBound(_)) => {}
            Err(e) => return Err(e),
        }
    }

    let certified = profile && membership_ok && irreducibility.is_irreducible();
    let power_candidate = if membership_ok {
        None
    } else {
        power_escape_probe(lam, 4)?
    };
    Ok(Certificate {
        profile,
        membership,
        irreducibility,
        expansions,
        power_candidate,
        certified,
    })
}

/// Smallest m in 2..=m_max whose power characteristic polynomial has every
/// dominant seed (degree >= 1) with integer degree and leading coefficient
/// in F_q, i.e. the m-th powers of the dominant roots fall into F_q((1/X)).
pub fn power_escape_probe(lam: &BivarPoly, m_max: u64) -> Result<Option<u64>> {
    for m in 2..=m_max {
        let chi = match lam.power_char_poly(m) {
            Ok(chi) => chi,
            Err(Error::ResourceBound(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if chi.coeff(0).is_zero() {
            continue;
        }
        let seeds = initial_terms(&chi)?;
        let dominant: Vec<_> = seeds
            .iter()
            .filter(|s| s.degree.num >= s.degree.den)
            .collect();
        if !dominant.is_empty()
            && dominant
                .iter()
                .all(|s| s.status == RootStatus::Certified && s.coeff.is_some())
        {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
