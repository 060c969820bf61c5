//! Series roots of monic Lambda in Y over F_q((1/X)).
//!
//! Roots are expanded term by term along the Newton polygon: each facet of
//! integer slope -d contributes roots with leading term c X^d for every root
//! c of the facet's edge polynomial. Clusters that share a leading term are
//! deflated by a Taylor shift and recursed on; once a cluster is a single
//! simple root, Newton iteration refines it quadratically. A returned
//! expansion is certified through its residual: every retained coefficient
//! of an expansion with gamma(Lambda(z)) - gamma(Lambda'(z)) = g is correct
//! down to exponent g + 1.
//!
//! Facets with non-integer slope (ramified roots) and edge factors without
//! roots in F_q (roots with leading coefficients in an extension) are
//! reported as unexpandable clusters, not errors.

use crate::algebra::field::{Fe, Field};
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::poly::{Degree, Poly};
use crate::bivar::BivarPoly;
use crate::classify::{t2prime_test, T2Case, T2Verdict};
use crate::error::{Error, Result};
use crate::polygon::{facets_of, upper_hull, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootStatus {
    /// The residual vanishes identically: the series is the root.
    Exact,
    /// Refined and certified to the stated floor by the residual bound.
    Certified,
    /// The cluster's next exponent is fractional: the roots live in a
    /// ramified extension of F_q((1/X)).
    RequiresRamification,
    /// The edge polynomial keeps an irreducible factor over F_q: the next
    /// coefficient lives in a proper extension of F_q.
    RequiresExtension,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootExpansion {
    /// Known initial segment of the root (or of the whole cluster).
    pub series: LaurentSeries,
    /// Degree of the root(s) in 1/X; `None` for the root 0.
    pub degree: Option<Rational>,
    /// Number of roots this entry accounts for.
    pub multiplicity: usize,
    pub status: RootStatus,
}

/// Lambda with Laurent-polynomial coefficients, as produced by deflation.
struct SeriesPoly {
    field: Field,
    coeffs: Vec<LaurentSeries>,
}

impl SeriesPoly {
    fn from_bivar(lam: &BivarPoly) -> SeriesPoly {
        SeriesPoly {
            field: lam.field().clone(),
            coeffs: lam.coeffs().iter().map(LaurentSeries::from_poly).collect(),
        }
    }

    /// Substitute Y -> c X^d + Y by iterated synthetic division.
    fn shift_by_term(&self, c: Fe, d: i64) -> SeriesPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for j in 0..n {
            for i in (j..n.saturating_sub(1)).rev() {
                a[i] = a[i].add(&a[i + 1].scale(c).shift(d));
            }
        }
        SeriesPoly { field: self.field.clone(), coeffs: a }
    }
}

fn rational_floor(r: Rational) -> i64 {
    r.num.div_euclid(r.den)
}

/// Edge polynomial of a facet over series coefficients: the same lattice
/// rule as for polynomial coefficients, reading leading series terms.
fn series_edge_poly(
    field: &Field,
    coeffs: &[LaurentSeries],
    facet: &crate::polygon::Facet,
) -> Poly {
    let k = facet.slope.num;
    let r = facet.left.0;
    let mut out = Vec::with_capacity(facet.length as usize + 1);
    for j in 0..=facet.length {
        let c = &coeffs[(r + j) as usize];
        let on_line = c.degree() == Degree::Some(facet.left.1 + k * j);
        out.push(if on_line { c.lc() } else { Fe::ZERO });
    }
    Poly::new(field, out)
}

/// Newton refinement of a separated simple root. `z0` carries the terms
/// found by the polygon walk; `prec` is the requested number of certified
/// coefficients counted from the leading exponent.
fn refine(orig: &BivarPoly, z0: &LaurentSeries, prec: usize) -> Result<RootExpansion> {
    let d = z0.degree().expect("refine needs a nonzero start");
    let deriv = orig.derivative_y();
    let mut working = prec as i64 + 8;
    let mut z = z0.clone();
    let mut prev_gap: Option<i64> = None;
    let mut retries = 0;
    for _ in 0..256 {
        let val = orig.evaluate(&z);
        if val.is_exact_zero() {
            return Ok(RootExpansion {
                series: z,
                degree: Some(Rational::integer(d)),
                multiplicity: 1,
                status: RootStatus::Exact,
            });
        }
        let dv = deriv.evaluate(&z);
        if dv.is_zero_window() {
            return Err(Error::Inconsistency(
                "derivative vanished at a supposedly simple root".into(),
            ));
        }
        let gv = val.degree().expect("nonzero exact residual");
        let gd = dv.degree().expect("nonzero exact derivative");
        let gap = gv - gd;
        // certify only inside the Hensel basin |Lambda(z)| < |Lambda'(z)|^2
        if gap <= d - prec as i64 && gap < gd {
            return Ok(RootExpansion {
                series: z.truncate(gap + 1),
                degree: Some(Rational::integer(d)),
                multiplicity: 1,
                status: RootStatus::Certified,
            });
        }
        if let Some(pg) = prev_gap {
            if gap >= pg {
                working *= 2;
                retries += 1;
                if retries > 4 {
                    return Err(Error::PrecisionInsufficient(format!(
                        "newton gap stalled at {gap} refining a root of degree {d}"
                    )));
                }
            }
        }
        prev_gap = Some(gap);
        let step = val.mul(&dv.invert(working as usize)?);
        z = z.sub(&step).truncate(d - working + 1).assume_exact();
    }
    Err(Error::PrecisionInsufficient(
        "newton iteration exceeded its step budget".into(),
    ))
}

#[allow(clippy::too_many_arguments)]
fn expand_cluster(
    orig: &BivarPoly,
    cur: &SeriesPoly,
    partial: &LaurentSeries,
    bound: Option<i64>,
    prec: usize,
    depth: usize,
    depth_limit: usize,
    out: &mut Vec<RootExpansion>,
) -> Result<()> {
    if depth > depth_limit {
        // distinct roots must separate within the resultant bound, so a
        // cluster that never splits is a repeated root
        return Err(Error::RamificationDepthExceeded);
    }
    let field = &cur.field;
    let mut z0 = 0usize;
    while cur.coeffs[z0].is_exact_zero() {
        z0 += 1;
    }
    if z0 > 0 {
        out.push(RootExpansion {
            series: partial.clone(),
            degree: partial.degree().map(Rational::integer),
            multiplicity: z0,
            status: RootStatus::Exact,
        });
    }
    let points: Vec<(i64, i64)> = (z0..cur.coeffs.len())
        .filter_map(|i| cur.coeffs[i].degree().map(|d| (i as i64, d)))
        .collect();
    let facets = facets_of(&upper_hull(&points));
    for facet in &facets {
        let deg = facet.slope.neg();
        if let Some(b) = bound {
            // only roots continuing this cluster: next exponent below the
            // last one added
            if deg >= Rational::integer(b) {
                continue;
            }
        }
        if !deg.is_integer() {
            out.push(RootExpansion {
                series: partial.truncate(rational_floor(deg) + 1),
                degree: if partial.is_zero_window() {
                    Some(deg)
                } else {
                    partial.degree().map(Rational::integer)
                },
                multiplicity: facet.length as usize,
                status: RootStatus::RequiresRamification,
            });
            continue;
        }
        let d = deg.num;
        let edge = series_edge_poly(field, &cur.coeffs, facet);
        let mut rem = edge.clone();
        for c in field.elements().skip(1) {
            let mut mult = 0usize;
            let linear = Poly::new(field, vec![field.neg(c), field.one()]);
            while !rem.is_constant() && rem.evaluate(c).is_zero() {
                rem = rem.div_exact(&linear)?;
                mult += 1;
            }
            if mult == 0 {
                continue;
            }
            let new_partial = partial.add(&LaurentSeries::monomial(field, c, d));
            if mult == 1 {
                out.push(refine(orig, &new_partial, prec)?);
            } else {
                let shifted = cur.shift_by_term(c, d);
                expand_cluster(
                    orig,
                    &shifted,
                    &new_partial,
                    Some(d),
                    prec,
                    depth + 1,
                    depth_limit,
                    out,
                )?;
            }
        }
        if rem.degree() > Some(0) {
            out.push(RootExpansion {
                series: partial.truncate(d + 1),
                degree: if partial.is_zero_window() {
                    Some(deg)
                } else {
                    partial.degree().map(Rational::integer)
                },
                multiplicity: rem.degree().unwrap() as usize,
                status: RootStatus::RequiresExtension,
            });
        }
    }
    Ok(())
}

/// Expand every root of monic Lambda over F_q((1/X)) to `prec` certified
/// coefficients, reporting ramified or extension-valued clusters as entries.
/// Repeated roots make the recursion fail with `RamificationDepthExceeded`;
/// factor such inputs first.
pub fn expand_all(lam: &BivarPoly, prec: usize) -> Result<Vec<RootExpansion>> {
    let n = lam.degree_y().ok_or(Error::DivisionByZero)?;
    if !lam.is_monic() {
        return Err(Error::HypothesisViolation("expansion expects a monic polynomial".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let max_deg = lam
        .coeffs()
        .iter()
        .filter_map(|c| c.degree())
        .max()
        .unwrap_or(0);
    let depth_limit = 2 * n * (1 + max_deg as usize) + 8;
    let cur = SeriesPoly::from_bivar(lam);
    let mut out = Vec::new();
    expand_cluster(
        lam,
        &cur,
        &LaurentSeries::zero(lam.field()),
        None,
        prec.max(1),
        0,
        depth_limit,
        &mut out,
    )?;
    let total: usize = out.iter().map(|e| e.multiplicity).sum();
    if total != n {
        return Err(Error::Inconsistency(format!(
            "expansion accounted for {total} of {n} roots"
        )));
    }
    out.sort_by(|x, y| match (&x.degree, &y.degree) {
        (Some(a), Some(b)) => b.cmp(a),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    Ok(out)
}

/// Seed of a root cluster read off one facet of the Newton polygon: leading
/// monomial `coeff * X^degree`, or an unexpandable marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialTerm {
    /// Degree of the roots in this cluster (negated facet slope).
    pub degree: Rational,
    /// Leading coefficient; `None` when it lies outside F_q.
    pub coeff: Option<Fe>,
    /// Number of roots sharing this seed.
    pub multiplicity: usize,
    pub status: RootStatus,
}

/// Leading monomials of all nonzero roots of monic Lambda, one entry per
/// F_q-root of each facet's edge polynomial. Facets of non-integer slope and
/// edge factors without F_q-roots appear with an absent coefficient and a
/// status naming the obstruction.
pub fn initial_terms(lam: &BivarPoly) -> Result<Vec<InitialTerm>> {
    let np = crate::polygon::NewtonPolygon::build(lam)?;
    if np.zero_roots > 0 {
        return Err(Error::ZeroConstantTerm);
    }
    let field = lam.field();
    let mut out = Vec::new();
    for facet in &np.facets {
        let deg = facet.slope.neg();
        if !deg.is_integer() {
            out.push(InitialTerm {
                degree: deg,
                coeff: None,
                multiplicity: facet.length as usize,
                status: RootStatus::RequiresRamification,
            });
            continue;
        }
        let mut rem = np.edge_polynomial(facet, lam)?;
        for c in field.elements().skip(1) {
            let mut mult = 0usize;
            let linear = Poly::new(field, vec![field.neg(c), field.one()]);
            while !rem.is_constant() && rem.evaluate(c).is_zero() {
                rem = rem.div_exact(&linear)?;
                mult += 1;
            }
            if mult > 0 {
                out.push(InitialTerm {
                    degree: deg,
                    coeff: Some(c),
                    multiplicity: mult,
                    status: RootStatus::Certified,
                });
            }
        }
        if rem.degree() > Some(0) {
            out.push(InitialTerm {
                degree: deg,
                coeff: None,
                multiplicity: rem.degree().unwrap() as usize,
                status: RootStatus::RequiresExtension,
            });
        }
    }
    Ok(out)
}

/// Degrees gamma({w_1^m + ... + w_r^m}) of the fractional parts of power
/// sums, for m = 1..=m_max. `None` entries are exactly zero. Errors when the
/// truncations are too short to pin an entry down.
pub fn power_sum_fractional_degrees(
    roots: &[LaurentSeries],
    m_max: usize,
) -> Result<Vec<Degree>> {
    let field = roots
        .first()
        .map(|r| r.field().clone())
        .ok_or_else(|| Error::HypothesisViolation("trace profile needs at least one root".into()))?;
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let mut s = LaurentSeries::zero(&field);
        for r in roots {
            s = s.add(&r.pow(m as u64));
        }
        let (_, frac) = s.split().map_err(|_| {
            Error::PrecisionInsufficient(format!("polynomial part of the power sum at m = {m}"))
        })?;
        match frac.degree() {
            Some(g) => out.push(Some(g)),
            None if frac.is_exact() => out.push(None),
            None => {
                return Err(Error::PrecisionInsufficient(format!(
                    "fractional part of the power sum at m = {m}"
                )))
            }
        }
    }
    Ok(out)
}

/// Degrees gamma({sum of m-th powers of the dominant roots}) of monic
/// Lambda for m = 1..=m_max, where "dominant" means degree >= 1. The roots
/// are expanded to `prec` certified coefficients first; `prec` must be
/// generous enough that every power sum's fractional part is pinned down.
pub fn fractional_trace_profile(
    lam: &BivarPoly,
    m_max: usize,
    prec: usize,
) -> Result<Vec<Degree>> {
    let exps = expand_all(lam, prec)?;
    let mut dominant = Vec::new();
    for e in &exps {
        let deg = match e.degree {
            Some(d) => d,
            None => continue,
        };
        if deg <= Rational::integer(0) {
            continue;
        }
        match e.status {
            RootStatus::Exact | RootStatus::Certified => {
                dominant.push(e.series.clone());
            }
            RootStatus::RequiresRamification | RootStatus::RequiresExtension => {
                return Err(Error::ExtensionRequired);
            }
        }
    }
    if dominant.is_empty() {
        return Err(Error::HypothesisViolation(
            "trace profile needs at least one root of positive degree".into(),
        ));
    }
    power_sum_fractional_degrees(&dominant, m_max)
}

/// Polynomial parts of the dominant 2-Salem pair of a member of T2'.
///
/// In the cases with deg lambda_{n-2} > 2 deg lambda_{n-1} the pair has
/// degree s = deg(lambda_{n-2})/2 on both sides and the coefficients obey a
/// division-free recurrence seeded by a square root of the negated leading
/// coefficient; only the constant terms need the expansion itself, because
/// unit roots contribute constants to lambda_{n-1}. Every recovered
/// coefficient is cross-checked against the expansion. In the remaining
/// case the parts are read off the certified expansions directly.
pub fn polynomial_part_pair(lam: &BivarPoly) -> Result<(Poly, Poly)> {
    let field = lam.field().clone();
    let n = lam.degree_y().unwrap_or(0);
    let verdict = t2prime_test(lam)?;
    let (case, witness) = match verdict {
        T2Verdict::InT2Prime { case, witness } => (case, witness),
        other => {
            return Err(Error::HypothesisViolation(format!(
                "polynomial parts are defined for members of T2' only, got {other:?}"
            )))
        }
    };
    let d2 = lam.coeff(n - 2).degree().unwrap();
    if case == T2Case::III {
        // dominant degrees deg lambda_{n-1} and d2 - deg lambda_{n-1}
        let prec = d2 as usize + 2;
        let exps = expand_all(lam, prec)?;
        let mut dominant: Vec<&RootExpansion> = exps
            .iter()
            .filter(|e| {
                matches!(e.status, RootStatus::Certified | RootStatus::Exact)
                    && e.degree.map(|r| r > Rational::integer(0)) == Some(true)
            })
            .collect();
        dominant.sort_by(|a, b| b.degree.unwrap().cmp(&a.degree.unwrap()));
        if dominant.len() != 2 {
            return Err(Error::ExtensionRequired);
        }
        let p1 = dominant[0].series.split()?.0;
        let p2 = dominant[1].series.split()?.0;
        return Ok((p1, p2));
    }
    let s = (d2 / 2) as usize;
    let a = witness.expect("cases I and II carry a witness");
    let inv_a = field.inv(a)?;
    let inv2 = field.inv(field.elem(2))?;
    let alpha = lam.coeff(n - 2);
    let beta = lam.coeff(n - 1);
    let mut av = vec![Fe::ZERO; s + 1];
    let mut bv = vec![Fe::ZERO; s + 1];
    av[s] = a;
    bv[s] = field.neg(a);
    for i in 1..s {
        let mut dsum = Fe::ZERO;
        for j in 1..i {
            dsum = field.add(dsum, field.mul(av[s - j], bv[s - i + j]));
        }
        let diff = field.mul(inv_a, field.sub(alpha.coeff(2 * s - i), dsum));
        let sum = field.neg(beta.coeff(s - i));
        av[s - i] = field.mul(field.sub(sum, diff), inv2);
        bv[s - i] = field.mul(field.add(sum, diff), inv2);
    }
    // constant terms come from the expansion; unit roots make them invisible
    // to the coefficient recurrence
    let exps = expand_all(lam, s + 2)?;
    let dominant: Vec<&RootExpansion> = exps
        .iter()
        .filter(|e| {
            matches!(e.status, RootStatus::Certified | RootStatus::Exact)
                && e.degree == Some(Rational::integer(s as i64))
        })
        .collect();
    if dominant.len() != 2 {
        return Err(Error::Inconsistency(format!(
            "expected 2 certified roots of degree {s}, found {}",
            dominant.len()
        )));
    }
    let p1 = dominant[0].series.split()?.0;
    let p2 = dominant[1].series.split()?.0;
    let (pa, pb) = if p1.lc() == a {
        (p1, p2)
    } else {
        (p2, p1)
    };
    if pa.lc() != a || pb.lc() != field.neg(a) {
        return Err(Error::Inconsistency(
            "dominant pair leading coefficients do not match the witness".into(),
        ));
    }
    av[0] = pa.coeff(0);
    bv[0] = pb.coeff(0);
    for i in 1..=s {
        if pa.coeff(i) != av[i] || pb.coeff(i) != bv[i] {
            return Err(Error::Inconsistency(format!(
                "recurrence and expansion disagree at X^{i}"
            )));
        }
    }
    Ok((Poly::new(&field, av), Poly::new(&field, bv)))
}
