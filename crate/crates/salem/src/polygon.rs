//! Upper Newton polygons of monic polynomials in Y over F_q[X].
//!
//! The polygon is the upper convex hull of the points (i, deg lambda_i).
//! Its facets have strictly decreasing exact-rational slopes; a facet of
//! slope k and horizontal length s accounts for exactly s roots of degree
//! -k in 1/X (counted with multiplicity) in a splitting field.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::field::Fe;
use crate::algebra::poly::{Degree, Poly};
use crate::bivar::BivarPoly;
use crate::error::{Error, Result};

/// Exact rational number with a positive denominator, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Rational { num: sign * num / g, den: sign * den / g }
    }

    pub fn integer(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn neg(&self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// One edge of the upper hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub slope: Rational,
    /// Horizontal length: the number of roots this facet accounts for.
    pub length: i64,
    pub left: (i64, i64),
    pub right: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// (i, deg lambda_i) for the nonzero coefficients.
    pub points: Vec<(i64, i64)>,
    /// Hull vertices, left to right.
    pub vertices: Vec<(i64, i64)>,
    /// Facets with strictly decreasing slopes, left to right.
    pub facets: Vec<Facet>,
    /// Multiplicity of the root 0, i.e. the index of the first nonzero
    /// coefficient. The polygon spans the remaining indices.
    pub zero_roots: usize,
}

/// 2D cross product (b - a) x (c - a); positive for a left turn.
fn cross(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i128 {
    (b.0 - a.0) as i128 * (c.1 - a.1) as i128 - (b.1 - a.1) as i128 * (c.0 - a.0) as i128
}

/// Upper convex hull of points sorted by strictly increasing x.
pub fn upper_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// Facets between consecutive hull vertices, left to right.
pub fn facets_of(vertices: &[(i64, i64)]) -> Vec<Facet> {
    vertices
        .windows(2)
        .map(|w| Facet {
            slope: Rational::new(w[1].1 - w[0].1, w[1].0 - w[0].0),
            length: w[1].0 - w[0].0,
            left: w[0],
            right: w[1],
        })
        .collect()
}

impl NewtonPolygon {
    pub fn build(lam: &BivarPoly) -> Result<NewtonPolygon> {
        let n = lam.degree_y().ok_or(Error::DivisionByZero)?;
        if !lam.is_monic() {
            return Err(Error::HypothesisViolation(
                "Newton polygon expects a monic polynomial in Y".into(),
            ));
        }
        let mut zero_roots = 0usize;
        while lam.coeff(zero_roots).is_zero() {
            zero_roots += 1;
        }
        let mut points = Vec::new();
        for i in zero_roots..=n {
            if let Some(d) = lam.coeff(i).degree() {
                points.push((i as i64, d));
            }
        }
        let hull = upper_hull(&points);
        let facets = facets_of(&hull);
        Ok(NewtonPolygon { points, vertices: hull, facets, zero_roots })
    }

    /// Root degrees in a splitting field: (-slope, length) per facet. The
    /// facets have strictly decreasing slopes, so the degrees come out
    /// strictly increasing. A root at 0 has no finite degree, hence the
    /// lambda_0 != 0 requirement.
    pub fn root_degree_profile(&self) -> Result<Vec<(Rational, i64)>> {
        if self.zero_roots > 0 {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(self.facets.iter().map(|f| (f.slope.neg(), f.length)).collect())
    }

    /// Edge polynomial of a facet with integer slope: e(t) = sum_j c_j t^j
    /// over j = 0..=length, where c_j is the leading coefficient of
    /// lambda_{r+j} when the point (r+j, deg lambda_{r+j}) lies on the facet
    /// line and 0 when it lies below. Its roots in F_q* are the leading
    /// coefficients of the series roots attached to this facet.
    pub fn edge_polynomial(&self, facet: &Facet, lam: &BivarPoly) -> Result<Poly> {
        if !facet.slope.is_integer() {
            return Err(Error::NonIntegerSlope);
        }
        let field = lam.field();
        let k = facet.slope.num;
        let r = facet.left.0;
        let mut coeffs = Vec::with_capacity(facet.length as usize + 1);
        for j in 0..=facet.length {
            let i = (r + j) as usize;
            let line_height = facet.left.1 + k * j;
            let c = lam.coeff(i);
            let on_line = c.degree() == Degree::Some(line_height);
            coeffs.push(if on_line { c.lc() } else { Fe::ZERO });
        }
        Ok(Poly::new(field, coeffs))
    }
}
