//! Property-based invariants over randomly generated instances, with
//! proptest shrinking for debuggability. The high-volume (>= 10^4 case)
//! seeded suites live in the acceptance test target.

use proptest::prelude::*;

use salem::algebra::field::Field;
use salem::algebra::laurent::LaurentSeries;
use salem::algebra::poly::Poly;
use salem::bivar::BivarPoly;
use salem::cli::parser::parse_poly;
use salem::polygon::NewtonPolygon;

fn poly_strategy(q: u64, max_deg: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..q, 0..=max_deg + 1)
}

fn monic_bivar(field: &Field, coeff_ints: &[Vec<u64>]) -> BivarPoly {
    let mut coeffs: Vec<Poly> = coeff_ints
        .iter()
        .map(|c| Poly::new(field, c.iter().map(|&v| field.elem(v as i64)).collect()))
        .collect();
    coeffs.push(Poly::one(field));
    BivarPoly::new(field, coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn facet_lengths_and_weighted_slopes_telescope(
        coeffs in prop::collection::vec(poly_strategy(3, 4), 1..=5),
    ) {
        let f = Field::prime(3).unwrap();
        let lam = monic_bivar(&f, &coeffs);
        let n = lam.degree_y().unwrap() as i64;
        let np = NewtonPolygon::build(&lam).unwrap();
        let length_sum: i64 = np.facets.iter().map(|fc| fc.length).sum();
        prop_assert_eq!(length_sum, n - np.zero_roots as i64);
        // sum of length * (-slope) telescopes to the height of the first
        // nonzero coefficient
        let weighted: (i64, i64) = np.facets.iter().fold((0, 1), |acc, fc| {
            let s = fc.slope;
            // accumulate exactly over a common denominator
            let num = acc.0 * s.den - s.num * fc.length * acc.1;
            let den = acc.1 * s.den;
            (num, den)
        });
        let first_height = lam.coeff(np.zero_roots).degree().unwrap();
        prop_assert_eq!(weighted.0, first_height * weighted.1);
    }

    #[test]
    fn reciprocal_reverses_slopes(
        coeffs in prop::collection::vec(poly_strategy(3, 4), 1..=5),
    ) {
        use salem::polygon::{facets_of, upper_hull};
        let f = Field::prime(3).unwrap();
        let lam = monic_bivar(&f, &coeffs);
        prop_assume!(!lam.coeff(0).is_zero());
        let rec = lam.reciprocal().unwrap();
        let points = |p: &BivarPoly| -> Vec<(i64, i64)> {
            (0..=p.degree_y().unwrap())
                .filter_map(|i| p.coeff(i).degree().map(|d| (i as i64, d)))
                .collect()
        };
        let fwd: Vec<_> = facets_of(&upper_hull(&points(&lam)))
            .iter()
            .map(|fc| (fc.slope, fc.length))
            .collect();
        let mut rev: Vec<_> = facets_of(&upper_hull(&points(&rec)))
            .iter()
            .map(|fc| (fc.slope.neg(), fc.length))
            .collect();
        rev.reverse();
        prop_assert_eq!(fwd, rev);
    }

    #[test]
    fn strict_triangle_equality(
        a in poly_strategy(3, 6),
        b in poly_strategy(3, 6),
        shift_a in -4i64..4,
        shift_b in -4i64..4,
    ) {
        let f = Field::prime(3).unwrap();
        let pa = Poly::new(&f, a.iter().map(|&v| f.elem(v as i64)).collect());
        let pb = Poly::new(&f, b.iter().map(|&v| f.elem(v as i64)).collect());
        let sa = LaurentSeries::from_poly(&pa).shift(shift_a);
        let sb = LaurentSeries::from_poly(&pb).shift(shift_b);
        let sum = sa.add(&sb);
        let (da, db) = (sa.degree(), sb.degree());
        if da != db {
            prop_assert_eq!(sum.degree(), da.max(db));
        } else {
            prop_assert!(sum.degree() <= da);
        }
        // multiplicativity of the degree
        if da.is_some() && db.is_some() {
            prop_assert_eq!(sa.mul(&sb).degree(), Some(da.unwrap() + db.unwrap()));
        }
    }

    #[test]
    fn parser_round_trip(
        coeffs in prop::collection::vec(poly_strategy(5, 3), 1..=4),
    ) {
        let f = Field::prime(5).unwrap();
        let lam = monic_bivar(&f, &coeffs);
        let printed = format!("{lam}");
        let back = parse_poly(&printed, &f).unwrap();
        prop_assert_eq!(back, lam);
    }

    #[test]
    fn bivar_division_round_trip(
        a in prop::collection::vec(poly_strategy(3, 3), 1..=5),
        d in prop::collection::vec(poly_strategy(3, 3), 1..=3),
    ) {
        let f = Field::prime(3).unwrap();
        let lam = monic_bivar(&f, &a);
        let div = monic_bivar(&f, &d);
        let (q, r) = lam.divrem(&div).unwrap();
        prop_assert!(r.degree_y() < div.degree_y());
        prop_assert_eq!(q.mul(&div).add(&r), lam);
    }

    #[test]
    fn expansion_residuals_certify(
        coeffs in prop::collection::vec(poly_strategy(3, 3), 3..=4),
    ) {
        let f = Field::prime(3).unwrap();
        let lam = monic_bivar(&f, &coeffs);
        let prec = 10usize;
        if let Ok(exps) = salem::roots::expand_all(&lam, prec) {
            let deriv = lam.derivative_y();
            let n: usize = exps.iter().map(|e| e.multiplicity).sum();
            prop_assert_eq!(n, lam.degree_y().unwrap());
            for e in &exps {
                if e.status == salem::roots::RootStatus::Certified {
                    let val = lam.evaluate(&e.series);
                    let dv = deriv.evaluate(&e.series);
                    let d = e.series.degree().unwrap();
                    // residual gap certifies prec coefficients from the top
                    let gv = match val.degree() {
                        Some(g) => g,
                        None => continue, // residual vanishes to precision
                    };
                    prop_assert!(gv - dv.degree().unwrap() <= d - prec as i64);
                }
            }
        }
    }
}
