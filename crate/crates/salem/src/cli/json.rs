//! JSON rendering with stable field names for every CLI command.

use serde_json::{json, Map, Value};

use crate::algebra::field::Field;
use crate::algebra::laurent::{Floor, LaurentSeries};
use crate::bivar::BivarPoly;
use crate::classify::{ClassLabel, T2Case, T2Reason, T2Verdict};
use crate::irreducible::{Certificate, IrredVerdict};
use crate::polygon::{NewtonPolygon, Rational};
use crate::roots::{InitialTerm, RootExpansion, RootStatus};

pub fn field_json(field: &Field) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), json!(field.p()));
    m.insert("k".into(), json!(field.k()));
    if let Some(modulus) = field.modulus() {
        m.insert("modulus".into(), json!(modulus_text(modulus)));
    }
    Value::Object(m)
}

/// Modulus as an expression in X, constant coefficient first in storage.
fn modulus_text(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "X".into(),
            (1, c) => format!("{c}*X"),
            (i, 1) => format!("X^{i}"),
            (i, c) => format!("{c}*X^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

pub fn rational_json(r: Rational) -> Value {
    json!({ "num": r.num, "den": r.den })
}

pub fn polygon_json(np: &NewtonPolygon) -> Value {
    json!({
        "vertices": np.vertices.iter().map(|&(i, d)| json!([i, d])).collect::<Vec<_>>(),
        "facets": np.facets.iter().map(|f| json!({
            "slope": rational_json(f.slope),
            "length": f.length,
        })).collect::<Vec<_>>(),
        "zero_roots": np.zero_roots,
    })
}

pub fn class_label_str(label: ClassLabel) -> &'static str {
    match label {
        ClassLabel::Pisot => "pisot",
        ClassLabel::Salem => "salem",
        ClassLabel::Neither => "neither",
    }
}

pub fn verdict_json(v: &T2Verdict) -> Value {
    match v {
        T2Verdict::InT2Prime { case, witness } => {
            let mut m = Map::new();
            m.insert("status".into(), json!("in_t2prime"));
            m.insert(
                "case".into(),
                json!(match case {
                    T2Case::I => "i",
                    T2Case::II => "ii",
                    T2Case::III => "iii",
                }),
            );
            if let Some(w) = witness {
                m.insert("witness".into(), json!(format!("#{}", w.0)));
            }
            Value::Object(m)
        }
        T2Verdict::NotInT2Prime { reason } => json!({
            "status": "not_in_t2prime",
            "reason": match reason {
                T2Reason::Profile => "profile",
                T2Reason::OddDegree => "odd_degree",
                T2Reason::NonSquare => "non_square",
                T2Reason::LambdaNMinus3 => "lambda_n_minus_3",
            },
        }),
        T2Verdict::OutsideHypotheses { reason } => json!({
            "status": "outside_hypotheses",
            "reason": reason,
        }),
    }
}

pub fn root_status_str(s: RootStatus) -> &'static str {
    match s {
        RootStatus::Exact => "exact",
        RootStatus::Certified => "certified",
        RootStatus::RequiresRamification => "requires_ramification",
        RootStatus::RequiresExtension => "requires_extension",
    }
}

fn series_json(s: &LaurentSeries) -> (Value, Value, Value) {
    let (_, window) = s.window();
    let coeffs: Vec<Value> = window.iter().map(|c| json!(c.0)).collect();
    let leading = match s.degree() {
        Some(d) => json!(d),
        None => Value::Null,
    };
    let precision = match s.floor() {
        Floor::Exact => Value::Null,
        Floor::At(f) => json!(f),
    };
    (json!(coeffs), leading, precision)
}

pub fn expansion_json(e: &RootExpansion) -> Value {
    let (coefficients, leading_exponent, precision) = series_json(&e.series);
    json!({
        "degree": e.degree.map(rational_json).unwrap_or(Value::Null),
        "series": format!("{}", e.series),
        "leading_exponent": leading_exponent,
        "coefficients": coefficients,
        "precision": precision,
        "multiplicity": e.multiplicity,
        "status": root_status_str(e.status),
    })
}

pub fn expansions_json(exps: &[RootExpansion]) -> Value {
    Value::Array(exps.iter().map(expansion_json).collect())
}

pub fn initial_term_json(t: &InitialTerm) -> Value {
    json!({
        "degree": rational_json(t.degree),
        "coeff": t.coeff.map(|c| json!(format!("#{}", c.0))).unwrap_or(Value::Null),
        "multiplicity": t.multiplicity,
        "status": root_status_str(t.status),
    })
}

pub fn irreducibility_json(v: &IrredVerdict) -> Value {
    match v {
        IrredVerdict::IrreducibleByOddDegree => json!({"status": "irreducible_odd_degree"}),
        IrredVerdict::IrreducibleByDegreeChain => json!({"status": "irreducible_degree_chain"}),
        IrredVerdict::IrreducibleByOracle => json!({"status": "irreducible_oracle"}),
        IrredVerdict::ReducibleWithFactors(a, b) => json!({
            "status": "reducible",
            "factors": [format!("{a}"), format!("{b}")],
        }),
        IrredVerdict::Unknown => json!({"status": "unknown"}),
    }
}

pub fn certificate_json(cert: &Certificate) -> Value {
    json!({
        "profile": cert.profile,
        "verdict": verdict_json(&cert.membership),
        "irreducibility": irreducibility_json(&cert.irreducibility),
        "expansions": expansions_json(&cert.expansions),
        "power_candidate": cert.power_candidate,
        "certified": cert.certified,
    })
}

pub fn poly_json(lam: &BivarPoly) -> Value {
    json!(format!("{lam}"))
}
