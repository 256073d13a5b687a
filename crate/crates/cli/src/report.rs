//! JSON documents for the analyze and verify subcommands. Keys serialize in
//! sorted order and floats in shortest round-trip form, so identical inputs
//! give byte-identical output.

use chebdyn_core::fixed::{
    Classification, CriticalCategory, CriticalPointRecord, FixedPointRecord, PointKind,
};
use chebdyn_core::maps::InfinitySeries;
use chebdyn_core::rational::{MapValue, RationalMap};
use chebdyn_core::verify::ClaimReport;
use num_complex::Complex64;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn coeffs(cs: &[Complex64]) -> Value {
    Value::Array(cs.iter().copied().map(complex).collect())
}

fn location(v: MapValue) -> Value {
    match v {
        MapValue::Finite(z) => complex(z),
        MapValue::Infinity => Value::String(String::from("infinity")),
    }
}

fn classification_label(c: Classification) -> &'static str {
    match c {
        Classification::Superattracting => "superattracting",
        Classification::Attracting => "attracting",
        Classification::Parabolic => "parabolic",
        Classification::Repelling => "repelling",
        Classification::NeutralIrrational => "neutral",
    }
}

fn kind_label(k: PointKind) -> &'static str {
    match k {
        PointKind::RootOfP => "root-of-p",
        PointKind::Extraneous => "extraneous",
        PointKind::Infinity => "infinity",
    }
}

fn category_label(c: CriticalCategory) -> &'static str {
    match c {
        CriticalCategory::ZeroOfP => "zero-of-p",
        CriticalCategory::Pole => "pole",
        CriticalCategory::Free(_) => "free",
    }
}

pub fn analysis_document(
    p: &[Complex64],
    q: &[Complex64],
    map: &RationalMap,
    fixed: &[FixedPointRecord],
    critical: &[CriticalPointRecord],
    series: Option<&InfinitySeries>,
) -> Value {
    let fixed_rows: Vec<Value> = fixed
        .iter()
        .map(|r| {
            json!({
                "location": location(r.location),
                "multiplier": complex(r.multiplier),
                "multiplicity": r.multiplicity,
                "kind": kind_label(r.kind),
                "classification": classification_label(r.classification),
            })
        })
        .collect();
    let critical_rows: Vec<Value> = critical
        .iter()
        .map(|r| {
            json!({
                "location": complex(r.location),
                "multiplicity": r.multiplicity,
                "category": category_label(r.category),
            })
        })
        .collect();
    let series_value = match series {
        Some(s) => json!({
            "coefficients": coeffs(&s.coeffs),
            "multiplicity": s.multiplicity,
        }),
        None => Value::Null,
    };
    json!({
        "schema_version": SCHEMA_VERSION,
        "input": { "p": coeffs(p), "q": coeffs(q) },
        "map": {
            "degree": map.degree(),
            "num": coeffs(map.num().coeffs()),
            "den": coeffs(map.den().coeffs()),
        },
        "fixed_points": fixed_rows,
        "critical_points": critical_rows,
        "series_at_infinity": series_value,
    })
}

pub fn verify_document(reports: &[ClaimReport]) -> Value {
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "n": r.n,
                "verdict": r.verdict.as_str(),
                "detail": r.detail,
            })
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "reports": rows,
    })
}
