//! Report assembly. The JSON document is the single source of truth; the
//! text format is a rendering of it. Output is byte-deterministic for a
//! given input, flag set, and seed.

use conefaces::classes::ClassStructure;
use conefaces::orthantfaces::checkers::AssociationMargin;
use conefaces::orthantfaces::FaceClassification;
use conefaces::polycone::{GeneratorCone, PolyFaceClassification};
use conefaces::ratmath::{format_rational, RatMatrix, Rational};
use conefaces::spectra::{Radius, SpectralPair, ToleranceConfig};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub fn radius_json(r: &Radius, tol: &ToleranceConfig) -> Value {
    match r {
        Radius::Exact(x) => json!({ "value": format_rational(x), "exact": true }),
        Radius::Approx(v) => {
            json!({ "value": v, "exact": false, "error_bound": tol.rel_eps })
        }
    }
}

pub fn pair_json(p: &SpectralPair, tol: &ToleranceConfig) -> Value {
    json!({ "radius": radius_json(&p.radius, tol), "order": p.order })
}

pub fn rational_vector_json(v: &[Rational]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| Value::String(format_rational(x)))
            .collect(),
    )
}

pub fn indices_json(indices: &[usize]) -> Value {
    Value::Array(indices.iter().map(|&i| Value::from(i as u64 + 1)).collect())
}

pub fn matrix_json(m: &RatMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                m.row(i)
                    .iter()
                    .map(|x| Value::String(format_rational(x)))
                    .collect(),
            )
        })
        .collect();
    json!({ "n": m.rows(), "entries": rows })
}

pub fn cone_json(cone: Option<&GeneratorCone>) -> Value {
    match cone {
        None => json!({ "kind": "orthant" }),
        Some(k) => {
            let mut v = conefaces::polycone::cone_to_json(k);
            v["kind"] = Value::String("generators".into());
            v
        }
    }
}

pub fn classification_json(c: &FaceClassification, tol: &ToleranceConfig) -> Value {
    json!({
        "invariant": c.invariant,
        "minimal_nonzero": c.minimal_nonzero,
        "join_irreducible": c.join_irreducible,
        "relint_generalized_eigenvector": c.relint_gen_eigenvector,
        "relint_eigenvector": c.relint_eigenvector,
        "semi_distinguished": c.semi_distinguished,
        "distinguished": c.distinguished,
        "associated": radius_json(&c.associated, tol),
        "spectral_pair": pair_json(&c.spectral_pair, tol),
    })
}

fn opt_bool(v: Option<bool>) -> Value {
    match v {
        Some(b) => Value::Bool(b),
        None => Value::String("unsupported".into()),
    }
}

pub fn poly_classification_json(c: &PolyFaceClassification, tol: &ToleranceConfig) -> Value {
    json!({
        "invariant": c.invariant,
        "join_irreducible": c.join_irreducible,
        "relint_generalized_eigenvector": opt_bool(c.relint_gen_eigenvector),
        "relint_eigenvector": opt_bool(c.relint_eigenvector),
        "semi_distinguished": opt_bool(c.semi_distinguished),
        "distinguished": c.distinguished,
        "associated": radius_json(&c.associated, tol),
        "spectral_pair": pair_json(&c.spectral_pair, tol),
    })
}

pub fn margins_json(margins: &[AssociationMargin]) -> Value {
    Value::Array(
        margins
            .iter()
            .map(|m| json!({ "face": m.face, "margin": m.margin, "associated": m.associated }))
            .collect(),
    )
}

pub fn classes_payload(s: &ClassStructure, tol: &ToleranceConfig) -> Value {
    let classes: Vec<Value> = s
        .classes()
        .iter()
        .map(|c| {
            json!({
                "members": indices_json(&c.members),
                "radius": radius_json(&c.radius, tol),
                "basic": c.basic,
                "initial": c.initial,
                "final": c.is_final,
                "distinguished": c.distinguished,
                "semi_distinguished": c.semi_distinguished,
            })
        })
        .collect();
    let covers: Vec<Value> = s
        .access_covers()
        .iter()
        .map(|&(a, b)| json!([a, b]))
        .collect();
    json!({
        "spectral_radius": radius_json(s.spectral_radius(), tol),
        "classes": classes,
        "access_covers": covers,
    })
}

/// Full report envelope.
#[allow(clippy::too_many_arguments)]
pub fn envelope(
    command: &str,
    matrix: Option<&RatMatrix>,
    fixture: Option<&str>,
    cone: Option<&GeneratorCone>,
    cone_given: bool,
    tol: &ToleranceConfig,
    cap: usize,
    payload: Value,
    warnings: Vec<String>,
) -> Value {
    let mut input = serde_json::Map::new();
    if let Some(m) = matrix {
        input.insert("matrix".into(), matrix_json(m));
    }
    input.insert(
        "fixture".into(),
        fixture.map_or(Value::Null, |f| Value::String(f.into())),
    );
    input.insert(
        "cone".into(),
        if cone_given {
            cone_json(cone)
        } else {
            cone_json(None)
        },
    );
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": Value::Object(input),
        "tolerance": {
            "rel_eps": tol.rel_eps,
            "power_tol": tol.power_tol,
            "max_iters": tol.max_iters,
            "seed": tol.retry_seed,
        },
        "cap": cap,
        "payload": payload,
        "warnings": warnings,
    })
}

/// Plain-text rendering of the JSON report (line-oriented key paths).
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

fn walk(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let path = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                walk(&path, v, out);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|v| !v.is_object() && !v.is_array()) {
                let rendered: Vec<String> = items.iter().map(scalar_text).collect();
                out.push_str(&format!("{prefix} = [{}]\n", rendered.join(", ")));
            } else {
                for (i, v) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), v, out);
                }
            }
        }
        _ => out.push_str(&format!("{prefix} = {}\n", scalar_text(value))),
    }
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
