//! Versioned JSON formats for quivers, modules, labels and samples.
//!
//! Vertices are 1-based in every file. Scalars are strings: `"p/q"` (or an
//! integer) over the rationals, `"r mod p"` over a prime field. Matrices
//! are lists of rows; a matrix with no entries is written `{"shape":[r,c]}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::components::GenericSample;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{AlgebraKind, AlgebraPresentation, Arrow, DimVector, DynkinType, Quiver};
use crate::rep::Representation;
use crate::roots::{ComponentLabel, RootSystem};

pub const FORMAT: u64 = 1;

fn bad(at: &str, what: impl std::fmt::Display) -> Error {
    Error::Input(format!("{at}: {what}"))
}

fn check_format(v: &Value, at: &str) -> Result<()> {
    match v.get("format") {
        None => Ok(()),
        Some(Value::Number(n)) if n.as_u64() == Some(FORMAT) => Ok(()),
        Some(other) => Err(bad(&format!("{at}.format"), format!("unsupported format {other}"))),
    }
}

fn field_of<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(at, format!("missing field {key:?}")))
}

fn as_u64(v: &Value, at: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| bad(at, "expected a natural number"))
}

fn as_u64_vec(v: &Value, at: &str) -> Result<Vec<u64>> {
    v.as_array()
        .ok_or_else(|| bad(at, "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| as_u64(x, &format!("{at}[{i}]")))
        .collect()
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    if let Some(ty) = q.preset() {
        if *q == Quiver::dynkin(ty).expect("preset type is valid") {
            return json!({"format": FORMAT, "type": ty.to_string()});
        }
    }
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| json!({"id": a.id, "s": a.source + 1, "e": a.target + 1}))
        .collect();
    json!({"format": FORMAT, "type": "explicit", "vertices": q.vertex_count(), "arrows": arrows})
}

pub fn quiver_from_json(v: &Value, at: &str) -> Result<Quiver> {
    if let Some(s) = v.as_str() {
        return Quiver::dynkin(s.parse().map_err(|e| bad(at, e))?);
    }
    check_format(v, at)?;
    let ty = field_of(v, "type", at)?
        .as_str()
        .ok_or_else(|| bad(&format!("{at}.type"), "expected a string"))?;
    if ty != "explicit" {
        let ty: DynkinType = ty.parse().map_err(|e| bad(&format!("{at}.type"), e))?;
        return Quiver::dynkin(ty);
    }
    let n = as_u64(field_of(v, "vertices", at)?, &format!("{at}.vertices"))? as usize;
    let arrows = field_of(v, "arrows", at)?
        .as_array()
        .ok_or_else(|| bad(&format!("{at}.arrows"), "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let here = format!("{at}.arrows[{i}]");
            let id = field_of(a, "id", &here)?
                .as_str()
                .ok_or_else(|| bad(&here, "id must be a string"))?;
            let s = as_u64(field_of(a, "s", &here)?, &format!("{here}.s"))? as usize;
            let e = as_u64(field_of(a, "e", &here)?, &format!("{here}.e"))? as usize;
            if s == 0 || e == 0 {
                return Err(bad(&here, "vertices are numbered from 1"));
            }
            Ok(Arrow {
                id: id.into(),
                source: s - 1,
                target: e - 1,
            })
        })
        .collect::<Result<_>>()?;
    Quiver::new(n, arrows).map_err(|e| bad(at, e))
}

fn algebra_to_json(alg: &AlgebraPresentation) -> Value {
    let kind = match alg.kind {
        AlgebraKind::Path => "path",
        AlgebraKind::Preprojective => "preprojective",
    };
    json!({"kind": kind, "quiver": quiver_to_json(&alg.base)})
}

/// Accepts `{"kind":..,"quiver":..}` or the shorthand `"preprojective:A5"` /
/// `"path:A5"`.
fn algebra_from_json(v: &Value, at: &str) -> Result<AlgebraPresentation> {
    let (kind, q) = match v {
        Value::String(s) => {
            let (k, t) = s
                .split_once(':')
                .ok_or_else(|| bad(at, "expected KIND:TYPE, e.g. preprojective:A5"))?;
            (k.to_string(), quiver_from_json(&Value::String(t.into()), at)?)
        }
        _ => {
            let k = field_of(v, "kind", at)?
                .as_str()
                .ok_or_else(|| bad(&format!("{at}.kind"), "expected a string"))?;
            (k.to_string(), quiver_from_json(field_of(v, "quiver", at)?, &format!("{at}.quiver"))?)
        }
    };
    match kind.as_str() {
        "path" => Ok(AlgebraPresentation::path_algebra(q)),
        "preprojective" => AlgebraPresentation::preprojective(q).map_err(|e| bad(at, e)),
        other => Err(bad(&format!("{at}.kind"), format!("unknown algebra kind {other:?}"))),
    }
}

fn scalar_from_json(field: Field, v: &Value, at: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse(s).map_err(|e| match e {
            Error::FieldMismatch(m) => Error::FieldMismatch(format!("{at}: {m}")),
            other => bad(at, other),
        }),
        Value::Number(n) => n
            .as_i64()
            .map(|k| field.from_i64(k))
            .ok_or_else(|| bad(at, "numbers must be integers; write fractions as strings")),
        _ => Err(bad(at, "expected a scalar")),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    if m.rows() == 0 || m.cols() == 0 {
        return json!({"shape": [m.rows(), m.cols()]});
    }
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn matrix_from_json(field: Field, v: &Value, shape: (usize, usize), at: &str) -> Result<Matrix> {
    if let Some(s) = v.get("shape") {
        let s = as_u64_vec(s, &format!("{at}.shape"))?;
        if s.len() != 2 || (s[0] as usize, s[1] as usize) != shape {
            return Err(Error::DimensionMismatch(format!("{at}: shape {s:?}, expected {shape:?}")));
        }
        if shape.0 * shape.1 != 0 {
            return Err(bad(at, "only empty matrices may be given by shape"));
        }
        return Ok(Matrix::zeros(field, shape.0, shape.1));
    }
    let rows = v.as_array().ok_or_else(|| bad(at, "expected a list of rows"))?;
    if rows.len() != shape.0 {
        return Err(Error::DimensionMismatch(format!("{at}: {} rows, expected {}", rows.len(), shape.0)));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let r = r.as_array().ok_or_else(|| bad(&format!("{at}[{i}]"), "expected a row"))?;
            if r.len() != shape.1 {
                return Err(Error::DimensionMismatch(format!(
                    "{at}[{i}]: {} entries, expected {}",
                    r.len(),
                    shape.1
                )));
            }
            r.iter()
                .enumerate()
                .map(|(j, x)| scalar_from_json(field, x, &format!("{at}[{i}][{j}]")))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_rows(field, shape.1, rows))
}

pub fn module_to_json(m: &Representation) -> Value {
    let mats: Map<String, Value> = m
        .algebra()
        .arrows()
        .iter()
        .zip(m.mats())
        .map(|(a, x)| (a.id.clone(), matrix_to_json(x)))
        .collect();
    json!({
        "format": FORMAT,
        "algebra": algebra_to_json(m.algebra()),
        "field": m.field().to_string(),
        "dims": m.dims().0,
        "mats": mats,
    })
}

/// Reads a module; arrows missing from `"mats"` act by zero. Relations are
/// checked.
pub fn module_from_json(v: &Value) -> Result<Representation> {
    check_format(v, "module")?;
    let alg = Arc::new(algebra_from_json(field_of(v, "algebra", "module")?, "module.algebra")?);
    let field: Field = field_of(v, "field", "module")?
        .as_str()
        .ok_or_else(|| bad("module.field", "expected a string"))?
        .parse()
        .map_err(|e| bad("module.field", e))?;
    let dims = DimVector(as_u64_vec(field_of(v, "dims", "module")?, "module.dims")?);
    if dims.len() != alg.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "module.dims: {} entries for {} vertices",
            dims.len(),
            alg.vertex_count()
        )));
    }
    let given = match v.get("mats") {
        None => BTreeMap::new(),
        Some(Value::Object(o)) => o.iter().map(|(k, x)| (k.clone(), x)).collect(),
        Some(_) => return Err(bad("module.mats", "expected an object keyed by arrow id")),
    };
    for k in given.keys() {
        if alg.quiver.arrow_index(k).is_none() {
            return Err(bad("module.mats", format!("unknown arrow {k:?}")));
        }
    }
    let mats = alg
        .arrows()
        .iter()
        .map(|a| {
            let shape = (dims[a.source] as usize, dims[a.target] as usize);
            match given.get(&a.id) {
                Some(x) => matrix_from_json(field, x, shape, &format!("module.mats.{}", a.id)),
                None => Ok(Matrix::zeros(field, shape.0, shape.1)),
            }
        })
        .collect::<Result<_>>()?;
    let m = Representation::new(alg, field, dims, mats)?;
    if !m.check_relations() {
        return Err(bad("module.mats", "matrices violate the relations of the algebra"));
    }
    Ok(m)
}

pub fn label_to_json(rs: &RootSystem, alpha: &ComponentLabel) -> Value {
    json!({"format": FORMAT, "type": rs.dynkin_type().to_string(), "alpha": alpha.0})
}

/// Reads `{"type":..,"alpha":[..]}` or a bare array.
pub fn label_from_json(rs: &RootSystem, v: &Value, at: &str) -> Result<ComponentLabel> {
    let alpha = match v {
        Value::Array(_) => as_u64_vec(v, at)?,
        _ => {
            check_format(v, at)?;
            if let Some(t) = v.get("type") {
                let t = t.as_str().unwrap_or_default();
                if t != rs.dynkin_type().to_string() {
                    return Err(bad(&format!("{at}.type"), format!("label for {t}, expected {}", rs.dynkin_type())));
                }
            }
            as_u64_vec(field_of(v, "alpha", at)?, &format!("{at}.alpha"))?
        }
    };
    let l = ComponentLabel(alpha);
    rs.check_label(&l).map_err(|e| bad(at, e))?;
    Ok(l)
}

/// Parses a label given on the command line: a JSON array of length `N`,
/// interval sums such as `[1,2]+[2,4]` (type `A`), or a JSON label object.
pub fn parse_label_arg(rs: &RootSystem, s: &str) -> Result<ComponentLabel> {
    let t = s.trim();
    if let Ok(v) = serde_json::from_str::<Value>(t) {
        if v.is_object() || v.as_array().is_some_and(|a| a.len() == rs.len()) {
            return label_from_json(rs, &v, "label");
        }
    }
    let mut intervals = Vec::new();
    for part in t.split('+') {
        let p = part.trim();
        let inner = p
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| bad("label", format!("cannot read {p:?}")))?;
        let (i, j) = inner
            .split_once(',')
            .ok_or_else(|| bad("label", format!("cannot read {p:?}")))?;
        let i: usize = i.trim().parse().map_err(|_| bad("label", format!("cannot read {p:?}")))?;
        let j: usize = j.trim().parse().map_err(|_| bad("label", format!("cannot read {p:?}")))?;
        intervals.push((i, j));
    }
    if !matches!(rs.dynkin_type(), DynkinType::A(_)) {
        return Err(bad("label", "interval notation needs type A"));
    }
    rs.interval_label(&intervals).map_err(|e| bad("label", e))
}

pub fn sample_to_json(rs: &RootSystem, s: &GenericSample) -> Value {
    let mut v = module_to_json(&s.module);
    let o = v.as_object_mut().unwrap();
    o.insert("label".into(), label_to_json(rs, &s.label));
    o.insert("seed".into(), json!(s.seed));
    o.insert("stream".into(), json!(s.stream));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leclerc::build_fixture;
    use num_rational::BigRational;

    #[test]
    fn module_round_trip() {
        let fx = build_fixture(&BigRational::new(7.into(), 3.into())).unwrap();
        let v = module_to_json(&fx.m_lambda);
        let back = module_from_json(&v).unwrap();
        assert_eq!(back, fx.m_lambda);
        assert_eq!(v["mats"]["abar2"][0], json!(["1", "7/3"]));
    }

    #[test]
    fn empty_matrices_carry_their_shape() {
        let rs = RootSystem::of_type(DynkinType::A(3)).unwrap();
        let m = rs.root_module(0, Field::Rationals).unwrap();
        let v = module_to_json(&m);
        assert_eq!(v["mats"]["a1"], json!({"shape": [0, 1]}));
        assert_eq!(module_from_json(&v).unwrap(), m);
    }

    #[test]
    fn explicit_quiver_round_trip() {
        let q = Quiver::dynkin_oriented(DynkinType::D(4), &[true, false, true]).unwrap();
        let v = quiver_to_json(&q);
        assert_eq!(v["type"], "explicit");
        let back = quiver_from_json(&v, "q").unwrap();
        assert_eq!(back.arrows(), q.arrows());
    }

    #[test]
    fn errors_name_their_location() {
        let v = json!({"format": 1, "algebra": "preprojective:A2", "field": "Q", "dims": [1, 1],
                       "mats": {"a1": [["x"]]}});
        let e = module_from_json(&v).unwrap_err().to_string();
        assert!(e.contains("module.mats.a1[0][0]"), "{e}");
        let v = json!({"format": 2, "algebra": "path:A2", "field": "Q", "dims": [1, 1]});
        assert!(module_from_json(&v).unwrap_err().to_string().contains("format"));
    }

    #[test]
    fn labels_from_arguments() {
        let rs = RootSystem::of_type(DynkinType::A(5)).unwrap();
        let a = parse_label_arg(&rs, "[1,2]+[2,4]+[3,3]+[4,5]").unwrap();
        assert_eq!(a.0, crate::leclerc::ALPHA);
        let b = parse_label_arg(&rs, "[0,1,0,0,0,0,0,1,0,1,0,0,0,1,0]").unwrap();
        assert_eq!(a, b);
        let c = parse_label_arg(&rs, r#"{"type":"A5","alpha":[0,1,0,0,0,0,0,1,0,1,0,0,0,1,0]}"#).unwrap();
        assert_eq!(a, c);
        assert!(parse_label_arg(&rs, "[1,7]").is_err());
    }
}
