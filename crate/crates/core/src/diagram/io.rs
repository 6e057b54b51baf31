//! JSON diagram files.
//!
//! ```text
//! { "surface": {"kind": "torus" | "annulus" | {"disk": m}},
//!   "crossings": [{"id": c}, ...],
//!   "edges": [{"id": e, "tail": [c, port] | ["bnd", k], "head": ..., "h": [a, b] | a | null}, ...],
//!   "free_loops": [[a, b] | a | null, ...],
//!   "marked": [c, ...] | "all" }
//! ```
//!
//! Ports run counterclockwise with the over-strand on ports 0 and 2. Edge
//! labels are the homology class traversed from tail to head: `null` on the
//! disk, a winding number on the annulus, a pair on the torus.

use std::path::Path;

use serde_json::{json, Value};

use super::{Edge, Endpoint, MarkedDiagram};
use crate::surface::{HomologyClass, SurfaceSpec};
use crate::{Error, Result};

fn malformed<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::MalformedDiagram(msg.into()))
}

fn as_u32(v: &Value, what: &str) -> Result<u32> {
    match v.as_u64().and_then(|x| u32::try_from(x).ok()) {
        Some(x) => Ok(x),
        None => malformed(format!("{what}: expected a non-negative integer, got {v}")),
    }
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    match v.as_i64() {
        Some(x) => Ok(x),
        None => malformed(format!("{what}: expected an integer, got {v}")),
    }
}

fn parse_surface(v: &Value) -> Result<SurfaceSpec> {
    let kind = v.get("kind").ok_or_else(|| Error::MalformedDiagram("surface needs a kind".into()))?;
    match kind {
        Value::String(s) if s == "torus" => Ok(SurfaceSpec::Torus),
        Value::String(s) if s == "annulus" => Ok(SurfaceSpec::Annulus),
        Value::Object(m) if m.contains_key("disk") => Ok(SurfaceSpec::Disk(as_u32(&m["disk"], "disk")?)),
        other => malformed(format!("unknown surface kind {other}")),
    }
}

fn parse_endpoint(v: &Value) -> Result<Endpoint> {
    match v.as_array().map(Vec::as_slice) {
        Some([Value::String(tag), k]) if tag == "bnd" => Ok(Endpoint::Boundary(as_u32(k, "boundary point")?)),
        Some([c, p]) => {
            let port = as_u32(p, "port")?;
            if port > 3 {
                return malformed(format!("port {port} out of range"));
            }
            Ok(Endpoint::port(as_u32(c, "crossing")?, port as u8))
        }
        _ => malformed(format!("bad endpoint {v}")),
    }
}

fn parse_class(v: &Value, surface: SurfaceSpec) -> Result<HomologyClass> {
    let h = match v {
        Value::Null => HomologyClass::Null,
        Value::Array(xs) if xs.len() == 2 => HomologyClass::Pair(as_i64(&xs[0], "label")?, as_i64(&xs[1], "label")?),
        Value::Number(_) => HomologyClass::Winding(as_i64(v, "label")?),
        _ => return malformed(format!("bad homology label {v}")),
    };
    if !surface.accepts(&h) {
        return malformed(format!("label {v} does not fit surface {surface:?}"));
    }
    Ok(h)
}

fn render_class(h: &HomologyClass) -> Value {
    match h {
        HomologyClass::Null => Value::Null,
        HomologyClass::Winding(w) => json!(w),
        HomologyClass::Pair(a, b) => json!([a, b]),
    }
}

fn render_endpoint(e: &Endpoint) -> Value {
    match e {
        Endpoint::Port { crossing, port } => json!([crossing, port]),
        Endpoint::Boundary(k) => json!(["bnd", k]),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::MalformedDiagram(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    match v.get(key) {
        Some(Value::Array(xs)) => Ok(xs),
        Some(_) => malformed(format!("{key:?} must be a list")),
        None => malformed(format!("missing field {key:?}")),
    }
}

pub fn from_value(v: &Value) -> Result<MarkedDiagram> {
    let surface = parse_surface(field(v, "surface")?)?;
    let crossings = array(v, "crossings")?
        .iter()
        .map(|c| as_u32(field(c, "id")?, "crossing id"))
        .collect::<Result<Vec<_>>>()?;
    let edges = array(v, "edges")?
        .iter()
        .map(|e| {
            Ok(Edge {
                id: as_u32(field(e, "id")?, "edge id")?,
                tail: parse_endpoint(field(e, "tail")?)?,
                head: parse_endpoint(field(e, "head")?)?,
                h: parse_class(e.get("h").unwrap_or(&Value::Null), surface)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let loops = match v.get("free_loops") {
        None => vec![],
        Some(_) => array(v, "free_loops")?.iter().map(|h| parse_class(h, surface)).collect::<Result<_>>()?,
    };
    let marked = match v.get("marked") {
        None => None,
        Some(Value::String(s)) if s == "all" => None,
        Some(Value::Array(xs)) => Some(xs.iter().map(|c| as_u32(c, "marked id")).collect::<Result<_>>()?),
        Some(other) => return malformed(format!("bad marked set {other}")),
    };
    MarkedDiagram::new(surface, crossings, edges, loops, marked)
}

pub fn to_value(d: &MarkedDiagram) -> Value {
    let surface = match d.surface() {
        SurfaceSpec::Torus => json!({"kind": "torus"}),
        SurfaceSpec::Annulus => json!({"kind": "annulus"}),
        SurfaceSpec::Disk(m) => json!({"kind": {"disk": m}}),
    };
    let marked = if d.is_real() { json!("all") } else { json!(d.marked()) };
    json!({
        "surface": surface,
        "crossings": d.crossings().iter().map(|c| json!({"id": c})).collect::<Vec<_>>(),
        "edges": d.edges().map(|e| json!({
            "id": e.id,
            "tail": render_endpoint(&e.tail),
            "head": render_endpoint(&e.head),
            "h": render_class(&e.h),
        })).collect::<Vec<_>>(),
        "free_loops": d.free_loops().iter().map(render_class).collect::<Vec<_>>(),
        "marked": marked,
    })
}

pub fn parse_diagram(text: &str) -> Result<MarkedDiagram> {
    from_value(&serde_json::from_str(text)?)
}

pub fn render_diagram(d: &MarkedDiagram) -> String {
    serde_json::to_string_pretty(&to_value(d)).expect("diagram values serialize")
}

pub fn read_diagram(path: &Path) -> Result<MarkedDiagram> {
    parse_diagram(&std::fs::read_to_string(path)?)
}

pub fn write_diagram(path: &Path, d: &MarkedDiagram) -> Result<()> {
    std::fs::write(path, render_diagram(d) + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{disk_braid, from_braid, kink_chain, superpose, torus_multicurve, ProductMode};

    #[test]
    fn round_trips() {
        let a = torus_multicurve(1, 1, 0).unwrap();
        let b = torus_multicurve(2, 1, 1).unwrap();
        let samples = vec![
            from_braid(3, &[1, -2, 1]).unwrap(),
            disk_braid(2, &[1, 1]).unwrap(),
            kink_chain(3),
            superpose(&a, &b, ProductMode::Strong).unwrap(),
            superpose(&a, &b, ProductMode::Weak).unwrap(),
        ];
        for d in samples {
            assert_eq!(parse_diagram(&render_diagram(&d)).unwrap(), d);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_diagram("{").is_err());
        let text = r#"{"surface":{"kind":"annulus"},"crossings":[],"edges":[],"free_loops":[[1,0]],"marked":"all"}"#;
        assert!(matches!(parse_diagram(text), Err(Error::MalformedDiagram(_))));
    }
}
