//! JSON encodings. Rationals are strings (`"3"`, `"-1/2"`); integers are
//! also accepted on input.

use serde_json::{json, Map, Value};

use crate::cdg::{Cdg, Clustering};
use crate::circuits::Circuit;
use crate::ecw::{ConditionResult, RecognitionFailure, RecognitionResult};
use crate::error::{Error, Result};
use crate::exactla::{parse_rational, RatMatrix, RatVector, Rational, TuReport};
use crate::polyhedron::{Polyhedron, Vertex};
use crate::walks::{Classification, CircuitWalk, Distances, DistanceKind, Reversibility, Witness};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rat(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn matrix(m: &RatMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| vector(r)).collect())
}

pub fn parse_rat(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from(i)),
            None => Err(perr(format!("number {n} is not an integer; write fractions as strings"))),
        },
        _ => Err(perr(format!("expected a rational, got {v}"))),
    }
}

pub fn parse_vector(v: &Value) -> Result<RatVector> {
    v.as_array().ok_or_else(|| perr(format!("expected an array, got {v}")))?.iter().map(parse_rat).collect()
}

fn parse_matrix(v: &Value, ncols: usize) -> Result<RatMatrix> {
    let rows = v.as_array().ok_or_else(|| perr("expected an array of rows"))?;
    RatMatrix::new(rows.iter().map(parse_vector).collect::<Result<_>>()?, ncols)
}

pub fn polyhedron(p: &Polyhedron) -> Value {
    json!({
        "n": p.n(),
        "A": matrix(p.a()),
        "b": vector(p.b()),
        "B": matrix(p.bm()),
        "d": vector(p.d()),
        "name": p.name().unwrap_or(""),
    })
}

/// Missing `A`/`b` mean no equalities.
pub fn parse_polyhedron(v: &Value) -> Result<Polyhedron> {
    let obj = v.as_object().ok_or_else(|| perr("polyhedron must be a JSON object"))?;
    let n = obj.get("n").and_then(Value::as_u64).ok_or_else(|| perr("missing integer field \"n\""))? as usize;
    let empty = Value::Array(Vec::new());
    let field = |k: &str| obj.get(k).unwrap_or(&empty);
    let a = parse_matrix(field("A"), n)?;
    let b = parse_vector(field("b"))?;
    let bm = parse_matrix(field("B"), n)?;
    let d = parse_vector(field("d"))?;
    let p = Polyhedron::new(a, b, bm, d)?;
    Ok(match obj.get("name").and_then(Value::as_str) {
        Some(s) if !s.is_empty() => p.with_name(s),
        _ => p,
    })
}

pub fn vertices(vs: &[Vertex]) -> Value {
    Value::Array(vs.iter().map(|v| json!({"point": vector(&v.point), "tight": v.tight})).collect())
}

/// Canonical circuits, sorted.
pub fn circuits(cs: &[Circuit]) -> Value {
    let mut gs: Vec<&RatVector> = cs.iter().map(|c| &c.g).collect();
    gs.sort();
    Value::Array(gs.into_iter().map(|g| vector(g)).collect())
}

/// The start point followed by one entry per step.
pub fn walk(w: &CircuitWalk) -> Value {
    let mut out = vec![json!({"point": vector(w.start()), "circuit": null, "alpha": null})];
    for (s, x) in w.steps.iter().zip(&w.points[1..]) {
        out.push(json!({"point": vector(x), "circuit": vector(&s.circuit.direction()), "alpha": rat(&s.alpha)}));
    }
    Value::Array(out)
}

fn witness(w: &Witness) -> Value {
    match w {
        Witness::NonIntegral(x) => json!({"kind": "non_integral_point", "walk": walk(x)}),
        Witness::IntegralNonVertex(x) => json!({"kind": "integral_non_vertex", "walk": walk(x)}),
        Witness::NonAdjacentStep(x) => json!({"kind": "non_adjacent_step", "walk": walk(x)}),
        Witness::EdgeSteps(certs) => json!({
            "kind": "edge_steps",
            "vertices": certs.iter().map(|c| json!({
                "vertex": c.vertex,
                "steps": c.steps.iter().map(|(g, t)| json!({"direction": vector(g), "to": t})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
    }
}

pub fn classification(c: &Classification) -> Value {
    match c {
        Classification::Level { level, witness: w } => json!({"level": level.to_string(), "witness": witness(w)}),
        Classification::UnknownAtBudget { budget } => json!({"level": "unknown", "budget": budget}),
    }
}

pub fn reversibility(r: &Reversibility) -> Value {
    let w = r.witness.as_ref().map(|f| {
        json!({
            "from": vector(&f.from),
            "circuit": vector(&f.circuit.direction()),
            "to": vector(&f.to),
            "alpha": rat(&f.alpha),
            "back_point": vector(&f.back.0),
            "back_alpha": rat(&f.back.1),
        })
    });
    json!({"reversible": r.reversible, "witness": w})
}

pub fn tu_report(r: &TuReport) -> Value {
    let w = r.witness.as_ref().map(|w| json!({"rows": w.rows, "cols": w.cols, "det": rat(&w.det)}));
    json!({"totally_unimodular": r.is_tu, "witness": w})
}

pub fn distances(d: &Distances) -> Value {
    let kind = match d.kind {
        DistanceKind::Combinatorial => "combinatorial",
        DistanceKind::Circuit => "circuit",
    };
    json!({"kind": kind, "diameter": d.diameter, "dist": d.dist})
}

pub fn condition(c: &ConditionResult) -> Value {
    json!({"holds": c.holds, "witness": c.witness.map(|(a, b)| vec![a, b])})
}

pub fn recognition(r: &RecognitionResult) -> Value {
    let failure = r.failure.as_ref().map(|f| match f {
        RecognitionFailure::FacetCount { facets, dim } => json!({"kind": "facet_count", "facets": facets, "dim": dim}),
        RecognitionFailure::Asymmetric { u, v } => json!({"kind": "asymmetric_cones", "u": u, "v": v}),
        RecognitionFailure::NoParallelotopeFace { vertex } => {
            json!({"kind": "no_parallelotope_face", "vertex": vertex})
        }
    });
    let faces: Vec<Value> =
        r.faces.iter().map(|f| json!({"vertex": f.vertex, "rows": f.rows, "face_vertices": f.vertices})).collect();
    json!({"is_ndp": r.is_ndp, "d": r.d, "faces": faces, "failure": failure})
}

/// `{"0": cluster, "1": cluster, ...}`.
pub fn clustering(c: &Clustering) -> Value {
    let m: Map<String, Value> = c.assignment.iter().enumerate().map(|(j, &i)| (j.to_string(), json!(i))).collect();
    Value::Object(m)
}

/// Accepts an item→cluster map with keys `0..n` or a plain array.
pub fn parse_clustering(v: &Value) -> Result<Clustering> {
    let as_idx = |x: &Value| x.as_u64().map(|i| i as usize).ok_or_else(|| perr(format!("bad cluster index {x}")));
    match v {
        Value::Array(a) => Ok(Clustering::new(a.iter().map(as_idx).collect::<Result<_>>()?)),
        Value::Object(m) => {
            let mut out = vec![None; m.len()];
            for (k, x) in m {
                let j: usize = k.parse().map_err(|_| perr(format!("item key {k:?} is not an index")))?;
                let slot = out.get_mut(j).ok_or_else(|| perr(format!("item {j} out of range")))?;
                *slot = Some(as_idx(x)?);
            }
            let a = out.into_iter().enumerate().map(|(j, x)| x.ok_or_else(|| perr(format!("item {j} missing"))));
            Ok(Clustering::new(a.collect::<Result<_>>()?))
        }
        _ => Err(perr("clustering must be an object or an array")),
    }
}

pub fn cdg(g: &Cdg) -> Value {
    let nodes: Vec<Value> = g.statuses.iter().enumerate().map(|(i, s)| json!({"cluster": i, "status": s})).collect();
    json!({"nodes": nodes, "edges": g.edges})
}
