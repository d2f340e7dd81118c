//! JSON formats for metric spaces, graphs and polytopes.
//!
//! Scalars are `"p/q"` or `"p"` strings; JSON integers are also accepted.
//! Floating-point literals are rejected.

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::metric::{from_weighted_graph, Edge, MetricError, MetricSpace, WeightedGraph};
use crate::polytope::{HPolytope, Halfspace, PolytopeError, VPolytope};
use crate::rational::{approx_string, format_rational, parse_rational, ParseRationalError, Rational};

/// Largest point count (or graph vertex count) accepted from a file.
pub const MAX_POINTS: usize = 64;
/// Largest polytope dimension accepted from a file.
pub const MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Shape(String),
    #[error("{path}: {source}")]
    Rational {
        path: String,
        source: ParseRationalError,
    },
    #[error("{0}: decimal numbers are not exact; use a \"p/q\" string")]
    Float(String),
    #[error("{what} {found} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        found: usize,
        limit: usize,
    },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

fn shape(msg: impl Into<String>) -> FormatError {
    FormatError::Shape(msg.into())
}

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn ser_rational_vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&format_rational(r))?;
    }
    seq.end()
}

/// An exact value with its 12-digit decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exact {
    pub exact: String,
    pub approx: String,
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Self {
        Self {
            exact: format_rational(r),
            approx: approx_string(r),
        }
    }
}

pub fn rational_value(v: &Value, path: &str) -> Result<Rational, FormatError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|source| FormatError::Rational {
            path: path.to_string(),
            source,
        }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(FormatError::Float(path.to_string()))
            }
        }
        _ => Err(shape(format!("{path}: expected a rational string"))),
    }
}

fn rational_array(v: &Value, path: &str) -> Result<Vec<Rational>, FormatError> {
    let arr = v
        .as_array()
        .ok_or_else(|| shape(format!("{path}: expected an array")))?;
    arr.iter()
        .enumerate()
        .map(|(k, x)| rational_value(x, &format!("{path}[{k}]")))
        .collect()
}

fn index_value(v: &Value, path: &str) -> Result<usize, FormatError> {
    v.as_u64()
        .and_then(|u| usize::try_from(u).ok())
        .ok_or_else(|| shape(format!("{path}: expected a nonnegative integer")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object()
        .ok_or_else(|| shape(format!("{what}: expected a JSON object")))
}

fn parse_json(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))
}

fn check_limit(what: &'static str, found: usize, limit: usize) -> Result<(), FormatError> {
    if found > limit {
        Err(FormatError::TooLarge { what, found, limit })
    } else {
        Ok(())
    }
}

/// `{"labels": [...], "root": 0, "distances": [[...], ...]}`; labels and root
/// are optional.
pub fn metric_from_value(v: &Value) -> Result<MetricSpace, FormatError> {
    let obj = object(v, "metric")?;
    let rows = obj
        .get("distances")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("metric: missing \"distances\" array"))?;
    check_limit("point count", rows.len(), MAX_POINTS)?;
    let dist = rows
        .iter()
        .enumerate()
        .map(|(i, r)| rational_array(r, &format!("distances[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let labels = match obj.get("labels") {
        None | Some(Value::Null) => (0..dist.len()).map(|i| i.to_string()).collect(),
        Some(Value::Array(ls)) => ls
            .iter()
            .enumerate()
            .map(|(k, l)| match l {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(shape(format!("labels[{k}]: expected a string"))),
            })
            .collect::<Result<Vec<_>, _>>()?,
        Some(_) => return Err(shape("labels: expected an array")),
    };
    let root = match obj.get("root") {
        None | Some(Value::Null) => 0,
        Some(r) => index_value(r, "root")?,
    };
    Ok(MetricSpace::with_root(labels, root, dist)?)
}

/// `{"n": 5, "edges": [{"u": 0, "v": 1, "w": "3/2"}, ...]}`.
pub fn graph_from_value(v: &Value) -> Result<WeightedGraph, FormatError> {
    let obj = object(v, "graph")?;
    let n = index_value(
        obj.get("n").ok_or_else(|| shape("graph: missing \"n\""))?,
        "n",
    )?;
    check_limit("vertex count", n, MAX_POINTS)?;
    let edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("graph: missing \"edges\" array"))?;
    let edges = edges
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let e = object(e, &format!("edges[{k}]"))?;
            let field = |name: &str| {
                e.get(name)
                    .ok_or_else(|| shape(format!("edges[{k}]: missing \"{name}\"")))
            };
            Ok(Edge {
                u: index_value(field("u")?, &format!("edges[{k}].u"))?,
                v: index_value(field("v")?, &format!("edges[{k}].v"))?,
                w: rational_value(field("w")?, &format!("edges[{k}].w"))?,
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(WeightedGraph::new(n, edges)?)
}

pub fn parse_metric(text: &str) -> Result<MetricSpace, FormatError> {
    metric_from_value(&parse_json(text)?)
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph, FormatError> {
    graph_from_value(&parse_json(text)?)
}

/// Either format; graphs are completed to their shortest-path metric.
pub fn parse_instance(text: &str) -> Result<MetricSpace, FormatError> {
    let v = parse_json(text)?;
    if v.get("distances").is_some() {
        metric_from_value(&v)
    } else if v.get("edges").is_some() {
        let g = graph_from_value(&v)?;
        Ok(from_weighted_graph(&g)?)
    } else {
        Err(shape("expected a metric (\"distances\") or a graph (\"edges\")"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PolytopeInput {
    Vertices(VPolytope),
    Halfspaces(HPolytope),
}

/// `{"dim": n, "vertices": [...]}` or `{"dim": n, "halfspaces": [{"a": [...], "b": "p/q"}, ...]}`.
pub fn parse_polytope(text: &str) -> Result<PolytopeInput, FormatError> {
    let v = parse_json(text)?;
    let obj = object(&v, "polytope")?;
    let dim = index_value(
        obj.get("dim").ok_or_else(|| shape("polytope: missing \"dim\""))?,
        "dim",
    )?;
    check_limit("dimension", dim, MAX_DIM)?;
    match (obj.get("vertices"), obj.get("halfspaces")) {
        (Some(vs), None) => {
            let vs = vs
                .as_array()
                .ok_or_else(|| shape("vertices: expected an array"))?;
            let pts = vs
                .iter()
                .enumerate()
                .map(|(k, p)| rational_array(p, &format!("vertices[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(PolytopeInput::Vertices(VPolytope::new(dim, pts)?))
        }
        (None, Some(hs)) => {
            let hs = hs
                .as_array()
                .ok_or_else(|| shape("halfspaces: expected an array"))?;
            let hs = hs
                .iter()
                .enumerate()
                .map(|(k, h)| {
                    let h = object(h, &format!("halfspaces[{k}]"))?;
                    let a = h
                        .get("a")
                        .ok_or_else(|| shape(format!("halfspaces[{k}]: missing \"a\"")))?;
                    let b = h
                        .get("b")
                        .ok_or_else(|| shape(format!("halfspaces[{k}]: missing \"b\"")))?;
                    Ok(Halfspace {
                        normal: rational_array(a, &format!("halfspaces[{k}].a"))?,
                        offset: rational_value(b, &format!("halfspaces[{k}].b"))?,
                    })
                })
                .collect::<Result<Vec<_>, FormatError>>()?;
            Ok(PolytopeInput::Halfspaces(HPolytope::new(dim, hs)?))
        }
        _ => Err(shape("polytope: give exactly one of \"vertices\" or \"halfspaces\"")),
    }
}

/// Parses `"[1, -1/2, 0]"`; entries may be quoted.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>, FormatError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| shape("vector: expected \"[x1, x2, ...]\""))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .enumerate()
        .map(|(k, item)| {
            let item = item.trim();
            let item = item
                .strip_prefix('"')
                .and_then(|s| s.strip_suffix('"'))
                .unwrap_or(item);
            if item.contains(['.', 'e', 'E']) {
                return Err(FormatError::Float(format!("vector[{k}]")));
            }
            parse_rational(item).map_err(|source| FormatError::Rational {
                path: format!("vector[{k}]"),
                source,
            })
        })
        .collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn metric_to_value(m: &MetricSpace) -> Value {
    json!({
        "labels": m.labels(),
        "root": m.root(),
        "distances": m.distances().iter().map(|r| strings(r)).collect::<Vec<_>>(),
    })
}

pub fn graph_to_value(g: &WeightedGraph) -> Value {
    json!({
        "n": g.vertex_count(),
        "edges": g.edges(),
    })
}

pub fn vpolytope_to_value(p: &VPolytope) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(|v| strings(v)).collect::<Vec<_>>(),
    })
}

pub fn hpolytope_to_value(h: &HPolytope) -> Value {
    json!({
        "dim": h.dim(),
        "halfspaces": h
            .halfspaces()
            .iter()
            .map(|hs| json!({"a": strings(&hs.normal), "b": format_rational(&hs.offset)}))
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn metric_round_trip() {
        let text = r#"{"labels":["a","b","c"],"root":1,"distances":[["0","1","3/2"],["1","0",1],["3/2",1,0]]}"#;
        let m = parse_metric(text).unwrap();
        assert_eq!(m.root(), 1);
        assert_eq!(m.d(0, 2), &ratio(3, 2));
        let back = parse_metric(&metric_to_value(&m).to_string()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn defaults_and_rejections() {
        let m = parse_metric(r#"{"distances":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(m.labels(), ["0", "1"]);
        assert!(matches!(
            parse_metric(r#"{"distances":[[0,1.5],[1.5,0]]}"#),
            Err(FormatError::Float(_))
        ));
        assert!(matches!(
            parse_metric(r#"{"distances":[[0,1,1],[1,0,3],[1,3,0]]}"#),
            Err(FormatError::Metric(MetricError::NotAMetric(_)))
        ));
        assert!(matches!(parse_metric("{"), Err(FormatError::Json(_))));
        assert!(matches!(parse_metric(r#"{"distances":[["0","x"]]}"#), Err(FormatError::Rational { .. })));
    }

    #[test]
    fn graph_input_is_completed() {
        let text = r#"{"n":3,"edges":[{"u":0,"v":1,"w":"1"},{"u":2,"v":1,"w":1}]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edges()[1].u, 1);
        let m = parse_instance(text).unwrap();
        assert_eq!(m.d(0, 2), &int(2));
        let back = parse_graph(&graph_to_value(&g).to_string()).unwrap();
        assert_eq!(back, g);
        assert!(matches!(
            parse_instance(r#"{"n":3,"edges":[{"u":0,"v":1,"w":1}]}"#),
            Err(FormatError::Metric(MetricError::Disconnected))
        ));
        assert!(matches!(
            parse_graph(r#"{"n":100000,"edges":[]}"#),
            Err(FormatError::TooLarge { .. })
        ));
    }

    #[test]
    fn polytope_formats() {
        let v = parse_polytope(r#"{"dim":2,"vertices":[["1","0"],["0","1"],["-1","0"],["0","-1"]]}"#).unwrap();
        let PolytopeInput::Vertices(p) = v else { panic!() };
        assert_eq!(p.len(), 4);
        let text = hpolytope_to_value(&p.polar_unchecked()).to_string();
        let PolytopeInput::Halfspaces(h) = parse_polytope(&text).unwrap() else { panic!() };
        assert_eq!(h, p.polar_unchecked());
        assert!(parse_polytope(r#"{"dim":2}"#).is_err());
        assert!(parse_polytope(r#"{"dim":2,"vertices":[["1"]]}"#).is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("[1,1,0]").unwrap(), vec![int(1), int(1), int(0)]);
        assert_eq!(parse_vector(r#"[ "-1/2" , 3 ]"#).unwrap(), vec![ratio(-1, 2), int(3)]);
        assert_eq!(parse_vector("[]").unwrap(), vec![]);
        assert!(matches!(parse_vector("[0.5]"), Err(FormatError::Float(_))));
        assert!(parse_vector("1,2").is_err());
        assert!(parse_vector("[1,,2]").is_err());
    }

    #[test]
    fn exact_rendering() {
        let e = Exact::from(&ratio(40, 3));
        assert_eq!(e.exact, "40/3");
        assert_eq!(e.approx, "13.3333333333");
    }
}
