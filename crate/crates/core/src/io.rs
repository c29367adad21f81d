//! Polygon files.
//!
//! Text format: an optional name on the first line, then one vertex per line
//! as two rationals (`3/2 0` or `3/2, 0`). Blank lines and `#` comments are
//! ignored. JSON format: `{"name": "...", "vertices": [["3/2", "0"], ...]}`,
//! where coordinates may also be JSON integers.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geom::{Point, Polygon};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPolygon {
    pub name: Option<String>,
    pub polygon: Polygon,
}

fn coordinate(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) => n
            .as_i64()
            .map(rational::int)
            .ok_or_else(|| Error::Parse(format!("coordinate {n} is not an integer or \"p/q\" string"))),
        other => Err(Error::Parse(format!("bad coordinate {other}"))),
    }
}

fn vertex(v: &Value) -> Result<Point> {
    match v {
        Value::Array(xy) if xy.len() == 2 => Ok(Point::new(coordinate(&xy[0])?, coordinate(&xy[1])?)),
        Value::Object(m) => match (m.get("x"), m.get("y")) {
            (Some(x), Some(y)) => Ok(Point::new(coordinate(x)?, coordinate(y)?)),
            _ => Err(Error::Parse("vertex object needs x and y".into())),
        },
        other => Err(Error::Parse(format!("bad vertex {other}"))),
    }
}

pub fn parse_json(s: &str) -> Result<NamedPolygon> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let name = v.get("name").and_then(Value::as_str).map(String::from);
    let verts = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"vertices\" array".into()))?;
    let pts = verts.iter().map(vertex).collect::<Result<Vec<_>>>()?;
    Ok(NamedPolygon { name, polygon: Polygon::new(pts)? })
}

fn parse_pair(line: &str) -> Option<Result<Point>> {
    let parts: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    if parts.len() != 2 || !parts.iter().all(|p| p.starts_with(|c: char| c == '-' || c == '+' || c.is_ascii_digit())) {
        return None;
    }
    Some((|| Ok(Point::new(rational::parse(parts[0])?, rational::parse(parts[1])?)))())
}

pub fn parse_text(s: &str) -> Result<NamedPolygon> {
    let mut name = None;
    let mut pts = Vec::new();
    let lines = s.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
    for (i, line) in lines.enumerate() {
        match parse_pair(line) {
            Some(p) => pts.push(p?),
            None if i == 0 => name = Some(line.to_string()),
            None => return Err(Error::Parse(format!("bad vertex line '{line}'"))),
        }
    }
    Ok(NamedPolygon { name, polygon: Polygon::new(pts)? })
}

/// Parses either format, choosing JSON when the input starts with `{`.
pub fn parse_polygon(s: &str) -> Result<NamedPolygon> {
    if s.trim_start().starts_with('{') {
        parse_json(s)
    } else {
        parse_text(s)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonPolygon {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    vertices: Vec<[String; 2]>,
}

pub fn to_json(name: Option<&str>, p: &Polygon) -> String {
    let j = JsonPolygon {
        name: name.map(String::from),
        vertices: p
            .vertices()
            .iter()
            .map(|v| [rational::to_string(&v.x), rational::to_string(&v.y)])
            .collect(),
    };
    serde_json::to_string(&j).expect("plain data serializes")
}

pub fn to_text(name: Option<&str>, p: &Polygon) -> String {
    let mut s = String::new();
    if let Some(n) = name {
        s.push_str(n);
        s.push('\n');
    }
    for v in p.vertices() {
        s.push_str(&format!("{} {}\n", rational::to_string(&v.x), rational::to_string(&v.y)));
    }
    s
}
