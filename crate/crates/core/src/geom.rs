//! Rational points, strictly convex polygons and convex hulls.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    #[serde(with = "rational::serde_str")]
    pub x: Rational,
    #[serde(with = "rational::serde_str")]
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Self::new(rational::int(x), rational::int(y))
    }

    pub fn is_lattice(&self) -> bool {
        rational::is_integral(&self.x) && rational::is_integral(&self.y)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    pub fn transpose(&self) -> Point {
        Point::new(self.y.clone(), self.x.clone())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Cross product of `b - a` and `c - a`; positive for a counterclockwise turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// A strictly convex polygon with rational vertices.
///
/// Vertices are stored counterclockwise, starting at the lexicographically
/// smallest vertex, so two polygons with the same vertex set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl<'de> Deserialize<'de> for Polygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            vertices: Vec<Point>,
        }
        let raw = Raw::deserialize(d)?;
        Polygon::new(raw.vertices).map_err(serde::de::Error::custom)
    }
}

impl Polygon {
    /// Builds a polygon from a vertex cycle given in either orientation.
    ///
    /// Rejects cycles that are not in strictly convex position, including
    /// repeated points and collinear consecutive vertices.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::Degenerate(format!("{n} vertices")));
        }
        let mut twice_area = Rational::zero();
        for i in 0..n {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
            twice_area += &a.x * &b.y - &b.x * &a.y;
        }
        if twice_area.is_zero() {
            return Err(Error::Degenerate("zero area".into()));
        }
        let mut vertices = vertices;
        if twice_area.is_negative() {
            vertices.reverse();
        }
        for i in 0..n {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
            for (j, c) in vertices.iter().enumerate() {
                if j == i || j == (i + 1) % n {
                    continue;
                }
                if !orient(a, b, c).is_positive() {
                    return Err(Error::NotConvex(format!("vertex {c} against edge {a}-{b}")));
                }
            }
        }
        let start = (0..n).min_by(|&i, &j| vertices[i].cmp(&vertices[j])).unwrap();
        vertices.rotate_left(start);
        Ok(Self { vertices })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::int(x, y)).collect())
    }

    /// Convex hull of `points`, which must span a two-dimensional region.
    pub fn hull_of(points: &[Point]) -> Result<Self> {
        match convex_hull(points)? {
            Hull::Polygon { polygon } => Ok(polygon),
            h => Err(Error::Degenerate(format!("hull has dimension {}", h.dim()))),
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Directed edges `(v_i, v_{i+1})` in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(Point::is_lattice)
    }

    /// Integer vertex coordinates, or `NotLattice`.
    pub fn lattice_vertices(&self) -> Result<Vec<(BigInt, BigInt)>> {
        self.vertices
            .iter()
            .map(|v| {
                if v.is_lattice() {
                    Ok((v.x.to_integer(), v.y.to_integer()))
                } else {
                    Err(Error::NotLattice)
                }
            })
            .collect()
    }

    pub fn x_range(&self) -> (Rational, Rational) {
        let min = self.vertices.iter().map(|v| &v.x).min().unwrap().clone();
        let max = self.vertices.iter().map(|v| &v.x).max().unwrap().clone();
        (min, max)
    }

    pub fn y_range(&self) -> (Rational, Rational) {
        let min = self.vertices.iter().map(|v| &v.y).min().unwrap().clone();
        let max = self.vertices.iter().map(|v| &v.y).max().unwrap().clone();
        (min, max)
    }

    /// Exact intersection of the polygon with the vertical line `x1 = x`,
    /// as `(lower, upper)` y-values, or `None` outside the x-range.
    pub fn vertical_slice(&self, x: &Rational) -> Option<(Rational, Rational)> {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        let mut push = |y: Rational| {
            if lo.as_ref().is_none_or(|l| &y < l) {
                lo = Some(y.clone());
            }
            if hi.as_ref().is_none_or(|h| &y > h) {
                hi = Some(y);
            }
        };
        for (a, b) in self.edges() {
            if a.x == b.x {
                if &a.x == x {
                    push(a.y.clone());
                    push(b.y.clone());
                }
                continue;
            }
            let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
            if &l.x <= x && x <= &r.x {
                push(&l.y + (&r.y - &l.y) * (x - &l.x) / (&r.x - &l.x));
            }
        }
        lo.zip(hi)
    }

    pub fn slice_length(&self, x: &Rational) -> Rational {
        self.vertical_slice(x)
            .map(|(lo, hi)| hi - lo)
            .unwrap_or_else(Rational::zero)
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> Polygon {
        Polygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| Point::new(&v.x + dx, &v.y + dy))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Polygon {
        assert!(s.is_positive(), "scale factor must be positive");
        Polygon {
            vertices: self.vertices.iter().map(|v| v.scale(s)).collect(),
        }
    }

    /// Mirror image in the diagonal `x1 = x2`.
    pub fn transpose(&self) -> Polygon {
        Polygon::new(self.vertices.iter().map(Point::transpose).collect())
            .expect("transpose of a convex polygon is convex")
    }

    pub fn contains_strictly(&self, p: &Point) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p).is_positive())
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.edges().all(|(a, b)| !orient(a, b, p).is_negative())
    }
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Exact shoelace area.
pub fn area(p: &Polygon) -> Rational {
    let twice: Rational = p
        .edges()
        .map(|(a, b)| &a.x * &b.y - &b.x * &a.y)
        .sum();
    twice / rational::int(2)
}

/// Area via a fan triangulation from the first vertex.
pub fn area_by_fan(p: &Polygon) -> Rational {
    let v = p.vertices();
    let twice: Rational = (1..v.len() - 1).map(|i| orient(&v[0], &v[i], &v[i + 1])).sum();
    twice / rational::int(2)
}

/// Least `l` such that `l * P` has integral vertices.
pub fn denominator(p: &Polygon) -> BigInt {
    rational::lcm_of_denominators(p.vertices().iter().flat_map(|v| [&v.x, &v.y]))
}

/// Lattice length of the segment between two lattice points.
pub fn lattice_length(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> BigInt {
    (&b.0 - &a.0).gcd(&(&b.1 - &a.1))
}

/// Convex hull of a point set, which may be a point, a segment or a polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "dim_kind", rename_all = "snake_case")]
pub enum Hull {
    Point { point: Point },
    Segment { from: Point, to: Point },
    Polygon { polygon: Polygon },
}

impl Hull {
    pub fn dim(&self) -> u8 {
        match self {
            Hull::Point { .. } => 0,
            Hull::Segment { .. } => 1,
            Hull::Polygon { .. } => 2,
        }
    }

    pub fn area(&self) -> Rational {
        match self {
            Hull::Polygon { polygon } => area(polygon),
            _ => Rational::zero(),
        }
    }

    pub fn points(&self) -> Vec<Point> {
        match self {
            Hull::Point { point } => vec![point.clone()],
            Hull::Segment { from, to } => vec![from.clone(), to.clone()],
            Hull::Polygon { polygon } => polygon.vertices().to_vec(),
        }
    }

    /// Boundary lattice points of a hull with lattice vertices.
    pub fn boundary_lattice_points(&self) -> Result<BigInt> {
        match self {
            Hull::Point { point } if point.is_lattice() => Ok(BigInt::one()),
            Hull::Segment { from, to } if from.is_lattice() && to.is_lattice() => {
                let a = (from.x.to_integer(), from.y.to_integer());
                let b = (to.x.to_integer(), to.y.to_integer());
                Ok(lattice_length(&a, &b) + 1)
            }
            Hull::Polygon { polygon } => {
                let v = polygon.lattice_vertices()?;
                let n = v.len();
                Ok((0..n).map(|i| lattice_length(&v[i], &v[(i + 1) % n])).sum())
            }
            _ => Err(Error::NotLattice),
        }
    }
}

fn hull_from_chain(chain: Vec<Point>) -> Hull {
    match chain.len() {
        1 => Hull::Point { point: chain.into_iter().next().unwrap() },
        2 => {
            let mut it = chain.into_iter();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            let (from, to) = if a <= b { (a, b) } else { (b, a) };
            Hull::Segment { from, to }
        }
        _ => Hull::Polygon {
            polygon: Polygon::new(chain).expect("monotone chain yields a strictly convex cycle"),
        },
    }
}

/// Exact convex hull (Andrew's monotone chain, collinear points dropped).
pub fn convex_hull(points: &[Point]) -> Result<Hull> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(hull_from_chain(pts));
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(hull_from_chain(lower))
}
