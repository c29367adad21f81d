//! Interior and boundary lattice point counts, interior hulls and Pick's formula.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{convex_hull, lattice_length, Hull, Point, Polygon};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCounts {
    /// Strict-interior lattice points.
    pub interior: u64,
    /// Boundary lattice points; only recorded for lattice polygons.
    pub boundary: Option<u64>,
    /// Interior lattice points on each vertical line `x1 = h` that meets the interior.
    pub per_line: BTreeMap<i64, u64>,
}

impl PointCounts {
    pub fn on_line(&self, h: i64) -> u64 {
        self.per_line.get(&h).copied().unwrap_or(0)
    }
}

fn to_i64(v: &BigInt) -> i64 {
    v.to_i64().expect("x-coordinates must fit in i64")
}

fn to_u64(v: &BigInt) -> u64 {
    v.to_u64().expect("lattice point count must fit in u64")
}

/// Integral `h` with `x_min < h < x_max`.
pub fn interior_vertical_lines(p: &Polygon) -> std::ops::RangeInclusive<i64> {
    let (lo, hi) = p.x_range();
    let first = to_i64(&rational::floor(&lo)) + 1;
    let last = to_i64(&rational::ceil(&hi)) - 1;
    first..=last
}

/// Exact strict-interior lattice count, line by line. Works for rational polygons.
pub fn count_interior(p: &Polygon) -> PointCounts {
    let mut per_line = BTreeMap::new();
    let mut total = 0u64;
    for h in interior_vertical_lines(p) {
        let (lo, hi) = p
            .vertical_slice(&rational::int(h))
            .expect("interior line meets the polygon");
        let k = to_u64(&rational::integers_strictly_between(&lo, &hi));
        per_line.insert(h, k);
        total += k;
    }
    let boundary = count_boundary(p).ok();
    PointCounts { interior: total, boundary, per_line }
}

/// `b = sum over edges of gcd(|dx|, |dy|)`; lattice polygons only.
pub fn count_boundary(p: &Polygon) -> Result<u64> {
    let v = p.lattice_vertices()?;
    let n = v.len();
    let b: BigInt = (0..n).map(|i| lattice_length(&v[i], &v[(i + 1) % n])).sum();
    Ok(to_u64(&b))
}

/// Lattice points on the boundary of a polygon with arbitrary rational vertices.
pub fn boundary_lattice_points(p: &Polygon) -> BTreeSet<(i64, i64)> {
    let mut found = BTreeSet::new();
    for (a, b) in p.edges() {
        if a.x == b.x {
            if !rational::is_integral(&a.x) {
                continue;
            }
            let x = to_i64(&a.x.to_integer());
            let (lo, hi) = if a.y < b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
            for y in to_i64(&rational::ceil(lo))..=to_i64(&rational::floor(hi)) {
                found.insert((x, y));
            }
            continue;
        }
        let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
        for x in to_i64(&rational::ceil(&l.x))..=to_i64(&rational::floor(&r.x)) {
            let xr = rational::int(x);
            let y = &l.y + (&r.y - &l.y) * (&xr - &l.x) / (&r.x - &l.x);
            if rational::is_integral(&y) {
                found.insert((x, to_i64(&y.to_integer())));
            }
        }
    }
    found
}

/// All strict-interior lattice points, ordered by `(x, y)`.
pub fn interior_points(p: &Polygon) -> Vec<Point> {
    let mut pts = Vec::new();
    for h in interior_vertical_lines(p) {
        let (lo, hi) = p.vertical_slice(&rational::int(h)).unwrap();
        let first = rational::floor(&lo) + BigInt::from(1);
        let last = rational::ceil(&hi) - BigInt::from(1);
        let mut y = first;
        while y <= last {
            pts.push(Point::new(rational::int(h), Rational::from_integer(y.clone())));
            y += BigInt::from(1);
        }
    }
    pts
}

/// `F(P)`: convex hull of the interior lattice points, `None` for hollow polygons.
pub fn interior_hull(p: &Polygon) -> Option<Hull> {
    let pts = interior_points(p);
    if pts.is_empty() {
        None
    } else {
        Some(convex_hull(&pts).expect("non-empty point set"))
    }
}

/// Pick's formula `k + b/2 - 1`.
pub fn pick_area(k: u64, b: u64) -> Result<Rational> {
    if b < 3 {
        return Err(Error::Precondition(format!(
            "a lattice polygon has at least 3 boundary points, got {b}"
        )));
    }
    Ok(rational::int(k as i64) + rational::frac(b as i64, 2) - rational::int(1))
}

/// Naive bounding-box scan; used as an independent check of [`count_interior`].
pub fn count_interior_by_grid_scan(p: &Polygon) -> u64 {
    let (x0, x1) = p.x_range();
    let (y0, y1) = p.y_range();
    let mut k = 0;
    for x in to_i64(&rational::floor(&x0))..=to_i64(&rational::ceil(&x1)) {
        for y in to_i64(&rational::floor(&y0))..=to_i64(&rational::ceil(&y1)) {
            if p.contains_strictly(&Point::int(x, y)) {
                k += 1;
            }
        }
    }
    k
}
