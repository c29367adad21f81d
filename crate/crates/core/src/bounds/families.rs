//! Extremal families and the reflexive polygons.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::canonical::canonical_vertices;
use crate::error::{Error, Result};
use crate::geom::{area, Point, Polygon};
use crate::lattice_points::{count_boundary, count_interior};
use crate::rational::{frac, int};
use crate::toric::{cross, Vec2};

/// `T_{k,l} = conv{(0,0), (1 + 1/l, 0), (0, (l+1)(k+1))}`.
pub fn gen_t(k: u64, l: u64) -> Result<Polygon> {
    if k < 1 || l < 1 {
        return Err(Error::Precondition("T_{k,l} needs k, l >= 1".into()));
    }
    let (ki, li) = (k as i64, l as i64);
    let t = Polygon::new(vec![
        Point::int(0, 0),
        Point::new(frac(li + 1, li), int(0)),
        Point::int(0, (li + 1) * (ki + 1)),
    ])?;
    assert_eq!(count_interior(&t).interior, k);
    assert_eq!(area(&t), frac((li + 1) * (li + 1) * (ki + 1), 2 * li));
    Ok(t)
}

/// `m * conv{(0,0), (1,0), (0,1)}`.
pub fn gen_delta(m: u64) -> Result<Polygon> {
    if m < 1 {
        return Err(Error::Precondition("scale must be >= 1".into()));
    }
    let m = m as i64;
    Polygon::from_ints(&[(0, 0), (m, 0), (0, m)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QVariant {
    /// `conv{(1,0), (0,1), (-1,1)}`: area 1/2, no interior point.
    Hollow,
    /// `conv{(1,0), (0,1), (-1,-1)}`: reflexive, area 3/2, lattice width 2.
    Reflexive,
}

pub fn gen_q(m: u64, variant: QVariant) -> Result<Polygon> {
    if m < 1 {
        return Err(Error::Precondition("scale must be >= 1".into()));
    }
    let m = m as i64;
    match variant {
        QVariant::Hollow => Polygon::from_ints(&[(m, 0), (0, m), (-m, m)]),
        QVariant::Reflexive => Polygon::from_ints(&[(m, 0), (0, m), (-m, -m)]),
    }
}

/// `Some(m)` when `p` is unimodularly equivalent to `m * Δ₂`.
pub fn is_delta_multiple(p: &Polygon) -> Option<u64> {
    if p.len() != 3 || !p.is_lattice() {
        return None;
    }
    let b = count_boundary(p).ok()?;
    if b % 3 != 0 {
        return None;
    }
    let m = b / 3;
    let vs = p.lattice_vertices().ok()?;
    let all_equal = (0..3).all(|i| {
        let (a, c) = (&vs[i], &vs[(i + 1) % 3]);
        crate::geom::lattice_length(a, c) == num_bigint::BigInt::from(m)
    });
    (all_equal && area(p) == frac((m * m) as i64, 2)).then_some(m)
}

fn primitive_points(r: i64) -> Vec<Vec2> {
    let mut pts = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            if x.gcd(&y) == 1 {
                pts.push((x, y));
            }
        }
    }
    pts
}

/// Edge `u -> v` at lattice distance one from the origin, origin on the left.
fn unit_edge(u: Vec2, v: Vec2) -> bool {
    let g = (v.0 - u.0).gcd(&(v.1 - u.1));
    g > 0 && cross(u, v) == g
}

fn turn(a: Vec2, b: Vec2, c: Vec2) -> i64 {
    cross((b.0 - a.0, b.1 - a.1), (c.0 - b.0, c.1 - b.1))
}

/// All reflexive polygons up to unimodular equivalence, found by exhausting
/// vertex cycles in `[-4, 4]^2` whose edges lie at lattice distance one from
/// the origin.
pub fn enumerate_reflexive() -> Vec<Polygon> {
    let pts = primitive_points(4);
    let mut found: BTreeMap<Vec<(i64, i64)>, Polygon> = BTreeMap::new();
    let mut chain = Vec::new();
    for &v0 in &pts {
        chain.clear();
        chain.push(v0);
        extend(&pts, &mut chain, &mut found);
    }
    found.into_values().collect()
}

fn extend(pts: &[Vec2], chain: &mut Vec<Vec2>, found: &mut BTreeMap<Vec<(i64, i64)>, Polygon>) {
    let v0 = chain[0];
    let last = *chain.last().unwrap();
    if chain.len() >= 3
        && unit_edge(last, v0)
        && turn(chain[chain.len() - 2], last, v0) > 0
        && turn(last, v0, chain[1]) > 0
    {
        let key = canonical_vertices(chain);
        found.entry(key).or_insert_with(|| {
            let poly = Polygon::from_ints(chain).expect("closed convex cycle");
            let canon: Vec<(i64, i64)> = canonical_vertices(chain);
            debug_assert_eq!(count_interior(&poly).interior, 1, "{canon:?}");
            poly
        });
    }
    for &w in pts {
        if w <= v0 || !unit_edge(last, w) {
            continue;
        }
        if chain.len() >= 2 {
            if turn(chain[chain.len() - 2], last, w) <= 0 {
                continue;
            }
            if cross((last.0 - v0.0, last.1 - v0.1), (w.0 - v0.0, w.1 - v0.1)) <= 0 {
                continue;
            }
        }
        chain.push(w);
        extend(pts, chain, found);
        chain.pop();
    }
}
