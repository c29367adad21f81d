//! Normal fans, smooth refinements of two-dimensional cones, dual polygons
//! and the two "number 12" identities for lattice polygons.

use num_integer::Integer;
use num_traits::Zero;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{area, Point, Polygon};
use crate::lattice_points::{self, count_boundary, count_interior, interior_hull};
use crate::rational::{self, Rational};

pub type Vec2 = (i64, i64);

pub fn cross(u: Vec2, v: Vec2) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

fn is_primitive(u: Vec2) -> bool {
    u.0.gcd(&u.1) == 1
}

/// Two-dimensional strictly convex cone spanned by primitive `u` and `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub u: Vec2,
    pub v: Vec2,
    pub det: i64,
}

impl Cone {
    pub fn new(u: Vec2, v: Vec2) -> Result<Self> {
        if !is_primitive(u) || !is_primitive(v) {
            return Err(Error::Precondition(format!("cone generators {u:?}, {v:?} must be primitive")));
        }
        let det = cross(u, v);
        if det == 0 {
            return Err(Error::Precondition(format!("cone {u:?}, {v:?} is not strictly convex")));
        }
        Ok(Self { u, v, det: det.abs() })
    }

    pub fn is_smooth(&self) -> bool {
        self.det == 1
    }
}

/// Minus-sign continued fraction `d/q = b1 - 1/(b2 - 1/(...))` with all `b_i >= 2`.
pub fn hirzebruch_jung(d: i64, q: i64) -> Vec<i64> {
    assert!(d > 0 && (0..d).contains(&q), "need 0 <= q < d");
    let (mut n, mut m) = (d, q);
    let mut out = Vec::new();
    while m > 0 {
        let b = Integer::div_ceil(&n, &m);
        out.push(b);
        (n, m) = (m, b * m - n);
    }
    out
}

type Mat = [[i64; 2]; 2];

fn mul_vec(a: &Mat, v: Vec2) -> Vec2 {
    (a[0][0] * v.0 + a[0][1] * v.1, a[1][0] * v.0 + a[1][1] * v.1)
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

fn inverse_det1(a: &Mat) -> Mat {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

/// Rays of the smooth refinement strictly between `u` and `v`, in angular
/// order from `u` to `v`: the lattice points on the bounded edges of
/// `conv(σ ∩ Z² \ {0})`.
pub fn resolve_cone(c: &Cone) -> Vec<Vec2> {
    let (u, v) = (c.u, c.v);
    if cross(u, v) < 0 {
        let mut rays = resolve_cone(&Cone { u: v, v: u, det: c.det });
        rays.reverse();
        return rays;
    }
    let d = c.det;
    if d == 1 {
        return Vec::new();
    }
    // Unimodular M with M u = (1, 0); then M v = (e, d).
    let eg = u.0.extended_gcd(&u.1);
    let (x, y) = if eg.gcd < 0 { (-eg.x, -eg.y) } else { (eg.x, eg.y) };
    let m: Mat = [[x, y], [-u.1, u.0]];
    let (e, dd) = mul_vec(&m, v);
    debug_assert_eq!(dd, d);
    // Shear so that v lands on (-q, d) with 0 < q < d.
    let q = (-e).mod_floor(&d);
    let t = (e + q) / d;
    let shear: Mat = [[1, -t], [0, 1]];
    let normal = mul(&shear, &m);
    let back = inverse_det1(&normal);

    let mut prev: Vec2 = (1, 0);
    let mut cur: Vec2 = (0, 1);
    let mut rays = Vec::new();
    for b in hirzebruch_jung(d, q) {
        rays.push(mul_vec(&back, cur));
        let next = (b * cur.0 - prev.0, b * cur.1 - prev.1);
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(cur, (-q, d));
    rays
}

/// Complete fan of primitive outer edge normals, cyclically ordered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFan {
    pub rays: Vec<Vec2>,
}

impl NormalFan {
    pub fn cones(&self) -> Vec<Cone> {
        let n = self.rays.len();
        (0..n)
            .map(|i| Cone::new(self.rays[i], self.rays[(i + 1) % n]).expect("consecutive normals span a cone"))
            .collect()
    }

    /// All rays of the smooth refinement, in cyclic order.
    pub fn smooth_refinement(&self) -> Vec<Vec2> {
        let mut out = Vec::new();
        for c in self.cones() {
            out.push(c.u);
            out.extend(resolve_cone(&c));
        }
        out
    }
}

pub fn normal_fan(p: &Polygon) -> Result<NormalFan> {
    let v = p.lattice_vertices()?;
    let n = v.len();
    let rays = (0..n)
        .map(|i| {
            let (a, b) = (&v[i], &v[(i + 1) % n]);
            let (dx, dy) = (&b.0 - &a.0, &b.1 - &a.1);
            let g = dx.gcd(&dy);
            let conv = |z: num_bigint::BigInt| -> i64 { (z / &g).try_into().expect("edge vector fits in i64") };
            (conv(dy), conv(-dx))
        })
        .collect();
    Ok(NormalFan { rays })
}

/// Number of rays in the smooth refinement of the normal fan.
pub fn n_smooth(p: &Polygon) -> Result<u64> {
    let fan = normal_fan(p)?;
    Ok(fan.rays.len() as u64 + fan.cones().iter().map(|c| resolve_cone(c).len() as u64).sum::<u64>())
}

/// `{v : v(x) >= -1 for all x in P}` for a polygon with the origin strictly inside.
pub fn polar(p: &Polygon) -> Result<Polygon> {
    let origin = Point::int(0, 0);
    if !p.contains_strictly(&origin) {
        return Err(Error::Precondition("origin must lie in the interior".into()));
    }
    let verts = p
        .edges()
        .map(|(a, b)| {
            // Outer normal of a counterclockwise edge and its support value.
            let (nx, ny) = (&b.y - &a.y, &a.x - &b.x);
            let c = &nx * &a.x + &ny * &a.y;
            Point::new(-nx / &c, -ny / &c)
        })
        .collect();
    Polygon::new(verts)
}

/// Dual of a lattice polygon whose only interior lattice point is the origin.
pub fn dual_polygon(p: &Polygon) -> Result<Polygon> {
    if !p.is_lattice() {
        return Err(Error::NotLattice);
    }
    if count_interior(p).interior != 1 || !p.contains_strictly(&Point::int(0, 0)) {
        return Err(Error::Precondition(
            "dual polygon requires exactly one interior lattice point, at the origin".into(),
        ));
    }
    polar(p)
}

/// Translate a lattice polygon with exactly one interior lattice point so that point is the origin.
pub fn center_on_interior_point(p: &Polygon) -> Option<Polygon> {
    if !p.is_lattice() {
        return None;
    }
    match lattice_points::interior_points(p).as_slice() {
        [c] => Some(p.translate(&-&c.x, &-&c.y)),
        _ => None,
    }
}

pub fn is_reflexive(p: &Polygon) -> bool {
    dual_polygon(p).map(|d| d.is_lattice()).unwrap_or(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwelveCheck {
    pub boundary: u64,
    pub dual_boundary: u64,
    pub sum: u64,
}

/// `b(P) + b(P*)` for a reflexive polygon (origin as interior point).
pub fn check_twelve(p: &Polygon) -> Result<TwelveCheck> {
    if !is_reflexive(p) {
        return Err(Error::NotReflexive);
    }
    let boundary = count_boundary(p)?;
    let dual_boundary = count_boundary(&polar(p)?)?;
    Ok(TwelveCheck { boundary, dual_boundary, sum: boundary + dual_boundary })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaIdentity {
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
    pub holds: bool,
    pub interior: u64,
    pub n_smooth: u64,
    #[serde(with = "rational::serde_str")]
    pub interior_hull_area: Rational,
}

/// `area(P) = 2(k+1) + 2 - n_smooth/2 - area(F(P))`, both sides exact.
pub fn area_identity(p: &Polygon) -> Result<AreaIdentity> {
    if !p.is_lattice() {
        return Err(Error::NotLattice);
    }
    let k = count_interior(p).interior;
    if k == 0 {
        return Err(Error::NoInteriorPoints);
    }
    let n = n_smooth(p)?;
    let f_area = interior_hull(p).map(|h| h.area()).unwrap_or_else(Rational::zero);
    let lhs = area(p);
    let rhs = rational::int(2 * (k as i64 + 1) + 2) - rational::frac(n as i64, 2) - &f_area;
    Ok(AreaIdentity { holds: lhs == rhs, lhs, rhs, interior: k, n_smooth: n, interior_hull_area: f_area })
}

/// For two-dimensional `F(P)`: `(b(P) - b(F(P)), 12 - n_smooth)`, which must agree.
pub fn boundary_difference_identity(p: &Polygon) -> Result<Option<(i64, i64)>> {
    let f = match interior_hull(p) {
        Some(f) if f.dim() == 2 => f,
        _ => return Ok(None),
    };
    let b = count_boundary(p)? as i64;
    let bf: i64 = f.boundary_lattice_points()?.try_into().expect("small count");
    let n = n_smooth(p)? as i64;
    Ok(Some((b - bf, 12 - n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn delta(m: i64) -> Polygon {
        Polygon::from_ints(&[(0, 0), (m, 0), (0, m)]).unwrap()
    }

    fn q_reflexive() -> Polygon {
        Polygon::from_ints(&[(1, 0), (0, 1), (-1, -1)]).unwrap()
    }

    fn cone(u: Vec2, v: Vec2) -> Cone {
        Cone::new(u, v).unwrap()
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(hirzebruch_jung(2, 1), vec![2]);
        assert_eq!(hirzebruch_jung(3, 2), vec![2, 2]);
        assert_eq!(hirzebruch_jung(3, 1), vec![3]);
        assert_eq!(hirzebruch_jung(7, 3), vec![3, 2, 2]);
        assert!(hirzebruch_jung(5, 0).is_empty());
    }

    #[test]
    fn cone_resolution_examples() {
        assert!(resolve_cone(&cone((1, 0), (0, 1))).is_empty());
        assert_eq!(resolve_cone(&cone((1, 0), (1, 2))), vec![(1, 1)]);
        for d in 1..=12 {
            let rays = resolve_cone(&cone((1, 0), (1, d)));
            assert_eq!(rays, (1..d).map(|j| (1, j)).collect::<Vec<_>>());
        }
        // Opposite orientation gives the same rays in reverse order.
        assert_eq!(resolve_cone(&cone((1, 3), (1, 0))), vec![(1, 2), (1, 1)]);
        assert!(Cone::new((1, 0), (-1, 0)).is_err());
        assert!(Cone::new((2, 0), (0, 1)).is_err());
    }

    #[test]
    fn fans() {
        assert_eq!(normal_fan(&delta(1)).unwrap().rays, vec![(0, -1), (1, 1), (-1, 0)]);
        assert_eq!(normal_fan(&delta(4)).unwrap(), normal_fan(&delta(1)).unwrap());
        let sq = Polygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(normal_fan(&sq).unwrap().rays, vec![(0, -1), (1, 0), (0, 1), (-1, 0)]);
        assert_eq!(n_smooth(&sq).unwrap(), 4);
        assert_eq!(n_smooth(&delta(3)).unwrap(), 3);
        assert_eq!(n_smooth(&q_reflexive()).unwrap(), 9);
    }

    #[test]
    fn refinement_is_smooth() {
        let p = Polygon::from_ints(&[(0, 0), (5, 1), (3, 4), (-2, 3)]).unwrap();
        let rays = normal_fan(&p).unwrap().smooth_refinement();
        for i in 0..rays.len() {
            assert_eq!(cross(rays[i], rays[(i + 1) % rays.len()]), 1);
        }
    }

    #[test]
    fn duals() {
        let d = dual_polygon(&q_reflexive()).unwrap();
        assert_eq!(d, Polygon::from_ints(&[(-1, -1), (2, -1), (-1, 2)]).unwrap());
        assert_eq!(count_boundary(&d).unwrap(), 9);
        let diamond = Polygon::from_ints(&[(1, 0), (0, 1), (-1, 0), (0, -1)]).unwrap();
        let sq = Polygon::from_ints(&[(1, 1), (-1, 1), (-1, -1), (1, -1)]).unwrap();
        assert_eq!(dual_polygon(&diamond).unwrap(), sq);
        assert_eq!(dual_polygon(&sq).unwrap(), diamond);
        assert!(dual_polygon(&delta(3)).is_err());
        let centered = center_on_interior_point(&delta(3)).unwrap();
        assert_eq!(dual_polygon(&dual_polygon(&centered).unwrap()).unwrap(), centered);
    }

    #[test]
    fn twelve() {
        assert_eq!(check_twelve(&q_reflexive()).unwrap(), TwelveCheck { boundary: 3, dual_boundary: 9, sum: 12 });
        let diamond = Polygon::from_ints(&[(1, 0), (0, 1), (-1, 0), (0, -1)]).unwrap();
        assert_eq!(check_twelve(&diamond).unwrap(), TwelveCheck { boundary: 4, dual_boundary: 8, sum: 12 });
        assert_eq!(check_twelve(&delta(4)), Err(Error::NotReflexive));
    }

    #[test]
    fn identity_examples() {
        let a = area_identity(&delta(3)).unwrap();
        assert_eq!((a.lhs.clone(), a.rhs.clone()), (frac(9, 2), frac(9, 2)));
        assert_eq!(a.n_smooth, 3);
        assert!(a.holds);
        let b = area_identity(&delta(4)).unwrap();
        assert_eq!(b.lhs, int(8));
        assert_eq!(b.interior_hull_area, frac(1, 2));
        assert!(b.holds);
        assert_eq!(area_identity(&delta(2)), Err(Error::NoInteriorPoints));
        assert_eq!(boundary_difference_identity(&delta(6)).unwrap(), Some((9, 9)));
    }
}
