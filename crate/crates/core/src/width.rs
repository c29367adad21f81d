//! Width function, lattice width, vertical slicing profile and lattice width data.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Polygon;
use crate::lattice_points;
use crate::rational::{self, Rational};
use crate::unimodular::{DualVector, UnimodularAffineMap};

/// `max v(x) - min v(x)` over the polygon.
pub fn width_in_direction(p: &Polygon, v: DualVector) -> Result<Rational> {
    if v.p == 0 && v.q == 0 {
        return Err(Error::ZeroDirection);
    }
    let mut values = p.vertices().iter().map(|x| v.eval(x));
    let first = values.next().unwrap();
    let (lo, hi) = values.fold((first.clone(), first), |(lo, hi), y| {
        if y < lo {
            (y, hi)
        } else if y > hi {
            (lo, y)
        } else {
            (lo, hi)
        }
    });
    Ok(hi - lo)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeWidth {
    #[serde(with = "rational::serde_str")]
    pub width: Rational,
    /// Every width direction, one per `±` pair, sign-normalized and sorted.
    pub directions: Vec<DualVector>,
}

fn floor_i64(r: &Rational) -> i64 {
    rational::floor(r).to_i64().expect("direction search box fits in i64")
}

/// Exact lattice width and all directions attaining it.
///
/// Any optimal `v = (p, q)` satisfies `|p| * Lx <= W0` and `|q| * Ly <= W0`,
/// where `W0` is the smaller coordinate width and `Lx`, `Ly` are the longest
/// horizontal and vertical chords, so the search box below is complete.
pub fn lattice_width(p: &Polygon) -> LatticeWidth {
    let e1 = DualVector { p: 1, q: 0 };
    let e2 = DualVector { p: 0, q: 1 };
    let w0 = width_in_direction(p, e1).unwrap().min(width_in_direction(p, e2).unwrap());
    let longest_vertical = slice_profile(p).max_length();
    let longest_horizontal = slice_profile(&p.transpose()).max_length();
    let p_max = floor_i64(&(&w0 / &longest_horizontal));
    let q_max = floor_i64(&(&w0 / &longest_vertical));

    let mut best: Option<Rational> = None;
    let mut directions = Vec::new();
    for a in 0..=p_max {
        for b in -q_max..=q_max {
            if (a == 0 && b <= 0) || a.gcd(&b) != 1 {
                continue;
            }
            let v = DualVector { p: a, q: b };
            let w = width_in_direction(p, v).unwrap();
            match best.as_ref().map(|m| w.cmp(m)) {
                None | Some(std::cmp::Ordering::Less) => {
                    best = Some(w);
                    directions.clear();
                    directions.push(v);
                }
                Some(std::cmp::Ordering::Equal) => directions.push(v),
                Some(std::cmp::Ordering::Greater) => {}
            }
        }
    }
    directions.sort();
    LatticeWidth { width: best.expect("search box contains (1, 0) and (0, 1)"), directions }
}

pub fn is_width_direction(p: &Polygon, w: DualVector) -> Result<bool> {
    Ok(w.is_primitive() && width_in_direction(p, w)? == lattice_width(p).width)
}

/// Piecewise-linear concave profile `t -> |P ∩ {x1 = t}|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceProfile {
    /// Sorted distinct vertex x-coordinates.
    pub breakpoints: Vec<Rational>,
    pub lengths: Vec<Rational>,
    /// Exact set of maximizers `[lo, hi]`.
    pub argmax: (Rational, Rational),
}

impl SliceProfile {
    pub fn max_length(&self) -> Rational {
        self.lengths.iter().max().unwrap().clone()
    }

    /// Linear interpolation between breakpoints; zero outside the support.
    pub fn value_at(&self, t: &Rational) -> Rational {
        let bp = &self.breakpoints;
        if t < &bp[0] || t > bp.last().unwrap() {
            return Rational::zero();
        }
        match bp.binary_search(t) {
            Ok(i) => self.lengths[i].clone(),
            Err(i) => {
                let (t0, t1) = (&bp[i - 1], &bp[i]);
                let (l0, l1) = (&self.lengths[i - 1], &self.lengths[i]);
                l0 + (l1 - l0) * (t - t0) / (t1 - t0)
            }
        }
    }
}

pub fn slice_profile(p: &Polygon) -> SliceProfile {
    let mut breakpoints: Vec<Rational> = p.vertices().iter().map(|v| v.x.clone()).collect();
    breakpoints.sort();
    breakpoints.dedup();
    let lengths: Vec<Rational> = breakpoints.iter().map(|t| p.slice_length(t)).collect();
    let max = lengths.iter().max().unwrap();
    let first = lengths.iter().position(|l| l == max).unwrap();
    let last = lengths.iter().rposition(|l| l == max).unwrap();
    let argmax = (breakpoints[first].clone(), breakpoints[last].clone());
    SliceProfile { breakpoints, lengths, argmax }
}

/// Position of the longest vertical slicing length: midpoint of the argmax interval.
pub fn plvsl(p: &Polygon) -> Rational {
    let (lo, hi) = slice_profile(p).argmax;
    (lo + hi) / rational::int(2)
}

/// Normalized coordinates for one lattice width direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeWidthData {
    pub direction: DualVector,
    /// Sends the polygon to width coordinates; its first row is `±direction`.
    pub map: UnimodularAffineMap,
    #[serde(with = "rational::serde_str")]
    pub x_l: Rational,
    #[serde(with = "rational::serde_str")]
    pub x_r: Rational,
    #[serde(with = "rational::serde_str")]
    pub plvsl: Rational,
    pub interior_vertical_lines: i64,
}

impl LatticeWidthData {
    pub fn normalized(&self, p: &Polygon) -> Polygon {
        self.map.apply(p)
    }

    /// `2 plvsl <= ceil(x_l) + floor(x_r)`, with the tie rule
    /// `ceil(x_l) - x_l <= x_r - floor(x_r)` on equality.
    pub fn satisfies_normalization(&self) -> bool {
        let cl = Rational::from_integer(rational::ceil(&self.x_l));
        let fr = Rational::from_integer(rational::floor(&self.x_r));
        let lhs = &self.plvsl * rational::int(2);
        let rhs = &cl + &fr;
        let in_range = !self.x_l.is_negative() && self.x_l < rational::int(1);
        in_range && (lhs < rhs || (lhs == rhs && (&cl - &self.x_l) <= (&self.x_r - &fr)))
    }
}

fn bezout_completion(w: DualVector) -> [[i64; 2]; 2] {
    let eg = w.p.extended_gcd(&w.q);
    let (x, y) = if eg.gcd < 0 { (-eg.x, -eg.y) } else { (eg.x, eg.y) };
    // p*x + q*y = 1, so the rows (p, q), (-y, x) have determinant 1.
    [[w.p, w.q], [-y, x]]
}

fn place(p: &Polygon, a: [[i64; 2]; 2]) -> (UnimodularAffineMap, Polygon) {
    let lin = UnimodularAffineMap::linear(a).expect("completed basis is unimodular");
    let img = lin.apply(p);
    let shift = -rational::floor(&img.x_range().0);
    let shift = shift.to_i64().expect("translation fits in i64");
    let map = UnimodularAffineMap::translation(shift, 0).compose(&lin);
    (map, map.apply(p))
}

/// Lattice width data of `p` for the width direction `w`.
pub fn width_normalize(p: &Polygon, w: DualVector) -> Result<LatticeWidthData> {
    if w.p == 0 && w.q == 0 {
        return Err(Error::ZeroDirection);
    }
    if !is_width_direction(p, w)? {
        return Err(Error::NotWidthDirection);
    }
    let a = bezout_completion(w);
    let build = |a: [[i64; 2]; 2]| {
        let (map, img) = place(p, a);
        let (x_l, x_r) = img.x_range();
        let lines = (rational::ceil(&x_r) - rational::floor(&x_l) - num_bigint::BigInt::from(1))
            .to_i64()
            .expect("line count fits in i64");
        LatticeWidthData { direction: w, map, x_l, x_r, plvsl: plvsl(&img), interior_vertical_lines: lines }
    };
    let data = build(a);
    if data.satisfies_normalization() {
        Ok(data)
    } else {
        let flipped = build([[-a[0][0], -a[0][1]], [-a[1][0], -a[1][1]]]);
        debug_assert!(flipped.satisfies_normalization());
        Ok(flipped)
    }
}

/// A width direction whose data has the shape `([1-a, n+a], (n+1)/2)` with `n` odd.
pub fn is_symmetric_lwd(p: &Polygon) -> Option<DualVector> {
    lattice_width(p).directions.into_iter().find(|&d| {
        let lwd = width_normalize(p, d).expect("direction comes from lattice_width");
        let n = &lwd.x_l + &lwd.x_r - rational::int(1);
        rational::is_integral(&n)
            && n.to_integer().is_odd()
            && n.is_positive()
            && lwd.plvsl == (n + rational::int(1)) / rational::int(2)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlicingBoundKind {
    Length,
    InteriorPoints,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicingViolation {
    #[serde(with = "rational::serde_str")]
    pub h: Rational,
    pub kind: SlicingBoundKind,
    #[serde(with = "rational::serde_str")]
    pub bound: Rational,
    #[serde(with = "rational::serde_str")]
    pub actual: Rational,
}

/// Lower bounds on vertical slice lengths and on interior lattice points per
/// integral vertical line, for a polygon with `(1, 0)` as a width direction.
/// Returns every violation found; an empty list is the expected outcome.
pub fn check_slicing_bounds(p: &Polygon) -> Result<Vec<SlicingViolation>> {
    if !is_width_direction(p, DualVector { p: 1, q: 0 })? {
        return Err(Error::NotWidthDirection);
    }
    let profile = slice_profile(p);
    let (x_l, x_r) = p.x_range();
    let pos = (&profile.argmax.0 + &profile.argmax.1) / rational::int(2);
    let half = (&x_r - &x_l) / rational::int(2);

    let mut probes = profile.breakpoints.clone();
    let mut h = rational::ceil(&x_l);
    while Rational::from_integer(h.clone()) <= x_r {
        probes.push(Rational::from_integer(h.clone()));
        h += num_bigint::BigInt::from(1);
    }
    probes.sort();
    probes.dedup();

    let mut violations = Vec::new();
    for h in &probes {
        let mut bounds = Vec::new();
        if h <= &pos {
            bounds.push(half.clone().min(h - &x_l));
        }
        if h >= &pos {
            bounds.push(half.clone().min(&x_r - h));
        }
        let length = profile.value_at(h);
        for bound in &bounds {
            if &length < bound {
                violations.push(SlicingViolation {
                    h: h.clone(),
                    kind: SlicingBoundKind::Length,
                    bound: bound.clone(),
                    actual: length.clone(),
                });
            }
        }
        // The point-count bound concerns int(P), so only lines through the interior.
        if rational::is_integral(h) && &x_l < h && h < &x_r {
            let (lo, hi) = p.vertical_slice(h).unwrap();
            let interior = Rational::from_integer(rational::integers_strictly_between(&lo, &hi));
            for bound in &bounds {
                let needed = Rational::from_integer(rational::ceil(bound) - num_bigint::BigInt::from(1));
                if interior < needed {
                    violations.push(SlicingViolation {
                        h: h.clone(),
                        kind: SlicingBoundKind::InteriorPoints,
                        bound: needed,
                        actual: interior.clone(),
                    });
                }
            }
        }
    }
    Ok(violations)
}

/// Interior lattice points on the integral vertical lines of the normalized polygon.
pub fn normalized_counts(p: &Polygon, lwd: &LatticeWidthData) -> lattice_points::PointCounts {
    lattice_points::count_interior(&lwd.normalized(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use crate::rational::{frac, int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn delta(m: i64) -> Polygon {
        Polygon::from_ints(&[(0, 0), (m, 0), (0, m)]).unwrap()
    }

    fn unit_square() -> Polygon {
        Polygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    fn t(k: i64, l: i64) -> Polygon {
        Polygon::new(vec![
            Point::int(0, 0),
            Point::new(frac(l + 1, l), int(0)),
            Point::int(0, (l + 1) * (k + 1)),
        ])
        .unwrap()
    }

    fn dv(p: i64, q: i64) -> DualVector {
        DualVector { p, q }
    }

    #[test]
    fn widths() {
        assert_eq!(width_in_direction(&unit_square(), dv(1, 0)).unwrap(), int(1));
        assert_eq!(width_in_direction(&t(4, 3), dv(1, 0)).unwrap(), frac(4, 3));
        let hex = Polygon::from_ints(&[(0, 0), (2, 0), (4, 1), (4, 3), (1, 3), (0, 2)]).unwrap();
        assert_eq!(
            width_in_direction(&hex, dv(2, -3)).unwrap(),
            width_in_direction(&hex, dv(-2, 3)).unwrap()
        );
        assert_eq!(width_in_direction(&hex, dv(0, 0)), Err(Error::ZeroDirection));
    }

    #[test]
    fn lattice_widths() {
        for m in 1..6 {
            let lw = lattice_width(&delta(m));
            assert_eq!(lw.width, int(m));
            assert_eq!(lw.directions, vec![dv(0, 1), dv(1, 0), dv(1, 1)]);
        }
        let lw = lattice_width(&t(1, 2));
        assert_eq!(lw.width, frac(3, 2));
        assert_eq!(lw.directions, vec![dv(1, 0)]);
        let lw = lattice_width(&unit_square());
        assert_eq!(lw.width, int(1));
        assert_eq!(lw.directions, vec![dv(0, 1), dv(1, 0)]);
    }

    #[test]
    fn profiles() {
        let sq = slice_profile(&unit_square());
        assert_eq!(sq.lengths, vec![int(1), int(1)]);
        assert_eq!(sq.argmax, (int(0), int(1)));
        let d = slice_profile(&delta(1));
        assert_eq!(d.value_at(&frac(1, 3)), frac(2, 3));
        assert_eq!(d.argmax, (int(0), int(0)));
        let kite = slice_profile(&Polygon::from_ints(&[(0, 0), (2, -1), (4, 0), (2, 1)]).unwrap());
        assert_eq!(kite.argmax, (int(2), int(2)));
        assert_eq!(kite.max_length(), int(2));
    }

    #[test]
    fn plvsl_values() {
        assert_eq!(plvsl(&unit_square()), frac(1, 2));
        assert_eq!(plvsl(&delta(4)), int(0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        use rand::Rng;
        for _ in 0..50 {
            // Random centrally symmetric hexagon around (c1, c2).
            let (c1, c2) = (frac(rng.gen_range(-9..9), 2), frac(rng.gen_range(-9..9), 3));
            let pts: Vec<Point> = (0..3)
                .flat_map(|_| {
                    let (dx, dy) = (rng.gen_range(-5..=5), rng.gen_range(-5..=5));
                    [
                        Point::new(&c1 + int(dx), &c2 + int(dy)),
                        Point::new(&c1 - int(dx), &c2 - int(dy)),
                    ]
                })
                .collect();
            if let Ok(p) = Polygon::hull_of(&pts) {
                assert_eq!(plvsl(&p), c1);
            }
        }
    }

    #[test]
    fn normalization_examples() {
        for (k, l) in [(1, 1), (1, 2), (3, 4), (5, 7)] {
            let lwd = width_normalize(&t(k, l), dv(1, 0)).unwrap();
            assert_eq!((lwd.x_l.clone(), lwd.x_r.clone(), lwd.plvsl.clone()), (int(0), frac(l + 1, l), int(0)));
            assert_eq!(lwd.interior_vertical_lines, 1);
        }
        let lwd = width_normalize(&unit_square(), dv(1, 0)).unwrap();
        assert_eq!((lwd.x_l, lwd.x_r, lwd.plvsl), (int(0), int(1), frac(1, 2)));
        assert_eq!(width_normalize(&t(1, 2), dv(0, 1)), Err(Error::NotWidthDirection));
    }

    #[test]
    fn normalization_is_well_defined() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let polys = [
            t(2, 3),
            delta(4),
            Polygon::new(vec![
                Point::new(frac(1, 3), int(0)),
                Point::new(frac(7, 2), frac(1, 2)),
                Point::new(int(3), frac(10, 3)),
                Point::new(frac(-1, 2), int(2)),
            ])
            .unwrap(),
        ];
        for p in &polys {
            let lw = lattice_width(p);
            for &w in &lw.directions {
                let base = width_normalize(p, w).unwrap();
                assert!(base.satisfies_normalization());
                for _ in 0..50 {
                    let u = UnimodularAffineMap::random(&mut rng, 5);
                    let img = u.apply(p);
                    let d = width_normalize(&img, u.transport_dual(w)).unwrap();
                    assert_eq!((&d.x_l, &d.x_r, &d.plvsl), (&base.x_l, &base.x_r, &base.plvsl));
                }
            }
        }
    }

    #[test]
    fn symmetric_data() {
        let hex = Polygon::from_ints(&[(2, 0), (2, 2), (0, 2), (-2, 0), (-2, -2), (0, -2)]).unwrap();
        assert!(is_symmetric_lwd(&hex).is_some());
        assert!(is_symmetric_lwd(&t(2, 3)).is_none());
        assert!(is_symmetric_lwd(&unit_square()).is_none());
    }

    #[test]
    fn slicing_bounds() {
        assert!(check_slicing_bounds(&delta(5)).unwrap().is_empty());
        assert!(check_slicing_bounds(&t(3, 2)).unwrap().is_empty());
        assert_eq!(check_slicing_bounds(&t(3, 2).transpose()), Err(Error::NotWidthDirection));
        // At h = 1 on T_{k,l}: slice length k + 1 against min((1 + 1/l)/2, 1).
        let p = t(4, 3);
        assert_eq!(p.slice_length(&int(1)), int(5));
    }
}
