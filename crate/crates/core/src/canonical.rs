//! Normal form of lattice polygons up to affine unimodular equivalence.
//!
//! For every vertex and both orientations, the polygon is moved so that the
//! vertex sits at the origin, its outgoing edge runs along the positive
//! x-axis and the incoming edge vector has x-coordinate in `[0, height)`.
//! Those conditions pin down the affine unimodular map uniquely, so the
//! lexicographically smallest of these images (after shifting the bounding
//! box to the origin) is an invariant of the equivalence class.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::Result;
use crate::geom::{Point, Polygon};
use crate::rational::Rational;

/// Canonical vertex list of a counterclockwise, strictly convex lattice cycle.
pub fn canonical_vertices<T>(ccw: &[(T, T)]) -> Vec<(T, T)>
where
    T: Integer + Signed + Clone,
{
    let reflected: Vec<(T, T)> = ccw.iter().rev().map(|(x, y)| (-x.clone(), y.clone())).collect();
    let mut best: Option<Vec<(T, T)>> = None;
    for cycle in [ccw, reflected.as_slice()] {
        for i in 0..cycle.len() {
            let cand = edge_adapted_image(cycle, i);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("polygon has vertices")
}

fn edge_adapted_image<T>(cycle: &[(T, T)], i: usize) -> Vec<(T, T)>
where
    T: Integer + Signed + Clone,
{
    let n = cycle.len();
    let (vx, vy) = cycle[i].clone();
    let (nx, ny) = cycle[(i + 1) % n].clone();
    let (dx, dy) = (nx - vx.clone(), ny - vy.clone());
    let g = dx.gcd(&dy);
    let (a, b) = (dx / g.clone(), dy / g);
    let eg = a.extended_gcd(&b);
    let (s, t) = if eg.gcd.is_negative() { (-eg.x, -eg.y) } else { (eg.x, eg.y) };
    // Rows (s, t) and (-b, a): sends the primitive edge direction to (1, 0).
    let lin = |(x, y): &(T, T)| {
        let (ux, uy) = (x.clone() - vx.clone(), y.clone() - vy.clone());
        (
            s.clone() * ux.clone() + t.clone() * uy.clone(),
            a.clone() * uy - b.clone() * ux,
        )
    };
    let (px, py) = lin(&cycle[(i + n - 1) % n]);
    debug_assert!(py.is_positive());
    let shear = px.div_floor(&py);
    let mut img: Vec<(T, T)> = cycle
        .iter()
        .map(|v| {
            let (x, y) = lin(v);
            (x - shear.clone() * y.clone(), y)
        })
        .collect();
    let min_x = img.iter().map(|(x, _)| x.clone()).min().unwrap();
    let min_y = img.iter().map(|(_, y)| y.clone()).min().unwrap();
    debug_assert!(min_y == T::zero());
    for v in img.iter_mut() {
        v.0 = v.0.clone() - min_x.clone();
    }
    let start = (0..n).min_by(|&p, &q| img[p].cmp(&img[q])).unwrap();
    img.rotate_left(start);
    img
}

/// Canonical representative of the affine unimodular class of a lattice polygon.
pub fn canonical_form(p: &Polygon) -> Result<Polygon> {
    let verts = p.lattice_vertices()?;
    let canon = canonical_vertices::<BigInt>(&verts);
    Ok(Polygon::new(
        canon
            .into_iter()
            .map(|(x, y)| Point::new(Rational::from_integer(x), Rational::from_integer(y)))
            .collect(),
    )
    .expect("canonical image is a valid polygon"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rational::frac;
    use crate::unimodular::UnimodularAffineMap;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn delta(m: i64) -> Polygon {
        Polygon::from_ints(&[(0, 0), (m, 0), (0, m)]).unwrap()
    }

    #[test]
    fn invariant_under_random_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let base = canonical_form(&delta(3)).unwrap();
        for _ in 0..1000 {
            let u = UnimodularAffineMap::random(&mut rng, 5);
            assert_eq!(canonical_form(&u.apply(&delta(3))).unwrap(), base);
        }
        let hex = Polygon::from_ints(&[(0, 0), (2, 0), (4, 1), (4, 3), (1, 3), (0, 2)]).unwrap();
        let hc = canonical_form(&hex).unwrap();
        for _ in 0..200 {
            let u = UnimodularAffineMap::random(&mut rng, 5);
            assert_eq!(canonical_form(&u.apply(&hex)).unwrap(), hc);
        }
    }

    #[test]
    fn separates_classes() {
        assert_ne!(canonical_form(&delta(1)).unwrap(), canonical_form(&delta(2)).unwrap());
        // Same area and vertex count, different classes.
        let a = Polygon::from_ints(&[(0, 0), (2, 0), (0, 1)]).unwrap();
        let b = Polygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn generic_and_bigint_agree() {
        let v: Vec<(i64, i64)> = vec![(0, 0), (3, 1), (2, 3), (-1, 2)];
        let p = Polygon::from_ints(&v).unwrap();
        let ccw: Vec<(i64, i64)> = p
            .lattice_vertices()
            .unwrap()
            .iter()
            .map(|(x, y)| (x.try_into().unwrap(), y.try_into().unwrap()))
            .collect();
        let small = canonical_vertices(&ccw);
        let big = canonical_form(&p).unwrap();
        let big: Vec<(i64, i64)> = big
            .lattice_vertices()
            .unwrap()
            .iter()
            .map(|(x, y)| (x.try_into().unwrap(), y.try_into().unwrap()))
            .collect();
        assert_eq!(small, big);
    }

    #[test]
    fn requires_lattice() {
        let t = Polygon::new(vec![
            Point::int(0, 0),
            Point::new(frac(3, 2), frac(0, 1)),
            Point::int(0, 6),
        ])
        .unwrap();
        assert_eq!(canonical_form(&t), Err(Error::NotLattice));
    }
}
