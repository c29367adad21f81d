use proptest::prelude::*;

use latpoly::bounds::{bound_fine, verify_with};
use latpoly::canonical::canonical_form;
use latpoly::geom::{area, convex_hull, Hull, Point, Polygon};
use latpoly::lattice_points::{count_boundary, count_interior, count_interior_by_grid_scan, interior_hull};
use latpoly::rational::{frac, int, Rational};
use latpoly::toric::n_smooth;
use latpoly::width::{lattice_width, slice_profile, width_normalize};
use latpoly::{CheckSet, UnimodularAffineMap};

fn polygon_from(points: Vec<(i64, i64)>, den: i64) -> Option<Polygon> {
    let pts: Vec<Point> = points.into_iter().map(|(x, y)| Point::new(frac(x, den), frac(y, den))).collect();
    match convex_hull(&pts).ok()? {
        Hull::Polygon { polygon } => Some(polygon),
        _ => None,
    }
}

fn lattice_polygon() -> impl Strategy<Value = Polygon> {
    prop::collection::vec((-6i64..=6, -6i64..=6), 3..10).prop_filter_map("flat hull", |v| polygon_from(v, 1))
}

fn rational_polygon() -> impl Strategy<Value = Polygon> {
    (1i64..=4)
        .prop_flat_map(|den| (prop::collection::vec((-12i64..=12, -12i64..=12), 3..9), Just(den)))
        .prop_filter_map("flat hull", |(v, den)| polygon_from(v, den))
}

/// Products of elementary matrices followed by a translation.
fn unimodular_map() -> impl Strategy<Value = UnimodularAffineMap> {
    (prop::collection::vec(0u8..4, 0..6), -5i64..=5, -5i64..=5).prop_map(|(ops, b1, b2)| {
        let mut m = UnimodularAffineMap::identity();
        for op in ops {
            let a = match op {
                0 => [[1, 1], [0, 1]],
                1 => [[1, 0], [-1, 1]],
                2 => [[0, 1], [1, 0]],
                _ => [[-1, 0], [0, 1]],
            };
            m = UnimodularAffineMap::linear(a).unwrap().compose(&m);
        }
        UnimodularAffineMap::translation(b1, b2).compose(&m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lattice_invariants_survive_maps(p in lattice_polygon(), u in unimodular_map()) {
        let q = u.apply(&p);
        prop_assert_eq!(area(&p), area(&q));
        prop_assert_eq!(count_interior(&p).interior, count_interior(&q).interior);
        prop_assert_eq!(count_boundary(&p).unwrap(), count_boundary(&q).unwrap());
        prop_assert_eq!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
        prop_assert_eq!(n_smooth(&p).unwrap(), n_smooth(&q).unwrap());
        let (fp, fq) = (interior_hull(&p), interior_hull(&q));
        prop_assert_eq!(fp.as_ref().map(Hull::area), fq.as_ref().map(Hull::area));
        prop_assert_eq!(fp.map(|h| h.dim()), fq.map(|h| h.dim()));
    }

    #[test]
    fn rational_invariants_survive_maps(p in rational_polygon(), u in unimodular_map()) {
        let q = u.apply(&p);
        prop_assert_eq!(count_interior(&p).interior, count_interior(&q).interior);
        prop_assert_eq!(lattice_width(&p).width, lattice_width(&q).width);
        prop_assert_eq!(lattice_width(&p).directions.len(), lattice_width(&q).directions.len());
    }

    #[test]
    fn pick(p in lattice_polygon()) {
        let k = count_interior_by_grid_scan(&p);
        let b = count_boundary(&p).unwrap();
        prop_assert_eq!(area(&p), int(k as i64) + frac(b as i64, 2) - int(1));
    }

    #[test]
    fn line_counts_match_grid_scan(p in rational_polygon()) {
        prop_assert_eq!(count_interior(&p).interior, count_interior_by_grid_scan(&p));
    }

    #[test]
    fn slice_profile_is_concave(p in rational_polygon()) {
        let prof = slice_profile(&p);
        let pts: Vec<(Rational, Rational)> = prof.breakpoints.iter().cloned().zip(prof.lengths.iter().cloned()).collect();
        for w in pts.windows(3) {
            let (a, b, c) = (&w[0], &w[1], &w[2]);
            // b lies on or above the chord from a to c.
            let chord = &a.1 + (&c.1 - &a.1) * (&b.0 - &a.0) / (&c.0 - &a.0);
            prop_assert!(b.1 >= chord);
        }
        prop_assert_eq!(prof.max_length(), prof.lengths.iter().max().unwrap().clone());
    }

    #[test]
    fn width_data_is_normalized(p in rational_polygon()) {
        for d in lattice_width(&p).directions {
            let lwd = width_normalize(&p, d).unwrap();
            prop_assert!(lwd.satisfies_normalization());
            let q = lwd.normalized(&p);
            prop_assert_eq!(q.x_range(), (lwd.x_l.clone(), lwd.x_r.clone()));
            let counts = count_interior(&q);
            for v in bound_fine(&q, &lwd, &counts).unwrap() {
                prop_assert!(!v.is_violation(), "{:?}", v);
            }
        }
    }

    #[test]
    fn reports_are_clean(p in rational_polygon()) {
        let r = verify_with(&p, CheckSet::ALL);
        prop_assert!(r.is_clean(), "{:?}", r.anomalies);
    }
}
