//! Integer dual vectors and affine unimodular maps `x -> A x + b`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Hull, Point, Polygon};
use crate::rational::{self, Rational};

/// A nonzero integer linear functional `(x, y) -> p x + q y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DualVector {
    pub p: i64,
    pub q: i64,
}

impl std::ops::Neg for DualVector {
    type Output = DualVector;

    fn neg(self) -> DualVector {
        DualVector { p: -self.p, q: -self.q }
    }
}

impl DualVector {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { p, q })
    }

    pub fn is_primitive(&self) -> bool {
        self.p.gcd(&self.q) == 1
    }

    /// Representative of `{v, -v}` with `p > 0`, or `p = 0, q > 0`.
    pub fn sign_normalized(self) -> Self {
        if self.p > 0 || (self.p == 0 && self.q > 0) {
            self
        } else {
            -self
        }
    }

    pub fn eval(&self, pt: &Point) -> Rational {
        rational::int(self.p) * &pt.x + rational::int(self.q) * &pt.y
    }
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// `x -> A x + b` with `A` in GL(2, Z) and `b` integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularAffineMap {
    pub a11: i64,
    pub a12: i64,
    pub a21: i64,
    pub a22: i64,
    pub b1: i64,
    pub b2: i64,
}

impl UnimodularAffineMap {
    pub fn new(a: [[i64; 2]; 2], b: [i64; 2]) -> Result<Self> {
        let m = Self { a11: a[0][0], a12: a[0][1], a21: a[1][0], a22: a[1][1], b1: b[0], b2: b[1] };
        let det = m.det();
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self { a11: 1, a12: 0, a21: 0, a22: 1, b1: 0, b2: 0 }
    }

    pub fn linear(a: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(a, [0, 0])
    }

    pub fn translation(b1: i64, b2: i64) -> Self {
        Self { b1, b2, ..Self::identity() }
    }

    pub fn det(&self) -> i64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a11: self.a11 * other.a11 + self.a12 * other.a21,
            a12: self.a11 * other.a12 + self.a12 * other.a22,
            a21: self.a21 * other.a11 + self.a22 * other.a21,
            a22: self.a21 * other.a12 + self.a22 * other.a22,
            b1: self.a11 * other.b1 + self.a12 * other.b2 + self.b1,
            b2: self.a21 * other.b1 + self.a22 * other.b2 + self.b2,
        }
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let (a11, a12, a21, a22) = (d * self.a22, -d * self.a12, -d * self.a21, d * self.a11);
        Self {
            a11,
            a12,
            a21,
            a22,
            b1: -(a11 * self.b1 + a12 * self.b2),
            b2: -(a21 * self.b1 + a22 * self.b2),
        }
    }

    pub fn apply_point(&self, pt: &Point) -> Point {
        let c = |v: i64| rational::int(v);
        Point::new(
            c(self.a11) * &pt.x + c(self.a12) * &pt.y + c(self.b1),
            c(self.a21) * &pt.x + c(self.a22) * &pt.y + c(self.b2),
        )
    }

    pub fn apply_lattice(&self, (x, y): &(BigInt, BigInt)) -> (BigInt, BigInt) {
        let c = BigInt::from;
        (
            c(self.a11) * x + c(self.a12) * y + c(self.b1),
            c(self.a21) * x + c(self.a22) * y + c(self.b2),
        )
    }

    /// Image of a polygon. Areas and lattice point counts are preserved.
    pub fn apply(&self, p: &Polygon) -> Polygon {
        Polygon::new(p.vertices().iter().map(|v| self.apply_point(v)).collect())
            .expect("unimodular image of a convex polygon is convex")
    }

    pub fn apply_hull(&self, h: &Hull) -> Hull {
        match h {
            Hull::Point { point } => Hull::Point { point: self.apply_point(point) },
            Hull::Segment { from, to } => {
                let (a, b) = (self.apply_point(from), self.apply_point(to));
                let (from, to) = if a <= b { (a, b) } else { (b, a) };
                Hull::Segment { from, to }
            }
            Hull::Polygon { polygon } => Hull::Polygon { polygon: self.apply(polygon) },
        }
    }

    /// The functional `w'` on the image with `w'(A x + b) = w(x) + const`,
    /// i.e. `w' = w A^{-1}`.
    pub fn transport_dual(&self, w: DualVector) -> DualVector {
        let inv = self.inverse();
        DualVector {
            p: w.p * inv.a11 + w.q * inv.a21,
            q: w.p * inv.a12 + w.q * inv.a22,
        }
    }

    /// Rejection-samples a unimodular map with entries and translation in
    /// `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        loop {
            let mut e = || rng.gen_range(-bound..=bound);
            let a = [[e(), e()], [e(), e()]];
            let b = [e(), e()];
            if let Ok(m) = Self::new(a, b) {
                return m;
            }
        }
    }
}

pub fn apply_map(u: &UnimodularAffineMap, p: &Polygon) -> Polygon {
    u.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::area;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shear_and_reflection() {
        let sq = Polygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let shear = UnimodularAffineMap::linear([[1, 0], [1, 1]]).unwrap();
        let img = shear.apply(&sq);
        assert_eq!(img, Polygon::from_ints(&[(0, 0), (1, 1), (1, 2), (0, 1)]).unwrap());
        assert_eq!(area(&img), rational::int(1));

        let tri = Polygon::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let swap = UnimodularAffineMap::linear([[0, 1], [1, 0]]).unwrap();
        assert_eq!(swap.det(), -1);
        assert_eq!(swap.apply(&tri), tri);
        assert_eq!(UnimodularAffineMap::identity().apply(&tri), tri);
    }

    #[test]
    fn rejects_non_unimodular() {
        assert_eq!(UnimodularAffineMap::linear([[2, 0], [0, 1]]), Err(Error::NotUnimodular(2)));
        assert_eq!(DualVector::new(0, 0), Err(Error::ZeroDirection));
    }

    #[test]
    fn inverse_and_transport() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pt = Point::new(rational::frac(3, 2), rational::frac(-1, 3));
        for _ in 0..200 {
            let m = UnimodularAffineMap::random(&mut rng, 5);
            assert_eq!(m.compose(&m.inverse()), UnimodularAffineMap::identity());
            assert_eq!(m.inverse().apply_point(&m.apply_point(&pt)), pt);
            let w = DualVector { p: 2, q: -3 };
            let w2 = m.transport_dual(w);
            let other = Point::int(4, 1);
            assert_eq!(
                w.eval(&pt) - w.eval(&other),
                w2.eval(&m.apply_point(&pt)) - w2.eval(&m.apply_point(&other))
            );
        }
    }
}
