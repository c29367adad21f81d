//! Area bounds as exact evaluators, verdicts against concrete polygons, and
//! the extremal families that make them sharp.

mod families;
mod fine;
mod verify;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use families::{enumerate_reflexive, gen_delta, gen_q, gen_t, is_delta_multiple, QVariant};
pub use fine::bound_fine;
pub use verify::{verify_all, verify_with, CheckSet};

/// Value of an area bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    Finite(Rational),
    /// No finite bound exists (lattice width at most 1).
    Unbounded,
    /// The branch does not apply and was not evaluated.
    NotEvaluated,
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoundValue::Finite(r) => s.serialize_str(&rational::to_string(r)),
            BoundValue::Unbounded => s.serialize_str("unbounded"),
            BoundValue::NotEvaluated => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for BoundValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match Option::<String>::deserialize(d)?.as_deref() {
            None => BoundValue::NotEvaluated,
            Some("unbounded") => BoundValue::Unbounded,
            Some(s) => BoundValue::Finite(rational::parse(s).map_err(serde::de::Error::custom)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub bound_name: String,
    /// Whether the hypotheses of the bound hold for this polygon.
    pub applicable: bool,
    pub bound_value: BoundValue,
    #[serde(with = "rational::serde_str")]
    pub actual_area: Rational,
    pub satisfied: bool,
    pub sharp: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundVerdict {
    pub fn new(name: impl Into<String>, applicable: bool, value: BoundValue, actual: &Rational) -> Self {
        let (satisfied, sharp) = match &value {
            BoundValue::Finite(b) => (actual <= b, actual == b),
            BoundValue::Unbounded => (true, false),
            BoundValue::NotEvaluated => (false, false),
        };
        Self {
            bound_name: name.into(),
            applicable,
            bound_value: value,
            actual_area: actual.clone(),
            satisfied,
            sharp,
            note: None,
        }
    }

    pub fn skipped(name: impl Into<String>, actual: &Rational) -> Self {
        Self::new(name, false, BoundValue::NotEvaluated, actual)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// An applicable bound that the polygon exceeds.
    pub fn is_violation(&self) -> bool {
        self.applicable && !self.satisfied
    }
}

fn check_k(k: u64) -> Result<Rational> {
    if k < 1 {
        return Err(Error::Precondition("bound requires k >= 1".into()));
    }
    Ok(rational::int(k as i64))
}

/// `2(k+1) - floor(max(lw/2 - 3, 0)) * floor(lw/2 - 2)`.
pub fn bound_big_width(k: u64, lw: &Rational) -> Result<Rational> {
    let k = check_k(k)?;
    let half = lw / rational::int(2);
    let first = rational::floor(&(&half - rational::int(3)).max(Rational::zero()));
    let second = rational::floor(&(&half - rational::int(2)));
    Ok((k + rational::int(1)) * rational::int(2) - Rational::from_integer(first * second))
}

/// Piecewise bound for lattice width at most 5.
pub fn bound_small_width(k: u64, lw: &Rational) -> Result<BoundValue> {
    let k = check_k(k)?;
    let one = rational::int(1);
    if lw <= &Rational::zero() {
        return Err(Error::Precondition("lattice width must be positive".into()));
    }
    if lw > &rational::int(5) {
        return Err(Error::Precondition("use bound_big_width".into()));
    }
    if lw <= &one {
        return Ok(BoundValue::Unbounded);
    }
    let k1 = &k + &one;
    if lw <= &rational::int(2) {
        Ok(BoundValue::Finite(lw * lw / (rational::int(2) * (lw - &one)) * k1))
    } else {
        Ok(BoundValue::Finite(k1 * rational::int(2) + rational::frac(1, 2)))
    }
}

/// `2(k+1) + 1/2` for lattice polygons.
pub fn bound_scott(k: u64) -> Result<Rational> {
    let k = check_k(k)?;
    Ok((k + rational::int(1)) * rational::int(2) + rational::frac(1, 2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalBound {
    pub value: Rational,
    /// False for `k = 1, l = 2`, where the bound coincides with the lattice
    /// bound `9/2` and further maximizers may exist.
    pub established: bool,
}

/// `area(T_{k,l}) = (l+1)^2 / (2l) * (k+1)` for denominator `l >= 2`.
pub fn bound_rational(k: u64, l: u64) -> Result<RationalBound> {
    let kq = check_k(k)?;
    if l < 2 {
        return Err(Error::Precondition("Scott's bound governs l = 1".into()));
    }
    let lq = rational::int(l as i64);
    let value = (&lq + rational::int(1)) * (&lq + rational::int(1)) / (lq * rational::int(2)) * (kq + rational::int(1));
    Ok(RationalBound { value, established: k >= 2 || l >= 3 })
}

/// `2k + 4 - n/2 - 3/8 (lw - 2)^2` for lattice polygons with `lw >= 3`.
pub fn bound_coleman_refined(k: u64, n_vertices: u64, lw: &Rational) -> Result<Rational> {
    if lw < &rational::int(3) {
        return Err(Error::Precondition("refined bound requires lw >= 3".into()));
    }
    let d = lw - rational::int(2);
    Ok(rational::int(2 * k as i64 + 4) - rational::frac(n_vertices as i64, 2) - rational::frac(3, 8) * &d * &d)
}

/// Whether the refined bound needs the exclusion of multiples of the standard triangle.
pub fn coleman_refined_needs_exclusion(lw: &Rational) -> bool {
    lw < &rational::int(10)
}

/// `2k + 4 - n/2`.
pub fn bound_coleman(k: u64, n_vertices: u64) -> Result<Rational> {
    check_k(k)?;
    Ok(rational::int(2 * k as i64 + 4) - rational::frac(n_vertices as i64, 2))
}

/// `2k + 2 - floor((m-5)/2) * floor((m-3)/2)` for `m >= 3` interior vertical lines.
pub fn bound_three_or_more(k: u64, m: i64, last_line_occupied: bool) -> Rational {
    let k2 = rational::int(2 * k as i64 + 2);
    if last_line_occupied || m >= 5 {
        k2 - rational::int(Integer::div_floor(&(m - 5), &2) * Integer::div_floor(&(m - 3), &2))
    } else {
        k2 + rational::frac(1, 2)
    }
}
