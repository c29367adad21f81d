//! Every invariant and every applicable check on one polygon.

use std::str::FromStr;

use super::{
    bound_big_width, bound_coleman, bound_coleman_refined, bound_fine, bound_rational, bound_scott,
    bound_small_width, coleman_refined_needs_exclusion, gen_delta, is_delta_multiple, BoundValue,
    BoundVerdict,
};
use crate::canonical::canonical_form;
use crate::error::Error;
use crate::geom::{area, denominator, Polygon};
use crate::lattice_points::{boundary_lattice_points, count_interior, interior_hull, pick_area};
use crate::rational::{self, int, Rational};
use crate::report::{HollowClass, InvariantReport, Invariants};
use crate::toric::{
    area_identity, boundary_difference_identity, center_on_interior_point, check_twelve, is_reflexive,
    n_smooth, polar,
};
use crate::width::{check_slicing_bounds, is_symmetric_lwd, lattice_width, width_normalize};

/// Which families of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CheckSet {
    pub scott: bool,
    pub identity: bool,
    pub bounds: bool,
    pub slicing: bool,
    pub twelve: bool,
}

impl CheckSet {
    pub const ALL: CheckSet = CheckSet { scott: true, identity: true, bounds: true, slicing: true, twelve: true };
    pub const NONE: CheckSet = CheckSet { scott: false, identity: false, bounds: false, slicing: false, twelve: false };

    pub fn names(&self) -> Vec<&'static str> {
        [
            (self.scott, "scott"),
            (self.identity, "identity"),
            (self.bounds, "bounds"),
            (self.slicing, "slicing"),
            (self.twelve, "twelve"),
        ]
        .into_iter()
        .filter_map(|(on, n)| on.then_some(n))
        .collect()
    }
}

impl Default for CheckSet {
    fn default() -> Self {
        Self::ALL
    }
}

impl FromStr for CheckSet {
    type Err = Error;

    /// Comma-separated list of `scott`, `identity`, `bounds`, `slicing`, `twelve`, or `all`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut set = CheckSet::NONE;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "all" => set = CheckSet::ALL,
                "scott" => set.scott = true,
                "identity" => set.identity = true,
                "bounds" => set.bounds = true,
                "slicing" => set.slicing = true,
                "twelve" => set.twelve = true,
                other => return Err(Error::Parse(format!("unknown check '{other}'"))),
            }
        }
        Ok(set)
    }
}

pub fn verify_all(p: &Polygon) -> InvariantReport {
    verify_with(p, CheckSet::ALL)
}

pub fn verify_with(p: &Polygon, checks: CheckSet) -> InvariantReport {
    let actual = area(p);
    let counts = count_interior(p);
    let k = counts.interior;
    let lattice = p.is_lattice();
    let lw = lattice_width(p);
    let mut anomalies = Vec::new();
    let mut notes = Vec::new();
    let mut verdicts = Vec::new();

    if lw.directions.len() > 4 {
        anomalies.push(format!("{} lattice width directions", lw.directions.len()));
    } else if lw.directions.len() == 4 {
        notes.push("four lattice width directions".into());
    }

    let width_data: Vec<_> = lw
        .directions
        .iter()
        .map(|&d| width_normalize(p, d).expect("direction comes from lattice_width"))
        .collect();
    let symmetric = is_symmetric_lwd(p);
    let canonical = if lattice { canonical_form(p).ok() } else { None };
    let delta_multiple = is_delta_multiple(p);
    let hull = interior_hull(p);

    if checks.slicing {
        for lwd in &width_data {
            if !lwd.satisfies_normalization() {
                anomalies.push(format!("width coordinates for {:?} not normalized", lwd.direction));
            }
            let q = lwd.normalized(p);
            match check_slicing_bounds(&q) {
                Ok(vs) => anomalies.extend(vs.into_iter().map(|v| {
                    format!(
                        "slicing {:?} at h = {}: {} < {} ({:?})",
                        v.kind,
                        rational::to_string(&v.h),
                        rational::to_string(&v.actual),
                        rational::to_string(&v.bound),
                        lwd.direction
                    )
                })),
                Err(e) => anomalies.push(format!("slicing check failed: {e}")),
            }
        }
    }

    let mut n_smooth_value = None;
    let mut identity = None;
    if lattice {
        n_smooth_value = n_smooth(p).ok();
        if checks.identity {
            let b = counts.boundary.expect("lattice polygon has a boundary count");
            match pick_area(k, b) {
                Ok(pick) if pick == actual => {}
                Ok(pick) => anomalies.push(format!(
                    "pick: area {} != {}",
                    rational::to_string(&actual),
                    rational::to_string(&pick)
                )),
                Err(e) => anomalies.push(format!("pick: {e}")),
            }
            if k >= 1 {
                match area_identity(p) {
                    Ok(id) => {
                        if !id.holds {
                            anomalies.push(format!(
                                "area identity: {} != {}",
                                rational::to_string(&id.lhs),
                                rational::to_string(&id.rhs)
                            ));
                        }
                        identity = Some(id);
                    }
                    Err(e) => anomalies.push(format!("area identity: {e}")),
                }
                match boundary_difference_identity(p) {
                    Ok(Some((lhs, rhs))) if lhs != rhs => {
                        anomalies.push(format!("boundary difference: {lhs} != {rhs}"))
                    }
                    Ok(_) => {}
                    Err(e) => anomalies.push(format!("boundary difference: {e}")),
                }
            }
        }
    }

    let mut twelve = None;
    if checks.twelve && lattice && k == 1 {
        let centered = center_on_interior_point(p).expect("one interior point");
        if is_reflexive(&centered) {
            match check_twelve(&centered) {
                Ok(t) => {
                    if t.sum != 12 {
                        anomalies.push(format!("b(P) + b(P*) = {}", t.sum));
                    }
                    if n_smooth_value != Some(t.dual_boundary) {
                        anomalies.push(format!(
                            "n_smooth {:?} != b(P*) = {}",
                            n_smooth_value, t.dual_boundary
                        ));
                    }
                    twelve = Some(t);
                }
                Err(e) => anomalies.push(format!("twelve: {e}")),
            }
        } else if let Ok(dual) = polar(&centered) {
            let b = counts.boundary.unwrap_or(0);
            let bd = boundary_lattice_points(&dual).len();
            notes.push(format!("not reflexive: b(P) + b(P*) = {b} + {bd}"));
        }
    }

    let mut hollow_class = None;
    if k == 0 {
        if lattice {
            if lw.width == int(1) {
                hollow_class = Some(HollowClass::WidthOne);
            } else if canonical.is_some()
                && canonical == canonical_form(&gen_delta(2).expect("valid scale")).ok()
            {
                hollow_class = Some(HollowClass::TwiceStandardTriangle);
            } else {
                anomalies.push("hollow lattice polygon outside the classification".into());
            }
        }
    } else {
        if checks.scott && lattice {
            verdicts.push(finite("scott", true, bound_scott(k).expect("k >= 1"), &actual));
            let non_delta = delta_multiple.is_none();
            verdicts.push(finite("scott.non_delta", non_delta, int(2) * int(k as i64 + 1), &actual));
            if let Some(m) = delta_multiple {
                let law = int(2 * k as i64) - int((m * m) as i64) / int(2) + int(3 * m as i64 - 2);
                if law != actual {
                    anomalies.push(format!("multiple of the standard triangle breaks its area law ({m})"));
                }
            }
        }
        if checks.bounds {
            bound_verdicts(p, &actual, k, lattice, &lw.width, symmetric.is_some(), delta_multiple, &mut verdicts, &mut notes);
            for lwd in &width_data {
                let q = lwd.normalized(p);
                let c = count_interior(&q);
                match bound_fine(&q, lwd, &c) {
                    Ok(vs) => verdicts.extend(vs.into_iter().map(|mut v| {
                        v.bound_name = format!("fine({},{}).{}", lwd.direction.p, lwd.direction.q, v.bound_name);
                        v
                    })),
                    Err(e) => anomalies.push(format!("fine bounds: {e}")),
                }
            }
        }
    }

    for v in verdicts.iter().filter(|v| v.is_violation()) {
        let bound = match &v.bound_value {
            BoundValue::Finite(b) => rational::to_string(b),
            other => format!("{other:?}"),
        };
        anomalies.push(format!("{}: area {} > {}", v.bound_name, rational::to_string(&actual), bound));
    }

    InvariantReport {
        name: None,
        polygon: p.clone(),
        canonical,
        invariants: Invariants {
            area: actual,
            interior: k,
            boundary: if lattice { counts.boundary } else { None },
            denominator: denominator(p).to_string(),
            vertices: p.len(),
            lattice_width: lw,
            width_data,
            symmetric_lwd: symmetric,
            n_smooth: n_smooth_value,
            interior_hull: hull,
            hollow_class,
            twelve,
            delta_multiple,
        },
        verdicts,
        identity,
        anomalies,
        notes,
    }
}

fn finite(name: &str, applicable: bool, value: Rational, actual: &Rational) -> BoundVerdict {
    BoundVerdict::new(name, applicable, BoundValue::Finite(value), actual)
}

#[allow(clippy::too_many_arguments)]
fn bound_verdicts(
    p: &Polygon,
    actual: &Rational,
    k: u64,
    lattice: bool,
    lw: &Rational,
    symmetric: bool,
    delta_multiple: Option<u64>,
    out: &mut Vec<BoundVerdict>,
    notes: &mut Vec<String>,
) {
    let wide = lw > &int(5);
    out.push(match bound_small_width(k, lw) {
        Ok(v) => BoundVerdict::new("small_width", true, v, actual),
        Err(_) => BoundVerdict::skipped("small_width", actual),
    });
    let big = bound_big_width(k, lw).expect("k >= 1");
    out.push(finite("big_width", wide || symmetric, big, actual));
    out.push(finite("symmetric_or_wide", wide || symmetric, int(2) * int(k as i64 + 1), actual));

    let l = denominator(p);
    if l > 1.into() {
        let l: u64 = l.try_into().unwrap_or(u64::MAX);
        if let Ok(r) = bound_rational(k, l) {
            let mut v = finite("rational", r.established, r.value, actual);
            if !r.established {
                v = v.with_note("k = 1, l = 2: possible extra maximizers");
                notes.push("rational bound reported informationally for k = 1, l = 2".into());
            }
            out.push(v);
        }
    }

    if lattice {
        let n = p.len() as u64;
        out.push(finite("coleman", true, bound_coleman(k, n).expect("k >= 1"), actual));
        match bound_coleman_refined(k, n, lw) {
            Ok(b) => {
                let applicable = !coleman_refined_needs_exclusion(lw) || delta_multiple.is_none();
                out.push(finite("coleman_refined", applicable, b, actual));
            }
            Err(_) => out.push(BoundVerdict::skipped("coleman_refined", actual)),
        }
    }
}
