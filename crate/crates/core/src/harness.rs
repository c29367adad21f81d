//! Exhaustive enumeration and seeded sampling of polygons, and batch sweeps
//! that verify every polygon and write JSON-lines reports.

use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{verify_with, BoundValue, CheckSet};
use crate::canonical::canonical_vertices;
use crate::error::{Error, Result};
use crate::geom::{convex_hull, Hull, Point, Polygon};
use crate::rational::{self, frac, Rational};
use crate::report::InvariantReport;

/// Default upper bound on the box size for exhaustive enumeration.
pub const MAX_BOX: u32 = 6;
/// Environment variable that raises [`MAX_BOX`].
pub const MAX_BOX_ENV: &str = "LATPOLY_MAX_BOX";

fn box_limit() -> u32 {
    std::env::var(MAX_BOX_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(MAX_BOX)
}

type Vec2 = (i64, i64);

fn turn(a: Vec2, b: Vec2, c: Vec2) -> i64 {
    (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0)
}

/// One polygon per affine unimodular class among the convex lattice polygons
/// with vertices in `[0, n]^2`, in canonical form and sorted.
pub fn enumerate_lattice_polygons(n: u32) -> Result<Vec<Polygon>> {
    let limit = box_limit();
    if n < 1 || n > limit {
        return Err(Error::Precondition(format!(
            "box size {n} outside 1..={limit} (set {MAX_BOX_ENV} to raise the limit)"
        )));
    }
    let n = n as i64;
    let pts: Vec<Vec2> = (0..=n).flat_map(|x| (0..=n).map(move |y| (x, y))).collect();
    // Every class has a representative touching both axes; its lex-least vertex has x = 0.
    let starts: Vec<Vec2> = (0..=n).map(|y| (0, y)).collect();
    let classes = starts
        .par_iter()
        .map(|&v0| {
            let mut found = BTreeMap::new();
            let mut chain = vec![v0];
            grow(&pts, &mut chain, &mut found);
            found
        })
        .reduce(BTreeMap::new, |mut a, b| {
            a.extend(b);
            a
        });
    classes
        .into_keys()
        .map(|k| Polygon::from_ints(&k))
        .collect()
}

fn grow(pts: &[Vec2], chain: &mut Vec<Vec2>, found: &mut BTreeMap<Vec<Vec2>, ()>) {
    let v0 = chain[0];
    let last = *chain.last().unwrap();
    let len = chain.len();
    if len >= 3
        && turn(chain[len - 2], last, v0) > 0
        && turn(last, v0, chain[1]) > 0
        && chain.iter().any(|v| v.1 == 0)
    {
        found.insert(canonical_vertices(chain), ());
    }
    for &w in pts {
        if w <= v0 {
            continue;
        }
        if len >= 2 {
            if turn(chain[len - 2], last, w) <= 0 {
                continue;
            }
            // Keep the fan around v0 sweeping counterclockwise.
            if turn(v0, last, w) <= 0 {
                continue;
            }
        }
        chain.push(w);
        grow(pts, chain, found);
        chain.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Exhaustive,
    Random,
}

impl std::str::FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SweepMode::Exhaustive),
            "random" => Ok(SweepMode::Random),
            other => Err(Error::Parse(format!("unknown sweep mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub mode: SweepMode,
    /// Vertices lie in `[0, box_size]^2`.
    pub box_size: u32,
    /// Vertices lie in `(1/denominator) Z^2`.
    pub denominator: u32,
    pub sample_count: usize,
    pub seed: u64,
    pub checks: CheckSet,
    /// Worker threads; 0 picks the rayon default.
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            mode: SweepMode::Random,
            box_size: 4,
            denominator: 1,
            sample_count: 100,
            seed: 0,
            checks: CheckSet::ALL,
            workers: 0,
        }
    }
}

/// Hulls of 4 to 12 uniform points of `(1/l) Z^2 ∩ [0, N]^2`, redrawn until
/// two-dimensional. The stream is a function of the seed (ChaCha8).
pub fn sample_rational_polygons(cfg: &SweepConfig) -> Result<Vec<Polygon>> {
    if cfg.denominator < 1 || cfg.box_size < 1 {
        return Err(Error::Precondition("denominator and box size must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let l = cfg.denominator as i64;
    let side = cfg.box_size as i64 * l;
    let mut out = Vec::with_capacity(cfg.sample_count);
    while out.len() < cfg.sample_count {
        let r = rng.gen_range(4..=12);
        let pts: Vec<Point> = (0..r)
            .map(|_| Point::new(frac(rng.gen_range(0..=side), l), frac(rng.gen_range(0..=side), l)))
            .collect();
        if let Hull::Polygon { polygon } = convex_hull(&pts)? {
            out.push(polygon);
        }
    }
    Ok(out)
}

/// The polygons a sweep visits, in output order.
pub fn sweep_polygons(cfg: &SweepConfig) -> Result<Vec<Polygon>> {
    match cfg.mode {
        SweepMode::Exhaustive if cfg.denominator != 1 => Err(Error::Precondition(
            "exhaustive mode enumerates lattice polygons only (denominator 1)".into(),
        )),
        SweepMode::Exhaustive => enumerate_lattice_polygons(cfg.box_size),
        SweepMode::Random => sample_rational_polygons(cfg),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictTally {
    pub applicable: u64,
    pub satisfied: u64,
    pub sharp: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnomalyRecord {
    pub index: usize,
    pub polygon: Polygon,
    pub messages: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioRecord {
    pub bound_name: String,
    #[serde(with = "rational::serde_str")]
    pub ratio: Rational,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub mode: SweepMode,
    pub box_size: u32,
    pub denominator: u32,
    pub seed: Option<u64>,
    pub checks: Vec<String>,
    pub polygons: usize,
    /// Number of polygons (classes, in exhaustive mode) by interior point count.
    pub by_interior: BTreeMap<u64, u64>,
    /// Tallies by bound name; per-direction names are merged.
    pub verdicts: BTreeMap<String, VerdictTally>,
    /// Indices of polygons attaining each bound.
    pub sharp: BTreeMap<String, Vec<usize>>,
    pub anomalies: Vec<AnomalyRecord>,
    /// Largest area/bound ratio over applicable finite bounds.
    pub max_ratio: Option<RatioRecord>,
}

impl SweepSummary {
    pub fn is_clean(&self) -> bool {
        self.anomalies.is_empty()
    }
}

#[derive(Serialize)]
struct Line<'a> {
    index: usize,
    #[serde(flatten)]
    report: &'a InvariantReport,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a SweepSummary,
}

/// `fine(1,0).two_lines.x` and `fine(0,1).two_lines.x` tally together.
fn tally_name(name: &str) -> String {
    match name.strip_prefix("fine(").and_then(|r| r.split_once(").")) {
        Some((_, rest)) => format!("fine.{rest}"),
        None => name.to_string(),
    }
}

/// Verifies every polygon of `cfg` and returns the reports in stream order.
/// The result does not depend on the number of workers.
pub fn verify_sweep(cfg: &SweepConfig) -> Result<Vec<InvariantReport>> {
    let polys = sweep_polygons(cfg)?;
    let checks = cfg.checks;
    let work = || polys.par_iter().map(|p| verify_with(p, checks)).collect::<Vec<_>>();
    if cfg.workers == 0 {
        return Ok(work());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(work))
}

pub fn summarize(cfg: &SweepConfig, reports: &[InvariantReport]) -> SweepSummary {
    let mut by_interior = BTreeMap::new();
    let mut verdicts: BTreeMap<String, VerdictTally> = BTreeMap::new();
    let mut sharp: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut anomalies = Vec::new();
    let mut max_ratio: Option<RatioRecord> = None;
    for (i, r) in reports.iter().enumerate() {
        *by_interior.entry(r.invariants.interior).or_insert(0) += 1;
        for v in &r.verdicts {
            let name = tally_name(&v.bound_name);
            let t = verdicts.entry(name.clone()).or_default();
            if !v.applicable {
                continue;
            }
            t.applicable += 1;
            t.satisfied += v.satisfied as u64;
            t.sharp += v.sharp as u64;
            if v.sharp {
                let list = sharp.entry(name).or_default();
                if list.last() != Some(&i) {
                    list.push(i);
                }
            }
            if let BoundValue::Finite(b) = &v.bound_value {
                if b > &Rational::from_integer(0.into()) {
                    let ratio = &v.actual_area / b;
                    if max_ratio.as_ref().is_none_or(|m| ratio > m.ratio) {
                        max_ratio = Some(RatioRecord { bound_name: v.bound_name.clone(), ratio, index: i });
                    }
                }
            }
        }
        if !r.anomalies.is_empty() {
            anomalies.push(AnomalyRecord { index: i, polygon: r.polygon.clone(), messages: r.anomalies.clone() });
        }
    }
    SweepSummary {
        mode: cfg.mode,
        box_size: cfg.box_size,
        denominator: cfg.denominator,
        seed: (cfg.mode == SweepMode::Random).then_some(cfg.seed),
        checks: cfg.checks.names().into_iter().map(String::from).collect(),
        polygons: reports.len(),
        by_interior,
        verdicts,
        sharp,
        anomalies,
        max_ratio,
    }
}

/// Runs the sweep, writing one JSON line per report and a final summary line.
pub fn run_sweep<W: Write>(cfg: &SweepConfig, out: &mut W) -> Result<SweepSummary> {
    let reports = verify_sweep(cfg)?;
    let io = |e: std::io::Error| Error::Precondition(format!("write failed: {e}"));
    for (index, report) in reports.iter().enumerate() {
        serde_json::to_writer(&mut *out, &Line { index, report }).map_err(|e| io(e.into()))?;
        out.write_all(b"\n").map_err(io)?;
    }
    let summary = summarize(cfg, &reports);
    serde_json::to_writer(&mut *out, &SummaryLine { summary: &summary }).map_err(|e| io(e.into()))?;
    out.write_all(b"\n").map_err(io)?;
    out.flush().map_err(io)?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_form;
    use crate::geom::denominator;

    #[test]
    fn small_boxes() {
        let one = enumerate_lattice_polygons(1).unwrap();
        assert_eq!(one.len(), 2);
        let two = enumerate_lattice_polygons(2).unwrap();
        let d2 = canonical_form(&Polygon::from_ints(&[(0, 0), (2, 0), (0, 2)]).unwrap()).unwrap();
        assert!(two.contains(&d2));
        assert!(enumerate_lattice_polygons(0).is_err());
        assert!(enumerate_lattice_polygons(MAX_BOX + 1).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let cfg = SweepConfig { seed: 42, sample_count: 10, denominator: 2, box_size: 8, ..Default::default() };
        let a = sample_rational_polygons(&cfg).unwrap();
        assert_eq!(a, sample_rational_polygons(&cfg).unwrap());
        assert!(a.iter().all(|p| (num_bigint::BigInt::from(2) % denominator(p)) == 0.into()));
        let other = sample_rational_polygons(&SweepConfig { seed: 43, ..cfg.clone() }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn exhaustive_rejects_denominators() {
        let cfg = SweepConfig { mode: SweepMode::Exhaustive, denominator: 2, ..Default::default() };
        assert!(sweep_polygons(&cfg).is_err());
    }

    #[test]
    fn tally_names_merge_directions() {
        assert_eq!(tally_name("fine(1,-2).three_or_more"), "fine.three_or_more");
        assert_eq!(tally_name("scott"), "scott");
    }
}
