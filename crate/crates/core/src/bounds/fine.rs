//! Fine bounds in width coordinates, split by the number of interior
//! vertical lines.

use super::{bound_three_or_more, BoundValue, BoundVerdict};
use crate::error::{Error, Result};
use crate::geom::{area, Polygon};
use crate::lattice_points::{count_interior, PointCounts};
use crate::rational::{frac, int, Rational};
use crate::width::{plvsl, LatticeWidthData};

/// Width coordinates read left to right (`reflected = false`) or after `x -> m + 1 - x`.
struct Frame {
    reflected: bool,
    m: i64,
    a: Rational,
    b: Rational,
    plvsl: Rational,
    /// `k_i` and `l_i` for `i = 1..=m`, stored at index `i - 1`.
    k: Vec<u64>,
    l: Vec<Rational>,
}

impl Frame {
    fn ki(&self, i: usize) -> Rational {
        int(self.k[i - 1] as i64)
    }

    fn total(&self) -> u64 {
        self.k.iter().sum()
    }

    fn reflect(&self) -> Frame {
        Frame {
            reflected: !self.reflected,
            m: self.m,
            a: self.b.clone(),
            b: self.a.clone(),
            plvsl: int(self.m + 1) - &self.plvsl,
            k: self.k.iter().rev().copied().collect(),
            l: self.l.iter().rev().cloned().collect(),
        }
    }
}

struct Out<'a> {
    actual: &'a Rational,
    prefix: &'static str,
    verdicts: Vec<BoundVerdict>,
}

impl Out<'_> {
    fn push(&mut self, name: &str, applicable: bool, value: Option<Rational>) {
        let name = format!("{}{}", self.prefix, name);
        let v = match value {
            Some(v) if applicable => BoundVerdict::new(name, true, BoundValue::Finite(v), self.actual),
            _ => BoundVerdict::skipped(name, self.actual),
        };
        self.verdicts.push(v);
    }
}

/// Evaluates the one-, two- and many-line bounds on a polygon given in width
/// coordinates. Both orientations of the strip are tried; each branch whose
/// hypotheses fail is reported as not applicable.
pub fn bound_fine(
    normalized: &Polygon,
    lwd: &LatticeWidthData,
    counts: &PointCounts,
) -> Result<Vec<BoundVerdict>> {
    let (x_l, x_r) = normalized.x_range();
    if x_l != lwd.x_l || x_r != lwd.x_r || plvsl(normalized) != lwd.plvsl {
        return Err(Error::Precondition("polygon is not in the given width coordinates".into()));
    }
    let recount = count_interior(normalized);
    if recount.interior != counts.interior || recount.per_line != counts.per_line {
        return Err(Error::Precondition("counts do not belong to the normalized polygon".into()));
    }
    let m = lwd.interior_vertical_lines;
    if counts.interior == 0 || m < 1 {
        return Ok(Vec::new());
    }
    let frame = Frame {
        reflected: false,
        m,
        a: int(1) - &x_l,
        b: &x_r - int(m),
        plvsl: lwd.plvsl.clone(),
        k: (1..=m).map(|h| counts.on_line(h)).collect(),
        l: (1..=m).map(|h| normalized.slice_length(&int(h))).collect(),
    };
    let actual = area(normalized);
    let mut verdicts = Vec::new();
    for f in [frame.reflect(), frame].into_iter().rev() {
        let mut out = Out { actual: &actual, prefix: if f.reflected { "reflected." } else { "" }, verdicts: Vec::new() };
        match f.m {
            1 => one_line(&f, &mut out),
            2 => two_lines(&f, &mut out),
            _ => three_or_more(&f, &mut out),
        }
        verdicts.extend(out.verdicts);
    }
    Ok(verdicts)
}

fn one_line(f: &Frame, out: &mut Out) {
    let ok = f.plvsl <= int(1);
    let k1 = int(f.total() as i64) + int(1);
    let (a, b) = (&f.a, &f.b);
    let s = a + b;
    let steep = a > b;
    out.push("one_line.steep", ok && steep, Some(&s * &s / (b * int(2)) * &k1));
    out.push("one_line.flat", ok && !steep, Some(&s * &k1));
    out.push("one_line.flat.envelope", ok && !steep, Some(int(2) * &k1));
    let lw_ok = s > int(1);
    out.push(
        "one_line.width",
        ok && lw_ok,
        lw_ok.then(|| &s * &s / (int(2) * (&s - int(1))) * &k1),
    );
}

fn two_lines(f: &Frame, out: &mut Out) {
    let k = f.total();
    let kq = int(k as i64);
    let (a, b) = (&f.a, &f.b);
    let (k1, k2) = (f.ki(1), f.ki(2));
    let s = a + b;

    let upper = k > 0 && f.plvsl > int(1) && f.plvsl <= frac(3, 2);
    let narrow = s < int(1);
    let s1 = &s + int(1);
    out.push(
        "two_lines.upper.narrow",
        upper && narrow,
        Some(&s1 * &s1 * (a * (&k1 + int(1)) + b * (&k2 + int(1))) / (int(2) * &s * &s)),
    );
    out.push(
        "two_lines.upper.narrow.envelope",
        upper && narrow,
        Some(&s1 * &s1 / (int(2) * &s) * (&kq + int(1))),
    );
    out.push(
        "two_lines.upper.wide",
        upper && !narrow,
        Some((a + int(1)) * (&k1 + int(1)) + b * (int(1) - &k1 + int(2) * &k2)),
    );
    out.push("two_lines.upper.wide.envelope", upper && !narrow, Some(int(2) * (&kq + int(1))));

    let lower = k > 0 && f.plvsl <= int(1);
    let (l1, l2) = (&f.l[0], &f.l[1]);
    let half_b2 = b * b / int(2);
    out.push(
        "two_lines.lower.trapezoid",
        lower,
        Some((int(1) + a - &half_b2) * l1 + (&half_b2 + b) * l2),
    );
    let short = l1 <= &(int(2) * l2);
    let k2_pos = f.k[1] > 0;
    out.push(
        "two_lines.lower.short",
        lower && short,
        Some((frac(1, 2) + a) * &k1 + frac(3, 2) * &k2 + int(2) + a),
    );
    out.push(
        "two_lines.lower.long",
        lower && !short && k2_pos,
        Some((int(1) + a) * &k1 + &k2 / int(2) + frac(3, 2) + a),
    );
    let long_empty = lower && !short && !k2_pos;
    out.push(
        "two_lines.lower.long_empty",
        long_empty,
        long_empty.then(|| {
            int(2) * (&k1 + int(1)) + int(1) / (int(2) * &k1) - (int(1) - a) * (&k1 - int(1))
        }),
    );
    let envelope = if k2_pos {
        int(2) * (&kq + int(1))
    } else {
        int(2) * (&kq + int(1)) + if k > 0 { int(1) / (int(2) * &kq) } else { int(0) }
    };
    out.push("two_lines.lower.envelope", lower, Some(envelope));
}

fn three_or_more(f: &Frame, out: &mut Out) {
    let ok = f.total() > 0 && f.plvsl <= frac(f.m + 1, 2);
    let occupied = f.k[f.k.len() - 1] != 0;
    out.push("three_or_more", ok, Some(bound_three_or_more(f.total(), f.m, occupied)));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::gen_t;
    use crate::width::{lattice_width, normalized_counts, width_normalize};

    fn fine(p: &Polygon) -> Vec<BoundVerdict> {
        let mut all = Vec::new();
        for d in lattice_width(p).directions {
            let lwd = width_normalize(p, d).unwrap();
            let q = lwd.normalized(p);
            all.extend(bound_fine(&q, &lwd, &normalized_counts(p, &lwd)).unwrap());
        }
        all
    }

    #[test]
    fn extremal_triangle_is_sharp_for_one_line() {
        for (k, l) in [(1, 2), (2, 3), (5, 4)] {
            let t = gen_t(k, l).unwrap();
            let vs = fine(&t);
            assert!(vs.iter().all(|v| !v.is_violation()));
            assert!(
                vs.iter().any(|v| v.bound_name.ends_with("one_line.steep") && v.applicable && v.sharp),
                "{vs:?}"
            );
        }
    }

    #[test]
    fn two_lines_long_empty_branch() {
        // In width coordinates: lines x = 1, 2 with k_1 = 2, k_2 = 0 and l_1 > 2 l_2.
        let p = Polygon::new(vec![
            crate::Point::new(frac(1, 2), int(0)),
            crate::Point::new(int(1), frac(-3, 2)),
            crate::Point::new(frac(9, 4), frac(1, 2)),
            crate::Point::new(int(1), frac(3, 2)),
        ])
        .unwrap();
        let vs = fine(&p);
        assert!(vs.iter().all(|v| !v.is_violation()), "{vs:?}");
    }

    #[test]
    fn many_lines_on_delta_multiples() {
        let p = crate::bounds::gen_delta(9).unwrap();
        let vs = fine(&p);
        assert!(vs.iter().any(|v| v.applicable && v.bound_name.ends_with("three_or_more")));
        assert!(vs.iter().all(|v| !v.is_violation()));
    }

    #[test]
    fn rejects_foreign_counts() {
        let p = gen_t(2, 2).unwrap();
        let d = lattice_width(&p).directions[0];
        let lwd = width_normalize(&p, d).unwrap();
        let q = lwd.normalized(&p);
        let wrong = count_interior(&gen_t(3, 2).unwrap());
        assert!(bound_fine(&q, &lwd, &wrong).is_err());
        assert!(bound_fine(&p.translate(&int(5), &int(0)), &lwd, &normalized_counts(&p, &lwd)).is_err());
    }
}
