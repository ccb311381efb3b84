//! Exhaustive reference oracles.
//!
//! Everything here answers by brute force over explicitly enumerated points:
//! no greedy recursions, no closed forms, no bound machinery. The algorithmic
//! modules are tested against these oracles, so this module deliberately
//! shares nothing with them beyond the lex comparator itself and instance
//! membership — slow and obviously correct beats fast and subtle, and an
//! oracle that reused the code under test would vouch for nothing.

use num::rational::BigRational;
use num::BigUint;

use crate::error::{Error, Result};
use crate::instance::SetInstance;
use crate::lex::{lex_cmp, Extremum, IntBox, IntPoint, Permutation};

/// Hard cap on the number of box points an oracle will walk.
pub const ENUM_CAP: u64 = 1_000_000;

/// All points of `S_I ∩ sub` in canonical coordinate order (last coordinate
/// fastest), by walking every point of `sub` with an odometer and testing
/// membership. Boxes beyond [`ENUM_CAP`] points are refused.
pub fn enumerate(inst: &SetInstance, sub: &IntBox) -> Result<Vec<IntPoint>> {
    if sub.dim() != inst.n() {
        return Err(Error::domain(format!(
            "sub-box dimension {} differs from instance dimension {}",
            sub.dim(),
            inst.n()
        )));
    }
    if !sub.subset_of(inst.bounding_box()) {
        return Err(Error::domain(format!(
            "sub-box {sub} is not contained in the instance box {}",
            inst.bounding_box()
        )));
    }
    check_cap(sub)?;
    let n = sub.dim();
    let lower = sub.lower().coords();
    let upper = sub.upper().coords();
    let mut out = Vec::new();
    let mut cur = lower.to_vec();
    loop {
        let point = IntPoint::new(cur.clone());
        if inst.contains(&point)? {
            out.push(point);
        }
        // odometer step, last coordinate fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < upper[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lower[i];
        }
    }
}

fn check_cap(sub: &IntBox) -> Result<()> {
    if sub.point_count() > BigUint::from(ENUM_CAP) {
        return Err(Error::resource(format!(
            "brute-force enumeration refuses boxes beyond {ENUM_CAP} points, got {}",
            sub.point_count()
        )));
    }
    Ok(())
}

/// Lex optimum of an explicit point list by linear scan: the point that no
/// other beats under `⪯_σ`. Ties cannot occur (lex is a total order on
/// distinct points); duplicates in the list are harmless.
pub fn oracle_lex_opt(
    points: &[IntPoint],
    sigma: &Permutation,
    which: Extremum,
) -> Result<Option<IntPoint>> {
    let mut best: Option<&IntPoint> = None;
    for p in points {
        best = Some(match best {
            None => p,
            Some(b) => {
                let better = match which {
                    Extremum::Max => lex_cmp(p, b, sigma)? == std::cmp::Ordering::Greater,
                    Extremum::Min => lex_cmp(p, b, sigma)? == std::cmp::Ordering::Less,
                };
                if better {
                    p
                } else {
                    b
                }
            }
        });
    }
    Ok(best.cloned())
}

/// Componentwise-maximal elements of a point list, by pairwise comparison.
pub fn oracle_maximal(points: &[IntPoint]) -> Vec<IntPoint> {
    extremal(points, |p, q| p.leq(q))
}

/// Componentwise-minimal elements of a point list, by pairwise comparison.
pub fn oracle_minimal(points: &[IntPoint]) -> Vec<IntPoint> {
    extremal(points, |p, q| q.leq(p))
}

fn extremal(points: &[IntPoint], beaten_by: impl Fn(&IntPoint, &IntPoint) -> bool) -> Vec<IntPoint> {
    let mut out: Vec<IntPoint> = Vec::new();
    'outer: for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i != j && p != q && beaten_by(p, q) {
                continue 'outer;
            }
        }
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    out
}

/// Exact maximum of `c·x` over a point list, with the canonically least
/// maximizer as witness. `None` on an empty list.
pub fn oracle_optimum(
    points: &[IntPoint],
    c: &[BigRational],
) -> Result<Option<(BigRational, IntPoint)>> {
    let mut best: Option<(BigRational, &IntPoint)> = None;
    for p in points {
        if p.dim() != c.len() {
            return Err(Error::domain(format!(
                "objective has {} entries but points have dimension {}",
                c.len(),
                p.dim()
            )));
        }
        let value = p.dot_rational(c);
        best = Some(match best {
            None => (value, p),
            Some((bv, bp)) => {
                if value > bv || (value == bv && p < bp) {
                    (value, p)
                } else {
                    (bv, bp)
                }
            }
        });
    }
    Ok(best.map(|(v, p)| (v, p.clone())))
}

/// All integer points of `box` lying in every lex interval
/// `lo ⪯_σ x ⪯_σ hi`, by filtering the full box enumeration.
pub fn oracle_lexset_intersection(
    boxed: &IntBox,
    intervals: &[(Permutation, IntPoint, IntPoint)],
) -> Result<Vec<IntPoint>> {
    check_cap(boxed)?;
    let mut out = Vec::new();
    'points: for x in boxed.points() {
        for (sigma, lo, hi) in intervals {
            if lex_cmp(&x, lo, sigma)? == std::cmp::Ordering::Less
                || lex_cmp(&x, hi, sigma)? == std::cmp::Ordering::Greater
            {
                continue 'points;
            }
        }
        out.push(x);
    }
    Ok(out)
}
