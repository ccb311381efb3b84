//! Primal and dual bounds from families of lex optima, the three named
//! permutation-family builders, and the enumeration ground truth.
//!
//! For a family `H` of permutations, every `x ∈ S_I` satisfies
//! `lexmin_σ ⪯_σ x ⪯_σ lexmax_σ`, so the lex optima themselves give a lower
//! (primal) bound `max_σ max(c·lexmax_σ, c·lexmin_σ)` on `max{c·x : x ∈ S_I}`,
//! and the intersection of the lex intervals gives an upper (dual) bound.
//! Both are computed exactly: the primal side evaluates `c` once per distinct
//! optimum, the dual side decomposes each lex constraint into disjoint
//! sub-boxes and maximizes `c` at sub-box corners, falling back to full box
//! enumeration when the decomposition exceeds its node budget.

use std::collections::BTreeMap;

use num::rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::bruteforce;
use crate::error::{Error, Result};
use crate::instance::{LexConstraint, LexDirection, SetInstance};
use crate::lex::{monotone_permutation, IntBox, IntPoint, Permutation};
use crate::lexopt;
use crate::ratio;
use crate::structure;

// ─────────────────────────────── PermFamily ────────────────────────────────

/// A deduplicated family `H ⊆ Σ_n`, optionally *resolved* against an
/// instance: resolution records, for each distinct lex maximum (minimum)
/// across the family, the first permutation attaining it. Two permutations
/// with the same lex maximum are interchangeable for the primal bound, so the
/// quotient maps are what bound evaluation iterates over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermFamily {
    n: usize,
    perms: Vec<Permutation>,
    dedup_max: BTreeMap<IntPoint, Permutation>,
    dedup_min: BTreeMap<IntPoint, Permutation>,
}

impl PermFamily {
    /// An unresolved family: validates dimensions, removes duplicate
    /// permutations, and sorts canonically.
    pub fn new(n: usize, perms: Vec<Permutation>) -> Result<Self> {
        for sigma in &perms {
            if sigma.n() != n {
                return Err(Error::domain(format!(
                    "family over dimension {n} contains a {}-dim permutation",
                    sigma.n()
                )));
            }
        }
        let mut perms = perms;
        perms.sort();
        perms.dedup();
        Ok(PermFamily { n, perms, dedup_max: BTreeMap::new(), dedup_min: BTreeMap::new() })
    }

    /// A family with its lex-optima quotients computed eagerly against
    /// `inst`.
    pub fn resolved(inst: &SetInstance, perms: Vec<Permutation>) -> Result<Self> {
        let mut family = PermFamily::new(inst.n(), perms)?;
        let optima = lex_optima_per_perm(inst, &family.perms)?;
        for (sigma, (hi, lo)) in family.perms.iter().zip(optima) {
            family.dedup_max.entry(hi).or_insert_with(|| sigma.clone());
            family.dedup_min.entry(lo).or_insert_with(|| sigma.clone());
        }
        Ok(family)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Distinct lex maxima → representative permutation. Empty until the
    /// family is resolved.
    pub fn dedup_max(&self) -> &BTreeMap<IntPoint, Permutation> {
        &self.dedup_max
    }

    /// Distinct lex minima → representative permutation. Empty until the
    /// family is resolved.
    pub fn dedup_min(&self) -> &BTreeMap<IntPoint, Permutation> {
        &self.dedup_min
    }
}

/// Lex maximum and minimum per permutation, in family order. The per-σ
/// computations are independent and run in parallel.
pub fn lex_optima_per_perm(
    inst: &SetInstance,
    perms: &[Permutation],
) -> Result<Vec<(IntPoint, IntPoint)>> {
    perms
        .par_iter()
        .map(|sigma| {
            let hi = lexopt::lex_max_greedy(inst, sigma)?;
            let lo = lexopt::lex_min_greedy(inst, sigma)?;
            Ok((hi, lo))
        })
        .collect()
}

/// The quotient maps computed fresh for `inst`, regardless of any resolution
/// the family object may carry from a different instance: each distinct lex
/// maximum (respectively minimum) mapped to the first permutation in family
/// order attaining it.
pub fn quotient_maps(
    inst: &SetInstance,
    perms: &[Permutation],
) -> Result<(BTreeMap<IntPoint, Permutation>, BTreeMap<IntPoint, Permutation>)> {
    let optima = lex_optima_per_perm(inst, perms)?;
    let mut max_map = BTreeMap::new();
    let mut min_map = BTreeMap::new();
    for (sigma, (hi, lo)) in perms.iter().zip(optima) {
        max_map.entry(hi).or_insert_with(|| sigma.clone());
        min_map.entry(lo).or_insert_with(|| sigma.clone());
    }
    Ok((max_map, min_map))
}

// ─────────────────────────────── BoundsReport ──────────────────────────────

/// The exact bound values and the points attaining them. Fields are `None`
/// when the corresponding computation was not requested. Whenever both are
/// present, `z_prim ≤ z_star ≤ z_dual`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundsReport {
    pub z_prim_max: Option<BigRational>,
    pub z_prim_min: Option<BigRational>,
    pub z_prim: Option<BigRational>,
    pub z_dual: Option<BigRational>,
    pub z_star: Option<BigRational>,
    pub witnesses: Witnesses,
}

/// Points attaining each bound; primal witnesses carry the permutation whose
/// lex optimum they are.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Witnesses {
    pub prim_max: Option<(Permutation, IntPoint)>,
    pub prim_min: Option<(Permutation, IntPoint)>,
    pub dual: Option<IntPoint>,
    pub star: Option<IntPoint>,
}

impl BoundsReport {
    /// Field-wise union of two partial reports.
    pub fn merged(mut self, other: BoundsReport) -> BoundsReport {
        self.z_prim_max = self.z_prim_max.or(other.z_prim_max);
        self.z_prim_min = self.z_prim_min.or(other.z_prim_min);
        self.z_prim = self.z_prim.or(other.z_prim);
        self.z_dual = self.z_dual.or(other.z_dual);
        self.z_star = self.z_star.or(other.z_star);
        self.witnesses.prim_max = self.witnesses.prim_max.or(other.witnesses.prim_max);
        self.witnesses.prim_min = self.witnesses.prim_min.or(other.witnesses.prim_min);
        self.witnesses.dual = self.witnesses.dual.or(other.witnesses.dual);
        self.witnesses.star = self.witnesses.star.or(other.witnesses.star);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ReportDto::from(self)).expect("report serialization")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&ReportDto::from(self)).expect("report serialization")
    }
}

#[derive(Serialize)]
struct ReportDto {
    #[serde(skip_serializing_if = "Option::is_none")]
    z_prim_max: Option<ValueDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z_prim_min: Option<ValueDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z_prim: Option<ValueDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z_dual: Option<ValueDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z_star: Option<ValueDto>,
    witnesses: WitnessesDto,
}

/// Exact rational string plus a convenience decimal.
#[derive(Serialize)]
struct ValueDto {
    exact: String,
    decimal: f64,
}

#[derive(Serialize)]
struct WitnessesDto {
    #[serde(skip_serializing_if = "Option::is_none")]
    prim_max: Option<WitnessDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prim_min: Option<WitnessDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual: Option<WitnessDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    star: Option<WitnessDto>,
}

#[derive(Serialize)]
struct WitnessDto {
    point: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<Vec<usize>>,
}

impl From<&BoundsReport> for ReportDto {
    fn from(r: &BoundsReport) -> Self {
        let fmt = |v: &Option<BigRational>| {
            v.as_ref().map(|r| ValueDto {
                exact: ratio::format_rational(r),
                decimal: ratio::to_f64(r),
            })
        };
        let prim = |w: &Option<(Permutation, IntPoint)>| {
            w.as_ref().map(|(sigma, p)| WitnessDto {
                point: p.coords().to_vec(),
                sigma: Some(sigma.to_one_based()),
            })
        };
        let plain = |w: &Option<IntPoint>| {
            w.as_ref().map(|p| WitnessDto { point: p.coords().to_vec(), sigma: None })
        };
        ReportDto {
            z_prim_max: fmt(&r.z_prim_max),
            z_prim_min: fmt(&r.z_prim_min),
            z_prim: fmt(&r.z_prim),
            z_dual: fmt(&r.z_dual),
            z_star: fmt(&r.z_star),
            witnesses: WitnessesDto {
                prim_max: prim(&r.witnesses.prim_max),
                prim_min: prim(&r.witnesses.prim_min),
                dual: plain(&r.witnesses.dual),
                star: plain(&r.witnesses.star),
            },
        }
    }
}

// ────────────────────────────── primal bound ───────────────────────────────

/// The primal bound: `z_prim_max = max_{σ∈H} c·lexmax_σ`, `z_prim_min`
/// likewise over lex minima, `z_prim` their maximum. Every value is attained
/// by a feasible point, so `z_prim ≤ z*`. The objective is evaluated once per
/// distinct optimum; ties pick the canonically least witness point.
pub fn primal_bound(
    inst: &SetInstance,
    family: &PermFamily,
    c: &[BigRational],
) -> Result<BoundsReport> {
    check_objective(inst, family, c)?;
    if family.is_empty() {
        return Err(Error::domain("the primal bound over an empty family is −∞"));
    }
    let (max_map, min_map) = quotient_maps(inst, family.perms())?;
    let best = |map: &BTreeMap<IntPoint, Permutation>| {
        let mut best: Option<(BigRational, IntPoint, Permutation)> = None;
        for (point, sigma) in map {
            let value = point.dot_rational(c);
            let better = match &best {
                None => true,
                Some((bv, bp, _)) => value > *bv || (value == *bv && point < bp),
            };
            if better {
                best = Some((value, point.clone(), sigma.clone()));
            }
        }
        best.expect("nonempty family has optima")
    };
    let (vmax, pmax, smax) = best(&max_map);
    let (vmin, pmin, smin) = best(&min_map);
    let z_prim = vmax.clone().max(vmin.clone());
    Ok(BoundsReport {
        z_prim_max: Some(vmax),
        z_prim_min: Some(vmin),
        z_prim: Some(z_prim),
        witnesses: Witnesses {
            prim_max: Some((smax, pmax)),
            prim_min: Some((smin, pmin)),
            ..Witnesses::default()
        },
        ..BoundsReport::default()
    })
}

// ─────────────────────────────── dual bound ────────────────────────────────

/// The dual bound `z_dual = max{c·x : x ∈ box, lexmin_σ ⪯_σ x ⪯_σ lexmax_σ
/// ∀σ ∈ H}`, computed exactly. The region is the box cut by pure lex
/// constraints, so each combination of per-constraint fixing cases is a
/// sub-box whose maximum sits at the corner selected by the signs of `c`.
/// The case product is explored depth-first under the instance node budget;
/// if the budget runs out the full box is enumerated instead, and if that is
/// also too large the call fails with a resource error.
pub fn dual_bound(
    inst: &SetInstance,
    family: &PermFamily,
    c: &[BigRational],
) -> Result<BoundsReport> {
    check_objective(inst, family, c)?;
    let (value, point) = dual_optimum(inst, family, c)?;
    Ok(BoundsReport {
        z_dual: Some(value),
        witnesses: Witnesses { dual: Some(point), ..Witnesses::default() },
        ..BoundsReport::default()
    })
}

fn dual_optimum(
    inst: &SetInstance,
    family: &PermFamily,
    c: &[BigRational],
) -> Result<(BigRational, IntPoint)> {
    let boxed = inst.bounding_box();
    let optima = lex_optima_per_perm(inst, family.perms())?;
    let mut constraints = Vec::new();
    for (sigma, (hi, lo)) in family.perms().iter().zip(&optima) {
        // `x ⪯_σ u` and `l ⪯_σ x` hold on the whole box; skip them.
        if hi != boxed.upper() {
            constraints.push(LexConstraint {
                direction: LexDirection::Le,
                sigma: sigma.clone(),
                threshold: hi.clone(),
            });
        }
        if lo != boxed.lower() {
            constraints.push(LexConstraint {
                direction: LexDirection::Ge,
                sigma: sigma.clone(),
                threshold: lo.clone(),
            });
        }
    }
    match dual_via_fixing(inst, &constraints, c) {
        Err(Error::Resource(_)) => {
            let intervals: Vec<(Permutation, IntPoint, IntPoint)> = family
                .perms()
                .iter()
                .zip(optima)
                .map(|(sigma, (hi, lo))| (sigma.clone(), lo, hi))
                .collect();
            dual_via_enumeration(inst, &intervals, c)
        }
        other => other,
    }
}

/// Depth-first product of the per-constraint fixing cases. Each node costs
/// one unit of the instance budget; exceeding it is a resource error (the
/// caller falls back to enumeration).
fn dual_via_fixing(
    inst: &SetInstance,
    constraints: &[LexConstraint],
    c: &[BigRational],
) -> Result<(BigRational, IntPoint)> {
    let boxed = inst.bounding_box();
    let mut levels: Vec<Vec<IntBox>> = constraints
        .iter()
        .map(|k| lexopt::constraint_cases(k, boxed))
        .collect::<Result<_>>()?;
    // Fewest-cases first: cheap levels prune earliest.
    levels.sort_by_key(|cases| cases.len());

    fn rec(
        levels: &[Vec<IntBox>],
        lvl: usize,
        cur: &IntBox,
        c: &[BigRational],
        budget: &mut u64,
        best: &mut Option<(BigRational, IntPoint)>,
    ) -> Result<()> {
        if *budget == 0 {
            return Err(Error::resource("fixing-case budget exhausted"));
        }
        *budget -= 1;
        if lvl == levels.len() {
            let (value, corner) = corner_optimum(cur, c);
            let better = match best {
                None => true,
                Some((bv, bp)) => value > *bv || (value == *bv && corner < *bp),
            };
            if better {
                *best = Some((value, corner));
            }
            return Ok(());
        }
        for case in &levels[lvl] {
            if let Some(next) = cur.intersect(case) {
                rec(levels, lvl + 1, &next, c, budget, best)?;
            }
        }
        Ok(())
    }

    let mut budget = inst.node_cap();
    let mut best = None;
    rec(&levels, 0, boxed, c, &mut budget, &mut best)?;
    best.ok_or_else(|| Error::domain("the lex relaxation is empty"))
}

/// Full-box enumeration route: filter the box through every lex interval and
/// take the exact maximum.
fn dual_via_enumeration(
    inst: &SetInstance,
    intervals: &[(Permutation, IntPoint, IntPoint)],
    c: &[BigRational],
) -> Result<(BigRational, IntPoint)> {
    let points = bruteforce::oracle_lexset_intersection(inst.bounding_box(), intervals)?;
    bruteforce::oracle_optimum(&points, c)?
        .ok_or_else(|| Error::domain("the lex relaxation is empty"))
}

/// The box corner maximizing `c`, taking the lower corner on zero
/// coefficients for determinism.
fn corner_optimum(boxed: &IntBox, c: &[BigRational]) -> (BigRational, IntPoint) {
    use num::Zero;
    let zero = BigRational::zero();
    let coords: Vec<i64> = c
        .iter()
        .enumerate()
        .map(|(i, ci)| if *ci > zero { boxed.upper()[i] } else { boxed.lower()[i] })
        .collect();
    let corner = IntPoint::new(coords);
    (corner.dot_rational(c), corner)
}

// ───────────────────────────── combined report ─────────────────────────────

/// Primal + dual (+ optionally ground truth) in one report. The primal side
/// is skipped for an empty family, where its maximum over nothing is −∞.
pub fn bounds_report(
    inst: &SetInstance,
    family: &PermFamily,
    c: &[BigRational],
    ground_truth: bool,
) -> Result<BoundsReport> {
    let mut report = if family.is_empty() {
        BoundsReport::default()
    } else {
        primal_bound(inst, family, c)?
    };
    report = report.merged(dual_bound(inst, family, c)?);
    if ground_truth {
        let (z_star, opt) = optimum_bruteforce(inst, c)?;
        let witness = opt.first().cloned();
        report = report.merged(BoundsReport {
            z_star: Some(z_star),
            witnesses: Witnesses { star: witness, ..Witnesses::default() },
            ..BoundsReport::default()
        });
    }
    debug_assert!(
        report
            .z_star
            .as_ref()
            .map(|z| {
                report.z_prim.as_ref().is_none_or(|p| p <= z)
                    && report.z_dual.as_ref().is_none_or(|d| z <= d)
            })
            .unwrap_or(true),
        "bound sandwich violated: {report:?}"
    );
    Ok(report)
}

// ──────────────────────────── family builders ──────────────────────────────

/// The `n` cyclic shifts of the identity: for every coordinate `i` exactly
/// one member has `σ(n) = i`, the coverage that yields the `z*/n` primal
/// guarantee for `c ≥ 0`.
pub fn family_h1(n: usize) -> Result<PermFamily> {
    if n == 0 {
        return Err(Error::domain("the cyclic family needs n ≥ 1"));
    }
    PermFamily::new(n, (0..n).map(|s| Permutation::cyclic_shift(n, s)).collect())
}

/// One canonical monotone permutation per maximal feasible point of a 0/1
/// instance, resolved eagerly. Under the monotone permutation of a maximal
/// point, that point *is* the lex maximum, which makes the primal bound tight
/// for every `c ≥ 0`.
pub fn family_h2(inst: &SetInstance) -> Result<PermFamily> {
    require_binary(inst, "the maximal-points family")?;
    let maximal = structure::maximal_points(inst)?;
    let perms: Vec<Permutation> = maximal
        .iter()
        .map(monotone_permutation)
        .collect::<Result<_>>()?;
    PermFamily::resolved(inst, perms)
}

/// One canonical monotone permutation per minimal infeasible point of a 0/1
/// instance, resolved eagerly. For independence graphs this is one
/// permutation per edge, via the closed form. The family is empty when the
/// whole binary box is feasible.
pub fn family_h3(inst: &SetInstance) -> Result<PermFamily> {
    require_binary(inst, "the minimal-infeasible family")?;
    let minimal = structure::minimal_infeasible_points(inst)?;
    let perms: Vec<Permutation> = minimal
        .iter()
        .map(monotone_permutation)
        .collect::<Result<_>>()?;
    PermFamily::resolved(inst, perms)
}

fn require_binary(inst: &SetInstance, what: &str) -> Result<()> {
    if !inst.bounding_box().is_binary() {
        return Err(Error::domain(format!("{what} needs a 0/1 box")));
    }
    Ok(())
}

// ─────────────────────────────── ground truth ──────────────────────────────

/// Exact optimum by enumeration: the value and *all* optimal points, sorted.
pub fn optimum_bruteforce(
    inst: &SetInstance,
    c: &[BigRational],
) -> Result<(BigRational, Vec<IntPoint>)> {
    if c.len() != inst.n() {
        return Err(Error::domain(format!(
            "objective has {} entries for an {}-dim instance",
            c.len(),
            inst.n()
        )));
    }
    let feasible = bruteforce::enumerate(inst, inst.bounding_box())?;
    let Some((z_star, _)) = bruteforce::oracle_optimum(&feasible, c)? else {
        return Err(Error::domain("the instance has no integer points"));
    };
    let mut opt: Vec<IntPoint> =
        feasible.into_iter().filter(|p| p.dot_rational(c) == z_star).collect();
    opt.sort();
    Ok((z_star, opt))
}

fn check_objective(inst: &SetInstance, family: &PermFamily, c: &[BigRational]) -> Result<()> {
    if family.n() != inst.n() {
        return Err(Error::domain(format!(
            "family dimension {} does not match instance dimension {}",
            family.n(),
            inst.n()
        )));
    }
    if c.len() != inst.n() {
        return Err(Error::domain(format!(
            "objective has {} entries for an {}-dim instance",
            c.len(),
            inst.n()
        )));
    }
    Ok(())
}
