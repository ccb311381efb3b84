//! Polyhedral descriptions of monotone-down sets built from their minimal
//! infeasible points and lex maxima.
//!
//! Three artifacts, in increasing strength:
//!
//! * the classical cover system — one inequality per minimal infeasible
//!   point, cutting exactly that point's up-set;
//! * the strengthened system — for each minimal infeasible point `v`, the
//!   facets of the 0/1 lex-ordered set `{x ⪯_{σ_v} lexmax_{σ_v}}` under the
//!   monotone permutation `σ_v` of `v`, which contain the cover inequality of
//!   `v` as the top row;
//! * the extended formulation — the convex hull described in a lifted space
//!   by convex weights over the maximal vertices.
//!
//! Binary solutions of the first two systems coincide with the feasible set;
//! the third describes the convex hull itself, so its integer points can
//! strictly contain the feasible set when the instance body is not convex
//! (a frozen example lives in the tests).

use num::rational::BigRational;
use num::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bruteforce;
use crate::error::{Error, Result};
use crate::instance::SetInstance;
use crate::lex::{monotone_permutation, IntPoint};
use crate::lexopt;
use crate::ratio;
use crate::simplex::hull_dominates;
use crate::structure;

// ─────────────────────────────── Inequality ────────────────────────────────

/// Where an inequality came from; `i` is the 1-based significance position of
/// the strengthened row within `[k_v + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Cover { v: IntPoint },
    Strengthened { v: IntPoint, i: usize },
    Box,
}

/// One `coeffs·x ≤ rhs` row with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
    pub provenance: Provenance,
}

impl Inequality {
    pub fn satisfied_by(&self, x: &IntPoint) -> bool {
        x.dot_rational(&self.coeffs) <= self.rhs
    }

    /// The row rescaled so its first nonzero entry has absolute value one;
    /// positive scaling preserves the `≤` sense, so two rows are the same
    /// half-space iff their canonical forms are equal.
    pub fn canonical_scaled(&self) -> (Vec<BigRational>, BigRational) {
        let pivot = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .find(|a| !a.is_zero());
        let Some(pivot) = pivot else {
            return (self.coeffs.clone(), self.rhs.clone());
        };
        let scale = pivot.abs().recip();
        (
            self.coeffs.iter().map(|a| a * &scale).collect(),
            &self.rhs * &scale,
        )
    }
}

/// The `0 ≤ x_i ≤ 1` rows making a binary system self-contained.
pub fn box_rows(n: usize) -> Vec<Inequality> {
    let mut rows = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut up = vec![BigRational::zero(); n];
        up[i] = ratio::rat(1);
        rows.push(Inequality { coeffs: up, rhs: ratio::rat(1), provenance: Provenance::Box });
        let mut down = vec![BigRational::zero(); n];
        down[i] = ratio::rat(-1);
        rows.push(Inequality { coeffs: down, rhs: ratio::rat(0), provenance: Provenance::Box });
    }
    rows
}

pub fn system_to_json(rows: &[Inequality]) -> String {
    let dto: Vec<InequalityDto> = rows.iter().map(InequalityDto::from).collect();
    serde_json::to_string(&dto).expect("system serialization")
}

pub fn system_to_json_pretty(rows: &[Inequality]) -> String {
    let dto: Vec<InequalityDto> = rows.iter().map(InequalityDto::from).collect();
    serde_json::to_string_pretty(&dto).expect("system serialization")
}

#[derive(Serialize)]
struct InequalityDto {
    coeffs: Vec<String>,
    sense: &'static str,
    rhs: String,
    provenance: ProvenanceDto,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ProvenanceDto {
    Cover { v: Vec<i64> },
    Strengthened { v: Vec<i64>, i: usize },
    Box,
}

impl From<&Inequality> for InequalityDto {
    fn from(q: &Inequality) -> Self {
        InequalityDto {
            coeffs: q.coeffs.iter().map(ratio::format_rational).collect(),
            sense: "<=",
            rhs: ratio::format_rational(&q.rhs),
            provenance: match &q.provenance {
                Provenance::Cover { v } => ProvenanceDto::Cover { v: v.coords().to_vec() },
                Provenance::Strengthened { v, i } => {
                    ProvenanceDto::Strengthened { v: v.coords().to_vec(), i: *i }
                }
                Provenance::Box => ProvenanceDto::Box,
            },
        }
    }
}

// ─────────────────────────────── cover system ──────────────────────────────

/// One inequality per minimal infeasible point `v`: with `k_v` zeros in `v`,
/// the row `Σ_{i: v_i = 1} x_i ≤ n − k_v − 1` forbids exactly the binary
/// points above `v`. Rows come out sorted by `v`.
pub fn cover_formulation(inst: &SetInstance) -> Result<Vec<Inequality>> {
    require_binary_down(inst, "the cover system")?;
    let minimal = structure::minimal_infeasible_points(inst)?;
    Ok(minimal.into_iter().map(cover_row).collect())
}

fn cover_row(v: IntPoint) -> Inequality {
    let ones = v.coords().iter().filter(|&&b| b == 1).count();
    let coeffs = v
        .coords()
        .iter()
        .map(|&b| if b == 1 { ratio::rat(1) } else { BigRational::zero() })
        .collect();
    Inequality { coeffs, rhs: ratio::rat(ones as i64 - 1), provenance: Provenance::Cover { v } }
}

// ──────────────────────────── strengthened system ──────────────────────────

/// For each minimal infeasible `v`, the facet rows of the 0/1 lex-ordered set
/// `{x ∈ {0,1}^n : x ⪯_{σ_v} θ_v}` where `σ_v` is the canonical monotone
/// permutation of `v` and `θ_v` the lex maximum under it: writing positions
/// in σ_v-order and `I⁰/I¹` for the zero/one positions of `θ_v` among the
/// `k_v + 1` least significant, every `i ∈ I⁰` yields
///
/// ```text
/// x_{σ_v(i)} + Σ_{j ∈ I¹, j > i} x_{σ_v(j)} + Σ_{j > k_v+1} x_{σ_v(j)}
///     ≤ n − k_v − 1 + |{j ∈ I¹ : j > i}|.
/// ```
///
/// The row at `i = k_v + 1` is the cover inequality of `v`, so this system is
/// at least as strong as the cover system. Rows come out sorted by `(v, i)`.
pub fn strengthened_formulation(inst: &SetInstance) -> Result<Vec<Inequality>> {
    require_binary_down(inst, "the strengthened system")?;
    let origin = IntPoint::new(vec![0; inst.n()]);
    if !inst.contains(&origin)? {
        return Err(Error::domain(
            "the strengthened system needs a nonempty instance (zero must be feasible)",
        ));
    }
    let minimal = structure::minimal_infeasible_points(inst)?;
    let per_v: Vec<Vec<Inequality>> = minimal
        .into_par_iter()
        .map(|v| strengthened_rows(inst, v))
        .collect::<Result<_>>()?;
    Ok(per_v.into_iter().flatten().collect())
}

fn strengthened_rows(inst: &SetInstance, v: IntPoint) -> Result<Vec<Inequality>> {
    let n = inst.n();
    let k = v.coords().iter().filter(|&&b| b == 0).count();
    let sigma = monotone_permutation(&v)?;
    let theta = lexopt::lex_max_greedy(inst, &sigma)?;
    debug_assert!(
        theta[sigma.apply(k)] == 0
            && (k + 1..n).all(|p| theta[sigma.apply(p)] == 1),
        "lex maximum under a minimal infeasible point's monotone permutation \
         must end (…, 0, 1, …, 1): v={v:?}, θ={theta:?}"
    );

    let zero_positions: Vec<usize> =
        (0..=k).filter(|&p| theta[sigma.apply(p)] == 0).collect();
    let one_positions: Vec<usize> =
        (0..=k).filter(|&p| theta[sigma.apply(p)] == 1).collect();

    let mut rows = Vec::with_capacity(zero_positions.len());
    for &p in &zero_positions {
        let mut coeffs = vec![BigRational::zero(); n];
        coeffs[sigma.apply(p)] = ratio::rat(1);
        let carried = one_positions.iter().filter(|&&q| q > p).count();
        for &q in one_positions.iter().filter(|&&q| q > p) {
            coeffs[sigma.apply(q)] = ratio::rat(1);
        }
        for tail in k + 1..n {
            coeffs[sigma.apply(tail)] = ratio::rat(1);
        }
        rows.push(Inequality {
            coeffs,
            rhs: ratio::rat((n - k - 1 + carried) as i64),
            provenance: Provenance::Strengthened { v: v.clone(), i: p + 1 },
        });
    }
    Ok(rows)
}

// ──────────────────────────── extended formulation ─────────────────────────

/// Which lifted constraint template applies: for 0/1 generators the
/// per-coordinate form `x_i ≤ Σ_{θ: θ_i = 1} α_θ`, otherwise the vector form
/// `x ≤ Σ_y α_y y`. The two coincide on 0/1 generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtendedTemplate {
    Binary,
    General,
}

/// The convex hull in lifted form: `x` is feasible for the relaxation iff
/// `x ≥ 0` and some convex combination of the generators dominates it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedFormulation {
    generators: Vec<IntPoint>,
    template: ExtendedTemplate,
}

impl ExtendedFormulation {
    fn new(generators: Vec<IntPoint>, template: ExtendedTemplate) -> Self {
        debug_assert!(
            generators.iter().all(|p| {
                generators
                    .iter()
                    .filter(|q| *q != p)
                    .all(|q| !dominates(q, p) && !dominates(p, q))
            }),
            "generators must be pairwise incomparable"
        );
        ExtendedFormulation { generators, template }
    }

    pub fn generators(&self) -> &[IntPoint] {
        &self.generators
    }

    pub fn template(&self) -> ExtendedTemplate {
        self.template
    }

    pub fn template_description(&self) -> &'static str {
        match self.template {
            ExtendedTemplate::Binary => {
                "x_i <= sum of alpha_theta over generators theta with theta_i = 1, \
                 for every i; sum of alpha = 1; alpha, x >= 0"
            }
            ExtendedTemplate::General => {
                "x <= sum of alpha_y * y over generators y, componentwise; \
                 sum of alpha = 1; alpha, x >= 0"
            }
        }
    }

    /// Exact membership of `x` in the projection of the lifted system.
    pub fn admits(&self, x: &IntPoint) -> Result<bool> {
        if x.coords().len() != self.generators.first().map_or(x.coords().len(), |g| g.coords().len()) {
            return Err(Error::domain("point dimension does not match the generators"));
        }
        if x.coords().iter().any(|&v| v < 0) {
            return Ok(false);
        }
        if self.generators.is_empty() {
            return Ok(false);
        }
        let gens: Vec<Vec<BigRational>> =
            self.generators.iter().map(|g| g.to_rational()).collect();
        hull_dominates(&gens, &x.to_rational())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ExtendedDto::from(self)).expect("formulation serialization")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&ExtendedDto::from(self)).expect("formulation serialization")
    }
}

#[derive(Serialize)]
struct ExtendedDto {
    template: &'static str,
    description: &'static str,
    generators: Vec<Vec<i64>>,
}

impl From<&ExtendedFormulation> for ExtendedDto {
    fn from(f: &ExtendedFormulation) -> Self {
        ExtendedDto {
            template: match f.template {
                ExtendedTemplate::Binary => "binary",
                ExtendedTemplate::General => "general",
            },
            description: f.template_description(),
            generators: f.generators.iter().map(|g| g.coords().to_vec()).collect(),
        }
    }
}

/// The lifted convex-hull description of a monotone-down instance. For 0/1
/// instances the generators are the maximal points (equivalently the
/// deduplicated lex maxima); for general integer instances they are the
/// maximal vertices — maximal points not dominated by any convex combination
/// of the others, decided by an exact rational feasibility system.
pub fn extended_formulation(inst: &SetInstance) -> Result<ExtendedFormulation> {
    structure::require_monotone_down(inst, "the extended formulation")?;
    if inst.bounding_box().is_binary() {
        let generators = structure::maximal_points(inst)?;
        return Ok(ExtendedFormulation::new(generators, ExtendedTemplate::Binary));
    }
    let generators = maximal_vertices(inst)?;
    Ok(ExtendedFormulation::new(generators, ExtendedTemplate::General))
}

/// Maximal points that are vertices of the convex hull: `p` is kept iff no
/// convex combination of the *other* maximal points dominates it. For 0/1
/// sets every maximal point survives the filter.
fn maximal_vertices(inst: &SetInstance) -> Result<Vec<IntPoint>> {
    let maximal = structure::maximal_points(inst)?;
    let rats: Vec<Vec<BigRational>> = maximal.iter().map(|p| p.to_rational()).collect();
    let mut vertices = Vec::new();
    for (idx, p) in maximal.iter().enumerate() {
        let others: Vec<Vec<BigRational>> = rats
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .map(|(_, r)| r.clone())
            .collect();
        if others.is_empty() || !hull_dominates(&others, &rats[idx])? {
            vertices.push(p.clone());
        }
    }
    Ok(vertices)
}

fn dominates(a: &IntPoint, b: &IntPoint) -> bool {
    a.coords().iter().zip(b.coords()).all(|(&x, &y)| x >= y)
}

// ───────────────────────────── verification ────────────────────────────────

/// Whether the binary solutions of `rows` are exactly the feasible set.
pub fn verify_formulation(inst: &SetInstance, rows: &[Inequality]) -> Result<bool> {
    if !inst.bounding_box().is_binary() {
        return Err(Error::domain("formulation verification needs a 0/1 box"));
    }
    let feasible = bruteforce::enumerate(inst, inst.bounding_box())?;
    let satisfied: Vec<IntPoint> = inst
        .bounding_box()
        .points()
        .filter(|x| rows.iter().all(|q| q.satisfied_by(x)))
        .collect();
    Ok(feasible == satisfied)
}

/// Whether every cover row reappears, up to positive rational scaling, in
/// the strengthened system.
pub fn dominance_report(cover: &[Inequality], strengthened: &[Inequality]) -> bool {
    use std::collections::BTreeSet;
    let pool: BTreeSet<(Vec<BigRational>, BigRational)> =
        strengthened.iter().map(Inequality::canonical_scaled).collect();
    cover.iter().all(|row| pool.contains(&row.canonical_scaled()))
}

fn require_binary_down(inst: &SetInstance, what: &str) -> Result<()> {
    structure::require_monotone_down(inst, what)?;
    if !inst.bounding_box().is_binary() {
        return Err(Error::domain(format!("{what} needs a 0/1 box")));
    }
    Ok(())
}
