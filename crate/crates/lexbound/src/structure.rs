//! Maximal- and minimal-point machinery, the closed-form maximal family of a
//! lex-bounded set, lex-ordered-set tests, and two named instance generators
//! with predicted facts attached.
//!
//! A point `x ∈ S_I` is *maximal* if no `x′ ∈ S_I` satisfies `x′ ≩ x`;
//! *minimal infeasible* points are the componentwise-minimal elements of the
//! complement of a 0/1 set. Both notions drive the tightness theory for lex
//! bounds: a down-monotone set equals a single lex-bounded set exactly when
//! the closed-form family of [`maxi_of_lex_set`] stays feasible
//! ([`is_lex_ordered`]), and a dual bound over a permutation family is exact
//! for every objective exactly when the maximal points of the intersected lex
//! relaxation all lie in `S_I` ([`dual_tightness_check`]).

use std::collections::BTreeSet;

use itertools::Itertools;
use num::rational::BigRational;

use crate::bounds::PermFamily;
use crate::bruteforce;
use crate::error::{Error, Result};
use crate::instance::{Body, Monotonicity, SetInstance};
use crate::lex::{lex_le, IntBox, IntPoint, Permutation};
use crate::lexopt;
use crate::ratio::rat;

/// Largest dimension for which the all-permutations vertex sweep of a
/// polymatroid is attempted (`n!` greedy evaluations).
pub const PERM_SWEEP_MAX_N: usize = 8;

// ──────────────────────────── maximal points ────────────────────────────────

/// All componentwise-maximal points of `S_I`.
///
/// Boxes with at most the enumeration cap of points are enumerated and
/// filtered by pairwise dominance. For polymatroid bodies over larger boxes
/// the greedy vertex family over all permutations is returned instead; that
/// family is exactly the set of maximal *vertices*, which coincides with the
/// maximal points for matroid-like rank functions but is a strict subset
/// whenever some maximal point is not a vertex (see
/// [`polymatroid_maximal_vertices`]).
pub fn maximal_points(inst: &SetInstance) -> Result<Vec<IntPoint>> {
    if box_enumerable(inst) {
        let feasible = bruteforce::enumerate(inst, inst.bounding_box())?;
        let mut maxi = bruteforce::oracle_maximal(&feasible);
        maxi.sort();
        return Ok(maxi);
    }
    if matches!(inst.body(), Body::Submodular(_)) {
        return polymatroid_maximal_vertices(inst);
    }
    Err(Error::resource(format!(
        "maximal points need an enumerable box or a polymatroid body; \
         the box has {} points and the body is {}",
        inst.bounding_box().point_count(),
        inst.body().kind_name()
    )))
}

/// The deduplicated greedy lex maxima of a polymatroid body over all `n!`
/// permutations — its maximal vertices.
pub fn polymatroid_maximal_vertices(inst: &SetInstance) -> Result<Vec<IntPoint>> {
    if !matches!(inst.body(), Body::Submodular(_)) {
        return Err(Error::domain(format!(
            "the vertex sweep needs a polymatroid body, got {}",
            inst.body().kind_name()
        )));
    }
    let n = inst.n();
    if n > PERM_SWEEP_MAX_N {
        return Err(Error::resource(format!(
            "the all-permutations vertex sweep is capped at n ≤ {PERM_SWEEP_MAX_N}, got {n}"
        )));
    }
    let mut vertices = BTreeSet::new();
    for image in (0..n).permutations(n) {
        let sigma = Permutation::new(image)?;
        vertices.insert(lexopt::lex_max_polymatroid(inst, &sigma)?);
    }
    Ok(vertices.into_iter().collect())
}

/// Componentwise-minimal points of `{0,1}^n ∖ S_I` for a 0/1 instance.
///
/// Independence-graph bodies use the closed form — one point `e_i + e_j` per
/// edge, no enumeration — since a 0/1 point is minimally infeasible for a
/// graph exactly when it is the indicator of a single edge. Every other body
/// enumerates the complement and filters.
pub fn minimal_infeasible_points(inst: &SetInstance) -> Result<Vec<IntPoint>> {
    let n = inst.n();
    if !inst.bounding_box().is_binary() {
        return Err(Error::domain(
            "minimal infeasible points are defined for 0/1 instances only",
        ));
    }
    if let Body::IndependenceGraph { edges } = inst.body() {
        let normalized: BTreeSet<(usize, usize)> = edges
            .iter()
            .map(|&(i, j)| (i.min(j), i.max(j)))
            .collect();
        let mut out: Vec<IntPoint> = normalized
            .into_iter()
            .map(|(i, j)| {
                let mut coords = vec![0; n];
                coords[i] = 1;
                coords[j] = 1;
                IntPoint::new(coords)
            })
            .collect();
        out.sort();
        return Ok(out);
    }
    if !box_enumerable(inst) {
        return Err(Error::resource(format!(
            "complement enumeration over {} points exceeds the cap",
            inst.bounding_box().point_count()
        )));
    }
    let mut complement = Vec::new();
    for x in inst.bounding_box().points() {
        if !inst.contains(&x)? {
            complement.push(x);
        }
    }
    let mut mins = bruteforce::oracle_minimal(&complement);
    mins.sort();
    Ok(mins)
}

fn box_enumerable(inst: &SetInstance) -> bool {
    matches!(inst.bounding_box().point_count_u64(), Some(c) if c <= bruteforce::ENUM_CAP)
}

// ─────────────────────── maximal family of a lex set ────────────────────────

/// The closed-form maximal family of `L = {x ∈ box : x ⪯_σ θ}` for a box with
/// zero lower bounds: `θ` itself together with, for every position `i` with
/// `θ_{σ(i)} ≥ 1`, the point
///
/// ```text
/// p^{σ,i} = θ − e_{σ(i)} + Σ_{j<i} (u_{σ(j)} − θ_{σ(j)}) e_{σ(j)},
/// ```
///
/// i.e. decrement the pivot coordinate and release every less significant
/// coordinate to its upper bound. The family is returned deduplicated and
/// sorted, *without* dominance filtering: members with `θ_{σ(j)} = u_{σ(j)}`
/// for all `j < i` are dominated by `θ` yet are kept, because every point of
/// `L` is dominated by some family member and downstream feasibility tests
/// need the whole family. In debug builds the covering property and the
/// equality of the dominance-filtered family with the true maximal points are
/// re-derived by enumeration on small boxes.
pub fn maxi_of_lex_set(
    sigma: &Permutation,
    theta: &IntPoint,
    boxed: &IntBox,
) -> Result<Vec<IntPoint>> {
    let n = boxed.dim();
    if sigma.n() != n || theta.dim() != n {
        return Err(Error::domain(format!(
            "dimension mismatch: box {}, σ {}, θ {}",
            n,
            sigma.n(),
            theta.dim()
        )));
    }
    if !boxed.contains(theta) {
        return Err(Error::domain("the threshold θ lies outside the box"));
    }
    if boxed.lower().coords().iter().any(|&v| v != 0) {
        return Err(Error::domain(
            "the maximal family formula needs zero lower bounds",
        ));
    }
    let mut family = BTreeSet::new();
    family.insert(theta.clone());
    for i in 0..n {
        let pivot = sigma.apply(i);
        if theta[pivot] < 1 {
            continue;
        }
        let mut coords = theta.coords().to_vec();
        coords[pivot] -= 1;
        for j in 0..i {
            let freed = sigma.apply(j);
            coords[freed] = boxed.upper()[freed];
        }
        family.insert(IntPoint::new(coords));
    }
    let family: Vec<IntPoint> = family.into_iter().collect();

    #[cfg(debug_assertions)]
    {
        if matches!(boxed.point_count_u64(), Some(c) if c <= 4096) {
            let lex_set: Vec<IntPoint> = boxed
                .points()
                .filter(|x| lex_le(x, theta, sigma).unwrap())
                .collect();
            for p in &family {
                debug_assert!(
                    lex_le(p, theta, sigma).unwrap() && boxed.contains(p),
                    "family member {p:?} escapes the lex set"
                );
            }
            for x in &lex_set {
                debug_assert!(
                    family.iter().any(|p| x.leq(p)),
                    "lex-set point {x:?} is not covered by the family"
                );
            }
            let mut filtered = bruteforce::oracle_maximal(&family);
            filtered.sort();
            let mut true_maxi = bruteforce::oracle_maximal(&lex_set);
            true_maxi.sort();
            debug_assert_eq!(
                filtered, true_maxi,
                "dominance-filtered family differs from enumerated maximal points"
            );
        }
    }

    Ok(family)
}

// ───────────────────────── lex-ordered set tests ────────────────────────────

/// Whether a monotone-down instance is a *lex-ordered set* under `σ`, i.e.
/// `S_I = {x ∈ box : x ⪯_σ lexmax_σ}` as sets. By down-monotonicity this
/// holds exactly when every member of the maximal family of the lex set is
/// feasible, so only the closed-form family is tested — no enumeration.
pub fn is_lex_ordered(inst: &SetInstance, sigma: &Permutation) -> Result<bool> {
    require_monotone_down(inst, "the lex-ordered test")?;
    let theta = lexopt::lex_max_greedy(inst, sigma)?;
    let family = maxi_of_lex_set(sigma, &theta, inst.bounding_box())?;
    for p in &family {
        if !inst.contains(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the dual bound over `H` is exact for *every* objective on a
/// monotone-down instance: enumerates `∩_{σ∈H} L_σ`, filters its maximal
/// points, and tests them all for feasibility. Exactness for all objectives
/// is equivalent to the lex relaxation having no infeasible point, and by
/// down-monotonicity the maximal points decide that.
pub fn dual_tightness_check(inst: &SetInstance, family: &PermFamily) -> Result<bool> {
    require_monotone_down(inst, "the dual tightness check")?;
    let mut intervals = Vec::with_capacity(family.perms().len());
    for sigma in family.perms() {
        let hi = lexopt::lex_max_greedy(inst, sigma)?;
        let lo = lexopt::lex_min_greedy(inst, sigma)?;
        intervals.push((sigma.clone(), lo, hi));
    }
    let relaxation = bruteforce::oracle_lexset_intersection(inst.bounding_box(), &intervals)?;
    for m in bruteforce::oracle_maximal(&relaxation) {
        if !inst.contains(&m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn require_monotone_down(inst: &SetInstance, what: &str) -> Result<()> {
    if inst.effective_monotonicity() != Monotonicity::Down {
        return Err(Error::domain(format!(
            "{what} needs a monotone-down instance (effective tag: {:?})",
            inst.effective_monotonicity()
        )));
    }
    if inst.bounding_box().lower().coords().iter().any(|&v| v != 0) {
        return Err(Error::domain(format!("{what} needs zero lower bounds")));
    }
    Ok(())
}

// ───────────────────────── named instance families ──────────────────────────

/// The simplex-slice instance `{x ∈ [0,δ]^n : Σᵢ xᵢ ≤ (δ−1)n}` together with
/// its predicted lex optima and the point witnessing that the intersection of
/// *all* `n!` lex relaxations still strictly contains `S_I`.
#[derive(Clone, Debug)]
pub struct SimplicesFacts {
    pub instance: SetInstance,
    pub delta: i64,
    /// `ρ = ⌊(δ−1)n/δ⌋`, the number of coordinates a lex maximum can saturate.
    pub rho: usize,
    /// The lex maximum read in σ-order: `(lexmax_{σ(1)}, …, lexmax_{σ(n)})`,
    /// the same pattern for every σ.
    pub lexmax_sigma_order: Vec<i64>,
    /// A single infeasible point lying in `L_σ` for every σ.
    pub witness: IntPoint,
}

impl SimplicesFacts {
    pub fn n(&self) -> usize {
        self.lexmax_sigma_order.len()
    }

    /// The predicted lex maximum under `σ` as an actual point.
    pub fn lexmax_for(&self, sigma: &Permutation) -> Result<IntPoint> {
        pattern_to_point(&self.lexmax_sigma_order, sigma)
    }
}

/// Builds the simplex-slice instance for `n ≥ 4`, `δ ≥ 2`.
///
/// The predicted lex maximum in σ-order is
/// `(0^{n−ρ−1}, (δ−1)n − δρ, δ^ρ)` and the witness is the fixed point
/// `((δ−1)^{n+1−ρ}, δ^{ρ−1})` in coordinate order: its coordinate sum exceeds
/// the budget by `ρ − 1 ≥ 1`, yet under every σ it is lex-dominated by the
/// lex maximum because its top `ρ` coordinates never exceed `δ` with at least
/// one strict drop.
pub fn simplices_instance(n: usize, delta: i64) -> Result<SimplicesFacts> {
    if n < 4 || delta < 2 {
        return Err(Error::domain(format!(
            "the simplex-slice family needs n ≥ 4 and δ ≥ 2, got n = {n}, δ = {delta}"
        )));
    }
    let budget = (delta - 1) * n as i64;
    let instance = SetInstance::new(
        IntBox::from_upper(IntPoint::new(vec![delta; n]))?,
        Body::Knapsack { a: vec![1; n], b: budget },
        Monotonicity::Down,
    )?;
    let rho = (budget / delta) as usize;
    let mut lexmax_sigma_order = vec![0i64; n - rho - 1];
    lexmax_sigma_order.push(budget - delta * rho as i64);
    lexmax_sigma_order.extend(std::iter::repeat(delta).take(rho));
    let mut witness = vec![delta - 1; n + 1 - rho];
    witness.extend(std::iter::repeat(delta).take(rho - 1));
    Ok(SimplicesFacts {
        instance,
        delta,
        rho,
        lexmax_sigma_order,
        witness: IntPoint::new(witness),
    })
}

/// The V-polytope family `conv{κe₁, …, κe_n, (κ−1)𝟙}` with its known facts:
/// the all-ones optimum `(κ−1)n`, the lex optima `κe_{σ(n)}` / `κe_{σ(1)}`,
/// and the primal-bound-to-optimum ratio `κ/((κ−1)n)` that approaches the
/// worst case `1/n` as κ grows.
#[derive(Clone, Debug)]
pub struct KappaFacts {
    pub instance: SetInstance,
    pub kappa: i64,
    /// `max{𝟙·x : x ∈ S_I} = (κ−1)n`, attained at `(κ−1)𝟙`.
    pub z_star_ones: i64,
    /// `c·lexmax_σ = c·lexmin_σ = κ` for `c = 𝟙` and every σ.
    pub primal_ones: i64,
    /// `primal_ones / z_star_ones` in lowest terms.
    pub ratio: BigRational,
}

impl KappaFacts {
    pub fn n(&self) -> usize {
        self.instance.n()
    }

    pub fn lexmax_for(&self, sigma: &Permutation) -> Result<IntPoint> {
        check_n(self.n(), sigma)?;
        Ok(IntPoint::unit(self.n(), sigma.apply(self.n() - 1), self.kappa))
    }

    pub fn lexmin_for(&self, sigma: &Permutation) -> Result<IntPoint> {
        check_n(self.n(), sigma)?;
        Ok(IntPoint::unit(self.n(), sigma.apply(0), self.kappa))
    }
}

/// Builds the κ-family instance for `n ≥ 2`, `κ ≥ 2`.
pub fn kappa_family_instance(n: usize, kappa: i64) -> Result<KappaFacts> {
    if n < 2 || kappa < 2 {
        return Err(Error::domain(format!(
            "the κ-family needs n ≥ 2 and κ ≥ 2, got n = {n}, κ = {kappa}"
        )));
    }
    let mut generators: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut g = vec![rat(0); n];
            g[i] = rat(kappa);
            g
        })
        .collect();
    generators.push(vec![rat(kappa - 1); n]);
    let instance = SetInstance::new(
        IntBox::from_upper(IntPoint::new(vec![kappa; n]))?,
        Body::VPolytope { generators },
        Monotonicity::None,
    )?;
    let z_star_ones = (kappa - 1) * n as i64;
    Ok(KappaFacts {
        instance,
        kappa,
        z_star_ones,
        primal_ones: kappa,
        ratio: rat(kappa) / rat(z_star_ones),
    })
}

fn pattern_to_point(sigma_order: &[i64], sigma: &Permutation) -> Result<IntPoint> {
    if sigma.n() != sigma_order.len() {
        return Err(Error::domain(format!(
            "σ has {} positions but the pattern has {}",
            sigma.n(),
            sigma_order.len()
        )));
    }
    let mut coords = vec![0i64; sigma_order.len()];
    for (i, &v) in sigma_order.iter().enumerate() {
        coords[sigma.apply(i)] = v;
    }
    Ok(IntPoint::new(coords))
}

fn check_n(n: usize, sigma: &Permutation) -> Result<()> {
    if sigma.n() != n {
        return Err(Error::domain(format!(
            "σ has {} positions but the instance has dimension {n}",
            sigma.n()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds;
    use crate::instance::{SubmodularKind, SubmodularOracle};
    use crate::lex::tests_support::shuffled_permutation;
    use rand::{Rng, SeedableRng};

    fn pt(v: &[i64]) -> IntPoint {
        IntPoint::new(v.to_vec())
    }

    fn knapsack_down(upper: &[i64], a: Vec<i64>, b: i64) -> SetInstance {
        SetInstance::new(
            IntBox::from_upper(pt(upper)).unwrap(),
            Body::Knapsack { a, b },
            Monotonicity::Down,
        )
        .unwrap()
    }

    #[test]
    fn maximal_points_of_a_box_is_its_upper_corner() {
        let inst = knapsack_down(&[2, 3, 1], vec![0, 0, 0], 0);
        assert_eq!(maximal_points(&inst).unwrap(), vec![pt(&[2, 3, 1])]);
    }

    #[test]
    fn triangle_stable_sets_have_singleton_maximal_points() {
        let inst = SetInstance::new(
            IntBox::binary(3),
            Body::IndependenceGraph { edges: vec![(0, 1), (0, 2), (1, 2)] },
            Monotonicity::Down,
        )
        .unwrap();
        assert_eq!(
            maximal_points(&inst).unwrap(),
            vec![pt(&[0, 0, 1]), pt(&[0, 1, 0]), pt(&[1, 0, 0])]
        );
        assert_eq!(
            minimal_infeasible_points(&inst).unwrap(),
            vec![pt(&[0, 1, 1]), pt(&[1, 0, 1]), pt(&[1, 1, 0])]
        );
    }

    #[test]
    fn cardinality_rank_two_polymatroid_maximal_points_agree_across_routes() {
        // f(A) = min(|A|, 2) on four elements: the maximal points are the six
        // 0/1 points with exactly two ones, and they are all vertices, so the
        // enumeration route and the all-permutations vertex sweep coincide.
        let oracle = SubmodularOracle::new(
            4,
            SubmodularKind::ConcaveOfModular { weights: vec![1; 4], g: vec![0, 1, 2, 2, 2] },
        )
        .unwrap();
        let inst = SetInstance::new(
            IntBox::from_upper(pt(&[2, 2, 2, 2])).unwrap(),
            Body::Submodular(oracle),
            Monotonicity::Down,
        )
        .unwrap();
        let enumerated = maximal_points(&inst).unwrap();
        let expected: Vec<IntPoint> = vec![
            pt(&[0, 0, 1, 1]),
            pt(&[0, 1, 0, 1]),
            pt(&[0, 1, 1, 0]),
            pt(&[1, 0, 0, 1]),
            pt(&[1, 0, 1, 0]),
            pt(&[1, 1, 0, 0]),
        ];
        assert_eq!(enumerated, expected);
        assert_eq!(polymatroid_maximal_vertices(&inst).unwrap(), expected);
    }

    #[test]
    fn vertex_sweep_misses_non_vertex_maximal_points() {
        // f(A) = min(2|A|, 4) on three elements: (2,1,1) is maximal (its sum
        // meets f([3]) = 4) but is the midpoint of (2,2,0) and (2,0,2), so
        // the vertex sweep returns only the three saturated corners while
        // enumeration also finds the three interior maximal points.
        let oracle = SubmodularOracle::new(
            3,
            SubmodularKind::ConcaveOfModular { weights: vec![1; 3], g: vec![0, 2, 4, 4] },
        )
        .unwrap();
        let inst = SetInstance::new(
            IntBox::from_upper(pt(&[2, 2, 2])).unwrap(),
            Body::Submodular(oracle),
            Monotonicity::Down,
        )
        .unwrap();
        let all = maximal_points(&inst).unwrap();
        let vertices = polymatroid_maximal_vertices(&inst).unwrap();
        assert_eq!(
            vertices,
            vec![pt(&[0, 2, 2]), pt(&[2, 0, 2]), pt(&[2, 2, 0])]
        );
        assert_eq!(all.len(), 6);
        assert!(all.contains(&pt(&[2, 1, 1])));
        assert!(vertices.iter().all(|v| all.contains(v)));
    }

    #[test]
    fn full_binary_box_has_no_minimal_infeasible_points() {
        let edgeless = SetInstance::new(
            IntBox::binary(3),
            Body::IndependenceGraph { edges: vec![] },
            Monotonicity::Down,
        )
        .unwrap();
        assert!(minimal_infeasible_points(&edgeless).unwrap().is_empty());
        let roomy = knapsack_down(&[1, 1, 1], vec![1, 1, 1], 10);
        assert!(minimal_infeasible_points(&roomy).unwrap().is_empty());
    }

    #[test]
    fn minimal_infeasible_points_need_a_binary_box() {
        let inst = knapsack_down(&[2, 1], vec![1, 1], 1);
        assert!(matches!(minimal_infeasible_points(&inst), Err(Error::Domain(_))));
    }

    #[test]
    fn graph_closed_form_matches_enumeration_route() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(901);
        for _ in 0..20 {
            let n = rng.random_range(2..=7);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(0.4) {
                        edges.push((i, j));
                    }
                }
            }
            let graph = SetInstance::new(
                IntBox::binary(n),
                Body::IndependenceGraph { edges: edges.clone() },
                Monotonicity::Down,
            )
            .unwrap();
            // The same stable sets as rows x_i + x_j ≤ 1 take the
            // enumeration route instead of the edge closed form.
            let rows: Vec<Vec<BigRational>> = edges
                .iter()
                .map(|&(i, j)| {
                    let mut row = vec![rat(0); n];
                    row[i] = rat(1);
                    row[j] = rat(1);
                    row
                })
                .collect();
            let linear = SetInstance::new(
                IntBox::binary(n),
                Body::Linear { a: rows, b: vec![rat(1); edges.len()] },
                Monotonicity::Down,
            )
            .unwrap();
            assert_eq!(
                minimal_infeasible_points(&graph).unwrap(),
                minimal_infeasible_points(&linear).unwrap()
            );
        }
    }

    #[test]
    fn lex_set_family_of_the_knapsack_example() {
        let boxed = IntBox::from_upper(pt(&[1, 5, 4, 1, 2])).unwrap();
        let theta = pt(&[1, 1, 1, 1, 2]);
        let family = maxi_of_lex_set(&Permutation::identity(5), &theta, &boxed).unwrap();
        let expected = vec![
            pt(&[0, 1, 1, 1, 2]), // decrement x₁
            pt(&[1, 0, 1, 1, 2]), // decrement x₂, release x₁
            pt(&[1, 1, 1, 1, 2]), // θ itself
            pt(&[1, 5, 0, 1, 2]), // decrement x₃, release x₁x₂
            pt(&[1, 5, 4, 0, 2]), // decrement x₄, release x₁x₂x₃
            pt(&[1, 5, 4, 1, 1]), // decrement x₅, release the rest
        ];
        assert_eq!(family, expected);
        // The heaviest member under the knapsack weights is the fourth-pivot
        // point at 822, strictly under the 825 budget.
        let a = [2i64, 8, 40, 150, 310];
        let heaviest = family
            .iter()
            .map(|p| p.coords().iter().zip(a).map(|(&x, w)| x * w).sum::<i64>())
            .max()
            .unwrap();
        assert_eq!(heaviest, 822);
        assert_eq!(
            pt(&[1, 5, 4, 0, 2]).coords().iter().zip(a).map(|(&x, w)| x * w).sum::<i64>(),
            822
        );
    }

    #[test]
    fn lex_set_family_of_zero_is_zero() {
        let boxed = IntBox::from_upper(pt(&[3, 2])).unwrap();
        let family =
            maxi_of_lex_set(&Permutation::identity(2), &pt(&[0, 0]), &boxed).unwrap();
        assert_eq!(family, vec![pt(&[0, 0])]);
    }

    #[test]
    fn lex_set_family_rejects_thresholds_outside_the_box() {
        let boxed = IntBox::from_upper(pt(&[1, 1])).unwrap();
        assert!(matches!(
            maxi_of_lex_set(&Permutation::identity(2), &pt(&[2, 0]), &boxed),
            Err(Error::Domain(_))
        ));
        let shifted = IntBox::new(pt(&[1, 1]), pt(&[2, 2])).unwrap();
        assert!(matches!(
            maxi_of_lex_set(&Permutation::identity(2), &pt(&[1, 1]), &shifted),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn lex_set_family_covers_and_filters_to_the_true_maximal_points() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(902);
        for round in 0..200 {
            let n = rng.random_range(1..=5);
            let upper: Vec<i64> = (0..n).map(|_| rng.random_range(0..=3)).collect();
            let boxed = IntBox::from_upper(pt(&upper)).unwrap();
            let theta =
                pt(&(0..n).map(|i| rng.random_range(0..=upper[i])).collect::<Vec<_>>());
            let sigma = shuffled_permutation(n, 9000 + round);
            let family = maxi_of_lex_set(&sigma, &theta, &boxed).unwrap();

            let lex_set: Vec<IntPoint> = boxed
                .points()
                .filter(|x| lex_le(x, &theta, &sigma).unwrap())
                .collect();
            for p in &family {
                assert!(boxed.contains(p) && lex_le(p, &theta, &sigma).unwrap());
            }
            for x in &lex_set {
                assert!(
                    family.iter().any(|p| x.leq(p)),
                    "round {round}: {x:?} uncovered"
                );
            }
            let mut filtered = bruteforce::oracle_maximal(&family);
            filtered.sort();
            let mut true_maxi = bruteforce::oracle_maximal(&lex_set);
            true_maxi.sort();
            assert_eq!(filtered, true_maxi, "round {round}");
        }
    }

    #[test]
    fn knapsack_example_is_lex_ordered_under_identity() {
        let inst = knapsack_down(&[1, 5, 4, 1, 2], vec![2, 8, 40, 150, 310], 825);
        assert!(is_lex_ordered(&inst, &Permutation::identity(5)).unwrap());
    }

    #[test]
    fn superincreasing_knapsack_is_lex_ordered_with_set_equality() {
        let inst = knapsack_down(&[1, 1, 1, 1], vec![1, 2, 4, 8], 11);
        let sigma = Permutation::identity(4);
        assert!(is_lex_ordered(&inst, &sigma).unwrap());
        // Independent confirmation: S_I literally equals the lex interval.
        let theta = lexopt::lex_max_greedy(&inst, &sigma).unwrap();
        assert_eq!(theta, pt(&[1, 1, 0, 1])); // 1 + 2 + 8 = 11
        let feasible = bruteforce::enumerate(&inst, inst.bounding_box()).unwrap();
        let interval: Vec<IntPoint> = inst
            .bounding_box()
            .points()
            .filter(|x| lex_le(x, &theta, &sigma).unwrap())
            .collect();
        assert_eq!(feasible, interval);
    }

    #[test]
    fn lex_ordered_test_agrees_with_set_equality_on_random_instances() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(903);
        let mut ordered = 0;
        for round in 0..60 {
            let n = rng.random_range(2..=4);
            let upper: Vec<i64> = (0..n).map(|_| rng.random_range(1..=3)).collect();
            let a: Vec<i64> = (0..n).map(|_| rng.random_range(0..=6)).collect();
            let cap: i64 = a.iter().zip(&upper).map(|(&w, &u)| w * u).sum();
            let b = rng.random_range(0..=cap.max(1));
            let inst = knapsack_down(&upper, a, b);
            let sigma = shuffled_permutation(n, 9300 + round);

            let verdict = is_lex_ordered(&inst, &sigma).unwrap();
            let theta = lexopt::lex_max_greedy(&inst, &sigma).unwrap();
            let feasible = bruteforce::enumerate(&inst, inst.bounding_box()).unwrap();
            let interval: Vec<IntPoint> = inst
                .bounding_box()
                .points()
                .filter(|x| lex_le(x, &theta, &sigma).unwrap())
                .collect();
            assert_eq!(verdict, feasible == interval, "round {round}");
            ordered += usize::from(verdict);
        }
        // The sample must exercise both verdicts to mean anything.
        assert!(ordered > 0 && ordered < 60, "one-sided sample: {ordered}/60");
    }

    #[test]
    fn simplices_predictions_match_the_greedy_oracle() {
        for (n, delta) in [(4, 2), (4, 3), (5, 2), (5, 3), (6, 2), (6, 3)] {
            let facts = simplices_instance(n, delta).unwrap();
            let mut sigmas = vec![Permutation::identity(n), Permutation::reverse(n)];
            for s in 0..3 {
                sigmas.push(shuffled_permutation(n, 9400 + (n as u64) * 10 + s));
            }
            for sigma in &sigmas {
                let predicted = facts.lexmax_for(sigma).unwrap();
                let greedy = lexopt::lex_max_greedy(&facts.instance, sigma).unwrap();
                assert_eq!(predicted, greedy, "n={n} δ={delta} σ={sigma}");
            }
        }
        let facts = simplices_instance(5, 2).unwrap();
        assert_eq!(facts.rho, 2);
        assert_eq!(facts.lexmax_sigma_order, vec![0, 0, 1, 2, 2]);
        let facts = simplices_instance(4, 2).unwrap();
        assert_eq!(facts.lexmax_sigma_order, vec![0, 0, 2, 2]);
        assert_eq!(facts.witness, pt(&[1, 1, 1, 2]));
        assert_eq!(facts.witness.coords().iter().sum::<i64>(), 5); // budget is 4
    }

    #[test]
    fn simplices_witness_lies_in_every_lex_interval_but_not_in_the_set() {
        let facts = simplices_instance(4, 2).unwrap();
        let inst = &facts.instance;
        assert!(!inst.contains(&facts.witness).unwrap());
        for image in (0..4).permutations(4) {
            let sigma = Permutation::new(image).unwrap();
            let theta = lexopt::lex_max_greedy(inst, &sigma).unwrap();
            assert_eq!(theta, facts.lexmax_for(&sigma).unwrap());
            assert!(
                lex_le(&facts.witness, &theta, &sigma).unwrap(),
                "witness escapes L under {sigma}"
            );
        }
    }

    #[test]
    fn simplices_are_never_lex_ordered_and_fail_the_dual_tightness_check() {
        let facts = simplices_instance(4, 2).unwrap();
        let all: Vec<Permutation> = (0..4)
            .permutations(4)
            .map(|img| Permutation::new(img).unwrap())
            .collect();
        for sigma in &all {
            assert!(!is_lex_ordered(&facts.instance, sigma).unwrap(), "σ={sigma}");
        }
        let family = PermFamily::new(4, all).unwrap();
        assert!(!dual_tightness_check(&facts.instance, &family).unwrap());
    }

    #[test]
    fn a_box_is_lex_ordered_and_dually_tight_under_any_single_permutation() {
        let inst = knapsack_down(&[2, 1, 3], vec![0, 0, 0], 0);
        let sigma = shuffled_permutation(3, 77);
        assert!(is_lex_ordered(&inst, &sigma).unwrap());
        let family = PermFamily::new(3, vec![sigma]).unwrap();
        assert!(dual_tightness_check(&inst, &family).unwrap());
    }

    #[test]
    fn monotone_01_instances_pass_the_dual_tightness_check_with_h3() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(904);
        for round in 0..25 {
            let n = rng.random_range(2..=6);
            let inst = if rng.random_bool(0.5) {
                let a: Vec<i64> = (0..n).map(|_| rng.random_range(0..=5)).collect();
                let cap: i64 = a.iter().sum();
                knapsack_down(&vec![1; n], a, rng.random_range(0..=cap.max(1)))
            } else {
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        if rng.random_bool(0.4) {
                            edges.push((i, j));
                        }
                    }
                }
                SetInstance::new(
                    IntBox::binary(n),
                    Body::IndependenceGraph { edges },
                    Monotonicity::Down,
                )
                .unwrap()
            };
            let h3 = bounds::family_h3(&inst).unwrap();
            assert!(dual_tightness_check(&inst, &h3).unwrap(), "round {round}");
        }
    }

    #[test]
    fn kappa_family_facts_match_the_oracles() {
        let facts = kappa_family_instance(2, 2).unwrap();
        let Body::VPolytope { generators } = facts.instance.body() else {
            panic!("expected a V-polytope body");
        };
        assert_eq!(
            generators,
            &vec![
                vec![rat(2), rat(0)],
                vec![rat(0), rat(2)],
                vec![rat(1), rat(1)],
            ]
        );
        assert!(facts.instance.contains(&pt(&[1, 1])).unwrap());

        let facts = kappa_family_instance(4, 10).unwrap();
        let id = Permutation::identity(4);
        let greedy = lexopt::lex_max_greedy(&facts.instance, &id).unwrap();
        assert_eq!(greedy, pt(&[0, 0, 0, 10]));
        assert_eq!(facts.lexmax_for(&id).unwrap(), greedy);
        assert_eq!(
            lexopt::lex_min_greedy(&facts.instance, &id).unwrap(),
            facts.lexmin_for(&id).unwrap()
        );
        assert_eq!(facts.lexmin_for(&id).unwrap(), pt(&[10, 0, 0, 0]));
        assert_eq!(facts.ratio, rat(10) / rat(36));
        assert_eq!(facts.z_star_ones, 36);
        let c = vec![rat(1); 4];
        let (z_star, opt) = bounds::optimum_bruteforce(&facts.instance, &c).unwrap();
        assert_eq!(z_star, rat(36));
        assert_eq!(opt, vec![pt(&[9, 9, 9, 9])]);
    }

    #[test]
    fn every_lex_maximum_is_a_maximal_point() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(905);
        for round in 0..40 {
            let n = rng.random_range(2..=4);
            let upper: Vec<i64> = (0..n).map(|_| rng.random_range(1..=3)).collect();
            let a: Vec<i64> = (0..n).map(|_| rng.random_range(-4..=6)).collect();
            let lo: i64 =
                a.iter().zip(&upper).map(|(&w, &u)| if w < 0 { w * u } else { 0 }).sum();
            let hi: i64 =
                a.iter().zip(&upper).map(|(&w, &u)| if w > 0 { w * u } else { 0 }).sum();
            let b = rng.random_range(lo..=hi);
            let inst = SetInstance::new(
                IntBox::from_upper(pt(&upper)).unwrap(),
                Body::Knapsack { a, b },
                Monotonicity::Unknown,
            )
            .unwrap();
            if !inst.is_int_feasible(inst.bounding_box()).unwrap() {
                continue;
            }
            let maxi = maximal_points(&inst).unwrap();
            for s in 0..3 {
                let sigma = shuffled_permutation(n, 9500 + round * 4 + s);
                let theta = lexopt::lex_max_greedy(&inst, &sigma).unwrap();
                assert!(maxi.contains(&theta), "round {round}: {theta:?} not maximal");
            }
        }
    }

    #[test]
    fn dedup_lex_maxima_over_all_permutations_equal_maximal_points_for_01_sets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(906);
        for round in 0..6 {
            let n = if round == 0 { 6 } else { rng.random_range(3..=5) };
            let a: Vec<i64> = (0..n).map(|_| rng.random_range(0..=5)).collect();
            let cap: i64 = a.iter().sum();
            let inst = knapsack_down(&vec![1; n], a, rng.random_range(1..=cap.max(1)));
            let maxi = maximal_points(&inst).unwrap();

            let mut dedup = BTreeSet::new();
            for image in (0..n).permutations(n) {
                let sigma = Permutation::new(image).unwrap();
                dedup.insert(lexopt::lex_max_greedy(&inst, &sigma).unwrap());
            }
            let dedup: Vec<IntPoint> = dedup.into_iter().collect();
            assert_eq!(dedup, maxi, "round {round}: all-σ sweep");

            let h2 = bounds::family_h2(&inst).unwrap();
            let mut via_h2 = BTreeSet::new();
            for sigma in h2.perms() {
                via_h2.insert(lexopt::lex_max_greedy(&inst, sigma).unwrap());
            }
            let via_h2: Vec<IntPoint> = via_h2.into_iter().collect();
            assert_eq!(via_h2, maxi, "round {round}: H2 sweep");
        }
    }

    #[test]
    fn sampled_lex_maxima_are_maximal_on_larger_01_sets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(907);
        let n = 10;
        let a: Vec<i64> = (0..n).map(|_| rng.random_range(1..=9)).collect();
        let b = a.iter().sum::<i64>() / 2;
        let inst = knapsack_down(&vec![1; n], a, b);
        let maxi = maximal_points(&inst).unwrap();
        for s in 0..200 {
            let sigma = shuffled_permutation(n, 9600 + s);
            let theta = lexopt::lex_max_greedy(&inst, &sigma).unwrap();
            assert!(maxi.contains(&theta));
        }
        let h2 = bounds::family_h2(&inst).unwrap();
        let mut via_h2 = BTreeSet::new();
        for sigma in h2.perms() {
            via_h2.insert(lexopt::lex_max_greedy(&inst, sigma).unwrap());
        }
        assert_eq!(via_h2.into_iter().collect::<Vec<_>>(), maxi);
    }
}
