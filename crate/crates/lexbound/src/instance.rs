//! Set instances: the compact set `S` in one of eight concrete
//! representations, with exact integer-feasibility and membership oracles.
//!
//! An instance is a box `[l, u]`, a body describing `S`, and a monotonicity
//! tag. The integer set under study is always `S_I = S ∩ box ∩ Z^n`. The two
//! workhorse queries are
//!
//! * [`SetInstance::contains`] — is a given integer point in `S_I`, and
//! * [`SetInstance::is_int_feasible`] — is `S_I ∩ sub` nonempty for a
//!   sub-box, the oracle every lex-optimization algorithm in this crate is
//!   built on.
//!
//! Feasibility is exact. Monotone instances are answered by a single corner
//! membership test, sign-separated systems by their common minimizing corner,
//! and the general cases by depth-first search with interval propagation
//! (linear bodies) or exact rational hull pruning (V-polytopes) under a
//! configurable node budget. Running out of budget is an error, never an
//! approximate answer.
//!
//! Instances serialize to a stable JSON schema with rationals as `"p/q"`
//! strings; `from_json(to_json(inst))` reproduces the instance bit-exactly.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lex::{complement_point, lex_cmp, IntBox, IntPoint, Permutation};
use crate::ratio;
use crate::simplex;

/// Default node budget for feasibility searches.
pub const DEFAULT_NODE_CAP: u64 = 1_000_000;

/// Box-point threshold below which monotonicity claims are checked / detected
/// by exhaustive sweep.
pub const MONOTONE_SWEEP_CAP: u64 = 10_000;

/// Desk-scale limits for the public hull-membership entry point.
pub const HULL_MAX_GENERATORS: usize = 64;
pub const HULL_MAX_DIM: usize = 10;

// ──────────────────────────── tags and bodies ──────────────────────────────

/// Declared monotonicity of `S_I` relative to its box: `Down` means
/// `x ∈ S_I, y ∈ box, y ≤ x ⟹ y ∈ S_I`; `Up` is the mirror image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotonicity {
    Down,
    Up,
    None,
    Unknown,
}

/// Direction of a lex constraint: `x ⪯_σ θ` or `x ⪰_σ θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LexDirection {
    Le,
    Ge,
}

/// One explicit lex constraint `x ⪯_σ θ` (or `⪰`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexConstraint {
    pub direction: LexDirection,
    pub sigma: Permutation,
    pub threshold: IntPoint,
}

impl LexConstraint {
    /// Whether `x` satisfies the constraint.
    pub fn satisfied_by(&self, x: &IntPoint) -> Result<bool> {
        let cmp = lex_cmp(x, &self.threshold, &self.sigma)?;
        Ok(match self.direction {
            LexDirection::Le => cmp != std::cmp::Ordering::Greater,
            LexDirection::Ge => cmp != std::cmp::Ordering::Less,
        })
    }

    /// Whether some point of the box can satisfy the constraint. The lex-least
    /// point of a box is its lower corner and the lex-greatest its upper
    /// corner (under every σ), so a one-corner test is exact.
    pub fn satisfiable_over(&self, sub: &IntBox) -> Result<bool> {
        match self.direction {
            LexDirection::Le => self.satisfied_by(sub.lower()),
            LexDirection::Ge => self.satisfied_by(sub.upper()),
        }
    }
}

/// A nondecreasing, integer-valued submodular set function `f` with
/// `f(∅) = 0`, given either as an explicit truth table over all subsets or as
/// a concave function of a nonnegative modular weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubmodularKind {
    /// `values[mask] = f(A)` where bit `i` of `mask` means `i ∈ A`.
    TruthTable { values: Vec<i64> },
    /// `f(A) = g(Σ_{i∈A} w_i)` for a concave nondecreasing table `g` with
    /// `g(0) = 0`; submodular and nondecreasing by construction.
    ConcaveOfModular { weights: Vec<i64>, g: Vec<i64> },
}

#[derive(Clone, Debug)]
pub struct SubmodularOracle {
    n: usize,
    kind: SubmodularKind,
    /// False only for truth tables too large to check exhaustively.
    validated: bool,
    table: OnceLock<Vec<i64>>,
}

impl PartialEq for SubmodularOracle {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.kind == other.kind
    }
}
impl Eq for SubmodularOracle {}

/// Exhaustive validation is only attempted up to this ground-set size.
pub const SUBMODULAR_VALIDATE_MAX_N: usize = 12;
pub const SUBMODULAR_MAX_N: usize = 16;

impl SubmodularOracle {
    pub fn new(n: usize, kind: SubmodularKind) -> Result<Self> {
        if n == 0 || n > SUBMODULAR_MAX_N {
            return Err(Error::domain(format!(
                "submodular oracle supports 1 ≤ n ≤ {SUBMODULAR_MAX_N}, got {n}"
            )));
        }
        let mut validated = true;
        match &kind {
            SubmodularKind::TruthTable { values } => {
                if values.len() != 1usize << n {
                    return Err(Error::domain(format!(
                        "truth table has {} entries, expected 2^{n}",
                        values.len()
                    )));
                }
                if values[0] != 0 {
                    return Err(Error::domain("truth table requires f(∅) = 0"));
                }
                if n <= SUBMODULAR_VALIDATE_MAX_N {
                    validate_truth_table(n, values)?;
                } else {
                    validated = false;
                }
            }
            SubmodularKind::ConcaveOfModular { weights, g } => {
                if weights.len() != n {
                    return Err(Error::domain("weight vector length differs from n"));
                }
                if weights.iter().any(|&w| w < 0) {
                    return Err(Error::domain("modular weights must be nonnegative"));
                }
                let total: i64 = weights.iter().sum();
                if g.is_empty() || g[0] != 0 {
                    return Err(Error::domain("concave table requires g(0) = 0"));
                }
                if (g.len() as i64) < total + 1 {
                    return Err(Error::domain(format!(
                        "concave table has {} entries but must cover weights 0..={total}",
                        g.len()
                    )));
                }
                for k in 1..g.len() {
                    if g[k] < g[k - 1] {
                        return Err(Error::domain("concave table must be nondecreasing"));
                    }
                    if k >= 2 && g[k] - g[k - 1] > g[k - 1] - g[k - 2] {
                        return Err(Error::domain("table g is not concave"));
                    }
                }
            }
        }
        Ok(SubmodularOracle { n, kind, validated, table: OnceLock::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &SubmodularKind {
        &self.kind
    }

    /// Whether submodularity was verified exhaustively (always true for
    /// concave-of-modular oracles).
    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// `f(A)` for the subset encoded by `mask`.
    pub fn eval_mask(&self, mask: u32) -> i64 {
        self.full_table()[mask as usize]
    }

    /// `f(A)` for an explicit index set.
    pub fn eval_set(&self, set: &[usize]) -> i64 {
        let mut mask = 0u32;
        for &i in set {
            mask |= 1 << i;
        }
        self.eval_mask(mask)
    }

    /// The full `mask → f` table, built once.
    pub fn full_table(&self) -> &[i64] {
        self.table.get_or_init(|| match &self.kind {
            SubmodularKind::TruthTable { values } => values.clone(),
            SubmodularKind::ConcaveOfModular { weights, g } => {
                let size = 1usize << self.n;
                let mut wsum = vec![0i64; size];
                for mask in 1..size {
                    let low = mask.trailing_zeros() as usize;
                    wsum[mask] = wsum[mask & (mask - 1)] + weights[low];
                }
                wsum.into_iter().map(|w| g[w as usize]).collect()
            }
        })
    }
}

fn validate_truth_table(n: usize, values: &[i64]) -> Result<()> {
    let size = 1usize << n;
    for mask in 0..size {
        for i in 0..n {
            if mask & (1 << i) != 0 {
                continue;
            }
            let with_i = mask | (1 << i);
            if values[with_i] < values[mask] {
                return Err(Error::domain(format!(
                    "truth table is not nondecreasing at mask {mask:#b}, element {}",
                    i + 1
                )));
            }
            for j in i + 1..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let with_j = mask | (1 << j);
                let with_ij = with_i | (1 << j);
                if values[with_i] + values[with_j] < values[with_ij] + values[mask] {
                    return Err(Error::domain(format!(
                        "truth table violates submodularity at mask {mask:#b}, elements {}, {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The body of an instance: which kind of set `S` is, plus its data.
#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    /// `{x : Ax ≤ b}` with rational `A, b`.
    Linear { a: Vec<Vec<BigRational>>, b: Vec<BigRational> },
    /// A linear system in which every column is wholly nonnegative (`N⁺`) or
    /// wholly nonpositive (`N⁻`) — the shape with closed-form lex maxima.
    SignSeparated { a: Vec<Vec<BigRational>>, b: Vec<BigRational> },
    /// `{x : a·x ≤ b}` with integer data.
    Knapsack { a: Vec<i64>, b: i64 },
    /// Characteristic vectors of independent (stable) sets of a graph:
    /// `x_i + x_j ≤ 1` per edge, over the binary box.
    IndependenceGraph { edges: Vec<(usize, usize)> },
    /// The integral polymatroid `P_f = {x ≥ 0 : Σ_{i∈A} x_i ≤ f(A) ∀A}`.
    Submodular(SubmodularOracle),
    /// Convex hull of explicit rational generator points.
    VPolytope { generators: Vec<Vec<BigRational>> },
    /// Intersection of explicit lex constraints over the box.
    ExplicitLex { constraints: Vec<LexConstraint> },
    /// An explicit list of integer points.
    PointList { points: Vec<IntPoint> },
}

impl Body {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Body::Linear { .. } => "linear",
            Body::SignSeparated { .. } => "sign_separated",
            Body::Knapsack { .. } => "knapsack",
            Body::IndependenceGraph { .. } => "indep_graph",
            Body::Submodular(_) => "submodular",
            Body::VPolytope { .. } => "vpolytope",
            Body::ExplicitLex { .. } => "lex_explicit",
            Body::PointList { .. } => "point_list",
        }
    }
}

/// A sign-separated view of a linear body: scaled-to-integer rows plus the
/// column classification. Available for `SignSeparated`, any `Knapsack`, and
/// `Linear` bodies whose columns happen to be sign-separated.
#[derive(Clone, Debug)]
pub struct SignSeparatedView {
    pub a: Vec<Vec<BigRational>>,
    pub b: Vec<BigRational>,
    /// Columns with all coefficients ≥ 0 (zero columns land here).
    pub n_plus: Vec<usize>,
    /// Columns with all coefficients ≤ 0 and at least one < 0.
    pub n_minus: Vec<usize>,
}

// ─────────────────────────────── SetInstance ───────────────────────────────

/// A set instance: box, body, and monotonicity tag. Immutable after
/// construction; all oracles are pure and can run concurrently.
#[derive(Debug)]
pub struct SetInstance {
    boxed: IntBox,
    body: Body,
    monotone: Monotonicity,
    node_cap: u64,
    /// Scaled-to-BigInt rows for linear-ish bodies (built at construction).
    int_rows: Vec<(Vec<BigInt>, BigInt)>,
    /// Point set for `PointList` membership.
    point_set: BTreeSet<IntPoint>,
    detected: OnceLock<Option<Monotonicity>>,
}

impl Clone for SetInstance {
    fn clone(&self) -> Self {
        SetInstance {
            boxed: self.boxed.clone(),
            body: self.body.clone(),
            monotone: self.monotone,
            node_cap: self.node_cap,
            int_rows: self.int_rows.clone(),
            point_set: self.point_set.clone(),
            detected: self.detected.clone(),
        }
    }
}

impl PartialEq for SetInstance {
    fn eq(&self, other: &Self) -> bool {
        self.boxed == other.boxed
            && self.body == other.body
            && self.monotone == other.monotone
    }
}

impl SetInstance {
    pub fn new(boxed: IntBox, body: Body, monotone: Monotonicity) -> Result<Self> {
        let n = boxed.dim();
        if n == 0 {
            return Err(Error::domain("instances must have dimension ≥ 1"));
        }
        validate_body(&boxed, &body)?;
        let int_rows = scaled_rows(&body)?;
        let point_set = match &body {
            Body::PointList { points } => points.iter().cloned().collect(),
            _ => BTreeSet::new(),
        };
        let inst = SetInstance {
            boxed,
            body,
            monotone,
            node_cap: DEFAULT_NODE_CAP,
            int_rows,
            point_set,
            detected: OnceLock::new(),
        };
        inst.validate_monotone_tag()?;
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.boxed.dim()
    }

    pub fn bounding_box(&self) -> &IntBox {
        &self.boxed
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn monotone_declared(&self) -> Monotonicity {
        self.monotone
    }

    pub fn node_cap(&self) -> u64 {
        self.node_cap
    }

    pub fn with_node_cap(mut self, cap: u64) -> Self {
        self.node_cap = cap;
        self
    }

    /// A copy restricted to a different box (used to re-root algorithms on a
    /// sub-box). The body and tag are preserved.
    pub fn with_box(&self, boxed: IntBox) -> Result<SetInstance> {
        let mut out =
            SetInstance::new(boxed, self.body.clone(), self.monotone)?;
        out.node_cap = self.node_cap;
        Ok(out)
    }

    /// The monotonicity used by fast paths: structural knowledge first, then
    /// the declared tag, then (for `Unknown`) a one-time exhaustive detection
    /// on boxes with at most [`MONOTONE_SWEEP_CAP`] points.
    pub fn effective_monotonicity(&self) -> Monotonicity {
        match &self.body {
            Body::IndependenceGraph { .. } | Body::Submodular(_) => return Monotonicity::Down,
            _ => {}
        }
        match self.monotone {
            Monotonicity::Unknown => self
                .detected
                .get_or_init(|| self.detect_monotonicity())
                .unwrap_or(Monotonicity::Unknown),
            tag => tag,
        }
    }

    fn detect_monotonicity(&self) -> Option<Monotonicity> {
        let count = self.boxed.point_count_u64()?;
        if count > MONOTONE_SWEEP_CAP {
            return None;
        }
        let (down, up) = self.monotone_sweep().ok()?;
        Some(if down {
            Monotonicity::Down
        } else if up {
            Monotonicity::Up
        } else {
            Monotonicity::None
        })
    }

    /// Exhaustively checks down/up closure of `S_I` relative to the box.
    fn monotone_sweep(&self) -> Result<(bool, bool)> {
        let mut down = true;
        let mut up = true;
        for x in self.boxed.points() {
            if !self.contains(&x)? {
                continue;
            }
            for i in 0..self.n() {
                if down && x[i] > self.boxed.lower()[i] {
                    let mut y = x.coords().to_vec();
                    y[i] -= 1;
                    if !self.contains(&IntPoint::new(y))? {
                        down = false;
                    }
                }
                if up && x[i] < self.boxed.upper()[i] {
                    let mut y = x.coords().to_vec();
                    y[i] += 1;
                    if !self.contains(&IntPoint::new(y))? {
                        up = false;
                    }
                }
            }
            if !down && !up {
                break;
            }
        }
        Ok((down, up))
    }

    fn validate_monotone_tag(&self) -> Result<()> {
        let claimed = self.monotone;
        if !matches!(claimed, Monotonicity::Down | Monotonicity::Up) {
            return Ok(());
        }
        // Structurally monotone bodies need no sweep.
        if claimed == Monotonicity::Down {
            match &self.body {
                Body::IndependenceGraph { .. } | Body::Submodular(_) => return Ok(()),
                Body::Knapsack { a, .. } if a.iter().all(|&v| v >= 0) => return Ok(()),
                Body::Linear { a, .. } | Body::SignSeparated { a, .. }
                    if a.iter().flatten().all(|v| !v.is_negative()) =>
                {
                    return Ok(())
                }
                _ => {}
            }
        }
        if claimed == Monotonicity::Up {
            match &self.body {
                Body::Knapsack { a, .. } if a.iter().all(|&v| v <= 0) => return Ok(()),
                Body::Linear { a, .. } | Body::SignSeparated { a, .. }
                    if a.iter().flatten().all(|v| !v.is_positive()) =>
                {
                    return Ok(())
                }
                _ => {}
            }
        }
        let Some(count) = self.boxed.point_count_u64() else { return Ok(()) };
        let sweep_cap = match &self.body {
            Body::VPolytope { .. } | Body::Submodular(_) => 1_000,
            _ => MONOTONE_SWEEP_CAP,
        };
        if count > sweep_cap {
            return Ok(()); // trusted
        }
        let (down, up) = self.monotone_sweep()?;
        let ok = match claimed {
            Monotonicity::Down => down,
            Monotonicity::Up => up,
            _ => true,
        };
        if !ok {
            return Err(Error::domain(format!(
                "instance declared monotone-{claimed:?} but the box sweep found a violation"
            )));
        }
        Ok(())
    }

    /// A sign-separated view of the body, when it has one.
    pub fn sign_separated_view(&self) -> Option<SignSeparatedView> {
        let (a, b) = match &self.body {
            Body::SignSeparated { a, b } | Body::Linear { a, b } => (a.clone(), b.clone()),
            Body::Knapsack { a, b } => (
                vec![a.iter().map(|&v| ratio::rat(v)).collect()],
                vec![ratio::rat(*b)],
            ),
            _ => return None,
        };
        let (n_plus, n_minus) = classify_columns(self.n(), &a)?;
        Some(SignSeparatedView { a, b, n_plus, n_minus })
    }

    // ───────────────────────────── membership ──────────────────────────────

    /// Exact membership of an integer point in `S_I = S ∩ box ∩ Z^n`.
    pub fn contains(&self, x: &IntPoint) -> Result<bool> {
        if x.dim() != self.n() {
            return Err(Error::domain(format!(
                "point dimension {} differs from instance dimension {}",
                x.dim(),
                self.n()
            )));
        }
        if !self.boxed.contains(x) {
            return Ok(false);
        }
        match &self.body {
            Body::Linear { .. } | Body::SignSeparated { .. } | Body::Knapsack { .. } => {
                Ok(self.int_rows.iter().all(|(row, rhs)| {
                    let lhs: BigInt =
                        row.iter().zip(x.iter()).map(|(c, &v)| c * BigInt::from(v)).sum();
                    lhs <= *rhs
                }))
            }
            Body::IndependenceGraph { edges } => {
                Ok(edges.iter().all(|&(i, j)| x[i] + x[j] <= 1))
            }
            Body::Submodular(oracle) => {
                let table = oracle.full_table();
                let size = 1usize << oracle.n();
                let mut sums = vec![0i64; size];
                for mask in 1..size {
                    let low = mask.trailing_zeros() as usize;
                    sums[mask] = sums[mask & (mask - 1)] + x[low];
                    if sums[mask] > table[mask] {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Body::VPolytope { generators } => {
                simplex::hull_member(generators, &x.to_rational())
            }
            Body::ExplicitLex { constraints } => {
                for c in constraints {
                    if !c.satisfied_by(x)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Body::PointList { .. } => Ok(self.point_set.contains(x)),
        }
    }

    // ──────────────────────── integer feasibility ──────────────────────────

    /// Exact test for `S_I ∩ sub ≠ ∅` over a sub-box of the instance box.
    ///
    /// Fast paths: monotone-down sets are feasible iff the lower corner of
    /// `sub` is feasible (mirror for up), and sign-separated systems iff
    /// their common minimizing corner is. The general linear and V-polytope
    /// cases run a depth-first search under the node budget; exceeding the
    /// budget is a [`Error::Resource`], never a wrong answer.
    pub fn is_int_feasible(&self, sub: &IntBox) -> Result<bool> {
        if sub.dim() != self.n() {
            return Err(Error::domain(format!(
                "sub-box dimension {} differs from instance dimension {}",
                sub.dim(),
                self.n()
            )));
        }
        if !sub.subset_of(&self.boxed) {
            return Err(Error::domain(format!(
                "sub-box {sub} is not contained in the instance box {}",
                self.boxed
            )));
        }
        match self.effective_monotonicity() {
            Monotonicity::Down => return self.contains(sub.lower()),
            Monotonicity::Up => return self.contains(sub.upper()),
            _ => {}
        }
        match &self.body {
            Body::Knapsack { .. } | Body::SignSeparated { .. } => {
                // Columns do not mix signs (a knapsack is a single row), so
                // one corner minimizes every row simultaneously.
                let view = self.sign_separated_view().ok_or_else(|| {
                    Error::domain("sign-separated body has a sign-mixed column")
                })?;
                let corner = minimizing_corner(&view, sub);
                self.contains(&corner)
            }
            Body::Linear { .. } => self.linear_dfs(sub),
            Body::VPolytope { generators } => {
                let mut budget = self.node_cap;
                vpolytope_dfs(generators, sub, &mut budget)
            }
            Body::ExplicitLex { constraints } => {
                let mut budget = self.node_cap;
                lexset_dfs(constraints, sub, &mut budget)
            }
            Body::PointList { points } => Ok(points.iter().any(|p| sub.contains(p))),
            Body::IndependenceGraph { .. } | Body::Submodular(_) => {
                unreachable!("structurally down-monotone bodies use the corner fast path")
            }
        }
    }

    /// Depth-first search with interval constraint propagation for general
    /// linear bodies: repeatedly tighten per-coordinate intervals against
    /// each row's minimum over the rest of the box, then branch on the
    /// most-constrained coordinate (smallest interval, ties by index).
    fn linear_dfs(&self, sub: &IntBox) -> Result<bool> {
        let mut lower: Vec<BigInt> = sub.lower().iter().map(|&v| BigInt::from(v)).collect();
        let mut upper: Vec<BigInt> = sub.upper().iter().map(|&v| BigInt::from(v)).collect();
        let mut budget = self.node_cap;
        self.linear_dfs_rec(&mut lower, &mut upper, &mut budget)
    }

    fn linear_dfs_rec(
        &self,
        lower: &mut Vec<BigInt>,
        upper: &mut Vec<BigInt>,
        budget: &mut u64,
    ) -> Result<bool> {
        if *budget == 0 {
            return Err(Error::resource(format!(
                "feasibility search exceeded the node cap {}",
                self.node_cap
            )));
        }
        *budget -= 1;

        // Propagate intervals to a fixpoint; every deduction is sound, so a
        // wiped-out interval proves infeasibility of this sub-box.
        loop {
            let mut changed = false;
            for (row, rhs) in &self.int_rows {
                // Minimum of the row over the current box.
                let mut min_lhs = BigInt::zero();
                for j in 0..row.len() {
                    let c = &row[j];
                    min_lhs += if c.is_negative() { c * &upper[j] } else { c * &lower[j] };
                }
                if min_lhs > *rhs {
                    return Ok(false);
                }
                // Slack available to each coordinate beyond its minimum term.
                for j in 0..row.len() {
                    let c = &row[j];
                    if c.is_zero() {
                        continue;
                    }
                    let term_min =
                        if c.is_negative() { c * &upper[j] } else { c * &lower[j] };
                    let slack = rhs - (&min_lhs - &term_min);
                    // c·x_j ≤ slack: an upper bound ⌊slack/c⌋ when c > 0, a
                    // lower bound ⌈slack/c⌉ when c < 0.
                    if c.is_positive() {
                        let bound = slack.div_floor(c);
                        if bound < upper[j] {
                            upper[j] = bound;
                            changed = true;
                            if upper[j] < lower[j] {
                                return Ok(false);
                            }
                        }
                    } else {
                        let bound = slack.div_ceil(c);
                        if bound > lower[j] {
                            lower[j] = bound;
                            changed = true;
                            if upper[j] < lower[j] {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }

        // Most-constrained branching coordinate.
        let mut pick: Option<(BigInt, usize)> = None;
        for j in 0..lower.len() {
            if lower[j] < upper[j] {
                let width = &upper[j] - &lower[j];
                match &pick {
                    Some((w, _)) if *w <= width => {}
                    _ => pick = Some((width, j)),
                }
            }
        }
        let Some((_, j)) = pick else {
            // Single point; propagation already verified every row.
            return Ok(true);
        };

        let lo = lower[j].clone();
        let hi = upper[j].clone();
        let mut v = lo.clone();
        while v <= hi {
            let mut sub_lower = lower.clone();
            let mut sub_upper = upper.clone();
            sub_lower[j] = v.clone();
            sub_upper[j] = v.clone();
            if self.linear_dfs_rec(&mut sub_lower, &mut sub_upper, budget)? {
                return Ok(true);
            }
            v += 1;
        }
        Ok(false)
    }

    // ─────────────────────────── bound tightening ──────────────────────────

    /// Shrinks the box to `l_j = min{x_j : x ∈ S_I}`, `u_j = max{x_j : x ∈
    /// S_I}`, each found by bisection on the feasibility oracle.
    pub fn tighten_bounds(&self) -> Result<IntBox> {
        if !self.is_int_feasible(&self.boxed)? {
            return Err(Error::domain("cannot tighten the bounds of an infeasible instance"));
        }
        let n = self.n();
        let mut lower = self.boxed.lower().coords().to_vec();
        let mut upper = self.boxed.upper().coords().to_vec();
        for j in 0..n {
            // Largest v such that {x_j ≥ v} is feasible.
            let mut lo = self.boxed.lower()[j];
            let mut hi = self.boxed.upper()[j];
            while lo < hi {
                let mid = lo + (hi - lo + 1) / 2;
                let probe = self.boxed.restrict_coord(j, mid, self.boxed.upper()[j])?;
                if self.is_int_feasible(&probe)? {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            upper[j] = lo;
            // Smallest v such that {x_j ≤ v} is feasible.
            let mut lo2 = self.boxed.lower()[j];
            let mut hi2 = self.boxed.upper()[j];
            while lo2 < hi2 {
                let mid = lo2 + (hi2 - lo2) / 2;
                let probe = self.boxed.restrict_coord(j, self.boxed.lower()[j], mid)?;
                if self.is_int_feasible(&probe)? {
                    hi2 = mid;
                } else {
                    lo2 = mid + 1;
                }
            }
            lower[j] = lo2;
        }
        IntBox::new(IntPoint::new(lower), IntPoint::new(upper))
    }

    // ────────────────────────────── complement ─────────────────────────────

    /// The reflected instance `S' = {l + u − x : x ∈ S}` over the same box.
    /// Membership satisfies `x ∈ S_I ⟺ l + u − x ∈ S'_I`, reflection reverses
    /// every lex order, and a down-monotone set reflects to an up-monotone one
    /// (and vice versa). Not available for polymatroid bodies, whose
    /// reflection leaves the representable class.
    pub fn complement(&self) -> Result<SetInstance> {
        let n = self.n();
        let mid: Vec<i64> = (0..n)
            .map(|j| self.boxed.lower()[j] + self.boxed.upper()[j])
            .collect();
        let mid_rat: Vec<BigRational> =
            mid.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
        let reflect_rows = |a: &Vec<Vec<BigRational>>, b: &Vec<BigRational>| {
            let a2: Vec<Vec<BigRational>> =
                a.iter().map(|row| row.iter().map(|v| -v).collect()).collect();
            let b2: Vec<BigRational> = a
                .iter()
                .zip(b)
                .map(|(row, rhs)| {
                    let shift: BigRational =
                        row.iter().zip(&mid_rat).map(|(v, m)| v * m).sum();
                    rhs - shift
                })
                .collect();
            (a2, b2)
        };
        let body = match &self.body {
            Body::Linear { a, b } => {
                let (a, b) = reflect_rows(a, b);
                Body::Linear { a, b }
            }
            Body::SignSeparated { a, b } => {
                let (a, b) = reflect_rows(a, b);
                Body::SignSeparated { a, b }
            }
            Body::Knapsack { a, b } => {
                let shift: i128 = a
                    .iter()
                    .zip(&mid)
                    .map(|(&v, &m)| i128::from(v) * i128::from(m))
                    .sum();
                let b2 = i64::try_from(i128::from(*b) - shift).map_err(|_| {
                    Error::domain("knapsack reflection overflows 64-bit data")
                })?;
                Body::Knapsack { a: a.iter().map(|&v| -v).collect(), b: b2 }
            }
            Body::IndependenceGraph { edges } => {
                // x_i + x_j ≤ 1 becomes −y_i − y_j ≤ −1 over the binary box.
                let minus_one = -BigRational::one();
                let a: Vec<Vec<BigRational>> = edges
                    .iter()
                    .map(|&(i, j)| {
                        let mut row = vec![BigRational::zero(); n];
                        row[i] = minus_one.clone();
                        row[j] = minus_one.clone();
                        row
                    })
                    .collect();
                let b = vec![minus_one.clone(); edges.len()];
                Body::Linear { a, b }
            }
            Body::Submodular(_) => {
                return Err(Error::domain(
                    "reflection of a polymatroid body is not representable",
                ))
            }
            Body::VPolytope { generators } => Body::VPolytope {
                generators: generators
                    .iter()
                    .map(|g| g.iter().zip(&mid_rat).map(|(v, m)| m - v).collect())
                    .collect(),
            },
            Body::ExplicitLex { constraints } => Body::ExplicitLex {
                constraints: constraints
                    .iter()
                    .map(|c| {
                        Ok(LexConstraint {
                            direction: match c.direction {
                                LexDirection::Le => LexDirection::Ge,
                                LexDirection::Ge => LexDirection::Le,
                            },
                            sigma: c.sigma.clone(),
                            threshold: complement_point(&c.threshold, &self.boxed)?,
                        })
                    })
                    .collect::<Result<_>>()?,
            },
            Body::PointList { points } => Body::PointList {
                points: points
                    .iter()
                    .map(|p| complement_point(p, &self.boxed))
                    .collect::<Result<_>>()?,
            },
        };
        let monotone = match self.monotone {
            Monotonicity::Down => Monotonicity::Up,
            Monotonicity::Up => Monotonicity::Down,
            other => other,
        };
        let mut inst = SetInstance::new(self.boxed.clone(), body, monotone)?;
        inst.node_cap = self.node_cap;
        Ok(inst)
    }

    // ────────────────────────────── encodings ──────────────────────────────

    /// The `2^n − 1`-row linear-system encoding of a polymatroid body, used
    /// to cross-validate the closed-form lex maxima against the generic
    /// machinery.
    pub fn polymatroid_linear_encoding(&self) -> Result<SetInstance> {
        let Body::Submodular(oracle) = &self.body else {
            return Err(Error::domain("not a submodular instance"));
        };
        let n = self.n();
        if n > 10 {
            return Err(Error::domain(
                "polymatroid linear encoding limited to n ≤ 10 (2^n rows)",
            ));
        }
        let mut a = Vec::with_capacity((1 << n) - 1);
        let mut b = Vec::with_capacity((1 << n) - 1);
        for mask in 1u32..(1 << n) {
            let row: Vec<BigRational> = (0..n)
                .map(|i| {
                    if mask & (1 << i) != 0 {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            a.push(row);
            b.push(BigRational::from_integer(BigInt::from(oracle.eval_mask(mask))));
        }
        let mut inst = SetInstance::new(
            self.boxed.clone(),
            Body::Linear { a, b },
            Monotonicity::Down,
        )?;
        inst.node_cap = self.node_cap;
        Ok(inst)
    }

    // ────────────────────────────── JSON I/O ───────────────────────────────

    pub fn to_json(&self) -> String {
        serde_json::to_string(&InstanceDto::from(self)).expect("instance serialization")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&InstanceDto::from(self)).expect("instance serialization")
    }

    pub fn from_json(raw: &str) -> Result<SetInstance> {
        let dto: InstanceDto = serde_json::from_str(raw)
            .map_err(|e| Error::domain(format!("malformed instance JSON: {e}")))?;
        dto.build()
    }
}

/// Desk-scale exact hull membership: is `x` a convex combination of the
/// generators? Limits per the artifact contract: at most
/// [`HULL_MAX_GENERATORS`] generators and dimension ≤ [`HULL_MAX_DIM`].
pub fn hull_member(generators: &[Vec<BigRational>], x: &[BigRational]) -> Result<bool> {
    if generators.len() > HULL_MAX_GENERATORS {
        return Err(Error::resource(format!(
            "hull membership capped at {HULL_MAX_GENERATORS} generators, got {}",
            generators.len()
        )));
    }
    if x.len() > HULL_MAX_DIM {
        return Err(Error::resource(format!(
            "hull membership capped at dimension {HULL_MAX_DIM}, got {}",
            x.len()
        )));
    }
    simplex::hull_member(generators, x)
}

// ───────────────────────── construction validation ─────────────────────────

fn validate_body(boxed: &IntBox, body: &Body) -> Result<()> {
    let n = boxed.dim();
    match body {
        Body::Linear { a, b } | Body::SignSeparated { a, b } => {
            if a.len() != b.len() {
                return Err(Error::domain(format!(
                    "linear system has {} rows but {} right-hand sides",
                    a.len(),
                    b.len()
                )));
            }
            if a.iter().any(|row| row.len() != n) {
                return Err(Error::domain("linear row length differs from n"));
            }
            if matches!(body, Body::SignSeparated { .. })
                && classify_columns(n, a).is_none()
            {
                return Err(Error::domain(
                    "sign_separated body has a column with both positive and negative coefficients",
                ));
            }
        }
        Body::Knapsack { a, .. } => {
            if a.len() != n {
                return Err(Error::domain("knapsack weight vector length differs from n"));
            }
        }
        Body::IndependenceGraph { edges } => {
            if !boxed.is_binary() {
                return Err(Error::domain(
                    "independence-graph instances require the binary box [0,1]^n",
                ));
            }
            for &(i, j) in edges {
                if i >= n || j >= n {
                    return Err(Error::domain(format!(
                        "edge ({},{}) exceeds vertex count {n}",
                        i + 1,
                        j + 1
                    )));
                }
                if i == j {
                    return Err(Error::domain(format!("self-loop at vertex {}", i + 1)));
                }
            }
        }
        Body::Submodular(oracle) => {
            if oracle.n() != n {
                return Err(Error::domain("submodular oracle dimension differs from n"));
            }
            if boxed.lower().iter().any(|&l| l != 0) {
                return Err(Error::domain(
                    "submodular instances require a box with zero lower bounds",
                ));
            }
        }
        Body::VPolytope { generators } => {
            if generators.is_empty() {
                return Err(Error::domain("vpolytope requires at least one generator"));
            }
            if generators.iter().any(|v| v.len() != n) {
                return Err(Error::domain("vpolytope generator dimension differs from n"));
            }
        }
        Body::ExplicitLex { constraints } => {
            for (k, c) in constraints.iter().enumerate() {
                if c.sigma.n() != n || c.threshold.dim() != n {
                    return Err(Error::domain(format!(
                        "lex constraint {} dimension differs from n",
                        k + 1
                    )));
                }
                if !boxed.contains(&c.threshold) {
                    return Err(Error::domain(format!(
                        "lex constraint {} threshold {} lies outside the box",
                        k + 1,
                        c.threshold
                    )));
                }
            }
        }
        Body::PointList { points } => {
            for p in points {
                if p.dim() != n {
                    return Err(Error::domain("point list entry dimension differs from n"));
                }
                if !boxed.contains(p) {
                    return Err(Error::domain(format!("point {p} lies outside the box")));
                }
            }
        }
    }
    Ok(())
}

/// Splits columns into `N⁺` (all coefficients ≥ 0) and `N⁻` (all ≤ 0, at
/// least one < 0); `None` if some column mixes signs. Zero columns land in
/// `N⁺` by convention.
fn classify_columns(n: usize, a: &[Vec<BigRational>]) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut n_plus = Vec::new();
    let mut n_minus = Vec::new();
    for j in 0..n {
        let mut pos = false;
        let mut neg = false;
        for row in a {
            if row[j].is_positive() {
                pos = true;
            } else if row[j].is_negative() {
                neg = true;
            }
        }
        match (pos, neg) {
            (true, true) => return None,
            (false, true) => n_minus.push(j),
            _ => n_plus.push(j),
        }
    }
    Some((n_plus, n_minus))
}

/// Clears denominators row by row, yielding equivalent integer rows.
fn scaled_rows(body: &Body) -> Result<Vec<(Vec<BigInt>, BigInt)>> {
    let (a, b): (Vec<Vec<BigRational>>, Vec<BigRational>) = match body {
        Body::Linear { a, b } | Body::SignSeparated { a, b } => (a.clone(), b.clone()),
        Body::Knapsack { a, b } => (
            vec![a.iter().map(|&v| ratio::rat(v)).collect()],
            vec![ratio::rat(*b)],
        ),
        _ => return Ok(Vec::new()),
    };
    let mut out = Vec::with_capacity(a.len());
    for (row, rhs) in a.iter().zip(&b) {
        let mut lcm = rhs.denom().clone();
        for c in row {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
        let scale = BigRational::from_integer(lcm);
        let int_row: Vec<BigInt> =
            row.iter().map(|c| (c * &scale).to_integer()).collect();
        out.push((int_row, (rhs * &scale).to_integer()));
    }
    Ok(out)
}

/// The corner of `sub` minimizing every row of a sign-separated system at
/// once: lower bounds on `N⁺` columns, upper bounds on `N⁻` columns.
fn minimizing_corner(view: &SignSeparatedView, sub: &IntBox) -> IntPoint {
    let mut corner = sub.lower().coords().to_vec();
    for &j in &view.n_minus {
        corner[j] = sub.upper()[j];
    }
    IntPoint::new(corner)
}

// ───────────────────────────── V-polytope search ────────────────────────────

/// Binary box splitting with exact rational hull pruning: a sub-box survives
/// only if `conv(generators)` meets it, and a surviving singleton is checked
/// by exact membership.
fn vpolytope_dfs(
    generators: &[Vec<BigRational>],
    sub: &IntBox,
    budget: &mut u64,
) -> Result<bool> {
    if *budget == 0 {
        return Err(Error::resource(
            "V-polytope feasibility search exceeded the node cap",
        ));
    }
    *budget -= 1;
    let lower: Vec<BigRational> = sub.lower().to_rational();
    let upper: Vec<BigRational> = sub.upper().to_rational();
    if !simplex::hull_meets_box(generators, &lower, &upper)? {
        return Ok(false);
    }
    // Widest coordinate still free.
    let mut widest: Option<(i64, usize)> = None;
    for j in 0..sub.dim() {
        let w = sub.width(j);
        if w > 1 && widest.map_or(true, |(bw, _)| w > bw) {
            widest = Some((w, j));
        }
    }
    let Some((_, j)) = widest else {
        return simplex::hull_member(generators, &lower);
    };
    let mid = sub.lower()[j] + (sub.upper()[j] - sub.lower()[j]) / 2;
    let left = sub.restrict_coord(j, sub.lower()[j], mid)?;
    let right = sub.restrict_coord(j, mid + 1, sub.upper()[j])?;
    Ok(vpolytope_dfs(generators, &left, budget)?
        || vpolytope_dfs(generators, &right, budget)?)
}

// ───────────────────────── explicit-lex-set search ──────────────────────────

/// Depth-first coordinate fixing for explicit lex sets. Each constraint is
/// tested against the current box through its satisfiable corner, which is an
/// exact one-constraint emptiness test and hence a sound prune.
fn lexset_dfs(constraints: &[LexConstraint], sub: &IntBox, budget: &mut u64) -> Result<bool> {
    if *budget == 0 {
        return Err(Error::resource(
            "lex-set feasibility search exceeded the node cap",
        ));
    }
    *budget -= 1;
    for c in constraints {
        if !c.satisfiable_over(sub)? {
            return Ok(false);
        }
    }
    let mut pick: Option<(i64, usize)> = None;
    for j in 0..sub.dim() {
        let w = sub.width(j);
        if w > 1 {
            match pick {
                Some((bw, _)) if bw <= w => {}
                _ => pick = Some((w, j)),
            }
        }
    }
    let Some((_, j)) = pick else {
        // Singleton: every constraint was tested exactly against it above.
        return Ok(true);
    };
    for v in sub.lower()[j]..=sub.upper()[j] {
        let child = sub.fix_coord(j, v)?;
        if lexset_dfs(constraints, &child, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

// ─────────────────────────────── JSON schema ───────────────────────────────

#[derive(Serialize, Deserialize)]
struct BoxDto {
    lower: Vec<i64>,
    upper: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct LexConstraintDto {
    dir: LexDirection,
    perm: Vec<usize>,
    threshold: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SubmodularDto {
    TruthTable { values: Vec<i64> },
    ConcaveOfModular { weights: Vec<i64>, g: Vec<i64> },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum BodyDto {
    Linear {
        #[serde(with = "ratio::serde_rat_mat")]
        a: Vec<Vec<BigRational>>,
        #[serde(with = "ratio::serde_rat_vec")]
        b: Vec<BigRational>,
    },
    SignSeparated {
        #[serde(with = "ratio::serde_rat_mat")]
        a: Vec<Vec<BigRational>>,
        #[serde(with = "ratio::serde_rat_vec")]
        b: Vec<BigRational>,
    },
    Knapsack {
        a: Vec<i64>,
        b: i64,
    },
    IndepGraph {
        edges: Vec<[usize; 2]>,
    },
    Submodular {
        #[serde(flatten)]
        oracle: SubmodularDto,
    },
    Vpolytope {
        #[serde(with = "ratio::serde_rat_mat")]
        generators: Vec<Vec<BigRational>>,
    },
    LexExplicit {
        constraints: Vec<LexConstraintDto>,
    },
    PointList {
        points: Vec<Vec<i64>>,
    },
}

#[derive(Serialize, Deserialize)]
struct InstanceDto {
    n: usize,
    #[serde(rename = "box")]
    boxed: BoxDto,
    body: BodyDto,
    monotone: Monotonicity,
}

impl From<&SetInstance> for InstanceDto {
    fn from(inst: &SetInstance) -> Self {
        let body = match inst.body() {
            Body::Linear { a, b } => BodyDto::Linear { a: a.clone(), b: b.clone() },
            Body::SignSeparated { a, b } => {
                BodyDto::SignSeparated { a: a.clone(), b: b.clone() }
            }
            Body::Knapsack { a, b } => BodyDto::Knapsack { a: a.clone(), b: *b },
            Body::IndependenceGraph { edges } => BodyDto::IndepGraph {
                edges: edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
            },
            Body::Submodular(oracle) => BodyDto::Submodular {
                oracle: match oracle.kind() {
                    SubmodularKind::TruthTable { values } => {
                        SubmodularDto::TruthTable { values: values.clone() }
                    }
                    SubmodularKind::ConcaveOfModular { weights, g } => {
                        SubmodularDto::ConcaveOfModular {
                            weights: weights.clone(),
                            g: g.clone(),
                        }
                    }
                },
            },
            Body::VPolytope { generators } => {
                BodyDto::Vpolytope { generators: generators.clone() }
            }
            Body::ExplicitLex { constraints } => BodyDto::LexExplicit {
                constraints: constraints
                    .iter()
                    .map(|c| LexConstraintDto {
                        dir: c.direction,
                        perm: c.sigma.to_one_based(),
                        threshold: c.threshold.coords().to_vec(),
                    })
                    .collect(),
            },
            Body::PointList { points } => BodyDto::PointList {
                points: points.iter().map(|p| p.coords().to_vec()).collect(),
            },
        };
        InstanceDto {
            n: inst.n(),
            boxed: BoxDto {
                lower: inst.bounding_box().lower().coords().to_vec(),
                upper: inst.bounding_box().upper().coords().to_vec(),
            },
            body,
            monotone: inst.monotone_declared(),
        }
    }
}

impl InstanceDto {
    fn build(self) -> Result<SetInstance> {
        if self.boxed.lower.len() != self.n || self.boxed.upper.len() != self.n {
            return Err(Error::domain(format!(
                "box dimension differs from declared n = {}",
                self.n
            )));
        }
        let boxed = IntBox::new(
            IntPoint::new(self.boxed.lower),
            IntPoint::new(self.boxed.upper),
        )?;
        let body = match self.body {
            BodyDto::Linear { a, b } => Body::Linear { a, b },
            BodyDto::SignSeparated { a, b } => Body::SignSeparated { a, b },
            BodyDto::Knapsack { a, b } => Body::Knapsack { a, b },
            BodyDto::IndepGraph { edges } => {
                for e in &edges {
                    if e[0] == 0 || e[1] == 0 {
                        return Err(Error::domain(
                            "edges use 1-based vertex indices; found a zero",
                        ));
                    }
                }
                Body::IndependenceGraph {
                    edges: edges.iter().map(|e| (e[0] - 1, e[1] - 1)).collect(),
                }
            }
            BodyDto::Submodular { oracle } => Body::Submodular(SubmodularOracle::new(
                self.n,
                match oracle {
                    SubmodularDto::TruthTable { values } => {
                        SubmodularKind::TruthTable { values }
                    }
                    SubmodularDto::ConcaveOfModular { weights, g } => {
                        SubmodularKind::ConcaveOfModular { weights, g }
                    }
                },
            )?),
            BodyDto::Vpolytope { generators } => Body::VPolytope { generators },
            BodyDto::LexExplicit { constraints } => {
                let mut out = Vec::with_capacity(constraints.len());
                for c in constraints {
                    out.push(LexConstraint {
                        direction: c.dir,
                        sigma: Permutation::from_one_based(&c.perm)?,
                        threshold: IntPoint::new(c.threshold),
                    });
                }
                Body::ExplicitLex { constraints: out }
            }
            BodyDto::PointList { points } => Body::PointList {
                points: points.into_iter().map(IntPoint::new).collect(),
            },
        };
        SetInstance::new(boxed, body, self.monotone)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn pt(v: &[i64]) -> IntPoint {
        IntPoint::new(v.to_vec())
    }

    fn knapsack_example() -> SetInstance {
        SetInstance::new(
            IntBox::from_upper(pt(&[1, 5, 4, 1, 2])).unwrap(),
            Body::Knapsack { a: vec![2, 8, 40, 150, 310], b: 825 },
            Monotonicity::Down,
        )
        .unwrap()
    }

    #[test]
    fn knapsack_membership_examples() {
        let inst = knapsack_example();
        assert!(inst.contains(&pt(&[1, 1, 1, 1, 2])).unwrap()); // 820 ≤ 825
        assert!(!inst.contains(&pt(&[1, 1, 1, 1, 3])).unwrap()); // outside box
        assert!(!inst.contains(&pt(&[0, 0, 0, 2, 2])).unwrap()); // outside box
        assert!(inst.contains(&pt(&[0, 0, 0, 0, 0])).unwrap());
        assert!(!inst.contains(&pt(&[1, 5, 4, 1, 2])).unwrap()); // 932 > 825
    }

    #[test]
    fn knapsack_feasibility_over_subboxes() {
        let inst = knapsack_example();
        // x₅ pinned to 2, everything else free: minimum load is 620 ≤ 825.
        let sub = inst.bounding_box().fix_coord(4, 2).unwrap();
        assert!(inst.is_int_feasible(&sub).unwrap());
        // A sub-box escaping the instance box is a domain error.
        let outside = IntBox::new(pt(&[0, 0, 0, 0, 3]), pt(&[1, 5, 4, 1, 3])).unwrap();
        assert!(matches!(inst.is_int_feasible(&outside), Err(Error::Domain(_))));
        // Lower corner infeasible ⇒ whole sub-box infeasible (monotone-down).
        let heavy = IntBox::new(pt(&[1, 5, 4, 1, 2]), pt(&[1, 5, 4, 1, 2])).unwrap();
        assert!(!inst.is_int_feasible(&heavy).unwrap());
    }

    #[test]
    fn pointlist_feasibility_is_a_scan() {
        let inst = SetInstance::new(
            IntBox::binary(3),
            Body::PointList { points: vec![pt(&[0, 1, 0]), pt(&[1, 0, 1])] },
            Monotonicity::None,
        )
        .unwrap();
        assert!(inst.is_int_feasible(inst.bounding_box()).unwrap());
        assert!(inst.contains(&pt(&[1, 0, 1])).unwrap());
        assert!(!inst.contains(&pt(&[1, 1, 1])).unwrap());
        let sub = inst.bounding_box().fix_coord(0, 1).unwrap();
        let sub = sub.fix_coord(1, 1).unwrap();
        assert!(!inst.is_int_feasible(&sub).unwrap());
    }

    #[test]
    fn independence_graph_lower_corner_rule() {
        let inst = SetInstance::new(
            IntBox::binary(2),
            Body::IndependenceGraph { edges: vec![(0, 1)] },
            Monotonicity::Down,
        )
        .unwrap();
        let both = IntBox::new(pt(&[1, 1]), pt(&[1, 1])).unwrap();
        assert!(!inst.is_int_feasible(&both).unwrap());
        assert!(inst.is_int_feasible(inst.bounding_box()).unwrap());
    }

    #[test]
    fn graph_box_must_be_binary() {
        let err = SetInstance::new(
            IntBox::from_upper(pt(&[2, 1])).unwrap(),
            Body::IndependenceGraph { edges: vec![(0, 1)] },
            Monotonicity::Down,
        );
        assert!(err.is_err());
    }

    #[test]
    fn linear_dfs_agrees_with_enumeration() {
        // x1 − x2 ≤ 1, −2x1 + x2 ≤ 2, x1 + x2 ≥ 3 (as −x1 − x2 ≤ −3)
        let a = vec![
            vec![rat(1), rat(-1)],
            vec![rat(-2), rat(1)],
            vec![rat(-1), rat(-1)],
        ];
        let b = vec![rat(1), rat(2), rat(-3)];
        let inst = SetInstance::new(
            IntBox::from_upper(pt(&[4, 4])).unwrap(),
            Body::Linear { a, b },
            Monotonicity::None,
        )
        .unwrap();
        for sub in [
            inst.bounding_box().clone(),
            inst.bounding_box().fix_coord(0, 0).unwrap(),
            inst.bounding_box().restrict_coord(1, 3, 4).unwrap(),
            IntBox::new(pt(&[0, 0]), pt(&[1, 1])).unwrap(),
        ] {
            let expect = sub.points().any(|p| inst.contains(&p).unwrap());
            assert_eq!(inst.is_int_feasible(&sub).unwrap(), expect, "sub-box {sub}");
        }
    }

    #[test]
    fn sign_separated_corner_rule_matches_enumeration() {
        // +x1 −x2 ≤ 0 and +2x1 −x2 ≤ 1: column 1 ∈ N⁺, column 2 ∈ N⁻.
        let a = vec![vec![rat(1), rat(-1)], vec![rat(2), rat(-1)]];
        let b = vec![rat(0), rat(1)];
        let inst = SetInstance::new(
            IntBox::from_upper(pt(&[3, 3])).unwrap(),
            Body::SignSeparated { a, b },
            Monotonicity::None,
        )
        .unwrap();
        let view = inst.sign_separated_view().unwrap();
        assert_eq!(view.n_plus, vec![0]);
        assert_eq!(view.n_minus, vec![1]);
        for sub in [
            inst.bounding_box().clone(),
            IntBox::new(pt(&[2, 0]), pt(&[3, 1])).unwrap(),
            IntBox::new(pt(&[3, 0]), pt(&[3, 0])).unwrap(),
        ] {
            let expect = sub.points().any(|p| inst.contains(&p).unwrap());
            assert_eq!(inst.is_int_feasible(&sub).unwrap(), expect, "sub-box {sub}");
        }
    }

    #[test]
    fn mixed_sign_columns_rejected_for_sign_separated() {
        let a = vec![vec![rat(1), rat(1)], vec![rat(-1), rat(1)]];
        let b = vec![rat(1), rat(1)];
        let err = SetInstance::new(
            IntBox::binary(2),
            Body::SignSeparated { a, b },
            Monotonicity::Unknown,
        );
        assert!(err.is_err());
    }

    #[test]
    fn vpolytope_membership_and_feasibility() {
        let gens = vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
        ];
        let inst = SetInstance::new(
            IntBox::binary(2),
            Body::VPolytope { generators: gens },
            Monotonicity::None,
        )
        .unwrap();
        assert!(!inst.contains(&pt(&[0, 0])).unwrap());
        assert!(inst.contains(&pt(&[1, 0])).unwrap());
        assert!(inst.is_int_feasible(inst.bounding_box()).unwrap());
        let zero = IntBox::new(pt(&[0, 0]), pt(&[0, 0])).unwrap();
        assert!(!inst.is_int_feasible(&zero).unwrap());
    }

    #[test]
    fn explicit_lex_set_queries() {
        let sigma = Permutation::identity(3);
        let inst = SetInstance::new(
            IntBox::binary(3),
            Body::ExplicitLex {
                constraints: vec![LexConstraint {
                    direction: LexDirection::Le,
                    sigma,
                    threshold: pt(&[0, 1, 1]),
                }],
            },
            Monotonicity::None,
        )
        .unwrap();
        assert!(inst.contains(&pt(&[0, 1, 1])).unwrap());
        assert!(inst.contains(&pt(&[1, 0, 1])).unwrap());
        assert!(!inst.contains(&pt(&[1, 1, 1])).unwrap());
        // sub-box forcing x ≻ θ: x₃ = 1, x₂ = 1, x₁ = 1
        let sub = IntBox::new(pt(&[1, 1, 1]), pt(&[1, 1, 1])).unwrap();
        assert!(!inst.is_int_feasible(&sub).unwrap());
        let sub = IntBox::new(pt(&[0, 1, 1]), pt(&[1, 1, 1])).unwrap();
        assert!(inst.is_int_feasible(&sub).unwrap());
    }

    #[test]
    fn submodular_oracle_validation_and_membership() {
        // Cardinality rank r = 2 on 4 elements: f(A) = min(|A|, 2).
        let values: Vec<i64> =
            (0u32..16).map(|m| (m.count_ones() as i64).min(2)).collect();
        let oracle = SubmodularOracle::new(4, SubmodularKind::TruthTable { values }).unwrap();
        assert!(oracle.is_validated());
        let inst = SetInstance::new(
            IntBox::from_upper(pt(&[2, 2, 2, 2])).unwrap(),
            Body::Submodular(oracle),
            Monotonicity::Down,
        )
        .unwrap();
        assert!(inst.contains(&pt(&[1, 1, 0, 0])).unwrap());
        assert!(!inst.contains(&pt(&[2, 0, 0, 0])).unwrap()); // x₁ > f({1}) = 1
        assert!(!inst.contains(&pt(&[1, 1, 1, 0])).unwrap()); // sum 3 > f = 2
        assert!(!inst.contains(&pt(&[2, 1, 0, 0])).unwrap());
    }

    #[test]
    fn non_submodular_truth_table_rejected() {
        // f = 1 exactly on the full set: violates submodularity.
        let mut values = vec![0i64; 8];
        values[7] = 1;
        assert!(SubmodularOracle::new(3, SubmodularKind::TruthTable { values }).is_err());
        // decreasing table rejected
        let values = vec![0, 1, 1, 0];
        assert!(SubmodularOracle::new(2, SubmodularKind::TruthTable { values }).is_err());
    }

    #[test]
    fn concave_of_modular_construction() {
        let oracle = SubmodularOracle::new(
            3,
            SubmodularKind::ConcaveOfModular {
                weights: vec![1, 2, 1],
                g: vec![0, 2, 3, 3, 3],
            },
        )
        .unwrap();
        assert_eq!(oracle.eval_set(&[]), 0);
        assert_eq!(oracle.eval_set(&[0]), 2);
        assert_eq!(oracle.eval_set(&[1]), 3);
        assert_eq!(oracle.eval_set(&[0, 1, 2]), 3);
        // non-concave table rejected
        assert!(SubmodularOracle::new(
            2,
            SubmodularKind::ConcaveOfModular { weights: vec![1, 1], g: vec![0, 1, 3] },
        )
        .is_err());
    }

    #[test]
    fn polymatroid_linear_encoding_matches_oracle() {
        let values: Vec<i64> =
            (0u32..16).map(|m| (m.count_ones() as i64).min(2)).collect();
        let oracle = SubmodularOracle::new(4, SubmodularKind::TruthTable { values }).unwrap();
        let inst = SetInstance::new(
            IntBox::from_upper(pt(&[2, 2, 2, 2])).unwrap(),
            Body::Submodular(oracle),
            Monotonicity::Down,
        )
        .unwrap();
        let linear = inst.polymatroid_linear_encoding().unwrap();
        for x in inst.bounding_box().points() {
            assert_eq!(inst.contains(&x).unwrap(), linear.contains(&x).unwrap());
        }
    }

    #[test]
    fn tighten_bounds_examples() {
        // Already tight: unchanged.
        let full = SetInstance::new(
            IntBox::from_upper(pt(&[2, 3])).unwrap(),
            Body::PointList {
                points: IntBox::from_upper(pt(&[2, 3])).unwrap().points().collect(),
            },
            Monotonicity::Unknown,
        )
        .unwrap();
        assert_eq!(full.tighten_bounds().unwrap(), *full.bounding_box());
        // Forced by the constraint.
        let tiny = SetInstance::new(
            IntBox::from_upper(pt(&[5, 5])).unwrap(),
            Body::Knapsack { a: vec![1, 1], b: 1 },
            Monotonicity::Down,
        )
        .unwrap();
        assert_eq!(
            tiny.tighten_bounds().unwrap(),
            IntBox::from_upper(pt(&[1, 1])).unwrap()
        );
        // Infeasible instance refuses.
        let infeasible = SetInstance::new(
            IntBox::binary(2),
            Body::Knapsack { a: vec![1, 1], b: -1 },
            Monotonicity::Unknown,
        )
        .unwrap();
        assert!(infeasible.tighten_bounds().is_err());
    }

    #[test]
    fn tighten_bounds_matches_enumeration_on_random_linear_systems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 25 {
            let n = rng.random_range(2..=4usize);
            let u: Vec<i64> = (0..n).map(|_| rng.random_range(1..=3)).collect();
            let m = rng.random_range(1..=3usize);
            let a: Vec<Vec<BigRational>> = (0..m)
                .map(|_| (0..n).map(|_| rat(rng.random_range(-2..=3))).collect())
                .collect();
            let b: Vec<BigRational> = (0..m).map(|_| rat(rng.random_range(0..=6))).collect();
            let inst = SetInstance::new(
                IntBox::from_upper(IntPoint::new(u)).unwrap(),
                Body::Linear { a, b },
                Monotonicity::Unknown,
            )
            .unwrap();
            let feasible: Vec<IntPoint> = inst
                .bounding_box()
                .points()
                .filter(|p| inst.contains(p).unwrap())
                .collect();
            if feasible.is_empty() {
                continue;
            }
            tested += 1;
            let tightened = inst.tighten_bounds().unwrap();
            for j in 0..n {
                let max = feasible.iter().map(|p| p[j]).max().unwrap();
                let min = feasible.iter().map(|p| p[j]).min().unwrap();
                assert_eq!(tightened.upper()[j], max);
                assert_eq!(tightened.lower()[j], min);
            }
        }
    }

    #[test]
    fn feasibility_matches_enumeration_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for round in 0..60 {
            let n = rng.random_range(2..=4usize);
            let u: Vec<i64> = (0..n).map(|_| rng.random_range(1..=3)).collect();
            let boxed = IntBox::from_upper(IntPoint::new(u)).unwrap();
            let m = rng.random_range(1..=3usize);
            let a: Vec<Vec<BigRational>> = (0..m)
                .map(|_| (0..n).map(|_| rat(rng.random_range(-2..=3))).collect())
                .collect();
            let b: Vec<BigRational> = (0..m).map(|_| rat(rng.random_range(-1..=6))).collect();
            let inst =
                SetInstance::new(boxed.clone(), Body::Linear { a, b }, Monotonicity::Unknown)
                    .unwrap();
            // random sub-box
            let mut lo = Vec::with_capacity(n);
            let mut hi = Vec::with_capacity(n);
            for j in 0..n {
                let x = rng.random_range(0..=boxed.upper()[j]);
                let y = rng.random_range(0..=boxed.upper()[j]);
                lo.push(x.min(y));
                hi.push(x.max(y));
            }
            let sub = IntBox::new(IntPoint::new(lo), IntPoint::new(hi)).unwrap();
            let expect = sub.points().any(|p| inst.contains(&p).unwrap());
            assert_eq!(
                inst.is_int_feasible(&sub).unwrap(),
                expect,
                "round {round} sub {sub}"
            );
        }
    }

    #[test]
    fn declared_monotonicity_is_validated_on_small_boxes() {
        // {(0,0),(1,1)} is not down-closed: (1,0) missing.
        let err = SetInstance::new(
            IntBox::binary(2),
            Body::PointList { points: vec![pt(&[0, 0]), pt(&[1, 1])] },
            Monotonicity::Down,
        );
        assert!(err.is_err());
        // as up-closed it also fails; as none it is accepted
        assert!(SetInstance::new(
            IntBox::binary(2),
            Body::PointList { points: vec![pt(&[0, 0]), pt(&[1, 1])] },
            Monotonicity::Up,
        )
        .is_err());
        assert!(SetInstance::new(
            IntBox::binary(2),
            Body::PointList { points: vec![pt(&[0, 0]), pt(&[1, 1])] },
            Monotonicity::None,
        )
        .is_ok());
    }

    #[test]
    fn unknown_monotonicity_detection() {
        let down = SetInstance::new(
            IntBox::from_upper(pt(&[3, 3])).unwrap(),
            Body::Knapsack { a: vec![1, 2], b: 4 },
            Monotonicity::Unknown,
        )
        .unwrap();
        assert_eq!(down.effective_monotonicity(), Monotonicity::Down);
        let neither = SetInstance::new(
            IntBox::binary(2),
            Body::PointList { points: vec![pt(&[0, 1]), pt(&[1, 0])] },
            Monotonicity::Unknown,
        )
        .unwrap();
        assert_eq!(neither.effective_monotonicity(), Monotonicity::None);
    }

    #[test]
    fn node_cap_produces_resource_error() {
        // 2x1 + 2x2 + 2x3 + 2x4 = 9: even = odd, infeasible, but interval
        // propagation stays loose while several coordinates are free, so the
        // search must branch.
        let row: Vec<BigRational> = vec![rat(2); 4];
        let neg: Vec<BigRational> = vec![rat(-2); 4];
        let inst = SetInstance::new(
            IntBox::from_upper(pt(&[9; 4])).unwrap(),
            Body::Linear { a: vec![row, neg], b: vec![rat(9), rat(-9)] },
            Monotonicity::None,
        )
        .unwrap()
        .with_node_cap(3);
        match inst.is_int_feasible(inst.bounding_box()) {
            Err(Error::Resource(_)) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn hull_member_gate_enforces_desk_scale() {
        let gens: Vec<Vec<BigRational>> = (0..65).map(|i| vec![rat(i)]).collect();
        assert!(matches!(hull_member(&gens, &[rat(0)]), Err(Error::Resource(_))));
        let gens = vec![vec![rat(0); 11]];
        assert!(matches!(
            hull_member(&gens, &vec![rat(0); 11]),
            Err(Error::Resource(_))
        ));
        let gens = vec![vec![rat(0), rat(0)], vec![rat(2), rat(2)]];
        assert!(hull_member(&gens, &[rat(1), rat(1)]).unwrap());
    }

    #[test]
    fn json_roundtrip_all_bodies() {
        let instances = vec![
            knapsack_example(),
            SetInstance::new(
                IntBox::from_upper(pt(&[2, 3])).unwrap(),
                Body::Linear {
                    a: vec![vec![BigRational::new(1.into(), 2.into()), rat(-1)]],
                    b: vec![BigRational::new(7.into(), 3.into())],
                },
                Monotonicity::Unknown,
            )
            .unwrap(),
            SetInstance::new(
                IntBox::from_upper(pt(&[3, 3])).unwrap(),
                Body::SignSeparated {
                    a: vec![vec![rat(1), rat(-1)], vec![rat(2), rat(-1)]],
                    b: vec![rat(0), rat(1)],
                },
                Monotonicity::None,
            )
            .unwrap(),
            SetInstance::new(
                IntBox::binary(3),
                Body::IndependenceGraph { edges: vec![(0, 1), (1, 2)] },
                Monotonicity::Down,
            )
            .unwrap(),
            SetInstance::new(
                IntBox::from_upper(pt(&[2, 2, 2])).unwrap(),
                Body::Submodular(
                    SubmodularOracle::new(
                        3,
                        SubmodularKind::ConcaveOfModular {
                            weights: vec![1, 1, 1],
                            g: vec![0, 2, 3, 3],
                        },
                    )
                    .unwrap(),
                ),
                Monotonicity::Down,
            )
            .unwrap(),
            SetInstance::new(
                IntBox::from_upper(pt(&[3, 3])).unwrap(),
                Body::VPolytope {
                    generators: vec![
                        vec![rat(3), rat(0)],
                        vec![rat(0), rat(3)],
                        vec![BigRational::new(3.into(), 2.into()), rat(1)],
                    ],
                },
                Monotonicity::None,
            )
            .unwrap(),
            SetInstance::new(
                IntBox::binary(3),
                Body::ExplicitLex {
                    constraints: vec![
                        LexConstraint {
                            direction: LexDirection::Le,
                            sigma: Permutation::from_one_based(&[2, 3, 1]).unwrap(),
                            threshold: pt(&[0, 1, 1]),
                        },
                        LexConstraint {
                            direction: LexDirection::Ge,
                            sigma: Permutation::identity(3),
                            threshold: pt(&[0, 1, 0]),
                        },
                    ],
                },
                Monotonicity::Unknown,
            )
            .unwrap(),
            SetInstance::new(
                IntBox::binary(2),
                Body::PointList { points: vec![pt(&[0, 0]), pt(&[1, 0])] },
                Monotonicity::Down,
            )
            .unwrap(),
        ];
        for inst in instances {
            let json = inst.to_json();
            let back = SetInstance::from_json(&json).unwrap();
            assert_eq!(back, inst, "value roundtrip for {}", inst.body().kind_name());
            assert_eq!(back.to_json(), json, "byte roundtrip for {}", inst.body().kind_name());
        }
    }

    #[test]
    fn json_schema_shape_is_stable() {
        let inst = knapsack_example();
        let json = inst.to_json();
        assert_eq!(
            json,
            r#"{"n":5,"box":{"lower":[0,0,0,0,0],"upper":[1,5,4,1,2]},"body":{"type":"knapsack","a":[2,8,40,150,310],"b":825},"monotone":"down"}"#
        );
        let parsed = SetInstance::from_json(&json).unwrap();
        assert_eq!(parsed, inst);
    }

    #[test]
    fn malformed_json_is_a_domain_error() {
        for bad in [
            "{",
            r#"{"n":2,"box":{"lower":[0,0],"upper":[1,1]},"body":{"type":"nope"},"monotone":"down"}"#,
            r#"{"n":2,"box":{"lower":[0],"upper":[1,1]},"body":{"type":"knapsack","a":[1,1],"b":1},"monotone":"down"}"#,
            r#"{"n":2,"box":{"lower":[0,0],"upper":[1,1]},"body":{"type":"linear","a":[["1/0"]],"b":["1"]},"monotone":"none"}"#,
        ] {
            assert!(matches!(SetInstance::from_json(bad), Err(Error::Domain(_))), "{bad}");
        }
    }

    #[test]
    fn complement_reflects_membership_pointwise() {
        let instances = vec![
            SetInstance::new(
                IntBox::new(pt(&[1, 0, 2]), pt(&[3, 2, 4])).unwrap(),
                Body::Knapsack { a: vec![3, -1, 2], b: 9 },
                Monotonicity::Unknown,
            )
            .unwrap(),
            SetInstance::new(
                IntBox::binary(3),
                Body::IndependenceGraph { edges: vec![(0, 1), (1, 2)] },
                Monotonicity::Down,
            )
            .unwrap(),
            SetInstance::new(
                IntBox::from_upper(pt(&[2, 2])).unwrap(),
                Body::VPolytope {
                    generators: vec![
                        vec![rat(0), rat(0)],
                        vec![rat(2), rat(0)],
                        vec![rat(0), rat(2)],
                    ],
                },
                Monotonicity::Unknown,
            )
            .unwrap(),
            SetInstance::new(
                IntBox::from_upper(pt(&[1, 2])).unwrap(),
                Body::ExplicitLex {
                    constraints: vec![LexConstraint {
                        direction: LexDirection::Le,
                        sigma: Permutation::identity(2),
                        threshold: pt(&[0, 1]),
                    }],
                },
                Monotonicity::Unknown,
            )
            .unwrap(),
        ];
        for inst in instances {
            let refl = inst.complement().unwrap();
            for x in inst.bounding_box().points() {
                let y = complement_point(&x, inst.bounding_box()).unwrap();
                assert_eq!(
                    inst.contains(&x).unwrap(),
                    refl.contains(&y).unwrap(),
                    "reflection broke membership at {x:?} for {}",
                    inst.body().kind_name()
                );
            }
            // Reflecting twice restores membership of the original points.
            let back = refl.complement().unwrap();
            for x in inst.bounding_box().points() {
                assert_eq!(inst.contains(&x).unwrap(), back.contains(&x).unwrap());
            }
        }
    }

    #[test]
    fn complement_flips_monotonicity() {
        let down = knapsack_example();
        let up = down.complement().unwrap();
        assert_eq!(up.monotone_declared(), Monotonicity::Up);
        assert_eq!(up.complement().unwrap().monotone_declared(), Monotonicity::Down);
        let graph = SetInstance::new(
            IntBox::binary(3),
            Body::IndependenceGraph { edges: vec![(0, 1)] },
            Monotonicity::Down,
        )
        .unwrap();
        assert_eq!(graph.complement().unwrap().monotone_declared(), Monotonicity::Up);
    }

    #[test]
    fn polymatroid_bodies_do_not_reflect() {
        let oracle = SubmodularOracle::new(
            2,
            SubmodularKind::ConcaveOfModular { weights: vec![1, 1], g: vec![0, 1, 1] },
        )
        .unwrap();
        let inst = SetInstance::new(
            IntBox::binary(2),
            Body::Submodular(oracle),
            Monotonicity::Down,
        )
        .unwrap();
        assert!(matches!(inst.complement(), Err(Error::Domain(_))));
    }
}
