//! Lex optimization over integer sets.
//!
//! The general route is greedy coordinate fixing on the feasibility oracle:
//! walk the coordinates from most to least significant under `σ` and push
//! each to its extreme achievable value. Because feasibility of
//! `{x_c ≥ v} ∩ rest` is monotone in `v`, each inner extremum is found by
//! bisection, so the whole optimum costs `O(Σ log(u_i − l_i + 1))` oracle
//! calls — no superincreasing-weight blowup, no big-M scalarization.
//!
//! On top of the general route sit closed forms that skip the oracle
//! entirely: sign-separated linear systems (one floor-division sweep),
//! integral polymatroids (telescoping differences of the rank function), and
//! the permutahedron (an explicit permutation). Each closed form is tested
//! against the greedy route and the brute-force referee, never trusted alone.

use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instance::{Body, LexConstraint, LexDirection, SetInstance};
use crate::lex::{lex_cmp, Extremum, IntBox, IntPoint, Permutation};

/// Default cap on the number of explicit lex constraints the fixing
/// decomposition will expand: the case product has `(n+1)^m` terms.
pub const LEX_CONSTRAINT_CAP: usize = 3;

fn check_sigma(inst: &SetInstance, sigma: &Permutation) -> Result<()> {
    if sigma.n() != inst.n() {
        return Err(Error::domain(format!(
            "permutation on {} letters does not act on dimension {}",
            sigma.n(),
            inst.n()
        )));
    }
    Ok(())
}

// ───────────────────────────── greedy recursion ─────────────────────────────

/// The lex maximum of `S_I` under `σ` by greedy coordinate fixing.
pub fn lex_max_greedy(inst: &SetInstance, sigma: &Permutation) -> Result<IntPoint> {
    greedy(inst, sigma, Extremum::Max)
}

/// The lex minimum of `S_I` under `σ` by greedy coordinate fixing.
pub fn lex_min_greedy(inst: &SetInstance, sigma: &Permutation) -> Result<IntPoint> {
    greedy(inst, sigma, Extremum::Min)
}

/// Greedy dispatch on the requested end of the order.
pub fn lex_extreme(inst: &SetInstance, sigma: &Permutation, which: Extremum) -> Result<IntPoint> {
    greedy(inst, sigma, which)
}

fn greedy(inst: &SetInstance, sigma: &Permutation, which: Extremum) -> Result<IntPoint> {
    check_sigma(inst, sigma)?;
    let mut sub = inst.bounding_box().clone();
    if !inst.is_int_feasible(&sub)? {
        return Err(Error::domain("lex optimization over an empty set"));
    }
    for i in (0..inst.n()).rev() {
        let c = sigma.apply(i);
        let mut lo = sub.lower()[c];
        let mut hi = sub.upper()[c];
        match which {
            Extremum::Max => {
                // Largest v with a feasible point at x_c ≥ v.
                while lo < hi {
                    let m = lo + (hi - lo + 1) / 2;
                    let probe = sub.restrict_coord(c, m, sub.upper()[c])?;
                    if inst.is_int_feasible(&probe)? {
                        lo = m;
                    } else {
                        hi = m - 1;
                    }
                }
            }
            Extremum::Min => {
                // Smallest v with a feasible point at x_c ≤ v.
                while lo < hi {
                    let m = lo + (hi - lo) / 2;
                    let probe = sub.restrict_coord(c, sub.lower()[c], m)?;
                    if inst.is_int_feasible(&probe)? {
                        hi = m;
                    } else {
                        lo = m + 1;
                    }
                }
            }
        }
        sub = sub.fix_coord(c, lo)?;
    }
    Ok(sub.lower().clone())
}

// ─────────────────────────── counted bisection ──────────────────────────────

/// Upper bound on the oracle calls [`lex_max_bisection`] may spend on a box:
/// one initial feasibility check plus `n + Σ_i ⌈log₂(u_i − l_i + 1)⌉`.
pub fn bisection_call_bound(boxed: &IntBox) -> u64 {
    let mut bound = 1 + boxed.dim() as u64;
    for j in 0..boxed.dim() {
        let w = boxed.width(j) as u64;
        if w > 1 {
            bound += u64::from((w - 1).ilog2()) + 1;
        }
    }
    bound
}

/// The lex maximum by interval bisection, returning the exact number of
/// feasibility-oracle calls made. One call certifies nonemptiness; after
/// that, each step halves the interval of the most significant coordinate
/// that is not yet pinned, keeping whichever half still meets `S_I`. A
/// singleton box costs exactly one call; in general the count never exceeds
/// [`bisection_call_bound`].
pub fn lex_max_bisection(inst: &SetInstance, sigma: &Permutation) -> Result<(IntPoint, u64)> {
    check_sigma(inst, sigma)?;
    let mut calls = 0u64;
    let mut sub = inst.bounding_box().clone();
    calls += 1;
    if !inst.is_int_feasible(&sub)? {
        return Err(Error::domain("lex optimization over an empty set"));
    }
    loop {
        let mut target = None;
        for i in (0..inst.n()).rev() {
            let c = sigma.apply(i);
            if sub.width(c) > 1 {
                target = Some(c);
                break;
            }
        }
        let Some(c) = target else { break };
        let lo = sub.lower()[c];
        let hi = sub.upper()[c];
        let m = lo + (hi - lo + 1) / 2;
        let upper_half = sub.restrict_coord(c, m, hi)?;
        calls += 1;
        if inst.is_int_feasible(&upper_half)? {
            sub = upper_half;
        } else {
            sub = sub.restrict_coord(c, lo, m - 1)?;
        }
    }
    Ok((sub.lower().clone(), calls))
}

// ──────────────────────── sign-separated closed form ────────────────────────

/// The lex maximum of a sign-separated linear system by one sweep of floor
/// divisions, no oracle calls.
///
/// Requires zero lower bounds and componentwise-tight upper bounds
/// (`u_j = max{x_j : x ∈ S_I}`); tightness is recomputed and the call refused
/// if the given box fails it, because the formula silently returns wrong
/// points on loose boxes. With every `N⁻` coordinate pinned to its upper
/// bound, `ξ_i` is the least possible negative contribution to row `i`, and
/// each `N⁺` coordinate in decreasing significance takes the largest value
/// every row still allows.
pub fn lex_max_sign_separated(inst: &SetInstance, sigma: &Permutation) -> Result<IntPoint> {
    check_sigma(inst, sigma)?;
    let view = inst.sign_separated_view().ok_or_else(|| {
        Error::domain(format!(
            "the closed form needs a sign-separated linear body, got {} with mixed columns",
            inst.body().kind_name()
        ))
    })?;
    let boxed = inst.bounding_box();
    if boxed.lower().iter().any(|&l| l != 0) {
        return Err(Error::domain(
            "the sign-separated closed form requires zero lower bounds",
        ));
    }
    if !inst.is_int_feasible(boxed)? {
        return Err(Error::domain("lex optimization over an empty set"));
    }
    let tight = inst.tighten_bounds()?;
    if tight.upper() != boxed.upper() {
        return Err(Error::domain(format!(
            "upper bounds are not tight: given {}, tight {}; apply tighten_bounds first",
            boxed.upper(),
            tight.upper()
        )));
    }

    let n = inst.n();
    let m = view.a.len();
    let mut is_minus = vec![false; n];
    for &j in &view.n_minus {
        is_minus[j] = true;
    }
    // ξ_i: the whole N⁻ contribution at its most negative.
    let xi: Vec<BigRational> = (0..m)
        .map(|i| {
            view.n_minus
                .iter()
                .map(|&j| &view.a[i][j] * BigRational::from_integer(boxed.upper()[j].into()))
                .sum()
        })
        .collect();
    let mut fixed_pos = vec![BigRational::zero(); m];
    let mut x = vec![0i64; n];
    for i in (0..n).rev() {
        let c = sigma.apply(i);
        if is_minus[c] {
            x[c] = boxed.upper()[c];
            continue;
        }
        let mut v = BigRational::from_integer(boxed.upper()[c].into());
        for r in 0..m {
            if view.a[r][c].is_positive() {
                let room = (&view.b[r] - &xi[r] - &fixed_pos[r]) / &view.a[r][c];
                let cand = room.floor();
                if cand < v {
                    v = cand;
                }
            }
        }
        let value = v.to_integer().to_i64().ok_or_else(|| {
            Error::domain("sign-separated sweep produced a value outside i64")
        })?;
        if value < 0 {
            return Err(Error::domain(
                "sign-separated sweep ran negative on a feasible instance; bounds are inconsistent",
            ));
        }
        x[c] = value;
        for r in 0..m {
            if view.a[r][c].is_positive() {
                fixed_pos[r] += &view.a[r][c] * BigRational::from_integer(value.into());
            }
        }
    }
    Ok(IntPoint::new(x))
}

// ───────────────────────── polymatroid closed form ──────────────────────────

/// The lex maximum of an integral polymatroid `P_f ∩ Z^n` by telescoping the
/// rank function: `x_{σ(i)} = f(T_i) − f(T_{i+1})` with
/// `T_i = {σ(i), …, σ(n)}`. Requires a box that does not clip the
/// polytope (`u_j ≥ f({j})`). The lex minimum is always the origin.
pub fn lex_max_polymatroid(inst: &SetInstance, sigma: &Permutation) -> Result<IntPoint> {
    check_sigma(inst, sigma)?;
    let Body::Submodular(oracle) = inst.body() else {
        return Err(Error::domain(format!(
            "the polymatroid closed form needs a submodular body, got {}",
            inst.body().kind_name()
        )));
    };
    let n = inst.n();
    for j in 0..n {
        let singleton = oracle.eval_mask(1 << j);
        if inst.bounding_box().upper()[j] < singleton {
            return Err(Error::domain(format!(
                "box clips the polymatroid: u_{} = {} < f({{{}}}) = {}",
                j + 1,
                inst.bounding_box().upper()[j],
                j + 1,
                singleton
            )));
        }
    }
    let mut x = vec![0i64; n];
    let mut t_mask = 0u32;
    let mut prev = 0i64;
    for i in (0..n).rev() {
        let c = sigma.apply(i);
        t_mask |= 1 << c;
        let ft = oracle.eval_mask(t_mask);
        x[c] = ft - prev;
        prev = ft;
    }
    Ok(IntPoint::new(x))
}

// ─────────────────────────── permutahedron forms ────────────────────────────

/// Lex extremes of the permutahedron (all arrangements of `(1, …, n)`): the
/// maximum hands the large values to the significant positions,
/// `x_{σ(i)} = i`, and the minimum mirrors it, `x_{σ(i)} = n + 1 − i`.
pub fn permutahedron_lex(n: usize, sigma: &Permutation, which: Extremum) -> Result<IntPoint> {
    if n == 0 {
        return Err(Error::domain("permutahedron needs n ≥ 1"));
    }
    if sigma.n() != n {
        return Err(Error::domain(format!(
            "permutation on {} letters does not act on dimension {n}",
            sigma.n()
        )));
    }
    let mut x = vec![0i64; n];
    for i in 0..n {
        x[sigma.apply(i)] = match which {
            Extremum::Max => (i + 1) as i64,
            Extremum::Min => (n - i) as i64,
        };
    }
    Ok(IntPoint::new(x))
}

// ───────────────────── optimization under lex constraints ───────────────────

/// Lex optimum of a box intersected with explicit lex constraints, by the
/// fixing decomposition: each constraint `x ⪯_τ θ` is the disjoint union of
/// `{θ}` and, per position `i`, the sub-box fixing coordinates above `i` to
/// `θ` and capping coordinate `τ(i)` at `θ_{τ(i)} − 1` (mirrored for `⪰`).
/// Every term of the product over constraints is a box, the lex optimum of a
/// box is a corner, and a corner of a surviving intersection lies in `S`, so
/// scanning the at most `(n+1)^m` corners is exact. Combinations whose corner
/// cannot beat the incumbent are skipped.
pub fn lex_opt_with_lex_constraints(
    inst: &SetInstance,
    sigma: &Permutation,
    which: Extremum,
    cap: Option<usize>,
) -> Result<IntPoint> {
    check_sigma(inst, sigma)?;
    let Body::ExplicitLex { constraints } = inst.body() else {
        return Err(Error::domain(format!(
            "lex-constrained optimization needs an explicit lex body, got {}",
            inst.body().kind_name()
        )));
    };
    let cap = cap.unwrap_or(LEX_CONSTRAINT_CAP);
    if constraints.len() > cap {
        return Err(Error::resource(format!(
            "fixing decomposition over {} constraints exceeds the cap {cap}",
            constraints.len()
        )));
    }
    let boxed = inst.bounding_box();
    if constraints.is_empty() {
        return Ok(match which {
            Extremum::Max => boxed.upper().clone(),
            Extremum::Min => boxed.lower().clone(),
        });
    }
    let cases: Vec<Vec<IntBox>> = constraints
        .iter()
        .map(|c| constraint_cases(c, boxed))
        .collect::<Result<_>>()?;

    let mut best: Option<IntPoint> = None;
    let mut indices = vec![0usize; cases.len()];
    'combos: loop {
        let mut cell = Some(cases[0][indices[0]].clone());
        for (k, &idx) in indices.iter().enumerate().skip(1) {
            cell = match cell {
                Some(b) => b.intersect(&cases[k][idx]),
                None => None,
            };
            if cell.is_none() {
                break;
            }
        }
        if let Some(cell) = cell {
            let corner = match which {
                Extremum::Max => cell.upper(),
                Extremum::Min => cell.lower(),
            };
            let improves = match &best {
                None => true,
                Some(b) => {
                    let cmp = lex_cmp(corner, b, sigma)?;
                    match which {
                        Extremum::Max => cmp == std::cmp::Ordering::Greater,
                        Extremum::Min => cmp == std::cmp::Ordering::Less,
                    }
                }
            };
            if improves {
                best = Some(corner.clone());
            }
        }
        // odometer over case indices
        let mut k = cases.len();
        loop {
            if k == 0 {
                break 'combos;
            }
            k -= 1;
            indices[k] += 1;
            if indices[k] < cases[k].len() {
                break;
            }
            indices[k] = 0;
        }
    }
    best.ok_or_else(|| Error::domain("the lex constraints are infeasible over the box"))
}

/// The disjoint box cases of a single lex constraint over `boxed`.
pub(crate) fn constraint_cases(c: &LexConstraint, boxed: &IntBox) -> Result<Vec<IntBox>> {
    let n = boxed.dim();
    let mut out = vec![IntBox::singleton(c.threshold.clone())];
    for i in 0..n {
        let pivot = c.sigma.apply(i);
        let theta_p = c.threshold[pivot];
        let (lo, hi) = match c.direction {
            LexDirection::Le => (boxed.lower()[pivot], theta_p - 1),
            LexDirection::Ge => (theta_p + 1, boxed.upper()[pivot]),
        };
        if lo > hi {
            continue;
        }
        let mut lower = boxed.lower().coords().to_vec();
        let mut upper = boxed.upper().coords().to_vec();
        lower[pivot] = lo;
        upper[pivot] = hi;
        for j in i + 1..n {
            let fixed = c.sigma.apply(j);
            lower[fixed] = c.threshold[fixed];
            upper[fixed] = c.threshold[fixed];
        }
        out.push(IntBox::new(IntPoint::new(lower), IntPoint::new(upper))?);
    }
    Ok(out)
}
