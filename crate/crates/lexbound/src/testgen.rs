//! Seeded random instance and objective factories shared by the self-test
//! harness, the acceptance suite, and the examples.
//!
//! Everything is driven by a caller-supplied ChaCha generator, so a single
//! seed reproduces an entire run byte for byte. Factories guarantee the
//! properties their consumers rely on (nonemptiness where a lex optimum must
//! exist, structural monotonicity where a tag is promised) by construction,
//! not by rejection sampling, keeping draw counts deterministic.

use num::rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{
    Body, LexConstraint, LexDirection, Monotonicity, SetInstance, SubmodularKind,
    SubmodularOracle,
};
use crate::lex::{IntBox, IntPoint, Permutation};
use crate::ratio::rat;

/// The one generator all randomized suites derive from.
pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Permutation::new(image).expect("shuffled range is a permutation")
}

/// Small nonnegative rational objective with denominators up to 3.
pub fn objective_nonneg(rng: &mut impl Rng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| rat(rng.random_range(0..=6)) / rat(rng.random_range(1..=3)))
        .collect()
}

/// Small mixed-sign rational objective with denominators up to 3.
pub fn objective_mixed(rng: &mut impl Rng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| rat(rng.random_range(-6..=6)) / rat(rng.random_range(1..=3)))
        .collect()
}

/// A random graph on `n` vertices with edge probability `p`, as a stable-set
/// instance.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> SetInstance {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    SetInstance::new(IntBox::binary(n), Body::IndependenceGraph { edges }, Monotonicity::Down)
        .expect("graph instances validate")
}

/// A monotone-down 0/1 instance: a nonnegative knapsack or a stable-set
/// graph, both containing the origin.
pub fn binary_monotone(rng: &mut impl Rng, n: usize) -> SetInstance {
    if rng.random_bool(0.5) {
        let a: Vec<i64> = (0..n).map(|_| rng.random_range(0..=5)).collect();
        let cap: i64 = a.iter().sum();
        let b = rng.random_range(0..=cap.max(1));
        SetInstance::new(IntBox::binary(n), Body::Knapsack { a, b }, Monotonicity::Down)
            .expect("knapsack instances validate")
    } else {
        random_graph(rng, n, 0.4)
    }
}

/// A 0/1 instance drawn from a mixed pool: half monotone-down, half an
/// arbitrary nonempty point list with no structure at all.
pub fn binary_mixed(rng: &mut impl Rng, n: usize) -> SetInstance {
    if rng.random_bool(0.5) {
        return binary_monotone(rng, n);
    }
    let mut points: Vec<IntPoint> =
        IntBox::binary(n).points().filter(|_| rng.random_bool(0.4)).collect();
    if points.is_empty() {
        let fallback: Vec<i64> = (0..n).map(|_| rng.random_range(0..=1)).collect();
        points.push(IntPoint::new(fallback));
    }
    SetInstance::new(IntBox::binary(n), Body::PointList { points }, Monotonicity::None)
        .expect("point lists validate")
}

/// A monotone-down integer instance over `[0, u]`, `u ≤ u_max`, with a convex
/// body (one or two nonnegative linear rows), always containing the origin.
pub fn integer_monotone(rng: &mut impl Rng, n: usize, u_max: i64) -> SetInstance {
    let upper: Vec<i64> = (0..n).map(|_| rng.random_range(1..=u_max)).collect();
    let boxed = IntBox::from_upper(IntPoint::new(upper.clone())).expect("nonneg uppers");
    let rows = rng.random_range(1..=2usize);
    if rows == 1 {
        let a: Vec<i64> = (0..n).map(|_| rng.random_range(0..=4)).collect();
        let cap: i64 = a.iter().zip(&upper).map(|(&w, &u)| w * u).sum();
        let b = rng.random_range(0..=cap.max(1));
        SetInstance::new(boxed, Body::Knapsack { a, b }, Monotonicity::Down)
            .expect("knapsack instances validate")
    } else {
        let mut a = Vec::with_capacity(rows);
        let mut b = Vec::with_capacity(rows);
        for _ in 0..rows {
            let row: Vec<i64> = (0..n).map(|_| rng.random_range(0..=4)).collect();
            let cap: i64 = row.iter().zip(&upper).map(|(&w, &u)| w * u).sum();
            b.push(rat(rng.random_range(0..=cap.max(1))));
            a.push(row.into_iter().map(rat).collect());
        }
        SetInstance::new(boxed, Body::Linear { a, b }, Monotonicity::Down)
            .expect("linear instances validate")
    }
}

/// A mixed-sign integer knapsack over `[0, u]`, guaranteed nonempty (the
/// capacity is drawn at or above the row minimum), tagged unknown.
pub fn integer_mixed(rng: &mut impl Rng, n: usize, u_max: i64) -> SetInstance {
    let upper: Vec<i64> = (0..n).map(|_| rng.random_range(1..=u_max)).collect();
    let a: Vec<i64> = (0..n).map(|_| rng.random_range(-4..=5)).collect();
    let lo: i64 = a.iter().zip(&upper).map(|(&w, &u)| if w < 0 { w * u } else { 0 }).sum();
    let hi: i64 = a.iter().zip(&upper).map(|(&w, &u)| if w > 0 { w * u } else { 0 }).sum();
    let b = rng.random_range(lo..=hi.max(lo + 1));
    SetInstance::new(
        IntBox::from_upper(IntPoint::new(upper)).expect("nonneg uppers"),
        Body::Knapsack { a, b },
        Monotonicity::Unknown,
    )
    .expect("knapsack instances validate")
}

/// A sign-separated system over `[0, u]`: every column is wholly nonnegative
/// or wholly nonpositive across the rows, and each right-hand side is
/// nonnegative, so the origin is feasible and tightening the box keeps zero
/// lower bounds — the domain of the sign-separated closed form.
pub fn sign_separated(rng: &mut impl Rng, n: usize, u_max: i64) -> SetInstance {
    let upper: Vec<i64> = (0..n).map(|_| rng.random_range(1..=u_max)).collect();
    let signs: Vec<i64> = (0..n).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
    let rows = rng.random_range(1..=3usize);
    let mut a = Vec::with_capacity(rows);
    let mut b = Vec::with_capacity(rows);
    for _ in 0..rows {
        let row: Vec<BigRational> = (0..n)
            .map(|j| rat(signs[j] * rng.random_range(0..=6)) / rat(rng.random_range(1..=2)))
            .collect();
        // The row minimum over the box: zero for nonnegative columns (take
        // x_j = 0), coefficient times the upper bound for nonpositive ones.
        let row_min: BigRational = row
            .iter()
            .zip(&upper)
            .map(|(w, &u)| if *w < rat(0) { w * rat(u) } else { rat(0) })
            .sum();
        let spread = rat(rng.random_range(0..=12)) / rat(rng.random_range(1..=2));
        b.push((row_min + spread).max(rat(0)));
        a.push(row);
    }
    SetInstance::new(
        IntBox::from_upper(IntPoint::new(upper)).expect("nonneg uppers"),
        Body::SignSeparated { a, b },
        Monotonicity::Unknown,
    )
    .expect("sign-separated instances validate")
}

/// An integral polymatroid from a concave nondecreasing function of a
/// modular weight: `f(A) = g(Σ_{i∈A} w_i)` with positive weights and concave
/// `g` built from nonincreasing positive increments. The box is `[0, f({i})]`
/// per coordinate.
pub fn submodular_concave(rng: &mut impl Rng, n: usize) -> SetInstance {
    let weights: Vec<i64> = (0..n).map(|_| rng.random_range(1..=3)).collect();
    let total: i64 = weights.iter().sum();
    let mut g = Vec::with_capacity(total as usize + 1);
    g.push(0i64);
    let mut step = rng.random_range(1..=3);
    for _ in 0..total {
        g.push(g.last().unwrap() + step);
        if step > 1 && rng.random_bool(0.5) {
            step -= 1;
        }
    }
    let upper: Vec<i64> = weights.iter().map(|&w| g[w as usize]).collect();
    let oracle = SubmodularOracle::new(n, SubmodularKind::ConcaveOfModular { weights, g })
        .expect("concave tables validate");
    SetInstance::new(
        IntBox::from_upper(IntPoint::new(upper)).expect("nonneg uppers"),
        Body::Submodular(oracle),
        Monotonicity::Down,
    )
    .expect("submodular instances validate")
}

/// A box cut by `m_le` lex upper bounds and `m_ge` lex lower bounds with
/// random permutations and thresholds. The set may be empty; consumers that
/// need a nonempty set must check.
pub fn explicit_lex(rng: &mut impl Rng, n: usize, m_le: usize, m_ge: usize) -> SetInstance {
    let upper: Vec<i64> = (0..n).map(|_| rng.random_range(1..=3)).collect();
    let boxed = IntBox::from_upper(IntPoint::new(upper.clone())).expect("nonneg uppers");
    let mut constraints = Vec::with_capacity(m_le + m_ge);
    for k in 0..m_le + m_ge {
        let threshold: Vec<i64> =
            upper.iter().map(|&u| rng.random_range(0..=u)).collect();
        constraints.push(LexConstraint {
            direction: if k < m_le { LexDirection::Le } else { LexDirection::Ge },
            sigma: random_permutation(rng, n),
            threshold: IntPoint::new(threshold),
        });
    }
    SetInstance::new(boxed, Body::ExplicitLex { constraints }, Monotonicity::Unknown)
        .expect("lex bodies validate")
}
