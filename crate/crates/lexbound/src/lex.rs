//! Lex-order primitives: permutations, integer points and boxes, the lex
//! comparison itself, and the superincreasing scalarization.
//!
//! Conventions used throughout the crate:
//!
//! * A permutation `σ` of `[n]` orders the coordinates by significance:
//!   `σ(n)` is the **most** significant position, `σ(1)` the least. `x ⪯_σ y`
//!   holds iff `x = y` or `x_{σ(i)} < y_{σ(i)}` at the most significant
//!   position `i` where they differ.
//! * `σ·x` denotes the reordered vector `(x_{σ(1)}, …, x_{σ(n)})`.
//! * Positions and coordinates are 0-based in code; JSON and CLI surfaces use
//!   1-based arrays.
//!
//! All types are immutable after construction and all operations are pure, so
//! everything here is safe to share across threads.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

// ─────────────────────────────── Permutation ───────────────────────────────

/// A permutation of `{0, …, n−1}`, stored as the image array `map[i] = σ(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its 0-based image array, validating
    /// bijectivity.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::domain(format!(
                    "permutation image {:?} is not a bijection on 0..{n}",
                    map
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation from a 1-based image array (the JSON/CLI form).
    pub fn from_one_based(map: &[usize]) -> Result<Self> {
        if map.iter().any(|&v| v == 0) {
            return Err(Error::domain("1-based permutation contains a zero"));
        }
        Permutation::new(map.iter().map(|&v| v - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    pub fn reverse(n: usize) -> Self {
        Permutation { map: (0..n).rev().collect() }
    }

    /// The cyclic shift with `σ(i) = (i + s) mod n`; its most significant
    /// position is `σ(n−1) = (s − 1) mod n`.
    pub fn cyclic_shift(n: usize, s: usize) -> Self {
        Permutation { map: (0..n).map(|i| (i + s) % n).collect() }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    /// `σ(i)` for a 0-based position `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// The image array `(σ(0), …, σ(n−1))`, 0-based.
    pub fn image(&self) -> &[usize] {
        &self.map
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v + 1).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// `σ·x = (x_{σ(0)}, …, x_{σ(n−1)})`.
    pub fn permute(&self, x: &IntPoint) -> Result<IntPoint> {
        if x.dim() != self.n() {
            return Err(Error::domain(format!(
                "cannot permute a {}-dim point by a {}-dim permutation",
                x.dim(),
                self.n()
            )));
        }
        Ok(IntPoint::new(self.map.iter().map(|&v| x[v]).collect()))
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ{:?}", self.to_one_based())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<String> =
            self.to_one_based().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", one_based.join(","))
    }
}

// ──────────────────────────────── IntPoint ─────────────────────────────────

/// An integer point in `Z^n`.
///
/// The derived `Ord` is plain coordinate order (index 0 first) and is used
/// only for canonical sorting of point lists; the σ-dependent lex orders are
/// expressed through [`lex_cmp`]/[`lex_le`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoint {
    coords: Vec<i64>,
}

impl IntPoint {
    pub fn new(coords: Vec<i64>) -> Self {
        IntPoint { coords }
    }

    pub fn zeros(n: usize) -> Self {
        IntPoint { coords: vec![0; n] }
    }

    /// The scaled unit vector `c·e_i`.
    pub fn unit(n: usize, i: usize, c: i64) -> Self {
        let mut coords = vec![0; n];
        coords[i] = c;
        IntPoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn iter(&self) -> std::slice::Iter<'_, i64> {
        self.coords.iter()
    }

    pub fn is_binary(&self) -> bool {
        self.coords.iter().all(|&v| v == 0 || v == 1)
    }

    /// Componentwise `self ≤ other`.
    pub fn leq(&self, other: &IntPoint) -> bool {
        self.dim() == other.dim()
            && self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Componentwise `self ≤ other` with strict inequality somewhere.
    pub fn dominated_by(&self, other: &IntPoint) -> bool {
        self.leq(other) && self != other
    }

    pub fn dot_big(&self, weights: &[BigInt]) -> BigInt {
        self.coords
            .iter()
            .zip(weights)
            .map(|(&x, w)| w * BigInt::from(x))
            .sum()
    }

    pub fn dot_rational(&self, c: &[BigRational]) -> BigRational {
        self.coords
            .iter()
            .zip(c)
            .map(|(&x, ci)| ci * BigRational::from_integer(BigInt::from(x)))
            .sum()
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coords
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect()
    }
}

impl std::ops::Index<usize> for IntPoint {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.coords[i]
    }
}

impl From<Vec<i64>> for IntPoint {
    fn from(coords: Vec<i64>) -> Self {
        IntPoint::new(coords)
    }
}

impl From<&[i64]> for IntPoint {
    fn from(coords: &[i64]) -> Self {
        IntPoint::new(coords.to_vec())
    }
}

impl fmt::Debug for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl fmt::Display for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

// ───────────────────────────────── IntBox ──────────────────────────────────

/// An integral box `[l, u] = {x ∈ Z^n : l ≤ x ≤ u}`, the universe every set
/// in this crate lives in. Sub-boxes drive both the greedy recursion and the
/// bisection algorithm.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntBox {
    lower: IntPoint,
    upper: IntPoint,
}

impl IntBox {
    pub fn new(lower: IntPoint, upper: IntPoint) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::domain("box bounds have different dimensions"));
        }
        if !lower.leq(&upper) {
            return Err(Error::domain(format!(
                "box lower bound {lower} exceeds upper bound {upper}"
            )));
        }
        Ok(IntBox { lower, upper })
    }

    /// The box `[0, u]`.
    pub fn from_upper(upper: IntPoint) -> Result<Self> {
        IntBox::new(IntPoint::zeros(upper.dim()), upper)
    }

    /// The binary box `[0, 1]^n`.
    pub fn binary(n: usize) -> Self {
        IntBox {
            lower: IntPoint::zeros(n),
            upper: IntPoint::new(vec![1; n]),
        }
    }

    pub fn singleton(point: IntPoint) -> Self {
        IntBox { lower: point.clone(), upper: point }
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &IntPoint {
        &self.lower
    }

    pub fn upper(&self) -> &IntPoint {
        &self.upper
    }

    pub fn contains(&self, x: &IntPoint) -> bool {
        x.dim() == self.dim() && self.lower.leq(x) && x.leq(&self.upper)
    }

    /// `self ⊆ other`.
    pub fn subset_of(&self, other: &IntBox) -> bool {
        other.lower.leq(&self.lower) && self.upper.leq(&other.upper)
    }

    pub fn is_singleton(&self) -> bool {
        self.lower == self.upper
    }

    pub fn is_binary(&self) -> bool {
        self.lower.iter().all(|&v| v == 0) && self.upper.iter().all(|&v| v == 1)
    }

    /// Number of integer points, exact at any scale.
    pub fn point_count(&self) -> BigUint {
        let mut count = BigUint::one();
        for i in 0..self.dim() {
            count *= BigUint::from((self.upper[i] - self.lower[i] + 1) as u64);
        }
        count
    }

    /// `point_count()` as `u64` when it fits, for budget checks.
    pub fn point_count_u64(&self) -> Option<u64> {
        u64::try_from(&self.point_count()).ok()
    }

    /// Width `u_i − l_i + 1` of coordinate `i`.
    pub fn width(&self, i: usize) -> i64 {
        self.upper[i] - self.lower[i] + 1
    }

    /// A copy with coordinate `i` pinned to `v`.
    pub fn fix_coord(&self, i: usize, v: i64) -> Result<IntBox> {
        self.restrict_coord(i, v, v)
    }

    /// A copy with coordinate `i` restricted to `[lo, hi]`; errors if the
    /// restriction leaves the box empty or the original range.
    pub fn restrict_coord(&self, i: usize, lo: i64, hi: i64) -> Result<IntBox> {
        let lo = lo.max(self.lower[i]);
        let hi = hi.min(self.upper[i]);
        if lo > hi {
            return Err(Error::domain(format!(
                "coordinate {} restricted to empty range [{lo},{hi}]",
                i + 1
            )));
        }
        let mut lower = self.lower.coords().to_vec();
        let mut upper = self.upper.coords().to_vec();
        lower[i] = lo;
        upper[i] = hi;
        Ok(IntBox {
            lower: IntPoint::new(lower),
            upper: IntPoint::new(upper),
        })
    }

    /// Intersection of two boxes over the same coordinates; `None` if empty.
    pub fn intersect(&self, other: &IntBox) -> Option<IntBox> {
        let mut lower = Vec::with_capacity(self.dim());
        let mut upper = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let lo = self.lower[i].max(other.lower[i]);
            let hi = self.upper[i].min(other.upper[i]);
            if lo > hi {
                return None;
            }
            lower.push(lo);
            upper.push(hi);
        }
        Some(IntBox {
            lower: IntPoint::new(lower),
            upper: IntPoint::new(upper),
        })
    }

    /// Iterates over all integer points in canonical coordinate order (last
    /// coordinate varies fastest).
    pub fn points(&self) -> BoxPoints {
        BoxPoints {
            boxed: self.clone(),
            next: Some(self.lower.clone()),
        }
    }
}

impl fmt::Debug for IntBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?},{:?}]", self.lower, self.upper)
    }
}

impl fmt::Display for IntBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lower, self.upper)
    }
}

/// Iterator over the integer points of a box.
pub struct BoxPoints {
    boxed: IntBox,
    next: Option<IntPoint>,
}

impl Iterator for BoxPoints {
    type Item = IntPoint;

    fn next(&mut self) -> Option<IntPoint> {
        let current = self.next.take()?;
        let mut coords = current.coords().to_vec();
        let mut i = coords.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            if coords[i] < self.boxed.upper[i] {
                coords[i] += 1;
                for j in i + 1..coords.len() {
                    coords[j] = self.boxed.lower[j];
                }
                self.next = Some(IntPoint::new(coords));
                break;
            }
        }
        Some(current)
    }
}

// ─────────────────────────────── lex order ────────────────────────────────

/// Compares `x` and `y` in the lex order induced by `σ`: the most significant
/// position is `σ(n)`, so the scan runs from position `n−1` down to `0`.
pub fn lex_cmp(x: &IntPoint, y: &IntPoint, sigma: &Permutation) -> Result<Ordering> {
    let n = sigma.n();
    if x.dim() != n || y.dim() != n {
        return Err(Error::domain(format!(
            "lex comparison dimension mismatch: |x| = {}, |y| = {}, n = {}",
            x.dim(),
            y.dim(),
            n
        )));
    }
    for i in (0..n).rev() {
        let c = sigma.apply(i);
        match x[c].cmp(&y[c]) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

/// `x ⪯_σ y`.
pub fn lex_le(x: &IntPoint, y: &IntPoint, sigma: &Permutation) -> Result<bool> {
    Ok(lex_cmp(x, y, sigma)? != Ordering::Greater)
}

/// Which end of an order to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

// ──────────────────────── superincreasing weights ──────────────────────────

/// Superincreasing scalarization weights for a box `[0, u]`: integer weights
/// `λ` with `λ_{σ(i)} = 1 + Σ_{j<i} λ_{σ(j)} u_{σ(j)}`, so that
/// `x ⪯_σ y ⟺ λ·x ≤ λ·y` on the whole box.
///
/// The largest weight grows like `∏(u_i + 1)`, exponential in `n`, which is
/// why the entries are big integers with no fixed-width path.
#[derive(Clone, PartialEq, Eq)]
pub struct BigWeights {
    lambda: Vec<BigInt>,
}

impl BigWeights {
    pub fn lambda(&self) -> &[BigInt] {
        &self.lambda
    }

    /// `λ·x`.
    pub fn scalarize(&self, x: &IntPoint) -> Result<BigInt> {
        if x.dim() != self.lambda.len() {
            return Err(Error::domain("scalarization dimension mismatch"));
        }
        Ok(x.dot_big(&self.lambda))
    }
}

impl fmt::Debug for BigWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ{:?}", self.lambda)
    }
}

/// Builds the superincreasing weights for `boxed = [0, u]` under `σ`.
pub fn superincreasing_weights(boxed: &IntBox, sigma: &Permutation) -> Result<BigWeights> {
    if boxed.dim() != sigma.n() {
        return Err(Error::domain("box and permutation dimensions differ"));
    }
    if boxed.lower().iter().any(|&l| l != 0) {
        return Err(Error::domain(
            "superincreasing weights require a box with zero lower bounds",
        ));
    }
    let n = boxed.dim();
    let mut lambda = vec![BigInt::zero(); n];
    let mut acc = BigInt::one();
    for i in 0..n {
        let c = sigma.apply(i);
        lambda[c] = acc.clone();
        acc += &lambda[c] * BigInt::from(boxed.upper()[c]);
    }
    Ok(BigWeights { lambda })
}

// ─────────────────────── monotone permutations, complement ─────────────────

/// The canonical monotone permutation of a binary point: `σ·x = (0,…,0,1,…,1)`
/// with the zero positions listed in ascending index order, then the one
/// positions in ascending index order.
pub fn monotone_permutation(x: &IntPoint) -> Result<Permutation> {
    if !x.is_binary() {
        return Err(Error::domain(format!(
            "monotone permutation requires a binary point, got {x}"
        )));
    }
    let mut map: Vec<usize> = (0..x.dim()).filter(|&i| x[i] == 0).collect();
    map.extend((0..x.dim()).filter(|&i| x[i] == 1));
    Ok(Permutation { map })
}

/// Reflection of `x` through the center of the box: `u − x + l`. Composing it
/// with itself is the identity, and it reverses every lex order, which is what
/// reduces lex minimization to lex maximization over the complement set.
pub fn complement_point(x: &IntPoint, boxed: &IntBox) -> Result<IntPoint> {
    if !boxed.contains(x) {
        return Err(Error::domain(format!("point {x} outside box {boxed}")));
    }
    Ok(IntPoint::new(
        (0..x.dim())
            .map(|i| boxed.upper()[i] - x[i] + boxed.lower()[i])
            .collect(),
    ))
}
