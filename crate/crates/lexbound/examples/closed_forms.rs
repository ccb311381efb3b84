//! Three families whose lex optima need no search at all.
//!
//! Sign-separated systems (every column wholly nonnegative or wholly
//! nonpositive) have their lex maximum at a corner read off the tightened
//! box; polymatroids yield theirs by one greedy sweep of oracle marginals;
//! and the permutahedron's is the rank vector of σ itself. Each closed form
//! is checked against the generic greedy solver, and the permutahedron
//! against a full scan of the integer points of its hull.

use itertools::Itertools;
use num::rational::BigRational;

use lexbound::bruteforce;
use lexbound::instance::{Body, Monotonicity, SetInstance, SubmodularKind, SubmodularOracle};
use lexbound::lex::Extremum;
use lexbound::lexopt;
use lexbound::ratio::rat;
use lexbound::{IntBox, IntPoint, Permutation};

fn main() -> lexbound::Result<()> {
    sign_separated()?;
    polymatroid()?;
    permutahedron()?;
    Ok(())
}

/// `2x₁ − x₂ + 3x₃ ≤ 10`, `x₁ − 2x₂ + 2x₃ ≤ 8`: columns 1 and 3 are
/// nonnegative, column 2 nonpositive. After tightening the box, the lex
/// maximum under σ is a corner — negative columns go to their upper bound
/// outright, positive ones take what the rows allow in significance order.
fn sign_separated() -> lexbound::Result<()> {
    let rows: Vec<Vec<BigRational>> =
        vec![vec![rat(2), rat(-1), rat(3)], vec![rat(1), rat(-2), rat(2)]];
    let loose = SetInstance::new(
        IntBox::from_upper(IntPoint::new(vec![9, 5, 9]))?,
        Body::SignSeparated { a: rows, b: vec![rat(10), rat(8)] },
        Monotonicity::Unknown,
    )?;
    let inst = loose.with_box(loose.tighten_bounds()?)?;
    println!(
        "sign-separated system, box {} tightened to {}",
        loose.bounding_box(),
        inst.bounding_box()
    );

    for image in [vec![0, 1, 2], vec![2, 1, 0], vec![1, 2, 0]] {
        let sigma = Permutation::new(image)?;
        let corner = lexopt::lex_max_sign_separated(&inst, &sigma)?;
        let greedy = lexopt::lex_max_greedy(&inst, &sigma)?;
        assert_eq!(corner, greedy);
        println!("  σ = {sigma}: closed form {corner} = greedy {greedy}");
    }
    Ok(())
}

/// The polymatroid of `f(A) = g(Σ_{i∈A} wᵢ)` for concave `g`: the lex
/// maximum under σ fills coordinates in significance order, each taking the
/// marginal value `f(seen ∪ {i}) − f(seen)`.
fn polymatroid() -> lexbound::Result<()> {
    let weights = vec![1i64, 2, 1, 3];
    let g = vec![0i64, 3, 5, 6, 7, 7, 7, 7];
    let oracle =
        SubmodularOracle::new(4, SubmodularKind::ConcaveOfModular { weights: weights.clone(), g })?;
    let upper: Vec<i64> = (0..4).map(|i| oracle.eval_set(&[i])).collect();
    let inst = SetInstance::new(
        IntBox::from_upper(IntPoint::new(upper))?,
        Body::Submodular(oracle),
        Monotonicity::Down,
    )?;
    println!("\npolymatroid of f(A) = g(Σ wᵢ), w = {weights:?}");

    for image in (0..4).permutations(4) {
        let sigma = Permutation::new(image)?;
        let marginal = lexopt::lex_max_polymatroid(&inst, &sigma)?;
        assert_eq!(marginal, lexopt::lex_max_greedy(&inst, &sigma)?);
    }
    println!("  marginal sweep = greedy on all 24 permutations");
    for image in [vec![0, 1, 2, 3], vec![2, 0, 3, 1]] {
        let sigma = Permutation::new(image)?;
        println!("  σ = {sigma}: lexmax = {}", lexopt::lex_max_polymatroid(&inst, &sigma)?);
    }
    Ok(())
}

/// The permutahedron `conv{arrangements of (1, …, n)}`: the lex maximum
/// under σ assigns rank `i + 1` to coordinate `σ(i)` and the minimum the
/// reverse ranks — no instance needed. Verified here against a scan of all
/// integer hull points (the rank vectors plus interior lattice points such
/// as `(2,2,3,3)`), whose lex extremes are always rank vectors.
fn permutahedron() -> lexbound::Result<()> {
    let n = 4;
    let generators: Vec<Vec<BigRational>> = (1..=n as i64)
        .permutations(n)
        .map(|v| v.into_iter().map(rat).collect())
        .collect();
    let inst = SetInstance::new(
        IntBox::new(IntPoint::new(vec![1; n]), IntPoint::new(vec![n as i64; n]))?,
        Body::VPolytope { generators },
        Monotonicity::None,
    )?;
    let points = bruteforce::enumerate(&inst, inst.bounding_box())?;
    println!(
        "\npermutahedron over n = {n}: {} integer points ({} rank vectors + interior)",
        points.len(),
        (1..=n).product::<usize>()
    );

    for image in (0..n).permutations(n) {
        let sigma = Permutation::new(image)?;
        for which in [Extremum::Max, Extremum::Min] {
            let formula = lexopt::permutahedron_lex(n, &sigma, which)?;
            let scanned = bruteforce::oracle_lex_opt(&points, &sigma, which)?;
            assert_eq!(Some(formula), scanned);
        }
    }
    let sigma = Permutation::new(vec![2, 0, 3, 1])?;
    println!(
        "  rank formulas = vertex scan for all σ and both ends; e.g. σ = {sigma}: \
         lexmax {}, lexmin {}",
        lexopt::permutahedron_lex(n, &sigma, Extremum::Max)?,
        lexopt::permutahedron_lex(n, &sigma, Extremum::Min)?,
    );
    Ok(())
}
