//! Inequality systems for independence systems, from weakest to strongest.
//!
//! For a down-monotone 0/1 set, each minimal infeasible point v yields the
//! cover row `Σ_{i: vᵢ=1} xᵢ ≤ |v| − 1`. Strengthening replaces each cover
//! row by the facet rows of the 0/1 lex interval below the lex maximum
//! under v's monotone permutation — a system at least as strong row for
//! row and still exact on integer points. On that interval the single
//! cover row is not even integer-exact, which is the strengthening in
//! miniature; an integer-box knapsack then shows the third route, the
//! lifted description over the maximal vertices of the dominant hull.

use num::Zero;

use lexbound::formulation::{self, Inequality, Provenance};
use lexbound::instance::{Body, LexConstraint, LexDirection, Monotonicity, SetInstance};
use lexbound::lex::monotone_permutation;
use lexbound::lexopt;
use lexbound::ratio::{format_rational, rat};
use lexbound::structure;
use lexbound::{IntBox, IntPoint};

fn row_str(row: &Inequality) -> String {
    let (coeffs, rhs) = row.canonical_scaled();
    let lhs: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| {
            if *a == rat(1) {
                format!("x{}", i + 1)
            } else {
                format!("{}·x{}", format_rational(a), i + 1)
            }
        })
        .collect();
    format!("{} ≤ {}", lhs.join(" + "), format_rational(&rhs))
}

fn main() -> lexbound::Result<()> {
    triangle()?;
    interval_strengthening()?;
    knapsack_hull()?;
    Ok(())
}

fn triangle() -> lexbound::Result<()> {
    let inst = SetInstance::new(
        IntBox::binary(3),
        Body::IndependenceGraph { edges: vec![(0, 1), (0, 2), (1, 2)] },
        Monotonicity::Down,
    )?;

    let cover = formulation::cover_formulation(&inst)?;
    println!("triangle stable sets — cover system ({} rows):", cover.len());
    for row in &cover {
        println!("  {}", row_str(row));
    }

    let strong = formulation::strengthened_formulation(&inst)?;
    println!("strengthened system ({} rows):", strong.len());
    for row in &strong {
        println!("  {}", row_str(row));
    }

    assert!(formulation::verify_formulation(&inst, &cover)?);
    assert!(formulation::verify_formulation(&inst, &strong)?);
    println!("both systems cut out exactly the stable sets on integer points");

    assert!(formulation::dominance_report(&cover, &strong));
    println!("the strengthened system dominates the cover system row for row");
    Ok(())
}

/// Where the strengthening actually bites: for one minimal infeasible v of
/// the 5-cycle, the cover row alone does not even cut all *integer* points
/// outside v's 0/1 lex interval, while the interval's strengthened rows do
/// — they are its complete description.
fn interval_strengthening() -> lexbound::Result<()> {
    let inst = SetInstance::new(
        IntBox::binary(5),
        Body::IndependenceGraph { edges: vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)] },
        Monotonicity::Down,
    )?;
    let v = IntPoint::new(vec![1, 1, 0, 0, 0]);
    assert!(structure::minimal_infeasible_points(&inst)?.contains(&v));
    let sigma = monotone_permutation(&v)?;
    let theta = lexopt::lex_max_greedy(&inst, &sigma)?;
    println!("\n5-cycle, minimal infeasible v = {v}: σ_v = {sigma}, θ_v = {theta}");

    let interval = SetInstance::new(
        IntBox::binary(5),
        Body::ExplicitLex {
            constraints: vec![LexConstraint {
                direction: LexDirection::Le,
                sigma: sigma.clone(),
                threshold: theta.clone(),
            }],
        },
        Monotonicity::Unknown,
    )?;

    let cover_v: Vec<Inequality> = formulation::cover_formulation(&inst)?
        .into_iter()
        .filter(|r| matches!(&r.provenance, Provenance::Cover { v: pv } if *pv == v))
        .collect();
    let strong_v: Vec<Inequality> = formulation::strengthened_formulation(&inst)?
        .into_iter()
        .filter(|r| matches!(&r.provenance, Provenance::Strengthened { v: pv, .. } if *pv == v))
        .collect();
    println!("rows of the interval {{x ∈ {{0,1}}⁵ : x ⪯_σ θ}}:");
    for row in &strong_v {
        println!("  {}", row_str(row));
    }

    let w = IntPoint::new(vec![0, 1, 1, 1, 1]);
    let outside = !interval.contains(&w)?;
    let cover_admits = cover_v.iter().all(|r| r.satisfied_by(&w));
    let cut_by = strong_v.iter().find(|r| !r.satisfied_by(&w)).expect("some row cuts w");
    println!(
        "integer point w = {w}: outside the interval ({outside}), \
         yet the cover row admits it ({cover_admits}); {} cuts it",
        row_str(cut_by)
    );
    assert!(outside && cover_admits);

    assert!(!formulation::verify_formulation(&interval, &cover_v)?);
    assert!(formulation::verify_formulation(&interval, &strong_v)?);
    println!("on the interval the cover row is inexact, the strengthened rows are exact");
    Ok(())
}

/// Integer boxes take the lifted route instead: membership in the dominant
/// hull of the maximal feasible vertices, checked pointwise against the
/// instance across the whole box.
fn knapsack_hull() -> lexbound::Result<()> {
    let inst = SetInstance::new(
        IntBox::from_upper(IntPoint::new(vec![2, 2, 1]))?,
        Body::Knapsack { a: vec![1, 2, 3], b: 4 },
        Monotonicity::Down,
    )?;
    let ef = formulation::extended_formulation(&inst)?;
    println!("\nknapsack x₁ + 2x₂ + 3x₃ ≤ 4 over [0,(2,2,1)] — {}", ef.template_description());
    println!("generators (maximal feasible points):");
    for g in ef.generators() {
        println!("  {g}");
    }
    let mut agree = 0usize;
    let mut total = 0usize;
    for x in inst.bounding_box().points() {
        assert_eq!(ef.admits(&x)?, inst.contains(&x)?);
        agree += 1;
        total += 1;
    }
    println!("lifted membership = direct membership on all {agree}/{total} box points");
    Ok(())
}
