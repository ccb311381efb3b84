//! A bounded knapsack whose feasible set is exactly one lex interval.
//!
//! Builds the five-item knapsack `2x₁ + 8x₂ + 40x₃ + 150x₄ + 310x₅ ≤ 825`
//! over the box `[0,(1,5,4,1,2)]`, computes its lex maximum `θ` under the
//! identity significance order, lists the maximal points of the interval
//! `{x : x ⪯_id θ}`, and certifies that the knapsack *is* that interval:
//! every maximal interval point is feasible, so `S_I = L_id` — which full
//! enumeration then confirms.

use lexbound::bruteforce;
use lexbound::instance::{Body, Monotonicity, SetInstance};
use lexbound::lex::lex_le;
use lexbound::lexopt;
use lexbound::structure;
use lexbound::{IntBox, IntPoint, Permutation};

fn main() -> lexbound::Result<()> {
    let a = vec![2i64, 8, 40, 150, 310];
    let inst = SetInstance::new(
        IntBox::from_upper(IntPoint::new(vec![1, 5, 4, 1, 2]))?,
        Body::Knapsack { a: a.clone(), b: 825 },
        Monotonicity::Down,
    )?;
    let id = Permutation::identity(5);

    let theta = lexopt::lex_max_greedy(&inst, &id)?;
    println!("lex maximum under identity: θ = {theta}");

    println!("\nmaximal points of the interval {{x ⪯_id θ}} and their weights:");
    let family = structure::maxi_of_lex_set(&id, &theta, inst.bounding_box())?;
    for p in &family {
        let weight: i64 = p.coords().iter().zip(&a).map(|(&x, w)| x * w).sum();
        println!("  {p}  →  a·p = {weight}{}", if weight <= 825 { "  (feasible)" } else { "" });
    }

    let ordered = structure::is_lex_ordered(&inst, &id)?;
    println!("\nevery family member is feasible ⇒ lex-ordered: {ordered}");

    let feasible = bruteforce::enumerate(&inst, inst.bounding_box())?;
    let interval: Vec<IntPoint> = inst
        .bounding_box()
        .points()
        .filter(|x| lex_le(x, &theta, &id).unwrap())
        .collect();
    println!(
        "enumeration agrees: |S_I| = {} = |L_id| = {}, sets equal: {}",
        feasible.len(),
        interval.len(),
        feasible == interval
    );
    Ok(())
}
