//! Turning the lex order into a single linear objective.
//!
//! On a box with zero lower bounds, the superincreasing weights
//! `λ_{σ(i)} = 1 + Σ_{j<i} λ_{σ(j)} u_{σ(j)}` satisfy
//! `x ⪯_σ y ⟺ λ·x ≤ λ·y`, so one scalar product decides any lex
//! comparison. On the 0/1 box under the identity order these are the powers
//! of two, i.e. reading a binary number; on general boxes they are mixed-radix
//! digits. The weights are exponential in `n`, which is why they are big
//! integers — and why the rest of the crate avoids them algorithmically.

use lexbound::lex::{lex_cmp, superincreasing_weights};
use lexbound::{IntBox, IntPoint, Permutation};

fn main() -> lexbound::Result<()> {
    let binary = IntBox::binary(8);
    let w = superincreasing_weights(&binary, &Permutation::identity(8))?;
    println!("0/1 box, identity order: λ = {:?}", w.lambda());

    let boxed = IntBox::from_upper(IntPoint::new(vec![2, 5, 1, 3]))?;
    let sigma = Permutation::new(vec![2, 0, 3, 1])?;
    let w = superincreasing_weights(&boxed, &sigma)?;
    println!("\nbox u = (2,5,1,3), σ = {sigma}: λ = {:?}", w.lambda());

    let mut points: Vec<IntPoint> = boxed.points().collect();
    points.sort_by(|x, y| lex_cmp(x, y, &sigma).unwrap());
    println!("\nλ along the lex-sorted box ({} points):", points.len());
    for p in points.iter().step_by(points.len() / 6) {
        println!("  {p}  →  λ·x = {}", w.scalarize(p)?);
    }

    let strictly_increasing = points
        .windows(2)
        .all(|v| w.scalarize(&v[0]).unwrap() < w.scalarize(&v[1]).unwrap());
    println!("\nstrictly increasing along the whole order: {strictly_increasing}");
    Ok(())
}
