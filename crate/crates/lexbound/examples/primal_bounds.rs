//! Lower bounds from feasible lex optima, and how tight they can get.
//!
//! Every lex optimum is a feasible point, so the best objective value among
//! the lex optima of a permutation family is a lower bound on the true
//! maximum. Three stops: the n cyclic shifts carry a `z*/n` guarantee for
//! nonnegative objectives on down-monotone sets; one monotone permutation
//! per maximal point makes the bound *tight* on any 0/1 set; and the
//! κ-family polytopes show the `1/n` guarantee cannot be improved — every
//! permutation, not just an unlucky family, prices their lex optima at κ
//! while the optimum is (κ−1)n.

use num::rational::BigRational;

use lexbound::bounds;
use lexbound::instance::{Body, Monotonicity, SetInstance};
use lexbound::ratio::{format_rational, rat};
use lexbound::structure;
use lexbound::{IntBox, IntPoint};

fn main() -> lexbound::Result<()> {
    cyclic_guarantee()?;
    maximal_point_tightness()?;
    kappa_worst_case()?;
    Ok(())
}

/// The five-item knapsack under the n cyclic shifts: one shift puts each
/// coordinate in the most significant slot, which is enough for the `z*/n`
/// guarantee.
fn cyclic_guarantee() -> lexbound::Result<()> {
    let inst = SetInstance::new(
        IntBox::from_upper(IntPoint::new(vec![1, 5, 4, 1, 2]))?,
        Body::Knapsack { a: vec![2, 8, 40, 150, 310], b: 825 },
        Monotonicity::Down,
    )?;
    let c: Vec<BigRational> = [3, 1, 4, 1, 5].map(rat).to_vec();
    let family = bounds::family_h1(inst.n())?;

    println!("knapsack, c = (3, 1, 4, 1, 5), family = {} cyclic shifts", family.len());
    let optima = bounds::lex_optima_per_perm(&inst, family.perms())?;
    for (sigma, (hi, _)) in family.perms().iter().zip(&optima) {
        println!("  σ = {sigma}: lexmax = {hi}, c·lexmax = {}", hi.dot_rational(&c));
    }
    let report = bounds::primal_bound(&inst, &family, &c)?;
    let (z_star, _) = bounds::optimum_bruteforce(&inst, &c)?;
    let z_prim = report.z_prim.unwrap();
    assert!(&z_prim * rat(inst.n() as i64) >= z_star);
    println!(
        "z_prim = {} ≤ z* = {}, ratio {} ≥ 1/n = 1/{}",
        format_rational(&z_prim),
        format_rational(&z_star),
        format_rational(&(&z_prim / &z_star)),
        inst.n()
    );
    Ok(())
}

/// A 5-cycle's stable sets under one monotone permutation per maximal stable
/// set: some member's lex maximum is the true optimum, for every c ≥ 0.
fn maximal_point_tightness() -> lexbound::Result<()> {
    let inst = SetInstance::new(
        IntBox::binary(5),
        Body::IndependenceGraph { edges: vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)] },
        Monotonicity::Down,
    )?;
    let maximal = structure::maximal_points(&inst)?;
    println!("\n5-cycle stable sets: {} maximal points", maximal.len());
    for p in &maximal {
        println!("  {p}");
    }
    let family = bounds::family_h2(&inst)?;
    let c: Vec<BigRational> = [2, 1, 3, 1, 2].map(rat).to_vec();
    let report = bounds::primal_bound(&inst, &family, &c)?;
    let (z_star, _) = bounds::optimum_bruteforce(&inst, &c)?;
    assert_eq!(report.z_prim, Some(z_star.clone()));
    println!(
        "c = (2, 1, 3, 1, 2): z_prim = z* = {} — tight, as for every c ≥ 0",
        format_rational(&z_star)
    );
    Ok(())
}

/// `conv{κe₁, …, κe_n, (κ−1)𝟙}`: under c = 𝟙 every lex optimum is a spike
/// `κe_i` worth κ, while the optimum sits at `(κ−1)𝟙` worth (κ−1)n. The
/// bound-to-optimum ratio κ/((κ−1)n) falls to 1/n as κ grows, and no family
/// can do better because all n! permutations price alike here.
fn kappa_worst_case() -> lexbound::Result<()> {
    println!("\nκ-family worst case, c = 𝟙:");
    println!("  {:>2} {:>2} {:>7} {:>7} {:>8}", "n", "κ", "z_prim", "z*", "ratio");
    for n in [2usize, 3, 4] {
        for kappa in [2i64, 3, 10] {
            let facts = structure::kappa_family_instance(n, kappa)?;
            let family = bounds::family_h1(n)?;
            let ones: Vec<BigRational> = vec![rat(1); n];
            let report = bounds::primal_bound(&facts.instance, &family, &ones)?;
            let z_prim = report.z_prim.unwrap();
            assert_eq!(z_prim, rat(facts.primal_ones));
            assert_eq!(&z_prim / rat(facts.z_star_ones), facts.ratio);
            println!(
                "  {:>2} {:>2} {:>7} {:>7} {:>8}",
                n,
                kappa,
                format_rational(&z_prim),
                facts.z_star_ones,
                format_rational(&facts.ratio)
            );
        }
    }
    println!("  ratio → 1/n as κ → ∞: the z*/n guarantee is sharp");
    Ok(())
}
