//! Lex maximization with a counted feasibility oracle.
//!
//! Bisection pins coordinates from most to least significant, halving each
//! coordinate's interval with one feasibility probe per step, and counts
//! every probe against the certificate
//! `1 + n + Σᵢ ⌈log₂(uᵢ − lᵢ + 1)⌉` — a budget known before the first call,
//! however wide the box. This run doubles the box width tenfold, prints the
//! observed call counts against the bound, and checks the returned point
//! against the greedy reference each time.

use lexbound::instance::{Body, Monotonicity, SetInstance};
use lexbound::lexopt;
use lexbound::{IntBox, IntPoint, Permutation};

fn main() -> lexbound::Result<()> {
    println!("{:>8}  {:>14}  {:>6}  {:>6}", "width", "lex maximum", "calls", "bound");
    for exp in 1..=10u32 {
        let u = 2i64.pow(exp) - 1;
        let inst = SetInstance::new(
            IntBox::from_upper(IntPoint::new(vec![u; 3]))?,
            Body::Knapsack { a: vec![3, 5, 7], b: 4 * u },
            Monotonicity::Down,
        )?;
        let sigma = Permutation::identity(3);
        let (point, calls) = lexopt::lex_max_bisection(&inst, &sigma)?;
        assert_eq!(point, lexopt::lex_max_greedy(&inst, &sigma)?);
        println!(
            "{:>8}  {:>14}  {:>6}  {:>6}",
            u + 1,
            point.to_string(),
            calls,
            lexopt::bisection_call_bound(inst.bounding_box())
        );
    }
    println!("\neach doubling of the box width adds one call per coordinate;");
    println!("the count never leaves the certified budget, and the point matches greedy.");
    Ok(())
}
