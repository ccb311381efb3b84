//! Fourier–Motzkin elimination over exact rationals.
//!
//! Decides feasibility of `{y ∈ R^k : Ay ≤ b}` by eliminating one variable at
//! a time: every pair of a lower-bounding and an upper-bounding row combines
//! into a row without the variable, and once all variables are gone the
//! system is feasible iff every residual constant row reads `0 ≤ b` with
//! `b ≥ 0`.
//!
//! The row count can square with each elimination, so a hard row cap turns
//! blow-ups into a resource error. This module deliberately shares nothing
//! with the simplex solver — it exists to double-check hull-membership
//! answers through a completely different algorithm.

use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The system `{y ∈ R^k : rows}` with every row `a·y ≤ b`. Variables are
/// unrestricted; sign constraints must be added as rows.
#[derive(Clone, Debug)]
pub struct IneqSystem {
    cols: usize,
    rows: Vec<(Vec<BigRational>, BigRational)>,
}

impl IneqSystem {
    pub fn new(cols: usize) -> Self {
        IneqSystem { cols, rows: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds `coeffs · y ≤ rhs`.
    pub fn add_le(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) -> Result<()> {
        if coeffs.len() != self.cols {
            return Err(Error::domain("row/column count mismatch"));
        }
        self.rows.push((coeffs, rhs));
        Ok(())
    }

    /// Adds `coeffs · y = rhs` as a pair of inequalities.
    pub fn add_eq(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) -> Result<()> {
        let neg: Vec<BigRational> = coeffs.iter().map(|c| -c).collect();
        self.add_le(coeffs, rhs.clone())?;
        self.add_le(neg, -rhs)
    }

    /// Adds `y_j ≥ 0` for every variable.
    pub fn add_nonnegativity(&mut self) {
        for j in 0..self.cols {
            let mut coeffs = vec![BigRational::zero(); self.cols];
            coeffs[j] = -BigRational::one();
            self.rows.push((coeffs, BigRational::zero()));
        }
    }

    /// Eliminates all variables and reports feasibility. `row_cap` bounds the
    /// intermediate system size; exceeding it is a resource error.
    pub fn feasible(&self, row_cap: usize) -> Result<bool> {
        let mut rows = self.rows.clone();
        normalize(&mut rows);
        for j in (0..self.cols).rev() {
            rows = eliminate(rows, j, row_cap)?;
        }
        Ok(rows.iter().all(|(_, b)| !b.is_negative()))
    }
}

/// One elimination step: removes variable `j`.
fn eliminate(
    rows: Vec<(Vec<BigRational>, BigRational)>,
    j: usize,
    row_cap: usize,
) -> Result<Vec<(Vec<BigRational>, BigRational)>> {
    let mut zero = Vec::new();
    let mut upper = Vec::new(); // a_j > 0: upper bounds on y_j
    let mut lower = Vec::new(); // a_j < 0: lower bounds on y_j
    for row in rows {
        if row.0[j].is_zero() {
            zero.push(row);
        } else if row.0[j].is_positive() {
            upper.push(row);
        } else {
            lower.push(row);
        }
    }
    let mut out = zero;
    for (lc, lb) in &lower {
        for (uc, ub) in &upper {
            // scale so the j-coefficients cancel: row = u/u_j − l/l_j
            let mut coeffs = Vec::with_capacity(lc.len());
            for i in 0..lc.len() {
                coeffs.push(&uc[i] / &uc[j] - &lc[i] / &lc[j]);
            }
            let rhs = ub / &uc[j] - lb / &lc[j];
            coeffs[j] = BigRational::zero();
            out.push((coeffs, rhs));
            if out.len() > row_cap {
                return Err(Error::resource(format!(
                    "Fourier–Motzkin row cap {row_cap} exceeded while eliminating variable {}",
                    j + 1
                )));
            }
        }
    }
    normalize(&mut out);
    Ok(out)
}

/// Scales each row so its first nonzero coefficient is ±1 and drops exact
/// duplicates; keeps intermediate systems from silting up.
fn normalize(rows: &mut Vec<(Vec<BigRational>, BigRational)>) {
    for (coeffs, rhs) in rows.iter_mut() {
        if let Some(lead) = coeffs.iter().find(|c| !c.is_zero()).cloned() {
            let scale = lead.abs();
            for c in coeffs.iter_mut() {
                *c /= &scale;
            }
            *rhs /= &scale;
        }
    }
    rows.sort();
    rows.dedup();
}

/// Hull membership decided by elimination instead of simplex: feasibility of
/// `{α ≥ 0 : Σα = 1, Σ α_g · g = x}` in the weight variables.
pub fn hull_member_fm(
    generators: &[Vec<BigRational>],
    x: &[BigRational],
    row_cap: usize,
) -> Result<bool> {
    if generators.is_empty() {
        return Err(Error::domain("empty generator list"));
    }
    let n = x.len();
    if generators.iter().any(|v| v.len() != n) {
        return Err(Error::domain("generator dimension mismatch"));
    }
    let g = generators.len();
    let mut sys = IneqSystem::new(g);
    sys.add_nonnegativity();
    sys.add_eq(vec![BigRational::one(); g], BigRational::one())?;
    for i in 0..n {
        let coeffs: Vec<BigRational> = generators.iter().map(|v| v[i].clone()).collect();
        sys.add_eq(coeffs, x[i].clone())?;
    }
    sys.feasible(row_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use crate::simplex;

    fn pts(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    fn rv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn one_dimensional_interval() {
        let mut sys = IneqSystem::new(1);
        sys.add_le(rv(&[1]), rat(5)).unwrap();
        sys.add_le(rv(&[-1]), rat(-3)).unwrap(); // y ≥ 3
        assert!(sys.feasible(1000).unwrap());
        let mut empty = IneqSystem::new(1);
        empty.add_le(rv(&[1]), rat(2)).unwrap();
        empty.add_le(rv(&[-1]), rat(-3)).unwrap(); // y ≥ 3 and y ≤ 2
        assert!(!empty.feasible(1000).unwrap());
    }

    #[test]
    fn equality_encoding() {
        let mut sys = IneqSystem::new(2);
        sys.add_eq(rv(&[1, 1]), rat(4)).unwrap();
        sys.add_eq(rv(&[1, -1]), rat(0)).unwrap();
        assert!(sys.feasible(1000).unwrap());
        sys.add_le(rv(&[1, 0]), rat(1)).unwrap(); // forces y1 ≤ 1, but y1 = 2
        assert!(!sys.feasible(1000).unwrap());
    }

    #[test]
    fn row_cap_reports_resource_error() {
        // 6 variables, dense pairwise constraints, absurdly small cap
        let mut sys = IneqSystem::new(6);
        for a in 0..6 {
            for b in 0..6 {
                if a != b {
                    let mut c = vec![rat(0); 6];
                    c[a] = rat(1);
                    c[b] = rat(-2);
                    sys.add_le(c, rat(1)).unwrap();
                }
            }
        }
        match sys.feasible(4) {
            Err(crate::Error::Resource(_)) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn hull_membership_matches_simplex_route() {
        let gens = pts(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3], &[2, 2, 2]]);
        for probe in [&[2i64, 2, 2][..], &[3, 3, 0], &[1, 1, 1], &[0, 0, 3], &[3, 0, 1]] {
            let x = rv(probe);
            assert_eq!(
                hull_member_fm(&gens, &x, 100_000).unwrap(),
                simplex::hull_member(&gens, &x).unwrap(),
                "disagreement at {probe:?}"
            );
        }
    }

    #[test]
    fn random_hull_probes_agree_with_simplex() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let n = rng.random_range(1..=3usize);
            let g = rng.random_range(1..=4usize);
            let gens: Vec<Vec<BigRational>> = (0..g)
                .map(|_| (0..n).map(|_| rat(rng.random_range(-3..=3))).collect())
                .collect();
            let x: Vec<BigRational> =
                (0..n).map(|_| rat(rng.random_range(-3..=3))).collect();
            assert_eq!(
                hull_member_fm(&gens, &x, 200_000).unwrap(),
                simplex::hull_member(&gens, &x).unwrap()
            );
        }
    }
}
