//! Exact rational linear feasibility.
//!
//! A small dense Phase-I simplex over `BigRational` decides feasibility of
//! systems `{y ≥ 0 : Ay = b}`. Bland's rule guarantees termination, and every
//! pivot is exact, so answers are never corrupted by rounding. On top of the
//! raw solver sit the convex-hull queries the rest of the crate needs:
//! membership of a point in the hull of finitely many generators, domination
//! by a convex combination, and nonemptiness of a hull restricted to a box.
//!
//! This is a desk-scale tool (tens of variables, not thousands); the point is
//! exactness, not speed.

use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The system `{y ∈ R^k : Ay = b, y ≥ 0}` in build-up form.
#[derive(Clone, Debug)]
pub struct EqSystem {
    cols: usize,
    rows: Vec<(Vec<BigRational>, BigRational)>,
}

impl EqSystem {
    pub fn new(cols: usize) -> Self {
        EqSystem { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add_row(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) -> Result<()> {
        if coeffs.len() != self.cols {
            return Err(Error::domain(format!(
                "row has {} coefficients, system has {} columns",
                coeffs.len(),
                self.cols
            )));
        }
        self.rows.push((coeffs, rhs));
        Ok(())
    }

    /// Whether the system has a solution; exact.
    pub fn feasible(&self) -> bool {
        self.solve().is_some()
    }

    /// An exact solution when one exists (the basic feasible point found by
    /// Phase I).
    pub fn solve(&self) -> Option<Vec<BigRational>> {
        let m = self.rows.len();
        let k = self.cols;
        if m == 0 {
            return Some(vec![BigRational::zero(); k]);
        }

        // Tableau over columns [original k | artificial m | rhs], with rhs
        // made nonnegative so the artificial columns form a feasible basis.
        let total = k + m;
        let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
        for (r, (coeffs, rhs)) in self.rows.iter().enumerate() {
            let flip = rhs.is_negative();
            let mut row: Vec<BigRational> = Vec::with_capacity(total + 1);
            for c in coeffs {
                row.push(if flip { -c.clone() } else { c.clone() });
            }
            for j in 0..m {
                row.push(if j == r { BigRational::one() } else { BigRational::zero() });
            }
            row.push(if flip { -rhs.clone() } else { rhs.clone() });
            tab.push(row);
        }
        let mut basis: Vec<usize> = (k..k + m).collect();

        // Phase-I objective: minimize the sum of artificials. In terms of the
        // tableau the reduced-cost row is the negated column sums, offset by
        // the (nonnegative) rhs total.
        let mut cost: Vec<BigRational> = vec![BigRational::zero(); total + 1];
        for row in &tab {
            for (j, v) in row.iter().enumerate() {
                cost[j] -= v;
            }
        }
        // Artificial columns start basic with reduced cost zero.
        for j in k..k + m {
            cost[j] = BigRational::zero();
        }

        loop {
            // Bland's rule: smallest-index improving column.
            let entering = (0..total).find(|&j| cost[j].is_negative());
            let Some(e) = entering else { break };

            // Ratio test, ties broken by smallest basic variable index.
            let mut pivot: Option<(usize, BigRational)> = None;
            for (r, row) in tab.iter().enumerate() {
                if row[e].is_positive() {
                    let ratio = &row[total] / &row[e];
                    let better = match &pivot {
                        None => true,
                        Some((pr, pratio)) => {
                            ratio < *pratio || (ratio == *pratio && basis[r] < basis[*pr])
                        }
                    };
                    if better {
                        pivot = Some((r, ratio));
                    }
                }
            }
            let Some((pr, _)) = pivot else {
                // Unbounded Phase-I objective cannot happen (w ≥ 0); guard
                // anyway so a logic error surfaces as infeasibility.
                return None;
            };

            // Pivot on (pr, e).
            let piv = tab[pr][e].clone();
            for v in tab[pr].iter_mut() {
                *v /= &piv;
            }
            for r in 0..m {
                if r != pr && !tab[r][e].is_zero() {
                    let factor = tab[r][e].clone();
                    for j in 0..=total {
                        let delta = &factor * &tab[pr][j];
                        tab[r][j] -= delta;
                    }
                }
            }
            if !cost[e].is_zero() {
                let factor = cost[e].clone();
                for j in 0..=total {
                    let delta = &factor * &tab[pr][j];
                    cost[j] -= delta;
                }
            }
            basis[pr] = e;
        }

        // Minimum of Σ artificials is −cost[total] (cost row tracks −w).
        let attained = -cost[total].clone();
        if !attained.is_zero() {
            return None;
        }
        let mut y = vec![BigRational::zero(); k];
        for (r, &b) in basis.iter().enumerate() {
            if b < k {
                y[b] = tab[r][total].clone();
            }
        }
        Some(y)
    }
}

/// Exact membership of `x` in `conv(generators)`.
pub fn hull_member(generators: &[Vec<BigRational>], x: &[BigRational]) -> Result<bool> {
    let n = check_generators(generators, x.len())?;
    let g = generators.len();
    let mut sys = EqSystem::new(g);
    for i in 0..n {
        let coeffs: Vec<BigRational> = generators.iter().map(|v| v[i].clone()).collect();
        sys.add_row(coeffs, x[i].clone())?;
    }
    sys.add_row(vec![BigRational::one(); g], BigRational::one())?;
    Ok(sys.feasible())
}

/// Exact test for `∃ q ∈ conv(generators): q ≥ x` — whether `x` is dominated
/// by the hull. Variables are the convex weights plus one surplus per
/// coordinate.
pub fn hull_dominates(generators: &[Vec<BigRational>], x: &[BigRational]) -> Result<bool> {
    let n = check_generators(generators, x.len())?;
    let g = generators.len();
    let mut sys = EqSystem::new(g + n);
    for i in 0..n {
        let mut coeffs: Vec<BigRational> = generators.iter().map(|v| v[i].clone()).collect();
        coeffs.extend((0..n).map(|j| {
            if j == i {
                -BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        sys.add_row(coeffs, x[i].clone())?;
    }
    let mut ones = vec![BigRational::one(); g];
    ones.extend(vec![BigRational::zero(); n]);
    sys.add_row(ones, BigRational::one())?;
    Ok(sys.feasible())
}

/// Exact nonemptiness of `conv(generators) ∩ [l, u]`. Variables are the
/// convex weights plus two slacks per coordinate (`Vα − s = l`,
/// `s + t = u − l`).
pub fn hull_meets_box(
    generators: &[Vec<BigRational>],
    lower: &[BigRational],
    upper: &[BigRational],
) -> Result<bool> {
    let n = check_generators(generators, lower.len())?;
    if upper.len() != n {
        return Err(Error::domain("box bounds have different dimensions"));
    }
    if (0..n).any(|i| lower[i] > upper[i]) {
        return Ok(false);
    }
    let g = generators.len();
    let mut sys = EqSystem::new(g + 2 * n);
    for i in 0..n {
        let mut coeffs: Vec<BigRational> = generators.iter().map(|v| v[i].clone()).collect();
        coeffs.extend((0..2 * n).map(|j| {
            if j == i {
                -BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        sys.add_row(coeffs, lower[i].clone())?;
    }
    for i in 0..n {
        let mut coeffs = vec![BigRational::zero(); g + 2 * n];
        coeffs[g + i] = BigRational::one();
        coeffs[g + n + i] = BigRational::one();
        sys.add_row(coeffs, &upper[i] - &lower[i])?;
    }
    let mut ones = vec![BigRational::one(); g];
    ones.extend(vec![BigRational::zero(); 2 * n]);
    sys.add_row(ones, BigRational::one())?;
    Ok(sys.feasible())
}

fn check_generators(generators: &[Vec<BigRational>], n: usize) -> Result<usize> {
    if generators.is_empty() {
        return Err(Error::domain("empty generator list"));
    }
    if generators.iter().any(|v| v.len() != n) {
        return Err(Error::domain("generator dimension mismatch"));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn pts(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    fn rv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn generator_itself_is_member() {
        let gens = pts(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert!(hull_member(&gens, &rv(&[2, 0])).unwrap());
    }

    #[test]
    fn centroid_is_member() {
        let gens = pts(&[&[0, 0, 0], &[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]);
        let centroid: Vec<BigRational> =
            (0..3).map(|_| BigRational::new(3.into(), 4.into())).collect();
        assert!(hull_member(&gens, &centroid).unwrap());
    }

    #[test]
    fn origin_outside_hull_of_unit_vectors() {
        let gens = pts(&[&[1, 0], &[0, 1]]);
        assert!(!hull_member(&gens, &rv(&[0, 0])).unwrap());
    }

    #[test]
    fn membership_on_segment_interior_and_exterior() {
        let gens = pts(&[&[0, 0], &[4, 2]]);
        assert!(hull_member(&gens, &rv(&[2, 1])).unwrap());
        assert!(!hull_member(&gens, &rv(&[2, 2])).unwrap());
        assert!(!hull_member(&gens, &rv(&[6, 3])).unwrap());
    }

    #[test]
    fn kappa_style_hull_membership() {
        // generators 3e_i plus the all-twos point; (3,3,0) has the right
        // coordinate sum but lies outside the hull
        let gens = pts(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3], &[2, 2, 2]]);
        assert!(hull_member(&gens, &rv(&[2, 2, 2])).unwrap());
        assert!(!hull_member(&gens, &rv(&[3, 3, 0])).unwrap());
    }

    #[test]
    fn fractional_memberships_are_exact() {
        let gens = pts(&[&[1, 0], &[0, 1]]);
        let third = BigRational::new(1.into(), 3.into());
        let two_thirds = BigRational::new(2.into(), 3.into());
        assert!(hull_member(&gens, &[third.clone(), two_thirds.clone()]).unwrap());
        // slight perturbation off the segment
        let eps = BigRational::new(1.into(), 1_000_000_000_000i64.into());
        assert!(!hull_member(&gens, &[third + eps, two_thirds]).unwrap());
    }

    #[test]
    fn dominated_point_detected() {
        let gens = pts(&[&[1, 3, 1], &[1, 1, 3]]);
        // midpoint (1,2,2) dominates (0,2,2)
        assert!(hull_dominates(&gens, &rv(&[0, 2, 2])).unwrap());
        assert!(!hull_dominates(&gens, &rv(&[2, 0, 0])).unwrap());
        assert!(hull_dominates(&gens, &rv(&[1, 1, 3])).unwrap());
    }

    #[test]
    fn hull_box_intersection() {
        let gens = pts(&[&[0, 0], &[4, 0], &[0, 4]]);
        assert!(hull_meets_box(&gens, &rv(&[1, 1]), &rv(&[2, 2])).unwrap());
        // the box [3,4]^2 sits beyond the hypotenuse x+y ≤ 4
        assert!(!hull_meets_box(&gens, &rv(&[3, 3]), &rv(&[4, 4])).unwrap());
        // touching exactly at a vertex of the box
        assert!(hull_meets_box(&gens, &rv(&[2, 2]), &rv(&[4, 4])).unwrap());
        assert!(!hull_meets_box(&gens, &rv(&[2, 2]), &rv(&[1, 1])).unwrap());
    }

    #[test]
    fn degenerate_duplicate_generators() {
        let gens = pts(&[&[1, 1], &[1, 1], &[1, 1]]);
        assert!(hull_member(&gens, &rv(&[1, 1])).unwrap());
        assert!(!hull_member(&gens, &rv(&[1, 0])).unwrap());
    }

    #[test]
    fn empty_equality_system_is_feasible() {
        let sys = EqSystem::new(3);
        assert!(sys.feasible());
    }

    #[test]
    fn inconsistent_system_is_infeasible() {
        let mut sys = EqSystem::new(1);
        sys.add_row(rv(&[1]), rat(2)).unwrap();
        sys.add_row(rv(&[1]), rat(3)).unwrap();
        assert!(!sys.feasible());
    }

    #[test]
    fn solve_returns_exact_witness() {
        // y1 + y2 = 1, y1 − y2 = 0 → y = (1/2, 1/2)
        let mut sys = EqSystem::new(2);
        sys.add_row(rv(&[1, 1]), rat(1)).unwrap();
        sys.add_row(rv(&[1, -1]), rat(0)).unwrap();
        let y = sys.solve().unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(y, vec![half.clone(), half]);
    }

    #[test]
    fn negative_rhs_rows_are_handled() {
        // −y1 = −3 → y1 = 3
        let mut sys = EqSystem::new(2);
        sys.add_row(rv(&[-1, 0]), rat(-3)).unwrap();
        let y = sys.solve().unwrap();
        assert_eq!(y[0], rat(3));
    }
}
