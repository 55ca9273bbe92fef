//! Exact feasibility of the real relaxation by phase-one simplex.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::OracleError;
use crate::solver::{Limit, TransportInstance};

/// Whether some real `x ≥ 0` meets every row sum exactly, every column and
/// cell limit from above. Uses rational arithmetic and Bland's rule, so the
/// answer is exact.
pub fn relaxation_feasible(instance: &TransportInstance) -> Result<bool, OracleError> {
    instance.validate()?;
    let supplies = instance.effective_supplies();
    let caps = instance.effective_capacities();
    if supplies.iter().any(|&s| s < 0) || caps.iter().any(|c| c.is_some_and(|c| c < 0)) {
        return Ok(false);
    }
    let cells = instance.sorted_cells();
    let n_cells = cells.len();

    // Constraints as (coefficients over cells, slack?, rhs).
    let mut constraints: Vec<(Vec<usize>, bool, i128)> = Vec::new();
    for (r, &s) in supplies.iter().enumerate() {
        let vars = (0..n_cells).filter(|&i| cells[i].row == r).collect();
        constraints.push((vars, false, s));
    }
    for (c, cap) in caps.iter().enumerate() {
        if let Some(cap) = cap {
            let vars = (0..n_cells).filter(|&i| cells[i].col == c).collect();
            constraints.push((vars, true, *cap));
        }
    }
    for (i, cell) in cells.iter().enumerate() {
        if let Limit::Finite(b) = cell.bound {
            constraints.push((vec![i], true, b as i128));
        }
    }

    let m = constraints.len();
    let n_slack = constraints.iter().filter(|c| c.1).count();
    // Columns: cells, slacks, artificials, rhs.
    let width = n_cells + n_slack + m + 1;
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut tab = vec![vec![zero.clone(); width]; m];
    let mut basis = vec![0usize; m];
    let mut slack = n_cells;
    for (i, (vars, has_slack, rhs)) in constraints.iter().enumerate() {
        for &v in vars {
            tab[i][v] = one.clone();
        }
        if *has_slack {
            tab[i][slack] = one.clone();
            slack += 1;
        }
        tab[i][n_cells + n_slack + i] = one.clone();
        tab[i][width - 1] = BigRational::from_integer(BigInt::from(*rhs));
        basis[i] = n_cells + n_slack + i;
    }
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = vec![zero.clone(); width];
    for row in &tab {
        for (j, v) in row.iter().enumerate() {
            if j < n_cells + n_slack || j == width - 1 {
                cost[j] -= v;
            }
        }
    }

    // Bland: lowest-index entering column with negative reduced cost.
    while let Some(enter) = (0..width - 1).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded direction cannot occur in phase one.
            break;
        };
        let pivot = tab[pr][enter].clone();
        for v in tab[pr].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = tab[pr].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (v, p) in cost.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
        basis[pr] = enter;
    }
    // Objective value is `-cost[rhs]`.
    Ok(cost[width - 1].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_cases() {
        let mut inst = TransportInstance::new(vec![1], vec![Limit::Finite(0), Limit::Finite(1)]);
        inst.allow(0, 0, Limit::Unbounded).allow(0, 1, Limit::Unbounded);
        assert!(relaxation_feasible(&inst).unwrap());
        let mut inst = TransportInstance::new(vec![2], vec![Limit::Finite(1), Limit::Unbounded]);
        inst.allow(0, 0, Limit::Unbounded).allow(0, 1, Limit::Finite(0));
        assert!(!relaxation_feasible(&inst).unwrap());
        assert!(relaxation_feasible(&TransportInstance::default()).unwrap());
    }

    #[test]
    fn fractional_split_counts() {
        // Three rows of one unit into two columns of capacity one each: infeasible.
        let mut inst = TransportInstance::new(vec![1, 1, 1], vec![Limit::Finite(1), Limit::Finite(1)]);
        for r in 0..3 {
            inst.allow(r, 0, Limit::Unbounded).allow(r, 1, Limit::Unbounded);
        }
        assert!(!relaxation_feasible(&inst).unwrap());
    }
}
