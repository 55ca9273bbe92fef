//! Transportation-shaped feasibility instances.
//!
//! Rows carry a supply that must be routed exactly; columns carry a capacity
//! that may not be exceeded; only allowed cells may carry flow, optionally up
//! to a per-cell bound. Fixed cells hold a predetermined amount and are folded
//! into the row supply and column capacity before solving.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::SolverError;

/// Column capacity (or cell bound) that may be absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Limit {
    Finite(u64),
    Unbounded,
}

impl Limit {
    pub fn finite(self) -> Option<u64> {
        match self {
            Limit::Finite(v) => Some(v),
            Limit::Unbounded => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
    pub bound: Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FixedCell {
    /// `None` when the fixed amount belongs to no variable row.
    pub row: Option<usize>,
    pub col: usize,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TransportInstance {
    supplies: Vec<u64>,
    capacities: Vec<Limit>,
    cells: Vec<Cell>,
    fixed: Vec<FixedCell>,
}

impl TransportInstance {
    pub fn new(supplies: Vec<u64>, capacities: Vec<Limit>) -> Self {
        TransportInstance {
            supplies,
            capacities,
            cells: Vec::new(),
            fixed: Vec::new(),
        }
    }

    pub fn allow(&mut self, row: usize, col: usize, bound: Limit) -> &mut Self {
        self.cells.push(Cell { row, col, bound });
        self
    }

    pub fn fix(&mut self, row: Option<usize>, col: usize, value: u64) -> &mut Self {
        self.fixed.push(FixedCell { row, col, value });
        self
    }

    pub fn rows(&self) -> usize {
        self.supplies.len()
    }

    pub fn cols(&self) -> usize {
        self.capacities.len()
    }

    pub fn supplies(&self) -> &[u64] {
        &self.supplies
    }

    pub fn capacities(&self) -> &[Limit] {
        &self.capacities
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn fixed(&self) -> &[FixedCell] {
        &self.fixed
    }

    /// Cells sorted by `(row, col)`.
    pub fn sorted_cells(&self) -> Vec<Cell> {
        let mut cells = self.cells.clone();
        cells.sort_by_key(|c| (c.row, c.col));
        cells
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        for c in &self.cells {
            if c.row >= self.rows() || c.col >= self.cols() {
                return Err(SolverError::MalformedInstance(format!(
                    "cell ({}, {}) outside a {}x{} instance",
                    c.row,
                    c.col,
                    self.rows(),
                    self.cols()
                )));
            }
        }
        let mut seen: Vec<(usize, usize)> = self.cells.iter().map(|c| (c.row, c.col)).collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(SolverError::MalformedInstance(format!(
                "cell ({}, {}) allowed twice",
                w[0].0, w[0].1
            )));
        }
        for f in &self.fixed {
            if f.col >= self.cols() || f.row.is_some_and(|r| r >= self.rows()) {
                return Err(SolverError::MalformedInstance(format!(
                    "fixed cell ({:?}, {}) outside the instance",
                    f.row, f.col
                )));
            }
            if let Some(r) = f.row {
                if seen.binary_search(&(r, f.col)).is_ok() {
                    return Err(SolverError::MalformedInstance(format!(
                        "cell ({r}, {}) is both fixed and variable",
                        f.col
                    )));
                }
            }
        }
        Ok(())
    }

    /// Row supplies after removing fixed amounts; negative means over-fixed.
    pub fn effective_supplies(&self) -> Vec<i128> {
        let mut s: Vec<i128> = self.supplies.iter().map(|&v| v as i128).collect();
        for f in &self.fixed {
            if let Some(r) = f.row {
                s[r] -= f.value as i128;
            }
        }
        s
    }

    /// Column capacities after removing fixed amounts; `None` is unbounded.
    pub fn effective_capacities(&self) -> Vec<Option<i128>> {
        let mut c: Vec<Option<i128>> = self.capacities.iter().map(|l| l.finite().map(|v| v as i128)).collect();
        for f in &self.fixed {
            if let Some(cap) = c[f.col].as_mut() {
                *cap -= f.value as i128;
            }
        }
        c
    }

    /// Product over rows of the number of ways to split the row's supply over
    /// its cells, saturating.
    pub fn assignment_space(&self) -> u128 {
        let supplies = self.effective_supplies();
        let mut per_row = vec![0usize; self.rows()];
        for c in &self.cells {
            per_row[c.row] += 1;
        }
        let mut total: u128 = 1;
        for (r, &k) in per_row.iter().enumerate() {
            let s = supplies[r].max(0) as u128;
            let ways = if k == 0 {
                1
            } else {
                binomial(s + k as u128 - 1, k as u128 - 1)
            };
            total = total.saturating_mul(ways.max(1));
        }
        total
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Integral assignment of the variable cells.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Witness {
    /// Non-zero cell values keyed by `(row, col)`.
    pub values: BTreeMap<(usize, usize), u64>,
}

impl Witness {
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.values.get(&(row, col)).copied().unwrap_or(0)
    }

    pub fn row_sum(&self, row: usize) -> u64 {
        self.values.iter().filter(|((r, _), _)| *r == row).map(|(_, v)| v).sum()
    }

    pub fn col_sum(&self, col: usize) -> u64 {
        self.values.iter().filter(|((_, c), _)| *c == col).map(|(_, v)| v).sum()
    }
}

/// Proof that no assignment exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Fixed cells already use more than the column's capacity.
    OvercommittedColumn { col: usize, deficit: u64 },
    /// Fixed cells already exceed the row's supply.
    OvercommittedRow { row: usize, excess: u64 },
    /// The rows must place `demand` units, but their neighbouring columns can
    /// absorb at most `absorbable`: each column `c` contributes
    /// `min(capacity(c), Σ_{r ∈ rows} bound(r, c))`.
    Hall {
        rows: Vec<usize>,
        cols: Vec<usize>,
        demand: u64,
        absorbable: u64,
    },
}

impl Certificate {
    /// Re-derives the certificate's arithmetic from the instance alone.
    pub fn verify(&self, instance: &TransportInstance) -> bool {
        match *self {
            Certificate::OvercommittedColumn { col, deficit } => {
                deficit > 0
                    && instance
                        .effective_capacities()
                        .get(col)
                        .copied()
                        .flatten()
                        .is_some_and(|c| c == -(deficit as i128))
            }
            Certificate::OvercommittedRow { row, excess } => {
                excess > 0
                    && instance
                        .effective_supplies()
                        .get(row)
                        .is_some_and(|&s| s == -(excess as i128))
            }
            Certificate::Hall {
                ref rows,
                demand,
                absorbable,
                ..
            } => {
                let supplies = instance.effective_supplies();
                let caps = instance.effective_capacities();
                let in_set = |r: usize| rows.contains(&r);
                let total: i128 = rows.iter().map(|&r| supplies.get(r).copied().unwrap_or(0)).sum();
                // Per column: Σ bounds from the row set, infinite if any is unbounded.
                let mut inflow: BTreeMap<usize, Option<i128>> = BTreeMap::new();
                for c in instance.cells() {
                    if !in_set(c.row) {
                        continue;
                    }
                    let entry = inflow.entry(c.col).or_insert(Some(0));
                    *entry = match (*entry, c.bound) {
                        (Some(acc), Limit::Finite(b)) => Some(acc + b as i128),
                        _ => None,
                    };
                }
                let mut cap_total: Option<i128> = Some(0);
                for (col, bound_sum) in inflow {
                    let cap = caps[col].map(|c| c.max(0));
                    let take = match (cap, bound_sum) {
                        (Some(a), Some(b)) => Some(a.min(b)),
                        (Some(a), None) => Some(a),
                        (None, Some(b)) => Some(b),
                        (None, None) => None,
                    };
                    cap_total = match (cap_total, take) {
                        (Some(acc), Some(t)) => Some(acc + t),
                        _ => None,
                    };
                }
                match cap_total {
                    Some(cap) => total == demand as i128 && cap == absorbable as i128 && total > cap,
                    None => false,
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SolveOutcome {
    Feasible { witness: Witness },
    Infeasible { certificate: Certificate },
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SolveOutcome::Feasible { witness } => Some(witness),
            SolveOutcome::Infeasible { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SolveOutcome::Feasible { .. } => None,
            SolveOutcome::Infeasible { certificate } => Some(certificate),
        }
    }
}

/// Checks that `witness` routes every row's effective supply exactly, keeps
/// every column within its effective capacity, uses only allowed cells and
/// respects cell bounds.
pub fn validate_witness(instance: &TransportInstance, witness: &Witness) -> bool {
    if instance.validate().is_err() {
        return false;
    }
    let supplies = instance.effective_supplies();
    let caps = instance.effective_capacities();
    if supplies.iter().any(|&s| s < 0) || caps.iter().any(|c| c.is_some_and(|c| c < 0)) {
        return false;
    }
    let bounds: BTreeMap<(usize, usize), Limit> =
        instance.cells().iter().map(|c| ((c.row, c.col), c.bound)).collect();
    let mut row_sums = vec![0i128; instance.rows()];
    let mut col_sums = vec![0i128; instance.cols()];
    for (&(r, c), &v) in &witness.values {
        let Some(bound) = bounds.get(&(r, c)) else {
            if v != 0 {
                return false;
            }
            continue;
        };
        if let Limit::Finite(b) = bound {
            if v > *b {
                return false;
            }
        }
        row_sums[r] += v as i128;
        col_sums[c] += v as i128;
    }
    row_sums.iter().zip(&supplies).all(|(a, b)| a == b)
        && col_sums
            .iter()
            .zip(&caps)
            .all(|(used, cap)| cap.is_none_or(|cap| *used <= cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_off_by_one_is_rejected() {
        let mut inst = TransportInstance::new(vec![2], vec![Limit::Finite(1), Limit::Finite(3)]);
        inst.allow(0, 0, Limit::Unbounded).allow(0, 1, Limit::Unbounded);
        let mut w = Witness::default();
        w.values.insert((0, 0), 1);
        w.values.insert((0, 1), 1);
        assert!(validate_witness(&inst, &w));
        w.values.insert((0, 1), 2);
        assert!(!validate_witness(&inst, &w));
        w.values.insert((0, 0), 2);
        w.values.insert((0, 1), 0);
        assert!(!validate_witness(&inst, &w), "column 0 over capacity");
    }

    #[test]
    fn witness_must_use_allowed_cells() {
        let inst = TransportInstance::new(vec![1], vec![Limit::Finite(1)]);
        let mut w = Witness::default();
        w.values.insert((0, 0), 1);
        assert!(!validate_witness(&inst, &w));
    }

    #[test]
    fn fixed_cells_fold_into_margins() {
        let mut inst = TransportInstance::new(vec![3], vec![Limit::Finite(2), Limit::Unbounded]);
        inst.fix(Some(0), 1, 1).fix(None, 0, 2);
        assert_eq!(inst.effective_supplies(), vec![2]);
        assert_eq!(inst.effective_capacities(), vec![Some(0), None]);
    }

    #[test]
    fn malformed_instances_are_reported() {
        let mut inst = TransportInstance::new(vec![1], vec![Limit::Finite(1)]);
        inst.allow(0, 3, Limit::Unbounded);
        assert!(inst.validate().is_err());
        let mut dup = TransportInstance::new(vec![1], vec![Limit::Finite(1)]);
        dup.allow(0, 0, Limit::Unbounded).allow(0, 0, Limit::Finite(1));
        assert!(dup.validate().is_err());
    }

    #[test]
    fn assignment_space_counts_compositions() {
        let mut inst = TransportInstance::new(vec![3, 2], vec![Limit::Finite(9); 3]);
        inst.allow(0, 0, Limit::Unbounded).allow(0, 1, Limit::Unbounded);
        inst.allow(1, 0, Limit::Unbounded).allow(1, 1, Limit::Unbounded).allow(1, 2, Limit::Unbounded);
        // 4 ways for row 0, C(4, 2) = 6 ways for row 1.
        assert_eq!(inst.assignment_space(), 24);
    }
}
