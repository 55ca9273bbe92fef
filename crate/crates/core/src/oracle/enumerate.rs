//! Exhaustive search over integral assignments.

use crate::error::OracleError;
use crate::solver::{Cell, Limit, TransportInstance, Witness};

/// Default cap on the number of candidate assignments.
pub const DEFAULT_LIMIT: u128 = 10_000_000;

/// Tries every way of splitting each row's supply over its allowed cells.
///
/// Returns an assignment respecting all capacities and bounds, or `None`.
/// Fails when [`TransportInstance::assignment_space`] exceeds `limit`.
pub fn enumerate_assignments(instance: &TransportInstance, limit: u128) -> Result<Option<Witness>, OracleError> {
    instance.validate()?;
    let supplies = instance.effective_supplies();
    let caps = instance.effective_capacities();
    if supplies.iter().any(|&s| s < 0) || caps.iter().any(|c| c.is_some_and(|c| c < 0)) {
        return Ok(None);
    }
    let size = instance.assignment_space();
    if size > limit {
        return Err(OracleError::SearchSpaceTooLarge { size, limit });
    }
    let mut by_row: Vec<Vec<Cell>> = vec![Vec::new(); instance.rows()];
    for c in instance.sorted_cells() {
        by_row[c.row].push(c);
    }
    let mut search = Search {
        by_row: &by_row,
        supplies: supplies.iter().map(|&s| s as u64).collect(),
        remaining: caps.iter().map(|c| c.map(|c| c as u64)).collect(),
        chosen: Vec::new(),
    };
    Ok(search.row(0).then(|| {
        let mut w = Witness::default();
        for (cell, v) in search.chosen {
            if v > 0 {
                w.values.insert((cell.row, cell.col), v);
            }
        }
        w
    }))
}

struct Search<'a> {
    by_row: &'a [Vec<Cell>],
    supplies: Vec<u64>,
    remaining: Vec<Option<u64>>,
    chosen: Vec<(Cell, u64)>,
}

impl Search<'_> {
    fn row(&mut self, r: usize) -> bool {
        if r == self.by_row.len() {
            return true;
        }
        self.cell(r, 0, self.supplies[r])
    }

    fn cell(&mut self, r: usize, i: usize, left: u64) -> bool {
        let cells = &self.by_row[r];
        if i == cells.len() {
            return left == 0 && self.row(r + 1);
        }
        let cell = cells[i];
        let mut max = left;
        if let Limit::Finite(b) = cell.bound {
            max = max.min(b);
        }
        if let Some(cap) = self.remaining[cell.col] {
            max = max.min(cap);
        }
        for v in 0..=max {
            if let Some(cap) = self.remaining[cell.col].as_mut() {
                *cap -= v;
            }
            self.chosen.push((cell, v));
            if self.cell(r, i + 1, left - v) {
                return true;
            }
            self.chosen.pop();
            if let Some(cap) = self.remaining[cell.col].as_mut() {
                *cap += v;
            }
        }
        false
    }
}
