//! Dinic max-flow on the source → rows → columns → sink network.

use std::collections::VecDeque;

use crate::error::SolverError;
use crate::solver::transport::{Certificate, Limit, SolveOutcome, TransportInstance, Witness};

struct Edge {
    to: usize,
    cap: u64,
}

struct Graph {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Graph {
    fn new(n: usize) -> Self {
        Graph {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            next: vec![0; n],
        }
    }

    /// Returns the index of the forward edge; its reverse is `index ^ 1`.
    fn add(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap });
        self.adj[from].push(id);
        self.edges.push(Edge { to: from, cap: 0 });
        self.adj[to].push(id + 1);
        id
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: u64) -> u64 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.adj[u].len() {
            let id = self.adj[u][self.next[u]];
            let (to, cap) = (self.edges[id].to, self.edges[id].cap);
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.edges[id].cap -= got;
                    self.edges[id ^ 1].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|n| *n = 0);
            loop {
                let f = self.dfs(s, t, u64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }
}

/// Decides whether the instance admits an integral assignment.
///
/// Feasible outcomes carry the flow as witness. Infeasible outcomes carry
/// either an over-committed margin or the row side of a minimum cut.
/// Edges are inserted in `(row, col)` order, so results are deterministic.
pub fn solve(instance: &TransportInstance) -> Result<SolveOutcome, SolverError> {
    instance.validate()?;
    let supplies = instance.effective_supplies();
    let caps = instance.effective_capacities();
    if let Some(row) = supplies.iter().position(|&s| s < 0) {
        return Ok(SolveOutcome::Infeasible {
            certificate: Certificate::OvercommittedRow {
                row,
                excess: (-supplies[row]) as u64,
            },
        });
    }
    if let Some(col) = caps.iter().position(|c| c.is_some_and(|c| c < 0)) {
        return Ok(SolveOutcome::Infeasible {
            certificate: Certificate::OvercommittedColumn {
                col,
                deficit: (-caps[col].unwrap()) as u64,
            },
        });
    }
    let supplies: Vec<u64> = supplies.into_iter().map(|s| s as u64).collect();
    let total: u64 = supplies.iter().sum();
    if total == 0 {
        return Ok(SolveOutcome::Feasible {
            witness: Witness::default(),
        });
    }
    let rows = instance.rows();
    let cols = instance.cols();
    let (s, t) = (0, rows + cols + 1);
    let mut g = Graph::new(rows + cols + 2);
    for (r, &supply) in supplies.iter().enumerate() {
        g.add(s, 1 + r, supply);
    }
    let cells = instance.sorted_cells();
    let cell_edges: Vec<usize> = cells
        .iter()
        .map(|c| {
            let cap = match c.bound {
                Limit::Finite(b) => b.min(total),
                Limit::Unbounded => total,
            };
            g.add(1 + c.row, 1 + rows + c.col, cap)
        })
        .collect();
    for (c, cap) in caps.iter().enumerate() {
        let cap = cap.map_or(total, |v| (v as u64).min(total));
        g.add(1 + rows + c, t, cap);
    }

    let flow = g.max_flow(s, t);
    if flow == total {
        let mut witness = Witness::default();
        for (cell, &id) in cells.iter().zip(&cell_edges) {
            let used = g.edges[id ^ 1].cap;
            if used > 0 {
                witness.values.insert((cell.row, cell.col), used);
            }
        }
        return Ok(SolveOutcome::Feasible { witness });
    }

    let seen = g.reachable(s);
    let row_set: Vec<usize> = (0..rows).filter(|&r| seen[1 + r]).collect();
    let mut inflow: Vec<Option<u64>> = vec![None; cols];
    for c in &cells {
        if !seen[1 + c.row] {
            continue;
        }
        let add = match c.bound {
            Limit::Finite(b) => b,
            Limit::Unbounded => u64::MAX,
        };
        let slot = inflow[c.col].get_or_insert(0);
        *slot = slot.saturating_add(add);
    }
    let mut col_set = Vec::new();
    let mut absorbable: u64 = 0;
    for (c, bound_sum) in inflow.iter().enumerate() {
        let Some(bound_sum) = *bound_sum else { continue };
        col_set.push(c);
        let cap = caps[c].map_or(u64::MAX, |v| v as u64);
        absorbable = absorbable.saturating_add(cap.min(bound_sum));
    }
    let demand: u64 = row_set.iter().map(|&r| supplies[r]).sum();
    debug_assert!(demand > absorbable, "min cut must expose a deficient row set");
    Ok(SolveOutcome::Infeasible {
        certificate: Certificate::Hall {
            rows: row_set,
            cols: col_set,
            demand,
            absorbable,
        },
    })
}
