//! Named check cells executed in parallel with deterministic reports.
//!
//! A cell is an independent check with a stable key; the key both names the
//! cell in reports and seeds its random data. Reports list failures sorted
//! by key, so output does not depend on scheduling. The worker count is
//! taken from LIEW_WORKERS (0 or unset: one worker per core).

use rayon::prelude::*;
use serde::Serialize;

pub struct Cell {
    pub key: String,
    run: Box<dyn FnOnce() -> std::result::Result<(), String> + Send>,
}

impl Cell {
    pub fn new(
        key: impl Into<String>,
        run: impl FnOnce() -> std::result::Result<(), String> + Send + 'static,
    ) -> Self {
        Cell {
            key: key.into(),
            run: Box::new(run),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CellFailure {
    pub cell: String,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cells: usize,
    pub failures: Vec<CellFailure>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(mut self, other: SuiteReport) -> SuiteReport {
        self.cells += other.cells;
        self.failures.extend(other.failures);
        self
    }
}

/// Worker count requested through LIEW_WORKERS, when set and positive.
pub fn worker_count() -> Option<usize> {
    let text = std::env::var("LIEW_WORKERS").ok()?;
    match text.trim().parse::<usize>() {
        Ok(0) | Err(_) => None,
        Ok(n) => Some(n),
    }
}

fn execute(cells: Vec<Cell>) -> Vec<CellFailure> {
    cells
        .into_par_iter()
        .filter_map(|cell| {
            let key = cell.key;
            match (cell.run)() {
                Ok(()) => None,
                Err(witness) => Some(CellFailure { cell: key, witness }),
            }
        })
        .collect()
}

/// Run every cell and collect failures, sorted by cell key.
pub fn run_cells(suite: &str, mut cells: Vec<Cell>) -> SuiteReport {
    cells.sort_by(|a, b| a.key.cmp(&b.key));
    let count = cells.len();
    let mut failures = match worker_count() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(cells)),
            Err(_) => execute(cells),
        },
        None => execute(cells),
    };
    failures.sort_by(|a, b| a.cell.cmp(&b.cell));
    SuiteReport {
        suite: suite.into(),
        cells: count,
        failures,
    }
}

/// Shorthand for a cell body: Ok when `pass` holds, otherwise the witness.
pub fn check(pass: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if pass {
        Ok(())
    } else {
        Err(witness())
    }
}
