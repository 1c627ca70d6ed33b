use super::partition::Partition;
use crate::error::{resource, Result};

/// Largest biword length [`rsk`] will insert letter by letter.
pub const RSK_MAX_LETTERS: u64 = 100_000_000;

/// A Young tableau stored row by row.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("tableau rows are weakly decreasing")
    }

    /// Rows weakly increase, columns strictly increase, entries lie in `1..=max_entry`.
    pub fn is_semistandard(&self, max_entry: usize) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let entries_ok = self.rows.iter().flatten().all(|&v| (1..=max_entry).contains(&v));
        let shape_ok = self.rows.windows(2).all(|w| w[0].len() >= w[1].len());
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| below > above));
        rows_ok && entries_ok && shape_ok && cols_ok
    }
}

/// Row-inserts `x`; returns the row index where the tableau grew.
fn row_insert(rows: &mut Vec<Vec<usize>>, mut x: usize) -> usize {
    for (r, row) in rows.iter_mut().enumerate() {
        let pos = row.partition_point(|&y| y <= x);
        if pos == row.len() {
            row.push(x);
            return r;
        }
        x = std::mem::replace(&mut row[pos], x);
    }
    rows.push(vec![x]);
    rows.len() - 1
}

/// RSK correspondence for a non-negative integer matrix.
///
/// The biword lists `(i, j)` with multiplicity `w[i][j]` in row-major order;
/// column labels are row-inserted into `P` and row labels recorded in `Q`.
/// Labels are 1-based. The first row of the common shape equals the
/// last-passage value of `w` over up/right paths.
pub fn rsk(w: &[Vec<u64>]) -> Result<(Tableau, Tableau)> {
    let letters: u64 = w.iter().flatten().sum();
    if letters > RSK_MAX_LETTERS {
        return resource(format!("rsk inserts letters one at a time; total weight {letters} exceeds {RSK_MAX_LETTERS}"));
    }
    let mut p = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (i, row) in w.iter().enumerate() {
        for (j, &mult) in row.iter().enumerate() {
            for _ in 0..mult {
                let grew = row_insert(&mut p, j + 1);
                if grew == q.len() {
                    q.push(Vec::new());
                }
                q[grew].push(i + 1);
            }
        }
    }
    Ok((Tableau { rows: p }, Tableau { rows: q }))
}
