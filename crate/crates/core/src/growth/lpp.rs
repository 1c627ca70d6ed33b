use rayon::prelude::*;

use super::rng::{geometric_unchecked, SeededStream};
use crate::error::{domain, precondition, Result};

/// An `M x N` array of non-negative integer site weights `w(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LppGrid {
    w: Vec<Vec<u64>>,
    /// Geometric parameter when sampled, `None` for explicit weights.
    q: Option<u64>,
}

impl LppGrid {
    /// Explicit weights; rows are indexed by `i`, columns by `j`.
    pub fn from_weights(w: Vec<Vec<u64>>) -> Result<Self> {
        let cols = w.first().map_or(0, Vec::len);
        if w.is_empty() || cols == 0 {
            return precondition("LPP grid must have at least one row and one column");
        }
        if w.iter().any(|r| r.len() != cols) {
            return precondition("LPP grid rows must have equal length");
        }
        Ok(Self { w, q: None })
    }

    /// i.i.d. geometric(q) weights drawn row by row from `rng`.
    pub fn sample(m: usize, n: usize, q: f64, rng: &mut SeededStream) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return domain(format!("geometric parameter must lie in (0, 1), got {q}"));
        }
        if m == 0 || n == 0 {
            return precondition("LPP grid must have at least one row and one column");
        }
        let ln_q = q.ln();
        let w = (0..m).map(|_| (0..n).map(|_| geometric_unchecked(ln_q, rng)).collect()).collect();
        Ok(Self { w, q: Some(q.to_bits()) })
    }

    pub fn m(&self) -> usize {
        self.w.len()
    }

    pub fn n(&self) -> usize {
        self.w[0].len()
    }

    pub fn q(&self) -> Option<f64> {
        self.q.map(f64::from_bits)
    }

    pub fn weights(&self) -> &[Vec<u64>] {
        &self.w
    }

    /// `w(i, j)` with 1-based indices.
    pub fn weight(&self, i: usize, j: usize) -> u64 {
        self.w[i - 1][j - 1]
    }
}

/// Full table of `G(i, j)`, 0-based: entry `[i-1][j-1]` is `G(i, j)`.
pub fn lpp_table(grid: &LppGrid) -> Vec<Vec<u64>> {
    let (m, n) = (grid.m(), grid.n());
    let mut g = vec![vec![0u64; n]; m];
    for i in 0..m {
        for j in 0..n {
            let up = if i > 0 { g[i - 1][j] } else { 0 };
            let left = if j > 0 { g[i][j - 1] } else { 0 };
            g[i][j] = up.max(left) + grid.w[i][j];
        }
    }
    g
}

/// `G(M, N)` by the row-by-row recursion, keeping one row of state.
pub fn lpp_value(grid: &LppGrid) -> u64 {
    let mut row = vec![0u64; grid.n()];
    for w_row in &grid.w {
        let mut left = 0u64;
        for (g, &w) in row.iter_mut().zip(w_row) {
            left = left.max(*g) + w;
            *g = left;
        }
    }
    row[row.len() - 1]
}

/// `samples` independent `G(M, N)` values at parameter `q`; sample `s`
/// uses stream `base + s`.
pub fn lpp_batch(m: usize, n: usize, q: f64, seed: u64, base: u64, samples: usize) -> Result<Vec<u64>> {
    (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let mut rng = SeededStream::new(seed, base + s);
            LppGrid::sample(m, n, q, &mut rng).map(|g| lpp_value(&g))
        })
        .collect()
}

/// Up/right lattice path from `(1, 1)` to `(M, N)`, 1-based cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpRightPath {
    cells: Vec<(usize, usize)>,
}

impl UpRightPath {
    pub fn new(cells: Vec<(usize, usize)>) -> Result<Self> {
        if cells.first() != Some(&(1, 1)) {
            return precondition("path must start at (1, 1)");
        }
        for w in cells.windows(2) {
            let (a, b) = (w[0], w[1]);
            if (b.0, b.1) != (a.0 + 1, a.1) && (b.0, b.1) != (a.0, a.1 + 1) {
                return precondition(format!("path step {a:?} -> {b:?} is not up/right"));
            }
        }
        Ok(Self { cells })
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn end(&self) -> (usize, usize) {
        *self.cells.last().expect("paths are non-empty")
    }

    pub fn weight(&self, grid: &LppGrid) -> u64 {
        self.cells.iter().map(|&(i, j)| grid.weight(i, j)).sum()
    }
}

/// A path attaining `G(M, N)`. Backtracking from `(M, N)` steps to the larger
/// of `G(i-1, j)` and `G(i, j-1)`, preferring `(i-1, j)` on ties.
pub fn lpp_maximal_path(grid: &LppGrid) -> UpRightPath {
    let g = lpp_table(grid);
    let (mut i, mut j) = (grid.m(), grid.n());
    let mut cells = vec![(i, j)];
    while (i, j) != (1, 1) {
        if j == 1 || (i > 1 && g[i - 2][j - 1] >= g[i - 1][j - 2]) {
            i -= 1;
        } else {
            j -= 1;
        }
        cells.push((i, j));
    }
    cells.reverse();
    UpRightPath { cells }
}

/// `max |i - j|` along a path ending on the diagonal.
pub fn transversal_deviation(path: &UpRightPath) -> Result<usize> {
    let (m, n) = path.end();
    if m != n {
        return precondition(format!("transversal deviation needs a square grid, path ends at ({m}, {n})"));
    }
    Ok(path.cells.iter().map(|&(i, j)| i.abs_diff(j)).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(w: &[&[u64]]) -> LppGrid {
        LppGrid::from_weights(w.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Maximum over every up/right path, by recursion.
    fn best_over_all_paths(w: &[Vec<u64>], i: usize, j: usize) -> u64 {
        let here = w[i][j];
        let (m, n) = (w.len(), w[0].len());
        let down = if i + 1 < m { Some(best_over_all_paths(w, i + 1, j)) } else { None };
        let right = if j + 1 < n { Some(best_over_all_paths(w, i, j + 1)) } else { None };
        here + down.into_iter().chain(right).max().unwrap_or(0)
    }

    fn count_paths(m: usize, n: usize) -> usize {
        if m == 1 || n == 1 {
            1
        } else {
            count_paths(m - 1, n) + count_paths(m, n - 1)
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(lpp_value(&grid(&[&[5]])), 5);
        let g = grid(&[&[1, 2], &[3, 4]]);
        assert_eq!(lpp_value(&g), 8);
        let path = lpp_maximal_path(&g);
        assert_eq!(path.cells(), &[(1, 1), (2, 1), (2, 2)]);
        assert_eq!(path.weight(&g), 8);
    }

    #[test]
    fn single_row_path_is_horizontal() {
        let g = grid(&[&[1, 0, 4, 2]]);
        let path = lpp_maximal_path(&g);
        assert_eq!(path.cells(), &[(1, 1), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(lpp_value(&g), 7);
    }

    #[test]
    fn ties_prefer_decreasing_row() {
        let g = LppGrid::from_weights(vec![vec![0; 3]; 3]).unwrap();
        let path = lpp_maximal_path(&g);
        assert_eq!(path.cells(), &[(1, 1), (1, 2), (1, 3), (2, 3), (3, 3)]);
        assert_eq!(transversal_deviation(&path).unwrap(), 2);
    }

    #[test]
    fn random_grid_matches_exhaustive_paths() {
        assert_eq!(count_paths(5, 5), 70);
        for seed in 0..20 {
            let mut rng = SeededStream::new(seed, 0);
            let g = LppGrid::sample(5, 5, 0.6, &mut rng).unwrap();
            let best = best_over_all_paths(g.weights(), 0, 0);
            assert_eq!(lpp_value(&g), best);
            assert_eq!(lpp_maximal_path(&g).weight(&g), best);
            assert_eq!(lpp_table(&g)[4][4], best);
        }
    }

    #[test]
    fn transversal_examples() {
        let diag = UpRightPath::new(vec![(1, 1), (2, 1), (2, 2)]).unwrap();
        assert!(transversal_deviation(&diag).unwrap() <= 1);
        let n = 6;
        let mut cells: Vec<(usize, usize)> = (1..=n).map(|j| (1, j)).collect();
        cells.extend((2..=n).map(|i| (i, n)));
        let corner = UpRightPath::new(cells).unwrap();
        assert_eq!(transversal_deviation(&corner).unwrap(), n - 1);
        let wide = UpRightPath::new(vec![(1, 1), (1, 2)]).unwrap();
        assert!(transversal_deviation(&wide).is_err());
        assert!(UpRightPath::new(vec![(1, 1), (2, 2)]).is_err());
    }

    #[test]
    fn sampling_is_reproducible_and_validated() {
        let a = LppGrid::sample(4, 3, 0.3, &mut SeededStream::new(9, 1)).unwrap();
        let b = LppGrid::sample(4, 3, 0.3, &mut SeededStream::new(9, 1)).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.m(), a.n(), a.q()), (4, 3, Some(0.3)));
        assert!(LppGrid::sample(2, 2, 1.0, &mut SeededStream::new(0, 0)).is_err());
        assert!(LppGrid::from_weights(vec![vec![1, 2], vec![3]]).is_err());
        assert!(LppGrid::from_weights(vec![]).is_err());
    }

    #[test]
    fn batch_is_independent_of_thread_count() {
        let reference: Vec<u64> = (0..64)
            .map(|s| lpp_value(&LppGrid::sample(10, 10, 0.4, &mut SeededStream::new(3, 100 + s)).unwrap()))
            .collect();
        for threads in [1, 2, 5] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let got = pool.install(|| lpp_batch(10, 10, 0.4, 3, 100, 64).unwrap());
            assert_eq!(got, reference);
        }
    }

    fn sampled(seed: u64, m: usize, n: usize) -> LppGrid {
        LppGrid::sample(m, n, 0.5, &mut SeededStream::new(seed, 0)).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn raising_a_weight_never_lowers_g(
            seed in 0u64..1000, m in 1usize..8, n in 1usize..8, bump in 0u64..5,
            pick in (0usize..64, 0usize..64),
        ) {
            let g = sampled(seed, m, n);
            let mut w = g.weights().to_vec();
            w[pick.0 % m][pick.1 % n] += bump;
            let raised = LppGrid::from_weights(w).unwrap();
            prop_assert!(lpp_value(&raised) >= lpp_value(&g));
        }

        #[test]
        fn superadditive_along_the_diagonal(seed in 0u64..1000, size in 2usize..10, k in 1usize..9) {
            prop_assume!(k < size);
            let g = sampled(seed, size, size);
            let w = g.weights();
            let head: Vec<Vec<u64>> = w[..k].iter().map(|r| r[..k].to_vec()).collect();
            let tail: Vec<Vec<u64>> = w[k..].iter().map(|r| r[k..].to_vec()).collect();
            let split = lpp_value(&LppGrid::from_weights(head).unwrap())
                + lpp_value(&LppGrid::from_weights(tail).unwrap());
            prop_assert!(lpp_value(&g) >= split);
        }
    }
}
