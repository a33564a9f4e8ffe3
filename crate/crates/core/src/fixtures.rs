//! Small reference instances used by tests, golden files and the benchmark.

use crate::model::SimilarityMatrix;

fn ids(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Rows of the 5 reviewers × 5 papers sample similarity matrix.
pub const FIGURE2_ROWS: [[f64; 5]; 5] = [
    [0.40, 0.54, 0.21, 0.27, 0.25],
    [0.20, 0.10, 0.14, 0.0, 0.0],
    [0.18, 0.20, 0.13, 0.0, 0.0],
    [0.17, 0.30, 0.25, 0.17, 0.14],
    [0.38, 0.42, 0.27, 0.22, 0.09],
];

/// The sample matrix with reviewers `r1..r5` and papers `p1..p5`.
pub fn figure2_matrix() -> SimilarityMatrix {
    let rows: Vec<Vec<f64>> = FIGURE2_ROWS.iter().map(|r| r.to_vec()).collect();
    SimilarityMatrix::from_rows(ids("r", 5), ids("p", 5), &rows).expect("valid fixture")
}

/// Two papers, two reviewers: `r1` suits both papers (0.9, 0.8) and `r2`
/// only `p1` (0.7). With capacity 1 each, serving `p1` first with its best
/// reviewer strands `p2`.
pub fn greedy_trap_matrix() -> SimilarityMatrix {
    SimilarityMatrix::from_rows(ids("r", 2), ids("p", 2), &[vec![0.9, 0.8], vec![0.7, 0.0]])
        .expect("valid fixture")
}
