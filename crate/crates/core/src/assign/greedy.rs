use super::{check_capacities, Algorithm, AssignmentOutcome};
use crate::model::{AssignmentSet, SimilarityMatrix};

/// Sequential greedy baseline: papers are served one at a time in
/// `paper_order`, each taking its `m` best reviewers that still have capacity
/// and a positive weight.
pub fn assign_greedy(
    matrix: &SimilarityMatrix,
    m: usize,
    capacities: &[usize],
    paper_order: &[usize],
) -> AssignmentOutcome {
    check_capacities(matrix, capacities);
    debug_assert!({
        let mut sorted = paper_order.to_vec();
        sorted.sort_unstable();
        sorted == (0..matrix.num_papers()).collect::<Vec<_>>()
    });
    let mut remaining = capacities.to_vec();
    let mut assignment = AssignmentSet::new();
    for &paper in paper_order {
        let mut candidates: Vec<(usize, f64)> = (0..matrix.num_reviewers())
            .map(|r| (r, matrix.weight(r, paper)))
            .filter(|&(r, w)| w > 0.0 && remaining[r] > 0)
            .collect();
        candidates.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        for &(reviewer, _) in candidates.iter().take(m) {
            remaining[reviewer] -= 1;
            assignment
                .insert(matrix, paper, reviewer)
                .expect("distinct positive candidates");
        }
    }
    AssignmentOutcome::new(Algorithm::Greedy, matrix, m, assignment, paper_order.len())
}
