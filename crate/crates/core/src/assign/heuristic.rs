use std::cmp::Ordering;
use std::collections::VecDeque;

use super::{check_capacities, Algorithm, AssignmentOutcome, SortedColumns};
use crate::model::{AssignmentSet, SimilarityMatrix};

/// Scarcity-prioritised "parallel" assignment.
///
/// Runs `m` rounds; each round gives every paper at most one new reviewer:
///
/// 1. Columns are sorted best-first over reviewers that still have capacity
///    and are not yet assigned to the paper.
/// 2. A paper's scarcity is its number of such candidates.
/// 3. Every unplaced paper proposes to its best remaining candidate. A
///    reviewer holding more proposals than its remaining capacity rejects
///    the lowest-priority ones, which drop that candidate and propose again.
///    A paper is critical when its remaining candidates no longer exceed the
///    reviewers it still needs; critical papers outrank the rest (fewest
///    candidates first), otherwise higher weight wins, then scarcity, then
///    earlier paper.
/// 4. When no paper can move, papers still unplaced try to get in by
///    shifting placed papers to other candidates with spare capacity.
/// 5. All placements are committed at once.
///
/// Each candidate is rejected at most once, so the proposal loop costs
/// O(|P|·|R|) per round; the repair step searches once per unplaced paper.
/// A round places as many papers as any one-reviewer-per-paper assignment
/// could under the remaining capacities.
pub fn assign_heuristic(
    matrix: &SimilarityMatrix,
    m: usize,
    capacities: &[usize],
) -> AssignmentOutcome {
    check_capacities(matrix, capacities);
    let mut remaining = capacities.to_vec();
    let mut assignment = AssignmentSet::new();
    let mut rounds = 0;
    for _ in 0..m {
        let placed = propose_round(matrix, m, &remaining, &assignment);
        if placed.is_empty() {
            break;
        }
        rounds += 1;
        for (paper, reviewer) in placed {
            remaining[reviewer] -= 1;
            assignment
                .insert(matrix, paper, reviewer)
                .expect("round places fresh positive pairs");
        }
    }
    AssignmentOutcome::new(Algorithm::Heuristic, matrix, m, assignment, rounds)
}

/// One proposal/rejection round. Returns the `(paper, reviewer)` placements.
fn propose_round(
    matrix: &SimilarityMatrix,
    m: usize,
    remaining: &[usize],
    assigned: &AssignmentSet,
) -> Vec<(usize, usize)> {
    let columns =
        SortedColumns::filtered(matrix, |r, p| remaining[r] > 0 && !assigned.contains(p, r));
    let papers = matrix.num_papers();

    let mut next = vec![0usize; papers];
    let needed: Vec<usize> = assigned
        .paper_loads(papers)
        .iter()
        .map(|&l| m.saturating_sub(l).max(1))
        .collect();
    // Lower is more urgent.
    let priority = |next: &[usize], paper: usize, reviewer: usize, other: usize| -> Ordering {
        let left = |q: usize| columns.scarcity(q) - next[q];
        let critical = |q: usize| left(q) <= needed[q];
        critical(other)
            .cmp(&critical(paper))
            .then_with(|| {
                if critical(paper) && critical(other) {
                    left(paper).cmp(&left(other))
                } else {
                    Ordering::Equal
                }
            })
            .then(
                matrix
                    .weight(reviewer, other)
                    .total_cmp(&matrix.weight(reviewer, paper)),
            )
            .then(left(paper).cmp(&left(other)))
            .then(paper.cmp(&other))
    };

    let mut held: Vec<Vec<usize>> = vec![Vec::new(); matrix.num_reviewers()];
    let mut queue: VecDeque<usize> = (0..papers).filter(|&p| columns.scarcity(p) > 0).collect();

    while let Some(mut paper) = queue.pop_front() {
        while let Some(&(reviewer, _)) = columns.column(paper).get(next[paper]) {
            let holding = &mut held[reviewer];
            holding.push(paper);
            if holding.len() <= remaining[reviewer] {
                break;
            }
            let (worst_at, &worst) = holding
                .iter()
                .enumerate()
                .max_by(|a, b| priority(&next, *a.1, reviewer, *b.1))
                .expect("non-empty");
            holding.swap_remove(worst_at);
            next[worst] += 1;
            if worst != paper {
                // The displaced paper continues from its next candidate;
                // `paper` is now held.
                paper = worst;
            }
        }
    }

    let mut reviewer_of: Vec<Option<usize>> = vec![None; papers];
    let mut load = vec![0usize; matrix.num_reviewers()];
    for (r, ps) in held.iter().enumerate() {
        load[r] = ps.len();
        for &p in ps {
            reviewer_of[p] = Some(r);
        }
    }
    repair(&columns, remaining, &mut reviewer_of, &mut load);

    reviewer_of
        .into_iter()
        .enumerate()
        .filter_map(|(p, r)| r.map(|r| (p, r)))
        .collect()
}

/// Places papers the proposal loop left out by shifting placed papers along
/// alternating paths to reviewers with spare capacity. Placed papers stay
/// placed, so afterwards no paper with a candidate can be added without
/// dropping another.
fn repair(
    columns: &SortedColumns,
    remaining: &[usize],
    reviewer_of: &mut [Option<usize>],
    load: &mut [usize],
) {
    let papers = reviewer_of.len();
    let mut order: Vec<usize> = (0..papers)
        .filter(|&p| reviewer_of[p].is_none() && columns.scarcity(p) > 0)
        .collect();
    order.sort_by_key(|&p| (columns.scarcity(p), p));
    for start in order {
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); load.len()];
        for (p, r) in reviewer_of.iter().enumerate() {
            if let Some(r) = *r {
                holders[r].push(p);
            }
        }
        // parent[q] = (paper that wants q's reviewer, that reviewer)
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; papers];
        let mut seen = vec![false; papers];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut found = None;
        'search: while let Some(x) = queue.pop_front() {
            for &(r, _) in columns.column(x) {
                if reviewer_of[x] == Some(r) {
                    continue;
                }
                if load[r] < remaining[r] {
                    found = Some((x, r));
                    break 'search;
                }
                for &q in &holders[r] {
                    if !seen[q] {
                        seen[q] = true;
                        parent[q] = Some((x, r));
                        queue.push_back(q);
                    }
                }
            }
        }
        let Some((mut paper, mut reviewer)) = found else {
            continue;
        };
        load[reviewer] += 1;
        loop {
            reviewer_of[paper] = Some(reviewer);
            match parent[paper] {
                Some((prev, via)) => {
                    paper = prev;
                    reviewer = via;
                }
                None => break,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{figure2_matrix, greedy_trap_matrix};

    #[test]
    fn trap_instance_is_fully_covered() {
        let out = assign_heuristic(&greedy_trap_matrix(), 1, &[1, 1]);
        assert!(out.uncovered.is_empty());
        assert!((out.total_weight - 1.5).abs() < 1e-12);
        let pairs: Vec<_> = out
            .assignment
            .pairs()
            .iter()
            .map(|p| (p.paper, p.reviewer))
            .collect();
        assert_eq!(pairs, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn figure2_covers_every_paper() {
        let out = assign_heuristic(&figure2_matrix(), 1, &[1; 5]);
        assert!(out.uncovered.is_empty());
        assert_eq!(out.rounds, 1);
    }

    #[test]
    fn reviewer_keeps_the_scarcest_papers() {
        // r1 is the only candidate of p2 and p3; p1 can fall back to r2.
        let m = SimilarityMatrix::from_rows(
            vec!["r1".into(), "r2".into()],
            vec!["p1".into(), "p2".into(), "p3".into()],
            &[vec![0.9, 0.2, 0.3], vec![0.1, 0.0, 0.0]],
        )
        .unwrap();
        let out = assign_heuristic(&m, 1, &[2, 1]);
        let pairs: Vec<_> = out
            .assignment
            .pairs()
            .iter()
            .map(|p| (p.paper, p.reviewer))
            .collect();
        assert_eq!(pairs, vec![(0, 1), (1, 0), (2, 0)]);
    }

    #[test]
    fn multiple_rounds_use_distinct_reviewers() {
        let out = assign_heuristic(&figure2_matrix(), 3, &[5; 5]);
        for p in 0..5 {
            let mut revs: Vec<_> = out
                .assignment
                .pairs()
                .iter()
                .filter(|x| x.paper == p)
                .map(|x| x.reviewer)
                .collect();
            let n = revs.len();
            revs.dedup();
            assert_eq!(revs.len(), n);
            assert_eq!(n, 3);
        }
    }

    #[test]
    fn empty_rounds_stop_early() {
        let m = SimilarityMatrix::zeros(vec!["a".into()], vec!["p".into()]);
        let out = assign_heuristic(&m, 3, &[1]);
        assert_eq!(out.rounds, 0);
        assert_eq!(out.uncovered[0].missing, 3);
    }
}
