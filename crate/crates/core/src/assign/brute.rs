use super::{check_capacities, Algorithm, AssignmentOutcome};
use crate::error::{Error, Result};
use crate::model::{AssignmentSet, SimilarityMatrix};

/// Largest `papers × m` the exhaustive search accepts.
pub const ORACLE_MAX_SLOTS: usize = 10;
/// Largest reviewer count the exhaustive search accepts.
pub const ORACLE_MAX_REVIEWERS: usize = 8;

/// Exact maximum-weight assignment by enumeration, for checking the other
/// algorithms on small instances.
///
/// Every paper tries every subset of at most `m` positive-weight reviewers
/// that still have capacity. Branches that cannot beat the best total found
/// so far, even if each remaining paper got its `m` best edges, are cut.
/// Among equal totals the first one enumerated wins.
pub fn brute_force_optimal(
    matrix: &SimilarityMatrix,
    m: usize,
    capacities: &[usize],
) -> Result<AssignmentOutcome> {
    check_capacities(matrix, capacities);
    let (papers, reviewers) = (matrix.num_papers(), matrix.num_reviewers());
    if papers * m > ORACLE_MAX_SLOTS || reviewers > ORACLE_MAX_REVIEWERS {
        return Err(Error::TooLargeForOracle {
            papers,
            reviewers,
            m,
        });
    }

    // bound[p] = best conceivable weight of papers p.. ignoring capacities
    let mut bound = vec![0.0; papers + 1];
    for p in (0..papers).rev() {
        let mut ws: Vec<f64> = (0..reviewers).map(|r| matrix.weight(r, p)).collect();
        ws.sort_by(|a, b| b.total_cmp(a));
        bound[p] = bound[p + 1] + ws.iter().take(m).sum::<f64>();
    }

    let mut search = Search {
        matrix,
        m,
        bound,
        remaining: capacities.to_vec(),
        current: Vec::new(),
        best: Vec::new(),
        best_weight: 0.0,
    };
    search.paper(0, 0.0);

    let assignment = AssignmentSet::from_pairs(matrix, search.best.iter().copied())
        .expect("search emits positive, distinct pairs");
    Ok(AssignmentOutcome::new(
        Algorithm::BruteForce,
        matrix,
        m,
        assignment,
        1,
    ))
}

struct Search<'a> {
    matrix: &'a SimilarityMatrix,
    m: usize,
    bound: Vec<f64>,
    remaining: Vec<usize>,
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
    best_weight: f64,
}

impl Search<'_> {
    fn paper(&mut self, paper: usize, weight: f64) {
        if paper == self.matrix.num_papers() {
            if weight > self.best_weight {
                self.best_weight = weight;
                self.best = self.current.clone();
            }
            return;
        }
        if weight + self.bound[paper] <= self.best_weight {
            return;
        }
        self.subsets(paper, 0, self.m, weight);
    }

    /// Chooses reviewers for `paper` from position `from` onward, with
    /// `left` picks still allowed.
    fn subsets(&mut self, paper: usize, from: usize, left: usize, weight: f64) {
        // Taking no further reviewer for this paper.
        self.paper(paper + 1, weight);
        if left == 0 {
            return;
        }
        for r in from..self.matrix.num_reviewers() {
            let w = self.matrix.weight(r, paper);
            if w <= 0.0 || self.remaining[r] == 0 {
                continue;
            }
            self.remaining[r] -= 1;
            self.current.push((paper, r));
            self.subsets(paper, r + 1, left - 1, weight + w);
            self.current.pop();
            self.remaining[r] += 1;
        }
    }
}
