//! Assignment algorithms over a [`SimilarityMatrix`].
//!
//! Every algorithm returns an [`AssignmentOutcome`] whose pairs respect
//! reviewer capacities, give each paper at most `m` reviewers and never use a
//! zero-weight edge. Papers left short are reported, not filled at random.

mod brute;
mod greedy;
mod heuristic;
mod hungarian;

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::model::{weight_of_matching, AssignmentSet, SimilarityMatrix};

pub use brute::{brute_force_optimal, ORACLE_MAX_REVIEWERS, ORACLE_MAX_SLOTS};
pub use greedy::assign_greedy;
pub use heuristic::assign_heuristic;
pub use hungarian::{assign_hungarian, assign_hungarian_multipass, hungarian_pass, kuhn_munkres};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Maximum-weight capacitated matching.
    Hungarian,
    /// `m` successive one-per-paper Kuhn–Munkres passes.
    HungarianMultipass,
    Greedy,
    Heuristic,
    BruteForce,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Hungarian => "hungarian",
            Algorithm::HungarianMultipass => "hungarian-multipass",
            Algorithm::Greedy => "greedy",
            Algorithm::Heuristic => "heuristic",
            Algorithm::BruteForce => "brute-force",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "hungarian" => Ok(Algorithm::Hungarian),
            "hungarian-multipass" => Ok(Algorithm::HungarianMultipass),
            "greedy" => Ok(Algorithm::Greedy),
            "heuristic" => Ok(Algorithm::Heuristic),
            "brute-force" => Ok(Algorithm::BruteForce),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm {other:?}"
            ))),
        }
    }
}

/// A paper that received fewer than `m` reviewers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shortfall {
    pub paper: usize,
    pub missing: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentOutcome {
    pub algorithm: Algorithm,
    pub assignment: AssignmentSet,
    pub uncovered: Vec<Shortfall>,
    pub total_weight: f64,
    /// Passes, rounds or augmentations, depending on the algorithm.
    pub rounds: usize,
}

impl AssignmentOutcome {
    pub(crate) fn new(
        algorithm: Algorithm,
        matrix: &SimilarityMatrix,
        m: usize,
        mut assignment: AssignmentSet,
        rounds: usize,
    ) -> Self {
        assignment.sort();
        let uncovered = assignment
            .paper_loads(matrix.num_papers())
            .into_iter()
            .enumerate()
            .filter(|&(_, load)| load < m)
            .map(|(paper, load)| Shortfall {
                paper,
                missing: m - load,
            })
            .collect();
        let total_weight = weight_of_matching(&assignment);
        Self {
            algorithm,
            assignment,
            uncovered,
            total_weight,
            rounds,
        }
    }

    /// Papers with at least one reviewer.
    pub fn covered_papers(&self, papers: usize) -> usize {
        self.assignment
            .paper_loads(papers)
            .into_iter()
            .filter(|&l| l > 0)
            .count()
    }
}

/// Candidates of each paper, best first.
///
/// Each column lists `(reviewer, weight)` sorted by weight descending, ties
/// by reviewer position. Zero-weight edges are left out.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedColumns {
    columns: Vec<Vec<(usize, f64)>>,
}

impl SortedColumns {
    pub fn new(matrix: &SimilarityMatrix) -> Self {
        Self::filtered(matrix, |_, _| true)
    }

    /// Like [`SortedColumns::new`] but keeps only edges where
    /// `eligible(reviewer, paper)` holds.
    pub fn filtered(matrix: &SimilarityMatrix, eligible: impl Fn(usize, usize) -> bool) -> Self {
        let columns = (0..matrix.num_papers())
            .map(|p| {
                let mut col: Vec<(usize, f64)> = (0..matrix.num_reviewers())
                    .map(|r| (r, matrix.weight(r, p)))
                    .filter(|&(r, w)| w > 0.0 && eligible(r, p))
                    .collect();
                col.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
                col
            })
            .collect();
        Self { columns }
    }

    pub fn column(&self, paper: usize) -> &[(usize, f64)] {
        &self.columns[paper]
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Number of candidates of `paper`.
    pub fn scarcity(&self, paper: usize) -> usize {
        self.columns[paper].len()
    }
}

fn check_capacities(matrix: &SimilarityMatrix, capacities: &[usize]) {
    assert_eq!(
        capacities.len(),
        matrix.num_reviewers(),
        "one capacity per reviewer"
    );
}
