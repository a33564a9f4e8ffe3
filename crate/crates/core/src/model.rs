//! Domain types shared by every part of the engine: the topic vocabulary,
//! paper and reviewer descriptors, the similarity matrix and the matching.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of reviewers each paper should receive.
pub const DEFAULT_REVIEWERS_PER_PAPER: usize = 3;

pub type TopicId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topic {
    pub id: TopicId,
    pub label: String,
}

/// The ordered list of conference topics that every descriptor indexes into.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TopicVocabulary {
    topics: Vec<Topic>,
}

impl TopicVocabulary {
    /// Builds a vocabulary from labels; ids are assigned contiguously from 0.
    pub fn from_labels<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let topics = labels
            .into_iter()
            .enumerate()
            .map(|(id, label)| Topic {
                id,
                label: label.into(),
            })
            .collect();
        Self { topics }
    }

    /// Wraps explicit `(id, label)` records as read from a file. No checks are
    /// made here; [`validate_dataset`] reports id and label problems.
    pub fn from_topics(topics: Vec<Topic>) -> Self {
        Self { topics }
    }

    pub fn topics(&self) -> &[Topic] {
        &self.topics
    }

    pub fn len(&self) -> usize {
        self.topics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.topics.is_empty()
    }

    pub fn contains(&self, id: TopicId) -> bool {
        self.topics.iter().any(|t| t.id == id)
    }
}

/// Topics selected by an author or a reviewer, each with a weight in `[0, 1]`.
///
/// Zero weights are dropped on construction so that absence and weight 0 have
/// one representation. A binary selection stores weight 1 everywhere.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TopicSelection {
    entries: BTreeMap<TopicId, f64>,
}

impl TopicSelection {
    pub fn new<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (TopicId, f64)>,
    {
        let entries = entries.into_iter().filter(|&(_, w)| w != 0.0).collect();
        Self { entries }
    }

    pub fn binary<I>(topics: I) -> Self
    where
        I: IntoIterator<Item = TopicId>,
    {
        Self::new(topics.into_iter().map(|t| (t, 1.0)))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn weight(&self, topic: TopicId) -> Option<f64> {
        self.entries.get(&topic).copied()
    }

    pub fn contains(&self, topic: TopicId) -> bool {
        self.entries.contains_key(&topic)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.entries.values().all(|&w| w == 1.0)
    }

    /// Iterates `(topic, weight)` in ascending topic order.
    pub fn iter(&self) -> impl Iterator<Item = (TopicId, f64)> + '_ {
        self.entries.iter().map(|(&t, &w)| (t, w))
    }

    pub fn topics(&self) -> impl Iterator<Item = TopicId> + '_ {
        self.entries.keys().copied()
    }

    /// Same support with every weight set to 1.
    pub fn to_binary(&self) -> Self {
        Self::binary(self.topics())
    }
}

impl FromIterator<(TopicId, f64)> for TopicSelection {
    fn from_iter<T: IntoIterator<Item = (TopicId, f64)>>(iter: T) -> Self {
        Self::new(iter)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaperDescriptor {
    pub id: String,
    pub topics: TopicSelection,
}

impl PaperDescriptor {
    pub fn new(id: impl Into<String>, topics: TopicSelection) -> Self {
        Self {
            id: id.into(),
            topics,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReviewerDescriptor {
    pub id: String,
    pub topics: TopicSelection,
    /// Maximum number of papers this reviewer may receive.
    pub capacity: usize,
    /// Paper ids this reviewer must never be assigned.
    pub conflicts: BTreeSet<String>,
}

impl ReviewerDescriptor {
    pub fn new(id: impl Into<String>, topics: TopicSelection, capacity: usize) -> Self {
        Self {
            id: id.into(),
            topics,
            capacity,
            conflicts: BTreeSet::new(),
        }
    }

    pub fn with_conflicts<I, S>(mut self, papers: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.conflicts.extend(papers.into_iter().map(Into::into));
        self
    }
}

/// A complete assignment problem: vocabulary, papers and reviewers.
///
/// Papers and reviewers are addressed by their position; lookups by id go
/// through indices built at construction. Conflicts naming unknown papers are
/// kept as-is and reported by [`validate_dataset`].
#[derive(Debug, Clone)]
pub struct Dataset {
    vocabulary: TopicVocabulary,
    papers: Vec<PaperDescriptor>,
    reviewers: Vec<ReviewerDescriptor>,
    paper_index: HashMap<String, usize>,
    reviewer_index: HashMap<String, usize>,
    conflicts: Vec<BTreeSet<usize>>,
}

impl Dataset {
    pub fn new(
        vocabulary: TopicVocabulary,
        papers: Vec<PaperDescriptor>,
        reviewers: Vec<ReviewerDescriptor>,
    ) -> Self {
        let mut paper_index = HashMap::with_capacity(papers.len());
        for (i, p) in papers.iter().enumerate() {
            paper_index.entry(p.id.clone()).or_insert(i);
        }
        let mut reviewer_index = HashMap::with_capacity(reviewers.len());
        for (i, r) in reviewers.iter().enumerate() {
            reviewer_index.entry(r.id.clone()).or_insert(i);
        }
        let conflicts = reviewers
            .iter()
            .map(|r| {
                r.conflicts
                    .iter()
                    .filter_map(|id| paper_index.get(id).copied())
                    .collect()
            })
            .collect();
        Self {
            vocabulary,
            papers,
            reviewers,
            paper_index,
            reviewer_index,
            conflicts,
        }
    }

    pub fn vocabulary(&self) -> &TopicVocabulary {
        &self.vocabulary
    }

    pub fn papers(&self) -> &[PaperDescriptor] {
        &self.papers
    }

    pub fn reviewers(&self) -> &[ReviewerDescriptor] {
        &self.reviewers
    }

    pub fn paper(&self, index: usize) -> &PaperDescriptor {
        &self.papers[index]
    }

    pub fn reviewer(&self, index: usize) -> &ReviewerDescriptor {
        &self.reviewers[index]
    }

    pub fn paper_index(&self, id: &str) -> Option<usize> {
        self.paper_index.get(id).copied()
    }

    pub fn reviewer_index(&self, id: &str) -> Option<usize> {
        self.reviewer_index.get(id).copied()
    }

    pub fn is_conflict(&self, reviewer: usize, paper: usize) -> bool {
        self.conflicts[reviewer].contains(&paper)
    }

    pub fn capacities(&self) -> Vec<usize> {
        self.reviewers.iter().map(|r| r.capacity).collect()
    }

    pub fn paper_ids(&self) -> Vec<String> {
        self.papers.iter().map(|p| p.id.clone()).collect()
    }

    pub fn reviewer_ids(&self) -> Vec<String> {
        self.reviewers.iter().map(|r| r.id.clone()).collect()
    }
}

/// A single problem found by [`validate_dataset`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    TopicIdNotContiguous {
        position: usize,
        id: TopicId,
    },
    EmptyTopicLabel {
        id: TopicId,
    },
    DuplicateTopicLabel {
        label: String,
    },
    DuplicatePaperId {
        id: String,
    },
    DuplicateReviewerId {
        id: String,
    },
    UnknownTopic {
        owner: String,
        topic: TopicId,
    },
    WeightOutOfRange {
        owner: String,
        topic: TopicId,
        weight: f64,
    },
    ZeroCapacity {
        reviewer: String,
    },
    UnknownConflict {
        reviewer: String,
        paper: String,
    },
    InvalidReviewersPerPaper,
    CapacityInfeasible {
        total: usize,
        required: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TopicIdNotContiguous { position, id } => {
                write!(f, "topic at position {position} has id {id}")
            }
            Violation::EmptyTopicLabel { id } => write!(f, "topic {id} has an empty label"),
            Violation::DuplicateTopicLabel { label } => {
                write!(f, "topic label {label:?} appears more than once")
            }
            Violation::DuplicatePaperId { id } => write!(f, "duplicate paper id {id:?}"),
            Violation::DuplicateReviewerId { id } => write!(f, "duplicate reviewer id {id:?}"),
            Violation::UnknownTopic { owner, topic } => {
                write!(f, "{owner} selects unknown topic {topic}")
            }
            Violation::WeightOutOfRange {
                owner,
                topic,
                weight,
            } => write!(
                f,
                "{owner} gives topic {topic} weight {weight} outside [0, 1]"
            ),
            Violation::ZeroCapacity { reviewer } => {
                write!(f, "reviewer {reviewer:?} has capacity 0")
            }
            Violation::UnknownConflict { reviewer, paper } => {
                write!(
                    f,
                    "reviewer {reviewer:?} lists conflict with unknown paper {paper:?}"
                )
            }
            Violation::InvalidReviewersPerPaper => {
                write!(f, "reviewers per paper must be at least 1")
            }
            Violation::CapacityInfeasible { total, required } => {
                write!(f, "Σ capacities {total} < {required}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when the only problems are capacity shortfalls, which still allow
    /// a partial assignment.
    pub fn only_infeasible(&self) -> bool {
        self.violations
            .iter()
            .all(|v| matches!(v, Violation::CapacityInfeasible { .. }))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "dataset ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks a dataset and lists every violation found. Never aborts.
pub fn validate_dataset(dataset: &Dataset, reviewers_per_paper: usize) -> ValidationReport {
    let mut violations = Vec::new();

    let mut labels = BTreeSet::new();
    for (position, topic) in dataset.vocabulary.topics.iter().enumerate() {
        if topic.id != position {
            violations.push(Violation::TopicIdNotContiguous {
                position,
                id: topic.id,
            });
        }
        if topic.label.trim().is_empty() {
            violations.push(Violation::EmptyTopicLabel { id: topic.id });
        } else if !labels.insert(topic.label.as_str()) {
            violations.push(Violation::DuplicateTopicLabel {
                label: topic.label.clone(),
            });
        }
    }

    let mut check_selection = |owner: String, selection: &TopicSelection| {
        for (topic, weight) in selection.iter() {
            if !dataset.vocabulary.contains(topic) {
                violations.push(Violation::UnknownTopic {
                    owner: owner.clone(),
                    topic,
                });
            }
            if !(0.0..=1.0).contains(&weight) {
                violations.push(Violation::WeightOutOfRange {
                    owner: owner.clone(),
                    topic,
                    weight,
                });
            }
        }
    };
    for p in &dataset.papers {
        check_selection(format!("paper {:?}", p.id), &p.topics);
    }
    for r in &dataset.reviewers {
        check_selection(format!("reviewer {:?}", r.id), &r.topics);
    }

    let mut seen = BTreeSet::new();
    for p in &dataset.papers {
        if !seen.insert(p.id.as_str()) {
            violations.push(Violation::DuplicatePaperId { id: p.id.clone() });
        }
    }
    let mut seen = BTreeSet::new();
    for r in &dataset.reviewers {
        if !seen.insert(r.id.as_str()) {
            violations.push(Violation::DuplicateReviewerId { id: r.id.clone() });
        }
        if r.capacity == 0 {
            violations.push(Violation::ZeroCapacity {
                reviewer: r.id.clone(),
            });
        }
        for c in &r.conflicts {
            if dataset.paper_index(c).is_none() {
                violations.push(Violation::UnknownConflict {
                    reviewer: r.id.clone(),
                    paper: c.clone(),
                });
            }
        }
    }

    if reviewers_per_paper == 0 {
        violations.push(Violation::InvalidReviewersPerPaper);
    }
    let total: usize = dataset.reviewers.iter().map(|r| r.capacity).sum();
    let required = reviewers_per_paper * dataset.papers.len();
    if total < required {
        violations.push(Violation::CapacityInfeasible { total, required });
    }

    ValidationReport { violations }
}

/// Dense reviewers × papers table of edge weights, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    reviewers: Vec<String>,
    papers: Vec<String>,
    weights: Vec<f64>,
}

impl SimilarityMatrix {
    /// Builds a matrix from row-major weights (one row per reviewer).
    pub fn new(reviewers: Vec<String>, papers: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != reviewers.len() * papers.len() {
            return Err(Error::Shape {
                expected: reviewers.len() * papers.len(),
                found: weights.len(),
            });
        }
        for (i, &w) in weights.iter().enumerate() {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::WeightOutOfRange {
                    reviewer: reviewers[i / papers.len()].clone(),
                    paper: papers[i % papers.len()].clone(),
                    weight: w,
                });
            }
        }
        Ok(Self {
            reviewers,
            papers,
            weights,
        })
    }

    pub fn from_rows(
        reviewers: Vec<String>,
        papers: Vec<String>,
        rows: &[Vec<f64>],
    ) -> Result<Self> {
        if rows.len() != reviewers.len() || rows.iter().any(|r| r.len() != papers.len()) {
            return Err(Error::Shape {
                expected: reviewers.len() * papers.len(),
                found: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(reviewers, papers, rows.concat())
    }

    pub fn zeros(reviewers: Vec<String>, papers: Vec<String>) -> Self {
        let weights = vec![0.0; reviewers.len() * papers.len()];
        Self {
            reviewers,
            papers,
            weights,
        }
    }

    pub fn reviewer_ids(&self) -> &[String] {
        &self.reviewers
    }

    pub fn paper_ids(&self) -> &[String] {
        &self.papers
    }

    pub fn num_reviewers(&self) -> usize {
        self.reviewers.len()
    }

    pub fn num_papers(&self) -> usize {
        self.papers.len()
    }

    #[inline]
    pub fn weight(&self, reviewer: usize, paper: usize) -> f64 {
        self.weights[reviewer * self.papers.len() + paper]
    }

    pub fn row(&self, reviewer: usize) -> &[f64] {
        let n = self.papers.len();
        &self.weights[reviewer * n..(reviewer + 1) * n]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of reviewers with a positive weight for `paper`.
    pub fn candidate_count(&self, paper: usize) -> usize {
        (0..self.reviewers.len())
            .filter(|&r| self.weight(r, paper) > 0.0)
            .count()
    }

    /// Forces every conflict edge of `dataset` to weight 0. Rows and columns
    /// are matched by id; ids missing from the dataset are left untouched.
    pub fn zero_conflicts(&mut self, dataset: &Dataset) {
        let cols: Vec<Option<usize>> = self.papers.iter().map(|p| dataset.paper_index(p)).collect();
        let n = self.papers.len();
        for (r, id) in self.reviewers.iter().enumerate() {
            let Some(dr) = dataset.reviewer_index(id) else {
                continue;
            };
            for (p, dp) in cols.iter().enumerate() {
                if let Some(dp) = *dp {
                    if dataset.is_conflict(dr, dp) {
                        self.weights[r * n + p] = 0.0;
                    }
                }
            }
        }
    }
}

/// One (paper, reviewer) edge of a matching, by matrix position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssignedPair {
    pub paper: usize,
    pub reviewer: usize,
    pub weight: f64,
}

/// The matching: the set of all (paper, reviewer) assignments.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AssignmentSet {
    pairs: Vec<AssignedPair>,
}

impl AssignmentSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a set from `(paper, reviewer)` positions, copying weights from
    /// the matrix. Rejects duplicate and zero-weight pairs.
    pub fn from_pairs<I>(matrix: &SimilarityMatrix, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = Self::new();
        for (paper, reviewer) in pairs {
            set.insert(matrix, paper, reviewer)?;
        }
        Ok(set)
    }

    pub fn insert(
        &mut self,
        matrix: &SimilarityMatrix,
        paper: usize,
        reviewer: usize,
    ) -> Result<()> {
        let weight = matrix.weight(reviewer, paper);
        if weight <= 0.0 {
            return Err(Error::ZeroWeightPair {
                paper: matrix.paper_ids()[paper].clone(),
                reviewer: matrix.reviewer_ids()[reviewer].clone(),
            });
        }
        if self.contains(paper, reviewer) {
            return Err(Error::DuplicatePair {
                paper: matrix.paper_ids()[paper].clone(),
                reviewer: matrix.reviewer_ids()[reviewer].clone(),
            });
        }
        self.pairs.push(AssignedPair {
            paper,
            reviewer,
            weight,
        });
        Ok(())
    }

    pub fn contains(&self, paper: usize, reviewer: usize) -> bool {
        self.pairs
            .iter()
            .any(|p| p.paper == paper && p.reviewer == reviewer)
    }

    pub fn pairs(&self) -> &[AssignedPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Sorts pairs by paper then reviewer position.
    pub fn sort(&mut self) {
        self.pairs.sort_by_key(|p| (p.paper, p.reviewer));
    }

    pub fn paper_loads(&self, papers: usize) -> Vec<usize> {
        let mut loads = vec![0; papers];
        for p in &self.pairs {
            loads[p.paper] += 1;
        }
        loads
    }

    pub fn reviewer_loads(&self, reviewers: usize) -> Vec<usize> {
        let mut loads = vec![0; reviewers];
        for p in &self.pairs {
            loads[p.reviewer] += 1;
        }
        loads
    }

    /// Checks the per-reviewer capacity and per-paper `m` bounds.
    pub fn check_bounds(
        &self,
        matrix: &SimilarityMatrix,
        m: usize,
        capacities: &[usize],
    ) -> Result<()> {
        for (r, load) in self
            .reviewer_loads(matrix.num_reviewers())
            .into_iter()
            .enumerate()
        {
            if load > capacities[r] {
                return Err(Error::CapacityExceeded {
                    reviewer: matrix.reviewer_ids()[r].clone(),
                    load,
                    capacity: capacities[r],
                });
            }
        }
        for (p, load) in self
            .paper_loads(matrix.num_papers())
            .into_iter()
            .enumerate()
        {
            if load > m {
                return Err(Error::TooManyReviewers {
                    paper: matrix.paper_ids()[p].clone(),
                    load,
                    m,
                });
            }
        }
        Ok(())
    }
}

/// Sum of the weights of all assigned edges.
pub fn weight_of_matching(assignment: &AssignmentSet) -> f64 {
    assignment.pairs.iter().map(|p| p.weight).sum()
}

/// The five-level willingness scale reviewers bid on, lowest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BidLevel {
    CannotOrConflict,
    PreferNot,
    Neutral,
    CanReview,
    WantToReview,
}

impl BidLevel {
    pub const ALL: [BidLevel; 5] = [
        BidLevel::CannotOrConflict,
        BidLevel::PreferNot,
        BidLevel::Neutral,
        BidLevel::CanReview,
        BidLevel::WantToReview,
    ];

    /// Integer score 0..=4, highest for the most willing option.
    pub fn score(self) -> u8 {
        self as u8
    }

    pub fn from_score(score: u8) -> Option<Self> {
        Self::ALL.get(score as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            BidLevel::CannotOrConflict => "cannot_or_conflict",
            BidLevel::PreferNot => "prefer_not",
            BidLevel::Neutral => "neutral",
            BidLevel::CanReview => "can_review",
            BidLevel::WantToReview => "want_to_review",
        }
    }
}

impl fmt::Display for BidLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn selection_drops_zero_weights() {
        let s = TopicSelection::new([(0, 0.5), (1, 0.0), (2, 1.0)]);
        assert_eq!(s.len(), 2);
        assert!(!s.contains(1));
        assert!(!s.is_binary());
        assert!(TopicSelection::binary([3, 4]).is_binary());
    }

    #[test]
    fn infeasible_capacity_is_reported() {
        let vocab = TopicVocabulary::from_labels(["a"]);
        let papers = vec![
            PaperDescriptor::new("p1", TopicSelection::binary([0])),
            PaperDescriptor::new("p2", TopicSelection::binary([0])),
        ];
        let reviewers = vec![ReviewerDescriptor::new(
            "r1",
            TopicSelection::binary([0]),
            1,
        )];
        let report = validate_dataset(&Dataset::new(vocab, papers, reviewers), 1);
        assert_eq!(
            report.violations,
            vec![Violation::CapacityInfeasible {
                total: 1,
                required: 2
            }]
        );
        assert_eq!(report.to_string(), "Σ capacities 1 < 2");
        assert!(report.only_infeasible());
    }

    #[test]
    fn out_of_range_weight_is_reported() {
        let vocab = TopicVocabulary::from_labels(["a", "b"]);
        let papers = vec![PaperDescriptor::new("p1", TopicSelection::new([(0, 1.3)]))];
        let reviewers = vec![ReviewerDescriptor::new(
            "r1",
            TopicSelection::binary([1]),
            1,
        )];
        let report = validate_dataset(&Dataset::new(vocab, papers, reviewers), 1);
        assert!(matches!(
            report.violations.as_slice(),
            [Violation::WeightOutOfRange { topic: 0, .. }]
        ));
    }

    #[test]
    fn structural_violations_are_all_listed() {
        let vocab = TopicVocabulary::from_topics(vec![
            Topic {
                id: 0,
                label: "a".into(),
            },
            Topic {
                id: 2,
                label: "a".into(),
            },
            Topic {
                id: 3,
                label: " ".into(),
            },
        ]);
        let papers = vec![
            PaperDescriptor::new("p1", TopicSelection::binary([7])),
            PaperDescriptor::new("p1", TopicSelection::empty()),
        ];
        let reviewers = vec![
            ReviewerDescriptor::new("r1", TopicSelection::empty(), 0).with_conflicts(["p9"]),
            ReviewerDescriptor::new("r1", TopicSelection::empty(), 5),
        ];
        let report = validate_dataset(&Dataset::new(vocab, papers, reviewers), 2);
        let v = &report.violations;
        assert!(v.contains(&Violation::TopicIdNotContiguous { position: 1, id: 2 }));
        assert!(v.contains(&Violation::DuplicateTopicLabel { label: "a".into() }));
        assert!(v.contains(&Violation::EmptyTopicLabel { id: 3 }));
        assert!(v.contains(&Violation::DuplicatePaperId { id: "p1".into() }));
        assert!(v.contains(&Violation::DuplicateReviewerId { id: "r1".into() }));
        assert!(v.contains(&Violation::ZeroCapacity {
            reviewer: "r1".into()
        }));
        assert!(v.contains(&Violation::UnknownConflict {
            reviewer: "r1".into(),
            paper: "p9".into()
        }));
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::UnknownTopic { topic: 7, .. })));
        assert!(!v
            .iter()
            .any(|x| matches!(x, Violation::CapacityInfeasible { .. })));
    }

    #[test]
    fn matrix_rejects_bad_shapes_and_values() {
        assert!(SimilarityMatrix::new(ids("r", 2), ids("p", 2), vec![0.0; 3]).is_err());
        assert!(SimilarityMatrix::new(ids("r", 1), ids("p", 1), vec![1.5]).is_err());
        assert!(SimilarityMatrix::new(ids("r", 1), ids("p", 1), vec![f64::NAN]).is_err());
    }

    #[test]
    fn conflicts_are_zeroed() {
        let vocab = TopicVocabulary::from_labels(["a"]);
        let papers = vec![
            PaperDescriptor::new("p1", TopicSelection::binary([0])),
            PaperDescriptor::new("p2", TopicSelection::binary([0])),
        ];
        let reviewers = vec![
            ReviewerDescriptor::new("r1", TopicSelection::binary([0]), 2).with_conflicts(["p2"]),
        ];
        let ds = Dataset::new(vocab, papers, reviewers);
        let mut m = SimilarityMatrix::new(ids("r", 1), ids("p", 2), vec![0.5, 0.5]).unwrap();
        m.zero_conflicts(&ds);
        assert_eq!(m.row(0), &[0.5, 0.0]);
    }

    #[test]
    fn assignment_set_rejects_zero_and_duplicate_pairs() {
        let m = SimilarityMatrix::new(ids("r", 1), ids("p", 2), vec![0.4, 0.0]).unwrap();
        let mut set = AssignmentSet::new();
        set.insert(&m, 0, 0).unwrap();
        assert!(matches!(
            set.insert(&m, 0, 0),
            Err(Error::DuplicatePair { .. })
        ));
        assert!(matches!(
            set.insert(&m, 1, 0),
            Err(Error::ZeroWeightPair { .. })
        ));
        assert!(set.check_bounds(&m, 1, &[1]).is_ok());
        assert!(set.check_bounds(&m, 1, &[0]).is_err());
    }

    #[test]
    fn empty_matching_weighs_nothing() {
        assert_eq!(weight_of_matching(&AssignmentSet::new()), 0.0);
    }

    #[test]
    fn bid_scores_round_trip() {
        for level in BidLevel::ALL {
            assert_eq!(BidLevel::from_score(level.score()), Some(level));
        }
        assert_eq!(BidLevel::from_score(5), None);
        assert!(BidLevel::WantToReview > BidLevel::Neutral);
    }
}
