//! Similarity factors: the weight of the edge between a paper and a reviewer,
//! computed from topic selections, bids, or both.
//!
//! Every measure returns a value in `[0, 1]`. An empty topic selection matches
//! nothing, so empty-set cases return 0 rather than NaN.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{BidLevel, Dataset, SimilarityMatrix, TopicSelection};
use crate::ratings::RatingTable;

/// Size of the intersection and the union of the two supports.
fn overlap(paper: &TopicSelection, reviewer: &TopicSelection) -> (usize, usize) {
    let common = paper.topics().filter(|&t| reviewer.contains(t)).count();
    (common, paper.len() + reviewer.len() - common)
}

/// Weights are ignored; only the selected topics count.
pub fn jaccard(paper: &TopicSelection, reviewer: &TopicSelection) -> f64 {
    let (common, union) = overlap(paper, reviewer);
    if union == 0 {
        0.0
    } else {
        common as f64 / union as f64
    }
}

pub fn dice(paper: &TopicSelection, reviewer: &TopicSelection) -> f64 {
    let total = paper.len() + reviewer.len();
    if total == 0 {
        return 0.0;
    }
    let (common, _) = overlap(paper, reviewer);
    2.0 * common as f64 / total as f64
}

/// Jaccard where each common topic contributes how well the reviewer's level
/// covers the paper's: 1 when the reviewer is at least as strong, otherwise
/// one minus the gap.
pub fn weighted_relative(paper: &TopicSelection, reviewer: &TopicSelection) -> f64 {
    weighted_sum(paper, reviewer, |wp, wr| {
        if wr >= wp {
            1.0
        } else {
            1.0 - (wp - wr)
        }
    })
}

/// Like [`weighted_relative`] but each common topic contributes
/// `w_r · (1 − (w_p − w_r))`, so the reviewer's absolute level matters.
/// A reviewer much stronger than the paper needs can push a term above 1;
/// each term is clamped to `[0, 1]`.
pub fn weighted_absolute(paper: &TopicSelection, reviewer: &TopicSelection) -> f64 {
    weighted_sum(paper, reviewer, |wp, wr| {
        (wr * (1.0 - (wp - wr))).clamp(0.0, 1.0)
    })
}

fn weighted_sum(
    paper: &TopicSelection,
    reviewer: &TopicSelection,
    term: impl Fn(f64, f64) -> f64,
) -> f64 {
    let mut common = 0usize;
    let mut sum = 0.0;
    for (topic, wp) in paper.iter() {
        if let Some(wr) = reviewer.weight(topic) {
            common += 1;
            sum += term(wp, wr);
        }
    }
    let union = paper.len() + reviewer.len() - common;
    if union == 0 {
        0.0
    } else {
        (sum / union as f64).clamp(0.0, 1.0)
    }
}

/// Three-valued rule based only on the number of shared topics: two or more
/// counts as "want to review", exactly one as "can review".
pub fn easychair_coarse(paper: &TopicSelection, reviewer: &TopicSelection) -> f64 {
    match overlap(paper, reviewer).0 {
        0 => 0.0,
        1 => 0.5,
        _ => 1.0,
    }
}

/// Edge weight for each bid level, indexed by [`BidLevel::score`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BidScale {
    weights: [f64; 5],
}

impl Default for BidScale {
    fn default() -> Self {
        Self {
            weights: [0.0, 0.25, 0.5, 0.75, 1.0],
        }
    }
}

impl BidScale {
    /// Weights must lie in `[0, 1]` and be non-decreasing with willingness.
    pub fn new(weights: [f64; 5]) -> Result<Self> {
        if weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
            return Err(Error::InvalidParameter(format!(
                "bid weights {weights:?} must lie in [0, 1]"
            )));
        }
        if weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter(format!(
                "bid weights {weights:?} must be non-decreasing"
            )));
        }
        Ok(Self { weights })
    }

    pub fn weight(&self, level: BidLevel) -> f64 {
        self.weights[level.score() as usize]
    }

    /// A missing bid counts as neutral.
    pub fn weight_or_neutral(&self, level: Option<BidLevel>) -> f64 {
        self.weight(level.unwrap_or(BidLevel::Neutral))
    }
}

/// Weight of a bid on the default uniform scale.
pub fn bid_weight(level: BidLevel) -> f64 {
    BidScale::default().weight(level)
}

/// Topic-only measures that may back the combined method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopicMeasure {
    Jaccard,
    Dice,
    WeightedRelative,
    WeightedAbsolute,
}

impl TopicMeasure {
    pub fn apply(self, paper: &TopicSelection, reviewer: &TopicSelection) -> f64 {
        match self {
            TopicMeasure::Jaccard => jaccard(paper, reviewer),
            TopicMeasure::Dice => dice(paper, reviewer),
            TopicMeasure::WeightedRelative => weighted_relative(paper, reviewer),
            TopicMeasure::WeightedAbsolute => weighted_absolute(paper, reviewer),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TopicMeasure::Jaccard => "jaccard",
            TopicMeasure::Dice => "dice",
            TopicMeasure::WeightedRelative => "weighted-relative",
            TopicMeasure::WeightedAbsolute => "weighted-absolute",
        }
    }
}

impl FromStr for TopicMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jaccard" => Ok(TopicMeasure::Jaccard),
            "dice" => Ok(TopicMeasure::Dice),
            "weighted-relative" => Ok(TopicMeasure::WeightedRelative),
            "weighted-absolute" => Ok(TopicMeasure::WeightedAbsolute),
            other => Err(Error::InvalidParameter(format!(
                "unknown topic measure {other:?}"
            ))),
        }
    }
}

/// Precedence rule for topics plus bids: an explicit or predicted bid decides
/// the weight on its own; otherwise the topic measure is used.
pub fn combined_weight(
    bid: Option<BidLevel>,
    paper: &TopicSelection,
    reviewer: &TopicSelection,
    measure: TopicMeasure,
    scale: &BidScale,
) -> f64 {
    match bid {
        Some(level) => scale.weight(level),
        None => measure.apply(paper, reviewer),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SimilarityMethod {
    Jaccard,
    Dice,
    WeightedRelative,
    WeightedAbsolute,
    EasyChairCoarse,
    BidOnly(BidScale),
    Combined(TopicMeasure, BidScale),
}

impl SimilarityMethod {
    pub fn needs_ratings(&self) -> bool {
        matches!(
            self,
            SimilarityMethod::BidOnly(_) | SimilarityMethod::Combined(..)
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            SimilarityMethod::Jaccard => "jaccard",
            SimilarityMethod::Dice => "dice",
            SimilarityMethod::WeightedRelative => "weighted-relative",
            SimilarityMethod::WeightedAbsolute => "weighted-absolute",
            SimilarityMethod::EasyChairCoarse => "easychair",
            SimilarityMethod::BidOnly(_) => "bid",
            SimilarityMethod::Combined(..) => "combined",
        }
    }
}

impl fmt::Display for SimilarityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimilarityMethod::Combined(m, _) => write!(f, "combined:{}", m.name()),
            other => f.write_str(other.name()),
        }
    }
}

/// Computes every cell of the reviewers × papers matrix with `method`, then
/// forces conflict edges to zero.
pub fn build_similarity_matrix(
    dataset: &Dataset,
    method: SimilarityMethod,
    ratings: Option<&RatingTable>,
) -> Result<SimilarityMatrix> {
    if method.needs_ratings() && ratings.is_none() {
        return Err(Error::MissingRatings(method.name()));
    }
    let papers = dataset.papers();
    let mut weights = Vec::with_capacity(papers.len() * dataset.reviewers().len());
    for (r, reviewer) in dataset.reviewers().iter().enumerate() {
        for (p, paper) in papers.iter().enumerate() {
            let (pt, rt) = (&paper.topics, &reviewer.topics);
            let w = match method {
                SimilarityMethod::Jaccard => jaccard(pt, rt),
                SimilarityMethod::Dice => dice(pt, rt),
                SimilarityMethod::WeightedRelative => weighted_relative(pt, rt),
                SimilarityMethod::WeightedAbsolute => weighted_absolute(pt, rt),
                SimilarityMethod::EasyChairCoarse => easychair_coarse(pt, rt),
                SimilarityMethod::BidOnly(scale) => {
                    let bid = ratings.and_then(|t| t.level(r, p));
                    scale.weight_or_neutral(bid)
                }
                SimilarityMethod::Combined(measure, scale) => {
                    let bid = ratings.and_then(|t| t.level(r, p));
                    combined_weight(bid, pt, rt, measure, &scale)
                }
            };
            weights.push(if dataset.is_conflict(r, p) { 0.0 } else { w });
        }
    }
    SimilarityMatrix::new(dataset.reviewer_ids(), dataset.paper_ids(), weights)
}
