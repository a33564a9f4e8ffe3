//! Bids and the iterative rating method.
//!
//! Reviewers rate a small sample of papers; missing ratings are predicted by
//! user-based collaborative filtering and each round proposes a new sample
//! for every reviewer. [`SimulatedBidder`] stands in for real reviewers.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{BidLevel, Dataset, TopicSelection};
use crate::similarity::{jaccard, weighted_relative};

/// Default neighbourhood size for predictions.
pub const DEFAULT_NEIGHBOURS: usize = 5;
/// Default number of papers proposed to each reviewer per round.
pub const DEFAULT_SAMPLE_SIZE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    Explicit,
    Predicted { confidence: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rating {
    pub level: BidLevel,
    pub provenance: Provenance,
}

impl Rating {
    pub fn is_explicit(&self) -> bool {
        self.provenance == Provenance::Explicit
    }

    pub fn confidence(&self) -> f64 {
        match self.provenance {
            Provenance::Explicit => 1.0,
            Provenance::Predicted { confidence } => confidence,
        }
    }
}

/// Sparse `(reviewer, paper) → rating` table, keyed by dataset positions.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RatingTable {
    entries: BTreeMap<(usize, usize), Rating>,
}

impl RatingTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, reviewer: usize, paper: usize) -> Option<&Rating> {
        self.entries.get(&(reviewer, paper))
    }

    /// Level of an explicit or predicted rating, if any.
    pub fn level(&self, reviewer: usize, paper: usize) -> Option<BidLevel> {
        self.get(reviewer, paper).map(|r| r.level)
    }

    pub fn is_explicit(&self, reviewer: usize, paper: usize) -> bool {
        self.get(reviewer, paper).is_some_and(Rating::is_explicit)
    }

    /// Records a bid, replacing any earlier bid or prediction for the cell.
    pub fn insert_explicit(&mut self, reviewer: usize, paper: usize, level: BidLevel) {
        self.entries.insert(
            (reviewer, paper),
            Rating {
                level,
                provenance: Provenance::Explicit,
            },
        );
    }

    /// Records a prediction unless the cell already holds an explicit bid.
    /// Returns whether the prediction was stored.
    pub fn insert_predicted(
        &mut self,
        reviewer: usize,
        paper: usize,
        level: BidLevel,
        confidence: f64,
    ) -> bool {
        if self.is_explicit(reviewer, paper) {
            return false;
        }
        self.entries.insert(
            (reviewer, paper),
            Rating {
                level,
                provenance: Provenance::Predicted {
                    confidence: confidence.clamp(0.0, 1.0),
                },
            },
        );
        true
    }

    pub fn clear_predicted(&mut self) {
        self.entries.retain(|_, r| r.is_explicit());
    }

    /// Iterates `((reviewer, paper), rating)` in key order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Rating)> + '_ {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn explicit_count(&self) -> usize {
        self.entries.values().filter(|r| r.is_explicit()).count()
    }

    pub fn predicted_count(&self) -> usize {
        self.len() - self.explicit_count()
    }

    /// Number of explicit ratings received by each paper.
    fn explicit_per_paper(&self, papers: usize) -> Vec<usize> {
        let mut counts = vec![0; papers];
        for (&(_, p), r) in &self.entries {
            if r.is_explicit() && p < papers {
                counts[p] += 1;
            }
        }
        counts
    }
}

/// Explicit ratings only, indexed both ways, as integer scores 0..=4.
struct ExplicitSnapshot {
    by_reviewer: BTreeMap<usize, BTreeMap<usize, f64>>,
    by_paper: BTreeMap<usize, Vec<(usize, f64)>>,
}

impl ExplicitSnapshot {
    fn new(table: &RatingTable) -> Self {
        let mut by_reviewer: BTreeMap<usize, BTreeMap<usize, f64>> = BTreeMap::new();
        let mut by_paper: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
        for ((r, p), rating) in table.iter() {
            if rating.is_explicit() {
                let score = f64::from(rating.level.score());
                by_reviewer.entry(r).or_default().insert(p, score);
                by_paper.entry(p).or_default().push((r, score));
            }
        }
        Self {
            by_reviewer,
            by_paper,
        }
    }

    fn co_rated(&self, a: usize, b: usize) -> Vec<(f64, f64)> {
        let (Some(ra), Some(rb)) = (self.by_reviewer.get(&a), self.by_reviewer.get(&b)) else {
            return Vec::new();
        };
        ra.iter()
            .filter_map(|(p, &x)| rb.get(p).map(|&y| (x, y)))
            .collect()
    }

    fn pearson(&self, a: usize, b: usize) -> Option<f64> {
        pearson(&self.co_rated(a, b))
    }

    /// Pearson correlation when defined. When it is not (a single co-rated
    /// paper, or constant ratings) and the two reviewers share at least one
    /// rated paper, falls back to their mean agreement `1 − |Δ|/4`.
    fn neighbour_weight(&self, a: usize, b: usize) -> Option<f64> {
        let pairs = self.co_rated(a, b);
        if let Some(r) = pearson(&pairs) {
            return Some(r);
        }
        if pairs.is_empty() {
            return None;
        }
        let gap: f64 = pairs.iter().map(|(x, y)| (x - y).abs()).sum::<f64>() / pairs.len() as f64;
        Some(1.0 - gap / 4.0)
    }
}

fn pearson(pairs: &[(f64, f64)]) -> Option<f64> {
    if pairs.len() < 2 {
        return None;
    }
    let n = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Pearson correlation of two reviewers' explicit bids over the papers both
/// rated. `None` with fewer than two co-rated papers or zero variance.
pub fn reviewer_similarity(table: &RatingTable, a: usize, b: usize) -> Option<f64> {
    ExplicitSnapshot::new(table).pearson(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub level: BidLevel,
    pub confidence: f64,
}

/// Rounds a mean score to the nearest level; exact halves move toward neutral.
fn round_to_level(mean: f64) -> BidLevel {
    let lower = mean.floor();
    let score = if (mean - lower - 0.5).abs() < 1e-9 {
        if lower + 0.5 < f64::from(BidLevel::Neutral.score()) {
            lower + 1.0
        } else {
            lower
        }
    } else {
        mean.round()
    };
    BidLevel::from_score(score.clamp(0.0, 4.0) as u8).expect("score within scale")
}

fn predict_with(
    snapshot: &ExplicitSnapshot,
    weight: impl Fn(usize) -> Option<f64>,
    reviewer: usize,
    paper: usize,
    neighbours: usize,
) -> Option<Prediction> {
    if neighbours == 0 {
        return None;
    }
    let raters = snapshot.by_paper.get(&paper)?;
    if raters.iter().any(|&(r, _)| r == reviewer) {
        return None;
    }
    let mut comparable = 0usize;
    let mut candidates: Vec<(usize, f64, f64)> = Vec::new();
    for &(r, score) in raters {
        if let Some(s) = weight(r) {
            comparable += 1;
            if s > 0.0 {
                candidates.push((r, s, score));
            }
        }
    }
    if candidates.is_empty() {
        return None;
    }
    candidates.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    candidates.truncate(neighbours);
    let mass: f64 = candidates.iter().map(|c| c.1).sum();
    let mean = candidates.iter().map(|c| c.1 * c.2).sum::<f64>() / mass;
    Some(Prediction {
        level: round_to_level(mean),
        confidence: (comparable as f64 / neighbours as f64).min(1.0),
    })
}

/// User-based k-nearest-neighbour prediction of one missing bid.
///
/// Neighbours are the (up to) `neighbours` most similar reviewers with a
/// positive similarity who rated `paper` explicitly. The level is their
/// similarity-weighted mean. Confidence is the number of reviewers who rated
/// `paper` and share at least one rated paper with `reviewer`, divided by
/// `neighbours` and capped at 1; it cannot fall as bids accumulate. Returns `None` when the cell already holds an
/// explicit bid or no neighbour qualifies.
pub fn predict_rating(
    table: &RatingTable,
    reviewer: usize,
    paper: usize,
    neighbours: usize,
) -> Option<Prediction> {
    let snapshot = ExplicitSnapshot::new(table);
    predict_with(
        &snapshot,
        |other| snapshot.neighbour_weight(reviewer, other),
        reviewer,
        paper,
        neighbours,
    )
}

/// Replaces every prediction in `table` with a fresh one computed from the
/// explicit bids. Conflicted cells are never predicted.
pub fn recompute_predictions(table: &mut RatingTable, dataset: &Dataset, neighbours: usize) {
    table.clear_predicted();
    let snapshot = ExplicitSnapshot::new(table);
    let reviewers = dataset.reviewers().len();
    let raters: Vec<usize> = snapshot.by_reviewer.keys().copied().collect();
    let mut predictions = Vec::new();
    for r in 0..reviewers {
        let weights: BTreeMap<usize, f64> = raters
            .iter()
            .filter(|&&o| o != r)
            .filter_map(|&o| snapshot.neighbour_weight(r, o).map(|w| (o, w)))
            .collect();
        for &p in snapshot.by_paper.keys() {
            if p >= dataset.papers().len() || dataset.is_conflict(r, p) {
                continue;
            }
            if let Some(pred) =
                predict_with(&snapshot, |o| weights.get(&o).copied(), r, p, neighbours)
            {
                predictions.push((r, p, pred));
            }
        }
    }
    for (r, p, pred) in predictions {
        table.insert_predicted(r, p, pred.level, pred.confidence);
    }
}

/// Orders a reviewer's unrated, non-conflicted papers for the next sample.
///
/// Higher expected level first (the predicted level, or the topic similarity
/// quantised to the bid scale when nothing is predicted), then lower
/// confidence, then higher topic similarity, then papers with fewer explicit
/// bids, then dataset order. Papers with neither a prediction nor a shared
/// topic are left out.
fn rank_candidates(
    dataset: &Dataset,
    table: &RatingTable,
    reviewer: usize,
    rating_counts: &[usize],
) -> Vec<usize> {
    let reviewer_topics = &dataset.reviewer(reviewer).topics;
    let mut ranked: Vec<(u8, f64, f64, usize, usize)> = Vec::new();
    for (p, paper) in dataset.papers().iter().enumerate() {
        if dataset.is_conflict(reviewer, p) || table.is_explicit(reviewer, p) {
            continue;
        }
        let topic = jaccard(&paper.topics, reviewer_topics);
        let (level, confidence) = match table.get(reviewer, p) {
            Some(r) => (r.level.score(), r.confidence()),
            None if topic > 0.0 => (quantize(topic).score(), 0.0),
            None => continue,
        };
        ranked.push((level, confidence, topic, rating_counts[p], p));
    }
    ranked.sort_by(|a, b| {
        b.0.cmp(&a.0)
            .then(a.1.total_cmp(&b.1))
            .then(b.2.total_cmp(&a.2))
            .then(a.3.cmp(&b.3))
            .then(a.4.cmp(&b.4))
    });
    ranked.into_iter().map(|c| c.4).collect()
}

/// First samples, chosen from topics alone: for each reviewer the `k` papers
/// with the highest Jaccard similarity, ties going to papers with fewer
/// explicit bids and then to dataset order. Conflicts, papers the reviewer has
/// already rated and papers sharing no topic are skipped.
pub fn initial_samples(dataset: &Dataset, table: &RatingTable, k: usize) -> Vec<Vec<usize>> {
    let counts = table.explicit_per_paper(dataset.papers().len());
    (0..dataset.reviewers().len())
        .map(|r| {
            let reviewer_topics = &dataset.reviewer(r).topics;
            let mut ranked: Vec<(f64, usize, usize)> = dataset
                .papers()
                .iter()
                .enumerate()
                .filter(|&(p, _)| !dataset.is_conflict(r, p) && !table.is_explicit(r, p))
                .map(|(p, paper)| (jaccard(&paper.topics, reviewer_topics), counts[p], p))
                .filter(|c| c.0 > 0.0)
                .collect();
            ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
            ranked.into_iter().take(k).map(|c| c.2).collect()
        })
        .collect()
}

/// Per-reviewer samples for the next round of bidding.
pub fn select_samples(dataset: &Dataset, table: &RatingTable, k: usize) -> Vec<Vec<usize>> {
    let counts = table.explicit_per_paper(dataset.papers().len());
    (0..dataset.reviewers().len())
        .map(|r| {
            let mut ranked = rank_candidates(dataset, table, r, &counts);
            ranked.truncate(k);
            ranked
        })
        .collect()
}

/// Anything that answers "which of these papers do you bid on, and how".
pub trait BidSource {
    fn bids(&mut self, reviewer: usize, papers: &[usize]) -> Vec<(usize, BidLevel)>;
}

impl<F> BidSource for F
where
    F: FnMut(usize, &[usize]) -> Vec<(usize, BidLevel)>,
{
    fn bids(&mut self, reviewer: usize, papers: &[usize]) -> Vec<(usize, BidLevel)> {
        self(reviewer, papers)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anomaly {
    pub iteration: usize,
    pub reviewer: usize,
    pub paper: usize,
}

#[derive(Debug, Clone, Default)]
pub struct IrmState {
    pub table: RatingTable,
    pub iteration: usize,
    /// Papers proposed to each reviewer in the latest round.
    pub samples: Vec<Vec<usize>>,
    /// Bids rejected because the pair is a conflict.
    pub anomalies: Vec<Anomaly>,
}

impl IrmState {
    pub fn new(table: RatingTable) -> Self {
        Self {
            table,
            ..Self::default()
        }
    }

    pub fn samples_empty(&self) -> bool {
        self.samples.iter().all(Vec::is_empty)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrmParams {
    /// Papers proposed to each reviewer per round.
    pub sample_size: usize,
    /// Neighbourhood size for predictions.
    pub neighbours: usize,
}

impl Default for IrmParams {
    fn default() -> Self {
        Self {
            sample_size: DEFAULT_SAMPLE_SIZE,
            neighbours: DEFAULT_NEIGHBOURS,
        }
    }
}

/// One round: propose samples, collect bids, recompute all predictions.
pub fn irm_iteration(
    mut state: IrmState,
    dataset: &Dataset,
    params: IrmParams,
    bid_source: &mut impl BidSource,
) -> IrmState {
    state.samples = select_samples(dataset, &state.table, params.sample_size);
    for (reviewer, sample) in state.samples.iter().enumerate() {
        if sample.is_empty() {
            continue;
        }
        for (paper, level) in bid_source.bids(reviewer, sample) {
            if paper >= dataset.papers().len() || dataset.is_conflict(reviewer, paper) {
                state.anomalies.push(Anomaly {
                    iteration: state.iteration,
                    reviewer,
                    paper,
                });
                continue;
            }
            state.table.insert_explicit(reviewer, paper, level);
        }
    }
    recompute_predictions(&mut state.table, dataset, params.neighbours);
    state.iteration += 1;
    state
}

/// Maps a similarity in `[0, 1]` onto the five-level bid scale.
pub fn quantize(similarity: f64) -> BidLevel {
    let score = (similarity.clamp(0.0, 1.0) * 4.0).round() as u8;
    BidLevel::from_score(score).expect("score within scale")
}

/// Deterministic stand-in for reviewers: bids follow the weighted-relative
/// similarity between each paper and the reviewer's hidden expertise,
/// quantised to the bid scale. With probability `noise` (capped at 1) a bid is
/// replaced by a level drawn uniformly.
#[derive(Debug, Clone)]
pub struct SimulatedBidder {
    papers: Vec<TopicSelection>,
    truth: Vec<TopicSelection>,
    noise: f64,
    rng: ChaCha8Rng,
}

pub fn simulate_bidder(
    dataset: &Dataset,
    hidden_truth: Vec<TopicSelection>,
    noise: f64,
    seed: u64,
) -> SimulatedBidder {
    SimulatedBidder {
        papers: dataset.papers().iter().map(|p| p.topics.clone()).collect(),
        truth: hidden_truth,
        noise: noise.max(0.0),
        rng: ChaCha8Rng::seed_from_u64(seed),
    }
}

impl SimulatedBidder {
    /// Noise-free bid of `reviewer` on `paper`.
    pub fn true_level(&self, reviewer: usize, paper: usize) -> BidLevel {
        quantize(weighted_relative(
            &self.papers[paper],
            &self.truth[reviewer],
        ))
    }
}

impl BidSource for SimulatedBidder {
    fn bids(&mut self, reviewer: usize, papers: &[usize]) -> Vec<(usize, BidLevel)> {
        papers
            .iter()
            .map(|&p| {
                let level = if self.rng.random::<f64>() < self.noise.min(1.0) {
                    BidLevel::ALL[self.rng.random_range(0..BidLevel::ALL.len())]
                } else {
                    self.true_level(reviewer, p)
                };
                (p, level)
            })
            .collect()
    }
}

/// Error of the current predictions against reference levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictionQuality {
    /// Number of predicted cells compared.
    pub cells: usize,
    pub rmse: f64,
    /// Error of predicting neutral on the same cells.
    pub neutral_rmse: f64,
}

/// Compares every predicted cell with `truth(reviewer, paper)`. `None` when
/// the table holds no predictions.
pub fn prediction_quality(
    table: &RatingTable,
    truth: impl Fn(usize, usize) -> BidLevel,
) -> Option<PredictionQuality> {
    let mut cells = 0usize;
    let (mut se, mut neutral_se) = (0.0, 0.0);
    let neutral = f64::from(BidLevel::Neutral.score());
    for ((r, p), rating) in table.iter() {
        if rating.is_explicit() {
            continue;
        }
        let t = f64::from(truth(r, p).score());
        se += (f64::from(rating.level.score()) - t).powi(2);
        neutral_se += (neutral - t).powi(2);
        cells += 1;
    }
    (cells > 0).then(|| PredictionQuality {
        cells,
        rmse: (se / cells as f64).sqrt(),
        neutral_rmse: (neutral_se / cells as f64).sqrt(),
    })
}
