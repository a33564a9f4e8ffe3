//! Seeded synthetic instances: datasets, hidden reviewer expertise for the
//! simulated bidder, and raw similarity matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{
    Dataset, PaperDescriptor, ReviewerDescriptor, SimilarityMatrix, TopicSelection, TopicVocabulary,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub papers: usize,
    pub reviewers: usize,
    pub topics: usize,
    /// Probability that a descriptor selects any given topic.
    pub density: f64,
    pub reviewers_per_paper: usize,
    /// Draw topic weights from {0.25, 0.5, 0.75, 1} instead of all 1.
    pub weighted: bool,
    /// Probability that a (reviewer, paper) pair is a conflict.
    pub conflict_rate: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            papers: 50,
            reviewers: 30,
            topics: 20,
            density: 0.2,
            reviewers_per_paper: 3,
            weighted: false,
            conflict_rate: 0.0,
            seed: 0,
        }
    }
}

impl SynthConfig {
    fn check(&self) -> Result<()> {
        if self.papers == 0 || self.reviewers == 0 || self.topics == 0 {
            return Err(Error::InvalidParameter(
                "papers, reviewers and topics must be at least 1".into(),
            ));
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "density {} must lie in (0, 1]",
                self.density
            )));
        }
        if self.reviewers_per_paper == 0 {
            return Err(Error::InvalidParameter(
                "reviewers per paper must be at least 1".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.conflict_rate) {
            return Err(Error::InvalidParameter(format!(
                "conflict rate {} must lie in [0, 1)",
                self.conflict_rate
            )));
        }
        Ok(())
    }

    /// Load-balanced per-reviewer threshold: ⌈m·|P| / |R|⌉.
    pub fn capacity(&self) -> usize {
        (self.reviewers_per_paper * self.papers).div_ceil(self.reviewers)
    }
}

const WEIGHT_LEVELS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

fn selection(rng: &mut ChaCha8Rng, cfg: &SynthConfig) -> TopicSelection {
    let mut picked: Vec<usize> = (0..cfg.topics)
        .filter(|_| rng.random::<f64>() < cfg.density)
        .collect();
    if picked.is_empty() {
        picked.push(rng.random_range(0..cfg.topics));
    }
    picked
        .into_iter()
        .map(|t| {
            let w = if cfg.weighted {
                WEIGHT_LEVELS[rng.random_range(0..WEIGHT_LEVELS.len())]
            } else {
                1.0
            };
            (t, w)
        })
        .collect()
}

/// Generates a dataset deterministically from `cfg.seed`. Every descriptor
/// selects at least one topic; reviewer capacity is [`SynthConfig::capacity`].
pub fn generate_dataset(cfg: &SynthConfig) -> Result<Dataset> {
    cfg.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let width = cfg.topics.to_string().len();
    let vocabulary =
        TopicVocabulary::from_labels((0..cfg.topics).map(|t| format!("topic-{t:0width$}")));
    let pwidth = cfg.papers.to_string().len();
    let papers: Vec<PaperDescriptor> = (0..cfg.papers)
        .map(|i| PaperDescriptor::new(format!("p{:0pwidth$}", i + 1), selection(&mut rng, cfg)))
        .collect();
    let rwidth = cfg.reviewers.to_string().len();
    let capacity = cfg.capacity();
    let reviewers = (0..cfg.reviewers)
        .map(|i| {
            let topics = selection(&mut rng, cfg);
            let conflicts: Vec<String> = papers
                .iter()
                .filter(|_| rng.random::<f64>() < cfg.conflict_rate)
                .map(|p| p.id.clone())
                .collect();
            ReviewerDescriptor::new(format!("r{:0rwidth$}", i + 1), topics, capacity)
                .with_conflicts(conflicts)
        })
        .collect();
    Ok(Dataset::new(vocabulary, papers, reviewers))
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Hidden expertise for the simulated bidder: each declared topic weight is
/// jittered by up to ±0.25 (kept within [0.05, 1]) and, with probability
/// 0.3, one undeclared topic is added with weight in [0.3, 1].
pub fn hidden_truth(dataset: &Dataset, seed: u64) -> Vec<TopicSelection> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let topics = dataset.vocabulary().len();
    dataset
        .reviewers()
        .iter()
        .map(|r| {
            let mut entries: Vec<(usize, f64)> = r
                .topics
                .iter()
                .map(|(t, w)| {
                    (
                        t,
                        round2((w + rng.random_range(-0.25..=0.25)).clamp(0.05, 1.0)),
                    )
                })
                .collect();
            if topics > 0 && rng.random::<f64>() < 0.3 {
                let extra = rng.random_range(0..topics);
                if !r.topics.contains(extra) {
                    entries.push((extra, round2(rng.random_range(0.3..=1.0))));
                }
            }
            TopicSelection::new(entries)
        })
        .collect()
}

/// A reviewers × papers matrix with two-decimal weights in [0.01, 1]; each
/// cell is zero with probability `zero_fraction`.
pub fn random_matrix(
    reviewers: usize,
    papers: usize,
    zero_fraction: f64,
    seed: u64,
) -> SimilarityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..reviewers * papers)
        .map(|_| {
            if rng.random::<f64>() < zero_fraction {
                0.0
            } else {
                f64::from(rng.random_range(1..=100u32)) / 100.0
            }
        })
        .collect();
    let r = (1..=reviewers).map(|i| format!("r{i}")).collect();
    let p = (1..=papers).map(|i| format!("p{i}")).collect();
    SimilarityMatrix::new(r, p, weights).expect("weights within range")
}
