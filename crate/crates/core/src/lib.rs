//! Reviewer-to-paper assignment.
//!
//! Papers and reviewers describe themselves with conference topics and bids;
//! [`similarity`] turns those descriptions into a [`SimilarityMatrix`], and
//! [`assign`] computes a matching over it, scored by the total weight of the
//! assigned edges. [`ratings`] predicts missing bids with collaborative
//! filtering over repeated bidding rounds.

pub mod assign;
pub mod error;
pub mod fixtures;
pub mod model;
pub mod ratings;
pub mod similarity;
pub mod synth;

pub use assign::{
    assign_greedy, assign_heuristic, assign_hungarian, assign_hungarian_multipass,
    brute_force_optimal, hungarian_pass, Algorithm, AssignmentOutcome, Shortfall, SortedColumns,
};
pub use error::{Error, Result};
pub use model::{
    validate_dataset, weight_of_matching, AssignedPair, AssignmentSet, BidLevel, Dataset,
    PaperDescriptor, ReviewerDescriptor, SimilarityMatrix, Topic, TopicId, TopicSelection,
    TopicVocabulary, ValidationReport, Violation, DEFAULT_REVIEWERS_PER_PAPER,
};
pub use ratings::{
    initial_samples, irm_iteration, predict_rating, reviewer_similarity, simulate_bidder,
    BidSource, IrmParams, IrmState, Prediction, Provenance, Rating, RatingTable, SimulatedBidder,
};
pub use similarity::{
    bid_weight, build_similarity_matrix, combined_weight, dice, easychair_coarse, jaccard,
    weighted_absolute, weighted_relative, BidScale, SimilarityMethod, TopicMeasure,
};
