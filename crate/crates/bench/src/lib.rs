//! Instances shared by the benchmarks.

use revassign_core::synth::{generate_dataset, SynthConfig};
use revassign_core::{build_similarity_matrix, SimilarityMatrix, SimilarityMethod};

/// A seeded synthetic Jaccard instance and its reviewer capacities.
pub fn instance(
    papers: usize,
    reviewers: usize,
    m: usize,
    seed: u64,
) -> (SimilarityMatrix, Vec<usize>) {
    let dataset = generate_dataset(&SynthConfig {
        papers,
        reviewers,
        reviewers_per_paper: m,
        seed,
        ..SynthConfig::default()
    })
    .expect("valid config");
    let matrix = build_similarity_matrix(&dataset, SimilarityMethod::Jaccard, None)
        .expect("no ratings needed");
    (matrix, dataset.capacities())
}
