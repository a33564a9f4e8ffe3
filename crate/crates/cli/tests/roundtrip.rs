use proptest::prelude::*;
use revassign_cli::formats::{
    read_dataset, read_matrix, read_ratings, read_truth, write_dataset, write_matrix,
    write_ratings, write_truth,
};
use revassign_core::synth::{generate_dataset, hidden_truth, random_matrix, SynthConfig};
use revassign_core::{BidLevel, RatingTable};

fn config() -> impl Strategy<Value = SynthConfig> {
    (
        1..15usize,
        1..10usize,
        1..12usize,
        1..=10u32,
        any::<bool>(),
        0..3u32,
        any::<u64>(),
    )
        .prop_map(
            |(papers, reviewers, topics, density, weighted, conflicts, seed)| SynthConfig {
                papers,
                reviewers,
                topics,
                density: f64::from(density) / 10.0,
                reviewers_per_paper: 2,
                weighted,
                conflict_rate: f64::from(conflicts) / 10.0,
                seed,
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dataset_and_truth_round_trip(cfg in config()) {
        let ds = generate_dataset(&cfg).unwrap();
        let mut first = Vec::new();
        write_dataset(&mut first, &ds).unwrap();
        let back = read_dataset(&mut first.as_slice(), "mem").unwrap();
        prop_assert_eq!(back.papers(), ds.papers());
        prop_assert_eq!(back.reviewers(), ds.reviewers());
        let mut second = Vec::new();
        write_dataset(&mut second, &back).unwrap();
        prop_assert_eq!(&first, &second);

        let truth = hidden_truth(&ds, cfg.seed);
        let mut t = Vec::new();
        write_truth(&mut t, &truth, &ds).unwrap();
        prop_assert_eq!(read_truth(&mut t.as_slice(), "mem", &ds).unwrap(), truth);
    }

    #[test]
    fn matrix_round_trips_bit_exactly(r in 1..8usize, p in 1..8usize, zeros in 0..10u32, seed in any::<u64>()) {
        let m = random_matrix(r, p, f64::from(zeros) / 10.0, seed);
        let mut first = Vec::new();
        write_matrix(&mut first, &m).unwrap();
        let back = read_matrix(&mut first.as_slice(), "mem").unwrap();
        prop_assert_eq!(&back, &m);
        let mut second = Vec::new();
        write_matrix(&mut second, &back).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn ratings_round_trip(cfg in config(), cells in prop::collection::vec((0..10usize, 0..15usize, 0..5u8, prop::option::of(0..=100u32)), 0..30)) {
        let ds = generate_dataset(&cfg).unwrap();
        let mut table = RatingTable::new();
        for (r, p, level, conf) in cells {
            let (r, p) = (r % ds.reviewers().len(), p % ds.papers().len());
            let level = BidLevel::from_score(level).unwrap();
            match conf {
                None => table.insert_explicit(r, p, level),
                Some(c) => {
                    table.insert_predicted(r, p, level, f64::from(c) / 100.0);
                }
            }
        }
        let mut bytes = Vec::new();
        write_ratings(&mut bytes, &table, &ds).unwrap();
        let back = read_ratings(&mut bytes.as_slice(), "mem", &ds).unwrap();
        prop_assert_eq!(back, table);
    }
}
