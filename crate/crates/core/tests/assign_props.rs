use proptest::prelude::*;
use revassign_core::{
    assign_greedy, assign_heuristic, assign_hungarian, assign_hungarian_multipass,
    brute_force_optimal, hungarian_pass, AssignmentOutcome, SimilarityMatrix,
};
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
struct Instance {
    matrix: SimilarityMatrix,
    m: usize,
    caps: Vec<usize>,
}

fn cell() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(0.0), 3 => (1..=100u32).prop_map(|w| f64::from(w) / 100.0)]
}

fn instance(max_r: usize, max_p: usize, max_m: usize) -> impl Strategy<Value = Instance> {
    (1..=max_r, 1..=max_p, 1..=max_m).prop_flat_map(|(r, p, m)| {
        (
            prop::collection::vec(cell(), r * p),
            prop::collection::vec(0..=3usize, r),
        )
            .prop_map(move |(weights, caps)| Instance {
                matrix: SimilarityMatrix::new(
                    (1..=r).map(|i| format!("r{i}")).collect(),
                    (1..=p).map(|i| format!("p{i}")).collect(),
                    weights,
                )
                .unwrap(),
                m,
                caps,
            })
    })
}

fn all(inst: &Instance) -> Vec<AssignmentOutcome> {
    let order: Vec<usize> = (0..inst.matrix.num_papers()).collect();
    vec![
        assign_hungarian(&inst.matrix, inst.m, &inst.caps),
        assign_hungarian_multipass(&inst.matrix, inst.m, &inst.caps),
        assign_greedy(&inst.matrix, inst.m, &inst.caps, &order),
        assign_heuristic(&inst.matrix, inst.m, &inst.caps),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn outcomes_respect_constraints(inst in instance(7, 7, 3)) {
        for out in all(&inst) {
            prop_assert!(out.assignment.check_bounds(&inst.matrix, inst.m, &inst.caps).is_ok(), "{:?}", out.algorithm);
            prop_assert!(out.assignment.pairs().iter().all(|p| p.weight > 0.0));
            let sum: f64 = out.assignment.pairs().iter().map(|p| p.weight).sum();
            prop_assert!((sum - out.total_weight).abs() < 1e-9);
            let loads = out.assignment.paper_loads(inst.matrix.num_papers());
            let short: Vec<usize> = (0..loads.len()).filter(|&p| loads[p] < inst.m).collect();
            prop_assert_eq!(out.uncovered.iter().map(|s| s.paper).collect::<Vec<_>>(), short);
            for s in &out.uncovered {
                prop_assert_eq!(s.missing, inst.m - loads[s.paper]);
            }
        }
    }

    #[test]
    fn outcomes_are_deterministic(inst in instance(7, 7, 3)) {
        prop_assert_eq!(all(&inst), all(&inst));
    }

    #[test]
    fn hungarian_dominates_the_others(inst in instance(7, 7, 3)) {
        let outs = all(&inst);
        let best = outs[0].total_weight;
        for out in &outs[1..] {
            prop_assert!(best >= out.total_weight - 1e-9, "{:?} {} > {}", out.algorithm, out.total_weight, best);
        }
    }

    #[test]
    fn hungarian_matches_oracle(inst in instance(5, 5, 2)) {
        let exact = brute_force_optimal(&inst.matrix, inst.m, &inst.caps).unwrap();
        let flow = assign_hungarian(&inst.matrix, inst.m, &inst.caps);
        prop_assert!((exact.total_weight - flow.total_weight).abs() < 1e-9);
    }

    #[test]
    fn single_pass_matches_oracle(inst in instance(5, 5, 1)) {
        let exact = brute_force_optimal(&inst.matrix, 1, &inst.caps).unwrap();
        let pass: f64 = hungarian_pass(&inst.matrix, &inst.caps, &BTreeSet::new()).iter().map(|p| p.weight).sum();
        prop_assert!((exact.total_weight - pass).abs() < 1e-9);
    }

    #[test]
    fn heuristic_covers_at_least_as_many_papers_as_greedy(inst in instance(7, 7, 3)) {
        let papers = inst.matrix.num_papers();
        let order: Vec<usize> = (0..papers).collect();
        let greedy = assign_greedy(&inst.matrix, inst.m, &inst.caps, &order);
        let heuristic = assign_heuristic(&inst.matrix, inst.m, &inst.caps);
        prop_assert!(heuristic.covered_papers(papers) >= greedy.covered_papers(papers));
    }

    /// A paper left without a reviewer after the first round has every
    /// candidate filled to capacity.
    #[test]
    fn unplaced_papers_have_only_full_candidates(inst in instance(7, 7, 1)) {
        let out = assign_heuristic(&inst.matrix, 1, &inst.caps);
        let loads = out.assignment.reviewer_loads(inst.matrix.num_reviewers());
        for s in &out.uncovered {
            for (r, &load) in loads.iter().enumerate() {
                if inst.matrix.weight(r, s.paper) > 0.0 {
                    prop_assert_eq!(load, inst.caps[r]);
                }
            }
        }
    }

    /// With every positive cell set to 1, the optimum weight is the largest
    /// number of papers that can get a reviewer; one heuristic round reaches it.
    #[test]
    fn one_round_covers_as_many_papers_as_possible(inst in instance(7, 7, 1)) {
        let unit: Vec<f64> = inst.matrix.weights().iter().map(|&w| if w > 0.0 { 1.0 } else { 0.0 }).collect();
        let unit = SimilarityMatrix::new(inst.matrix.reviewer_ids().to_vec(), inst.matrix.paper_ids().to_vec(), unit).unwrap();
        let most = assign_hungarian(&unit, 1, &inst.caps).total_weight.round() as usize;
        let out = assign_heuristic(&inst.matrix, 1, &inst.caps);
        prop_assert_eq!(out.covered_papers(inst.matrix.num_papers()), most);
    }
}
