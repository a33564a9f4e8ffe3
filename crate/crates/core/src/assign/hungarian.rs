use std::collections::BTreeSet;

use super::{check_capacities, Algorithm, AssignmentOutcome};
use crate::model::{AssignedPair, AssignmentSet, SimilarityMatrix};

/// Minimum-cost assignment of every row to a distinct column, `rows <= cols`.
///
/// `cost` is row-major. Returns the column chosen for each row. This is the
/// O(rows² · cols) shortest-augmenting-path form of the Kuhn–Munkres method
/// with row and column potentials.
pub fn kuhn_munkres(cost: &[f64], rows: usize, cols: usize) -> Vec<usize> {
    assert!(rows <= cols, "kuhn_munkres needs rows <= cols");
    assert_eq!(cost.len(), rows * cols);
    let inf = f64::INFINITY;
    // 1-based; index 0 is the virtual start column / unmatched marker.
    let mut u = vec![0.0; rows + 1];
    let mut v = vec![0.0; cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for row in 1..=rows {
        owner[0] = row;
        let mut j0 = 0;
        let mut min_slack = vec![inf; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let reduced = cost[(i0 - 1) * cols + (j - 1)] - u[i0] - v[j];
                if reduced < min_slack[j] {
                    min_slack[j] = reduced;
                    way[j] = j0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; rows];
    for j in 1..=cols {
        if owner[j] != 0 {
            assignment[owner[j] - 1] = j - 1;
        }
    }
    assignment
}

/// One maximum-weight matching pass: each paper gets at most one reviewer and
/// each reviewer at most `remaining[r]` papers.
///
/// A reviewer with remaining capacity `c` is expanded into `c` identical
/// slots and the rectangular problem is padded with zero-weight slots.
/// Zero-weight edges and `excluded` `(paper, reviewer)` pairs are never
/// matched.
pub fn hungarian_pass(
    matrix: &SimilarityMatrix,
    remaining: &[usize],
    excluded: &BTreeSet<(usize, usize)>,
) -> Vec<AssignedPair> {
    check_capacities(matrix, remaining);
    let papers = matrix.num_papers();
    let eligible = |r: usize, p: usize| matrix.weight(r, p) > 0.0 && !excluded.contains(&(p, r));

    let mut slots = Vec::new();
    for (r, &cap) in remaining.iter().enumerate() {
        if (0..papers).any(|p| eligible(r, p)) {
            slots.extend(std::iter::repeat_n(r, cap.min(papers)));
        }
    }
    if papers == 0 || slots.is_empty() {
        return Vec::new();
    }
    let cols = slots.len().max(papers);
    let mut cost = vec![0.0; papers * cols];
    for p in 0..papers {
        for (s, &r) in slots.iter().enumerate() {
            if eligible(r, p) {
                cost[p * cols + s] = -matrix.weight(r, p);
            }
        }
    }
    kuhn_munkres(&cost, papers, cols)
        .into_iter()
        .enumerate()
        .filter_map(|(paper, slot)| {
            let reviewer = *slots.get(slot)?;
            eligible(reviewer, paper).then(|| AssignedPair {
                paper,
                reviewer,
                weight: matrix.weight(reviewer, paper),
            })
        })
        .collect()
}

/// `m` successive [`hungarian_pass`]es. Pairs chosen in earlier passes are
/// excluded and capacities are decremented between passes.
///
/// Each pass is optimal on its own; the union need not be, because capacity
/// spent in an early pass can be worth more to a later one.
pub fn assign_hungarian_multipass(
    matrix: &SimilarityMatrix,
    m: usize,
    capacities: &[usize],
) -> AssignmentOutcome {
    check_capacities(matrix, capacities);
    let mut remaining = capacities.to_vec();
    let mut excluded = BTreeSet::new();
    let mut assignment = AssignmentSet::new();
    let mut passes = 0;
    for _ in 0..m {
        let matched = hungarian_pass(matrix, &remaining, &excluded);
        if matched.is_empty() {
            break;
        }
        passes += 1;
        for pair in matched {
            remaining[pair.reviewer] -= 1;
            excluded.insert((pair.paper, pair.reviewer));
            assignment
                .insert(matrix, pair.paper, pair.reviewer)
                .expect("pass emits positive, fresh pairs");
        }
    }
    AssignmentOutcome::new(Algorithm::HungarianMultipass, matrix, m, assignment, passes)
}

#[derive(Debug, Clone, Copy)]
struct Arc {
    to: usize,
    cap: usize,
    cost: f64,
}

/// Residual network for source → papers → reviewers → sink.
struct FlowNetwork {
    arcs: Vec<Arc>,
    adjacency: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            adjacency: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: usize, cost: f64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.adjacency[from].push(id);
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
        });
        self.adjacency[to].push(id + 1);
        id
    }

    fn push(&mut self, arc: usize) {
        self.arcs[arc].cap -= 1;
        self.arcs[arc ^ 1].cap += 1;
    }
}

/// Maximum-weight assignment giving each paper at most `m` distinct reviewers
/// and each reviewer at most `capacities[r]` papers.
///
/// Solved as a min-cost flow (source → paper with capacity `m`, paper →
/// reviewer with capacity 1 and cost `-weight`, reviewer → sink with the
/// reviewer's capacity) by successive shortest augmenting paths under
/// Johnson potentials, the primal–dual scheme of the Hungarian method
/// generalised to capacities. Augmentation stops as soon as the cheapest
/// path no longer adds weight. `rounds` counts augmentations.
pub fn assign_hungarian(
    matrix: &SimilarityMatrix,
    m: usize,
    capacities: &[usize],
) -> AssignmentOutcome {
    check_capacities(matrix, capacities);
    let papers = matrix.num_papers();
    let reviewers = matrix.num_reviewers();
    let source = 0;
    let paper_node = |p: usize| 1 + p;
    let reviewer_node = |r: usize| 1 + papers + r;
    let sink = 1 + papers + reviewers;
    let nodes = sink + 1;

    let mut net = FlowNetwork::new(nodes);
    for p in 0..papers {
        net.add(source, paper_node(p), m, 0.0);
    }
    let mut edge_arcs = Vec::new();
    for p in 0..papers {
        for (r, &cap) in capacities.iter().enumerate() {
            let w = matrix.weight(r, p);
            if w > 0.0 && cap > 0 {
                let id = net.add(paper_node(p), reviewer_node(r), 1, -w);
                edge_arcs.push((id, p, r));
            }
        }
    }
    for (r, &cap) in capacities.iter().enumerate() {
        if cap > 0 {
            net.add(reviewer_node(r), sink, cap, 0.0);
        }
    }

    // Shortest distances in the initial acyclic network.
    let mut potential = vec![0.0; nodes];
    for &(id, p, r) in &edge_arcs {
        let d = potential[paper_node(p)] + net.arcs[id].cost;
        if d < potential[reviewer_node(r)] {
            potential[reviewer_node(r)] = d;
        }
    }
    potential[sink] = (0..reviewers)
        .map(|r| potential[reviewer_node(r)])
        .fold(0.0, f64::min);

    let mut augmentations = 0;
    let mut dist = vec![f64::INFINITY; nodes];
    let mut parent = vec![usize::MAX; nodes];
    let mut done = vec![false; nodes];
    loop {
        dist.fill(f64::INFINITY);
        parent.fill(usize::MAX);
        done.fill(false);
        dist[source] = 0.0;
        // Dense Dijkstra; the network has few nodes and many arcs.
        loop {
            let mut u = usize::MAX;
            let mut best = f64::INFINITY;
            for (i, &d) in dist.iter().enumerate() {
                if !done[i] && d < best {
                    best = d;
                    u = i;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            for &id in &net.adjacency[u] {
                let arc = net.arcs[id];
                if arc.cap == 0 || done[arc.to] {
                    continue;
                }
                let reduced = (arc.cost + potential[u] - potential[arc.to]).max(0.0);
                let d = dist[u] + reduced;
                if d < dist[arc.to] {
                    dist[arc.to] = d;
                    parent[arc.to] = id;
                }
            }
        }
        if !dist[sink].is_finite() {
            break;
        }
        let path_cost = dist[sink] + potential[sink] - potential[source];
        if path_cost >= -1e-12 {
            break;
        }
        for (i, d) in dist.iter().enumerate() {
            if d.is_finite() {
                potential[i] += d;
            }
        }
        let mut v = sink;
        while v != source {
            let id = parent[v];
            net.push(id);
            v = net.arcs[id ^ 1].to;
        }
        augmentations += 1;
    }

    let mut assignment = AssignmentSet::new();
    for (id, p, r) in edge_arcs {
        if net.arcs[id].cap == 0 {
            assignment
                .insert(matrix, p, r)
                .expect("flow uses each positive edge at most once");
        }
    }
    AssignmentOutcome::new(Algorithm::Hungarian, matrix, m, assignment, augmentations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{figure2_matrix, greedy_trap_matrix};

    fn ids(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn kuhn_munkres_small_square() {
        let cost = [4.0, 1.0, 3.0, 2.0, 0.0, 5.0, 3.0, 2.0, 2.0];
        let a = kuhn_munkres(&cost, 3, 3);
        let total: f64 = a.iter().enumerate().map(|(i, &j)| cost[i * 3 + j]).sum();
        assert_eq!(total, 5.0);
    }

    #[test]
    fn kuhn_munkres_rectangular() {
        let cost = [5.0, 1.0, 9.0, 2.0, 8.0, 1.0];
        assert_eq!(kuhn_munkres(&cost, 2, 3), vec![1, 2]);
    }

    #[test]
    fn single_cell_pass() {
        let m = SimilarityMatrix::new(ids("r", 1), ids("p", 1), vec![0.7]).unwrap();
        let pairs = hungarian_pass(&m, &[1], &BTreeSet::new());
        assert_eq!(
            pairs,
            vec![AssignedPair {
                paper: 0,
                reviewer: 0,
                weight: 0.7
            }]
        );
    }

    #[test]
    fn zero_matrix_matches_nothing() {
        let m = SimilarityMatrix::zeros(ids("r", 3), ids("p", 4));
        assert!(hungarian_pass(&m, &[2, 2, 2], &BTreeSet::new()).is_empty());
        let out = assign_hungarian(&m, 2, &[2, 2, 2]);
        assert!(out.assignment.is_empty());
        assert_eq!(out.uncovered.len(), 4);
    }

    #[test]
    fn excluded_pairs_are_skipped() {
        let m = SimilarityMatrix::new(ids("r", 2), ids("p", 1), vec![0.9, 0.1]).unwrap();
        let pairs = hungarian_pass(&m, &[1, 1], &BTreeSet::from([(0, 0)]));
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].reviewer, 1);
    }

    #[test]
    fn capacity_expands_into_slots() {
        // one strong reviewer with capacity 2 takes both papers
        let m = SimilarityMatrix::new(ids("r", 2), ids("p", 2), vec![0.9, 0.8, 0.1, 0.1]).unwrap();
        let pairs = hungarian_pass(&m, &[2, 1], &BTreeSet::new());
        assert!(pairs.iter().all(|p| p.reviewer == 0));
        assert_eq!(pairs.len(), 2);
    }

    #[test]
    fn figure2_single_pass_and_flow_agree() {
        let m = figure2_matrix();
        let caps = [1; 5];
        let pass: f64 = hungarian_pass(&m, &caps, &BTreeSet::new())
            .iter()
            .map(|p| p.weight)
            .sum();
        let flow = assign_hungarian(&m, 1, &caps);
        assert!((pass - flow.total_weight).abs() < 1e-9);
        // r3 is the only reviewer left for p5 and its weight there is 0
        assert_eq!(flow.uncovered.len(), 1);
        assert_eq!(flow.uncovered[0].paper, 4);
    }

    #[test]
    fn trap_instance_is_fully_covered() {
        let out = assign_hungarian(&greedy_trap_matrix(), 1, &[1, 1]);
        assert!(out.uncovered.is_empty());
        assert!((out.total_weight - 1.5).abs() < 1e-12);
    }

    #[test]
    fn multipass_can_lose_to_the_joint_optimum() {
        // A (cap 1) is wanted by both papers. A first pass that spends A on
        // p2 leaves p1 without its second-best option.
        let m = SimilarityMatrix::from_rows(
            vec!["A".into(), "B".into(), "C".into()],
            ids("p", 2),
            &[vec![1.0, 0.9], vec![0.5, 0.0], vec![0.0, 0.1]],
        )
        .unwrap();
        let caps = [1, 1, 1];
        let joint = assign_hungarian(&m, 2, &caps);
        let passes = assign_hungarian_multipass(&m, 2, &caps);
        assert!((joint.total_weight - 1.6).abs() < 1e-12);
        assert!((passes.total_weight - 1.5).abs() < 1e-12);
    }

    #[test]
    fn pigeonhole_leaves_one_paper_uncovered() {
        let m = SimilarityMatrix::new(ids("r", 2), ids("p", 2), vec![0.6, 0.5, 0.0, 0.0]).unwrap();
        for out in [
            assign_hungarian(&m, 1, &[1, 1]),
            assign_hungarian_multipass(&m, 1, &[1, 1]),
        ] {
            assert_eq!(out.assignment.len(), 1);
            assert_eq!(out.uncovered.len(), 1);
        }
    }
}
