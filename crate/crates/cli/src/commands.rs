use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use serde::Serialize;

use revassign_core::ratings::{prediction_quality, DEFAULT_NEIGHBOURS, DEFAULT_SAMPLE_SIZE};
use revassign_core::synth::{generate_dataset, hidden_truth, SynthConfig};
use revassign_core::{
    assign_greedy, assign_heuristic, assign_hungarian, assign_hungarian_multipass,
    brute_force_optimal, build_similarity_matrix, irm_iteration, simulate_bidder, Algorithm,
    AssignmentOutcome, BidScale, Dataset, IrmParams, IrmState, RatingTable, SimilarityMatrix,
    SimilarityMethod, TopicMeasure,
};

use crate::formats::{
    read_dataset, read_matrix, read_path, read_ratings, read_truth, write_dataset, write_matrix,
    write_outcomes, write_path, write_ratings, write_truth, OutcomeRecord,
};

fn at_least_one(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// How the similarity matrix is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MethodSpec {
    Computed(SimilarityMethod),
    /// Weights read from a matrix file (`--weights`).
    Given,
}

impl FromStr for MethodSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let scale = BidScale::default();
        let method = match s {
            "matrix" => return Ok(MethodSpec::Given),
            "easychair" => SimilarityMethod::EasyChairCoarse,
            "bid" => SimilarityMethod::BidOnly(scale),
            "combined" => SimilarityMethod::Combined(TopicMeasure::Jaccard, scale),
            _ => match s.strip_prefix("combined:") {
                Some(m) => SimilarityMethod::Combined(
                    TopicMeasure::from_str(m).map_err(|e| e.to_string())?,
                    scale,
                ),
                None => {
                    match TopicMeasure::from_str(s).map_err(|_| format!("unknown method {s:?}"))? {
                        TopicMeasure::Jaccard => SimilarityMethod::Jaccard,
                        TopicMeasure::Dice => SimilarityMethod::Dice,
                        TopicMeasure::WeightedRelative => SimilarityMethod::WeightedRelative,
                        TopicMeasure::WeightedAbsolute => SimilarityMethod::WeightedAbsolute,
                    }
                }
            },
        };
        Ok(MethodSpec::Computed(method))
    }
}

/// Where a matrix comes from when it is built from a dataset.
#[derive(Debug, Clone, Args)]
pub struct MatrixSource {
    /// Similarity method: jaccard, dice, weighted-relative, weighted-absolute,
    /// easychair, bid, combined[:<measure>], or matrix (take --weights as is).
    #[arg(long, default_value = "jaccard")]
    pub method: MethodSpec,
    /// Bids (JSON Lines); required by `bid` and `combined`.
    #[arg(long)]
    pub ratings: Option<PathBuf>,
    /// Matrix file supplying the weights for `--method matrix`.
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

pub fn load_dataset(path: &Path) -> Result<Dataset> {
    read_path(path, |input, source| read_dataset(input, source))
}

/// Builds the reviewers × papers matrix for `dataset`. Conflicts are zero.
pub fn compute_matrix(dataset: &Dataset, source: &MatrixSource) -> Result<SimilarityMatrix> {
    if dataset.reviewers().is_empty() {
        bail!("no reviewers");
    }
    match source.method {
        MethodSpec::Given => {
            let path = source
                .weights
                .as_deref()
                .ok_or_else(|| anyhow!("--method matrix needs --weights"))?;
            let given = read_path(path, |input, name| read_matrix(input, name))?;
            align(&given, dataset).with_context(|| format!("{}", path.display()))
        }
        MethodSpec::Computed(method) => {
            let ratings = match &source.ratings {
                Some(path) => Some(read_path(path, |input, name| {
                    read_ratings(input, name, dataset)
                })?),
                None => None,
            };
            Ok(build_similarity_matrix(dataset, method, ratings.as_ref())?)
        }
    }
}

/// Reorders `given` into dataset order and zeroes conflict cells. The matrix
/// must name exactly the dataset's reviewers and papers.
fn align(given: &SimilarityMatrix, dataset: &Dataset) -> Result<SimilarityMatrix> {
    let index = |ids: &[String], want: Vec<String>, what: &str| -> Result<Vec<usize>> {
        if ids.len() != want.len() {
            bail!(
                "matrix has {} {what}s, dataset has {}",
                ids.len(),
                want.len()
            );
        }
        want.iter()
            .map(|id| {
                ids.iter()
                    .position(|x| x == id)
                    .ok_or_else(|| anyhow!("matrix has no {what} {id:?}"))
            })
            .collect()
    };
    let rows = index(given.reviewer_ids(), dataset.reviewer_ids(), "reviewer")?;
    let cols = index(given.paper_ids(), dataset.paper_ids(), "paper")?;
    let weights = rows
        .iter()
        .enumerate()
        .flat_map(|(r, &gr)| {
            cols.iter().enumerate().map(move |(p, &gp)| {
                if dataset.is_conflict(r, p) {
                    0.0
                } else {
                    given.weight(gr, gp)
                }
            })
        })
        .collect();
    Ok(SimilarityMatrix::new(
        dataset.reviewer_ids(),
        dataset.paper_ids(),
        weights,
    )?)
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 50, value_parser = at_least_one)]
    pub papers: usize,
    #[arg(long, default_value_t = 30, value_parser = at_least_one)]
    pub reviewers: usize,
    #[arg(long, default_value_t = 20, value_parser = at_least_one)]
    pub topics: usize,
    /// Chance that a descriptor selects a given topic, in (0, 1].
    #[arg(long, default_value_t = 0.2)]
    pub density: f64,
    /// Reviewers per paper; sets capacities to ⌈m·papers/reviewers⌉.
    #[arg(long, default_value_t = 3, value_parser = at_least_one)]
    pub m: usize,
    /// Draw topic weights from {0.25, 0.5, 0.75, 1}.
    #[arg(long)]
    pub weighted: bool,
    /// Chance that a (reviewer, paper) pair is a conflict.
    #[arg(long, default_value_t = 0.0)]
    pub conflict_rate: f64,
    /// Dataset output (JSON Lines, `-` for stdout).
    #[arg(long, short)]
    pub out: PathBuf,
    /// Also write hidden reviewer expertise for `irm`.
    #[arg(long)]
    pub truth: Option<PathBuf>,
}

impl GenArgs {
    pub fn config(&self) -> SynthConfig {
        SynthConfig {
            papers: self.papers,
            reviewers: self.reviewers,
            topics: self.topics,
            density: self.density,
            reviewers_per_paper: self.m,
            weighted: self.weighted,
            conflict_rate: self.conflict_rate,
            seed: self.seed,
        }
    }
}

pub fn cmd_gen(args: &GenArgs) -> Result<String> {
    let cfg = args.config();
    let dataset = generate_dataset(&cfg)?;
    write_path(&args.out, |out| write_dataset(out, &dataset))?;
    if let Some(path) = &args.truth {
        let truth = hidden_truth(&dataset, args.seed);
        write_path(path, |out| write_truth(out, &truth, &dataset))?;
    }
    Ok(format!(
        "generated {} papers, {} reviewers (capacity {}), {} topics\n",
        cfg.papers,
        cfg.reviewers,
        cfg.capacity(),
        cfg.topics
    ))
}

#[derive(Debug, Clone, Args)]
pub struct SimilarityArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    #[command(flatten)]
    pub source: MatrixSource,
    /// Matrix output (`-` for stdout).
    #[arg(long, short, default_value = "-")]
    pub out: PathBuf,
}

/// Writes the matrix; returns the per-paper candidate summary.
pub fn cmd_similarity(args: &SimilarityArgs) -> Result<String> {
    let dataset = load_dataset(&args.dataset)?;
    let matrix = compute_matrix(&dataset, &args.source)?;
    write_path(&args.out, |out| write_matrix(out, &matrix))?;
    let mut s = String::from("paper\tcandidates\n");
    for (p, id) in matrix.paper_ids().iter().enumerate() {
        let _ = writeln!(s, "{id}\t{}", matrix.candidate_count(p));
    }
    Ok(s)
}

/// `algorithm=all` runs these side by side.
pub const COMPARED: [Algorithm; 3] = [
    Algorithm::Hungarian,
    Algorithm::Greedy,
    Algorithm::Heuristic,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgorithmChoice {
    One(Algorithm),
    All,
}

impl FromStr for AlgorithmChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(AlgorithmChoice::All);
        }
        Algorithm::from_str(s)
            .map(AlgorithmChoice::One)
            .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Args)]
pub struct AssignArgs {
    /// Similarity matrix file; computed from --dataset when absent.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Dataset supplying capacities (and the matrix, without --matrix).
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    #[command(flatten)]
    pub source: MatrixSource,
    /// Reviewers per paper.
    #[arg(long, default_value_t = 3, value_parser = at_least_one)]
    pub m: usize,
    /// Capacity of every reviewer; overrides dataset capacities.
    #[arg(long, value_parser = at_least_one)]
    pub capacity: Option<usize>,
    /// hungarian, hungarian-multipass, greedy, heuristic, brute-force or all.
    #[arg(long, default_value = "hungarian")]
    pub algorithm: AlgorithmChoice,
    /// Outcomes (JSON Lines, one per algorithm).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct AssignRun {
    pub outcomes: Vec<OutcomeRecord>,
    pub wall: Vec<Duration>,
    pub warnings: Vec<String>,
    pub report: String,
}

pub fn run_algorithm(
    algorithm: Algorithm,
    matrix: &SimilarityMatrix,
    m: usize,
    capacities: &[usize],
) -> Result<AssignmentOutcome> {
    let order: Vec<usize> = (0..matrix.num_papers()).collect();
    Ok(match algorithm {
        Algorithm::Hungarian => assign_hungarian(matrix, m, capacities),
        Algorithm::HungarianMultipass => assign_hungarian_multipass(matrix, m, capacities),
        Algorithm::Greedy => assign_greedy(matrix, m, capacities, &order),
        Algorithm::Heuristic => assign_heuristic(matrix, m, capacities),
        Algorithm::BruteForce => brute_force_optimal(matrix, m, capacities)?,
    })
}

fn timed(
    algorithm: Algorithm,
    matrix: &SimilarityMatrix,
    m: usize,
    caps: &[usize],
) -> Result<(AssignmentOutcome, Duration)> {
    let start = Instant::now();
    let out = run_algorithm(algorithm, matrix, m, caps)?;
    Ok((out, start.elapsed()))
}

pub fn cmd_assign(args: &AssignArgs) -> Result<AssignRun> {
    let dataset = args.dataset.as_deref().map(load_dataset).transpose()?;
    let matrix = match (&args.matrix, &dataset) {
        (Some(path), Some(ds)) => {
            let given = read_path(path, |input, name| read_matrix(input, name))?;
            align(&given, ds).with_context(|| format!("{}", path.display()))?
        }
        (Some(path), None) => read_path(path, |input, name| read_matrix(input, name))?,
        (None, Some(ds)) => compute_matrix(ds, &args.source)?,
        (None, None) => bail!("need --matrix or --dataset"),
    };
    if matrix.num_reviewers() == 0 {
        bail!("no reviewers");
    }
    let capacities = match (args.capacity, &dataset) {
        (Some(c), _) => vec![c; matrix.num_reviewers()],
        (None, Some(ds)) => ds.capacities(),
        (None, None) => bail!("need --capacity when no dataset is given"),
    };

    let mut warnings = Vec::new();
    let total: usize = capacities.iter().sum();
    let required = args.m * matrix.num_papers();
    let infeasible = total < required;
    if infeasible {
        warnings.push(format!(
            "Σ capacities {total} < {required}: some papers will get fewer than {} reviewers",
            args.m
        ));
    }

    let algorithms: Vec<Algorithm> = match args.algorithm {
        AlgorithmChoice::One(a) => vec![a],
        AlgorithmChoice::All => COMPARED.to_vec(),
    };
    let results: Vec<Result<(AssignmentOutcome, Duration)>> = std::thread::scope(|s| {
        let handles: Vec<_> = algorithms
            .iter()
            .map(|&a| {
                let (matrix, caps) = (&matrix, &capacities);
                s.spawn(move || timed(a, matrix, args.m, caps))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("algorithm thread panicked"))
            .collect()
    });
    let mut outcomes = Vec::new();
    let mut wall = Vec::new();
    for r in results {
        let (outcome, time) = r?;
        outcomes.push(OutcomeRecord::new(&outcome, &matrix, args.m, infeasible));
        wall.push(time);
    }

    if let Some(path) = &args.out {
        write_path(path, |out| write_outcomes(out, &outcomes))?;
    }
    let report = assign_report(&outcomes, &wall, args.m, infeasible);
    Ok(AssignRun {
        outcomes,
        wall,
        warnings,
        report,
    })
}

#[derive(Serialize)]
struct AssignSummary<'a> {
    m: usize,
    infeasible: bool,
    results: Vec<AssignSummaryRow<'a>>,
}

#[derive(Serialize)]
struct AssignSummaryRow<'a> {
    algorithm: &'a str,
    total_weight: f64,
    covered: usize,
    papers: usize,
    uncovered: usize,
    wall_ms: f64,
}

fn assign_report(
    outcomes: &[OutcomeRecord],
    wall: &[Duration],
    m: usize,
    infeasible: bool,
) -> String {
    let mut s = format!(
        "{:<20} {:>12} {:>9} {:>9} {:>10}\n",
        "algorithm", "weight", "covered", "uncovered", "wall_ms"
    );
    let mut rows = Vec::new();
    for (o, t) in outcomes.iter().zip(wall) {
        let ms = t.as_secs_f64() * 1e3;
        let _ = writeln!(
            s,
            "{:<20} {:>12.6} {:>9} {:>9} {:>10.3}",
            o.algorithm,
            o.total_weight,
            format!("{}/{}", o.covered, o.papers),
            o.uncovered.len(),
            ms
        );
        rows.push(AssignSummaryRow {
            algorithm: &o.algorithm,
            total_weight: o.total_weight,
            covered: o.covered,
            papers: o.papers,
            uncovered: o.uncovered.len(),
            wall_ms: ms,
        });
    }
    let summary = AssignSummary {
        m,
        infeasible,
        results: rows,
    };
    s.push_str("--- json\n");
    s.push_str(&serde_json::to_string(&summary).expect("plain data"));
    s.push('\n');
    s
}

#[derive(Debug, Clone, Args)]
pub struct IrmArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    /// Hidden reviewer expertise driving the simulated bidder.
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 3, value_parser = at_least_one)]
    pub iterations: usize,
    /// Papers proposed to each reviewer per iteration.
    #[arg(long, short = 'k', default_value_t = DEFAULT_SAMPLE_SIZE, value_parser = at_least_one)]
    pub sample_size: usize,
    /// Neighbours used for each prediction.
    #[arg(long, short = 'n', default_value_t = DEFAULT_NEIGHBOURS, value_parser = at_least_one)]
    pub neighbours: usize,
    /// Chance that a simulated bid is replaced by a uniform random level.
    #[arg(long, default_value_t = 0.1)]
    pub noise: f64,
    /// Bids already collected (JSON Lines).
    #[arg(long)]
    pub ratings: Option<PathBuf>,
    /// Final rating table.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Directory receiving `ratings-<iteration>.jsonl` after every iteration.
    #[arg(long)]
    pub snapshots: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrmRow {
    pub iteration: usize,
    pub explicit: usize,
    pub predicted: usize,
    pub sampled: usize,
    pub rmse: Option<f64>,
    pub neutral_rmse: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct IrmRun {
    pub rows: Vec<IrmRow>,
    pub table: RatingTable,
    pub report: String,
}

pub fn cmd_irm(args: &IrmArgs) -> Result<IrmRun> {
    if !(0.0..=1.0).contains(&args.noise) {
        bail!("--noise {} must lie in [0, 1]", args.noise);
    }
    let dataset = load_dataset(&args.dataset)?;
    if dataset.reviewers().is_empty() {
        bail!("no reviewers");
    }
    let truth = read_path(&args.truth, |input, name| read_truth(input, name, &dataset))?;
    let start = match &args.ratings {
        Some(path) => read_path(path, |input, name| read_ratings(input, name, &dataset))?,
        None => RatingTable::new(),
    };
    if let Some(dir) = &args.snapshots {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }

    let mut bidder = simulate_bidder(&dataset, truth, args.noise, args.seed);
    let params = IrmParams {
        sample_size: args.sample_size,
        neighbours: args.neighbours,
    };
    let mut state = IrmState::new(start);
    let mut rows = Vec::new();
    for _ in 0..args.iterations {
        state = irm_iteration(state, &dataset, params, &mut bidder);
        let quality = prediction_quality(&state.table, |r, p| bidder.true_level(r, p));
        rows.push(IrmRow {
            iteration: state.iteration,
            explicit: state.table.explicit_count(),
            predicted: state.table.predicted_count(),
            sampled: state.samples.iter().map(Vec::len).sum(),
            rmse: quality.map(|q| q.rmse),
            neutral_rmse: quality.map(|q| q.neutral_rmse),
        });
        if let Some(dir) = &args.snapshots {
            let path = dir.join(format!("ratings-{}.jsonl", state.iteration));
            write_path(&path, |out| write_ratings(out, &state.table, &dataset))?;
        }
    }
    if let Some(path) = &args.out {
        write_path(path, |out| write_ratings(out, &state.table, &dataset))?;
    }

    let mode = if args.iterations == 1 {
        "single-pass"
    } else {
        "iterative"
    };
    let mut report = format!(
        "mode: {mode}, k={}, n={}, noise={}\n{:>9} {:>9} {:>9} {:>8} {:>9} {:>12}\n",
        args.sample_size,
        args.neighbours,
        args.noise,
        "iteration",
        "explicit",
        "predicted",
        "sampled",
        "rmse",
        "neutral_rmse"
    );
    let num = |x: Option<f64>| x.map_or_else(|| "-".to_owned(), |v| format!("{v:.4}"));
    for r in &rows {
        let _ = writeln!(
            report,
            "{:>9} {:>9} {:>9} {:>8} {:>9} {:>12}",
            r.iteration,
            r.explicit,
            r.predicted,
            r.sampled,
            num(r.rmse),
            num(r.neutral_rmse)
        );
    }
    if !state.anomalies.is_empty() {
        let _ = writeln!(
            report,
            "anomalies: {} bids on conflicted pairs ignored",
            state.anomalies.len()
        );
    }
    report.push_str("--- json\n");
    report.push_str(&serde_json::to_string(&rows).expect("plain data"));
    report.push('\n');
    Ok(IrmRun {
        rows,
        table: state.table,
        report,
    })
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 200, value_parser = at_least_one)]
    pub instances: usize,
    #[arg(long, default_value_t = 50, value_parser = at_least_one)]
    pub papers: usize,
    #[arg(long, default_value_t = 30, value_parser = at_least_one)]
    pub reviewers: usize,
    #[arg(long, default_value_t = 20, value_parser = at_least_one)]
    pub topics: usize,
    #[arg(long, default_value_t = 0.2)]
    pub density: f64,
    #[arg(long, default_value_t = 1, value_parser = at_least_one)]
    pub m: usize,
    /// Worker threads; instances are independent.
    #[arg(long, value_parser = at_least_one)]
    pub threads: Option<usize>,
}

impl BenchArgs {
    /// Instance `i` is generated from `seed + i`.
    pub fn instance_config(&self, i: usize) -> SynthConfig {
        SynthConfig {
            papers: self.papers,
            reviewers: self.reviewers,
            topics: self.topics,
            density: self.density,
            reviewers_per_paper: self.m,
            weighted: false,
            conflict_rate: 0.0,
            seed: self.seed.wrapping_add(i as u64),
        }
    }
}

/// Results for one algorithm on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchCell {
    pub weight: f64,
    pub uncovered: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchAlgorithm {
    pub algorithm: &'static str,
    pub mean_weight: f64,
    /// Mean of weight / hungarian weight over instances where hungarian > 0.
    pub mean_ratio: f64,
    pub min_ratio: f64,
    pub mean_uncovered: f64,
    pub mean_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub instances: usize,
    pub papers: usize,
    pub reviewers: usize,
    pub m: usize,
    pub density: f64,
    pub seed: u64,
    pub algorithms: Vec<BenchAlgorithm>,
}

impl BenchReport {
    pub fn algorithm(&self, algorithm: Algorithm) -> Option<&BenchAlgorithm> {
        self.algorithms
            .iter()
            .find(|a| a.algorithm == algorithm.name())
    }
}

fn bench_instance(args: &BenchArgs, i: usize) -> Result<Vec<BenchCell>> {
    let dataset = generate_dataset(&args.instance_config(i))?;
    let matrix = build_similarity_matrix(&dataset, SimilarityMethod::Jaccard, None)?;
    let caps = dataset.capacities();
    COMPARED
        .iter()
        .map(|&a| {
            let (out, t) = timed(a, &matrix, args.m, &caps)?;
            Ok(BenchCell {
                weight: out.total_weight,
                uncovered: out.uncovered.len(),
                seconds: t.as_secs_f64(),
            })
        })
        .collect()
}

/// Generates `instances` synthetic Jaccard instances and compares the
/// algorithms on each.
pub fn run_bench(args: &BenchArgs) -> Result<BenchReport> {
    let threads = args
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .min(args.instances);
    let per_instance: Vec<Result<Vec<BenchCell>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                s.spawn(move || {
                    (t..args.instances)
                        .step_by(threads)
                        .map(|i| (i, bench_instance(args, i)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let mut all: Vec<(usize, Result<Vec<BenchCell>>)> = handles
            .into_iter()
            .flat_map(|h| h.join().expect("bench thread panicked"))
            .collect();
        all.sort_by_key(|(i, _)| *i);
        all.into_iter().map(|(_, r)| r).collect()
    });
    let cells: Vec<Vec<BenchCell>> = per_instance.into_iter().collect::<Result<_>>()?;

    let n = cells.len() as f64;
    let algorithms = COMPARED
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let ratios: Vec<f64> = cells
                .iter()
                .filter(|c| c[0].weight > 0.0)
                .map(|c| c[k].weight / c[0].weight)
                .collect();
            BenchAlgorithm {
                algorithm: a.name(),
                mean_weight: cells.iter().map(|c| c[k].weight).sum::<f64>() / n,
                mean_ratio: ratios.iter().sum::<f64>() / ratios.len().max(1) as f64,
                min_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
                mean_uncovered: cells.iter().map(|c| c[k].uncovered as f64).sum::<f64>() / n,
                mean_ms: cells.iter().map(|c| c[k].seconds * 1e3).sum::<f64>() / n,
            }
        })
        .collect();
    Ok(BenchReport {
        instances: cells.len(),
        papers: args.papers,
        reviewers: args.reviewers,
        m: args.m,
        density: args.density,
        seed: args.seed,
        algorithms,
    })
}

pub fn bench_report(report: &BenchReport) -> String {
    let mut s = format!(
        "{} instances, {} papers × {} reviewers, m={}, density={}, seed={}\n",
        report.instances, report.papers, report.reviewers, report.m, report.density, report.seed
    );
    let _ = writeln!(
        s,
        "{:<12} {:>12} {:>12} {:>10} {:>14} {:>10}",
        "algorithm", "mean_weight", "mean_ratio", "min_ratio", "mean_uncovered", "mean_ms"
    );
    for a in &report.algorithms {
        let _ = writeln!(
            s,
            "{:<12} {:>12.4} {:>12.4} {:>10.4} {:>14.2} {:>10.3}",
            a.algorithm, a.mean_weight, a.mean_ratio, a.min_ratio, a.mean_uncovered, a.mean_ms
        );
    }
    s.push_str("--- json\n");
    s.push_str(&serde_json::to_string(report).expect("plain data"));
    s.push('\n');
    s
}

pub fn cmd_bench(args: &BenchArgs) -> Result<String> {
    if !(args.density > 0.0 && args.density <= 1.0) {
        bail!("--density {} must lie in (0, 1]", args.density);
    }
    Ok(bench_report(&run_bench(args)?))
}
