//! On-disk formats.
//!
//! Datasets, ratings, hidden truth and assignment outcomes are JSON Lines:
//! one record per line, blank lines ignored. Similarity matrices are
//! tab-separated: a header of paper ids, then one row per reviewer with six
//! fractional digits.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use revassign_core::{
    AssignmentOutcome, BidLevel, Dataset, PaperDescriptor, RatingTable, ReviewerDescriptor,
    SimilarityMatrix, TopicSelection, TopicVocabulary,
};

/// Opens `path` for reading; `-` is standard input.
pub fn open_input(path: &Path) -> Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(Box::new(BufReader::new(file)))
}

/// Creates `path` for writing; `-` is standard output.
pub fn create_output(path: &Path) -> Result<Box<dyn Write>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufWriter::new(io::stdout())));
    }
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(Box::new(BufWriter::new(file)))
}

pub fn read_path<T>(
    path: &Path,
    read: impl FnOnce(&mut dyn BufRead, &str) -> Result<T>,
) -> Result<T> {
    let mut input = open_input(path)?;
    read(&mut input, &path.display().to_string())
}

pub fn write_path(path: &Path, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let mut out = create_output(path)?;
    write(&mut out)?;
    out.flush()
        .with_context(|| format!("cannot write {}", path.display()))
}

/// Non-blank lines with their 1-based numbers.
fn lines(input: &mut dyn BufRead, source: &str) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.with_context(|| format!("{source}: read failed"))?;
        if !line.trim().is_empty() {
            out.push((i + 1, line));
        }
    }
    Ok(out)
}

fn located<E: std::fmt::Display>(
    source: &str,
    line: usize,
    e: serde_path_to_error::Error<E>,
) -> anyhow::Error {
    let path = e.path().to_string();
    if path == "." {
        anyhow!("{source}:{line}: {}", e.inner())
    } else {
        anyhow!("{source}:{line}: field `{path}`: {}", e.inner())
    }
}

fn parse_record<T: DeserializeOwned>(source: &str, line: usize, text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| located(source, line, e))
}

fn write_record<T: Serialize>(out: &mut dyn Write, record: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, record)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Topics of a descriptor: a list of labels (all weight 1) or a map from
/// label to weight.
#[derive(Debug, Clone, PartialEq)]
enum Topics {
    Labels(Vec<String>),
    Weighted(BTreeMap<String, f64>),
}

impl<'de> Deserialize<'de> for Topics {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct Visitor;
        impl<'de> serde::de::Visitor<'de> for Visitor {
            type Value = Topics;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a list of topic labels or a map from label to weight")
            }

            fn visit_seq<A: serde::de::SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Topics, A::Error> {
                let mut labels = Vec::new();
                while let Some(l) = seq.next_element()? {
                    labels.push(l);
                }
                Ok(Topics::Labels(labels))
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Topics, A::Error> {
                let mut weights = BTreeMap::new();
                while let Some((k, v)) = map.next_entry()? {
                    weights.insert(k, v);
                }
                Ok(Topics::Weighted(weights))
            }
        }
        de.deserialize_any(Visitor)
    }
}

impl Serialize for Topics {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Topics::Labels(l) => l.serialize(s),
            Topics::Weighted(w) => w.serialize(s),
        }
    }
}

impl Topics {
    fn from_selection(selection: &TopicSelection, vocabulary: &TopicVocabulary) -> Self {
        let label = |t: usize| vocabulary.topics()[t].label.clone();
        if selection.is_binary() {
            Topics::Labels(selection.topics().map(label).collect())
        } else {
            Topics::Weighted(selection.iter().map(|(t, w)| (label(t), w)).collect())
        }
    }

    fn resolve(&self, labels: &HashMap<String, usize>, at: &str) -> Result<TopicSelection> {
        let lookup = |l: &String| {
            labels
                .get(l)
                .copied()
                .ok_or_else(|| anyhow!("{at}: field `topics`: unknown topic {l:?}"))
        };
        match self {
            Topics::Labels(ls) => {
                let ids = ls.iter().map(lookup).collect::<Result<Vec<_>>>()?;
                Ok(TopicSelection::binary(ids))
            }
            Topics::Weighted(ws) => {
                let mut entries = Vec::with_capacity(ws.len());
                for (l, &w) in ws {
                    if !(0.0..=1.0).contains(&w) {
                        bail!("{at}: field `topics.{l}`: weight {w} outside [0, 1]");
                    }
                    entries.push((lookup(l)?, w));
                }
                Ok(TopicSelection::new(entries))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum DatasetRecord {
    Topic(TopicRecord),
    Paper(PaperRecord),
    Reviewer(ReviewerRecord),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TopicRecord {
    label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PaperRecord {
    id: String,
    topics: Topics,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReviewerRecord {
    id: String,
    capacity: usize,
    topics: Topics,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    conflicts: Vec<String>,
}

/// Dispatches on `kind` first so that errors inside the record keep their
/// field path.
fn parse_dataset_record(source: &str, line: usize, text: &str) -> Result<DatasetRecord> {
    let mut value: serde_json::Map<String, serde_json::Value> = parse_record(source, line, text)?;
    let kind = match value.remove("kind") {
        Some(serde_json::Value::String(k)) => k,
        Some(other) => bail!("{source}:{line}: field `kind`: expected a string, found {other}"),
        None => bail!("{source}:{line}: missing field `kind`"),
    };
    fn typed<T: DeserializeOwned>(
        source: &str,
        line: usize,
        v: serde_json::Map<String, serde_json::Value>,
    ) -> Result<T> {
        serde_path_to_error::deserialize(serde_json::Value::Object(v))
            .map_err(|e| located(source, line, e))
    }
    Ok(match kind.as_str() {
        "topic" => DatasetRecord::Topic(typed(source, line, value)?),
        "paper" => DatasetRecord::Paper(typed(source, line, value)?),
        "reviewer" => DatasetRecord::Reviewer(typed(source, line, value)?),
        other => bail!("{source}:{line}: field `kind`: unknown kind {other:?}, expected topic, paper or reviewer"),
    })
}

/// Reads a dataset. Topics are declared by `topic` records, in id order;
/// papers and reviewers refer to them by label.
pub fn read_dataset(input: &mut dyn BufRead, source: &str) -> Result<Dataset> {
    let records: Vec<(usize, DatasetRecord)> = lines(input, source)?
        .into_iter()
        .map(|(n, text)| Ok((n, parse_dataset_record(source, n, &text)?)))
        .collect::<Result<_>>()?;

    let mut labels = HashMap::new();
    let mut vocabulary = Vec::new();
    for (n, rec) in &records {
        if let DatasetRecord::Topic(TopicRecord { label }) = rec {
            if label.trim().is_empty() {
                bail!("{source}:{n}: field `label`: empty topic label");
            }
            if labels.insert(label.clone(), vocabulary.len()).is_some() {
                bail!("{source}:{n}: field `label`: duplicate topic {label:?}");
            }
            vocabulary.push(label.clone());
        }
    }

    let mut papers = Vec::new();
    let mut reviewers = Vec::new();
    let mut paper_lines: HashMap<String, usize> = HashMap::new();
    let mut reviewer_lines: HashMap<String, usize> = HashMap::new();
    for (n, rec) in &records {
        let at = format!("{source}:{n}");
        match rec {
            DatasetRecord::Topic(_) => {}
            DatasetRecord::Paper(PaperRecord { id, topics }) => {
                if let Some(first) = paper_lines.insert(id.clone(), *n) {
                    bail!("{at}: field `id`: paper {id:?} already defined on line {first}");
                }
                papers.push(PaperDescriptor::new(
                    id.clone(),
                    topics.resolve(&labels, &at)?,
                ));
            }
            DatasetRecord::Reviewer(ReviewerRecord {
                id,
                capacity,
                topics,
                conflicts,
            }) => {
                if let Some(first) = reviewer_lines.insert(id.clone(), *n) {
                    bail!("{at}: field `id`: reviewer {id:?} already defined on line {first}");
                }
                if *capacity == 0 {
                    bail!("{at}: field `capacity`: must be at least 1");
                }
                reviewers.push(
                    ReviewerDescriptor::new(id.clone(), topics.resolve(&labels, &at)?, *capacity)
                        .with_conflicts(conflicts.iter().cloned()),
                );
            }
        }
    }
    for r in &reviewers {
        if let Some(c) = r.conflicts.iter().find(|c| !paper_lines.contains_key(*c)) {
            let n = reviewer_lines[&r.id];
            bail!("{source}:{n}: field `conflicts`: unknown paper {c:?}");
        }
    }
    Ok(Dataset::new(
        TopicVocabulary::from_labels(vocabulary),
        papers,
        reviewers,
    ))
}

pub fn write_dataset(out: &mut dyn Write, dataset: &Dataset) -> Result<()> {
    let vocab = dataset.vocabulary();
    for t in vocab.topics() {
        write_record(
            out,
            &DatasetRecord::Topic(TopicRecord {
                label: t.label.clone(),
            }),
        )?;
    }
    for p in dataset.papers() {
        write_record(
            out,
            &DatasetRecord::Paper(PaperRecord {
                id: p.id.clone(),
                topics: Topics::from_selection(&p.topics, vocab),
            }),
        )?;
    }
    for r in dataset.reviewers() {
        write_record(
            out,
            &DatasetRecord::Reviewer(ReviewerRecord {
                id: r.id.clone(),
                capacity: r.capacity,
                topics: Topics::from_selection(&r.topics, vocab),
                conflicts: r.conflicts.iter().cloned().collect(),
            }),
        )?;
    }
    Ok(())
}

/// Renders a matrix: `reviewer<TAB>p1<TAB>p2...`, then one row per reviewer.
pub fn format_matrix(matrix: &SimilarityMatrix) -> String {
    let mut s = String::from("reviewer");
    for p in matrix.paper_ids() {
        s.push('\t');
        s.push_str(p);
    }
    s.push('\n');
    for (r, id) in matrix.reviewer_ids().iter().enumerate() {
        s.push_str(id);
        for w in matrix.row(r) {
            let _ = write!(s, "\t{w:.6}");
        }
        s.push('\n');
    }
    s
}

pub fn write_matrix(out: &mut dyn Write, matrix: &SimilarityMatrix) -> Result<()> {
    out.write_all(format_matrix(matrix).as_bytes())?;
    Ok(())
}

pub fn read_matrix(input: &mut dyn BufRead, source: &str) -> Result<SimilarityMatrix> {
    let mut text = String::new();
    input
        .read_to_string(&mut text)
        .with_context(|| format!("{source}: read failed"))?;
    let mut rows = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = rows
        .next()
        .ok_or_else(|| anyhow!("{source}: empty matrix file"))?;
    let mut cols = header.split('\t');
    if cols.next() != Some("reviewer") {
        bail!("{source}:1: header must start with `reviewer`");
    }
    let papers: Vec<String> = cols.map(str::to_owned).collect();
    let mut reviewers = Vec::new();
    let mut weights = Vec::new();
    for (i, line) in rows {
        let n = i + 1;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != papers.len() + 1 {
            bail!(
                "{source}:{n}: expected {} fields, found {}",
                papers.len() + 1,
                fields.len()
            );
        }
        reviewers.push(fields[0].to_owned());
        for (p, cell) in papers.iter().zip(&fields[1..]) {
            let w: f64 = cell
                .trim()
                .parse()
                .map_err(|_| anyhow!("{source}:{n}: column `{p}`: invalid weight {cell:?}"))?;
            if !(0.0..=1.0).contains(&w) {
                bail!("{source}:{n}: column `{p}`: weight {w} outside [0, 1]");
            }
            weights.push(w);
        }
    }
    Ok(SimilarityMatrix::new(reviewers, papers, weights)?)
}

/// One bid. `confidence` is present exactly for predicted entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RatingRecord {
    reviewer: String,
    paper: String,
    level: BidLevel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    confidence: Option<f64>,
}

pub fn read_ratings(
    input: &mut dyn BufRead,
    source: &str,
    dataset: &Dataset,
) -> Result<RatingTable> {
    let mut table = RatingTable::new();
    for (n, text) in lines(input, source)? {
        let rec: RatingRecord = parse_record(source, n, &text)?;
        let r = dataset.reviewer_index(&rec.reviewer).ok_or_else(|| {
            anyhow!(
                "{source}:{n}: field `reviewer`: unknown reviewer {:?}",
                rec.reviewer
            )
        })?;
        let p = dataset
            .paper_index(&rec.paper)
            .ok_or_else(|| anyhow!("{source}:{n}: field `paper`: unknown paper {:?}", rec.paper))?;
        if table.get(r, p).is_some() {
            bail!(
                "{source}:{n}: duplicate rating for ({}, {})",
                rec.reviewer,
                rec.paper
            );
        }
        match rec.confidence {
            None => table.insert_explicit(r, p, rec.level),
            Some(c) if (0.0..=1.0).contains(&c) => {
                table.insert_predicted(r, p, rec.level, c);
            }
            Some(c) => bail!("{source}:{n}: field `confidence`: {c} outside [0, 1]"),
        }
    }
    Ok(table)
}

pub fn write_ratings(out: &mut dyn Write, table: &RatingTable, dataset: &Dataset) -> Result<()> {
    for ((r, p), rating) in table.iter() {
        write_record(
            out,
            &RatingRecord {
                reviewer: dataset.reviewer(r).id.clone(),
                paper: dataset.paper(p).id.clone(),
                level: rating.level,
                confidence: (!rating.is_explicit()).then(|| rating.confidence()),
            },
        )?;
    }
    Ok(())
}

/// Hidden expertise of one reviewer, for the simulated bidder.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TruthRecord {
    reviewer: String,
    topics: Topics,
}

/// Reads hidden expertise; every reviewer of `dataset` needs exactly one
/// record. The result is in dataset order.
pub fn read_truth(
    input: &mut dyn BufRead,
    source: &str,
    dataset: &Dataset,
) -> Result<Vec<TopicSelection>> {
    let labels: HashMap<String, usize> = dataset
        .vocabulary()
        .topics()
        .iter()
        .map(|t| (t.label.clone(), t.id))
        .collect();
    let mut truth: Vec<Option<TopicSelection>> = vec![None; dataset.reviewers().len()];
    for (n, text) in lines(input, source)? {
        let rec: TruthRecord = parse_record(source, n, &text)?;
        let at = format!("{source}:{n}");
        let r = dataset.reviewer_index(&rec.reviewer).ok_or_else(|| {
            anyhow!(
                "{at}: field `reviewer`: unknown reviewer {:?}",
                rec.reviewer
            )
        })?;
        if truth[r].is_some() {
            bail!("{at}: field `reviewer`: {:?} listed twice", rec.reviewer);
        }
        truth[r] = Some(rec.topics.resolve(&labels, &at)?);
    }
    truth
        .into_iter()
        .enumerate()
        .map(|(r, t)| {
            t.ok_or_else(|| {
                anyhow!(
                    "{source}: no record for reviewer {:?}",
                    dataset.reviewer(r).id
                )
            })
        })
        .collect()
}

pub fn write_truth(out: &mut dyn Write, truth: &[TopicSelection], dataset: &Dataset) -> Result<()> {
    for (r, topics) in truth.iter().enumerate() {
        write_record(
            out,
            &TruthRecord {
                reviewer: dataset.reviewer(r).id.clone(),
                topics: Topics::from_selection(topics, dataset.vocabulary()),
            },
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRecord {
    pub paper: String,
    pub reviewer: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShortfallRecord {
    pub paper: String,
    pub missing: usize,
}

/// One assignment outcome as written to disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeRecord {
    pub algorithm: String,
    pub m: usize,
    pub total_weight: f64,
    pub covered: usize,
    pub papers: usize,
    pub rounds: usize,
    /// Total capacity was below m·|P|.
    pub infeasible: bool,
    pub pairs: Vec<PairRecord>,
    pub uncovered: Vec<ShortfallRecord>,
}

impl OutcomeRecord {
    pub fn new(
        outcome: &AssignmentOutcome,
        matrix: &SimilarityMatrix,
        m: usize,
        infeasible: bool,
    ) -> Self {
        let paper = |p: usize| matrix.paper_ids()[p].clone();
        Self {
            algorithm: outcome.algorithm.name().to_owned(),
            m,
            total_weight: outcome.total_weight,
            covered: outcome.covered_papers(matrix.num_papers()),
            papers: matrix.num_papers(),
            rounds: outcome.rounds,
            infeasible,
            pairs: outcome
                .assignment
                .pairs()
                .iter()
                .map(|p| PairRecord {
                    paper: paper(p.paper),
                    reviewer: matrix.reviewer_ids()[p.reviewer].clone(),
                    weight: p.weight,
                })
                .collect(),
            uncovered: outcome
                .uncovered
                .iter()
                .map(|s| ShortfallRecord {
                    paper: paper(s.paper),
                    missing: s.missing,
                })
                .collect(),
        }
    }
}

pub fn read_outcomes(input: &mut dyn BufRead, source: &str) -> Result<Vec<OutcomeRecord>> {
    lines(input, source)?
        .into_iter()
        .map(|(n, text)| parse_record(source, n, &text))
        .collect()
}

pub fn write_outcomes(out: &mut dyn Write, outcomes: &[OutcomeRecord]) -> Result<()> {
    for o in outcomes {
        write_record(out, o)?;
    }
    Ok(())
}
