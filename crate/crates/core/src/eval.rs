//! Benchmark datasets, correlation against human judgements, lambda sweeps
//! and the pretreatment-versus-query timing comparison.

use std::io::BufRead;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ic::{ic_pretreat, IcModel};
use crate::path::{Lambda, PathModel};
use crate::similarity::{Measure, MeasureSpec, Orientation, Scorer};
use crate::taxonomy::Taxonomy;

pub const DEFAULT_SCALE_MAX: f64 = 4.0;

const MC30_TSV: &str = include_str!("../data/mc30.tsv");
const RG65_TSV: &str = include_str!("../data/rg65.tsv");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WordPair {
    pub word1: String,
    pub word2: String,
    pub human: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WordPairDataset {
    pub name: String,
    pub pairs: Vec<WordPair>,
    pub scale_max: f64,
}

impl WordPairDataset {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn human_scores(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.human).collect()
    }

    pub fn normalized_scores(&self) -> Vec<f64> {
        self.pairs
            .iter()
            .map(|p| p.human / self.scale_max)
            .collect()
    }
}

/// Parse `word1<TAB>word2<TAB>score` lines with scores on `[0, scale_max]`.
pub fn load_dataset<R: BufRead>(name: &str, reader: R, scale_max: f64) -> Result<WordPairDataset> {
    let mut pairs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |message: &str| Error::Malformed {
            line: line_no,
            message: message.to_owned(),
        };
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [w1, w2, score] = fields.as_slice() else {
            return Err(malformed("expected word1<TAB>word2<TAB>score"));
        };
        if w1.is_empty() || w2.is_empty() {
            return Err(malformed("blank word"));
        }
        let human: f64 = score
            .parse()
            .map_err(|_| malformed("score is not a number"))?;
        if !(0.0..=scale_max).contains(&human) {
            return Err(Error::ScoreOutOfRange {
                line: line_no,
                score: human,
                max: scale_max,
            });
        }
        pairs.push(WordPair {
            word1: (*w1).to_owned(),
            word2: (*w2).to_owned(),
            human,
        });
    }
    if pairs.len() < 2 {
        return Err(Error::TooFewObservations(pairs.len()));
    }
    Ok(WordPairDataset {
        name: name.to_owned(),
        pairs,
        scale_max,
    })
}

/// Miller & Charles, 30 pairs.
pub fn mc30() -> WordPairDataset {
    load_dataset("MC30", MC30_TSV.as_bytes(), DEFAULT_SCALE_MAX).expect("bundled MC30 parses")
}

/// Rubenstein & Goodenough, 65 pairs.
pub fn rg65() -> WordPairDataset {
    load_dataset("RG65", RG65_TSV.as_bytes(), DEFAULT_SCALE_MAX).expect("bundled RG65 parses")
}

/// Bundled dataset by (case-insensitive) name.
pub fn builtin_dataset(name: &str) -> Option<WordPairDataset> {
    match name.to_ascii_lowercase().as_str() {
        "mc30" | "mc" => Some(mc30()),
        "rg65" | "rg" => Some(rg65()),
        _ => None,
    }
}

/// Sample Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::TooFewObservations(n));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n as f64;
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairResult {
    pub word1: String,
    pub word2: String,
    pub human: f64,
    pub machine: f64,
    pub unknown_word: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub dataset: String,
    pub measure: String,
    pub per_pair: Vec<PairResult>,
    /// Correlation oriented so that higher is better: for distance measures
    /// this is the negated raw coefficient.
    pub pearson_r: f64,
    /// Set when `pearson_r` is the sign-flipped correlation of a distance.
    pub sign_flipped: bool,
    pub unknown_word_count: usize,
}

/// Score every pair of `dataset` with an existing scorer and correlate.
pub fn evaluate_with(scorer: &Scorer<'_>, dataset: &WordPairDataset) -> Result<EvaluationReport> {
    let per_pair = dataset
        .pairs
        .par_iter()
        .map(|pair| {
            scorer
                .sim_words(&pair.word1, &pair.word2)
                .map(|s| PairResult {
                    word1: pair.word1.clone(),
                    word2: pair.word2.clone(),
                    human: pair.human,
                    machine: s.value,
                    unknown_word: s.unknown_word,
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let machine: Vec<f64> = per_pair.iter().map(|p| p.machine).collect();
    let r = pearson(&dataset.human_scores(), &machine)?;
    let sign_flipped = scorer.orientation() == Orientation::Distance;
    Ok(EvaluationReport {
        dataset: dataset.name.clone(),
        measure: scorer.spec().summary(),
        unknown_word_count: per_pair.iter().filter(|p| p.unknown_word).count(),
        per_pair,
        pearson_r: if sign_flipped { -r } else { r },
        sign_flipped,
    })
}

pub fn evaluate(
    t: &Taxonomy,
    spec: &MeasureSpec,
    dataset: &WordPairDataset,
) -> Result<EvaluationReport> {
    let scorer = Scorer::new(t, spec.clone())?;
    evaluate_with(&scorer, dataset)
}

pub fn default_lambda_grid() -> Vec<f64> {
    (0..=10).map(|i| f64::from(i) / 10.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSeries {
    pub measure: String,
    /// `(lambda, r)` in grid order.
    pub points: Vec<(f64, f64)>,
    pub best_lambda: f64,
    pub best_r: f64,
}

/// Correlation for every lambda in `grid`, with each spec switched to the
/// density-compensated path model.
pub fn sweep_lambda(
    t: &Taxonomy,
    specs: &[MeasureSpec],
    dataset: &WordPairDataset,
    grid: &[f64],
) -> Result<Vec<SweepSeries>> {
    let lambdas = grid
        .iter()
        .map(|&l| Lambda::new(l))
        .collect::<Result<Vec<_>>>()?;
    specs
        .iter()
        .map(|spec| {
            let points = lambdas
                .par_iter()
                .map(|&lambda| {
                    let spec = spec
                        .clone()
                        .with_path_model(PathModel::DensityCompensated { lambda });
                    evaluate(t, &spec, dataset).map(|r| (lambda.get(), r.pearson_r))
                })
                .collect::<Result<Vec<_>>>()?;
            // First maximum wins, so ties favour the smaller lambda.
            let (best_lambda, best_r) =
                points
                    .iter()
                    .copied()
                    .fold((f64::NAN, f64::NEG_INFINITY), |best, p| {
                        if p.1 > best.1 {
                            p
                        } else {
                            best
                        }
                    });
            Ok(SweepSeries {
                measure: spec.measure.name().to_owned(),
                points,
                best_lambda,
                best_r,
            })
        })
        .collect()
}

/// `measure,lambda,pearson_r` rows with a header.
pub fn sweep_to_csv(series: &[SweepSeries]) -> String {
    let mut out = String::from("measure,lambda,pearson_r\n");
    for s in series {
        for (lambda, r) in &s.points {
            out.push_str(&format!("{},{:.1},{:.6}\n", s.measure, lambda, r));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PipelineKind {
    PathBased,
    IcBased,
}

/// One timed configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Pipeline {
    pub label: String,
    pub kind: PipelineKind,
    pub spec: MeasureSpec,
}

impl Pipeline {
    pub fn path(label: &str, spec: MeasureSpec) -> Self {
        Pipeline {
            label: label.to_owned(),
            kind: PipelineKind::PathBased,
            spec,
        }
    }

    pub fn ic(label: &str, spec: MeasureSpec) -> Self {
        Pipeline {
            label: label.to_owned(),
            kind: PipelineKind::IcBased,
            spec,
        }
    }

    /// Wu & Palmer under edge counting and density compensation, against
    /// Lin over freshly pretreated Seco IC.
    pub fn standard(lambda: Lambda) -> Vec<Pipeline> {
        vec![
            Pipeline::path("wu/edge", MeasureSpec::new(Measure::Wu)),
            Pipeline::path(
                "wu/density",
                MeasureSpec::new(Measure::Wu)
                    .with_path_model(PathModel::DensityCompensated { lambda }),
            ),
            Pipeline::ic(
                "lin/seco",
                MeasureSpec::new(Measure::Lin).with_ic_model(IcModel::Seco),
            ),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingReport {
    pub pipeline: String,
    pub kind: PipelineKind,
    pub dataset: String,
    pub pairs: usize,
    /// Seconds.
    pub pretreatment: f64,
    pub computation: f64,
    pub total: f64,
    pub average_per_pair: f64,
    pub repeats: usize,
}

fn time_once(t: &Taxonomy, pipeline: &Pipeline, dataset: &WordPairDataset) -> Result<(f64, f64)> {
    let (pretreatment, scorer) = match pipeline.kind {
        PipelineKind::PathBased => {
            let mut spec = pipeline.spec.clone();
            spec.ic_model = None;
            (0.0, Scorer::new(t, spec)?)
        }
        PipelineKind::IcBased => {
            let model = pipeline.spec.ic_model.clone().ok_or_else(|| {
                Error::Misconfigured(format!("pipeline {} has no IC model", pipeline.label))
            })?;
            let start = Instant::now();
            let table = ic_pretreat(t, &model)?;
            let elapsed = start.elapsed().as_secs_f64();
            (
                elapsed,
                Scorer::with_ic_table(t, pipeline.spec.clone(), table)?,
            )
        }
    };
    let start = Instant::now();
    for pair in &dataset.pairs {
        std::hint::black_box(scorer.sim_words(&pair.word1, &pair.word2)?);
    }
    Ok((pretreatment, start.elapsed().as_secs_f64()))
}

/// Time each pipeline `repeats` times, single-threaded, and report the run
/// with the median total. Nothing is cached between runs.
pub fn bench(
    t: &Taxonomy,
    dataset: &WordPairDataset,
    pipelines: &[Pipeline],
    repeats: usize,
) -> Result<Vec<TimingReport>> {
    let repeats = repeats.max(1);
    pipelines
        .iter()
        .map(|pipeline| {
            let mut runs = (0..repeats)
                .map(|_| time_once(t, pipeline, dataset))
                .collect::<Result<Vec<_>>>()?;
            runs.sort_by(|a, b| (a.0 + a.1).total_cmp(&(b.0 + b.1)));
            let (pretreatment, computation) = runs[runs.len() / 2];
            Ok(TimingReport {
                pipeline: pipeline.label.clone(),
                kind: pipeline.kind,
                dataset: dataset.name.clone(),
                pairs: dataset.len(),
                pretreatment,
                computation,
                total: pretreatment + computation,
                average_per_pair: (pretreatment + computation) / dataset.len() as f64,
                repeats,
            })
        })
        .collect()
}
