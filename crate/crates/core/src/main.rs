use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use taxosim::eval::{builtin_dataset, default_lambda_grid, sweep_to_csv};
use taxosim::{
    bench, evaluate, load_dataset, load_edge_list, load_wordnet_dir, path_length, sweep_lambda,
    ConceptId, Error, FrequencyTable, IcModel, Lambda, Measure, MeasureSpec, PathModel, Pipeline,
    Scorer, Taxonomy, WordPairDataset,
};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

#[derive(Parser)]
#[command(
    name = "taxosim",
    version,
    about = "Semantic similarity over is-a taxonomies"
)]
struct Cli {
    /// Directory holding WordNet 3.0 `data.noun` and `index.noun`.
    #[arg(
        long,
        global = true,
        env = "TAXOSIM_WORDNET_DIR",
        conflicts_with = "edge_list"
    )]
    wordnet_dir: Option<PathBuf>,

    /// Tab-separated `child<TAB>parent` taxonomy instead of WordNet.
    #[arg(long, global = true)]
    edge_list: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Write results here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Taxonomy statistics.
    Info,
    /// Similarity of two words (best sense pair).
    Sim {
        #[command(flatten)]
        measure: MeasureArgs,
        word1: String,
        word2: String,
    },
    /// Path length breakdown between two words or concept keys.
    Path {
        #[arg(long, default_value = "edge")]
        path_model: String,
        #[arg(long)]
        lambda: Option<f64>,
        word1: String,
        word2: String,
    },
    /// Correlate a measure with human judgements.
    Eval {
        #[command(flatten)]
        measure: MeasureArgs,
        /// Dataset file, or `mc30` / `rg65` for the bundled sets.
        dataset: String,
    },
    /// Correlation as a function of lambda, as CSV.
    Sweep {
        /// Comma-separated measures.
        #[arg(long, default_value = "rada,leacock,wu,liu1,liu2,li")]
        measures: String,
        /// Comma-separated lambda values.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long = "params", value_name = "K=V")]
        params: Vec<String>,
        dataset: String,
    },
    /// Time path-based and IC-based pipelines.
    Bench {
        #[arg(long, default_value_t = 0.3)]
        lambda: f64,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        dataset: String,
    },
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long, default_value = "wu")]
    measure: String,
    /// `edge`, `weighted` or `density`.
    #[arg(long, default_value = "edge")]
    path_model: String,
    /// Compensation factor for the density model.
    #[arg(long)]
    lambda: Option<f64>,
    /// `seco`, `sanchez` or `corpus` (needs --corpus).
    #[arg(long, default_value = "seco")]
    ic_model: String,
    /// `word<TAB>count` frequencies for corpus IC.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Parameter overrides such as `alpha=0.4` (repeatable, comma-separated).
    #[arg(long = "params", value_name = "K=V")]
    params: Vec<String>,
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::LambdaOutOfRange(_) | Error::Misconfigured(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Data(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.into())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn parse_path_model(name: &str, lambda: Option<f64>) -> CliResult<PathModel> {
    let model: PathModel = name.parse()?;
    match lambda {
        Some(l) => Ok(model.with_lambda(Lambda::new(l)?)),
        None => Ok(model),
    }
}

fn apply_params(spec: &mut MeasureSpec, params: &[String]) -> CliResult<()> {
    for item in params
        .iter()
        .flat_map(|p| p.split(','))
        .filter(|s| !s.is_empty())
    {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected key=value, got {item:?}")))?;
        let v: f64 = v
            .parse()
            .map_err(|_| Failure::Usage(format!("parameter {k} is not a number: {v:?}")))?;
        spec.params.set(k, v)?;
    }
    Ok(())
}

impl MeasureArgs {
    fn spec(&self) -> CliResult<MeasureSpec> {
        let measure: Measure = self.measure.parse()?;
        let mut spec = MeasureSpec::new(measure)
            .with_path_model(parse_path_model(&self.path_model, self.lambda)?);
        if measure.uses_ic() {
            let model = match (self.ic_model.as_str(), &self.corpus) {
                ("corpus", Some(path)) => IcModel::Corpus(FrequencyTable::from_reader(
                    BufReader::new(File::open(path)?),
                )?),
                (name, _) => name.parse()?,
            };
            spec = spec.with_ic_model(model);
        }
        apply_params(&mut spec, &self.params)?;
        spec.validate()?;
        Ok(spec)
    }
}

fn load_taxonomy(cli: &Cli) -> CliResult<Taxonomy> {
    match (&cli.wordnet_dir, &cli.edge_list) {
        (_, Some(path)) => Ok(load_edge_list(BufReader::new(File::open(path)?))?),
        (Some(dir), None) => Ok(load_wordnet_dir(dir)?),
        (None, None) => Err(Failure::Usage(
            "no taxonomy: pass --wordnet-dir, --edge-list or set TAXOSIM_WORDNET_DIR".into(),
        )),
    }
}

fn load_named_dataset(name: &str) -> CliResult<WordPairDataset> {
    let path = Path::new(name);
    if !path.exists() {
        if let Some(ds) = builtin_dataset(name) {
            return Ok(ds);
        }
    }
    let label = path
        .file_stem()
        .map_or_else(|| name.to_owned(), |s| s.to_string_lossy().into_owned());
    Ok(load_dataset(
        &label,
        BufReader::new(File::open(path)?),
        taxosim::eval::DEFAULT_SCALE_MAX,
    )?)
}

/// Concept keys are accepted as-is; anything else is looked up as a word.
fn resolve(t: &Taxonomy, arg: &str) -> Vec<ConceptId> {
    match t.lookup(arg) {
        Some(c) => vec![c],
        None => t.concepts_for_word(arg).to_vec(),
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let line = serde_json::to_string(value).map_err(|e| Failure::Data(Error::Io(e.into())))?;
    writeln!(out, "{line}")?;
    Ok(())
}

fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let json = matches!(cli.format, Format::Json);
    match &cli.command {
        Command::Info => {
            let t = load_taxonomy(cli)?;
            #[derive(Serialize)]
            struct Info<'a> {
                root: &'a str,
                node_count: usize,
                max_depth: u32,
                leaf_count: usize,
            }
            let info = Info {
                root: t.key(t.root())?,
                node_count: t.node_count(),
                max_depth: t.max_depth(),
                leaf_count: t.leaf_count(),
            };
            if json {
                json_line(out, &info)?;
            } else {
                writeln!(out, "root\t{}", info.root)?;
                writeln!(out, "node_count\t{}", info.node_count)?;
                writeln!(out, "max_depth\t{}", info.max_depth)?;
                writeln!(out, "leaf_count\t{}", info.leaf_count)?;
            }
        }
        Command::Sim {
            measure,
            word1,
            word2,
        } => {
            let spec = measure.spec()?;
            let t = load_taxonomy(cli)?;
            let scorer = Scorer::new(&t, spec)?;
            let score = scorer.sim_words(word1, word2)?;
            if score.unknown_word {
                for w in [word1, word2] {
                    if t.concepts_for_word(w).is_empty() {
                        eprintln!("warning: unknown word {w:?}; reporting the measure floor");
                    }
                }
            }
            let senses = score
                .senses
                .map(|(a, b)| -> CliResult<(String, String)> {
                    Ok((t.key(a)?.to_owned(), t.key(b)?.to_owned()))
                })
                .transpose()?;
            if json {
                #[derive(Serialize)]
                struct SimOut<'a> {
                    word1: &'a str,
                    word2: &'a str,
                    measure: String,
                    value: f64,
                    normalized: f64,
                    unknown_word: bool,
                    senses: Option<(String, String)>,
                    detail: Option<taxosim::similarity::ScoreDetail>,
                }
                json_line(
                    out,
                    &SimOut {
                        word1,
                        word2,
                        measure: scorer.spec().summary(),
                        value: score.value,
                        normalized: scorer.normalized(&score),
                        unknown_word: score.unknown_word,
                        senses,
                        detail: score.detail,
                    },
                )?;
            } else {
                writeln!(out, "measure\t{}", scorer.spec().summary())?;
                writeln!(out, "value\t{:.6}", score.value)?;
                if scorer.spec().measure == Measure::Jiang {
                    writeln!(out, "normalized\t{:.6}", scorer.normalized(&score))?;
                }
                writeln!(out, "unknown_word\t{}", score.unknown_word)?;
                if let Some((a, b)) = &senses {
                    writeln!(out, "senses\t{a}\t{b}")?;
                }
                if let Some(d) = score.detail {
                    if d.path.is_finite() {
                        writeln!(out, "path\t{:.6}", d.path)?;
                        writeln!(out, "edge_part\t{:.6}", d.edge_part)?;
                        writeln!(out, "compensation_part\t{:.6}", d.compensation_part)?;
                    }
                    writeln!(out, "lcs_depth\t{}", d.lcs_depth)?;
                    for (name, v) in [("ic_c1", d.ic_c1), ("ic_c2", d.ic_c2), ("ic_lcs", d.ic_lcs)]
                    {
                        if let Some(v) = v {
                            writeln!(out, "{name}\t{v:.6}")?;
                        }
                    }
                }
            }
        }
        Command::Path {
            path_model,
            lambda,
            word1,
            word2,
        } => {
            let model = parse_path_model(path_model, *lambda)?;
            let t = load_taxonomy(cli)?;
            let (s1, s2) = (resolve(&t, word1), resolve(&t, word2));
            if s1.is_empty() || s2.is_empty() {
                return Err(Failure::Data(Error::UnknownConcept(format!(
                    "{word1} / {word2}"
                ))));
            }
            let mut best = None;
            for &a in &s1 {
                for &b in &s2 {
                    let r = path_length(&t, a, b, model)?;
                    if best
                        .as_ref()
                        .is_none_or(|(_, _, p): &(_, _, taxosim::PathResult)| r.length < p.length)
                    {
                        best = Some((a, b, r));
                    }
                }
            }
            let (a, b, result) = best.expect("non-empty sense lists");
            let nodes = t
                .shortest_path_nodes(a, b)?
                .into_iter()
                .map(|c| t.key(c).map(str::to_owned))
                .collect::<taxosim::Result<Vec<_>>>()?;
            let lcs = t.key(t.lcs(a, b)?)?.to_owned();
            if json {
                #[derive(Serialize)]
                struct PathOut {
                    model: String,
                    length: f64,
                    edge_part: f64,
                    compensation_part: f64,
                    lcs: String,
                    nodes: Vec<String>,
                }
                json_line(
                    out,
                    &PathOut {
                        model: model.to_string(),
                        length: result.length,
                        edge_part: result.edge_part,
                        compensation_part: result.compensation_part,
                        lcs,
                        nodes,
                    },
                )?;
            } else {
                writeln!(out, "model\t{model}")?;
                writeln!(out, "length\t{:.6}", result.length)?;
                writeln!(out, "edge_part\t{:.6}", result.edge_part)?;
                writeln!(out, "compensation_part\t{:.6}", result.compensation_part)?;
                writeln!(out, "lcs\t{lcs}")?;
                writeln!(out, "nodes\t{}", nodes.join(" "))?;
            }
        }
        Command::Eval { measure, dataset } => {
            let spec = measure.spec()?;
            let ds = load_named_dataset(dataset)?;
            let t = load_taxonomy(cli)?;
            let report = evaluate(&t, &spec, &ds)?;
            if report.unknown_word_count > 0 {
                eprintln!(
                    "warning: {} pair(s) with unknown words scored at the measure floor",
                    report.unknown_word_count
                );
            }
            if json {
                json_line(out, &report)?;
            } else {
                writeln!(out, "word1\tword2\thuman\tmachine\tunknown_word")?;
                for p in &report.per_pair {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{:.6}\t{}",
                        p.word1, p.word2, p.human, p.machine, p.unknown_word
                    )?;
                }
                writeln!(out, "# dataset\t{}", report.dataset)?;
                writeln!(out, "# measure\t{}", report.measure)?;
                writeln!(out, "# pearson_r\t{:.4}", report.pearson_r)?;
                if report.sign_flipped {
                    writeln!(out, "# sign_flipped\ttrue")?;
                }
            }
        }
        Command::Sweep {
            measures,
            grid,
            params,
            dataset,
        } => {
            let mut specs = Vec::new();
            for name in measures.split(',').filter(|s| !s.is_empty()) {
                let mut spec = MeasureSpec::new(name.trim().parse()?);
                apply_params(&mut spec, params)?;
                spec.validate()?;
                specs.push(spec);
            }
            let grid = match grid {
                Some(g) => g
                    .split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<f64>()
                            .map_err(|_| Failure::Usage(format!("bad lambda {v:?}")))
                    })
                    .collect::<CliResult<Vec<_>>>()?,
                None => default_lambda_grid(),
            };
            let ds = load_named_dataset(dataset)?;
            let t = load_taxonomy(cli)?;
            let series = sweep_lambda(&t, &specs, &ds, &grid)?;
            if json {
                for s in &series {
                    json_line(out, s)?;
                }
            } else {
                write!(out, "{}", sweep_to_csv(&series))?;
            }
        }
        Command::Bench {
            lambda,
            repeats,
            dataset,
        } => {
            let lambda = Lambda::new(*lambda)?;
            let ds = load_named_dataset(dataset)?;
            let t = load_taxonomy(cli)?;
            let reports = bench(&t, &ds, &Pipeline::standard(lambda), *repeats)?;
            if json {
                for r in &reports {
                    json_line(out, r)?;
                }
            } else {
                writeln!(
                    out,
                    "pipeline\tdataset\tpretreatment_s\tcomputation_s\ttotal_s\taverage_s"
                )?;
                for r in &reports {
                    writeln!(
                        out,
                        "{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
                        r.pipeline,
                        r.dataset,
                        r.pretreatment,
                        r.computation,
                        r.total,
                        r.average_per_pair
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let result = match &cli.output {
        Some(path) => File::create(path).map_err(Failure::from).and_then(|f| {
            let mut w = io::BufWriter::new(f);
            run(&cli, &mut w)?;
            w.flush().map_err(Failure::from)
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            run(&cli, &mut lock)
        }
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
