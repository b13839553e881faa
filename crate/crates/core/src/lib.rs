//! Semantic similarity over is-a taxonomies such as the WordNet noun
//! hierarchy.
//!
//! The crate separates *how a path is measured* from *how a path becomes a
//! similarity score*. Path lengths come from one of three [`PathModel`]s:
//!
//! * edge counting,
//! * neighbour-density edge weights,
//! * edge counting plus a local-area density compensation
//!   `λ · AreaDensity / AreaDepth`, where the area density sums the direct
//!   hyponym counts of the subsumers on the shortest path and the area depth
//!   is the mean depth of the two concepts and their least common subsumer.
//!
//! Any edge-based [`Measure`] (Rada, Leacock–Chodorow, Wu–Palmer, Liu,
//! Li, Hao) can run on any path model. IC-based measures (Resnik, Lin,
//! Jiang–Conrath) run on corpus or intrinsic information content.
//!
//! ```
//! use taxosim::{load_edge_list, Measure, MeasureSpec, PathModel, Scorer};
//!
//! let t = load_edge_list("dog\tanimal\ncat\tanimal\nanimal\tentity\n".as_bytes()).unwrap();
//! let spec = MeasureSpec::new(Measure::Wu).with_path_model(PathModel::density(0.3).unwrap());
//! let scorer = Scorer::new(&t, spec).unwrap();
//! let score = scorer.sim_words("dog", "cat").unwrap();
//! assert!(score.value > 0.0 && score.value < 0.5);
//! ```

pub mod error;
pub mod eval;
pub mod ic;
pub mod path;
pub mod similarity;
pub mod taxonomy;

pub use error::{Error, Result};
pub use eval::{
    bench, evaluate, evaluate_with, load_dataset, mc30, pearson, rg65, sweep_lambda,
    EvaluationReport, Pipeline, PipelineKind, SweepSeries, TimingReport, WordPairDataset,
};
pub use ic::{ic_corpus, ic_pretreat, ic_sanchez, ic_seco, mics, FrequencyTable, IcModel, IcTable};
pub use path::{
    area_density, area_depth, area_subsumers, edge_weight, path_compensation, path_edge_weighted,
    path_length, Lambda, PathModel, PathResult,
};
pub use similarity::{Measure, MeasureParams, MeasureSpec, Orientation, Scorer, SimilarityScore};
pub use taxonomy::{
    load_edge_list, load_wordnet, load_wordnet_dir, load_wordnet_with_report, normalize_word,
    Concept, ConceptId, Connection, Taxonomy, WordNetReport,
};
