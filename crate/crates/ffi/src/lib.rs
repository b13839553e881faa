//! C ABI over `taxosim`.
//!
//! Taxonomies and scorers are opaque heap handles. Every fallible call
//! returns a [`TaxosimStatus`]; on failure the message is kept per thread
//! and can be read with [`taxosim_last_error_message`]. Panics never cross
//! the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufReader;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::sync::Arc;

use taxosim::eval::builtin_dataset;
use taxosim::{
    evaluate_with, load_edge_list, load_wordnet, load_wordnet_dir, path_length, pearson, ConceptId,
    Error, FrequencyTable, IcModel, Measure, MeasureSpec, PathModel, Scorer, Taxonomy,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaxosimStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    InvalidTaxonomy = 5,
    UnknownConcept = 6,
    InvalidArgument = 7,
    Statistics = 8,
    Panic = 99,
}

/// Opaque taxonomy handle.
pub struct TaxosimTaxonomy {
    inner: Arc<Taxonomy>,
}

/// Opaque scorer handle. Keeps its taxonomy alive.
pub struct TaxosimScorer {
    // Declared first so it drops before the taxonomy it borrows.
    scorer: Scorer<'static>,
    _taxonomy: Arc<Taxonomy>,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct TaxosimPath {
    pub length: f64,
    pub edge_part: f64,
    pub compensation_part: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct TaxosimScore {
    pub value: f64,
    /// True when the raw value is a distance (smaller is more similar).
    pub is_distance: bool,
    /// Set when a word had no senses; `value` is then the measure floor.
    pub unknown_word: bool,
    /// Winning senses, or `UINT32_MAX` when `unknown_word` is set.
    pub sense1: u32,
    pub sense2: u32,
}

pub const TAXOSIM_NO_CONCEPT: u32 = u32::MAX;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TaxosimStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Io(_) => TaxosimStatus::Io,
            Error::Malformed { .. }
            | Error::EmptyInput
            | Error::SelfEdge { .. }
            | Error::BlankNode { .. }
            | Error::ScoreOutOfRange { .. } => TaxosimStatus::Parse,
            Error::MultipleRoots(_) | Error::NoRoot | Error::Cycle(_) => {
                TaxosimStatus::InvalidTaxonomy
            }
            Error::UnknownConcept(_) | Error::NotAdjacent(..) => TaxosimStatus::UnknownConcept,
            Error::LengthMismatch(..) | Error::TooFewObservations(_) | Error::ZeroVariance => {
                TaxosimStatus::Statistics
            }
            _ => TaxosimStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(TaxosimStatus::Io, e.to_string())
    }
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TaxosimStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TaxosimStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(format!("internal panic: {msg}"));
            TaxosimStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(TaxosimStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TaxosimStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn opt_str_arg<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, what).map(Some)
    }
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(TaxosimStatus::InvalidArgument, msg.into())
}

fn concept(t: &Taxonomy, id: u32) -> Result<ConceptId, Failure> {
    let c = ConceptId::from_index(id as usize);
    t.concept(c)?;
    Ok(c)
}

fn open(path: &str) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure(TaxosimStatus::Io, format!("{path}: {e}")))
}

unsafe fn publish_taxonomy(t: Taxonomy, out_handle: *mut *mut TaxosimTaxonomy) {
    *out_handle = Box::into_raw(Box::new(TaxosimTaxonomy { inner: Arc::new(t) }));
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn taxosim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn taxosim_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Load WordNet `data.noun` and `index.noun` files.
///
/// # Safety
/// Paths must be NUL-terminated strings; `out_taxonomy` must be writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_taxonomy_load_wordnet(
    data_path: *const c_char,
    index_path: *const c_char,
    out_taxonomy: *mut *mut TaxosimTaxonomy,
) -> TaxosimStatus {
    guard(|| {
        out(out_taxonomy, "out_taxonomy")?;
        let data = open(str_arg(data_path, "data_path")?)?;
        let index = open(str_arg(index_path, "index_path")?)?;
        publish_taxonomy(load_wordnet(data, index)?, out_taxonomy);
        Ok(())
    })
}

/// Load WordNet from a directory holding `data.noun` and `index.noun`.
///
/// # Safety
/// `dir` must be a NUL-terminated string; `out_taxonomy` must be writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_taxonomy_load_wordnet_dir(
    dir: *const c_char,
    out_taxonomy: *mut *mut TaxosimTaxonomy,
) -> TaxosimStatus {
    guard(|| {
        out(out_taxonomy, "out_taxonomy")?;
        let dir = str_arg(dir, "dir")?;
        publish_taxonomy(load_wordnet_dir(Path::new(dir))?, out_taxonomy);
        Ok(())
    })
}

/// Load a tab-separated `child<TAB>parent` edge list.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out_taxonomy` must be writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_taxonomy_load_edge_list(
    path: *const c_char,
    out_taxonomy: *mut *mut TaxosimTaxonomy,
) -> TaxosimStatus {
    guard(|| {
        out(out_taxonomy, "out_taxonomy")?;
        let reader = open(str_arg(path, "path")?)?;
        publish_taxonomy(load_edge_list(reader)?, out_taxonomy);
        Ok(())
    })
}

/// Release a taxonomy. Scorers built from it stay valid. NULL is ignored.
///
/// # Safety
/// `taxonomy` must come from a `taxosim_taxonomy_load_*` call and not be
/// freed twice.
#[no_mangle]
pub unsafe extern "C" fn taxosim_taxonomy_free(taxonomy: *mut TaxosimTaxonomy) {
    if !taxonomy.is_null() {
        drop(Box::from_raw(taxonomy));
    }
}

/// # Safety
/// `taxonomy` must be a live handle; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_taxonomy_node_count(
    taxonomy: *const TaxosimTaxonomy,
    out_count: *mut usize,
) -> TaxosimStatus {
    guard(|| {
        *out(out_count, "out_count")? = handle(taxonomy, "taxonomy")?.inner.node_count();
        Ok(())
    })
}

/// # Safety
/// `taxonomy` must be a live handle; `out_depth` must be writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_taxonomy_max_depth(
    taxonomy: *const TaxosimTaxonomy,
    out_depth: *mut u32,
) -> TaxosimStatus {
    guard(|| {
        *out(out_depth, "out_depth")? = handle(taxonomy, "taxonomy")?.inner.max_depth();
        Ok(())
    })
}

/// # Safety
/// `taxonomy` must be a live handle; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_taxonomy_leaf_count(
    taxonomy: *const TaxosimTaxonomy,
    out_count: *mut usize,
) -> TaxosimStatus {
    guard(|| {
        *out(out_count, "out_count")? = handle(taxonomy, "taxonomy")?.inner.leaf_count();
        Ok(())
    })
}

/// Resolve a concept key such as `00001740-n` to its id.
///
/// # Safety
/// `taxonomy` must be a live handle, `key` NUL-terminated, `out_id` writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_taxonomy_lookup(
    taxonomy: *const TaxosimTaxonomy,
    key: *const c_char,
    out_id: *mut u32,
) -> TaxosimStatus {
    guard(|| {
        let out_id = out(out_id, "out_id")?;
        let key = str_arg(key, "key")?;
        let c = handle(taxonomy, "taxonomy")?
            .inner
            .lookup(key)
            .ok_or_else(|| {
                Failure(
                    TaxosimStatus::UnknownConcept,
                    format!("unknown concept {key}"),
                )
            })?;
        *out_id = c.index() as u32;
        Ok(())
    })
}

/// # Safety
/// `taxonomy` must be a live handle; `out_depth` must be writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_taxonomy_depth(
    taxonomy: *const TaxosimTaxonomy,
    id: u32,
    out_depth: *mut u32,
) -> TaxosimStatus {
    guard(|| {
        let out_depth = out(out_depth, "out_depth")?;
        let t = &handle(taxonomy, "taxonomy")?.inner;
        *out_depth = t.depth(concept(t, id)?)?;
        Ok(())
    })
}

/// Concept ids for a word. Writes up to `capacity` ids into `out_ids` and
/// always stores the total number of senses in `out_len`, so a first call
/// with `capacity = 0` sizes the buffer.
///
/// # Safety
/// `out_ids` must hold `capacity` elements (may be NULL when 0).
#[no_mangle]
pub unsafe extern "C" fn taxosim_taxonomy_senses(
    taxonomy: *const TaxosimTaxonomy,
    word: *const c_char,
    out_ids: *mut u32,
    capacity: usize,
    out_len: *mut usize,
) -> TaxosimStatus {
    guard(|| {
        let out_len = out(out_len, "out_len")?;
        let word = str_arg(word, "word")?;
        let senses = handle(taxonomy, "taxonomy")?.inner.concepts_for_word(word);
        if capacity > 0 && out_ids.is_null() {
            return Err(null("out_ids"));
        }
        for (i, c) in senses.iter().take(capacity).enumerate() {
            *out_ids.add(i) = c.index() as u32;
        }
        *out_len = senses.len();
        Ok(())
    })
}

/// Shortest-path length between two concepts. `model` is `edge`,
/// `weighted`, `density` or `density:<lambda>`.
///
/// # Safety
/// `taxonomy` must be a live handle, `model` NUL-terminated, `out_path`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_path_length(
    taxonomy: *const TaxosimTaxonomy,
    c1: u32,
    c2: u32,
    model: *const c_char,
    out_path: *mut TaxosimPath,
) -> TaxosimStatus {
    guard(|| {
        let out_path = out(out_path, "out_path")?;
        let t = &handle(taxonomy, "taxonomy")?.inner;
        let model: PathModel = str_arg(model, "model")?.parse()?;
        let r = path_length(t, concept(t, c1)?, concept(t, c2)?, model)?;
        *out_path = TaxosimPath {
            length: r.length,
            edge_part: r.edge_part,
            compensation_part: r.compensation_part,
        };
        Ok(())
    })
}

/// Build a scorer. `path_model`, `ic_model`, `corpus_path` and `params`
/// may be NULL for defaults. `ic_model` is `seco`, `sanchez` or `corpus`
/// (which reads `word<TAB>count` lines from `corpus_path`). `params` is a
/// comma-separated `key=value` list such as `alpha=0.5,beta=0.55`.
///
/// # Safety
/// `taxonomy` must be a live handle, strings NUL-terminated, `out_scorer`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_scorer_new(
    taxonomy: *const TaxosimTaxonomy,
    measure: *const c_char,
    path_model: *const c_char,
    ic_model: *const c_char,
    corpus_path: *const c_char,
    params: *const c_char,
    out_scorer: *mut *mut TaxosimScorer,
) -> TaxosimStatus {
    guard(|| {
        let out_scorer = out(out_scorer, "out_scorer")?;
        let taxonomy = Arc::clone(&handle(taxonomy, "taxonomy")?.inner);
        let measure: Measure = str_arg(measure, "measure")?.parse()?;
        let mut spec = MeasureSpec::new(measure);
        if let Some(model) = opt_str_arg(path_model, "path_model")? {
            spec = spec.with_path_model(model.parse()?);
        }
        match opt_str_arg(ic_model, "ic_model")? {
            Some("corpus") => {
                let path = opt_str_arg(corpus_path, "corpus_path")?
                    .ok_or_else(|| invalid("corpus IC needs corpus_path"))?;
                let freq = FrequencyTable::from_reader(open(path)?)?;
                spec = spec.with_ic_model(IcModel::Corpus(freq));
            }
            Some(name) => spec = spec.with_ic_model(name.parse()?),
            None => {}
        }
        if let Some(list) = opt_str_arg(params, "params")? {
            for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| invalid(format!("expected key=value, got {item:?}")))?;
                let v: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| invalid(format!("bad number in {item:?}")))?;
                spec.params.set(k.trim(), v)?;
            }
        }

        // SAFETY: the taxonomy lives in an Arc owned by the handle, so its
        // address is stable and it outlives `scorer`, which is dropped first.
        let borrowed: &'static Taxonomy = &*Arc::as_ptr(&taxonomy);
        let scorer = Scorer::new(borrowed, spec)?;
        *out_scorer = Box::into_raw(Box::new(TaxosimScorer {
            scorer,
            _taxonomy: taxonomy,
        }));
        Ok(())
    })
}

/// Release a scorer. NULL is ignored.
///
/// # Safety
/// `scorer` must come from `taxosim_scorer_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn taxosim_scorer_free(scorer: *mut TaxosimScorer) {
    if !scorer.is_null() {
        drop(Box::from_raw(scorer));
    }
}

/// Best score over all sense pairs of two words.
///
/// # Safety
/// `scorer` must be a live handle, words NUL-terminated, `out_score`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_scorer_sim_words(
    scorer: *const TaxosimScorer,
    word1: *const c_char,
    word2: *const c_char,
    out_score: *mut TaxosimScore,
) -> TaxosimStatus {
    guard(|| {
        let out_score = out(out_score, "out_score")?;
        let scorer = &handle(scorer, "scorer")?.scorer;
        let s = scorer.sim_words(str_arg(word1, "word1")?, str_arg(word2, "word2")?)?;
        let (sense1, sense2) = s
            .senses
            .map_or((TAXOSIM_NO_CONCEPT, TAXOSIM_NO_CONCEPT), |(a, b)| {
                (a.index() as u32, b.index() as u32)
            });
        *out_score = TaxosimScore {
            value: s.value,
            is_distance: s.orientation == taxosim::Orientation::Distance,
            unknown_word: s.unknown_word,
            sense1,
            sense2,
        };
        Ok(())
    })
}

/// # Safety
/// `scorer` must be a live handle; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_scorer_sim_concepts(
    scorer: *const TaxosimScorer,
    c1: u32,
    c2: u32,
    out_value: *mut f64,
) -> TaxosimStatus {
    guard(|| {
        let out_value = out(out_value, "out_value")?;
        let scorer = &handle(scorer, "scorer")?.scorer;
        let t = scorer.taxonomy();
        *out_value = scorer.sim_concepts(concept(t, c1)?, concept(t, c2)?)?.value;
        Ok(())
    })
}

/// Pearson r of the scorer against a built-in dataset (`mc30`, `rg65`).
/// Distance measures report the sign-flipped coefficient.
///
/// # Safety
/// `scorer` must be a live handle, `dataset` NUL-terminated, `out_r`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_scorer_evaluate(
    scorer: *const TaxosimScorer,
    dataset: *const c_char,
    out_r: *mut f64,
) -> TaxosimStatus {
    guard(|| {
        let out_r = out(out_r, "out_r")?;
        let scorer = &handle(scorer, "scorer")?.scorer;
        let name = str_arg(dataset, "dataset")?;
        let ds =
            builtin_dataset(name).ok_or_else(|| invalid(format!("unknown dataset {name:?}")))?;
        *out_r = evaluate_with(scorer, &ds)?.pearson_r;
        Ok(())
    })
}

/// Pearson correlation of two series of length `len`.
///
/// # Safety
/// `xs` and `ys` must each point to `len` doubles; `out_r` must be writable.
#[no_mangle]
pub unsafe extern "C" fn taxosim_pearson(
    xs: *const f64,
    ys: *const f64,
    len: usize,
    out_r: *mut f64,
) -> TaxosimStatus {
    guard(|| {
        let out_r = out(out_r, "out_r")?;
        if xs.is_null() || ys.is_null() {
            return Err(null("series"));
        }
        let xs = std::slice::from_raw_parts(xs, len);
        let ys = std::slice::from_raw_parts(ys, len);
        *out_r = pearson(xs, ys)?;
        Ok(())
    })
}
