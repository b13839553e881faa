//! Information content: corpus-based and intrinsic (hyponym / leaf based)
//! models, and the whole-taxonomy pretreatment pass.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::taxonomy::{normalize_word, ConceptId, Taxonomy};

/// Aggregated word counts, read from `word<TAB>count` lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FrequencyTable {
    counts: HashMap<String, u64>,
    total: u64,
}

impl FrequencyTable {
    pub fn from_counts<I, S>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: AsRef<str>,
    {
        let mut table = FrequencyTable::default();
        for (word, n) in counts {
            *table
                .counts
                .entry(normalize_word(word.as_ref()))
                .or_default() += n;
            table.total += n;
        }
        if table.total == 0 {
            return Err(Error::EmptyFrequencyTable);
        }
        Ok(table)
    }

    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |message: &str| Error::Malformed {
                line: i + 1,
                message: message.to_owned(),
            };
            let (word, count) = line
                .split_once('\t')
                .ok_or_else(|| malformed("expected word<TAB>count"))?;
            let count: u64 = count
                .trim()
                .parse()
                .map_err(|_| malformed("count is not a nonnegative integer"))?;
            entries.push((word.to_owned(), count));
        }
        Self::from_counts(entries)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, word: &str) -> u64 {
        self.counts.get(&normalize_word(word)).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IcModel {
    Corpus(FrequencyTable),
    Seco,
    Sanchez,
}

impl IcModel {
    pub fn name(&self) -> &'static str {
        match self {
            IcModel::Corpus(_) => "corpus",
            IcModel::Seco => "seco",
            IcModel::Sanchez => "sanchez",
        }
    }
}

impl fmt::Display for IcModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IcModel {
    type Err = Error;

    /// Intrinsic models only; a corpus model needs its frequency table.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seco" => Ok(IcModel::Seco),
            "sanchez" => Ok(IcModel::Sanchez),
            "corpus" => Err(Error::Misconfigured(
                "corpus IC needs a frequency table".into(),
            )),
            _ => Err(Error::InvalidParameter(format!("unknown IC model {s:?}"))),
        }
    }
}

pub fn ic_seco(t: &Taxonomy, c: ConceptId) -> Result<f64> {
    let hypo = t.hyponym_count(c)?;
    seco_value(hypo, t.node_count())
}

fn seco_value(hyponyms: usize, nodes: usize) -> Result<f64> {
    if nodes < 2 {
        return Err(Error::InvalidParameter(
            "Seco IC needs at least two concepts".into(),
        ));
    }
    Ok(1.0 - ((hyponyms + 1) as f64).ln() / (nodes as f64).ln())
}

pub fn ic_sanchez(t: &Taxonomy, c: ConceptId) -> Result<f64> {
    let leaves = t.leaf_count_under(c)?;
    let subsumers = t.subsumers(c)?.len();
    Ok(sanchez_value(leaves, subsumers, t.leaf_count()))
}

fn sanchez_value(leaves: usize, subsumers: usize, max_leaves: usize) -> f64 {
    let ratio = leaves as f64 / subsumers as f64;
    -((ratio + 1.0) / (max_leaves as f64 + 1.0)).ln()
}

pub fn ic_corpus(t: &Taxonomy, c: ConceptId, freq: &FrequencyTable) -> Result<f64> {
    t.concept(c)?;
    if freq.total == 0 {
        return Err(Error::EmptyFrequencyTable);
    }
    let mut words: Vec<String> = Vec::new();
    let mut stack = vec![c];
    let mut seen = vec![false; t.node_count()];
    seen[c.index()] = true;
    while let Some(x) = stack.pop() {
        let node = t.node(x);
        words.extend(node.lemmas.iter().map(|l| normalize_word(l)));
        for &child in &node.children {
            if !seen[child.index()] {
                seen[child.index()] = true;
                stack.push(child);
            }
        }
    }
    words.sort_unstable();
    words.dedup();
    let mass: u64 = words.iter().map(|w| freq.count(w)).sum();
    Ok(corpus_value(mass, freq.total, t.node_count()))
}

fn corpus_value(mass: u64, total: u64, nodes: usize) -> f64 {
    if mass == 0 {
        // Add-one smoothing for concepts never observed.
        (total as f64 + nodes as f64).ln()
    } else {
        -(mass as f64 / total as f64).ln()
    }
}

/// IC for every concept, computed in one pass.
#[derive(Debug, Clone)]
pub struct IcTable {
    model: &'static str,
    values: Vec<f64>,
    max_value: f64,
    pretreatment_duration: Duration,
}

impl IcTable {
    pub fn get(&self, c: ConceptId) -> Result<f64> {
        self.values
            .get(c.index())
            .copied()
            .ok_or_else(|| Error::UnknownConcept(c.to_string()))
    }

    pub(crate) fn value(&self, c: ConceptId) -> f64 {
        self.values[c.index()]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_value(&self) -> f64 {
        self.max_value
    }

    pub fn model(&self) -> &'static str {
        self.model
    }

    pub fn pretreatment_duration(&self) -> Duration {
        self.pretreatment_duration
    }
}

/// Parents before children.
fn topological_order(t: &Taxonomy) -> Vec<ConceptId> {
    let mut pending: Vec<usize> = t.concepts().map(|(_, c)| c.parents.len()).collect();
    let mut order = Vec::with_capacity(t.node_count());
    order.push(t.root());
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for &child in &t.node(c).children {
            pending[child.index()] -= 1;
            if pending[child.index()] == 0 {
                order.push(child);
            }
        }
    }
    order
}

/// Sorted, deduplicated hyponym sets for every concept, built bottom-up.
/// Sets rather than counts, because multiple inheritance makes counts
/// non-additive.
fn hyponym_sets(t: &Taxonomy, order: &[ConceptId]) -> Vec<Vec<u32>> {
    let mut sets: Vec<Vec<u32>> = vec![Vec::new(); t.node_count()];
    for &c in order.iter().rev() {
        let children = &t.node(c).children;
        let mut set: Vec<u32> = Vec::new();
        for &child in children {
            set.push(child.0);
            set.extend_from_slice(&sets[child.index()]);
        }
        if children.len() > 1 {
            set.sort_unstable();
            set.dedup();
        }
        sets[c.index()] = set;
    }
    sets
}

/// Number of subsumers (self included), built top-down.
fn subsumer_counts(t: &Taxonomy, order: &[ConceptId]) -> Vec<usize> {
    let mut sets: Vec<Vec<u32>> = vec![Vec::new(); t.node_count()];
    for &c in order {
        let parents = &t.node(c).parents;
        let mut set: Vec<u32> = vec![c.0];
        for &p in parents {
            set.extend_from_slice(&sets[p.index()]);
        }
        if parents.len() > 1 {
            set.sort_unstable();
            set.dedup();
        }
        sets[c.index()] = set;
    }
    sets.iter().map(Vec::len).collect()
}

/// Walk the whole taxonomy once and store an IC value per concept.
pub fn ic_pretreat(t: &Taxonomy, model: &IcModel) -> Result<IcTable> {
    let start = Instant::now();
    let order = topological_order(t);
    let hyponyms = hyponym_sets(t, &order);
    let n = t.node_count();

    let values: Vec<f64> = match model {
        IcModel::Seco => hyponyms
            .iter()
            .map(|set| seco_value(set.len(), n))
            .collect::<Result<_>>()?,
        IcModel::Sanchez => {
            let subsumers = subsumer_counts(t, &order);
            let max_leaves = t.leaf_count();
            hyponyms
                .iter()
                .zip(&subsumers)
                .map(|(set, &subs)| {
                    let leaves = set
                        .iter()
                        .filter(|&&h| t.node(ConceptId(h)).is_leaf())
                        .count();
                    sanchez_value(leaves, subs, max_leaves)
                })
                .collect()
        }
        IcModel::Corpus(freq) => {
            if freq.total == 0 {
                return Err(Error::EmptyFrequencyTable);
            }
            // Word ids for observed lemmas only; unobserved words carry no mass.
            let mut ids: HashMap<String, usize> = HashMap::new();
            let mut counts: Vec<u64> = Vec::new();
            let lemma_ids: Vec<Vec<usize>> = t
                .concepts()
                .map(|(_, c)| {
                    c.lemmas
                        .iter()
                        .filter_map(|l| {
                            let w = normalize_word(l);
                            let count = freq.counts.get(&w).copied()?;
                            Some(*ids.entry(w).or_insert_with(|| {
                                counts.push(count);
                                counts.len() - 1
                            }))
                        })
                        .collect()
                })
                .collect();
            let mut stamp = vec![usize::MAX; counts.len()];
            (0..n)
                .map(|i| {
                    let mut mass = 0u64;
                    let members = std::iter::once(i).chain(hyponyms[i].iter().map(|&h| h as usize));
                    for member in members {
                        for &w in &lemma_ids[member] {
                            if stamp[w] != i {
                                stamp[w] = i;
                                mass += counts[w];
                            }
                        }
                    }
                    corpus_value(mass, freq.total, n)
                })
                .collect()
        }
    };
    let max_value = values.iter().copied().fold(0.0, f64::max);
    Ok(IcTable {
        model: model.name(),
        values,
        max_value,
        pretreatment_duration: start.elapsed(),
    })
}

/// Most informative common subsumer; ties go to the deepest, then smallest id.
pub fn mics(t: &Taxonomy, ic: &IcTable, c1: ConceptId, c2: ConceptId) -> Result<ConceptId> {
    if ic.len() != t.node_count() {
        return Err(Error::Misconfigured(
            "IC table was built for another taxonomy".into(),
        ));
    }
    let up1 = t.upward_distances(c1)?;
    let up2: std::collections::HashSet<ConceptId> = t
        .upward_distances(c2)?
        .into_iter()
        .map(|(c, _)| c)
        .collect();
    let best = up1
        .into_iter()
        .map(|(c, _)| c)
        .filter(|c| up2.contains(c))
        .max_by(|&a, &b| {
            ic.value(a)
                .total_cmp(&ic.value(b))
                .then(t.depth_of(a).cmp(&t.depth_of(b)))
                .then(b.cmp(&a))
        })
        .expect("root is a common subsumer");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxonomy::load_edge_list;

    fn toy(src: &str) -> Taxonomy {
        load_edge_list(src.as_bytes()).unwrap()
    }

    fn id(t: &Taxonomy, key: &str) -> ConceptId {
        t.lookup(key).unwrap()
    }

    const DIAMOND: &str = "a\troot\nb\troot\nc\ta\nc\tb\n";

    #[test]
    fn seco_examples() {
        let t = toy(DIAMOND);
        assert_eq!(ic_seco(&t, t.root()).unwrap(), 0.0);
        assert_eq!(ic_seco(&t, id(&t, "c")).unwrap(), 1.0);
        assert!((ic_seco(&t, id(&t, "a")).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sanchez_examples() {
        let t = toy("a\troot\nb\ta\n");
        assert_eq!(ic_sanchez(&t, t.root()).unwrap(), 0.0);
        let a = ic_sanchez(&t, id(&t, "a")).unwrap();
        assert!((a - (4.0f64 / 3.0).ln()).abs() < 1e-12);
        let b = ic_sanchez(&t, id(&t, "b")).unwrap();
        assert!((b - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn corpus_examples() {
        let t = toy("x\tp\ny\tp\n");
        let freq = FrequencyTable::from_counts([("x", 1), ("y", 1)]).unwrap();
        assert_eq!(ic_corpus(&t, t.root(), &freq).unwrap(), 0.0);
        assert!((ic_corpus(&t, id(&t, "x"), &freq).unwrap() - 2.0f64.ln()).abs() < 1e-12);

        // Unseen concept scores above every seen one.
        let t = toy("x\tp\ny\tp\nz\tp\n");
        let unseen = ic_corpus(&t, id(&t, "z"), &freq).unwrap();
        assert!(unseen > ic_corpus(&t, id(&t, "x"), &freq).unwrap());
        assert!(unseen > ic_corpus(&t, t.root(), &freq).unwrap());

        // All mass on a two-word root.
        let freq = FrequencyTable::from_counts([("p", 3)]).unwrap();
        assert_eq!(ic_corpus(&t, t.root(), &freq).unwrap(), 0.0);
    }

    #[test]
    fn frequency_table_parsing() {
        let f = FrequencyTable::from_reader("# counts\nCar\t3\nauto\t2\n".as_bytes()).unwrap();
        assert_eq!(f.total(), 5);
        assert_eq!(f.count("car"), 3);
        assert!(matches!(
            FrequencyTable::from_reader("car\t0\n".as_bytes()),
            Err(Error::EmptyFrequencyTable)
        ));
        assert!(matches!(
            FrequencyTable::from_reader("car 3\n".as_bytes()),
            Err(Error::Malformed { line: 1, .. })
        ));
        assert!(FrequencyTable::from_reader("car\t-1\n".as_bytes()).is_err());
    }

    #[test]
    fn pretreatment_matches_per_node_values() {
        let t = toy("a\troot\nb\troot\nc\ta\nc\tb\nd\tc\ne\ta\nf\te\nf\tb\n");
        let freq = FrequencyTable::from_counts([("d", 4), ("f", 2), ("a", 1), ("zz", 5)]).unwrap();
        let seco = ic_pretreat(&t, &IcModel::Seco).unwrap();
        let sanchez = ic_pretreat(&t, &IcModel::Sanchez).unwrap();
        let corpus = ic_pretreat(&t, &IcModel::Corpus(freq.clone())).unwrap();
        for (c, _) in t.concepts() {
            assert!((seco.get(c).unwrap() - ic_seco(&t, c).unwrap()).abs() < 1e-12);
            assert!((sanchez.get(c).unwrap() - ic_sanchez(&t, c).unwrap()).abs() < 1e-12);
            assert!((corpus.get(c).unwrap() - ic_corpus(&t, c, &freq).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn diamond_hyponyms_are_not_double_counted() {
        let t = toy(DIAMOND);
        let table = ic_pretreat(&t, &IcModel::Seco).unwrap();
        // root has 3 distinct hyponyms: 1 - ln 4 / ln 4 = 0.
        assert_eq!(table.get(t.root()).unwrap(), 0.0);
        assert_eq!(table.len(), 4);
    }

    #[test]
    fn mics_examples() {
        let t = toy("a\troot\nb\ta\n");
        let table = ic_pretreat(&t, &IcModel::Seco).unwrap();
        let (a, b) = (id(&t, "a"), id(&t, "b"));
        assert_eq!(mics(&t, &table, a, b).unwrap(), a);
        assert_eq!(mics(&t, &table, b, b).unwrap(), b);

        // x and y share parents p (2 hyponyms) and q (3 hyponyms).
        let t = toy("p\troot\nq\troot\nx\tp\ny\tp\nx\tq\ny\tq\nz\tq\n");
        let table = ic_pretreat(&t, &IcModel::Seco).unwrap();
        assert_eq!(
            mics(&t, &table, id(&t, "x"), id(&t, "y")).unwrap(),
            id(&t, "p")
        );
    }
}
