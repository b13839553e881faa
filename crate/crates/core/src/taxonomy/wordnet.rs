//! Reader for the WordNet 3.0 noun database (`data.noun`, `index.noun`).

use std::collections::{BTreeSet, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::Serialize;

use super::{normalize_word, RootPolicy, Taxonomy, TaxonomyBuilder};
use crate::error::{Error, Result};

/// Consistency findings gathered while loading.
#[derive(Debug, Clone, Default, Serialize)]
pub struct WordNetReport {
    pub synsets: usize,
    pub parent_edges: usize,
    pub hyponym_pointers: usize,
    /// `(hypernym, hyponym)` key pairs where a `~` pointer and the matching
    /// `@` pointer do not mirror each other.
    pub mirror_mismatches: Vec<(String, String)>,
    pub index_lemmas: usize,
    /// Lemmas whose `index.noun` synset list disagrees with `data.noun`.
    pub index_mismatches: Vec<String>,
}

impl WordNetReport {
    pub fn is_consistent(&self) -> bool {
        self.mirror_mismatches.is_empty() && self.index_mismatches.is_empty()
    }
}

fn synset_key(offset: &str) -> String {
    format!("{offset}-n")
}

struct Cursor<'a> {
    fields: std::str::SplitAsciiWhitespace<'a>,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self, what: &str) -> Result<&'a str> {
        self.fields.next().ok_or_else(|| Error::Malformed {
            line: self.line,
            message: format!("missing {what}"),
        })
    }

    fn offset(&mut self, what: &str) -> Result<&'a str> {
        let s = self.next(what)?;
        if s.len() != 8 || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.bad(format!("{what} {s:?} is not an 8-digit offset")));
        }
        Ok(s)
    }

    fn number(&mut self, what: &str, radix: u32) -> Result<usize> {
        let s = self.next(what)?;
        usize::from_str_radix(s, radix).map_err(|_| self.bad(format!("bad {what} {s:?}")))
    }

    fn bad(&self, message: String) -> Error {
        Error::Malformed {
            line: self.line,
            message,
        }
    }
}

#[derive(Default)]
struct Pointers {
    /// (child, parent) from `@`/`@i`.
    up: HashSet<(String, String)>,
    /// (parent, child) from `~`/`~i`.
    down: HashSet<(String, String)>,
}

fn parse_data_line(
    line: &str,
    line_no: usize,
    builder: &mut TaxonomyBuilder,
    pointers: &mut Pointers,
) -> Result<()> {
    let body = line.split_once(" | ").map_or(line, |(b, _)| b);
    let mut cur = Cursor {
        fields: body.split_ascii_whitespace(),
        line: line_no,
    };
    let offset = cur.offset("synset offset")?;
    cur.next("lex_filenum")?;
    let ss_type = cur.next("ss_type")?;
    if ss_type != "n" {
        return Err(cur.bad(format!("ss_type {ss_type:?} is not a noun")));
    }
    let key = synset_key(offset);
    builder.add_node(&key);

    let words = cur.number("w_cnt", 16)?;
    if words == 0 {
        return Err(cur.bad("synset without words".into()));
    }
    for _ in 0..words {
        let word = cur.next("word")?;
        cur.next("lex_id")?;
        builder.add_lemma(&key, word);
    }

    let ptr_count = cur.number("p_cnt", 10)?;
    for _ in 0..ptr_count {
        let symbol = cur.next("pointer symbol")?;
        let target = cur.offset("pointer offset")?;
        let pos = cur.next("pointer pos")?;
        cur.next("source/target")?;
        if pos != "n" {
            continue;
        }
        match symbol {
            "@" | "@i" => {
                let parent = synset_key(target);
                builder.add_edge(&key, &parent);
                pointers.up.insert((key.clone(), parent));
            }
            "~" | "~i" => {
                pointers.down.insert((key.clone(), synset_key(target)));
            }
            _ => {}
        }
    }
    Ok(())
}

/// Load the noun hierarchy. Hypernym and instance-hypernym pointers become
/// parent edges; `index.noun` is only used for cross-checking.
pub fn load_wordnet<D: BufRead, I: BufRead>(data: D, index: I) -> Result<Taxonomy> {
    load_wordnet_with_report(data, index).map(|(t, _)| t)
}

pub fn load_wordnet_dir(dir: &Path) -> Result<Taxonomy> {
    let data = BufReader::new(File::open(dir.join("data.noun"))?);
    let index = BufReader::new(File::open(dir.join("index.noun"))?);
    load_wordnet(data, index)
}

pub fn load_wordnet_with_report<D: BufRead, I: BufRead>(
    data: D,
    index: I,
) -> Result<(Taxonomy, WordNetReport)> {
    let mut builder = TaxonomyBuilder::default();
    let mut pointers = Pointers::default();
    let mut synsets = 0;
    for (i, line) in data.lines().enumerate() {
        let line = line?;
        // License header lines start with two spaces.
        if line.starts_with("  ") || line.trim().is_empty() {
            continue;
        }
        parse_data_line(&line, i + 1, &mut builder, &mut pointers)?;
        synsets += 1;
    }
    if synsets == 0 {
        return Err(Error::EmptyInput);
    }
    let taxonomy = builder.build(RootPolicy::Reject)?;

    let mut report = WordNetReport {
        synsets,
        parent_edges: pointers.up.len(),
        hyponym_pointers: pointers.down.len(),
        ..Default::default()
    };
    let mut mismatches: BTreeSet<(String, String)> = BTreeSet::new();
    for (child, parent) in &pointers.up {
        if !pointers.down.contains(&(parent.clone(), child.clone())) {
            mismatches.insert((parent.clone(), child.clone()));
        }
    }
    for (parent, child) in &pointers.down {
        if !pointers.up.contains(&(child.clone(), parent.clone())) {
            mismatches.insert((parent.clone(), child.clone()));
        }
    }
    report.mirror_mismatches = mismatches.into_iter().collect();

    cross_check_index(&taxonomy, index, &mut report)?;
    Ok((taxonomy, report))
}

fn cross_check_index<I: BufRead>(
    taxonomy: &Taxonomy,
    index: I,
    report: &mut WordNetReport,
) -> Result<()> {
    let mut seen = HashSet::new();
    for (i, line) in index.lines().enumerate() {
        let line = line?;
        if line.starts_with("  ") || line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor {
            fields: line.split_ascii_whitespace(),
            line: i + 1,
        };
        let lemma = cur.next("lemma")?;
        cur.next("pos")?;
        let synset_cnt = cur.number("synset_cnt", 10)?;
        let p_cnt = cur.number("p_cnt", 10)?;
        for _ in 0..p_cnt {
            cur.next("pointer symbol")?;
        }
        cur.next("sense_cnt")?;
        cur.next("tagsense_cnt")?;
        let mut listed = BTreeSet::new();
        for _ in 0..synset_cnt {
            listed.insert(synset_key(cur.offset("synset offset")?));
        }

        let normalized = normalize_word(lemma);
        let parsed: BTreeSet<String> = taxonomy
            .concepts_for_word(&normalized)
            .iter()
            .map(|&c| taxonomy.node(c).key.clone())
            .collect();
        if parsed != listed {
            report.index_mismatches.push(normalized.clone());
        }
        seen.insert(normalized);
        report.index_lemmas += 1;
    }
    for lemma in taxonomy.lemma_index().keys() {
        if !seen.contains(lemma) {
            report.index_mismatches.push(lemma.clone());
        }
    }
    report.index_mismatches.sort();
    Ok(())
}
