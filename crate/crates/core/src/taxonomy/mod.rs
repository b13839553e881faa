//! Immutable is-a hierarchy and the structural queries every measure is
//! built on: depth, subsumers, least common subsumer, shortest path and
//! hyponym statistics.

mod builder;
mod edge_list;
mod wordnet;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub(crate) use builder::{RootPolicy, TaxonomyBuilder};
pub use edge_list::{load_edge_list, SYNTHETIC_ROOT};
pub use wordnet::{load_wordnet, load_wordnet_dir, load_wordnet_with_report, WordNetReport};

/// Handle to one concept of a [`Taxonomy`].
///
/// Ids are dense and ordered the same way as concept keys, so "smallest id"
/// tie-breaks are stable across loads of the same source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ConceptId(pub(crate) u32);

impl ConceptId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Self {
        ConceptId(index as u32)
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct Concept {
    /// Stable external identifier: `00001740-n` for WordNet synsets, the
    /// node name for edge lists.
    pub key: String,
    pub lemmas: Vec<String>,
    /// Direct hypernyms, sorted by id.
    pub parents: Vec<ConceptId>,
    /// Direct hyponyms, sorted by id.
    pub children: Vec<ConceptId>,
}

impl Concept {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// The two legs of a shortest is-a path, joined at the least common subsumer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    pub lcs: ConceptId,
    /// `c1 ... lcs ... c2`, inclusive of both endpoints.
    pub nodes: Vec<ConceptId>,
}

impl Connection {
    pub fn edge_count(&self) -> u32 {
        (self.nodes.len() - 1) as u32
    }
}

#[derive(Debug, Clone)]
pub struct Taxonomy {
    concepts: Vec<Concept>,
    keys: HashMap<String, ConceptId>,
    lemma_index: HashMap<String, Vec<ConceptId>>,
    depths: Vec<u32>,
    root: ConceptId,
    max_depth: u32,
    leaf_count: usize,
}

/// Lowercase and join multi-word expressions with underscores.
pub fn normalize_word(word: &str) -> String {
    word.split_whitespace()
        .collect::<Vec<_>>()
        .join("_")
        .to_lowercase()
}

impl Taxonomy {
    pub(crate) fn from_parts(concepts: Vec<Concept>, root: ConceptId) -> Self {
        let keys = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.key.clone(), ConceptId::from_index(i)))
            .collect();

        let mut lemma_index: HashMap<String, Vec<ConceptId>> = HashMap::new();
        for (i, c) in concepts.iter().enumerate() {
            for lemma in &c.lemmas {
                let ids = lemma_index.entry(normalize_word(lemma)).or_default();
                let id = ConceptId::from_index(i);
                if !ids.contains(&id) {
                    ids.push(id);
                }
            }
        }

        // Longest chain of is-a links up to the root, filled in parents-first order.
        let mut depths = vec![0u32; concepts.len()];
        let mut pending: Vec<usize> = concepts.iter().map(|c| c.parents.len()).collect();
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            let next = depths[c.index()] + 1;
            for &child in &concepts[c.index()].children {
                let d = &mut depths[child.index()];
                *d = (*d).max(next);
                pending[child.index()] -= 1;
                if pending[child.index()] == 0 {
                    queue.push_back(child);
                }
            }
        }
        let max_depth = depths.iter().copied().max().unwrap_or(0);
        let leaf_count = concepts.iter().filter(|c| c.is_leaf()).count();

        Taxonomy {
            concepts,
            keys,
            lemma_index,
            depths,
            root,
            max_depth,
            leaf_count,
        }
    }

    pub fn root(&self) -> ConceptId {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.concepts.len()
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn concept(&self, c: ConceptId) -> Result<&Concept> {
        self.concepts
            .get(c.index())
            .ok_or_else(|| Error::UnknownConcept(c.to_string()))
    }

    pub fn concepts(&self) -> impl Iterator<Item = (ConceptId, &Concept)> {
        self.concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (ConceptId::from_index(i), c))
    }

    pub fn lookup(&self, key: &str) -> Option<ConceptId> {
        self.keys.get(key).copied()
    }

    pub fn key(&self, c: ConceptId) -> Result<&str> {
        Ok(&self.concept(c)?.key)
    }

    fn check(&self, c: ConceptId) -> Result<()> {
        self.concept(c).map(|_| ())
    }

    // Unchecked accessors for ids that are already validated.
    pub(crate) fn node(&self, c: ConceptId) -> &Concept {
        &self.concepts[c.index()]
    }

    pub(crate) fn depth_of(&self, c: ConceptId) -> u32 {
        self.depths[c.index()]
    }

    /// Number of is-a links on the longest chain from `c` up to the root.
    /// With multiple inheritance every parent is strictly shallower than
    /// its child.
    pub fn depth(&self, c: ConceptId) -> Result<u32> {
        self.check(c)?;
        Ok(self.depth_of(c))
    }

    /// Number of direct hyponyms.
    pub fn density(&self, c: ConceptId) -> Result<usize> {
        Ok(self.concept(c)?.children.len())
    }

    /// Parents plus children of `c`.
    pub fn neighbor_count(&self, c: ConceptId) -> Result<usize> {
        let node = self.concept(c)?;
        Ok(node.parents.len() + node.children.len())
    }

    /// `c` and every ancestor of `c`, paired with the minimum upward distance,
    /// in breadth-first order (so `c` comes first at distance 0).
    pub fn upward_distances(&self, c: ConceptId) -> Result<Vec<(ConceptId, u32)>> {
        self.check(c)?;
        Ok(self.upward_map(c).into_order())
    }

    fn upward_map(&self, c: ConceptId) -> Ancestry {
        let mut ancestry = Ancestry::default();
        ancestry.insert(c, 0);
        let mut head = 0;
        while head < ancestry.order.len() {
            let (x, d) = ancestry.order[head];
            head += 1;
            for &p in &self.node(x).parents {
                if !ancestry.dist.contains_key(&p) {
                    ancestry.insert(p, d + 1);
                }
            }
        }
        ancestry
    }

    /// Every ancestor of `c` plus `c` itself, sorted by id.
    pub fn subsumers(&self, c: ConceptId) -> Result<Vec<ConceptId>> {
        let mut ids: Vec<_> = self
            .upward_distances(c)?
            .into_iter()
            .map(|(a, _)| a)
            .collect();
        ids.sort_unstable();
        Ok(ids)
    }

    /// True when `ancestor` is `c` or lies above it.
    pub fn subsumes(&self, ancestor: ConceptId, c: ConceptId) -> Result<bool> {
        self.check(ancestor)?;
        self.check(c)?;
        Ok(self.upward_map(c).dist.contains_key(&ancestor))
    }

    /// Common subsumer minimising the summed distance to both concepts; ties
    /// go to the deepest candidate, then the smallest id.
    pub fn lcs(&self, c1: ConceptId, c2: ConceptId) -> Result<ConceptId> {
        Ok(self.connection(c1, c2)?.lcs)
    }

    pub fn shortest_path_nodes(&self, c1: ConceptId, c2: ConceptId) -> Result<Vec<ConceptId>> {
        Ok(self.connection(c1, c2)?.nodes)
    }

    pub fn path_edge_count(&self, c1: ConceptId, c2: ConceptId) -> Result<u32> {
        Ok(self.connection(c1, c2)?.edge_count())
    }

    /// Least common subsumer and the shortest is-a path running through it.
    pub fn connection(&self, c1: ConceptId, c2: ConceptId) -> Result<Connection> {
        self.check(c1)?;
        self.check(c2)?;
        if c1 == c2 {
            return Ok(Connection {
                lcs: c1,
                nodes: vec![c1],
            });
        }

        let up1 = self.upward_map(c1);
        let up2 = self.upward_map(c2);
        let lcs = up2
            .order
            .iter()
            .filter_map(|&(s, d2)| up1.dist.get(&s).map(|&d1| (s, d1 + d2)))
            .min_by_key(|&(s, total)| (total, std::cmp::Reverse(self.depth_of(s)), s))
            .map(|(s, _)| s)
            // The root subsumes everything, so a common subsumer always exists.
            .expect("taxonomy root is a common subsumer");

        let mut nodes = self.upward_chain(c1, lcs, &up1);
        let mut down = self.upward_chain(c2, lcs, &up2);
        down.pop();
        nodes.extend(down.into_iter().rev());
        Ok(Connection { lcs, nodes })
    }

    /// Minimal chain `from -> ... -> target` along parent edges, choosing the
    /// smallest parent id whenever several continue a shortest chain.
    fn upward_chain(&self, from: ConceptId, target: ConceptId, up: &Ancestry) -> Vec<ConceptId> {
        // Distances down from the target, restricted to ancestors of `from`.
        let mut to_target: HashMap<ConceptId, u32> = HashMap::from([(target, 0)]);
        let mut queue = VecDeque::from([target]);
        while let Some(x) = queue.pop_front() {
            let next = to_target[&x] + 1;
            for &child in &self.node(x).children {
                if up.dist.contains_key(&child) && !to_target.contains_key(&child) {
                    to_target.insert(child, next);
                    queue.push_back(child);
                }
            }
        }

        let mut chain = vec![from];
        let mut cur = from;
        while cur != target {
            let want = to_target[&cur] - 1;
            cur = self
                .node(cur)
                .parents
                .iter()
                .copied()
                .find(|p| to_target.get(p) == Some(&want))
                .expect("shortest chain continues through some parent");
            chain.push(cur);
        }
        chain
    }

    fn descendants(&self, c: ConceptId) -> Vec<ConceptId> {
        let mut seen = vec![false; self.concepts.len()];
        let mut stack = vec![c];
        let mut out = Vec::new();
        seen[c.index()] = true;
        while let Some(x) = stack.pop() {
            for &child in &self.node(x).children {
                if !seen[child.index()] {
                    seen[child.index()] = true;
                    out.push(child);
                    stack.push(child);
                }
            }
        }
        out
    }

    /// Distinct concepts strictly below `c`.
    pub fn hyponym_count(&self, c: ConceptId) -> Result<usize> {
        self.check(c)?;
        Ok(self.descendants(c).len())
    }

    /// Leaves strictly below `c`; a leaf has none.
    pub fn leaf_count_under(&self, c: ConceptId) -> Result<usize> {
        self.check(c)?;
        Ok(self
            .descendants(c)
            .into_iter()
            .filter(|&d| self.node(d).is_leaf())
            .count())
    }

    pub fn concepts_for_word(&self, word: &str) -> &[ConceptId] {
        self.lemma_index
            .get(&normalize_word(word))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub(crate) fn lemma_index(&self) -> &HashMap<String, Vec<ConceptId>> {
        &self.lemma_index
    }
}

#[derive(Default)]
struct Ancestry {
    dist: HashMap<ConceptId, u32>,
    order: Vec<(ConceptId, u32)>,
}

impl Ancestry {
    fn insert(&mut self, c: ConceptId, d: u32) {
        self.dist.insert(c, d);
        self.order.push((c, d));
    }

    fn into_order(self) -> Vec<(ConceptId, u32)> {
        self.order
    }
}
