use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Concept, ConceptId, Taxonomy};
use crate::error::{Error, Result};

/// What to do when more than one node has no parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RootPolicy {
    Reject,
    /// Insert a node with this key above every parentless node.
    Synthesize(&'static str),
}

#[derive(Default)]
struct Draft {
    lemmas: Vec<String>,
    parents: BTreeSet<String>,
}

#[derive(Default)]
pub(crate) struct TaxonomyBuilder {
    drafts: BTreeMap<String, Draft>,
}

impl TaxonomyBuilder {
    pub fn add_node(&mut self, key: &str) {
        self.drafts.entry(key.to_owned()).or_default();
    }

    pub fn add_lemma(&mut self, key: &str, lemma: &str) {
        let draft = self.drafts.entry(key.to_owned()).or_default();
        if !draft.lemmas.iter().any(|l| l == lemma) {
            draft.lemmas.push(lemma.to_owned());
        }
    }

    pub fn add_edge(&mut self, child: &str, parent: &str) {
        self.add_node(parent);
        self.drafts
            .entry(child.to_owned())
            .or_default()
            .parents
            .insert(parent.to_owned());
    }

    pub fn is_empty(&self) -> bool {
        self.drafts.is_empty()
    }

    pub fn build(mut self, policy: RootPolicy) -> Result<Taxonomy> {
        if self.drafts.is_empty() {
            return Err(Error::EmptyInput);
        }
        // Parents named only by pointers still need a node.
        let referenced: Vec<String> = self
            .drafts
            .values()
            .flat_map(|d| d.parents.iter().cloned())
            .collect();
        for key in referenced {
            self.add_node(&key);
        }

        let mut roots: Vec<String> = self
            .drafts
            .iter()
            .filter(|(_, d)| d.parents.is_empty())
            .map(|(k, _)| k.clone())
            .collect();
        if roots.len() > 1 {
            match policy {
                RootPolicy::Reject => return Err(Error::MultipleRoots(roots)),
                RootPolicy::Synthesize(name) => {
                    for r in &roots {
                        self.add_edge(r, name);
                    }
                    self.add_lemma(name, name);
                    roots = vec![name.to_owned()];
                }
            }
        }

        // BTreeMap iteration order makes id order equal key order.
        let ids: BTreeMap<&str, ConceptId> = self
            .drafts
            .keys()
            .enumerate()
            .map(|(i, k)| (k.as_str(), ConceptId::from_index(i)))
            .collect();
        let mut concepts: Vec<Concept> = self
            .drafts
            .iter()
            .map(|(key, d)| Concept {
                key: key.clone(),
                lemmas: d.lemmas.clone(),
                parents: d.parents.iter().map(|p| ids[p.as_str()]).collect(),
                children: Vec::new(),
            })
            .collect();
        for i in 0..concepts.len() {
            for p in concepts[i].parents.clone() {
                concepts[p.index()].children.push(ConceptId::from_index(i));
            }
        }
        // Parents come out of a BTreeSet keyed like the ids and children are
        // pushed in increasing id order, so both lists are already sorted.

        // Kahn's algorithm from the parentless nodes; anything left over sits on
        // or below a cycle.
        let mut pending: Vec<usize> = concepts.iter().map(|c| c.parents.len()).collect();
        let mut queue: VecDeque<ConceptId> = roots.iter().map(|r| ids[r.as_str()]).collect();
        let mut visited = 0;
        while let Some(c) = queue.pop_front() {
            visited += 1;
            for &child in &concepts[c.index()].children {
                pending[child.index()] -= 1;
                if pending[child.index()] == 0 {
                    queue.push_back(child);
                }
            }
        }
        if visited < concepts.len() {
            let stuck = pending
                .iter()
                .position(|&n| n > 0)
                .map(|i| concepts[i].key.clone())
                .unwrap_or_default();
            return Err(Error::Cycle(stuck));
        }

        let root = match roots.as_slice() {
            [r] => ids[r.as_str()],
            _ => return Err(Error::NoRoot),
        };
        Ok(Taxonomy::from_parts(concepts, root))
    }
}
