use std::io::BufRead;

use super::{RootPolicy, Taxonomy, TaxonomyBuilder};
use crate::error::{Error, Result};

/// Name of the node inserted above multiple parentless nodes.
pub const SYNTHETIC_ROOT: &str = "*ROOT*";

/// Load `child<TAB>parent` lines. Node names double as their only lemma.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Taxonomy> {
    let mut builder = TaxonomyBuilder::default();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (child, parent) = line.split_once('\t').ok_or_else(|| Error::Malformed {
            line: line_no,
            message: "expected child<TAB>parent".into(),
        })?;
        if parent.contains('\t') {
            return Err(Error::Malformed {
                line: line_no,
                message: "more than two fields".into(),
            });
        }
        let (child, parent) = (child.trim(), parent.trim());
        if child.is_empty() || parent.is_empty() {
            return Err(Error::BlankNode { line: line_no });
        }
        if child == parent {
            return Err(Error::SelfEdge {
                line: line_no,
                node: child.to_owned(),
            });
        }
        builder.add_lemma(child, child);
        builder.add_lemma(parent, parent);
        builder.add_edge(child, parent);
    }
    if builder.is_empty() {
        return Err(Error::EmptyInput);
    }
    builder.build(RootPolicy::Synthesize(SYNTHETIC_ROOT))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_edges() {
        let t = load_edge_list("# taxonomy v1\nb\ta\nc\ta\nd\tb\n".as_bytes()).unwrap();
        assert_eq!(t.key(t.root()).unwrap(), "a");
        assert_eq!(t.node_count(), 4);
        assert_eq!(t.leaf_count(), 2);
        assert_eq!(t.max_depth(), 2);
    }

    #[test]
    fn two_trees_get_synthetic_root() {
        let t = load_edge_list("x\tr1\ny\tr2\n".as_bytes()).unwrap();
        assert_eq!(t.key(t.root()).unwrap(), SYNTHETIC_ROOT);
        assert_eq!(t.depth(t.lookup("r1").unwrap()).unwrap(), 1);
        assert_eq!(t.depth(t.lookup("r2").unwrap()).unwrap(), 1);
        assert_eq!(t.node_count(), 5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            load_edge_list("a\ta\n".as_bytes()),
            Err(Error::SelfEdge { line: 1, .. })
        ));
        assert!(matches!(
            load_edge_list("b\ta\n\t x\n".as_bytes()),
            Err(Error::BlankNode { line: 2 })
        ));
        assert!(matches!(
            load_edge_list("no tab here\n".as_bytes()),
            Err(Error::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            load_edge_list("".as_bytes()),
            Err(Error::EmptyInput)
        ));
        assert!(matches!(
            load_edge_list("# only a comment\n".as_bytes()),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn detects_cycles() {
        // r is the only parentless node; a -> b -> c -> a hangs below it.
        let err = load_edge_list("a\tr\nb\ta\nc\tb\na\tc\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Cycle(_)), "{err}");
        // A pure cycle has no parentless node at all.
        let err = load_edge_list("a\tb\nb\ta\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Cycle(_)), "{err}");
    }
}
