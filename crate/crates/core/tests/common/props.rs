use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use taxosim::{
    ic_pretreat, load_edge_list, load_wordnet, path_length, pearson, ConceptId, IcModel, Measure,
    MeasureSpec, PathModel, Scorer, Taxonomy,
};

/// Random rooted DAG on `n0..n{len}`: every node past the root picks one to
/// three parents among earlier nodes.
pub fn dag(max_nodes: usize) -> impl Strategy<Value = Taxonomy> {
    (2..=max_nodes)
        .prop_flat_map(|n| {
            let parents = (1..n)
                .map(|i| proptest::collection::vec(0..i, 1..=3.min(i)))
                .collect::<Vec<_>>();
            (Just(n), parents)
        })
        .prop_map(|(_, parents)| {
            let mut text = String::new();
            for (i, ps) in parents.iter().enumerate() {
                for p in ps {
                    text.push_str(&format!("n{}\tn{}\n", i + 1, p));
                }
            }
            load_edge_list(text.as_bytes()).unwrap()
        })
}

/// Random DAG in WordNet data-file form where each synset carries one or
/// two lemmas from a six-word vocabulary, so words have several senses.
pub fn polysemous(max_nodes: usize) -> impl Strategy<Value = (Taxonomy, Vec<String>)> {
    (2..=max_nodes)
        .prop_flat_map(|n| {
            (0..n)
                .map(|i| {
                    (
                        proptest::collection::vec(0..i.max(1), if i == 0 { 0..=0 } else { 1..=2 }),
                        proptest::collection::btree_set(0usize..6, 1..=2),
                    )
                })
                .collect::<Vec<_>>()
        })
        .prop_map(|synsets| {
            let words: Vec<String> = (0..6).map(|i| format!("w{i}")).collect();
            let offset = |i: usize| format!("{:08}", 1000 + i * 10);
            let mut data = String::new();
            for (i, (parents, lemmas)) in synsets.iter().enumerate() {
                let mut parents = parents.clone();
                parents.sort_unstable();
                parents.dedup();
                data.push_str(&format!("{} 03 n {:02x}", offset(i), lemmas.len()));
                for &l in lemmas {
                    data.push_str(&format!(" {} 0", words[l]));
                }
                data.push_str(&format!(" {:03}", parents.len()));
                for &p in &parents {
                    data.push_str(&format!(" @ {} n 0000", offset(p)));
                }
                data.push_str(" | gloss\n");
            }
            (load_wordnet(data.as_bytes(), "".as_bytes()).unwrap(), words)
        })
}

pub fn ids(t: &Taxonomy) -> Vec<ConceptId> {
    t.concepts().map(|(c, _)| c).collect()
}

/// Breadth-first search over `(node, descending)` states of the undirected
/// is-a graph: a walk may climb any number of parent links, then descend any
/// number of child links, which is exactly a path through a common subsumer.
pub fn oracle_path(t: &Taxonomy, from: ConceptId, to: ConceptId) -> u32 {
    let mut dist: HashMap<(ConceptId, bool), u32> = HashMap::from([((from, false), 0)]);
    let mut queue = VecDeque::from([(from, false)]);
    while let Some((x, down)) = queue.pop_front() {
        let d = dist[&(x, down)];
        if x == to {
            return d;
        }
        let node = t.concept(x).unwrap();
        let mut next: Vec<(ConceptId, bool)> = node.children.iter().map(|&c| (c, true)).collect();
        if !down {
            next.extend(node.parents.iter().map(|&p| (p, false)));
        }
        for s in next {
            if let Entry::Vacant(slot) = dist.entry(s) {
                slot.insert(d + 1);
                queue.push_back(s);
            }
        }
    }
    unreachable!("the root connects every pair")
}

/// Longest parent chain to the root, by plain recursion.
pub fn oracle_depth(t: &Taxonomy, c: ConceptId) -> u32 {
    t.concept(c)
        .unwrap()
        .parents
        .iter()
        .map(|&p| oracle_depth(t, p) + 1)
        .max()
        .unwrap_or(0)
}

pub fn pairs(t: &Taxonomy, picks: &[(usize, usize)]) -> Vec<(ConceptId, ConceptId)> {
    let all = ids(t);
    picks
        .iter()
        .map(|&(a, b)| (all[a % all.len()], all[b % all.len()]))
        .collect()
}

pub fn pick_list() -> impl Strategy<Value = Vec<(usize, usize)>> {
    proptest::collection::vec((0usize..1000, 0usize..1000), 20)
}

pub const MODELS: [fn() -> PathModel; 4] = [
    || PathModel::EdgeCounting,
    || PathModel::EdgeWeighted,
    || PathModel::density(0.3).unwrap(),
    || PathModel::density(1.0).unwrap(),
];

pub type Check = Result<(), TestCaseError>;

pub fn check_path_oracle(t: &Taxonomy, picks: &[(usize, usize)]) -> Check {
    for (a, b) in pairs(t, picks) {
        let conn = t.connection(a, b).unwrap();
        prop_assert_eq!(conn.edge_count(), oracle_path(t, a, b));
        prop_assert_eq!(conn.nodes.first(), Some(&a));
        prop_assert_eq!(conn.nodes.last(), Some(&b));
        prop_assert!(conn.nodes.contains(&conn.lcs));
        prop_assert!(t.subsumes(conn.lcs, a).unwrap() && t.subsumes(conn.lcs, b).unwrap());
        // Consecutive nodes are parent/child.
        for w in conn.nodes.windows(2) {
            let x = t.concept(w[0]).unwrap();
            prop_assert!(x.parents.contains(&w[1]) || x.children.contains(&w[1]));
        }
        prop_assert_eq!(t.path_edge_count(a, b).unwrap() == 0, a == b);
    }
    Ok(())
}

pub fn check_depth(t: &Taxonomy) -> Check {
    prop_assert_eq!(t.depth(t.root()).unwrap(), 0);
    let mut max = 0;
    for c in ids(t) {
        let d = t.depth(c).unwrap();
        prop_assert_eq!(d, oracle_depth(t, c));
        for &p in &t.concept(c).unwrap().parents {
            prop_assert!(t.depth(p).unwrap() < d);
        }
        max = max.max(d);
    }
    prop_assert_eq!(t.max_depth(), max);
    Ok(())
}

pub fn check_ic_antitone(t: &Taxonomy) -> Check {
    let seco = ic_pretreat(t, &IcModel::Seco).unwrap();
    prop_assert_eq!(seco.get(t.root()).unwrap(), 0.0);
    let sanchez = ic_pretreat(t, &IcModel::Sanchez).unwrap();
    for c in ids(t) {
        for &p in &t.concept(c).unwrap().parents {
            prop_assert!(seco.get(c).unwrap() >= seco.get(p).unwrap());
            prop_assert!(sanchez.get(c).unwrap() >= sanchez.get(p).unwrap() - 1e-12);
        }
        let v = seco.get(c).unwrap();
        prop_assert!((0.0..=1.0).contains(&v));
    }
    Ok(())
}

pub fn check_path_symmetry(t: &Taxonomy, picks: &[(usize, usize)]) -> Check {
    for (a, b) in pairs(t, picks) {
        for model in MODELS {
            let ab = path_length(t, a, b, model()).unwrap();
            let ba = path_length(t, b, a, model()).unwrap();
            prop_assert!((ab.length - ba.length).abs() < 1e-12);
        }
    }
    Ok(())
}

pub fn check_lambda_zero(t: &Taxonomy, picks: &[(usize, usize)]) -> Check {
    let zero = PathModel::density(0.0).unwrap();
    for (a, b) in pairs(t, picks) {
        let edge = path_length(t, a, b, PathModel::EdgeCounting).unwrap();
        let dense = path_length(t, a, b, zero).unwrap();
        prop_assert_eq!(edge.length, dense.length);
        prop_assert_eq!(dense.compensation_part, 0.0);
    }
    for m in Measure::EDGE_BASED {
        let edge = Scorer::new(t, MeasureSpec::new(m)).unwrap();
        let dense = Scorer::new(t, MeasureSpec::new(m).with_path_model(zero)).unwrap();
        for (a, b) in pairs(t, picks) {
            prop_assert_eq!(
                edge.sim_concepts(a, b).unwrap().value,
                dense.sim_concepts(a, b).unwrap().value
            );
        }
    }
    Ok(())
}

pub fn check_measure_symmetry(t: &Taxonomy, picks: &[(usize, usize)]) -> Check {
    for m in Measure::ALL {
        for model in MODELS {
            let scorer = Scorer::new(t, MeasureSpec::new(m).with_path_model(model())).unwrap();
            for (a, b) in pairs(t, picks) {
                let ab = scorer.sim_concepts(a, b).unwrap().value;
                let ba = scorer.sim_concepts(b, a).unwrap().value;
                prop_assert!((ab - ba).abs() < 1e-12, "{} {} vs {}", m, ab, ba);
            }
        }
    }
    Ok(())
}

pub fn check_lambda_monotone(t: &Taxonomy, picks: &[(usize, usize)], l1: f64, l2: f64) -> Check {
    let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
    for m in Measure::EDGE_BASED {
        let scorer = |l| {
            Scorer::new(
                t,
                MeasureSpec::new(m).with_path_model(PathModel::density(l).unwrap()),
            )
            .unwrap()
        };
        let (low, high) = (scorer(lo), scorer(hi));
        for (a, b) in pairs(t, picks) {
            let vl = low.sim_concepts(a, b).unwrap().value;
            let vh = high.sim_concepts(a, b).unwrap().value;
            prop_assert!(vh <= vl + 1e-12, "{} {}: {} > {}", m, lo, vh, vl);
        }
    }
    Ok(())
}

pub fn check_sense_argmax(t: &Taxonomy, w1: &str, w2: &str) -> Check {
    for m in [Measure::Wu, Measure::Li, Measure::Lin, Measure::Jiang] {
        let spec = MeasureSpec::new(m).with_path_model(PathModel::density(0.3).unwrap());
        let scorer = Scorer::new(t, spec).unwrap();
        let score = scorer.sim_words(w1, w2).unwrap();
        let (s1, s2) = (t.concepts_for_word(w1), t.concepts_for_word(w2));
        if s1.is_empty() || s2.is_empty() {
            prop_assert!(score.unknown_word);
            prop_assert_eq!(score.value, scorer.floor());
            continue;
        }
        let values: Vec<f64> = s1
            .iter()
            .flat_map(|&a| s2.iter().map(move |&b| (a, b)))
            .map(|(a, b)| scorer.sim_concepts(a, b).unwrap().value)
            .collect();
        let best = match m {
            Measure::Jiang => values.iter().copied().fold(f64::INFINITY, f64::min),
            _ => values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        };
        prop_assert_eq!(score.value, best);
        let (a, b) = score.senses.unwrap();
        prop_assert!(s1.contains(&a) && s2.contains(&b));
        prop_assert_eq!(scorer.sim_concepts(a, b).unwrap().value, best);
    }
    Ok(())
}

pub fn check_lin_bounds(t: &Taxonomy, picks: &[(usize, usize)]) -> Check {
    for model in [IcModel::Seco, IcModel::Sanchez] {
        let scorer = Scorer::new(t, MeasureSpec::new(Measure::Lin).with_ic_model(model)).unwrap();
        for (a, b) in pairs(t, picks) {
            let v = scorer.sim_concepts(a, b).unwrap().value;
            prop_assert!((0.0..=1.0 + 1e-12).contains(&v), "lin {}", v);
            if a == b {
                prop_assert!((v - 1.0).abs() < 1e-12);
            }
        }
    }
    Ok(())
}

pub fn affine_case() -> impl Strategy<Value = (Vec<(f64, f64)>, f64, f64)> {
    (
        proptest::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..50),
        prop_oneof![-50.0f64..-0.01, 0.01f64..50.0],
        -100.0f64..100.0,
    )
}

pub fn check_pearson_affine(series: &[(f64, f64)], scale: f64, shift: f64) -> Check {
    let (xs, ys): (Vec<f64>, Vec<f64>) = series.iter().copied().unzip();
    let Ok(base) = pearson(&xs, &ys) else {
        return Err(TestCaseError::reject("degenerate series"));
    };
    let moved: Vec<f64> = xs.iter().map(|x| scale * x + shift).collect();
    let r = pearson(&moved, &ys).unwrap();
    prop_assert!(
        (r - scale.signum() * base).abs() < 1e-9,
        "{} vs {}",
        r,
        base
    );
    prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&r));
    Ok(())
}

/// `L` has two leaf children `x`, `y` under a chain `root -> a -> L`, plus
/// `extra` more leaves that only change its density.
pub fn bushy(extra: usize) -> Taxonomy {
    let mut text = String::from("a\troot\nL\ta\nx\tL\ny\tL\n");
    for i in 0..extra {
        text.push_str(&format!("leaf{i}\tL\n"));
    }
    load_edge_list(text.as_bytes()).unwrap()
}

/// The same `L {x, y, z}` subtree hung below a chain of `chain` links.
pub fn deep(chain: usize) -> Taxonomy {
    let mut text = String::new();
    let mut parent = "root".to_string();
    for i in 0..chain {
        text.push_str(&format!("k{i}\t{parent}\n"));
        parent = format!("k{i}");
    }
    text.push_str(&format!("L\t{parent}\nx\tL\ny\tL\nz\tL\n"));
    load_edge_list(text.as_bytes()).unwrap()
}

pub fn xy(t: &Taxonomy, model: PathModel) -> f64 {
    path_length(t, t.lookup("x").unwrap(), t.lookup("y").unwrap(), model)
        .unwrap()
        .length
}

pub fn distance_grows_with_area_density() {
    let model = PathModel::density(0.3).unwrap();
    let lengths: Vec<f64> = (0..8).map(|k| xy(&bushy(k), model)).collect();
    for w in lengths.windows(2) {
        assert!(w[1] > w[0], "{lengths:?}");
    }
    // Edge counting cannot tell them apart.
    assert!((0..8).all(|k| xy(&bushy(k), PathModel::EdgeCounting) == 2.0));
}

pub fn distance_shrinks_with_area_depth() {
    let model = PathModel::density(0.3).unwrap();
    let lengths: Vec<f64> = (0..8).map(|m| xy(&deep(m), model)).collect();
    for w in lengths.windows(2) {
        assert!(w[1] < w[0], "{lengths:?}");
    }
    assert!((0..8).all(|m| xy(&deep(m), PathModel::EdgeCounting) == 2.0));
}
