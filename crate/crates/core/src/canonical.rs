//! Canonical relabel-free decomposition trees of 2-labelled graphs.
//!
//! At every vertex set the relations are tried in ascending mask order and
//! the first one whose S-cut partition has more than one block becomes the
//! node; its blocks are decomposed recursively. Children of degenerate
//! (symmetric) nodes are kept sorted by encoding, children of linear nodes
//! in cut order.
//!
//! Encoding: a leaf is `L<label>`, or `L<label>:q<extra>` when it carries
//! an extra label; a node is `D<mask>(...)` or `N<mask>(...)` around the
//! concatenated child encodings.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::expression::Nlc2Expression;
use crate::graph::VertexSet;
use crate::label::{Label, LabelledGraph};
use crate::modular::has_monocoloured_module;
use crate::scut::{build_trigraph, partition_from_trigraph, ComponentTrigraph, SRelation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RhoFreeTree {
    Leaf {
        vertex: usize,
        label: Label,
        extra: Option<u32>,
    },
    Node {
        relation: SRelation,
        children: Vec<RhoFreeTree>,
    },
}

impl RhoFreeTree {
    /// Linear nodes have a non-symmetric relation and ordered children.
    pub fn is_linear(&self) -> bool {
        matches!(self, RhoFreeTree::Node { relation, .. } if !relation.is_symmetric())
    }

    pub fn node_count(&self) -> usize {
        match self {
            RhoFreeTree::Leaf { .. } => 1,
            RhoFreeTree::Node { children, .. } => 1 + children.iter().map(RhoFreeTree::node_count).sum::<usize>(),
        }
    }

    /// Leaf vertices in tree order.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vertices(&mut out);
        out
    }

    fn collect_vertices(&self, out: &mut Vec<usize>) {
        match self {
            RhoFreeTree::Leaf { vertex, .. } => out.push(*vertex),
            RhoFreeTree::Node { children, .. } => children.iter().for_each(|c| c.collect_vertices(out)),
        }
    }
}

/// The canonical tree, or `None` when the labelled graph cannot be built
/// without relabelling. Every mono-coloured module must be a single vertex;
/// this is checked in debug builds.
pub fn canonical_tree(lg: &LabelledGraph) -> Result<Option<RhoFreeTree>> {
    canonical_tree_with_extra(lg, None)
}

/// As [`canonical_tree`], with an extra per-vertex label copied to leaves
/// and included in encodings.
pub fn canonical_tree_with_extra(lg: &LabelledGraph, extra: Option<&[u32]>) -> Result<Option<RhoFreeTree>> {
    if lg.n() == 0 {
        return Err(Error::MalformedInput("empty labelled graph".into()));
    }
    if extra.is_some_and(|e| e.len() != lg.n()) {
        return Err(Error::MalformedInput("extra labels do not match the vertex count".into()));
    }
    if cfg!(debug_assertions) && has_monocoloured_module(lg) {
        return Err(Error::PreconditionViolation(
            "labelled graph has a mono-coloured module of size at least 2".into(),
        ));
    }
    Ok(canonical_unchecked(lg, extra).map(|(t, _)| t))
}

/// The tree together with its encoding.
pub(crate) fn canonical_unchecked(lg: &LabelledGraph, extra: Option<&[u32]>) -> Option<(RhoFreeTree, String)> {
    let all: VertexSet = (0..lg.n()).collect();
    build(lg, extra, &all)
}

fn build(lg: &LabelledGraph, extra: Option<&[u32]>, vertices: &[usize]) -> Option<(RhoFreeTree, String)> {
    if vertices.len() == 1 {
        let v = vertices[0];
        let leaf = RhoFreeTree::Leaf { vertex: v, label: lg.label(v), extra: extra.map(|e| e[v]) };
        let code = leaf_code(lg.label(v), extra.map(|e| e[v]));
        return Some((leaf, code));
    }
    let local = lg.induced_sorted(vertices);
    // the trigraph only depends on the (1,1) and (2,2) bits
    let mut trigraphs: [Option<ComponentTrigraph>; 4] = Default::default();
    for s in SRelation::all() {
        let diagonal = (s.mask() >> 2 & 2 | s.mask() & 1) as usize;
        let ct = trigraphs[diagonal].get_or_insert_with(|| build_trigraph(&local, s));
        let part = partition_from_trigraph(ct, s);
        if part.len() < 2 {
            continue;
        }
        let mut children = Vec::with_capacity(part.len());
        for block in part.blocks() {
            let global: VertexSet = block.iter().map(|&i| vertices[i]).collect();
            children.push(build(lg, extra, &global)?);
        }
        if s.is_symmetric() {
            children.sort_by(|a, b| a.1.cmp(&b.1));
        }
        let mut code = String::new();
        let _ = write!(code, "{}{}(", if s.is_symmetric() { 'D' } else { 'N' }, s);
        for (_, c) in &children {
            code.push_str(c);
        }
        code.push(')');
        let node = RhoFreeTree::Node { relation: s, children: children.into_iter().map(|(t, _)| t).collect() };
        return Some((node, code));
    }
    None
}

fn leaf_code(label: Label, extra: Option<u32>) -> String {
    let mut code = String::new();
    let _ = write!(code, "L{label}");
    if let Some(q) = extra {
        let _ = write!(code, ":q{q}");
    }
    code
}

/// Text encoding; equal encodings mean isomorphic labelled graphs.
pub fn canonical_encoding(t: &RhoFreeTree) -> String {
    match t {
        RhoFreeTree::Leaf { label, extra, .. } => leaf_code(*label, *extra),
        RhoFreeTree::Node { relation, children } => {
            let mut codes: Vec<String> = children.iter().map(canonical_encoding).collect();
            if relation.is_symmetric() {
                codes.sort();
            }
            let mut code = String::new();
            let _ = write!(code, "{}{}(", if relation.is_symmetric() { 'D' } else { 'N' }, relation);
            codes.iter().for_each(|c| code.push_str(c));
            code.push(')');
            code
        }
    }
}

/// Left-associated product term rebuilding the labelled graph.
pub fn tree_to_expression(t: &RhoFreeTree) -> Nlc2Expression {
    tree_to_expression_with(t, &mut |v, label| Nlc2Expression::leaf(v, label))
}

/// As [`tree_to_expression`], with each leaf replaced by `leaf(vertex,
/// label)`.
pub(crate) fn tree_to_expression_with(
    t: &RhoFreeTree,
    leaf: &mut dyn FnMut(usize, Label) -> Nlc2Expression,
) -> Nlc2Expression {
    match t {
        RhoFreeTree::Leaf { vertex, label, .. } => leaf(*vertex, *label),
        RhoFreeTree::Node { relation, children } => {
            let mut it = children.iter();
            let first = tree_to_expression_with(it.next().expect("node has children"), leaf);
            it.fold(first, |acc, c| Nlc2Expression::product(*relation, acc, tree_to_expression_with(c, leaf)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracles::{brute_iso, brute_rho_free, OracleBudget};
    use crate::testutil::*;
    use alloc::vec;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn single_vertex() {
        let lg = labelled(Graph::edgeless(1), &[2]);
        let t = canonical_tree(&lg).unwrap().unwrap();
        assert_eq!(t, RhoFreeTree::Leaf { vertex: 0, label: Label::Two, extra: None });
        assert_eq!(canonical_encoding(&t), "L2");
        assert_eq!(tree_to_expression(&t), Nlc2Expression::leaf(0, Label::Two));
    }

    #[test]
    fn p4_with_split_labelling() {
        let lg = labelled(path(4), &[2, 1, 1, 2]);
        let t = canonical_tree(&lg).unwrap().unwrap();
        let RhoFreeTree::Node { children, .. } = &t else { panic!("expected a node") };
        let mut parts: Vec<Vec<usize>> = children
            .iter()
            .map(|c| {
                let mut v = c.vertices();
                v.sort_unstable();
                v
            })
            .collect();
        parts.sort();
        assert_eq!(parts, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(tree_to_expression(&t).evaluate().unwrap(), lg);
    }

    #[test]
    fn arity_three_bracketing() {
        let t = RhoFreeTree::Node {
            relation: SRelation::new(8).unwrap(),
            children: (0..3).map(|v| RhoFreeTree::Leaf { vertex: v, label: Label::One, extra: None }).collect(),
        };
        assert_eq!(tree_to_expression(&t).render(), "((v0:1 x1000 v1:1) x1000 v2:1)");
    }

    #[test]
    fn c5_matches_oracle_for_every_labelling() {
        let c5 = cycle(5);
        for bits in 0u32..32 {
            let labels: Vec<u8> = (0..5).map(|i| 1 + (bits >> i & 1) as u8).collect();
            let lg = labelled(c5.clone(), &labels);
            if has_monocoloured_module(&lg) {
                continue;
            }
            let got = canonical_tree(&lg).unwrap().is_some();
            assert_eq!(got, brute_rho_free(&lg, OracleBudget::RHO_FREE).unwrap(), "{labels:?}");
        }
    }

    #[test]
    fn encoding_separates_labels() {
        let a = labelled(path(4), &[2, 1, 1, 2]);
        let b = labelled(path(4), &[1, 1, 1, 2]);
        let ea = canonical_encoding(&canonical_tree(&a).unwrap().unwrap());
        let eb = canonical_unchecked(&b, None).map(|(t, _)| canonical_encoding(&t));
        assert_ne!(Some(ea), eb);
    }

    #[test]
    fn precondition_is_checked() {
        let lg = labelled(Graph::edgeless(3), &[1, 1, 2]);
        assert!(matches!(canonical_tree(&lg), Err(Error::PreconditionViolation(_))));
    }

    fn clean(seed: u64, n: usize, p: f64) -> Option<LabelledGraph> {
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let g = random_graph(&mut r, n, p);
            let labels: Vec<u8> = (0..n).map(|_| r.gen_range(1..=2)).collect();
            let lg = labelled(g, &labels);
            if !has_monocoloured_module(&lg) {
                return Some(lg);
            }
        }
        None
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn verdict_matches_oracle(seed in any::<u64>(), n in 1usize..=8, p in 0.15f64..0.85) {
            let lg = clean(seed, n, p);
            prop_assume!(lg.is_some());
            let lg = lg.unwrap();
            let t = canonical_tree(&lg).unwrap();
            prop_assert_eq!(t.is_some(), brute_rho_free(&lg, OracleBudget::RHO_FREE).unwrap());
            if let Some(t) = t {
                prop_assert!(t.node_count() < 2 * n);
                prop_assert_eq!(tree_to_expression(&t).evaluate().unwrap(), lg);
            }
        }

        #[test]
        fn encoding_is_permutation_invariant(seed in any::<u64>(), n in 2usize..=14, p in 0.15f64..0.85) {
            let lg = clean(seed, n, p);
            prop_assume!(lg.is_some());
            let lg = lg.unwrap();
            let mut r = rng(seed ^ 0x5eed);
            let perm = random_perm(&mut r, n);
            let a = canonical_unchecked(&lg, None).map(|(t, c)| { prop_assert_eq!(&canonical_encoding(&t), &c); Ok(c) });
            let b = canonical_unchecked(&lg.permuted(&perm), None).map(|(_, c)| c);
            prop_assert_eq!(a.transpose()?, b);
        }

        #[test]
        fn equal_encodings_mean_isomorphic(seed in any::<u64>(), n in 2usize..=7, p in 0.2f64..0.8) {
            let a = clean(seed, n, p);
            let b = clean(seed.wrapping_add(1), n, p);
            prop_assume!(a.is_some() && b.is_some());
            let (a, b) = (a.unwrap(), b.unwrap());
            let (Some((_, ca)), Some((_, cb))) = (canonical_unchecked(&a, None), canonical_unchecked(&b, None)) else {
                return Ok(());
            };
            let col = |lg: &LabelledGraph| lg.labels.iter().map(|l| l.as_u8() as u32).collect::<Vec<_>>();
            let iso = brute_iso(&a.graph, &b.graph, Some((&col(&a), &col(&b))), OracleBudget::ISO).unwrap();
            prop_assert_eq!(ca == cb, iso);
        }
    }
}
