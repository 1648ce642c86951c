//! Modular decomposition.
//!
//! The tree is built top-down with the three-way case split on connectivity
//! of the current module and of its complement. For modules that are both
//! connected and co-connected, the maximal strong submodules are found by
//! partition refinement (maximal modules avoiding a pivot) followed by
//! closure tests that recover the block containing the pivot.

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{misuse, Result};
use crate::graph::{co_connected_components, connected_components, Graph, VertexSet};
use crate::label::LabelledGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Leaf,
    Parallel,
    Series,
    Prime,
}

#[derive(Clone, Debug)]
pub struct MdNode {
    /// Vertices of the strong module, ascending.
    pub module: VertexSet,
    pub kind: ModuleKind,
    /// Children ordered by their smallest vertex.
    pub children: Vec<usize>,
    pub parent: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ModularTree {
    nodes: Vec<MdNode>,
    root: usize,
}

/// Quotient of a node by its children: one vertex per child, in child order.
#[derive(Clone, Debug)]
pub struct CharacteristicGraph {
    pub graph: Graph,
    /// `children[i]` is the tree node behind quotient vertex `i`.
    pub children: Vec<usize>,
}

impl ModularTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> &MdNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[MdNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node ids in post-order (children before parents).
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                out.push(id);
            } else {
                stack.push((id, true));
                for &c in self.nodes[id].children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Every strong module (node), root first in pre-order.
    pub fn strong_modules(&self) -> Vec<VertexSet> {
        let mut order = self.post_order();
        order.reverse();
        order.into_iter().map(|id| self.nodes[id].module.clone()).collect()
    }

    pub fn characteristic_graph(&self, g: &Graph, id: usize) -> Result<CharacteristicGraph> {
        let node = &self.nodes[id];
        if node.kind == ModuleKind::Leaf {
            return Err(misuse!("characteristic graph requested for leaf node {id}"));
        }
        let reps: Vec<usize> = node
            .children
            .iter()
            .map(|&c| self.nodes[c].module[0])
            .collect();
        // children are ordered by smallest vertex, so reps are ascending
        Ok(CharacteristicGraph {
            graph: g.induced_sorted(&reps),
            children: node.children.clone(),
        })
    }
}

pub fn modular_decomposition(g: &Graph) -> ModularTree {
    assert!(g.n() >= 1, "modular decomposition of the empty graph");
    let mut tree = ModularTree {
        nodes: Vec::with_capacity(2 * g.n()),
        root: 0,
    };
    let all: Vec<usize> = (0..g.n()).collect();
    tree.root = build_node(g, all, None, &mut tree.nodes);
    tree
}

fn build_node(g: &Graph, module: VertexSet, parent: Option<usize>, nodes: &mut Vec<MdNode>) -> usize {
    let id = nodes.len();
    nodes.push(MdNode {
        module,
        kind: ModuleKind::Leaf,
        children: Vec::new(),
        parent,
    });
    if nodes[id].module.len() == 1 {
        return id;
    }
    let module = nodes[id].module.clone();
    let local = g.induced_sorted(&module);
    let (kind, blocks) = {
        let comps = connected_components(&local);
        if comps.len() > 1 {
            (ModuleKind::Parallel, comps)
        } else {
            let co = co_connected_components(&local);
            if co.len() > 1 {
                (ModuleKind::Series, co)
            } else {
                (ModuleKind::Prime, prime_children(&local))
            }
        }
    };
    let mut blocks: Vec<VertexSet> = blocks
        .into_iter()
        .map(|b| {
            let mut b: Vec<usize> = b.into_iter().map(|i| module[i]).collect();
            b.sort_unstable();
            b
        })
        .collect();
    blocks.sort_by_key(|b| b[0]);
    nodes[id].kind = kind;
    let mut children = Vec::with_capacity(blocks.len());
    for b in blocks {
        children.push(build_node(g, b, Some(id), nodes));
    }
    nodes[id].children = children;
    id
}

/// Maximal proper modules of a graph that is connected and co-connected.
fn prime_children(h: &Graph) -> Vec<VertexSet> {
    let k = h.n();
    let pivot = 0;
    let parts = maximal_modules_avoiding(h, pivot);
    let mut pivot_block = vec![pivot];
    let mut out = Vec::new();
    for part in parts {
        if module_closure(h, pivot, part[0]).count_ones(..) < k {
            pivot_block.extend(part);
        } else {
            out.push(part);
        }
    }
    pivot_block.sort_unstable();
    out.push(pivot_block);
    out
}

/// Maximal modules not containing `v`, by partition refinement.
pub(crate) fn maximal_modules_avoiding(h: &Graph, v: usize) -> Vec<VertexSet> {
    let k = h.n();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let (inn, out): (Vec<usize>, Vec<usize>) = (0..k).filter(|&u| u != v).partition(|&u| h.has_edge(u, v));
    for p in [inn, out] {
        if !p.is_empty() {
            parts.push(p);
        }
    }
    let mut part_of = vec![usize::MAX; k];
    for (i, p) in parts.iter().enumerate() {
        for &u in p {
            part_of[u] = i;
        }
    }
    let mut queued = vec![true; k];
    queued[v] = false;
    let mut queue: Vec<usize> = (0..k).filter(|&u| u != v).collect();
    while let Some(w) = queue.pop() {
        queued[w] = false;
        let row = h.row(w);
        let mut i = 0;
        while i < parts.len() {
            if part_of[w] == i || parts[i].len() < 2 {
                i += 1;
                continue;
            }
            let (a, b): (Vec<usize>, Vec<usize>) = parts[i].iter().partition(|&&u| row.contains(u));
            if !a.is_empty() && !b.is_empty() {
                for &u in parts[i].iter() {
                    if !queued[u] {
                        queued[u] = true;
                        queue.push(u);
                    }
                }
                let new_index = parts.len();
                for &u in &b {
                    part_of[u] = new_index;
                }
                parts[i] = a;
                parts.push(b);
            }
            i += 1;
        }
    }
    for p in parts.iter_mut() {
        p.sort_unstable();
    }
    parts
}

/// Smallest module of `h` containing `a` and `b`.
pub(crate) fn module_closure(h: &Graph, a: usize, b: usize) -> FixedBitSet {
    let k = h.n();
    let mut inside = FixedBitSet::with_capacity(k);
    let mut splitters = FixedBitSet::with_capacity(k);
    let reference = h.row(a).clone();
    inside.insert(a);
    inside.insert(b);
    let mut pending = vec![b];
    while let Some(x) = pending.pop() {
        let mut diff = h.row(x).clone();
        diff.symmetric_difference_with(&reference);
        splitters.union_with(&diff);
        let mut fresh = splitters.clone();
        fresh.difference_with(&inside);
        for z in fresh.ones() {
            inside.insert(z);
            pending.push(z);
        }
    }
    inside
}

/// True iff the labelled graph has a module of size at least two whose
/// vertices all carry the same label.
pub fn has_monocoloured_module(lg: &LabelledGraph) -> bool {
    let tree = modular_decomposition(&lg.graph);
    let mono = |m: &[usize]| {
        let l = lg.label(m[0]);
        m.iter().all(|&v| lg.label(v) == l).then_some(l)
    };
    for node in tree.nodes() {
        if node.module.len() >= 2 && mono(&node.module).is_some() {
            return true;
        }
        if matches!(node.kind, ModuleKind::Parallel | ModuleKind::Series) {
            let mut seen = [0usize; 2];
            for &c in &node.children {
                if let Some(l) = mono(&tree.node(c).module) {
                    seen[l.index()] += 1;
                }
            }
            if seen.iter().any(|&s| s >= 2) {
                return true;
            }
        }
    }
    false
}
