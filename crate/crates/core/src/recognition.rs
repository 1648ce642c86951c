//! NLC-2 recognition with expression output.
//!
//! A prime graph is NLC-2 exactly when the labelling induced by one of its
//! strong splits, co-splits or bi-joins has a relabel-free tree. A general
//! graph is NLC-2 when every prime quotient of its modular tree is.

use alloc::vec;
use alloc::vec::Vec;

use crate::bipartitive::{is_bijoin, is_cosplit, is_split, strong_2bimodules, Bipartition, BipartitionKind};
use crate::canonical::{canonical_unchecked, tree_to_expression_with, RhoFreeTree};
use crate::error::{misuse, Result};
use crate::expression::Nlc2Expression;
use crate::graph::{Graph, VertexSet};
use crate::label::{swap_labelling, Label, LabelledGraph, Labelling};
use crate::modular::{modular_decomposition, ModuleKind};
use crate::scut::SRelation;

/// Which clause of the labelling rule applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InducedKind {
    Singleton,
    Split,
    CoSplit,
    BiJoin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedLabelling {
    pub bipartition: Bipartition,
    pub kind: InducedKind,
    /// One labelling, or a labelling and its swap for bi-joins with both
    /// sides of size at least 2. The first assigns label 1 to vertex 0.
    pub labellings: Vec<Labelling>,
}

impl InducedLabelling {
    pub fn canonical(&self) -> &Labelling {
        &self.labellings[0]
    }
}

/// Labelling of `g` induced by the 2-bimodule `b`.
pub fn induced_labelling(g: &Graph, b: &Bipartition) -> Result<InducedLabelling> {
    let n = g.n();
    let side = &b.side;
    if side.is_empty() || side.len() >= n || side.windows(2).any(|w| w[0] >= w[1]) || side[side.len() - 1] >= n {
        return Err(misuse!("bipartition side {side:?} is not a proper sorted subset of 0..{n}"));
    }
    let other = b.other_side(n);
    let in_side = membership(n, side);
    let (kind, labellings) = if side.len() == 1 || other.len() == 1 {
        let x = if side.len() == 1 { side[0] } else { other[0] };
        let labels = (0..n)
            .map(|v| if v == x || g.has_edge(v, x) { Label::One } else { Label::Two })
            .collect();
        (InducedKind::Singleton, vec![labels])
    } else if is_split(g, side) {
        (InducedKind::Split, vec![active_labelling(g, &in_side, true)])
    } else if is_cosplit(g, side) {
        (InducedKind::CoSplit, vec![active_labelling(g, &in_side, false)])
    } else if is_bijoin(g, side) {
        // traces on the side without 0 are A or its complement; vertex 0 and
        // everything with its trace get label 1
        let x0 = other[0];
        let labels: Labelling = (0..n)
            .map(|v| {
                let same = if in_side[v] {
                    g.has_edge(x0, v)
                } else {
                    side.iter().all(|&y| g.has_edge(v, y) == g.has_edge(x0, y))
                };
                if same { Label::One } else { Label::Two }
            })
            .collect();
        let swapped = swap_labelling(&labels);
        (InducedKind::BiJoin, vec![labels, swapped])
    } else {
        return Err(misuse!("bipartition {side:?} is not a 2-bimodule"));
    };
    Ok(InducedLabelling { bipartition: b.clone(), kind, labellings })
}

fn membership(n: usize, side: &[usize]) -> Vec<bool> {
    let mut in_side = vec![false; n];
    side.iter().for_each(|&v| in_side[v] = true);
    in_side
}

/// Label 1 on vertices with a neighbour (or, on the complement, a
/// non-neighbour) across the bipartition.
fn active_labelling(g: &Graph, in_side: &[bool], adjacent: bool) -> Labelling {
    let n = g.n();
    (0..n)
        .map(|v| {
            let active = (0..n).any(|u| in_side[u] != in_side[v] && g.has_edge(u, v) == adjacent);
            if active { Label::One } else { Label::Two }
        })
        .collect()
}

/// The relabel-free tree of `g` under the canonical induced labelling of
/// `b`, if there is one.
pub fn is_good(g: &Graph, b: &Bipartition) -> Result<Option<RhoFreeTree>> {
    require_prime(g)?;
    let induced = induced_labelling(g, b)?;
    Ok(good_tree(g, induced.canonical()))
}

fn good_tree(g: &Graph, labels: &Labelling) -> Option<RhoFreeTree> {
    let lg = LabelledGraph { graph: g.clone(), labels: labels.clone() };
    canonical_unchecked(&lg, None).map(|(t, _)| t)
}

pub(crate) fn require_prime(g: &Graph) -> Result<()> {
    let n = g.n();
    if n < 3 {
        return Err(misuse!("prime recognition needs at least 3 vertices, got {n}"));
    }
    let md = modular_decomposition(g);
    let root = md.node(md.root());
    if root.kind != ModuleKind::Prime || root.children.len() != n {
        return Err(misuse!("graph is not prime"));
    }
    Ok(())
}

/// A good strong 2-bimodule with its labelling and tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCertificate {
    pub bipartition: Bipartition,
    pub labelling: Labelling,
    pub tree: RhoFreeTree,
}

/// Strong 2-bimodules in scan order: non-trivial splits, co-splits and
/// bi-joins, then the singleton cuts.
pub(crate) fn scan_order(g: &Graph) -> Result<Vec<Bipartition>> {
    let n = g.n();
    let all = strong_2bimodules(g)?;
    let mut taken = vec![false; all.len()];
    let mut order = Vec::with_capacity(all.len());
    for kind in BipartitionKind::ALL {
        for (i, b) in all.iter().enumerate() {
            if !taken[i] && !b.is_trivial(n) && b.kinds.contains(kind) {
                taken[i] = true;
                order.push(b.clone());
            }
        }
    }
    order.extend(all.iter().zip(&taken).filter(|(_, &t)| !t).map(|(b, _)| b.clone()));
    Ok(order)
}

/// First good strong 2-bimodule of a prime graph, or `None` if `g` is not
/// NLC-2.
pub fn recognize_prime(g: &Graph) -> Result<Option<PrimeCertificate>> {
    require_prime(g)?;
    for b in scan_order(g)? {
        let induced = induced_labelling(g, &b)?;
        let labelling = induced.canonical().clone();
        if let Some(tree) = good_tree(g, &labelling) {
            return Ok(Some(PrimeCertificate { bipartition: b, labelling, tree }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    Nlc2(Nlc2Expression),
    /// The strong module whose prime quotient has no NLC-2 expression.
    NotNlc2 { module: VertexSet },
}

impl Recognition {
    pub fn is_nlc2(&self) -> bool {
        matches!(self, Recognition::Nlc2(_))
    }
}

/// Decides NLC-2 membership and, on success, returns an expression that
/// evaluates to exactly `g`.
pub fn recognize(g: &Graph) -> Result<Recognition> {
    if g.n() == 0 {
        return Err(crate::Error::MalformedInput("empty graph".into()));
    }
    let md = modular_decomposition(g);
    let mut built: Vec<Option<Nlc2Expression>> = vec![None; md.len()];
    for id in md.post_order() {
        let node = md.node(id);
        let expr = match node.kind {
            ModuleKind::Leaf => Nlc2Expression::leaf(node.module[0], Label::One),
            ModuleKind::Parallel | ModuleKind::Series => {
                let mask = if node.kind == ModuleKind::Series { 8 } else { 0 };
                let relation = SRelation::new(mask).expect("valid mask");
                let mut parts = node.children.iter().map(|&c| force(built[c].take().expect("child built"), Label::One));
                let first = parts.next().expect("node has children");
                parts.fold(first, |acc, e| Nlc2Expression::product(relation, acc, e))
            }
            ModuleKind::Prime => {
                let quotient = md.characteristic_graph(g, id)?;
                let Some(cert) = recognize_prime(&quotient.graph)? else {
                    return Ok(Recognition::NotNlc2 { module: node.module.clone() });
                };
                let mut children: Vec<Option<Nlc2Expression>> =
                    quotient.children.iter().map(|&c| built[c].take()).collect();
                tree_to_expression_with(&cert.tree, &mut |i, label| {
                    force(children[i].take().expect("quotient vertex used once"), label)
                })
            }
        };
        built[id] = Some(expr);
    }
    Ok(Recognition::Nlc2(built[md.root()].take().expect("root built")))
}

/// Gives every vertex of `e` the label `label`.
fn force(e: Nlc2Expression, label: Label) -> Nlc2Expression {
    match e {
        Nlc2Expression::Leaf { vertex, .. } => Nlc2Expression::leaf(vertex, label),
        other => Nlc2Expression::relabel_all(label, other),
    }
}
