//! Isomorphism of NLC-2 graphs.
//!
//! Relabel-free labelled graphs are compared by canonical encoding. Prime
//! graphs are compared through the labellings of their good strong
//! 2-bimodules. General graphs get class labels bottom-up over both modular
//! trees at once, grouped by module size and child count.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::canonical::canonical_unchecked;
use crate::error::{misuse, Error, Result};
use crate::graph::Graph;
use crate::label::{LabelledGraph, Labelling};
use crate::modular::{has_monocoloured_module, modular_decomposition, ModuleKind, ModularTree};
use crate::recognition::{induced_labelling, require_prime, scan_order};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsoOutcome {
    Isomorphic,
    NotIsomorphic,
    /// Some prime quotient of one of the graphs has no NLC-2 expression.
    NotNlc2,
}

/// Labelled isomorphism of two relabel-free labelled graphs; `None` when
/// either one needs relabelling.
pub fn iso_rho_free(g: &LabelledGraph, h: &LabelledGraph) -> Result<Option<bool>> {
    for lg in [g, h] {
        if lg.n() == 0 {
            return Err(Error::MalformedInput("empty labelled graph".into()));
        }
        if cfg!(debug_assertions) && has_monocoloured_module(lg) {
            return Err(Error::PreconditionViolation(
                "labelled graph has a mono-coloured module of size at least 2".into(),
            ));
        }
    }
    let (Some((_, eg)), Some((_, eh))) = (canonical_unchecked(g, None), canonical_unchecked(h, None)) else {
        return Ok(None);
    };
    Ok(Some(eg == eh))
}

fn check_extra(g: &Graph, q: Option<&[u32]>) -> Result<()> {
    match q {
        Some(q) if q.len() != g.n() => Err(misuse!("{} extra labels for {} vertices", q.len(), g.n())),
        _ => Ok(()),
    }
}

/// Encodings of `g` under the labellings of its good strong 2-bimodules, in
/// scan order, both labellings for two-sided bi-joins. With `first_only`
/// the scan stops at the first good one and keeps its canonical labelling.
fn good_encodings(g: &Graph, q: Option<&[u32]>, first_only: bool) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for b in scan_order(g)? {
        let induced = induced_labelling(g, &b)?;
        let wanted = if first_only { 1 } else { induced.labellings.len() };
        for labels in induced.labellings.iter().take(wanted) {
            match encode(g, labels, q) {
                Some(code) => out.push(code),
                // both labellings of a bi-join are good or neither is
                None => break,
            }
        }
        if first_only && !out.is_empty() {
            break;
        }
    }
    Ok(out)
}

fn encode(g: &Graph, labels: &Labelling, q: Option<&[u32]>) -> Option<String> {
    let lg = LabelledGraph { graph: g.clone(), labels: labels.clone() };
    canonical_unchecked(&lg, q).map(|(_, code)| code)
}

/// Isomorphism of prime graphs, respecting the optional extra vertex
/// labels. Fails with [`Error::NotNlc2`] when `g` has no good strong
/// 2-bimodule.
pub fn iso_prime(g: &Graph, h: &Graph, q_g: Option<&[u32]>, q_h: Option<&[u32]>) -> Result<bool> {
    require_prime(g)?;
    require_prime(h)?;
    check_extra(g, q_g)?;
    check_extra(h, q_h)?;
    if q_g.is_some() != q_h.is_some() {
        return Err(misuse!("extra labels given for only one graph"));
    }
    let Some(target) = good_encodings(g, q_g, true)?.pop() else {
        return Err(Error::NotNlc2);
    };
    if g.n() != h.n() || g.m() != h.m() {
        return Ok(false);
    }
    Ok(good_encodings(h, q_h, false)?.contains(&target))
}

/// Isomorphism-invariant key of a prime graph with extra labels: the least
/// encoding over all good strong 2-bimodule labellings.
fn prime_key(g: &Graph, q: &[u32]) -> Result<Option<String>> {
    Ok(good_encodings(g, Some(q), false)?.into_iter().min())
}

/// Isomorphism of two graphs. Both must be NLC-2 unless a size or degree
/// check already separates them.
pub fn iso(g: &Graph, h: &Graph) -> Result<IsoOutcome> {
    if g.n() != h.n() || g.m() != h.m() || degree_sequence(g) != degree_sequence(h) {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    if g.n() == 0 {
        return Ok(IsoOutcome::Isomorphic);
    }
    let trees = [modular_decomposition(g), modular_decomposition(h)];
    let Some(labels) = class_labels([g, h], &trees)? else {
        return Ok(IsoOutcome::NotNlc2);
    };
    Ok(if labels[0][trees[0].root()] == labels[1][trees[1].root()] {
        IsoOutcome::Isomorphic
    } else {
        IsoOutcome::NotIsomorphic
    })
}

fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

/// Class label of every modular-tree node of both graphs: equal labels
/// exactly when the induced subgraphs on the modules are isomorphic.
/// `None` when a prime quotient is not NLC-2.
pub(crate) fn class_labels(graphs: [&Graph; 2], trees: &[ModularTree; 2]) -> Result<Option<[Vec<u32>; 2]>> {
    let mut labels = [vec![0u32; trees[0].len()], vec![0u32; trees[1].len()]];
    let mut groups: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (t, tree) in trees.iter().enumerate() {
        for (id, node) in tree.nodes().iter().enumerate() {
            if node.kind != ModuleKind::Leaf {
                groups.entry((node.module.len(), node.children.len())).or_default().push((t, id));
            }
        }
    }
    let mut fresh = 1u32;
    for members in groups.into_values() {
        let mut keyed: Vec<(String, usize, usize)> = Vec::with_capacity(members.len());
        for (t, id) in members {
            let node = trees[t].node(id);
            let mut key = String::new();
            match node.kind {
                ModuleKind::Parallel | ModuleKind::Series => {
                    let mut child: Vec<u32> = node.children.iter().map(|&c| labels[t][c]).collect();
                    child.sort_unstable();
                    key.push(if node.kind == ModuleKind::Series { 'S' } else { 'P' });
                    child.iter().for_each(|c| {
                        let _ = write!(key, ",{c}");
                    });
                }
                ModuleKind::Prime => {
                    let quotient = trees[t].characteristic_graph(graphs[t], id)?;
                    let q: Vec<u32> = quotient.children.iter().map(|&c| labels[t][c]).collect();
                    let Some(code) = prime_key(&quotient.graph, &q)? else {
                        return Ok(None);
                    };
                    key.push('Q');
                    key.push_str(&code);
                }
                ModuleKind::Leaf => unreachable!("leaves are not grouped"),
            }
            keyed.push((key, t, id));
        }
        keyed.sort();
        for i in 0..keyed.len() {
            if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                fresh += 1;
            }
            labels[keyed[i].1][keyed[i].2] = fresh;
        }
        fresh += 1;
    }
    Ok(Some(labels))
}
