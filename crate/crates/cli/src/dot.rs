//! DOT and indented-text views of the decomposition trees.
//!
//! Node ids follow the tree's own numbering. Leaves are `plain`, prime and
//! linear nodes are `box`, degenerate nodes are `ellipse`.

use std::fmt::Write;

use nlc2_core::bipartitive::{RepresentativeTree, TreeNodeKind};
use nlc2_core::canonical::RhoFreeTree;
use nlc2_core::modular::{ModuleKind, ModularTree};

fn kind_name(kind: ModuleKind) -> &'static str {
    match kind {
        ModuleKind::Leaf => "leaf",
        ModuleKind::Parallel => "parallel",
        ModuleKind::Series => "series",
        ModuleKind::Prime => "prime",
    }
}

fn shape(kind: ModuleKind) -> &'static str {
    match kind {
        ModuleKind::Leaf => "plain",
        ModuleKind::Prime => "box",
        _ => "ellipse",
    }
}

pub fn modular_text(tree: &ModularTree) -> String {
    let mut out = String::new();
    let mut stack = vec![(tree.root(), 0usize)];
    while let Some((id, depth)) = stack.pop() {
        let node = tree.node(id);
        let pad = "  ".repeat(depth);
        if node.kind == ModuleKind::Leaf {
            let _ = writeln!(out, "{pad}leaf {}", node.module[0]);
        } else {
            let _ = writeln!(out, "{pad}{} {:?}", kind_name(node.kind), node.module);
        }
        stack.extend(node.children.iter().rev().map(|&c| (c, depth + 1)));
    }
    out
}

pub fn modular_dot(tree: &ModularTree) -> String {
    let mut out = String::from("graph modular {\n");
    for (id, node) in tree.nodes().iter().enumerate() {
        let label = match node.kind {
            ModuleKind::Leaf => node.module[0].to_string(),
            kind => kind_name(kind).to_string(),
        };
        let _ = writeln!(out, "  n{id} [label=\"{label}\", shape={}];", shape(node.kind));
    }
    for (id, node) in tree.nodes().iter().enumerate() {
        for c in &node.children {
            let _ = writeln!(out, "  n{id} -- n{c};");
        }
    }
    out.push_str("}\n");
    out
}

fn tree_kind(kind: TreeNodeKind) -> (&'static str, &'static str) {
    match kind {
        TreeNodeKind::Degenerate => ("degenerate", "ellipse"),
        TreeNodeKind::Prime => ("prime", "box"),
    }
}

/// Internal nodes with their neighbours and node-graph edges, then the
/// tree edges. Leaves keep their vertex ids.
pub fn representative_text(tree: &RepresentativeTree) -> String {
    let mut out = String::new();
    for id in tree.internal_ids() {
        let node = tree.internal(id).expect("internal id");
        let _ = writeln!(
            out,
            "node {id} {} neighbours {:?} edges {:?}",
            tree_kind(node.kind).0,
            tree.neighbours(id),
            node.graph.edges()
        );
    }
    for (a, b) in tree.edges() {
        let _ = writeln!(out, "edge {a} {b}");
    }
    out
}

pub fn representative_dot(tree: &RepresentativeTree, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for id in 0..tree.node_count() {
        match tree.internal(id) {
            None => {
                let _ = writeln!(out, "  n{id} [label=\"{id}\", shape=plain];");
            }
            Some(node) => {
                let (label, shape) = tree_kind(node.kind);
                let _ = writeln!(out, "  n{id} [label=\"{label}\", shape={shape}];");
            }
        }
    }
    for (a, b) in tree.edges() {
        let _ = writeln!(out, "  n{a} -- n{b};");
    }
    out.push_str("}\n");
    out
}

pub fn rho_free_text(tree: &RhoFreeTree) -> String {
    let mut out = String::new();
    let mut stack = vec![(tree, 0usize)];
    while let Some((t, depth)) = stack.pop() {
        let pad = "  ".repeat(depth);
        match t {
            RhoFreeTree::Leaf { vertex, label, extra } => {
                let _ = write!(out, "{pad}leaf {vertex} label {label}");
                if let Some(q) = extra {
                    let _ = write!(out, " q {q}");
                }
                out.push('\n');
            }
            RhoFreeTree::Node { relation, children } => {
                let kind = if t.is_linear() { "linear" } else { "degenerate" };
                let _ = writeln!(out, "{pad}{kind} {relation}");
                stack.extend(children.iter().rev().map(|c| (c, depth + 1)));
            }
        }
    }
    out
}

pub fn rho_free_dot(tree: &RhoFreeTree) -> String {
    let mut out = String::from("graph nlc2 {\n");
    let mut edges = String::new();
    let mut next = 0usize;
    let mut stack = vec![(tree, None::<usize>)];
    while let Some((t, parent)) = stack.pop() {
        let id = next;
        next += 1;
        match t {
            RhoFreeTree::Leaf { vertex, label, .. } => {
                let _ = writeln!(out, "  n{id} [label=\"{vertex}:{label}\", shape=plain];");
            }
            RhoFreeTree::Node { relation, children } => {
                let shape = if t.is_linear() { "box" } else { "ellipse" };
                let _ = writeln!(out, "  n{id} [label=\"x{relation}\", shape={shape}];");
                stack.extend(children.iter().rev().map(|c| (c, Some(id))));
            }
        }
        if let Some(p) = parent {
            let _ = writeln!(edges, "  n{p} -- n{id};");
        }
    }
    out.push_str(&edges);
    out.push_str("}\n");
    out
}
