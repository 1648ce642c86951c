//! Splits, co-splits and bi-joins, and their representative trees.
//!
//! Split trees come from a graph-labelled-tree decomposition: node graphs
//! are cut along any non-trivial split until none is left, then adjacent
//! clique/clique and centre/leaf star pairs are merged back. The tree edges
//! of the reduced decomposition are the strong splits. Bi-join trees are
//! the modular decomposition of the graph switched at the neighbourhood of
//! vertex 0, with 0 hung off the root.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{misuse, Result};
use crate::graph::{connected_components, full_set, Graph, VertexSet};
use crate::modular::{modular_decomposition, ModuleKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BipartitionKind {
    Split,
    CoSplit,
    BiJoin,
}

impl BipartitionKind {
    pub const ALL: [BipartitionKind; 3] = [BipartitionKind::Split, BipartitionKind::CoSplit, BipartitionKind::BiJoin];

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct KindSet(u8);

impl KindSet {
    pub fn contains(self, k: BipartitionKind) -> bool {
        self.0 & k.bit() != 0
    }

    pub fn insert(&mut self, k: BipartitionKind) {
        self.0 |= k.bit();
    }

    pub fn iter(self) -> impl Iterator<Item = BipartitionKind> {
        BipartitionKind::ALL.into_iter().filter(move |&k| self.contains(k))
    }
}

/// An unordered pair `{X, V \ X}`, stored by the side without vertex 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub side: VertexSet,
    pub kinds: KindSet,
}

impl Bipartition {
    pub fn other_side(&self, n: usize) -> VertexSet {
        let mut mark = vec![false; n];
        for &v in &self.side {
            mark[v] = true;
        }
        (0..n).filter(|&v| !mark[v]).collect()
    }

    pub fn is_trivial(&self, n: usize) -> bool {
        self.side.len() == 1 || self.side.len() + 1 == n
    }
}

fn sides(n: usize, x: &[usize]) -> (FixedBitSet, FixedBitSet) {
    let mut xs = FixedBitSet::with_capacity(n);
    xs.extend(x.iter().copied());
    let mut ys = xs.clone();
    ys.toggle_range(..);
    (xs, ys)
}

fn one_sided_split(g: &Graph, from: &FixedBitSet, to: &FixedBitSet) -> bool {
    let mut common: Option<FixedBitSet> = None;
    for u in from.ones() {
        let mut t = g.row(u).clone();
        t.intersect_with(to);
        if t.is_clear() {
            continue;
        }
        match &common {
            None => common = Some(t),
            Some(c) if *c != t => return false,
            _ => {}
        }
    }
    true
}

/// Whether `(x, V \ x)` is a split. Either side may be passed.
pub fn is_split(g: &Graph, x: &[usize]) -> bool {
    let (xs, ys) = sides(g.n(), x);
    one_sided_split(g, &xs, &ys) && one_sided_split(g, &ys, &xs)
}

pub fn is_cosplit(g: &Graph, x: &[usize]) -> bool {
    is_split(&g.complement(), x)
}

pub fn is_bijoin(g: &Graph, x: &[usize]) -> bool {
    let (xs, ys) = sides(g.n(), x);
    let mut first: Option<FixedBitSet> = None;
    for u in xs.ones() {
        let mut t = g.row(u).clone();
        t.intersect_with(&ys);
        match &first {
            None => first = Some(t),
            Some(f) if t != *f => {
                t.symmetric_difference_with(&ys);
                if t != *f {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeNodeKind {
    Degenerate,
    Prime,
}

#[derive(Clone, Debug)]
pub struct InternalNode {
    pub kind: TreeNodeKind,
    /// Vertex `i` stands for the subtree behind the `i`-th neighbour. For
    /// split trees this is the node graph of the decomposition (of the
    /// complement, complemented back, for co-split trees); for bi-join trees
    /// it is induced on the smallest leaf of each incident subtree.
    pub graph: Graph,
}

/// Unrooted tree whose leaves `0..n` are the vertices and whose edges are
/// the strong members of a bipartitive family.
#[derive(Clone, Debug)]
pub struct RepresentativeTree {
    leaves: usize,
    adj: Vec<Vec<usize>>,
    internal: Vec<InternalNode>,
}

impl RepresentativeTree {
    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        id < self.leaves
    }

    pub fn neighbours(&self, id: usize) -> &[usize] {
        &self.adj[id]
    }

    pub fn internal(&self, id: usize) -> Option<&InternalNode> {
        id.checked_sub(self.leaves).map(|i| &self.internal[i])
    }

    pub fn internal_ids(&self) -> core::ops::Range<usize> {
        self.leaves..self.adj.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Parent pointers and leaf sets when rooted at leaf 0.
    fn rooted(&self) -> (Vec<usize>, Vec<VertexSet>) {
        let total = self.adj.len();
        let mut parent = vec![usize::MAX; total];
        let mut order = Vec::with_capacity(total);
        let mut stack = vec![0];
        parent[0] = 0;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in &self.adj[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
        let mut below: Vec<VertexSet> = vec![Vec::new(); total];
        for &u in order.iter().rev() {
            if self.is_leaf(u) {
                below[u].push(u);
            }
            below[u].sort_unstable();
            if u != 0 {
                let b = core::mem::take(&mut below[u]);
                below[parent[u]].extend_from_slice(&b);
                below[u] = b;
            }
        }
        (parent, below)
    }

    /// One side (the one without vertex 0) per tree edge.
    pub fn edge_bipartitions(&self) -> Vec<VertexSet> {
        if self.leaves < 2 {
            return Vec::new();
        }
        let (_, below) = self.rooted();
        (1..self.adj.len()).map(|u| below[u].clone()).collect()
    }

    /// Smallest leaf behind each neighbour of `id`, in neighbour order.
    fn representatives(&self, id: usize, parent: &[usize], below: &[VertexSet]) -> Vec<usize> {
        self.adj[id]
            .iter()
            .map(|&v| if v == parent[id] { 0 } else { below[v][0] })
            .collect()
    }
}

/// Smallest split side containing both seeds and avoiding `far`, which must
/// be adjacent to a seed. `None` when fewer than two vertices stay outside.
fn split_closure(h: &Graph, seeds: [usize; 2], far: usize) -> Option<FixedBitSet> {
    let k = h.n();
    let mut inside = FixedBitSet::with_capacity(k);
    let mut touched = FixedBitSet::with_capacity(k);
    let mut differs = FixedBitSet::with_capacity(k);
    let mut size = 0;
    let mut pending = Vec::with_capacity(k);
    for s in seeds {
        inside.insert(s);
        size += 1;
        pending.push(s);
    }
    let far_row = h.row(far);
    while !pending.is_empty() {
        while let Some(x) = pending.pop() {
            let row = h.row(x);
            touched.union_with(row);
            if far_row.contains(x) {
                // bits past k are harmless since `touched` never has them
                for (d, r) in differs.as_mut_slice().iter_mut().zip(row.as_slice()) {
                    *d |= !r;
                }
            } else {
                differs.union_with(row);
            }
        }
        let mut violators = touched.clone();
        violators.intersect_with(&differs);
        violators.difference_with(&inside);
        for z in violators.ones() {
            inside.insert(z);
            size += 1;
            pending.push(z);
        }
        if k - size < 2 {
            return None;
        }
    }
    Some(inside)
}

/// Some non-trivial split of a connected graph, as one side.
fn find_split(h: &Graph) -> Option<FixedBitSet> {
    let k = h.n();
    if k < 4 {
        return None;
    }
    let mut parent = vec![usize::MAX; k];
    parent[0] = 0;
    let mut queue = alloc::collections::VecDeque::from([0]);
    let mut tree_edges = Vec::with_capacity(k);
    while let Some(u) = queue.pop_front() {
        for &v in h.neighbours(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                tree_edges.push((u, v));
                queue.push_back(v);
            }
        }
    }
    for &(a, b) in &tree_edges {
        for (near, far) in [(a, b), (b, a)] {
            for w in 0..k {
                if w == near || w == far {
                    continue;
                }
                if let Some(x) = split_closure(h, [near, w], far) {
                    return Some(x);
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Leaf(usize),
    /// Markers come in twin pairs `2p`, `2p + 1`.
    Marker(usize),
}

#[derive(Clone, Debug)]
struct Piece {
    graph: Graph,
    ends: Vec<End>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Clique,
    Star { centre: usize },
    Other,
}

fn shape(g: &Graph) -> Shape {
    let k = g.n();
    if g.m() == k * (k - 1) / 2 {
        return Shape::Clique;
    }
    if k >= 3 && g.m() == k - 1 {
        if let Some(c) = (0..k).find(|&v| g.degree(v) == k - 1) {
            return Shape::Star { centre: c };
        }
    }
    Shape::Other
}

fn cut_piece(p: &Piece, x: &FixedBitSet, marker: usize) -> (Piece, Piece) {
    let k = p.graph.n();
    let mut y = x.clone();
    y.toggle_range(..);
    let half = |side: &FixedBitSet, other: &FixedBitSet, m: usize| {
        let verts: Vec<usize> = side.ones().collect();
        let local = p.graph.induced_sorted(&verts);
        let mut edges = local.edges();
        for (i, &v) in verts.iter().enumerate() {
            if p.graph.row(v).intersection_count(other) > 0 {
                edges.push((i, verts.len()));
            }
        }
        let mut ends: Vec<End> = verts.iter().map(|&v| p.ends[v]).collect();
        ends.push(End::Marker(m));
        Piece {
            graph: Graph::build(verts.len() + 1, &edges).expect("valid piece"),
            ends,
        }
    };
    debug_assert!(x.count_ones(..) >= 2 && k - x.count_ones(..) >= 2);
    (half(x, &y, marker), half(&y, x, marker + 1))
}

fn merge_pieces(a: &Piece, ai: usize, b: &Piece, bi: usize) -> Piece {
    let ka = a.graph.n();
    let keep_a: Vec<usize> = (0..ka).filter(|&i| i != ai).collect();
    let keep_b: Vec<usize> = (0..b.graph.n()).filter(|&i| i != bi).collect();
    let off = keep_a.len();
    let mut edges = a.graph.induced_sorted(&keep_a).edges();
    edges.extend(b.graph.induced_sorted(&keep_b).edges().into_iter().map(|(u, v)| (u + off, v + off)));
    for (i, &u) in keep_a.iter().enumerate() {
        if !a.graph.has_edge(u, ai) {
            continue;
        }
        for (j, &v) in keep_b.iter().enumerate() {
            if b.graph.has_edge(v, bi) {
                edges.push((i, j + off));
            }
        }
    }
    let ends = keep_a.iter().map(|&i| a.ends[i]).chain(keep_b.iter().map(|&i| b.ends[i])).collect();
    Piece {
        graph: Graph::build(keep_a.len() + keep_b.len(), &edges).expect("valid merge"),
        ends,
    }
}

fn mergeable(a: &Piece, ai: usize, b: &Piece, bi: usize) -> bool {
    match (shape(&a.graph), shape(&b.graph)) {
        (Shape::Clique, Shape::Clique) => true,
        (Shape::Star { centre: ca }, Shape::Star { centre: cb }) => (ca == ai) != (cb == bi),
        _ => false,
    }
}

fn marker_locations(pieces: &[Piece], markers: usize) -> Vec<(usize, usize)> {
    let mut loc = vec![(usize::MAX, usize::MAX); markers];
    for (pi, p) in pieces.iter().enumerate() {
        for (i, e) in p.ends.iter().enumerate() {
            if let End::Marker(m) = *e {
                loc[m] = (pi, i);
            }
        }
    }
    loc
}

/// Reduced split decomposition of a connected graph with at least 3 vertices.
fn split_pieces(g: &Graph) -> (Vec<Piece>, usize) {
    let mut todo = vec![Piece {
        graph: g.clone(),
        ends: (0..g.n()).map(End::Leaf).collect(),
    }];
    let mut pieces = Vec::new();
    let mut markers = 0;
    while let Some(p) = todo.pop() {
        match find_split(&p.graph) {
            None => pieces.push(p),
            Some(x) => {
                let (a, b) = cut_piece(&p, &x, markers);
                markers += 2;
                todo.push(a);
                todo.push(b);
            }
        }
    }
    'merging: loop {
        let loc = marker_locations(&pieces, markers);
        for m in (0..markers).step_by(2) {
            let (pa, ia) = loc[m];
            let (pb, ib) = loc[m + 1];
            if pa == usize::MAX || !mergeable(&pieces[pa], ia, &pieces[pb], ib) {
                continue;
            }
            let merged = merge_pieces(&pieces[pa], ia, &pieces[pb], ib);
            let (lo, hi) = (pa.min(pb), pa.max(pb));
            pieces.swap_remove(hi);
            pieces[lo] = merged;
            continue 'merging;
        }
        break;
    }
    (pieces, markers)
}

fn tree_from_pieces(n: usize, pieces: Vec<Piece>, markers: usize) -> RepresentativeTree {
    let loc = marker_locations(&pieces, markers);
    let mut adj = vec![Vec::new(); n + pieces.len()];
    let mut internal = Vec::with_capacity(pieces.len());
    for (pi, p) in pieces.into_iter().enumerate() {
        let id = n + pi;
        for e in &p.ends {
            match *e {
                End::Leaf(v) => {
                    adj[id].push(v);
                    adj[v].push(id);
                }
                End::Marker(m) => adj[id].push(n + loc[m ^ 1].0),
            }
        }
        let kind = match shape(&p.graph) {
            Shape::Other => TreeNodeKind::Prime,
            _ => TreeNodeKind::Degenerate,
        };
        internal.push(InternalNode { kind, graph: p.graph });
    }
    RepresentativeTree { leaves: n, adj, internal }
}

fn connected_split_tree(g: &Graph) -> RepresentativeTree {
    let n = g.n();
    match n {
        1 => RepresentativeTree { leaves: 1, adj: vec![Vec::new()], internal: Vec::new() },
        2 => RepresentativeTree { leaves: 2, adj: vec![vec![1], vec![0]], internal: Vec::new() },
        _ => {
            let (pieces, markers) = split_pieces(g);
            tree_from_pieces(n, pieces, markers)
        }
    }
}

/// Builder used to splice component trees together.
struct Assembly {
    adj: Vec<Vec<usize>>,
    internal: Vec<InternalNode>,
    leaves: usize,
}

impl Assembly {
    fn add_internal(&mut self, node: InternalNode) -> usize {
        self.adj.push(Vec::new());
        self.internal.push(node);
        self.adj.len() - 1
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
        for id in [a, b] {
            if id >= self.leaves {
                let node = &mut self.internal[id - self.leaves];
                let k = node.graph.n();
                if k < self.adj[id].len() {
                    // the new neighbour sees nothing inside the node
                    node.graph = Graph::build(k + 1, &node.graph.edges()).expect("grown node");
                }
            }
        }
    }

    /// Copies a component tree in, returning the node to attach it by.
    fn absorb(&mut self, g: &Graph, comp: &[usize]) -> usize {
        match comp.len() {
            1 => comp[0],
            2 => {
                let id = self.add_internal(InternalNode {
                    kind: TreeNodeKind::Degenerate,
                    graph: Graph::build(2, &[(0, 1)]).expect("edge"),
                });
                self.link(id, comp[0]);
                self.link(id, comp[1]);
                id
            }
            _ => {
                let sub = connected_split_tree(&g.induced_sorted(comp));
                let k = comp.len();
                let base = self.adj.len();
                let map = |x: usize| if x < k { comp[x] } else { base + x - k };
                for x in sub.internal_ids() {
                    let node = sub.internal(x).expect("internal").clone();
                    self.add_internal(node);
                }
                for x in sub.internal_ids() {
                    let ns: Vec<usize> = sub.neighbours(x).iter().map(|&y| map(y)).collect();
                    for &y in &ns {
                        if y < self.leaves {
                            self.adj[y].push(map(x));
                        }
                    }
                    self.adj[map(x)] = ns;
                }
                map(sub.neighbours(0)[0])
            }
        }
    }
}

/// Representative tree of the splits. A disconnected graph gets one tree per
/// component, glued at a degenerate hub (or along a single edge for two
/// components) attached next to each component's smallest vertex.
pub fn split_tree(g: &Graph) -> RepresentativeTree {
    let n = g.n();
    assert!(n >= 1, "split tree of the empty graph");
    let comps = connected_components(g);
    if comps.len() == 1 {
        return connected_split_tree(g);
    }
    let mut asm = Assembly { adj: vec![Vec::new(); n], internal: Vec::new(), leaves: n };
    let anchors: Vec<usize> = comps.iter().map(|c| asm.absorb(g, c)).collect();
    if anchors.len() == 2 {
        asm.link(anchors[0], anchors[1]);
    } else {
        let hub = asm.add_internal(InternalNode {
            kind: TreeNodeKind::Degenerate,
            graph: Graph::edgeless(0),
        });
        for a in anchors {
            asm.link(hub, a);
        }
    }
    RepresentativeTree { leaves: n, adj: asm.adj, internal: asm.internal }
}

/// Representative tree of the co-splits, which are the splits of the
/// complement. Node graphs are complemented back.
pub fn cosplit_tree(g: &Graph) -> RepresentativeTree {
    let mut t = split_tree(&g.complement());
    for node in &mut t.internal {
        node.graph = node.graph.complement();
    }
    t
}

/// Representative tree of the bi-joins.
pub fn bijoin_tree(g: &Graph) -> RepresentativeTree {
    let n = g.n();
    assert!(n >= 1, "bi-join tree of the empty graph");
    if n == 1 {
        return RepresentativeTree { leaves: 1, adj: vec![Vec::new()], internal: Vec::new() };
    }
    // switching at N(0) leaves 0 isolated; bi-join sides avoiding 0 are then
    // exactly the modules of what remains
    let near = g.row(0).clone();
    let mut far = full_set(n);
    far.difference_with(&near);
    far.set(0, false);
    let rows: Vec<FixedBitSet> = (0..n)
        .map(|u| {
            let mut r = g.row(u).clone();
            if u != 0 {
                r.symmetric_difference_with(if near.contains(u) { &far } else { &near });
            }
            r
        })
        .collect();
    let rest: Vec<usize> = (1..n).collect();
    let switched = Graph::from_rows(rows).induced_sorted(&rest);
    let md = modular_decomposition(&switched);

    let mut adj = vec![Vec::new(); n];
    let mut internal = Vec::new();
    let mut id_of = vec![usize::MAX; md.len()];
    for (i, node) in md.nodes().iter().enumerate() {
        if node.kind == ModuleKind::Leaf {
            id_of[i] = node.module[0] + 1;
        } else {
            id_of[i] = adj.len();
            adj.push(Vec::new());
            let kind = if node.kind == ModuleKind::Prime { TreeNodeKind::Prime } else { TreeNodeKind::Degenerate };
            internal.push(InternalNode { kind, graph: Graph::edgeless(0) });
        }
    }
    for (i, node) in md.nodes().iter().enumerate() {
        let up = node.parent.map_or(0, |p| id_of[p]);
        adj[id_of[i]].push(up);
        adj[up].push(id_of[i]);
    }
    // nodes come in pre-order, so each internal list is parent then children
    let mut t = RepresentativeTree { leaves: n, adj, internal };
    let (parent, below) = t.rooted();
    for id in t.internal_ids() {
        let reps = t.representatives(id, &parent, &below);
        let mut sorted = reps.clone();
        sorted.sort_unstable();
        let (q, _) = g.induced(&reps).expect("representatives");
        // reorder to neighbour order
        let pos: Vec<usize> = reps.iter().map(|r| sorted.binary_search(r).expect("rep")).collect();
        let mut inv = vec![0; pos.len()];
        for (i, &p) in pos.iter().enumerate() {
            inv[p] = i;
        }
        t.internal[id - n].graph = q.permuted(&inv);
    }
    t
}

/// Strong splits, co-splits and bi-joins of a prime graph, deduplicated by
/// side, ordered by side size and then lexicographically.
pub fn strong_2bimodules(g: &Graph) -> Result<Vec<Bipartition>> {
    let n = g.n();
    if n < 3 {
        return Err(misuse!("strong 2-bimodules need at least 3 vertices, got {n}"));
    }
    let md = modular_decomposition(g);
    let root = md.node(md.root());
    if root.kind != ModuleKind::Prime || root.children.len() != n {
        return Err(misuse!("strong 2-bimodules need a prime graph"));
    }
    let mut found: BTreeMap<(usize, VertexSet), KindSet> = BTreeMap::new();
    let trees = [
        (BipartitionKind::Split, split_tree(g)),
        (BipartitionKind::CoSplit, cosplit_tree(g)),
        (BipartitionKind::BiJoin, bijoin_tree(g)),
    ];
    for (kind, tree) in trees {
        for side in tree.edge_bipartitions() {
            found.entry((side.len(), side)).or_default().insert(kind);
        }
    }
    Ok(found.into_iter().map(|((_, side), kinds)| Bipartition { side, kinds }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{brute_members, members_of, Family, OracleBudget};
    use crate::testutil::*;
    use rand::RngCore;

    fn subsets_both_sides_big(n: usize) -> Vec<Vec<usize>> {
        // sides avoiding 0 with both sides of size >= 2
        (0u32..(1 << n))
            .filter(|m| m & 1 == 0)
            .map(members_of)
            .filter(|s| s.len() >= 2 && n - s.len() >= 2)
            .collect()
    }

    #[test]
    fn predicate_examples() {
        let p4 = path(4);
        let c5 = cycle(5);
        for v in 0..4 {
            assert!(is_split(&p4, &[v]));
            assert!(is_cosplit(&p4, &[v]));
            assert!(is_bijoin(&p4, &[v]));
        }
        assert!(is_split(&p4, &[0, 1]));
        assert!(is_cosplit(&p4.complement(), &[0, 1]));
        assert!(!is_bijoin(&p4, &[0, 2]));
        assert!(is_bijoin(&cycle(4), &[0, 2]));
        let big = subsets_both_sides_big(5);
        assert_eq!(big.len(), 10);
        for x in big {
            assert!(!is_split(&c5, &x));
            assert!(!is_cosplit(&c5, &x));
        }
    }

    #[test]
    fn split_tree_examples() {
        let star = star(3);
        let t = split_tree(&star);
        assert_eq!(t.internal_ids().len(), 1);
        let node = t.internal(4).unwrap();
        assert_eq!(node.kind, TreeNodeKind::Degenerate);
        assert_eq!(node.graph.n(), 4);
        assert!(matches!(shape(&node.graph), Shape::Star { .. }));

        let t = split_tree(&cycle(5));
        assert_eq!(t.internal_ids().len(), 1);
        assert_eq!(t.internal(5).unwrap().kind, TreeNodeKind::Prime);
        assert_eq!(t.neighbours(5).len(), 5);

        let sides = split_tree(&path(4)).edge_bipartitions();
        assert!(sides.contains(&vec![2, 3]));
    }

    #[test]
    fn cosplit_and_bijoin_tree_examples() {
        let t = cosplit_tree(&Graph::complete(4));
        assert_eq!(t.internal_ids().len(), 1);
        let node = t.internal(4).unwrap();
        assert_eq!(node.kind, TreeNodeKind::Degenerate);
        assert_eq!(node.graph.m(), 6);
        let t = cosplit_tree(&cycle(5).complement());
        assert_eq!(t.internal(5).unwrap().kind, TreeNodeKind::Prime);

        let t = bijoin_tree(&cycle(4));
        assert_eq!(t.internal_ids().len(), 1);
        let node = t.internal(4).unwrap();
        assert_eq!(node.kind, TreeNodeKind::Degenerate);
        assert_eq!(node.graph.m(), 4);
        assert_eq!(connected_components(&node.graph.complement()).len(), 2);
        let t = bijoin_tree(&cycle(5));
        assert_eq!(t.internal_ids().len(), 1);
        assert_eq!(t.internal(5).unwrap().kind, TreeNodeKind::Prime);
        // the only non-trivial bi-join of a-b-c-d is {a,d} | {b,c}
        let sides = bijoin_tree(&path(4)).edge_bipartitions();
        assert!(sides.contains(&vec![1, 2]));
        assert_eq!(sides.len(), 5);
    }

    #[test]
    fn strong_2bimodule_examples() {
        let p4 = strong_2bimodules(&path(4)).unwrap();
        let sides: Vec<_> = p4.iter().map(|b| b.side.clone()).collect();
        assert_eq!(sides, vec![vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]]);
        let kinds = |s: &[usize]| p4.iter().find(|b| b.side == s).unwrap().kinds;
        assert!(kinds(&[2, 3]).contains(BipartitionKind::Split));
        assert!(kinds(&[1, 3]).contains(BipartitionKind::CoSplit));
        assert!(kinds(&[1, 2]).contains(BipartitionKind::BiJoin));
        let c5 = strong_2bimodules(&cycle(5)).unwrap();
        assert_eq!(c5.len(), 5);
        assert!(c5.iter().all(|b| b.is_trivial(5)));
        assert!(matches!(strong_2bimodules(&Graph::complete(4)), Err(crate::Error::Misuse(_))));
        assert!(strong_2bimodules(&path(3)).is_err());
    }

    fn sorted_sides(mut v: Vec<VertexSet>) -> Vec<VertexSet> {
        v.sort();
        v
    }

    fn oracle_strong(g: &Graph, f: Family) -> Vec<VertexSet> {
        sorted_sides(brute_members(g, f, OracleBudget::BIPARTITIONS).unwrap().strong.into_iter().map(members_of).collect())
    }

    fn check_tree_shape(t: &RepresentativeTree) {
        for id in t.internal_ids() {
            assert!(t.neighbours(id).len() >= 3, "degree-2 node");
            assert_eq!(t.internal(id).unwrap().graph.n(), t.neighbours(id).len());
        }
        assert_eq!(t.edges().len() + 1, t.node_count());
    }

    #[test]
    fn trees_match_oracle_exhaustively_up_to_six() {
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for bits in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs.iter().enumerate().filter(|&(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
                let g = Graph::build(n, &edges).unwrap();
                let bj = bijoin_tree(&g);
                check_tree_shape(&bj);
                assert_eq!(sorted_sides(bj.edge_bipartitions()), oracle_strong(&g, Family::BiJoin), "{g:?}");
                if g.is_connected() {
                    let st = split_tree(&g);
                    check_tree_shape(&st);
                    assert_eq!(sorted_sides(st.edge_bipartitions()), oracle_strong(&g, Family::Split), "{g:?}");
                }
                if g.complement().is_connected() {
                    let ct = cosplit_tree(&g);
                    assert_eq!(sorted_sides(ct.edge_bipartitions()), oracle_strong(&g, Family::CoSplit), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn trees_match_oracle_on_random_graphs() {
        let mut r = rng(21);
        for _ in 0..300 {
            let n = 7 + (r.next_u32() % 4) as usize;
            let p = [0.2, 0.35, 0.5, 0.7][(r.next_u32() % 4) as usize];
            let g = random_graph(&mut r, n, p);
            assert_eq!(sorted_sides(bijoin_tree(&g).edge_bipartitions()), oracle_strong(&g, Family::BiJoin));
            if g.is_connected() {
                assert_eq!(sorted_sides(split_tree(&g).edge_bipartitions()), oracle_strong(&g, Family::Split), "{g:?}");
            }
            if g.complement().is_connected() {
                assert_eq!(sorted_sides(cosplit_tree(&g).edge_bipartitions()), oracle_strong(&g, Family::CoSplit));
            }
        }
    }

    #[test]
    fn disconnected_split_tree_edges_are_splits() {
        let mut r = rng(4);
        for _ in 0..200 {
            let n = 2 + (r.next_u32() % 10) as usize;
            let g = random_graph(&mut r, n, 0.15);
            let t = split_tree(&g);
            check_tree_shape(&t);
            for side in t.edge_bipartitions() {
                assert!(is_split(&g, &side), "{g:?} {side:?}");
            }
        }
    }

    /// Node graphs on representatives are fixed only up to switching, so
    /// switch the first vertex away and expect an edgeless or complete rest.
    #[test]
    fn degenerate_bijoin_nodes_switch_to_edgeless_or_complete() {
        let mut r = rng(8);
        for _ in 0..200 {
            let n = 3 + (r.next_u32() % 8) as usize;
            let g = random_graph(&mut r, n, 0.5);
            let t = bijoin_tree(&g);
            for id in t.internal_ids() {
                let node = t.internal(id).unwrap();
                if node.kind != TreeNodeKind::Degenerate {
                    continue;
                }
                let q = &node.graph;
                let k = q.n();
                let near: Vec<usize> = q.neighbours(0).to_vec();
                let rest: Vec<usize> = (1..k).collect();
                let flip = |u: usize, v: usize| near.contains(&u) != near.contains(&v);
                let m = rest
                    .iter()
                    .flat_map(|&u| rest.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
                    .filter(|&(u, v)| q.has_edge(u, v) != flip(u, v))
                    .count();
                assert!(m == 0 || m == (k - 1) * (k - 2) / 2, "{q:?}");
            }
        }
    }
}
