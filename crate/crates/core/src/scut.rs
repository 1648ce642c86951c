//! S-relations, S-cuts and the partitions describing all S-cuts.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{co_connected_components, connected_components, VertexSet};
use crate::label::{Label, LabelledGraph};
use crate::modular::has_monocoloured_module;
use crate::trigraph::{self, BipartiteTrigraph, BtEdge};

/// A subset of `{1,2} x {1,2}` as a 4-bit mask. Bit values are 8 for
/// `(1,1)`, 4 for `(1,2)`, 2 for `(2,1)` and 1 for `(2,2)`, so the text form
/// reads the pairs in that order, e.g. `"1000"` is `{(1,1)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SRelation(u8);

impl SRelation {
    pub const EMPTY: SRelation = SRelation(0);

    pub fn new(mask: u8) -> Option<SRelation> {
        (mask < 16).then_some(SRelation(mask))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    fn bit(a: Label, b: Label) -> u8 {
        8 >> (2 * a.index() + b.index())
    }

    pub fn from_pairs(pairs: &[(Label, Label)]) -> SRelation {
        SRelation(pairs.iter().fold(0, |m, &(a, b)| m | Self::bit(a, b)))
    }

    #[inline]
    pub fn contains(self, a: Label, b: Label) -> bool {
        self.0 & Self::bit(a, b) != 0
    }

    pub fn is_symmetric(self) -> bool {
        self.contains(Label::One, Label::Two) == self.contains(Label::Two, Label::One)
    }

    /// All sixteen relations in ascending mask order.
    pub fn all() -> impl Iterator<Item = SRelation> {
        (0..16).map(SRelation)
    }

    /// The relation seen after swapping labels 1 and 2.
    pub fn swap_labels(self) -> SRelation {
        let m = self.0;
        SRelation((m & 8) >> 3 | (m & 1) << 3 | (m & 4) >> 1 | (m & 2) << 1)
    }

    pub fn transpose(self) -> SRelation {
        let m = self.0;
        SRelation(m & 9 | (m & 4) >> 1 | (m & 2) << 1)
    }
}

impl core::fmt::Display for SRelation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:04b}", self.0)
    }
}

impl core::str::FromStr for SRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<SRelation> {
        if s.len() != 4 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::MalformedExpression(alloc::format!("bad relation mask {s:?}")));
        }
        Ok(SRelation(u8::from_str_radix(s, 2).expect("binary digits")))
    }
}

/// Whether `(x, V \ x)` is an S-cut: every cross pair is an edge exactly
/// when its label pair, read from the `x` side, is in `s`.
pub fn is_s_cut(lg: &LabelledGraph, s: SRelation, x: &[usize]) -> bool {
    let n = lg.n();
    let mut inside = vec![false; n];
    for &v in x {
        inside[v] = true;
    }
    for &u in x {
        for v in (0..n).filter(|&v| !inside[v]) {
            if lg.graph.has_edge(u, v) != s.contains(lg.label(u), lg.label(v)) {
                return false;
            }
        }
    }
    true
}

/// All S-cuts of a labelled graph, described by blocks: for a symmetric
/// relation every union of blocks is a cut side; otherwise the cut sides are
/// exactly the proper prefix unions, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScutPartition {
    Degenerate(Vec<VertexSet>),
    Linear(Vec<VertexSet>),
}

impl ScutPartition {
    pub fn blocks(&self) -> &[VertexSet] {
        match self {
            ScutPartition::Degenerate(b) | ScutPartition::Linear(b) => b,
        }
    }

    pub fn len(&self) -> usize {
        self.blocks().len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks().is_empty()
    }

    pub fn into_blocks(self) -> Vec<VertexSet> {
        match self {
            ScutPartition::Degenerate(b) | ScutPartition::Linear(b) => b,
        }
    }
}

/// Trigraph between the label-1 and label-2 parts, with the vertex sets
/// behind each trigraph vertex.
#[derive(Clone, Debug)]
pub struct ComponentTrigraph {
    pub trigraph: BipartiteTrigraph,
    pub x_parts: Vec<VertexSet>,
    pub y_parts: Vec<VertexSet>,
}

impl ComponentTrigraph {
    fn part(&self, v: usize) -> &VertexSet {
        let nx = self.x_parts.len();
        if v < nx {
            &self.x_parts[v]
        } else {
            &self.y_parts[v - nx]
        }
    }
}

/// Label-1 vertices split into components (co-components when `(1,1)` is in
/// `s`), likewise for label 2, joined by join, mixed or no edges.
pub fn build_trigraph(lg: &LabelledGraph, s: SRelation) -> ComponentTrigraph {
    let n = lg.n();
    let parts_of = |label: Label| -> Vec<VertexSet> {
        let class = lg.class(label);
        if class.is_empty() {
            return Vec::new();
        }
        let sub = lg.graph.induced_sorted(&class);
        let blocks = if s.contains(label, label) {
            co_connected_components(&sub)
        } else {
            connected_components(&sub)
        };
        blocks.into_iter().map(|b| b.into_iter().map(|i| class[i]).collect()).collect()
    };
    let x_parts = parts_of(Label::One);
    let y_parts = parts_of(Label::Two);
    let (nx, ny) = (x_parts.len(), y_parts.len());
    let mut part = vec![0usize; n];
    for (i, p) in x_parts.iter().enumerate() {
        for &v in p {
            part[v] = i;
        }
    }
    for (j, p) in y_parts.iter().enumerate() {
        for &v in p {
            part[v] = j;
        }
    }
    let mut count = vec![0usize; nx * ny];
    for p in &x_parts {
        for &v in p {
            for &u in lg.graph.neighbours(v) {
                if lg.label(u) == Label::Two {
                    count[part[v] * ny + part[u]] += 1;
                }
            }
        }
    }
    let trigraph = BipartiteTrigraph::from_fn(nx, ny, |x, y| {
        let c = count[x * ny + y];
        if c == 0 {
            BtEdge::None
        } else if c == x_parts[x].len() * y_parts[y].len() {
            BtEdge::Join
        } else {
            BtEdge::Mixed
        }
    });
    ComponentTrigraph { trigraph, x_parts, y_parts }
}

/// The partition of all S-cuts. Needs every mono-coloured module to be a
/// single vertex; this is checked in debug builds.
pub fn compute_partition(lg: &LabelledGraph, s: SRelation) -> Result<ScutPartition> {
    if cfg!(debug_assertions) && has_monocoloured_module(lg) {
        return Err(Error::PreconditionViolation(
            "labelled graph has a mono-coloured module of size at least 2".into(),
        ));
    }
    Ok(partition_unchecked(lg, s))
}

pub(crate) fn partition_unchecked(lg: &LabelledGraph, s: SRelation) -> ScutPartition {
    partition_from_trigraph(&build_trigraph(lg, s), s)
}

/// Partition for `s` from a trigraph built for any relation that agrees
/// with `s` on (1,1) and (2,2).
pub(crate) fn partition_from_trigraph(ct: &ComponentTrigraph, s: SRelation) -> ScutPartition {
    let t = &ct.trigraph;
    let (nx, ny) = (t.x_count(), t.y_count());
    let cross12 = s.contains(Label::One, Label::Two);
    let cross21 = s.contains(Label::Two, Label::One);
    let expand = |group: &[usize]| -> VertexSet {
        let mut b: VertexSet = group.iter().flat_map(|&v| ct.part(v).iter().copied()).collect();
        b.sort_unstable();
        b
    };
    if cross12 == cross21 {
        // components over the pairs that a cut may not separate
        let linked = |e: BtEdge| if cross12 { e != BtEdge::Join } else { e != BtEdge::None };
        let mut dsu = Dsu::new(nx + ny);
        for x in 0..nx {
            for y in 0..ny {
                if linked(t.edge(x, y)) {
                    dsu.union(x, nx + y);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; nx + ny];
        for v in 0..nx + ny {
            let r = dsu.find(v);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(v);
        }
        let mut blocks: Vec<VertexSet> = groups.iter().map(|g| expand(g)).collect();
        blocks.sort_by_key(|b| b[0]);
        ScutPartition::Degenerate(blocks)
    } else {
        let mut blocks: Vec<VertexSet> = trigraph::sweep(t).iter().map(|g| expand(g)).collect();
        if cross21 {
            blocks.reverse();
        }
        ScutPartition::Linear(blocks)
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use alloc::string::ToString;
    use crate::oracles::{brute_s_cuts, mask_of, OracleBudget};
    use crate::testutil::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn p4_labelled() -> LabelledGraph {
        labelled(path(4), &[2, 1, 1, 2])
    }

    #[test]
    fn relation_basics() {
        let s: SRelation = "1000".parse().unwrap();
        assert_eq!(s.mask(), 8);
        assert!(s.contains(Label::One, Label::One));
        assert!(s.is_symmetric());
        let t = SRelation::new(4).unwrap();
        assert!(t.contains(Label::One, Label::Two) && !t.is_symmetric());
        assert_eq!(t.transpose(), SRelation::new(2).unwrap());
        assert_eq!(s.swap_labels(), SRelation::new(1).unwrap());
        assert_eq!(t.swap_labels(), SRelation::new(2).unwrap());
        assert_eq!(SRelation::all().filter(|s| s.is_symmetric()).count(), 8);
        assert_eq!(SRelation::new(5).unwrap().to_string(), "0101");
        assert!("10a0".parse::<SRelation>().is_err());
        assert!(SRelation::new(16).is_none());
    }

    #[test]
    fn s_cut_examples() {
        let g = p4_labelled();
        assert!(is_s_cut(&g, SRelation::new(8).unwrap(), &[0, 1]));
        assert!(!is_s_cut(&g, SRelation::new(4).unwrap(), &[0, 1, 2]));
        let two = labelled(Graph::build(4, &[(0, 1), (2, 3)]).unwrap(), &[1, 2, 1, 2]);
        assert!(is_s_cut(&two, SRelation::EMPTY, &[0, 1]));
    }

    #[test]
    fn partition_examples() {
        let g = p4_labelled();
        assert_eq!(
            compute_partition(&g, SRelation::new(8).unwrap()).unwrap(),
            ScutPartition::Degenerate(vec![vec![0, 1], vec![2, 3]])
        );
        // x1(1) - y1(2) plus an isolated x2(1)
        let h = labelled(Graph::build(3, &[(0, 1)]).unwrap(), &[1, 2, 1]);
        assert_eq!(
            compute_partition(&h, SRelation::new(4).unwrap()).unwrap(),
            ScutPartition::Linear(vec![vec![0], vec![1], vec![2]])
        );
        let two = labelled(Graph::build(4, &[(0, 1), (2, 3)]).unwrap(), &[1, 2, 1, 2]);
        assert_eq!(
            compute_partition(&two, SRelation::EMPTY).unwrap(),
            ScutPartition::Degenerate(vec![vec![0, 1], vec![2, 3]])
        );
        let mono = labelled(Graph::edgeless(2), &[1, 1]);
        assert!(matches!(
            compute_partition(&mono, SRelation::EMPTY),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn trigraph_examples() {
        // (1,1) in S: label-1 side splits into co-components {b}, {c}
        let ct = build_trigraph(&p4_labelled(), SRelation::new(8).unwrap());
        assert_eq!(ct.x_parts, vec![vec![1], vec![2]]);
        assert_eq!(ct.y_parts, vec![vec![0], vec![3]]);
        assert_eq!(ct.trigraph.edge(0, 0), BtEdge::Join);
        assert_eq!(ct.trigraph.edge(0, 1), BtEdge::None);
        assert_eq!(ct.trigraph.edge(1, 1), BtEdge::Join);
        let ct = build_trigraph(&p4_labelled(), SRelation::EMPTY);
        assert_eq!(ct.x_parts, vec![vec![1, 2]]);
        assert_eq!(ct.trigraph.edge(0, 0), BtEdge::Mixed);
        assert_eq!(ct.trigraph.edge(0, 1), BtEdge::Mixed);
        let ones = labelled(path(3), &[1, 1, 1]);
        assert_eq!(build_trigraph(&ones, SRelation::EMPTY).trigraph.y_count(), 0);
        let k22 = labelled(cycle(4), &[1, 2, 1, 2]);
        let ct = build_trigraph(&k22, SRelation::EMPTY);
        assert!((0..2).all(|x| (0..2).all(|y| ct.trigraph.edge(x, y) == BtEdge::Join)));
    }

    /// Random labelled graph without mono-coloured modules of size >= 2,
    /// retrying with fresh draws; `None` only if every draw fails.
    fn clean_labelled(seed: u64, n: usize, p: f64) -> Option<LabelledGraph> {
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

    fn cut_masks(p: &ScutPartition, n: usize) -> Vec<u32> {
        let blocks: Vec<u32> = p.blocks().iter().map(|b| mask_of(b)).collect();
        let full = (1u32 << n) - 1;
        let mut out = Vec::new();
        match p {
            ScutPartition::Degenerate(_) => {
                for pick in 1u32..(1 << blocks.len()) - 1 {
                    out.push((0..blocks.len()).filter(|&i| pick >> i & 1 == 1).fold(0, |m, i| m | blocks[i]));
                }
            }
            ScutPartition::Linear(_) => {
                let mut acc = 0;
                for b in &blocks[..blocks.len() - 1] {
                    acc |= b;
                    out.push(acc);
                }
            }
        }
        out.retain(|&m| m != 0 && m != full);
        out.sort_unstable();
        out
    }

    /// Pairs inside V1, inside V2 and across are flipped according to the
    /// relation; S-cuts then become cuts with no crossing edge.
    fn reduced_graph(lg: &LabelledGraph, s: SRelation) -> Graph {
        let n = lg.n();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let flip = s.contains(lg.label(u), lg.label(v));
                if lg.graph.has_edge(u, v) != flip {
                    edges.push((u, v));
                }
            }
        }
        Graph::build(n, &edges).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn partition_describes_exactly_the_s_cuts(seed in any::<u64>(), n in 2usize..=10, p in 0.1f64..0.9, mask in 0u8..16) {
            let lg = clean_labelled(seed, n, p);
            prop_assume!(lg.is_some());
            let lg = lg.unwrap();
            let s = SRelation::new(mask).unwrap();
            let part = compute_partition(&lg, s).unwrap();
            prop_assert_eq!(matches!(part, ScutPartition::Degenerate(_)), s.is_symmetric());
            let mut expected = brute_s_cuts(&lg, mask, OracleBudget::BIPARTITIONS).unwrap();
            expected.sort_unstable();
            prop_assert_eq!(cut_masks(&part, n), expected);
        }

        #[test]
        fn symmetric_partition_matches_reduced_components(seed in any::<u64>(), n in 1usize..=12, p in 0.1f64..0.9, pick in 0usize..8) {
            let lg = clean_labelled(seed, n, p);
            prop_assume!(lg.is_some());
            let lg = lg.unwrap();
            let s = SRelation::all().filter(|s| s.is_symmetric()).nth(pick).unwrap();
            let part = compute_partition(&lg, s).unwrap();
            prop_assert_eq!(part.into_blocks(), connected_components(&reduced_graph(&lg, s)));
        }
    }
}
