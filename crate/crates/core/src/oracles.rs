//! Exhaustive reference implementations for small graphs.
//!
//! Everything here works straight from the definitions on `u32` vertex
//! masks and shares no algorithmic code with the production modules. Each
//! oracle refuses inputs beyond its [`OracleBudget`].

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::label::{Label, LabelledGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    /// Ceiling on elementary steps before the oracle gives up.
    pub max_ops: u64,
}

impl OracleBudget {
    pub const ISO: OracleBudget = OracleBudget { max_n: 10, max_ops: 50_000_000 };
    pub const BIPARTITIONS: OracleBudget = OracleBudget { max_n: 12, max_ops: 200_000_000 };
    pub const MODULES: OracleBudget = OracleBudget { max_n: 16, max_ops: 400_000_000 };
    pub const RHO_FREE: OracleBudget = OracleBudget { max_n: 10, max_ops: 200_000_000 };
    /// Applies to each prime quotient; the whole graph must fit [`Self::MODULES`].
    pub const NLC2: OracleBudget = OracleBudget { max_n: 8, max_ops: 400_000_000 };
}

struct Meter {
    left: u64,
}

impl Meter {
    fn new(b: &OracleBudget) -> Meter {
        Meter { left: b.max_ops }
    }

    #[inline]
    fn tick(&mut self, k: u64) -> Result<()> {
        if self.left < k {
            return Err(Error::OverBudget("operation ceiling reached".into()));
        }
        self.left -= k;
        Ok(())
    }
}

fn check_n(n: usize, b: &OracleBudget) -> Result<()> {
    if n > b.max_n || n > 31 {
        return Err(Error::OverBudget(format!("n = {n} exceeds oracle limit {}", b.max_n)));
    }
    Ok(())
}

fn masks(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.n()];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn bits(mut x: u32) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

/// Mask of the listed vertices.
pub fn mask_of(vs: &[usize]) -> u32 {
    vs.iter().fold(0, |m, &v| m | (1 << v))
}

/// Vertex list of a mask, ascending.
pub fn members_of(m: u32) -> Vec<usize> {
    bits(m).collect()
}

/// Isomorphism by backtracking, optionally preserving vertex colours.
pub fn brute_iso(
    g: &Graph,
    h: &Graph,
    colours: Option<(&[u32], &[u32])>,
    budget: OracleBudget,
) -> Result<bool> {
    let n = g.n();
    check_n(n.max(h.n()), &budget)?;
    if n != h.n() || g.m() != h.m() {
        return Ok(false);
    }
    let zero = vec![0u32; n];
    let (cg, ch) = colours.unwrap_or((&zero, &zero));
    let (ag, ah) = (masks(g), masks(h));
    let key = |adj: &[u32], c: &[u32], v: usize| (adj[v].count_ones(), c[v]);
    let mut kg: Vec<_> = (0..n).map(|v| key(&ag, cg, v)).collect();
    let mut kh: Vec<_> = (0..n).map(|v| key(&ah, ch, v)).collect();
    kg.sort_unstable();
    kh.sort_unstable();
    if kg != kh {
        return Ok(false);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(ag[v].count_ones()));
    let mut image = vec![usize::MAX; n];
    let mut meter = Meter::new(&budget);

    fn extend(
        depth: usize,
        order: &[usize],
        image: &mut [usize],
        used: u32,
        ag: &[u32],
        ah: &[u32],
        cg: &[u32],
        ch: &[u32],
        meter: &mut Meter,
    ) -> Result<bool> {
        if depth == order.len() {
            return Ok(true);
        }
        let v = order[depth];
        for w in 0..ah.len() {
            meter.tick(1)?;
            if used & (1 << w) != 0
                || ah[w].count_ones() != ag[v].count_ones()
                || ch[w] != cg[v]
            {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| (ag[v] >> u & 1) == (ah[w] >> image[u] & 1));
            if !consistent {
                continue;
            }
            image[v] = w;
            if extend(depth + 1, order, image, used | (1 << w), ag, ah, cg, ch, meter)? {
                return Ok(true);
            }
        }
        image[v] = usize::MAX;
        Ok(false)
    }

    extend(0, &order, &mut image, 0, &ag, &ah, cg, ch, &mut meter)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Module,
    Split,
    CoSplit,
    BiJoin,
}

/// Members of a family, as vertex masks. For bipartition families each
/// member is given by its side not containing vertex 0.
#[derive(Clone, Debug, Default)]
pub struct Members {
    pub all: Vec<u32>,
    pub strong: Vec<u32>,
}

fn split_side_ok(adj: &[u32], x: u32, y: u32) -> bool {
    let mut common: Option<u32> = None;
    for u in bits(x) {
        let t = adj[u] & y;
        if t != 0 {
            match common {
                None => common = Some(t),
                Some(c) if c != t => return false,
                _ => {}
            }
        }
    }
    true
}

fn is_split_masks(adj: &[u32], x: u32, y: u32) -> bool {
    split_side_ok(adj, x, y) && split_side_ok(adj, y, x)
}

fn is_bijoin_masks(adj: &[u32], x: u32, y: u32) -> bool {
    let mut first: Option<(u32, u32)> = None;
    for u in bits(x) {
        let t = adj[u] & y;
        let pair = if t < y & !t { (t, y & !t) } else { (y & !t, t) };
        match first {
            None => first = Some(pair),
            Some(p) if p != pair => return false,
            _ => {}
        }
    }
    true
}

fn is_module_mask(adj: &[u32], full: u32, x: u32) -> bool {
    bits(full & !x).all(|u| {
        let t = adj[u] & x;
        t == 0 || t == x
    })
}

pub fn brute_members(g: &Graph, family: Family, budget: OracleBudget) -> Result<Members> {
    let n = g.n();
    check_n(n, &budget)?;
    let mut meter = Meter::new(&budget);
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let adj = masks(g);
    let co: Vec<u32> = (0..n).map(|u| full & !adj[u] & !(1 << u)).collect();
    let mut all = Vec::new();
    match family {
        Family::Module => {
            for x in 1..=full {
                meter.tick(n as u64)?;
                if is_module_mask(&adj, full, x) {
                    all.push(x);
                }
            }
        }
        _ => {
            // sides avoiding vertex 0
            let mut x = 2u32;
            while n >= 2 && x <= full {
                meter.tick(n as u64)?;
                let y = full & !x;
                let ok = match family {
                    Family::Split => is_split_masks(&adj, x, y),
                    Family::CoSplit => is_split_masks(&co, x, y),
                    Family::BiJoin => is_bijoin_masks(&adj, x, y),
                    Family::Module => unreachable!(),
                };
                if ok {
                    all.push(x);
                }
                x += 2;
            }
        }
    }
    let overlap = |a: u32, b: u32| match family {
        Family::Module => a & b != 0 && a & !b != 0 && b & !a != 0,
        _ => {
            let (ya, yb) = (full & !a, full & !b);
            a & b != 0 && a & yb != 0 && ya & b != 0 && ya & yb != 0
        }
    };
    let mut strong = Vec::new();
    for &a in &all {
        meter.tick(all.len() as u64)?;
        if !all.iter().any(|&b| overlap(a, b)) {
            strong.push(a);
        }
    }
    Ok(Members { all, strong })
}

/// All S-cuts `(X, V \ X)` of a labelled graph, as masks of `X`.
pub fn brute_s_cuts(lg: &LabelledGraph, mask: u8, budget: OracleBudget) -> Result<Vec<u32>> {
    let n = lg.n();
    check_n(n, &budget)?;
    let mut meter = Meter::new(&budget);
    let adj = masks(&lg.graph);
    let full: u32 = (1u32 << n) - 1;
    let lab = |v: usize| lg.label(v).index();
    let in_s = |a: usize, b: usize| mask >> (3 - (2 * a + b)) & 1 == 1;
    let mut out = Vec::new();
    for x in 1..full {
        meter.tick((n * n) as u64)?;
        let y = full & !x;
        let ok = bits(x).all(|u| bits(y).all(|v| (adj[u] >> v & 1 == 1) == in_s(lab(u), lab(v))));
        if ok {
            out.push(x);
        }
    }
    Ok(out)
}

/// Whether a 2-labelled graph can be built with products only: memoised
/// search over vertex subsets for a cut whose cross adjacency depends only
/// on the label pair, with both sides recursively buildable.
pub fn brute_rho_free(lg: &LabelledGraph, budget: OracleBudget) -> Result<bool> {
    let n = lg.n();
    check_n(n, &budget)?;
    let adj = masks(&lg.graph);
    let mut class = [0u32; 2];
    for v in 0..n {
        class[lg.label(v).index()] |= 1 << v;
    }
    let mut memo = vec![0u8; 1usize << n];
    let mut meter = Meter::new(&budget);
    rho_free_rec((1u32 << n) - 1, &adj, &class, &mut memo, &mut meter)
}

fn homogeneous_cut(adj: &[u32], class: &[u32; 2], a: u32, b: u32) -> bool {
    for la in 0..2 {
        for lb in 0..2 {
            let (sa, sb) = (a & class[la], b & class[lb]);
            if sa == 0 || sb == 0 {
                continue;
            }
            let mut seen_full = false;
            let mut seen_empty = false;
            for u in bits(sa) {
                let t = adj[u] & sb;
                if t == 0 {
                    seen_empty = true;
                } else if t == sb {
                    seen_full = true;
                } else {
                    return false;
                }
            }
            if seen_full && seen_empty {
                return false;
            }
        }
    }
    true
}

fn rho_free_rec(w: u32, adj: &[u32], class: &[u32; 2], memo: &mut [u8], meter: &mut Meter) -> Result<bool> {
    if w.count_ones() == 1 {
        return Ok(true);
    }
    match memo[w as usize] {
        1 => return Ok(true),
        2 => return Ok(false),
        _ => {}
    }
    let low = w & w.wrapping_neg();
    let rest = w & !low;
    // A ranges over subsets of w containing the lowest vertex, excluding w
    let mut sub = rest;
    let mut found = false;
    loop {
        let a = low | sub;
        if a != w {
            meter.tick(w.count_ones() as u64)?;
            let b = w & !a;
            if homogeneous_cut(adj, class, a, b)
                && rho_free_rec(a, adj, class, memo, meter)?
                && rho_free_rec(b, adj, class, memo, meter)?
            {
                found = true;
                break;
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    memo[w as usize] = if found { 1 } else { 2 };
    Ok(found)
}

/// Membership in NLC-2 through the modular decomposition: every prime
/// quotient must admit a 2-labelling that is buildable without relabelling.
/// Strong modules are found by exhaustive module enumeration.
pub fn brute_nlc2(g: &Graph, budget: OracleBudget) -> Result<bool> {
    let n = g.n();
    let modules = brute_members(g, Family::Module, OracleBudget::MODULES)?;
    let adj = masks(g);
    let strong = modules.strong;
    let mut meter = Meter::new(&budget);
    for &m in &strong {
        if m.count_ones() < 2 {
            continue;
        }
        // children: maximal strong modules strictly inside m
        let inside: Vec<u32> = strong.iter().copied().filter(|&s| s != m && s & !m == 0).collect();
        let children: Vec<u32> = inside
            .iter()
            .copied()
            .filter(|&s| !inside.iter().any(|&t| t != s && s & !t == 0))
            .collect();
        let reps: Vec<usize> = children.iter().map(|&c| c.trailing_zeros() as usize).collect();
        let k = reps.len();
        let quotient: Vec<u32> = reps
            .iter()
            .map(|&r| {
                reps.iter()
                    .enumerate()
                    .filter(|&(_, &s)| adj[r] >> s & 1 == 1)
                    .fold(0u32, |acc, (j, _)| acc | (1 << j))
            })
            .collect();
        let edges: u32 = quotient.iter().map(|q| q.count_ones()).sum::<u32>() / 2;
        let pairs = (k * (k - 1) / 2) as u32;
        if edges == 0 || edges == pairs {
            continue;
        }
        check_n(k, &budget)?;
        let mut quotient_edges = Vec::new();
        for i in 0..k {
            for j in bits(quotient[i]) {
                if i < j {
                    quotient_edges.push((i, j));
                }
            }
        }
        let q = Graph::build(k, &quotient_edges)?;
        let mut any = false;
        for lab in 0u32..(1 << k) {
            meter.tick(1)?;
            let labels = (0..k)
                .map(|i| if lab >> i & 1 == 1 { Label::Two } else { Label::One })
                .collect();
            let lq = LabelledGraph::new(q.clone(), labels)?;
            if brute_rho_free(&lq, OracleBudget { max_n: budget.max_n, ..OracleBudget::RHO_FREE })? {
                any = true;
                break;
            }
        }
        if !any {
            return Ok(false);
        }
    }
    let _ = n;
    Ok(true)
}
