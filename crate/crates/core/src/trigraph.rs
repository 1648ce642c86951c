//! Bipartite trigraphs and the semi-join sweep.
//!
//! Vertices are numbered globally: `x_i` is `i` and `y_j` is `|X| + j`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BtEdge {
    None,
    Join,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteTrigraph {
    nx: usize,
    ny: usize,
    kinds: Vec<BtEdge>,
    join_degree: Vec<usize>,
    mixed_degree: Vec<usize>,
}

impl BipartiteTrigraph {
    pub fn from_fn(nx: usize, ny: usize, mut edge: impl FnMut(usize, usize) -> BtEdge) -> BipartiteTrigraph {
        let mut kinds = Vec::with_capacity(nx * ny);
        let mut join_degree = vec![0; nx + ny];
        let mut mixed_degree = vec![0; nx + ny];
        for x in 0..nx {
            for y in 0..ny {
                let e = edge(x, y);
                let deg = match e {
                    BtEdge::Join => &mut join_degree,
                    BtEdge::Mixed => &mut mixed_degree,
                    BtEdge::None => {
                        kinds.push(e);
                        continue;
                    }
                };
                deg[x] += 1;
                deg[nx + y] += 1;
                kinds.push(e);
            }
        }
        BipartiteTrigraph { nx, ny, kinds, join_degree, mixed_degree }
    }

    pub fn x_count(&self) -> usize {
        self.nx
    }

    pub fn y_count(&self) -> usize {
        self.ny
    }

    pub fn vertex_count(&self) -> usize {
        self.nx + self.ny
    }

    pub fn is_x(&self, v: usize) -> bool {
        v < self.nx
    }

    /// Edge between X-index `x` and Y-index `y`.
    #[inline]
    pub fn edge(&self, x: usize, y: usize) -> BtEdge {
        self.kinds[x * self.ny + y]
    }

    #[inline]
    pub fn join_degree(&self, v: usize) -> usize {
        self.join_degree[v]
    }

    #[inline]
    pub fn mixed_degree(&self, v: usize) -> usize {
        self.mixed_degree[v]
    }

    /// Kind of the pair `{u, v}` for global ids; same-side pairs are `None`.
    fn pair(&self, u: usize, v: usize) -> BtEdge {
        match (self.is_x(u), self.is_x(v)) {
            (true, false) => self.edge(u, v - self.nx),
            (false, true) => self.edge(v, u - self.nx),
            _ => BtEdge::None,
        }
    }

    /// Two same-side vertices forming a BT-module, if any: no mixed edges and
    /// identical join neighbourhoods.
    pub fn nontrivial_bt_module(&self) -> Option<(usize, usize)> {
        let mut xs: Vec<(Vec<usize>, usize)> = (0..self.nx)
            .filter(|&x| self.mixed_degree[x] == 0)
            .map(|x| ((0..self.ny).filter(|&y| self.edge(x, y) == BtEdge::Join).collect(), x))
            .collect();
        let mut ys: Vec<(Vec<usize>, usize)> = (0..self.ny)
            .filter(|&y| self.mixed_degree[self.nx + y] == 0)
            .map(|y| ((0..self.nx).filter(|&x| self.edge(x, y) == BtEdge::Join).collect(), self.nx + y))
            .collect();
        for side in [&mut xs, &mut ys] {
            side.sort();
            if let Some(w) = side.windows(2).find(|w| w[0].0 == w[1].0) {
                return Some((w[0].1, w[1].1));
            }
        }
        None
    }
}

/// X in decreasing `(d_j, d_m)` order and Y increasing, as side-local
/// indices; ties go to the smaller id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortedSides {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

pub fn bt_sorted_sides(t: &BipartiteTrigraph) -> SortedSides {
    let key = |v: usize| (t.join_degree[v], t.mixed_degree[v]);
    let mut x: Vec<usize> = (0..t.nx).collect();
    x.sort_by(|&a, &b| key(b).cmp(&key(a)).then(a.cmp(&b)));
    let mut y: Vec<usize> = (0..t.ny).collect();
    y.sort_by(|&a, &b| key(t.nx + a).cmp(&key(t.nx + b)).then(a.cmp(&b)));
    SortedSides { x, y }
}

/// Definitional check that `(a, rest)` is a semi-join: nothing between
/// `A ∩ Y` and `B ∩ X`, only join edges between `A ∩ X` and `B ∩ Y`.
pub fn is_semi_join(t: &BipartiteTrigraph, a: &[usize]) -> bool {
    let total = t.vertex_count();
    let mut in_a = vec![false; total];
    for &v in a {
        in_a[v] = true;
    }
    for u in 0..t.nx {
        for y in 0..t.ny {
            let v = t.nx + y;
            let e = t.pair(u, v);
            match (in_a[u], in_a[v]) {
                (false, true) if e != BtEdge::None => return false,
                (true, false) if e != BtEdge::Join => return false,
                _ => {}
            }
        }
    }
    true
}

/// Degree-sum test for `A = {x_1..x_k, y_1..y_k'}` in sorted order.
pub fn semi_join_test(t: &BipartiteTrigraph, sides: &SortedSides, k: usize, k_prime: usize) -> bool {
    let xs = &sides.x[..k];
    let ys = &sides.y[..k_prime];
    let sum = |vs: &[usize], off: usize, d: &[usize]| vs.iter().map(|&v| d[off + v]).sum::<usize>();
    let xj = sum(xs, 0, &t.join_degree);
    let yj = sum(ys, t.nx, &t.join_degree);
    let xm = sum(xs, 0, &t.mixed_degree);
    let ym = sum(ys, t.nx, &t.mixed_degree);
    xj as i64 - yj as i64 == (k * (t.ny - k_prime)) as i64 && xm == ym
}

/// The ordered partition whose proper prefix unions are exactly the
/// semi-joins, by a two-pointer sweep over the sorted sides. Blocks hold
/// global vertex ids.
pub fn enumerate_semi_joins(t: &BipartiteTrigraph) -> Result<Vec<Vec<usize>>> {
    if cfg!(debug_assertions) {
        if let Some((a, b)) = t.nontrivial_bt_module() {
            return Err(Error::PreconditionViolation(alloc::format!(
                "vertices {a} and {b} form a BT-module"
            )));
        }
    }
    Ok(sweep(t))
}

pub(crate) fn sweep(t: &BipartiteTrigraph) -> Vec<Vec<usize>> {
    let sides = bt_sorted_sides(t);
    let (nx, ny) = (t.nx, t.ny);
    let dj = |v: usize| t.join_degree[v] as i64;
    let dm = |v: usize| t.mixed_degree[v] as i64;
    let xg = |i: usize| sides.x[i];
    let yg = |i: usize| nx + sides.y[i];

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let (mut last_k, mut last_kp) = (0usize, 0usize);
    let mut k = 0usize;
    let (mut sj, mut sm) = (0i64, 0i64);
    // Y sums at the last emitted boundary
    let (mut last_spj, mut last_spm) = (0i64, 0i64);
    let target = |k: usize, kp: usize| (k * (ny - kp)) as i64;
    loop {
        // The Y pointer only moves monotonically between consecutive
        // semi-joins, so every k restarts from the last boundary.
        let mut kp = last_kp;
        let (mut spj, mut spm) = (last_spj, last_spm);
        while kp < ny && (sj - spj < target(k, kp) || (sj - spj == target(k, kp) && sm > spm)) {
            spj += dj(yg(kp));
            spm += dm(yg(kp));
            kp += 1;
        }
        debug_assert!(semi_join_counters_agree(t, &sides, k, kp, [sj, sm, spj, spm]));
        if sj - spj == target(k, kp) && sm == spm {
            let mut block: Vec<usize> = (last_k..k).map(xg).collect();
            block.extend((last_kp..kp).map(yg));
            blocks.push(block);
            last_k = k;
            last_kp = kp;
            (last_spj, last_spm) = (spj, spm);
            // a single Y vertex may sit on the boundary by itself
            if kp < ny {
                let y = yg(kp);
                if sj - spj - dj(y) == target(k, kp + 1) && sm == spm + dm(y) {
                    spj += dj(y);
                    spm += dm(y);
                    kp += 1;
                    blocks.push(vec![y]);
                    last_kp = kp;
                    (last_spj, last_spm) = (spj, spm);
                }
            }
        }
        if k == nx {
            break;
        }
        sj += dj(xg(k));
        sm += dm(xg(k));
        k += 1;
    }
    if last_k < nx || last_kp < ny {
        // only reachable when a BT-module of size two or more exists
        let mut rest: Vec<usize> = (last_k..nx).map(xg).collect();
        rest.extend((last_kp..ny).map(yg));
        blocks.push(rest);
    }
    blocks.retain(|b| !b.is_empty());
    blocks
}

fn semi_join_counters_agree(t: &BipartiteTrigraph, sides: &SortedSides, k: usize, kp: usize, c: [i64; 4]) -> bool {
    let sum = |vs: &[usize], off: usize, d: &[usize]| vs.iter().map(|&v| d[off + v] as i64).sum::<i64>();
    c == [
        sum(&sides.x[..k], 0, &t.join_degree),
        sum(&sides.x[..k], 0, &t.mixed_degree),
        sum(&sides.y[..kp], t.nx, &t.join_degree),
        sum(&sides.y[..kp], t.nx, &t.mixed_degree),
    ]
}

impl core::fmt::Display for BtEdge {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            BtEdge::None => "-",
            BtEdge::Join => "j",
            BtEdge::Mixed => "m",
        })
    }
}
