//! Exact edge connectivity by unit-capacity max-flow, and minimum edge cut
//! enumeration by exhaustive subset scan.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeCut, Graph};

/// Default cap on the number of edge subsets an enumeration may test.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinCutResult {
    pub value: usize,
    pub witness: EdgeCut,
    /// Source side (contains vertex 0) and sink side of the witness.
    pub partition: (Vec<usize>, Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutEnumeration {
    pub value: usize,
    pub cuts: Vec<EdgeCut>,
    /// `true` when every `value`-subset of edges was tested.
    pub exhaustive: bool,
    /// `C(|E|, value)`, saturating.
    pub subsets: u128,
}

/// Unit-capacity residual network over an undirected graph. Arc `2i` runs
/// `lo -> hi` of edge `i`, arc `2i+1` the reverse; each is the other's
/// residual twin.
struct UnitFlow {
    head: Vec<usize>,
    out: Vec<Vec<usize>>,
    cap: Vec<u8>,
}

impl UnitFlow {
    fn new(g: &Graph) -> Self {
        let mut head = Vec::with_capacity(2 * g.edge_count());
        let mut out = vec![Vec::new(); g.order()];
        for (i, e) in g.edges().iter().enumerate() {
            head.push(e.hi());
            head.push(e.lo());
            out[e.lo()].push(2 * i);
            out[e.hi()].push(2 * i + 1);
        }
        let cap = vec![1; head.len()];
        UnitFlow { head, out, cap }
    }

    fn reset(&mut self) {
        self.cap.fill(1);
    }

    /// Augments from `s` to `t` until no path remains or the flow reaches
    /// `limit`.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let n = self.out.len();
        let mut flow = 0;
        let mut via = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        while flow < limit {
            via.fill(usize::MAX);
            via[s] = usize::MAX - 1;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.out[u] {
                    let w = self.head[a];
                    if self.cap[a] > 0 && via[w] == usize::MAX {
                        via[w] = a;
                        if w == t {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if via[t] == usize::MAX {
                break;
            }
            let mut v = t;
            while v != s {
                let a = via[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Vertices reachable from `s` in the residual network.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let w = self.head[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Complement of the vertices that can still reach `t` in the residual
    /// network.
    fn sink_side_complement(&self, t: usize) -> Vec<bool> {
        let mut reaches = vec![false; self.out.len()];
        reaches[t] = true;
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                // arc a^1 runs head[a] -> u
                let w = self.head[a];
                if self.cap[a ^ 1] > 0 && !reaches[w] {
                    reaches[w] = true;
                    stack.push(w);
                }
            }
        }
        reaches.into_iter().map(|r| !r).collect()
    }
}

fn crossing_edges(g: &Graph, side: &[bool]) -> EdgeCut {
    g.edges()
        .iter()
        .copied()
        .filter(|e| side[e.lo()] != side[e.hi()])
        .collect()
}

fn split(side: &[bool]) -> (Vec<usize>, Vec<usize>) {
    (0..side.len()).partition(|&v| side[v])
}

/// `κ'(g)` with a witness cut. Fixes source 0 and takes the smallest
/// `0 → t` max-flow over all sinks; ties keep the lowest sink id.
pub fn edge_connectivity(g: &Graph) -> Result<MinCutResult> {
    let n = g.order();
    if n < 2 {
        return Err(Error::TooFewVertices { required: 2, order: n });
    }
    if !g.is_connected()? {
        let labels = g.component_labels();
        let side: Vec<bool> = labels.iter().map(|&c| c == labels[0]).collect();
        return Ok(MinCutResult {
            value: 0,
            witness: EdgeCut::new(),
            partition: split(&side),
        });
    }
    let mut net = UnitFlow::new(g);
    let mut best = usize::MAX;
    let mut best_side = Vec::new();
    for t in 1..n {
        net.reset();
        let f = net.max_flow(0, t, best);
        if f < best {
            best = f;
            best_side = net.source_side(0);
        }
    }
    Ok(MinCutResult {
        value: best,
        witness: crossing_edges(g, &best_side),
        partition: split(&best_side),
    })
}

/// Local `s`–`t` edge connectivity.
pub fn st_edge_connectivity(g: &Graph, s: usize, t: usize) -> Result<usize> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::InvalidParameters("source equals sink".into()));
    }
    let mut net = UnitFlow::new(g);
    Ok(net.max_flow(s, t, usize::MAX))
}

/// `κ'` by brute force: the smallest `k` such that some `k`-subset of edges
/// disconnects. Independent of the flow code; used as an oracle.
pub fn edge_connectivity_exhaustive(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n < 2 {
        return Err(Error::TooFewVertices { required: 2, order: n });
    }
    let mut checker = DisconnectChecker::new(g);
    for k in 0..=g.edge_count() {
        let mut hit = false;
        for_each_combination(g.edge_count(), k, |subset| {
            hit = checker.disconnected_without(subset);
            !hit
        });
        if hit {
            return Ok(k);
        }
    }
    unreachable!("removing every edge of a graph on >= 2 vertices disconnects it")
}

/// Connectivity test after deleting a set of edge ids, reusing scratch
/// state across calls.
pub struct DisconnectChecker {
    ends: Vec<(usize, usize)>,
    n: usize,
    repr: CheckerRepr,
}

enum CheckerRepr {
    Mask(Vec<u64>),
    Lists {
        adj: Vec<Vec<(usize, usize)>>,
        removed: Vec<bool>,
        seen: Vec<bool>,
        stack: Vec<usize>,
    },
}

impl DisconnectChecker {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.lo(), e.hi())).collect();
        let repr = if n <= 64 {
            let mut masks = vec![0u64; n];
            for &(u, v) in &ends {
                masks[u] |= 1 << v;
                masks[v] |= 1 << u;
            }
            CheckerRepr::Mask(masks)
        } else {
            let mut adj = vec![Vec::new(); n];
            for (i, &(u, v)) in ends.iter().enumerate() {
                adj[u].push((v, i));
                adj[v].push((u, i));
            }
            CheckerRepr::Lists {
                adj,
                removed: vec![false; ends.len()],
                seen: vec![false; n],
                stack: Vec::new(),
            }
        };
        DisconnectChecker { ends, n, repr }
    }

    pub fn disconnected_without(&mut self, edge_ids: &[usize]) -> bool {
        if self.n < 2 {
            return false;
        }
        match &mut self.repr {
            CheckerRepr::Mask(masks) => {
                for &i in edge_ids {
                    let (u, v) = self.ends[i];
                    masks[u] &= !(1 << v);
                    masks[v] &= !(1 << u);
                }
                let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
                let mut seen = 1u64;
                let mut frontier = 1u64;
                while frontier != 0 {
                    let mut next = 0u64;
                    let mut f = frontier;
                    while f != 0 {
                        next |= masks[f.trailing_zeros() as usize];
                        f &= f - 1;
                    }
                    frontier = next & !seen;
                    seen |= next;
                }
                for &i in edge_ids {
                    let (u, v) = self.ends[i];
                    masks[u] |= 1 << v;
                    masks[v] |= 1 << u;
                }
                seen != full
            }
            CheckerRepr::Lists { adj, removed, seen, stack } => {
                for &i in edge_ids {
                    removed[i] = true;
                }
                seen.fill(false);
                seen[0] = true;
                stack.clear();
                stack.push(0);
                let mut count = 1;
                while let Some(u) = stack.pop() {
                    for &(w, i) in &adj[u] {
                        if !removed[i] && !seen[w] {
                            seen[w] = true;
                            count += 1;
                            stack.push(w);
                        }
                    }
                }
                for &i in edge_ids {
                    removed[i] = false;
                }
                count != self.n
            }
        }
    }
}

/// Calls `f` on every `k`-subset of `0..m` in lexicographic order until it
/// returns `false`.
pub fn for_each_combination<F>(m: usize, k: usize, mut f: F)
where
    F: FnMut(&[usize]) -> bool,
{
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All minimum edge cuts of a connected graph. Scans every `κ'`-subset when
/// that fits in `budget`; otherwise collects the distinct minimum `s`–`t`
/// witnesses over all vertex pairs and reports the list as non-exhaustive.
pub fn enumerate_min_cuts(g: &Graph, budget: u64) -> Result<CutEnumeration> {
    let base = edge_connectivity(g)?;
    if base.value == 0 {
        return Err(Error::Disconnected);
    }
    let value = base.value;
    let m = g.edge_count();
    let subsets = binomial(m, value);

    if subsets <= u128::from(budget) {
        let mut checker = DisconnectChecker::new(g);
        let edges = g.edges();
        let mut cuts = Vec::new();
        for_each_combination(m, value, |subset| {
            if checker.disconnected_without(subset) {
                cuts.push(subset.iter().map(|&i| edges[i]).collect());
            }
            true
        });
        return Ok(CutEnumeration { value, cuts, exhaustive: true, subsets });
    }

    let mut found: BTreeSet<EdgeCut> = BTreeSet::new();
    found.insert(base.witness);
    let mut net = UnitFlow::new(g);
    for s in 0..g.order() {
        for t in s + 1..g.order() {
            net.reset();
            if net.max_flow(s, t, value + 1) == value {
                found.insert(crossing_edges(g, &net.source_side(s)));
                found.insert(crossing_edges(g, &net.sink_side_complement(t)));
            }
        }
    }
    Ok(CutEnumeration {
        value,
        cuts: found.into_iter().collect(),
        exhaustive: false,
        subsets,
    })
}

/// The vertex whose incident edges are exactly `cut`, lowest id first.
pub fn is_vertex_star(g: &Graph, cut: &EdgeCut) -> Option<usize> {
    let candidates: Vec<usize> = match cut.iter().next() {
        Some(e) => vec![e.lo(), e.hi()],
        None => (0..g.order()).collect(),
    };
    candidates.into_iter().find(|&v| {
        g.neighbors(v).len() == cut.size()
            && g.neighbors(v).iter().all(|&w| cut.contains(&Edge::new(v, w)))
    })
}

/// Super edge connectivity by enumeration. A non-star minimum cut settles
/// `false` even without exhaustive enumeration; `true` needs the full scan,
/// otherwise the answer is [`Error::BudgetExceeded`].
pub fn is_super_edge_connected_bruteforce(g: &Graph, budget: u64) -> Result<bool> {
    let cuts = enumerate_min_cuts(g, budget)?;
    if cuts.cuts.iter().any(|c| is_vertex_star(g, c).is_none()) {
        return Ok(false);
    }
    if cuts.exhaustive {
        Ok(true)
    } else {
        Err(Error::BudgetExceeded { needed: cuts.subsets, budget })
    }
}
