//! Small-graph isomorphism: canonical labeling by color refinement plus
//! individualization, and a backtracking isomorphism test.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order whose upper-triangle code fits in a `u64`.
pub const MAX_CANONICAL_ORDER: usize = 11;

/// Isomorphism-invariant code: the lexicographically largest upper-triangle
/// adjacency bit string over all labelings reachable by the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub order: u8,
    pub code: u64,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(form, _)| form)
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let (_, perm) = canonical_labeling(g)?;
    Ok(g.relabel(&perm))
}

/// Returns the canonical form and a map `vertex -> canonical position`.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::InvalidParameters(format!(
            "canonical form supports n <= {MAX_CANONICAL_ORDER}, got {n}"
        )));
    }
    let mut colors = vec![0u32; n];
    refine(g, &mut colors);
    let mut best: Option<(u64, Vec<usize>)> = None;
    search(g, colors, &mut best);
    let (code, perm) = best.unwrap_or((0, Vec::new()));
    Ok((CanonicalForm { order: n as u8, code }, perm))
}

fn refine(g: &Graph, colors: &mut [u32]) {
    let n = colors.len();
    let mut classes = distinct(colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        for (v, sig) in sigs.iter().enumerate() {
            colors[v] = uniq.binary_search(sig).expect("signature present") as u32;
        }
        if uniq.len() == classes {
            return;
        }
        classes = uniq.len();
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(g: &Graph, colors: Vec<u32>, best: &mut Option<(u64, Vec<usize>)>) {
    let n = colors.len();
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c as usize] += 1;
    }
    let Some(target) = counts.iter().position(|&k| k > 1) else {
        let perm: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let code = code_under(g, &perm);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, perm));
        }
        return;
    };
    let target = target as u32;
    for v in (0..n).filter(|&v| colors[v] == target) {
        let mut next: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(w, &c)| if c > target || (c == target && w != v) { c + 1 } else { c })
            .collect();
        refine(g, &mut next);
        search(g, next, best);
    }
}

/// Upper-triangle bits in column order with vertex `v` placed at `perm[v]`.
fn code_under(g: &Graph, perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut at = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        at[p] = v;
    }
    let mut code = 0u64;
    for j in 1..n {
        for i in 0..j {
            code = (code << 1) | u64::from(g.has_edge(at[i], at[j]));
        }
    }
    code
}

/// Backtracking isomorphism test with degree and adjacency pruning. Works for
/// any order; intended for graphs of a few dozen vertices at most.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// A bijection `map` with `uv ∈ E(a) ⇔ map[u]map[v] ∈ E(b)`, if one exists.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return None;
    }
    let deg_seq = |g: &Graph| {
        let mut d: Vec<usize> = (0..g.order()).map(|v| g.neighbors(v).len()).collect();
        d.sort_unstable();
        d
    };
    if deg_seq(a) != deg_seq(b) {
        return None;
    }

    // Visit `a` in BFS order so each new vertex tends to have mapped neighbors.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            let u = order[i];
            for &w in a.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    a: &Graph,
    b: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&u) = order.get(depth) else {
        return true;
    };
    let du = a.neighbors(u).len();
    for cand in 0..b.order() {
        if used[cand] || b.neighbors(cand).len() != du {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| a.has_edge(u, w) == b.has_edge(cand, map[w]));
        if !consistent {
            continue;
        }
        map[u] = cand;
        used[cand] = true;
        if extend(a, b, order, depth + 1, map, used) {
            return true;
        }
        used[cand] = false;
        map[u] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in all_permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let form = canonical_form(&g).unwrap();
        for perm in all_permutations(5) {
            assert_eq!(canonical_form(&g.relabel(&perm)).unwrap(), form);
        }
    }

    #[test]
    fn distinguishes_cospectral_style_pairs() {
        // C_6 vs two triangles: both 2-regular on 6 vertices
        let c6 = Graph::cycle(6).unwrap();
        let two_k3 = Graph::disjoint_union(&Graph::complete(3), &Graph::complete(3));
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&two_k3).unwrap());
        assert!(!is_isomorphic(&c6, &two_k3));
    }

    #[test]
    fn backtracking_agrees_on_shuffled_graphs() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        let h = g.relabel(&[5, 3, 1, 0, 2, 4]);
        let map = find_isomorphism(&g, &h).unwrap();
        for e in g.edges() {
            assert!(h.has_edge(map[e.lo()], map[e.hi()]));
        }
    }

    #[test]
    fn rejects_large_orders() {
        assert!(canonical_form(&Graph::empty(12)).is_err());
    }
}
