//! Test-only oracles, written without the library's flow, enumeration or
//! isomorphism code.

#![allow(dead_code)]

use std::io::Write;

use tensor_cut::Graph;

/// Adjacency matrix view.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut m = vec![vec![false; n]; n];
    for e in g.edges() {
        m[e.lo()][e.hi()] = true;
        m[e.hi()][e.lo()] = true;
    }
    m
}

fn connected_with(n: usize, edges: &[(usize, usize)], skip: &[bool]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut parts = n;
    for (i, &(u, v)) in edges.iter().enumerate() {
        if skip[i] {
            continue;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            parts -= 1;
        }
    }
    parts <= 1
}

/// Smallest number of edges whose removal disconnects `g`, by trying every
/// subset in order of size (union-find connectivity).
pub fn brute_kappa(g: &Graph) -> usize {
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.lo(), e.hi())).collect();
    let m = edges.len();
    let mut skip = vec![false; m];
    if !connected_with(n, &edges, &skip) {
        return 0;
    }
    for k in 1..=m {
        let mut found = false;
        subsets(m, k, &mut |idx| {
            skip.iter_mut().for_each(|s| *s = false);
            for &i in idx {
                skip[i] = true;
            }
            if !connected_with(n, &edges, &skip) {
                found = true;
            }
            !found
        });
        if found {
            return k;
        }
    }
    m
}

/// Every `k`-subset of edges whose removal disconnects `g`, as sorted lists
/// of `(lo, hi)` pairs.
pub fn brute_disconnecting_subsets(g: &Graph, k: usize) -> Vec<Vec<(usize, usize)>> {
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.lo(), e.hi())).collect();
    let mut skip = vec![false; edges.len()];
    let mut out = Vec::new();
    subsets(edges.len(), k, &mut |idx| {
        skip.iter_mut().for_each(|s| *s = false);
        for &i in idx {
            skip[i] = true;
        }
        if !connected_with(n, &edges, &skip) {
            out.push(idx.iter().map(|&i| edges[i]).collect());
        }
        true
    });
    out
}

fn subsets(m: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if !rec(i + 1, m, k, cur, f) {
                return false;
            }
            cur.pop();
        }
        true
    }
    rec(0, m, k, &mut Vec::new(), f);
}

/// Isomorphism by trying every permutation. Only for n <= 8.
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    assert!(n <= 8);
    if n != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (ma, mb) = (matrix(a), matrix(b));
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|i| (0..n).all(|j| ma[i][j] == mb[perm[i]][perm[j]])) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Whether `g` has a cycle of odd length, by searching simple paths.
pub fn has_odd_cycle(g: &Graph) -> bool {
    let m = matrix(g);
    let n = g.order();
    fn dfs(m: &[Vec<bool>], start: usize, v: usize, len: usize, used: &mut [bool]) -> bool {
        for w in 0..m.len() {
            if !m[v][w] {
                continue;
            }
            if w == start && len >= 3 && len % 2 == 1 {
                return true;
            }
            if !used[w] && w > start {
                used[w] = true;
                if dfs(m, start, w, len + 1, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    (0..n).any(|s| {
        let mut used = vec![false; n];
        used[s] = true;
        dfs(&m, s, s, 1, &mut used)
    })
}

/// Writes straight to the process stderr so the line survives libtest's
/// output capture.
pub fn report_line(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

/// Component label per vertex after deleting `removed` (pairs in either
/// order), labels numbered from 0 in order of first vertex.
pub fn labels_without(g: &Graph, removed: &[(usize, usize)]) -> Vec<usize> {
    let n = g.order();
    let mut m = matrix(g);
    for &(u, v) in removed {
        m[u][v] = false;
        m[v][u] = false;
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if m[v][w] && label[w] == usize::MAX {
                    label[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    label
}

pub fn components_without(g: &Graph, removed: &[(usize, usize)]) -> usize {
    labels_without(g, removed).into_iter().max().map_or(0, |m| m + 1)
}

/// Global edge connectivity as the minimum over `t` of a BFS augmenting-path
/// max flow from vertex 0 on a capacity matrix.
pub fn matrix_kappa(g: &Graph) -> usize {
    let n = g.order();
    let base: Vec<Vec<i32>> = matrix(g)
        .into_iter()
        .map(|row| row.into_iter().map(i32::from).collect())
        .collect();
    (1..n)
        .map(|t| {
            let mut cap = base.clone();
            let mut flow = 0;
            loop {
                let mut prev = vec![usize::MAX; n];
                prev[0] = 0;
                let mut queue = std::collections::VecDeque::from([0]);
                while let Some(v) = queue.pop_front() {
                    for w in 0..n {
                        if cap[v][w] > 0 && prev[w] == usize::MAX {
                            prev[w] = v;
                            queue.push_back(w);
                        }
                    }
                }
                if prev[t] == usize::MAX {
                    break flow;
                }
                let mut w = t;
                while w != 0 {
                    let v = prev[w];
                    cap[v][w] -= 1;
                    cap[w][v] += 1;
                    w = v;
                }
                flow += 1;
            }
        })
        .min()
        .unwrap_or(0)
}
