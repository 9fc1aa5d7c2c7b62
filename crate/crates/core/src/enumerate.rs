//! Non-isomorphic small-graph generation by vertex extension and canonical
//! deduplication.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::{canonical_labeling, CanonicalForm};

pub const MAX_ENUMERATION_ORDER: usize = 8;

/// One canonical representative per isomorphism class on `n` vertices,
/// ordered by canonical code.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(nonisomorphic_graphs_up_to(n)?.pop().unwrap_or_default())
}

/// Index `k` of the result holds every class on `k` vertices, `0..=max`.
pub fn nonisomorphic_graphs_up_to(max: usize) -> Result<Vec<Vec<Graph>>> {
    if max > MAX_ENUMERATION_ORDER {
        return Err(Error::InvalidParameters(format!(
            "internal enumeration stops at n = {MAX_ENUMERATION_ORDER}; supply a graph6 corpus for n = {max}"
        )));
    }
    let mut levels = vec![vec![Graph::empty(0)]];
    for n in 1..=max {
        let mut seen: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
        for base in &levels[n - 1] {
            for mask in 0u32..(1 << (n - 1)) {
                let nbrs: Vec<usize> = (0..n - 1).filter(|&i| mask >> i & 1 == 1).collect();
                let g = base.with_new_vertex(&nbrs)?;
                let (form, perm) = canonical_labeling(&g)?;
                seen.entry(form).or_insert_with(|| g.relabel(&perm));
            }
        }
        levels.push(seen.into_values().collect());
    }
    Ok(levels)
}

/// Connected classes on `n >= 1` vertices.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(nonisomorphic_graphs(n)?
        .into_iter()
        .filter(|g| g.is_connected().unwrap_or(false))
        .collect())
}

/// Connected classes with `lo <= n <= hi`.
pub fn connected_graphs_between(lo: usize, hi: usize) -> Result<Vec<Graph>> {
    let levels = nonisomorphic_graphs_up_to(hi)?;
    Ok(levels
        .into_iter()
        .enumerate()
        .filter(|(n, _)| *n >= lo.max(1))
        .flat_map(|(_, gs)| gs)
        .filter(|g| g.is_connected().unwrap_or(false))
        .collect())
}
