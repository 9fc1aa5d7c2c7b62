use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::nonisomorphic_graphs_up_to;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6_lines};
use crate::theorems::dense_precondition;

use super::config::{CampaignConfig, GraphSource};

const RANDOM_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusPair {
    pub id: usize,
    pub g: Graph,
    pub h: Graph,
}

impl CorpusPair {
    pub fn g6(&self) -> (String, String) {
        (emit_graph6(&self.g), emit_graph6(&self.h))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Factor {
    G,
    H,
}

/// The cross product of the G and H corpora, numbered in order.
pub fn generate_corpus(config: &CampaignConfig) -> Result<Vec<CorpusPair>> {
    config.validate()?;
    let gs = factor_corpus(config, Factor::G)?;
    let hs = factor_corpus(config, Factor::H)?;
    let mut pairs = Vec::with_capacity(gs.len() * hs.len());
    for g in &gs {
        for h in &hs {
            pairs.push(CorpusPair {
                id: pairs.len(),
                g: g.clone(),
                h: h.clone(),
            });
        }
    }
    Ok(pairs)
}

fn factor_corpus(config: &CampaignConfig, which: Factor) -> Result<Vec<Graph>> {
    let (source, lo, hi) = match which {
        Factor::G => (&config.g_source, config.min_g_order, config.max_g_order),
        Factor::H => (&config.h_source, config.min_h_order, config.max_h_order),
    };
    // Connectivity-only runs keep disconnected and sparse factors.
    let open = config.connectivity_only();
    let keep = |g: &Graph| -> bool {
        if open {
            return true;
        }
        match which {
            Factor::G => g.is_connected().unwrap_or(false),
            Factor::H => dense_precondition(g),
        }
    };

    let graphs = match source {
        GraphSource::Enumerate => nonisomorphic_graphs_up_to(hi)?
            .into_iter()
            .skip(lo)
            .flatten()
            .filter(|g| keep(g))
            .collect(),
        GraphSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            parse_graph6_lines(&text)?
                .into_iter()
                .filter(|g| (lo..=hi).contains(&g.order()) && keep(g))
                .collect()
        }
        GraphSource::Random { count, min_degree } => {
            let stream = match which {
                Factor::G => 0x6a09_e667_f3bc_c908,
                Factor::H => 0xbb67_ae85_84ca_a73b,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ stream);
            let mut out = Vec::with_capacity(*count);
            for _ in 0..*count {
                let n = rng.gen_range(lo..=hi);
                let d = match (min_degree, which) {
                    (Some(d), _) => *d,
                    (None, Factor::G) => 1,
                    (None, Factor::H) => n / 2 + 1,
                };
                out.push(random_graph(&mut rng, n, d, !open)?);
            }
            out
        }
    };
    Ok(graphs)
}

/// Rejection sampling of `G(n, p)` with `p` drawn per attempt until the
/// minimum degree reaches `min_degree` (and the graph is connected when
/// asked).
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, min_degree: usize, connected: bool) -> Result<Graph> {
    if n == 0 || min_degree >= n.max(2) {
        return Err(Error::InfeasibleDegree(format!(
            "no simple graph on {n} vertices has minimum degree {min_degree}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    for _ in 0..RANDOM_ATTEMPTS {
        let lo = min_degree as f64 / (n - 1).max(1) as f64;
        let p: f64 = rng.gen_range(lo..=1.0);
        let edges: Vec<(usize, usize)> = pairs.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::new(n, edges)?;
        if g.min_degree()? >= min_degree && (!connected || g.is_connected()?) {
            return Ok(g);
        }
    }
    Err(Error::InfeasibleDegree(format!(
        "gave up drawing n = {n}, min degree {min_degree} after {RANDOM_ATTEMPTS} attempts"
    )))
}
