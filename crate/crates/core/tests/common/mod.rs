//! Reference implementations and fixed data shared by the integration tests.

#![allow(dead_code)]

pub mod figures;

use std::collections::BTreeMap;

use gk_core::PrimeGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

/// Independence data computed by greedy seeding plus branch and bound,
/// working from the edge list only.
pub struct OracleIndependence {
    pub t: usize,
    pub t_at: BTreeMap<u64, usize>,
}

pub fn oracle_independence(g: &PrimeGraph) -> OracleIndependence {
    let vs = g.vertices().to_vec();
    let n = vs.len();
    let mut adj = vec![vec![false; n]; n];
    for (p, q) in g.edges() {
        let i = vs.iter().position(|&v| v == p).unwrap();
        let j = vs.iter().position(|&v| v == q).unwrap();
        adj[i][j] = true;
        adj[j][i] = true;
    }
    let all: Vec<usize> = (0..n).collect();
    let t = max_independent(&adj, &all, 0, greedy(&adj, &all));
    let t_at = (0..n)
        .map(|r| {
            let rest: Vec<usize> = all.iter().copied().filter(|&v| v != r && !adj[r][v]).collect();
            let best = 1 + max_independent(&adj, &rest, 0, greedy(&adj, &rest));
            (vs[r], best)
        })
        .collect();
    OracleIndependence { t, t_at }
}

fn greedy(adj: &[Vec<bool>], cand: &[usize]) -> usize {
    let mut cand = cand.to_vec();
    let mut size = 0;
    while !cand.is_empty() {
        let &v = cand
            .iter()
            .min_by_key(|&&v| cand.iter().filter(|&&u| adj[v][u]).count())
            .unwrap();
        size += 1;
        cand.retain(|&u| u != v && !adj[v][u]);
    }
    size
}

fn max_independent(adj: &[Vec<bool>], cand: &[usize], current: usize, best: usize) -> usize {
    if cand.is_empty() {
        return best.max(current);
    }
    if current + cand.len() <= best {
        return best;
    }
    let v = cand[0];
    let with: Vec<usize> = cand[1..].iter().copied().filter(|&u| !adj[v][u]).collect();
    let best = max_independent(adj, &with, current + 1, best);
    max_independent(adj, &cand[1..], current, best)
}

/// Every simple graph on the first `k` primes.
pub fn all_graphs(k: usize) -> impl Iterator<Item = PrimeGraph> {
    let vs = PRIMES[..k].to_vec();
    let pairs: Vec<(u64, u64)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (PRIMES[i], PRIMES[j])))
        .collect();
    (0u64..1 << pairs.len()).map(move |m| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| m >> b & 1 == 1)
            .map(|(_, &e)| e);
        PrimeGraph::new(vs.clone(), edges).unwrap()
    })
}

/// `count` seeded random graphs on the first `k` primes, mixed densities.
pub fn random_graphs(k: usize, count: usize, seed: u64) -> Vec<PrimeGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vs = PRIMES[..k].to_vec();
    (0..count)
        .map(|_| {
            let density: f64 = [0.2, 0.5, 0.8][rng.gen_range(0..3)];
            let mut edges = Vec::new();
            for i in 0..k {
                for j in i + 1..k {
                    if rng.gen_bool(density) {
                        edges.push((vs[i], vs[j]));
                    }
                }
            }
            PrimeGraph::new(vs.clone(), edges).unwrap()
        })
        .collect()
}

/// Compares the library's independence data with the oracle; `Err` names
/// the first disagreement.
pub fn check_independence(g: &PrimeGraph) -> Result<(), String> {
    let lib = g.independence().map_err(|e| e.to_string())?;
    let ora = oracle_independence(g);
    if lib.t != ora.t || lib.t_at != ora.t_at {
        return Err(format!(
            "{g:?}: library t={} t_at={:?}, oracle t={} t_at={:?}",
            lib.t, lib.t_at, ora.t, ora.t_at
        ));
    }
    let w = &lib.witness;
    let independent = w
        .iter()
        .enumerate()
        .all(|(i, &p)| w[i + 1..].iter().all(|&q| !g.has_edge(p, q)));
    if w.len() != lib.t || !independent {
        return Err(format!("{g:?}: bad witness {w:?}"));
    }
    Ok(())
}
