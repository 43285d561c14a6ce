//! All labeled prime graphs with a prescribed degree pattern, and their
//! classes under permutations of equal-degree vertices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{is_prime, FactoredNat};
use crate::error::{Error, Result};
use crate::gkgraph::{DegreePattern, PrimeGraph, StructureGates};

/// Largest vertex count accepted by the enumeration.
pub const REALIZER_CAP: usize = 10;

/// A sorted prime vertex set with the degree each vertex must have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternInstance {
    primes: Vec<u64>,
    pattern: DegreePattern,
}

impl PatternInstance {
    pub fn new(primes: Vec<u64>, pattern: DegreePattern) -> Result<Self> {
        if primes.len() > REALIZER_CAP {
            return Err(Error::CapExceeded {
                found: primes.len(),
                cap: REALIZER_CAP,
            });
        }
        if primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "primes must be strictly increasing".into(),
            ));
        }
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidArgument(format!("{bad} is not prime")));
        }
        if pattern.len() != primes.len() {
            return Err(Error::InvalidArgument(format!(
                "pattern {pattern} has {} entries for {} primes",
                pattern.len(),
                primes.len()
            )));
        }
        Ok(Self { primes, pattern })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn pattern(&self) -> &DegreePattern {
        &self.pattern
    }

    /// Cheap necessary conditions; failing them means no realization.
    fn plausible(&self) -> bool {
        let k = self.primes.len();
        self.pattern.sum().is_multiple_of(2) && self.pattern.degrees().iter().all(|&d| d < k.max(1))
    }
}

/// Index of the pair `(i, j)`, `i < j`, in the lexicographic pair order
/// `(0,1), (0,2), .., (1,2), ..`.
fn pair_index(k: usize, i: usize, j: usize) -> usize {
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

/// Edge bitmask of `g`: bit `pair_index(i, j)` is set for each edge.
pub fn edge_mask(g: &PrimeGraph) -> u64 {
    let k = g.vertex_count();
    let masks = g.masks();
    let mut out = 0u64;
    for i in 0..k {
        for j in i + 1..k {
            if masks[i] >> j & 1 == 1 {
                out |= 1 << pair_index(k, i, j);
            }
        }
    }
    out
}

fn graph_from_edge_mask(vertices: &[u64], mask: u64) -> PrimeGraph {
    let k = vertices.len();
    let mut adj = vec![0u64; k];
    for i in 0..k {
        for j in i + 1..k {
            if mask >> pair_index(k, i, j) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    PrimeGraph::from_masks(vertices.to_vec(), adj)
}

/// Every simple graph on `inst.primes` whose degrees equal `inst.pattern`,
/// sorted by ascending [`edge_mask`].
///
/// Vertices are completed in order: vertex `i` picks its remaining
/// neighbours among later vertices that still have residual degree.
pub fn enumerate_graphs(inst: &PatternInstance) -> Vec<PrimeGraph> {
    if !inst.plausible() {
        return Vec::new();
    }
    let k = inst.primes.len();
    let mut residual: Vec<usize> = inst.pattern.degrees().to_vec();
    let mut adj = vec![0u64; k];
    let mut found = Vec::new();
    extend(0, &mut residual, &mut adj, &mut found);
    let mut graphs: Vec<PrimeGraph> = found
        .into_iter()
        .map(|a| PrimeGraph::from_masks(inst.primes.clone(), a))
        .collect();
    graphs.sort_by_key(edge_mask);
    graphs
}

fn extend(i: usize, residual: &mut [usize], adj: &mut [u64], found: &mut Vec<Vec<u64>>) {
    let k = residual.len();
    if i == k {
        found.push(adj.to_vec());
        return;
    }
    // a later vertex can only be joined to the k - i - 1 other unfinished ones
    if residual[i + 1..].iter().any(|&r| r > k - i - 1) {
        return;
    }
    let need = residual[i];
    let candidates: Vec<usize> = (i + 1..k).filter(|&j| residual[j] > 0).collect();
    if need > candidates.len() {
        return;
    }
    let mut chosen = Vec::with_capacity(need);
    choose(0, need, &candidates, &mut chosen, &mut |picked: &[usize]| {
        for &j in picked {
            residual[j] -= 1;
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        let saved = residual[i];
        residual[i] = 0;
        extend(i + 1, residual, adj, found);
        residual[i] = saved;
        for &j in picked {
            residual[j] += 1;
            adj[i] &= !(1 << j);
            adj[j] &= !(1 << i);
        }
    });
}

fn choose(
    start: usize,
    need: usize,
    pool: &[usize],
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if chosen.len() == need {
        visit(chosen);
        return;
    }
    let remaining = need - chosen.len();
    for idx in start..pool.len() {
        if pool.len() - idx < remaining {
            break;
        }
        chosen.push(pool[idx]);
        choose(idx + 1, need, pool, chosen, visit);
        chosen.pop();
    }
}

/// Reference enumeration: every edge subset, kept when the degrees match.
pub fn enumerate_graphs_naive(inst: &PatternInstance) -> Vec<PrimeGraph> {
    let k = inst.primes.len();
    let pairs = k * k.saturating_sub(1) / 2;
    (0u64..1 << pairs)
        .map(|m| graph_from_edge_mask(&inst.primes, m))
        .filter(|g| &g.degree_pattern() == inst.pattern())
        .collect()
}

/// One orbit of realizations under degree-preserving vertex permutations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphClass {
    /// The orbit member with the smallest edge mask.
    pub representative: PrimeGraph,
    pub members: Vec<PrimeGraph>,
}

impl GraphClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Permutations of positions that only move vertices among positions of
/// equal degree.
fn degree_preserving_perms(pattern: &DegreePattern) -> Vec<Vec<usize>> {
    let k = pattern.len();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &d) in pattern.degrees().iter().enumerate() {
        groups.entry(d).or_default().push(i);
    }
    let mut perms = vec![(0..k).collect::<Vec<usize>>()];
    for positions in groups.values() {
        let arrangements = permutations(positions);
        let mut next = Vec::with_capacity(perms.len() * arrangements.len());
        for base in &perms {
            for arr in &arrangements {
                let mut p = base.clone();
                for (src, &dst) in positions.iter().zip(arr) {
                    p[*src] = dst;
                }
                next.push(p);
            }
        }
        perms = next;
    }
    perms
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn permuted_mask(k: usize, mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    for i in 0..k {
        for j in i + 1..k {
            if mask >> pair_index(k, i, j) & 1 == 1 {
                let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                out |= 1 << pair_index(k, a, b);
            }
        }
    }
    out
}

/// Groups `graphs` into orbits under permutations of equal-degree
/// vertices. Classes come out sorted by representative mask; members keep
/// their input order.
pub fn classes_up_to_symmetry(graphs: &[PrimeGraph]) -> Result<Vec<GraphClass>> {
    let Some(first) = graphs.first() else {
        return Ok(Vec::new());
    };
    let vertices = first.vertices();
    let pattern = first.degree_pattern();
    let k = vertices.len();
    if k > REALIZER_CAP {
        return Err(Error::CapExceeded {
            found: k,
            cap: REALIZER_CAP,
        });
    }
    for g in graphs {
        if g.vertices() != vertices {
            return Err(Error::InconsistentVertexSet(
                "graphs to classify must share one vertex set".into(),
            ));
        }
        if g.degree_pattern() != pattern {
            return Err(Error::InvalidArgument(
                "graphs to classify must share one degree pattern".into(),
            ));
        }
    }
    let perms = degree_preserving_perms(&pattern);
    let mut classes: BTreeMap<u64, Vec<PrimeGraph>> = BTreeMap::new();
    for g in graphs {
        let m = edge_mask(g);
        let canon = perms
            .iter()
            .map(|p| permuted_mask(k, m, p))
            .min()
            .expect("identity permutation is always present");
        classes.entry(canon).or_default().push(g.clone());
    }
    Ok(classes
        .into_iter()
        .map(|(canon, members)| GraphClass {
            representative: graph_from_edge_mask(vertices, canon),
            members,
        })
        .collect())
}

/// One realization seen through the case split on connectivity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScreenedGraph {
    pub edges: Vec<(u64, u64)>,
    pub connected: bool,
    pub components: Vec<Vec<u64>>,
    pub order_components: Vec<FactoredNat>,
    pub gates: StructureGates,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseScreen {
    pub primes: Vec<u64>,
    pub pattern: DegreePattern,
    pub order: FactoredNat,
    pub connected: usize,
    pub disconnected: usize,
    pub realizations: Vec<ScreenedGraph>,
}

/// Connectivity, order components and structural gates of every
/// realization of `inst` for a group of order `order`.
pub fn case_screen(inst: &PatternInstance, order: &FactoredNat) -> Result<CaseScreen> {
    if order.pi() != inst.primes {
        return Err(Error::InconsistentVertexSet(format!(
            "pi({order}) = {:?} but the instance has primes {:?}",
            order.pi(),
            inst.primes
        )));
    }
    let realizations = enumerate_graphs(inst)
        .into_iter()
        .map(|g| {
            let oc = g.order_components(order)?;
            Ok(ScreenedGraph {
                edges: g.edges(),
                connected: oc.components.len() == 1,
                components: oc.components,
                order_components: oc.order_components,
                gates: g.structure_gates(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let connected = realizations.iter().filter(|r| r.connected).count();
    Ok(CaseScreen {
        primes: inst.primes.clone(),
        pattern: inst.pattern.clone(),
        order: order.clone(),
        connected,
        disconnected: realizations.len() - connected,
        realizations,
    })
}
