//! Prime graphs and the quantities read off them: degree patterns,
//! connected components, order components, independence numbers and the
//! structural gates used in the case analyses.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, FactoredNat};
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`PrimeGraph::independence`].
pub const INDEPENDENCE_CAP: usize = 16;

const MAX_VERTICES: usize = 64;

/// A simple graph on a strictly increasing list of primes.
///
/// Adjacency is kept as one bitmask per vertex, indexed by position in the
/// sorted vertex list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeGraph {
    vertices: Vec<u64>,
    adj: Vec<u64>,
}

impl PrimeGraph {
    pub fn new<I>(vertices: Vec<u64>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut g = Self::empty(vertices)?;
        for (p, q) in edges {
            if p == q {
                return Err(Error::InvalidArgument(format!("self-loop at {p}")));
            }
            let i = g.require_index(p)?;
            let j = g.require_index(q)?;
            g.adj[i] |= 1 << j;
            g.adj[j] |= 1 << i;
        }
        Ok(g)
    }

    pub fn empty(vertices: Vec<u64>) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::CapExceeded {
                found: vertices.len(),
                cap: MAX_VERTICES,
            });
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "vertex primes must be strictly increasing".into(),
            ));
        }
        if let Some(&bad) = vertices.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidArgument(format!("{bad} is not prime")));
        }
        let adj = vec![0; vertices.len()];
        Ok(Self { vertices, adj })
    }

    /// Builds from positional adjacency masks; masks must be symmetric and loop-free.
    pub(crate) fn from_masks(vertices: Vec<u64>, adj: Vec<u64>) -> Self {
        debug_assert_eq!(vertices.len(), adj.len());
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(i, &m)| m >> i & 1 == 0
                && (0..adj.len()).all(|j| (m >> j & 1) == (adj[j] >> i & 1))));
        Self { vertices, adj }
    }

    fn require_index(&self, p: u64) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::InvalidArgument(format!("{p} is not a vertex")))
    }

    pub fn index_of(&self, p: u64) -> Option<usize> {
        self.vertices.binary_search(&p).ok()
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Positional adjacency bitmasks.
    pub fn masks(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, p: u64, q: u64) -> bool {
        match (self.index_of(p), self.index_of(q)) {
            (Some(i), Some(j)) => self.adj[i] >> j & 1 == 1,
            _ => false,
        }
    }

    /// Edges as `(smaller, larger)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                if self.adj[i] >> j & 1 == 1 {
                    out.push((self.vertices[i], self.vertices[j]));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree_pattern(&self) -> DegreePattern {
        DegreePattern(self.adj.iter().map(|m| m.count_ones() as usize).collect())
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    ///
    /// Since 2 is the smallest prime, the component containing 2 (if any)
    /// always comes first.
    pub fn components(&self) -> Vec<Vec<u64>> {
        let n = self.vertices.len();
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            out.push(self.mask_to_primes(comp));
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    fn mask_to_primes(&self, mut mask: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(mask.count_ones() as usize);
        while mask != 0 {
            out.push(self.vertices[mask.trailing_zeros() as usize]);
            mask &= mask - 1;
        }
        out
    }

    /// Components together with the order components of a group of order `order`.
    pub fn order_components(&self, order: &FactoredNat) -> Result<OrderComponents> {
        if order.pi() != self.vertices {
            return Err(Error::InconsistentVertexSet(format!(
                "pi({order}) = {:?} but the graph has vertices {:?}",
                order.pi(),
                self.vertices
            )));
        }
        let components = self.components();
        let order_components = components.iter().map(|c| order.restrict(c)).collect();
        Ok(OrderComponents {
            components,
            order_components,
        })
    }

    /// Exhaustive independent-set search over all vertex subsets.
    pub fn independence(&self) -> Result<Independence> {
        let n = self.vertices.len();
        if n > INDEPENDENCE_CAP {
            return Err(Error::CapExceeded {
                found: n,
                cap: INDEPENDENCE_CAP,
            });
        }
        let mut best = 0usize;
        let mut best_at = vec![0usize; n];
        let mut witness = 0u64;
        for mask in 0u64..(1u64 << n) {
            if !self.is_independent_mask(mask) {
                continue;
            }
            let size = mask.count_ones() as usize;
            let mut m = mask;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                best_at[v] = best_at[v].max(size);
                m &= m - 1;
            }
            if size > best || (size == best && lex_less(mask, witness)) {
                best = size;
                witness = mask;
            }
        }
        Ok(Independence {
            t: best,
            t_at: self.vertices.iter().copied().zip(best_at).collect(),
            witness: self.mask_to_primes(witness),
        })
    }

    fn is_independent_mask(&self, mask: u64) -> bool {
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            if self.adj[v] & mask != 0 {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    /// The lexicographically first independent triple, if any.
    pub fn independent_triple(&self) -> Option<[u64; 3]> {
        let n = self.vertices.len();
        for a in 0..n {
            for b in a + 1..n {
                if self.adj[a] >> b & 1 == 1 {
                    continue;
                }
                let free = !(self.adj[a] | self.adj[b]) & !((1u64 << (b + 1)) - 1);
                let free = if n < 64 { free & ((1u64 << n) - 1) } else { free };
                if free != 0 {
                    let c = free.trailing_zeros() as usize;
                    return Some([self.vertices[a], self.vertices[b], self.vertices[c]]);
                }
            }
        }
        None
    }

    /// `true` iff exactly two components and both are cliques.
    pub fn has_two_complete_components(&self) -> bool {
        let comps = self.components();
        comps.len() == 2
            && comps.iter().all(|c| {
                let mask = c
                    .iter()
                    .filter_map(|&p| self.index_of(p))
                    .fold(0u64, |m, i| m | 1 << i);
                c.iter()
                    .filter_map(|&p| self.index_of(p))
                    .all(|i| self.adj[i] | 1 << i == mask)
            })
    }

    pub fn structure_gates(&self) -> StructureGates {
        let nonsolvable_witness = self.independent_triple();
        let almost_simple_gate = self.index_of(2).map(|i| {
            let others = ((1u128 << self.vertices.len()) - 1) as u64 & !(1u64 << i);
            let has_non_neighbour = others & !self.adj[i] != 0;
            nonsolvable_witness.is_some() && has_non_neighbour
        });
        StructureGates {
            almost_simple_gate,
            nonsolvable_witness,
            two_frobenius_shape: self.has_two_complete_components(),
        }
    }

    /// Graphviz text: edges once with the smaller endpoint first, then
    /// isolated vertices, all in ascending order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph gk {");
        for (p, q) in self.edges() {
            out.push_str(&format!(" \"{p}\" -- \"{q}\";"));
        }
        for (i, &p) in self.vertices.iter().enumerate() {
            if self.adj[i] == 0 {
                out.push_str(&format!(" \"{p}\";"));
            }
        }
        out.push_str(" }");
        out
    }

    /// The full JSON-facing summary for a group of order `order`.
    pub fn report(&self, order: &FactoredNat) -> Result<GraphReport> {
        let oc = self.order_components(order)?;
        let ind = self.independence()?;
        Ok(GraphReport {
            vertices: self.vertices.clone(),
            edges: self.edges(),
            pattern: self.degree_pattern(),
            components: oc.components,
            order_components: oc.order_components,
            t: ind.t,
            t_at: ind.t_at,
        })
    }
}

/// Lexicographic order on the sorted index lists encoded by two masks.
fn lex_less(a: u64, b: u64) -> bool {
    let (mut a, mut b) = (a, b);
    loop {
        match (a, b) {
            (0, 0) => return false,
            (0, _) => return true,
            (_, 0) => return false,
            _ => {
                let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
                if x != y {
                    return x < y;
                }
                a &= a - 1;
                b &= b - 1;
            }
        }
    }
}

impl fmt::Debug for PrimeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrimeGraph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Serialize for PrimeGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            vertices: &'a [u64],
            edges: Vec<(u64, u64)>,
        }
        Repr {
            vertices: &self.vertices,
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PrimeGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            vertices: Vec<u64>,
            edges: Vec<(u64, u64)>,
        }
        let r = Repr::deserialize(d)?;
        PrimeGraph::new(r.vertices, r.edges).map_err(serde::de::Error::custom)
    }
}

/// Vertex degrees listed in ascending order of the prime vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreePattern(pub Vec<usize>);

impl DegreePattern {
    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for DegreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for DegreePattern {
    type Err = Error;

    /// Accepts `3,2,3` as well as the printed form `(3, 2, 3)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(DegreePattern(Vec::new()));
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad degree `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(DegreePattern)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderComponents {
    pub components: Vec<Vec<u64>>,
    pub order_components: Vec<FactoredNat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Independence {
    /// Independence number.
    pub t: usize,
    /// Largest independent set containing each vertex.
    pub t_at: BTreeMap<u64, usize>,
    /// Lexicographically smallest maximum independent set.
    pub witness: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureGates {
    /// `t >= 3 && t(2) >= 2`; `None` when 2 is not a vertex.
    pub almost_simple_gate: Option<bool>,
    pub nonsolvable_witness: Option<[u64; 3]>,
    pub two_frobenius_shape: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub vertices: Vec<u64>,
    pub edges: Vec<(u64, u64)>,
    pub pattern: DegreePattern,
    pub components: Vec<Vec<u64>>,
    pub order_components: Vec<FactoredNat>,
    pub t: usize,
    pub t_at: BTreeMap<u64, usize>,
}
