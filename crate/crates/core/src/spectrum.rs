//! Spectra stored through their divisibility-maximal members.
//!
//! A spectrum ω(G) is closed under taking divisors, so it is determined by the
//! antichain μ(G) of its maximal elements. Membership `n ∈ ω` is "n divides
//! some member of μ" and the prime graph joins `p != q` when `pq ∈ ω`.

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, FactoredNat};
use crate::error::{Error, Result};
use crate::gkgraph::PrimeGraph;

/// The divisibility-maximal element orders of a group, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<FactoredNat>", into = "Vec<FactoredNat>")]
pub struct MuSet {
    maximal: Vec<FactoredNat>,
}

impl MuSet {
    /// Keeps exactly the members of `orders` that divide no other member.
    pub fn normalize<I: IntoIterator<Item = FactoredNat>>(orders: I) -> Result<Self> {
        let mut all: Vec<FactoredNat> = orders.into_iter().collect();
        if all.is_empty() {
            return Err(Error::EmptyMu);
        }
        all.sort();
        all.dedup();
        let maximal = all
            .iter()
            .enumerate()
            .filter(|(i, a)| {
                !all.iter()
                    .enumerate()
                    .any(|(j, b)| *i != j && a.divides(b))
            })
            .map(|(_, a)| a.clone())
            .collect();
        Ok(Self { maximal })
    }

    pub fn from_u64s<I: IntoIterator<Item = u64>>(orders: I) -> Result<Self> {
        let orders = orders
            .into_iter()
            .map(FactoredNat::from_u64)
            .collect::<Result<Vec<_>>>()?;
        Self::normalize(orders)
    }

    pub fn members(&self) -> &[FactoredNat] {
        &self.maximal
    }

    /// Members as machine integers, when they all fit.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.maximal.iter().map(FactoredNat::to_u64).collect()
    }

    pub fn len(&self) -> usize {
        self.maximal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    /// `n ∈ ω`, i.e. `n` divides some member.
    pub fn omega_contains(&self, n: &FactoredNat) -> bool {
        n.is_one() || self.maximal.iter().any(|m| n.divides(m))
    }

    pub fn omega_contains_u64(&self, n: u64) -> bool {
        FactoredNat::from_u64(n).is_ok_and(|n| self.omega_contains(&n))
    }

    /// Sorted union of the prime supports of the members.
    pub fn prime_support(&self) -> Vec<u64> {
        let mut primes: Vec<u64> = self.maximal.iter().flat_map(FactoredNat::pi).collect();
        primes.sort_unstable();
        primes.dedup();
        primes
    }

    /// The prime graph on `vertex_primes` induced by this spectrum.
    pub fn graph(&self, vertex_primes: &[u64]) -> Result<PrimeGraph> {
        graph_from_mu(self, vertex_primes)
    }
}

impl TryFrom<Vec<FactoredNat>> for MuSet {
    type Error = Error;

    fn try_from(v: Vec<FactoredNat>) -> Result<Self> {
        Self::normalize(v)
    }
}

impl From<MuSet> for Vec<FactoredNat> {
    fn from(m: MuSet) -> Self {
        m.maximal
    }
}

impl std::fmt::Display for MuSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.maximal.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match m.to_u64() {
                Some(v) => write!(f, "{v}")?,
                None => write!(f, "{m}")?,
            }
        }
        f.write_str("}")
    }
}

/// Edge `{p, q}` iff `p != q` and `pq` divides some member of `mu`.
pub fn graph_from_mu(mu: &MuSet, vertex_primes: &[u64]) -> Result<PrimeGraph> {
    if let Some(stray) = mu
        .prime_support()
        .into_iter()
        .find(|p| !vertex_primes.contains(p))
    {
        return Err(Error::InconsistentVertexSet(format!(
            "prime {stray} divides a member of mu but is not a vertex"
        )));
    }
    if let Some(&bad) = vertex_primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::InconsistentVertexSet(format!("{bad} is not prime")));
    }
    let mut edges = Vec::new();
    for (i, &p) in vertex_primes.iter().enumerate() {
        for &q in &vertex_primes[i + 1..] {
            if mu
                .members()
                .iter()
                .any(|m| m.exponent(p) > 0 && m.exponent(q) > 0)
            {
                edges.push((p, q));
            }
        }
    }
    PrimeGraph::new(vertex_primes.to_vec(), edges)
}
