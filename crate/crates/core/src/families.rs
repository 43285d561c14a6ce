//! Closed-form spectra and orders for four families of simple groups of
//! Lie type: `L2(q)`, `L3(q)`, `U4(q)` and `S4(q)`.
//!
//! Every quantity is assembled from the factored pieces `q-1`, `q+1`,
//! `q^2+1`, `q^2+q+1` and `q^2-q+1`, so nothing larger than about `q^2`
//! ever has to be factored by trial division.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{factor, FactoredNat};
use crate::error::{Error, Result};
use crate::gkgraph::{DegreePattern, PrimeGraph};
use crate::spectrum::MuSet;

/// Upper bound on `q`; keeps `q^2 + q + 1` inside a `u64`.
const MAX_Q: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    L2,
    L3,
    U4,
    S4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::L2, Family::L3, Family::U4, Family::S4];

    fn letter_and_rank(self) -> (&'static str, u32) {
        match self {
            Family::L2 => ("L", 2),
            Family::L3 => ("L", 3),
            Family::U4 => ("U", 4),
            Family::S4 => ("S", 4),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = self.letter_and_rank();
        write!(f, "{l}{r}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().replace('_', "").as_str() {
            "L2" => Ok(Family::L2),
            "L3" => Ok(Family::L3),
            "U4" => Ok(Family::U4),
            "S4" => Ok(Family::S4),
            other => Err(Error::Parse(format!(
                "unknown family `{other}` (expected L2, L3, U4 or S4)"
            ))),
        }
    }
}

/// A family together with a prime power `q = p^n` it applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub q: u64,
    pub p: u64,
    pub n: u32,
}

impl FamilySpec {
    pub fn new(family: Family, q: u64) -> Result<Self> {
        if !(2..MAX_Q).contains(&q) {
            return Err(Error::InvalidArgument(format!("q = {q} out of range")));
        }
        let f = factor(q)?;
        let mut it = f.factors();
        let (p, n) = match (it.next(), it.next()) {
            (Some(pe), None) => pe,
            _ => {
                return Err(Error::InvalidArgument(format!("q = {q} is not a prime power")));
            }
        };
        let ok = match family {
            Family::L2 | Family::L3 => p != 2,
            Family::S4 => p > 3,
            Family::U4 => true,
        };
        if !ok {
            return Err(Error::LemmaPrecondition(format!(
                "{family} spectrum formula does not cover characteristic {p} (q = {q})"
            )));
        }
        Ok(Self { family, q, p, n })
    }

    /// Catalog-style name, e.g. `L_3(11)`.
    pub fn name(&self) -> String {
        let (l, r) = self.family.letter_and_rank();
        format!("{l}_{r}({})", self.q)
    }

    fn pieces(&self) -> Result<Pieces> {
        let q = self.q;
        Ok(Pieces {
            p: FactoredNat::prime_power(self.p, 1)?,
            q: FactoredNat::prime_power(self.p, self.n)?,
            qm1: factor(q - 1)?,
            qp1: factor(q + 1)?,
            q2p1: factor(q * q + 1)?,
            q2pq1: factor(q * q + q + 1)?,
            q2mq1: factor(q * q - q + 1)?,
        })
    }

    /// The maximal element orders, normalized to an antichain.
    pub fn mu(&self) -> Result<MuSet> {
        let x = self.pieces()?;
        let q = self.q;
        let small = |v: u64| factor(v).expect("nonzero constant");
        let q2m1 = &x.qm1 * &x.qp1;
        let members: Vec<FactoredNat> = match self.family {
            Family::L2 => vec![
                x.p.clone(),
                x.qm1.div_exact(&small(2))?,
                x.qp1.div_exact(&small(2))?,
            ],
            Family::L3 if q % 3 != 1 => vec![x.q2pq1.clone(), q2m1.clone(), &x.p * &x.qm1],
            Family::L3 => {
                let three = small(3);
                vec![
                    x.q2pq1.div_exact(&three)?,
                    q2m1.div_exact(&three)?,
                    (&x.p * &x.qm1).div_exact(&three)?,
                    x.qm1.clone(),
                ]
            }
            Family::U4 if self.p == 2 => vec![
                &x.q2p1 * &x.qm1,
                &x.qp1 * &x.q2mq1,
                &small(2) * &q2m1,
                &small(4) * &x.qp1,
            ],
            Family::U4 => {
                let d = crate::arith::gcd(4, q + 1);
                let dd = small(d);
                let mut v = vec![
                    (&x.qm1 * &x.q2p1).div_exact(&dd)?,
                    (&x.qp1 * &x.q2mq1).div_exact(&dd)?,
                    (&x.p * &q2m1).div_exact(&dd)?,
                    q2m1.clone(),
                ];
                if d == 4 {
                    v.push(&x.p * &x.qp1);
                }
                if self.p == 3 {
                    v.push(small(9));
                }
                v
            }
            Family::S4 => vec![
                x.q2p1.div_exact(&small(2))?,
                q2m1.div_exact(&small(2))?,
                &x.p * &x.qp1,
                &x.p * &x.qm1,
            ],
        };
        MuSet::normalize(members)
    }

    /// The group order from the standard order formula.
    pub fn order(&self) -> Result<FactoredNat> {
        let x = self.pieces()?;
        let q = self.q;
        let q2m1 = &x.qm1 * &x.qp1;
        let (numerator, d) = match self.family {
            Family::L2 => (&x.q * &q2m1, crate::arith::gcd(2, q - 1)),
            Family::L3 => {
                let q3m1 = &x.qm1 * &x.q2pq1;
                (&(&x.q.pow(3) * &q3m1) * &q2m1, crate::arith::gcd(3, q - 1))
            }
            Family::U4 => {
                let q3p1 = &x.qp1 * &x.q2mq1;
                let q4m1 = &q2m1 * &x.q2p1;
                (
                    &(&(&x.q.pow(6) * &q2m1) * &q3p1) * &q4m1,
                    crate::arith::gcd(4, q + 1),
                )
            }
            Family::S4 => {
                let q4m1 = &q2m1 * &x.q2p1;
                (&(&x.q.pow(4) * &q2m1) * &q4m1, crate::arith::gcd(2, q - 1))
            }
        };
        numerator.div_exact(&factor(d)?)
    }

    /// Order, spectrum, prime graph and degree pattern in one record.
    pub fn profile(&self) -> Result<Profile> {
        let order = self.order()?;
        let mu = self.mu()?;
        let primes = order.pi();
        if mu.prime_support() != primes {
            return Err(Error::InconsistentVertexSet(format!(
                "{}: pi(order) = {:?} but mu is supported on {:?}",
                self.name(),
                primes,
                mu.prime_support()
            )));
        }
        let graph = mu.graph(&primes)?;
        let pattern = graph.degree_pattern();
        Ok(Profile {
            name: self.name(),
            order,
            mu,
            graph,
            pattern,
        })
    }
}

struct Pieces {
    p: FactoredNat,
    q: FactoredNat,
    qm1: FactoredNat,
    qp1: FactoredNat,
    q2p1: FactoredNat,
    q2pq1: FactoredNat,
    q2mq1: FactoredNat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub name: String,
    pub order: FactoredNat,
    pub mu: MuSet,
    pub graph: PrimeGraph,
    pub pattern: DegreePattern,
}
