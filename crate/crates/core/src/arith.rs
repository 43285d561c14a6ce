//! Exact arithmetic on positive integers kept in factored form.
//!
//! Group orders in the catalog overflow 64-bit words (|²E₆(2)| has a factor
//! 2³⁶ next to seven odd primes), so every order, order component and
//! spectrum member is stored as a prime → exponent map. Products, gcds and
//! divisibility become exponent-wise `+`, `min` and `<=`.
//!
//! The textual form is `2^6.3^4.5`: dot-separated `p^e` terms with exponent
//! one written bare. The parser accepts any positive integer base (so plain
//! decimals like `110` are fine) and canonicalizes by factoring it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A positive integer as a canonical map from primes to positive exponents.
///
/// The empty map is `1`. Equality of values coincides with equality of maps.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FactoredNat {
    factors: BTreeMap<u64, u32>,
}

impl FactoredNat {
    pub fn one() -> Self {
        Self::default()
    }

    /// `p^e`; `e = 0` gives one.
    pub fn prime_power(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let mut factors = BTreeMap::new();
        if e > 0 {
            factors.insert(p, e);
        }
        Ok(Self { factors })
    }

    pub fn from_u64(n: u64) -> Result<Self> {
        factor(n)
    }

    /// Builds from `(prime, exponent)` pairs, merging repeated primes.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u32)>>(pairs: I) -> Result<Self> {
        let mut out = Self::one();
        for (p, e) in pairs {
            out = &out * &Self::prime_power(p, e)?;
        }
        Ok(out)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` (zero when `p` does not divide).
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    /// The sorted list of prime divisors.
    pub fn pi(&self) -> Vec<u64> {
        self.factors.keys().copied().collect()
    }

    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::from(1u32), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }

    pub fn to_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for (&p, &e) in &self.factors {
            acc = acc.checked_mul(p.checked_pow(e)?)?;
        }
        Some(acc)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let factors = self
            .factors
            .iter()
            .filter_map(|(&p, &e)| {
                let m = e.min(other.exponent(p));
                (m > 0).then_some((p, m))
            })
            .collect();
        Self { factors }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let slot = factors.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
        Self { factors }
    }

    /// `true` iff `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.factors.iter().all(|(&p, &e)| e <= other.exponent(p))
    }

    /// `self / divisor`, defined only when `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if !divisor.divides(self) {
            return Err(Error::NotDivisible);
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|(&p, &e)| {
                let rest = e - divisor.exponent(p);
                (rest > 0).then_some((p, rest))
            })
            .collect();
        Ok(Self { factors })
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Self::one();
        }
        let factors = self.factors.iter().map(|(&p, &e)| (p, e * k)).collect();
        Self { factors }
    }

    /// The largest divisor of `self` supported on `primes`.
    pub fn restrict(&self, primes: &[u64]) -> Self {
        let factors = self
            .factors
            .iter()
            .filter(|(p, _)| primes.contains(p))
            .map(|(&p, &e)| (p, e))
            .collect();
        Self { factors }
    }
}

impl Mul for &FactoredNat {
    type Output = FactoredNat;

    // Exponents add under multiplication.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &FactoredNat) -> FactoredNat {
        let mut factors = self.factors.clone();
        for (&p, &e) in &rhs.factors {
            *factors.entry(p).or_insert(0) += e;
        }
        FactoredNat { factors }
    }
}

impl Mul for FactoredNat {
    type Output = FactoredNat;

    fn mul(self, rhs: FactoredNat) -> FactoredNat {
        &self * &rhs
    }
}

impl Ord for FactoredNat {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self.to_u64(), other.to_u64()) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self.value().cmp(&other.value()),
        }
    }
}

impl PartialOrd for FactoredNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FactoredNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (&p, &e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredNat({self})")
    }
}

impl FromStr for FactoredNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty factored integer".into()));
        }
        let mut out = FactoredNat::one();
        for term in s.split('.') {
            let term = term.trim();
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (term, "1"),
            };
            let base: u64 = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad base in term `{term}`")))?;
            let exp: u32 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in term `{term}`")))?;
            if exp == 0 {
                return Err(Error::Parse(format!("zero exponent in term `{term}`")));
            }
            let base = factor(base).map_err(|_| Error::Parse(format!("zero base in term `{term}`")))?;
            out = &out * &base.pow(exp);
        }
        Ok(out)
    }
}

impl Serialize for FactoredNat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FactoredNat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Factors `n` by trial division.
pub fn factor(n: u64) -> Result<FactoredNat> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut factors = BTreeMap::new();
    let mut rest = n;
    let mut d = 2u64;
    while d <= rest / d {
        while rest.is_multiple_of(d) {
            *factors.entry(d).or_insert(0) += 1;
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        *factors.entry(rest).or_insert(0) += 1;
    }
    Ok(FactoredNat { factors })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `m`: least `k >= 1` with `a^k = 1 (mod m)`.
pub fn mult_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("modulus {m} < 2")));
    }
    if gcd(a, m) != 1 {
        return Err(Error::NotUnit(a, m));
    }
    let a = a % m;
    let mut x = a;
    let mut k = 1u64;
    while x != 1 {
        x = ((x as u128 * a as u128) % m as u128) as u64;
        k += 1;
    }
    Ok(k)
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factor(n)?;
    Ok(f.factors().fold(1u64, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1)))
}

const PARTITION_MEMO: usize = 40;

fn partition_table() -> &'static [u64; PARTITION_MEMO + 1] {
    static TABLE: OnceLock<[u64; PARTITION_MEMO + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0u64; PARTITION_MEMO + 1];
        t[0] = 1;
        // Euler's pentagonal recurrence.
        for n in 1..=PARTITION_MEMO as i64 {
            let mut acc: i64 = 0;
            for k in 1i64.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * t[(n - g1) as usize] as i64;
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= n {
                    acc += sign * t[(n - g2) as usize] as i64;
                }
            }
            t[n as usize] = acc as u64;
        }
        t
    })
}

/// Number of integer partitions of `e`.
pub fn partition_count(e: u32) -> BigUint {
    if let Some(&p) = partition_table().get(e as usize) {
        return BigUint::from(p);
    }
    // Parts-bounded DP; only reached for exponents above the memo.
    let e = e as usize;
    let mut ways = vec![BigUint::from(0u32); e + 1];
    ways[0] = BigUint::from(1u32);
    for part in 1..=e {
        for total in part..=e {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    ways.swap_remove(e)
}

/// Number of isomorphism types of abelian groups of order `n`.
pub fn nu_abelian(n: &FactoredNat) -> BigUint {
    n.factors()
        .fold(BigUint::from(1u32), |acc, (_, e)| acc * partition_count(e))
}
