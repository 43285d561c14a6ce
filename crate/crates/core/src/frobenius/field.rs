//! Small prime-power fields `F_{p^n}` with log/antilog tables.
//!
//! An element is encoded by its coefficient vector over `F_p` read as a
//! base-`p` integer: `c_0 + c_1 p + .. + c_{n-1} p^{n-1}` stands for
//! `c_0 + c_1 t + .. + c_{n-1} t^{n-1}` modulo the field's modulus.

use crate::arith::{factor, pow_mod};
use crate::error::{Error, Result};

/// Largest supported field size; element codes must fit a `u16`.
pub const MAX_FIELD_SIZE: usize = 1 << 16;

/// Pinned irreducible moduli, coefficients from the constant term up,
/// leading 1 included. The first entry for each field is the default.
pub const MODULI: &[(u64, u32, &[&[u64]])] = &[
    (2, 4, &[&[1, 1, 0, 0, 1], &[1, 0, 0, 1, 1]]),
    (3, 4, &[&[2, 1, 0, 0, 1], &[1, 1, 1, 1, 1]]),
    (2, 10, &[&[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1], &[1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1]]),
    (3, 5, &[&[1, 2, 0, 0, 0, 1], &[2, 2, 0, 0, 0, 1]]),
];

/// The pinned moduli for `F_{p^n}`.
pub fn pinned_moduli(p: u64, n: u32) -> Option<&'static [&'static [u64]]> {
    MODULI
        .iter()
        .find(|(pp, nn, _)| *pp == p && *nn == n)
        .map(|(_, _, m)| *m)
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    n: u32,
    modulus: Vec<u64>,
    size: usize,
    primitive: u16,
    /// `exp[i] = g^i` for `0 <= i < 2(size - 1)`, doubled to skip a reduction.
    exp: Vec<u16>,
    /// `log[x]` for `x != 0`; `log[0]` is unused.
    log: Vec<u32>,
    /// Addition table for odd characteristic; empty when `p = 2` (XOR).
    add: Vec<u16>,
    neg: Vec<u16>,
}

impl FiniteField {
    /// Builds the field on `modulus`, using the `rank`-th primitive element
    /// (in increasing code order) as log base.
    pub fn new(p: u64, modulus: &[u64], rank: usize) -> Result<Self> {
        let n = modulus.len().checked_sub(1).filter(|&n| n >= 1).ok_or_else(|| {
            Error::Construction("modulus must have degree at least 1".into())
        })? as u32;
        if modulus[n as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Construction(format!(
                "modulus {modulus:?} is not a monic polynomial over F_{p}"
            )));
        }
        let size = (p as usize)
            .checked_pow(n)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or(Error::Overflow("field size"))?;
        if !is_irreducible(p, modulus) {
            return Err(Error::Construction(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        let slow = SlowField {
            p,
            n: n as usize,
            modulus: modulus.to_vec(),
        };
        let primitive = slow.find_primitive(size, rank)?;
        let order = size - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u32; size];
        let mut x = 1usize;
        for i in 0..order {
            if i > 0 && x == 1 {
                return Err(Error::Construction("antilog table period is too short".into()));
            }
            exp[i] = x as u16;
            exp[i + order] = x as u16;
            log[x] = i as u32;
            x = slow.mul(x, primitive);
        }
        if x != 1 {
            return Err(Error::Construction("antilog table does not close up".into()));
        }
        let (add, neg) = if p == 2 {
            (Vec::new(), (0..size as u16).collect())
        } else {
            let mut add = vec![0u16; size * size];
            for a in 0..size {
                for b in 0..size {
                    add[a * size + b] = slow.add(a, b) as u16;
                }
            }
            let neg = (0..size).map(|a| slow.neg(a) as u16).collect();
            (add, neg)
        };
        Ok(Self {
            p,
            n,
            modulus: modulus.to_vec(),
            size,
            primitive: primitive as u16,
            exp,
            log,
            add,
            neg,
        })
    }

    /// The field on its default pinned modulus and first primitive element.
    pub fn pinned(p: u64, n: u32) -> Result<Self> {
        let m = pinned_moduli(p, n).ok_or_else(|| {
            Error::Construction(format!("no pinned modulus for F_{p}^{n}"))
        })?;
        Self::new(p, m[0], 0)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive(&self) -> u16 {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        if self.p == 2 {
            a ^ b
        } else {
            self.add[a as usize * self.size + b as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// `g^k` for the log base `g`, any `k`.
    pub fn antilog(&self, k: u64) -> u16 {
        self.exp[(k % (self.size as u64 - 1)) as usize]
    }

    /// Discrete log to the primitive base; `None` for zero.
    pub fn log(&self, a: u16) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        match a {
            0 if e == 0 => 1,
            0 => 0,
            _ => self.antilog(self.log[a as usize] as u64 * (e % (self.size as u64 - 1))),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u16) -> Option<u64> {
        let l = self.log(a)? as u64;
        let m = self.size as u64 - 1;
        Some(m / crate::arith::gcd(l, m))
    }

    /// The map `x -> x^(p^a)`, as a table indexed by element code.
    pub fn frobenius_power_table(&self, a: u32) -> Vec<u16> {
        let e = self.p.pow(a % self.n);
        (0..self.size as u16).map(|x| self.pow(x, e)).collect()
    }
}

/// Polynomial arithmetic on element codes; only used to build the tables.
struct SlowField {
    p: u64,
    n: usize,
    modulus: Vec<u64>,
}

impl SlowField {
    fn digits(&self, mut x: usize) -> Vec<u64> {
        let mut d = vec![0u64; self.n];
        for c in d.iter_mut() {
            *c = (x % self.p as usize) as u64;
            x /= self.p as usize;
        }
        d
    }

    fn code(&self, d: &[u64]) -> usize {
        d.iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.code(&s)
    }

    fn neg(&self, a: usize) -> usize {
        let x: Vec<u64> = self.digits(a).iter().map(|&u| (self.p - u) % self.p).collect();
        self.code(&x)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.n];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        poly_rem(self.p, &mut prod, &self.modulus);
        self.code(&prod[..self.n])
    }

    fn pow(&self, a: usize, mut e: u64) -> usize {
        let (mut base, mut acc) = (a, 1usize);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The `rank`-th element of order `size - 1`, checked against every
    /// maximal proper divisor of `size - 1`.
    fn find_primitive(&self, size: usize, rank: usize) -> Result<usize> {
        let m = size as u64 - 1;
        let cofactors: Vec<u64> = factor(m)?.pi().iter().map(|l| m / l).collect();
        (1..size)
            .filter(|&g| cofactors.iter().all(|&d| self.pow(g, d) != 1))
            .nth(rank)
            .ok_or_else(|| Error::Construction(format!("no primitive element of rank {rank}")))
    }
}

/// Reduces `a` modulo the monic `m` in place (coefficients low to high).
fn poly_rem(p: u64, a: &mut [u64], m: &[u64]) {
    let dm = m.len() - 1;
    for top in (dm..a.len()).rev() {
        let c = a[top] % p;
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let idx = top - dm + i;
            a[idx] = (a[idx] + (p - c) * mi) % p;
        }
    }
}

/// Exhaustive check: no monic factor of degree `1..=deg/2` divides `f`.
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            let mut r = f.to_vec();
            poly_rem(p, &mut r, &g);
            if r[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// `true` iff `x^(p^a) = x^e` on every element of order `r`, i.e.
/// `p^a = e (mod r)`.
pub fn frobenius_matches(p: u64, a: u32, e: u64, r: u64) -> bool {
    pow_mod(p, a as u64, r) == e % r
}
