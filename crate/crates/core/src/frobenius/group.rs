//! Semilinear 2-Frobenius groups `(F_{q1} x F_{q2}) : Z_r : Z_s`.
//!
//! Elements are tuples `(x1, x2, k, j)` with product
//!
//! ```text
//! (x1, x2, k, j)(y1, y2, l, m)
//!     = (x1 + λ1^k φ1^j(y1), x2 + λ2^k φ2^j(y2), k + e^j l mod r, j + m mod s)
//! ```
//!
//! where `λi` has multiplicative order `r`, `φi(x) = x^(pi^ai)` and
//! `pi^ai = e (mod r)`, so that `φi(λi) = λi^e`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::field::{pinned_moduli, FiniteField};
use crate::arith::{factor, gcd, mult_order, pow_mod, FactoredNat};
use crate::error::{Error, Result};
use crate::gkgraph::{DegreePattern, PrimeGraph};
use crate::spectrum::MuSet;

/// Largest group order the exhaustive sweep accepts.
pub const SWEEP_CAP: u64 = 1 << 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// `(2^4 x 3^4):5:4`, same order and prime graph as `U_4(2)`.
    U42,
    /// `(2^10 x 3^5):11:5`, same order components as `U_5(2)`.
    U52,
}

impl Preset {
    pub const ALL: [Preset; 2] = [Preset::U42, Preset::U52];

    /// `(p1, n1, p2, n2, r, s)`.
    pub fn params(self) -> (u64, u32, u64, u32, u64, u64) {
        match self {
            Preset::U42 => (2, 4, 3, 4, 5, 4),
            Preset::U52 => (2, 10, 3, 5, 11, 5),
        }
    }

    pub fn structure(self) -> &'static str {
        match self {
            Preset::U42 => "(2^4 x 3^4):5:4",
            Preset::U52 => "(2^10 x 3^5):11:5",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::U42 => "u42",
            Preset::U52 => "u52",
        })
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u42" => Ok(Preset::U42),
            "u52" => Ok(Preset::U52),
            other => Err(Error::Parse(format!("unknown preset `{other}` (expected u42 or u52)"))),
        }
    }
}

/// Construction choices that must not change any isomorphism invariant.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Use the second pinned modulus of each field.
    pub alternate_modulus: bool,
    /// Which primitive element (in code order) serves as log base.
    pub primitive_rank: usize,
    /// Use the second admissible common exponent instead of the smallest.
    pub alternate_exponent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Element {
    pub x1: u16,
    pub x2: u16,
    pub k: u8,
    pub j: u8,
}

impl Element {
    pub const IDENTITY: Element = Element {
        x1: 0,
        x2: 0,
        k: 0,
        j: 0,
    };
}

#[derive(Debug, Clone)]
pub struct TwoFrobeniusGroup {
    preset: Preset,
    f1: FiniteField,
    f2: FiniteField,
    r: u64,
    s: u64,
    e: u64,
    a1: u32,
    a2: u32,
    lambda1: u16,
    lambda2: u16,
    /// `act_i[(k * s + j) * q_i + x] = λi^k φi^j(x)`.
    act1: Vec<u16>,
    act2: Vec<u16>,
    /// `k_next[(k * s + j) * r + l] = k + e^j l mod r`.
    k_next: Vec<u8>,
}

/// Exponents `a` in `[0, n)` with `p^a = e (mod r)` and `n | a s`.
fn frobenius_exponent(p: u64, n: u32, e: u64, r: u64, s: u64) -> Option<u32> {
    (0..n).find(|&a| pow_mod(p, a as u64, r) == e % r && (a as u64 * s).is_multiple_of(n as u64))
}

/// Every `e` in `[2, r)` of order `s` mod `r` for which both fields admit a
/// matching Frobenius power, ascending.
pub fn admissible_exponents(preset: Preset) -> Vec<(u64, u32, u32)> {
    let (p1, n1, p2, n2, r, s) = preset.params();
    (2..r)
        .filter(|&e| mult_order(e, r).ok() == Some(s))
        .filter_map(|e| {
            Some((
                e,
                frobenius_exponent(p1, n1, e, r, s)?,
                frobenius_exponent(p2, n2, e, r, s)?,
            ))
        })
        .collect()
}

impl TwoFrobeniusGroup {
    pub fn build(preset: Preset) -> Result<Self> {
        Self::build_with(preset, BuildOptions::default())
    }

    pub fn build_with(preset: Preset, opts: BuildOptions) -> Result<Self> {
        let choices = admissible_exponents(preset);
        let pick = usize::from(opts.alternate_exponent);
        let &(e, a1, a2) = choices.get(pick).ok_or_else(|| {
            Error::Construction(format!(
                "{preset}: only {} admissible common exponents",
                choices.len()
            ))
        })?;
        Self::assemble(preset, opts, e, a1, a2)
    }

    /// Builds with an arbitrary multiplier exponent `e`, skipping the check
    /// that `e` has order `s` mod `r`. Still requires `e^s = 1 (mod r)` and
    /// Frobenius powers matching `e`, so the product stays a group law.
    pub fn with_raw_exponent(preset: Preset, e: u64) -> Result<Self> {
        let (p1, n1, p2, n2, r, s) = preset.params();
        if pow_mod(e, s, r) != 1 {
            return Err(Error::Construction(format!("{e}^{s} != 1 mod {r}")));
        }
        let a1 = frobenius_exponent(p1, n1, e, r, s)
            .ok_or_else(|| Error::Construction(format!("no Frobenius power of F_{p1}^{n1} acts as {e}")))?;
        let a2 = frobenius_exponent(p2, n2, e, r, s)
            .ok_or_else(|| Error::Construction(format!("no Frobenius power of F_{p2}^{n2} acts as {e}")))?;
        Self::assemble(preset, BuildOptions::default(), e, a1, a2)
    }

    fn assemble(preset: Preset, opts: BuildOptions, e: u64, a1: u32, a2: u32) -> Result<Self> {
        let (p1, n1, p2, n2, r, s) = preset.params();
        let field = |p: u64, n: u32| -> Result<FiniteField> {
            let ms = pinned_moduli(p, n)
                .ok_or_else(|| Error::Construction(format!("no pinned modulus for F_{p}^{n}")))?;
            let m = ms[usize::from(opts.alternate_modulus).min(ms.len() - 1)];
            FiniteField::new(p, m, opts.primitive_rank)
        };
        let (f1, f2) = (field(p1, n1)?, field(p2, n2)?);
        let lambda = |f: &FiniteField| -> Result<u16> {
            let m = f.size() as u64 - 1;
            if !m.is_multiple_of(r) {
                return Err(Error::Construction(format!("{r} does not divide {m}")));
            }
            Ok(f.antilog(m / r))
        };
        let (lambda1, lambda2) = (lambda(&f1)?, lambda(&f2)?);
        let act = |f: &FiniteField, lam: u16, a: u32| -> Vec<u16> {
            let q = f.size();
            let mut t = vec![0u16; r as usize * s as usize * q];
            for k in 0..r {
                let lk = f.pow(lam, k);
                for j in 0..s {
                    let frob = f.frobenius_power_table(a * j as u32);
                    let base = (k * s + j) as usize * q;
                    for x in 0..q {
                        t[base + x] = f.mul(lk, frob[x]);
                    }
                }
            }
            t
        };
        let act1 = act(&f1, lambda1, a1);
        let act2 = act(&f2, lambda2, a2);
        let mut k_next = vec![0u8; (r * s * r) as usize];
        for k in 0..r {
            for j in 0..s {
                let ej = pow_mod(e, j, r);
                for l in 0..r {
                    k_next[((k * s + j) * r + l) as usize] = ((k + ej * l) % r) as u8;
                }
            }
        }
        Ok(Self {
            preset,
            f1,
            f2,
            r,
            s,
            e,
            a1,
            a2,
            lambda1,
            lambda2,
            act1,
            act2,
            k_next,
        })
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn fields(&self) -> (&FiniteField, &FiniteField) {
        (&self.f1, &self.f2)
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn exponent(&self) -> u64 {
        self.e
    }

    /// `(a1, a2)` with `φi(x) = x^(pi^ai)`.
    pub fn frobenius_exponents(&self) -> (u32, u32) {
        (self.a1, self.a2)
    }

    pub fn lambdas(&self) -> (u16, u16) {
        (self.lambda1, self.lambda2)
    }

    pub fn order(&self) -> FactoredNat {
        let (p1, n1, p2, n2, r, s) = self.preset.params();
        let pp = |p, n| FactoredNat::prime_power(p, n).expect("preset primes");
        let rs = factor(r * s).expect("nonzero");
        &(&pp(p1, n1) * &pp(p2, n2)) * &rs
    }

    pub fn element_count(&self) -> u64 {
        (self.f1.size() * self.f2.size()) as u64 * self.r * self.s
    }

    pub fn element(&self, x1: u16, x2: u16, k: u64, j: u64) -> Result<Element> {
        if x1 as usize >= self.f1.size() || x2 as usize >= self.f2.size() || k >= self.r || j >= self.s {
            return Err(Error::InvalidArgument(format!(
                "({x1}, {x2}, {k}, {j}) is not an element"
            )));
        }
        Ok(Element {
            x1,
            x2,
            k: k as u8,
            j: j as u8,
        })
    }

    /// Element number `idx` in the order `((k * s + j) * q1 + x1) * q2 + x2`.
    pub fn element_at(&self, idx: u64) -> Element {
        let q2 = self.f2.size() as u64;
        let q1 = self.f1.size() as u64;
        let x2 = idx % q2;
        let rest = idx / q2;
        let x1 = rest % q1;
        let kj = rest / q1;
        Element {
            x1: x1 as u16,
            x2: x2 as u16,
            k: (kj / self.s) as u8,
            j: (kj % self.s) as u8,
        }
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        let t = a.k as usize * self.s as usize + a.j as usize;
        let q1 = self.f1.size();
        let q2 = self.f2.size();
        Element {
            x1: self.f1.add(a.x1, self.act1[t * q1 + b.x1 as usize]),
            x2: self.f2.add(a.x2, self.act2[t * q2 + b.x2 as usize]),
            k: self.k_next[t * self.r as usize + b.k as usize],
            j: ((a.j as u64 + b.j as u64) % self.s) as u8,
        }
    }

    pub fn inverse(&self, a: Element) -> Element {
        let (r, s) = (self.r, self.s);
        let j = (s - a.j as u64) % s;
        // k + e^j' l = 0 with j' = a.j, so l = -k e^{-a.j} = -k e^{s - a.j}
        let e_inv = pow_mod(self.e, (s - a.j as u64 % s) % s, r);
        let l = (r - (a.k as u64 * e_inv) % r) % r;
        // x + λ^k φ^j(y) = 0  =>  y = φ^{-j}(λ^{-k}(-x))
        let undo = |f: &FiniteField, act: &[u16], lam: u16, x: u16| -> u16 {
            let lk_inv = f.pow(lam, (r - a.k as u64) % r);
            let v = f.mul(lk_inv, f.neg(x));
            act[j as usize * f.size() + v as usize]
        };
        Element {
            x1: undo(&self.f1, &self.act1, self.lambda1, a.x1),
            x2: undo(&self.f2, &self.act2, self.lambda2, a.x2),
            k: l as u8,
            j: j as u8,
        }
    }

    /// Iteration cap for [`Self::order_of_element`].
    pub fn order_cap(&self) -> u64 {
        4 * self.r * self.s * 6
    }

    /// Smallest `n >= 1` with `a^n = 1`, by repeated multiplication.
    pub fn order_of_element(&self, a: Element) -> Result<u64> {
        let cap = self.order_cap();
        let mut x = a;
        let mut n = 1;
        while x != Element::IDENTITY {
            if n >= cap {
                return Err(Error::Construction(format!(
                    "element {a:?} has order above the cap {cap}"
                )));
            }
            x = self.mul(x, a);
            n += 1;
        }
        Ok(n)
    }

    /// Number of `x` in field 1 or 2 fixed by `φi^j`.
    pub fn fixed_points(&self, field: usize, j: u64) -> usize {
        let (f, act) = match field {
            1 => (&self.f1, &self.act1),
            _ => (&self.f2, &self.act2),
        };
        let q = f.size();
        let base = (j % self.s) as usize * q;
        (0..q).filter(|&x| act[base + x] as usize == x).count()
    }

    /// Visits every element once and tallies element orders.
    ///
    /// `threads = 0` uses rayon's default pool size.
    pub fn enumerate_spectrum(&self, threads: usize) -> Result<Spectrum> {
        let count = self.element_count();
        if count > SWEEP_CAP {
            return Err(Error::CapExceeded {
                found: count as usize,
                cap: SWEEP_CAP as usize,
            });
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        let cap = self.order_cap() as usize;
        let q2 = self.f2.size() as u64;
        let rows = count / q2;
        // slot 0 counts elements whose order ran past the cap
        let hist = pool.install(|| {
            (0..rows)
                .into_par_iter()
                .fold(
                    || vec![0u64; cap + 1],
                    |mut h, row| {
                        for x2 in 0..q2 {
                            let g = self.element_at(row * q2 + x2);
                            match self.order_of_element(g) {
                                Ok(n) => h[n as usize] += 1,
                                Err(_) => h[0] += 1,
                            }
                        }
                        h
                    },
                )
                .reduce(
                    || vec![0u64; cap + 1],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                )
        });
        if hist[0] > 0 {
            return Err(Error::Construction(format!(
                "{} elements have order above the cap {cap}",
                hist[0]
            )));
        }
        let histogram: BTreeMap<u64, u64> = hist
            .iter()
            .enumerate()
            .filter(|(n, &c)| *n > 0 && c > 0)
            .map(|(n, &c)| (n as u64, c))
            .collect();
        Spectrum::from_histogram(self.order(), histogram)
    }

    /// The four structural checks, the last one read off `spectrum`.
    pub fn verify_structure(&self, spectrum: &Spectrum) -> StructureReport {
        let checks = vec![
            self.check_kernel(),
            self.check_ab_frobenius(),
            self.check_bc_frobenius(),
            Check {
                name: "two_complete_components",
                pass: spectrum.graph.has_two_complete_components(),
                detail: format!(
                    "components {}",
                    spectrum
                        .components
                        .iter()
                        .map(|c| format!("{c:?}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
            },
        ];
        StructureReport {
            all_pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    fn basis(f: &FiniteField) -> Vec<u16> {
        (0..f.degree())
            .map(|i| f.characteristic().pow(i) as u16)
            .collect()
    }

    /// `A = {(x1, x2, 0, 0)}` is elementary abelian of order `q1 q2` and
    /// normal.
    fn check_kernel(&self) -> Check {
        let (p1, p2) = (self.f1.characteristic(), self.f2.characteristic());
        let mut size = 0u64;
        let mut bad_order = None;
        for x1 in 0..self.f1.size() as u16 {
            for x2 in 0..self.f2.size() as u16 {
                let a = Element { x1, x2, k: 0, j: 0 };
                size += 1;
                match self.order_of_element(a) {
                    Ok(n) if (p1 * p2) % n == 0 => {}
                    _ => bad_order = bad_order.or(Some(a)),
                }
            }
        }
        let gens: Vec<Element> = Self::basis(&self.f1)
            .into_iter()
            .map(|x1| Element { x1, x2: 0, k: 0, j: 0 })
            .chain(Self::basis(&self.f2).into_iter().map(|x2| Element { x1: 0, x2, k: 0, j: 0 }))
            .collect();
        let commutes = gens.iter().all(|&a| {
            gens.iter().all(|&b| {
                let ab = self.mul(a, b);
                ab == self.mul(b, a) && ab.k == 0 && ab.j == 0
            })
        });
        let outer = [
            Element { x1: 0, x2: 0, k: 1, j: 0 },
            Element { x1: 0, x2: 0, k: 0, j: 1 },
        ];
        let normal = outer.iter().all(|&g| {
            let gi = self.inverse(g);
            gens.iter().all(|&a| {
                let c = self.mul(self.mul(g, a), gi);
                let d = self.mul(self.mul(gi, a), g);
                c.k == 0 && c.j == 0 && d.k == 0 && d.j == 0
            })
        });
        let expected = (self.f1.size() * self.f2.size()) as u64;
        let pass = bad_order.is_none() && commutes && normal && size == expected;
        Check {
            name: "kernel",
            pass,
            detail: format!(
                "order {size}, exponent divides {}, abelian {commutes}, normal {normal}",
                p1 * p2
            ),
        }
    }

    /// No nonzero kernel vector is fixed by a nontrivial power of `λi`.
    fn check_ab_frobenius(&self) -> Check {
        let s = self.s as usize;
        let fixed = |f: &FiniteField, act: &[u16]| -> usize {
            let q = f.size();
            (1..self.r as usize)
                .map(|k| (1..q).filter(|&x| act[k * s * q + x] as usize == x).count())
                .sum()
        };
        let n1 = fixed(&self.f1, &self.act1);
        let n2 = fixed(&self.f2, &self.act2);
        let b = Element { x1: 0, x2: 0, k: 1, j: 0 };
        let b_order = self.order_of_element(b).ok();
        let shown = b_order.map_or_else(|| "over cap".to_string(), |n| n.to_string());
        Check {
            name: "ab_frobenius",
            pass: n1 == 0 && n2 == 0 && b_order == Some(self.r),
            detail: format!("fixed points {n1} + {n2}, multiplier order {shown}"),
        }
    }

    /// `e^j != 1 (mod r)` for `0 < j < s`, and `BC` has no element of order
    /// `r s'` for a prime `s' | s`.
    fn check_bc_frobenius(&self) -> Check {
        let (r, s) = (self.r, self.s);
        let e_ok = (1..s).all(|j| pow_mod(self.e, j, r) != 1);
        let bad: Vec<u64> = factor(s)
            .map(|f| f.pi())
            .unwrap_or_default()
            .into_iter()
            .map(|sp| r * sp)
            .collect();
        let mut hit = None;
        for k in 0..r {
            for j in 0..s {
                let g = Element { x1: 0, x2: 0, k: k as u8, j: j as u8 };
                match self.order_of_element(g) {
                    Ok(n) if bad.contains(&n) => hit = hit.or(Some(n)),
                    Err(_) => hit = hit.or(Some(0)),
                    _ => {}
                }
            }
        }
        Check {
            name: "bc_frobenius",
            pass: e_ok && hit.is_none() && gcd(r, s) == 1,
            detail: format!(
                "e = {} has order {} mod {r} (need {s}); {}",
                self.e,
                mult_order(self.e, r).map_or_else(|_| "undefined".to_string(), |n| n.to_string()),
                match hit {
                    None => "no element of order r*s' in BC".to_string(),
                    Some(0) => "an element of BC exceeds the order cap".to_string(),
                    Some(n) => format!("BC has an element of order {n}"),
                }
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

/// Element-order statistics of a finite group and what they determine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub order: FactoredNat,
    pub elements: u64,
    /// Number of elements of each order.
    pub histogram: BTreeMap<u64, u64>,
    pub omega: Vec<u64>,
    pub mu: MuSet,
    pub graph: PrimeGraph,
    pub pattern: DegreePattern,
    pub components: Vec<Vec<u64>>,
    pub order_components: Vec<FactoredNat>,
}

impl Spectrum {
    pub fn from_histogram(order: FactoredNat, histogram: BTreeMap<u64, u64>) -> Result<Self> {
        let elements = histogram.values().sum();
        let omega: Vec<u64> = histogram.keys().copied().collect();
        let mu = MuSet::from_u64s(omega.iter().copied())?;
        let graph = mu.graph(&order.pi())?;
        let pattern = graph.degree_pattern();
        let oc = graph.order_components(&order)?;
        Ok(Self {
            order,
            elements,
            histogram,
            omega,
            mu,
            graph,
            pattern,
            components: oc.components,
            order_components: oc.order_components,
        })
    }
}
