//! The simple groups whose orders have every prime divisor at most 29.
//!
//! Non-alternating groups come from the embedded table `data/catalog.txt`
//! (its format is documented at the top of that file). Alternating groups
//! `A_5 .. A_30` are generated with factored orders `n!/2`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{is_prime, FactoredNat};
use crate::error::{Error, Result};
use crate::gkgraph::{DegreePattern, PrimeGraph};
use crate::spectrum::MuSet;

/// Primes allowed to divide a catalog order.
pub const PRIMES_UP_TO_29: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

/// Group count quoted for this class of groups, compared against the
/// loaded data in [`BuildReport`].
pub const QUOTED_TOTAL: usize = 110;

const EMBEDDED: &str = include_str!("../data/catalog.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lie,
    Sporadic,
    Alternating,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Lie => "lie",
            Kind::Sporadic => "sporadic",
            Kind::Alternating => "alternating",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lie" => Ok(Kind::Lie),
            "sporadic" => Ok(Kind::Sporadic),
            "alternating" => Ok(Kind::Alternating),
            other => Err(Error::Catalog(format!("unknown kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupRecord {
    pub name: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    pub kind: Kind,
    pub order: FactoredNat,
    pub mu: Option<MuSet>,
    pub pattern: Option<DegreePattern>,
    /// Prime graph given directly, for groups whose spectrum is not stored.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<PrimeGraph>,
    pub out_order: Option<u64>,
}

impl GroupRecord {
    /// The prime graph, from `mu` when present, else the stored graph.
    pub fn prime_graph(&self) -> Option<PrimeGraph> {
        match (&self.mu, &self.graph) {
            (Some(mu), _) => mu.graph(&self.order.pi()).ok(),
            (None, Some(g)) => Some(g.clone()),
            (None, None) => None,
        }
    }

    pub fn matches_name(&self, query: &str) -> bool {
        let q = normalize_name(query);
        normalize_name(&self.name) == q || self.aliases.iter().any(|a| normalize_name(a) == q)
    }

    fn same_content(&self, other: &GroupRecord) -> bool {
        self.kind == other.kind
            && self.order == other.order
            && self.mu == other.mu
            && self.pattern == other.pattern
            && self.graph == other.graph
            && self.out_order == other.out_order
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Catalog(format!("{}: {msg}", self.name)));
        let pi = self.order.pi();
        if let Some(p) = pi.iter().find(|p| !PRIMES_UP_TO_29.contains(p)) {
            return bad(format!("order has prime divisor {p} > 29"));
        }
        if let Some(out) = self.out_order {
            let ok = out >= 1
                && FactoredNat::from_u64(out)?
                    .pi()
                    .iter()
                    .all(|p| *p == 2 || *p == 3);
            if !ok {
                return bad(format!("outer automorphism order {out} has a prime other than 2, 3"));
            }
        }
        if let Some(mu) = &self.mu {
            if mu.prime_support() != pi {
                return bad("primes of mu differ from primes of the order".into());
            }
        }
        if let Some(g) = &self.graph {
            if g.vertices() != pi.as_slice() {
                return bad("graph vertices differ from primes of the order".into());
            }
            if let Some(mu) = &self.mu {
                if &mu.graph(&pi)? != g {
                    return bad("stored graph disagrees with mu".into());
                }
            }
        }
        if let (Some(pattern), Some(g)) = (&self.pattern, self.prime_graph()) {
            if &g.degree_pattern() != pattern {
                return bad(format!(
                    "stored pattern {pattern} but graph gives {}",
                    g.degree_pattern()
                ));
            }
        }
        if let Some(p) = &self.pattern {
            if p.len() != pi.len() {
                return bad(format!("pattern {p} has the wrong length"));
            }
        }
        Ok(())
    }
}

/// Lowercases and drops `_`, spaces and braces, so `L3(11)`, `l_3(11)`,
/// `2E6(2)` and `O8+(2)` all find their records.
pub fn normalize_name(s: &str) -> String {
    let mut out: String = s
        .chars()
        .filter(|c| !matches!(c, '_' | ' ' | '{' | '}'))
        .flat_map(char::to_lowercase)
        .collect();
    out = out.replace("^+", "+").replace("^-", "-");
    out.strip_prefix('^').map(str::to_string).unwrap_or(out)
}

/// How the loaded rows relate to the quoted total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuildReport {
    pub printed_rows: usize,
    pub distinct_rows: usize,
    pub collapsed_duplicates: Vec<String>,
    pub alternating: usize,
    pub total: usize,
    pub quoted_total: usize,
}

impl BuildReport {
    pub fn reconciles(&self) -> bool {
        self.total == self.quoted_total
    }
}

impl fmt::Display for BuildReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} table rows, {} distinct (collapsed: {}), {} alternating, {} total; quoted total {}",
            self.printed_rows,
            self.distinct_rows,
            if self.collapsed_duplicates.is_empty() {
                "none".to_string()
            } else {
                self.collapsed_duplicates.join(", ")
            },
            self.alternating,
            self.total,
            self.quoted_total
        )?;
        if !self.reconciles() {
            write!(f, " (difference {})", self.quoted_total as i64 - self.total as i64)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Catalog {
    records: Vec<GroupRecord>,
    report: BuildReport,
}

impl Catalog {
    /// The embedded catalog, parsed and validated once.
    pub fn builtin() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::parse(EMBEDDED).expect("embedded catalog is valid"))
    }

    /// Loads a catalog from table text in the embedded format and appends
    /// the alternating groups.
    pub fn parse(text: &str) -> Result<Catalog> {
        let mut records: Vec<GroupRecord> = Vec::new();
        let mut printed_rows = 0;
        let mut collapsed = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            printed_rows += 1;
            let rec = parse_row(line)
                .map_err(|e| Error::Catalog(format!("line {}: {e}", lineno + 1)))?;
            rec.validate()?;
            if let Some(prev) = records.iter().find(|r| r.name == rec.name) {
                if !prev.same_content(&rec) {
                    return Err(Error::Catalog(format!(
                        "line {}: conflicting duplicate row for {}",
                        lineno + 1,
                        rec.name
                    )));
                }
                collapsed.push(rec.name);
                continue;
            }
            records.push(rec);
        }
        let distinct_rows = records.len();
        let alternating = alternating_groups()?;
        let n_alt = alternating.len();
        records.extend(alternating);
        let report = BuildReport {
            printed_rows,
            distinct_rows,
            collapsed_duplicates: collapsed,
            alternating: n_alt,
            total: records.len(),
            quoted_total: QUOTED_TOTAL,
        };
        Ok(Catalog { records, report })
    }

    pub fn records(&self) -> &[GroupRecord] {
        &self.records
    }

    pub fn report(&self) -> &BuildReport {
        &self.report
    }

    pub fn get(&self, name: &str) -> Option<&GroupRecord> {
        self.records.iter().find(|r| r.matches_name(name))
    }

    /// Records whose order divides `dividing` and is a multiple of
    /// `multiple_of`.
    pub fn filter_candidates(
        &self,
        dividing: &FactoredNat,
        multiple_of: &FactoredNat,
    ) -> Vec<&GroupRecord> {
        self.records
            .iter()
            .filter(|r| r.order.divides(dividing) && multiple_of.divides(&r.order))
            .collect()
    }

    /// Recomputes the degree pattern of every record that stores `mu`.
    pub fn verify_table3(&self) -> Table3Report {
        let rows: Vec<Table3Row> = self
            .records
            .iter()
            .filter_map(|r| {
                let mu = r.mu.as_ref()?;
                let computed = mu.graph(&r.order.pi()).map(|g| g.degree_pattern());
                let (computed, error) = match computed {
                    Ok(d) => (Some(d), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                let pass = computed.is_some() && computed == r.pattern;
                Some(Table3Row {
                    name: r.name.clone(),
                    order: r.order.clone(),
                    mu: mu.clone(),
                    stored: r.pattern.clone(),
                    computed,
                    error,
                    pass,
                })
            })
            .collect();
        Table3Report {
            all_pass: rows.iter().all(|r| r.pass),
            rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table3Row {
    pub name: String,
    pub order: FactoredNat,
    pub mu: MuSet,
    pub stored: Option<DegreePattern>,
    pub computed: Option<DegreePattern>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table3Report {
    pub rows: Vec<Table3Row>,
    pub all_pass: bool,
}

/// Whether a Frobenius group with kernel and complement of these orders
/// is arithmetically possible, i.e. `|C|` divides `|K| - 1`.
pub fn frobenius_feasible(kernel: &FactoredNat, complement: &FactoredNat) -> Result<bool> {
    if kernel.is_one() {
        return Err(Error::InvalidArgument(
            "a Frobenius kernel has order greater than 1".into(),
        ));
    }
    let k = kernel.value() - BigUint::from(1u32);
    Ok((k % complement.value()) == BigUint::from(0u32))
}

fn field(s: &str) -> Option<&str> {
    let s = s.trim();
    (s != "-").then_some(s)
}

fn parse_row(line: &str) -> Result<GroupRecord> {
    let cols: Vec<&str> = line.split('|').collect();
    if cols.len() != 7 {
        return Err(Error::Parse(format!("expected 7 fields, found {}", cols.len())));
    }
    let mut names = cols[0].split('/').map(|s| s.trim().to_string());
    let name = names.next().filter(|n| !n.is_empty()).ok_or_else(|| {
        Error::Parse("missing name".into())
    })?;
    let aliases = names.collect();
    let kind: Kind = cols[1].trim().parse()?;
    if kind == Kind::Alternating {
        return Err(Error::Parse("alternating groups are generated, not listed".into()));
    }
    let order: FactoredNat = cols[2].trim().parse()?;
    let mu = field(cols[3])
        .map(|s| {
            s.split(',')
                .map(|m| m.trim().parse::<FactoredNat>())
                .collect::<Result<Vec<_>>>()
                .and_then(MuSet::normalize)
        })
        .transpose()?;
    let pattern = field(cols[4]).map(str::parse::<DegreePattern>).transpose()?;
    let graph = field(cols[5])
        .map(|s| {
            let edges = s
                .split_whitespace()
                .map(|e| {
                    let (a, b) = e
                        .split_once('-')
                        .ok_or_else(|| Error::Parse(format!("bad edge `{e}`")))?;
                    let p = a.parse::<u64>().map_err(|_| Error::Parse(format!("bad edge `{e}`")))?;
                    let q = b.parse::<u64>().map_err(|_| Error::Parse(format!("bad edge `{e}`")))?;
                    Ok((p, q))
                })
                .collect::<Result<Vec<_>>>()?;
            PrimeGraph::new(order.pi(), edges)
        })
        .transpose()?;
    let out_order = field(cols[6])
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad outer automorphism order `{s}`")))
        })
        .transpose()?;
    Ok(GroupRecord {
        name,
        aliases,
        kind,
        order,
        mu,
        pattern,
        graph,
        out_order,
    })
}

/// `n!/2` in factored form, via Legendre's formula.
pub fn alternating_order(n: u64) -> Result<FactoredNat> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("A_{n} has no order n!/2")));
    }
    let pairs = (2..=n).filter(|&p| is_prime(p)).map(|p| {
        let mut e = 0u32;
        let mut pk = p;
        while pk <= n {
            e += (n / pk) as u32;
            pk = match pk.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
        (p, if p == 2 { e - 1 } else { e })
    });
    FactoredNat::from_pairs(pairs.filter(|&(_, e)| e > 0))
}

fn alternating_groups() -> Result<Vec<GroupRecord>> {
    (5..=30)
        .map(|n| {
            Ok(GroupRecord {
                name: format!("A_{n}"),
                aliases: Vec::new(),
                kind: Kind::Alternating,
                order: alternating_order(n)?,
                mu: None,
                pattern: (n == 10).then(|| DegreePattern(vec![2, 3, 2, 1])),
                graph: None,
                out_order: Some(if n == 6 { 4 } else { 2 }),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> FactoredNat {
        s.parse().unwrap()
    }

    fn names(v: Vec<&GroupRecord>) -> Vec<&str> {
        v.into_iter().map(|r| r.name.as_str()).collect()
    }

    #[test]
    fn build_counts() {
        let c = Catalog::builtin();
        let r = c.report();
        assert_eq!(r.printed_rows, 85);
        assert_eq!(r.distinct_rows, 83);
        assert_eq!(r.collapsed_duplicates, vec!["M_12", "L_2(13)"]);
        assert_eq!(r.alternating, 26);
        assert_eq!(r.total, 109);
        assert!(!r.reconciles());
    }

    #[test]
    fn sample_records() {
        let c = Catalog::builtin();
        assert_eq!(c.get("U_5(2)").unwrap().order, f("2^10.3^5.5.11"));
        assert_eq!(c.get("A_10").unwrap().order, f("2^7.3^4.5^2.7"));
        assert_eq!(c.get("L_3(11)").unwrap().out_order, Some(2));
        assert_eq!(c.get("l3(11)").unwrap().name, "L_3(11)");
        assert_eq!(c.get("U_4(2^3)").unwrap().name, "U_4(8)");
        assert_eq!(c.get("2E6(2)").unwrap().name, "^2E_6(2)");
        assert_eq!(c.get("O8+(2)").unwrap().name, "O_8^+(2)");
        assert_eq!(c.get("F_5").unwrap().name, "HN");
        assert!(c.get("M_22").is_none());
    }

    #[test]
    fn names_are_unique() {
        let c = Catalog::builtin();
        let mut seen = std::collections::HashSet::new();
        for r in c.records() {
            assert!(seen.insert(normalize_name(&r.name)), "{}", r.name);
        }
    }

    #[test]
    fn alternating_orders() {
        assert_eq!(alternating_order(5).unwrap(), f("2^2.3.5"));
        assert_eq!(alternating_order(10).unwrap().value(), BigUint::from(1_814_400u32));
        let a30 = alternating_order(30).unwrap();
        assert_eq!(a30.pi(), PRIMES_UP_TO_29.to_vec());
        assert_eq!(a30.exponent(2), 25);
    }

    #[test]
    fn filters_from_the_case_analysis() {
        let c = Catalog::builtin();
        let l311 = f("2^4.3.5^2.7.11^3.19");
        assert_eq!(names(c.filter_candidates(&l311, &f("7.11^3.19"))), ["L_3(11)"]);
        let u48 = f("2^18.3^7.5.7^2.13.19");
        assert_eq!(names(c.filter_candidates(&u48, &f("13.19"))), ["U_4(8)"]);
        let s417 = f("2^10.3^4.5.17^4.29");
        assert_eq!(names(c.filter_candidates(&s417, &f("17^4.29"))), ["S_4(17)"]);
        assert_eq!(names(c.filter_candidates(&s417, &f("3^4.29"))), ["S_4(17)"]);
        let u417 = f("2^11.3^7.5.7.13.17^6.29");
        assert_eq!(
            names(c.filter_candidates(&u417, &f("5.7.13.17^6.29"))),
            ["U_4(17)"]
        );
    }

    #[test]
    fn stored_pattern_rows_pass() {
        let rep = Catalog::builtin().verify_table3();
        assert_eq!(rep.rows.len(), 5);
        assert!(rep.all_pass, "{rep:?}");
    }

    #[test]
    fn frobenius_feasibility() {
        assert!(!frobenius_feasible(&f("2^10.3^5.5"), &f("11")).unwrap());
        assert!(frobenius_feasible(&f("2^4"), &f("5")).unwrap());
        assert!(frobenius_feasible(&f("3^5"), &f("11")).unwrap());
        assert!(frobenius_feasible(&FactoredNat::one(), &f("5")).is_err());
    }

    #[test]
    fn loader_rejects_bad_rows() {
        let bad = [
            "X | lie | 2.31 | - | - | - | -",
            "X | lie | 2.3 | - | - | - | 5",
            "X | lie | 2.3.5 | 6,5 | 0,1,1 | - | -",
            "X | lie | 2.3 | - | - | -",
            "X | alternating | 2.3 | - | - | - | -",
            "X | lie | 2.3 | - | - | - | -\nX | lie | 2.5 | - | - | - | -",
        ];
        for text in bad {
            assert!(Catalog::parse(text).is_err(), "{text}");
        }
    }

    #[test]
    fn stored_graphs_match_their_patterns() {
        let c = Catalog::builtin();
        let g = c.get("U_5(2)").unwrap().prime_graph().unwrap();
        assert_eq!(g.edges(), vec![(2, 3), (3, 5)]);
        assert_eq!(g.degree_pattern().to_string(), "(1, 2, 1, 0)");
    }
}
