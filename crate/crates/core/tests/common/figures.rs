//! The hand-drawn realization diagrams for four degree-pattern instances.
//!
//! Vertex labels `p1, p2, ..` are placeholders; each placeholder group
//! ranges bijectively over its listed primes. Other labels are primes.

use gk_core::PrimeGraph;

pub struct Figure {
    pub group: &'static str,
    pub primes: &'static [u64],
    pub pattern: &'static [usize],
    pub placeholders: &'static [(&'static [&'static str], &'static [u64])],
    pub diagrams: &'static [&'static [(&'static str, &'static str)]],
}

pub const FIGURES: [Figure; 4] = [
    Figure {
        group: "L_3(11)",
        primes: &[2, 3, 5, 7, 11, 19],
        pattern: &[3, 2, 3, 1, 2, 1],
        placeholders: &[
            (&["p1", "p2"], &[2, 5]),
            (&["p3", "p4"], &[3, 11]),
            (&["p5", "p6"], &[7, 19]),
        ],
        diagrams: &[
            &[("2", "5"), ("2", "3"), ("2", "11"), ("5", "3"), ("5", "11"), ("7", "19")],
            &[("p5", "p4"), ("p4", "p2"), ("p2", "p3"), ("p2", "p1"), ("p1", "p3"), ("p1", "p6")],
            &[("p1", "7"), ("p1", "19"), ("p1", "p2"), ("p2", "3"), ("p2", "11"), ("3", "11")],
            &[("7", "p1"), ("p1", "p2"), ("p2", "19"), ("p1", "p3"), ("p2", "p4"), ("p3", "p4")],
            &[("7", "p1"), ("p1", "3"), ("p1", "11"), ("p2", "3"), ("p2", "11"), ("p2", "19")],
        ],
    },
    Figure {
        group: "U_4(8)",
        primes: &[2, 3, 5, 7, 13, 19],
        pattern: &[2, 3, 2, 4, 2, 1],
        placeholders: &[(&["p1", "p2", "p3"], &[2, 5, 13])],
        diagrams: &[
            &[("p1", "7"), ("p1", "p2"), ("7", "p2"), ("7", "p3"), ("7", "3"), ("3", "19"), ("3", "p3")],
            &[("3", "7"), ("3", "p1"), ("3", "p2"), ("7", "p3"), ("7", "p1"), ("7", "p2"), ("p3", "19")],
            &[("3", "7"), ("3", "p2"), ("3", "p1"), ("7", "19"), ("7", "p1"), ("7", "p3"), ("p2", "p3")],
            &[("3", "5"), ("3", "2"), ("3", "13"), ("5", "7"), ("7", "19"), ("7", "2"), ("7", "13")],
        ],
    },
    Figure {
        group: "U_4(17)",
        primes: &[2, 3, 5, 7, 13, 17, 29],
        pattern: &[4, 4, 2, 2, 2, 2, 2],
        placeholders: &[(&["p1", "p2", "p3", "p4", "p5"], &[5, 7, 13, 17, 29])],
        diagrams: &[
            &[("p4", "2"), ("p4", "p1"), ("2", "p1"), ("2", "p2"), ("2", "3"), ("3", "p5"), ("3", "p2"), ("3", "p3"), ("p5", "p3")],
            &[("2", "p2"), ("p2", "3"), ("2", "p1"), ("2", "p3"), ("2", "p4"), ("3", "p1"), ("3", "p3"), ("3", "p5"), ("p4", "p5")],
            &[("p2", "2"), ("p2", "p5"), ("2", "3"), ("2", "p4"), ("2", "p1"), ("3", "p3"), ("3", "p5"), ("3", "p1"), ("p3", "p4")],
            &[("p4", "p1"), ("2", "p4"), ("2", "3"), ("2", "p2"), ("2", "p3"), ("3", "p5"), ("3", "p2"), ("3", "p3"), ("p5", "p1")],
        ],
    },
    Figure {
        group: "S_4(17)",
        primes: &[2, 3, 5, 17, 29],
        pattern: &[2, 2, 1, 2, 1],
        placeholders: &[(&["p1", "p2", "p3"], &[2, 3, 17])],
        diagrams: &[
            &[("2", "3"), ("2", "17"), ("3", "17"), ("5", "29")],
            &[("5", "p1"), ("p1", "p2"), ("p2", "p3"), ("p3", "29")],
        ],
    },
];

fn permutations(items: &[u64]) -> Vec<Vec<u64>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    (0..items.len())
        .flat_map(|i| {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            permutations(&rest).into_iter().map(move |mut t| {
                t.insert(0, head);
                t
            })
        })
        .collect()
}

impl Figure {
    /// All placeholder assignments, each a list of `(label, prime)`.
    fn assignments(&self) -> Vec<Vec<(&'static str, u64)>> {
        let mut out: Vec<Vec<(&'static str, u64)>> = vec![Vec::new()];
        for (labels, values) in self.placeholders {
            let mut next = Vec::new();
            for base in &out {
                for perm in permutations(values) {
                    let mut a = base.clone();
                    a.extend(labels.iter().copied().zip(perm));
                    next.push(a);
                }
            }
            out = next;
        }
        out
    }

    /// Every graph obtained from diagram `d` by instantiating placeholders.
    pub fn instances(&self, d: usize) -> Vec<PrimeGraph> {
        self.assignments()
            .into_iter()
            .map(|a| {
                let resolve = |label: &str| -> u64 {
                    a.iter()
                        .find(|(l, _)| *l == label)
                        .map(|&(_, v)| v)
                        .unwrap_or_else(|| label.parse().unwrap())
                };
                let edges = self.diagrams[d].iter().map(|&(x, y)| (resolve(x), resolve(y)));
                PrimeGraph::new(self.primes.to_vec(), edges).unwrap()
            })
            .collect()
    }
}
