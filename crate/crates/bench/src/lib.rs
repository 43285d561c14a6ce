//! Shared inputs for the benchmarks.

use gk_core::{DegreePattern, FactoredNat, PatternInstance, PrimeGraph};

/// The six-vertex case with 17 realizations.
pub fn l3_11_instance() -> PatternInstance {
    PatternInstance::new(
        vec![2, 3, 5, 7, 11, 19],
        DegreePattern(vec![3, 2, 3, 1, 2, 1]),
    )
    .expect("valid instance")
}

/// The seven-vertex case with 170 realizations.
pub fn u4_17_instance() -> PatternInstance {
    PatternInstance::new(
        vec![2, 3, 5, 7, 13, 17, 29],
        DegreePattern(vec![4, 4, 2, 2, 2, 2, 2]),
    )
    .expect("valid instance")
}

/// Order of L_3(11).
pub fn l3_11_order() -> FactoredNat {
    "2^4.3.5^2.7.11^3.19".parse().expect("valid order")
}

/// A bound that admits a good share of the catalog.
pub fn wide_bound() -> FactoredNat {
    "2^20.3^10.5^4.7^3.11^2.13^2.17.19.23.29"
        .parse()
        .expect("valid bound")
}

/// Ten vertices, every third pair joined: large enough to make the
/// independence search do real work.
pub fn sparse_ten() -> PrimeGraph {
    let primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    let mut edges = Vec::new();
    for i in 0..primes.len() {
        for j in i + 1..primes.len() {
            if (i + 2 * j) % 3 == 0 {
                edges.push((primes[i], primes[j]));
            }
        }
    }
    PrimeGraph::new(primes.to_vec(), edges).expect("valid graph")
}
