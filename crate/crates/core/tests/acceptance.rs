//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! with its wall time, and exits nonzero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use gk_core::catalog::{frobenius_feasible, Catalog};
use gk_core::frobenius::{BuildOptions, Preset, Spectrum, TwoFrobeniusGroup};
use gk_core::realizer::{classes_up_to_symmetry, enumerate_graphs, edge_mask, PatternInstance};
use gk_core::{mult_order, nu_abelian, DegreePattern, Family, FactoredNat, FamilySpec, MuSet, PrimeGraph};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn f(s: &str) -> FactoredNat {
    s.parse().unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure!(
        elapsed < limit,
        "{label} took {:.2}s, limit {:.0}s",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    Ok(())
}

fn ac1_golden_rows() -> Outcome {
    let t = Instant::now();
    let rows: [(Family, u64, &str, &[u64], &[usize]); 4] = [
        (Family::L3, 11, "2^4.3.5^2.7.11^3.19", &[110, 120, 133], &[3, 2, 3, 1, 2, 1]),
        (Family::U4, 8, "2^18.3^7.5.7^2.13.19", &[36, 126, 455, 513], &[2, 3, 2, 4, 2, 1]),
        (Family::S4, 17, "2^10.3^4.5.17^4.29", &[144, 145, 272, 306], &[2, 2, 1, 2, 1]),
        (Family::U4, 17, "2^11.3^7.5.7.13.17^6.29", &[288, 2320, 2448, 2457], &[4, 4, 2, 2, 2, 2, 2]),
    ];
    let catalog = Catalog::builtin();
    for (fam, q, order, mu, pattern) in rows {
        let p = FamilySpec::new(fam, q)
            .and_then(|s| s.profile())
            .map_err(|e| format!("{fam}({q}): {e}"))?;
        ensure!(p.order == f(order), "{}: order {}", p.name, p.order);
        ensure!(p.mu.to_u64s().as_deref() == Some(mu), "{}: mu {}", p.name, p.mu);
        ensure!(p.pattern.degrees() == pattern, "{}: pattern {}", p.name, p.pattern);
        let rec = catalog.get(&p.name).ok_or(format!("{} missing from catalog", p.name))?;
        ensure!(rec.order == p.order && rec.mu.as_ref() == Some(&p.mu), "{}: catalog row differs", p.name);
        ensure!(rec.pattern.as_ref() == Some(&p.pattern), "{}: catalog pattern differs", p.name);
    }
    let e6 = catalog.get("^2E_6(2)").ok_or("^2E_6(2) missing")?;
    ensure!(e6.order == f("2^36.3^9.5^2.7^2.11.13.17.19"), "^2E_6(2) order {}", e6.order);
    let g = e6.prime_graph().ok_or("^2E_6(2) has no graph")?;
    ensure!(
        g.degree_pattern() == DegreePattern(vec![4, 4, 3, 3, 2, 0, 0, 0]),
        "^2E_6(2) pattern {}",
        g.degree_pattern()
    );
    let report = catalog.verify_table3();
    ensure!(report.all_pass && report.rows.len() == 5, "verify_table3: {report:?}");
    within("golden rows", t.elapsed(), Duration::from_secs(1))?;
    Ok("5 rows exact".into())
}

fn ac2_filters() -> Outcome {
    let t = Instant::now();
    let c = Catalog::builtin();
    let cases = [
        ("2^4.3.5^2.7.11^3.19", "7.11^3.19", "L_3(11)"),
        ("2^18.3^7.5.7^2.13.19", "13.19", "U_4(8)"),
        ("2^11.3^7.5.7.13.17^6.29", "5.7.13.17^6.29", "U_4(17)"),
        ("2^10.3^4.5.17^4.29", "17^4.29", "S_4(17)"),
        ("2^10.3^4.5.17^4.29", "3^4.29", "S_4(17)"),
    ];
    ensure!(c.records().iter().filter(|r| r.name.starts_with("A_")).count() == 26, "alternating groups missing");
    for (dividing, multiple, want) in cases {
        let got: Vec<&str> = c
            .filter_candidates(&f(dividing), &f(multiple))
            .iter()
            .map(|r| r.name.as_str())
            .collect();
        ensure!(got == [want], "({dividing}, {multiple}) gave {got:?}");
    }
    within("filters", t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("5 singletons over {} records", c.records().len()))
}

fn sweep(preset: Preset, opts: BuildOptions, threads: usize) -> Result<(TwoFrobeniusGroup, Spectrum), String> {
    let g = TwoFrobeniusGroup::build_with(preset, opts).map_err(|e| e.to_string())?;
    let sp = g.enumerate_spectrum(threads).map_err(|e| e.to_string())?;
    Ok((g, sp))
}

fn ac3_u42() -> Outcome {
    let t = Instant::now();
    let (g, sp) = sweep(Preset::U42, BuildOptions::default(), 1)?;
    ensure!(sp.elements == 25_920, "visited {} elements", sp.elements);
    ensure!(sp.order == f("2^6.3^4.5"), "order {}", sp.order);
    ensure!(sp.pattern == DegreePattern(vec![1, 1, 0]), "pattern {}", sp.pattern);
    ensure!(sp.order_components == vec![f("2^6.3^4"), f("5")], "OC {:?}", sp.order_components);
    ensure!(sp.graph.has_two_complete_components(), "shape");
    let rep = g.verify_structure(&sp);
    ensure!(rep.all_pass, "checks {:?}", rep.checks);
    within("u42", t.elapsed(), Duration::from_secs(5))?;
    Ok(format!("mu {}, {:.2}s", sp.mu, t.elapsed().as_secs_f64()))
}

fn u52_histogram() -> BTreeMap<u64, u64> {
    [
        (1, 1),
        (2, 1023),
        (3, 242),
        (5, 912_384),
        (6, 247_566),
        (10, 2_737_152),
        (11, 2_488_320),
        (15, 1_824_768),
        (30, 5_474_304),
    ]
    .into_iter()
    .collect()
}

fn ac4_u52() -> Outcome {
    let t = Instant::now();
    let (g, sp) = sweep(Preset::U52, BuildOptions::default(), 1)?;
    let single = t.elapsed();
    within("u52 single worker", single, Duration::from_secs(60))?;
    let t8 = Instant::now();
    let sp8 = g.enumerate_spectrum(8).map_err(|e| e.to_string())?;
    let eight = t8.elapsed();
    within("u52 eight workers", eight, Duration::from_secs(15))?;
    ensure!(sp8 == sp, "8-worker sweep differs from single-worker sweep");
    ensure!(sp.elements == 13_685_760, "visited {} elements", sp.elements);
    ensure!(sp.histogram == u52_histogram(), "histogram {:?}", sp.histogram);
    ensure!(sp.order == f("2^10.3^5.5.11"), "order {}", sp.order);
    ensure!(
        sp.order_components == vec![f("2^10.3^5.5"), f("11")],
        "OC {:?}",
        sp.order_components
    );
    ensure!(sp.components == vec![vec![2, 3, 5], vec![11]], "components {:?}", sp.components);
    for n in [6, 10, 15] {
        ensure!(sp.omega.contains(&n), "no element of order {n}");
    }
    ensure!(sp.graph.has_two_complete_components(), "shape");
    let rep = g.verify_structure(&sp);
    ensure!(rep.all_pass, "checks {:?}", rep.checks);
    let feasible = frobenius_feasible(&f("2^10.3^5.5"), &f("11")).map_err(|e| e.to_string())?;
    ensure!(!feasible, "11 divides 2^10.3^5.5 - 1");
    Ok(format!(
        "single {:.2}s, 8 workers {:.2}s",
        single.as_secs_f64(),
        eight.as_secs_f64()
    ))
}

fn ac5_choice_independence() -> Outcome {
    let variants = [
        BuildOptions { alternate_modulus: true, ..Default::default() },
        BuildOptions { alternate_exponent: true, ..Default::default() },
        BuildOptions { primitive_rank: 1, ..Default::default() },
        BuildOptions { alternate_modulus: true, primitive_rank: 2, alternate_exponent: true },
    ];
    let mut same_histograms = true;
    for preset in Preset::ALL {
        let (_, base) = sweep(preset, BuildOptions::default(), 0)?;
        for opts in variants {
            let (g, sp) = sweep(preset, opts, 0)?;
            ensure!(
                sp.omega == base.omega
                    && sp.mu == base.mu
                    && sp.pattern == base.pattern
                    && sp.order_components == base.order_components,
                "{preset} {opts:?} (e = {}) changed an invariant",
                g.exponent()
            );
            same_histograms &= sp.histogram == base.histogram;
        }
    }
    Ok(format!("8 rebuilds agree; order histograms identical: {same_histograms}"))
}

fn ac6_realizer() -> Outcome {
    let t = Instant::now();
    let mut instances = 0usize;
    for k in 0..=6 {
        let primes = common::PRIMES[..k].to_vec();
        let mut oracle: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
        for g in common::all_graphs(k) {
            oracle.entry(g.degree_pattern().0).or_default().push(edge_mask(&g));
        }
        let mut pattern = vec![0usize; k];
        loop {
            let inst = PatternInstance::new(primes.clone(), DegreePattern(pattern.clone()))
                .map_err(|e| e.to_string())?;
            let got: Vec<u64> = enumerate_graphs(&inst).iter().map(edge_mask).collect();
            let mut want = oracle.get(&pattern).cloned().unwrap_or_default();
            want.sort_unstable();
            ensure!(got == want, "pattern {pattern:?} on {k} vertices");
            instances += 1;
            // next pattern in base-k counting; degrees range over 0..k
            let mut i = 0;
            while i < k && pattern[i] + 1 == k {
                pattern[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
            pattern[i] += 1;
        }
    }
    let forced = enumerate_graphs(
        &PatternInstance::new(vec![2, 3, 5], DegreePattern(vec![1, 1, 0])).map_err(|e| e.to_string())?,
    );
    ensure!(
        forced.len() == 1 && forced[0].edges() == vec![(2, 3)],
        "(1, 1, 0) realizations {forced:?}"
    );
    let mut notes = Vec::new();
    for fig in &common::figures::FIGURES {
        let inst = PatternInstance::new(fig.primes.to_vec(), DegreePattern(fig.pattern.to_vec()))
            .map_err(|e| e.to_string())?;
        let graphs = enumerate_graphs(&inst);
        let classes = classes_up_to_symmetry(&graphs).map_err(|e| e.to_string())?;
        let masks: BTreeSet<u64> = graphs.iter().map(edge_mask).collect();
        let mut hit = BTreeSet::new();
        for d in 0..fig.diagrams.len() {
            for g in fig.instances(d) {
                ensure!(
                    masks.contains(&edge_mask(&g)),
                    "{} diagram {} instance {:?} is not a realization",
                    fig.group,
                    d + 1,
                    g
                );
                let c = classes
                    .iter()
                    .position(|c| c.members.contains(&g))
                    .ok_or(format!("{}: instance not in any class", fig.group))?;
                hit.insert(c);
            }
        }
        notes.push(format!(
            "{}: {} drawn / {} classes / {} labeled, classes covered {}",
            fig.group,
            fig.diagrams.len(),
            classes.len(),
            graphs.len(),
            hit.len()
        ));
    }
    within("realizer", t.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{instances} instances match the oracle; {}", notes.join("; ")))
}

fn ac7_arithmetic() -> Outcome {
    let nu = nu_abelian(&f("2^7.3^4.5^2.7"));
    ensure!(nu == BigUint::from(150u32), "nu = {nu}");
    let m = mult_order(2, 5).map_err(|e| e.to_string())?;
    ensure!(m == 4, "mult_order(2, 5) = {m}");
    Ok("nu = 150, ord_5(2) = 4".into())
}

fn ac8_properties() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b67);
    for _ in 0..2000 {
        let len = rng.gen_range(1..12);
        let input: Vec<u64> = (0..len).map(|_| rng.gen_range(1..5000)).collect();
        let mu = MuSet::from_u64s(input.iter().copied()).map_err(|e| e.to_string())?;
        let m = mu.members();
        for (i, a) in m.iter().enumerate() {
            for (j, b) in m.iter().enumerate() {
                ensure!(i == j || !a.divides(b), "{mu} is not an antichain");
            }
        }
        for &x in &input {
            ensure!(mu.omega_contains_u64(x), "{x} lost from {mu}");
        }
    }
    let (_, u42) = sweep(Preset::U42, BuildOptions::default(), 1)?;
    for &n in &u42.omega {
        for d in 1..=n {
            ensure!(n % d != 0 || u42.omega.contains(&d), "omega not closed: {d} | {n}");
        }
    }
    ensure!(u42.elements == 25_920, "element count {}", u42.elements);
    let c = Catalog::builtin();
    for r in c.records() {
        let pi = r.order.pi();
        let mut graphs = vec![
            PrimeGraph::empty(pi.clone()).map_err(|e| e.to_string())?,
            PrimeGraph::new(
                pi.clone(),
                pi.iter().enumerate().flat_map(|(i, &p)| pi[i + 1..].iter().map(move |&q| (p, q))),
            )
            .map_err(|e| e.to_string())?,
        ];
        graphs.extend(r.prime_graph());
        for g in graphs {
            let oc = g.order_components(&r.order).map_err(|e| e.to_string())?;
            let product = oc.order_components.iter().fold(FactoredNat::one(), |a, b| &a * b);
            ensure!(product == r.order, "{}: OC product {product}", r.name);
        }
        if let Some(out) = r.out_order {
            let primes = FactoredNat::from_u64(out).map_err(|e| e.to_string())?.pi();
            ensure!(primes.iter().all(|p| *p == 2 || *p == 3), "{}: out order {out}", r.name);
        }
    }
    let mut graphs = 0usize;
    for k in 0..=5 {
        for g in common::all_graphs(k) {
            common::check_independence(&g)?;
            graphs += 1;
        }
    }
    for (i, k) in (6..=8).enumerate() {
        let n = if k == 8 { 10_000 - 2 * 3334 } else { 3334 };
        for g in common::random_graphs(k, n, 0x1dea + i as u64) {
            common::check_independence(&g)?;
            graphs += 1;
        }
    }
    within("properties", t.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{graphs} graphs checked against the independence oracle"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("AC1 golden spectra and degree patterns", ac1_golden_rows),
        ("AC2 catalog filter replay", ac2_filters),
        ("AC3 (2^4 x 3^4):5:4 construction", ac3_u42),
        ("AC4 (2^10 x 3^5):11:5 construction", ac4_u52),
        ("AC5 construction-choice independence", ac5_choice_independence),
        ("AC6 realizer completeness", ac6_realizer),
        ("AC7 arithmetic anchors", ac7_arithmetic),
        ("AC8 property suites", ac8_properties),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("PASS {name} ({secs:.2}s): {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
