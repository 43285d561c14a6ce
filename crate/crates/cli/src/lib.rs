//! The `gk` command line. [`run`] takes the argument list and two writers
//! and returns the process exit code: 0 on success, 1 on a domain error,
//! 2 on a usage error.

use std::borrow::Cow;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gk_core::catalog::{BuildReport, Catalog, GroupRecord, Table3Report};
use gk_core::frobenius::{BuildOptions, Preset, Spectrum, StructureReport, TwoFrobeniusGroup};
use gk_core::gkgraph::{GraphReport, StructureGates};
use gk_core::realizer::{case_screen, classes_up_to_symmetry, enumerate_graphs, CaseScreen, PatternInstance};
use gk_core::{graph_from_mu, DegreePattern, FactoredNat, Family, FamilySpec, MuSet, PrimeGraph};

/// Environment variable naming an alternate catalog table.
pub const CATALOG_OVERRIDE_VAR: &str = "GK_CATALOG_OVERRIDE";

#[derive(Parser, Debug)]
#[command(
    name = "gk",
    version,
    about = "Prime graphs, degree patterns and order components of finite groups"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximal element orders of L2(q), L3(q), U4(q) or S4(q).
    Spectrum(FamilyArgs),
    /// Degree pattern of L2(q), L3(q), U4(q) or S4(q).
    Pattern(FamilyArgs),
    /// Prime graph report for a family member, a catalog group, or a spectrum.
    Graph(GraphArgs),
    /// Order components of a group given its spectrum and order.
    Oc {
        /// Maximal element orders, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<FactoredNat>,
        /// Group order, e.g. 2^6.3^4.5.
        #[arg(long)]
        order: FactoredNat,
    },
    /// Query the catalog of simple groups with prime divisors at most 29.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Enumerate the prime graphs with a given degree pattern.
    Realize(RealizeArgs),
    /// Build and check the explicit 2-Frobenius groups.
    Frobenius {
        #[command(subcommand)]
        action: FrobeniusAction,
    },
    /// Recompute degree patterns of every catalog row that stores a spectrum.
    #[command(name = "verify-table3")]
    VerifyTable3,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// L2, L3, U4 or S4.
    family: Family,
    /// Field size, a prime power.
    #[arg(long)]
    q: u64,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// L2, L3, U4 or S4 (with --q).
    family: Option<Family>,
    #[arg(long)]
    q: Option<u64>,
    /// A catalog group, e.g. "U_5(2)".
    #[arg(long, conflicts_with_all = ["family", "mu"])]
    group: Option<String>,
    /// Maximal element orders, comma separated (with --order).
    #[arg(long, value_delimiter = ',', conflicts_with = "family")]
    mu: Vec<FactoredNat>,
    /// Group order; its prime divisors are the vertices.
    #[arg(long)]
    order: Option<FactoredNat>,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Every record.
    List,
    /// One record by name, e.g. "L_3(11)" or "L3(11)".
    Get { name: String },
    /// Records whose order divides --dividing and is a multiple of --multiple-of.
    Filter {
        #[arg(long)]
        dividing: FactoredNat,
        #[arg(long, default_value = "1")]
        multiple_of: FactoredNat,
    },
}

#[derive(Args, Debug)]
struct RealizeArgs {
    /// Vertex primes, ascending, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    primes: Vec<u64>,
    /// Degrees aligned with --primes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pattern: Vec<usize>,
    /// Group realizations up to permutations of equal-degree vertices.
    #[arg(long)]
    classes: bool,
    /// Group order; adds connectivity, order components and gates per realization.
    #[arg(long)]
    order: Option<FactoredNat>,
}

#[derive(Subcommand, Debug)]
enum FrobeniusAction {
    /// Build a preset group: u42 = (2^4 x 3^4):5:4, u52 = (2^10 x 3^5):11:5.
    Build(BuildArgs),
}

#[derive(Args, Debug)]
struct BuildArgs {
    preset: Preset,
    /// Run the structural checks.
    #[arg(long)]
    verify: bool,
    /// Sweep all elements and report the spectrum.
    #[arg(long)]
    spectrum: bool,
    /// Worker threads for the sweep; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Use the second pinned modulus of each field.
    #[arg(long)]
    alternate_modulus: bool,
    /// Use the second admissible multiplier exponent.
    #[arg(long)]
    alternate_exponent: bool,
    /// Index of the primitive element used as log base.
    #[arg(long, default_value_t = 0)]
    primitive_rank: usize,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<gk_core::Error> for Failure {
    fn from(e: gk_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
                return 0;
            }
            let _ = write!(err, "{text}");
            return 2;
        }
    };
    match dispatch(&cli) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            if !text.is_empty() && !text.ends_with('\n') {
                let _ = writeln!(out);
            }
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\n{}", Cli::command().render_usage());
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Spectrum(a) => spectrum(fmt, a),
        Command::Pattern(a) => pattern(fmt, a),
        Command::Graph(a) => graph(fmt, a),
        Command::Oc { mu, order } => oc(fmt, mu, order),
        Command::Catalog { action } => catalog(fmt, action),
        Command::Realize(a) => realize(fmt, a),
        Command::Frobenius {
            action: FrobeniusAction::Build(a),
        } => frobenius(fmt, a),
        Command::VerifyTable3 => verify_table3(fmt),
    }
}

fn json<T: Serialize>(value: &T) -> Outcome {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Domain(e.to_string()))
}

fn no_dot(fmt: Format, what: &str) -> Result<(), Failure> {
    if fmt == Format::Dot {
        return Err(Failure::Usage(format!("--format dot is not available for {what}")));
    }
    Ok(())
}

fn load_catalog() -> Result<Cow<'static, Catalog>, Failure> {
    match std::env::var_os(CATALOG_OVERRIDE_VAR) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Failure::Domain(format!("cannot read catalog {}: {e}", path.to_string_lossy()))
            })?;
            Ok(Cow::Owned(Catalog::parse(&text)?))
        }
        None => Ok(Cow::Borrowed(Catalog::builtin())),
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn set<T: ToString>(items: &[T]) -> String {
    format!("{{{}}}", join(items, ", "))
}

fn edge_list(g: &PrimeGraph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(p, q)| format!("{p}-{q}")).collect();
    if edges.is_empty() {
        "(none)".into()
    } else {
        edges.join(" ")
    }
}

#[derive(Serialize)]
struct SpectrumJson<'a> {
    group: String,
    mu: &'a MuSet,
}

fn spectrum(fmt: Format, a: &FamilyArgs) -> Outcome {
    no_dot(fmt, "spectrum")?;
    let spec = FamilySpec::new(a.family, a.q)?;
    let mu = spec.mu()?;
    match fmt {
        Format::Json => json(&SpectrumJson {
            group: spec.name(),
            mu: &mu,
        }),
        _ => Ok(mu.to_string()),
    }
}

#[derive(Serialize)]
struct PatternJson<'a> {
    group: String,
    vertices: &'a [u64],
    pattern: &'a DegreePattern,
}

fn pattern(fmt: Format, a: &FamilyArgs) -> Outcome {
    no_dot(fmt, "pattern")?;
    let p = FamilySpec::new(a.family, a.q)?.profile()?;
    match fmt {
        Format::Json => json(&PatternJson {
            group: p.name.clone(),
            vertices: p.graph.vertices(),
            pattern: &p.pattern,
        }),
        _ => Ok(p.pattern.to_string()),
    }
}

#[derive(Serialize)]
struct GraphJson {
    #[serde(flatten)]
    report: GraphReport,
    gates: StructureGates,
}

fn graph(fmt: Format, a: &GraphArgs) -> Outcome {
    let (g, order) = if let Some(family) = a.family {
        let q = a
            .q
            .ok_or_else(|| Failure::Usage("a family needs --q".into()))?;
        let p = FamilySpec::new(family, q)?.profile()?;
        (p.graph, p.order)
    } else if let Some(name) = &a.group {
        let cat = load_catalog()?;
        let rec = cat
            .get(name)
            .ok_or_else(|| Failure::Domain(format!("no catalog group named `{name}`")))?;
        let g = rec.prime_graph().ok_or_else(|| {
            Failure::Domain(format!("{} has no stored spectrum or prime graph", rec.name))
        })?;
        (g, rec.order.clone())
    } else if !a.mu.is_empty() {
        let order = a
            .order
            .clone()
            .ok_or_else(|| Failure::Usage("--mu needs --order".into()))?;
        let mu = MuSet::normalize(a.mu.clone())?;
        (graph_from_mu(&mu, &order.pi())?, order)
    } else {
        return Err(Failure::Usage(
            "give a family with --q, --group <name>, or --mu with --order".into(),
        ));
    };
    let report = g.report(&order)?;
    let gates = g.structure_gates();
    match fmt {
        Format::Dot => Ok(g.to_dot()),
        Format::Json => json(&GraphJson { report, gates }),
        Format::Text => Ok(graph_text(&g, &report, &gates)),
    }
}

fn graph_text(g: &PrimeGraph, r: &GraphReport, gates: &StructureGates) -> String {
    let comps: Vec<String> = r.components.iter().map(|c| set(c)).collect();
    let t_at: Vec<String> = r.t_at.iter().map(|(p, t)| format!("{p}:{t}")).collect();
    let gate = match gates.almost_simple_gate {
        Some(b) => b.to_string(),
        None => "n/a".into(),
    };
    let witness = match gates.nonsolvable_witness {
        Some(w) => set(&w),
        None => "none".into(),
    };
    format!(
        "vertices: {}\nedges: {}\npattern: {}\ncomponents: {}\norder components: {}\n\
         t: {}\nt(r): {}\nalmost simple gate: {gate}\nindependent triple: {witness}\n\
         two complete components: {}\n",
        join(&r.vertices, ", "),
        edge_list(g),
        r.pattern,
        comps.join(" "),
        set(&r.order_components),
        r.t,
        t_at.join(" "),
        gates.two_frobenius_shape
    )
}

#[derive(Serialize)]
struct OcJson {
    components: Vec<Vec<u64>>,
    order_components: Vec<FactoredNat>,
}

fn oc(fmt: Format, mu: &[FactoredNat], order: &FactoredNat) -> Outcome {
    no_dot(fmt, "oc")?;
    let mu = MuSet::normalize(mu.to_vec())?;
    let g = graph_from_mu(&mu, &order.pi())?;
    let oc = g.order_components(order)?;
    match fmt {
        Format::Json => json(&OcJson {
            components: oc.components,
            order_components: oc.order_components,
        }),
        _ => Ok(set(&oc.order_components)),
    }
}

fn record_text(r: &GroupRecord) -> String {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let mut s = format!("name: {}\n", r.name);
    if !r.aliases.is_empty() {
        s.push_str(&format!("aliases: {}\n", r.aliases.join(", ")));
    }
    s.push_str(&format!(
        "kind: {}\norder: {}\nmu: {}\npattern: {}\n",
        r.kind,
        r.order,
        opt(r.mu.as_ref().map(MuSet::to_string)),
        opt(r.pattern.as_ref().map(DegreePattern::to_string)),
    ));
    if let Some(g) = &r.graph {
        s.push_str(&format!("edges: {}\n", edge_list(g)));
    }
    s.push_str(&format!("out: {}\n", opt(r.out_order.map(|o| o.to_string()))));
    s
}

fn catalog(fmt: Format, action: &CatalogAction) -> Outcome {
    no_dot(fmt, "catalog")?;
    let cat = load_catalog()?;
    let list = |records: Vec<&GroupRecord>| -> Outcome {
        match fmt {
            Format::Json => json(&records),
            _ => Ok(records
                .iter()
                .map(|r| format!("{}\n", r.name))
                .collect::<String>()),
        }
    };
    match action {
        CatalogAction::List => match fmt {
            Format::Json => json(&cat.records()),
            _ => Ok(cat
                .records()
                .iter()
                .map(|r| format!("{:<14} {:<11} {}\n", r.name, r.kind.to_string(), r.order))
                .collect()),
        },
        CatalogAction::Get { name } => {
            let r = cat
                .get(name)
                .ok_or_else(|| Failure::Domain(format!("no catalog group named `{name}`")))?;
            match fmt {
                Format::Json => json(r),
                _ => Ok(record_text(r)),
            }
        }
        CatalogAction::Filter {
            dividing,
            multiple_of,
        } => list(cat.filter_candidates(dividing, multiple_of)),
    }
}

#[derive(Serialize)]
struct ClassJson<'a> {
    size: usize,
    representative: &'a PrimeGraph,
}

#[derive(Serialize)]
struct RealizeJson<'a> {
    primes: &'a [u64],
    pattern: &'a DegreePattern,
    count: usize,
    graphs: &'a [PrimeGraph],
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<ClassJson<'a>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    screen: Option<&'a CaseScreen>,
}

fn realize(fmt: Format, a: &RealizeArgs) -> Outcome {
    let inst = PatternInstance::new(a.primes.clone(), DegreePattern(a.pattern.clone()))?;
    let graphs = enumerate_graphs(&inst);
    let classes = if a.classes {
        Some(classes_up_to_symmetry(&graphs)?)
    } else {
        None
    };
    let screen = a
        .order
        .as_ref()
        .map(|order| case_screen(&inst, order))
        .transpose()?;
    match fmt {
        Format::Dot => {
            let shown: Vec<&PrimeGraph> = match &classes {
                Some(cs) => cs.iter().map(|c| &c.representative).collect(),
                None => graphs.iter().collect(),
            };
            Ok(shown.iter().map(|g| format!("{}\n", g.to_dot())).collect())
        }
        Format::Json => json(&RealizeJson {
            primes: inst.primes(),
            pattern: inst.pattern(),
            count: graphs.len(),
            graphs: &graphs,
            classes: classes.as_ref().map(|cs| {
                cs.iter()
                    .map(|c| ClassJson {
                        size: c.size(),
                        representative: &c.representative,
                    })
                    .collect()
            }),
            screen: screen.as_ref(),
        }),
        Format::Text => {
            let mut s = format!(
                "{} realizations of {} on {}\n",
                graphs.len(),
                inst.pattern(),
                join(inst.primes(), ", ")
            );
            for g in &graphs {
                s.push_str(&format!("  {}\n", edge_list(g)));
            }
            if let Some(cs) = &classes {
                s.push_str(&format!("{} classes\n", cs.len()));
                for c in cs {
                    s.push_str(&format!("  size {}: {}\n", c.size(), edge_list(&c.representative)));
                }
            }
            if let Some(sc) = &screen {
                s.push_str(&format!(
                    "{} connected, {} disconnected\n",
                    sc.connected, sc.disconnected
                ));
                for r in &sc.realizations {
                    let witness = r
                        .gates
                        .nonsolvable_witness
                        .map(|w| set(&w))
                        .unwrap_or_else(|| "none".into());
                    let edges: Vec<String> = r.edges.iter().map(|(p, q)| format!("{p}-{q}")).collect();
                    s.push_str(&format!(
                        "  {} | {} | oc {} | triple {witness}\n",
                        edges.join(" "),
                        if r.connected { "connected" } else { "disconnected" },
                        set(&r.order_components),
                    ));
                }
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct Parameters {
    field1: String,
    modulus1: Vec<u64>,
    field2: String,
    modulus2: Vec<u64>,
    r: u64,
    s: u64,
    e: u64,
    a1: u32,
    a2: u32,
}

#[derive(Serialize)]
struct FrobeniusJson<'a> {
    preset: Preset,
    structure: &'static str,
    order: FactoredNat,
    elements: u64,
    parameters: Parameters,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    spectrum: Option<SpectrumFields<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<&'a StructureReport>,
}

#[derive(Serialize)]
struct SpectrumFields<'a> {
    omega: &'a [u64],
    mu: &'a MuSet,
    pattern: &'a DegreePattern,
    components: &'a [Vec<u64>],
    order_components: &'a [FactoredNat],
    histogram: &'a std::collections::BTreeMap<u64, u64>,
}

fn frobenius(fmt: Format, a: &BuildArgs) -> Outcome {
    let opts = BuildOptions {
        alternate_modulus: a.alternate_modulus,
        primitive_rank: a.primitive_rank,
        alternate_exponent: a.alternate_exponent,
    };
    let g = TwoFrobeniusGroup::build_with(a.preset, opts)?;
    let need_sweep = a.spectrum || a.verify || fmt == Format::Dot;
    let sp: Option<Spectrum> = if need_sweep {
        Some(g.enumerate_spectrum(a.threads)?)
    } else {
        None
    };
    let checks = match (&sp, a.verify) {
        (Some(sp), true) => Some(g.verify_structure(sp)),
        _ => None,
    };
    let (f1, f2) = g.fields();
    let (a1, a2) = g.frobenius_exponents();
    let params = Parameters {
        field1: format!("F_{}^{}", f1.characteristic(), f1.degree()),
        modulus1: f1.modulus().to_vec(),
        field2: format!("F_{}^{}", f2.characteristic(), f2.degree()),
        modulus2: f2.modulus().to_vec(),
        r: g.r(),
        s: g.s(),
        e: g.exponent(),
        a1,
        a2,
    };
    let shown = sp.as_ref().filter(|_| a.spectrum);
    match fmt {
        Format::Dot => Ok(sp.as_ref().map(|s| s.graph.to_dot()).unwrap_or_default()),
        Format::Json => json(&FrobeniusJson {
            preset: a.preset,
            structure: a.preset.structure(),
            order: g.order(),
            elements: g.element_count(),
            parameters: params,
            spectrum: shown.map(|s| SpectrumFields {
                omega: &s.omega,
                mu: &s.mu,
                pattern: &s.pattern,
                components: &s.components,
                order_components: &s.order_components,
                histogram: &s.histogram,
            }),
            checks: checks.as_ref(),
        }),
        Format::Text => {
            let mut s = format!(
                "group {} of order {} ({} elements)\n\
                 fields {} mod {:?}, {} mod {:?}\n\
                 r = {}, s = {}, e = {}, frobenius exponents ({}, {})\n",
                a.preset.structure(),
                g.order(),
                g.element_count(),
                params.field1,
                params.modulus1,
                params.field2,
                params.modulus2,
                params.r,
                params.s,
                params.e,
                params.a1,
                params.a2
            );
            if let Some(sp) = shown {
                let hist: Vec<String> = sp.histogram.iter().map(|(n, c)| format!("{n}:{c}")).collect();
                let comps: Vec<String> = sp.components.iter().map(|c| set(c)).collect();
                s.push_str(&format!(
                    "omega: {}\nmu: {}\npattern: {}\ncomponents: {}\norder components: {}\n\
                     elements by order: {}\n",
                    set(&sp.omega),
                    sp.mu,
                    sp.pattern,
                    comps.join(" "),
                    set(&sp.order_components),
                    hist.join(" ")
                ));
            }
            if let Some(rep) = &checks {
                for c in &rep.checks {
                    s.push_str(&format!(
                        "check {}: {} ({})\n",
                        c.name,
                        if c.pass { "pass" } else { "FAIL" },
                        c.detail
                    ));
                }
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct Table3Json<'a> {
    #[serde(flatten)]
    report: &'a Table3Report,
    catalog: &'a BuildReport,
}

fn verify_table3(fmt: Format) -> Outcome {
    no_dot(fmt, "verify-table3")?;
    let cat = load_catalog()?;
    let report = cat.verify_table3();
    let text = match fmt {
        Format::Json => json(&Table3Json {
            report: &report,
            catalog: cat.report(),
        })?,
        _ => {
            let mut s = String::new();
            for r in &report.rows {
                let shown = |d: &Option<DegreePattern>| {
                    d.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into())
                };
                s.push_str(&format!(
                    "{} {}: stored {} computed {}\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.name,
                    shown(&r.stored),
                    shown(&r.computed)
                ));
            }
            s.push_str(&format!("catalog: {}\n", cat.report()));
            s
        }
    };
    if report.all_pass {
        Ok(text)
    } else {
        Err(Failure::Domain(format!("{text}degree pattern mismatch")))
    }
}
