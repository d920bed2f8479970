//! `ringline`: construct finite rings, enumerate their projective lines and
//! distant graphs, search spreads and parallelisms of the Grassmannian
//! model, and regenerate the small-order classification catalog.

mod formats;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ringline_core::catalog::{
    signature_display, verify_classification, CatalogError, CatalogSource, ClassificationReport,
};
use ringline_core::graph::{
    enumerate_clique_partitions, enumerate_max_cliques, find_clique_partition, is_isomorphic,
    Graph, GraphError,
};
use ringline_core::grassmann::{
    analyze_parallelism, classify_orbits, gaussian_binomial, parse_parallelism_fixture,
    Grassmannian, GrassmannError, Parallelism, TripleKind,
};
use ringline_core::pline::{radical_projection, ProjectiveLine};
use ringline_core::ring::{
    jacobson_radical, make_ring, quotient_ring, simple_factor_signature, units, FiniteRing,
    RingError,
};

const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "ringline",
    version,
    about = "Projective lines over finite rings, their distant graphs, and Grassmannian spreads",
    after_help = "Exit codes: 0 success/valid, 1 invalid result, 2 usage or parse error, 3 budget exceeded.\n\
                  RINGLINE_SEED seeds the randomized property tests only; command output is deterministic."
)]
struct Cli {
    /// Cap on worker threads. Searches currently run on a single worker, so
    /// any value is honored trivially; output never depends on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    G6,
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a ring and report its size, units, radical, and residue.
    RingInfo { spec: String },
    /// Enumerate the projective line over a ring.
    Pline {
        spec: String,
        /// List every point's canonical generator pair.
        #[arg(long)]
        points: bool,
    },
    /// Export the distant graph of a ring.
    GraphExport {
        spec: String,
        #[arg(long, value_enum)]
        format: ExportFormat,
    },
    /// Test two distant graphs for isomorphism.
    Iso { spec_a: String, spec_b: String },
    /// Find (or enumerate) partitions of a distant graph into maximum cliques.
    Partition {
        spec: String,
        /// Enumerate all partitions instead of finding one.
        #[arg(long)]
        enumerate: bool,
        /// Print at most this many partitions when enumerating.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Enumerate the spreads of G(n, 2n, q).
    Spreads {
        n: usize,
        q: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Enumerate the parallelisms of G(n, 2n, q).
    Parallelisms {
        n: usize,
        q: usize,
        /// Print only the count.
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        budget: Option<u64>,
        /// Stop at the first parallelism found (best effort for q >= 3).
        #[arg(long)]
        first: bool,
    },
    /// Split all parallelisms of G(n, 2n, q) into linear-group orbits.
    ClassifyOrbits {
        n: usize,
        q: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Pair/triple clique analysis of a parallelism fixture.
    Analyze {
        fixture: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
    },
    /// Regenerate the distant-graph classification at order p^k.
    Catalog {
        p: usize,
        k: usize,
        /// Emit the versioned JSON document instead of the text table.
        #[arg(long)]
        json: bool,
    },
    /// Verify a parallelism fixture: validity, analysis summary, orbit.
    VerifyFixture {
        path: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
    },
}

enum CmdError {
    Usage(String),
    Invalid(String),
    Budget(String),
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::Usage(m) | CmdError::Invalid(m) | CmdError::Budget(m) => write!(f, "{m}"),
        }
    }
}

impl From<RingError> for CmdError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Parse { .. } | RingError::Unsupported(_) => CmdError::Usage(e.to_string()),
            RingError::CapExceeded { .. } => CmdError::Budget(e.to_string()),
            _ => CmdError::Invalid(e.to_string()),
        }
    }
}

impl From<GrassmannError> for CmdError {
    fn from(e: GrassmannError) -> Self {
        match e {
            GrassmannError::BadFieldOrder(_)
            | GrassmannError::DimensionMismatch
            | GrassmannError::NotMatrixRing(_)
            | GrassmannError::Fixture { .. } => CmdError::Usage(e.to_string()),
            GrassmannError::CapExceeded { .. }
            | GrassmannError::GroupTooLarge { .. }
            | GrassmannError::Budget(_) => CmdError::Budget(e.to_string()),
            GrassmannError::GenerationFailure { .. }
            | GrassmannError::ActionNotClosed
            | GrassmannError::InvalidParallelism(_) => CmdError::Invalid(e.to_string()),
        }
    }
}

impl From<CatalogError> for CmdError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Unsupported { .. } => CmdError::Usage(e.to_string()),
            CatalogError::Ring(e) => e.into(),
            CatalogError::Graph(e) => e.into(),
        }
    }
}

impl From<GraphError> for CmdError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooLarge { .. } => CmdError::Budget(e.to_string()),
            _ => CmdError::Invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Invalid(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), CmdError> {
    match command {
        Command::RingInfo { spec } => ring_info(&spec),
        Command::Pline { spec, points } => pline(&spec, points),
        Command::GraphExport { spec, format } => graph_export(&spec, format),
        Command::Iso { spec_a, spec_b } => iso(&spec_a, &spec_b),
        Command::Partition {
            spec,
            enumerate,
            limit,
            budget,
        } => partition(&spec, enumerate, limit, budget.unwrap_or(DEFAULT_BUDGET)),
        Command::Spreads { n, q, budget } => spreads(n, q, budget.unwrap_or(DEFAULT_BUDGET)),
        Command::Parallelisms {
            n,
            q,
            count_only,
            budget,
            first,
        } => parallelisms(n, q, count_only, budget.unwrap_or(DEFAULT_BUDGET), first),
        Command::ClassifyOrbits { n, q, budget } => {
            classify_orbits_cmd(n, q, budget.unwrap_or(DEFAULT_BUDGET))
        }
        Command::Analyze { fixture, n, q } => analyze_cmd(&fixture, n, q),
        Command::Catalog { p, k, json } => catalog_cmd(p, k, json),
        Command::VerifyFixture { path, n, q } => verify_fixture_cmd(&path, n, q),
    }
}

fn ring_info(spec: &str) -> Result<(), CmdError> {
    let ring = make_ring(spec)?;
    println!("ring: {}", ring.label());
    println!("size: {}", ring.size());
    println!("zero: {}  one: {}", ring.zero(), ring.one());
    let us = units(&ring);
    if us.len() <= 100 {
        println!("units: {} {:?}", us.len(), us);
    } else {
        println!("units: {}", us.len());
    }
    let j = jacobson_radical(&ring);
    if j.len() <= 100 {
        println!("radical: {} {:?}", j.len(), j.members());
    } else {
        println!("radical: {}", j.len());
    }
    let quotient = quotient_ring(&ring, &j).expect("radical is two-sided");
    let signature = simple_factor_signature(&quotient.ring)?;
    println!(
        "residue: size {} = {}",
        quotient.ring.size(),
        signature_display(&signature)
    );
    Ok(())
}

fn pline(spec: &str, points: bool) -> Result<(), CmdError> {
    let ring = make_ring(spec)?;
    let line = ProjectiveLine::new(&ring);
    let graph = line.distant_graph();
    println!("ring: {} (size {})", ring.label(), ring.size());
    println!("points: {}", line.len());
    match graph.regular_degree() {
        Some(d) => println!("degree: {d}"),
        None => println!("degree: not regular"),
    }
    let (omega, cliques) = enumerate_max_cliques(&graph);
    println!("omega: {omega} ({} maximum cliques)", cliques.len());
    if points {
        for (i, p) in line.points().iter().enumerate() {
            println!("point {i}: ({},{})", p.canonical.0, p.canonical.1);
        }
    }
    Ok(())
}

fn graph_export(spec: &str, format: ExportFormat) -> Result<(), CmdError> {
    let ring = make_ring(spec)?;
    let graph = ProjectiveLine::new(&ring).distant_graph();
    let mut stdout = std::io::stdout().lock();
    match format {
        ExportFormat::G6 => {
            let mut bytes = formats::to_graph6(&graph);
            bytes.push(b'\n');
            stdout.write_all(&bytes)?;
        }
        ExportFormat::Dot => stdout.write_all(formats::to_dot(&graph).as_bytes())?,
        ExportFormat::Json => stdout.write_all(formats::to_json(&graph).as_bytes())?,
    }
    Ok(())
}

fn iso(spec_a: &str, spec_b: &str) -> Result<(), CmdError> {
    let ring_a = make_ring(spec_a)?;
    let ring_b = make_ring(spec_b)?;
    let ga = ProjectiveLine::new(&ring_a).distant_graph();
    let gb = ProjectiveLine::new(&ring_b).distant_graph();
    println!("{}: {} vertices", ring_a.label(), ga.n());
    println!("{}: {} vertices", ring_b.label(), gb.n());
    match is_isomorphic(&ga, &gb)? {
        Some(witness) => {
            println!("isomorphic: yes");
            println!("witness: {witness:?}");
            Ok(())
        }
        None => Err(CmdError::Invalid("isomorphic: no".into())),
    }
}

fn print_partition_blocks(graph: &Graph, blocks: &[Vec<u32>]) {
    for (i, block) in blocks.iter().enumerate() {
        let rendered: Vec<String> = block
            .iter()
            .map(|&v| match graph.labels() {
                Some(labels) => labels[v as usize].clone(),
                None => v.to_string(),
            })
            .collect();
        println!("block {}: {}", i + 1, rendered.join(" "));
    }
}

fn partition(
    spec: &str,
    enumerate: bool,
    limit: Option<usize>,
    budget: u64,
) -> Result<(), CmdError> {
    let ring = make_ring(spec)?;
    let graph = ProjectiveLine::new(&ring).distant_graph();
    let (omega, _) = enumerate_max_cliques(&graph);
    println!(
        "ring: {}, graph: {} vertices, omega {omega}",
        ring.label(),
        graph.n()
    );
    if enumerate {
        let all = enumerate_clique_partitions(&graph, budget).map_err(GrassmannError::Budget)?;
        println!("partitions: {}", all.len());
        for (i, p) in all.iter().enumerate().take(limit.unwrap_or(usize::MAX)) {
            println!("partition {}:", i + 1);
            print_partition_blocks(&graph, &p.blocks);
        }
        Ok(())
    } else {
        match find_clique_partition(&graph) {
            Some(p) => {
                println!(
                    "partition found: {} blocks of size {omega}",
                    p.block_count()
                );
                print_partition_blocks(&graph, &p.blocks);
                Ok(())
            }
            None => Err(CmdError::Invalid(
                "no partition into maximum cliques exists".into(),
            )),
        }
    }
}

fn spreads(n: usize, q: usize, budget: u64) -> Result<(), CmdError> {
    let grass = Grassmannian::new(n, q)?;
    println!(
        "subspaces: {} (gaussian binomial [{} {}]_{} = {})",
        grass.len(),
        2 * n,
        n,
        q,
        gaussian_binomial(2 * n, n, q)
    );
    let spreads = grass.enumerate_spreads(budget)?;
    println!("spreads: {} (size {} each)", spreads.len(), grass.spread_size());
    for (i, s) in spreads.iter().enumerate() {
        let members: Vec<String> = s.members.iter().map(|m| m.to_string()).collect();
        println!("spread {}: {}", i, members.join(" "));
    }
    Ok(())
}

fn parallelisms(
    n: usize,
    q: usize,
    count_only: bool,
    budget: u64,
    first: bool,
) -> Result<(), CmdError> {
    let grass = Grassmannian::new(n, q)?;
    let spreads = grass.enumerate_spreads(budget)?;
    println!("subspaces: {}, spreads: {}", grass.len(), spreads.len());
    let cap = if first { Some(1) } else { None };
    let pars = grass.enumerate_parallelisms(&spreads, budget, cap)?;
    println!("parallelisms: {}", pars.len());
    if !count_only {
        for (i, p) in pars.iter().enumerate() {
            let ids: Vec<String> = p.spreads.iter().map(|s| s.to_string()).collect();
            println!("parallelism {}: spreads {}", i, ids.join(" "));
        }
    }
    Ok(())
}

fn classify_orbits_cmd(n: usize, q: usize, budget: u64) -> Result<(), CmdError> {
    let grass = Grassmannian::new(n, q)?;
    let spreads = grass.enumerate_spreads(budget)?;
    let pars = grass.enumerate_parallelisms(&spreads, budget, None)?;
    let action = grass.gl_action()?;
    println!(
        "subspaces: {}, spreads: {}, parallelisms: {}",
        grass.len(),
        spreads.len(),
        pars.len()
    );
    println!("group order: {}", action.order);
    let orbits = classify_orbits(&spreads, &action, &pars)?;
    println!("orbits: {}", orbits.len());
    for (i, orbit) in orbits.iter().enumerate() {
        let rep = &pars[orbit[0] as usize];
        let ids: Vec<String> = rep.spreads.iter().map(|s| s.to_string()).collect();
        println!(
            "orbit {}: {} parallelisms (representative: spreads {})",
            (b'A' + i as u8) as char,
            orbit.len(),
            ids.join(" ")
        );
    }
    Ok(())
}

/// Roman labels for spreads in fixture order, matching the table layout.
fn roman(i: usize) -> String {
    const NUMERALS: [&str; 12] = [
        "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII",
    ];
    NUMERALS
        .get(i)
        .map(|s| s.to_string())
        .unwrap_or_else(|| (i + 1).to_string())
}

fn analyze_cmd(path: &PathBuf, n: usize, q: usize) -> Result<(), CmdError> {
    let grass = Grassmannian::new(n, q)?;
    let text = std::fs::read_to_string(path)?;
    let spreads = parse_parallelism_fixture(&grass, &text)?;
    println!("fixture: {} spreads of G({n},{},{q})", spreads.len(), 2 * n);
    let graph = grass.distant_graph();
    let analysis = analyze_parallelism(&grass, &graph, &spreads)
        .map_err(|e| CmdError::Invalid(e.to_string()))?;
    println!("valid parallelism: yes");
    for p in &analysis.pairs {
        println!(
            "pair {} {}: largest mixed clique {} ({} of them)",
            roman(p.pair.0),
            roman(p.pair.1),
            p.clique_size,
            p.cliques.len()
        );
    }
    let disjoint: Vec<&ringline_core::grassmann::TripleAnalysis> = analysis
        .triples
        .iter()
        .filter(|t| t.kind == TripleKind::Disjoint)
        .collect();
    let common = analysis
        .triples
        .iter()
        .filter(|t| t.kind == TripleKind::CommonVertex)
        .count();
    let irregular = analysis.triples.len() - disjoint.len() - common;
    println!(
        "triples: {} pairwise-disjoint kind, {} common-vertex kind, {} irregular",
        disjoint.len(),
        common,
        irregular
    );
    println!(
        "projective plane of order 2: {}",
        if analysis.fano.is_projective_plane {
            "yes"
        } else {
            "no"
        }
    );
    for line in &analysis.fano.lines {
        println!(
            "line: {} {} {}",
            roman(line[0]),
            roman(line[1]),
            roman(line[2])
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct CatalogItemDoc {
    description: String,
    source: String,
    model_only: bool,
    vertices: usize,
    degree: usize,
    omega: usize,
    partition_blocks: Option<usize>,
    residue_factors: Vec<(usize, usize)>,
    jacobson_size: usize,
    matches_expected: bool,
}

#[derive(Serialize)]
struct CatalogDoc {
    version: u32,
    p: usize,
    k: usize,
    order: usize,
    items: Vec<CatalogItemDoc>,
    pairwise_non_isomorphic: bool,
    findings: Vec<String>,
}

fn catalog_doc(report: &ClassificationReport) -> CatalogDoc {
    CatalogDoc {
        version: 1,
        p: report.p,
        k: report.k,
        order: report.items[0].computed.ring_order,
        items: report
            .items
            .iter()
            .map(|item| CatalogItemDoc {
                description: item.description.clone(),
                source: item.source.to_string(),
                model_only: item.model_only,
                vertices: item.computed.vertices,
                degree: item.computed.degree,
                omega: item.computed.omega,
                partition_blocks: item.computed.partition_blocks,
                residue_factors: item.computed.rj_signature.clone(),
                jacobson_size: item.computed.jacobson_size,
                matches_expected: item.matches,
            })
            .collect(),
        pairwise_non_isomorphic: report.pairwise_non_isomorphic,
        findings: report.findings.clone(),
    }
}

fn catalog_cmd(p: usize, k: usize, json: bool) -> Result<(), CmdError> {
    let report = verify_classification(p, k)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&catalog_doc(&report)).expect("serializable")
        );
        return Ok(());
    }
    println!(
        "distant graphs at order {}^{} = {}",
        report.p,
        report.k,
        report.items[0].computed.ring_order
    );
    println!();
    println!(
        "{:<4} {:<24} {:>8} {:>7} {:>6} {:>7} {:>5}  {:<14} {}",
        "item", "source", "vertices", "degree", "omega", "blocks", "|J|", "residue", "status"
    );
    for (i, item) in report.items.iter().enumerate() {
        let blocks = item
            .computed
            .partition_blocks
            .map(|b| b.to_string())
            .unwrap_or_else(|| "-".into());
        let status = match (item.matches, item.model_only) {
            (true, false) => "ok",
            (true, true) => "ok (model-only)",
            (false, false) => "MISMATCH",
            (false, true) => "MISMATCH (model-only)",
        };
        println!(
            "{:<4} {:<24} {:>8} {:>7} {:>6} {:>7} {:>5}  {:<14} {}",
            i + 1,
            item.source.to_string(),
            item.computed.vertices,
            item.computed.degree,
            item.computed.omega,
            blocks,
            item.computed.jacobson_size,
            signature_display(&item.computed.rj_signature),
            status
        );
    }
    println!();
    println!(
        "pairwise non-isomorphic: {}",
        if report.pairwise_non_isomorphic {
            "yes"
        } else {
            "NO"
        }
    );
    if report.findings.is_empty() {
        println!("findings: none");
    } else {
        println!("findings:");
        for f in &report.findings {
            println!("  - {f}");
        }
    }
    Ok(())
}

fn verify_fixture_cmd(path: &PathBuf, n: usize, q: usize) -> Result<(), CmdError> {
    let grass = Grassmannian::new(n, q)?;
    let text = std::fs::read_to_string(path)?;
    let fixture = parse_parallelism_fixture(&grass, &text)?;
    println!("fixture: {} spreads of G({n},{},{q})", fixture.len(), 2 * n);
    if let Err(msg) = grass.validate_parallelism(&fixture) {
        println!("valid parallelism: no");
        return Err(CmdError::Invalid(format!("invalid: {msg}")));
    }
    println!("valid parallelism: yes");
    let graph = grass.distant_graph();
    let analysis = analyze_parallelism(&grass, &graph, &fixture)
        .map_err(|e| CmdError::Invalid(e.to_string()))?;
    let all_pairs_single_4 = analysis
        .pairs
        .iter()
        .all(|p| p.clique_size == 4 && p.cliques.len() == 1);
    println!(
        "pair analysis: {}",
        if all_pairs_single_4 {
            "every spread pair has exactly one largest mixed clique, of size 4"
        } else {
            "see `analyze` for the full pair report"
        }
    );
    println!(
        "projective plane of order 2: {}",
        if analysis.fano.is_projective_plane {
            "yes"
        } else {
            "no"
        }
    );
    match fixture_orbit(&grass, &fixture) {
        Ok((label, sizes)) => {
            let sizes: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
            println!("orbit: {label} (orbit sizes: {})", sizes.join(", "));
        }
        Err(e) => println!("orbit: unavailable ({e})"),
    }
    Ok(())
}

fn fixture_orbit(
    grass: &Grassmannian,
    fixture: &[Vec<u32>],
) -> Result<(char, Vec<usize>), CmdError> {
    let spreads = grass.enumerate_spreads(DEFAULT_BUDGET)?;
    let pars = grass.enumerate_parallelisms(&spreads, DEFAULT_BUDGET, None)?;
    let action = grass.gl_action()?;
    let orbits = classify_orbits(&spreads, &action, &pars)?;
    let spread_index: BTreeMap<&[u32], u32> = spreads
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members.as_slice(), i as u32))
        .collect();
    let mut ids = Vec::with_capacity(fixture.len());
    for members in fixture {
        ids.push(
            *spread_index
                .get(members.as_slice())
                .ok_or(CmdError::Invalid("spread not in canonical list".into()))?,
        );
    }
    ids.sort_unstable();
    let target = Parallelism { spreads: ids };
    let pos = pars
        .iter()
        .position(|p| *p == target)
        .ok_or(CmdError::Invalid("parallelism not in canonical list".into()))?;
    let orbit_idx = orbits
        .iter()
        .position(|o| o.binary_search(&(pos as u32)).is_ok())
        .expect("orbits partition the list");
    let label = (b'A' + orbit_idx as u8) as char;
    Ok((label, orbits.iter().map(Vec::len).collect()))
}
