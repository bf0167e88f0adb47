//! Command-line driver.
//!
//! Coset config: either `--type` (A1, A2, A3, B2, B3, G2, 2A2) with `--twist`
//! (`id` or `graph`), or `--gens-file` pointing at
//!
//! ```json
//! {"generators": [[[-1, 0], [1, 1]], ...], "phi": [[1, 0], [0, 1]], "rank": 2}
//! ```
//!
//! where `phi` defaults to the identity and `rank` is only needed when
//! `generators` is empty.
//!
//! Poset file (`--poset-file`, for `orbit-homology` and `check-bux`):
//!
//! ```json
//! {"elements": ["a", "b", "c"], "less_than": [["a", "c"], ["b", "c"]], "group": [[1, 0, 2]]}
//! ```
//!
//! `less_than` is closed transitively; `group` lists generating permutations
//! (images of element indices) and defaults to the trivial group.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on input or usage errors.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::ZetaSpec;
use crate::cat::{
    bux_check, chain_orbits, orbit_complex, BuxReport, ChainMode, DirectedGGraph, GPoset, HomologyReport,
};
use crate::chars::{character_degrees, irr_defect_count, DefectCount};
use crate::dade::{
    cancellation_involution, ingest_dataset, parse_dataset, verify_dade, DadeError, InvolutionReport, KReport,
    PairUniverse,
};
use crate::levi::{LeviError, LeviPoset};
use crate::refl::group::closure;
use crate::refl::{builtin_coset, FiniteGroup, Mat, ReflError, ReflectionCoset};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Math(_) => EXIT_FAIL,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

impl From<LeviError> for CliError {
    fn from(e: LeviError) -> Self {
        match e {
            LeviError::Invariant(_) => CliError::Math(e.to_string()),
            _ => input(e),
        }
    }
}

impl From<DadeError> for CliError {
    fn from(e: DadeError) -> Self {
        match e {
            DadeError::Invariant(_) => CliError::Math(e.to_string()),
            DadeError::Levi(l) => l.into(),
            _ => input(e),
        }
    }
}

impl From<ReflError> for CliError {
    fn from(e: ReflError) -> Self {
        input(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "spets", version, about = "e-split Levi posets, orbit complexes and unipotent defect counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the e-split Levi poset with orbits, minimal nodes and inclusion matrix.
    Levis(RunArgs),
    /// Reduced integral homology of the chain-orbit complex.
    OrbitHomology(PosetArgs),
    /// Check the two transitivity hypotheses of the Morse criterion.
    CheckBux(PosetArgs),
    /// Check the alternating-sum identity for unipotent defect counts.
    VerifyDade(DadeArgs),
    /// Factored order polynomial of the coset.
    OrderPoly(CosetArgs),
    /// Irreducible character degrees of a named group or of W.
    CharDegrees(CharArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CosetArgs {
    /// Built-in type: A1, A2, A3, B2, B3, G2, 2A2.
    #[arg(long = "type")]
    pub cartan_type: Option<String>,
    /// Twist of a built-in type: id or graph.
    #[arg(long, default_value = "id")]
    pub twist: String,
    /// JSON file with explicit generator matrices and twist.
    #[arg(long, conflicts_with = "cartan_type")]
    pub gens_file: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub coset: CosetArgs,
    #[arg(long)]
    pub ell: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
    /// Override the order of ζ (exploration only; marked in the header).
    #[arg(long)]
    pub zeta_order: Option<u32>,
    /// Worker threads for independent subcomputations.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct PosetArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// JSON poset with an optional group action, instead of a coset.
    #[arg(long, conflicts_with_all = ["cartan_type", "gens_file"])]
    pub poset_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Principal,
    Dataset,
}

#[derive(Debug, Clone, Args)]
pub struct DadeArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum, default_value = "principal")]
    pub mode: ModeArg,
    /// Cuspidal dataset (required iff --mode dataset).
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Largest defect to tabulate.
    #[arg(long)]
    pub d_max: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct CharArgs {
    #[command(flatten)]
    pub coset: CosetArgs,
    /// Named group: C<n>, D<2n> (dihedral of that order), S<n>.
    #[arg(long, conflicts_with_all = ["cartan_type", "gens_file"])]
    pub group: Option<String>,
    /// Also report ℓ-defect counts.
    #[arg(long)]
    pub ell: Option<u64>,
}

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub command: String,
    pub source: String,
    pub rank: Option<usize>,
    pub w_order: Option<usize>,
    pub ell: Option<u64>,
    pub q: Option<u64>,
    pub e: Option<u32>,
    pub zeta_order_override: bool,
    pub very_good_warning: bool,
}

impl Header {
    fn render(&self) -> String {
        let mut s = format!("# {}  {}", self.command, self.source);
        if let (Some(r), Some(w)) = (self.rank, self.w_order) {
            let _ = write!(s, "  rank={r} |W|={w}");
        }
        if let (Some(l), Some(q), Some(e)) = (self.ell, self.q, self.e) {
            let _ = write!(s, "  ell={l} q={q} e={e}");
        }
        if self.zeta_order_override {
            s.push_str("  [zeta order overridden]");
        }
        if self.very_good_warning {
            s.push_str("  [warning: ell is not very good]");
        }
        s.push('\n');
        s
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GensFile {
    generators: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    phi: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    rank: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetFile {
    elements: Vec<String>,
    #[serde(default)]
    less_than: Vec<[String; 2]>,
    #[serde(default)]
    group: Vec<Vec<usize>>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

struct Coset {
    coset: Arc<ReflectionCoset>,
    source: String,
    type_name: Option<String>,
}

fn load_coset(args: &CosetArgs) -> Result<Coset, CliError> {
    match (&args.cartan_type, &args.gens_file) {
        (Some(t), None) => {
            let (gens, phi) = builtin_coset(t, &args.twist)?;
            let source = if args.twist == "id" { t.clone() } else { format!("{t} twist={}", args.twist) };
            Ok(Coset { coset: Arc::new(ReflectionCoset::new(gens, phi)?), source, type_name: Some(t.clone()) })
        }
        (None, Some(path)) => {
            let file: GensFile =
                serde_json::from_str(&read(path)?).map_err(|e| input(format!("generator file: {e}")))?;
            let gens = file.generators.iter().map(|m| Mat::from_rows(m)).collect::<Result<Vec<_>, _>>()?;
            let rank = match (&file.phi, gens.first(), file.rank) {
                (Some(p), _, _) => p.len(),
                (None, Some(g), _) => g.dim(),
                (None, None, Some(r)) => r,
                (None, None, None) => return Err(input("generator file: rank required without generators")),
            };
            let phi = match &file.phi {
                Some(p) => Mat::from_rows(p)?,
                None => Mat::identity(rank),
            };
            let name =
                path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
            Ok(Coset {
                coset: Arc::new(ReflectionCoset::new(gens, phi)?),
                source: format!("gens-file {name}"),
                type_name: None,
            })
        }
        _ => Err(input("exactly one of --type or --gens-file is required")),
    }
}

struct Run {
    poset: LeviPoset,
    header: Header,
    type_name: Option<String>,
}

fn zeta_spec(run: &RunArgs) -> Result<ZetaSpec, CliError> {
    let ell = run.ell.ok_or_else(|| input("--ell is required"))?;
    let q = run.q.ok_or_else(|| input("--q is required"))?;
    match run.zeta_order {
        Some(e) => ZetaSpec::with_order(q, ell, e).map_err(input),
        None => ZetaSpec::new(q, ell).map_err(input),
    }
}

fn load_run(command: &str, run: &RunArgs) -> Result<Run, CliError> {
    let zeta = zeta_spec(run)?;
    let Coset { coset, source, type_name } = load_coset(&run.coset)?;
    let header = Header {
        command: command.into(),
        source,
        rank: Some(coset.rank()),
        w_order: Some(coset.order()),
        ell: Some(zeta.ell),
        q: Some(zeta.q),
        e: Some(zeta.e),
        zeta_order_override: zeta.tainted,
        very_good_warning: coset.very_good_warning(zeta.ell),
    };
    let poset = LeviPoset::enumerate(coset, zeta)?;
    Ok(Run { poset, header, type_name })
}

fn plain_header(command: &str, source: String) -> Header {
    Header {
        command: command.into(),
        source,
        rank: None,
        w_order: None,
        ell: None,
        q: None,
        e: None,
        zeta_order_override: false,
        very_good_warning: false,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn bool_matrix(rows: &[Vec<bool>]) -> Vec<String> {
    rows.iter().map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect()
}

/// Runs a parsed command, honouring `--workers`.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let workers = match &cli.command {
        Command::Levis(r) => r.workers,
        Command::OrbitHomology(p) | Command::CheckBux(p) => p.run.workers,
        Command::VerifyDade(d) => d.run.workers,
        Command::OrderPoly(_) | Command::CharDegrees(_) => None,
    };
    match workers {
        Some(0) => Err(input("--workers must be positive")),
        Some(n) => {
            rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(input)?.install(|| dispatch(&cli.command))
        }
        None => dispatch(&cli.command),
    }
}

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Levis(a) => cmd_levis(a),
        Command::OrbitHomology(a) => cmd_orbit_homology(a),
        Command::CheckBux(a) => cmd_check_bux(a),
        Command::VerifyDade(a) => cmd_verify_dade(a),
        Command::OrderPoly(a) => cmd_order_poly(a),
        Command::CharDegrees(a) => cmd_char_degrees(a),
    }
}

#[derive(Serialize)]
struct NodeRow {
    index: usize,
    orbit: usize,
    parabolic_order: usize,
    torus_rank: usize,
    toric: bool,
    order_polynomial: String,
    valuation: u32,
}

#[derive(Serialize)]
struct OrbitRow {
    id: String,
    members: Vec<usize>,
    normalizer_order: usize,
}

#[derive(Serialize)]
struct LevisReport {
    header: Header,
    nodes: Vec<NodeRow>,
    orbits: Vec<OrbitRow>,
    minimal_nodes: Vec<usize>,
    minimal_orbits: usize,
    transitive_on_minimal: bool,
    inclusion: Vec<String>,
    pass: bool,
}

pub fn cmd_levis(args: &RunArgs) -> Result<Outcome, CliError> {
    let Run { poset, header, .. } = load_run("levis", args)?;
    let nodes = (0..poset.len())
        .map(|i| {
            let n = poset.node(i);
            Ok(NodeRow {
                index: i,
                orbit: poset.orbit_of(i),
                parabolic_order: n.parabolic.len(),
                torus_rank: n.torus.rank(),
                toric: n.is_toric(),
                order_polynomial: poset.order_polynomial(i)?.to_string(),
                valuation: poset.order_valuation(i)?,
            })
        })
        .collect::<Result<Vec<_>, LeviError>>()?;
    let orbits: Vec<OrbitRow> = poset
        .orbits()
        .iter()
        .enumerate()
        .map(|(k, o)| OrbitRow {
            id: format!("O{k}"),
            members: o.clone(),
            normalizer_order: poset.normalizer(o[0]).len(),
        })
        .collect();
    let minimal = poset.minimal_report();
    let mut minimal_orbits: Vec<usize> = minimal.nodes.iter().map(|&m| poset.orbit_of(m)).collect();
    minimal_orbits.dedup();
    let report = LevisReport {
        header,
        nodes,
        orbits,
        minimal_orbits: minimal_orbits.len(),
        minimal_nodes: minimal.nodes,
        transitive_on_minimal: minimal.transitive,
        inclusion: bool_matrix(poset.relation_matrix()),
        pass: minimal.transitive,
    };
    let output = if args.coset.json {
        to_json(&report)
    } else {
        let mut s = report.header.render();
        let _ = writeln!(
            s,
            "{:>4} {:>5} {:>5} {:>5} {:>5}  {:<28} {:>3}",
            "node", "orbit", "|P|", "rank", "toric", "order polynomial", "nu"
        );
        for n in &report.nodes {
            let _ = writeln!(
                s,
                "{:>4} {:>5} {:>5} {:>5} {:>5}  {:<28} {:>3}",
                n.index,
                format!("O{}", n.orbit),
                n.parabolic_order,
                n.torus_rank,
                if n.toric { "yes" } else { "no" },
                n.order_polynomial,
                n.valuation
            );
        }
        let _ = writeln!(s, "orbits:");
        for o in &report.orbits {
            let _ = writeln!(s, "  {:<4} members {:?}  |N_W| = {}", o.id, o.members, o.normalizer_order);
        }
        let _ = writeln!(
            s,
            "minimal: {:?} in {} orbit(s), transitive: {}",
            report.minimal_nodes, report.minimal_orbits, report.transitive_on_minimal
        );
        let _ = writeln!(s, "inclusion (row <= column):");
        for row in &report.inclusion {
            let _ = writeln!(s, "  {row}");
        }
        s
    };
    Ok(Outcome { output, exit_code: if report.pass { EXIT_PASS } else { EXIT_FAIL } })
}

fn load_poset_file(path: &Path) -> Result<GPoset, CliError> {
    let file: PosetFile = serde_json::from_str(&read(path)?).map_err(|e| input(format!("poset file: {e}")))?;
    let n = file.elements.len();
    let index: HashMap<&str, usize> = file.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if index.len() != n {
        return Err(input("poset file: duplicate element names"));
    }
    let mut leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for [a, b] in &file.less_than {
        let (Some(&i), Some(&j)) = (index.get(a.as_str()), index.get(b.as_str())) else {
            return Err(input(format!("poset file: unknown element in ({a}, {b})")));
        };
        leq[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let action = if file.group.is_empty() {
        vec![(0..n).collect()]
    } else {
        if file.group.iter().any(|g| g.len() != n) {
            return Err(input("poset file: group generators must permute all elements"));
        }
        let compose = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { (0..n).map(|i| a[b[i]]).collect() };
        closure(&file.group, (0..n).collect(), compose, 10_000).map_err(input)?
    };
    let top = (0..n).find(|&t| (0..n).all(|i| leq[i][t]));
    GPoset::new(file.elements, leq, action, top).map_err(input)
}

fn load_gposet(command: &str, args: &PosetArgs) -> Result<(GPoset, Header), CliError> {
    match &args.poset_file {
        Some(path) => {
            let name =
                path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
            Ok((load_poset_file(path)?, plain_header(command, format!("poset-file {name}"))))
        }
        None => {
            let run = load_run(command, &args.run)?;
            Ok((GPoset::from_levi(&run.poset), run.header))
        }
    }
}

#[derive(Serialize)]
struct HomologyOutput {
    header: Header,
    poset_size: usize,
    group_order: usize,
    chain_orbits: usize,
    homology: HomologyReport,
    pass: bool,
}

pub fn cmd_orbit_homology(args: &PosetArgs) -> Result<Outcome, CliError> {
    let (gp, header) = load_gposet("orbit-homology", args)?;
    let homology = orbit_complex(&gp).reduced_homology();
    let report = HomologyOutput {
        header,
        poset_size: gp.len(),
        group_order: gp.group_order(),
        chain_orbits: chain_orbits(&gp, ChainMode::All).len(),
        pass: homology.vanishes,
        homology,
    };
    let output = if args.run.coset.json {
        to_json(&report)
    } else {
        let mut s = report.header.render();
        let h = &report.homology;
        let _ = writeln!(
            s,
            "poset size {}  group order {}  chain orbits {}",
            report.poset_size, report.group_order, report.chain_orbits
        );
        let _ = writeln!(
            s,
            "simplices per dimension: {:?}  euler characteristic: {}",
            h.simplex_counts, h.euler_characteristic
        );
        let _ = writeln!(s, "{:>6} {:>6}  torsion", "degree", "betti");
        for g in &h.groups {
            let _ = writeln!(s, "{:>6} {:>6}  {:?}", g.degree, g.betti, g.torsion);
        }
        let _ = writeln!(s, "reduced homology vanishes: {}", h.vanishes);
        let _ = writeln!(s, "simple connectivity checked: {}", h.simple_connectivity_checked);
        s
    };
    Ok(Outcome { output, exit_code: if report.pass { EXIT_PASS } else { EXIT_FAIL } })
}

#[derive(Serialize)]
struct BuxOutput {
    header: Header,
    vertices: usize,
    report: BuxReport,
}

pub fn cmd_check_bux(args: &PosetArgs) -> Result<Outcome, CliError> {
    let (gp, header) = load_gposet("check-bux", args)?;
    let graph = DirectedGGraph::from_poset(&gp);
    let out = BuxOutput { header, vertices: graph.len(), report: bux_check(&graph) };
    let output = if args.run.coset.json {
        to_json(&out)
    } else {
        let r = &out.report;
        let mut s = out.header.render();
        let _ = writeln!(s, "vertices {}  minimal {:?}", out.vertices, r.minimal_vertices);
        let _ = writeln!(s, "transitive on minimal vertices: {}", r.transitive_on_minimal);
        let _ = writeln!(s, "simplices without minimal vertices: {}", r.non_minimal_simplices);
        for f in &r.link_failures {
            let _ = writeln!(
                s,
                "  link failure at {:?}: minimal in link {:?}, stabilizer order {}",
                f.simplex, f.minimal_in_link, f.stabilizer_order
            );
        }
        let _ = writeln!(s, "descending links: {}", if r.links_pass { "pass" } else { "fail" });
        let _ = writeln!(s, "result: {}", if r.pass { "pass" } else { "fail" });
        s
    };
    Ok(Outcome { output, exit_code: if out.report.pass { EXIT_PASS } else { EXIT_FAIL } })
}

#[derive(Serialize)]
struct DadeOutput {
    header: Header,
    report: KReport,
    involution: InvolutionReport,
}

pub fn cmd_verify_dade(args: &DadeArgs) -> Result<Outcome, CliError> {
    let dataset = match (args.mode, &args.dataset) {
        (ModeArg::Principal, None) => None,
        (ModeArg::Dataset, Some(path)) => Some(parse_dataset(&read(path)?)?),
        (ModeArg::Principal, Some(_)) => return Err(input("--dataset requires --mode dataset")),
        (ModeArg::Dataset, None) => return Err(input("--mode dataset requires --dataset")),
    };
    let run = load_run("verify-dade", &args.run)?;
    let uni = match &dataset {
        Some(file) => ingest_dataset(&run.poset, file, run.type_name.as_deref())?,
        None => PairUniverse::principal(&run.poset)?,
    };
    let report = verify_dade(&run.poset, &uni, args.d_max)?;
    let involution = cancellation_involution(&run.poset, &uni)?;
    let out = DadeOutput { header: run.header, report, involution };
    let output = if args.run.coset.json { to_json(&out) } else { render_dade(&out) };
    Ok(Outcome { output, exit_code: if out.report.pass { EXIT_PASS } else { EXIT_FAIL } })
}

fn render_dade(out: &DadeOutput) -> String {
    let r = &out.report;
    let mut s = out.header.render();
    let _ = writeln!(s, "scope: {}", r.scope);
    let _ = writeln!(s, "{:>3} {:>6} {:>6} {:>6} {:>6}  check", "d", "k_u", "k_uc", "lhs", "rhs");
    for row in &r.rows {
        let _ = writeln!(
            s,
            "{:>3} {:>6} {:>6} {:>6} {:>6}  {} = {} {}",
            row.d,
            row.k_u,
            row.k_uc,
            row.lhs,
            row.rhs,
            row.lhs,
            row.rhs,
            if row.pass { "ok" } else { "FAIL" }
        );
    }
    let _ = writeln!(s, "chains (up to W):");
    for c in &r.chains {
        let _ = writeln!(
            s,
            "  {:<16} length {:>2} sign {:>2}  counts {:?}",
            format!("{:?}", c.chain),
            c.length,
            c.sign,
            c.counts
        );
    }
    let _ = writeln!(s, "blocks:");
    for b in &r.blocks {
        let _ = writeln!(
            s,
            "  levi {:>3} label {:<6} shift {:>2} |W(L,λ)| {:>4}  {}",
            b.levi,
            b.label,
            b.shift,
            b.relative_weyl_order,
            if b.pass { "ok" } else { "FAIL" }
        );
    }
    if let Some(p) = &r.partition {
        let _ = writeln!(
            s,
            "unipotent count: declared {} series total {} {}",
            p.declared_uch,
            p.series_total,
            if p.pass { "ok" } else { "FAIL" }
        );
    }
    let inv = &out.involution;
    let _ = writeln!(
        s,
        "involution: {} triples, {} fixed (expected {}), {} paired, {}",
        inv.triples,
        inv.fixed_points,
        inv.expected_fixed_points,
        inv.paired,
        if inv.pass { "ok" } else { "FAIL" }
    );
    for v in &inv.violations {
        let _ = writeln!(s, "  {v}");
    }
    let _ = writeln!(s, "result: {}", if r.pass { "pass" } else { "fail" });
    s
}

#[derive(Serialize)]
struct OrderPolyOutput {
    header: Header,
    degrees: Vec<(u32, String)>,
    order_polynomial: String,
}

pub fn cmd_order_poly(args: &CosetArgs) -> Result<Outcome, CliError> {
    let Coset { coset, source, .. } = load_coset(args)?;
    let mut header = plain_header("order-poly", source);
    header.rank = Some(coset.rank());
    header.w_order = Some(coset.order());
    let out = OrderPolyOutput {
        header,
        degrees: coset.degrees().iter().map(|(d, eps)| (*d, eps.to_string())).collect(),
        order_polynomial: coset.order_polynomial().to_string(),
    };
    let output = if args.json {
        to_json(&out)
    } else {
        let mut s = out.header.render();
        let degrees: Vec<String> = out.degrees.iter().map(|(d, e)| format!("({d}, {e})")).collect();
        let _ = writeln!(s, "generalized degrees: {}", degrees.join(" "));
        let _ = writeln!(s, "order polynomial: {}", out.order_polynomial);
        s
    };
    Ok(Outcome { output, exit_code: EXIT_PASS })
}

/// `C<n>`, `D<m>` (dihedral of order `m`), `S<n>`.
pub fn named_group(name: &str) -> Result<FiniteGroup, CliError> {
    let bad = || input(format!("unknown group {name}: expected C<n>, D<2n> or S<n>"));
    let (kind, n) = name.split_at(1);
    let n: usize = n.parse().map_err(|_| bad())?;
    let gens: Vec<Vec<usize>> = match kind {
        "C" if (1..=CHAR_GROUP_CAP).contains(&n) => return Ok(FiniteGroup::cyclic(n)),
        "D" if n >= 2 && n.is_multiple_of(2) && n <= CHAR_GROUP_CAP => {
            let m = n / 2;
            if m == 1 {
                return Ok(FiniteGroup::cyclic(2));
            }
            vec![(0..m).map(|i| (i + 1) % m).collect(), (0..m).map(|i| (m - i) % m).collect()]
        }
        "S" if (1..=6).contains(&n) => {
            if n == 1 {
                return Ok(FiniteGroup::trivial());
            }
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            vec![swap, (0..n).map(|i| (i + 1) % n).collect()]
        }
        _ => return Err(bad()),
    };
    FiniteGroup::from_permutations(&gens).map_err(input)
}

const CHAR_GROUP_CAP: usize = 2_000;

#[derive(Serialize)]
struct CharOutput {
    header: Header,
    group_order: usize,
    degrees: Vec<u32>,
    multiplicities: Vec<(u32, usize)>,
    class_count: usize,
    conjugacy_classes: usize,
    sum_of_squares: u64,
    defect_counts: Option<DefectCount>,
    pass: bool,
}

pub fn cmd_char_degrees(args: &CharArgs) -> Result<Outcome, CliError> {
    let (group, source) = match &args.group {
        Some(name) => (named_group(name)?, format!("group {name}")),
        None => {
            let c = load_coset(&args.coset)?;
            (c.coset.group().clone(), format!("W of {}", c.source))
        }
    };
    let degrees = character_degrees(&group).map_err(input)?;
    let defect_counts = match args.ell {
        Some(ell) => Some(irr_defect_count(&degrees, ell).map_err(input)?),
        None => None,
    };
    let sum_of_squares: u64 = degrees.degrees.iter().map(|&d| u64::from(d) * u64::from(d)).sum();
    let conjugacy_classes = group.conjugacy_classes().len();
    let mut header = plain_header("char-degrees", source);
    header.ell = args.ell;
    let out = CharOutput {
        header,
        group_order: group.order(),
        multiplicities: degrees.multiplicities(),
        class_count: degrees.class_count(),
        conjugacy_classes,
        sum_of_squares,
        pass: sum_of_squares == group.order() as u64 && degrees.class_count() == conjugacy_classes,
        degrees: degrees.degrees,
        defect_counts,
    };
    let output = if args.coset.json {
        to_json(&out)
    } else {
        let mut s = out.header.render();
        let _ = writeln!(s, "order {}  classes {}", out.group_order, out.conjugacy_classes);
        let _ = writeln!(s, "{:>6} {:>6}", "degree", "count");
        for (d, m) in &out.multiplicities {
            let _ = writeln!(s, "{d:>6} {m:>6}");
        }
        let _ = writeln!(s, "sum of squares: {}", out.sum_of_squares);
        if let Some(dc) = &out.defect_counts {
            let _ = writeln!(s, "{:>6} {:>6}", "defect", "count");
            for (d, c) in dc {
                let _ = writeln!(s, "{d:>6} {c:>6}");
            }
        }
        s
    };
    Ok(Outcome { output, exit_code: if out.pass { EXIT_PASS } else { EXIT_FAIL } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Result<Outcome, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("spets").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn levis_listing() {
        let out = go(&["levis", "--type", "A1", "--ell", "3", "--q", "2", "--json"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 2);
        assert_eq!(v["minimal_orbits"], 1);
        assert_eq!(out.exit_code, EXIT_PASS);
    }

    #[test]
    fn ell_dividing_q_is_an_input_error() {
        let err = go(&["levis", "--type", "A1", "--ell", "2", "--q", "2"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_INPUT);
    }

    #[test]
    fn named_groups() {
        assert_eq!(named_group("S3").unwrap().order(), 6);
        assert_eq!(named_group("D8").unwrap().order(), 8);
        assert_eq!(named_group("C6").unwrap().order(), 6);
        assert!(!named_group("D8").unwrap().is_abelian());
        assert!(named_group("X3").is_err());
        assert!(named_group("D7").is_err());
    }

    #[test]
    fn order_polynomial_of_a1() {
        let out = go(&["order-poly", "--type", "A1"]).unwrap();
        assert!(out.output.contains("order polynomial: x(x^2-1)"), "{}", out.output);
    }
}
