//! Command-line driver. Exit codes are a stable contract: 0 success,
//! 1 verification failure, 2 usage error, 3 I/O error, 4 input validation
//! error, 5 certification failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use groupmatch::graphs::{
    commuting_graph, enhanced_power_graph, power_graph, GraphDoc, SimpleGraph,
};
use groupmatch::group::{
    direct_product, from_cayley_table, from_permutation_generators, make_cyclic, make_dicyclic,
    make_dihedral, make_elementary_abelian_2, make_symmetric, permutations_from_cycles,
    GroupError, GroupFile, GroupTable,
};
use groupmatch::lab::{default_catalog, run_suite, CheckId, SuiteReport, Verdict};
use groupmatch::matching::{
    augment_involutions, brute_force_matching, brute_force_matching_number, inverse_pair_matching,
    max_matching, rematch_enhanced_to_power, verify_matching, Matching, MatchingDoc,
    MatchingError,
};
use groupmatch::nt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_VALIDATION: u8 = 4;
const EXIT_CERTIFY: u8 = 5;

#[derive(Parser)]
#[command(
    name = "groupmatch",
    version,
    about = "Graphs of finite groups, exact maximum matchings, and a verification suite"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a group and write its Cayley-table file
    Group(GroupCmd),
    /// Build a power / enhanced / commuting graph from a group file
    Graph(GraphCmd),
    /// Compute a matching on a group graph or a raw graph file
    Match(MatchCmd),
    /// Number-theory tables: tau/phi scan, divisor antichains, gap lemma
    Nt(NtCmd),
    /// Run the theorem checks over the default catalog
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupKindArg {
    Cyclic,
    Dihedral,
    Dicyclic,
    Elem2,
    Symmetric,
    Product,
    Perm,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Power,
    Enhanced,
    Commuting,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Edges,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Blossom,
    Brute,
    InversePairs,
    Mp2,
    Rematch,
}

#[derive(Args)]
struct GroupCmd {
    #[arg(long, value_enum)]
    kind: GroupKindArg,
    /// Size parameter: n (cyclic, dihedral, symmetric), m (dicyclic), k (elem2)
    #[arg(long)]
    n: Option<usize>,
    /// Left factor group file (product)
    #[arg(long)]
    a: Option<PathBuf>,
    /// Right factor group file (product)
    #[arg(long)]
    b: Option<PathBuf>,
    /// Generator in cycle notation, e.g. "(0 1)(2 3)"; repeat per generator
    #[arg(long)]
    gens: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the document to standard output instead of a file
    #[arg(long)]
    stdout: bool,
}

#[derive(Args)]
struct GraphCmd {
    #[arg(long)]
    group: PathBuf,
    #[arg(long, value_enum)]
    kind: BuildKind,
    #[arg(long, value_enum, default_value = "edges")]
    format: ExportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    stdout: bool,
}

#[derive(Args)]
struct MatchCmd {
    /// Group file; the graph is built per --graph-kind
    #[arg(long)]
    group: Option<PathBuf>,
    /// Raw graph file (blossom and brute only)
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long = "graph-kind", value_enum)]
    graph_kind: Option<BuildKind>,
    #[arg(long, value_enum)]
    algo: Algo,
    /// Input matching file over the enhanced power graph (rematch)
    #[arg(long)]
    matching: Option<PathBuf>,
    /// Re-validate the result; blossom is also cross-checked against brute
    /// force when the graph is within the guard
    #[arg(long)]
    certify: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    stdout: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum NtMode {
    TauPhiScan,
    Antichain,
    Lemma,
}

#[derive(Args)]
struct NtCmd {
    #[arg(long, value_enum)]
    mode: NtMode,
    /// Upper end of the scanned range (tau-phi-scan, antichain)
    #[arg(long)]
    max: Option<u64>,
    /// Single value to evaluate (antichain)
    #[arg(long)]
    n: Option<u64>,
    /// Largest prime for the lemma table
    #[arg(long)]
    pmax: Option<u64>,
    /// Largest exponent for the lemma table
    #[arg(long)]
    amax: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyCmd {
    /// Catalog order cap
    #[arg(long, default_value_t = 64)]
    cap: usize,
    /// Comma-separated check ids (default: all)
    #[arg(long)]
    checks: Option<String>,
    /// Write the JSON report here
    #[arg(long)]
    report: Option<PathBuf>,
    /// Worker threads for the suite (results are identical regardless)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Group(cmd) => cmd_group(cmd),
        Command::Graph(cmd) => cmd_graph(cmd),
        Command::Match(cmd) => cmd_match(cmd),
        Command::Nt(cmd) => cmd_nt(cmd),
        Command::Verify(cmd) => cmd_verify(cmd),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn read_to_string(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_IO, format!("cannot read {}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<GroupTable, Failure> {
    let text = read_to_string(path)?;
    let doc = GroupFile::from_json(&text)
        .map_err(|e| fail(EXIT_VALIDATION, format!("{}: {e}", path.display())))?;
    from_cayley_table(&doc).map_err(|e| fail(EXIT_VALIDATION, format!("{}: {e}", path.display())))
}

/// Writes the document to --out or standard output; the human-readable
/// summary goes to stderr when the document occupies stdout.
struct Emitter {
    out: Option<PathBuf>,
    to_stdout: bool,
}

impl Emitter {
    fn new(out: Option<PathBuf>, to_stdout: bool) -> Result<Emitter, Failure> {
        if out.is_some() == to_stdout {
            return Err(fail(EXIT_USAGE, "exactly one of --out or --stdout is required"));
        }
        Ok(Emitter { out, to_stdout })
    }

    fn emit(&self, document: &str) -> CmdResult {
        match &self.out {
            Some(path) => std::fs::write(path, document)
                .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{document}");
                Ok(())
            }
        }
    }

    fn summary(&self, line: &str) {
        if self.to_stdout {
            eprintln!("{line}");
        } else {
            println!("{line}");
        }
    }
}

fn param_err(e: GroupError) -> Failure {
    fail(EXIT_USAGE, e.to_string())
}

fn cmd_group(cmd: GroupCmd) -> CmdResult {
    let emitter = Emitter::new(cmd.out, cmd.stdout)?;
    let need_n = |n: Option<usize>| {
        n.ok_or_else(|| fail(EXIT_USAGE, "--n is required for this kind"))
    };
    let group = match cmd.kind {
        GroupKindArg::Cyclic => make_cyclic(need_n(cmd.n)?).map_err(param_err)?,
        GroupKindArg::Dihedral => make_dihedral(need_n(cmd.n)?).map_err(param_err)?,
        GroupKindArg::Dicyclic => make_dicyclic(need_n(cmd.n)?).map_err(param_err)?,
        GroupKindArg::Elem2 => make_elementary_abelian_2(need_n(cmd.n)?).map_err(param_err)?,
        GroupKindArg::Symmetric => make_symmetric(need_n(cmd.n)?).map_err(param_err)?,
        GroupKindArg::Product => {
            let (a, b) = match (&cmd.a, &cmd.b) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(fail(EXIT_USAGE, "--a and --b are required for product")),
            };
            let ga = load_group(a)?;
            let gb = load_group(b)?;
            direct_product(&ga, &gb).map_err(param_err)?
        }
        GroupKindArg::Perm => {
            let gens = permutations_from_cycles(&cmd.gens).map_err(param_err)?;
            from_permutation_generators(&gens).map_err(param_err)?
        }
    };
    emitter.emit(&GroupFile::from(&group).to_json())?;
    emitter.summary(&format!(
        "order {}: |I| = {}, |O| = {}, nilpotent = {}, eppo = {}",
        group.order(),
        group.involutions().count(),
        group.odd_order_elements().count(),
        group.is_nilpotent(),
        group.is_eppo(),
    ));
    Ok(())
}

fn build_graph(group: &GroupTable, kind: BuildKind) -> SimpleGraph {
    match kind {
        BuildKind::Power => power_graph(group),
        BuildKind::Enhanced => enhanced_power_graph(group),
        BuildKind::Commuting => commuting_graph(group),
    }
}

fn cmd_graph(cmd: GraphCmd) -> CmdResult {
    let emitter = Emitter::new(cmd.out, cmd.stdout)?;
    let group = load_group(&cmd.group)?;
    let graph = build_graph(&group, cmd.kind);
    let document = match cmd.format {
        ExportFormat::Edges => graph.to_doc().to_json(),
        ExportFormat::Dot => graph.to_dot(),
    };
    emitter.emit(&document)?;
    emitter.summary(&format!(
        "{} graph on {} vertices: {} edges",
        graph.kind(),
        graph.n(),
        graph.edge_count()
    ));
    Ok(())
}

fn matching_err(e: MatchingError) -> Failure {
    match e {
        MatchingError::InvalidMatching(_) | MatchingError::Parse(_) => {
            fail(EXIT_VALIDATION, e.to_string())
        }
        MatchingError::GuardExceeded { .. } | MatchingError::RequiresEvenOrder => {
            fail(EXIT_USAGE, e.to_string())
        }
        MatchingError::InvariantViolation(_) => fail(EXIT_CERTIFY, e.to_string()),
    }
}

fn cmd_match(cmd: MatchCmd) -> CmdResult {
    let emitter = Emitter::new(cmd.out, cmd.stdout)?;
    let group = match (&cmd.group, &cmd.graph) {
        (Some(path), None) => Some(load_group(path)?),
        (None, Some(_)) => None,
        _ => return Err(fail(EXIT_USAGE, "exactly one of --group or --graph is required")),
    };

    // resolve the graph the matching lives on
    let graph = match (&group, cmd.algo) {
        (None, Algo::Blossom | Algo::Brute) => {
            let path = cmd.graph.as_ref().unwrap();
            let text = read_to_string(path)?;
            let doc = GraphDoc::from_json(&text)
                .map_err(|e| fail(EXIT_VALIDATION, format!("{}: {e}", path.display())))?;
            SimpleGraph::from_doc(&doc)
                .map_err(|e| fail(EXIT_VALIDATION, format!("{}: {e}", path.display())))?
        }
        (None, _) => {
            return Err(fail(
                EXIT_USAGE,
                "this algorithm needs a group file (--group)",
            ))
        }
        (Some(g), algo) => {
            let kind = match (algo, cmd.graph_kind) {
                (Algo::InversePairs | Algo::Mp2, Some(BuildKind::Power) | None) => {
                    BuildKind::Power
                }
                (Algo::InversePairs | Algo::Mp2, Some(_)) => {
                    return Err(fail(
                        EXIT_USAGE,
                        "this algorithm works on the power graph; drop --graph-kind",
                    ))
                }
                // rematch reads an enhanced-graph matching but its result
                // lives on the power graph
                (Algo::Rematch, Some(BuildKind::Enhanced) | None) => BuildKind::Power,
                (Algo::Rematch, Some(_)) => {
                    return Err(fail(
                        EXIT_USAGE,
                        "rematch reads an enhanced-graph matching; drop --graph-kind",
                    ))
                }
                (_, k) => k.unwrap_or(BuildKind::Power),
            };
            build_graph(g, kind)
        }
    };

    let matching = match cmd.algo {
        Algo::Blossom => max_matching(&graph),
        Algo::Brute => brute_force_matching(&graph).map_err(matching_err)?,
        Algo::InversePairs => inverse_pair_matching(group.as_ref().unwrap()),
        Algo::Mp2 => augment_involutions(group.as_ref().unwrap()).map_err(matching_err)?,
        Algo::Rematch => {
            let path = cmd
                .matching
                .as_ref()
                .ok_or_else(|| fail(EXIT_USAGE, "--matching is required for rematch"))?;
            let text = read_to_string(path)?;
            let doc = MatchingDoc::from_json(&text)
                .map_err(|e| fail(EXIT_VALIDATION, format!("{}: {e}", path.display())))?;
            let input = Matching::from_doc(&doc)
                .map_err(|e| fail(EXIT_VALIDATION, format!("{}: {e}", path.display())))?;
            rematch_enhanced_to_power(group.as_ref().unwrap(), &input).map_err(matching_err)?
        }
    };

    if cmd.certify {
        if !verify_matching(&graph, &matching) {
            return Err(fail(
                EXIT_CERTIFY,
                "certification failed: result is not a valid matching on the graph",
            ));
        }
        if matches!(cmd.algo, Algo::Blossom) {
            match brute_force_matching_number(&graph) {
                Ok(expected) => {
                    if expected != matching.size() {
                        return Err(fail(
                            EXIT_CERTIFY,
                            format!(
                                "certification failed: blossom found {} edges, brute force {expected}",
                                matching.size()
                            ),
                        ));
                    }
                }
                Err(MatchingError::GuardExceeded { .. }) => {
                    eprintln!("certify: brute-force cross-check skipped (guard exceeded)");
                }
                Err(e) => return Err(matching_err(e)),
            }
        }
    }

    emitter.emit(&matching.to_doc(graph.kind()).to_json())?;
    emitter.summary(&format!(
        "{} matching on {} graph: size = {}, deficiency = {}, unmatched = {:?}",
        algo_name(cmd.algo),
        graph.kind(),
        matching.size(),
        matching.deficiency(),
        matching.unmatched(),
    ));
    Ok(())
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Blossom => "blossom",
        Algo::Brute => "brute",
        Algo::InversePairs => "inverse-pairs",
        Algo::Mp2 => "mp2",
        Algo::Rematch => "rematch",
    }
}

fn cmd_nt(cmd: NtCmd) -> CmdResult {
    let mut csv = String::new();
    let mut summary = String::new();
    match cmd.mode {
        NtMode::TauPhiScan => {
            let max = cmd
                .max
                .filter(|&m| m >= 1)
                .ok_or_else(|| fail(EXIT_USAGE, "--max >= 1 is required for tau-phi-scan"))?;
            csv.push_str("n,tau,phi,tau_less_than_phi\n");
            let mut failures = Vec::new();
            for n in 1..=max {
                let (t, p) = (nt::tau(n), nt::phi(n));
                if t >= p {
                    failures.push(n);
                }
                csv.push_str(&format!("{n},{t},{p},{}\n", t < p));
            }
            summary = format!(
                "failures: {}",
                failures
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
        }
        NtMode::Antichain => {
            let range: Vec<u64> = match (cmd.n, cmd.max) {
                (Some(n), None) if n >= 1 => vec![n],
                (None, Some(max)) if max >= 1 => (1..=max).collect(),
                _ => {
                    return Err(fail(
                        EXIT_USAGE,
                        "antichain needs exactly one of --n or --max (>= 1)",
                    ))
                }
            };
            csv.push_str("n,antichain,phi,alpha_lt_phi\n");
            for n in range {
                let (size, _) = nt::max_divisor_antichain(n)
                    .map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
                // independence number: exact graph search within the guard,
                // the divisor-lattice value beyond it
                let alpha = if n <= 64 {
                    let g = make_cyclic(n as usize).map_err(param_err)?;
                    nt::independence_number_small(&power_graph(&g))
                        .map_err(|e| fail(EXIT_USAGE, e.to_string()))?
                } else {
                    size
                };
                let ph = nt::phi(n);
                csv.push_str(&format!("{n},{size},{ph},{}\n", (alpha as u64) < ph));
                if cmd.n.is_some() {
                    summary = format!("antichain({n}) = {size}");
                }
            }
        }
        NtMode::Lemma => {
            let (pmax, amax) = match (cmd.pmax, cmd.amax) {
                (Some(p), Some(a)) if p >= 2 && a >= 1 => (p, a),
                _ => {
                    return Err(fail(
                        EXIT_USAGE,
                        "lemma needs --pmax (>= 2) and --amax (>= 1)",
                    ))
                }
            };
            csv.push_str("p,a,lhs,part1_vs_a_plus_1,part2_vs_2a_plus_2\n");
            for p in 2..=pmax {
                if !nt::is_prime(p) {
                    continue;
                }
                for a in 1..=amax {
                    let gap = nt::lemma_gap(p, a).expect("prime");
                    let part1 = if gap.part_one_excluded {
                        "excluded".to_string()
                    } else {
                        comparison_name(gap.part_one).to_string()
                    };
                    let part2 = gap
                        .part_two
                        .map_or("-".to_string(), |c| comparison_name(c).to_string());
                    csv.push_str(&format!("{p},{a},{},{part1},{part2}\n", gap.lhs));
                }
            }
        }
    }

    match &cmd.out {
        Some(path) => {
            std::fs::write(path, &csv)
                .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))?;
            if !summary.is_empty() {
                println!("{summary}");
            }
        }
        None => {
            print!("{csv}");
            if !summary.is_empty() {
                eprintln!("{summary}");
            }
        }
    }
    Ok(())
}

fn comparison_name(c: nt::Comparison) -> &'static str {
    match c {
        nt::Comparison::Less => "below",
        nt::Comparison::Equal => "equality",
        nt::Comparison::Greater => "strict",
    }
}

fn cmd_verify(cmd: VerifyCmd) -> CmdResult {
    let checks: Vec<CheckId> = match &cmd.checks {
        None => CheckId::ALL.to_vec(),
        Some(list) => list
            .split(',')
            .map(|s| s.trim().parse::<CheckId>())
            .collect::<Result<_, _>>()
            .map_err(|e| fail(EXIT_USAGE, e))?,
    };
    if cmd.jobs == 0 {
        return Err(fail(EXIT_USAGE, "--jobs must be at least 1"));
    }
    let started = Instant::now();
    let catalog = default_catalog(cmd.cap);
    let report = run_suite(&catalog, &checks, cmd.cap, cmd.jobs);
    print_report_table(&report);
    println!(
        "summary: {} pass, {} fail, {} not-applicable ({} groups, cap {})",
        report.summary.pass,
        report.summary.fail,
        report.summary.not_applicable,
        catalog.len(),
        cmd.cap
    );
    eprintln!("elapsed: {:.2?}", started.elapsed());
    if let Some(path) = &cmd.report {
        std::fs::write(path, report.to_json())
            .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))?;
    }
    if report.summary.fail > 0 {
        return Err(fail(EXIT_VERIFY_FAIL, String::new()));
    }
    Ok(())
}

fn print_report_table(report: &SuiteReport) {
    let headers = ["CHECK", "GROUP", "EXPECTED", "OBSERVED", "VERDICT"];
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    let rows: Vec<[String; 5]> = report
        .results
        .iter()
        .map(|r| {
            [
                r.check_id.to_string(),
                r.group.clone(),
                r.expected.clone(),
                r.observed.clone(),
                r.verdict.to_string(),
            ]
        })
        .collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 5]| {
        let mut out = String::new();
        for (i, cell) in cells.iter().enumerate() {
            out.push_str(&format!("{:<width$}  ", cell, width = widths[i]));
        }
        println!("{}", out.trim_end());
    };
    line([headers[0], headers[1], headers[2], headers[3], headers[4]]);
    for (row, result) in rows.iter().zip(&report.results) {
        line([&row[0], &row[1], &row[2], &row[3], &row[4]]);
        if result.verdict == Verdict::Fail && !result.detail.is_empty() {
            println!("  detail: {}", result.detail);
        }
    }
}
