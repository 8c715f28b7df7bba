//! The `semichain` command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::enumerate::{canonical_form, enumerate_semigroups, Symmetry};
use crate::order::{compat_graph_for, GraphMode, DEFAULT_NODE_BUDGET};
use crate::ramsey::{
    chi5, chi6, greedy_monochromatic, replay_zchain, Monochromatic, PairColoring, ZChain,
    ZChainError,
};
use crate::sgcore::{emit_sgt, parse_sgt, CayleyTable, Element, ElementSet};
use crate::structure::{fiber_decomposition, h_classes, idempotents, power_profiles, PowerProfile};
use crate::verify::{run_suite, CorpusSpec, Fault, SuiteOptions};
use crate::witness::{check_example_properties, ex_truncate, PropertyCheck};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "semichain",
    version,
    about = "Chains, antichains and H-classes of finite semigroups"
)]
struct Cli {
    /// Node budget for exact clique searches.
    #[arg(long, global = true, env = "SEMICHAIN_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,

    /// Worker threads for enumerate and verify (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure report for one `.sgt` table.
    Analyze {
        path: PathBuf,
        /// Also write the report as JSON (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// All semigroups of order n up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "iso-anti")]
        symmetry: Symmetry,
        #[arg(long)]
        count_only: bool,
        /// Write one `.sgt` file per class into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Order classes by canonical form (enumeration output is already in this order).
        #[arg(long)]
        sorted: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the lemma suite over a corpus.
    Verify {
        /// e.g. `enum:1..3;stock:1..12;example:1..8;random:10000/6/42`
        #[arg(long)]
        corpus: String,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        fail_fast: bool,
        #[arg(long, env = "SEMICHAIN_INJECT_FAULT", hide = true)]
        inject_fault: Option<String>,
    },
    /// Write a truncation of the level semilattice.
    Example {
        /// Highest level kept.
        levels: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also check the window's structural properties.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Largest chain or antichain of a table.
    Clique {
        path: PathBuf,
        #[arg(long, value_enum)]
        mode: CliqueMode,
        /// Print the compatibility graph as an edge list.
        #[arg(long)]
        edges: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Pair coloring, monochromatic extraction and Z_k chains.
    RamseyReplay {
        path: PathBuf,
        #[arg(long, value_enum)]
        mode: ColoringMode,
        /// Comma-separated labels or indices; chi6 defaults to all idempotents.
        #[arg(long, value_delimiter = ',')]
        elements: Vec<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CliqueMode {
    Chain,
    Antichain,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ColoringMode {
    Chi5,
    Chi6,
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

type Outcome = Result<u8, InputError>;

fn input<T>(r: anyhow::Result<T>) -> Result<T, InputError> {
    r.map_err(InputError)
}

pub fn main() -> ExitCode {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code)
}

/// Runs the CLI with explicit argument list and output streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT_ERROR
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let budget = cli.node_budget;
    // Output is buffered so the command can run inside the pool.
    let mut buffer = Vec::new();
    let result = pool.install(|| dispatch(cli.command, budget, &mut buffer));
    let _ = out.write_all(&buffer);
    match result {
        Ok(code) => code,
        Err(InputError(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INPUT_ERROR
        }
    }
}

fn dispatch(command: Command, budget: u64, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Analyze { path, json } => analyze(&path, json.as_deref(), budget, out),
        Command::Enumerate {
            order,
            symmetry,
            count_only,
            out: dir,
            sorted,
            json,
        } => enumerate(
            order,
            symmetry,
            count_only,
            dir.as_deref(),
            sorted,
            json.as_deref(),
            out,
        ),
        Command::Verify {
            corpus,
            json,
            fail_fast,
            inject_fault,
        } => verify(
            &corpus,
            json.as_deref(),
            fail_fast,
            inject_fault,
            budget,
            out,
        ),
        Command::Example {
            levels,
            out: path,
            check,
            json,
        } => example(levels, path.as_deref(), check, json.as_deref(), out),
        Command::Clique {
            path,
            mode,
            edges,
            json,
        } => clique(&path, mode, edges, json.as_deref(), budget, out),
        Command::RamseyReplay {
            path,
            mode,
            elements,
            json,
        } => ramsey_replay(&path, mode, &elements, json.as_deref(), out),
    }
}

/// Reads, parses and validates an `.sgt` file.
pub fn load_table(path: &Path) -> anyhow::Result<CayleyTable> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let table = parse_sgt(&text).with_context(|| format!("{}", path.display()))?;
    table
        .validated()
        .with_context(|| format!("{} is not a semigroup", path.display()))
}

fn write_json<T: Serialize>(
    value: &T,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), InputError> {
    let Some(path) = path else { return Ok(()) };
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    if path == Path::new("-") {
        input(writeln!(out, "{text}").map_err(Into::into))
    } else {
        input(
            fs::write(path, text + "\n")
                .with_context(|| format!("cannot write {}", path.display())),
        )
    }
}

/// Human-readable output, suppressed when JSON goes to stdout.
fn print_text(text: &str, json: Option<&Path>, out: &mut dyn Write) -> Result<(), InputError> {
    if json == Some(Path::new("-")) {
        return Ok(());
    }
    input(out.write_all(text.as_bytes()).map_err(Into::into))
}

fn show_set(table: &CayleyTable, set: &ElementSet) -> String {
    let items: Vec<String> = set.iter().map(|x| table.label(x)).collect();
    format!("{{{}}}", items.join(","))
}

#[derive(Serialize)]
struct AnalyzeReport {
    order: usize,
    labels: Option<Vec<String>>,
    idempotents: ElementSet,
    power_profiles: Vec<PowerProfile>,
    fiber_sizes: BTreeMap<usize, usize>,
    fibers: BTreeMap<usize, ElementSet>,
    h_classes: Vec<ElementSet>,
    max_chain_size: usize,
    max_chain: ElementSet,
    max_antichain_size: usize,
    max_antichain: ElementSet,
}

fn analyze(path: &Path, json: Option<&Path>, budget: u64, out: &mut dyn Write) -> Outcome {
    let table = input(load_table(path))?;
    let chain = compat_graph_for(&table, GraphMode::Chain).max_clique(budget);
    let antichain = compat_graph_for(&table, GraphMode::Antichain).max_clique(budget);
    let (chain, antichain) = match (chain, antichain) {
        (Ok(c), Ok(a)) => (c, a),
        (Err(e), _) | (_, Err(e)) => {
            let _ = writeln!(out, "clique search incomplete: {e}");
            return Ok(EXIT_CHECK_FAILED);
        }
    };
    let fd = fiber_decomposition(&table);
    let report = AnalyzeReport {
        order: table.order(),
        labels: table.labels().map(<[String]>::to_vec),
        idempotents: idempotents(&table),
        power_profiles: power_profiles(&table),
        fiber_sizes: fd
            .sizes()
            .into_iter()
            .map(|(e, s)| (e.index(), s))
            .collect(),
        fibers: fd
            .fibers
            .iter()
            .map(|(e, f)| (e.index(), f.clone()))
            .collect(),
        h_classes: h_classes(&table).into_iter().map(|c| c.members).collect(),
        max_chain_size: chain.len(),
        max_chain: chain,
        max_antichain_size: antichain.len(),
        max_antichain: antichain,
    };

    let mut text = String::new();
    writeln!(text, "order: {}", report.order).unwrap();
    writeln!(
        text,
        "idempotents: {}",
        show_set(&table, &report.idempotents)
    )
    .unwrap();
    writeln!(text, "power profiles (element: index period idempotent):").unwrap();
    for p in &report.power_profiles {
        writeln!(
            text,
            "  {}: {} {} {}",
            table.label(p.element),
            p.index,
            p.period,
            table.label(p.idempotent_power)
        )
        .unwrap();
    }
    writeln!(text, "fibers:").unwrap();
    for (e, f) in &fd.fibers {
        writeln!(
            text,
            "  root({}) = {} size {}",
            table.label(*e),
            show_set(&table, f),
            f.len()
        )
        .unwrap();
    }
    writeln!(text, "H-classes:").unwrap();
    for h in &report.h_classes {
        writeln!(text, "  {} size {}", show_set(&table, h), h.len()).unwrap();
    }
    writeln!(
        text,
        "max_chain {} witness {}",
        report.max_chain_size,
        show_set(&table, &report.max_chain)
    )
    .unwrap();
    writeln!(
        text,
        "max_antichain {} witness {}",
        report.max_antichain_size,
        show_set(&table, &report.max_antichain)
    )
    .unwrap();
    print_text(&text, json, out)?;
    write_json(&report, json, out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct EnumerateReport {
    order: usize,
    symmetry: Symmetry,
    count: usize,
    millis: u128,
    digests: Vec<String>,
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    order: usize,
    symmetry: Symmetry,
    count_only: bool,
    dir: Option<&Path>,
    sorted: bool,
    json: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let start = Instant::now();
    let mut tables = input(enumerate_semigroups(order, symmetry).map_err(Into::into))?;
    if sorted {
        tables.sort_by_key(|t| t.flat());
    }
    let millis = start.elapsed().as_millis();
    let forms: Vec<_> = tables.iter().map(|t| canonical_form(t, symmetry)).collect();
    let mut text = String::new();
    if count_only {
        writeln!(text, "{}", tables.len()).unwrap();
    } else if let Some(dir) = dir {
        input(fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display())))?;
        for (t, form) in tables.iter().zip(&forms) {
            let file = dir.join(format!("{}.sgt", form.digest()));
            input(
                fs::write(&file, emit_sgt(t))
                    .with_context(|| format!("cannot write {}", file.display())),
            )?;
        }
        writeln!(
            text,
            "wrote {} tables of order {order} ({symmetry}) to {} in {millis} ms",
            tables.len(),
            dir.display()
        )
        .unwrap();
    } else {
        for (i, t) in tables.iter().enumerate() {
            writeln!(text, "# class {i}").unwrap();
            text.push_str(&emit_sgt(t));
        }
        writeln!(
            text,
            "# {} classes of order {order} ({symmetry}) in {millis} ms",
            tables.len()
        )
        .unwrap();
    }
    print_text(&text, json, out)?;
    let report = EnumerateReport {
        order,
        symmetry,
        count: tables.len(),
        millis,
        digests: forms.iter().map(|f| f.digest()).collect(),
    };
    write_json(&report, json, out)?;
    Ok(EXIT_OK)
}

fn verify(
    corpus: &str,
    json: Option<&Path>,
    fail_fast: bool,
    inject_fault: Option<String>,
    budget: u64,
    out: &mut dyn Write,
) -> Outcome {
    let spec: CorpusSpec = input(corpus.parse().map_err(Into::into))?;
    let fault = match inject_fault.as_deref().filter(|s| !s.is_empty()) {
        Some(name) => Some(input(name.parse::<Fault>().map_err(|e| anyhow!(e)))?),
        None => None,
    };
    let options = SuiteOptions {
        fail_fast,
        node_budget: budget,
        fault,
    };
    let start = Instant::now();
    let outcome = run_suite(&spec, &options);
    let mut text = String::new();
    for report in &outcome.reports {
        for check in report.checks.iter().filter(|c| !c.passed) {
            let witness = check
                .witness
                .as_ref()
                .map(|w| serde_json::to_string(w).expect("witness serializes"))
                .unwrap_or_default();
            writeln!(
                text,
                "FAIL {} {}: {witness}",
                report.table_id,
                check.name.as_str()
            )
            .unwrap();
        }
    }
    for e in &outcome.errors {
        writeln!(text, "ERROR {}: {}", e.table_id, e.error).unwrap();
    }
    writeln!(
        text,
        "tables: {}, checks: {}, failures: {}, unreadable: {} ({} ms)",
        outcome.summary.tables,
        outcome.summary.checks,
        outcome.summary.failures,
        outcome.errors.len(),
        start.elapsed().as_millis()
    )
    .unwrap();
    print_text(&text, json, out)?;
    write_json(&outcome, json, out)?;
    Ok(if outcome.failed() {
        EXIT_CHECK_FAILED
    } else if !outcome.errors.is_empty() {
        EXIT_INPUT_ERROR
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct ExampleReport {
    levels: usize,
    order: usize,
    labels: Vec<String>,
    checks: Option<Vec<PropertyCheck>>,
}

fn example(
    levels: usize,
    path: Option<&Path>,
    check: bool,
    json: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    if levels == 0 {
        return Err(InputError(anyhow!("the number of levels must be positive")));
    }
    let truncation = ex_truncate(levels);
    let sgt = emit_sgt(&truncation.table);
    match path {
        Some(p) => {
            input(fs::write(p, &sgt).with_context(|| format!("cannot write {}", p.display())))?
        }
        None if json != Some(Path::new("-")) => {
            input(out.write_all(sgt.as_bytes()).map_err(Into::into))?
        }
        None => {}
    }
    let checks = if check {
        match check_example_properties(levels) {
            Ok(c) => Some(c),
            Err(e) => {
                let _ = writeln!(out, "clique search incomplete: {e}");
                return Ok(EXIT_CHECK_FAILED);
            }
        }
    } else {
        None
    };
    let mut failed = false;
    if let Some(checks) = &checks {
        let mut text = String::new();
        for c in checks {
            failed |= !c.passed;
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(text, "# {verdict} {}: {}", c.name, c.detail).unwrap();
        }
        print_text(&text, json, out)?;
    }
    let report = ExampleReport {
        levels,
        order: truncation.table.order(),
        labels: truncation.table.labels().unwrap_or_default().to_vec(),
        checks,
    };
    write_json(&report, json, out)?;
    Ok(if failed { EXIT_CHECK_FAILED } else { EXIT_OK })
}

#[derive(Serialize)]
struct CliqueReport {
    mode: GraphMode,
    vertices: Vec<Element>,
    adjacency: Vec<(Element, Vec<Element>)>,
    size: usize,
    witness: ElementSet,
}

fn clique(
    path: &Path,
    mode: CliqueMode,
    edges: bool,
    json: Option<&Path>,
    budget: u64,
    out: &mut dyn Write,
) -> Outcome {
    let table = input(load_table(path))?;
    let mode = match mode {
        CliqueMode::Chain => GraphMode::Chain,
        CliqueMode::Antichain => GraphMode::Antichain,
    };
    let graph = compat_graph_for(&table, mode);
    let mut text = String::new();
    if edges {
        text.push_str(&graph.edge_list());
    }
    let name = match mode {
        GraphMode::Chain => "max_chain",
        GraphMode::Antichain => "max_antichain",
    };
    let witness = match graph.max_clique(budget) {
        Ok(w) => w,
        Err(e) => {
            writeln!(text, "clique search incomplete: {e}").unwrap();
            print_text(&text, json, out)?;
            return Ok(EXIT_CHECK_FAILED);
        }
    };
    writeln!(
        text,
        "{name} {} witness {}",
        witness.len(),
        show_set(&table, &witness)
    )
    .unwrap();
    print_text(&text, json, out)?;
    let report = CliqueReport {
        mode,
        vertices: graph.vertices().to_vec(),
        adjacency: graph.adjacency_lists(),
        size: witness.len(),
        witness,
    };
    write_json(&report, json, out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RamseyReport {
    mode: ColoringMode,
    elements: Vec<Element>,
    coloring: PairColoring,
    monochromatic: Monochromatic,
    /// Elements of the monochromatic subsequence, in order.
    omega: Vec<Element>,
    zchains: Vec<ZChain>,
}

fn ramsey_replay(
    path: &Path,
    mode: ColoringMode,
    tokens: &[String],
    json: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let table = input(load_table(path))?;
    let elements: Vec<Element> = if tokens.is_empty() {
        match mode {
            ColoringMode::Chi6 => idempotents(&table).to_vec(),
            ColoringMode::Chi5 => return Err(InputError(anyhow!("chi5 needs --elements"))),
        }
    } else {
        input(
            tokens
                .iter()
                .map(|t| {
                    table
                        .resolve(t.trim())
                        .ok_or_else(|| anyhow!("`{t}` is neither a label nor an element index"))
                })
                .collect(),
        )?
    };
    let coloring = input(
        match mode {
            ColoringMode::Chi5 => chi5(&table, &elements),
            ColoringMode::Chi6 => chi6(&table, &elements),
        }
        .map_err(Into::into),
    )?;
    let mono = greedy_monochromatic(&coloring);
    let omega: Vec<Element> = mono.indices.iter().map(|&i| elements[i]).collect();

    let mut text = String::new();
    let names: Vec<String> = elements.iter().map(|&x| table.label(x)).collect();
    writeln!(text, "elements: {}", names.join(" ")).unwrap();
    if coloring.pair_count() == 0 {
        writeln!(text, "coloring: no pairs").unwrap();
    } else {
        writeln!(text, "coloring (row n: colors of (n, n+1..)):").unwrap();
        for (n, row) in coloring
            .triangular_rows()
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
        {
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(text, "  {n}: {}", cells.join(" ")).unwrap();
        }
    }
    let omega_names: Vec<String> = omega.iter().map(|&x| table.label(x)).collect();
    writeln!(
        text,
        "monochromatic color {} size {} (guarantee {}): indices {:?} elements {}",
        mono.color,
        mono.indices.len(),
        mono.guarantee,
        mono.indices,
        omega_names.join(" ")
    )
    .unwrap();

    let mut zchains = Vec::new();
    let mut failed = false;
    if matches!(mode, ColoringMode::Chi6) && mono.color == 1 && omega.len() >= 2 {
        for k in 0..omega.len() {
            match replay_zchain(&table, &omega, k) {
                Ok(z) => {
                    writeln!(text, "Z_{k} = {} (chain)", show_set(&table, &z.members)).unwrap();
                    zchains.push(z);
                }
                Err(e @ (ZChainError::ConclusionFailed { .. } | ZChainError::NotAChain { .. })) => {
                    writeln!(text, "{e}").unwrap();
                    failed = true;
                }
                Err(e) => {
                    writeln!(text, "Z_{k}: {e}").unwrap();
                    failed = true;
                }
            }
        }
    }
    print_text(&text, json, out)?;
    let report = RamseyReport {
        mode,
        elements,
        coloring,
        monochromatic: mono,
        omega,
        zchains,
    };
    write_json(&report, json, out)?;
    Ok(if failed { EXIT_CHECK_FAILED } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["semichain"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&[]).0, EXIT_INPUT_ERROR);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_INPUT_ERROR);
        assert_eq!(
            run_args(&["enumerate", "--order", "7", "--count-only"]).0,
            EXIT_INPUT_ERROR
        );
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn enumerate_counts() {
        let (code, out, _) = run_args(&["enumerate", "--order", "3", "--count-only"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "18");
        let (_, out, _) = run_args(&[
            "enumerate",
            "--order",
            "3",
            "--symmetry",
            "iso",
            "--count-only",
        ]);
        assert_eq!(out.trim(), "24");
    }

    #[test]
    fn example_output() {
        let (code, out, _) = run_args(&["example", "2"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "3\n0 0 0\n0 1 0\n0 0 2\nlabels: 1.0 2.1 2.2\n");
        let (code, out, _) = run_args(&["example", "4", "--check"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("# PASS max_antichain: max antichain 4"));
        assert!(!out.contains("FAIL"));
    }

    #[test]
    fn verify_small_corpus() {
        let (code, out, _) = run_args(&["verify", "--corpus", "enum:1..3;example:1..4"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("tables: 27, checks: 189, failures: 0"));
        let (code, _, err) = run_args(&["verify", "--corpus", "nonsense"]);
        assert_eq!(code, EXIT_INPUT_ERROR);
        assert!(err.contains("nonsense"));
    }
}
