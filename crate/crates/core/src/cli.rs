//! Command-line front end.
//!
//! Exit codes: 0 success, 1 golden or verification mismatch, 2 step budget
//! exceeded, 3 bad input or usage.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{budget_exceeded_total, emit_plot, fit_loglog_slope, run_bench, write_csv, BenchPlan};
use crate::dimacs::{parse_dimacs, parse_matching, write_dimacs, write_matching};
use crate::fixtures::fixture;
use crate::generate::{gen_gnp, gen_random_regular};
use crate::graph::{Graph, Matching, VertexId};
use crate::matcher::{initial_matching, maximum_matching_from, InitMode, MatcherConfig};
use crate::oracle::{gallai_edmonds_bruteforce, nu_bruteforce};
use crate::search::{search, SearchConfig, SearchResult};
use crate::trace::{diff_golden, render_trace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "trunk-match", version, about = "Maximum matching by depth-first trunk search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Init {
    Empty,
    Greedy,
    /// Read `<stem>.matching` next to the graph file.
    Fixture,
}

#[derive(Args, Debug)]
struct SearchFlags {
    /// Take a sprout that reaches a free vertex before any other.
    #[arg(long)]
    prefer_free_tips: bool,
    /// Multiplier on the per-search budget 4(m+1)(n+1).
    #[arg(long, env = "TRUNK_MATCH_BUDGET_FACTOR", default_value_t = 1.0)]
    budget_factor: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a maximum matching.
    Solve {
        /// DIMACS graph file, or `-` for stdin.
        graph: PathBuf,
        /// Starting matching.
        #[arg(long, value_enum, default_value = "greedy")]
        init: Init,
        #[command(flatten)]
        search: SearchFlags,
        /// Write the final matching here (`-` for stdout).
        #[arg(long)]
        matching_out: Option<PathBuf>,
    },
    /// Print the event trace of one search as TSV.
    Trace {
        /// DIMACS graph file, or `-` for stdin.
        graph: PathBuf,
        /// Root vertex, by label or 1-based index.
        #[arg(long)]
        root: String,
        /// Starting matching.
        #[arg(long, value_enum, default_value = "fixture")]
        init: Init,
        #[command(flatten)]
        search: SearchFlags,
        /// Compare the trace with this file and exit 1 on any difference.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Write a generated graph in DIMACS form.
    Gen {
        /// Random regular graph: N DELTA.
        #[arg(long, num_args = 2, value_names = ["N", "DELTA"], conflicts_with_all = ["gnp", "fixture"])]
        regular: Option<Vec<usize>>,
        /// Erdős–Rényi graph: N P. Isolated vertices are dropped.
        #[arg(long, num_args = 2, value_names = ["N", "P"], conflicts_with = "fixture")]
        gnp: Option<Vec<String>>,
        /// Built-in example graph. With --out, the matching is written next to it.
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file (`-` for stdout).
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Check a matching file and compare its size with the exact optimum.
    Verify {
        graph: PathBuf,
        matching: PathBuf,
    },
    /// Exact maximum matching size by exhaustive search (at most 24 vertices).
    Oracle {
        graph: PathBuf,
        /// Write an optimal matching here (`-` for stdout).
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Gallai–Edmonds partition by exhaustive search (at most 20 vertices).
    Ge { graph: PathBuf },
    /// Time the matcher on random regular graphs.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [3usize, 4, 5])]
        deltas: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [100usize, 200, 300, 400, 500, 600, 700, 800, 900, 1000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, env = "TRUNK_MATCH_BUDGET_FACTOR", default_value_t = 1.0)]
        budget_factor: f64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// CSV output (`-` for stdout).
        #[arg(long, default_value = "-")]
        out: PathBuf,
        /// SVG plot output.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Exit 2 if any search ran out of budget.
        #[arg(long)]
        strict: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    }
}

type CmdResult = Result<i32, Failure>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

fn is_dash(p: &Path) -> bool {
    p.as_os_str() == "-"
}

fn read_input(io: &mut Io<'_>, p: &Path) -> Result<Vec<u8>, Failure> {
    if is_dash(p) {
        let mut buf = Vec::new();
        io.stdin.read_to_end(&mut buf).map_err(input)?;
        Ok(buf)
    } else {
        fs::read(p).map_err(|e| input(format!("{}: {e}", p.display())))
    }
}

fn write_output(io: &mut Io<'_>, p: &Path, text: &str) -> Result<(), Failure> {
    if is_dash(p) {
        io.stdout.write_all(text.as_bytes()).map_err(input)
    } else {
        fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display())))
    }
}

fn read_graph(io: &mut Io<'_>, p: &Path) -> Result<Graph, Failure> {
    let bytes = read_input(io, p)?;
    parse_dimacs(&bytes).map_err(|e| input(format!("{}: {e}", p.display())))
}

fn sibling_matching(p: &Path) -> Result<PathBuf, Failure> {
    if is_dash(p) {
        return Err(input("--init fixture needs a graph file, not stdin"));
    }
    Ok(p.with_extension("matching"))
}

fn starting_matching(g: &Graph, graph_path: &Path, init: Init) -> Result<Matching, Failure> {
    match init {
        Init::Empty => Ok(initial_matching(g, InitMode::Empty)),
        Init::Greedy => Ok(initial_matching(g, InitMode::Greedy)),
        Init::Fixture => {
            let mp = sibling_matching(graph_path)?;
            let bytes = fs::read(&mp).map_err(|e| input(format!("{}: {e}", mp.display())))?;
            parse_matching(&bytes, g).map_err(|e| input(format!("{}: {e}", mp.display())))
        }
    }
}

fn cmd_solve(
    io: &mut Io<'_>,
    graph: &Path,
    init: Init,
    flags: &SearchFlags,
    matching_out: Option<&Path>,
) -> CmdResult {
    let g = read_graph(io, graph)?;
    let m0 = starting_matching(&g, graph, init)?;
    let cfg = MatcherConfig {
        prefer_free_tips: flags.prefer_free_tips,
        budget_factor: flags.budget_factor,
        ..MatcherConfig::default()
    };
    let r = maximum_matching_from(&g, m0, &cfg).map_err(input)?;
    if let Some(out) = matching_out {
        write_output(io, out, &write_matching(&r.matching))?;
    }
    writeln!(
        io.stdout,
        "matched={} exposed={} augmentations={} steps={}",
        r.matching.len(),
        r.matching.free_vertices().len(),
        r.augmentations,
        r.total_steps
    )
    .map_err(input)?;
    if r.budget_exceeded.is_empty() {
        Ok(EXIT_OK)
    } else {
        let roots: Vec<String> = r.budget_exceeded.iter().map(|&v| g.label(v)).collect();
        let _ = writeln!(io.stderr, "budget exceeded at roots: {}", roots.join(" "));
        Ok(EXIT_BUDGET)
    }
}

fn cmd_trace(
    io: &mut Io<'_>,
    graph: &Path,
    root: &str,
    init: Init,
    flags: &SearchFlags,
    golden: Option<&Path>,
) -> CmdResult {
    let g = read_graph(io, graph)?;
    let m = starting_matching(&g, graph, init)?;
    let v0 = g
        .vertex_by_label(root)
        .ok_or_else(|| input(format!("no vertex named `{root}`")))?;
    if !m.is_free(v0) {
        return Err(input(format!("root {root} is matched")));
    }
    if !(flags.budget_factor > 0.0 && flags.budget_factor.is_finite()) {
        return Err(input(format!("budget factor must be positive, got {}", flags.budget_factor)));
    }
    let cfg = SearchConfig {
        prefer_free_tips: flags.prefer_free_tips,
        budget: ((SearchConfig::for_graph(&g).budget as f64) * flags.budget_factor).ceil().max(1.0) as u64,
        trace: true,
    };
    let outcome = search(&g, &m, v0, &cfg).map_err(input)?;
    let text = render_trace(&g, &outcome.trace);
    io.stdout.write_all(text.as_bytes()).map_err(input)?;
    if let Some(gp) = golden {
        let expected = fs::read_to_string(gp).map_err(|e| input(format!("{}: {e}", gp.display())))?;
        if let Some((line, exp, act)) = diff_golden(&expected, &text) {
            let _ = writeln!(io.stderr, "golden mismatch at line {line}");
            let _ = writeln!(io.stderr, "- {exp}");
            let _ = writeln!(io.stderr, "+ {act}");
            return Ok(EXIT_MISMATCH);
        }
    }
    Ok(match outcome.result {
        SearchResult::BudgetExceeded => EXIT_BUDGET,
        _ => EXIT_OK,
    })
}

fn cmd_gen(
    io: &mut Io<'_>,
    regular: Option<&[usize]>,
    gnp: Option<&[String]>,
    fixture_name: Option<&str>,
    seed: u64,
    out: &Path,
) -> CmdResult {
    let (g, m) = match (regular, gnp, fixture_name) {
        (Some(&[n, d]), _, _) => (gen_random_regular(n, d, seed).map_err(input)?, None),
        (_, Some([n, p]), _) => {
            let n: usize = n.parse().map_err(|e| input(format!("--gnp N: {e}")))?;
            let p: f64 = p.parse().map_err(|e| input(format!("--gnp P: {e}")))?;
            (gen_gnp(n, p, seed).map_err(input)?, None)
        }
        (_, _, Some(name)) => {
            let (g, m) = fixture(name).map_err(input)?;
            (g, Some(m))
        }
        _ => return Err(input("one of --regular, --gnp or --fixture is required")),
    };
    write_output(io, out, &write_dimacs(&g))?;
    if let (Some(m), false) = (m, is_dash(out)) {
        let mp = sibling_matching(out)?;
        fs::write(&mp, write_matching(&m)).map_err(|e| input(format!("{}: {e}", mp.display())))?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(io: &mut Io<'_>, graph: &Path, matching: &Path) -> CmdResult {
    let g = read_graph(io, graph)?;
    let bytes = read_input(io, matching)?;
    let m = parse_matching(&bytes, &g).map_err(|e| input(format!("{}: {e}", matching.display())))?;
    let (nu, _) = nu_bruteforce(&g).map_err(input)?;
    let maximum = m.len() == nu;
    writeln!(
        io.stdout,
        "size={} nu={} maximum={}",
        m.len(),
        nu,
        if maximum { "yes" } else { "no" }
    )
    .map_err(input)?;
    Ok(if maximum { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_oracle(io: &mut Io<'_>, graph: &Path, witness_out: Option<&Path>) -> CmdResult {
    let g = read_graph(io, graph)?;
    let (nu, witness) = nu_bruteforce(&g).map_err(input)?;
    writeln!(io.stdout, "nu={nu}").map_err(input)?;
    if let Some(out) = witness_out {
        write_output(io, out, &write_matching(&witness))?;
    }
    Ok(EXIT_OK)
}

fn cmd_ge(io: &mut Io<'_>, graph: &Path) -> CmdResult {
    let g = read_graph(io, graph)?;
    let ge = gallai_edmonds_bruteforce(&g).map_err(input)?;
    let names = |vs: &[VertexId]| vs.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" ");
    let mut text = format!("nu={}\n", ge.nu);
    for (tag, set) in [("D", &ge.d), ("A", &ge.a), ("C", &ge.c)] {
        text.push_str(&format!("|{tag}|={}\t{}\n", set.len(), names(set)));
    }
    let structure = ge.check_structure(&g);
    match &structure {
        Ok(()) => text.push_str("structure=ok\n"),
        Err(e) => text.push_str(&format!("structure=broken\t{e}\n")),
    }
    io.stdout.write_all(text.as_bytes()).map_err(input)?;
    Ok(if structure.is_ok() { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_bench(
    io: &mut Io<'_>,
    plan: BenchPlan,
    out: &Path,
    plot: Option<&Path>,
    strict: bool,
) -> CmdResult {
    let records = run_bench(&plan).map_err(input)?;
    let mut csv = Vec::new();
    write_csv(&records, &mut csv).map_err(input)?;
    write_output(io, out, &String::from_utf8_lossy(&csv))?;
    if let Some(p) = plot {
        let svg = emit_plot(&records).map_err(input)?;
        fs::write(p, svg).map_err(|e| input(format!("{}: {e}", p.display())))?;
    }
    for &delta in &plan.deltas {
        match fit_loglog_slope(&records, delta) {
            Ok(fit) => {
                let _ = writeln!(io.stderr, "delta={delta} slope={:.3} r2={:.3}", fit.slope, fit.r2);
            }
            Err(e) => {
                let _ = writeln!(io.stderr, "delta={delta} {e}");
            }
        }
    }
    let exceeded = budget_exceeded_total(&records);
    let _ = writeln!(io.stderr, "budget_exceeded={exceeded}");
    Ok(if strict && exceeded > 0 { EXIT_BUDGET } else { EXIT_OK })
}

fn dispatch(io: &mut Io<'_>, cli: Cli) -> CmdResult {
    match cli.command {
        Command::Solve {
            graph,
            init,
            search,
            matching_out,
        } => cmd_solve(io, &graph, init, &search, matching_out.as_deref()),
        Command::Trace {
            graph,
            root,
            init,
            search,
            golden,
        } => cmd_trace(io, &graph, &root, init, &search, golden.as_deref()),
        Command::Gen {
            regular,
            gnp,
            fixture,
            seed,
            out,
        } => cmd_gen(io, regular.as_deref(), gnp.as_deref(), fixture.as_deref(), seed, &out),
        Command::Verify { graph, matching } => cmd_verify(io, &graph, &matching),
        Command::Oracle { graph, witness_out } => cmd_oracle(io, &graph, witness_out.as_deref()),
        Command::Ge { graph } => cmd_ge(io, &graph),
        Command::Bench {
            deltas,
            sizes,
            trials,
            seed,
            budget_factor,
            workers,
            out,
            plot,
            strict,
        } => {
            let plan = BenchPlan {
                deltas,
                sizes,
                trials_per_cell: trials,
                seed,
                budget_factor,
                workers,
            };
            cmd_bench(io, plan, &out, plot.as_deref(), strict)
        }
    }
}

/// Parses `args` (program name first) and runs one subcommand, returning
/// the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let mut io = Io { stdin, stdout, stderr };
    match dispatch(&mut io, cli) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs with the process's own arguments and standard streams.
pub fn main_with_std() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = run(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock());
    code
}
