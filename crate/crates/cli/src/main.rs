//! `cpgraph`: check geometric graphs, planarize them with the CP algorithm,
//! simulate the distributed variant, generate random inputs and run the SMT
//! proof tasks.
//!
//! Exit codes: 0 ok, 1 a checked property does not hold, 2 bad input,
//! 3 failed postcondition, 4 missing solver, 5 verdict mismatch.

mod svg;

use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cpgraph::distsim::cp_distributed;
use cpgraph::generators::{self, DiskModel, RcgParams};
use cpgraph::graph::{self, GeoGraph};
use cpgraph::planarize::{self, EdgeOrder};
use cpgraph::smtgen::{self, Mode, SmtError, SolverConfig};

#[derive(Parser)]
#[command(name = "cpgraph", version, about = "Geometric graph planarization toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report redundancy, coexistence, planarity, connectivity and collinear closure.
    Check {
        /// Graph file, or `fixtures/<name>` for a built-in figure graph.
        graph: String,
        /// Require the weak coexistence property instead of the full one.
        #[arg(long)]
        weak_coexistence: bool,
    },
    /// Run the global CP algorithm and verify its output.
    Planarize {
        graph: String,
        #[arg(long, default_value = "lex")]
        order: EdgeOrder,
        /// Where to write the kept graph; stdout by default.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the distributed simulation and compare it with the global run.
    Simulate {
        graph: String,
        #[arg(long, default_value = "lex")]
        priority: EdgeOrder,
    },
    /// Emit proof tasks, run the solver on them and tabulate the verdicts.
    Prove(ProveArgs),
    /// Generate a random geometric graph.
    Gen {
        /// unit_disk, quasi_unit_disk or rcg.
        model: String,
        /// key=value parameters, e.g. n=20 radius=30 extent=100.
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ProveArgs {
    /// `all`, `table` (the proof table), `counterexamples`, or comma-separated ids.
    #[arg(long, default_value = "all")]
    tasks: String,
    #[arg(long)]
    solver: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "cpgraph-smt")]
    out: PathBuf,
    /// Per-task timeout in seconds.
    #[arg(long, default_value_t = 600)]
    timeout: u64,
    /// Override each task's quantifier mode: quantified or instantiated.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

enum Failure {
    Property(String),
    Input(String),
    Postcondition(String),
    Environment(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Property(_) => 1,
            Failure::Input(_) => 2,
            Failure::Postcondition(_) => 3,
            Failure::Environment(_) => 4,
            Failure::Mismatch(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Property(m)
            | Failure::Input(m)
            | Failure::Postcondition(m)
            | Failure::Environment(m)
            | Failure::Mismatch(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

/// Stdout writes that end the process quietly when the reader goes away.
macro_rules! out {
    ($($t:tt)*) => { stdout_result(writeln!(io::stdout(), $($t)*)) };
}

macro_rules! out_raw {
    ($($t:tt)*) => { stdout_result(write!(io::stdout(), $($t)*)) };
}

fn stdout_result(r: io::Result<()>) {
    if let Err(e) = r {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing to stdout: {e}");
        std::process::exit(4);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.cmd {
        Cmd::Check { graph, weak_coexistence } => check(&graph, weak_coexistence),
        Cmd::Planarize { graph, order, output, trace, svg } => {
            planarize(&graph, &order, output.as_deref(), trace.as_deref(), svg.as_deref())
        }
        Cmd::Simulate { graph, priority } => simulate(&graph, &priority),
        Cmd::Prove(a) => prove(&a),
        Cmd::Gen { model, params, seed, output } => generate(&model, &params, seed, output.as_deref()),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn load(arg: &str) -> Result<GeoGraph, Failure> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(name) = arg.strip_prefix("fixtures/").or_else(|| arg.strip_prefix("fixture:")) {
            let name = name.trim_end_matches(".json");
            return generators::fixture(name).map_err(|e| Failure::Input(e.to_string()));
        }
    }
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{arg}: {e}")))?;
    let g = graph::from_json(&text).map_err(|e| Failure::Input(format!("{arg}: {e}")))?;
    for w in g.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(g)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            out_raw!("{text}");
            Ok(())
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(arg: &str, weak: bool) -> Outcome {
    let g = load(arg)?;
    let redundancy = graph::check_redundancy(&g);
    let coexistence = graph::check_coexistence(&g, weak);
    let closure = graph::check_collinear_closure(&g);
    let crossings = graph::crossing_pairs(&g);
    let comps = graph::components(&g);
    out!("vertices: {}, edges: {}", g.n(), g.m());
    out!("{redundancy}");
    out!("{coexistence}");
    out!("{closure}");
    out!("RCG: {}", yes(redundancy.holds && graph::check_coexistence(&g, false).holds));
    out!("plane: {}", yes(crossings.is_empty()));
    for (e, f) in crossings.iter().take(20) {
        out!("  {}-{} crosses {}-{}", g.name(e.0), g.name(e.1), g.name(f.0), g.name(f.1));
    }
    if crossings.len() > 20 {
        out!("  ... {} crossing pairs", crossings.len());
    }
    out!("connected: {} ({} component(s))", yes(comps.len() <= 1), comps.len());
    if redundancy.holds && coexistence.holds && closure.holds && comps.len() <= 1 {
        Ok(())
    } else {
        Err(Failure::Property("graph lacks a requested property".into()))
    }
}

fn planarize(
    arg: &str,
    order: &EdgeOrder,
    out: Option<&Path>,
    trace: Option<&Path>,
    svg_out: Option<&Path>,
) -> Outcome {
    let g = load(arg)?;
    let t = planarize::cp_global(&g, order).map_err(|e| Failure::Input(e.to_string()))?;
    let f = t.output(&g);
    write_out(out, &graph::to_json(&f))?;
    if let Some(p) = trace {
        write_out(Some(p), &t.report(&g))?;
    }
    if let Some(p) = svg_out {
        write_out(Some(p), &svg::render(&g, Some(&t.kept)))?;
    }

    let axioms = planarize::verify_f_axioms(&g, &t);
    let lemma1 = planarize::verify_lemma1(&g, &t);
    let plane = graph::is_plane(&f);
    let comps = graph::components(&f);
    eprintln!("order: {order}; kept {} of {} edges", t.kept.len(), g.m());
    eprintln!("{axioms}");
    eprintln!("{lemma1}");
    eprintln!("plane: {}", yes(plane));
    eprintln!("connected: {} ({} component(s))", yes(comps.len() <= 1), comps.len());
    if comps.len() > 1 && graph::is_connected(&g) {
        let isolated: Vec<String> = comps.iter().filter(|c| c.len() == 1).map(|c| g.name(c[0])).collect();
        eprintln!("input is connected but the output is not; isolated: {}", isolated.join(" "));
    }
    if axioms.holds && lemma1.holds && plane {
        Ok(())
    } else {
        Err(Failure::Postcondition("postcondition check failed".into()))
    }
}

fn simulate(arg: &str, priority: &EdgeOrder) -> Outcome {
    let g = load(arg)?;
    let sim = cp_distributed(&g, priority).map_err(|e| Failure::Input(e.to_string()))?;
    let global = planarize::cp_global(&g, priority).map_err(|e| Failure::Input(e.to_string()))?;
    out_raw!("{}", sim.report(&g));
    out!("total messages: {}", sim.total_messages());
    if sim.f == global.kept {
        out!("equal to global run: yes");
        Ok(())
    } else {
        let name = |e: &cpgraph::Edge| format!("{}-{}", g.name(e.0), g.name(e.1));
        let only_dist: Vec<String> = sim.f.difference(&global.kept).map(name).collect();
        let only_glob: Vec<String> = global.kept.difference(&sim.f).map(name).collect();
        out!("equal to global run: no");
        out!("  kept only by distributed: {}", only_dist.join(" "));
        out!("  kept only by global: {}", only_glob.join(" "));
        Err(Failure::Postcondition("distributed run diverges from the global run".into()))
    }
}

fn task_list(spec: &str) -> Result<Vec<String>, Failure> {
    let ids = match spec {
        "all" => smtgen::task_ids(),
        "table" => smtgen::proof_table_ids(),
        "counterexamples" => smtgen::counterexample_table_ids(),
        _ => spec.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
    };
    let known = smtgen::task_ids();
    if let Some(bad) = ids.iter().find(|id| !known.contains(id)) {
        return Err(Failure::Input(format!("unknown task {bad}")));
    }
    Ok(ids)
}

fn prove(a: &ProveArgs) -> Outcome {
    let ids = task_list(&a.tasks)?;
    let mode = match a.mode.as_deref() {
        None => None,
        Some("quantified") => Some(Mode::Quantified),
        Some("instantiated") => Some(Mode::Instantiated),
        Some(m) => return Err(Failure::Input(format!("unknown mode {m}"))),
    };
    let solver = match smtgen::resolve_solver(a.solver.as_deref()) {
        Ok(s) => s,
        Err(e) => {
            // emit anyway so the files can be run elsewhere
            emit_only(&ids, &a.out, mode)?;
            return Err(Failure::Environment(format!("{e}; tasks written to {}", a.out.display())));
        }
    };
    let cfg = SolverConfig::new(solver, a.timeout);
    let report = smtgen::run_suite(&ids, &cfg, a.jobs, Some(&a.out), mode).map_err(|e| match e {
        SmtError::SolverNotFound(_) => Failure::Environment(e.to_string()),
        other => Failure::Input(other.to_string()),
    })?;
    out_raw!("{}", smtgen::render_table(&report));
    if let Some(p) = &a.csv {
        write_out(Some(p), &smtgen::render_csv(&report))?;
    }
    if report.all_match() {
        Ok(())
    } else {
        let mut m = String::from("verdict mismatch:");
        for r in report.mismatches() {
            write!(m, " {} ({} expected {})", r.task_id, r.verdict_text(), r.expected).unwrap();
        }
        Err(Failure::Mismatch(m))
    }
}

fn emit_only(ids: &[String], dir: &Path, mode: Option<Mode>) -> Outcome {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    for id in ids {
        let doc = smtgen::emit_task_with(id, mode).map_err(|e| Failure::Input(e.to_string()))?;
        write_out(Some(&dir.join(doc.file_name())), &doc.text)?;
    }
    Ok(())
}

struct Params(Vec<(String, String)>);

impl Params {
    fn parse(raw: &[String]) -> Result<Self, Failure> {
        let mut out = Vec::new();
        for tok in raw.iter().flat_map(|r| r.split(',')).filter(|t| !t.is_empty()) {
            let (k, v) = tok.split_once('=').ok_or_else(|| Failure::Input(format!("expected key=value, got {tok}")))?;
            out.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(Params(out))
    }

    fn get<T: std::str::FromStr>(&self, key: &str, default: Option<T>) -> Result<T, Failure> {
        match self.0.iter().rev().find(|(k, _)| k == key) {
            Some((_, v)) => v.parse().map_err(|_| Failure::Input(format!("bad value for {key}: {v}"))),
            None => default.ok_or_else(|| Failure::Input(format!("missing parameter {key}"))),
        }
    }

    fn has(&self, key: &str) -> bool {
        self.0.iter().any(|(k, _)| k == key)
    }

    fn reject_unknown(&self, allowed: &[&str]) -> Outcome {
        match self.0.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            Some((k, _)) => Err(Failure::Input(format!("unknown parameter {k}"))),
            None => Ok(()),
        }
    }
}

fn generate(model: &str, raw: &[String], seed: u64, out: Option<&Path>) -> Outcome {
    let p = Params::parse(raw)?;
    let n: usize = p.get("n", None)?;
    let extent: i64 = p.get("extent", Some(100))?;
    let g = match model {
        "unit_disk" => {
            p.reject_unknown(&["n", "extent", "radius"])?;
            generators::unit_disk(n, p.get("radius", None)?, extent, seed)
        }
        "quasi_unit_disk" => {
            p.reject_unknown(&["n", "extent", "r_min", "r_max"])?;
            generators::quasi_unit_disk(n, p.get("r_min", None)?, p.get("r_max", None)?, extent, seed)
                .map_err(|e| Failure::Input(e.to_string()))?
        }
        "rcg" => {
            p.reject_unknown(&["n", "extent", "radius", "r_min", "r_max", "attempts", "general_position"])?;
            let disk = if p.has("radius") {
                DiskModel::Unit { radius: p.get("radius", None)? }
            } else {
                DiskModel::Quasi { r_min: p.get("r_min", None)?, r_max: p.get("r_max", None)? }
            };
            let params = RcgParams { model: disk, extent, general_position: p.get("general_position", Some(true))? };
            generators::sample_rcg(n, &params, seed, p.get("attempts", Some(1000))?)
                .map_err(|e| Failure::Input(e.to_string()))?
        }
        other => return Err(Failure::Input(format!("unknown model {other}"))),
    };
    write_out(out, &graph::to_json(&g))
}
