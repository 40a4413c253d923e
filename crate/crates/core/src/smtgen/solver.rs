use std::collections::VecDeque;
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread::JoinHandle;
use std::time::{Duration, Instant};

use super::{emit, task, Mode, SmtError, Verdict};

pub const SOLVER_ENV: &str = "CP_SMT_SOLVER";

#[derive(Clone, Debug)]
pub struct SolverRun {
    pub task_id: String,
    pub verdict: Verdict,
    pub seconds: f64,
    pub model: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub solver: PathBuf,
    pub timeout_s: u64,
    /// Printf-style timeout flag; `{}` is replaced by the seconds.
    pub timeout_flag: String,
}

impl SolverConfig {
    pub fn new(solver: PathBuf, timeout_s: u64) -> Self {
        SolverConfig { solver, timeout_s, timeout_flag: "-T:{}".into() }
    }
}

/// The explicit path if given, else `$CP_SMT_SOLVER`, else `z3` on `PATH`.
pub fn resolve_solver(explicit: Option<&Path>) -> Result<PathBuf, SmtError> {
    let candidate = explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(SOLVER_ENV).filter(|s| !s.is_empty()).map(PathBuf::from));
    if let Some(p) = candidate {
        if p.is_file() {
            return Ok(p);
        }
        if p.components().count() == 1 {
            if let Some(found) = search_path(&p) {
                return Ok(found);
            }
        }
        return Err(SmtError::SolverNotFound(Some(p.display().to_string())));
    }
    search_path(Path::new("z3")).ok_or(SmtError::SolverNotFound(None))
}

fn search_path(name: &Path) -> Option<PathBuf> {
    let path = std::env::var_os("PATH")?;
    std::env::split_paths(&path).map(|d| d.join(name)).find(|p| p.is_file())
}

static TMP_COUNTER: AtomicUsize = AtomicUsize::new(0);

/// Run the solver on document text through a scratch file.
pub fn run_solver(task_id: &str, doc: &str, cfg: &SolverConfig) -> Result<SolverRun, SmtError> {
    if cfg.timeout_s == 0 {
        return Ok(SolverRun { task_id: task_id.into(), verdict: Verdict::Timeout, seconds: 0.0, model: None });
    }
    let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
    let path = std::env::temp_dir().join(format!("cpgraph-{}-{n}-{task_id}.smt2", std::process::id()));
    std::fs::write(&path, doc)?;
    let out = run_solver_file(task_id, &path, cfg);
    let _ = std::fs::remove_file(&path);
    out
}

fn drain<R: Read + Send + 'static>(pipe: Option<R>) -> JoinHandle<Vec<u8>> {
    std::thread::spawn(move || {
        let mut buf = Vec::new();
        if let Some(mut p) = pipe {
            let _ = p.read_to_end(&mut buf);
        }
        buf
    })
}

pub fn run_solver_file(task_id: &str, file: &Path, cfg: &SolverConfig) -> Result<SolverRun, SmtError> {
    if cfg.timeout_s == 0 {
        return Ok(SolverRun { task_id: task_id.into(), verdict: Verdict::Timeout, seconds: 0.0, model: None });
    }
    if !cfg.solver.is_file() {
        return Err(SmtError::SolverNotFound(Some(cfg.solver.display().to_string())));
    }
    let start = Instant::now();
    let mut child = Command::new(&cfg.solver)
        .arg(cfg.timeout_flag.replace("{}", &cfg.timeout_s.to_string()))
        .arg(file)
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()?;
    // drain both pipes while waiting, or a large model blocks the solver
    let out_reader = drain(child.stdout.take());
    let err_reader = drain(child.stderr.take());
    // the solver's own timeout normally fires first; this is a backstop
    let deadline = start + Duration::from_secs(cfg.timeout_s) + Duration::from_secs(10);
    let mut killed = false;
    let status = loop {
        if let Some(st) = child.try_wait()? {
            break st;
        }
        if Instant::now() >= deadline {
            let _ = child.kill();
            killed = true;
            break child.wait()?;
        }
        std::thread::sleep(Duration::from_millis(20));
    };
    let seconds = start.elapsed().as_secs_f64();
    let stdout = String::from_utf8_lossy(&out_reader.join().unwrap_or_default()).into_owned();
    let stderr = err_reader.join().unwrap_or_default();
    if killed {
        return Ok(SolverRun { task_id: task_id.into(), verdict: Verdict::Timeout, seconds, model: None });
    }
    let mut lines = stdout.lines();
    let verdict = lines.by_ref().map(str::trim).find_map(Verdict::parse);
    match verdict {
        Some(v) => {
            let rest: String = lines.collect::<Vec<_>>().join("\n");
            let model = (v == Verdict::Sat && !rest.trim().is_empty()).then_some(rest);
            Ok(SolverRun { task_id: task_id.into(), verdict: v, seconds, model })
        }
        None => Err(SmtError::SolverCrashed {
            status: status.to_string(),
            stderr: format!("{}{}", String::from_utf8_lossy(&stderr), stdout).trim().to_string(),
        }),
    }
}

#[derive(Clone, Debug)]
pub struct SuiteRow {
    pub task_id: String,
    pub expected: Verdict,
    pub constants: usize,
    pub axiom_clauses: usize,
    pub query_clauses: usize,
    pub outcome: Result<SolverRun, String>,
    pub reference_seconds: Option<f64>,
}

impl SuiteRow {
    pub fn matches(&self) -> bool {
        matches!(&self.outcome, Ok(r) if r.verdict == self.expected)
    }

    pub fn verdict_text(&self) -> String {
        match &self.outcome {
            Ok(r) => r.verdict.to_string(),
            Err(e) => format!("error: {e}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(SuiteRow::matches)
    }

    pub fn mismatches(&self) -> Vec<&SuiteRow> {
        self.rows.iter().filter(|r| !r.matches()).collect()
    }
}

/// Emit every task into `out_dir` (when given) and run them on `jobs` worker
/// threads, one solver process per task.
pub fn run_suite(
    ids: &[String],
    cfg: &SolverConfig,
    jobs: usize,
    out_dir: Option<&Path>,
    mode: Option<Mode>,
) -> Result<SuiteReport, SmtError> {
    let tasks = ids
        .iter()
        .map(|id| task(id).ok_or_else(|| SmtError::UnknownTask(id.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
    }
    // documents are emitted by the workers; instantiated ones reach 150 MB
    let queue: Mutex<VecDeque<usize>> = Mutex::new((0..tasks.len()).collect());
    let results: Mutex<Vec<Option<SuiteRow>>> = Mutex::new(vec![None; tasks.len()]);
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1).min(tasks.len().max(1)) {
            s.spawn(|| loop {
                let Some(i) = queue.lock().unwrap().pop_front() else { break };
                let t = &tasks[i];
                let doc = emit(t, mode.unwrap_or(t.default_mode));
                let outcome = match out_dir {
                    Some(dir) => {
                        let path = dir.join(doc.file_name());
                        std::fs::write(&path, &doc.text)
                            .map_err(SmtError::from)
                            .and_then(|()| run_solver_file(&t.id, &path, cfg))
                    }
                    None => run_solver(&t.id, &doc.text, cfg),
                };
                let row = SuiteRow {
                    task_id: t.id.clone(),
                    expected: t.expected,
                    constants: doc.constants,
                    axiom_clauses: doc.axiom_clauses,
                    query_clauses: doc.query_clauses,
                    outcome: outcome.map_err(|e| e.to_string()),
                    reference_seconds: t.reference.map(|r| r.seconds),
                };
                results.lock().unwrap()[i] = Some(row);
            });
        }
    });
    let rows = results.into_inner().unwrap().into_iter().map(|r| r.expect("every task ran")).collect();
    Ok(SuiteReport { rows })
}

fn seconds(row: &SuiteRow) -> String {
    match &row.outcome {
        Ok(r) => format!("{:.2}", r.seconds),
        Err(_) => "-".into(),
    }
}

/// Plain-text table: task, duration, #constants, #axiom clauses, #query
/// clauses, verdict.
pub fn render_table(report: &SuiteReport) -> String {
    let header = [
        "Task",
        "Duration (s)",
        "# constants",
        "# clauses (axioms)",
        "# clauses (query)",
        "sat/unsat",
        "expected",
        "reference (s)",
    ];
    let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for r in &report.rows {
        rows.push(vec![
            r.task_id.clone(),
            seconds(r),
            r.constants.to_string(),
            r.axiom_clauses.to_string(),
            r.query_clauses.to_string(),
            r.verdict_text(),
            format!("{}{}", r.expected, if r.matches() { "" } else { " (MISMATCH)" }),
            r.reference_seconds.map(|s| format!("{s:.2}")).unwrap_or_else(|| "-".into()),
        ]);
    }
    let widths: Vec<usize> = (0..header.len()).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap()).collect();
    let mut out = String::new();
    for (i, r) in rows.iter().enumerate() {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "| {} |", cells.join(" | ")).unwrap();
        if i == 0 {
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            writeln!(out, "|-{}-|", rule.join("-|-")).unwrap();
        }
    }
    out
}

pub fn render_csv(report: &SuiteReport) -> String {
    let mut out = String::from("task,duration_s,constants,axiom_clauses,query_clauses,verdict,expected,reference_s\n");
    for r in &report.rows {
        let verdict = r.verdict_text().replace(',', ";").replace('\n', " ");
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.task_id,
            seconds(r),
            r.constants,
            r.axiom_clauses,
            r.query_clauses,
            verdict,
            r.expected,
            r.reference_seconds.map(|s| format!("{s:.2}")).unwrap_or_default()
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::os::unix::fs::PermissionsExt;

    fn stub(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("cpgraph-stub-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, format!("#!/bin/sh\n{body}\n")).unwrap();
        std::fs::set_permissions(&p, std::fs::Permissions::from_mode(0o755)).unwrap();
        p
    }

    #[test]
    fn large_model_does_not_block() {
        // well past a pipe buffer
        let s = stub("big", "echo sat; i=0; while [ $i -lt 4000 ]; do echo '(define-fun p () Bool true) ; padding padding'; i=$((i+1)); done");
        let run = run_solver("t", "(check-sat)", &SolverConfig::new(s, 30)).unwrap();
        assert_eq!(run.verdict, Verdict::Sat);
        assert!(run.model.unwrap().len() > 100_000);
        assert!(run.seconds < 20.0);
    }

    #[test]
    fn verdicts_and_failures() {
        let cfg = |p| SolverConfig::new(p, 30);
        let unsat = stub("unsat", "echo unsat");
        let r = run_solver("t", "", &cfg(unsat.clone())).unwrap();
        assert_eq!((r.verdict, r.model), (Verdict::Unsat, None));
        assert_eq!(run_solver("t", "", &SolverConfig::new(unsat, 0)).unwrap().verdict, Verdict::Timeout);

        let crash = stub("crash", "echo 'segfault' >&2; exit 3");
        match run_solver("t", "", &cfg(crash)) {
            Err(SmtError::SolverCrashed { stderr, .. }) => assert!(stderr.contains("segfault")),
            other => panic!("{other:?}"),
        }
        let missing = std::env::temp_dir().join("cpgraph-no-such-solver");
        assert!(matches!(run_solver("t", "", &cfg(missing)), Err(SmtError::SolverNotFound(_))));
    }
}
