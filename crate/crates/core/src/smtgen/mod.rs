//! SMT-LIB transcription of the axiom system and the proof tasks, plus a
//! harness that runs an external solver over them.

pub mod catalog;
mod model;
pub mod sexpr;
mod solver;

pub use catalog::{
    all_tasks, catalog, counterexample_table_ids, proof_table_ids, task, task_ids, AxiomCatalog, Clause, Family, Mode,
    ProofTask, Reference, Verdict,
};
pub use model::{model_to_graph, parse_model, realize, PredicateModel, DEFAULT_GRID, DEFAULT_NODE_LIMIT};
pub use solver::{
    render_csv, render_table, resolve_solver, run_solver, run_solver_file, run_suite, SolverConfig, SolverRun,
    SuiteReport, SuiteRow,
};

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SmtError {
    #[error("unknown task {0}")]
    UnknownTask(String),
    #[error("solver not found{}", .0.as_deref().map(|p| format!(": {p}")).unwrap_or_default())]
    SolverNotFound(Option<String>),
    #[error("solver crashed ({status}): {stderr}")]
    SolverCrashed { status: String, stderr: String },
    #[error("model parse error: {0}")]
    ParseError(String),
    #[error("no integer realization found within the search bound")]
    Unmappable(Box<PredicateModel>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// An emitted SMT-LIB document with its clause statistics.
#[derive(Clone, Debug)]
pub struct SmtDocument {
    pub task_id: String,
    pub text: String,
    pub axiom_clauses: usize,
    pub query_clauses: usize,
    pub constants: usize,
    pub mode: Mode,
}

impl SmtDocument {
    pub fn file_name(&self) -> String {
        format!("{}.smt2", self.task_id)
    }
}

pub fn emit_task(id: &str) -> Result<SmtDocument, SmtError> {
    emit_task_with(id, None)
}

/// Emit with an explicit quantifier mode instead of the task's default.
pub fn emit_task_with(id: &str, mode: Option<Mode>) -> Result<SmtDocument, SmtError> {
    let t = task(id).ok_or_else(|| SmtError::UnknownTask(id.to_string()))?;
    Ok(emit(&t, mode.unwrap_or(t.default_mode)))
}

pub fn emit(t: &ProofTask, mode: Mode) -> SmtDocument {
    let cat = catalog();
    let mut s = String::new();
    writeln!(s, "; task: {}", t.id).unwrap();
    writeln!(s, "; expected: {}", t.expected).unwrap();
    writeln!(s, "; clauses: {} axiom, {} query; constants: {}", t.axiom_count(), t.query_count(), t.constants.len())
        .unwrap();
    if let Some(note) = t.note {
        writeln!(s, "; note: {note}").unwrap();
    }
    s.push_str("(set-option :produce-models true)\n");
    s.push_str("(declare-sort Point 0)\n");
    s.push_str("(declare-fun left (Point Point Point) Bool)\n");
    s.push_str("(declare-fun intersection (Point Point Point Point) Bool)\n");
    s.push_str("(declare-fun inside (Point Point Point Point) Bool)\n");
    s.push_str("(declare-fun V (Point) Bool)\n");
    s.push_str("(declare-fun E (Point Point) Bool)\n");
    s.push_str("(declare-fun F (Point Point) Bool)\n");
    s.push_str("(declare-fun deleting (Point Point Point Point) Bool)\n");
    if t.uses_next {
        s.push_str("(declare-fun next (Point) Point)\n");
    }
    for c in &t.constants {
        writeln!(s, "(declare-const {c} Point)").unwrap();
    }
    let clauses =
        t.axioms.iter().map(|id| cat.get(id).expect("task axiom in catalog")).chain(t.extra_axioms.iter().cloned());
    for c in clauses {
        let term = match mode {
            Mode::Quantified => c.quantified(),
            Mode::Instantiated => c.instantiated(&t.constants),
        };
        writeln!(s, "; {}\n(assert {})", c.id, term).unwrap();
    }
    s.push_str("; query\n");
    for q in &t.query {
        writeln!(s, "(assert {q})").unwrap();
    }
    s.push_str("(check-sat)\n");
    if t.expected == Verdict::Sat {
        s.push_str("(get-model)\n");
    }
    SmtDocument {
        task_id: t.id.clone(),
        text: s,
        axiom_clauses: t.axiom_count(),
        query_clauses: t.query_count(),
        constants: t.constants.len(),
        mode,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn asserts(doc: &SmtDocument) -> usize {
        doc.text.matches("(assert ").count()
    }

    #[test]
    fn table_examples() {
        let d = emit_task("pasch").unwrap();
        assert_eq!((d.axiom_clauses, d.query_clauses, d.constants), (22, 12, 5));
        assert_eq!(asserts(&d), 34);
        let d = emit_task("part2_step7").unwrap();
        assert_eq!((d.axiom_clauses, d.query_clauses), (41, 4));
        assert!(d.text.contains("(assert (deleting w1 x1 x2 w2))"));
        assert!(!d.text.contains("get-model"));
        let d = emit_task("7vertices_weakC").unwrap();
        assert_eq!((d.axiom_clauses, d.query_clauses), (44, 27));
        assert!(d.text.contains("(get-model)"));
    }

    #[test]
    fn unknown_task() {
        assert!(matches!(emit_task("nope"), Err(SmtError::UnknownTask(_))));
    }

    #[test]
    fn deterministic() {
        for id in ["convexhull", "cycle4", "4vertices_noC"] {
            assert_eq!(emit_task(id).unwrap().text, emit_task(id).unwrap().text);
        }
    }
}
