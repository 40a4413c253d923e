//! The first-order axioms over `left`, `intersection`, `inside`, the graph
//! predicates and the convex-hull successor, plus every proof task.

use std::collections::HashMap;
use std::fmt;

use super::sexpr::{parse, Sexp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    I,
    T,
    E,
    R,
    C,
    Cw,
    F,
    D,
    W,
    X,
    Y,
}

/// One catalog entry: a clause universally closed over `vars`.
#[derive(Clone, Copy, Debug)]
pub struct AxiomDef {
    pub id: &'static str,
    pub family: Family,
    pub vars: &'static str,
    pub body: &'static str,
}

macro_rules! defs {
    ($($id:literal $fam:ident [$vars:literal] $body:literal;)*) => {
        &[$(AxiomDef { id: $id, family: Family::$fam, vars: $vars, body: $body }),*]
    };
}

#[cfg(test)]
const P11: &str = "(and (left u v w) (left v u x) (left w x u) (left x w v))";

static DEFS: &[AxiomDef] = defs! {
    "A1" A ["u v w"] "(=> (and (left u v w) (left v u w)) (not (left w u v)))";
    "A2" A ["u v w"] "(=> (and (distinct u w) (distinct v w) (not (left w u v)) (not (left w v u))) (left u v w))";
    "A3" A ["u v w x"] "(=> (and (left u v w) (left v u w) (left u x w)) (left u x v))";
    "A4" A ["u v w x"] "(=> (and (left u v w) (left v u w) (left u x v)) (left u x w))";
    "A5" A ["u v w x"] "(=> (and (left u v w) (left v w u) (left w u v)) (or (left u v x) (left v w x) (left w u x)))";
    "A6" A ["u v w x y z"] "(=> (and (left u v z) (left v w z) (left w u z) (left x y u) (left x y v) (left x y w)) (left x y z))";

    "B1" B ["u v"] "(not (left u u v))";
    "B2" B ["u v"] "(not (left u v u))";
    "B3" B ["u v"] "(=> (distinct u v) (left u v v))";
    "B11" B ["u v w"] "(=> (distinct u v) (or (left u v w) (left v u w)))";
    "B12" B ["u v w"] "(=> (distinct u w) (or (left u v w) (left w v u)))";
    "B21" B ["u v w"] "(=> (and (left u v w) (left v u w)) (left u w v))";
    "B22" B ["u v w"] "(=> (and (left u v w) (left v u w)) (left v w u))";
    "B23" B ["u v w"] "(=> (and (left u v w) (left v u w)) (not (left w u v)))";
    "B24" B ["u v w"] "(=> (and (left u v w) (left v u w)) (not (left w v u)))";
    "B31" B ["u v w"] "(=> (and (left u v w) (left w v u)) (left u w v))";
    "B32" B ["u v w"] "(=> (and (left u v w) (left w v u)) (left w u v))";
    "B33" B ["u v w"] "(=> (and (left u v w) (left w v u)) (not (left v u w)))";
    "B34" B ["u v w"] "(=> (and (left u v w) (left w v u)) (not (left v w u)))";
    "B41" B ["u v w"] "(=> (and (left u v w) (left u w v)) (or (left v u w) (left w v u) (= v w)))";
    "B42" B ["u v w"] "(=> (and (left u v w) (left u w v)) (or (left v w u) (left w u v) (= v w)))";
    "B51" B ["u v w"] "(=> (and (left u v w) (left w u v)) (not (left v u w)))";
    "B52" B ["u v w"] "(=> (and (left u v w) (left u w v)) (or (left u w v) (left v w u)))";
    // printed without the `v = w` escape, which B1 and B3 refute
    "B53" B ["u v w"] "(=> (and (left u v w) (left u w v)) (or (left w v u) (left v w u) (= v w)))";
    "B61" B ["u v w"] "(=> (and (left u v w) (left v w u)) (not (left w v u)))";
    "B62" B ["u v w"] "(=> (and (left u v w) (left v w u)) (or (left v u w) (left w u v)))";
    "B63" B ["u v w"] "(=> (and (left u v w) (left v w u)) (or (left u w v) (left w u v)))";
    "B71" B ["u v w x"] "(=> (and (left u v w) (left v u w) (left w u x)) (left v u x))";
    "B72" B ["u v w x"] "(=> (and (left u v w) (left v u w) (left w x u)) (left v x u))";
    "B73" B ["u v w x"] "(=> (and (left u v w) (left v u w) (left x v u)) (left x v w))";
    "B74" B ["u v w x"] "(=> (and (left u v w) (left v u w) (left x v u)) (left x w u))";
    "B75" B ["u v w x"] "(=> (and (left u v w) (left v u w) (left u w x)) (left u v x))";
    "B76" B ["u v w x"] "(=> (and (left u v w) (left v u w) (left u v x)) (left u w x))";
    "B77" B ["u v w x"] "(=> (and (left u v w) (left v u w) (left w u x)) (not (left w v x)))";
    "B78" B ["u v w x"] "(=> (and (left u v w) (left v u w) (left w x u)) (not (left w x v)))";

    "I1" I ["u v w x"] "(=> (intersection u v w x) (or (distinct u w) (distinct v x)))";
    "I2" I ["u v w x"] "(=> (intersection u v w x) (or (distinct u x) (distinct v w)))";
    "I3" I ["u v w x"] "(=> (intersection u v w x) (or (left u v w) (left u v x)))";
    "I4" I ["u v w x"] "(=> (intersection u v w x) (or (left v u w) (left v u x)))";
    "I5" I ["u v w x"] "(=> (intersection u v w x) (or (left w x u) (left w x v)))";
    "I6" I ["u v w x"] "(=> (intersection u v w x) (or (left x w u) (left x w v)))";
    "I11" I ["u v w x"] "(=> (and (left u v w) (left v u x) (left w x u) (left x w v)) (or (intersection u v w x) (= u x)))";
    "I12" I ["u v w x"] "(=> (and (left u v w) (left v u x) (left w x u) (left x w v)) (or (intersection u v w x) (= v w)))";
    "I13" I ["u v w x"] "(=> (and (left u v w) (left v u x) (left w x v) (left x w u)) (intersection u v w x))";
    "I14" I ["u v w x"] "(=> (and (left u v x) (left v u w) (left w x u) (left x w v)) (intersection u v w x))";
    "I15" I ["u v w x"] "(=> (and (left u v x) (left v u w) (left w x v) (left x w u)) (or (intersection u v w x) (= u w)))";
    "I16" I ["u v w x"] "(=> (and (left u v x) (left v u w) (left w x v) (left x w u)) (or (intersection u v w x) (= v x)))";

    "T1" T ["u v w x"] "(=> (inside u v w x) (left u v x))";
    "T2" T ["u v w x"] "(=> (inside u v w x) (left v w x))";
    "T3" T ["u v w x"] "(=> (inside u v w x) (left w u x))";
    "T4" T ["u v w x"] "(=> (and (left u v x) (left v w x) (left w u x)) (inside u v w x))";
    "T5" T ["u v w x"] "(=> (and (left u v x) (left v w x) (left w u x)) (inside v w u x))";
    "T6" T ["u v w x"] "(=> (and (left u v x) (left v w x) (left w u x)) (inside w u v x))";
    "T21" T ["u v w x y"] "(=> (and (inside u v x y) (inside u v w x)) (inside u v w y))";
    "T22" T ["u v w x y"] "(=> (and (inside v w x y) (inside u v w x)) (inside u v w y))";
    "T23" T ["u v w x y"] "(=> (and (inside w u x y) (inside u v w x)) (inside u v w y))";
    "T24" T ["u v w x y"] "(=> (and (inside u v w y) (inside u v w x) (distinct x y)) (or (inside u v x y) (inside v w x y) (inside w u x y)))";

    "E1" E ["u"] "(not (E u u))";
    "E2" E ["u v"] "(=> (E u v) (E v u))";
    "E3" E ["u v"] "(=> (E u v) (V u))";

    "R1" R ["u v w x"] "(=> (and (E u v) (E w x) (intersection u v w x)) (or (E u w) (E v x)))";
    "R2" R ["u v w x"] "(=> (and (E u v) (E w x) (intersection u v w x)) (or (E u x) (E v w)))";

    "C1" C ["u v w x"] "(=> (and (inside u v w x) (E u v) (E v w) (E w u) (V x)) (E u x))";
    "C2" C ["u v w x"] "(=> (and (inside u v w x) (E u v) (E v w) (E w u) (V x)) (E v x))";
    "C3" C ["u v w x"] "(=> (and (inside u v w x) (E u v) (E v w) (E w u) (V x)) (E w x))";
    "Cw" Cw ["u v w x"] "(=> (and (E u v) (E v w) (E w u) (V x) (inside u v w x)) (or (and (E u x) (E v x)) (and (E u x) (E w x)) (and (E v x) (E w x))))";

    "F1" F ["u v"] "(=> (F u v) (F v u))";
    "F2" F ["u v"] "(=> (F u v) (E u v))";
    "F3" F ["u v w x"] "(=> (and (F u v) (F w x)) (not (intersection u v w x)))";
    "F4" F ["u v w"] "(=> (and (left u v w) (left v u w) (V w)) (not (F u v)))";
    "F5" F ["u v w x"] "(=> (and (F u v) (E w x) (intersection u v w x)) (or (E u w) (E v w)))";
    "F6" F ["u v w x"] "(=> (and (F u v) (E w x) (intersection u v w x)) (or (E u x) (E v x)))";

    "D1" D ["u v w x"] "(=> (deleting u v w x) (E u v))";
    "D2" D ["u v w x"] "(=> (deleting u v w x) (E w x))";
    "D3" D ["u v w x"] "(=> (deleting u v w x) (intersection u v w x))";
    "D4" D ["u v w x"] "(=> (deleting u v w x) (E u w))";
    "D5" D ["u v w x"] "(=> (deleting u v w x) (E v w))";
    "D6" D ["u v w x"] "(=> (deleting u v w x) (not (F u v)))";
    "D11" D ["u v w x"] "(=> (and (E u x) (deleting u v w x)) (F w x))";
    "D12" D ["u v w x"] "(=> (and (E v x) (deleting u v w x)) (F w x))";
    "D13" D ["u v w x"] "(=> (and (E u v) (E w x) (intersection u v w x) (E u w) (E v w)) (or (deleting u v w x) (E u x) (E v x)))";
    "D14" D ["u v w x"] "(=> (and (E u v) (F w x) (intersection u v w x) (E u w) (E v w)) (deleting u v w x))";
    "D23" D ["u v w x"] "(=> (and (E u v) (E w x) (intersection u v w x)) (or (deleting u v x w) (E u w) (E v w)))";
    "D24" D ["u v w x"] "(=> (and (E u v) (F w x) (intersection u v w x) (E u x) (E v x)) (deleting u v x w))";

    "W1" W [""] "(left u1 v1 w1)";
    "W2" W [""] "(left v1 u1 x1)";
    "W3" W [""] "(left x1 w1 u1)";
    "W4" W [""] "(left w1 x1 v1)";
    "W5" W [""] "(E u1 v1)";
    "W6" W [""] "(F w1 x1)";

    "X1" X ["y z"] "(=> (and (F y z) (intersection u1 v1 y z)) (not (intersection u1 w1 y z)))";
    "X2" X ["y z"] "(=> (and (F y z) (intersection u1 v1 y z)) (not (intersection u1 x1 y z)))";
    "X3" X ["y z"] "(=> (and (F y z) (intersection u1 v1 y z)) (not (inside u1 x1 w1 y)))";
    "X4" X ["y z"] "(=> (and (F y z) (intersection u1 v1 y z)) (not (inside u1 x1 w1 z)))";

    "Y0" Y [""] "(= (next w1) nil)";
    "Y1" Y ["y i"] "(=> (and (V y) (left u1 v1 y) (left x1 w1 y)) (or (= i nil) (= (next i) nil) (= y i) (= y (next i)) (left i (next i) y) (left y (next i) i)))";
    "Y2" Y ["y i"] "(=> (and (V y) (left u1 v1 y) (left x1 w1 y)) (or (= i nil) (= (next i) nil) (= y i) (= y (next i)) (left i (next i) y) (left (next i) y i)))";
    "Y3" Y ["y i"] "(=> (and (V y) (left u1 v1 y) (left x1 w1 y) (left (next i) i y)) (or (= i nil) (= (next i) nil) (= y i) (= y (next i)) (left y (next i) i)))";
    "Y4" Y ["y i"] "(=> (and (V y) (left u1 v1 y) (left x1 w1 y) (left (next i) i y)) (or (= i nil) (= (next i) nil) (= y i) (= y (next i)) (left (next i) y i)))";
    "Y11" Y ["i"] "(or (= i nil) (= (next i) nil) (inside u1 v1 w1 (next i)) (= (next i) w1))";
    "Y12" Y ["i"] "(or (= i nil) (= (next i) nil) (inside u1 x1 w1 i) (= i u1))";
    "Y13" Y ["i"] "(or (E i (next i)) (= i nil) (= (next i) nil))";
    "Y14" Y ["i"] "(or (= i nil) (= (next i) nil) (inside u1 v1 (next i) i) (= i u1))";
    "Y15" Y ["i"] "(or (= i nil) (= (next i) nil) (inside u1 x1 (next i) i) (= i u1))";
    "Y16" Y ["i"] "(or (= i nil) (= (next i) nil) (inside v1 w1 i (next i)) (= (next i) w1))";
    "Y17" Y ["i"] "(or (= i nil) (= (next i) nil) (inside x1 w1 i (next i)) (= (next i) w1))";
};

/// A closed clause ready for emission.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub id: String,
    pub vars: Vec<String>,
    pub body: Sexp,
}

impl Clause {
    pub fn new(id: impl Into<String>, vars: &str, body: &str) -> Self {
        Clause {
            id: id.into(),
            vars: vars.split_whitespace().map(String::from).collect(),
            body: parse(body).expect("catalog formula parses"),
        }
    }

    pub fn ground(id: impl Into<String>, body: Sexp) -> Self {
        Clause { id: id.into(), vars: Vec::new(), body }
    }

    /// `forall`-closed SMT-LIB term.
    pub fn quantified(&self) -> Sexp {
        if self.vars.is_empty() {
            return self.body.clone();
        }
        let binders = self.vars.iter().map(|v| Sexp::List(vec![Sexp::atom(v), Sexp::atom("Point")])).collect();
        Sexp::List(vec![Sexp::atom("forall"), Sexp::List(binders), self.body.clone()])
    }

    /// Every ground instance over `domain`, as one conjunction.
    pub fn instantiated(&self, domain: &[String]) -> Sexp {
        if self.vars.is_empty() {
            return self.body.clone();
        }
        let k = self.vars.len();
        let mut idx = vec![0usize; k];
        let mut out = vec![Sexp::atom("and")];
        loop {
            let map: HashMap<&str, Sexp> =
                self.vars.iter().zip(&idx).map(|(v, &i)| (v.as_str(), Sexp::atom(&domain[i]))).collect();
            out.push(self.body.substitute(&map));
            let mut p = 0;
            loop {
                if p == k {
                    return Sexp::List(out);
                }
                idx[p] += 1;
                if idx[p] < domain.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }
}

pub struct AxiomCatalog {
    defs: &'static [AxiomDef],
}

impl AxiomCatalog {
    pub fn get(&self, id: &str) -> Option<Clause> {
        self.defs.iter().find(|d| d.id == id).map(|d| Clause::new(d.id, d.vars, d.body))
    }

    pub fn ids(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.defs.iter().map(|d| d.id)
    }

    pub fn family(&self, f: Family) -> Vec<&'static str> {
        self.defs.iter().filter(|d| d.family == f).map(|d| d.id).collect()
    }

    pub fn def(&self, id: &str) -> Option<&'static AxiomDef> {
        self.defs.iter().find(|d| d.id == id)
    }
}

pub fn catalog() -> AxiomCatalog {
    AxiomCatalog { defs: DEFS }
}

/// A, I (with I1-I2 and the four I11-I16 premises split per disjunct) and T1-T4.
pub const AX_GEOM: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "I1", "I2", "I3", "I4", "I5", "I6", "I11", "I12", "I13", "I14", "I15", "I16",
    "T1", "T2", "T3", "T4",
];

/// E1-E3, F1-F5 and the D clauses not derivable by swapping `w` and `x`.
pub const AX_GRAPHS: &[&str] =
    &["E1", "E2", "E3", "F1", "F2", "F3", "F4", "F5", "D1", "D2", "D3", "D4", "D5", "D11", "D12", "D13", "D14"];

pub const AX_LEFT: &[&str] = &["A1", "A2", "A3", "A4", "A5", "A6"];

pub const AX_HULL: &[&str] = &["Y0", "Y1", "Y2", "Y3", "Y4", "Y11", "Y12", "Y13", "Y14", "Y15", "Y16", "Y17"];

/// AxGeom, AxGraphs, R1 and C1.
pub fn steps_axioms() -> Vec<&'static str> {
    let mut v: Vec<&str> = AX_GEOM.iter().chain(AX_GRAPHS).copied().collect();
    v.push("R1");
    v.push("C1");
    v
}

pub fn no_coexistence_axioms() -> Vec<&'static str> {
    steps_axioms().into_iter().filter(|&id| id != "C1").collect()
}

pub fn weak_coexistence_axioms() -> Vec<&'static str> {
    let mut v = no_coexistence_axioms();
    v.push("Cw");
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown,
    Timeout,
}

impl Verdict {
    pub fn parse(token: &str) -> Option<Verdict> {
        match token {
            "sat" => Some(Verdict::Sat),
            "unsat" => Some(Verdict::Unsat),
            "unknown" => Some(Verdict::Unknown),
            "timeout" => Some(Verdict::Timeout),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "sat",
            Verdict::Unsat => "unsat",
            Verdict::Unknown => "unknown",
            Verdict::Timeout => "timeout",
        })
    }
}

/// How universally quantified axioms are written out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Quantified,
    /// Ground instances over the task's constants; equisatisfiable because
    /// the vocabulary has no function symbols.
    Instantiated,
}

/// Reference statistics for a task, kept for reporting only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reference {
    pub constants: usize,
    pub axioms: usize,
    pub query: usize,
    pub seconds: f64,
    /// Second timing column of the counterexample table.
    pub seconds_alt: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ProofTask {
    pub id: String,
    pub axioms: Vec<&'static str>,
    /// Task-specific clauses counted with the axioms.
    pub extra_axioms: Vec<Clause>,
    pub constants: Vec<String>,
    pub query: Vec<Sexp>,
    pub expected: Verdict,
    pub reference: Option<Reference>,
    pub default_mode: Mode,
    pub uses_next: bool,
    pub note: Option<&'static str>,
}

impl ProofTask {
    pub fn axiom_count(&self) -> usize {
        self.axioms.len() + self.extra_axioms.len()
    }

    pub fn query_count(&self) -> usize {
        self.query.len()
    }
}

fn atom(spec: &str) -> Sexp {
    let mut parts = spec.split_whitespace();
    let head = match parts.next().unwrap() {
        "del" => "deleting",
        "int" => "intersection",
        "ins" => "inside",
        other => other,
    };
    let mut l = vec![Sexp::atom(head)];
    l.extend(parts.map(Sexp::atom));
    Sexp::List(l)
}

fn not(s: Sexp) -> Sexp {
    Sexp::List(vec![Sexp::atom("not"), s])
}

fn or(mut items: Vec<Sexp>) -> Sexp {
    if items.len() == 1 {
        return items.pop().unwrap();
    }
    items.insert(0, Sexp::atom("or"));
    Sexp::List(items)
}

fn and(mut items: Vec<Sexp>) -> Sexp {
    if items.len() == 1 {
        return items.pop().unwrap();
    }
    items.insert(0, Sexp::atom("and"));
    Sexp::List(items)
}

fn eq(a: &str, b: &str) -> Sexp {
    Sexp::List(vec![Sexp::atom("="), Sexp::atom(a), Sexp::atom(b)])
}

/// Clause form of `¬(premises → disjuncts)`: premises as units, each
/// disjunct negated.
fn negated_goal(premises: &[&str], conclusion: &[&str]) -> Vec<Sexp> {
    premises.iter().map(|p| atom(p)).chain(conclusion.iter().map(|c| not(atom(c)))).collect()
}

const PREDICATES: &[&str] =
    &["left", "intersection", "inside", "E", "V", "F", "deleting", "next", "=", "not", "or", "and", "distinct"];

/// Constant symbols in order of first appearance.
fn constants_of(query: &[Sexp]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for q in query {
        let mut atoms = Vec::new();
        q.atoms(&mut atoms);
        for a in atoms {
            if !PREDICATES.contains(&a) && !out.iter().any(|o| o == a) {
                out.push(a.to_string());
            }
        }
    }
    out
}

fn r(constants: usize, axioms: usize, query: usize, seconds: f64) -> Option<Reference> {
    Some(Reference { constants, axioms, query, seconds, seconds_alt: None })
}

fn entailment(id: &str, premises: &[&str], conclusion: &[&str], reference: Option<Reference>) -> ProofTask {
    let query = negated_goal(premises, conclusion);
    ProofTask {
        id: id.to_string(),
        axioms: steps_axioms(),
        extra_axioms: Vec::new(),
        constants: constants_of(&query),
        query,
        expected: Verdict::Unsat,
        reference,
        default_mode: Mode::Instantiated,
        uses_next: false,
        note: None,
    }
}

const STEP1_DELS: [&str; 4] = ["del w1 x1 w3 x2", "del w1 x1 w3 x3", "del w1 x1 x3 w3", "del w1 x1 x3 x2"];
const STEP5_DELS: [&str; 8] = [
    "del w1 x1 w3 x2",
    "del w1 x1 w3 x3",
    "del w1 x1 x2 w3",
    "del w1 x1 x2 x3",
    "del w1 x1 x3 w3",
    "del w1 x1 x3 x2",
    "del w1 w2 w3 x3",
    "del w1 w2 x3 w3",
];

fn cat(parts: &[&[&'static str]]) -> Vec<&'static str> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn steps() -> Vec<ProofTask> {
    let mut out = Vec::new();
    let step1_premises = ["del u1 v1 w1 x1", "del w1 x1 w2 x2"];
    let step1_goal = ["del u1 v1 w2 x1", "int u1 v1 w1 w2"];
    out.push(entailment("part1_step1", &step1_premises, &step1_goal, r(6, 41, 4, 2.47)));

    let p2a = ["del u1 v1 w1 x1", "del w1 x1 w2 x2", "int u1 v1 w1 w2", "del w1 w2 w3 x3"];
    let c2a = cat(&[&STEP1_DELS, &["del w1 w2 x3 w3", "int u1 v1 w1 w3", "int u1 v1 w2 w3"]]);
    out.push(entailment("part1_step2a", &p2a, &c2a, r(8, 41, 11, 62.56)));

    let p2b = cat(&[&p2a, &["del w1 w2 x3 w3"]]);
    let c2b = cat(&[&STEP1_DELS, &["int u1 v1 w1 w3", "int u1 v1 w2 w3", "int u1 v1 w1 x3", "int u1 v1 w2 x3"]]);
    out.push(entailment("part1_step2b", &p2b, &c2b, r(8, 41, 11, 33.63)));

    out.push(entailment(
        "part2_step3",
        &["del w1 x1 w2 x2", "del w1 w2 w3 x3", "int w1 w3 w2 x2"],
        &["del w1 x1 w3 x2", "del w1 x1 w3 x3", "del w1 x1 x2 w2", "del w1 x1 x3 w3", "del w1 x1 x3 x2"],
        r(6, 41, 8, 5.01),
    ));

    let ins4 = ["ins w1 x1 w2 w3", "ins w1 x1 w2 x3", "ins w1 w2 x1 w3", "ins w1 w2 x1 x3"];
    out.push(entailment(
        "part2_step4",
        &["del w1 x1 w2 x2", "del w1 w2 w3 x3"],
        &cat(&[&STEP1_DELS, &ins4, &["F w2 x2"]]),
        r(6, 41, 11, 5.28),
    ));
    out.push(entailment(
        "part2_step4a",
        &["del w1 x1 w2 x2", "del w1 w2 x1 x3"],
        &["del w1 x1 x2 w2", "del w1 x1 x3 x2"],
        r(5, 41, 4, 0.80),
    ));

    let ins5 = ["ins w1 x1 w2 w3", "ins w1 x1 w2 x3"];
    let c5a = cat(&[&STEP5_DELS, &["int w1 y w2 x2"], &ins5]);
    out.push(entailment(
        "part2_step5a",
        &["del w1 x1 w2 x2", "ins w1 x1 w2 y", "del w2 y w3 x3"],
        &c5a,
        r(7, 41, 14, 12.59),
    ));
    out.push(entailment(
        "part2_step5b",
        &["del w1 x1 w2 x2", "ins w1 x1 w2 y", "del w1 y w3 x3"],
        &c5a,
        r(7, 41, 14, 9.18),
    ));
    out.push(entailment(
        "part2_step5c",
        &["del w1 x1 w2 x2", "ins w1 x1 w2 y", "ins w1 x1 w2 z", "del y z w3 x3"],
        &cat(&[&STEP5_DELS, &["int w1 z w2 x2", "int w1 y w2 x2"], &ins5]),
        r(8, 41, 16, 73.78),
    ));
    let c5d = cat(&[&STEP5_DELS, &["int w1 y w2 x2"]]);
    out.push(entailment(
        "part2_step5d",
        &["del w1 x1 w2 x2", "ins w1 x1 w2 y", "del y w2 w3 x3", "int w1 w3 w2 x2"],
        &c5d,
        r(7, 41, 13, 13.20),
    ));
    out.push(entailment(
        "part2_step5e",
        &["del w1 x1 w2 x2", "ins w1 x1 w2 y", "del y w1 w3 x3", "int w1 w3 w2 x2"],
        &c5d,
        r(7, 41, 13, 8.59),
    ));
    out.push(entailment(
        "part2_step5f",
        &["del w1 x1 w2 x2", "ins w1 x1 w2 y", "ins w1 x1 w2 z", "del y z w3 x3", "int w1 w3 w2 x2"],
        &cat(&[&STEP5_DELS, &["int w1 y w2 x2", "int w1 z w2 x2"]]),
        r(8, 41, 13, 69.71),
    ));

    let c6a = cat(&[
        &STEP1_DELS,
        &["del w1 w2 w4 x3", "del w1 w2 w4 x4", "del w1 w2 x4 w4", "del w1 w2 x4 x3"],
        &ins4,
        &["ins w1 w2 w3 w4", "ins w1 w2 w3 x4", "ins w1 w3 w2 w4", "ins w1 w3 w2 x4"],
    ]);
    let c6b = cat(&[&["del w1 x1 w3 x2", "del w1 x1 w3 x3", "del w1 x1 x2 w2", "del w1 x1 x3 x2"], &ins4]);
    out.push(entailment(
        "part2_step6a",
        &["del w1 x1 w2 x2", "del w1 w2 w3 x3", "del w1 w3 w4 x4"],
        &c6a,
        r(8, 41, 23, 68.09),
    ));
    out.push(entailment(
        "part2_step6b",
        &["del w1 x1 w2 x2", "del w1 w2 w3 x3", "del w1 w3 x1 x4"],
        &c6b,
        r(7, 41, 11, 18.02),
    ));
    out.push(entailment(
        "part2_step6c",
        &["del w1 x1 w2 x2", "del w1 w2 w3 x3", "del w2 w3 w4 x4"],
        &c6a,
        r(8, 41, 23, 61.98),
    ));
    out.push(entailment(
        "part2_step6d",
        &["del w1 x1 w2 x2", "del w1 w2 w3 x3", "del w2 w3 x1 x4"],
        &c6b,
        r(7, 41, 11, 17.07),
    ));
    out.push(entailment(
        "part2_step6e",
        &["del w1 x1 w2 x2", "del w1 w2 w3 x3", "del w2 w3 w1 x4"],
        &cat(&[
            &["del w1 x1 w3 x2", "del w1 x1 w3 x3", "del w1 x1 x2 w2", "del w1 x1 x3 x2"],
            &["del w1 w2 x3 w3", "del w1 w2 x4 x3"],
            &ins4,
        ]),
        r(7, 41, 12, 8.22),
    ));

    let ints6 = ["int w1 w3 w2 x2", "int w1 w4 w2 x2", "int w1 w5 w2 x2"];
    let c6g = cat(&[
        &["del w1 x1 w3 x2", "del w1 x1 w4 x4", "del w1 w2 w4 x4"],
        &["del w1 w3 w5 x4", "del w1 w3 w5 x5", "del w1 w3 x4 w4"],
        &["del w1 w2 x5 w5", "del w1 w2 x5 x4"],
        &ints6,
        &["ins w1 w3 w4 w5", "ins w1 w3 w4 x5", "ins w1 w4 w3 w5", "ins w1 w4 w3 x5"],
    ]);
    let c6i = cat(&[
        &["del w1 x1 w3 x2", "del w1 x1 w4 x4", "del w1 w2 w4 x4"],
        &["del w2 w3 w5 x4", "del w2 w3 w5 x5", "del w2 w3 x4 w4"],
        &["del w1 w2 x5 w5", "del w1 w2 x5 x4"],
        &ints6,
        &["ins w2 w3 w4 w5", "ins w2 w3 w4 x5", "ins w2 w4 w3 w5", "ins w2 w4 w3 x5"],
    ]);
    let head6 = ["del w1 x1 w2 x2", "del w1 w2 w3 x3", "ins w1 x1 w2 w3"];
    out.push(entailment(
        "part2_step6g",
        &cat(&[&head6, &["del w1 w3 w4 x4", "ins w1 x1 w2 w4", "del w1 w4 w5 x5"]]),
        &c6g,
        r(10, 41, 21, 423.69),
    ));
    out.push(entailment(
        "part2_step6h",
        &cat(&[&head6, &["del w1 w3 w4 x4", "ins w1 x1 w2 w4", "del w3 w4 w5 x5"]]),
        &c6g,
        r(10, 41, 21, 428.55),
    ));
    out.push(entailment(
        "part2_step6i",
        &cat(&[&head6, &["del w2 w3 w4 x4", "ins w1 x1 w2 w4", "del w2 w4 w5 x5"]]),
        &c6i,
        r(10, 41, 21, 406.41),
    ));
    out.push(entailment(
        "part2_step6j",
        &cat(&[&head6, &["del w2 w3 w4 x4", "ins w1 x1 w2 w4", "del w3 w4 w5 x5"]]),
        &c6i,
        r(10, 41, 22, 428.77),
    ));
    out.push(entailment(
        "part2_step7",
        &["del w1 x1 w2 x2", "del w1 x1 x2 w2", "del w1 w2 x1 w3", "del w1 x2 x1 w4"],
        &[],
        r(6, 41, 4, 2.83),
    ));

    let p8 = ["del u1 v1 w1 x1", "F w1 x1", "del v1 w1 w2 x2", "F w2 x2"];
    out.push(entailment(
        "part3_step8a",
        &p8,
        &[
            "ins u1 v1 w1 w2",
            "ins v1 u1 w1 w2",
            "ins u1 v1 w1 x2",
            "ins v1 u1 w1 x2",
            "del u1 v1 w2 x2",
            "del u1 v1 x2 w2",
        ],
        r(6, 41, 10, 2.72),
    ));
    out.push(entailment(
        "part3_step8b",
        &["del u1 v1 w1 x1", "F w1 x1", "del v1 w1 u1 x2", "F u1 x2"],
        &[],
        r(5, 41, 4, 0.12),
    ));
    out.push(entailment(
        "part3_step9a",
        &cat(&[&p8, &["ins u1 v1 w1 w2", "del v1 w2 w3 x3", "F w3 x3"]]),
        &[
            "ins u1 v1 w1 x1",
            "ins v1 w1 w2 w3",
            "ins v1 w1 w2 x3",
            "ins w1 v1 w2 w3",
            "ins w1 v1 w2 x3",
            "del u1 v1 w3 x3",
            "del u1 v1 x3 w3",
            "del v1 w1 w3 x3",
            "del v1 w1 x3 w3",
        ],
        r(8, 41, 16, 18.40),
    ));
    out.push(entailment(
        "part3_step9b",
        &cat(&[&p8, &["ins u1 v1 w1 w2", "del v1 w2 u1 x3", "F u1 x3"]]),
        &[],
        r(7, 41, 7, 3.51),
    ));
    out
}

fn pasch() -> ProofTask {
    // Triangle uvw in counterclockwise order, segment xy crossing side uv
    // with both endpoints outside the closed triangle and away from w.
    let query = vec![
        atom("left u v w"),
        atom("left v w u"),
        atom("left w u v"),
        atom("int x y u v"),
        not(atom("ins u v w x")),
        not(atom("ins u v w y")),
        not(eq("x", "w")),
        not(eq("y", "w")),
        not(atom("int x y v w")),
        not(atom("int x y w v")),
        not(atom("int x y w u")),
        not(atom("int x y u w")),
    ];
    ProofTask {
        id: "pasch".into(),
        axioms: AX_GEOM.to_vec(),
        extra_axioms: Vec::new(),
        constants: constants_of(&query),
        query,
        expected: Verdict::Unsat,
        reference: r(5, 22, 12, 0.49),
        default_mode: Mode::Quantified,
        uses_next: false,
        note: Some("query clauses reconstructed from the statement of the property"),
    }
}

fn clique() -> ProofTask {
    let query = vec![
        atom("E u v"),
        atom("E v w"),
        atom("E w u"),
        atom("ins u v w x"),
        atom("ins u v w y"),
        not(eq("x", "y")),
        atom("V x"),
        atom("V y"),
        not(atom("E x y")),
    ];
    let axioms = cat(&[AX_LEFT, &["T1", "T2", "T3", "T4", "E1", "E2", "E3", "C1"]]);
    ProofTask {
        id: "clique".into(),
        axioms,
        extra_axioms: Vec::new(),
        constants: constants_of(&query),
        query,
        expected: Verdict::Unsat,
        reference: r(5, 14, 9, 0.34),
        default_mode: Mode::Quantified,
        uses_next: false,
        note: Some("query clauses reconstructed from the statement of the property"),
    }
}

fn convexhull() -> ProofTask {
    let next_i = Sexp::List(vec![Sexp::atom("next"), Sexp::atom("i")]);
    let mut query: Vec<Sexp> =
        ["W1", "W2", "W3", "W4", "W5", "W6"].iter().map(|id| catalog().get(id).unwrap().body).collect();
    for id in ["X1", "X2", "X3", "X4"] {
        query.push(catalog().get(id).unwrap().quantified());
    }
    query.push(not(eq("i", "nil")));
    query.push(not(Sexp::List(vec![Sexp::atom("="), next_i.clone(), Sexp::atom("nil")])));
    query.push(atom("F a b"));
    query.push(Sexp::List(vec![
        Sexp::atom("intersection"),
        Sexp::atom("i"),
        next_i.clone(),
        Sexp::atom("a"),
        Sexp::atom("b"),
    ]));
    query.push(not(Sexp::List(vec![Sexp::atom("F"), Sexp::atom("i"), next_i])));
    let mut axioms = steps_axioms();
    axioms.extend_from_slice(AX_HULL);
    let mut constants = vec!["u1", "v1", "w1", "x1", "i", "a", "b", "nil"];
    constants.sort_unstable();
    ProofTask {
        id: "convexhull".into(),
        axioms,
        extra_axioms: Vec::new(),
        constants: constants.into_iter().map(String::from).collect(),
        query,
        expected: Verdict::Unsat,
        reference: r(8, 53, 15, 30.71),
        default_mode: Mode::Quantified,
        uses_next: true,
        note: Some("goal: a hull edge i-next(i) crossed by an F edge a-b and itself not in F"),
    }
}

fn counterexample(id: &str) -> ProofTask {
    let query = negated_goal(&["del u1 v1 w1 x1", "del w1 x1 w2 x2"], &["del u1 v1 w2 x1", "int u1 v1 w1 w2"]);
    ProofTask {
        id: id.into(),
        axioms: no_coexistence_axioms(),
        extra_axioms: Vec::new(),
        constants: constants_of(&query),
        query,
        expected: Verdict::Sat,
        reference: Some(Reference { constants: 6, axioms: 40, query: 4, seconds: 2.58, seconds_alt: Some(1.36) }),
        default_mode: Mode::Quantified,
        uses_next: false,
        note: None,
    }
}

fn cycle(k: usize, seconds: f64, seconds_alt: f64) -> ProofTask {
    let mut query = Vec::new();
    for i in 1..=k {
        let j = i % k + 1;
        query.push(atom(&format!("del u{i} y u{j} v{j}")));
    }
    for i in 1..=k {
        let j = i % k + 1;
        query.push(atom(&format!("F u{j} v{j}")));
    }
    ProofTask {
        id: format!("cycle{k}"),
        axioms: weak_coexistence_axioms(),
        extra_axioms: Vec::new(),
        constants: constants_of(&query),
        query,
        expected: Verdict::Sat,
        reference: Some(Reference {
            constants: 2 * k + 1,
            axioms: 41,
            query: 2 * k,
            seconds,
            seconds_alt: Some(seconds_alt),
        }),
        default_mode: Mode::Instantiated,
        uses_next: false,
        note: None,
    }
}

const NVERTEX_TIMES: [(f64, f64, f64, f64); 6] = [
    (0.00, 0.01, 0.00, 0.01),
    (0.00, 0.01, 0.00, 0.01),
    (0.35, 0.31, 0.41, 0.37),
    (8.71, 6.86, 8.78, 7.83),
    (206.56, 145.50, 187.35, 145.62),
    (218.60, 91.00, 220.02, 226.23),
];

/// Bounded counterexample search over `n` named vertices `c1..cn`: every
/// pair is joined by a path of at most three edges, yet `cn` has no F edge.
fn n_vertices(n: usize, weak: bool) -> ProofTask {
    let cs: Vec<String> = (1..=n).map(|i| format!("c{i}")).collect();
    let e = |a: &str, b: &str| atom(&format!("E {a} {b}"));
    let mut query = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&cs[i], &cs[j]);
            let mut alts = vec![e(a, b)];
            let mids: Vec<&String> = cs.iter().filter(|c| *c != a && *c != b).collect();
            for k in &mids {
                alts.push(and(vec![e(a, k), e(k, b)]));
            }
            for k in &mids {
                for l in &mids {
                    if k != l {
                        alts.push(and(vec![e(a, k), e(k, l), e(l, b)]));
                    }
                }
            }
            query.push(or(alts));
        }
    }
    let last = &cs[n - 1];
    for c in &cs[..n - 1] {
        query.push(not(atom(&format!("F {last} {c}"))));
    }

    let mut distinct = vec![Sexp::atom("distinct")];
    distinct.extend(cs.iter().map(Sexp::atom));
    let closure = or(cs.iter().map(|c| eq("p", c)).collect());
    let mut crossing = vec![atom("F u v")];
    for a in &cs {
        for b in &cs {
            if a != b {
                crossing.push(and(vec![atom(&format!("F {a} {b}")), atom(&format!("int u v {a} {b}"))]));
            }
        }
    }
    let extra_axioms = vec![
        Clause::ground("distinct_vertices", Sexp::List(distinct)),
        Clause {
            id: "vertex_closure".into(),
            vars: vec!["p".into()],
            body: Sexp::List(vec![Sexp::atom("=>"), atom("V p"), closure]),
        },
        Clause {
            id: "crossing_f_edge".into(),
            vars: vec!["u".into(), "v".into()],
            body: Sexp::List(vec![Sexp::atom("=>"), atom("E u v"), or(crossing)]),
        },
    ];
    let (mut axioms, tag) = if weak { (weak_coexistence_axioms(), "weakC") } else { (no_coexistence_axioms(), "noC") };
    axioms.sort_by_key(|id| catalog().ids().position(|c| c == *id));
    let t = NVERTEX_TIMES[n - 2];
    let (s, s_alt) = if weak { (t.2, t.3) } else { (t.0, t.1) };
    let q = n * (n - 1) / 2 + n - 1;
    ProofTask {
        id: format!("{n}vertices_{tag}"),
        axioms,
        extra_axioms,
        constants: cs,
        query,
        expected: if n == 7 { Verdict::Sat } else { Verdict::Unsat },
        reference: Some(Reference {
            constants: n,
            axioms: if weak { 44 } else { 43 },
            query: q,
            seconds: s,
            seconds_alt: Some(s_alt),
        }),
        default_mode: Mode::Instantiated,
        uses_next: false,
        note: Some("vertex closure and the crossing-F-edge clause are reconstructions"),
    }
}

/// `A1..A6 ⊢ id`, checked by refuting a Skolemized counterexample.
fn dependency(id: &'static str) -> ProofTask {
    let c = catalog().get(id).unwrap();
    let map: HashMap<&str, Sexp> = c.vars.iter().map(|v| (v.as_str(), Sexp::atom(format!("{v}0")))).collect();
    let query = vec![not(c.body.substitute(&map))];
    ProofTask {
        id: format!("dep_{id}"),
        axioms: AX_LEFT.to_vec(),
        extra_axioms: Vec::new(),
        constants: c.vars.iter().map(|v| format!("{v}0")).collect(),
        query,
        expected: Verdict::Unsat,
        reference: None,
        default_mode: Mode::Quantified,
        uses_next: false,
        note: None,
    }
}

/// The 27 entailment tasks of the proof table, in table order.
pub fn proof_table_ids() -> Vec<String> {
    steps().into_iter().map(|t| t.id).chain(["convexhull".to_string()]).collect()
}

pub fn counterexample_table_ids() -> Vec<String> {
    let mut v = vec!["counterexample".to_string()];
    v.extend((2..=7).map(|n| format!("{n}vertices_noC")));
    v.extend((2..=7).map(|n| format!("{n}vertices_weakC")));
    v.push("cycle3".into());
    v.push("cycle4".into());
    v
}

pub fn all_tasks() -> Vec<ProofTask> {
    let mut out = vec![pasch(), clique()];
    out.extend(steps());
    out.push(counterexample("part1_step1_without_coexistence"));
    out.push(convexhull());
    out.push(counterexample("counterexample"));
    out.extend((2..=7).map(|n| n_vertices(n, false)));
    out.extend((2..=7).map(|n| n_vertices(n, true)));
    out.push(cycle(3, 5.82, 13.24));
    out.push(cycle(4, 80.89, 61.42));
    out.extend(catalog().family(Family::B).into_iter().map(dependency));
    out
}

pub fn task(id: &str) -> Option<ProofTask> {
    all_tasks().into_iter().find(|t| t.id == id)
}

pub fn task_ids() -> Vec<String> {
    all_tasks().into_iter().map(|t| t.id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_formula_parses_and_ids_are_unique() {
        let cat = catalog();
        let ids: Vec<_> = cat.ids().collect();
        for id in &ids {
            let c = cat.get(id).unwrap();
            let mut atoms = Vec::new();
            c.body.atoms(&mut atoms);
            for v in &c.vars {
                assert!(atoms.contains(&v.as_str()), "{id}: unused variable {v}");
            }
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }

    #[test]
    fn named_sets() {
        assert_eq!(AX_GEOM.len(), 22);
        assert_eq!(steps_axioms().len(), 41);
        assert_eq!(no_coexistence_axioms().len(), 40);
        assert_eq!(weak_coexistence_axioms().len(), 41);
        for id in steps_axioms() {
            assert!(catalog().get(id).is_some(), "{id}");
        }
    }

    #[test]
    fn p11_constant_matches_i11() {
        assert!(catalog().def("I11").unwrap().body.contains(P11));
    }

    #[test]
    fn instantiation_size() {
        let c = catalog().get("A1").unwrap();
        let dom: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let inst = c.instantiated(&dom);
        assert_eq!(inst.as_list().unwrap().len(), 1 + 8);
        assert!(inst.to_string().contains("(left b a a)"));
    }

    #[test]
    fn task_ids_are_unique() {
        let ids = task_ids();
        let mut s = ids.clone();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), ids.len());
        assert_eq!(proof_table_ids().len(), 27);
    }
}
