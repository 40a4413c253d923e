//! Reading predicate assignments back out of solver models and realizing
//! them on a small integer grid.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::sexpr::{self, Sexp};
use super::{ProofTask, SmtError};
use crate::geometry::{self, Point};
use crate::graph::{GeoGraph, Vertex};

/// Largest grid side tried by [`model_to_graph`].
pub const DEFAULT_GRID: i64 = 8;
/// Backtracking nodes allowed per grid size.
pub const DEFAULT_NODE_LIMIT: u64 = 20_000_000;

/// The relations of a model restricted to the task's constants, indexed by
/// constant position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PredicateModel {
    pub constants: Vec<String>,
    /// Universe element each constant denotes.
    pub elements: Vec<String>,
    /// `left(ci, cj, ck)` for pairwise distinct positions.
    pub left: BTreeSet<(usize, usize, usize)>,
    pub e: BTreeSet<(usize, usize)>,
    pub f: BTreeSet<(usize, usize)>,
    pub v: BTreeSet<usize>,
}

impl PredicateModel {
    /// Undirected E pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        self.e.iter().filter(|(a, b)| a != b).map(|&(a, b)| (a.min(b), a.max(b))).collect()
    }

    pub fn f_edges(&self) -> BTreeSet<(usize, usize)> {
        self.f.iter().filter(|(a, b)| a != b).map(|&(a, b)| (a.min(b), a.max(b))).collect()
    }
}

impl fmt::Display for PredicateModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = |i: &usize| self.constants[*i].as_str();
        for (c, el) in self.constants.iter().zip(&self.elements) {
            writeln!(f, "{c} = {el}")?;
        }
        let pairs = |s: &BTreeSet<(usize, usize)>| {
            s.iter().map(|(a, b)| format!("{}{}", n(a), n(b))).collect::<Vec<_>>().join(" ")
        };
        writeln!(f, "E: {}", pairs(&self.edges()))?;
        writeln!(f, "F: {}", pairs(&self.f_edges()))?;
        let left: Vec<String> = self.left.iter().map(|(a, b, c)| format!("{}{}{}", n(a), n(b), n(c))).collect();
        writeln!(f, "left: {}", left.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Val {
    Bool(bool),
    Elem(String),
}

struct Def {
    params: Vec<String>,
    body: Sexp,
}

struct Interp {
    defs: HashMap<String, Def>,
}

fn perr(msg: impl Into<String>) -> SmtError {
    SmtError::ParseError(msg.into())
}

impl Interp {
    fn from_model(items: &[Sexp]) -> Result<Self, SmtError> {
        let mut defs = HashMap::new();
        for it in items {
            let Some(l) = it.as_list() else { continue };
            if l.first().and_then(Sexp::as_atom) != Some("define-fun") {
                continue;
            }
            let [_, name, params, _sort, body] = l else {
                return Err(perr(format!("malformed define-fun: {it}")));
            };
            let name = name.as_atom().ok_or_else(|| perr("define-fun name"))?;
            let params = params
                .as_list()
                .ok_or_else(|| perr("define-fun parameters"))?
                .iter()
                .map(|p| {
                    p.as_list()
                        .and_then(|b| b.first())
                        .and_then(Sexp::as_atom)
                        .map(str::to_string)
                        .ok_or_else(|| perr(format!("bad parameter {p}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            defs.insert(name.to_string(), Def { params, body: body.clone() });
        }
        Ok(Interp { defs })
    }

    fn eval_bool(&self, e: &Sexp, env: &HashMap<String, Val>) -> Result<bool, SmtError> {
        match self.eval(e, env)? {
            Val::Bool(b) => Ok(b),
            Val::Elem(x) => Err(perr(format!("expected a boolean, got {x}"))),
        }
    }

    fn eval<'a>(&'a self, e: &'a Sexp, env: &HashMap<String, Val>) -> Result<Val, SmtError> {
        // tail positions (ite branches, let bodies, calls) loop instead of
        // recursing, so long ite chains stay shallow
        let mut e = e;
        let mut env = env.clone();
        loop {
            let l = match e {
                Sexp::Atom(a) => {
                    if let Some(v) = env.get(a) {
                        return Ok(v.clone());
                    }
                    match (a.as_str(), self.defs.get(a)) {
                        ("true", _) => return Ok(Val::Bool(true)),
                        ("false", _) => return Ok(Val::Bool(false)),
                        (_, Some(d)) if d.params.is_empty() => {
                            e = &d.body;
                            env = HashMap::new();
                            continue;
                        }
                        _ => return Ok(Val::Elem(a.clone())),
                    }
                }
                Sexp::List(l) => l,
            };
            let head = l.first().and_then(Sexp::as_atom).ok_or_else(|| perr(format!("cannot evaluate {e}")))?;
            let args = &l[1..];
            match head {
                "ite" => {
                    let [c, t, f] = args else { return Err(perr("ite arity")) };
                    e = if self.eval_bool(c, &env)? { t } else { f };
                }
                "let" => {
                    let [binds, body] = args else { return Err(perr("let arity")) };
                    let mut next = env.clone();
                    for b in binds.as_list().ok_or_else(|| perr("let bindings"))? {
                        let [n, v] = b.as_list().ok_or_else(|| perr("let binding"))? else {
                            return Err(perr("let binding arity"));
                        };
                        let n = n.as_atom().ok_or_else(|| perr("let name"))?;
                        next.insert(n.to_string(), self.eval(v, &env)?);
                    }
                    e = body;
                    env = next;
                }
                "!" => {
                    e = args.first().ok_or_else(|| perr("empty annotation"))?;
                }
                "not" => return Ok(Val::Bool(!self.eval_bool(&args[0], &env)?)),
                "and" => {
                    for a in args {
                        if !self.eval_bool(a, &env)? {
                            return Ok(Val::Bool(false));
                        }
                    }
                    return Ok(Val::Bool(true));
                }
                "or" => {
                    for a in args {
                        if self.eval_bool(a, &env)? {
                            return Ok(Val::Bool(true));
                        }
                    }
                    return Ok(Val::Bool(false));
                }
                "xor" => {
                    let mut acc = false;
                    for a in args {
                        acc ^= self.eval_bool(a, &env)?;
                    }
                    return Ok(Val::Bool(acc));
                }
                "=>" => {
                    let [a, b] = args else { return Err(perr("=> arity")) };
                    return Ok(Val::Bool(!self.eval_bool(a, &env)? || self.eval_bool(b, &env)?));
                }
                "=" | "distinct" => {
                    let vals = args.iter().map(|a| self.eval(a, &env)).collect::<Result<Vec<_>, _>>()?;
                    let all_eq = vals.windows(2).all(|w| w[0] == w[1]);
                    let pairwise = (0..vals.len()).all(|i| (i + 1..vals.len()).all(|j| vals[i] != vals[j]));
                    return Ok(Val::Bool(if head == "=" { all_eq } else { pairwise }));
                }
                name => {
                    let d = self.defs.get(name).ok_or_else(|| perr(format!("undefined function {name}")))?;
                    if d.params.len() != args.len() {
                        return Err(perr(format!("{name} expects {} arguments", d.params.len())));
                    }
                    let mut next = HashMap::new();
                    for (p, a) in d.params.iter().zip(args) {
                        next.insert(p.clone(), self.eval(a, &env)?);
                    }
                    e = &d.body;
                    env = next;
                }
            }
        }
    }

    fn holds(&self, pred: &str, args: &[&str]) -> Result<bool, SmtError> {
        if !self.defs.contains_key(pred) {
            // the solver leaves unconstrained predicates out; any value works
            return Ok(false);
        }
        let call = Sexp::List(std::iter::once(Sexp::atom(pred)).chain(args.iter().map(|a| Sexp::atom(*a))).collect());
        self.eval_bool(&call, &HashMap::new())
    }
}

/// Extract the task's relations from solver output, with or without the
/// leading `sat` line.
pub fn parse_model(text: &str, task: &ProofTask) -> Result<PredicateModel, SmtError> {
    let items = sexpr::parse_all(text).map_err(|e| perr(e.0))?;
    let mut body: &[Sexp] = &items;
    if let Some(first) = items.first().and_then(Sexp::as_atom) {
        match first {
            "sat" => body = &items[1..],
            "unsat" | "unknown" | "timeout" => return Err(perr(format!("solver answered {first}, no model"))),
            _ => {}
        }
    }
    let defs: Vec<Sexp> = match body {
        [Sexp::List(l)] if l.first().and_then(Sexp::as_atom) == Some("model") => l[1..].to_vec(),
        [Sexp::List(l)] => l.clone(),
        _ => return Err(perr("expected a single model expression")),
    };
    let interp = Interp::from_model(&defs)?;
    let n = task.constants.len();
    let mut elements = Vec::with_capacity(n);
    for c in &task.constants {
        match interp.eval(&Sexp::atom(c.as_str()), &HashMap::new())? {
            Val::Elem(x) if interp.defs.contains_key(c) => elements.push(x),
            _ => return Err(perr(format!("model does not interpret constant {c}"))),
        }
    }
    let mut m = PredicateModel { constants: task.constants.clone(), elements, ..Default::default() };
    let el = |i: usize| m.elements[i].as_str();
    let mut left = BTreeSet::new();
    let (mut e, mut f, mut v) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
    for i in 0..n {
        if interp.holds("V", &[el(i)])? {
            v.insert(i);
        }
        for j in 0..n {
            if interp.holds("E", &[el(i), el(j)])? {
                e.insert((i, j));
            }
            if interp.holds("F", &[el(i), el(j)])? {
                f.insert((i, j));
            }
            for k in 0..n {
                if i != j && j != k && i != k && interp.holds("left", &[el(i), el(j), el(k)])? {
                    left.insert((i, j, k));
                }
            }
        }
    }
    m.left = left;
    m.e = e;
    m.f = f;
    m.v = v;
    Ok(m)
}

/// Integer points on a `side x side` grid, `side` in `3..=max_side`, whose
/// orientation relation equals the model's on all triples of distinct
/// constants. Constants denoting the same element must share a point.
pub fn realize(m: &PredicateModel, max_side: i64, node_limit: u64) -> Option<Vec<Point>> {
    let n = m.constants.len();
    for side in 3..=max_side {
        let mut pts: Vec<Point> = Vec::with_capacity(n);
        let mut nodes = 0u64;
        match place(m, side, &mut pts, &mut nodes, node_limit) {
            Some(true) => return Some(pts),
            Some(false) => {}
            None => continue,
        }
    }
    None
}

/// `Some(found)`, or `None` when the node budget ran out.
fn place(m: &PredicateModel, side: i64, pts: &mut Vec<Point>, nodes: &mut u64, limit: u64) -> Option<bool> {
    let i = pts.len();
    if i == m.constants.len() {
        return Some(true);
    }
    if let Some(j) = (0..i).find(|&j| m.elements[j] == m.elements[i]) {
        pts.push(pts[j]);
        if consistent(m, pts) {
            if let Some(true) = place(m, side, pts, nodes, limit) {
                return Some(true);
            }
        }
        pts.pop();
        return Some(false);
    }
    let mut exhausted = true;
    for x in 0..side {
        for y in 0..side {
            *nodes += 1;
            if *nodes > limit {
                return None;
            }
            let p = Point::new(x, y);
            if pts.iter().enumerate().any(|(j, &q)| q == p && m.elements[j] != m.elements[i]) {
                continue;
            }
            pts.push(p);
            if consistent(m, pts) {
                match place(m, side, pts, nodes, limit) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => exhausted = false,
                }
            }
            pts.pop();
            if !exhausted {
                return None;
            }
        }
    }
    Some(false)
}

fn consistent(m: &PredicateModel, pts: &[Point]) -> bool {
    let k = pts.len() - 1;
    for a in 0..=k {
        for b in 0..=k {
            if a == b {
                continue;
            }
            let c = k;
            let triples = [(a, b, c), (a, c, b), (c, a, b)];
            for (i, j, l) in triples {
                if i == j || j == l || i == l {
                    continue;
                }
                if geometry::left(pts[i], pts[j], pts[l]) != m.left.contains(&(i, j, l)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Realize a solver model of a counterexample task as a geometric graph
/// over the task's constants, labelled by constant name.
pub fn model_to_graph(text: &str, task: &ProofTask) -> Result<GeoGraph, SmtError> {
    let m = parse_model(text, task)?;
    let Some(pts) = realize(&m, DEFAULT_GRID, DEFAULT_NODE_LIMIT) else {
        return Err(SmtError::Unmappable(Box::new(m)));
    };
    let vertices = pts
        .iter()
        .enumerate()
        .map(|(i, &pos)| Vertex { id: i as u32, pos, label: Some(m.constants[i].clone()) })
        .collect();
    let edges = m.edges().into_iter().map(|(a, b)| (a as u32, b as u32));
    GeoGraph::from_parts(vertices, edges).map_err(|e| perr(e.to_string()))
}
