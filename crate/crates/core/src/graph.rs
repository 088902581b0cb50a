//! Causal DAGs over named variables.
//!
//! Graphs are immutable once built. Latent (unmeasured) confounders are
//! ordinary vertices carrying a `latent` flag; they take part in path
//! analysis but may never serve as an adjustment set member or a mediator.
//!
//! d-separation uses the reachability ("Bayes-ball") formulation, which is
//! linear in the number of edges.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::data::VarKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("graph contains a directed cycle through `{0}`")]
    Cycle(String),
    #[error("overlapping roles: {0}")]
    OverlappingRoles(String),
    #[error("vertex sets are not disjoint: `{0}` appears in more than one")]
    OverlappingSets(String),
    #[error("latent variable `{0}` cannot be observed or conditioned on")]
    Latent(String),
    #[error("invalid kind for `{name}`: {reason}")]
    InvalidKind { name: String, reason: String },
}

/// A vertex declaration. `kind` is only optional for latent vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableMeta {
    pub name: String,
    pub kind: Option<VarKind>,
    pub latent: bool,
}

impl VariableMeta {
    pub fn observed(name: &str, kind: VarKind) -> Self {
        VariableMeta {
            name: name.to_string(),
            kind: Some(kind),
            latent: false,
        }
    }

    pub fn latent(name: &str) -> Self {
        VariableMeta {
            name: name.to_string(),
            kind: None,
            latent: true,
        }
    }
}

/// A clause of a graphical criterion that failed, with a human-readable reason.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub clause: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "criterion {}: {}", self.clause, self.detail)
    }
}

/// Outcome of checking the back-door or front-door criterion.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CriterionReport {
    pub violations: Vec<Violation>,
}

impl CriterionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct CausalGraph {
    vertices: Vec<VariableMeta>,
    index: HashMap<String, usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    topo: Vec<usize>,
}

/// Incremental construction of a [`CausalGraph`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<VariableMeta>,
    edges: Vec<(String, String)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, meta: VariableMeta) -> Self {
        self.vertices.push(meta);
        self
    }

    pub fn discrete(self, name: &str, cardinality: usize) -> Self {
        self.vertex(VariableMeta::observed(
            name,
            VarKind::Discrete { cardinality },
        ))
    }

    pub fn continuous(self, name: &str, dimension: usize) -> Self {
        self.vertex(VariableMeta::observed(
            name,
            VarKind::Continuous { dimension },
        ))
    }

    pub fn latent(self, name: &str) -> Self {
        self.vertex(VariableMeta::latent(name))
    }

    pub fn edge(mut self, from: &str, to: &str) -> Self {
        self.edges.push((from.to_string(), to.to_string()));
        self
    }

    pub fn build(self) -> Result<CausalGraph, GraphError> {
        CausalGraph::new(self.vertices, &self.edges)
    }
}

impl CausalGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    pub fn new(
        vertices: Vec<VariableMeta>,
        edges: &[(String, String)],
    ) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            match v.kind {
                Some(kind) => kind
                    .validate(&v.name)
                    .map_err(|e| GraphError::InvalidKind {
                        name: v.name.clone(),
                        reason: e.to_string(),
                    })?,
                None if !v.latent => {
                    return Err(GraphError::InvalidKind {
                        name: v.name.clone(),
                        reason: "observed variables need a kind".into(),
                    })
                }
                None => {}
            }
            if index.insert(v.name.clone(), i).is_some() {
                return Err(GraphError::DuplicateVariable(v.name.clone()));
            }
        }
        let n = vertices.len();
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for (a, b) in edges {
            let ia = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownVariable(a.clone()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownVariable(b.clone()))?;
            if ia == ib {
                return Err(GraphError::Cycle(a.clone()));
            }
            if !parents[ib].contains(&ia) {
                parents[ib].push(ia);
                children[ia].push(ib);
            }
        }
        for list in parents.iter_mut().chain(children.iter_mut()) {
            list.sort_unstable();
        }

        // Kahn's algorithm, always releasing the earliest-declared ready vertex.
        let mut indegree: Vec<usize> = parents.iter().map(Vec::len).collect();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&i| indegree[i] == 0).map(Reverse).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(Reverse(v)) = ready.pop() {
            topo.push(v);
            for &c in &children[v] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.push(Reverse(c));
                }
            }
        }
        if topo.len() != n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap_or(0);
            return Err(GraphError::Cycle(vertices[stuck].name.clone()));
        }

        Ok(CausalGraph {
            vertices,
            index,
            parents,
            children,
            topo,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VariableMeta] {
        &self.vertices
    }

    pub fn meta(&self, name: &str) -> Result<&VariableMeta, GraphError> {
        Ok(&self.vertices[self.idx(name)?])
    }

    pub fn topological_order(&self) -> Vec<&str> {
        self.topo
            .iter()
            .map(|&i| self.vertices[i].name.as_str())
            .collect()
    }

    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for (child, ps) in self.parents.iter().enumerate() {
            for &p in ps {
                out.push((
                    self.vertices[p].name.as_str(),
                    self.vertices[child].name.as_str(),
                ));
            }
        }
        out
    }

    fn idx(&self, name: &str) -> Result<usize, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVariable(name.to_string()))
    }

    fn indices(&self, names: &[&str]) -> Result<Vec<usize>, GraphError> {
        names.iter().map(|n| self.idx(n)).collect()
    }

    fn name(&self, i: usize) -> &str {
        &self.vertices[i].name
    }

    /// In-neighbours of `v`, in declaration order.
    pub fn parents(&self, v: &str) -> Result<Vec<&str>, GraphError> {
        let i = self.idx(v)?;
        Ok(self.parents[i].iter().map(|&p| self.name(p)).collect())
    }

    pub fn children(&self, v: &str) -> Result<Vec<&str>, GraphError> {
        let i = self.idx(v)?;
        Ok(self.children[i].iter().map(|&c| self.name(c)).collect())
    }

    /// Strict descendants of `v`.
    pub fn descendants(&self, v: &str) -> Result<Vec<&str>, GraphError> {
        let i = self.idx(v)?;
        let mark = self.reach_down(&[i], None);
        Ok((0..self.len())
            .filter(|&j| j != i && mark[j])
            .map(|j| self.name(j))
            .collect())
    }

    fn reach_down(&self, from: &[usize], blocked: Option<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = from.to_vec();
        for &f in from {
            seen[f] = true;
        }
        while let Some(v) = stack.pop() {
            for &c in &self.children[v] {
                if Some(c) != blocked && !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        seen
    }

    fn check_disjoint(&self, sets: &[&[usize]]) -> Result<(), GraphError> {
        let mut owner = vec![usize::MAX; self.len()];
        for (k, set) in sets.iter().enumerate() {
            for &v in set.iter() {
                if owner[v] != usize::MAX && owner[v] != k {
                    return Err(GraphError::OverlappingSets(self.name(v).to_string()));
                }
                owner[v] = k;
            }
        }
        Ok(())
    }

    /// Whether `a` and `b` are d-separated by `s`.
    pub fn d_separated(&self, a: &[&str], b: &[&str], s: &[&str]) -> Result<bool, GraphError> {
        let (a, b, s) = (self.indices(a)?, self.indices(b)?, self.indices(s)?);
        self.check_disjoint(&[&a, &b, &s])?;
        Ok(self.d_separated_idx(&a, &b, &s, None))
    }

    /// Bayes-ball reachability. `cut` removes every edge leaving that vertex.
    fn d_separated_idx(&self, a: &[usize], b: &[usize], s: &[usize], cut: Option<usize>) -> bool {
        let n = self.len();
        let parents_of = |v: usize| {
            self.parents[v]
                .iter()
                .copied()
                .filter(move |&p| Some(p) != cut)
        };
        let children_of = |v: usize| {
            let cut_here = Some(v) == cut;
            self.children[v].iter().copied().filter(move |_| !cut_here)
        };

        let mut in_s = vec![false; n];
        for &v in s {
            in_s[v] = true;
        }
        // Ancestors of the conditioning set (inclusive); a collider is open iff it is one.
        let mut anc_s = in_s.clone();
        let mut stack: Vec<usize> = s.to_vec();
        while let Some(v) = stack.pop() {
            for p in parents_of(v) {
                if !anc_s[p] {
                    anc_s[p] = true;
                    stack.push(p);
                }
            }
        }

        let mut is_target = vec![false; n];
        for &v in b {
            is_target[v] = true;
        }
        // visited[v][0]: arrived from a child (moving up); [1]: arrived from a parent.
        let mut visited = vec![[false; 2]; n];
        let mut queue: VecDeque<(usize, usize)> = a.iter().map(|&v| (v, 0)).collect();
        while let Some((v, dir)) = queue.pop_front() {
            if visited[v][dir] {
                continue;
            }
            visited[v][dir] = true;
            if !in_s[v] && is_target[v] {
                return false;
            }
            if dir == 0 {
                if !in_s[v] {
                    queue.extend(parents_of(v).map(|p| (p, 0)));
                    queue.extend(children_of(v).map(|c| (c, 1)));
                }
            } else {
                if !in_s[v] {
                    queue.extend(children_of(v).map(|c| (c, 1)));
                }
                if anc_s[v] {
                    queue.extend(parents_of(v).map(|p| (p, 0)));
                }
            }
        }
        true
    }

    fn require_observed(&self, i: usize) -> Result<(), GraphError> {
        if self.vertices[i].latent {
            Err(GraphError::Latent(self.name(i).to_string()))
        } else {
            Ok(())
        }
    }

    /// Checks whether `adjust` is back-door admissible for the effect of `target` on `effect`.
    pub fn validate_backdoor(
        &self,
        adjust: &[&str],
        target: &str,
        effect: &str,
    ) -> Result<CriterionReport, GraphError> {
        let s = self.indices(adjust)?;
        let y = self.idx(target)?;
        let x = self.idx(effect)?;
        if y == x {
            return Err(GraphError::OverlappingRoles(format!(
                "`{target}` is both target and effect"
            )));
        }
        for &v in &s {
            if v == y || v == x {
                return Err(GraphError::OverlappingRoles(format!(
                    "adjustment set contains `{}`",
                    self.name(v)
                )));
            }
            self.require_observed(v)?;
        }

        let mut report = CriterionReport::default();
        let below_y = self.reach_down(&[y], None);
        for &v in &s {
            if below_y[v] {
                report.violations.push(Violation {
                    clause: "(i)",
                    detail: format!("`{}` is a descendant of `{target}`", self.name(v)),
                });
            }
        }
        if !self.d_separated_idx(&[y], &[x], &s, Some(y)) {
            report.violations.push(Violation {
                clause: "(ii)",
                detail: format!(
                    "the adjustment set leaves a back-door path from `{target}` to `{effect}` open"
                ),
            });
        }
        Ok(report)
    }

    /// Checks whether `mediator` satisfies the front-door criterion for `target` → `effect`.
    pub fn validate_frontdoor(
        &self,
        mediator: &str,
        target: &str,
        effect: &str,
    ) -> Result<CriterionReport, GraphError> {
        let z = self.idx(mediator)?;
        let y = self.idx(target)?;
        let x = self.idx(effect)?;
        if z == y || z == x || y == x {
            return Err(GraphError::OverlappingRoles(format!(
                "mediator `{mediator}`, target `{target}` and effect `{effect}` must be distinct"
            )));
        }
        self.require_observed(z)?;

        let mut report = CriterionReport::default();
        if self.reach_down(&[y], Some(z))[x] {
            report.violations.push(Violation {
                clause: "(i)",
                detail: format!("mediator `{mediator}` does not intercept every directed path from `{target}` to `{effect}`"),
            });
        }
        if !self.d_separated_idx(&[z], &[x], &[y], Some(z)) {
            report.violations.push(Violation {
                clause: "(ii)",
                detail: format!(
                    "a back-door path from `{mediator}` to `{effect}` is not blocked by `{target}`"
                ),
            });
        }
        if !self.d_separated_idx(&[y], &[z], &[], Some(y)) {
            report.violations.push(Violation {
                clause: "(iii)",
                detail: format!("an unblocked back-door path connects `{target}` and `{mediator}`"),
            });
        }
        Ok(report)
    }
}

/// Variable roles declared alongside a graph.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Roles {
    pub target: Option<String>,
    pub effect: Option<String>,
    pub adjust: Vec<String>,
    pub mediator: Option<String>,
}

/// A parsed graph-spec file: the DAG plus its roles.
#[derive(Debug, Clone)]
pub struct GraphSpec {
    pub graph: CausalGraph,
    pub roles: Roles,
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}, column {column}: {message}")]
pub struct GraphSpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

/// Parses the line-oriented graph-spec format:
///
/// ```text
/// # comment
/// var <name> discrete <k>
/// var <name> continuous <d>
/// latent <name>
/// edge <a> -> <b>
/// role target <name> | role effect <name> | role adjust <a,b,...> | role mediator <name>
/// ```
pub fn parse_graph_spec(text: &str) -> Result<GraphSpec, GraphSpecError> {
    let err = |line: usize, column: usize, message: String| GraphSpecError {
        line,
        column,
        message,
    };

    let mut vertices: Vec<VariableMeta> = Vec::new();
    let mut declared: HashMap<String, (usize, usize)> = HashMap::new();
    let mut edges: Vec<(String, String, usize, usize)> = Vec::new();
    // Every name referenced by an edge or role, checked once all declarations are in.
    let mut role_refs: Vec<(String, usize, usize)> = Vec::new();
    let mut roles = Roles::default();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokenize(content);
        let Some(head) = toks.first() else { continue };
        let end_col = content.trim_end().len() + 1;
        let arg = |k: usize, what: &str| -> Result<&Token, GraphSpecError> {
            toks.get(k)
                .ok_or_else(|| err(lineno, end_col, format!("expected {what}")))
        };
        let ident = |k: usize| -> Result<&Token, GraphSpecError> {
            let t = arg(k, "a variable name")?;
            if valid_ident(t.text) {
                Ok(t)
            } else {
                Err(err(
                    lineno,
                    t.column,
                    format!("invalid variable name `{}`", t.text),
                ))
            }
        };
        let no_trailing = |k: usize| -> Result<(), GraphSpecError> {
            match toks.get(k) {
                Some(t) => Err(err(lineno, t.column, format!("unexpected `{}`", t.text))),
                None => Ok(()),
            }
        };

        match head.text {
            "var" => {
                let name = ident(1)?;
                let kind_tok = arg(2, "`discrete` or `continuous`")?;
                let size_tok = arg(3, "a size")?;
                let size: usize = size_tok.text.parse().map_err(|_| {
                    err(
                        lineno,
                        size_tok.column,
                        format!("invalid size `{}`", size_tok.text),
                    )
                })?;
                let kind = match kind_tok.text {
                    "discrete" if size >= 2 => VarKind::Discrete { cardinality: size },
                    "discrete" => {
                        return Err(err(
                            lineno,
                            size_tok.column,
                            "discrete cardinality must be at least 2".into(),
                        ))
                    }
                    "continuous" if size >= 1 => VarKind::Continuous { dimension: size },
                    "continuous" => {
                        return Err(err(
                            lineno,
                            size_tok.column,
                            "continuous dimension must be at least 1".into(),
                        ))
                    }
                    other => {
                        return Err(err(
                            lineno,
                            kind_tok.column,
                            format!("expected `discrete` or `continuous`, found `{other}`"),
                        ))
                    }
                };
                no_trailing(4)?;
                match declared.get(name.text) {
                    Some(&(i, _)) if vertices[i].latent && vertices[i].kind.is_none() => {
                        vertices[i].kind = Some(kind);
                    }
                    Some(&(_, first)) => {
                        return Err(err(
                            lineno,
                            name.column,
                            format!("variable `{}` already declared on line {first}", name.text),
                        ))
                    }
                    None => {
                        declared.insert(name.text.to_string(), (vertices.len(), lineno));
                        vertices.push(VariableMeta::observed(name.text, kind));
                    }
                }
            }
            "latent" => {
                let name = ident(1)?;
                no_trailing(2)?;
                match declared.get(name.text) {
                    Some(&(i, _)) => vertices[i].latent = true,
                    None => {
                        declared.insert(name.text.to_string(), (vertices.len(), lineno));
                        vertices.push(VariableMeta::latent(name.text));
                    }
                }
            }
            "edge" => {
                let from = ident(1)?;
                let arrow = arg(2, "`->`")?;
                if arrow.text != "->" {
                    return Err(err(
                        lineno,
                        arrow.column,
                        format!("expected `->`, found `{}`", arrow.text),
                    ));
                }
                let to = ident(3)?;
                no_trailing(4)?;
                edges.push((
                    from.text.to_string(),
                    to.text.to_string(),
                    lineno,
                    from.column,
                ));
                role_refs.push((from.text.to_string(), lineno, from.column));
                role_refs.push((to.text.to_string(), lineno, to.column));
            }
            "role" => {
                let which = arg(1, "a role name")?;
                match which.text {
                    "target" | "effect" | "mediator" => {
                        let name = ident(2)?;
                        no_trailing(3)?;
                        role_refs.push((name.text.to_string(), lineno, name.column));
                        let slot = match which.text {
                            "target" => &mut roles.target,
                            "effect" => &mut roles.effect,
                            _ => &mut roles.mediator,
                        };
                        *slot = Some(name.text.to_string());
                    }
                    "adjust" => {
                        ident(2)?;
                        for k in 2..toks.len() {
                            let t = ident(k)?;
                            role_refs.push((t.text.to_string(), lineno, t.column));
                            roles.adjust.push(t.text.to_string());
                        }
                    }
                    other => return Err(err(
                        lineno,
                        which.column,
                        format!(
                            "unknown role `{other}` (expected target, effect, adjust or mediator)"
                        ),
                    )),
                }
            }
            other => {
                return Err(err(
                    lineno,
                    head.column,
                    format!("unknown declaration `{other}` (expected var, latent, edge or role)"),
                ))
            }
        }
    }

    for (name, line, column) in &role_refs {
        if !declared.contains_key(name) {
            return Err(err(*line, *column, format!("undeclared variable `{name}`")));
        }
    }
    let edge_pairs: Vec<(String, String)> = edges
        .iter()
        .map(|(a, b, _, _)| (a.clone(), b.clone()))
        .collect();
    let graph = CausalGraph::new(vertices, &edge_pairs).map_err(|e| {
        let located = match &e {
            GraphError::Cycle(v) => edges.iter().find(|(a, b, _, _)| a == v || b == v),
            _ => None,
        };
        let (line, column) = located.map(|(_, _, l, c)| (*l, *c)).unwrap_or((1, 1));
        err(line, column, e.to_string())
    })?;
    Ok(GraphSpec { graph, roles })
}
