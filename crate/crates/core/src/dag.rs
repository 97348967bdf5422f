//! Augmented DAGs: stochastic nodes plus one founder indicator node `F(T)`
//! per target, with a declared topological order over the stochastic nodes.
//!
//! A DAG in *received form* has exactly the edge `F(T) → T` per indicator,
//! and an edge `T → C` means `C` reads the received value of `T`. Models
//! built by [`expand_itt`] emit intentions, so for numerical work use
//! [`AugmentedDag::itt_projection`], where `F(T)` points at every child of
//! `T` instead.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::consistency::Structure;
use crate::eci::{evaluate, IndicatorMode, Statement, Term};
use crate::rng::Rng;
use crate::structural::{generate_structural_model, random_tables, StructuralSpec};
use crate::{Error, MultiRegimeModel, Result, VarSet, VariableDecl, Verdict};

pub fn indicator_name(target: &str) -> String {
    format!("F({target})")
}

/// The target of an indicator node name such as `F(T)`.
pub fn indicator_target(node: &str) -> Option<&str> {
    node.strip_prefix("F(")?.strip_suffix(')')
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentedDag {
    /// Stochastic nodes.
    pub nodes: Vec<String>,
    pub targets: Vec<String>,
    /// Directed edges; indicator endpoints are written `F(T)`.
    pub edges: Vec<(String, String)>,
    /// Topological order over the stochastic nodes.
    pub order: Vec<String>,
}

impl AugmentedDag {
    /// A received-form DAG: the stochastic edges plus `F(T) → T` for every
    /// target.
    pub fn from_structure<S: AsRef<str>>(nodes: &[S], targets: &[S], edges: &[(S, S)], order: &[S]) -> Self {
        let s = |x: &S| x.as_ref().to_string();
        let mut all_edges: Vec<(String, String)> = targets.iter().map(|t| (indicator_name(t.as_ref()), s(t))).collect();
        all_edges.extend(edges.iter().map(|(a, b)| (s(a), s(b))));
        AugmentedDag {
            nodes: nodes.iter().map(s).collect(),
            targets: targets.iter().map(s).collect(),
            edges: all_edges,
            order: order.iter().map(s).collect(),
        }
    }

    /// Stochastic nodes followed by the indicators, in target order.
    pub fn all_nodes(&self) -> Vec<String> {
        let mut out = self.nodes.clone();
        out.extend(self.targets.iter().map(|t| indicator_name(t)));
        out
    }

    pub fn is_indicator(&self, node: &str) -> bool {
        indicator_target(node).is_some_and(|t| self.targets.iter().any(|x| x == t))
    }

    pub fn parents(&self, node: &str) -> Vec<&str> {
        self.edges
            .iter()
            .filter(|(_, b)| b == node)
            .map(|(a, _)| a.as_str())
            .collect()
    }

    pub fn children(&self, node: &str) -> Vec<&str> {
        self.edges
            .iter()
            .filter(|(a, _)| a == node)
            .map(|(_, b)| b.as_str())
            .collect()
    }

    /// Parents among the stochastic nodes.
    pub fn stochastic_parents(&self, node: &str) -> Vec<&str> {
        self.parents(node)
            .into_iter()
            .filter(|p| !self.is_indicator(p))
            .collect()
    }

    /// Redirects each `F(T) → T` to every stochastic child of `T`.
    pub fn itt_projection(&self) -> AugmentedDag {
        let mut edges: Vec<(String, String)> = self
            .edges
            .iter()
            .filter(|(a, b)| indicator_target(a) != Some(b.as_str()) || !self.is_indicator(a))
            .cloned()
            .collect();
        for t in &self.targets {
            for c in self.children(t) {
                let e = (indicator_name(t), c.to_string());
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
        AugmentedDag { edges, ..self.clone() }
    }

    /// Order and stochastic parent sets as a [`Structure`] over `model`.
    pub fn structure(&self, model: &MultiRegimeModel) -> Result<Structure> {
        check_names(model, self)?;
        if self.nodes.len() != model.num_vars() {
            return Err(Error::NameMismatch(
                "the DAG does not cover every model variable".into(),
            ));
        }
        let order = self
            .order
            .iter()
            .map(|n| model.var_index(n))
            .collect::<Result<Vec<_>>>()?;
        let mut parents = vec![VarSet::EMPTY; model.num_vars()];
        for n in &self.nodes {
            let v = model.var_index(n)?;
            for p in self.stochastic_parents(n) {
                parents[v] = parents[v].with(model.var_index(p)?);
            }
        }
        let s = Structure { order, parents };
        s.check(model)?;
        Ok(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DagDiagnosticKind {
    DuplicateNode,
    UnknownNode,
    DuplicateEdge,
    SelfLoop,
    Cycle,
    IndicatorInDegree,
    IndicatorOutDegree,
    IndicatorEdge,
    Order,
}

impl fmt::Display for DagDiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DagDiagnosticKind::DuplicateNode => "duplicate node",
            DagDiagnosticKind::UnknownNode => "unknown node",
            DagDiagnosticKind::DuplicateEdge => "duplicate edge",
            DagDiagnosticKind::SelfLoop => "self loop",
            DagDiagnosticKind::Cycle => "cycle",
            DagDiagnosticKind::IndicatorInDegree => "indicator in-degree",
            DagDiagnosticKind::IndicatorOutDegree => "indicator out-degree",
            DagDiagnosticKind::IndicatorEdge => "indicator edge",
            DagDiagnosticKind::Order => "order",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DagDiagnostic {
    pub kind: DagDiagnosticKind,
    pub message: String,
}

/// Lists every violated invariant of a received-form DAG.
pub fn validate_dag(dag: &AugmentedDag) -> Vec<DagDiagnostic> {
    let mut out = Vec::new();
    let mut push = |kind, message: String| out.push(DagDiagnostic { kind, message });

    let mut seen = BTreeSet::new();
    for n in &dag.nodes {
        if !seen.insert(n.as_str()) {
            push(DagDiagnosticKind::DuplicateNode, format!("node `{n}` listed twice"));
        }
    }
    let mut tseen = BTreeSet::new();
    for t in &dag.targets {
        if !seen.contains(t.as_str()) {
            push(DagDiagnosticKind::UnknownNode, format!("target `{t}` is not a node"));
        }
        if !tseen.insert(t.as_str()) {
            push(DagDiagnosticKind::DuplicateNode, format!("target `{t}` listed twice"));
        }
    }
    let known = |n: &str| seen.contains(n) || dag.is_indicator(n);
    let mut eseen = BTreeSet::new();
    for (a, b) in &dag.edges {
        for end in [a, b] {
            if !known(end) {
                push(
                    DagDiagnosticKind::UnknownNode,
                    format!("edge endpoint `{end}` is not a node"),
                );
            }
        }
        if a == b {
            push(DagDiagnosticKind::SelfLoop, format!("edge {a} -> {b}"));
        }
        if !eseen.insert((a, b)) {
            push(
                DagDiagnosticKind::DuplicateEdge,
                format!("edge {a} -> {b} listed twice"),
            );
        }
    }
    for t in &dag.targets {
        let f = indicator_name(t);
        let ins = dag.parents(&f).len();
        if ins > 0 {
            push(DagDiagnosticKind::IndicatorInDegree, format!("{f} has {ins} parent(s)"));
        }
        let outs = dag.children(&f);
        if outs.len() != 1 {
            push(
                DagDiagnosticKind::IndicatorOutDegree,
                format!("{f} has {} children, expected exactly one", outs.len()),
            );
        }
        for c in outs {
            if c != t {
                push(
                    DagDiagnosticKind::IndicatorEdge,
                    format!("{f} points at `{c}` instead of `{t}`"),
                );
            }
        }
    }

    // Kahn's algorithm over every endpoint
    let all = dag.all_nodes();
    let mut nodes: BTreeSet<&str> = all.iter().map(String::as_str).collect();
    for (a, b) in &dag.edges {
        nodes.insert(a);
        nodes.insert(b);
    }
    let mut indeg: BTreeMap<&str, usize> = nodes.iter().map(|&n| (n, 0)).collect();
    for (a, b) in eseen.iter() {
        if a != b {
            *indeg.get_mut(b.as_str()).unwrap() += 1;
        }
    }
    let mut queue: VecDeque<&str> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&n, _)| n).collect();
    let mut done = 0;
    while let Some(n) = queue.pop_front() {
        done += 1;
        for (a, b) in eseen.iter() {
            if a.as_str() == n && a != b {
                let d = indeg.get_mut(b.as_str()).unwrap();
                *d -= 1;
                if *d == 0 {
                    queue.push_back(b);
                }
            }
        }
    }
    if done < nodes.len() || eseen.iter().any(|(a, b)| a == b) {
        push(DagDiagnosticKind::Cycle, "the graph has a directed cycle".into());
    }

    let mut oseen = BTreeSet::new();
    let perm = dag.order.len() == dag.nodes.len()
        && dag
            .order
            .iter()
            .all(|n| seen.contains(n.as_str()) && oseen.insert(n.as_str()));
    if !perm {
        push(
            DagDiagnosticKind::Order,
            "order must list every stochastic node exactly once".into(),
        );
    } else {
        let rank = |n: &str| dag.order.iter().position(|m| m == n);
        for (a, b) in &dag.edges {
            if let (Some(ra), Some(rb)) = (rank(a), rank(b)) {
                if ra >= rb {
                    push(
                        DagDiagnosticKind::Order,
                        format!("edge {a} -> {b} runs against the order"),
                    );
                }
            }
        }
    }
    out
}

fn node_index(names: &[String], n: &str) -> Result<usize> {
    names
        .iter()
        .position(|m| m == n)
        .ok_or_else(|| Error::UnknownNode(n.to_string()))
}

/// d-separation of `x` and `y` given `z` by reachability: a trail is active
/// when every collider on it is in `z` or has a descendant in `z`, and no
/// other node on it is in `z`.
pub fn d_separated<S: AsRef<str>>(dag: &AugmentedDag, x: &[S], y: &[S], z: &[S]) -> Result<bool> {
    let names = dag.all_nodes();
    let idx = |list: &[S]| -> Result<Vec<usize>> { list.iter().map(|n| node_index(&names, n.as_ref())).collect() };
    let (xs, ys, zs) = (idx(x)?, idx(y)?, idx(z)?);
    let n = names.len();
    let mut mark = vec![0u8; n];
    for (set, bit) in [(&xs, 1u8), (&ys, 2), (&zs, 4)] {
        for &i in set {
            if mark[i] != 0 {
                return Err(Error::NotDisjoint(format!("`{}` appears in two sets", names[i])));
            }
            mark[i] = bit;
        }
    }
    let mut parents = vec![Vec::new(); n];
    let mut children = vec![Vec::new(); n];
    for (a, b) in &dag.edges {
        let (ia, ib) = (node_index(&names, a)?, node_index(&names, b)?);
        parents[ib].push(ia);
        children[ia].push(ib);
    }
    Ok(!reaches(&parents, &children, &xs, &zs, |i| mark[i] == 2))
}

/// Whether an active trail leads from `xs` to a node accepted by `hit`.
fn reaches(
    parents: &[Vec<usize>],
    children: &[Vec<usize>],
    xs: &[usize],
    zs: &[usize],
    hit: impl Fn(usize) -> bool,
) -> bool {
    let n = parents.len();
    let in_z: Vec<bool> = (0..n).map(|i| zs.contains(&i)).collect();
    // nodes that are in z or have a descendant in z
    let mut anc = in_z.clone();
    let mut stack: Vec<usize> = zs.to_vec();
    while let Some(v) = stack.pop() {
        for &p in &parents[v] {
            if !anc[p] {
                anc[p] = true;
                stack.push(p);
            }
        }
    }
    // (node, arrived from a child = going up)
    let mut visited = vec![[false; 2]; n];
    let mut queue: VecDeque<(usize, bool)> = xs.iter().map(|&x| (x, true)).collect();
    while let Some((v, up)) = queue.pop_front() {
        if visited[v][up as usize] {
            continue;
        }
        visited[v][up as usize] = true;
        if !in_z[v] && hit(v) {
            return true;
        }
        if up {
            if !in_z[v] {
                queue.extend(parents[v].iter().map(|&p| (p, true)));
                queue.extend(children[v].iter().map(|&c| (c, false)));
            }
        } else {
            if !in_z[v] {
                queue.extend(children[v].iter().map(|&c| (c, false)));
            }
            if anc[v] {
                queue.extend(parents[v].iter().map(|&p| (p, true)));
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub x: String,
    pub y: String,
    pub z: Vec<String>,
}

/// Every d-separated `(x, y | z)` with singleton `x`, `y` (listed once, `x`
/// first in node order) and `|z| ≤ max_conditioning`.
pub fn implied_independencies(dag: &AugmentedDag, max_conditioning: usize) -> Vec<Triple> {
    let names = dag.all_nodes();
    let n = names.len();
    let mut parents = vec![Vec::new(); n];
    let mut children = vec![Vec::new(); n];
    for (a, b) in &dag.edges {
        if let (Ok(ia), Ok(ib)) = (node_index(&names, a), node_index(&names, b)) {
            parents[ib].push(ia);
            children[ia].push(ib);
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let others = VarSet::first(n).without(i).without(j);
            let mut zs: Vec<VarSet> = others.subsets().filter(|s| s.len() <= max_conditioning).collect();
            zs.sort_by_key(|s| (s.len(), s.to_vec()));
            for z in zs {
                let zv = z.to_vec();
                if !reaches(&parents, &children, &[i], &zv, |v| v == j) {
                    out.push(Triple {
                        x: names[i].clone(),
                        y: names[j].clone(),
                        z: zv.iter().map(|&v| names[v].clone()).collect(),
                    });
                }
            }
        }
    }
    out
}

/// The statement a triple asserts about a model with the DAG's targets:
/// indicators outside the triple are conditioned on in full. Triples
/// between two indicators say nothing about the model and give `None`.
pub fn triple_statement(dag: &AugmentedDag, t: &Triple) -> Option<Statement> {
    let (left, right) = match (dag.is_indicator(&t.x), dag.is_indicator(&t.y)) {
        (true, true) => return None,
        (true, false) => (&t.y, &t.x),
        _ => (&t.x, &t.y),
    };
    let mut s = Statement::new(&[left.as_str()]);
    let mut group_target = None;
    if let Some(target) = indicator_target(right).filter(|_| dag.is_indicator(right)) {
        s = s.against(target, false);
        group_target = Some(target);
    } else {
        s = s.against_var(right);
    }
    // stochastic conditioning in node order, then every other indicator
    for n in &dag.nodes {
        if t.z.contains(n) {
            s = s.given_var(n);
        }
    }
    for target in &dag.targets {
        if group_target != Some(target.as_str()) {
            s = s.given_indicator(target, IndicatorMode::Full);
        }
    }
    Some(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalMarkovKind {
    /// `Z_k ⊥⊥ F̌_k | F̌_{1:k-1}` for the last target.
    LastTarget,
    /// `Z_r ⊥⊥ F̌_r | F̌_{1:r-1}, F̌_{r+1:k}` for an earlier target.
    EarlierTarget,
    /// `W_i ⊥⊥ F̌_{pre∖pa} | W_pre, F̌_pa, F̌_{A∖pre}` for a non-target node.
    Node,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalMarkov {
    pub kind: LocalMarkovKind,
    /// The target `A_r` or the node `W_i`.
    pub subject: String,
    pub statement: Statement,
}

/// Name-level view of the order shared by the statement builders.
struct Ordered<'a> {
    dag: &'a AugmentedDag,
    rank: BTreeMap<&'a str, usize>,
}

impl<'a> Ordered<'a> {
    fn new(dag: &'a AugmentedDag) -> Self {
        Ordered {
            dag,
            rank: dag.order.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect(),
        }
    }

    fn rank(&self, n: &str) -> usize {
        self.rank.get(n).copied().unwrap_or(usize::MAX)
    }

    /// Nodes strictly before `n`, in declaration order.
    fn pre(&self, n: &str) -> Vec<&'a str> {
        let r = self.rank(n);
        self.dag
            .nodes
            .iter()
            .map(String::as_str)
            .filter(|m| self.rank(m) < r)
            .collect()
    }

    fn targets_in_order(&self) -> Vec<&'a str> {
        let mut t: Vec<&str> = self.dag.targets.iter().map(String::as_str).collect();
        t.sort_by_key(|n| self.rank(n));
        t
    }

    /// A statement whose indicator blocks are listed in declaration order.
    fn statement(
        &self,
        left: &[&str],
        group: &[(&str, IndicatorMode)],
        given_vars: &[&str],
        given: &[(&str, IndicatorMode)],
    ) -> Statement {
        let decl = |n: &str| self.dag.nodes.iter().position(|m| m == n).unwrap_or(usize::MAX);
        let sorted = |names: &[&str]| {
            let mut v: Vec<String> = names.iter().map(|n| n.to_string()).collect();
            v.sort_by_key(|n| decl(n));
            v
        };
        let terms = |blocks: &[(&str, IndicatorMode)]| {
            let mut v: Vec<(&str, IndicatorMode)> = blocks.to_vec();
            v.sort_by_key(|(n, _)| decl(n));
            v.into_iter().map(|(n, m)| Term::indicator(n, m)).collect::<Vec<_>>()
        };
        let mut s = Statement::new(&sorted(left));
        s.group = terms(group);
        s = s.given_vars(&sorted(given_vars));
        s.given.extend(terms(given));
        s
    }
}

fn checked<'a>(names: &[&'a str]) -> Vec<(&'a str, IndicatorMode)> {
    names.iter().map(|&n| (n, IndicatorMode::Checked)).collect()
}

/// The premise statements of the ordered lemmas: one per target (last
/// target and earlier targets take different shapes) and one per non-target
/// node. A DAG without targets yields nothing.
pub fn local_markov_statements(dag: &AugmentedDag) -> Vec<LocalMarkov> {
    if dag.targets.is_empty() {
        return Vec::new();
    }
    let o = Ordered::new(dag);
    let ordered = o.targets_in_order();
    let k = ordered.len();
    let mut out = Vec::new();
    for r in 1..=k {
        let ar = ordered[r - 1];
        let mut z = o.pre(ar);
        z.push(ar);
        let mut given = checked(&ordered[..r - 1]);
        given.extend(checked(&ordered[r..]));
        out.push(LocalMarkov {
            kind: if r == k {
                LocalMarkovKind::LastTarget
            } else {
                LocalMarkovKind::EarlierTarget
            },
            subject: ar.to_string(),
            statement: o.statement(&z, &checked(&[ar]), &[], &given),
        });
    }
    for node in &dag.nodes {
        if dag.targets.contains(node) {
            continue;
        }
        let pre = o.pre(node);
        let pa = dag.stochastic_parents(node);
        let is_t = |n: &&str| dag.targets.iter().any(|t| t == n);
        let pre_not_pa: Vec<&str> = pre.iter().copied().filter(|n| is_t(n) && !pa.contains(n)).collect();
        let mut given = checked(&pa.iter().copied().filter(is_t).collect::<Vec<_>>());
        given.extend(checked(
            &ordered.iter().copied().filter(|t| !pre.contains(t)).collect::<Vec<_>>(),
        ));
        out.push(LocalMarkov {
            kind: LocalMarkovKind::Node,
            subject: node.clone(),
            statement: o.statement(&[node.as_str()], &checked(&pre_not_pa), &pre, &given),
        });
    }
    out
}

/// `W_i ⊥⊥ F_{(A∩pre)∖pa} | F_{A∩pa}` with every one of those indicators
/// non-idle, for a non-target node. `None` when the group is empty.
pub fn eq13_statement(dag: &AugmentedDag, node: &str) -> Result<Option<Statement>> {
    if !dag.nodes.iter().any(|n| n == node) {
        return Err(Error::UnknownNode(node.to_string()));
    }
    if dag.targets.iter().any(|t| t == node) {
        return Err(Error::Precondition(format!("`{node}` is a target")));
    }
    let o = Ordered::new(dag);
    let pre = o.pre(node);
    let pa = dag.stochastic_parents(node);
    let is_t = |n: &&str| dag.targets.iter().any(|t| t == n);
    let group: Vec<(&str, IndicatorMode)> = pre
        .iter()
        .copied()
        .filter(|n| is_t(n) && !pa.contains(n))
        .map(|n| (n, IndicatorMode::Checked))
        .collect();
    if group.is_empty() {
        return Ok(None);
    }
    let given: Vec<(&str, IndicatorMode)> = pa
        .iter()
        .copied()
        .filter(is_t)
        .map(|n| (n, IndicatorMode::Checked))
        .collect();
    Ok(Some(o.statement(&[node], &group, &[], &given)))
}

fn check_names(model: &MultiRegimeModel, dag: &AugmentedDag) -> Result<()> {
    for n in &dag.nodes {
        model
            .var_index(n)
            .map_err(|_| Error::NameMismatch(format!("DAG node `{n}` is not a model variable")))?;
    }
    let mut mt: Vec<&str> = model.targets().iter().map(|&t| model.var_name(t)).collect();
    let mut dt: Vec<&str> = dag.targets.iter().map(String::as_str).collect();
    mt.sort_unstable();
    dt.sort_unstable();
    if mt != dt {
        return Err(Error::NameMismatch(format!(
            "model targets {mt:?} differ from DAG targets {dt:?}"
        )));
    }
    Ok(())
}

/// Evaluates every local Markov statement of `dag` on `model`.
pub fn verify_local_markov(
    model: &MultiRegimeModel,
    dag: &AugmentedDag,
    tol: f64,
) -> Result<Vec<(LocalMarkov, Verdict)>> {
    check_names(model, dag)?;
    local_markov_statements(dag)
        .into_iter()
        .map(|lm| {
            let v = evaluate(model, &lm.statement, tol)?;
            Ok((lm, v))
        })
        .collect()
}

/// Expands a structural spec through the switch mechanism.
pub fn expand_itt(spec: &StructuralSpec) -> Result<MultiRegimeModel> {
    generate_structural_model(spec)
}

/// A received-form DAG with the spec's parent structure.
pub fn dag_from_spec(spec: &StructuralSpec) -> AugmentedDag {
    let names: Vec<&str> = spec.variables.iter().map(|v| v.name.as_str()).collect();
    let targets: Vec<&str> = spec.targets.iter().map(String::as_str).collect();
    let order: Vec<&str> = spec.order.iter().map(String::as_str).collect();
    let mut edges = Vec::new();
    for v in &spec.variables {
        if let Some(ps) = spec.parents_of(&v.name) {
            for p in ps {
                edges.push((p.name.as_str(), v.name.as_str()));
            }
        }
    }
    AugmentedDag::from_structure(&names, &targets, &edges, &order)
}

/// A spec with the DAG's stochastic structure and random positive tables.
/// `cards` gives the domain size of each stochastic node, in node order.
pub fn spec_from_dag(dag: &AugmentedDag, cards: &[usize], rng: &mut Rng) -> Result<StructuralSpec> {
    if cards.len() != dag.nodes.len() {
        return Err(Error::InvalidShape("one domain size per node is needed".into()));
    }
    let variables: Vec<VariableDecl> = dag
        .nodes
        .iter()
        .zip(cards)
        .map(|(n, &c)| VariableDecl::numeric(n, c))
        .collect();
    let parents = dag
        .nodes
        .iter()
        .map(|n| {
            dag.stochastic_parents(n)
                .into_iter()
                .map(|p| node_index(&dag.nodes, p))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = random_tables(&variables, &dag.targets, &dag.order, &parents, rng);
    spec.validate()?;
    Ok(spec)
}

/// A random received-form DAG over `V1..Vn` in declaration order.
pub fn random_dag(nodes: usize, indicators: usize, edge_probability: f64, rng: &mut Rng) -> AugmentedDag {
    let names: Vec<String> = (1..=nodes).map(|i| format!("V{i}")).collect();
    let mut edges = Vec::new();
    for j in 0..nodes {
        for i in 0..j {
            if rng.chance(edge_probability) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let targets: Vec<String> = rng
        .subset(nodes, indicators.min(nodes))
        .into_iter()
        .map(|i| names[i].clone())
        .collect();
    AugmentedDag::from_structure(&names, &targets, &edges, &names)
}
