//! Multi-regime probability models: one joint table per regime assignment
//! of the intervention indicators.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::table::{for_each_point, project};
use crate::{DistributionTable, Error, Result, VarSet, Verdict, NULL_EVENT};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableDecl {
    pub name: String,
    pub domain: Vec<String>,
}

impl VariableDecl {
    pub fn new(name: &str, domain: &[&str]) -> Self {
        VariableDecl {
            name: name.to_string(),
            domain: domain.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// A variable whose labels are `"0"`, `"1"`, ... .
    pub fn numeric(name: &str, card: usize) -> Self {
        VariableDecl {
            name: name.to_string(),
            domain: (0..card).map(|v| v.to_string()).collect(),
        }
    }

    pub fn card(&self) -> usize {
        self.domain.len()
    }

    pub fn value_index(&self, label: &str) -> Option<usize> {
        self.domain.iter().position(|d| d == label)
    }
}

/// State of one intervention indicator. `Set` holds an index into the
/// target's domain. `Idle` sorts before every `Set`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IndicatorState {
    Idle,
    Set(usize),
}

impl IndicatorState {
    pub fn is_idle(self) -> bool {
        matches!(self, IndicatorState::Idle)
    }

    /// `Idle` followed by `Set(0..card)`.
    pub fn all(card: usize) -> Vec<IndicatorState> {
        core::iter::once(IndicatorState::Idle)
            .chain((0..card).map(IndicatorState::Set))
            .collect()
    }

    pub fn non_idle(card: usize) -> Vec<IndicatorState> {
        (0..card).map(IndicatorState::Set).collect()
    }
}

/// Indicator states listed in the model's target order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RegimeAssignment(pub Vec<IndicatorState>);

impl RegimeAssignment {
    pub fn idle(targets: usize) -> Self {
        RegimeAssignment(vec![IndicatorState::Idle; targets])
    }

    pub fn is_all_idle(&self) -> bool {
        self.0.iter().all(|s| s.is_idle())
    }

    pub fn with(&self, pos: usize, state: IndicatorState) -> Self {
        let mut out = self.clone();
        out.0[pos] = state;
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub assignment: RegimeAssignment,
    pub probs: Vec<f64>,
}

/// A family of joint distributions over one fixed variable list, indexed by
/// regime assignments. Immutable once built; all queries are pure.
///
/// Serializes as the model file layout: `variables` (name and domain),
/// `targets` by name, and `regimes` whose `assignment` maps each target to a
/// value label or `null` for idle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ModelFile", try_from = "ModelFile")]
pub struct MultiRegimeModel {
    variables: Vec<VariableDecl>,
    /// Variable indices of the targets, in declaration order.
    targets: Vec<usize>,
    regimes: Vec<Regime>,
    index: BTreeMap<RegimeAssignment, usize>,
}

impl MultiRegimeModel {
    /// Creates a model with no regimes. Targets are resolved by name and
    /// put in declaration order.
    pub fn new(variables: Vec<VariableDecl>, targets: &[&str]) -> Result<Self> {
        let mut idx = Vec::with_capacity(targets.len());
        for &t in targets {
            let v = variables
                .iter()
                .position(|d| d.name == t)
                .ok_or_else(|| Error::UnknownVariable(t.to_string()))?;
            if idx.contains(&v) {
                return Err(Error::InvalidShape(format!("target `{t}` listed twice")));
            }
            idx.push(v);
        }
        if variables.len() > 64 {
            return Err(Error::InvalidShape("more than 64 variables".into()));
        }
        idx.sort_unstable();
        Ok(MultiRegimeModel {
            variables,
            targets: idx,
            regimes: Vec::new(),
            index: BTreeMap::new(),
        })
    }

    /// Appends a regime without checking it; see [`validate_model`].
    pub fn push_regime(&mut self, assignment: RegimeAssignment, probs: Vec<f64>) {
        let pos = self.regimes.len();
        self.index.entry(assignment.clone()).or_insert(pos);
        self.regimes.push(Regime { assignment, probs });
    }

    pub fn with_regime(mut self, assignment: RegimeAssignment, probs: Vec<f64>) -> Self {
        self.push_regime(assignment, probs);
        self
    }

    /// Keeps only the regimes accepted by `keep`.
    pub fn retain_regimes(&self, mut keep: impl FnMut(&RegimeAssignment) -> bool) -> Self {
        let mut out = MultiRegimeModel {
            variables: self.variables.clone(),
            targets: self.targets.clone(),
            regimes: Vec::new(),
            index: BTreeMap::new(),
        };
        for r in &self.regimes {
            if keep(&r.assignment) {
                out.push_regime(r.assignment.clone(), r.probs.clone());
            }
        }
        out
    }

    pub fn variables(&self) -> &[VariableDecl] {
        &self.variables
    }

    pub fn variable(&self, v: usize) -> &VariableDecl {
        &self.variables[v]
    }

    pub fn var_name(&self, v: usize) -> &str {
        &self.variables[v].name
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn cards(&self) -> Vec<usize> {
        self.variables.iter().map(VariableDecl::card).collect()
    }

    pub fn joint_size(&self) -> usize {
        self.variables.iter().map(VariableDecl::card).product()
    }

    pub fn all_vars(&self) -> VarSet {
        VarSet::first(self.variables.len())
    }

    /// Variable indices of the targets, in declaration order.
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn target_set(&self) -> VarSet {
        VarSet::from_indices(self.targets.iter().copied())
    }

    /// Position of variable `v` in the target list.
    pub fn target_position(&self, v: usize) -> Option<usize> {
        self.targets.iter().position(|&t| t == v)
    }

    pub fn regimes(&self) -> &[Regime] {
        &self.regimes
    }

    pub fn regime(&self, assignment: &RegimeAssignment) -> Option<&Regime> {
        self.index.get(assignment).map(|&i| &self.regimes[i])
    }

    pub fn has_regime(&self, assignment: &RegimeAssignment) -> bool {
        self.index.contains_key(assignment)
    }

    pub fn idle_assignment(&self) -> RegimeAssignment {
        RegimeAssignment::idle(self.targets.len())
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|d| d.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VarSet> {
        names
            .iter()
            .map(|n| self.var_index(n.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(VarSet::from_indices)
    }

    /// Target position (index into the assignment vector) of a target name.
    pub fn target_index(&self, name: &str) -> Result<usize> {
        let v = self.var_index(name)?;
        self.target_position(v)
            .ok_or_else(|| Error::NotATarget(name.to_string()))
    }

    pub fn value_index(&self, v: usize, label: &str) -> Result<usize> {
        self.variables[v].value_index(label).ok_or_else(|| Error::UnknownValue {
            variable: self.variables[v].name.clone(),
            value: label.to_string(),
        })
    }

    /// Builds an assignment from `(target, Some(value) | None)` pairs.
    /// Targets not mentioned are idle.
    pub fn assignment(&self, states: &[(&str, Option<&str>)]) -> Result<RegimeAssignment> {
        let mut out = self.idle_assignment();
        for &(name, value) in states {
            let pos = self.target_index(name)?;
            out.0[pos] = match value {
                None => IndicatorState::Idle,
                Some(label) => IndicatorState::Set(self.value_index(self.targets[pos], label)?),
            };
        }
        Ok(out)
    }

    /// Every assignment of the full Cartesian product, in canonical order.
    pub fn full_product(&self) -> Vec<RegimeAssignment> {
        let cards: Vec<usize> = self.targets.iter().map(|&t| self.variables[t].card()).collect();
        full_product(&cards)
    }

    pub fn describe_regime(&self, assignment: &RegimeAssignment) -> String {
        if assignment.0.is_empty() {
            return "(no targets)".into();
        }
        let parts: Vec<String> = assignment
            .0
            .iter()
            .zip(&self.targets)
            .map(|(s, &t)| {
                let name = &self.variables[t].name;
                match s {
                    IndicatorState::Idle => format!("F({name})=idle"),
                    IndicatorState::Set(v) => match self.variables[t].domain.get(*v) {
                        Some(label) => format!("F({name})={label}"),
                        None => format!("F({name})=#{v}"),
                    },
                }
            })
            .collect();
        parts.join(", ")
    }

    pub fn describe_values(&self, given: &[(usize, usize)]) -> String {
        let parts: Vec<String> = given
            .iter()
            .map(|&(v, x)| {
                let d = &self.variables[v];
                format!("{}={}", d.name, d.domain.get(x).map(String::as_str).unwrap_or("?"))
            })
            .collect();
        parts.join(", ")
    }

    pub(crate) fn joint(&self, assignment: &RegimeAssignment) -> Result<&[f64]> {
        let regime = self
            .regime(assignment)
            .ok_or_else(|| Error::RegimeAbsent(self.describe_regime(assignment)))?;
        let expected = self.joint_size();
        if regime.probs.len() != expected {
            return Err(Error::TableShape {
                expected,
                found: regime.probs.len(),
            });
        }
        Ok(&regime.probs)
    }

    pub(crate) fn project(&self, assignment: &RegimeAssignment, keep: VarSet) -> Result<DistributionTable> {
        let joint = self.joint(assignment)?;
        Ok(project(joint, &self.cards(), keep))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct RegimeFile {
    assignment: BTreeMap<String, Option<String>>,
    probs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct ModelFile {
    variables: Vec<VariableDecl>,
    targets: Vec<String>,
    regimes: Vec<RegimeFile>,
}

impl From<MultiRegimeModel> for ModelFile {
    fn from(m: MultiRegimeModel) -> Self {
        let regimes = m
            .regimes
            .iter()
            .map(|r| RegimeFile {
                assignment: m
                    .targets
                    .iter()
                    .zip(&r.assignment.0)
                    .map(|(&t, s)| {
                        let label = match s {
                            IndicatorState::Idle => None,
                            IndicatorState::Set(x) => Some(m.variables[t].domain[*x].clone()),
                        };
                        (m.variables[t].name.clone(), label)
                    })
                    .collect(),
                probs: r.probs.clone(),
            })
            .collect();
        ModelFile {
            targets: m.targets.iter().map(|&t| m.variables[t].name.clone()).collect(),
            variables: m.variables,
            regimes,
        }
    }
}

impl TryFrom<ModelFile> for MultiRegimeModel {
    type Error = Error;

    fn try_from(f: ModelFile) -> Result<Self> {
        let targets: Vec<&str> = f.targets.iter().map(String::as_str).collect();
        let mut m = MultiRegimeModel::new(f.variables.clone(), &targets)?;
        for r in f.regimes {
            for name in r.assignment.keys() {
                if m.target_index(name).is_err() {
                    return Err(Error::NotATarget(name.clone()));
                }
            }
            let states: Vec<(&str, Option<&str>)> = m
                .targets
                .iter()
                .map(|&t| {
                    let name = m.variables[t].name.as_str();
                    (name, r.assignment.get(name).and_then(|v| v.as_deref()))
                })
                .collect();
            let a = m.assignment(&states)?;
            m.push_regime(a, r.probs);
        }
        Ok(m)
    }
}

/// Canonical enumeration of `{Idle} ∪ domain` per target.
pub fn full_product(target_cards: &[usize]) -> Vec<RegimeAssignment> {
    let sizes: Vec<usize> = target_cards.iter().map(|c| c + 1).collect();
    let mut out = Vec::new();
    for_each_point(&sizes, |p| {
        out.push(RegimeAssignment(
            p.iter()
                .map(|&i| {
                    if i == 0 {
                        IndicatorState::Idle
                    } else {
                        IndicatorState::Set(i - 1)
                    }
                })
                .collect(),
        ))
    });
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiagnosticKind {
    DuplicateVariable,
    DomainTooSmall,
    DuplicateDomainValue,
    AssignmentKeys,
    AssignmentValue,
    DuplicateRegime,
    IdleRegimeAbsent,
    TableShape,
    NegativeEntry,
    Normalization,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiagnosticKind::DuplicateVariable => "duplicate variable",
            DiagnosticKind::DomainTooSmall => "domain too small",
            DiagnosticKind::DuplicateDomainValue => "duplicate domain value",
            DiagnosticKind::AssignmentKeys => "assignment keys",
            DiagnosticKind::AssignmentValue => "assignment value",
            DiagnosticKind::DuplicateRegime => "duplicate regime",
            DiagnosticKind::IdleRegimeAbsent => "idle regime absent",
            DiagnosticKind::TableShape => "table shape",
            DiagnosticKind::NegativeEntry => "negative entry",
            DiagnosticKind::Normalization => "normalization",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub location: String,
    pub message: String,
}

/// Tolerance on table sums.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Lists every violated model invariant. Empty means well formed.
pub fn validate_model(model: &MultiRegimeModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut push = |kind, location: String, message: String| {
        out.push(Diagnostic {
            kind,
            location,
            message,
        })
    };

    let mut names = BTreeSet::new();
    for v in &model.variables {
        if !names.insert(v.name.as_str()) {
            push(
                DiagnosticKind::DuplicateVariable,
                format!("variable {}", v.name),
                "variable names must be unique".into(),
            );
        }
        if v.domain.len() < 2 {
            push(
                DiagnosticKind::DomainTooSmall,
                format!("variable {}", v.name),
                format!("domain has {} value(s), need at least 2", v.domain.len()),
            );
        }
        let mut seen = BTreeSet::new();
        for d in &v.domain {
            if !seen.insert(d.as_str()) {
                push(
                    DiagnosticKind::DuplicateDomainValue,
                    format!("variable {}", v.name),
                    format!("value `{d}` appears more than once"),
                );
            }
        }
    }

    let size = model.joint_size();
    let mut seen = BTreeSet::new();
    for (i, r) in model.regimes.iter().enumerate() {
        let loc = format!("regime #{i} ({})", model.describe_regime(&r.assignment));
        if r.assignment.0.len() != model.targets.len() {
            push(
                DiagnosticKind::AssignmentKeys,
                loc.clone(),
                format!(
                    "assignment has {} entries, model has {} targets",
                    r.assignment.0.len(),
                    model.targets.len()
                ),
            );
        } else {
            for (s, &t) in r.assignment.0.iter().zip(&model.targets) {
                if let IndicatorState::Set(v) = s {
                    if *v >= model.variables[t].card() {
                        push(
                            DiagnosticKind::AssignmentValue,
                            loc.clone(),
                            format!("value #{v} outside the domain of {}", model.variables[t].name),
                        );
                    }
                }
            }
        }
        if !seen.insert(&r.assignment) {
            push(
                DiagnosticKind::DuplicateRegime,
                loc.clone(),
                "regime assignment appears more than once".into(),
            );
        }
        if r.probs.len() != size {
            push(
                DiagnosticKind::TableShape,
                loc.clone(),
                format!("table has {} entries, expected {size}", r.probs.len()),
            );
            continue;
        }
        if let Some(j) = r.probs.iter().position(|&p| p < 0.0 || p.is_nan()) {
            push(
                DiagnosticKind::NegativeEntry,
                loc.clone(),
                format!("entry {j} is {}", r.probs[j]),
            );
        }
        let total: f64 = r.probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            push(DiagnosticKind::Normalization, loc, format!("entries sum to {total}"));
        }
    }
    if !model.has_regime(&model.idle_assignment()) {
        push(
            DiagnosticKind::IdleRegimeAbsent,
            "regimes".into(),
            "the all-idle regime is missing".into(),
        );
    }
    out
}

/// Exact marginal of `vars` under one regime.
pub fn marginal<S: AsRef<str>>(
    model: &MultiRegimeModel,
    regime: &RegimeAssignment,
    vars: &[S],
) -> Result<DistributionTable> {
    let keep = model.var_set(vars)?;
    marginal_set(model, regime, keep)
}

pub fn marginal_set(model: &MultiRegimeModel, regime: &RegimeAssignment, keep: VarSet) -> Result<DistributionTable> {
    let mut t = model.project(regime, keep)?;
    let total = t.total();
    if total > 0.0 {
        t.probs.iter_mut().for_each(|p| *p /= total);
    }
    Ok(t)
}

/// Conditional distribution of `target` given a partial assignment, or
/// `None` when the conditioning event is null.
pub fn conditional<S: AsRef<str>>(
    model: &MultiRegimeModel,
    regime: &RegimeAssignment,
    target: &[S],
    given: &[(&str, &str)],
) -> Result<Option<DistributionTable>> {
    let target = model.var_set(target)?;
    let mut pairs = Vec::with_capacity(given.len());
    for &(name, label) in given {
        let v = model.var_index(name)?;
        pairs.push((v, model.value_index(v, label)?));
    }
    conditional_set(model, regime, target, &pairs)
}

pub fn conditional_set(
    model: &MultiRegimeModel,
    regime: &RegimeAssignment,
    target: VarSet,
    given: &[(usize, usize)],
) -> Result<Option<DistributionTable>> {
    let given_set = VarSet::from_indices(given.iter().map(|&(v, _)| v));
    if given_set.len() != given.len() {
        return Err(Error::NotDisjoint("a variable is conditioned twice".into()));
    }
    if !target.is_disjoint(given_set) {
        return Err(Error::NotDisjoint(
            "target variables overlap the conditioning assignment".into(),
        ));
    }
    for &(v, x) in given {
        if x >= model.variable(v).card() {
            return Err(Error::UnknownValue {
                variable: model.var_name(v).to_string(),
                value: format!("#{x}"),
            });
        }
    }
    let table = model.project(regime, target.union(given_set))?;
    let tvars = target.to_vec();
    let cards: Vec<usize> = tvars.iter().map(|&v| model.variable(v).card()).collect();
    let size: usize = cards.iter().product();
    let mut probs = vec![0.0; size];
    let positions: Vec<(usize, usize)> = given
        .iter()
        .map(|&(v, x)| (table.vars.iter().position(|&u| u == v).unwrap(), x))
        .collect();
    let tpos: Vec<usize> = tvars
        .iter()
        .map(|&v| table.vars.iter().position(|&u| u == v).unwrap())
        .collect();
    let mut row = 0usize;
    for_each_point(&table.cards.clone(), |point| {
        if positions.iter().all(|&(p, x)| point[p] == x) {
            let idx = tpos.iter().zip(&cards).fold(0, |acc, (&p, &c)| acc * c + point[p]);
            probs[idx] += table.probs[row];
        }
        row += 1;
    });
    let mass: f64 = probs.iter().sum();
    if mass <= NULL_EVENT {
        return Ok(None);
    }
    probs.iter_mut().for_each(|p| *p /= mass);
    Ok(Some(DistributionTable {
        vars: tvars,
        cards,
        probs,
    }))
}

/// Within-regime conditional independence `X ⊥⊥ Y | Z`.
pub fn check_ci<S: AsRef<str>>(
    model: &MultiRegimeModel,
    regime: &RegimeAssignment,
    x: &[S],
    y: &[S],
    z: &[S],
    tol: f64,
) -> Result<Verdict> {
    let (x, y, z) = (model.var_set(x)?, model.var_set(y)?, model.var_set(z)?);
    check_ci_sets(model, regime, x, y, z, tol)
}

pub fn check_ci_sets(
    model: &MultiRegimeModel,
    regime: &RegimeAssignment,
    x: VarSet,
    y: VarSet,
    z: VarSet,
    tol: f64,
) -> Result<Verdict> {
    if !x.is_disjoint(y) || !x.is_disjoint(z) || !y.is_disjoint(z) {
        return Err(Error::NotDisjoint("check_ci needs disjoint X, Y, Z".into()));
    }
    if !model.has_regime(regime) {
        return Err(Error::RegimeAbsent(model.describe_regime(regime)));
    }
    crate::eci::engine::within_regime_ci(model, regime, x, y, z, tol)
}

/// True iff the regime set is the full product of `{Idle} ∪ domain` over
/// the targets.
pub fn is_variation_independent(model: &MultiRegimeModel) -> bool {
    let present: BTreeSet<&RegimeAssignment> = model.regimes.iter().map(|r| &r.assignment).collect();
    let product = model.full_product();
    present.len() == product.len() && product.iter().all(|a| present.contains(a))
}
