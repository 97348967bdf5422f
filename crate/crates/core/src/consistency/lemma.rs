//! Lemma instances as premise/conclusion pairs over one model.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    check_all_targets, check_conditional_consistency, check_consistency_sets, check_dc1, check_dc2, eq2_statement,
    names, stepwise_consistency, Stepwise,
};
use crate::eci::{evaluate, IndicatorMode, Statement, Term};
use crate::model::is_variation_independent;
use crate::structural::StructuralSpec;
use crate::{Error, MultiRegimeModel, Outcome, Result, VarSet, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    #[serde(rename = "DC_DEF")]
    DcDef,
    #[serde(rename = "DC_PAIR")]
    DcPair,
    #[serde(rename = "EQ2_STRONG")]
    Eq2Strong,
    #[serde(rename = "L1_SUBSET")]
    L1Subset,
    #[serde(rename = "L2_CONDITION")]
    L2Condition,
    #[serde(rename = "L3_PROMOTE")]
    L3Promote,
    #[serde(rename = "C1_JOINT")]
    C1Joint,
    #[serde(rename = "C2_CHECKED_CONTEXT")]
    C2CheckedContext,
    #[serde(rename = "L4_COND_PROMOTE")]
    L4CondPromote,
    #[serde(rename = "L5_INDUCTION")]
    L5Induction,
    #[serde(rename = "C3_INTERLEAVE")]
    C3Interleave,
    #[serde(rename = "L6_PARENT_REDUCE")]
    L6ParentReduce,
}

impl LemmaId {
    pub const ALL: [LemmaId; 12] = [
        LemmaId::DcDef,
        LemmaId::DcPair,
        LemmaId::Eq2Strong,
        LemmaId::L1Subset,
        LemmaId::L2Condition,
        LemmaId::L3Promote,
        LemmaId::C1Joint,
        LemmaId::C2CheckedContext,
        LemmaId::L4CondPromote,
        LemmaId::L5Induction,
        LemmaId::C3Interleave,
        LemmaId::L6ParentReduce,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::DcDef => "DC_DEF",
            LemmaId::DcPair => "DC_PAIR",
            LemmaId::Eq2Strong => "EQ2_STRONG",
            LemmaId::L1Subset => "L1_SUBSET",
            LemmaId::L2Condition => "L2_CONDITION",
            LemmaId::L3Promote => "L3_PROMOTE",
            LemmaId::C1Joint => "C1_JOINT",
            LemmaId::C2CheckedContext => "C2_CHECKED_CONTEXT",
            LemmaId::L4CondPromote => "L4_COND_PROMOTE",
            LemmaId::L5Induction => "L5_INDUCTION",
            LemmaId::C3Interleave => "C3_INTERLEAVE",
            LemmaId::L6ParentReduce => "L6_PARENT_REDUCE",
        }
    }

    /// Whether the lemma is stated relative to a topological order.
    pub fn needs_structure(self) -> bool {
        matches!(
            self,
            LemmaId::L5Induction | LemmaId::C3Interleave | LemmaId::L6ParentReduce
        )
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::MalformedBinding(format!("unknown lemma `{s}`")))
    }
}

/// A topological order over the model's variables with parent sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    /// Variable indices, earliest first.
    pub order: Vec<usize>,
    /// Parent set per variable index.
    pub parents: Vec<VarSet>,
}

impl Structure {
    /// Declaration order with every predecessor a parent.
    pub fn complete(model: &MultiRegimeModel) -> Self {
        let n = model.num_vars();
        Structure {
            order: (0..n).collect(),
            parents: (0..n).map(VarSet::first).collect(),
        }
    }

    pub fn from_spec(model: &MultiRegimeModel, spec: &StructuralSpec) -> Result<Self> {
        let order = spec
            .order
            .iter()
            .map(|n| model.var_index(n))
            .collect::<Result<Vec<_>>>()?;
        let mut parents = vec![VarSet::EMPTY; model.num_vars()];
        for m in &spec.mechanisms {
            let v = model.var_index(&m.variable)?;
            for p in &m.parents {
                parents[v] = parents[v].with(model.var_index(&p.name)?);
            }
        }
        let s = Structure { order, parents };
        s.check(model)?;
        Ok(s)
    }

    pub fn check(&self, model: &MultiRegimeModel) -> Result<()> {
        let n = model.num_vars();
        let mut seen = VarSet::EMPTY;
        if self.order.len() != n || self.parents.len() != n {
            return Err(Error::MalformedBinding("structure does not cover the model".into()));
        }
        for &v in &self.order {
            if v >= n || seen.contains(v) {
                return Err(Error::MalformedBinding("order is not a permutation".into()));
            }
            if !self.parents[v].is_subset(seen) {
                return Err(Error::MalformedBinding(format!(
                    "a parent of {} comes later in the order",
                    model.var_name(v)
                )));
            }
            seen = seen.with(v);
        }
        Ok(())
    }

    fn rank(&self, v: usize) -> usize {
        self.order.iter().position(|&u| u == v).unwrap_or(usize::MAX)
    }

    /// Variables strictly before `v`.
    pub fn pre(&self, v: usize) -> VarSet {
        VarSet::from_indices(self.order[..self.rank(v)].iter().copied())
    }

    /// Targets in topological order.
    pub fn ordered_targets(&self, model: &MultiRegimeModel) -> Vec<usize> {
        self.order
            .iter()
            .copied()
            .filter(|&v| model.target_position(v).is_some())
            .collect()
    }

    /// The order prefix up to and including `v`.
    pub fn through(&self, v: usize) -> VarSet {
        self.pre(v).with(v)
    }
}

/// The free sets of a lemma instance. Unused fields stay empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaBinding {
    pub b: VarSet,
    pub d: VarSet,
    /// Targets whose indicators appear checked in the conditioning.
    pub c: VarSet,
    pub w: VarSet,
    pub y: VarSet,
    /// Induction index for the ordered lemmas, 1-based; `None` means all.
    pub r: Option<usize>,
    /// The non-target node of the per-node results.
    pub node: Option<usize>,
    pub structure: Option<Structure>,
}

impl LemmaBinding {
    /// Builds a binding from `KEY=a,b` pairs: keys `B`, `D`, `C`, `W`, `Y`
    /// take variable lists, `r` an index and `node` a variable.
    pub fn parse(model: &MultiRegimeModel, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut out = LemmaBinding::default();
        for &(key, value) in pairs {
            let list: Vec<&str> = value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let set = || model.var_set(&list);
            match key.trim() {
                "B" => out.b = set()?,
                "D" => out.d = set()?,
                "C" => out.c = set()?,
                "W" => out.w = set()?,
                "Y" => out.y = set()?,
                "r" => {
                    out.r =
                        Some(value.trim().parse().map_err(|_| {
                            Error::MalformedBinding(format!("r must be a positive integer, got `{value}`"))
                        })?)
                }
                "node" => out.node = Some(model.var_index(value.trim())?),
                other => return Err(Error::MalformedBinding(format!("unknown binding key `{other}`"))),
            }
        }
        Ok(out)
    }

    pub fn describe(&self, model: &MultiRegimeModel) -> String {
        let mut parts = Vec::new();
        for (key, set) in [
            ("B", self.b),
            ("D", self.d),
            ("C", self.c),
            ("W", self.w),
            ("Y", self.y),
        ] {
            if !set.is_empty() {
                parts.push(format!("{key}={}", names(model, set)));
            }
        }
        if let Some(r) = self.r {
            parts.push(format!("r={r}"));
        }
        if let Some(v) = self.node {
            parts.push(format!("node={}", model.var_name(v)));
        }
        if parts.is_empty() {
            "(empty)".into()
        } else {
            parts.join(" ")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimRole {
    Premise,
    Conclusion,
    Intermediate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub role: ClaimRole,
    pub label: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImplicationReport {
    pub lemma: LemmaId,
    pub binding: String,
    pub premise: Verdict,
    pub conclusion: Verdict,
    /// False only when the premise holds and the conclusion fails.
    pub implication_ok: bool,
    pub variation_independent: bool,
    pub claims: Vec<ClaimResult>,
    /// The one-target-at-a-time induction, for the subset lemma.
    pub stepwise: Option<Stepwise>,
}

impl ImplicationReport {
    pub fn premise_holds(&self) -> bool {
        self.premise.outcome == Outcome::Holds
    }
}

/// Everything a lemma premise or conclusion can assert.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Claim {
    /// Distributional consistency for every single target.
    AllTargets,
    Consistency {
        b: VarSet,
        margin: VarSet,
    },
    CondConsistency {
        b: VarSet,
        w: VarSet,
    },
    Dc1(usize),
    Dc2(usize),
    Holds(Statement),
}

/// Evaluates lemma instances on one model, sharing verdicts between
/// instances.
pub struct LemmaChecker<'m> {
    model: &'m MultiRegimeModel,
    tol: f64,
    vi: bool,
    cache: BTreeMap<Claim, Verdict>,
}

fn validation(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::MalformedBinding(what.to_string()))
    }
}

impl<'m> LemmaChecker<'m> {
    pub fn new(model: &'m MultiRegimeModel, tol: f64) -> Self {
        LemmaChecker {
            model,
            tol,
            vi: is_variation_independent(model),
            cache: BTreeMap::new(),
        }
    }

    fn label(&self, claim: &Claim) -> String {
        let m = self.model;
        match claim {
            Claim::AllTargets => "distributional consistency for every target".into(),
            Claim::Consistency { b, margin } => {
                format!("consistency of B={} on margin {}", names(m, *b), names(m, *margin))
            }
            Claim::CondConsistency { b, w } => {
                format!("conditional consistency of B={} given {}", names(m, *b), names(m, *w))
            }
            Claim::Dc1(v) => format!("P({0}={0}) agrees under F({0}) set and idle", m.var_name(*v)),
            Claim::Dc2(v) => format!(
                "law of the rest given {0} agrees under F({0}) set and idle",
                m.var_name(*v)
            ),
            Claim::Holds(s) => s.to_string(),
        }
    }

    fn verdict(&mut self, claim: &Claim) -> Result<Verdict> {
        if let Some(v) = self.cache.get(claim) {
            return Ok(v.clone());
        }
        let (m, tol) = (self.model, self.tol);
        let v = match claim {
            Claim::AllTargets => check_all_targets(m, tol)?,
            Claim::Consistency { b, margin } => check_consistency_sets(m, *b, *margin, tol)?,
            Claim::CondConsistency { b, w } => check_conditional_consistency(m, *b, *w, tol)?,
            Claim::Dc1(v) => check_dc1(m, *v, tol)?,
            Claim::Dc2(v) => check_dc2(m, *v, tol)?,
            Claim::Holds(s) => evaluate(m, s, tol)?,
        };
        self.cache.insert(claim.clone(), v.clone());
        Ok(v)
    }

    fn names(&self, set: VarSet) -> Vec<String> {
        set.iter().map(|v| self.model.var_name(v).to_string()).collect()
    }

    /// `left ⊥⊥ group | given_vars, given indicators`, indicators listed as
    /// `(targets, mode)` blocks.
    fn statement(
        &self,
        left: VarSet,
        group: &[(VarSet, IndicatorMode)],
        given_vars: VarSet,
        given: &[(VarSet, IndicatorMode)],
    ) -> Claim {
        let ind = |blocks: &[(VarSet, IndicatorMode)]| -> Vec<Term> {
            let mut out: Vec<(usize, Term)> = blocks
                .iter()
                .flat_map(|(set, mode)| {
                    set.iter()
                        .map(move |v| (v, Term::indicator(self.model.var_name(v), mode.clone())))
                })
                .collect();
            out.sort_by_key(|(v, _)| *v);
            out.into_iter().map(|(_, t)| t).collect()
        };
        let mut s = Statement::new(&self.names(left));
        s.group = ind(group);
        s = s.given_vars(&self.names(given_vars));
        s.given.extend(ind(given));
        Claim::Holds(s)
    }

    fn check_binding(&self, id: LemmaId, bd: &LemmaBinding) -> Result<()> {
        let m = self.model;
        let a = m.target_set();
        let all = m.all_vars();
        let sets_ok = [bd.b, bd.d, bd.c, bd.w, bd.y].iter().all(|s| s.is_subset(all));
        validation(sets_ok, "binding mentions unknown variables")?;
        let single = || validation(bd.b.len() == 1 && bd.b.is_subset(a), "B must be a single target");
        let subset = || {
            validation(
                !bd.b.is_empty() && bd.b.is_subset(a),
                "B must be a non-empty set of targets",
            )
        };
        let w_covers = || validation(bd.b.is_subset(bd.w), "W must contain B");
        match id {
            LemmaId::DcDef => {
                single()?;
                validation(bd.y.is_disjoint(bd.b), "Y must be disjoint from B")
            }
            LemmaId::DcPair | LemmaId::Eq2Strong => single(),
            LemmaId::L1Subset => {
                subset()?;
                validation(bd.y.is_disjoint(bd.b), "Y must be disjoint from B")
            }
            LemmaId::L2Condition => {
                subset()?;
                validation(bd.w.is_disjoint(bd.b), "W must be disjoint from B")
            }
            LemmaId::L3Promote => {
                subset()?;
                w_covers()
            }
            LemmaId::C1Joint => {
                subset()?;
                w_covers()?;
                validation(
                    !bd.d.is_empty() && bd.d.is_subset(a) && bd.d.is_disjoint(bd.b),
                    "D must be a non-empty set of targets disjoint from B",
                )
            }
            LemmaId::C2CheckedContext => {
                subset()?;
                w_covers()?;
                validation(
                    !bd.c.is_empty() && bd.c.is_subset(a.difference(bd.b)),
                    "C must be a non-empty set of targets outside B",
                )?;
                validation(
                    bd.d.is_subset(a.difference(bd.b).difference(bd.c)),
                    "D must be targets outside B and C",
                )
            }
            LemmaId::L4CondPromote => {
                subset()?;
                w_covers()?;
                validation(
                    !bd.y.is_empty() && bd.y.is_disjoint(bd.w),
                    "Y must be non-empty and disjoint from W",
                )
            }
            LemmaId::L5Induction => {
                let k = a.len();
                validation(k > 0, "the model has no targets")?;
                validation(bd.r.is_none_or(|r| (1..=k).contains(&r)), "r must lie in 1..=k")
            }
            LemmaId::C3Interleave | LemmaId::L6ParentReduce => {
                validation(!a.is_empty(), "the model has no targets")?;
                validation(
                    bd.node.is_some_and(|v| v < m.num_vars() && !a.contains(v)),
                    "node must be a non-target variable",
                )
            }
        }
    }

    /// Evaluates one lemma instance.
    pub fn check(&mut self, id: LemmaId, bd: &LemmaBinding) -> Result<ImplicationReport> {
        self.check_binding(id, bd)?;
        let m = self.model;
        let a = m.target_set();
        let all = m.all_vars();
        let structure = match &bd.structure {
            Some(s) => {
                s.check(m)?;
                s.clone()
            }
            None => Structure::complete(m),
        };
        let full = IndicatorMode::Full;
        let checked = IndicatorMode::Checked;

        let mut premises: Vec<Claim> = Vec::new();
        let mut conclusions: Vec<Claim> = Vec::new();
        let mut intermediates: Vec<Claim> = Vec::new();
        let mut stepwise = None;
        if !matches!(id, LemmaId::DcDef | LemmaId::DcPair | LemmaId::Eq2Strong) {
            premises.push(Claim::AllTargets);
        }
        let rest = a.difference(bd.b);

        match id {
            LemmaId::DcDef => {
                premises.push(Claim::Consistency {
                    b: bd.b,
                    margin: all.difference(bd.b),
                });
                conclusions.push(Claim::Consistency { b: bd.b, margin: bd.y });
            }
            LemmaId::DcPair => {
                let v = bd.b.iter().next().unwrap_or_default();
                premises.push(Claim::Dc2(v));
                premises.push(Claim::Dc1(v));
                conclusions.push(Claim::Consistency {
                    b: bd.b,
                    margin: all.difference(bd.b),
                });
            }
            LemmaId::Eq2Strong => {
                let v = bd.b.iter().next().unwrap_or_default();
                premises.push(Claim::Holds(eq2_statement(m, v)));
                conclusions.push(Claim::Dc1(v));
            }
            LemmaId::L1Subset => {
                conclusions.push(Claim::Consistency { b: bd.b, margin: bd.y });
                stepwise = Some(stepwise_consistency(m, bd.b, all.difference(bd.b), self.tol)?);
            }
            LemmaId::L2Condition => {
                conclusions.push(Claim::CondConsistency { b: bd.b, w: bd.w });
            }
            LemmaId::L3Promote => {
                premises.push(self.statement(bd.w, &[(bd.b, checked.clone())], VarSet::EMPTY, &[(rest, full.clone())]));
                conclusions.push(self.statement(bd.w, &[(bd.b, full.clone())], VarSet::EMPTY, &[(rest, full.clone())]));
            }
            LemmaId::C1Joint | LemmaId::C2CheckedContext => {
                let others = rest.difference(bd.d).difference(bd.c);
                let given = [(bd.c, checked.clone()), (others, full.clone())];
                premises.push(self.statement(
                    bd.w,
                    &[(bd.b, checked.clone()), (bd.d, full.clone())],
                    VarSet::EMPTY,
                    &given,
                ));
                conclusions.push(self.statement(
                    bd.w,
                    &[(bd.b, full.clone()), (bd.d, full.clone())],
                    VarSet::EMPTY,
                    &given,
                ));
            }
            LemmaId::L4CondPromote => {
                premises.push(self.statement(bd.y, &[(bd.b, checked.clone())], bd.w, &[(rest, full.clone())]));
                conclusions.push(self.statement(bd.y, &[(bd.b, full.clone())], bd.w, &[(rest, full.clone())]));
            }
            LemmaId::L5Induction | LemmaId::C3Interleave | LemmaId::L6ParentReduce => {
                let ordered = structure.ordered_targets(m);
                let k = ordered.len();
                let span = |from: usize, to: usize| -> VarSet {
                    // 1-based inclusive F_{from:to}
                    if from > to {
                        VarSet::EMPTY
                    } else {
                        VarSet::from_indices(ordered[from - 1..to].iter().copied())
                    }
                };
                let z = |r: usize| structure.through(ordered[r - 1]);
                for r in 1..=k {
                    premises.push(self.statement(
                        z(r),
                        &[(span(r, r), checked.clone())],
                        VarSet::EMPTY,
                        &[(span(1, r - 1), checked.clone()), (span(r + 1, k), checked.clone())],
                    ));
                }
                match id {
                    LemmaId::L5Induction => {
                        let rs: Vec<usize> = match bd.r {
                            Some(r) => vec![r],
                            None => (1..=k).collect(),
                        };
                        for &r in &rs {
                            conclusions.push(self.statement(
                                z(r),
                                &[(span(r, k), full.clone())],
                                VarSet::EMPTY,
                                &[(span(1, r - 1), checked.clone())],
                            ));
                            if r < k {
                                intermediates.push(self.statement(
                                    z(r),
                                    &[(span(r + 1, k), full.clone())],
                                    VarSet::EMPTY,
                                    &[(span(1, r), checked.clone())],
                                ));
                                intermediates.push(self.statement(
                                    z(r),
                                    &[(span(r, r), checked.clone()), (span(r + 1, k), full.clone())],
                                    VarSet::EMPTY,
                                    &[(span(1, r - 1), checked.clone())],
                                ));
                            }
                        }
                    }
                    LemmaId::C3Interleave => {
                        let i = bd.node.unwrap_or_default();
                        let pre = structure.pre(i);
                        conclusions.push(self.statement(
                            pre.with(i),
                            &[(a.difference(pre), full.clone())],
                            VarSet::EMPTY,
                            &[(a.intersection(pre), checked.clone())],
                        ));
                    }
                    _ => {
                        let i = bd.node.unwrap_or_default();
                        let pre = structure.pre(i);
                        let pa = structure.parents[i];
                        let a_pa = a.intersection(pa);
                        let a_pre_not_pa = a.intersection(pre).difference(pa);
                        let a_after = a.difference(pre);
                        let wi = VarSet::singleton(i);
                        premises.push(self.statement(
                            wi,
                            &[(a_pre_not_pa, checked.clone())],
                            pre,
                            &[(a_pa, checked.clone()), (a_after, checked.clone())],
                        ));
                        intermediates.push(self.statement(
                            wi,
                            &[(a_after, full.clone())],
                            pre,
                            &[(a_pa, checked.clone()), (a_pre_not_pa, checked.clone())],
                        ));
                        conclusions.push(self.statement(
                            wi,
                            &[(a.difference(pa), full.clone())],
                            pre,
                            &[(a_pa, checked.clone())],
                        ));
                    }
                }
            }
        }

        let mut claims = Vec::new();
        let mut collect = |this: &mut Self, list: &[Claim], role: ClaimRole| -> Result<Vec<Verdict>> {
            let mut out = Vec::with_capacity(list.len());
            for c in list {
                let v = this.verdict(c)?;
                claims.push(ClaimResult {
                    role,
                    label: this.label(c),
                    verdict: v.clone(),
                });
                out.push(v);
            }
            Ok(out)
        };
        let pv = collect(self, &premises, ClaimRole::Premise)?;
        let cv = collect(self, &conclusions, ClaimRole::Conclusion)?;
        collect(self, &intermediates, ClaimRole::Intermediate)?;
        let premise = Verdict::all(&pv);
        let conclusion = Verdict::all(&cv);
        let implication_ok = !(premise.holds() && conclusion.fails());
        Ok(ImplicationReport {
            lemma: id,
            binding: bd.describe(m),
            premise,
            conclusion,
            implication_ok,
            variation_independent: self.vi,
            claims,
            stepwise,
        })
    }
}

/// Evaluates one lemma instance from scratch.
pub fn check_lemma(
    model: &MultiRegimeModel,
    id: LemmaId,
    binding: &LemmaBinding,
    tol: f64,
) -> Result<ImplicationReport> {
    LemmaChecker::new(model, tol).check(id, binding)
}

/// Every admissible binding of `id` on `model`, attached to `structure`
/// (the complete declaration-order structure when `None`).
pub fn admissible_bindings(model: &MultiRegimeModel, id: LemmaId, structure: Option<&Structure>) -> Vec<LemmaBinding> {
    let a = model.target_set();
    let all = model.all_vars();
    let nonempty = |s: VarSet| s.subsets().filter(|x| !x.is_empty()).collect::<Vec<_>>();
    let structure = structure.cloned();
    let base = LemmaBinding {
        structure: if id.needs_structure() { structure } else { None },
        ..LemmaBinding::default()
    };
    let mut out = Vec::new();
    let singles: Vec<VarSet> = a.iter().map(VarSet::singleton).collect();
    match id {
        LemmaId::DcDef => {
            for &b in &singles {
                for y in nonempty(all.difference(b)) {
                    out.push(LemmaBinding { b, y, ..base.clone() });
                }
            }
        }
        LemmaId::DcPair | LemmaId::Eq2Strong => {
            for &b in &singles {
                out.push(LemmaBinding { b, ..base.clone() });
            }
        }
        LemmaId::L1Subset => {
            for b in nonempty(a) {
                for y in nonempty(all.difference(b)) {
                    out.push(LemmaBinding { b, y, ..base.clone() });
                }
            }
        }
        LemmaId::L2Condition => {
            for b in nonempty(a) {
                let others = all.difference(b);
                for w in others.subsets().filter(|&w| w != others) {
                    out.push(LemmaBinding { b, w, ..base.clone() });
                }
            }
        }
        LemmaId::L3Promote => {
            for b in nonempty(a) {
                for extra in all.difference(b).subsets() {
                    out.push(LemmaBinding {
                        b,
                        w: b.union(extra),
                        ..base.clone()
                    });
                }
            }
        }
        LemmaId::C1Joint => {
            for b in nonempty(a) {
                for d in nonempty(a.difference(b)) {
                    for extra in all.difference(b).subsets() {
                        out.push(LemmaBinding {
                            b,
                            d,
                            w: b.union(extra),
                            ..base.clone()
                        });
                    }
                }
            }
        }
        LemmaId::C2CheckedContext => {
            for b in nonempty(a) {
                for c in nonempty(a.difference(b)) {
                    for d in a.difference(b).difference(c).subsets() {
                        for extra in all.difference(b).subsets() {
                            out.push(LemmaBinding {
                                b,
                                c,
                                d,
                                w: b.union(extra),
                                ..base.clone()
                            });
                        }
                    }
                }
            }
        }
        LemmaId::L4CondPromote => {
            for b in nonempty(a) {
                for extra in all.difference(b).subsets() {
                    let w = b.union(extra);
                    for y in nonempty(all.difference(w)) {
                        out.push(LemmaBinding {
                            b,
                            w,
                            y,
                            ..base.clone()
                        });
                    }
                }
            }
        }
        LemmaId::L5Induction => {
            for r in 1..=a.len() {
                out.push(LemmaBinding {
                    r: Some(r),
                    ..base.clone()
                });
            }
        }
        LemmaId::C3Interleave | LemmaId::L6ParentReduce => {
            if !a.is_empty() {
                for v in all.difference(a).iter() {
                    out.push(LemmaBinding {
                        node: Some(v),
                        ..base.clone()
                    });
                }
            }
        }
    }
    out
}
