//! Distributional consistency: for a target `B`, rows with `B = b` of the
//! joint law must agree between `F(B) = b` and `F(B)` idle, under every
//! setting of the other indicators.
//!
//! Row comparisons use half the L1 distance between the restricted rows, so
//! a single differing row mass `δ` shows up as `δ / 2`.

mod lemma;
mod suite;

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::eci::{evaluate, IndicatorMode, Statement};
use crate::model::conditional_set;
use crate::table::{for_each_point, tv};
use crate::verdict::Tally;
use crate::{Context, Error, IndicatorState, MultiRegimeModel, RegimeAssignment, Result, VarSet, Verdict, Witness};

pub use lemma::{
    admissible_bindings, check_lemma, ClaimResult, ClaimRole, ImplicationReport, LemmaBinding, LemmaChecker, LemmaId,
    Structure,
};
pub use suite::{run_suite, FailureRecord, LemmaCounts, SuiteReport};

/// Target positions of a set of target variables, in model order.
fn positions(model: &MultiRegimeModel, b: VarSet) -> Result<Vec<usize>> {
    if b.is_empty() {
        return Err(Error::Precondition("the target set B must not be empty".into()));
    }
    b.iter()
        .map(|v| {
            model
                .target_position(v)
                .ok_or_else(|| Error::NotATarget(model.var_name(v).to_string()))
        })
        .collect()
}

/// Every assignment of the indicators outside `fixed` (idle or any value),
/// with the `fixed` positions idle.
fn rest_assignments(model: &MultiRegimeModel, fixed: &[usize]) -> Vec<RegimeAssignment> {
    let tcards: Vec<usize> = model
        .targets()
        .iter()
        .enumerate()
        .map(|(p, &t)| {
            if fixed.contains(&p) {
                0
            } else {
                model.variable(t).card()
            }
        })
        .collect();
    crate::model::full_product(&tcards)
}

/// Every value vector of the targets at `pos`.
fn value_vectors(model: &MultiRegimeModel, pos: &[usize]) -> Vec<Vec<usize>> {
    let sizes: Vec<usize> = pos.iter().map(|&p| model.variable(model.targets()[p]).card()).collect();
    let mut out = Vec::new();
    for_each_point(&sizes, |x| out.push(x.to_vec()));
    out
}

fn set_positions(base: &RegimeAssignment, pos: &[usize], values: &[usize]) -> RegimeAssignment {
    let mut r = base.clone();
    for (&p, &x) in pos.iter().zip(values) {
        r.0[p] = IndicatorState::Set(x);
    }
    r
}

/// Compares the rows of the `keep`-margin matching `restrict` under two
/// regimes. Absent regimes are skipped.
fn compare_rows(
    model: &MultiRegimeModel,
    first: &RegimeAssignment,
    second: &RegimeAssignment,
    keep: VarSet,
    restrict: &[(usize, usize)],
    tally: &mut Tally,
) -> Result<()> {
    let mut rows = |r: &RegimeAssignment| -> Result<Option<Vec<f64>>> {
        if !model.has_regime(r) {
            tally.skip(r.clone());
            return Ok(None);
        }
        let t = model.project(r, keep)?;
        let pos: Vec<(usize, usize)> = restrict
            .iter()
            .map(|&(v, x)| (t.vars.iter().position(|&u| u == v).unwrap(), x))
            .collect();
        let mut out = Vec::new();
        let mut i = 0;
        for_each_point(&t.cards, |point| {
            if pos.iter().all(|&(p, x)| point[p] == x) {
                out.push(t.probs[i]);
            }
            i += 1;
        });
        Ok(Some(out))
    };
    let (Some(a), Some(b)) = (rows(first)?, rows(second)?) else {
        return Ok(());
    };
    tally.saw_context();
    let d = tv(&a, &b);
    tally.compare(d, || Witness {
        target: keep.to_vec(),
        restrict: restrict.to_vec(),
        first: Context {
            regime: first.clone(),
            given: Vec::new(),
        },
        second: Context {
            regime: second.clone(),
            given: Vec::new(),
        },
        first_table: a,
        second_table: b,
        discrepancy: d,
    });
    Ok(())
}

/// Compares `P(target | given)` under two regimes where both are defined.
fn compare_conditionals(
    model: &MultiRegimeModel,
    first: &RegimeAssignment,
    second: &RegimeAssignment,
    target: VarSet,
    given: &[(usize, usize)],
    tally: &mut Tally,
) -> Result<()> {
    for r in [first, second] {
        if !model.has_regime(r) {
            tally.skip(r.clone());
            return Ok(());
        }
    }
    let a = conditional_set(model, first, target, given)?;
    let b = conditional_set(model, second, target, given)?;
    let (Some(a), Some(b)) = (a, b) else {
        return Ok(());
    };
    tally.saw_context();
    let d = tv(&a.probs, &b.probs);
    let ctx = |r: &RegimeAssignment| Context {
        regime: r.clone(),
        given: given.to_vec(),
    };
    tally.compare(d, || Witness {
        target: target.to_vec(),
        restrict: Vec::new(),
        first: ctx(first),
        second: ctx(second),
        first_table: a.probs.clone(),
        second_table: b.probs.clone(),
        discrepancy: d,
    });
    Ok(())
}

/// Distributional consistency for a single target, on the full margin `V \ B`.
pub fn check_distributional_consistency(model: &MultiRegimeModel, target: &str, tol: f64) -> Result<Verdict> {
    let v = model.var_index(target)?;
    model.target_index(target)?;
    check_consistency_sets(model, VarSet::singleton(v), model.all_vars().without(v), tol)
}

/// Distributional consistency for every target at once.
pub fn check_all_targets(model: &MultiRegimeModel, tol: f64) -> Result<Verdict> {
    let parts = model
        .targets()
        .iter()
        .map(|&t| check_consistency_sets(model, VarSet::singleton(t), model.all_vars().without(t), tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict::all(&parts))
}

/// The subset form: `P(Y, B=b | F_B=b, F_rest) = P(Y, B=b | F_B idle, F_rest)`
/// for a set `B` of targets and a margin `Y` disjoint from `B`.
pub fn check_consistency_sets(model: &MultiRegimeModel, b: VarSet, margin: VarSet, tol: f64) -> Result<Verdict> {
    let pos = positions(model, b)?;
    if !margin.is_disjoint(b) {
        return Err(Error::NotDisjoint("the margin must not contain B".into()));
    }
    let keep = margin.union(b);
    let bvars = b.to_vec();
    let mut tally = Tally::new(tol);
    for rest in rest_assignments(model, &pos) {
        for values in value_vectors(model, &pos) {
            let set = set_positions(&rest, &pos, &values);
            let restrict: Vec<(usize, usize)> = bvars.iter().copied().zip(values.iter().copied()).collect();
            compare_rows(model, &rest, &set, keep, &restrict, &mut tally)?;
        }
    }
    Ok(tally.finish())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Conditional law of the rest given `B = b` agrees.
    pub dc2: Verdict,
    /// `P(B = b)` agrees between `F(B) = b` and idle.
    pub dc1: Verdict,
    /// `B ⊥⊥ F(B) | F(rest)`: the law of `B` is unaffected by any setting.
    pub eq2: Verdict,
}

/// Splits distributional consistency for a single target into its two halves and the
/// stronger invariance of the target's own law.
pub fn decompose_dc(model: &MultiRegimeModel, target: &str, tol: f64) -> Result<Decomposition> {
    let v = model.var_index(target)?;
    model.target_index(target)?;
    Ok(Decomposition {
        dc2: check_dc2(model, v, tol)?,
        dc1: check_dc1(model, v, tol)?,
        eq2: evaluate(model, &eq2_statement(model, v), tol)?,
    })
}

pub(crate) fn check_dc1(model: &MultiRegimeModel, v: usize, tol: f64) -> Result<Verdict> {
    check_consistency_sets(model, VarSet::singleton(v), VarSet::EMPTY, tol)
}

pub(crate) fn check_dc2(model: &MultiRegimeModel, v: usize, tol: f64) -> Result<Verdict> {
    check_conditional_consistency(model, VarSet::singleton(v), VarSet::EMPTY, tol)
}

/// `B ⊥⊥ F(B) | F(C)` for every other target `C`.
pub(crate) fn eq2_statement(model: &MultiRegimeModel, v: usize) -> Statement {
    let mut s = Statement::new(&[model.var_name(v)]).against(model.var_name(v), false);
    for &t in model.targets() {
        if t != v {
            s = s.given_indicator(model.var_name(t), IndicatorMode::Full);
        }
    }
    s
}

/// `P(V∖B∖W | B=b, W=w, F_B=b, F_rest) = P(· | B=b, W=w, F_B idle, F_rest)`
/// wherever both sides are defined.
pub fn check_conditional_consistency(model: &MultiRegimeModel, b: VarSet, w: VarSet, tol: f64) -> Result<Verdict> {
    let pos = positions(model, b)?;
    if !w.is_disjoint(b) {
        return Err(Error::NotDisjoint("W must not contain B".into()));
    }
    let target = model.all_vars().difference(b).difference(w);
    let wvars = w.to_vec();
    let wsizes: Vec<usize> = wvars.iter().map(|&u| model.variable(u).card()).collect();
    let mut wvalues = Vec::new();
    for_each_point(&wsizes, |x| wvalues.push(x.to_vec()));
    let bvars = b.to_vec();
    let mut tally = Tally::new(tol);
    for rest in rest_assignments(model, &pos) {
        for values in value_vectors(model, &pos) {
            let set = set_positions(&rest, &pos, &values);
            for wv in &wvalues {
                let mut given: Vec<(usize, usize)> = bvars
                    .iter()
                    .copied()
                    .zip(values.iter().copied())
                    .chain(wvars.iter().copied().zip(wv.iter().copied()))
                    .collect();
                given.sort_unstable();
                compare_conditionals(model, &rest, &set, target, &given, &mut tally)?;
            }
        }
    }
    Ok(tally.finish())
}

/// The induction behind the subset form, one target at a time: starting from
/// all of `B` set, targets are released to idle from the last one back, and
/// each step compares consecutive regimes on the rows `B = b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stepwise {
    /// Step `j` compares the regime with the first `m - j` targets of `B`
    /// set against the one with `m - j - 1` set.
    pub steps: Vec<Verdict>,
    pub verdict: Verdict,
    pub direct: Verdict,
    pub agrees: bool,
}

pub fn stepwise_consistency(model: &MultiRegimeModel, b: VarSet, margin: VarSet, tol: f64) -> Result<Stepwise> {
    let pos = positions(model, b)?;
    if !margin.is_disjoint(b) {
        return Err(Error::NotDisjoint("the margin must not contain B".into()));
    }
    let keep = margin.union(b);
    let bvars = b.to_vec();
    let m = pos.len();
    let mut tallies: Vec<Tally> = (0..m).map(|_| Tally::new(tol)).collect();
    for rest in rest_assignments(model, &pos) {
        for values in value_vectors(model, &pos) {
            let restrict: Vec<(usize, usize)> = bvars.iter().copied().zip(values.iter().copied()).collect();
            let chain: Vec<RegimeAssignment> = (0..=m)
                .map(|j| set_positions(&rest, &pos[..m - j], &values[..m - j]))
                .collect();
            for (j, tally) in tallies.iter_mut().enumerate() {
                compare_rows(model, &chain[j], &chain[j + 1], keep, &restrict, tally)?;
            }
        }
    }
    let steps: Vec<Verdict> = tallies.into_iter().map(Tally::finish).collect();
    let verdict = Verdict::all(&steps);
    let direct = check_consistency_sets(model, b, margin, tol)?;
    let agrees = verdict.outcome == direct.outcome;
    Ok(Stepwise {
        steps,
        verdict,
        direct,
        agrees,
    })
}

/// Short label such as `"{T, S}"` for diagnostics.
pub(crate) fn names(model: &MultiRegimeModel, set: VarSet) -> alloc::string::String {
    let parts: Vec<&str> = set.iter().map(|v| model.var_name(v)).collect();
    format!("{{{}}}", parts.join(", "))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::structural::{generate_structural_model, m_ty_spec};
    use crate::VariableDecl;
    use alloc::vec;

    fn m_ty() -> MultiRegimeModel {
        generate_structural_model(&m_ty_spec()).unwrap()
    }

    use super::tests_support::m_viol;

    #[test]
    fn m_ty_is_consistent() {
        let m = m_ty();
        let v = check_distributional_consistency(&m, "T", 1e-12).unwrap();
        assert!(v.holds());
        assert_eq!(v.comparisons, 2);
        let d = decompose_dc(&m, "T", 1e-12).unwrap();
        assert!(d.dc2.holds() && d.dc1.holds() && d.eq2.holds());
    }

    #[test]
    fn m_viol_fails_at_b_equals_one() {
        let m = m_viol();
        let v = check_distributional_consistency(&m, "T", 1e-9).unwrap();
        assert!(v.fails());
        let w = v.witness.unwrap();
        assert_eq!(w.restrict, [(0, 1)]);
        // rows T=1: idle (0.1, 0.4) vs set (0.2, 0.8)
        assert!((w.discrepancy - 0.25).abs() < 1e-12);
        assert!((w.replay(&m).unwrap() - w.discrepancy).abs() < 1e-12);
        let d = decompose_dc(&m, "T", 1e-9).unwrap();
        assert!(d.dc1.fails());
        assert!(d.dc2.holds());
        assert!(d.eq2.fails());
    }

    #[test]
    fn non_targets_are_rejected() {
        let m = m_ty();
        assert!(matches!(
            check_distributional_consistency(&m, "Y", 1e-9),
            Err(Error::NotATarget(_))
        ));
        assert!(matches!(
            check_distributional_consistency(&m, "Q", 1e-9),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn identical_tables_are_consistent() {
        let t = vec![0.3, 0.7];
        let m = MultiRegimeModel::new(vec![VariableDecl::numeric("B", 2)], &["B"])
            .unwrap()
            .with_regime(RegimeAssignment(vec![IndicatorState::Idle]), t.clone())
            .with_regime(RegimeAssignment(vec![IndicatorState::Set(0)]), t.clone())
            .with_regime(RegimeAssignment(vec![IndicatorState::Set(1)]), t);
        assert!(check_distributional_consistency(&m, "B", 1e-12).unwrap().holds());
    }

    #[test]
    fn dc1_is_weaker_than_eq2_for_three_values() {
        // P(B) idle (0.5, 0.3, 0.2); F(B)=b0 keeps P(B=b0) but swaps the rest
        let idle = vec![0.5, 0.3, 0.2];
        let m = MultiRegimeModel::new(vec![VariableDecl::new("B", &["b0", "b1", "b2"])], &["B"])
            .unwrap()
            .with_regime(RegimeAssignment(vec![IndicatorState::Idle]), idle.clone())
            .with_regime(RegimeAssignment(vec![IndicatorState::Set(0)]), vec![0.5, 0.2, 0.3])
            .with_regime(RegimeAssignment(vec![IndicatorState::Set(1)]), idle.clone())
            .with_regime(RegimeAssignment(vec![IndicatorState::Set(2)]), idle);
        let d = decompose_dc(&m, "B", 1e-9).unwrap();
        assert!(d.dc1.holds());
        assert!(d.eq2.fails());
        assert!((d.eq2.max_discrepancy - 0.1).abs() < 1e-12);
    }
}
