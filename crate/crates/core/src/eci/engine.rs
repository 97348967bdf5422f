//! Invariance engine shared by [`evaluate`] and within-regime CI checks.
//!
//! A statement `X ⊥⊥ G | W, C` holds when, for every context (indicator
//! values drawn from the conditioning terms, unmentioned targets idle) and
//! every value `w` of `W`, the conditional law of `X` is the same across all
//! group assignments `g` for which `(w, g)` has positive probability.
//! Stochastic group members are treated like indicators whose values range
//! over the positive-probability outcomes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{IndicatorMode, Statement, Term};
use crate::table::{for_each_point, tv};
use crate::verdict::Tally;
use crate::{
    Context, Error, IndicatorState, MultiRegimeModel, RegimeAssignment, Result, VarSet, Verdict, Witness, NULL_EVENT,
};

pub(crate) struct Query {
    pub left: VarSet,
    pub right: VarSet,
    pub cond: VarSet,
    /// Admissible indicator states per target position.
    pub options: Vec<Vec<IndicatorState>>,
    pub in_group: Vec<bool>,
}

pub(crate) fn resolve(model: &MultiRegimeModel, stmt: &Statement) -> Result<Query> {
    let n = model.targets().len();
    let mut options: Vec<Option<Vec<IndicatorState>>> = vec![None; n];
    let mut in_group = vec![false; n];
    let left = model.var_set(&stmt.left)?;
    let mut right = VarSet::EMPTY;
    let mut cond = VarSet::EMPTY;

    let mut place = |target: &str, states: Vec<IndicatorState>, group: bool| -> Result<()> {
        let pos = model.target_index(target)?;
        if options[pos].is_some() {
            return Err(Error::InvalidStatement(format!("F({target}) is mentioned twice")));
        }
        options[pos] = Some(states);
        in_group[pos] = group;
        Ok(())
    };

    for term in &stmt.group {
        match term {
            Term::Var(name) => right = right.with(model.var_index(name)?),
            Term::Indicator(ind) => {
                let card = model.variable(model.var_index(&ind.target)?).card();
                let states = match &ind.mode {
                    IndicatorMode::Full => IndicatorState::all(card),
                    IndicatorMode::Checked => IndicatorState::non_idle(card),
                    _ => {
                        return Err(Error::InvalidStatement(format!(
                            "fixed indicator {ind} cannot be in the independence group"
                        )))
                    }
                };
                place(&ind.target, states, true)?;
            }
        }
    }
    for term in &stmt.given {
        match term {
            Term::Var(name) => cond = cond.with(model.var_index(name)?),
            Term::Indicator(ind) => {
                let v = model.var_index(&ind.target)?;
                let card = model.variable(v).card();
                let states = match &ind.mode {
                    IndicatorMode::Full => IndicatorState::all(card),
                    IndicatorMode::Checked => IndicatorState::non_idle(card),
                    IndicatorMode::FixedIdle => vec![IndicatorState::Idle],
                    IndicatorMode::FixedValue(label) => {
                        vec![IndicatorState::Set(model.value_index(v, label)?)]
                    }
                };
                place(&ind.target, states, false)?;
            }
        }
    }
    if !left.is_disjoint(right) || !left.is_disjoint(cond) || !right.is_disjoint(cond) {
        return Err(Error::NotDisjoint(format!("in statement `{stmt}`")));
    }
    Ok(Query {
        left,
        right,
        cond,
        options: options
            .into_iter()
            .map(|o| o.unwrap_or_else(|| vec![IndicatorState::Idle]))
            .collect(),
        in_group,
    })
}

/// Evaluates a statement numerically. Regimes the statement refers to but
/// the model lacks are skipped and listed in the verdict.
pub fn evaluate(model: &MultiRegimeModel, stmt: &Statement, tol: f64) -> Result<Verdict> {
    let q = resolve(model, stmt)?;
    run(model, &q, tol)
}

struct Radix {
    vars: Vec<usize>,
    cards: Vec<usize>,
    size: usize,
}

impl Radix {
    fn new(model: &MultiRegimeModel, set: VarSet) -> Self {
        let vars = set.to_vec();
        let cards: Vec<usize> = vars.iter().map(|&v| model.variable(v).card()).collect();
        let size = cards.iter().product();
        Radix { vars, cards, size }
    }

    fn decode(&self, mut index: usize, out: &mut Vec<(usize, usize)>) {
        let start = out.len();
        for (&v, &c) in self.vars.iter().zip(&self.cards).rev() {
            out.push((v, index % c));
            index /= c;
        }
        out[start..].reverse();
    }
}

struct Entry {
    regime: RegimeAssignment,
    right_index: usize,
    table: Vec<f64>,
}

pub(crate) fn run(model: &MultiRegimeModel, q: &Query, tol: f64) -> Result<Verdict> {
    let positions: Vec<usize> = (0..q.options.len()).collect();
    let ctx_pos: Vec<usize> = positions.iter().copied().filter(|&p| !q.in_group[p]).collect();
    let grp_pos: Vec<usize> = positions.iter().copied().filter(|&p| q.in_group[p]).collect();
    let ctx_sizes: Vec<usize> = ctx_pos.iter().map(|&p| q.options[p].len()).collect();
    let grp_sizes: Vec<usize> = grp_pos.iter().map(|&p| q.options[p].len()).collect();

    let xs = Radix::new(model, q.left);
    let ys = Radix::new(model, q.right);
    let ws = Radix::new(model, q.cond);
    let scope = q.left.union(q.right).union(q.cond);

    let mut tally = Tally::new(tol);
    let mut failure: Option<Error> = None;

    for_each_point(&ctx_sizes, |ci| {
        if failure.is_some() {
            return;
        }
        let mut base = model.idle_assignment();
        for (k, &p) in ctx_pos.iter().enumerate() {
            base.0[p] = q.options[p][ci[k]];
        }
        let mut entries: Vec<Vec<Entry>> = (0..ws.size).map(|_| Vec::new()).collect();

        for_each_point(&grp_sizes, |gi| {
            if failure.is_some() {
                return;
            }
            let mut regime = base.clone();
            for (k, &p) in grp_pos.iter().enumerate() {
                regime.0[p] = q.options[p][gi[k]];
            }
            if !model.has_regime(&regime) {
                tally.skip(regime);
                return;
            }
            let table = match model.project(&regime, scope) {
                Ok(t) => t,
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            };
            // block[w][y][x]
            let mut block = vec![0.0; ws.size * ys.size * xs.size];
            let locate = |vars: &[usize]| -> Vec<usize> {
                vars.iter()
                    .map(|v| table.vars.iter().position(|u| u == v).unwrap())
                    .collect()
            };
            let (xp, yp, wp) = (locate(&xs.vars), locate(&ys.vars), locate(&ws.vars));
            let digits = |point: &[usize], pos: &[usize], cards: &[usize]| -> usize {
                pos.iter().zip(cards).fold(0, |acc, (&p, &c)| acc * c + point[p])
            };
            let mut row = 0;
            for_each_point(&table.cards, |point| {
                let xi = digits(point, &xp, &xs.cards);
                let yi = digits(point, &yp, &ys.cards);
                let wi = digits(point, &wp, &ws.cards);
                block[(wi * ys.size + yi) * xs.size + xi] += table.probs[row];
                row += 1;
            });
            for (wi, slot) in entries.iter_mut().enumerate() {
                for yi in 0..ys.size {
                    let start = (wi * ys.size + yi) * xs.size;
                    let cell = &block[start..start + xs.size];
                    let mass: f64 = cell.iter().sum();
                    if mass > NULL_EVENT {
                        slot.push(Entry {
                            regime: regime.clone(),
                            right_index: yi,
                            table: cell.iter().map(|p| p / mass).collect(),
                        });
                    }
                }
            }
        });

        for (wi, list) in entries.iter().enumerate() {
            let Some(reference) = list.first() else { continue };
            tally.saw_context();
            for other in &list[1..] {
                let d = tv(&reference.table, &other.table);
                tally.compare(d, || {
                    let ctx = |e: &Entry| {
                        let mut given = Vec::new();
                        ws.decode(wi, &mut given);
                        ys.decode(e.right_index, &mut given);
                        given.sort_unstable();
                        Context {
                            regime: e.regime.clone(),
                            given,
                        }
                    };
                    Witness {
                        target: xs.vars.clone(),
                        restrict: Vec::new(),
                        first: ctx(reference),
                        second: ctx(other),
                        first_table: reference.table.clone(),
                        second_table: other.table.clone(),
                        discrepancy: d,
                    }
                });
            }
        }
    });

    match failure {
        Some(e) => Err(e),
        None => Ok(tally.finish()),
    }
}

/// `X ⊥⊥ Y | Z` inside one regime, checked in both directions so the
/// verdict is symmetric in `X` and `Y`.
pub(crate) fn within_regime_ci(
    model: &MultiRegimeModel,
    regime: &RegimeAssignment,
    x: VarSet,
    y: VarSet,
    z: VarSet,
    tol: f64,
) -> Result<Verdict> {
    let pinned = |left, right| Query {
        left,
        right,
        cond: z,
        options: regime.0.iter().map(|&s| vec![s]).collect(),
        in_group: vec![false; regime.0.len()],
    };
    let forward = run(model, &pinned(x, y), tol)?;
    if forward.fails() {
        return Ok(forward);
    }
    let backward = run(model, &pinned(y, x), tol)?;
    if backward.fails() {
        return Ok(backward);
    }
    Ok(Verdict::all([&forward, &backward]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eci::parse_statement;
    use crate::structural::{generate_structural_model, m_ty_spec};
    use crate::VariableDecl;

    fn eval(m: &MultiRegimeModel, s: &str) -> Verdict {
        evaluate(m, &parse_statement(s).unwrap(), 1e-9).unwrap()
    }

    #[test]
    fn intention_is_invariant_to_its_own_indicator() {
        let m = generate_structural_model(&m_ty_spec()).unwrap();
        assert!(eval(&m, "T _||_ F(T)").holds());
    }

    #[test]
    fn ignorability_fails_for_itt_model() {
        let m = generate_structural_model(&m_ty_spec()).unwrap();
        let v = eval(&m, "Y _||_ F(T) | T");
        assert!(v.fails());
        let w = v.witness.unwrap();
        assert!((w.discrepancy - 0.6).abs() < 1e-12);
        // one side is the idle regime, the other sets T to the opposite value
        assert!(w.first.regime.is_all_idle());
        let t_obs = w.first.given[0].1;
        assert_eq!(w.second.regime.0[0], IndicatorState::Set(1 - t_obs));
        assert!((w.replay(&m).unwrap() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn full_and_checked_differ_on_m_ty() {
        let m = generate_structural_model(&m_ty_spec()).unwrap();
        assert!(eval(&m, "Y _||_ F(T)! | T").fails());
        assert!(eval(&m, "T _||_ F(T)!").holds());
    }

    #[test]
    fn stochastic_group_is_within_regime_ci() {
        let m = generate_structural_model(&m_ty_spec()).unwrap();
        let v = eval(&m, "Y _||_ T | F(T)=idle");
        assert!(v.fails());
        assert!((v.max_discrepancy - 0.6).abs() < 1e-12);
        // under F(T)=1 the response no longer tracks the intention
        assert!(eval(&m, "Y _||_ T | F(T)=1").holds());
    }

    #[test]
    fn name_errors() {
        let m = generate_structural_model(&m_ty_spec()).unwrap();
        let e = evaluate(&m, &parse_statement("Q _||_ F(T)").unwrap(), 1e-9);
        assert!(matches!(e, Err(Error::UnknownVariable(_))));
        let e = evaluate(&m, &parse_statement("T _||_ F(Y)").unwrap(), 1e-9);
        assert!(matches!(e, Err(Error::NotATarget(_))));
        let e = evaluate(&m, &parse_statement("T _||_ F(T) | F(T)=1").unwrap(), 1e-9);
        assert!(matches!(e, Err(Error::InvalidStatement(_))));
        let e = evaluate(&m, &parse_statement("T _||_ F(T) | F(T)").unwrap(), 1e-9);
        assert!(matches!(e, Err(Error::InvalidStatement(_))));
        let e = evaluate(&m, &parse_statement("Y _||_ F(T) | F(T)=7").unwrap(), 1e-9);
        assert!(matches!(
            e,
            Err(Error::InvalidStatement(_)) | Err(Error::UnknownValue { .. })
        ));
        let e = evaluate(&m, &parse_statement("Y _||_ F(T) | Y").unwrap(), 1e-9);
        assert!(matches!(e, Err(Error::NotDisjoint(_))));
    }

    #[test]
    fn absent_regimes_are_reported_and_skipped() {
        let m = generate_structural_model(&m_ty_spec()).unwrap();
        let zero = m.assignment(&[("T", Some("0"))]).unwrap();
        let partial = m.retain_regimes(|a| *a != zero);
        let v = eval(&partial, "T _||_ F(T)");
        assert!(v.holds());
        assert_eq!(v.skipped_regimes, [zero]);
    }

    #[test]
    fn vacuous_when_every_referenced_regime_is_missing() {
        let m = generate_structural_model(&m_ty_spec()).unwrap();
        let idle_only = m.retain_regimes(|a| a.is_all_idle());
        let v = eval(&idle_only, "Y _||_ F(T)! | T");
        assert!(v.is_vacuous());
        assert_eq!(v.skipped_regimes.len(), 2);
    }

    #[test]
    fn empty_left_set_holds() {
        let m = MultiRegimeModel::new(vec![VariableDecl::numeric("A", 2)], &["A"])
            .unwrap()
            .with_regime(RegimeAssignment(vec![IndicatorState::Idle]), vec![0.5, 0.5])
            .with_regime(RegimeAssignment(vec![IndicatorState::Set(0)]), vec![0.9, 0.1])
            .with_regime(RegimeAssignment(vec![IndicatorState::Set(1)]), vec![0.5, 0.5]);
        let empty: [&str; 0] = [];
        let stmt = Statement::new(&empty).against("A", false);
        assert!(evaluate(&m, &stmt, 1e-9).unwrap().holds());
        assert!(eval(&m, "A _||_ F(A)").fails());
    }
}
