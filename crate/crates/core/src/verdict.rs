use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::model::conditional_set;
use crate::table::tv;
use crate::{Error, MultiRegimeModel, RegimeAssignment, Result, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    Holds,
    Fails,
    Vacuous,
}

/// A regime together with observed values `(variable, value index)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Context {
    pub regime: RegimeAssignment,
    pub given: Vec<(usize, usize)>,
}

/// Two contexts whose conditional tables of `target` disagree.
///
/// When `restrict` is non-empty the compared tables are the rows of the
/// target table matching `restrict` (sub-normalized), as in the joint-row
/// comparisons of distributional consistency.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub target: Vec<usize>,
    pub restrict: Vec<(usize, usize)>,
    pub first: Context,
    pub second: Context,
    pub first_table: Vec<f64>,
    pub second_table: Vec<f64>,
    pub discrepancy: f64,
}

impl Witness {
    /// Recomputes the discrepancy from scratch through [`conditional_set`].
    pub fn replay(&self, model: &MultiRegimeModel) -> Result<f64> {
        let target = VarSet::from_indices(self.target.iter().copied());
        let first = self.rows(model, &self.first, target)?;
        let second = self.rows(model, &self.second, target)?;
        Ok(tv(&first, &second))
    }

    fn rows(&self, model: &MultiRegimeModel, ctx: &Context, target: VarSet) -> Result<Vec<f64>> {
        let table = conditional_set(model, &ctx.regime, target, &ctx.given)?.ok_or_else(|| {
            Error::UndefinedConditional(format!(
                "{} given {}",
                model.describe_regime(&ctx.regime),
                model.describe_values(&ctx.given)
            ))
        })?;
        if self.restrict.is_empty() {
            return Ok(table.probs);
        }
        let pos: Vec<(usize, usize)> = self
            .restrict
            .iter()
            .map(|&(v, x)| (table.vars.iter().position(|&u| u == v).unwrap_or(usize::MAX), x))
            .collect();
        Ok((0..table.len())
            .filter(|&i| {
                let vals = table.values_of(i);
                pos.iter().all(|&(p, x)| vals.get(p) == Some(&x))
            })
            .map(|i| table.probs[i])
            .collect())
    }

    pub fn describe(&self, model: &MultiRegimeModel) -> String {
        let ctx = |c: &Context| {
            if c.given.is_empty() {
                model.describe_regime(&c.regime)
            } else {
                format!(
                    "{}; {}",
                    model.describe_values(&c.given),
                    model.describe_regime(&c.regime)
                )
            }
        };
        let names: Vec<&str> = self.target.iter().map(|&v| model.var_name(v)).collect();
        let mut s = format!(
            "P({}) differs between [{}] and [{}] by {:.6}",
            names.join(","),
            ctx(&self.first),
            ctx(&self.second),
            self.discrepancy
        );
        if !self.restrict.is_empty() {
            s.push_str(&format!(" on rows {}", model.describe_values(&self.restrict)));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Largest discrepancy seen over all comparisons.
    pub max_discrepancy: f64,
    pub comparisons: usize,
    pub witness: Option<Witness>,
    /// Regimes a context referred to that the model does not contain.
    pub skipped_regimes: Vec<RegimeAssignment>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }

    pub fn is_vacuous(&self) -> bool {
        self.outcome == Outcome::Vacuous
    }

    pub fn trivially_true() -> Self {
        Verdict {
            outcome: Outcome::Holds,
            max_discrepancy: 0.0,
            comparisons: 0,
            witness: None,
            skipped_regimes: Vec::new(),
        }
    }

    /// Conjunction: the first failing verdict wins; otherwise `Holds` if any
    /// part holds (or there are no parts), else `Vacuous`.
    pub fn all<'a>(parts: impl IntoIterator<Item = &'a Verdict>) -> Verdict {
        let mut out = Verdict::trivially_true();
        let mut any_holds = false;
        let mut any = false;
        let mut skipped = BTreeSet::new();
        for v in parts {
            any = true;
            out.comparisons += v.comparisons;
            if v.max_discrepancy > out.max_discrepancy {
                out.max_discrepancy = v.max_discrepancy;
            }
            skipped.extend(v.skipped_regimes.iter().cloned());
            match v.outcome {
                Outcome::Fails if out.outcome != Outcome::Fails => {
                    out.outcome = Outcome::Fails;
                    out.witness = v.witness.clone();
                }
                Outcome::Holds => any_holds = true,
                _ => {}
            }
        }
        if out.outcome != Outcome::Fails && any && !any_holds {
            out.outcome = Outcome::Vacuous;
        }
        out.skipped_regimes = skipped.into_iter().collect();
        out
    }
}

/// Accumulates comparisons into a verdict.
pub(crate) struct Tally {
    tol: f64,
    max: f64,
    comparisons: usize,
    witness: Option<Witness>,
    skipped: BTreeSet<RegimeAssignment>,
    contexts: usize,
}

impl Tally {
    pub fn new(tol: f64) -> Self {
        Tally {
            tol,
            max: 0.0,
            comparisons: 0,
            witness: None,
            skipped: BTreeSet::new(),
            contexts: 0,
        }
    }

    pub fn skip(&mut self, regime: RegimeAssignment) {
        self.skipped.insert(regime);
    }

    /// Marks that at least one non-null context was examined.
    pub fn saw_context(&mut self) {
        self.contexts += 1;
    }

    pub fn compare(&mut self, discrepancy: f64, witness: impl FnOnce() -> Witness) {
        self.comparisons += 1;
        let worse = discrepancy > self.max;
        if worse {
            self.max = discrepancy;
        }
        // keep the first failing witness, replaced only by a larger one
        if discrepancy > self.tol && (self.witness.is_none() || worse) {
            self.witness = Some(witness());
        }
    }

    pub fn finish(self) -> Verdict {
        let outcome = if self.witness.is_some() {
            Outcome::Fails
        } else if self.contexts == 0 && self.comparisons == 0 {
            Outcome::Vacuous
        } else {
            Outcome::Holds
        };
        Verdict {
            outcome,
            max_discrepancy: self.max,
            comparisons: self.comparisons,
            witness: self.witness,
            skipped_regimes: self.skipped.into_iter().collect(),
        }
    }
}
