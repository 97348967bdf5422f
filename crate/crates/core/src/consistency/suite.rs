//! Corpus runs: many generated models, every admissible binding of every
//! requested lemma, aggregated per lemma.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::lemma::{admissible_bindings, LemmaChecker, LemmaId, Structure};
use crate::model::is_variation_independent;
use crate::random::{generate, GeneratorConfig};
use crate::rng::derive_seed;
use crate::{Error, Result, Witness};

/// Failures kept per lemma in a report.
pub const MAX_RECORDED_FAILURES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub trial: usize,
    /// Seed that regenerates the model with the same generator config.
    pub model_seed: u64,
    pub binding: String,
    pub variation_independent: bool,
    pub witness: Option<Witness>,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaCounts {
    pub lemma: LemmaId,
    pub instances: usize,
    pub premise_holds: usize,
    /// Instances whose premise did not hold.
    pub vacuous: usize,
    pub conclusion_holds: usize,
    pub implication_failures: usize,
    pub failures: Vec<FailureRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub generator: GeneratorConfig,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub variation_independent_models: usize,
    pub lemmas: Vec<LemmaCounts>,
    /// Subset-lemma instances whose stepwise induction was compared with
    /// the direct check, and how many agreed.
    pub stepwise_checked: usize,
    pub stepwise_agreed: usize,
}

impl SuiteReport {
    pub fn total_failures(&self) -> usize {
        self.lemmas.iter().map(|l| l.implication_failures).sum()
    }
}

/// Runs `trials` generated models through every admissible binding of each
/// lemma. Trial `i` uses the model seed `derive_seed(seed, i)`.
pub fn run_suite(
    config: &GeneratorConfig,
    lemmas: &[LemmaId],
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<SuiteReport> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    if lemmas.is_empty() {
        return Err(Error::Precondition("the lemma list is empty".into()));
    }
    config.check()?;
    let mut counts: Vec<LemmaCounts> = lemmas
        .iter()
        .map(|&lemma| LemmaCounts {
            lemma,
            instances: 0,
            premise_holds: 0,
            vacuous: 0,
            conclusion_holds: 0,
            implication_failures: 0,
            failures: Vec::new(),
        })
        .collect();
    let mut vi_models = 0;
    let (mut step_checked, mut step_agreed) = (0, 0);

    for trial in 0..trials {
        let model_seed = derive_seed(seed, trial as u64);
        let generated = generate(config, model_seed)?;
        let model = &generated.model;
        let structure = match &generated.spec {
            Some(spec) => Structure::from_spec(model, spec)?,
            None => Structure::complete(model),
        };
        let mut checker = LemmaChecker::new(model, tol);
        for c in counts.iter_mut() {
            for bd in admissible_bindings(model, c.lemma, Some(&structure)) {
                let rep = checker.check(c.lemma, &bd)?;
                c.instances += 1;
                if rep.premise_holds() {
                    c.premise_holds += 1;
                } else {
                    c.vacuous += 1;
                }
                if rep.conclusion.holds() {
                    c.conclusion_holds += 1;
                }
                if let Some(s) = &rep.stepwise {
                    step_checked += 1;
                    step_agreed += s.agrees as usize;
                }
                if !rep.implication_ok {
                    c.implication_failures += 1;
                    if c.failures.len() < MAX_RECORDED_FAILURES {
                        let witness = rep.conclusion.witness.clone();
                        let description = match &witness {
                            Some(w) => w.describe(model),
                            None => String::from("conclusion failed without a witness"),
                        };
                        c.failures.push(FailureRecord {
                            trial,
                            model_seed,
                            binding: rep.binding.clone(),
                            variation_independent: rep.variation_independent,
                            witness,
                            description: format!("{}: {description}", c.lemma),
                        });
                    }
                }
            }
        }
        vi_models += is_variation_independent(model) as usize;
    }
    Ok(SuiteReport {
        generator: config.clone(),
        trials,
        seed,
        tol,
        variation_independent_models: vi_models,
        lemmas: counts,
        stepwise_checked: step_checked,
        stepwise_agreed: step_agreed,
    })
}
