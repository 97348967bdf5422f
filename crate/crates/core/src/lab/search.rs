use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::consistency::{
    admissible_bindings, check_lemma, ImplicationReport, LemmaBinding, LemmaChecker, LemmaId, Structure,
};
use crate::dag::{
    eq13_statement, expand_itt, random_dag, spec_from_dag, verify_local_markov, AugmentedDag, LocalMarkov,
};
use crate::eci::{evaluate, Statement};
use crate::model::full_product;
use crate::random::{generate_consistent_model, random_regime_subset, GeneratorConfig, GeneratorKind};
use crate::rng::{derive_seed, Rng};
use crate::structural::StructuralSpec;
use crate::{Error, MultiRegimeModel, RegimeAssignment, Result, Verdict};

/// A reported failure must exceed the tolerance by at least this much and
/// replay to the same discrepancy.
pub const CERTIFY_MARGIN: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub min_vars: usize,
    pub max_vars: usize,
    pub max_card: usize,
    pub min_targets: usize,
    pub max_targets: usize,
    /// Forward-edge probability for random DAGs.
    pub edge_probability: f64,
    pub budget: usize,
    pub seed: u64,
    pub tol: f64,
    /// Keep the full regime product, so every candidate is variation
    /// independent.
    pub variation_independent_only: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            min_vars: 2,
            max_vars: 3,
            max_card: 2,
            min_targets: 1,
            max_targets: 2,
            edge_probability: 0.5,
            budget: 100_000,
            seed: 0,
            tol: crate::DEFAULT_TOL,
            variation_independent_only: false,
        }
    }
}

impl SearchConfig {
    fn generator(&self) -> Result<GeneratorConfig> {
        if self.budget == 0 {
            return Err(Error::Precondition("the search budget must be at least 1".into()));
        }
        if self.min_targets == 0 {
            return Err(Error::Precondition("searches need at least one target".into()));
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::Precondition("tolerance must be non-negative".into()));
        }
        let g = GeneratorConfig {
            kind: GeneratorKind::ConsistentRandom,
            min_vars: self.min_vars,
            max_vars: self.max_vars,
            max_card: self.max_card,
            min_targets: self.min_targets,
            max_targets: self.max_targets,
            edge_probability: self.edge_probability,
        };
        g.check()?;
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound { trials: usize },
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViCounterexample {
    pub trial: usize,
    pub lemma: LemmaId,
    pub model: MultiRegimeModel,
    pub binding: LemmaBinding,
    /// The replayed report: premise holds, conclusion fails.
    pub report: ImplicationReport,
    /// Points of the regime product the model lacks.
    pub missing_regimes: Vec<RegimeAssignment>,
}

fn missing(model: &MultiRegimeModel) -> Vec<RegimeAssignment> {
    let cards: Vec<usize> = model.targets().iter().map(|&t| model.variable(t).card()).collect();
    full_product(&cards)
        .into_iter()
        .filter(|a| !model.has_regime(a))
        .collect()
}

/// A failing verdict whose witness clears the margin and replays.
fn certified_failure(model: &MultiRegimeModel, v: &Verdict, tol: f64) -> bool {
    let Some(w) = v.witness.as_ref().filter(|_| v.fails()) else {
        return false;
    };
    match w.replay(model) {
        Ok(d) => w.discrepancy > tol + CERTIFY_MARGIN && (d - w.discrepancy).abs() <= 1e-12,
        Err(_) => false,
    }
}

/// Rejection sampling over consistent random families restricted to a
/// random strict subset of the regime product (or kept whole when
/// `variation_independent_only`), looking for an instance of `lemma` whose
/// premise holds and whose conclusion fails. Hits are replayed through
/// [`check_lemma`] before being returned.
pub fn search_vi_counterexample(config: &SearchConfig, lemma: LemmaId) -> Result<SearchOutcome<ViCounterexample>> {
    let gen = config.generator()?;
    for trial in 0..config.budget {
        let seed = derive_seed(config.seed, trial as u64);
        let mut rng = Rng::new(seed);
        let shape = gen.random_shape(&mut rng);
        let mut model = match generate_consistent_model(&shape, derive_seed(seed, 1)) {
            Ok(m) => m,
            Err(Error::GenerationFailed(_)) => continue,
            Err(e) => return Err(e),
        };
        if !config.variation_independent_only {
            let cards: Vec<usize> = model.targets().iter().map(|&t| model.variable(t).card()).collect();
            let keep = random_regime_subset(&cards, &mut rng)?;
            model = model.retain_regimes(|a| keep.contains(a));
        }
        let structure = Structure::complete(&model);
        let mut checker = LemmaChecker::new(&model, config.tol);
        for binding in admissible_bindings(&model, lemma, Some(&structure)) {
            if checker.check(lemma, &binding)?.implication_ok {
                continue;
            }
            let report = check_lemma(&model, lemma, &binding, config.tol)?;
            if report.premise_holds() && certified_failure(&model, &report.conclusion, config.tol) {
                let missing_regimes = missing(&model);
                return Ok(SearchOutcome::Found(ViCounterexample {
                    trial,
                    lemma,
                    model,
                    binding,
                    report,
                    missing_regimes,
                }));
            }
        }
    }
    Ok(SearchOutcome::NotFound { trials: config.budget })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eq13Counterexample {
    pub trial: usize,
    pub dag: AugmentedDag,
    pub spec: StructuralSpec,
    pub model: MultiRegimeModel,
    pub node: String,
    pub statement: Statement,
    pub verdict: Verdict,
    /// Every local Markov statement of the DAG with its (holding) verdict.
    pub markov: Vec<(LocalMarkov, Verdict)>,
}

/// Searches structural models over random DAGs for one that satisfies every
/// local Markov statement while `W_i ⊥⊥ F̌_{(A∩pre)∖pa} | F̌_{A∩pa}` fails
/// at some non-target node. Node and indicator counts come from the
/// variable and target bounds.
pub fn search_eq13_counterexample(config: &SearchConfig) -> Result<SearchOutcome<Eq13Counterexample>> {
    config.generator()?;
    for trial in 0..config.budget {
        let mut rng = Rng::new(derive_seed(config.seed, trial as u64));
        let n = rng.range(config.min_vars, config.max_vars);
        let k = rng.range(config.min_targets.min(n), config.max_targets.min(n));
        let dag = random_dag(n, k, config.edge_probability, &mut rng);
        let cards: Vec<usize> = (0..n).map(|_| rng.range(2, config.max_card)).collect();
        let spec = spec_from_dag(&dag, &cards, &mut rng)?;
        let model = expand_itt(&spec)?;
        let markov = verify_local_markov(&model, &dag, config.tol)?;
        if !markov.iter().all(|(_, v)| v.holds()) {
            continue;
        }
        for node in &dag.nodes {
            if dag.targets.contains(node) {
                continue;
            }
            let Some(statement) = eq13_statement(&dag, node)? else {
                continue;
            };
            let verdict = evaluate(&model, &statement, config.tol)?;
            if certified_failure(&model, &verdict, config.tol) {
                return Ok(SearchOutcome::Found(Eq13Counterexample {
                    trial,
                    node: node.clone(),
                    dag,
                    spec,
                    model,
                    statement,
                    verdict,
                    markov,
                }));
            }
        }
    }
    Ok(SearchOutcome::NotFound { trials: config.budget })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(budget: usize, vi_only: bool) -> SearchConfig {
        SearchConfig {
            budget,
            seed: 5,
            variation_independent_only: vi_only,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn l3_counterexample_is_found_and_certified() {
        let out = search_vi_counterexample(&small(2_000, false), LemmaId::L3Promote).unwrap();
        let cx = out.found().expect("a counterexample within budget");
        assert!(!cx.missing_regimes.is_empty());
        let again = check_lemma(&cx.model, LemmaId::L3Promote, &cx.binding, 1e-9).unwrap();
        assert!(again.premise_holds() && again.conclusion.fails());
        assert_eq!(
            out,
            search_vi_counterexample(&small(2_000, false), LemmaId::L3Promote).unwrap()
        );
    }

    #[test]
    fn nothing_found_on_the_full_product() {
        let out = search_vi_counterexample(&small(200, true), LemmaId::L3Promote).unwrap();
        assert_eq!(out, SearchOutcome::NotFound { trials: 200 });
    }

    #[test]
    fn zero_budget_is_rejected() {
        assert!(search_vi_counterexample(&small(0, false), LemmaId::L3Promote).is_err());
        assert!(search_eq13_counterexample(&small(0, false)).is_err());
    }

    #[test]
    fn eq13_instance_is_certified() {
        let cfg = SearchConfig {
            min_vars: 3,
            max_vars: 5,
            budget: 500,
            ..SearchConfig::default()
        };
        let out = search_eq13_counterexample(&cfg).unwrap();
        let cx = out.found().expect("an instance within budget");
        for (lm, _) in &cx.markov {
            assert!(evaluate(&cx.model, &lm.statement, 1e-9).unwrap().holds());
        }
        let v = evaluate(&cx.model, &cx.statement, 1e-9).unwrap();
        assert!(v.fails() && v.max_discrepancy > 1e-6);
    }
}
