//! Seeded model generators: structural specs, consistent random families and
//! unconstrained random families over arbitrary regime subsets.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::model::full_product;
use crate::rng::{derive_seed, Rng};
use crate::structural::{generate_structural_model, random_tables, StructuralSpec};
use crate::table::for_each_point;
use crate::{Error, IndicatorState, MultiRegimeModel, RegimeAssignment, Result, VariableDecl};

pub const MAX_VARS: usize = 6;
pub const MAX_CARD: usize = 4;
pub const MAX_TARGETS: usize = 3;

/// Sizes of a model to generate. Variables are named `V1`, `V2`, ...
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelShape {
    pub cards: Vec<usize>,
    /// Variable indices of the targets.
    pub targets: Vec<usize>,
}

impl ModelShape {
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidShape(m));
        if self.cards.is_empty() || self.cards.len() > MAX_VARS {
            return bad(format!("need 1..={MAX_VARS} variables"));
        }
        if self.cards.iter().any(|&c| !(2..=MAX_CARD).contains(&c)) {
            return bad(format!("domain sizes must lie in 2..={MAX_CARD}"));
        }
        if self.targets.len() > MAX_TARGETS {
            return bad(format!("at most {MAX_TARGETS} targets"));
        }
        let mut t = self.targets.clone();
        t.sort_unstable();
        t.dedup();
        if t.len() != self.targets.len() || t.iter().any(|&v| v >= self.cards.len()) {
            return bad("targets must be distinct variable indices".into());
        }
        Ok(())
    }

    pub fn variables(&self) -> Vec<VariableDecl> {
        self.cards
            .iter()
            .enumerate()
            .map(|(i, &c)| VariableDecl::numeric(&format!("V{}", i + 1), c))
            .collect()
    }

    fn target_names(&self) -> Vec<String> {
        let mut t = self.targets.clone();
        t.sort_unstable();
        t.iter().map(|&v| format!("V{}", v + 1)).collect()
    }

    fn empty_model(&self) -> Result<MultiRegimeModel> {
        self.check()?;
        let names = self.target_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        MultiRegimeModel::new(self.variables(), &refs)
    }

    fn target_cards(&self) -> Vec<usize> {
        let mut t = self.targets.clone();
        t.sort_unstable();
        t.iter().map(|&v| self.cards[v]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Random structural specs expanded through the switch mechanism.
    Structural,
    /// Random tables over the full product, consistent by construction.
    ConsistentRandom,
    /// Independent random tables over the full product.
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub kind: GeneratorKind,
    pub min_vars: usize,
    pub max_vars: usize,
    pub max_card: usize,
    pub min_targets: usize,
    pub max_targets: usize,
    /// Probability of each forward edge in structural specs.
    pub edge_probability: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            kind: GeneratorKind::Structural,
            min_vars: 2,
            max_vars: 4,
            max_card: 2,
            min_targets: 1,
            max_targets: 2,
            edge_probability: 0.5,
        }
    }
}

impl GeneratorConfig {
    pub fn check(&self) -> Result<()> {
        let ok = 1 <= self.min_vars
            && self.min_vars <= self.max_vars
            && self.max_vars <= MAX_VARS
            && (2..=MAX_CARD).contains(&self.max_card)
            && self.min_targets <= self.max_targets
            && self.max_targets <= MAX_TARGETS
            && self.min_targets <= self.min_vars
            && (0.0..=1.0).contains(&self.edge_probability);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidShape(format!("generator bounds out of range: {self:?}")))
        }
    }

    pub fn random_shape(&self, rng: &mut Rng) -> ModelShape {
        let n = rng.range(self.min_vars, self.max_vars);
        let cards = (0..n).map(|_| rng.range(2, self.max_card)).collect();
        let k = rng.range(self.min_targets, self.max_targets.min(n));
        let mut targets = rng.subset(n, k);
        targets.sort_unstable();
        ModelShape { cards, targets }
    }
}

/// A generated model together with the spec it came from, if structural.
#[derive(Clone, Debug)]
pub struct Generated {
    pub model: MultiRegimeModel,
    pub spec: Option<StructuralSpec>,
}

/// Draws one model according to `config`; a pure function of the seed.
pub fn generate(config: &GeneratorConfig, seed: u64) -> Result<Generated> {
    config.check()?;
    let mut rng = Rng::new(seed);
    let shape = config.random_shape(&mut rng);
    let inner = derive_seed(seed, 1);
    match config.kind {
        GeneratorKind::Structural => {
            let spec = random_structural_spec(&shape, config.edge_probability, inner)?;
            let model = generate_structural_model(&spec)?;
            Ok(Generated {
                model,
                spec: Some(spec),
            })
        }
        GeneratorKind::ConsistentRandom => Ok(Generated {
            model: generate_consistent_model(&shape, inner)?,
            spec: None,
        }),
        GeneratorKind::Random => {
            let regimes = full_product(&shape.target_cards());
            Ok(Generated {
                model: generate_random_model(&shape, inner, &regimes)?,
                spec: None,
            })
        }
    }
}

/// Random spec over `shape` with declaration order as topological order.
pub fn random_structural_spec(shape: &ModelShape, edge_probability: f64, seed: u64) -> Result<StructuralSpec> {
    shape.check()?;
    let mut rng = Rng::new(seed);
    let vars = shape.variables();
    let n = vars.len();
    let parents: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..v).filter(|_| rng.chance(edge_probability)).collect())
        .collect();
    let order: Vec<String> = vars.iter().map(|v| v.name.clone()).collect();
    Ok(random_tables(&vars, &shape.target_names(), &order, &parents, &mut rng))
}

/// Independent random tables, one per listed regime. No consistency
/// guarantee.
pub fn generate_random_model(shape: &ModelShape, seed: u64, regimes: &[RegimeAssignment]) -> Result<MultiRegimeModel> {
    let mut model = shape.empty_model()?;
    let idle = model.idle_assignment();
    if !regimes.contains(&idle) {
        return Err(Error::IdleRegimeMissing);
    }
    let tcards = shape.target_cards();
    let mut rng = Rng::new(seed);
    for r in regimes {
        let ok = r.0.len() == tcards.len()
            && r.0.iter().zip(&tcards).all(|(s, &c)| match s {
                IndicatorState::Set(v) => *v < c,
                IndicatorState::Idle => true,
            });
        if !ok || model.has_regime(r) {
            return Err(Error::InvalidShape(format!(
                "bad or repeated regime {}",
                model.describe_regime(r)
            )));
        }
        let probs = rng.distribution(model.joint_size());
        model.push_regime(r.clone(), probs);
    }
    Ok(model)
}

/// Upper bound on redraws in [`generate_consistent_model`].
pub const CONSISTENT_ATTEMPTS: usize = 200;

/// Random tables over the full product that satisfy distributional
/// consistency for every target.
///
/// Regimes are filled in order of how many targets they set. In regime `r`
/// a cell `x` that agrees with some set targets is pinned to its probability
/// in `r` with those targets idled; the remaining mass is spread randomly
/// over the free cells. Draws that pin more than the whole mass are redrawn.
pub fn generate_consistent_model(shape: &ModelShape, seed: u64) -> Result<MultiRegimeModel> {
    let base = shape.empty_model()?;
    let tvars: Vec<usize> = base.targets().to_vec();
    let mut regimes = full_product(&shape.target_cards());
    regimes.sort_by_key(|r| r.0.iter().filter(|s| !s.is_idle()).count());
    let cards = base.cards();
    let size = base.joint_size();

    for attempt in 0..CONSISTENT_ATTEMPTS {
        let mut rng = Rng::new(derive_seed(seed, attempt as u64));
        let mut model = base.clone();
        let mut ok = true;
        for r in &regimes {
            let mut probs = vec![0.0; size];
            let mut free = Vec::new();
            let mut pinned = 0.0;
            let mut cell = 0;
            let mut failure = None;
            for_each_point(&cards, |x| {
                let mut lower = r.clone();
                for (pos, &t) in tvars.iter().enumerate() {
                    if r.0[pos] == IndicatorState::Set(x[t]) {
                        lower.0[pos] = IndicatorState::Idle;
                    }
                }
                if lower == *r {
                    free.push(cell);
                } else {
                    match model.joint(&lower) {
                        Ok(j) => {
                            probs[cell] = j[cell];
                            pinned += j[cell];
                        }
                        Err(e) => failure = Some(e),
                    }
                }
                cell += 1;
            });
            if let Some(e) = failure {
                return Err(e);
            }
            let rest = 1.0 - pinned;
            if rest < -1e-12 || (rest > 1e-12 && free.is_empty()) {
                ok = false;
                break;
            }
            if !free.is_empty() {
                let weights = rng.distribution(free.len());
                let rest = rest.max(0.0);
                for (&c, w) in free.iter().zip(weights) {
                    probs[c] = rest * w;
                }
            }
            model.push_regime(r.clone(), probs);
        }
        if ok {
            return Ok(model);
        }
    }
    Err(Error::GenerationFailed(CONSISTENT_ATTEMPTS))
}

/// A random regime set containing idle and missing at least one point of
/// the full product. Needs at least one target.
pub fn random_regime_subset(target_cards: &[usize], rng: &mut Rng) -> Result<Vec<RegimeAssignment>> {
    if target_cards.is_empty() {
        return Err(Error::InvalidShape(
            "a model without targets has no strict regime subsets".to_string(),
        ));
    }
    let all = full_product(target_cards);
    let others = all.len() - 1;
    loop {
        let keep: Vec<bool> = (0..others).map(|_| rng.chance(0.6)).collect();
        if keep.iter().all(|&k| k) {
            continue;
        }
        let mut out = vec![all[0].clone()];
        out.extend(all[1..].iter().zip(&keep).filter(|(_, &k)| k).map(|(r, _)| r.clone()));
        return Ok(out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_variation_independent, validate_model};

    fn shape() -> ModelShape {
        ModelShape {
            cards: vec![2, 3, 2],
            targets: vec![0, 2],
        }
    }

    #[test]
    fn random_model_over_full_product_is_vi() {
        let s = shape();
        let regimes = full_product(&s.target_cards());
        let m = generate_random_model(&s, 3, &regimes).unwrap();
        assert!(is_variation_independent(&m));
        assert!(validate_model(&m).is_empty());
        assert_eq!(m, generate_random_model(&s, 3, &regimes).unwrap());
        assert_ne!(m, generate_random_model(&s, 4, &regimes).unwrap());
    }

    #[test]
    fn strict_subset_is_not_vi() {
        let s = shape();
        let mut rng = Rng::new(1);
        let sub = random_regime_subset(&s.target_cards(), &mut rng).unwrap();
        let m = generate_random_model(&s, 3, &sub).unwrap();
        assert!(!is_variation_independent(&m));
        assert!(m.has_regime(&m.idle_assignment()));
    }

    #[test]
    fn idle_is_required() {
        let s = shape();
        let regimes: Vec<_> = full_product(&s.target_cards()).into_iter().skip(1).collect();
        assert_eq!(generate_random_model(&s, 0, &regimes), Err(Error::IdleRegimeMissing));
    }

    #[test]
    fn shape_caps() {
        for bad in [
            ModelShape {
                cards: vec![2; 7],
                targets: vec![],
            },
            ModelShape {
                cards: vec![5],
                targets: vec![],
            },
            ModelShape {
                cards: vec![2; 4],
                targets: vec![0, 1, 2, 3],
            },
            ModelShape {
                cards: vec![2; 2],
                targets: vec![1, 1],
            },
        ] {
            assert!(bad.check().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn consistent_generator_pins_cells() {
        let s = shape();
        let m = generate_consistent_model(&s, 9).unwrap();
        assert!(validate_model(&m).is_empty());
        assert!(is_variation_independent(&m));
        // F(V1)=1: every cell with V1=1 copies the idle cell
        let idle = m.joint(&m.idle_assignment()).unwrap().to_vec();
        let set = m.joint(&m.assignment(&[("V1", Some("1"))]).unwrap()).unwrap();
        let half = idle.len() / 2;
        assert_eq!(&set[half..], &idle[half..]);
    }

    #[test]
    fn generate_is_deterministic() {
        for kind in [
            GeneratorKind::Structural,
            GeneratorKind::ConsistentRandom,
            GeneratorKind::Random,
        ] {
            let cfg = GeneratorConfig {
                kind,
                ..GeneratorConfig::default()
            };
            let a = generate(&cfg, 42).unwrap();
            let b = generate(&cfg, 42).unwrap();
            assert_eq!(a.model, b.model);
            assert_eq!(a.spec.is_some(), kind == GeneratorKind::Structural);
        }
    }
}
