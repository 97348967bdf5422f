//! Two-stage sequential g-computation: `X0 → Z → X1 → Y` with `X0` and `X1`
//! as the intervention targets.
//!
//! The formula is assembled from the idle regime only,
//!
//! ```text
//! g(y) = Σ_z P(z | x0) · P(y | x0, z, x1)
//! ```
//!
//! and identification is checked against the interventional regime
//! `F(X0)=x0, F(X1)=x1`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::eci::{evaluate, IndicatorMode, Statement};
use crate::model::{conditional_set, marginal_set};
use crate::rng::Rng;
use crate::structural::{Mechanism, ParentRef, StructuralSpec};
use crate::table::{for_each_point, tv};
use crate::{Error, IndicatorState, MultiRegimeModel, Result, VarSet, VariableDecl, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequentialProblem {
    pub x0: String,
    /// Intermediate covariates; may be empty.
    pub z: Vec<String>,
    pub x1: String,
    pub y: String,
    /// Query value labels.
    pub x0_value: String,
    pub x1_value: String,
}

/// Indices resolved against a model.
struct Resolved {
    x0: usize,
    z: VarSet,
    x1: usize,
    y: usize,
    v0: usize,
    v1: usize,
}

impl SequentialProblem {
    pub fn new(x0: &str, z: &[&str], x1: &str, y: &str, x0_value: &str, x1_value: &str) -> Self {
        SequentialProblem {
            x0: x0.into(),
            z: z.iter().map(|&s| s.into()).collect(),
            x1: x1.into(),
            y: y.into(),
            x0_value: x0_value.into(),
            x1_value: x1_value.into(),
        }
    }

    /// The same variables with other query values.
    pub fn at(&self, x0_value: &str, x1_value: &str) -> Self {
        SequentialProblem {
            x0_value: x0_value.into(),
            x1_value: x1_value.into(),
            ..self.clone()
        }
    }

    fn resolve(&self, model: &MultiRegimeModel) -> Result<Resolved> {
        let x0 = model.var_index(&self.x0)?;
        let x1 = model.var_index(&self.x1)?;
        let y = model.var_index(&self.y)?;
        let z = model.var_set(&self.z)?;
        let mut seen = VarSet::EMPTY;
        for v in [x0, x1, y].into_iter().chain(z.iter()) {
            if seen.contains(v) {
                return Err(Error::NotDisjoint(format!("`{}` has two roles", model.var_name(v))));
            }
            seen = seen.with(v);
        }
        let mut targets = model.targets().to_vec();
        targets.sort_unstable();
        let mut want = vec![x0, x1];
        want.sort_unstable();
        if targets != want {
            return Err(Error::Precondition(format!(
                "the model's targets must be exactly {} and {}",
                self.x0, self.x1
            )));
        }
        let ok = z.iter().all(|v| v > x0 && v < x1) && x0 < x1 && x1 < y;
        if !ok {
            return Err(Error::Precondition("declaration order must be X0, Z, X1, Y".into()));
        }
        Ok(Resolved {
            x0,
            z,
            x1,
            y,
            v0: model.value_index(x0, &self.x0_value)?,
            v1: model.value_index(x1, &self.x1_value)?,
        })
    }

    /// The regime `F(X0)=x0, F(X1)=x1`.
    pub fn regime(&self, model: &MultiRegimeModel) -> Result<crate::RegimeAssignment> {
        let r = self.resolve(model)?;
        let mut a = model.idle_assignment();
        for (v, x) in [(r.x0, r.v0), (r.x1, r.v1)] {
            let pos = model.target_position(v).expect("resolved targets");
            a = a.with(pos, IndicatorState::Set(x));
        }
        Ok(a)
    }

    /// `Y _||_ X0 | F(X0)=x0, F(X1)=x1`.
    pub fn corrected_statement(&self) -> Statement {
        Statement::new(&[self.y.as_str()])
            .against_var(&self.x0)
            .given_indicator(&self.x0, IndicatorMode::FixedValue(self.x0_value.clone()))
            .given_indicator(&self.x1, IndicatorMode::FixedValue(self.x1_value.clone()))
    }
}

/// The g-formula distribution over the values of `Y`.
pub fn g_formula(model: &MultiRegimeModel, problem: &SequentialProblem) -> Result<Vec<f64>> {
    let r = problem.resolve(model)?;
    let idle = model.idle_assignment();
    if !model.has_regime(&idle) {
        return Err(Error::IdleRegimeMissing);
    }
    let undefined = |given: &[(usize, usize)]| {
        Error::UndefinedConditional(format!("given {} in the idle regime", model.describe_values(given)))
    };
    let pz = if r.z.is_empty() {
        None
    } else {
        Some(conditional_set(model, &idle, r.z, &[(r.x0, r.v0)])?.ok_or_else(|| undefined(&[(r.x0, r.v0)]))?)
    };
    let zvars = r.z.to_vec();
    let zcards: Vec<usize> = zvars.iter().map(|&v| model.variable(v).card()).collect();
    let mut out = vec![0.0; model.variable(r.y).card()];
    let mut err = None;
    for_each_point(&zcards, |zv| {
        if err.is_some() {
            return;
        }
        let w = match &pz {
            Some(t) => t.get(zv),
            None => 1.0,
        };
        if w <= 0.0 {
            return;
        }
        let mut given: Vec<(usize, usize)> = vec![(r.x0, r.v0), (r.x1, r.v1)];
        given.extend(zvars.iter().copied().zip(zv.iter().copied()));
        match conditional_set(model, &idle, VarSet::singleton(r.y), &given) {
            Ok(Some(py)) => out.iter_mut().zip(&py.probs).for_each(|(o, p)| *o += w * p),
            Ok(None) => err = Some(undefined(&given)),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Evaluates `Y _||_ X0 | F(X0)=x0, F(X1)=x1`.
pub fn check_corrected_condition(model: &MultiRegimeModel, problem: &SequentialProblem, tol: f64) -> Result<Verdict> {
    problem.resolve(model)?;
    evaluate(model, &problem.corrected_statement(), tol)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentificationReport {
    pub x0_value: String,
    pub x1_value: String,
    pub g_formula: Vec<f64>,
    pub interventional: Vec<f64>,
    /// Total-variation distance between the two.
    pub distance: f64,
    pub pass: bool,
}

/// Compares the g-formula with the marginal of `Y` in the interventional
/// regime.
pub fn verify_identification(
    model: &MultiRegimeModel,
    problem: &SequentialProblem,
    tol: f64,
) -> Result<IdentificationReport> {
    let regime = problem.regime(model)?;
    if !model.has_regime(&regime) {
        return Err(Error::RegimeAbsent(model.describe_regime(&regime)));
    }
    let y = model.var_index(&problem.y)?;
    let interventional = marginal_set(model, &regime, VarSet::singleton(y))?.probs;
    let g = g_formula(model, problem)?;
    let distance = tv(&g, &interventional);
    Ok(IdentificationReport {
        x0_value: problem.x0_value.clone(),
        x1_value: problem.x1_value.clone(),
        g_formula: g,
        interventional,
        distance,
        pass: distance <= tol,
    })
}

/// Reports for every pair of query values.
pub fn verify_all_pairs(
    model: &MultiRegimeModel,
    problem: &SequentialProblem,
    tol: f64,
) -> Result<Vec<IdentificationReport>> {
    let d0 = model.variable(model.var_index(&problem.x0)?).domain.clone();
    let d1 = model.variable(model.var_index(&problem.x1)?).domain.clone();
    let mut out = Vec::new();
    for a in &d0 {
        for b in &d1 {
            out.push(verify_identification(model, &problem.at(a, b), tol)?);
        }
    }
    Ok(out)
}

/// The problem over the variables of [`sequential_spec`].
pub fn sequential_problem(x0: &str, x1: &str) -> SequentialProblem {
    SequentialProblem::new("X0", &["Z"], "X1", "Y", x0, x1)
}

/// Binary `X0 → Z → X1 → Y` with `X1` reading `X0` and `Z`, and `Y` reading
/// all three, every parent read as received. With `confounded` set, `Y`
/// reads the intention of `X0` instead, and that intention moves
/// `P(Y=1)` by a random amount in `[0.3, 0.5]`.
pub fn sequential_spec(rng: &mut Rng, confounded: bool) -> StructuralSpec {
    let names = ["X0", "Z", "X1", "Y"];
    let variables: Vec<VariableDecl> = names.iter().map(|n| VariableDecl::numeric(n, 2)).collect();
    let mut rows = |n: usize| -> Vec<f64> { (0..n).flat_map(|_| rng.distribution(2)).collect() };
    let x0 = rows(1);
    let z = rows(2);
    let x1 = rows(4);
    let (y_parent, y_table) = if confounded {
        let delta = rng.uniform(0.3, 0.5);
        // rows by (intention, z, x1); the intention adds delta to P(Y=1)
        let base: Vec<f64> = (0..4).map(|_| rng.uniform(0.1, 0.5)).collect();
        let table = (0..8)
            .flat_map(|row| {
                let p = base[row % 4] + if row >= 4 { delta } else { 0.0 };
                [1.0 - p, p]
            })
            .collect();
        (ParentRef::intention("X0"), table)
    } else {
        (ParentRef::received("X0"), rows(8))
    };
    let mech = |v: &str, parents: Vec<ParentRef>, table: Vec<f64>| Mechanism {
        variable: v.into(),
        parents,
        table,
    };
    StructuralSpec {
        variables,
        targets: vec!["X0".into(), "X1".into()],
        order: names.iter().map(|&n| n.into()).collect(),
        mechanisms: vec![
            mech("X0", vec![], x0),
            mech("Z", vec![ParentRef::received("X0")], z),
            mech("X1", vec![ParentRef::received("X0"), ParentRef::received("Z")], x1),
            mech(
                "Y",
                vec![y_parent, ParentRef::received("Z"), ParentRef::received("X1")],
                y_table,
            ),
        ],
    }
}
