use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::consistency::check_all_targets;
use crate::dag::AugmentedDag;
use crate::eci::{evaluate, parse_statement, Statement};
use crate::model::full_product;
use crate::structural::{generate_structural_model, Mechanism, ParentRef, StructuralSpec};
use crate::table::for_each_point;
use crate::{Error, MultiRegimeModel, Result, VariableDecl, Verdict};

const ROW_TOL: f64 = 1e-12;

fn check_row(name: &str, row: &[f64]) -> Result<()> {
    let s: f64 = row.iter().sum();
    if row.iter().any(|&p| p.is_nan() || p < 0.0) || (s - 1.0).abs() > ROW_TOL {
        return Err(Error::InvalidParams(format!("{name} must be a probability vector")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FatHandParams {
    /// Distribution of the intention of `T`.
    pub t: Vec<f64>,
    /// `P(Y | intention of T)`, one row per value of `T`.
    pub y: Vec<f64>,
    pub y_card: usize,
}

impl Default for FatHandParams {
    fn default() -> Self {
        FatHandParams {
            t: vec![0.5, 0.5],
            y: vec![0.8, 0.2, 0.2, 0.8],
            y_card: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FatHand {
    pub spec: StructuralSpec,
    pub model: MultiRegimeModel,
    /// `F(T) → T`, `F(T) → Y` and `T → Y`: the intervention reaches `Y`
    /// through a second channel.
    pub dag: AugmentedDag,
}

/// `Y` reads the intention of `T` rather than the received value, so the
/// response law is the same in every regime and `Y _||_ F(T) | T` holds,
/// although the graph leaves `F(T) → Y` open.
pub fn build_fat_hand_model(params: &FatHandParams) -> Result<FatHand> {
    let tc = params.t.len();
    if tc < 2 || params.y_card < 2 {
        return Err(Error::InvalidParams("T and Y need at least two values".into()));
    }
    if params.y.len() != tc * params.y_card {
        return Err(Error::InvalidParams(format!(
            "the response table needs {} entries",
            tc * params.y_card
        )));
    }
    check_row("the T distribution", &params.t)?;
    for row in params.y.chunks(params.y_card) {
        check_row("each response row", row)?;
    }
    let spec = StructuralSpec {
        variables: vec![
            VariableDecl::numeric("T", tc),
            VariableDecl::numeric("Y", params.y_card),
        ],
        targets: vec!["T".into()],
        order: vec!["T".into(), "Y".into()],
        mechanisms: vec![
            Mechanism {
                variable: "T".into(),
                parents: vec![],
                table: params.t.clone(),
            },
            Mechanism {
                variable: "Y".into(),
                parents: vec![ParentRef::intention("T")],
                table: params.y.clone(),
            },
        ],
    };
    let model = generate_structural_model(&spec)?;
    let mut dag = AugmentedDag::from_structure(&["T", "Y"], &["T"], &[("T", "Y")], &["T", "Y"]);
    dag.edges.push(("F(T)".into(), "Y".into()));
    Ok(FatHand { spec, model, dag })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContextualKind {
    /// `T → M → Y` where `Y` also reads the intention of `T`.
    #[default]
    Mediator,
    /// `Y` only registers whether any intervention took place.
    InterventionFlag,
    /// `Y` is constant.
    ConstantResponse,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextualParams {
    pub kind: ContextualKind,
    /// `P(Y=1)` under any non-idle `F(T)`, for the flag model.
    pub p_intervened: f64,
    /// `P(Y=1)` when idle, for the flag model.
    pub p_idle: f64,
}

impl Default for ContextualParams {
    fn default() -> Self {
        ContextualParams {
            kind: ContextualKind::Mediator,
            p_intervened: 0.7,
            p_idle: 0.3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextualReport {
    pub kind: ContextualKind,
    pub model: MultiRegimeModel,
    /// Present when the model comes from a structural spec.
    pub spec: Option<StructuralSpec>,
    pub checked_statement: Statement,
    pub full_statement: Statement,
    pub checked: Verdict,
    pub full: Verdict,
    /// Distributional consistency for every target.
    pub consistent: bool,
    /// Witnesses of both verdicts replay to their recorded discrepancy.
    pub certified: bool,
}

fn binary_rows(p: &[f64]) -> Vec<f64> {
    p.iter().flat_map(|&q| [1.0 - q, q]).collect()
}

fn mediator_spec() -> StructuralSpec {
    // P(Y=1 | intention i, m) = 0.1 + 0.6 i + 0.2 m
    StructuralSpec {
        variables: ["T", "M", "Y"].iter().map(|n| VariableDecl::numeric(n, 2)).collect(),
        targets: vec!["T".into()],
        order: vec!["T".into(), "M".into(), "Y".into()],
        mechanisms: vec![
            Mechanism {
                variable: "T".into(),
                parents: vec![],
                table: vec![0.5, 0.5],
            },
            Mechanism {
                variable: "M".into(),
                parents: vec![ParentRef::received("T")],
                table: vec![0.9, 0.1, 0.1, 0.9],
            },
            Mechanism {
                variable: "Y".into(),
                parents: vec![ParentRef::intention("T"), ParentRef::received("M")],
                table: binary_rows(&[0.1, 0.3, 0.7, 0.9]),
            },
        ],
    }
}

/// `T` fair, `M` a noisy copy of the received `T`, and `Y` independent of
/// both with `P(Y=1)` depending only on whether `F(T)` is idle.
fn flag_model(p_intervened: f64, p_idle: f64) -> Result<MultiRegimeModel> {
    let mut m = MultiRegimeModel::new(
        ["T", "M", "Y"].iter().map(|n| VariableDecl::numeric(n, 2)).collect(),
        &["T"],
    )?;
    for a in full_product(&[2]) {
        let (received, py) = match a.0[0] {
            crate::IndicatorState::Idle => (None, p_idle),
            crate::IndicatorState::Set(s) => (Some(s), p_intervened),
        };
        let mut probs = Vec::with_capacity(8);
        for_each_point(&[2, 2, 2], |x| {
            let r = received.unwrap_or(x[0]);
            let pm = if x[1] == r { 0.9 } else { 0.1 };
            let pyv = if x[2] == 1 { py } else { 1.0 - py };
            probs.push(0.5 * pm * pyv);
        });
        m.push_regime(a, probs);
    }
    Ok(m)
}

fn replays(model: &MultiRegimeModel, v: &Verdict) -> bool {
    match &v.witness {
        None => !v.fails(),
        Some(w) => w.replay(model).is_ok_and(|d| (d - w.discrepancy).abs() <= 1e-12),
    }
}

/// Builds the requested model and evaluates `Y _||_ F(T)! | M` against
/// `Y _||_ F(T) | M`. The checked form only compares intervened regimes,
/// so it can hold while the full form fails.
pub fn contextual_demo(params: &ContextualParams, tol: f64) -> Result<ContextualReport> {
    let (model, spec) = match params.kind {
        ContextualKind::Mediator => {
            let spec = mediator_spec();
            (generate_structural_model(&spec)?, Some(spec))
        }
        ContextualKind::InterventionFlag => {
            for (name, p) in [("p_intervened", params.p_intervened), ("p_idle", params.p_idle)] {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidParams(format!("{name} must lie in [0, 1]")));
                }
            }
            (flag_model(params.p_intervened, params.p_idle)?, None)
        }
        ContextualKind::ConstantResponse => {
            let mut spec = mediator_spec();
            spec.mechanisms[2].table = binary_rows(&[1.0; 4]);
            (generate_structural_model(&spec)?, Some(spec))
        }
    };
    let checked_statement = parse_statement("Y _||_ F(T)! | M").expect("fixed statement");
    let full_statement = parse_statement("Y _||_ F(T) | M").expect("fixed statement");
    let checked = evaluate(&model, &checked_statement, tol)?;
    let full = evaluate(&model, &full_statement, tol)?;
    let consistent = check_all_targets(&model, tol)?.holds();
    let certified = replays(&model, &checked) && replays(&model, &full);
    Ok(ContextualReport {
        kind: params.kind,
        model,
        spec,
        checked_statement,
        full_statement,
        checked,
        full,
        consistent,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::d_separated;
    use crate::model::marginal;

    #[test]
    fn fat_hand_ignorability_against_the_graph() {
        let fh = build_fat_hand_model(&FatHandParams::default()).unwrap();
        let s = parse_statement("Y _||_ F(T) | T").unwrap();
        assert!(evaluate(&fh.model, &s, 1e-12).unwrap().holds());
        assert!(!d_separated(&fh.dag, &["F(T)"], &["Y"], &["T"]).unwrap());
        let idle = marginal(&fh.model, &fh.model.idle_assignment(), &["Y"]).unwrap();
        for r in fh.model.regimes() {
            let y = marginal(&fh.model, &r.assignment, &["Y"]).unwrap();
            assert!(y.probs.iter().zip(&idle.probs).all(|(a, b)| (a - b).abs() < 1e-12));
        }
        assert!(check_all_targets(&fh.model, 1e-12).unwrap().holds());
    }

    #[test]
    fn fat_hand_params_are_checked() {
        let bad = FatHandParams {
            t: vec![0.5, 0.6],
            ..FatHandParams::default()
        };
        assert!(matches!(build_fat_hand_model(&bad), Err(Error::InvalidParams(_))));
        let short = FatHandParams {
            y: vec![1.0, 0.0],
            ..FatHandParams::default()
        };
        assert!(build_fat_hand_model(&short).is_err());
    }

    #[test]
    fn mediator_separates_checked_from_full() {
        let r = contextual_demo(&ContextualParams::default(), 1e-9).unwrap();
        assert!(r.checked.holds());
        assert!(r.full.fails());
        // idle given M=1: 0.1 + 0.6·0.9 + 0.2 = 0.84; F(T)=1 given M=1: 0.6
        assert!((r.full.max_discrepancy - 0.24).abs() < 1e-12);
        assert!(r.consistent && r.certified);
    }

    #[test]
    fn intervention_flag() {
        let p = ContextualParams {
            kind: ContextualKind::InterventionFlag,
            ..ContextualParams::default()
        };
        let r = contextual_demo(&p, 1e-9).unwrap();
        assert!(r.checked.holds());
        assert!((r.full.max_discrepancy - 0.4).abs() < 1e-12);
        assert!(!r.consistent);
        let bad = ContextualParams { p_idle: 1.5, ..p };
        assert!(contextual_demo(&bad, 1e-9).is_err());
    }

    #[test]
    fn constant_response_holds_both_ways() {
        let p = ContextualParams {
            kind: ContextualKind::ConstantResponse,
            ..ContextualParams::default()
        };
        let r = contextual_demo(&p, 1e-9).unwrap();
        assert!(r.checked.holds() && r.full.holds());
    }
}
