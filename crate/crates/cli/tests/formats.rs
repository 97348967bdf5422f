use std::path::{Path, PathBuf};

use dtcheck::formats::{load_dag, load_model, save_dag, save_model, FormatError};
use dtcheck_core::dag::AugmentedDag;
use dtcheck_core::{IndicatorState, MultiRegimeModel, RegimeAssignment, VariableDecl};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[test]
fn m_ty_file_matches_the_constructed_model() {
    let m = load_model(&fixture("m_ty.json")).unwrap();
    let built = MultiRegimeModel::new(
        vec![VariableDecl::numeric("T", 2), VariableDecl::numeric("Y", 2)],
        &["T"],
    )
    .unwrap()
    .with_regime(RegimeAssignment(vec![IndicatorState::Idle]), vec![0.4, 0.1, 0.1, 0.4])
    .with_regime(RegimeAssignment(vec![IndicatorState::Set(0)]), vec![0.4, 0.1, 0.4, 0.1])
    .with_regime(RegimeAssignment(vec![IndicatorState::Set(1)]), vec![0.1, 0.4, 0.1, 0.4]);
    assert_eq!(m, built);
}

#[test]
fn models_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["m_ty.json", "m_viol.json"] {
        let m = load_model(&fixture(name)).unwrap();
        let p = dir.path().join(name);
        save_model(&p, &m).unwrap();
        assert_eq!(load_model(&p).unwrap(), m);
    }
}

#[test]
fn labels_and_omitted_targets() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("labels.json");
    std::fs::write(
        &p,
        r#"{"variables":[{"name":"T","domain":["lo","hi"]},{"name":"Y","domain":["n","y"]}],
            "targets":["T"],
            "regimes":[{"assignment":{},"probs":[0.25,0.25,0.25,0.25]},
                       {"assignment":{"T":"hi"},"probs":[0,0,0.5,0.5]}]}"#,
    )
    .unwrap();
    let m = load_model(&p).unwrap();
    assert!(m.has_regime(&RegimeAssignment(vec![IndicatorState::Idle])));
    assert!(m.has_regime(&RegimeAssignment(vec![IndicatorState::Set(1)])));
}

#[test]
fn bad_files_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.json", "{"),
        (
            "value.json",
            r#"{"variables":[{"name":"T","domain":["0","1"]}],"targets":["T"],"regimes":[{"assignment":{"T":"7"},"probs":[1,0]}]}"#,
        ),
        (
            "target.json",
            r#"{"variables":[{"name":"T","domain":["0","1"]}],"targets":["Q"],"regimes":[]}"#,
        ),
    ];
    for (name, text) in cases {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        assert!(matches!(load_model(&p), Err(FormatError::Parse { .. })), "{name}");
    }
    assert!(matches!(
        load_model(Path::new("/definitely/missing.json")),
        Err(FormatError::Read { .. })
    ));
}

#[test]
fn dags_round_trip() {
    let d = load_dag(&fixture("chain.dag.json")).unwrap();
    assert_eq!(
        d,
        AugmentedDag::from_structure(&["T", "M", "Y"], &["T"], &[("T", "M"), ("M", "Y")], &["T", "M", "Y"])
    );
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("d.json");
    save_dag(&p, &d).unwrap();
    assert_eq!(load_dag(&p).unwrap(), d);
}
