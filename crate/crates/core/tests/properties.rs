use dtcheck_core::consistency::check_all_targets;
use dtcheck_core::dag::{d_separated, implied_independencies, random_dag, AugmentedDag};
use dtcheck_core::eci::{parse_statement, IndicatorMode, Statement, Term};
use dtcheck_core::gcomp::{g_formula, sequential_problem, sequential_spec};
use dtcheck_core::model::validate_model;
use dtcheck_core::random::{generate, GeneratorConfig, GeneratorKind};
use dtcheck_core::rng::Rng;
use dtcheck_core::structural::generate_structural_model;
use proptest::prelude::*;

const NAMES: [&str; 4] = ["A", "B", "C", "D"];

fn mode() -> impl Strategy<Value = IndicatorMode> {
    prop_oneof![
        Just(IndicatorMode::Full),
        Just(IndicatorMode::Checked),
        Just(IndicatorMode::FixedIdle),
        (0..3u8).prop_map(|v| IndicatorMode::FixedValue(v.to_string())),
    ]
}

/// Statements over disjoint variables with each indicator at most once.
fn statement() -> impl Strategy<Value = Statement> {
    (
        proptest::collection::vec(0..4usize, 4),
        proptest::collection::vec((0..3usize, mode()), 4),
    )
        .prop_filter_map("empty left side", |(roles, inds)| {
            let mut s = Statement::new::<&str>(&[]);
            for (name, role) in NAMES.iter().zip(roles) {
                match role {
                    0 => s.left.push(name.to_string()),
                    1 => s.group.push(Term::var(name)),
                    2 => s.given.push(Term::var(name)),
                    _ => {}
                }
            }
            for (name, (role, m)) in NAMES.iter().zip(inds) {
                match (role, m) {
                    (0, m @ (IndicatorMode::Full | IndicatorMode::Checked)) => s.group.push(Term::indicator(name, m)),
                    (1, m) => s.given.push(Term::indicator(name, m)),
                    _ => {}
                }
            }
            (!s.left.is_empty()).then_some(s)
        })
}

fn config(kind: GeneratorKind) -> GeneratorConfig {
    GeneratorConfig {
        kind,
        max_vars: 4,
        max_card: 3,
        max_targets: 2,
        ..GeneratorConfig::default()
    }
}

/// Reachability of `y` from `x` along paths that are active given `z`,
/// enumerated path by path.
fn connected_by_paths(dag: &AugmentedDag, x: &str, y: &str, z: &[String]) -> bool {
    let nodes = dag.all_nodes();
    let edge = |a: &str, b: &str| dag.edges.iter().any(|(p, c)| p == a && c == b);
    let descendant_in_z = |v: &str| {
        let mut stack = vec![v.to_string()];
        let mut seen = Vec::new();
        while let Some(u) = stack.pop() {
            if z.contains(&u) {
                return true;
            }
            if !seen.contains(&u) {
                stack.extend(dag.children(&u).into_iter().map(String::from));
                seen.push(u);
            }
        }
        false
    };
    fn go(
        nodes: &[String],
        path: &mut Vec<String>,
        y: &str,
        ok: &dyn Fn(&str, &str, &str) -> bool,
        adj: &dyn Fn(&str, &str) -> bool,
    ) -> bool {
        let u = path.last().unwrap().clone();
        if u == y {
            return true;
        }
        for v in nodes {
            if path.contains(v) || !adj(&u, v) {
                continue;
            }
            if path.len() >= 2 && !ok(&path[path.len() - 2], &u, v) {
                continue;
            }
            path.push(v.clone());
            if go(nodes, path, y, ok, adj) {
                return true;
            }
            path.pop();
        }
        false
    }
    let ok = |a: &str, m: &str, b: &str| {
        if edge(a, m) && edge(b, m) {
            descendant_in_z(m)
        } else {
            !z.iter().any(|q| q == m)
        }
    };
    let adj = |a: &str, b: &str| edge(a, b) || edge(b, a);
    go(&nodes, &mut vec![x.to_string()], y, &ok, &adj)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn format_parse_round_trip(s in statement()) {
        let text = s.to_string();
        let back = parse_statement(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, s);
    }

    #[test]
    fn structural_models_are_valid_and_consistent(seed in any::<u64>()) {
        let m = generate(&config(GeneratorKind::Structural), seed).unwrap().model;
        prop_assert!(validate_model(&m).is_empty());
        prop_assert!(check_all_targets(&m, 1e-12).unwrap().holds());
    }

    #[test]
    fn consistent_random_models_are_consistent(seed in any::<u64>()) {
        let m = generate(&config(GeneratorKind::ConsistentRandom), seed).unwrap().model;
        prop_assert!(validate_model(&m).is_empty());
        prop_assert!(check_all_targets(&m, 1e-9).unwrap().holds());
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>()) {
        for kind in [GeneratorKind::Structural, GeneratorKind::ConsistentRandom, GeneratorKind::Random] {
            let a = generate(&config(kind), seed).unwrap().model;
            let b = generate(&config(kind), seed).unwrap().model;
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn g_formula_is_a_distribution(seed in any::<u64>(), confounded in any::<bool>(), a in 0..2u8, b in 0..2u8) {
        let m = generate_structural_model(&sequential_spec(&mut Rng::new(seed), confounded)).unwrap();
        let g = g_formula(&m, &sequential_problem(&a.to_string(), &b.to_string())).unwrap();
        prop_assert!(g.iter().all(|&p| p >= 0.0));
        prop_assert!((g.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn d_separation_matches_path_enumeration(seed in any::<u64>(), n in 2..6usize, k in 0..3usize) {
        let dag = random_dag(n, k, 0.5, &mut Rng::new(seed));
        for dag in [dag.clone(), dag.itt_projection()] {
            let listed = implied_independencies(&dag, 2);
            let all = dag.all_nodes();
            for t in &listed {
                prop_assert!(!connected_by_paths(&dag, &t.x, &t.y, &t.z));
            }
            for i in 0..all.len() {
                for j in 0..all.len() {
                    if i == j {
                        continue;
                    }
                    let sep = d_separated(&dag, &all[i..=i], &all[j..=j], &[] as &[String]).unwrap();
                    prop_assert_eq!(sep, !connected_by_paths(&dag, &all[i], &all[j], &[]));
                }
            }
        }
    }
}
