use std::process::Command;

use ehrmon_cli::model::{eval, MmModel, MunnKind, MunnModel, TermModel, TreeModel};
use ehrmon_cli::term::{parse, Term};
use ehrmon_cli::{run, Outcome, EXIT_USAGE};
use ehrmon_core::expansions::{munn_to_mm, MargolisMeakin};
use ehrmon_core::normalform::NormalForm;
use ehrmon_core::Alphabet;
use proptest::prelude::*;
use serde_json::Value;

fn ehrmon(args: &[&str]) -> Outcome {
    run(std::iter::once("ehrmon").chain(args.iter().copied()))
}

fn report(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {out:?}"))
}

#[test]
fn binary_reports_verdicts_through_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ehrmon");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let pass = status(&["check", "forbidden-config", "--example", "fi", "--depth", "5"]);
    assert_eq!(pass.status.code(), Some(0));
    let fail = status(&["check", "forbidden-config", "--a", "1", "--b", "1"]);
    assert_eq!(fail.status.code(), Some(1));
    let bad = status(&["check", "forbidden-config", "--depth", "x"]);
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn forbidden_config_examples_pass() {
    for example in ["fi", "freemonoid", "mm", "fad"] {
        let depth = if example == "mm" { "4" } else { "5" };
        let out = ehrmon(&["check", "forbidden-config", "--example", example, "--depth", depth]);
        assert_eq!(out.code, 0, "{example}: {out:?}");
        let r = report(&out);
        assert_eq!(r["result"], "pass");
        assert_eq!(r["failures"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn star_sets_of_the_two_generator_example() {
    let out = ehrmon(&["check", "forbidden-config", "--example", "fi", "--depth", "2"]);
    let stars = &report(&out)["stars"];
    let set =
        |i: usize| -> Vec<&str> { stars[i]["set"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect() };
    assert_eq!(set(0), ["1", "h^-1"]);
    assert_eq!(set(2), ["1", "g^-1", "g^-1 g^-1", "g^-1 g^-1 h^-1"]);
}

#[test]
fn trivial_forbidden_config_fails() {
    let out = ehrmon(&["check", "forbidden-config", "--a", "1", "--b", "1", "--depth", "3"]);
    assert_eq!(out.code, 1);
    let r = report(&out);
    assert_eq!(r["result"], "fail");
    assert!(r["failures"].as_array().unwrap().iter().any(|f| f["condition"] == "3i-incomparable"));
}

#[test]
fn user_supplied_configuration_in_a_group_model() {
    // The two-generator example spelled out as terms in S(F_{g,h}).
    let out = ehrmon(&[
        "check",
        "forbidden-config",
        "--model",
        "sdp:free",
        "--a",
        "g",
        "--b",
        "h",
        "--e",
        "(h g)^+",
        "--e",
        "(h g g)^+ (h g)^+",
        "--depth",
        "2",
    ]);
    assert_eq!(out.code, 0, "{out:?}");
    let short = ehrmon(&["check", "forbidden-config", "--model", "sdp:free", "--a", "g", "--b", "h", "--depth", "2"]);
    assert_eq!(short.code, 2, "missing projections make the verdict inconclusive");
}

#[test]
fn remaining_checks_pass_on_defaults() {
    let cases: &[&[&str]] = &[
        &["check", "bgr", "--model", "sdp:Z", "--depth", "5"],
        &["check", "bgr", "--model", "qn:3", "--depth", "4"],
        &["check", "ghe", "--model", "qn:3", "--depth", "4"],
        &["check", "triangle", "--depth", "3"],
        &["check", "annihilator", "--t", "a b^+", "--bound", "2"],
        &["check", "annihilator", "--t", "a b", "--bound", "2"],
        &["check", "left-intersect", "--s", "a", "--t", "b a", "--bound", "3"],
        &["check", "right-intersect", "--s", "a^+", "--t", "b^+", "--bound", "3"],
        &["check", "mm-fi-iso", "--bound", "4"],
        &["check", "theta-morphism", "--depth", "2", "--bound", "1"],
        &[
            "check",
            "lemma-m-n",
            "--model",
            "fad",
            "--a",
            "a",
            "--b",
            "b",
            "--depth",
            "2",
            "--witness",
            "(b a)^+,1",
            "--witness",
            "(b a a)^+,1",
            "--sample",
            "a",
            "--sample",
            "b^+",
        ],
    ];
    for args in cases {
        let out = ehrmon(args);
        assert_eq!(out.code, 0, "{args:?}: {out:?}");
        assert_eq!(report(&out)["check"], args[1]);
    }
}

#[test]
fn the_trivial_quotient_fails_the_condition_set() {
    let out = ehrmon(&["check", "ghe", "--model", "qn:1", "--depth", "3"]);
    assert_eq!(out.code, 1);
}

#[test]
fn malformed_parameters_are_usage_errors() {
    for args in [
        &["check", "bgr", "--model", "fad"][..],
        &["check", "lemma-m-n", "--a", "a", "--b", "b", "--witness", "(b a)^+"],
        &["check", "forbidden-config", "--model", "fad", "--a", "a"],
        &["eval", "x", "--model", "sdp:Z", "--format", "dot"],
        &["eval", "y", "--model", "sdp:Z"],
        &["enumerate", "--model", "fi"],
    ] {
        let out = ehrmon(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(out.stderr.starts_with("error"), "{out:?}");
    }
}

#[test]
fn eval_examples() {
    let out = ehrmon(&["eval", "x x^-1", "--model", "fi", "--format", "text"]);
    assert_eq!(out.stdout.trim(), "{1, x} @ 1");
    let out = ehrmon(&["eval", "a ^-1", "--model", "fad"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("inverse unsupported in model"));
    let out = ehrmon(&["eval", "(b a)^+", "--model", "fad", "--format", "text"]);
    // Branches print with their full subtree, so the nested idempotent shows.
    assert_eq!(out.stdout.trim(), "(b (a)^+)^+");
    let dot = ehrmon(&["eval", "b a", "--format", "dot"]);
    assert!(dot.stdout.starts_with("digraph"), "{dot:?}");
    let json = report(&ehrmon(&["eval", "b a"]));
    assert!(json.is_object());
}

#[test]
fn enumeration_counts() {
    let lines = |out: Outcome| out.stdout.lines().count();
    // 1, a⁺, b⁺, a, b and their stars: five FLAd trees, seven FAd trees.
    assert_eq!(lines(ehrmon(&["enumerate", "--model", "flad", "--bound", "1"])), 5);
    assert_eq!(lines(ehrmon(&["enumerate", "--model", "fad", "--bound", "1"])), 7);
    let a = ehrmon(&["enumerate", "--random", "5", "--bound", "6", "--seed", "9"]);
    let b = ehrmon(&["enumerate", "--random", "5", "--bound", "6", "--seed", "9"]);
    assert_eq!(a, b);
    assert_eq!(lines(a), 5);
}

fn terms(inverse: bool, star: bool) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just(Term::Identity), "[xy]".prop_map(Term::Generator)];
    leaf.prop_recursive(4, 24, 2, move |inner| {
        let mut options = vec![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::product(a, b)).boxed(),
            inner.clone().prop_map(Term::plus).boxed(),
        ];
        if star {
            options.push(inner.clone().prop_map(Term::star).boxed());
        }
        if inverse {
            options.push(inner.prop_map(Term::inverse).boxed());
        }
        proptest::strategy::Union::new(options)
    })
}

proptest! {
    #[test]
    fn free_inverse_agrees_with_expansion(t in terms(true, true)) {
        let mut fi = MunnModel::new(MunnKind::Inverse);
        let mut mm = MmModel { ctx: MargolisMeakin { alphabet: Alphabet::default() } };
        // Both models intern x before y so the symbols line up.
        for m in ["x", "y"] {
            fi.atom(m).unwrap();
            mm.atom(m).unwrap();
        }
        let a = eval(&mut fi, &t).unwrap();
        let b = eval(&mut mm, &t).unwrap();
        prop_assert_eq!(munn_to_mm(&a), b);
    }

    #[test]
    fn left_ehresmann_terms_agree_with_the_two_sided_model(t in terms(false, false)) {
        let (mut flad, mut fad) = (TreeModel::new(true), TreeModel::new(false));
        let a = eval(&mut flad, &t).unwrap();
        let b = eval(&mut fad, &t).unwrap();
        prop_assert!(a.is_left_ehresmann());
        prop_assert_eq!(flad.text(&a), fad.text(&b));
    }

    #[test]
    fn normal_forms_evaluate_to_the_tree(t in terms(false, false)) {
        let mut m = TreeModel::new(true);
        let tree = eval(&mut m, &t).unwrap();
        let nf = NormalForm::of_tree(&tree);
        prop_assert!(nf.check_normal_conditions());
        prop_assert_eq!(nf.eval_to_tree(), tree);
    }

    #[test]
    fn printed_terms_evaluate_like_the_original(t in terms(false, true)) {
        let mut m = TreeModel::new(false);
        let a = eval(&mut m, &t).unwrap();
        let b = eval(&mut m, &parse(&t.to_string()).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
