use analytic_theories::cli::main_with;

fn run(args: &str) -> (String, i32) {
    let mut argv = vec!["antheory".to_string()];
    argv.extend(args.split_whitespace().map(str::to_string));
    main_with(&argv)
}

#[test]
fn exit_codes() {
    assert_eq!(run("classify monoid").1, 0);
    assert_eq!(run("refute-rigidity commutative-monoid").1, 1);
    assert_eq!(run("refute-rigidity monoid").1, 2);
    assert_eq!(run("no-such-command").1, 3);
    assert_eq!(run("classify no-such-theory").1, 3);
    assert_eq!(run("--max-arity 0 classify monoid").1, 3);
    assert_eq!(run("--help").1, 0);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        "refute-rigidity commutative-monoid",
        "--set-size 2 eval-monad commutative-monoid",
        "--max-arity 2 verify --suite monad-laws --operad terminal",
        "--format json kappa-check --operad sym",
        "hom monoid 2 1",
    ] {
        let first = run(args);
        assert_eq!(first, run(args), "{args}");
        assert!(first.0.contains("result:") || first.0.contains("\"result\""), "{args}: {}", first.0);
    }
}

#[test]
fn commutative_monoid_matches_terminal() {
    let (coend, _) = run("--max-arity 3 --set-size 2 eval-monad commutative-monoid");
    let (analytic, _) = run("--max-arity 3 --set-size 2 eval-monad terminal --operad");
    assert!(coend.contains("size: 10"), "{coend}");
    assert!(analytic.contains("size: 10"), "{analytic}");
}

#[test]
fn json_reports_parse() {
    let (out, code) = run("--format json --max-arity 2 verify --suite operad-laws --operad sym");
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["result"], "pass");
    assert!(value["checks"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn factorize_a_span() {
    let (out, code) = run("factorize --phi 1,1 --fun 1,2 --source 1 --target 2 --ops [1],[1]");
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("factorization"), "{out}");
}
