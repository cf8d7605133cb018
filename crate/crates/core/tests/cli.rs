use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuephrase"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_train_render_predict() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("planted.csv");
    let model = dir.path().join("model.json");
    let o = run(&[
        "corpus",
        "gen",
        "--preset",
        "planted",
        "--seed",
        "3",
        "--out",
        p(&corpus),
    ]);
    assert!(o.status.success());

    let o = run(&[
        "train",
        "--learner",
        "rules",
        "--features",
        "P-P",
        "--in",
        p(&corpus),
        "--out",
        p(&model),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["render", "--model", p(&model)]);
    assert_eq!(
        stdout(&o),
        "if position in intonational phrase ≥ 2 then sentential\ndefault is on discourse\n"
    );

    let o = run(&["predict", "--model", p(&model), "--in", p(&corpus)]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("error rate 0.00% (0/1000)\n"));

    let o = run(&[
        "train",
        "--learner",
        "tree",
        "--features",
        "P-P",
        "--in",
        p(&corpus),
        "--out",
        p(&model),
    ]);
    assert!(o.status.success());
    let o = run(&["render", "--model", p(&model)]);
    assert_eq!(
        stdout(&o),
        "if position in intonational phrase ≤ 1 then discourse\nelseif position in intonational phrase > 1 then sentential\n"
    );
}

#[test]
fn corpus_stats_reports_judge_table() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("paper.csv");
    assert!(run(&[
        "corpus",
        "gen",
        "--preset",
        "paper",
        "--seed",
        "1",
        "--out",
        p(&corpus)
    ])
    .status
    .success());
    let o = run(&["corpus", "stats", p(&corpus)]);
    let text = stdout(&o);
    assert!(
        text.contains("D/D        341             202         139"),
        "{text}"
    );
    assert!(text.contains("total      953             509         444"));
    assert!(text.contains("classifiable: 878"));
}

#[test]
fn experiment_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("paper.csv");
    let now = dir.path().join("now.csv");
    run(&[
        "corpus",
        "gen",
        "--preset",
        "paper",
        "--seed",
        "2",
        "--out",
        p(&corpus),
    ]);
    run(&[
        "corpus",
        "gen",
        "--preset",
        "now",
        "--seed",
        "2",
        "--out",
        p(&now),
    ]);
    let args = [
        "experiment",
        "--set",
        "2",
        "--learner",
        "tree",
        "--in",
        p(&corpus),
        "--seed",
        "4",
        "--features",
        "P-P,O-P*",
        "--format",
        "csv",
    ];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("feature_set,learner,reference,column,error,margin,flag\n"));

    let o = run(&[
        "experiment",
        "--set",
        "1",
        "--learner",
        "tree",
        "--in",
        p(&corpus),
        "--train",
        p(&now),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("set 1, learner tree\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.csv");
    run(&[
        "corpus",
        "gen",
        "--preset",
        "planted",
        "--count",
        "50",
        "--out",
        p(&corpus),
    ]);

    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["experiment", "--set", "5", "--in", p(&corpus)])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "experiment",
            "--set",
            "2",
            "--learner",
            "svm",
            "--in",
            p(&corpus)
        ])
        .status
        .code(),
        Some(1)
    );
    // set 1 without a training corpus is a configuration error
    assert_eq!(
        run(&["experiment", "--set", "1", "--in", p(&corpus)])
            .status
            .code(),
        Some(1)
    );
    let missing = dir.path().join("missing.csv");
    assert_eq!(
        run(&["corpus", "stats", p(&missing)]).status.code(),
        Some(2)
    );

    let bad = dir.path().join("bad.csv");
    let text = std::fs::read_to_string(&corpus)
        .unwrap()
        .replacen("deaccented", "whispered", 1);
    std::fs::write(&bad, text).unwrap();
    let o = run(&["corpus", "stats", p(&bad)]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );

    let model = dir.path().join("m.json");
    std::fs::write(&model, "{not json").unwrap();
    assert_eq!(
        run(&["render", "--model", p(&model)]).status.code(),
        Some(3)
    );
    let o = run(&[
        "train",
        "--learner",
        "tree",
        "--features",
        "nope",
        "--in",
        p(&corpus),
        "--out",
        p(&model),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("valid names"));
}
