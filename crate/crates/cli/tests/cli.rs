use std::path::PathBuf;
use std::process::{Command, Output};

use bitangent_cli::corpus::{builtin, read_corpus, write_corpus, BUILTINS};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bitangents"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

/// The report without its timing field.
fn certified(out: &Output) -> Value {
    let mut v = json(out);
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bitangent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn input_errors_exit_with_two() {
    let bad = temp_path("bad.txt");
    std::fs::write(&bad, "q | 4,0,0:1 3,0,0:2\n").unwrap();
    let singular = temp_path("singular.txt");
    std::fs::write(&singular, "cusp | 2,0,2:1 0,4,0:1\n").unwrap();
    for args in [
        vec!["bitangents", bad.to_str().unwrap()],
        vec!["bitangents", singular.to_str().unwrap()],
        vec!["bitangents", "no-such-quartic"],
        vec!["signed-count", "trott", "--line", "0", "0", "0"],
        vec!["band", "trott", "--slope", "1/0"],
        vec![
            "verify",
            "--suite",
            "main",
            "--corpus",
            bad.to_str().unwrap(),
        ],
        vec!["verify", "--suite", "nonsense"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = run(&["bitangents", singular.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not smooth"));
}

#[test]
fn reports_are_versioned_and_reproducible() {
    let a = run(&["bitangents", "fermat", "--seed", "3"]);
    let b = run(&["bitangents", "fermat", "--seed", "3"]);
    assert!(a.status.success());
    let r = certified(&a);
    assert_eq!(r, certified(&b));
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "bitangents");
    let o = &r["output"];
    assert_eq!(o["real"], 4);
    assert_eq!(o["real_non_split"], 4);
    assert_eq!(o["complex_pairs"], 12);
    assert_eq!(o["signed_count"], 4);
}

#[test]
fn corpus_files_round_trip_and_select_records() {
    let records: Vec<_> = BUILTINS.iter().map(|n| builtin(n).unwrap()).collect();
    let text = write_corpus(&records);
    let path = temp_path("builtins.txt");
    std::fs::write(&path, &text).unwrap();
    let back = read_corpus(&path).unwrap();
    assert_eq!(back, records);
    assert_eq!(write_corpus(&back), text);

    let out = run(&[
        "signed-count",
        path.to_str().unwrap(),
        "--name",
        "trott",
        "--line",
        "-1.25",
        "1",
        "1.233",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["output"]["signed_count"], 6);
}

#[test]
fn trott_band_of_slope_five_quarters() {
    let out = run(&["band", "trott", "--slope", "5/4"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["output"]["counts"], serde_json::json!([0, 2, 4, 6, 8]));
}

#[test]
fn plots_are_deterministic_and_colored_by_type() {
    let a = temp_path("trott-a.svg");
    let b = temp_path("trott-b.svg");
    for p in [&a, &b] {
        let out = run(&[
            "plot",
            "trott",
            "--out",
            p.to_str().unwrap(),
            "--resolution",
            "128",
        ]);
        assert!(out.status.success());
        let o = &json(&out)["output"];
        assert_eq!(o["lines_plus"], 16);
        assert_eq!(o["lines_minus"], 12);
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.contains(r#"version="1.1""#));
    assert_eq!(svg.matches("#d62728").count(), 16);
    assert_eq!(svg.matches("#1f77b4").count(), 12);

    let f = temp_path("fermat.svg");
    let out = run(&[
        "plot",
        "fermat",
        "--out",
        f.to_str().unwrap(),
        "--line",
        "1",
        "2",
        "5",
        "--resolution",
        "64",
    ]);
    assert!(out.status.success());
    let o = &json(&out)["output"];
    assert_eq!(o["curve_segments"], 0);
    assert_eq!(o["lines_plus"], 4);
    assert_eq!(o["lines_minus"], 0);
    assert_eq!(o["line_at_infinity_drawn"], true);
    let svg = std::fs::read_to_string(&f).unwrap();
    assert!(svg.contains("stroke-dasharray"));
}

#[test]
fn verify_suites_report_their_cases() {
    let out = run(&["verify", "--suite", "sametype", "--n", "5", "--seed", "1"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["output"]["passed"], 5);

    let corpus = temp_path("cap.txt");
    std::fs::write(
        &corpus,
        "trott | 4,0,0:144 2,2,0:350 2,0,2:-225 0,4,0:144 0,2,2:-225 0,0,4:81\n\
         hyperbolic | 4,0,0:1 0,4,0:-1 0,0,4:1 | meets V(z) in real points\n",
    )
    .unwrap();
    let out = run(&[
        "verify",
        "--suite",
        "cap",
        "--corpus",
        corpus.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let o = &json(&out)["output"];
    assert_eq!(o["passed"], 1);
    assert_eq!(o["skipped"], 1);

    let trott = temp_path("trott.txt");
    std::fs::write(
        &trott,
        "trott | 4,0,0:144 2,2,0:350 2,0,2:-225 0,4,0:144 0,2,2:-225 0,0,4:81\n",
    )
    .unwrap();
    let out = run(&[
        "verify",
        "--suite",
        "conjecture",
        "--corpus",
        trott.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a proof"));
    let r = json(&out);
    assert!(r["output"]["banner"]
        .as_str()
        .unwrap()
        .contains("not a proof"));
    assert_eq!(
        r["output"]["cases"][0]["detail"]["counts"],
        serde_json::json!([0, 2, 4, 6, 8])
    );
}
