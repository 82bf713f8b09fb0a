use std::io::Write;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use quotcrit::cli::Report;

fn quotcrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quotcrit")).args(args).output().expect("binary runs")
}

static NEXT: AtomicUsize = AtomicUsize::new(0);

fn with_file(contents: &str, args: &[&str]) -> Output {
    let dir = std::env::temp_dir().join(format!("quotcrit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{}.json", NEXT.fetch_add(1, Ordering::Relaxed)));
    std::fs::File::create(&path).unwrap().write_all(contents.as_bytes()).unwrap();
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.push(&p);
    let out = quotcrit(&all);
    let _ = std::fs::remove_file(&path);
    out
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TRIANGLE: &str = r#"{"mode":"geometric","n":2,"maximal_simplices":[[0,1,2]],
  "facets":{"F1":[[0,1]],"F2":[[1,2]],"F3":[[0,2]]}}"#;

#[test]
fn examples_from_the_command_line() {
    let o = quotcrit(&["analyze", "--example", "mobius"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: syzygy order 0 (not equivariantly formal)"));

    let o = quotcrit(&["analyze", "--example", "triangle-space", "--param", "m=6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.verdict, "syzygy order 1 (torsion-free, not free)");
    assert_eq!(r.witnesses, vec!["M"]);
    let m = r.b_cohomology.iter().find(|f| f.name == "M").unwrap();
    assert_eq!(m.h(2, 0), 1);

    let o = quotcrit(&["analyze", "--example", "square", "--hilbert-degree", "10", "--format", "json"]);
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.hilbert_series[0].coefficients, vec![1, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40]);
    assert_eq!(r.hilbert_series[0].display, "(1 + 2t + t^2)/(1-t)^2");

    let o = quotcrit(&["analyze", "--example", "cylinder", "--check", "--audit-restrictions"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("free (equivariantly formal)"));
    assert!(!stdout(&o).contains("FAIL"));

    let o = quotcrit(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["interval", "triangle", "square", "cylinder", "mobius", "triangle-space", "triangle-space-abstract"] {
        assert!(stdout(&o).lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn json_reports_are_canonical() {
    for ex in ["triangle", "mobius", "triangle-space-abstract"] {
        let o = quotcrit(&["analyze", "--example", ex, "--format", "json", "--check", "--audit-restrictions"]);
        assert_eq!(o.status.code(), Some(0), "{ex}");
        let text = stdout(&o);
        let back: Report = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&back).unwrap() + "\n";
        assert_eq!(again, text);
    }
}

#[test]
fn text_and_json_agree() {
    let json: Report =
        serde_json::from_str(&stdout(&quotcrit(&["analyze", "--example", "mobius", "--format", "json"]))).unwrap();
    let text = stdout(&quotcrit(&["analyze", "--example", "mobius"]));
    assert!(text.contains(&format!("verdict: {}", json.verdict)));
    for b in &json.b_cohomology {
        assert!(text.contains(&format!("  {}  rank {}  m = {}", b.name, b.rank, b.obstruction)));
    }
    for h in &json.hilbert_series {
        let coeffs = h.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
        assert!(text.contains(&format!("coefficients [{coeffs}]")));
    }
}

#[test]
fn files_and_validation() {
    let o = with_file(TRIANGLE, &["validate"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("7 faces"));
    let o = with_file(TRIANGLE, &["analyze"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("free (equivariantly formal)"));

    let preset = r#"{"mode":"abstract","n":1,
      "faces":[{"name":"a","rank":0,"cohomology":[1]},{"name":"b","rank":0,"cohomology":[1]},
               {"name":"M","rank":1,"cohomology":[0,1],"contains":["a","b"]}],
      "d1":[{"from":"a","to":"M","degree":0,"matrix":[[1]]},{"from":"b","to":"M","degree":0,"matrix":[[1]]}]}"#;
    let o = with_file(preset, &["analyze", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.formal);
}

#[test]
fn exit_codes_for_bad_input() {
    let cases: &[(&str, i32)] = &[
        ("{not json", 2),
        ("[1, 2]", 2),
        (r#"{"mode":"geometric","n":2}"#, 2),
        (r#"{"mode":"polar","n":2}"#, 2),
        (r#"{"mode":"geometric","n":2,"maximal_simplices":[[0,1,2]],"facets":{},"colour":1}"#, 2),
        (r#"{"mode":"geometric","n":2,"maximal_simplices":[[0,0,2]],"facets":{}}"#, 2),
        (r#"{"mode":"geometric","n":2,"maximal_simplices":[[0,1,2]],"facets":{"F":[[0,7]]}}"#, 2),
        // an interior edge as a facet
        (r#"{"mode":"geometric","n":2,"maximal_simplices":[[0,1,2],[1,2,3]],"facets":{"F":[[1,2]]}}"#, 2),
        // two facets meet at a vertex with n = 1
        (r#"{"mode":"geometric","n":1,"maximal_simplices":[[0,1,2]],"facets":{"A":[[0,1]],"B":[[1,2]]}}"#, 2),
        (r#"{"mode":"abstract","n":1,"faces":[{"name":"a","rank":2,"cohomology":[1]}]}"#, 2),
        (r#"{"mode":"abstract","n":1,"faces":[{"name":"a","rank":0,"cohomology":[1],"extra":0}]}"#, 2),
        // two facets overlapping along an edge
        (r#"{"mode":"geometric","n":2,"maximal_simplices":[[0,1,2]],"facets":{"A":[[0,1],[1,2]],"B":[[1,2],[0,2]]}}"#, 3),
    ];
    for (input, code) in cases {
        let o = with_file(input, &["analyze"]);
        assert_eq!(o.status.code(), Some(*code), "{input}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = with_file(r#"{"mode":"geometric","n":2,"maximal_simplices":[[0,1,2]],"facets":{"F":[[0,7]]}}"#, &["validate"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("facets.F[0]"));
    assert_eq!(quotcrit(&["analyze", "--example", "mobius", "--param", "m=2"]).status.code(), Some(2));
    assert_eq!(quotcrit(&["analyze"]).status.code(), Some(2));
    assert_eq!(quotcrit(&["analyze", "/no/such/file.json"]).status.code(), Some(2));
}
