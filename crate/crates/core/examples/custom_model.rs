//! Reading a model in the JSON input format and producing the report.

use quotcrit::cli::{analyze_input, parse_input, render_text, Options};

const ANNULUS: &str = r#"{
  "mode": "geometric",
  "n": 1,
  "maximal_simplices": [[0,1,3],[1,3,4],[1,2,4],[2,4,5],[0,2,5],[0,3,5]],
  "facets": {"inner": [[0,1],[1,2],[0,2]], "outer": [[3,4],[4,5],[3,5]]}
}"#;

fn main() {
    let input = parse_input(ANNULUS.as_bytes()).unwrap();
    let opts = Options { hilbert_degree: 6, check: true, audit_restrictions: true };
    let report = analyze_input(&input, "annulus", &opts).unwrap();
    print!("{}", render_text(&report));
}
