use std::path::PathBuf;

use serde_json::Value;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Out {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", self.stdout))
    }
}

fn run(args: &[&str], stdin: &str) -> Out {
    let argv = std::iter::once("polywalk").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = polywalk::cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Out { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let out = run(&full, "");
    assert_eq!(out.code, 0, "gen {args:?}: {}", out.stderr);
    out.stdout
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polywalk-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const FAMILIES: &[&[&str]] = &[
    &["fig2", "--which", "a"],
    &["fig2", "--which", "d"],
    &["fig3"],
    &["cube", "--n", "3"],
    &["transportation", "--u", "1,2", "--v", "2,1"],
    &["partition", "--n-items", "3", "--lower", "0,1", "--upper", "2,3"],
    &["partition-fixed", "--sizes", "2,1"],
    &["matroid-uniform", "--ground", "4", "--rank", "2"],
    &["matroid-graphic", "--edges", "0-1,1-2,0-2"],
    &["parallelotope", "--n", "3", "--d", "2", "--skew-seed", "7"],
    &["random-simple", "--seed", "5"],
    &["random-system", "--seed", "5"],
];

#[test]
fn every_generated_family_feeds_every_analysis() {
    let analyses: &[&[&str]] = &[
        &["vertices"],
        &["circuits"],
        &["circuits", "--method", "oracle"],
        &["walk", "--start", "0", "--dirs", "edge;edge"],
        &["classify", "--reversibility"],
        &["check-tu"],
        &["check-ecw"],
        &["diameter"],
        &["diameter", "--kind", "circuit"],
    ];
    for fam in FAMILIES {
        let poly = gen(fam);
        for a in analyses {
            let out = run(a, &poly);
            // Random systems may have fractional vertices, which the hierarchy rejects.
            let ok = out.code == 0
                || out.code == 3
                || (fam[0] == "random-system" && out.stderr.contains("non-integral"));
            assert!(ok, "{fam:?} | {a:?}: exit {} {}", out.code, out.stderr);
            if out.code == 0 {
                out.json();
            }
        }
        let rank = run(&["circuits"], &poly);
        let oracle = run(&["circuits", "--method", "oracle"], &poly);
        assert_eq!(rank.json(), oracle.json(), "{fam:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for fam in FAMILIES {
        let poly = gen(fam);
        assert_eq!(poly, gen(fam));
        for a in [&["classify"][..], &["check-ecw"], &["diameter", "--kind", "circuit"]] {
            let (x, y) = (run(a, &poly), run(a, &poly));
            assert_eq!((x.code, x.stdout), (y.code, y.stdout));
        }
    }
}

#[test]
fn hierarchy_levels_of_planar_examples() {
    for (which, level) in [("a", "GCW"), ("b", "ICW"), ("c", "VCW"), ("d", "ECW")] {
        let out = run(&["classify"], &gen(&["fig2", "--which", which]));
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.json()["level"], level, "fig2 {which}");
    }
}

#[test]
fn tu_check_on_transportation() {
    let out = run(&["check-tu"], &gen(&["transportation", "--u", "1,2,2", "--v", "2,2,1"]));
    assert_eq!(out.json()["totally_unimodular"], true);
    let out = run(&["check-tu"], &gen(&["fig2", "--which", "b"]));
    assert_eq!(out.json()["totally_unimodular"], false);
    assert!(out.json()["witness"]["det"].is_string());
}

#[test]
fn walk_reports_each_step() {
    let out = run(&["walk", "--start", "0", "--dirs", "1,0;0,1;edge"], &gen(&["cube", "--n", "2"]));
    assert_eq!(out.code, 0, "{}", out.stderr);
    let steps = out.json();
    assert_eq!(steps.as_array().unwrap().len(), 4);
    assert!(steps[0]["circuit"].is_null());
    assert_eq!(steps[1]["alpha"], "1");
    assert_eq!(steps[2]["point"], serde_json::json!(["1", "1"]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"], "").code, 0);
    assert_eq!(run(&["frobnicate"], "").code, 2);
    assert_eq!(run(&["classify"], "not json").code, 2);
    assert_eq!(run(&["classify"], r#"{"n": 1, "B": [["1"]], "d": ["1/2"]}"#).code, 3);
    let halfcube = r#"{"n": 2, "B": [["2","0"],["-2","0"],["0","1"],["0","-1"]], "d": ["1","0","1","0"]}"#;
    let out = run(&["classify"], halfcube);
    assert_eq!(out.code, 2, "non-integral vertices are rejected");
    assert!(!out.stderr.is_empty());
    let budget = run(&["classify", "--budget-points", "1"], &gen(&["fig2", "--which", "b"]));
    assert_eq!((budget.code, budget.json()["level"].as_str()), (3, Some("unknown")));
    assert_eq!(run(&["walk", "--start", "99", "--dirs", "edge"], &gen(&["fig3"])).code, 2);
    assert_eq!(run(&["check-ecw"], &gen(&["fig3"])).code, 3, "fig3 is not simple");
}

#[test]
fn gen_writes_output_file() {
    let dir = temp_dir("gen");
    let path = dir.join("cube.json");
    let out = run(&["gen", "cube", "--n", "2", "-o", path.to_str().unwrap()], "");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let vs = run(&["vertices", path.to_str().unwrap()], "");
    assert_eq!(vs.json().as_array().unwrap().len(), 4);
    assert_eq!(run(&["vertices"], &text).stdout, vs.stdout);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn cdg_from_files() {
    let dir = temp_dir("cdg");
    let write = |name: &str, body: &str| {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    };
    let spec = write("spec.json", r#"{"n_items": 3, "lower": [1, 1, 1], "upper": [1, 1, 1]}"#);
    let y1 = write("y1.json", r#"{"0": 0, "1": 1, "2": 2}"#);
    let y2 = write("y2.json", "[1, 2, 0]");
    let y3 = write("y3.json", "[1, 0, 2]");

    let out = run(&["cdg", "--spec", &spec, "--y1", &y1, "--y2", &y2], "");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = out.json();
    assert_eq!(v["edge"], true);
    assert_eq!(v["cdg"]["edges"].as_array().unwrap().len(), 3);
    assert!(v["cdg"]["nodes"].as_array().unwrap().iter().all(|n| n["status"] == "fixed"));

    let out = run(&["cdg", "--spec", &spec, "--y1", &y1, "--y2", &y3, "--test", "circuit"], "");
    assert_eq!(out.json()["circuit"], true);

    let bad = write("bad.json", "[0, 0, 0]");
    assert_eq!(run(&["cdg", "--spec", &spec, "--y1", &y1, "--y2", &bad], "").code, 2);
    std::fs::remove_dir_all(dir).unwrap();
}
