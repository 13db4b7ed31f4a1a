//! The `hurwitz` binary: exit codes, file formats, cache and determinism.

use std::path::Path;
use std::process::{Command, Output};

use genus2_hurwitz::constellation::{BranchData, Constellation};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_hurwitz");

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env("HURWITZ_CACHE_DIR", cache)
        .output()
        .expect("spawn hurwitz")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn classify_is_byte_stable_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    for case in ["hypergeometric", "general", "triples"] {
        for fmt in ["table", "json"] {
            let a = run(dir.path(), &["--threads", "1", "classify", "--case", case, "--format", fmt]);
            let b = run(dir.path(), &["--threads", "4", "classify", "--case", case, "--format", fmt]);
            assert_eq!(code(&a), 0);
            assert_eq!(a.stdout, b.stdout, "{case} {fmt}");
        }
    }
    let t = run(dir.path(), &["classify", "--case", "hypergeometric"]);
    assert_eq!(String::from_utf8_lossy(&t.stdout).lines().count(), 13);
}

#[test]
fn bad_flags_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["classify", "--case", "spherical"])), 2);
    assert_eq!(code(&run(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&run(dir.path(), &["search", "d=4; 4; banana"])), 2);
    assert_eq!(code(&run(dir.path(), &["search", "d=4; 4; 4; 4; free", "--time-budget", "0"])), 2);
    assert_eq!(code(&run(dir.path(), &["search", "d=4; 4; 4; 4; free", "--max-degree", "1"])), 2);
}

#[test]
fn search_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let found = run(dir.path(), &["--no-cache", "search", "d=6; 3,3; 3,3; 6; free"]);
    assert_eq!(code(&found), 0);
    let v = json(&found);
    assert_eq!(v["format"], 1);
    assert_eq!(v["status"], "found");
    for c in v["constellations"].as_array().unwrap() {
        assert_eq!(c["genus"], 2);
    }

    let parity = run(dir.path(), &["--no-cache", "search", "d=3; 3; 3; free"]);
    assert_eq!(code(&parity), 1);
    assert_eq!(json(&parity)["status"], "none");

    let capped = run(dir.path(), &["--no-cache", "search", "d=18; 2^9; 3^6; 18"]);
    assert_eq!(code(&capped), 3);
    assert_eq!(json(&capped)["status"], "resource-limit");
}

#[test]
fn exhaustive_degree_four_contains_the_given_tuple() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["search", "d=4; 4; 4; 4; free", "--exhaustive"]);
    assert_eq!(code(&out), 0);
    let given = Constellation::from_cycles(
        4,
        &[vec![vec![1, 2, 3, 4]], vec![vec![1, 3, 2, 4]], vec![vec![1, 3, 4, 2]], vec![vec![1, 2]]],
    )
    .unwrap();
    let v = json(&out);
    let hits = v["constellations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| Constellation::from_json(&c.to_string()).unwrap())
        .filter(|c| c.is_equivalent(&given))
        .count();
    assert_eq!(hits, 1);
}

#[test]
fn cache_hit_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let q = "d=8; 2^4; 4,4; 8; free";
    let a = run(dir.path(), &["search", q]);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let b = run(dir.path(), &["search", q]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    // A tampered cache entry is ignored rather than trusted.
    let path = files[0].as_ref().unwrap().path();
    let text = std::fs::read_to_string(&path).unwrap().replacen("\"genus\": 2", "\"genus\": 3", 1);
    std::fs::write(&path, text).unwrap();
    let c = run(dir.path(), &["search", q]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn search_output_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let q = "d=12; 2^6; 4^3; 6,6; free";
    let a = run(dir.path(), &["--no-cache", "--threads", "1", "search", q, "--limit", "3"]);
    let b = run(dir.path(), &["--no-cache", "--threads", "8", "search", q, "--limit", "3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn emitted_files_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let p = |n: &str| d.join(n).to_string_lossy().into_owned();

    let r = run(d, &["construct", "route", "2-6-6", "-o", &p("r.json")]);
    assert_eq!(code(&r), 0);
    let v = run(d, &["validate", &p("r.json"), "--types", "d=6; 2,2,2; 6; 6; free"]);
    assert_eq!(code(&v), 0);
    let wrong = run(d, &["validate", &p("r.json"), "--types", "d=6; 3,3; 3,3; 6; free"]);
    assert_eq!(code(&wrong), 1);

    let pl = run(
        d,
        &["construct", "pipeline", "-o", &p("c.json"), "--outer-output", &p("o.json"), "--inner-output", &p("i.json")],
    );
    assert_eq!(code(&pl), 0, "{}", String::from_utf8_lossy(&pl.stderr));
    assert_eq!(code(&run(d, &["validate", &p("c.json"), "--types", "d=42; 2^21; 3^14; 7^6; free"])), 0);
    assert_eq!(code(&run(d, &["validate", &p("o.json")])), 0);
    let cmp = run(d, &["construct", "compose", "--outer", &p("o.json"), "--inner", &p("i.json"), "-o", &p("c2.json")]);
    assert_eq!(code(&cmp), 0);
    assert_eq!(std::fs::read(p("c.json")).unwrap(), std::fs::read(p("c2.json")).unwrap());

    // Merge on a searched seed, then validate the result.
    let s = run(d, &["search", "d=6; 2,2,2; 6; 3,3"]);
    let seed = json(&s)["constellations"][0].to_string();
    std::fs::write(p("seed.json"), seed).unwrap();
    let m = run(d, &["construct", "merge", &p("seed.json"), "--slot", "2", "--points", "1,2", "-o", &p("m.json")]);
    assert_eq!(code(&m), 0);
    let merged = Constellation::from_json(&std::fs::read_to_string(p("m.json")).unwrap()).unwrap();
    let target: BranchData = "d=6; 2,2,2; 6; 6; free".parse().unwrap();
    assert!(merged.validate(Some(&target.types)).is_valid());
}

#[test]
fn construct_rejects_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let missing = d.join("missing.json").to_string_lossy().into_owned();
    assert_eq!(code(&run(d, &["validate", &missing])), 2);
    assert_eq!(code(&run(d, &["construct", "merge", &missing, "--slot", "0", "--points", "1,2"])), 2);
    assert_eq!(code(&run(d, &["construct", "route", "2-3-7"])), 2);

    // Two points in the same cycle cannot be merged.
    let c = d.join("c.json");
    let k = Constellation::from_cycles(3, &[vec![vec![1, 2, 3]], vec![vec![1, 3, 2]]]).unwrap();
    std::fs::write(&c, k.to_json()).unwrap();
    let c = c.to_string_lossy().into_owned();
    assert_eq!(code(&run(d, &["construct", "merge", &c, "--slot", "0", "--points", "1,2"])), 2);
    assert_eq!(code(&run(d, &["construct", "split", &c, "--slot", "0", "--points", "1,2"])), 0);

    // A file that parses but does not close up.
    let bad = d.join("bad.json");
    let mut v: Value = serde_json::from_str(&k.to_json()).unwrap();
    v["slots"][1] = serde_json::json!([[1, 2, 3]]);
    std::fs::write(&bad, v.to_string()).unwrap();
    let r = run(d, &["validate", &bad.to_string_lossy()]);
    assert_eq!(code(&r), 1, "{r:?}");
}

#[test]
fn verify_family_modes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let sym = run(d, &["verify-family", "--format", "json"]);
    assert_eq!(code(&sym), 0);
    let v = json(&sym);
    assert_eq!(v["symbolic"]["composition_identity"], true);
    assert_eq!(v["symbolic"]["branch_point_identity"], true);

    // The rational point (2,3) is on E, but its free value runs into 1.
    let col = run(d, &["verify-family", "--xt", "2", "--yt", "3", "--format", "json"]);
    assert_eq!(code(&col), 1);
    let s = &json(&col)["specializations"][0];
    assert_eq!(s["status"]["kind"], "collision");
    assert_eq!(s["free_value"], "1");

    assert_eq!(code(&run(d, &["verify-family", "--xt", "2", "--yt", "4"])), 2);
    assert_eq!(code(&run(d, &["verify-family", "--yt", "3"])), 2);
    assert_eq!(code(&run(d, &["verify-family", "--xt", "1"])), 0);
    assert_eq!(code(&run(d, &["verify-family", "--xt", "-1"])), 1);
}
