use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ncc::batch::cache_context;
use ncc::cache::{sha256_hex, Cache, Entry};
use ncc_core::Limits;
use serde_json::Value;

fn ncc(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncc"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn quaternion_group_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = ncc(dir.path(), &["--input", "construct generalized_quaternion 8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = &json_lines(&o)[0];
    assert_eq!(r["order"], 8);
    assert_eq!(r["ncc"]["value"], 3);
    assert_eq!(r["ncc"]["verified"], true);
    assert_eq!(r["ncc"]["witnesses"].as_array().unwrap().len(), 3);
}

#[test]
fn klein_four_invariants_and_key_order() {
    let dir = tempfile::tempdir().unwrap();
    let o = ncc(
        dir.path(),
        &["--input", "construct elementary_abelian 2 2", "--compute", "ncc,nac,peo"],
    );
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    let r: Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(r["ncc"]["value"], 3);
    assert_eq!(r["nac"]["value"], 1);
    assert_eq!(r["peo"], serde_json::json!([2]));
    let keys = [
        "\"input\"", "\"hash\"", "\"label\"", "\"order\"", "\"ncc\"", "\"nac\"", "\"nac_note\"",
        "\"peo\"", "\"meo\"", "\"d\"", "\"classes\"", "\"oracle\"", "\"oracle_note\"", "\"micros\"",
        "\"error\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| line.find(k).expect(k)).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn rerun_hits_the_cache_with_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--input", "construct dihedral 16", "--compute", "ncc,nac,peo,meo,d,classes"];
    let first = ncc(dir.path(), &args);
    let second = ncc(dir.path(), &args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));
    assert!(!stderr(&first).contains("cache hit"));
    assert!(stderr(&second).contains("cache hit: construct dihedral 16"));
}

#[test]
fn inline_quaternion_quotient() {
    let dir = tempfile::tempdir().unwrap();
    let o = ncc(dir.path(), &["--input", "quat:p=5,k=3,variant=PGL1,i=1", "--no-cache"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["order"], 125);
}

#[test]
fn directory_batch_keeps_going_past_failures() {
    let dir = tempfile::tempdir().unwrap();
    let groups = dir.path().join("groups");
    fs::create_dir(&groups).unwrap();
    fs::write(groups.join("a_s3.txt"), "perm 3\n(0 1)\n(0 1 2)\n").unwrap();
    fs::write(groups.join("b_broken.txt"), "perm 3\n(0 1 x)\n").unwrap();
    fs::write(groups.join("c_s5.txt"), "construct symmetric 5\n").unwrap();
    fs::write(groups.join("d_c3.txt"), "table 3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    let o = ncc(
        &dir.path().join("cache"),
        &["--input", groups.to_str().unwrap(), "--max-order", "100"],
    );
    assert_eq!(o.status.code(), Some(1));
    let r = json_lines(&o);
    assert_eq!(r.len(), 4);
    assert_eq!(r[0]["ncc"]["value"], 2);
    assert!(r[1]["error"].as_str().unwrap().contains("line 2, column 6"));
    assert!(r[2]["error"].as_str().unwrap().contains("cap"));
    assert_eq!(r[3]["ncc"]["value"], 1);
}

#[test]
fn syntax_error_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    fs::write(&f, "table 2\n0 1\n1 x\n").unwrap();
    let o = ncc(dir.path(), &["--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3, column 3"), "{}", stderr(&o));
}

#[test]
fn oracle_mismatch_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let canonical = "construct dihedral 8\n";
    let key = Cache::key(canonical, "ncc", &cache_context(&Limits::default()));
    let forged = Entry {
        input_hash: sha256_hex(canonical.as_bytes()),
        invariant: "ncc".into(),
        value: serde_json::json!({ "value": 7, "orbits": 7, "witnesses": [], "verified": true }),
        micros: 0,
    };
    Cache::new(dir.path()).put(&key, &forged).unwrap();

    let o = ncc(dir.path(), &["--input", "construct dihedral 8"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ncc(dir.path(), &["--input", "construct dihedral 8", "--oracle"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json_lines(&o)[0]["error"].as_str().unwrap().contains("oracle 3"));

    let clean = tempfile::tempdir().unwrap();
    let o = ncc(clean.path(), &["--input", "construct dihedral 8", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["oracle"], 3);
}

#[test]
fn tower_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = ncc(dir.path(), &["--tower", "3,PGL1,1,2,4", "--subgroups"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = &json_lines(&o)[0];
    let values: Vec<u64> = r["rows"].as_array().unwrap().iter().map(|x| x["ncc"].as_u64().unwrap()).collect();
    assert_eq!(values, [4, 5, 11]);
    assert_eq!(r["strictly_increasing"], true);
    assert_eq!(r["lines"].as_array().unwrap().len(), 4);

    let o = ncc(dir.path(), &["--tower", "3,PGL1,1,2,3", "--format", "text"]);
    assert!(stdout(&o).starts_with("tower quat:p=3,variant=PGL1,i=1"));

    let o = ncc(dir.path(), &["--tower", "3,PGL1,1,5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn gamma_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gamma.dot");
    let o = ncc(
        dir.path(),
        &["--gamma", "2,2,3,16", "--format", "dot", "--out", out.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("dihedral 16"));

    let o = ncc(dir.path(), &["--gamma", "2,2,3,16"]);
    let g = &json_lines(&o)[0];
    assert_eq!(g["vertices"][0]["order"], 4);
    assert_eq!(g["vertices"][0]["ncc"], 3);
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ncc(dir.path(), &[]).status.code(), Some(1));
    assert_eq!(ncc(dir.path(), &["--bogus"]).status.code(), Some(1));
    let o = ncc(dir.path(), &["--input", "construct cyclic 4", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ncc(dir.path(), &["--input", "construct cyclic 4", "--compute", "ncc,size"]);
    assert_eq!(o.status.code(), Some(1));
}
