use std::process::Command;

use hyperoct::pipeline::{Pipeline, Verdict};
use hyperoct::Ring;
use hyperoct_cli::{parse_coefficients, run, AlgebraSource, AlgebraSpec, Builtin, JobSpec, ObjectRange};

fn job(alg: Builtin, ring: Ring, pipelines: &[Pipeline], n: usize, d: usize) -> JobSpec {
    JobSpec::new(AlgebraSource::Builtin(alg), ring, pipelines.to_vec(), n, d)
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperoct"))
}

#[test]
fn ground_ring_full_pipeline_is_flagged_as_truncated() {
    let r = run(&job(Builtin::Ground, Ring::Rationals, &[Pipeline::Full], 1, 1)).unwrap();
    assert_eq!(r.betti[&Pipeline::Full][&1], vec![1, 0]);
    assert_eq!(r.caveats.truncated_degrees, vec![1]);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn epi_and_slominska_agree_on_c3() {
    let mut j = job(Builtin::Cyclic(3), Ring::Rationals, &[Pipeline::Epi, Pipeline::Slominska], 1, 1);
    j.verify = true;
    let r = run(&j).unwrap();
    assert_eq!(r.betti[&Pipeline::Epi][&1], r.betti[&Pipeline::Slominska][&1]);
    assert_eq!(r.verifications["agreement/N=1/epi=slominska"], Verdict::Pass);
    assert!(r.verifications.len() > 5);
    assert!(r.all_verified(), "{:?}", r.verifications);
}

#[test]
fn reports_are_byte_stable_and_cache_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut j = job(Builtin::Cyclic(2), Ring::Rationals, &[Pipeline::Full, Pipeline::Epi, Pipeline::Extended], 0, 1);
    j.max_object = ObjectRange { first: 0, last: 1 };
    j.verify = true;
    let plain = run(&j).unwrap();
    assert_eq!(plain.canonical_json(), run(&j).unwrap().canonical_json());
    j.cache_dir = Some(dir.path().to_path_buf());
    let cold = run(&j).unwrap();
    let warm = run(&j).unwrap();
    assert_eq!(plain.canonical_json(), cold.canonical_json());
    assert_eq!(plain.canonical_json(), warm.canonical_json());
    assert!(cold.timing.cache.unwrap().misses > 0);
    let stats = warm.timing.cache.unwrap();
    assert!(stats.hits > 0 && stats.misses == 0, "{stats:?}");
    assert!(!plain.canonical_json().contains("timing"));
}

#[test]
fn stabilization_over_a_sweep() {
    let mut j = job(Builtin::Ground, Ring::PrimeField(2), &[Pipeline::Full], 0, 0);
    j.max_object = ObjectRange { first: 0, last: 2 };
    let r = run(&j).unwrap();
    assert_eq!(r.betti[&Pipeline::Full].values().map(|b| b[0]).collect::<Vec<_>>(), vec![1, 1, 1]);
    assert_eq!(r.stabilization[&Pipeline::Full], vec![Some(0)]);
}

#[test]
fn cap_gives_partial_report() {
    let mut j = job(Builtin::Cyclic(2), Ring::Rationals, &[Pipeline::Epi, Pipeline::Full], 1, 1);
    j.max_generators = 1000;
    let r = run(&j).unwrap();
    assert!(r.betti.contains_key(&Pipeline::Epi));
    let f = &r.failures[0];
    assert_eq!(f.pipeline, Pipeline::Full);
    assert_eq!((f.degree, f.projected_generators.as_deref()), (Some(2), Some("3544")));
    assert_eq!(r.exit_code(), 3);
}

#[test]
fn universal_coefficients_over_integers() {
    let mut j = job(Builtin::Cyclic(3), Ring::Integers, &[Pipeline::Epi], 1, 1);
    j.coefficients = Some(("z/2".into(), parse_coefficients("z/2").unwrap()));
    let r = run(&j).unwrap();
    assert_eq!(r.verifications["epi/N=1/universal_coefficients"], Verdict::Pass);
    let c = &r.coefficients[&Pipeline::Epi][&1];
    assert!(c.uct.as_ref().unwrap().iter().all(|l| l.holds && l.computed == l.predicted));
}

#[test]
fn inline_spec_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.json");
    let spec = r#"{
        "dim": 2, "basis": ["1", "g"],
        "structure": [[0,0,0,1,1],[0,1,1,1,1],[1,0,1,1,1],[1,1,0,1,1]],
        "involution": [[[1,1],[0,1]],[[0,1],[1,1]]],
        "unit": [[1,1],[0,1]],
        "augmentation": [[1,1],[1,1]]
    }"#;
    std::fs::write(&path, spec).unwrap();
    let src = AlgebraSource::resolve(path.to_str().unwrap()).unwrap();
    let inline = run(&JobSpec::new(src, Ring::Rationals, vec![Pipeline::Epi], 1, 1)).unwrap();
    let builtin = run(&job(Builtin::Cyclic(2), Ring::Rationals, &[Pipeline::Epi], 1, 1)).unwrap();
    assert_eq!(inline.betti, builtin.betti);
    assert_eq!(inline.parameters.algebra_fingerprint, builtin.parameters.algebra_fingerprint);
    assert!(AlgebraSpec::from_json(r#"{"dim": 1}"#).unwrap_err().message.contains("basis"));
}

#[test]
fn binary_reports_schema_errors_by_field() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = binary()
        .args(["compute", "--algebra", "c2", "--ring", "f4", "--pipeline", "full", "--max-object", "1", "--max-degree", "1"])
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ring: 4 is not a prime"));
    assert!(!out.exists());

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dim": 1, "basis": ["1"], "structure": [[0,0,3,1,1]], "involution": [[[1,1]]], "unit": [[1,1]]}"#)
        .unwrap();
    let o = binary()
        .args(["compute", "--ring", "q", "--pipeline", "full", "--max-object", "0", "--max-degree", "0"])
        .arg("--algebra")
        .arg(&bad)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("structure[0]"));
}

#[test]
fn binary_writes_report_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = binary()
        .args(["compute", "--algebra", "c2", "--ring", "q", "--pipeline", "full,nerve", "--max-object", "1"])
        .args(["--max-degree", "1", "--verify"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for key in ["parameters", "betti", "torsion", "verifications", "sizes", "timing"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["verifications"]["agreement/N=1/full=nerve"], "pass");
    assert_eq!(v["betti"]["full"]["1"], v["betti"]["nerve"]["1"]);
}

#[test]
fn binary_verify_category() {
    let o = binary().args(["verify-category", "--depth", "0"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["failed"] == 0));
}
