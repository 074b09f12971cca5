use std::process::{Command, Output};

use zipstrata::bitmat::BitMatrix;
use zipstrata::zip_poset::StrataPoset;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zipstrata"))
        .args(args)
        .env_remove("ZIPSTRATA_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tsv_value<'a>(text: &'a str, key: &str) -> Vec<Vec<&'a str>> {
    text.lines()
        .map(|l| l.split('\t').collect::<Vec<_>>())
        .filter(|f| f[0] == key)
        .map(|f| f[1..].to_vec())
        .collect()
}

#[test]
fn c2_siegel_dot_is_a_four_element_chain() {
    let o = run(&["poset", "--type", "C2", "--I", "1", "--flavor", "EO"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 4);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 3);
    assert!(dot.starts_with("digraph"));
}

#[test]
fn a2_borel_dl_has_six_labels() {
    let o = run(&["poset", "--type", "A2", "--I", "", "--flavor", "DL"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("[label=")).count(), 6);
}

#[test]
fn right_side_poset_has_same_size() {
    let left = run(&["poset", "--type", "B3", "--I", "2", "--side", "left", "--format", "json"]);
    let right = run(&["poset", "--type", "B3", "--I", "2", "--side", "right", "--format", "json"]);
    let l: serde_json::Value = serde_json::from_slice(&left.stdout).unwrap();
    let r: serde_json::Value = serde_json::from_slice(&right.stdout).unwrap();
    assert_eq!(l["labels"].as_array().unwrap().len(), r["labels"].as_array().unwrap().len());
}

#[test]
fn out_of_range_index_is_a_usage_error() {
    let o = run(&["poset", "--type", "A2", "--I", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
}

#[test]
fn unsupported_type_is_a_config_error() {
    let o = run(&["poset", "--type", "E6", "--I", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["poset", "--type", "B3", "--frobenius", "twisted"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_round_trips_through_from_parts() {
    let o = run(&["poset", "--type", "A3", "--I", "1,3", "--flavor", "EO", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["I"], serde_json::json!([1, 3]));
    let names: Vec<String> = v["labels"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
    let dims: Vec<usize> = v["lengths"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
    let rows: Vec<Vec<bool>> = v["leq_matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() == 1).collect())
        .collect();
    let p = StrataPoset::from_parts(names.clone(), dims, BitMatrix::from_rows(names.len(), rows)).unwrap();
    let hasse: Vec<(usize, usize)> = serde_json::from_value(v["hasse"].clone()).unwrap();
    assert_eq!(p.hasse, hasse);
    assert_eq!(names.len(), 6);

    let path = std::env::temp_dir().join(format!("zipstrata-roundtrip-{}.json", std::process::id()));
    let o = run(&["poset", "--type", "A3", "--I", "1,3", "--format", "json", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = run(&["inspect", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(tsv_value(&stdout(&o), "labels"), vec![vec!["6"]]);
}

#[test]
fn verify_rank_one_checks_two_subsets() {
    let o = run(&["verify", "--rank-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3, "{text}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("2 subsets checked, 2 passed"));
}

#[test]
fn verify_json_reports_twist_comparison() {
    let o = run(&["verify", "--rank-max", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let subsets = v["subsets"].as_array().unwrap();
    assert!(subsets.iter().all(|s| s["eo_twists"]["coincide"].is_boolean()));
    let a2_1 = subsets.iter().find(|s| s["type"] == "A2" && s["I"] == "{1}").unwrap();
    assert_eq!(a2_1["eo_twists"]["coincide"], false);
    assert_eq!(a2_1["eo_twists"]["longest_of_k_preserves_levi"], false);
    let b2 = subsets.iter().find(|s| s["type"] == "B2" && s["I"] == "{1}").unwrap();
    assert_eq!(b2["eo_twists"]["coincide"], true);
}

#[test]
fn oracle_gl2_merges_to_two_stable_classes() {
    let o = run(&["oracle", "--n", "2", "--q", "2", "--weights", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert_eq!(tsv_value(&t, "merged"), vec![vec!["1", "2"], vec!["2", "2"]]);
    assert_eq!(tsv_value(&t, "stability_heuristic"), vec![vec!["stable"]]);
    assert_eq!(tsv_value(&t, "representatives_distinct"), vec![vec!["true"]]);
}

#[test]
fn dl_sim_gl2_cubic_extension() {
    let o = run(&["dl-sim", "--n", "2", "--q", "2", "--m", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let run0 = &v["runs"][0];
    let counts: Vec<u64> = run0["counts"].as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![3, 6]);
    assert_eq!(run0["total"], 9);
}

#[test]
fn weyl_calculator() {
    let out = |args: &[&str]| stdout(&run(args)).trim().to_string();
    assert_eq!(out(&["weyl", "--type", "A2", "longest"]), "s1s2s1");
    assert_eq!(out(&["weyl", "--type", "A2", "multiply", "s1s2", "s1"]), "s1s2s1");
    assert_eq!(out(&["weyl", "--type", "A2", "reduced-word", "2,1,2"]), "s1s2s1");
    assert_eq!(out(&["weyl", "--type", "B3", "length", "e"]), "0");
    assert_eq!(out(&["weyl", "--type", "G2", "order"]), "12");
    assert_eq!(out(&["weyl", "--type", "A3", "--frobenius", "twisted", "frobenius", "1"]), "s3");
    assert_eq!(out(&["weyl", "--type", "A2", "bruhat", "1", "2"]), "0");
}

#[test]
fn exceeding_the_cap_exits_with_three() {
    let o = run(&["--cap", "10", "poset", "--type", "A3", "--I", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_zipstrata"))
        .args(["oracle", "--n", "3", "--q", "4", "--weights", "1,0,0"])
        .env("ZIPSTRATA_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
