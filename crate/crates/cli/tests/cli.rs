use std::path::Path;
use std::process::{Command, Output};

fn cdlat(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdlat"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn measures_default_to_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = cdlat(dir.path(), &["measures", "D6"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["im"], serde_json::json!([4, 6, 9]));
    assert_eq!(v["im_count"], 3);
}

#[test]
fn measures_as_csv_and_md() {
    let dir = tempfile::tempdir().unwrap();
    let csv = stdout(&cdlat(dir.path(), &["measures", "S3", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("h_order,class_size,centralizer_order,measure"));
    assert_eq!(csv.lines().count(), 5);
    let md = stdout(&cdlat(dir.path(), &["--format", "md", "measures", "S3"]));
    assert!(md.contains("im_count 3"));
}

#[test]
fn show_and_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let show = stdout(&cdlat(dir.path(), &["show", "Q8", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&show).unwrap();
    assert_eq!((v["order"].as_u64(), v["center_order"].as_u64()), (Some(8), Some(2)));
    assert_eq!(v["nilpotent"], true);
    let lat = stdout(&cdlat(dir.path(), &["lattice", "A5", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&lat).unwrap();
    assert_eq!(v["subgroup_count"], 59);
    assert_eq!(v["class_count"], 9);
}

#[test]
fn syntax_error_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let out = cdlat(dir.path(), &["measures", "C4 x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("1:5"), "{}", stderr(&out));
}

#[test]
fn semantic_error_names_parameter() {
    let dir = tempfile::tempdir().unwrap();
    let out = cdlat(dir.path(), &["measures", "(C5 : C2 @ 3)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("@ 3"), "{}", stderr(&out));
}

#[test]
fn oversized_group_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cdlat(dir.path(), &["show", "C6000"]).status.code(), Some(3));
    assert_eq!(cdlat(dir.path(), &["--max-order", "10", "show", "D12"]).status.code(), Some(3));
}

#[test]
fn unknown_claim_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    assert!(!cdlat(dir.path(), &["verify", "thmZ"]).status.success());
}

#[test]
fn verify_csv_has_one_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = cdlat(dir.path(), &["verify", "thmC", "s3xd10-table", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("claim_id,")).count(), 1);
    assert!(text.lines().any(|l| l.starts_with("s3xd10-table,")));
}

#[test]
fn survey_rows_sorted_by_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&cdlat(dir.path(), &["survey", "--orders", "6..10"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("name,order,im_count,predicted_bound,bound_source,attains"));
    let orders: Vec<u64> = lines.map(|l| l.rsplit(',').nth(4).unwrap().parse().unwrap()).collect();
    assert!(!orders.is_empty() && orders.windows(2).all(|w| w[0] <= w[1]));
    assert!(orders.iter().all(|o| (6..=10).contains(o)));
}

#[test]
fn cache_stats_and_gc() {
    let dir = tempfile::tempdir().unwrap();
    cdlat(dir.path(), &["measures", "D8"]);
    std::fs::write(dir.path().join("junk.json"), "{").unwrap();
    let stats = stdout(&cdlat(dir.path(), &["cache", "stats"]));
    assert!(stats.contains("2 entries") && stats.contains("1 stale"), "{stats}");
    let gc = stdout(&cdlat(dir.path(), &["cache", "gc"]));
    assert!(gc.starts_with("removed 1 "), "{gc}");
    let stats = stdout(&cdlat(dir.path(), &["cache", "stats"]));
    assert!(stats.contains("1 entries") && stats.contains("0 stale"), "{stats}");
}
