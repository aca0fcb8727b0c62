use std::fs;
use std::process::{Command, Output};

fn slope_atlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slope-atlas")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn info_reports_slopes() {
    let o = slope_atlas(&["info", "13/34"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["crossing_number"], 8);
    assert_eq!(v["truncated"], false);

    let v: serde_json::Value = serde_json::from_str(&stdout(&slope_atlas(&["info", "1/2"]))).unwrap();
    let slopes: Vec<i64> = v["slopes"].as_array().unwrap().iter().map(|s| s["slope"].as_i64().unwrap()).collect();
    assert_eq!(slopes, vec![1, -1]);
    assert_eq!(v["diameter"], 2);
    assert_eq!(slope_atlas(&["info", "7/34"]).status.code(), Some(0));
}

#[test]
fn info_input_errors() {
    for bad in ["4/34", "1/1", "0/1", "3/2", "x", "1/0"] {
        let o = slope_atlas(&["info", bad]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn info_cap_exceeded_still_reports() {
    let o = slope_atlas(&["info", "13/34", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["truncated"], true);
    assert_eq!(v["slopes"].as_array().unwrap().len(), 2);
    assert_eq!(v["diameter"], 8);
}

#[test]
fn survey_csv_and_json() {
    let o = slope_atlas(&["survey", "--max-q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "p,q,n,crossing_number,diameter,num_minimal_paths,slope_min,slope_max,sigma0,sigma1,linking_number\n\
         1,2,2,2,2,2,-1,1,0,1,1\n"
    );

    let text = stdout(&slope_atlas(&["survey", "--max-q", "5"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.contains(&"2,5,1,4,8,3,-4,4,0,0,"));

    let o = slope_atlas(&["survey", "--max-q", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
    assert_eq!(slope_atlas(&["survey", "--max-q", "1"]).status.code(), Some(2));
}

#[test]
fn survey_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let run = |jobs: &str, out: &std::path::Path| {
        let o = slope_atlas(&["survey", "--max-q", "30", "--jobs", jobs, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    };
    run("1", &a);
    run("4", &b);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn survey_io_error() {
    let o = slope_atlas(&["survey", "--max-q", "3", "--out", "/nonexistent-dir/rows.csv"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_passes_and_catches_faults() {
    let o = slope_atlas(&["verify", "--max-q", "60", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));

    let o = slope_atlas(&["verify", "--max-q", "1"]);
    assert_eq!(o.status.code(), Some(0));

    let o = slope_atlas(&["verify", "--max-q", "20", "--suite", "lemmas", "--inject-fault", "sigma0"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("sigma sums of children"), "{err}");
    assert!(err.contains("1/2: parents 0/1, 1/1"), "{err}");

    assert_eq!(slope_atlas(&["verify", "--max-q", "5", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("chain.svg");
    let o = slope_atlas(&["render", "3/8", "--paths", "all", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches(r#"class="edge-path""#).count(), 4);

    let again = dir.path().join("again.svg");
    slope_atlas(&["render", "3/8", "--paths", "all", "--out", again.to_str().unwrap()]);
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());

    let o = slope_atlas(&["render", "13/34", "--paths", "all", "--cap", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let o = slope_atlas(&["render", "2/4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn checkerboard_from_file_and_generators() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hopf.json");
    fs::write(
        &path,
        r#"{"n": 2, "crossings": [{"over": 1, "under": 2, "sign": 1}, {"over": 2, "under": 1, "sign": 1}], "reduced_alternating": true}"#,
    )
    .unwrap();
    let o = slope_atlas(&["checkerboard", "--diagram", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["s"], serde_json::json!([1, 1]));
    assert_eq!(v["t"], serde_json::json!([-1, -1]));

    let o = slope_atlas(&["checkerboard", "--pretzel", "3,2,3,2,3,2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["crossings"], 15);
    assert_eq!(v["diagonal"], serde_json::json!([true, true]));
    let o = slope_atlas(&["checkerboard", "--pretzel", "3,2,3,2,3,2", "--mirror"]);
    let m: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(m["s"][0], -v["t"][0].as_i64().unwrap());
    assert_eq!(m["t"][0], -v["s"][0].as_i64().unwrap());

    let o = slope_atlas(&["checkerboard", "--four-plat", "3/8"]);
    assert_eq!(o.status.code(), Some(0));

    assert_eq!(slope_atlas(&["checkerboard", "--pretzel", "3,-2"]).status.code(), Some(2));
    assert_eq!(slope_atlas(&["checkerboard", "--diagram", "/nonexistent.json"]).status.code(), Some(4));
    fs::write(&path, "{}").unwrap();
    assert_eq!(slope_atlas(&["checkerboard", "--diagram", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(slope_atlas(&["checkerboard"]).status.code(), Some(2));
}
