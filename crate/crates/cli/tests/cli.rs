use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn tvk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tvk"))
        .args(args)
        .env_remove("TVK_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen_file(dir: &TempDir, name: &str, d: usize, n: usize, seed: u64) -> PathBuf {
    let path = dir.path().join(name);
    let out = tvk(&[
        "gen",
        "--d",
        &d.to_string(),
        "--n",
        &n.to_string(),
        "--seed",
        &seed.to_string(),
        "--output",
        path_str(&path),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn gen_is_deterministic() {
    let a = tvk(&["gen", "--d", "3", "--n", "10", "--seed", "42"]);
    let b = tvk(&["gen", "--d", "3", "--n", "10", "--seed", "42"]);
    let c = tvk(&["gen", "--d", "3", "--n", "10", "--seed", "43"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.split_whitespace().count() == 3));
}

#[test]
fn crossing_output_passes_verify() {
    let dir = TempDir::new().unwrap();
    let input = gen_file(&dir, "p.txt", 2, 11, 5);
    let doc = dir.path().join("c.json");
    let svg = dir.path().join("c.svg");
    let out = tvk(&[
        "crossing",
        "--input",
        path_str(&input),
        "--r",
        "3",
        "--svg",
        path_str(&svg),
        "--output",
        path_str(&doc),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&doc).unwrap()).unwrap();
    assert_eq!(json["dim"], 2);
    assert_eq!(json["parts"].as_array().unwrap().len(), 3);
    assert!(json["witness"]["point"].is_array());

    let drawing = std::fs::read_to_string(&svg).unwrap();
    assert!(drawing.starts_with("<svg"));
    assert_eq!(drawing.matches("<polygon").count(), 3);
    assert_eq!(drawing.matches("<circle").count(), 11);

    let out = tvk(&["verify", "--partition", path_str(&doc)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], true);

    let out = tvk(&["verify", "--partition", path_str(&doc), "--input", path_str(&input), "--max-part-size", "3"]);
    assert_eq!(code(&out), 5);
}

#[test]
fn verify_rejects_tampered_partition() {
    let dir = TempDir::new().unwrap();
    let input = gen_file(&dir, "p.txt", 2, 9, 1);
    let out = tvk(&["crossing", "--input", path_str(&input), "--r", "3"]);
    assert_eq!(code(&out), 0);
    let mut json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let parts = json["parts"].as_array_mut().unwrap();
    let moved = parts[0].as_array_mut().unwrap().pop().unwrap();
    parts[1].as_array_mut().unwrap().push(moved);
    let doc = write(&dir, "bad.json", &json.to_string());
    let out = tvk(&["verify", "--partition", path_str(&doc)]);
    assert_eq!(code(&out), 5);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], false);
    assert!(!report["violations"].as_array().unwrap().is_empty());
}

#[test]
fn budget_exhaustion_writes_partial_trace() {
    // Seed 39 needs two fixing steps on 12 planar points with r = 4.
    let dir = TempDir::new().unwrap();
    let input = gen_file(&dir, "p.txt", 2, 12, 39);
    let out = tvk(&["crossing", "--input", path_str(&input), "--r", "4"]);
    assert_eq!(code(&out), 0);
    let full: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(full["trace"].as_array().unwrap().len(), 2);

    let doc = dir.path().join("partial.json");
    let out = tvk(&[
        "crossing",
        "--input",
        path_str(&input),
        "--r",
        "4",
        "--budget",
        "1",
        "--output",
        path_str(&doc),
    ]);
    assert_eq!(code(&out), 4);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&doc).unwrap()).unwrap();
    assert_eq!(json["parts"].as_array().unwrap().len(), 4);
    assert_eq!(json["trace"].as_array().unwrap().len(), 1);
    assert_eq!(json["trace"][0], full["trace"][0]);

    let out = tvk(&["crossing", "--input", path_str(&input), "--r", "4", "--budget", "2"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn hexagon_with_center_three_parts() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "hex7.txt",
        "# perturbed hexagon and a point near its center\n2 1/7\n1 2\n-1 19/10\n-2 -1/5\n-1 -21/10\n11/10 -2\n1/13 1/17\n",
    );
    let svg = dir.path().join("out.svg");
    let out = tvk(&["crossing", "--input", path_str(&input), "--r", "3", "--svg", path_str(&svg)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["parts"].as_array().unwrap().len(), 3);
    let drawing = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(drawing.matches("<polygon").count(), 3);
    assert_eq!(drawing.matches("<path").count(), 1);

    let out = tvk(&["crossing", "--input", path_str(&input), "--r", "3", "--measure", "point-count"]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["measure"], "point-count");
}

#[test]
fn partition_nine_planar_points() {
    let dir = TempDir::new().unwrap();
    let input = gen_file(&dir, "pts.txt", 2, 9, 12);
    let out = tvk(&["partition", "--input", path_str(&input), "--r", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["parts"].as_array().unwrap().len(), 3);
    assert_eq!(json["witness"]["point"].as_array().unwrap().len(), 2);
    assert_eq!(json["method"], "brute_force");
}

#[test]
fn partition_paths_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let small = gen_file(&dir, "small.txt", 3, 8, 2);
    let out = tvk(&["partition", "--input", path_str(&small), "--r", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["method"], "brute_force");
    assert!(json["parts"].as_array().unwrap().iter().all(|p| p.as_array().unwrap().len() <= 4));

    let planar = gen_file(&dir, "planar.txt", 2, 18, 4);
    let out = tvk(&["partition", "--input", path_str(&planar), "--r", "6"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["parts"].as_array().unwrap().len(), 6);

    let big = gen_file(&dir, "big.txt", 3, 20, 4);
    assert_eq!(code(&tvk(&["partition", "--input", path_str(&big), "--r", "5"])), 3);
    assert_eq!(code(&tvk(&["partition", "--input", path_str(&small), "--r", "0"])), 64);
    assert_eq!(code(&tvk(&["crossing", "--input", path_str(&small), "--r", "0"])), 64);
}

#[test]
fn degenerate_input_needs_perturb() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "col.txt", "0 0\n1 1\n2 2\n3 0\n5 -1\n7 4\n");
    let out = tvk(&["crossing", "--input", path_str(&input), "--r", "2"]);
    assert_eq!(code(&out), 2);
    assert_eq!(String::from_utf8(out.stderr).unwrap().lines().count(), 1);

    let out = tvk(&["crossing", "--input", path_str(&input), "--r", "2", "--perturb", "--seed", "7"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["perturbation"]["seed"], 7);
    let doc = write(&dir, "p.json", &serde_json::to_string(&json).unwrap());
    assert_eq!(code(&tvk(&["verify", "--partition", path_str(&doc)])), 0);
}

#[test]
fn malformed_inputs() {
    let dir = TempDir::new().unwrap();
    let ragged = write(&dir, "ragged.txt", "1 2\n3\n");
    assert_eq!(code(&tvk(&["crossing", "--input", path_str(&ragged), "--r", "2"])), 65);
    let junk = write(&dir, "junk.txt", "1 x\n");
    assert_eq!(code(&tvk(&["parity", "--input", path_str(&junk)])), 65);
    let missing = dir.path().join("nope.txt");
    assert_eq!(code(&tvk(&["crossing", "--input", path_str(&missing), "--r", "2"])), 74);
    let doc = write(&dir, "doc.json", "{ not json");
    assert_eq!(code(&tvk(&["verify", "--partition", path_str(&doc)])), 65);
    assert_eq!(code(&tvk(&["frobnicate"])), 64);
    assert_eq!(code(&tvk(&["crossing", "--r", "2"])), 64);
    assert_eq!(code(&tvk(&["--help"])), 0);
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let input = gen_file(&dir, "p.txt", 3, 12, 11);
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_tvk"))
            .args(["crossing", "--input", path_str(&input), "--r", "3"])
            .env("TVK_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(code(&one), 0, "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(code(&run("0")), 64);
}

#[test]
fn parity_cocycle_link_fs() {
    let dir = TempDir::new().unwrap();
    let six = gen_file(&dir, "six.txt", 2, 6, 3);
    let out = tvk(&["parity", "--input", path_str(&six), "--center", "1/7,-2/9"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["count"].as_u64().unwrap() % 2, 0);
    assert_eq!(json["even"], true);

    let out = tvk(&["cocycle", "--input", path_str(&six), "--center", "1/7,-2/9"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["holds"], true);

    let link = write(
        &dir,
        "link.txt",
        "-1 -3 0\n5 0 0\n0 5 0\n1 1 -1\n1 1 1\n-3 -3 1\n",
    );
    let out = tvk(&["link", "--input", path_str(&link), "--a", "0,1,2", "--b", "3,4,5"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["linked"], true);
    assert_eq!(code(&tvk(&["link", "--input", path_str(&link), "--a", "0,1", "--b", "3,4,5"])), 64);

    let out = tvk(&["fs"]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["status"], "CONFIRMED");
}

#[test]
fn crossing_simplices_with_discard() {
    let dir = TempDir::new().unwrap();
    let input = gen_file(&dir, "p.txt", 2, 8, 6);
    let out = tvk(&["crossing", "--input", path_str(&input), "--discard", "0,7"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let parts = json["parts"].as_array().unwrap();
    assert_eq!(parts.len(), 2);
    assert!(parts.iter().all(|p| p.as_array().unwrap().len() == 3));
    assert_eq!(json["discarded"], serde_json::json!([0, 7]));
}
