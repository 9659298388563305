use std::path::Path;
use std::process::{Command, Output};

fn tonelab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tonelab"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("p3.txt"), "# path on three vertices\n3 2\n0 1\n1 2\n").unwrap();
    std::fs::write(p.join("good.txt"), "2 5 3\n0: 1 2\n1: 3 4\n2: 1 5\n").unwrap();
    std::fs::write(p.join("bad.txt"), "2 5 3\n0: 1 2\n1: 3 4\n2: 1 2\n").unwrap();
    std::fs::write(p.join("broken.txt"), "2 5 3\n0: 1 2\n1: 4 3\n2: 1 5\n").unwrap();

    let ok = tonelab(p, &["verify", "--graph", "p3.txt", "--coloring", "good.txt"]);
    assert_eq!(ok.status.code(), Some(0));

    let bad = tonelab(p, &["verify", "--graph", "p3.txt", "--coloring", "bad.txt"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stdout(&bad).trim(), "0 2 2 2");

    let broken = tonelab(p, &["verify", "--graph", "p3.txt", "--coloring", "broken.txt"]);
    assert_eq!(broken.status.code(), Some(2));
    let missing = tonelab(p, &["verify", "--graph", "nope.txt", "--coloring", "good.txt"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn exact_and_tree_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("star.txt"), "4 3\n0 1\n0 2\n0 3\n").unwrap();

    let tau = tonelab(p, &["exact", "--graph", "star.txt", "--t", "2", "--out", "w.txt"]);
    assert_eq!(stdout(&tau), "tau=5\n");
    assert!(std::fs::read_to_string(p.join("w.txt")).unwrap().starts_with("2 5 4\n"));

    let no = tonelab(p, &["exact", "--graph", "star.txt", "--t", "2", "--k", "4"]);
    assert_eq!(stdout(&no), "colorable=no\n");

    let tree = tonelab(p, &["color-tree", "--graph", "star.txt", "--t", "2", "--out", "c.txt"]);
    assert_eq!(stdout(&tree), "k_used=5\n");
    let check = tonelab(p, &["verify", "--graph", "star.txt", "--coloring", "c.txt"]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn sparse_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("k3.txt"), "3 3\n0 1\n1 2\n0 2\n").unwrap();
    std::fs::write(p.join("star.txt"), "6 5\n0 1\n0 2\n0 3\n0 4\n0 5\n").unwrap();

    let fail = tonelab(
        p,
        &["color-sparse", "--graph", "k3.txt", "--t", "2", "--b0", "2", "--no-escalate", "--out", "c.txt"],
    );
    assert_eq!(fail.status.code(), Some(4));

    // K3 needs 6 colours against kappa(2) = 5, so the fallback escalates.
    let esc = tonelab(p, &["color-sparse", "--graph", "k3.txt", "--t", "2", "--b0", "2", "--out", "c.txt"]);
    assert_eq!(esc.status.code(), Some(3));

    let ok = tonelab(
        p,
        &["color-sparse", "--graph", "star.txt", "--t", "2", "--b0", "3", "--out", "s.txt", "--report", "r.csv"],
    );
    assert_eq!(ok.status.code(), Some(0));
    let report = std::fs::read_to_string(p.join("r.csv")).unwrap();
    assert!(report.starts_with("n,t,b0,max_degree,target_palette,palette,"));
}

#[test]
fn dense_report_columns() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let gen = tonelab(p, &["--seed", "3", "gen", "gnp", "--n", "50", "--p", "0.5", "--out", "g.txt"]);
    assert!(gen.status.success());
    let run = tonelab(
        p,
        &["color-dense", "--graph", "g.txt", "--t", "2", "--seed", "1", "--out", "c.txt", "--report", "r.csv"],
    );
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let report = std::fs::read_to_string(p.join("r.csv")).unwrap();
    let mut lines = report.lines();
    assert_eq!(lines.next(), Some("pass,sets,remainder,greedy_colors"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn gen_config_reports_simplicity() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("d.txt"), "2\n2\n2\n").unwrap();
    let out = tonelab(p, &["gen", "config", "--degrees", "d.txt", "--out", "g.txt"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s == "simple=true\n" || s == "simple=false\n");

    std::fs::write(p.join("odd.txt"), "1\n2\n").unwrap();
    let odd = tonelab(p, &["gen", "config", "--degrees", "odd.txt", "--out", "g.txt"]);
    assert_eq!(odd.status.code(), Some(2));
}
