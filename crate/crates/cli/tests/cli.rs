use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const EDGE3: &str = "uhg 1\n3 3 1\n1 2 3\n";
const BOWTIE: &str = "uhg 1\n3 5 2\n1 2 3\n1 4 5\n";
const GRID: &str = "uhg 1\n3 9 6\n1 2 3\n1 4 7\n2 5 8\n3 6 9\n4 5 6\n7 8 9\n";

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperindex"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn field<'a>(table: &'a str, key: &str) -> &'a str {
    table
        .lines()
        .find_map(|l| l.strip_prefix(key))
        .map(str::trim)
        .unwrap_or_else(|| panic!("no {key:?} in\n{table}"))
}

#[test]
fn index_single_edge_and_complete() {
    let dir = TempDir::new().unwrap();
    write(&dir, "e.uhg", EDGE3);
    let o = run(dir.path(), &["index", "e.uhg"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert_eq!(field(&t, "stabilizing index"), "3");
    assert_eq!(field(&t, "cyclic index"), "3");

    let o = run(dir.path(), &["generate", "--kind", "complete", "--m", "3", "--n", "4", "-o", "k4.uhg"]);
    assert!(o.status.success());
    let t = stdout(&run(dir.path(), &["index", "k4.uhg"]));
    assert_eq!(field(&t, "stabilizing index"), "1");
    assert_eq!(field(&t, "cyclic index"), "1");
}

#[test]
fn index_json_uses_decimal_string() {
    let dir = TempDir::new().unwrap();
    assert!(run(dir.path(), &["generate", "--kind", "path_hypertree", "--m", "5", "--s", "20", "-o", "t.uhg"])
        .status
        .success());
    let o = run(dir.path(), &["index", "--json", "t.uhg"]);
    assert!(o.status.success());
    let j = stdout(&o);
    assert!(j.contains("\"stabilizing_index\": \"867361737988403547205962240695953369140625\""), "{j}");
    let keys: Vec<usize> = ["\"m\"", "\"n\"", "\"k\"", "\"invariant_divisors\"", "\"free_rank\"", "\"stabilizing_index\"", "\"cyclic_index\"", "\"decomposition\"", "\"method\""]
        .iter()
        .map(|k| j.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "key order in {j}");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    write(&dir, "dis.uhg", "uhg 1\n3 6 2\n1 2 3\n4 5 6\n");
    write(&dir, "bad.uhg", "uhg 1\n3 3 1\n1 2 2\n");
    write(&dir, "e.uhg", EDGE3);
    let o = run(dir.path(), &["index", "dis.uhg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("disconnected"));
    let o = run(dir.path(), &["index", "bad.uhg"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(dir.path(), &["index", "missing.uhg"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["coalesce", "e.uhg", "9", "e.uhg", "1"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["generate", "--kind", "complete", "--m", "3", "--n", "3"]).status.code(), Some(2));
    // a non-converging power iteration is a verification failure
    let o = run(dir.path(), &["verify", "--spectral", "--max-iter", "0", "--tol", "1e-300", "e.uhg"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn snf_listing() {
    let dir = TempDir::new().unwrap();
    write(&dir, "e.uhg", EDGE3);
    let o = run(dir.path(), &["snf", "--verify", "e.uhg"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "invariant divisors: 1\nr: 1\nn-1-r: 1\nm^(n-1-r)·Πd_i: 3\nverify: PASS P·B·Q equals the diagonal form\n"
    );
    run(dir.path(), &["generate", "--kind", "path_hypertree", "--m", "3", "--s", "2", "-o", "t.uhg"]);
    let t = stdout(&run(dir.path(), &["snf", "t.uhg"]));
    assert!(t.contains("r: 2\n") && t.contains("n-1-r: 2\n") && t.contains(": 9\n"), "{t}");
    run(dir.path(), &["generate", "--kind", "complete", "--m", "3", "--n", "4", "-o", "k4.uhg"]);
    assert!(stdout(&run(dir.path(), &["snf", "k4.uhg"])).contains(": 1\n"));
}

#[test]
fn constructions_are_byte_exact() {
    let dir = TempDir::new().unwrap();
    assert!(run(dir.path(), &["generate", "--kind", "single_edge", "--m", "3", "-o", "e.uhg"]).status.success());
    assert_eq!(std::fs::read_to_string(dir.path().join("e.uhg")).unwrap(), EDGE3);
    assert!(run(dir.path(), &["coalesce", "e.uhg", "1", "e.uhg", "1", "-o", "bow.uhg"]).status.success());
    assert_eq!(std::fs::read_to_string(dir.path().join("bow.uhg")).unwrap(), BOWTIE);
    let o = run(dir.path(), &["cartesian", "e.uhg", "e.uhg"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), GRID);
}

#[test]
fn generate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = ["generate", "--kind", "random_hypertree", "--m", "4", "--s", "6", "--seed", "17"];
    let a = stdout(&run(dir.path(), &args));
    assert_eq!(a, stdout(&run(dir.path(), &args)));
    assert!(a.starts_with("uhg 1\n4 19 6\n"), "{a}");
}

#[test]
fn blocks_of_bowtie() {
    let dir = TempDir::new().unwrap();
    write(&dir, "bow.uhg", BOWTIE);
    let o = run(dir.path(), &["blocks", "bow.uhg"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert!(t.starts_with("blocks: 2\n"), "{t}");
    assert!(t.ends_with("cut vertices: 1\n"), "{t}");
}

#[test]
fn verify_modes() {
    let dir = TempDir::new().unwrap();
    write(&dir, "bow.uhg", BOWTIE);
    write(&dir, "e.uhg", EDGE3);
    let o = run(dir.path(), &["verify", "--brute", "bow.uhg"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("snf=9 brute=9"), "{}", stdout(&o));

    let o = run(dir.path(), &["verify", "--spectral", "e.uhg"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS") && stdout(&o).contains("eigenvectors=3"));

    run(dir.path(), &["generate", "--kind", "random_hypertree", "--m", "3", "--s", "3", "--seed", "2", "-o", "t.uhg"]);
    let o = run(dir.path(), &["verify", "--compose", "t.uhg"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("3 blocks: predicted s=27 c=3 direct s=27 c=3"), "{}", stdout(&o));

    // caps produce SKIPPED lines, not failures
    let o = run(dir.path(), &["verify", "--brute", "--cap", "10", "--jobs", "2", "bow.uhg"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert_eq!(t.lines().count(), 2);
    assert!(t.lines().all(|l| l.starts_with("SKIPPED")), "{t}");
}
