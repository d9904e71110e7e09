use std::path::PathBuf;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_so4cat"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn here(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(here(&format!("golden/{name}"))).unwrap()
}

#[test]
fn eval_theta_of_p() {
    let o = run(&["eval", &here("data/theta_p.json")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(q1^2 + 1 + q1^-2)");
    let o = run(&["eval", &here("data/theta_p.json"), "--oracle"]);
    assert_eq!(stdout(&o).trim(), "(q1^2 + 1 + q1^-2)");
}

#[test]
fn eval_empty_is_one() {
    let o = run(&["eval", &here("data/empty.json")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn eval_specialized() {
    // [3] at q = e^{iπ/3} vanishes
    let o = run(&["eval", &here("data/theta_p.json"), "--q1", "root:6:1", "--q2", "2", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["re"].as_f64().unwrap().abs() < 1e-12);
    let o = run(&["eval", &here("data/theta_p.json"), "--q1", "root:6:1", "--q2", "2", "--symbolic"]);
    assert_eq!(stdout(&o).trim(), "(q1^2 + 1 + q1^-2)");
    assert!(!run(&["eval", &here("data/theta_p.json"), "--q1", "1+1i"]).status.success());
}

#[test]
fn eval_errors_exit_nonzero() {
    for f in ["data/torus.json", "data/open.json", "data/missing.json"] {
        let o = run(&["eval", &here(f)]);
        assert!(!o.status.success(), "{f}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
}

#[test]
fn eval_random_diagram_matches_oracle() {
    let dir = std::env::temp_dir().join(format!("so4cat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..5 {
        let d = so4cat::skein::random_closed_diagram(&mut rng, 6);
        let f = dir.join(format!("d{i}.json"));
        std::fs::write(&f, so4cat::skein::serialize(&d)).unwrap();
        let f = f.to_string_lossy().into_owned();
        let a = stdout(&run(&["eval", &f]));
        let b = stdout(&run(&["eval", &f, "--oracle"]));
        let c = stdout(&run(&["eval", &f, "--strategy", "innermost"]));
        let pa = so4cat::scalars::parse_ratfunc(a.trim()).unwrap();
        assert_eq!(pa, so4cat::scalars::parse_ratfunc(b.trim()).unwrap());
        assert_eq!(pa, so4cat::scalars::parse_ratfunc(c.trim()).unwrap());
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_passes_and_matches_golden() {
    let o = run(&["verify"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    assert_eq!(stdout(&run(&["verify", "--json"])), golden("verify.json"));
}

#[test]
fn fusion_outputs() {
    assert_eq!(stdout(&run(&["fusion", "--n1", "3", "--n2", "4", "--json"])), golden("fusion_3_4.json"));
    assert_eq!(stdout(&run(&["fusion", "--n1", "inf", "--n2", "inf", "--hom-dim", "2", "2"])).trim(), "4");
    let dot = stdout(&run(&["fusion", "--n1", "5", "--n2", "8", "--dot"]));
    assert!(dot.starts_with("graph \"K_{5,8}\""));
    // each of the four column gaps carries 7 diagonal edges
    assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 4 * 7);
    assert!(!run(&["fusion", "--n1", "1", "--n2", "3"]).status.success());
    assert!(!run(&["fusion", "--dot"]).status.success());
}

#[test]
fn rank_matches_hom_dim() {
    let r = stdout(&run(&["rank", "--n1", "4", "--n2", "5", "--k", "3"]));
    let h = stdout(&run(&["fusion", "--n1", "4", "--n2", "5", "--hom-dim", "3", "3"]));
    assert_eq!(r, h);
    assert_eq!(stdout(&run(&["rank", "--n1", "4", "--n2", "5", "--k", "3", "--json"])), golden("rank_4_5_3.json"));
}

#[test]
fn braidings_generic() {
    let o = run(&["braidings", "--q1", "0.8+0.9i", "--q2=-1.1+0.35i", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["distinct"], 8);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 8);
    assert!(classes.iter().all(|c| c["ybe"] == true && c["inverse_fourier"] == true));
    assert_eq!(stdout(&run(&["braidings", "--json"])), golden("braidings.json"));
}

#[test]
fn braidings_at_rank_two() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["braidings", "--q1", "root:6:1", "--q2", "root:6:1", "--json"]))).unwrap();
    assert_eq!(v["distinct"], 2);
}

#[test]
fn fuzz_is_reproducible() {
    let args = ["fuzz", "--coupons", "6", "--trials", "40", "--seed", "9", "--json"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&run(&args)));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["mismatches"], 0);
}
