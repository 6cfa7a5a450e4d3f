//! The `localcert` binary: exit codes, determinism and replayable reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_localcert"));
    c.env_remove("LOCALCERT_JOBS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("localcert-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn report(path: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(Path::new(path)).unwrap()).unwrap()
}

fn stripped(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&[]), 64);
    assert_eq!(code(&["frobnicate"]), 64);
    assert_eq!(code(&["certify", "--scheme", "tree-dist"]), 64);
    assert_eq!(code(&["gen", "--kind", "hexagon"]), 64);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
}

#[test]
fn every_subcommand_is_wired() {
    let s = Scratch::new("wired");
    let (tree, cyc, lab, pd, enc, dec, r) = (
        s.path("t.json"),
        s.path("c.json"),
        s.path("l.json"),
        s.path("p.json"),
        s.path("h.json"),
        s.path("d.json"),
        s.path("r.json"),
    );
    assert_eq!(code(&["schemes"]), 0);
    assert_eq!(code(&["gen", "--kind", "random-tree", "--n", "9", "--out", &tree]), 0);
    assert_eq!(code(&["gen", "--kind", "cycle", "--n", "4", "--out", &cyc]), 0);
    assert_eq!(code(&["gen", "--kind", "path", "--n", "6", "--label-bits", "2", "--out", &lab, "--format", "text"]), 0);
    assert_eq!(code(&["gen", "--kind", "pdelta", "--delta", "3", "--depth", "3", "--permute", "--out", &pd]), 0);

    assert_eq!(code(&["certify", "--scheme", "tree-dist", "--graph", &tree, "--report", &r]), 0);
    assert_eq!(report(&r)["verdict"], "accepted");
    assert_eq!(code(&["certify", "--scheme", "tree-dist", "--graph", &cyc, "--report", &r]), 1);
    assert_eq!(code(&["certify", "--scheme", "pdelta:3:2", "--graph", &pd, "--report", &r]), 0);
    assert!(report(&r)["bounds"]["lemma6"].as_u64().unwrap() >= report(&r)["sizes"]["max"].as_u64().unwrap());

    assert_eq!(code(&["attack", "--scheme", "tree-dist", "--graph", &cyc, "--max-bits", "3", "--report", &r]), 0);
    assert_eq!(code(&["attack", "--scheme", "accept-all", "--graph", &cyc, "--max-bits", "1", "--report", &r]), 1);
    assert_eq!(
        code(&["attack", "--scheme", "tree-dist", "--graph", &cyc, "--max-bits", "8", "--budget", "5", "--report", &r]),
        2
    );
    assert_eq!(report(&r)["verdict"], "budget-exceeded");

    assert_eq!(code(&["reduce", "--scheme", "tree-dist@3", "--delta", "2", "--graph", &tree, "--report", &r]), 0);
    let rep = report(&r);
    assert!(rep["sizes"]["max"].as_u64().unwrap() <= rep["bounds"]["size_bound"].as_u64().unwrap());
    assert_eq!(
        code(&[
            "reduce-verify",
            "--scheme",
            "tree-dist@2",
            "--delta",
            "1",
            "--graph",
            &tree,
            "--mutations",
            "20",
            "--report",
            &r
        ]),
        0
    );
    assert_eq!(report(&r)["details"]["mutations"]["accepted_inconsistent"], 0);
    assert_eq!(code(&["reduce", "--scheme", "tree-dist", "--delta", "1", "--graph", &tree, "--report", &r]), 2);

    assert_eq!(code(&["encode-labels", "--graph", &lab, "--out", &enc, "--report", &r]), 0);
    assert_eq!(code(&["decode-labels", "--graph", &enc, "--out", &dec, "--report", &r]), 0);
    assert_eq!(
        localcert::graph::parse_graph(&std::fs::read_to_string(&dec).unwrap()).unwrap(),
        localcert::graph::parse_graph(&std::fs::read_to_string(&lab).unwrap()).unwrap()
    );
    assert_eq!(code(&["decode-labels", "--graph", &cyc, "--out", &dec, "--report", &r]), 2);

    assert_eq!(
        code(&["wrap", "--scheme", "kcolor:2", "--direction", "to-unlabeled", "--graph", &lab, "--report", &r]),
        0
    );
    assert_eq!(
        code(&["wrap", "--scheme", "wrapped:kcolor:2", "--direction", "to-labeled", "--graph", &lab, "--report", &r]),
        0
    );
    assert_eq!(code(&["shave", "--scheme", "uniform:2", "--d", "2", "--graph", &lab, "--report", &r]), 1);
    assert_eq!(code(&["shave", "--scheme", "even-n", "--d", "2", "--graph", &tree, "--report", &r]), 2);
    assert_eq!(code(&["stats", "--graph", &pd, "--delta", "3", "--report", &r]), 0);
    assert_eq!(report(&r)["details"]["pdelta"]["member"], true);
    assert_eq!(code(&["certify", "--scheme", "tree-dist", "--graph", &s.path("missing.json"), "--report", &r]), 2);
    assert_eq!(report(&r)["outcome"], "error");
}

#[test]
fn glue_demo_replays_through_certify() {
    let s = Scratch::new("glue");
    let dir = s.path("emit");
    let r = s.path("r.json");
    assert_eq!(
        code(&[
            "glue-demo",
            "--delta",
            "3",
            "--depth",
            "3",
            "--r",
            "1",
            "--truncate-bits",
            "1",
            "--emit",
            &dir,
            "--report",
            &r
        ]),
        1
    );
    assert_eq!(report(&r)["verdict"], "fooled");
    let graph = format!("{dir}/glued.json");
    let certs = format!("{dir}/glued.certs.json");
    assert_eq!(
        code(&["certify", "--scheme", "pdelta:3:1:cap1", "--graph", &graph, "--certs", &certs, "--report", &r]),
        0
    );
    assert_eq!(code(&["certify", "--scheme", "pdelta:3:1", "--graph", &graph, "--certs", &certs, "--report", &r]), 1);
    assert_eq!(code(&["stats", "--graph", &graph, "--delta", "3", "--report", &r]), 0);
    assert_eq!(report(&r)["details"]["pdelta"]["member"], false);
    assert_eq!(code(&["glue-demo", "--delta", "3", "--depth", "3", "--r", "1", "--report", &r]), 0);
    assert_eq!(report(&r)["verdict"], "exhausted");
}

#[test]
fn reports_are_deterministic_under_a_seed() {
    let one = |seed: &str, jobs: &str| {
        let status = bin()
            .env("LOCALCERT_JOBS", jobs)
            .args([
                "--seed",
                seed,
                "gen",
                "--kind",
                "random-bounded-degree",
                "--n",
                "20",
                "--max-degree",
                "4",
                "--label-bits",
                "3",
            ])
            .output()
            .unwrap();
        assert_eq!(status.status.code(), Some(0));
        stripped(serde_json::from_slice(&status.stdout).unwrap())
    };
    let a = one("11", "1");
    let b = one("11", "3");
    let c = one("12", "1");
    assert_eq!(a["details"], b["details"]);
    assert_ne!(a["details"], c["details"]);
    let default_seed = stripped(serde_json::from_slice(&run(&["schemes"]).stdout).unwrap());
    assert_eq!(default_seed["seed"], localcert::cli::DEFAULT_SEED);
}

#[test]
fn in_process_runner_matches_the_binary() {
    assert_eq!(localcert::cli::run(["localcert", "schemes", "--report", "/dev/null"]), 0);
    assert_eq!(localcert::cli::run(["localcert", "nonsense"]), 64);
}
