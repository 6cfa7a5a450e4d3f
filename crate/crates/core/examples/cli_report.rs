//! Drive the command line in-process and read back its JSON report.

use localcert::cli;
use localcert::Result;

pub fn run_example() -> Result<()> {
    let dir = std::env::temp_dir().join(format!("localcert-cli-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let graph = dir.join("tree.json");
    let report = dir.join("report.json");
    let graph_arg = graph.to_string_lossy().into_owned();
    let report_arg = report.to_string_lossy().into_owned();

    let code = cli::run([
        "localcert",
        "gen",
        "--kind",
        "random-tree",
        "--n",
        "10",
        "--out",
        &graph_arg,
        "--report",
        &report_arg,
    ]);
    println!("gen exited {code}");
    let code = cli::run([
        "localcert",
        "--seed",
        "7",
        "certify",
        "--scheme",
        "tree-dist",
        "--graph",
        &graph_arg,
        "--report",
        &report_arg,
    ]);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report)?)?;
    println!("certify exited {code}: verdict {}, sizes {}", doc["verdict"], doc["sizes"]);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
