//! Certify spanning-tree distances, then show a cycle cannot be certified
//! with short certificates.

use localcert::certify::{check_completeness, run_all, soundness_search, SearchConfig};
use localcert::graph::{cycle, random_tree};
use localcert::schemes::TreeDistances;
use localcert::{Result, Scheme};

pub fn run_example() -> Result<()> {
    let trees: Vec<_> = (0..10).map(|seed| random_tree(12, seed)).collect();
    let report = check_completeness(&TreeDistances, &trees)?;
    println!(
        "{} trees, failures {}, largest assignment {} bits",
        report.instances,
        report.failures.len(),
        report.max_cert_bits
    );

    let g = random_tree(8, 7);
    let certs = TreeDistances.prove(&g)?;
    for (v, c) in certs.iter() {
        println!("  vertex {v}: {c}");
    }
    println!("verdict: {:?}", run_all(&TreeDistances, &g, &certs)?);

    let c4 = cycle(4);
    let outcome = soundness_search(&TreeDistances, &c4, 4, &SearchConfig::default())?;
    println!("C4 against every assignment up to 4 bits: {outcome:?}");
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
