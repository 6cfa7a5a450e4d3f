//! The doubled-string family: certificate sizes per radius, and the
//! fingerprint-and-glue attack on a scheme whose certificates are too short.

use localcert::certify::run_all;
use localcert::lowerbound::glue_demo;
use localcert::schemes::pdelta::lemma6_bound;
use localcert::schemes::{PDeltaInstance, PDeltaScheme};
use localcert::{BitString, Result, Scheme};

pub fn run_example() -> Result<()> {
    let half: BitString = "10110011".parse()?;
    let inst = PDeltaInstance::generate(3, 4, &half, None)?;
    let n = inst.graph().vertex_count();
    println!("P_3 instance, depth {}, {n} vertices, leaf string {}", inst.depth(), inst.leaf_string());
    for r in 1..=4 {
        let scheme = PDeltaScheme::new(3, r)?;
        let certs = scheme.prove(inst.graph())?;
        let accepted = run_all(&scheme, inst.graph(), &certs)?.accepted;
        println!("  r = {r}: largest {} bits, bound {}, accepted {accepted}", certs.size(), lemma6_bound(3, r, n));
    }

    for cap in [Some(1), None] {
        let (demo, _) = glue_demo(3, 3, 1, cap)?;
        match &demo.collision {
            Some(c) => println!(
                "{}: collision {} / {}, glued graph member {}, verifier accepts {}",
                demo.scheme, c.left, c.right, c.membership.member, c.verdict.accepted
            ),
            None => println!(
                "{}: {} distinct fingerprints for {} strings, no collision",
                demo.scheme, demo.search.distinct_fingerprints, demo.search.distinct_strings
            ),
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
