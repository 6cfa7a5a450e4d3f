//! Trade radius for certificate size: reduce a radius-3 scheme to radius 1.

use localcert::certify::{run_all, Widened};
use localcert::graph::random_tree;
use localcert::reduction::{check_lemmas, check_reconstruction, mutate, packet_count_bound, reduce, size_bound};
use localcert::schemes::TreeDistances;
use localcert::{Result, Scheme};

pub fn run_example() -> Result<()> {
    let base = Widened::new(TreeDistances, 3)?;
    let red = reduce(base.clone(), 2)?;
    let g = random_tree(20, 11);
    let base_certs = base.prove(&g)?;
    let certs = red.prove(&g)?;
    let verdict = run_all(&red, &g, &certs)?;
    let bound = size_bound(g.max_degree(), red.delta(), g.max_id(), base_certs.size(), g.max_label_bits());
    println!("{}: radius {}, accepted {}", red.name(), red.radius(), verdict.accepted);
    println!(
        "largest certificate {} bits (base {}), bound {bound}, at most {} packets each",
        certs.size(),
        base_certs.size(),
        packet_count_bound(g.max_degree(), red.delta())
    );
    println!("lemma violations: {}", check_lemmas(&red, &g, &certs).len());
    println!("reconstruction mismatches: {}", check_reconstruction(&red, &g)?.len());

    let (mut rejected, mut consistent) = (0, 0);
    for seed in 0..50 {
        let (bad, _) = mutate(&red, &g, &certs, seed);
        if !run_all(&red, &g, &bad)?.accepted {
            rejected += 1;
        } else if check_lemmas(&red, &g, &bad).is_empty() {
            consistent += 1;
        }
    }
    println!("50 mutations: {rejected} rejected, {consistent} accepted and still consistent");
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
