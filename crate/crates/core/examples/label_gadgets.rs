//! Labels as subgraphs: encode a labeled graph as an unlabeled one, decode
//! it back, and carry schemes across in both directions.

use localcert::certify::run_all;
use localcert::gadget::{
    decode_graph, encode_graph, labeled_size_bound, size_claim, unlabeled_size_bound, wrap_labeled, wrap_unlabeled,
};
use localcert::graph::{random_labels, random_tree};
use localcert::schemes::KColoring;
use localcert::{Result, Scheme};

pub fn run_example() -> Result<()> {
    let g = random_labels(&random_tree(6, 3), 3, 9);
    let h = encode_graph(&g);
    println!("G: {} vertices, labels up to {} bits", g.vertex_count(), g.max_label_bits());
    println!("g(G): {} vertices, claim {}", h.vertex_count(), size_claim(&g));
    println!("decodes back to G: {}", decode_graph(&h)? == g);

    let coloring = KColoring::new(2)?;
    let base = coloring.prove(&g)?;
    let up = wrap_unlabeled(coloring.clone());
    let certs = up.prove(&h)?;
    println!(
        "{} on g(G): accepted {}, largest {} bits, bound {}",
        up.name(),
        run_all(&up, &h, &certs)?.accepted,
        certs.size(),
        unlabeled_size_bound(g.max_label_bits(), base.size())
    );

    let down = wrap_labeled(wrap_unlabeled(coloring));
    let inner = down.inner().prove(&h)?;
    let certs = down.certificates_for(&g, &inner);
    println!(
        "{} on G: accepted {}, largest {} bits, bound {}",
        down.name(),
        run_all(&down, &g, &certs)?.accepted,
        certs.size(),
        labeled_size_bound(g.max_label_bits(), inner.size(), h.vertex_count())
    );
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
