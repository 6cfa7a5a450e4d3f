//! Paths: canonical identifiers from constant-size local rules, the
//! weak-to-strong lift, and shaving a radius-d scheme down to radius 1.

use localcert::certify::run_all;
use localcert::graph::path;
use localcert::paths::{compare_with_generic, count_locally_canonical, lift_weak, shave, EvenLength, UniformLabels};
use localcert::{Graph, Result, Scheme};

fn uniform_path(n: usize, label: &str) -> Result<Graph> {
    path(n).with_labels((1..=n).map(|v| Ok((v, label.parse()?))).collect::<Result<Vec<_>>>()?)
}

pub fn run_example() -> Result<()> {
    for n in 1..=7 {
        let (count, _) = count_locally_canonical(n);
        println!("n = {n}: {count} locally canonical assignments");
    }

    let lifted = lift_weak(EvenLength);
    for n in [6, 7] {
        let g = path(n).relabel_ids(|v| 100 + 3 * v)?;
        match lifted.prove(&g) {
            Ok(certs) => println!("{} on P{n}: accepted {}", lifted.name(), run_all(&lifted, &g, &certs)?.accepted),
            Err(e) => println!("{} on P{n}: {e}", lifted.name()),
        }
    }

    let base = UniformLabels::new(3)?;
    let shaved = shave(base.clone())?;
    let g = uniform_path(12, "101")?;
    let certs = shaved.prove(&g)?;
    println!(
        "{} on P12: radius {}, accepted {}",
        shaved.name(),
        shaved.radius(),
        run_all(&shaved, &g, &certs)?.accepted
    );
    for n in [16, 64, 256] {
        let row = compare_with_generic(&base, &uniform_path(n, "1")?)?;
        println!(
            "n = {n}: shaved {} bits ({} id field), generic {} bits ({} id fields)",
            row.shaved_max_bits, row.shaved_id_fields, row.generic_max_bits, row.generic_id_fields
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
