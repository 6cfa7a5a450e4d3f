//! Exhaustive soundness search: a sound scheme survives, a broken one is fooled.

use localcert::certify::{run_all, soundness_search, AcceptAll, SearchConfig, SoundnessOutcome};
use localcert::graph::cycle;
use localcert::schemes::KColoring;
use localcert::Result;

pub fn run_example() -> Result<()> {
    let config = SearchConfig::default();
    let c5 = cycle(5);
    let two = KColoring::new(2)?;
    match soundness_search(&two, &c5, 2, &config)? {
        SoundnessOutcome::Sound { space_log2, steps } => {
            println!("kcolor:2 on C5: sound over 2^{space_log2} assignments, {steps} steps")
        }
        other => println!("kcolor:2 on C5: {other:?}"),
    }

    let broken = AcceptAll { radius: 1 };
    let outcome = soundness_search(&broken, &c5, 1, &config)?;
    let witness = outcome.witness().expect("accept-all is always fooled");
    println!("accept-all on C5: fooled by {:?}", witness.iter().map(|(v, c)| (v, c.to_string())).collect::<Vec<_>>());
    println!("witness re-validates: {}", run_all(&broken, &c5, witness)?.accepted);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
