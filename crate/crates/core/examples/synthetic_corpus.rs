//! Generate a rule-driven synthetic corpus and show its ground truth.
//!
//! ```bash
//! cargo run --example synthetic_corpus
//! ```

use durhybrid::corpus::emit_corpus;
use durhybrid::{generate_synthetic_corpus, PhoneInventory, SyntheticSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SyntheticSpec {
        utterances: 20,
        seed: 42,
        ..SyntheticSpec::default()
    };
    let synth = generate_synthetic_corpus(&spec, &PhoneInventory::timit())?;
    println!(
        "{} utterances, {} segments ({})",
        synth.corpus.len(),
        synth.corpus.segment_count(),
        synth.corpus.source
    );

    let tsv = emit_corpus(&synth.corpus);
    println!("\nfirst rows:");
    for line in tsv.lines().take(8) {
        println!("  {line}");
    }

    println!("\nmultipliers that generated the durations:");
    for (id, m) in synth.truth.iter().filter(|(_, m)| *m != 1.0).take(8) {
        println!("  {id}  x{m}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
