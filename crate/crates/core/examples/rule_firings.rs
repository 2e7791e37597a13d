//! Evaluate the 30 built-in rule conditions on a hand-labelled sentence and
//! explain why one case fired.
//!
//! ```bash
//! cargo run --example rule_firings
//! ```

use durhybrid::rules::explain_firing;
use durhybrid::{derive_positions, parse_corpus, PhoneInventory, RuleSet};

const SENTENCE: &str = "\
utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type
s1 dh 40 0 0 0 0 U F
s1 ax 45 0 0 0 0 U F
s1 k 70 1 1 0 0 P C
s1 ae 150 1 1 0 0 P C
s1 t 60 1 1 0 0 P C
s1 s 95 2 2 1 0 P C
s1 ih 70 2 2 1 0 P C
s1 t 55 3 2 1 0 S C
s1 ih 90 3 2 1 0 S C
s1 ng 80 3 2 1 0 S C
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inv = PhoneInventory::timit();
    let rules = RuleSet::default_klatt();
    let corpus = parse_corpus(SENTENCE, &inv)?;
    let segments = derive_positions(&corpus, &inv)?.remove(0);

    println!("rule set {} ({} cases)\n", rules.version(), rules.len());
    for seg in &segments {
        let fired = rules.fire(&inv, seg);
        let ids: Vec<&str> = rules
            .cases()
            .iter()
            .zip(fired.bits())
            .filter(|(_, &b)| b)
            .map(|(c, _)| c.id.as_str())
            .collect();
        println!(
            "{:<3} {:<2} {}",
            seg.record.phone,
            seg.role.code(),
            ids.join(" ")
        );
    }

    // The clause-final nucleus: why did R01 fire?
    let nucleus = &segments[8];
    let trace = explain_firing(&rules, &inv, nucleus);
    let r01 = trace.iter().find(|t| t.id == "R01").expect("R01 exists");
    println!("\nR01 on {}: fired={} because {}", nucleus.record.phone, r01.fired, r01.reason);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
