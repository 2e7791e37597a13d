//! Lay out the input vector and encode one windowed segment.
//!
//! ```bash
//! cargo run --example encode_window
//! ```

use durhybrid::features::{assemble_window, encode_utterance};
use durhybrid::{build_layout, derive_positions, generate_synthetic_corpus, LayoutConfig, PhoneInventory, RuleSet, RulesMode, SyntheticSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inv = PhoneInventory::timit();
    let rules = RuleSet::default_klatt();
    for mode in [RulesMode::Off, RulesMode::PerSlot, RulesMode::CenterOnly] {
        for window in [1, 3, 5, 7] {
            let layout = build_layout(&LayoutConfig { window, rules: mode, rules_width: rules.len() }, &inv)?;
            print!("{:>5}", layout.total_width());
        }
        println!("  inputs for windows 1/3/5/7, rules {}", mode.code());
    }

    let layout = build_layout(&LayoutConfig::default(), &inv)?;
    println!("\nper-slot blocks (window {}, fingerprint {}):", layout.window(), layout.fingerprint());
    for b in layout.slot_blocks() {
        println!("  {:<10} offset {:>3} width {:>2}", b.kind.name(), b.offset, b.width);
    }

    let synth = generate_synthetic_corpus(&SyntheticSpec { utterances: 1, seed: 3, ..SyntheticSpec::default() }, &inv)?;
    let positioned = derive_positions(&synth.corpus, &inv)?.remove(0);
    let encoded = encode_utterance(&positioned, &layout, Some(&rules))?;
    let v = assemble_window(&encoded, 0, &layout)?;
    println!("\nactive inputs for the first segment ({}), left slot is padding:", positioned[0].record.phone);
    for (col, _) in v.values.iter().enumerate().filter(|(_, &x)| x != 0.0) {
        let info = layout.column(col);
        println!("  col {col:>3}  slot {:?}  {} #{}", info.slot, info.kind.name(), info.index);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
