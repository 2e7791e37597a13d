//! Train one network per (window width, rules on/off) on a small corpus and
//! print the error-vs-window curves.
//!
//! ```bash
//! cargo run --example window_sweep
//! ```

use durhybrid::analysis::{Report, ReportFormat, SweepConfig};
use durhybrid::{generate_synthetic_corpus, window_sweep, Hyperparams, PhoneInventory, SyntheticSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let synth = generate_synthetic_corpus(&SyntheticSpec { utterances: 40, seed: 7, ..SyntheticSpec::default() }, &PhoneInventory::timit())?;
    let config = SweepConfig {
        widths: vec![1, 3, 5, 7],
        modes: vec![false, true],
        held_out: 10,
        hyperparams: Hyperparams { epochs: 60, ..Hyperparams::default() },
        ..SweepConfig::default()
    };
    let report = window_sweep(&synth.corpus, &config)?;

    print!("{}", report.render(ReportFormat::Tsv));
    println!();
    print!("{}", report.render(ReportFormat::PlotData));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
