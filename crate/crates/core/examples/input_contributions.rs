//! Train a window-3 network with rule firings and rank its inputs by the
//! absolute first-layer weight attached to them.
//!
//! ```bash
//! cargo run --example input_contributions
//! ```

use durhybrid::analysis::{Report, ReportFormat};
use durhybrid::model::{init_network, train};
use durhybrid::{
    build_dataset, build_layout, compute_phone_stats, contribution_table, generate_synthetic_corpus,
    top_rule_contributions, Hyperparams, LayoutConfig, PhoneInventory, RuleSet, SyntheticSpec,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inv = PhoneInventory::timit();
    let rules = RuleSet::default_klatt();
    let synth = generate_synthetic_corpus(&SyntheticSpec { utterances: 60, ..SyntheticSpec::default() }, &inv)?;
    let layout = build_layout(&LayoutConfig::default(), &inv)?;
    let stats = compute_phone_stats(&synth.corpus)?;
    let data = build_dataset(&synth.corpus, &layout, &stats, Some(&rules))?;
    let (net, _) = train(init_network(&layout, &[20], 1)?, &data, &Hyperparams { epochs: 60, ..Hyperparams::default() })?;

    let table = contribution_table(&net, &layout)?;
    print!("{}", table.render(ReportFormat::Tsv));

    println!("\nrule cases with the most weight:");
    for (id, total) in top_rule_contributions(&net, &layout, &rules, 5)? {
        let truth = synth.truth.iter().find(|(r, _)| *r == id).map_or(1.0, |(_, m)| *m);
        println!("  {id}  {total:>6.2}  (generating multiplier {truth})");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
