//! Train the hybrid network, score it, save and reload it, and predict
//! durations in milliseconds.
//!
//! ```bash
//! cargo run --example train_and_predict
//! ```

use durhybrid::model::{evaluate, init_network, load_model, save_model, train};
use durhybrid::stats::ZScore;
use durhybrid::{
    build_dataset, build_layout, compute_phone_stats, generate_synthetic_corpus, split_train_test, Hyperparams,
    LayoutConfig, PhoneInventory, RuleSet, SyntheticSpec,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inv = PhoneInventory::timit();
    let rules = RuleSet::default_klatt();
    let synth = generate_synthetic_corpus(&SyntheticSpec { utterances: 60, ..SyntheticSpec::default() }, &inv)?;
    let (train_c, test_c) = split_train_test(&synth.corpus, 10, 1)?;

    let layout = build_layout(&LayoutConfig::default(), &inv)?;
    let stats = compute_phone_stats(&train_c)?;
    let train_set = build_dataset(&train_c, &layout, &stats, Some(&rules))?;
    let test_stats = stats.clone().with_unknown_fallback(true);
    let test_set = build_dataset(&test_c, &layout, &test_stats, Some(&rules))?;

    let mut net = init_network(&layout, &[20], 1)?;
    net.meta.stats_fingerprint = Some(stats.fingerprint());
    let hp = Hyperparams { epochs: 60, ..Hyperparams::default() };
    let (net, report) = train(net, &train_set, &hp)?;
    println!(
        "{} weights, {} epochs: train {:.1}% -> {:.1}% of variance, test {:.1}%",
        net.weight_count(),
        report.epochs_run(),
        report.train_error[0],
        evaluate(&net, &train_set)?,
        evaluate(&net, &test_set)?,
    );

    let dir = tempfile::tempdir()?;
    let path = dir.path().join("model.txt");
    save_model(&net, &path)?;
    let reloaded = load_model(&path)?;
    reloaded.check_compatible(&layout, Some(&stats))?;
    println!("reloaded model is identical: {}", reloaded == net);

    println!("\nphone  actual  predicted (ms)");
    for (seg, x) in test_c.segments().zip(&test_set.inputs).take(8) {
        let z = reloaded.forward(x)?;
        let ms = test_stats.unscale(ZScore(z.value()), &seg.phone)?;
        println!("{:<5} {:>7.1} {:>9.1}", seg.phone, seg.duration_ms.unwrap_or_default(), ms);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
