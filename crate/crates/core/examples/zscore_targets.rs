//! Per-phone duration statistics and the z-score training targets.
//!
//! ```bash
//! cargo run --example zscore_targets
//! ```

use durhybrid::stats::ZScore;
use durhybrid::{compute_phone_stats, generate_synthetic_corpus, mse_percent_variance, PhoneInventory, SyntheticSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let synth = generate_synthetic_corpus(&SyntheticSpec::default(), &PhoneInventory::timit())?;
    let stats = compute_phone_stats(&synth.corpus)?;

    println!("phone   mean_ms   std_ms  count");
    for (phone, s) in stats.phones().take(6) {
        println!("{phone:<6} {:>8.1} {:>8.1} {:>6}", s.mean_ms, s.std_ms, s.count);
    }

    let z = stats.scale_duration(150.0, "aa")?;
    println!("\n150 ms of aa is {:+.3} standard deviations", z.value());
    println!("and back: {:.6} ms", stats.unscale(z, "aa")?);
    println!("+1 sd of iy is {:.1} ms", stats.unscale(ZScore(1.0), "iy")?);

    // Error is reported as a percent of target variance.
    let targets: Vec<f64> = synth
        .corpus
        .segments()
        .map(|s| stats.scale_duration(s.duration_ms.unwrap_or_default(), &s.phone).map(ZScore::value))
        .collect::<Result<_, _>>()?;
    let zeros = vec![0.0; targets.len()];
    println!(
        "\npredicting the phone mean everywhere scores {:.1}% of variance",
        mse_percent_variance(&zeros, &targets)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
