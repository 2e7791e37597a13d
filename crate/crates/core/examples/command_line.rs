//! Drive the `durhybrid` command line in-process: synth, train, eval,
//! predict and contrib.
//!
//! ```bash
//! cargo run --example command_line
//! ```

use durhybrid::cli::run;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (corpus, model) = (p("corpus.tsv"), p("model.txt"));

    let steps: Vec<Vec<&str>> = vec![
        vec!["synth", "--utterances", "30", "--out", &corpus],
        vec!["train", "--corpus", &corpus, "--out", &model, "--epochs", "40", "--held-out", "5"],
        vec!["eval", "--model", &model, "--corpus", &corpus],
        vec!["contrib", "--model", &model, "--top", "3"],
        // A model trained with window 3 refuses a window-5 layout: exit 2.
        vec!["eval", "--model", &model, "--corpus", &corpus, "--window", "5"],
    ];
    for args in steps {
        println!("$ durhybrid {}", args.join(" "));
        let code = run(std::iter::once("durhybrid").chain(args.iter().copied()));
        println!("[exit {code}]\n");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
