//! Defaults file resolution. Kept in its own test binary because it sets a
//! process-wide environment variable.

use durhybrid::cli::{run_with, FileConfig, CONFIG_ENV};

fn run(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(std::iter::once("durhybrid").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(err).unwrap())
}

fn header_window(model: &str) -> String {
    std::fs::read_to_string(model)
        .unwrap()
        .lines()
        .find(|l| l.starts_with("window "))
        .unwrap()
        .to_owned()
}

#[test]
fn flag_beats_config_beats_default() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    let (corpus, model, cfg) = (p("c.tsv"), p("m.txt"), p("defaults.toml"));
    std::env::remove_var(CONFIG_ENV);
    assert_eq!(run(&["synth", "--utterances", "10", "--out", &corpus]).0, 0);

    assert_eq!(run(&["train", "--corpus", &corpus, "--out", &model, "--epochs", "1"]).0, 0);
    assert_eq!(header_window(&model), "window 3");

    std::fs::write(&cfg, "window = 5\nepochs = 1\nhidden = [3]\n").unwrap();
    std::env::set_var(CONFIG_ENV, &cfg);
    assert_eq!(run(&["train", "--corpus", &corpus, "--out", &model]).0, 0);
    assert_eq!(header_window(&model), "window 5");
    assert!(std::fs::read_to_string(&model).unwrap().contains("hidden 3\n"));

    assert_eq!(run(&["train", "--corpus", &corpus, "--out", &model, "--window", "1"]).0, 0);
    assert_eq!(header_window(&model), "window 1");

    std::fs::write(&cfg, "windw = 5\n").unwrap();
    let (code, err) = run(&["train", "--corpus", &corpus, "--out", &model]);
    assert_eq!(code, 1);
    assert!(err.starts_with("E:config:"), "{err}");
    std::env::remove_var(CONFIG_ENV);

    assert!(FileConfig::parse("rules = \"sometimes\"").is_err());
    assert!(FileConfig::parse("format = \"xml\"").is_err());
    assert_eq!(FileConfig::parse("").unwrap(), FileConfig::default());
}
