//! The `durhybrid` command line: `train`, `eval`, `predict`, `sweep`,
//! `contrib` and `synth`.
//!
//! Option values resolve as flag, then the TOML file named by
//! `DURHYBRID_CONFIG`, then the built-in default. Exit codes: 0 success,
//! 1 usage or configuration error, 2 data or model error. Diagnostics go to
//! standard error as `E:<category>:<message>`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::analysis::{
    contribution_table, top_rule_contributions, window_sweep, Report, ReportFormat, StatsScope, SweepConfig,
};
use crate::corpus::{emit_corpus, parse_corpus, parse_unlabeled_corpus, split_train_test, Corpus};
use crate::error::Error;
use crate::features::{build_dataset, build_inputs, build_layout, EncodingLayout, LayoutConfig, RulesMode};
use crate::inventory::PhoneInventory;
use crate::model::{evaluate, init_network, load_model, save_model, train, Hyperparams, ModelError, Network};
use crate::rules::{load_ruleset, RuleSet};
use crate::stats::{compute_phone_stats, PhoneStats, ZScore};
use crate::synth::{generate_synthetic_corpus, SyntheticSpec};

/// Environment variable naming the defaults file.
pub const CONFIG_ENV: &str = "DURHYBRID_CONFIG";

pub const DEFAULT_WINDOW: usize = 3;
pub const DEFAULT_HIDDEN: &[usize] = &[20];
pub const DEFAULT_HELD_OUT: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "durhybrid", version, about = "Segment duration modelling with rule firings and a feedforward network")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train a model; writes the model file and `<out>.stats.tsv`.
    Train(TrainArgs),
    /// Percent-of-variance error of a model on a labelled corpus.
    Eval(EvalArgs),
    /// Predicted durations in milliseconds, as a corpus TSV.
    Predict(PredictArgs),
    /// Train one network per (window width, rules mode) and report errors.
    Sweep(SweepArgs),
    /// Absolute first-layer weight totals per input type.
    Contrib(ContribArgs),
    /// Generate a rule-driven synthetic corpus.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RulesFlag {
    /// Firing bits in every window slot.
    On,
    Off,
    /// Firing bits for the centre segment only.
    Center,
}

impl From<RulesFlag> for RulesMode {
    fn from(f: RulesFlag) -> Self {
        match f {
            RulesFlag::On => RulesMode::PerSlot,
            RulesFlag::Off => RulesMode::Off,
            RulesFlag::Center => RulesMode::CenterOnly,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Modes {
    Both,
    With,
    Without,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeFlag {
    Train,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatFlag {
    Tsv,
    Csv,
    Plotdata,
}

impl From<FormatFlag> for ReportFormat {
    fn from(f: FormatFlag) -> Self {
        match f {
            FormatFlag::Tsv => ReportFormat::Tsv,
            FormatFlag::Csv => ReportFormat::Csv,
            FormatFlag::Plotdata => ReportFormat::PlotData,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct LayoutArgs {
    /// Context window width (odd) [default: 3, or the model's]
    #[arg(long)]
    pub window: Option<usize>,
    /// Rule firing inputs [default: on, or the model's]
    #[arg(long, value_enum)]
    pub rules: Option<RulesFlag>,
    /// Rule set file replacing the built-in 30 cases
    #[arg(long)]
    pub rules_config: Option<PathBuf>,
    /// Phone inventory table replacing the built-in TIMIT set
    #[arg(long)]
    pub inventory: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TrainingArgs {
    /// Hidden layer sizes, comma separated [default: 20]
    #[arg(long, value_delimiter = ',')]
    pub hidden: Option<Vec<usize>>,
    /// Learning rate [default: 0.01]
    #[arg(long)]
    pub lr: Option<f64>,
    /// Momentum [default: 0.9]
    #[arg(long)]
    pub momentum: Option<f64>,
    /// Minibatch size [default: 16]
    #[arg(long)]
    pub batch: Option<usize>,
    /// Training epochs [default: 200]
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Early-stopping patience in epochs; off unless given
    #[arg(long)]
    pub patience: Option<usize>,
    /// Seed for initialisation, shuffling and splitting [default: 1]
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Model output path
    #[arg(long)]
    pub out: PathBuf,
    /// Utterances held out and scored as a test set [default: 0]
    #[arg(long)]
    pub held_out: Option<usize>,
    #[command(flatten)]
    pub layout: LayoutArgs,
    #[command(flatten)]
    pub training: TrainingArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub corpus: PathBuf,
    /// Stats file [default: <model>.stats.tsv]
    #[arg(long)]
    pub stats: Option<PathBuf>,
    #[command(flatten)]
    pub layout: LayoutArgs,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Corpus whose duration column may be `-`
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Output path [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub layout: LayoutArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Window widths, comma separated [default: 1,3,5,7]
    #[arg(long, value_delimiter = ',')]
    pub widths: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "both")]
    pub modes: Modes,
    /// Utterances held out as the test set [default: 10]
    #[arg(long)]
    pub held_out: Option<usize>,
    /// Which side of the split the z-score statistics come from
    #[arg(long, value_enum, default_value = "train")]
    pub stats_scope: ScopeFlag,
    #[arg(long, value_enum)]
    pub format: Option<FormatFlag>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub rules_config: Option<PathBuf>,
    #[arg(long)]
    pub inventory: Option<PathBuf>,
    #[command(flatten)]
    pub training: TrainingArgs,
}

#[derive(Debug, Args)]
pub struct ContribArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Rank individual rule cases instead, keeping the top K
    #[arg(long)]
    pub top: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<FormatFlag>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub layout: LayoutArgs,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 130)]
    pub utterances: usize,
    #[arg(long, default_value_t = 8)]
    pub min_segments: usize,
    #[arg(long, default_value_t = 20)]
    pub max_segments: usize,
    /// Noise std as a fraction of each phone's base duration
    #[arg(long, default_value_t = 0.05)]
    pub noise: f64,
    /// Rule multiplier `ID=VALUE`; repeatable, overrides the default table
    #[arg(long = "multiplier", value_parser = parse_multiplier)]
    pub multipliers: Vec<(String, f64)>,
    /// Start from an empty multiplier table instead of the defaults
    #[arg(long)]
    pub only_multipliers: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Corpus output path [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the generating multipliers and base means
    #[arg(long)]
    pub truth: Option<PathBuf>,
    #[arg(long)]
    pub inventory: Option<PathBuf>,
}

fn parse_multiplier(s: &str) -> Result<(String, f64), String> {
    let (id, v) = s.split_once('=').ok_or("expected ID=VALUE")?;
    let v: f64 = v.parse().map_err(|_| format!("bad multiplier value {v:?}"))?;
    Ok((id.to_owned(), v))
}

/// Defaults file contents; every key optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub window: Option<usize>,
    pub rules: Option<String>,
    pub rules_config: Option<PathBuf>,
    pub inventory: Option<PathBuf>,
    pub hidden: Option<Vec<usize>>,
    pub lr: Option<f64>,
    pub momentum: Option<f64>,
    pub batch: Option<usize>,
    pub epochs: Option<usize>,
    pub patience: Option<usize>,
    pub seed: Option<u64>,
    pub held_out: Option<usize>,
    pub format: Option<String>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        let cfg: Self = toml::from_str(text).map_err(|e| e.to_string())?;
        if let Some(r) = &cfg.rules {
            RulesMode::from_code(r).ok_or_else(|| format!("rules = {r:?}: expected on, off or center"))?;
        }
        if let Some(f) = &cfg.format {
            f.parse::<ReportFormat>().map_err(|e| e.to_string())?;
        }
        Ok(cfg)
    }

    fn load() -> Result<Self, Failure> {
        match std::env::var_os(CONFIG_ENV) {
            None => Ok(Self::default()),
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| Failure::Usage {
                    category: "config",
                    message: format!("{}: {e}", Path::new(&path).display()),
                })?;
                Self::parse(&text).map_err(|message| Failure::Usage {
                    category: "config",
                    message: format!("{}: {message}", Path::new(&path).display()),
                })
            }
        }
    }

    fn rules_mode(&self) -> Option<RulesMode> {
        self.rules.as_deref().and_then(RulesMode::from_code)
    }

    fn format(&self) -> Option<ReportFormat> {
        self.format.as_deref().and_then(|f| f.parse().ok())
    }
}

enum Failure {
    Usage { category: &'static str, message: String },
    Data(Error),
}

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Data(e.into())
    }
}

type CmdResult = Result<(), Failure>;

/// Runs one invocation, writing to the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs one invocation with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                0
            } else {
                let _ = write!(err, "E:usage:{e}");
                1
            };
        }
    };
    let result = FileConfig::load().and_then(|cfg| dispatch(cli.command, &cfg, out));
    match result {
        Ok(()) => 0,
        Err(Failure::Usage { category, message }) => {
            let _ = writeln!(err, "E:{category}:{message}");
            1
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(err, "E:{}:{e}", e.category());
            2
        }
    }
}

fn dispatch(command: Command, cfg: &FileConfig, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Train(a) => cmd_train(a, cfg, out),
        Command::Eval(a) => cmd_eval(a, cfg, out),
        Command::Predict(a) => cmd_predict(a, cfg, out),
        Command::Sweep(a) => cmd_sweep(a, cfg, out),
        Command::Contrib(a) => cmd_contrib(a, cfg, out),
        Command::Synth(a) => cmd_synth(a, cfg, out),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => write_file(p, text)?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e))?,
    }
    Ok(())
}

fn load_inventory(flag: &Option<PathBuf>, cfg: &FileConfig) -> Result<PhoneInventory, Error> {
    match flag.as_ref().or(cfg.inventory.as_ref()) {
        None => Ok(PhoneInventory::timit()),
        Some(p) => Ok(PhoneInventory::parse(&read(p)?)?),
    }
}

fn load_rules(flag: &Option<PathBuf>, cfg: &FileConfig, inv: &PhoneInventory) -> Result<RuleSet, Error> {
    let text = match flag.as_ref().or(cfg.rules_config.as_ref()) {
        None => None,
        Some(p) => Some(read(p)?),
    };
    let rs = load_ruleset(text.as_deref(), false)?;
    rs.check_inventory(inv)?;
    Ok(rs)
}

fn hyperparams(a: &TrainingArgs, cfg: &FileConfig) -> Hyperparams {
    let d = Hyperparams::default();
    Hyperparams {
        learning_rate: a.lr.or(cfg.lr).unwrap_or(d.learning_rate),
        momentum: a.momentum.or(cfg.momentum).unwrap_or(d.momentum),
        batch_size: a.batch.or(cfg.batch).unwrap_or(d.batch_size),
        epochs: a.epochs.or(cfg.epochs).unwrap_or(d.epochs),
        patience: a.patience.or(cfg.patience),
        seed: a.seed.or(cfg.seed).unwrap_or(d.seed),
        ..d
    }
}

fn hidden(a: &TrainingArgs, cfg: &FileConfig) -> Vec<usize> {
    a.hidden
        .clone()
        .or_else(|| cfg.hidden.clone())
        .unwrap_or_else(|| DEFAULT_HIDDEN.to_vec())
}

fn stats_path_for(model: &Path) -> PathBuf {
    let mut s = model.as_os_str().to_owned();
    s.push(".stats.tsv");
    PathBuf::from(s)
}

fn cmd_train(a: TrainArgs, cfg: &FileConfig, out: &mut dyn Write) -> CmdResult {
    let inv = load_inventory(&a.layout.inventory, cfg)?;
    let ruleset = load_rules(&a.layout.rules_config, cfg, &inv)?;
    let corpus = parse_corpus(&read(&a.corpus)?, &inv)?;
    let hp = hyperparams(&a.training, cfg);
    let held_out = a.held_out.or(cfg.held_out).unwrap_or(0);
    let (train_c, test_c) = if held_out > 0 {
        let (tr, te) = split_train_test(&corpus, held_out, hp.seed)?;
        (tr, Some(te))
    } else {
        (corpus, None)
    };

    let layout = build_layout(
        &LayoutConfig {
            window: a.layout.window.or(cfg.window).unwrap_or(DEFAULT_WINDOW),
            rules: a
                .layout
                .rules
                .map(RulesMode::from)
                .or(cfg.rules_mode())
                .unwrap_or(RulesMode::PerSlot),
            rules_width: ruleset.len(),
        },
        &inv,
    )?;
    let rules = layout.rules_mode().enabled().then_some(&ruleset);
    let stats = compute_phone_stats(&train_c)?;
    let dataset = build_dataset(&train_c, &layout, &stats, rules)?;
    let mut net = init_network(&layout, &hidden(&a.training, cfg), hp.seed)?;
    net.meta.stats_fingerprint = Some(stats.fingerprint());
    net.meta.ruleset_version = rules.map(|r| r.version().to_owned());
    let (net, report) = train(net, &dataset, &hp)?;

    save_model(&net, &a.out).map_err(|e| Error::io(&a.out, e))?;
    write_file(&stats_path_for(&a.out), &stats.to_tsv())?;

    let mut text = String::new();
    text.push_str(&format!("segments\t{}\n", dataset.len()));
    text.push_str(&format!("weights\t{}\n", net.weight_count()));
    text.push_str(&format!("epochs\t{}\n", report.epochs_run()));
    text.push_str(&format!("train_error_pct\t{}\n", evaluate(&net, &dataset)?));
    if let Some(test_c) = test_c {
        let test_stats = stats.clone().with_unknown_fallback(true);
        let test_set = build_dataset(&test_c, &layout, &test_stats, rules)?;
        text.push_str(&format!("test_error_pct\t{}\n", evaluate(&net, &test_set)?));
    }
    text.push_str(&format!("weights_fingerprint\t{}\n", report.weights_fingerprint));
    emit(out, None, &text)
}

/// A saved model together with the layout, stats and rules it was trained
/// with, after fingerprint checks.
struct Loaded {
    net: Network,
    layout: EncodingLayout,
    stats: Option<PhoneStats>,
    ruleset: RuleSet,
}

fn load_trained(
    model: &Path,
    stats_flag: Option<&Path>,
    want_stats: bool,
    layout_args: &LayoutArgs,
    cfg: &FileConfig,
) -> Result<Loaded, Failure> {
    let net = load_model(model)?;
    let inv = load_inventory(&layout_args.inventory, cfg)?;
    let ruleset = load_rules(&layout_args.rules_config, cfg, &inv)?;
    let model_mode = RulesMode::from_code(&net.meta.rules_mode).ok_or_else(|| ModelError::Parse {
        line: 0,
        detail: format!("unknown rules mode {:?}", net.meta.rules_mode),
    })?;
    let layout = build_layout(
        &LayoutConfig {
            window: layout_args.window.unwrap_or(net.meta.window),
            rules: layout_args.rules.map(RulesMode::from).unwrap_or(model_mode),
            rules_width: ruleset.len(),
        },
        &inv,
    )?;
    if let (true, Some(v)) = (layout.rules_mode().enabled(), &net.meta.ruleset_version) {
        if v != ruleset.version() {
            return Err(ModelError::Fingerprint {
                what: "ruleset",
                model: v.clone(),
                given: ruleset.version().to_owned(),
            }
            .into());
        }
    }
    let stats = if want_stats {
        let path = stats_flag.map_or_else(|| stats_path_for(model), Path::to_path_buf);
        Some(PhoneStats::from_tsv(&read(&path)?)?.with_unknown_fallback(true))
    } else {
        None
    };
    net.check_compatible(&layout, stats.as_ref())?;
    Ok(Loaded {
        net,
        layout,
        stats,
        ruleset,
    })
}

fn cmd_eval(a: EvalArgs, cfg: &FileConfig, out: &mut dyn Write) -> CmdResult {
    let m = load_trained(&a.model, a.stats.as_deref(), true, &a.layout, cfg)?;
    let corpus = parse_corpus(&read(&a.corpus)?, m.layout.inventory())?;
    let rules = m.layout.rules_mode().enabled().then_some(&m.ruleset);
    let stats = m.stats.as_ref().expect("stats requested");
    let dataset = build_dataset(&corpus, &m.layout, stats, rules)?;
    let err = evaluate(&m.net, &dataset)?;
    emit(out, None, &format!("segments\t{}\nerror_pct\t{err}\n", dataset.len()))
}

/// Millisecond predictions for every segment, in corpus order.
pub fn predict_ms(net: &Network, layout: &EncodingLayout, stats: &PhoneStats, ruleset: Option<&RuleSet>, corpus: &Corpus) -> Result<Vec<f64>, Error> {
    let inputs = build_inputs(corpus, layout, ruleset)?;
    let zs = net.predict_all(&inputs)?;
    corpus
        .segments()
        .zip(zs)
        .map(|(s, z)| Ok(stats.unscale(ZScore(z), &s.phone)?))
        .collect()
}

fn cmd_predict(a: PredictArgs, cfg: &FileConfig, out: &mut dyn Write) -> CmdResult {
    let m = load_trained(&a.model, a.stats.as_deref(), true, &a.layout, cfg)?;
    let mut corpus = parse_unlabeled_corpus(&read(&a.corpus)?, m.layout.inventory())?;
    let rules = m.layout.rules_mode().enabled().then_some(&m.ruleset);
    let stats = m.stats.as_ref().expect("stats requested");
    let ms = predict_ms(&m.net, &m.layout, stats, rules, &corpus)?;
    let mut it = ms.into_iter();
    for utt in &mut corpus.utterances {
        for s in &mut utt.segments {
            s.duration_ms = it.next();
        }
    }
    emit(out, a.out.as_deref(), &emit_corpus(&corpus))
}

fn cmd_sweep(a: SweepArgs, cfg: &FileConfig, out: &mut dyn Write) -> CmdResult {
    let inv = load_inventory(&a.inventory, cfg)?;
    let ruleset = load_rules(&a.rules_config, cfg, &inv)?;
    let corpus = parse_corpus(&read(&a.corpus)?, &inv)?;
    let hp = hyperparams(&a.training, cfg);
    let sweep = SweepConfig {
        widths: a.widths.clone().unwrap_or_else(|| vec![1, 3, 5, 7]),
        modes: match a.modes {
            Modes::Both => vec![false, true],
            Modes::With => vec![true],
            Modes::Without => vec![false],
        },
        hidden: hidden(&a.training, cfg),
        held_out: a.held_out.or(cfg.held_out).unwrap_or(DEFAULT_HELD_OUT),
        seed: hp.seed,
        hyperparams: hp,
        stats_scope: match a.stats_scope {
            ScopeFlag::Train => StatsScope::Train,
            ScopeFlag::Full => StatsScope::Full,
        },
        inventory: inv,
        ruleset,
        ..SweepConfig::default()
    };
    let report = window_sweep(&corpus, &sweep)?;
    let format = a.format.map(ReportFormat::from).or(cfg.format()).unwrap_or(ReportFormat::Tsv);
    emit(out, a.out.as_deref(), &report.render(format))
}

fn cmd_contrib(a: ContribArgs, cfg: &FileConfig, out: &mut dyn Write) -> CmdResult {
    let m = load_trained(&a.model, None, false, &a.layout, cfg)?;
    let format = a.format.map(ReportFormat::from).or(cfg.format()).unwrap_or(ReportFormat::Tsv);
    let text = match a.top {
        None => contribution_table(&m.net, &m.layout)?.render(format),
        Some(k) => {
            let sep = if format == ReportFormat::Csv { "," } else { "\t" };
            let mut text = format!("rule{sep}absolute_weight_total\n");
            for (id, total) in top_rule_contributions(&m.net, &m.layout, &m.ruleset, k)? {
                text.push_str(&format!("{id}{sep}{total}\n"));
            }
            text
        }
    };
    emit(out, a.out.as_deref(), &text)
}

fn cmd_synth(a: SynthArgs, cfg: &FileConfig, out: &mut dyn Write) -> CmdResult {
    let inv = load_inventory(&a.inventory, cfg)?;
    let mut spec = SyntheticSpec {
        utterances: a.utterances,
        segments_per_utterance: (a.min_segments, a.max_segments),
        noise_rel: a.noise,
        seed: a.seed.or(cfg.seed).unwrap_or(1),
        ..SyntheticSpec::default()
    };
    if a.only_multipliers {
        spec.multipliers = BTreeMap::new();
    }
    spec.multipliers.extend(a.multipliers.iter().cloned());
    let synth = generate_synthetic_corpus(&spec, &inv)?;
    if let Some(p) = &a.truth {
        write_file(p, &synth.truth_tsv())?;
    }
    emit(out, a.out.as_deref(), &emit_corpus(&synth.corpus))
}
