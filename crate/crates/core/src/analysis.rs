//! Window-size sweeps and first-layer input contribution tables.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::{split_train_test, Corpus, CorpusError};
use crate::features::{build_dataset, build_layout, BlockKind, EncodingLayout, FeatureError, LayoutConfig, RulesMode};
use crate::inventory::PhoneInventory;
use crate::model::{evaluate, init_network, train, Hyperparams, ModelError, Network};
use crate::rules::RuleSet;
use crate::stats::{compute_phone_stats, StatsError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("layout has no rules block")]
    NoRulesBlock,
    #[error("rule set has {ruleset} cases, layout rules block has {layout}")]
    RulesetWidth { ruleset: usize, layout: usize },
    #[error("unknown report format {0:?} (expected tsv, csv or plotdata)")]
    UnknownFormat(String),
    #[error("sweep needs a nonempty test set")]
    EmptyTestSet,
    #[error("report line {line}: {detail}")]
    Parse { line: usize, detail: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

/// Input categories of a contribution table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum InputType {
    PhoneIdentity,
    PhoneFeatures,
    SyllableStress,
    WordType,
    Syntax,
    Rules,
    Pad,
}

impl InputType {
    pub const ALL: [InputType; 7] = [
        InputType::PhoneIdentity,
        InputType::PhoneFeatures,
        InputType::SyllableStress,
        InputType::WordType,
        InputType::Syntax,
        InputType::Rules,
        InputType::Pad,
    ];

    pub fn label(self) -> &'static str {
        match self {
            InputType::PhoneIdentity => "Phone identity",
            InputType::PhoneFeatures => "Phone features",
            InputType::SyllableStress => "Syllable stress",
            InputType::WordType => "Word type",
            InputType::Syntax => "Syntax",
            InputType::Rules => "Rules",
            InputType::Pad => "Pad",
        }
    }

    pub fn of_block(kind: BlockKind) -> Self {
        match kind {
            BlockKind::PhoneOneHot => InputType::PhoneIdentity,
            BlockKind::ArticFeatures => InputType::PhoneFeatures,
            BlockKind::Stress => InputType::SyllableStress,
            BlockKind::WordType => InputType::WordType,
            BlockKind::Boundary => InputType::Syntax,
            BlockKind::Rules => InputType::Rules,
            BlockKind::Pad => InputType::Pad,
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.label() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContributionRow {
    pub input_type: InputType,
    pub total: f64,
    pub inputs: usize,
}

impl ContributionRow {
    /// Total divided by the input count; zero for an absent block.
    pub fn mean(&self) -> f64 {
        if self.inputs == 0 {
            0.0
        } else {
            self.total / self.inputs as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContributionTable {
    pub rows: Vec<ContributionRow>,
}

impl ContributionTable {
    pub fn row(&self, t: InputType) -> &ContributionRow {
        self.rows.iter().find(|r| r.input_type == t).expect("all rows present")
    }
}

/// Sums of absolute first-layer weights grouped by input type.
pub fn contribution_table(net: &Network, layout: &EncodingLayout) -> Result<ContributionTable, AnalysisError> {
    let sums = net.first_layer_abs_weight_sums(layout)?;
    let mut rows: Vec<ContributionRow> = InputType::ALL
        .into_iter()
        .map(|input_type| ContributionRow {
            input_type,
            total: 0.0,
            inputs: 0,
        })
        .collect();
    for (col, s) in sums.iter().enumerate() {
        let t = InputType::of_block(layout.column(col).kind);
        let row = &mut rows[t as usize];
        row.total += s;
        row.inputs += 1;
    }
    Ok(ContributionTable { rows })
}

/// Per-rule absolute weight totals (summed over window slots), largest
/// first; ties keep rule-set order.
pub fn top_rule_contributions(
    net: &Network,
    layout: &EncodingLayout,
    ruleset: &RuleSet,
    k: usize,
) -> Result<Vec<(String, f64)>, AnalysisError> {
    if !layout.rules_mode().enabled() {
        return Err(AnalysisError::NoRulesBlock);
    }
    if ruleset.len() != layout.rules_width() {
        return Err(AnalysisError::RulesetWidth {
            ruleset: ruleset.len(),
            layout: layout.rules_width(),
        });
    }
    let sums = net.first_layer_abs_weight_sums(layout)?;
    let mut totals = vec![0.0; ruleset.len()];
    for (col, s) in sums.iter().enumerate() {
        let info = layout.column(col);
        if info.kind == BlockKind::Rules {
            totals[info.index] += s;
        }
    }
    let mut ranked: Vec<(usize, f64)> = totals.into_iter().enumerate().collect();
    // stable sort keeps rule order among equal totals
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
    Ok(ranked
        .into_iter()
        .take(k)
        .map(|(i, t)| (ruleset.cases()[i].id.clone(), t))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatsScope {
    /// Statistics from the training side only.
    Train,
    /// Statistics from the whole corpus.
    Full,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub widths: Vec<usize>,
    /// `true` = with rule firings.
    pub modes: Vec<bool>,
    pub hyperparams: Hyperparams,
    pub hidden: Vec<usize>,
    pub held_out: usize,
    pub seed: u64,
    pub stats_scope: StatsScope,
    /// Placement of rule bits when a configuration uses them.
    pub rules_mode: RulesMode,
    pub inventory: PhoneInventory,
    pub ruleset: RuleSet,
    /// Use this (train, test) pair instead of splitting.
    pub fixed_split: Option<(Corpus, Corpus)>,
    /// Run configurations on separate threads. Results do not depend on it.
    pub parallel: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            widths: vec![1, 3, 5, 7],
            modes: vec![false, true],
            hyperparams: Hyperparams::default(),
            hidden: vec![20],
            held_out: 10,
            seed: 1,
            stats_scope: StatsScope::Train,
            rules_mode: RulesMode::PerSlot,
            inventory: PhoneInventory::timit(),
            ruleset: RuleSet::default_klatt(),
            fixed_split: None,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub width: usize,
    pub rules: bool,
    pub train_error: f64,
    pub test_error: f64,
    pub weights: usize,
    pub epochs: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn get(&self, width: usize, rules: bool) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.width == width && r.rules == rules)
    }
}

fn run_config(
    train_c: &Corpus,
    test_c: &Corpus,
    full: &Corpus,
    width: usize,
    rules: bool,
    cfg: &SweepConfig,
) -> Result<SweepRow, AnalysisError> {
    let stats = match cfg.stats_scope {
        StatsScope::Train => compute_phone_stats(train_c)?,
        StatsScope::Full => compute_phone_stats(full)?,
    };
    let layout = build_layout(
        &LayoutConfig {
            window: width,
            rules: if rules { cfg.rules_mode } else { RulesMode::Off },
            rules_width: cfg.ruleset.len(),
        },
        &cfg.inventory,
    )?;
    let ruleset = rules.then_some(&cfg.ruleset);
    // phones seen only at test time are scaled with the global stats
    let test_stats = stats.clone().with_unknown_fallback(true);
    let train_set = build_dataset(train_c, &layout, &stats, ruleset)?;
    let test_set = build_dataset(test_c, &layout, &test_stats, ruleset)?;
    let net = init_network(&layout, &cfg.hidden, cfg.seed)?;
    let hp = Hyperparams {
        seed: cfg.seed,
        ..cfg.hyperparams.clone()
    };
    let (net, report) = train(net, &train_set, &hp)?;
    Ok(SweepRow {
        width,
        rules,
        train_error: evaluate(&net, &train_set)?,
        test_error: evaluate(&net, &test_set)?,
        weights: net.weight_count(),
        epochs: report.epochs_run(),
        seed: cfg.seed,
    })
}

/// Trains one fresh network per (width, mode) on a shared split and scores
/// both sides.
pub fn window_sweep(corpus: &Corpus, cfg: &SweepConfig) -> Result<SweepReport, AnalysisError> {
    for &w in &cfg.widths {
        if w.is_multiple_of(2) {
            return Err(FeatureError::EvenWindow(w).into());
        }
    }
    let (train_c, test_c) = match &cfg.fixed_split {
        Some((a, b)) => (a.clone(), b.clone()),
        None => split_train_test(corpus, cfg.held_out, cfg.seed)?,
    };
    if test_c.is_empty() {
        return Err(AnalysisError::EmptyTestSet);
    }
    let configs: Vec<(usize, bool)> = cfg
        .widths
        .iter()
        .flat_map(|&w| cfg.modes.iter().map(move |&m| (w, m)))
        .collect();

    let rows: Vec<Result<SweepRow, AnalysisError>> = if cfg.parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> = configs
                .iter()
                .map(|&(w, m)| {
                    let (tr, te) = (&train_c, &test_c);
                    s.spawn(move || run_config(tr, te, corpus, w, m, cfg))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    } else {
        configs
            .iter()
            .map(|&(w, m)| run_config(&train_c, &test_c, corpus, w, m, cfg))
            .collect()
    };
    Ok(SweepReport {
        rows: rows.into_iter().collect::<Result<_, _>>()?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Tsv,
    Csv,
    PlotData,
}

impl FromStr for ReportFormat {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(ReportFormat::Tsv),
            "csv" => Ok(ReportFormat::Csv),
            "plotdata" => Ok(ReportFormat::PlotData),
            other => Err(AnalysisError::UnknownFormat(other.to_owned())),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Tsv => "tsv",
            ReportFormat::Csv => "csv",
            ReportFormat::PlotData => "plotdata",
        })
    }
}

pub const SWEEP_HEADER: [&str; 7] = ["window", "rules", "train_error_pct", "test_error_pct", "weights", "epochs", "seed"];
pub const CONTRIB_HEADER: [&str; 4] = ["input_type", "absolute_weight_total", "mean_absolute_weight_total", "inputs"];

fn table(header: &[&str], rows: &[Vec<String>], sep: char) -> String {
    let mut out = header.join(&sep.to_string());
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(&sep.to_string()));
        out.push('\n');
    }
    out
}

fn plot(series: &[(String, Vec<(f64, f64)>)]) -> String {
    let mut out = String::new();
    for (name, points) in series {
        let _ = writeln!(out, "# series {name}");
        for (x, y) in points {
            let _ = writeln!(out, "{x} {y}");
        }
    }
    out
}

/// Renders either report kind.
pub trait Report {
    fn render(&self, format: ReportFormat) -> String;
}

/// `emit_report` with the format named as a string.
pub fn emit_report(report: &dyn Report, format: &str) -> Result<String, AnalysisError> {
    Ok(report.render(format.parse()?))
}

impl SweepReport {
    fn cells(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.width.to_string(),
                    if r.rules { "on" } else { "off" }.to_owned(),
                    r.train_error.to_string(),
                    r.test_error.to_string(),
                    r.weights.to_string(),
                    r.epochs.to_string(),
                    r.seed.to_string(),
                ]
            })
            .collect()
    }

    /// Series named after the four curves of an error-vs-window plot.
    pub fn series(&self) -> Vec<(String, Vec<(f64, f64)>)> {
        let mut out = Vec::new();
        for rules in [false, true] {
            let rows: Vec<&SweepRow> = self.rows.iter().filter(|r| r.rules == rules).collect();
            if rows.is_empty() {
                continue;
            }
            let prefix = if rules { "With Rules" } else { "Without Rules" };
            out.push((
                format!("{prefix} Training Set"),
                rows.iter().map(|r| (r.width as f64, r.train_error)).collect(),
            ));
            out.push((
                format!("{prefix} Test Set"),
                rows.iter().map(|r| (r.width as f64, r.test_error)).collect(),
            ));
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self, AnalysisError> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate().skip(1) {
            let bad = |detail: &str| AnalysisError::Parse {
                line: i + 1,
                detail: detail.to_owned(),
            };
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != SWEEP_HEADER.len() {
                return Err(bad("wrong field count"));
            }
            rows.push(SweepRow {
                width: f[0].parse().map_err(|_| bad("window"))?,
                rules: match f[1] {
                    "on" => true,
                    "off" => false,
                    _ => return Err(bad("rules")),
                },
                train_error: f[2].parse().map_err(|_| bad("train error"))?,
                test_error: f[3].parse().map_err(|_| bad("test error"))?,
                weights: f[4].parse().map_err(|_| bad("weights"))?,
                epochs: f[5].parse().map_err(|_| bad("epochs"))?,
                seed: f[6].parse().map_err(|_| bad("seed"))?,
            });
        }
        Ok(Self { rows })
    }
}

impl Report for SweepReport {
    fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Tsv => table(&SWEEP_HEADER, &self.cells(), '\t'),
            ReportFormat::Csv => table(&SWEEP_HEADER, &self.cells(), ','),
            ReportFormat::PlotData => plot(&self.series()),
        }
    }
}

impl ContributionTable {
    fn cells(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.input_type.label().to_owned(),
                    r.total.to_string(),
                    r.mean().to_string(),
                    r.inputs.to_string(),
                ]
            })
            .collect()
    }

    pub fn from_tsv(text: &str) -> Result<Self, AnalysisError> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate().skip(1) {
            let bad = |detail: &str| AnalysisError::Parse {
                line: i + 1,
                detail: detail.to_owned(),
            };
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != CONTRIB_HEADER.len() {
                return Err(bad("wrong field count"));
            }
            rows.push(ContributionRow {
                input_type: InputType::from_label(f[0]).ok_or_else(|| bad("input type"))?,
                total: f[1].parse().map_err(|_| bad("total"))?,
                inputs: f[3].parse().map_err(|_| bad("inputs"))?,
            });
        }
        Ok(Self { rows })
    }
}

impl Report for ContributionTable {
    fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Tsv => table(&CONTRIB_HEADER, &self.cells(), '\t'),
            ReportFormat::Csv => table(&CONTRIB_HEADER, &self.cells(), ','),
            ReportFormat::PlotData => {
                let idx = |f: fn(&ContributionRow) -> f64| {
                    self.rows
                        .iter()
                        .enumerate()
                        .map(|(i, r)| (i as f64, f(r)))
                        .collect::<Vec<_>>()
                };
                plot(&[
                    ("Absolute Weight Total".to_owned(), idx(|r| r.total)),
                    ("Mean Absolute Weight Total".to_owned(), idx(ContributionRow::mean)),
                ])
            }
        }
    }
}
