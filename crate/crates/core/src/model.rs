//! Feedforward regressor: tanh hidden layers and one linear output unit,
//! trained with minibatch SGD plus momentum on ½(y − t)².
//!
//! Inputs are mostly zero, so the first layer walks only the active
//! columns of each example in both passes.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::distributions::{Distribution, Uniform};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::features::{Dataset, EncodingLayout, InputVector};
use crate::fingerprint;
use crate::stats::{mse_percent_variance, PhoneStats, StatsError, ZScore};

pub const FORMAT_HEADER: &str = "durhybrid-model 1";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("hidden layer {0} has zero units")]
    ZeroHidden(usize),
    #[error(
        "input width {found} (layout {input_fingerprint}) does not match network width {expected} (layout {model_fingerprint})"
    )]
    WidthMismatch {
        expected: usize,
        found: usize,
        model_fingerprint: String,
        input_fingerprint: String,
    },
    #[error("{what} fingerprint mismatch: model has {model}, given {given}")]
    Fingerprint {
        what: &'static str,
        model: String,
        given: String,
    },
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("training diverged at epoch {epoch}")]
    Diverged { epoch: usize },
    #[error("finite-difference step must be in (0, 1e-2], got {0}")]
    BadEpsilon(f64),
    #[error("invalid hyperparameter: {0}")]
    Hyperparams(String),
    #[error("model file line {line}: {detail}")]
    Parse { line: usize, detail: String },
    #[error(transparent)]
    Stats(#[from] StatsError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub fan_in: usize,
    pub fan_out: usize,
    /// Row-major `[fan_out][fan_in]`.
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl Layer {
    fn zeros(fan_in: usize, fan_out: usize) -> Self {
        Self {
            fan_in,
            fan_out,
            weights: vec![0.0; fan_in * fan_out],
            bias: vec![0.0; fan_out],
        }
    }

    pub fn weight(&self, out: usize, inp: usize) -> f64 {
        self.weights[out * self.fan_in + inp]
    }

    pub fn weight_mut(&mut self, out: usize, inp: usize) -> &mut f64 {
        &mut self.weights[out * self.fan_in + inp]
    }

    fn param_count(&self) -> usize {
        self.weights.len() + self.bias.len()
    }

    fn param_mut(&mut self, i: usize) -> &mut f64 {
        if i < self.weights.len() {
            &mut self.weights[i]
        } else {
            &mut self.bias[i - self.weights.len()]
        }
    }

    fn param(&self, i: usize) -> f64 {
        if i < self.weights.len() {
            self.weights[i]
        } else {
            self.bias[i - self.weights.len()]
        }
    }
}

/// Provenance stamped into the model file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModelMeta {
    pub layout_fingerprint: String,
    pub ruleset_version: Option<String>,
    pub stats_fingerprint: Option<String>,
    pub window: usize,
    pub rules_mode: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    layers: Vec<Layer>,
    pub meta: ModelMeta,
}

/// Gradient with the same shapes as the network's layers.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub layers: Vec<Layer>,
}

impl Gradients {
    fn zeros_like(net: &Network) -> Self {
        Self {
            layers: net
                .layers
                .iter()
                .map(|l| Layer::zeros(l.fan_in, l.fan_out))
                .collect(),
        }
    }

    fn clear(&mut self) {
        for l in &mut self.layers {
            l.weights.fill(0.0);
            l.bias.fill(0.0);
        }
    }
}

/// Sparse view of an input: (column, value) for nonzero entries.
fn active(input: &[f64]) -> Vec<(usize, f64)> {
    input
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0.0)
        .map(|(j, &v)| (j, v))
        .collect()
}

struct Scratch {
    acts: Vec<Vec<f64>>,
    deltas: Vec<Vec<f64>>,
}

impl Scratch {
    fn new(net: &Network) -> Self {
        Self {
            acts: net.layers.iter().map(|l| vec![0.0; l.fan_out]).collect(),
            deltas: net.layers.iter().map(|l| vec![0.0; l.fan_out]).collect(),
        }
    }
}

impl Network {
    /// All-zero network of the given shape.
    pub fn zeros(input_width: usize, hidden: &[usize], meta: ModelMeta) -> Result<Self, ModelError> {
        if let Some(i) = hidden.iter().position(|&h| h == 0) {
            return Err(ModelError::ZeroHidden(i));
        }
        let mut widths = vec![input_width];
        widths.extend_from_slice(hidden);
        widths.push(1);
        let layers = widths
            .windows(2)
            .map(|w| Layer::zeros(w[0], w[1]))
            .collect();
        Ok(Self { layers, meta })
    }

    /// Weights uniform in ±1/√fan_in, biases zero.
    pub fn random(
        input_width: usize,
        hidden: &[usize],
        seed: u64,
        meta: ModelMeta,
    ) -> Result<Self, ModelError> {
        let mut net = Self::zeros(input_width, hidden, ModelMeta { seed, ..meta })?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for layer in &mut net.layers {
            let bound = 1.0 / (layer.fan_in.max(1) as f64).sqrt();
            let dist = Uniform::new_inclusive(-bound, bound);
            for w in &mut layer.weights {
                *w = dist.sample(&mut rng);
            }
        }
        Ok(net)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layers_mut(&mut self) -> &mut [Layer] {
        &mut self.layers
    }

    pub fn input_width(&self) -> usize {
        self.layers[0].fan_in
    }

    pub fn hidden_sizes(&self) -> Vec<usize> {
        self.layers[..self.layers.len() - 1]
            .iter()
            .map(|l| l.fan_out)
            .collect()
    }

    /// Σ(fan_in·fan_out + fan_out) over layers.
    pub fn weight_count(&self) -> usize {
        self.layers.iter().map(Layer::param_count).sum()
    }

    pub fn weights_fingerprint(&self) -> String {
        let mut bytes = Vec::with_capacity(self.weight_count() * 8);
        for l in &self.layers {
            for v in l.weights.iter().chain(&l.bias) {
                bytes.extend_from_slice(&v.to_le_bytes());
            }
        }
        fingerprint(&bytes)
    }

    fn forward_active(&self, x: &[(usize, f64)], scratch: &mut Scratch) -> f64 {
        let last = self.layers.len() - 1;
        for (l, layer) in self.layers.iter().enumerate() {
            let (prev, rest) = scratch.acts.split_at_mut(l);
            let out = &mut rest[0];
            for (o, slot) in out.iter_mut().enumerate() {
                let row = &layer.weights[o * layer.fan_in..(o + 1) * layer.fan_in];
                let mut z = layer.bias[o];
                if l == 0 {
                    for &(j, v) in x {
                        z += row[j] * v;
                    }
                } else {
                    for (w, a) in row.iter().zip(&prev[l - 1]) {
                        z += w * a;
                    }
                }
                *slot = if l == last { z } else { z.tanh() };
            }
        }
        scratch.acts[last][0]
    }

    /// Adds the gradient of ½(y − t)² into `grads`; returns the loss.
    fn accumulate(
        &self,
        x: &[(usize, f64)],
        target: f64,
        grads: &mut Gradients,
        scratch: &mut Scratch,
    ) -> f64 {
        let y = self.forward_active(x, scratch);
        let r = y - target;
        let last = self.layers.len() - 1;
        scratch.deltas[last][0] = r;
        for l in (0..=last).rev() {
            let layer = &self.layers[l];
            let g = &mut grads.layers[l];
            let (lower, upper) = scratch.deltas.split_at_mut(l);
            let delta = &upper[0];
            for (o, &d) in delta.iter().enumerate() {
                g.bias[o] += d;
                let grow = &mut g.weights[o * layer.fan_in..(o + 1) * layer.fan_in];
                if l == 0 {
                    for &(j, v) in x {
                        grow[j] += d * v;
                    }
                } else {
                    for (gw, a) in grow.iter_mut().zip(&scratch.acts[l - 1]) {
                        *gw += d * a;
                    }
                }
            }
            if l > 0 {
                let below = &mut lower[l - 1];
                for (j, slot) in below.iter_mut().enumerate() {
                    let a = scratch.acts[l - 1][j];
                    let back: f64 = delta
                        .iter()
                        .enumerate()
                        .map(|(o, &d)| d * layer.weight(o, j))
                        .sum();
                    *slot = back * (1.0 - a * a);
                }
            }
        }
        0.5 * r * r
    }

    /// Output for a raw input slice; panics if the width is wrong.
    pub fn forward_values(&self, input: &[f64]) -> f64 {
        assert_eq!(input.len(), self.input_width(), "input width");
        self.forward_active(&active(input), &mut Scratch::new(self))
    }

    pub fn forward(&self, input: &InputVector) -> Result<ZScore, ModelError> {
        if input.values.len() != self.input_width() {
            return Err(ModelError::WidthMismatch {
                expected: self.input_width(),
                found: input.values.len(),
                model_fingerprint: self.meta.layout_fingerprint.clone(),
                input_fingerprint: input.layout_fingerprint.clone(),
            });
        }
        Ok(ZScore(self.forward_values(&input.values)))
    }

    pub fn predict_all(&self, inputs: &[InputVector]) -> Result<Vec<f64>, ModelError> {
        let mut scratch = Scratch::new(self);
        inputs
            .iter()
            .map(|x| {
                if x.values.len() != self.input_width() {
                    return Err(ModelError::WidthMismatch {
                        expected: self.input_width(),
                        found: x.values.len(),
                        model_fingerprint: self.meta.layout_fingerprint.clone(),
                        input_fingerprint: x.layout_fingerprint.clone(),
                    });
                }
                Ok(self.forward_active(&active(&x.values), &mut scratch))
            })
            .collect()
    }

    /// Loss ½(y − t)² and its exact gradient.
    pub fn loss_and_gradient(&self, input: &[f64], target: f64) -> (f64, Gradients) {
        assert_eq!(input.len(), self.input_width(), "input width");
        let mut grads = Gradients::zeros_like(self);
        let loss = self.accumulate(&active(input), target, &mut grads, &mut Scratch::new(self));
        (loss, grads)
    }

    /// Mean loss over `samples`.
    fn mean_loss(&self, samples: &[(Vec<f64>, f64)]) -> f64 {
        let mut scratch = Scratch::new(self);
        samples
            .iter()
            .map(|(x, t)| {
                let y = self.forward_active(&active(x), &mut scratch);
                0.5 * (y - t) * (y - t)
            })
            .sum::<f64>()
            / samples.len() as f64
    }

    /// Per-input Σ_h |W1[h][j]|, checked against the layout.
    pub fn first_layer_abs_weight_sums(&self, layout: &EncodingLayout) -> Result<Vec<f64>, ModelError> {
        if layout.fingerprint() != self.meta.layout_fingerprint {
            return Err(ModelError::Fingerprint {
                what: "layout",
                model: self.meta.layout_fingerprint.clone(),
                given: layout.fingerprint().to_owned(),
            });
        }
        let first = &self.layers[0];
        let mut sums = vec![0.0; first.fan_in];
        for o in 0..first.fan_out {
            for (s, w) in sums
                .iter_mut()
                .zip(&first.weights[o * first.fan_in..(o + 1) * first.fan_in])
            {
                *s += w.abs();
            }
        }
        Ok(sums)
    }
}

pub fn init_network(layout: &EncodingLayout, hidden: &[usize], seed: u64) -> Result<Network, ModelError> {
    Network::random(
        layout.total_width(),
        hidden,
        seed,
        ModelMeta {
            layout_fingerprint: layout.fingerprint().to_owned(),
            window: layout.window(),
            rules_mode: layout.rules_mode().code().to_owned(),
            seed,
            ..ModelMeta::default()
        },
    )
}

/// Largest relative disagreement between analytic and central-difference
/// gradients over `probes` parameters sampled uniformly with `seed`.
pub fn gradient_check(
    net: &Network,
    samples: &[(Vec<f64>, f64)],
    probes: usize,
    eps: f64,
    seed: u64,
) -> Result<f64, ModelError> {
    if !(eps > 0.0 && eps <= 1e-2) {
        return Err(ModelError::BadEpsilon(eps));
    }
    if samples.is_empty() {
        return Err(ModelError::EmptyDataset);
    }
    let mut analytic = Gradients::zeros_like(net);
    let mut scratch = Scratch::new(net);
    for (x, t) in samples {
        net.accumulate(&active(x), *t, &mut analytic, &mut scratch);
    }
    let n = samples.len() as f64;

    let sizes: Vec<usize> = net.layers.iter().map(Layer::param_count).collect();
    let total: usize = sizes.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probe_net = net.clone();
    let mut worst: f64 = 0.0;
    for _ in 0..probes {
        let mut k = rng.gen_range(0..total);
        let mut l = 0;
        while k >= sizes[l] {
            k -= sizes[l];
            l += 1;
        }
        let a = analytic.layers[l].param(k) / n;
        let orig = net.layers[l].param(k);
        *probe_net.layers[l].param_mut(k) = orig + eps;
        let up = probe_net.mean_loss(samples);
        *probe_net.layers[l].param_mut(k) = orig - eps;
        let down = probe_net.mean_loss(samples);
        *probe_net.layers[l].param_mut(k) = orig;
        let cd = (up - down) / (2.0 * eps);
        let rel = (a - cd).abs() / a.abs().max(cd.abs()).max(1e-12);
        worst = worst.max(rel);
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperparams {
    pub learning_rate: f64,
    pub momentum: f64,
    pub batch_size: usize,
    pub epochs: usize,
    /// Early stopping patience in epochs; `None` disables it.
    pub patience: Option<usize>,
    /// Fraction of the dataset tail held out for early stopping.
    pub validation_fraction: f64,
    pub seed: u64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Self {
            learning_rate: 0.01,
            momentum: 0.9,
            batch_size: 16,
            epochs: 200,
            patience: None,
            validation_fraction: 0.1,
            seed: 1,
        }
    }
}

impl Hyperparams {
    fn validate(&self) -> Result<(), ModelError> {
        let bad = |m: &str| Err(ModelError::Hyperparams(m.to_owned()));
        if !(self.learning_rate >= 0.0 && self.learning_rate.is_finite()) {
            return bad("learning rate must be finite and nonnegative");
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return bad("momentum must be in [0, 1)");
        }
        if self.batch_size == 0 {
            return bad("batch size must be positive");
        }
        if self.patience == Some(0) {
            return bad("patience must be positive");
        }
        if self.patience.is_some() && !(self.validation_fraction > 0.0 && self.validation_fraction < 1.0) {
            return bad("validation fraction must be in (0, 1)");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    /// Train error (percent of variance) after each epoch.
    pub train_error: Vec<f64>,
    /// Validation error per epoch when early stopping is on.
    pub validation_error: Vec<f64>,
    pub stopped_early: bool,
    pub weights_fingerprint: String,
    pub wall_time: Duration,
}

impl TrainReport {
    pub fn epochs_run(&self) -> usize {
        self.train_error.len()
    }

    pub fn final_train_error(&self) -> Option<f64> {
        self.train_error.last().copied()
    }

    /// Equality ignoring wall time.
    pub fn same_run(&self, other: &Self) -> bool {
        self.train_error == other.train_error
            && self.validation_error == other.validation_error
            && self.stopped_early == other.stopped_early
            && self.weights_fingerprint == other.weights_fingerprint
    }
}

fn error_percent(net: &Network, xs: &[Vec<(usize, f64)>], ts: &[f64]) -> Result<f64, StatsError> {
    let mut scratch = Scratch::new(net);
    let preds: Vec<f64> = xs.iter().map(|x| net.forward_active(x, &mut scratch)).collect();
    mse_percent_variance(&preds, ts)
}

/// Minibatch SGD with momentum; deterministic for a fixed seed.
pub fn train(
    mut net: Network,
    dataset: &Dataset,
    hp: &Hyperparams,
) -> Result<(Network, TrainReport), ModelError> {
    hp.validate()?;
    if dataset.is_empty() {
        return Err(ModelError::EmptyDataset);
    }
    if dataset.input_width() != net.input_width() {
        return Err(ModelError::WidthMismatch {
            expected: net.input_width(),
            found: dataset.input_width(),
            model_fingerprint: net.meta.layout_fingerprint.clone(),
            input_fingerprint: dataset.layout_fingerprint.clone(),
        });
    }
    let started = Instant::now();
    let xs: Vec<Vec<(usize, f64)>> = dataset.inputs.iter().map(|x| active(&x.values)).collect();
    let n_val = match hp.patience {
        Some(_) => ((dataset.len() as f64 * hp.validation_fraction).ceil() as usize).min(dataset.len() - 1),
        None => 0,
    };
    let n_train = dataset.len() - n_val;
    let (train_x, val_x) = xs.split_at(n_train);
    let (train_t, val_t) = dataset.targets.split_at(n_train);

    let mut report = TrainReport {
        train_error: Vec::with_capacity(hp.epochs),
        validation_error: Vec::new(),
        stopped_early: false,
        weights_fingerprint: String::new(),
        wall_time: Duration::ZERO,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(hp.seed);
    let mut order: Vec<usize> = (0..n_train).collect();
    let mut grads = Gradients::zeros_like(&net);
    let mut velocity = Gradients::zeros_like(&net);
    let mut scratch = Scratch::new(&net);
    let mut best: Option<(f64, Network)> = None;
    let mut since_best = 0;

    for epoch in 0..hp.epochs {
        order.shuffle(&mut rng);
        for batch in order.chunks(hp.batch_size) {
            grads.clear();
            let mut loss = 0.0;
            for &i in batch {
                loss += net.accumulate(&train_x[i], train_t[i], &mut grads, &mut scratch);
            }
            if !loss.is_finite() {
                return Err(ModelError::Diverged { epoch });
            }
            let scale = 1.0 / batch.len() as f64;
            for ((layer, g), v) in net.layers.iter_mut().zip(&grads.layers).zip(&mut velocity.layers) {
                for ((w, gw), vw) in layer
                    .weights
                    .iter_mut()
                    .chain(layer.bias.iter_mut())
                    .zip(g.weights.iter().chain(&g.bias))
                    .zip(v.weights.iter_mut().chain(v.bias.iter_mut()))
                {
                    *vw = hp.momentum * *vw - hp.learning_rate * gw * scale;
                    *w += *vw;
                }
            }
        }
        let err = error_percent(&net, train_x, train_t)?;
        if !err.is_finite() {
            return Err(ModelError::Diverged { epoch });
        }
        report.train_error.push(err);

        if let Some(patience) = hp.patience {
            let verr = error_percent(&net, val_x, val_t)?;
            report.validation_error.push(verr);
            if best.as_ref().is_none_or(|(b, _)| verr < *b) {
                best = Some((verr, net.clone()));
                since_best = 0;
            } else {
                since_best += 1;
                if since_best >= patience {
                    report.stopped_early = true;
                    break;
                }
            }
        }
    }
    if let Some((_, best_net)) = best {
        if report.stopped_early {
            net = best_net;
        }
    }
    report.weights_fingerprint = net.weights_fingerprint();
    report.wall_time = started.elapsed();
    Ok((net, report))
}

/// Percent-of-variance error of `net` on a dataset.
pub fn evaluate(net: &Network, dataset: &Dataset) -> Result<f64, ModelError> {
    let preds = net.predict_all(&dataset.inputs)?;
    Ok(mse_percent_variance(&preds, &dataset.targets)?)
}

fn opt(s: &Option<String>) -> &str {
    s.as_deref().unwrap_or("-")
}

impl Network {
    /// Versioned text container; weights are printed in shortest
    /// round-trip decimal form so reloading is bit-exact.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let m = &self.meta;
        let hidden = self
            .hidden_sizes()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let _ = writeln!(out, "{FORMAT_HEADER}");
        let _ = writeln!(out, "layout_fingerprint {}", m.layout_fingerprint);
        let _ = writeln!(out, "ruleset_version {}", opt(&m.ruleset_version));
        let _ = writeln!(out, "stats_fingerprint {}", opt(&m.stats_fingerprint));
        let _ = writeln!(out, "window {}", m.window);
        let _ = writeln!(out, "rules_mode {}", if m.rules_mode.is_empty() { "-" } else { &m.rules_mode });
        let _ = writeln!(out, "hidden {}", if hidden.is_empty() { "-" } else { &hidden });
        let _ = writeln!(out, "input_width {}", self.input_width());
        let _ = writeln!(out, "seed {}", m.seed);
        let _ = writeln!(out, "weight_count {}", self.weight_count());
        for (i, l) in self.layers.iter().enumerate() {
            let _ = writeln!(out, "layer {i} {} {}", l.fan_out, l.fan_in);
            for o in 0..l.fan_out {
                let row = &l.weights[o * l.fan_in..(o + 1) * l.fan_in];
                let line = row.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ");
                let _ = writeln!(out, "w {line}");
            }
            let line = l.bias.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ");
            let _ = writeln!(out, "b {line}");
        }
        out.push_str("end\n");
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ModelError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
        let err = |line: usize, detail: &str| ModelError::Parse {
            line,
            detail: detail.to_owned(),
        };
        match lines.next() {
            Some((_, FORMAT_HEADER)) => {}
            Some((n, _)) => return Err(err(n, "not a durhybrid model file (version 1)")),
            None => return Err(err(0, "empty file")),
        }
        let mut field = |name: &str| -> Result<(usize, String), ModelError> {
            let (n, l) = lines.next().ok_or_else(|| err(0, "truncated header"))?;
            let rest = l
                .strip_prefix(name)
                .and_then(|r| r.strip_prefix(' '))
                .ok_or_else(|| err(n, &format!("expected `{name}`")))?;
            Ok((n, rest.to_owned()))
        };
        let none_if_dash = |s: String| (s != "-").then_some(s);
        let (_, layout_fingerprint) = field("layout_fingerprint")?;
        let (_, ruleset_version) = field("ruleset_version")?;
        let (_, stats_fingerprint) = field("stats_fingerprint")?;
        let (n, window) = field("window")?;
        let window = window.parse().map_err(|_| err(n, "bad window"))?;
        let (_, rules_mode) = field("rules_mode")?;
        let (n, hidden) = field("hidden")?;
        let hidden: Vec<usize> = if hidden == "-" {
            Vec::new()
        } else {
            hidden
                .split(',')
                .map(|h| h.parse().map_err(|_| err(n, "bad hidden sizes")))
                .collect::<Result<_, _>>()?
        };
        let (n, input_width) = field("input_width")?;
        let input_width: usize = input_width.parse().map_err(|_| err(n, "bad input width"))?;
        let (n, seed) = field("seed")?;
        let seed = seed.parse().map_err(|_| err(n, "bad seed"))?;
        let (n, count) = field("weight_count")?;
        let count: usize = count.parse().map_err(|_| err(n, "bad weight count"))?;

        let meta = ModelMeta {
            layout_fingerprint,
            ruleset_version: none_if_dash(ruleset_version),
            stats_fingerprint: none_if_dash(stats_fingerprint),
            window,
            rules_mode: none_if_dash(rules_mode).unwrap_or_default(),
            seed,
        };
        let mut net = Network::zeros(input_width, &hidden, meta).map_err(|e| err(n, &e.to_string()))?;
        if net.weight_count() != count {
            return Err(err(n, "weight count does not match declared shape"));
        }
        let parse_row = |n: usize, l: &str, prefix: &str, width: usize| -> Result<Vec<f64>, ModelError> {
            let body = l
                .strip_prefix(prefix)
                .ok_or_else(|| err(n, &format!("expected `{}` row", prefix.trim())))?;
            let vals: Vec<f64> = body
                .split_whitespace()
                .map(|v| v.parse::<f64>().map_err(|_| err(n, &format!("bad number {v:?}"))))
                .collect::<Result<_, _>>()?;
            if vals.len() != width {
                return Err(err(n, &format!("expected {width} values, found {}", vals.len())));
            }
            Ok(vals)
        };
        for (i, layer) in net.layers.iter_mut().enumerate() {
            let (n, l) = lines.next().ok_or_else(|| err(0, "truncated weights"))?;
            if l != format!("layer {i} {} {}", layer.fan_out, layer.fan_in) {
                return Err(err(n, "layer header does not match declared shape"));
            }
            for o in 0..layer.fan_out {
                let (n, l) = lines.next().ok_or_else(|| err(0, "truncated weights"))?;
                let row = parse_row(n, l, "w", layer.fan_in)?;
                layer.weights[o * layer.fan_in..(o + 1) * layer.fan_in].copy_from_slice(&row);
            }
            let (n, l) = lines.next().ok_or_else(|| err(0, "truncated weights"))?;
            layer.bias = parse_row(n, l, "b", layer.fan_out)?;
        }
        match lines.next() {
            Some((_, "end")) => Ok(net),
            Some((n, _)) => Err(err(n, "expected `end`")),
            None => Err(err(0, "missing `end`")),
        }
    }

    /// Refuses a model whose stamped fingerprints disagree with the layout
    /// and stats it is about to be used with.
    pub fn check_compatible(&self, layout: &EncodingLayout, stats: Option<&PhoneStats>) -> Result<(), ModelError> {
        if self.meta.layout_fingerprint != layout.fingerprint() {
            return Err(ModelError::Fingerprint {
                what: "layout",
                model: self.meta.layout_fingerprint.clone(),
                given: layout.fingerprint().to_owned(),
            });
        }
        if let (Some(stats), Some(model_fp)) = (stats, &self.meta.stats_fingerprint) {
            let given = stats.fingerprint();
            if &given != model_fp {
                return Err(ModelError::Fingerprint {
                    what: "stats",
                    model: model_fp.clone(),
                    given,
                });
            }
        }
        Ok(())
    }
}

pub fn save_model(net: &Network, path: &std::path::Path) -> std::io::Result<()> {
    std::fs::write(path, net.to_text())
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub fn load_model(path: &std::path::Path) -> Result<Network, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Network::from_text(&text)?)
}
