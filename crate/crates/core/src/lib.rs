//! Segment-duration modelling for text-to-speech with a hybrid of rule
//! condition firings and a feedforward regressor.
//!
//! The pipeline runs left to right through the modules:
//!
//! * [`corpus`] parses annotated phone sequences and derives boundary facts,
//! * [`stats`] turns durations into per-phone z-scores and scores predictions,
//! * [`rules`] evaluates the 30 Klatt-style condition cases,
//! * [`features`] lays out and encodes context-windowed input vectors,
//! * [`model`] trains the network,
//! * [`analysis`] runs window sweeps and first-layer contribution tables,
//! * [`synth`] generates rule-driven corpora for self-contained runs,
//! * [`cli`] wires everything behind the `durhybrid` binary.

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod features;
pub mod inventory;
pub mod model;
pub mod rules;
pub mod stats;
pub mod synth;

pub use analysis::{contribution_table, top_rule_contributions, window_sweep, ContributionTable, SweepReport};
pub use corpus::{derive_positions, parse_corpus, split_train_test, Corpus, PositionedSegment, SegmentRecord};
pub use error::Error;
pub use features::{build_dataset, build_layout, Dataset, EncodingLayout, LayoutConfig, RulesMode};
pub use inventory::PhoneInventory;
pub use model::{Hyperparams, Network, TrainReport};
pub use rules::{RuleFiringVector, RuleSet};
pub use stats::{compute_phone_stats, mse_percent_variance, PhoneStats};
pub use synth::{generate_synthetic_corpus, SyntheticSpec};

use sha2::{Digest, Sha256};

/// Short stable content hash used for layout, stats and weight fingerprints.
pub(crate) fn fingerprint(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}
