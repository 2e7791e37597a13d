//! Crate-wide error type wrapping each module's errors.

use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::corpus::CorpusError;
use crate::features::FeatureError;
use crate::inventory::InventoryError;
use crate::model::{LoadError, ModelError};
use crate::rules::RuleError;
use crate::stats::StatsError;
use crate::synth::SynthError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Inventory(#[from] InventoryError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Rules(#[from] RuleError),
    #[error(transparent)]
    Features(#[from] FeatureError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Config(String),
}

impl Error {
    /// Short machine-readable category, used as the `E:<category>:` prefix
    /// of command-line diagnostics.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Inventory(_) => "inventory",
            Error::Corpus(_) => "corpus",
            Error::Stats(_) => "stats",
            Error::Rules(_) => "rules",
            Error::Features(_) => "features",
            Error::Model(_) | Error::Load(LoadError::Model(_)) => "model",
            Error::Load(LoadError::Io { .. }) | Error::Io { .. } => "io",
            Error::Analysis(_) => "analysis",
            Error::Synth(_) => "synth",
            Error::Config(_) => "config",
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
