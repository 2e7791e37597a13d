//! Feature layout and encoding.
//!
//! A segment becomes a fixed-width 0/1 vector made of contiguous blocks:
//!
//! | block            | width                  |
//! |------------------|------------------------|
//! | `phone_onehot`   | inventory size (61)    |
//! | `artic_features` | feature count (14)     |
//! | `stress`         | 3                      |
//! | `word_type`      | 3                      |
//! | `boundary`       | 10                     |
//! | `pad`            | 1                      |
//! | `rules`          | rule count (30), optional |
//!
//! A network input concatenates `W` such slot vectors centred on the
//! predicted segment. Slots that fall outside the utterance hold the pad
//! encoding: all zero except the `pad` bit.

use std::fmt::Write as _;

use thiserror::Error;

use crate::corpus::{position_utterance, Corpus, CorpusError, PositionedSegment};
use crate::fingerprint;
use crate::inventory::PhoneInventory;
use crate::rules::{RuleError, RuleFiringVector, RuleSet};
use crate::stats::{PhoneStats, StatsError};

pub const MAX_SWEPT_WINDOW: usize = 7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FeatureError {
    #[error("window width must be odd (got {0})")]
    EvenWindow(usize),
    #[error("rules block needs a nonzero width")]
    ZeroRulesWidth,
    #[error("phone {0:?} not in inventory")]
    UnknownPhone(String),
    #[error("firing vector has width {found}, layout expects {expected}")]
    FiringWidth { expected: usize, found: usize },
    #[error("rule firing supplied for a layout without a rules block, or missing for one with it")]
    FiringPresence,
    #[error("center {center} out of range for utterance of {len} segments")]
    Center { center: usize, len: usize },
    #[error("layout rules block has width {layout}, rule set has {ruleset} cases")]
    RulesetWidth { layout: usize, ruleset: usize },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Rules(#[from] RuleError),
}

/// Where rule-firing bits go in a windowed input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RulesMode {
    Off,
    /// Every window slot carries its own segment's firing bits.
    PerSlot,
    /// One firing block for the centre segment, after the window slots.
    CenterOnly,
}

impl RulesMode {
    pub fn code(self) -> &'static str {
        match self {
            RulesMode::Off => "off",
            RulesMode::PerSlot => "per-slot",
            RulesMode::CenterOnly => "center",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        match s {
            "off" => Some(RulesMode::Off),
            "per-slot" | "on" => Some(RulesMode::PerSlot),
            "center" => Some(RulesMode::CenterOnly),
            _ => None,
        }
    }

    pub fn enabled(self) -> bool {
        self != RulesMode::Off
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutConfig {
    pub window: usize,
    pub rules: RulesMode,
    /// Width of the rules block; the size of the rule set in use.
    pub rules_width: usize,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        Self {
            window: 3,
            rules: RulesMode::PerSlot,
            rules_width: crate::rules::DEFAULT_RULE_COUNT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    PhoneOneHot,
    ArticFeatures,
    Stress,
    WordType,
    Boundary,
    Pad,
    Rules,
}

impl BlockKind {
    pub fn name(self) -> &'static str {
        match self {
            BlockKind::PhoneOneHot => "phone_onehot",
            BlockKind::ArticFeatures => "artic_features",
            BlockKind::Stress => "stress",
            BlockKind::WordType => "word_type",
            BlockKind::Boundary => "boundary",
            BlockKind::Pad => "pad",
            BlockKind::Rules => "rules",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub name: String,
    pub offset: usize,
    pub width: usize,
}

impl Block {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.width
    }
}

/// Ordered block layout of a segment vector and of the windowed input.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingLayout {
    inventory: PhoneInventory,
    window: usize,
    rules_mode: RulesMode,
    slot_blocks: Vec<Block>,
    slot_width: usize,
    /// Centre-only rules block, offset from the start of the whole input.
    trailing_rules: Option<Block>,
    total: usize,
    fingerprint: String,
}

/// Where one input column sits in the layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnInfo {
    /// `None` for the centre-only rules block.
    pub slot: Option<usize>,
    pub kind: BlockKind,
    /// Index within the block.
    pub index: usize,
}

pub fn build_layout(
    config: &LayoutConfig,
    inventory: &PhoneInventory,
) -> Result<EncodingLayout, FeatureError> {
    EncodingLayout::new(config, inventory)
}

fn layout_fingerprint(
    window: usize,
    mode: RulesMode,
    blocks: &[(String, usize)],
    inventory: &PhoneInventory,
) -> String {
    let mut desc = format!("window={window};rules={};", mode.code());
    for (name, width) in blocks {
        let _ = write!(desc, "{name}:{width};");
    }
    let _ = write!(desc, "inventory={}", inventory.fingerprint());
    fingerprint(desc.as_bytes())
}

impl EncodingLayout {
    pub fn new(config: &LayoutConfig, inventory: &PhoneInventory) -> Result<Self, FeatureError> {
        let window = config.window;
        if window.is_multiple_of(2) {
            return Err(FeatureError::EvenWindow(window));
        }
        if window > MAX_SWEPT_WINDOW {
            log::warn!("window width {window} is outside the 1..=7 range");
        }
        if config.rules.enabled() && config.rules_width == 0 {
            return Err(FeatureError::ZeroRulesWidth);
        }
        let mut widths = vec![
            (BlockKind::PhoneOneHot, inventory.len()),
            (BlockKind::ArticFeatures, inventory.features().len()),
            (BlockKind::Stress, 3),
            (BlockKind::WordType, 3),
            (BlockKind::Boundary, 10),
            (BlockKind::Pad, 1),
        ];
        if config.rules == RulesMode::PerSlot {
            widths.push((BlockKind::Rules, config.rules_width));
        }
        let mut offset = 0;
        let slot_blocks: Vec<Block> = widths
            .into_iter()
            .map(|(kind, width)| {
                let b = Block {
                    kind,
                    name: kind.name().to_owned(),
                    offset,
                    width,
                };
                offset += width;
                b
            })
            .collect();
        let slot_width = offset;
        let trailing_rules = (config.rules == RulesMode::CenterOnly).then(|| Block {
            kind: BlockKind::Rules,
            name: "center_rules".to_owned(),
            offset: window * slot_width,
            width: config.rules_width,
        });
        let total = window * slot_width + trailing_rules.as_ref().map_or(0, |b| b.width);
        let mut named: Vec<(String, usize)> =
            slot_blocks.iter().map(|b| (b.name.clone(), b.width)).collect();
        if let Some(b) = &trailing_rules {
            named.push((b.name.clone(), b.width));
        }
        Ok(Self {
            fingerprint: layout_fingerprint(window, config.rules, &named, inventory),
            inventory: inventory.clone(),
            window,
            rules_mode: config.rules,
            slot_blocks,
            slot_width,
            trailing_rules,
            total,
        })
    }

    /// Rebuilds a layout from explicit block descriptors; used to check that
    /// the fingerprint tracks names, widths and order.
    #[doc(hidden)]
    pub fn fingerprint_of(
        window: usize,
        mode: RulesMode,
        blocks: &[(String, usize)],
        inventory: &PhoneInventory,
    ) -> String {
        layout_fingerprint(window, mode, blocks, inventory)
    }

    pub fn inventory(&self) -> &PhoneInventory {
        &self.inventory
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn rules_mode(&self) -> RulesMode {
        self.rules_mode
    }

    pub fn slot_blocks(&self) -> &[Block] {
        &self.slot_blocks
    }

    pub fn slot_width(&self) -> usize {
        self.slot_width
    }

    pub fn total_width(&self) -> usize {
        self.total
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn rules_width(&self) -> usize {
        match self.rules_mode {
            RulesMode::Off => 0,
            RulesMode::PerSlot => self.block(BlockKind::Rules).map_or(0, |b| b.width),
            RulesMode::CenterOnly => self.trailing_rules.as_ref().map_or(0, |b| b.width),
        }
    }

    pub fn block(&self, kind: BlockKind) -> Option<&Block> {
        self.slot_blocks.iter().find(|b| b.kind == kind)
    }

    pub fn column(&self, col: usize) -> ColumnInfo {
        assert!(col < self.total, "column {col} out of range");
        if let Some(b) = &self.trailing_rules {
            if col >= b.offset {
                return ColumnInfo {
                    slot: None,
                    kind: BlockKind::Rules,
                    index: col - b.offset,
                };
            }
        }
        let slot = col / self.slot_width;
        let within = col % self.slot_width;
        let b = self
            .slot_blocks
            .iter()
            .find(|b| b.range().contains(&within))
            .expect("blocks cover the slot");
        ColumnInfo {
            slot: Some(slot),
            kind: b.kind,
            index: within - b.offset,
        }
    }

    /// All-zero slot with the pad bit set.
    pub fn pad_vector(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.slot_width];
        v[self.block(BlockKind::Pad).expect("pad block").offset] = 1.0;
        v
    }

    /// Encodes one segment into a slot vector.
    pub fn encode_segment(
        &self,
        seg: &PositionedSegment,
        firing: Option<&RuleFiringVector>,
    ) -> Result<Vec<f64>, FeatureError> {
        let phone = &seg.record.phone;
        let idx = self
            .inventory
            .index_of(phone)
            .ok_or_else(|| FeatureError::UnknownPhone(phone.clone()))?;
        let rules_block = self.block(BlockKind::Rules);
        match (rules_block, firing) {
            (Some(b), Some(f)) if f.len() != b.width => {
                return Err(FeatureError::FiringWidth {
                    expected: b.width,
                    found: f.len(),
                })
            }
            (Some(_), None) | (None, Some(_)) => return Err(FeatureError::FiringPresence),
            _ => {}
        }

        let mut v = vec![0.0; self.slot_width];
        for b in &self.slot_blocks {
            let out = &mut v[b.range()];
            match b.kind {
                BlockKind::PhoneOneHot => out[idx] = 1.0,
                BlockKind::ArticFeatures => {
                    for (o, &bit) in out.iter_mut().zip(self.inventory.row_at(idx)) {
                        *o = f64::from(u8::from(bit));
                    }
                }
                BlockKind::Stress => out[seg.record.stress.index()] = 1.0,
                BlockKind::WordType => out[seg.record.word_type.index()] = 1.0,
                BlockKind::Boundary => {
                    for (o, flag) in out.iter_mut().zip(seg.boundary_flags()) {
                        *o = f64::from(u8::from(flag));
                    }
                }
                BlockKind::Pad => {}
                BlockKind::Rules => {
                    let f = firing.expect("checked above");
                    for (o, &bit) in out.iter_mut().zip(f.bits()) {
                        *o = f64::from(u8::from(bit));
                    }
                }
            }
        }
        Ok(v)
    }
}

/// An utterance whose segments are already encoded slot by slot.
#[derive(Debug, Clone)]
pub struct EncodedUtterance {
    pub id: String,
    pub slots: Vec<Vec<f64>>,
    /// Per-segment firing, present whenever the layout carries rules.
    pub firings: Option<Vec<RuleFiringVector>>,
}

/// Windowed network input with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct InputVector {
    pub values: Vec<f64>,
    pub utterance: String,
    pub center: usize,
    pub layout_fingerprint: String,
}

pub fn encode_utterance(
    positioned: &[PositionedSegment],
    layout: &EncodingLayout,
    ruleset: Option<&RuleSet>,
) -> Result<EncodedUtterance, FeatureError> {
    let firings = match (layout.rules_mode(), ruleset) {
        (RulesMode::Off, None) => None,
        (RulesMode::Off, Some(_)) | (_, None) => return Err(FeatureError::FiringPresence),
        (_, Some(rs)) => {
            if rs.len() != layout.rules_width() {
                return Err(FeatureError::RulesetWidth {
                    layout: layout.rules_width(),
                    ruleset: rs.len(),
                });
            }
            Some(
                positioned
                    .iter()
                    .map(|s| rs.fire(layout.inventory(), s))
                    .collect::<Vec<_>>(),
            )
        }
    };
    let slot_firing = |i: usize| match layout.rules_mode() {
        RulesMode::PerSlot => firings.as_ref().map(|f| &f[i]),
        _ => None,
    };
    let slots = positioned
        .iter()
        .enumerate()
        .map(|(i, s)| layout.encode_segment(s, slot_firing(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EncodedUtterance {
        id: positioned
            .first()
            .map(|s| s.utterance_id.clone())
            .unwrap_or_default(),
        slots,
        firings,
    })
}

/// Concatenates the `W` slot vectors around `center`, padding past the edges.
pub fn assemble_window(
    utterance: &EncodedUtterance,
    center: usize,
    layout: &EncodingLayout,
) -> Result<InputVector, FeatureError> {
    let n = utterance.slots.len();
    if center >= n {
        return Err(FeatureError::Center { center, len: n });
    }
    let half = layout.window() / 2;
    let mut values = Vec::with_capacity(layout.total_width());
    let pad = layout.pad_vector();
    for k in 0..layout.window() {
        let pos = (center + k).checked_sub(half).filter(|&p| p < n);
        match pos {
            Some(p) => values.extend_from_slice(&utterance.slots[p]),
            None => values.extend_from_slice(&pad),
        }
    }
    if layout.rules_mode() == RulesMode::CenterOnly {
        let f = &utterance.firings.as_ref().ok_or(FeatureError::FiringPresence)?[center];
        values.extend(f.bits().iter().map(|&b| f64::from(u8::from(b))));
    }
    debug_assert_eq!(values.len(), layout.total_width());
    Ok(InputVector {
        values,
        utterance: utterance.id.clone(),
        center,
        layout_fingerprint: layout.fingerprint().to_owned(),
    })
}

/// Input/target pairs for every segment of a corpus, in corpus order.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub layout_fingerprint: String,
    pub inputs: Vec<InputVector>,
    pub targets: Vec<f64>,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn input_width(&self) -> usize {
        self.inputs.first().map_or(0, |x| x.values.len())
    }
}

/// Windowed inputs without targets (durations may be absent).
pub fn build_inputs(
    corpus: &Corpus,
    layout: &EncodingLayout,
    ruleset: Option<&RuleSet>,
) -> Result<Vec<InputVector>, FeatureError> {
    if let Some(rs) = ruleset {
        rs.check_inventory(layout.inventory())?;
    }
    let mut out = Vec::with_capacity(corpus.segment_count());
    for utt in &corpus.utterances {
        let positioned = position_utterance(utt, layout.inventory())?;
        let encoded = encode_utterance(&positioned, layout, ruleset)?;
        for center in 0..positioned.len() {
            out.push(assemble_window(&encoded, center, layout)?);
        }
    }
    Ok(out)
}

pub fn build_dataset(
    corpus: &Corpus,
    layout: &EncodingLayout,
    stats: &PhoneStats,
    ruleset: Option<&RuleSet>,
) -> Result<Dataset, FeatureError> {
    let mut targets = Vec::with_capacity(corpus.segment_count());
    for utt in &corpus.utterances {
        for (i, seg) in utt.segments.iter().enumerate() {
            let d = seg.duration_ms.ok_or_else(|| StatsError::MissingDuration {
                utterance: utt.id.clone(),
                segment: i,
            })?;
            targets.push(stats.scale_duration(d, &seg.phone)?.value());
        }
    }
    let inputs = build_inputs(corpus, layout, ruleset)?;
    Ok(Dataset {
        layout_fingerprint: layout.fingerprint().to_owned(),
        inputs,
        targets,
    })
}
