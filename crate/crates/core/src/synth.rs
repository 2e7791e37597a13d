//! Rule-driven synthetic corpora.
//!
//! Structure (clauses, phrases, words, syllables, stress, word type) is
//! sampled with a seeded generator. Each segment's duration is its phone's
//! base mean times the multipliers of every default rule case that fires on
//! it, plus gaussian noise with std `noise_rel · base`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::corpus::{position_utterance, Corpus, CorpusError, SegmentRecord, Stress, SyllableRole, Utterance, WordType};
use crate::inventory::PhoneInventory;
use crate::rules::RuleSet;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthError {
    #[error("phone subset is empty")]
    EmptySubset,
    #[error("phone subset has no syllabic phone")]
    NoSyllabic,
    #[error("phone {0:?} not in inventory")]
    UnknownPhone(String),
    #[error("multiplier for {0} must be positive and finite")]
    Multiplier(String),
    #[error("unknown rule id {0:?}")]
    UnknownRule(String),
    #[error("noise must be finite and nonnegative")]
    Noise,
    #[error("invalid segments-per-utterance range {0}..={1}")]
    Range(usize, usize),
    #[error("base mean for {0:?} must be positive")]
    BaseMean(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub utterances: usize,
    /// Inclusive bounds on segments per utterance (soft upper bound: one
    /// word is always emitted).
    pub segments_per_utterance: (usize, usize),
    pub phones: Vec<String>,
    /// Base duration per phone; phones without an entry use [`default_base_mean`].
    pub base_mean_ms: BTreeMap<String, f64>,
    /// Multiplier per default rule id; rules not listed act as 1.
    pub multipliers: BTreeMap<String, f64>,
    /// Noise standard deviation as a fraction of the phone's base mean.
    pub noise_rel: f64,
    pub seed: u64,
}

pub const DEFAULT_PHONES: &[&str] = &[
    "iy", "ih", "eh", "ey", "ae", "aa", "ah", "ao", "ow", "uw", "er", "ax", "ay", "p", "t", "k", "b", "d", "g",
    "m", "n", "ng", "s", "z", "sh", "f", "v", "th", "dh", "l", "r", "w", "y", "hh", "ch", "jh",
];

/// Ground-truth multipliers used by default.
pub const DEFAULT_MULTIPLIERS: &[(&str, f64)] = &[
    ("R01", 1.40),
    ("R02", 1.25),
    ("R03", 1.20),
    ("R04", 1.10),
    ("R05", 0.85),
    ("R07", 0.70),
    ("R08", 1.15),
    ("R09", 1.15),
    ("R11", 0.85),
    ("R12", 0.85),
    ("R19", 0.75),
    ("R20", 0.85),
    ("R21", 1.20),
    ("R22", 1.05),
    ("R23", 1.10),
    ("R24", 0.95),
    ("R25", 1.50),
    ("R26", 1.25),
    ("R27", 0.90),
    ("R28", 0.85),
    ("R29", 1.30),
    ("R30", 1.10),
];

impl Default for SyntheticSpec {
    fn default() -> Self {
        Self {
            utterances: 130,
            segments_per_utterance: (8, 20),
            phones: DEFAULT_PHONES.iter().map(|s| (*s).to_owned()).collect(),
            base_mean_ms: BTreeMap::new(),
            multipliers: DEFAULT_MULTIPLIERS
                .iter()
                .map(|(k, v)| ((*k).to_owned(), *v))
                .collect(),
            noise_rel: 0.05,
            seed: 1,
        }
    }
}

/// Class-based base duration: long low vowels, short high vowels, voiceless
/// obstruents longer than voiced ones.
pub fn default_base_mean(phone: &str, inv: &PhoneInventory) -> f64 {
    let f = |name: &str| inv.has_feature(phone, name).unwrap_or(false);
    if f("syllabic") {
        if f("low") {
            130.0
        } else if f("high") {
            85.0
        } else {
            105.0
        }
    } else if f("stop") {
        if f("voiced") {
            60.0
        } else {
            75.0
        }
    } else if f("affricate") {
        90.0
    } else if f("fricative") {
        if f("voiced") {
            70.0
        } else {
            95.0
        }
    } else if f("nasal") {
        65.0
    } else {
        60.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticCorpus {
    pub corpus: Corpus,
    /// The multiplier of every rule case (1 when unused), in rule order.
    pub truth: Vec<(String, f64)>,
    pub base_mean_ms: BTreeMap<String, f64>,
}

impl SyntheticCorpus {
    /// `rule multiplier` rows, then `phone base_mean_ms` rows.
    pub fn truth_tsv(&self) -> String {
        let mut out = String::from("rule\tmultiplier\n");
        for (id, m) in &self.truth {
            let _ = writeln!(out, "{id}\t{m}");
        }
        out.push_str("phone\tbase_mean_ms\n");
        for (p, m) in &self.base_mean_ms {
            let _ = writeln!(out, "{p}\t{m}");
        }
        out
    }
}

struct Word {
    word_type: WordType,
    syllables: Vec<Vec<(String, SyllableRole)>>,
    stress: Vec<Stress>,
}

fn sample_word(rng: &mut ChaCha8Rng, vowels: &[&String], consonants: &[&String]) -> Word {
    let word_type = match rng.gen_range(0..20) {
        0..=10 => WordType::Content,
        11..=17 => WordType::Function,
        _ => WordType::Other,
    };
    let n_syl = match word_type {
        WordType::Function => 1,
        _ => rng.gen_range(1..=3),
    };
    let primary = rng.gen_range(0..n_syl);
    let stress = (0..n_syl)
        .map(|i| match word_type {
            WordType::Function => Stress::Unstressed,
            _ if i == primary => Stress::Primary,
            _ if rng.gen_bool(0.3) => Stress::Secondary,
            _ => Stress::Unstressed,
        })
        .collect();
    let cluster = |rng: &mut ChaCha8Rng, role| -> Vec<(String, SyllableRole)> {
        if consonants.is_empty() {
            return Vec::new();
        }
        let n = *[0usize, 1, 1, 1, 2].choose(rng).unwrap();
        (0..n)
            .map(|_| ((*consonants.choose(rng).unwrap()).clone(), role))
            .collect()
    };
    let syllables = (0..n_syl)
        .map(|_| {
            let mut s = cluster(rng, SyllableRole::Onset);
            s.push(((*vowels.choose(rng).unwrap()).clone(), SyllableRole::Nucleus));
            s.extend(cluster(rng, SyllableRole::Coda));
            s
        })
        .collect();
    Word {
        word_type,
        syllables,
        stress,
    }
}

fn sample_utterance(
    rng: &mut ChaCha8Rng,
    id: String,
    (lo, hi): (usize, usize),
    vowels: &[&String],
    consonants: &[&String],
) -> Utterance {
    let target = rng.gen_range(lo..=hi);
    let mut words: Vec<Word> = Vec::new();
    let mut count = 0;
    while count < target {
        let w = sample_word(rng, vowels, consonants);
        let len: usize = w.syllables.iter().map(Vec::len).sum();
        if !words.is_empty() && count >= lo && count + len > hi {
            break;
        }
        count += len;
        words.push(w);
    }

    // group words into phrases (1-4 words) and phrases into clauses (1-2)
    let mut phrase_of_word = Vec::with_capacity(words.len());
    let mut phrase = 0u32;
    let mut left = rng.gen_range(1..=4);
    for _ in &words {
        if left == 0 {
            phrase += 1;
            left = rng.gen_range(1..=4);
        }
        phrase_of_word.push(phrase);
        left -= 1;
    }
    let mut clause_of_phrase = Vec::with_capacity(phrase as usize + 1);
    let mut clause = 0u32;
    let mut left = rng.gen_range(1..=2);
    for _ in 0..=phrase {
        if left == 0 {
            clause += 1;
            left = rng.gen_range(1..=2);
        }
        clause_of_phrase.push(clause);
        left -= 1;
    }

    let mut segments = Vec::with_capacity(count);
    let mut syl_idx = 0u32;
    for (w_idx, w) in words.iter().enumerate() {
        let p = phrase_of_word[w_idx];
        for (syl, &stress) in w.syllables.iter().zip(&w.stress) {
            for (phone, role) in syl {
                segments.push(SegmentRecord {
                    phone: phone.clone(),
                    duration_ms: None,
                    syllable_idx: syl_idx,
                    word_idx: w_idx as u32,
                    phrase_idx: p,
                    clause_idx: clause_of_phrase[p as usize],
                    stress,
                    word_type: w.word_type,
                    role: Some(*role),
                });
            }
            syl_idx += 1;
        }
    }
    Utterance { id, segments }
}

pub fn generate_synthetic_corpus(
    spec: &SyntheticSpec,
    inv: &PhoneInventory,
) -> Result<SyntheticCorpus, SynthError> {
    if spec.phones.is_empty() {
        return Err(SynthError::EmptySubset);
    }
    if let Some(p) = spec.phones.iter().find(|p| !inv.contains(p)) {
        return Err(SynthError::UnknownPhone(p.clone()));
    }
    let (lo, hi) = spec.segments_per_utterance;
    if lo == 0 || hi < lo {
        return Err(SynthError::Range(lo, hi));
    }
    if !(spec.noise_rel >= 0.0 && spec.noise_rel.is_finite()) {
        return Err(SynthError::Noise);
    }
    let rules = RuleSet::default_klatt();
    let mut factors = vec![1.0; rules.len()];
    for (id, &m) in &spec.multipliers {
        let i = rules.index_of(id).ok_or_else(|| SynthError::UnknownRule(id.clone()))?;
        if !(m > 0.0 && m.is_finite()) {
            return Err(SynthError::Multiplier(id.clone()));
        }
        factors[i] = m;
    }
    let (vowels, consonants): (Vec<&String>, Vec<&String>) =
        spec.phones.iter().partition(|p| inv.is_syllabic(p));
    if vowels.is_empty() {
        return Err(SynthError::NoSyllabic);
    }
    let mut base = BTreeMap::new();
    for p in &spec.phones {
        let m = spec
            .base_mean_ms
            .get(p)
            .copied()
            .unwrap_or_else(|| default_base_mean(p, inv));
        if !(m > 0.0 && m.is_finite()) {
            return Err(SynthError::BaseMean(p.clone()));
        }
        base.insert(p.clone(), m);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let unit = Normal::new(0.0, 1.0).expect("unit normal");
    let mut utterances = Vec::with_capacity(spec.utterances);
    for u in 0..spec.utterances {
        let mut utt = sample_utterance(&mut rng, format!("syn{u:04}"), (lo, hi), &vowels, &consonants);
        let positioned = position_utterance(&utt, inv)?;
        for (seg, pos) in utt.segments.iter_mut().zip(&positioned) {
            let b = base[&seg.phone];
            let firing = rules.fire(inv, pos);
            let mult: f64 = firing
                .bits()
                .iter()
                .zip(&factors)
                .filter(|(&fired, _)| fired)
                .map(|(_, m)| m)
                .product();
            let noise = spec.noise_rel * b * unit.sample(&mut rng);
            seg.duration_ms = Some((b * mult + noise).max(0.0));
        }
        utterances.push(utt);
    }
    let corpus = Corpus::new(utterances, format!("synthetic seed={}", spec.seed))?;
    let truth = rules
        .cases()
        .iter()
        .zip(&factors)
        .map(|(c, &m)| (c.id.clone(), m))
        .collect();
    Ok(SyntheticCorpus {
        corpus,
        truth,
        base_mean_ms: base,
    })
}
