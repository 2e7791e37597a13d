//! Annotated corpus: TSV ingestion, structural validation, and derivation of
//! the per-segment position facts (boundary flags, syllable roles,
//! final-syllable flags, neighbours) that the encoder and rule engine read.
//!
//! File format, one header line and one row per segment:
//!
//! ```text
//! utt_id  phone  duration_ms  syll_idx  word_idx  phrase_idx  clause_idx  stress  word_type  [role]
//! ```
//!
//! `stress` is one of `P`/`S`/`U`, `word_type` one of `C`/`F`/`O`, the
//! optional `role` one of `on`/`nu`/`co` (or `-`). Lines starting with `#`
//! are comments.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::inventory::PhoneInventory;

pub const HEADER: &str =
    "utt_id\tphone\tduration_ms\tsyll_idx\tword_idx\tphrase_idx\tclause_idx\tstress\tword_type\trole";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorpusError {
    #[error("empty corpus")]
    Empty,
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: expected 9 or 10 fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: unknown phone {phone:?}")]
    UnknownPhone { line: usize, phone: String },
    #[error("negative duration, line {line}")]
    NegativeDuration { line: usize },
    #[error("line {line}: missing duration")]
    MissingDuration { line: usize },
    #[error("line {line}: invalid {field} value {value:?}")]
    BadField {
        line: usize,
        field: &'static str,
        value: String,
    },
    #[error("utterance rows not contiguous: {utterance:?} reappears at line {line}")]
    NotContiguous { line: usize, utterance: String },
    #[error("utterance {utterance:?}, segment {segment}: {detail}")]
    Structure {
        utterance: String,
        segment: usize,
        detail: String,
    },
    #[error("duplicate utterance id {0:?}")]
    DuplicateUtterance(String),
    #[error("utterance {0:?} has no segments")]
    EmptyUtterance(String),
    #[error("utterance {utterance:?}, syllable {syllable}: found {nuclei} syllabic phones, need exactly one")]
    Syllabification {
        utterance: String,
        syllable: u32,
        nuclei: usize,
    },
    #[error("utterance {utterance:?}: phone {phone:?} not in inventory")]
    PhoneNotInInventory { utterance: String, phone: String },
    #[error("held-out count {held_out} must be below utterance count {utterances}")]
    HeldOut { held_out: usize, utterances: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stress {
    Primary,
    Secondary,
    Unstressed,
}

impl Stress {
    pub const ALL: [Stress; 3] = [Stress::Primary, Stress::Secondary, Stress::Unstressed];

    pub fn code(self) -> &'static str {
        match self {
            Stress::Primary => "P",
            Stress::Secondary => "S",
            Stress::Unstressed => "U",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.code() == s)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordType {
    Content,
    Function,
    Other,
}

impl WordType {
    pub const ALL: [WordType; 3] = [WordType::Content, WordType::Function, WordType::Other];

    pub fn code(self) -> &'static str {
        match self {
            WordType::Content => "C",
            WordType::Function => "F",
            WordType::Other => "O",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.code() == s)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SyllableRole {
    Onset,
    Nucleus,
    Coda,
}

impl SyllableRole {
    pub fn code(self) -> &'static str {
        match self {
            SyllableRole::Onset => "on",
            SyllableRole::Nucleus => "nu",
            SyllableRole::Coda => "co",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        match s {
            "on" => Some(SyllableRole::Onset),
            "nu" => Some(SyllableRole::Nucleus),
            "co" => Some(SyllableRole::Coda),
            _ => None,
        }
    }
}

/// One labelled phone occurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentRecord {
    pub phone: String,
    /// Milliseconds; `None` only in unlabelled corpora fed to prediction.
    pub duration_ms: Option<f64>,
    pub syllable_idx: u32,
    pub word_idx: u32,
    pub phrase_idx: u32,
    pub clause_idx: u32,
    pub stress: Stress,
    pub word_type: WordType,
    pub role: Option<SyllableRole>,
}

impl SegmentRecord {
    fn indices(&self) -> [u32; 4] {
        [
            self.clause_idx,
            self.phrase_idx,
            self.word_idx,
            self.syllable_idx,
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Utterance {
    pub id: String,
    pub segments: Vec<SegmentRecord>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Corpus {
    pub utterances: Vec<Utterance>,
    /// Free-form provenance (file path, generator seed, ...).
    pub source: String,
}

const LEVELS: [&str; 4] = ["clause", "phrase", "word", "syllable"];

/// Checks index monotonicity and the change-implication chain between two
/// consecutive segments of one utterance.
fn check_step(prev: &SegmentRecord, cur: &SegmentRecord) -> Result<(), String> {
    let (p, c) = (prev.indices(), cur.indices());
    for level in 0..4 {
        if c[level] < p[level] {
            return Err(format!(
                "{} index decreases ({} -> {})",
                LEVELS[level], p[level], c[level]
            ));
        }
    }
    for level in 0..3 {
        if c[level] > p[level] && c[level + 1] == p[level + 1] {
            return Err(format!(
                "{} index changes but {} index does not",
                LEVELS[level],
                LEVELS[level + 1]
            ));
        }
    }
    Ok(())
}

impl Corpus {
    /// Builds a corpus, validating ids, non-emptiness and index structure.
    pub fn new(utterances: Vec<Utterance>, source: impl Into<String>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for utt in &utterances {
            if !seen.insert(utt.id.as_str()) {
                return Err(CorpusError::DuplicateUtterance(utt.id.clone()));
            }
            if utt.segments.is_empty() {
                return Err(CorpusError::EmptyUtterance(utt.id.clone()));
            }
            for (i, seg) in utt.segments.iter().enumerate() {
                if seg.duration_ms.is_some_and(|d| d < 0.0 || !d.is_finite()) {
                    return Err(CorpusError::Structure {
                        utterance: utt.id.clone(),
                        segment: i,
                        detail: "duration must be finite and nonnegative".into(),
                    });
                }
                if i > 0 {
                    check_step(&utt.segments[i - 1], seg).map_err(|detail| {
                        CorpusError::Structure {
                            utterance: utt.id.clone(),
                            segment: i,
                            detail,
                        }
                    })?;
                }
            }
        }
        Ok(Self {
            utterances,
            source: source.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.utterances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.utterances.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        self.utterances.iter().map(|u| u.segments.len()).sum()
    }

    pub fn segments(&self) -> impl Iterator<Item = &SegmentRecord> {
        self.utterances.iter().flat_map(|u| u.segments.iter())
    }

    /// Checks that every phone is in `inventory`.
    pub fn check_inventory(&self, inventory: &PhoneInventory) -> Result<(), CorpusError> {
        for utt in &self.utterances {
            if let Some(seg) = utt.segments.iter().find(|s| !inventory.contains(&s.phone)) {
                return Err(CorpusError::PhoneNotInInventory {
                    utterance: utt.id.clone(),
                    phone: seg.phone.clone(),
                });
            }
        }
        Ok(())
    }
}

/// Parses a labelled corpus; every row must carry a duration.
pub fn parse_corpus(text: &str, inventory: &PhoneInventory) -> Result<Corpus, CorpusError> {
    parse_with(text, inventory, true)
}

/// Parses a corpus whose duration column may hold `-` (unknown).
pub fn parse_unlabeled_corpus(
    text: &str,
    inventory: &PhoneInventory,
) -> Result<Corpus, CorpusError> {
    parse_with(text, inventory, false)
}

fn parse_index(line: usize, field: &'static str, v: &str) -> Result<u32, CorpusError> {
    v.parse().map_err(|_| CorpusError::BadField {
        line,
        field,
        value: v.to_owned(),
    })
}

fn parse_with(
    text: &str,
    inventory: &PhoneInventory,
    require_durations: bool,
) -> Result<Corpus, CorpusError> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    match rows.next() {
        None => return Err(CorpusError::Empty),
        Some((_, header)) if header.split_whitespace().next() == Some("utt_id") => {}
        Some(_) => return Err(CorpusError::MissingHeader),
    }

    let mut utterances: Vec<Utterance> = Vec::new();
    let mut finished: HashSet<String> = HashSet::new();
    for (line, row) in rows {
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() != 9 && fields.len() != 10 {
            return Err(CorpusError::FieldCount {
                line,
                found: fields.len(),
            });
        }
        let utt_id = fields[0];
        let phone = fields[1];
        if !inventory.contains(phone) {
            return Err(CorpusError::UnknownPhone {
                line,
                phone: phone.to_owned(),
            });
        }
        let duration_ms = match fields[2] {
            "-" if !require_durations => None,
            "-" => return Err(CorpusError::MissingDuration { line }),
            v => {
                let d: f64 = v.parse().map_err(|_| CorpusError::BadField {
                    line,
                    field: "duration_ms",
                    value: v.to_owned(),
                })?;
                if !d.is_finite() {
                    return Err(CorpusError::BadField {
                        line,
                        field: "duration_ms",
                        value: v.to_owned(),
                    });
                }
                if d < 0.0 {
                    return Err(CorpusError::NegativeDuration { line });
                }
                Some(d)
            }
        };
        let stress = Stress::from_code(fields[7]).ok_or_else(|| CorpusError::BadField {
            line,
            field: "stress",
            value: fields[7].to_owned(),
        })?;
        let word_type = WordType::from_code(fields[8]).ok_or_else(|| CorpusError::BadField {
            line,
            field: "word_type",
            value: fields[8].to_owned(),
        })?;
        let role = match fields.get(9) {
            None | Some(&"-") => None,
            Some(v) => Some(SyllableRole::from_code(v).ok_or_else(|| CorpusError::BadField {
                line,
                field: "role",
                value: (*v).to_owned(),
            })?),
        };
        let record = SegmentRecord {
            phone: phone.to_owned(),
            duration_ms,
            syllable_idx: parse_index(line, "syll_idx", fields[3])?,
            word_idx: parse_index(line, "word_idx", fields[4])?,
            phrase_idx: parse_index(line, "phrase_idx", fields[5])?,
            clause_idx: parse_index(line, "clause_idx", fields[6])?,
            stress,
            word_type,
            role,
        };

        match utterances.last_mut() {
            Some(utt) if utt.id == utt_id => {
                let prev = utt.segments.last().expect("utterances are never empty");
                check_step(prev, &record).map_err(|detail| CorpusError::Structure {
                    utterance: utt_id.to_owned(),
                    segment: utt.segments.len(),
                    detail: format!("{detail} (line {line})"),
                })?;
                utt.segments.push(record);
            }
            last => {
                if finished.contains(utt_id) {
                    return Err(CorpusError::NotContiguous {
                        line,
                        utterance: utt_id.to_owned(),
                    });
                }
                if let Some(prev) = last {
                    finished.insert(prev.id.clone());
                }
                utterances.push(Utterance {
                    id: utt_id.to_owned(),
                    segments: vec![record],
                });
            }
        }
    }
    if utterances.is_empty() {
        return Err(CorpusError::Empty);
    }
    Corpus::new(utterances, "")
}

/// Renders a corpus in the TSV format accepted by [`parse_corpus`].
pub fn emit_corpus(corpus: &Corpus) -> String {
    let mut out = String::with_capacity(64 * (corpus.segment_count() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for utt in &corpus.utterances {
        for s in &utt.segments {
            let _ = write!(out, "{}\t{}\t", utt.id, s.phone);
            match s.duration_ms {
                Some(d) => {
                    let _ = write!(out, "{d}");
                }
                None => out.push('-'),
            }
            let _ = writeln!(
                out,
                "\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                s.syllable_idx,
                s.word_idx,
                s.phrase_idx,
                s.clause_idx,
                s.stress.code(),
                s.word_type.code(),
                s.role.map_or("-", SyllableRole::code),
            );
        }
    }
    out
}

/// Structural units a segment can open or close.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Syllable,
    Word,
    Phrase,
    Clause,
    Sentence,
}

impl Boundary {
    pub const ALL: [Boundary; 5] = [
        Boundary::Syllable,
        Boundary::Word,
        Boundary::Phrase,
        Boundary::Clause,
        Boundary::Sentence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Boundary::Syllable => "syllable",
            Boundary::Word => "word",
            Boundary::Phrase => "phrase",
            Boundary::Clause => "clause",
            Boundary::Sentence => "sentence",
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A segment with every structural fact the encoder and rules need.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionedSegment {
    pub record: SegmentRecord,
    pub utterance_id: String,
    pub position: usize,
    pub role: SyllableRole,
    first: [bool; 5],
    last: [bool; 5],
    pub in_word_final_syllable: bool,
    pub in_phrase_final_syllable: bool,
    pub in_clause_final_syllable: bool,
    pub prev_phone: Option<String>,
    pub next_phone: Option<String>,
}

impl PositionedSegment {
    pub fn first_in(&self, b: Boundary) -> bool {
        self.first[b as usize]
    }

    pub fn last_in(&self, b: Boundary) -> bool {
        self.last[b as usize]
    }

    /// The ten boundary flags: `first_in` for each unit, then `last_in`.
    pub fn boundary_flags(&self) -> [bool; 10] {
        let mut out = [false; 10];
        out[..5].copy_from_slice(&self.first);
        out[5..].copy_from_slice(&self.last);
        out
    }

    /// Phrase- or clause-final syllable.
    pub fn near_boundary(&self) -> bool {
        self.in_phrase_final_syllable || self.in_clause_final_syllable
    }
}

/// Names of the ten boundary flags, in [`PositionedSegment::boundary_flags`] order.
pub fn boundary_flag_names() -> [String; 10] {
    std::array::from_fn(|i| {
        let b = Boundary::ALL[i % 5];
        if i < 5 {
            format!("first_{b}")
        } else {
            format!("last_{b}")
        }
    })
}

fn syllable_roles(
    utt: &Utterance,
    inventory: &PhoneInventory,
) -> Result<Vec<SyllableRole>, CorpusError> {
    let mut roles = Vec::with_capacity(utt.segments.len());
    let segs = &utt.segments;
    let mut start = 0;
    while start < segs.len() {
        let syl = segs[start].syllable_idx;
        let end = segs[start..]
            .iter()
            .position(|s| s.syllable_idx != syl)
            .map_or(segs.len(), |n| start + n);
        let run = &segs[start..end];

        if run.iter().all(|s| s.role.is_some()) {
            let nuclei = run
                .iter()
                .filter(|s| s.role == Some(SyllableRole::Nucleus))
                .count();
            if nuclei != 1 {
                return Err(CorpusError::Syllabification {
                    utterance: utt.id.clone(),
                    syllable: syl,
                    nuclei,
                });
            }
            roles.extend(run.iter().map(|s| s.role.unwrap()));
        } else {
            let syllabic: Vec<usize> = run
                .iter()
                .enumerate()
                .filter(|(_, s)| inventory.is_syllabic(&s.phone))
                .map(|(i, _)| i)
                .collect();
            let [nucleus] = syllabic[..] else {
                return Err(CorpusError::Syllabification {
                    utterance: utt.id.clone(),
                    syllable: syl,
                    nuclei: syllabic.len(),
                });
            };
            roles.extend((0..run.len()).map(|i| match i.cmp(&nucleus) {
                std::cmp::Ordering::Less => SyllableRole::Onset,
                std::cmp::Ordering::Equal => SyllableRole::Nucleus,
                std::cmp::Ordering::Greater => SyllableRole::Coda,
            }));
        }
        start = end;
    }
    Ok(roles)
}

/// Index of the last syllable in the run of segments sharing `key`.
fn final_syllable_of_run(segs: &[SegmentRecord], key: impl Fn(&SegmentRecord) -> u32) -> Vec<u32> {
    let mut out = vec![0; segs.len()];
    let mut start = 0;
    while start < segs.len() {
        let k = key(&segs[start]);
        let end = segs[start..]
            .iter()
            .position(|s| key(s) != k)
            .map_or(segs.len(), |n| start + n);
        let last_syl = segs[end - 1].syllable_idx;
        out[start..end].fill(last_syl);
        start = end;
    }
    out
}

/// Derives positions for a single utterance.
pub fn position_utterance(
    utt: &Utterance,
    inventory: &PhoneInventory,
) -> Result<Vec<PositionedSegment>, CorpusError> {
    if let Some(s) = utt.segments.iter().find(|s| !inventory.contains(&s.phone)) {
        return Err(CorpusError::PhoneNotInInventory {
            utterance: utt.id.clone(),
            phone: s.phone.clone(),
        });
    }
    let segs = &utt.segments;
    let roles = syllable_roles(utt, inventory)?;
    let word_final = final_syllable_of_run(segs, |s| s.word_idx);
    let phrase_final = final_syllable_of_run(segs, |s| s.phrase_idx);
    let clause_final = final_syllable_of_run(segs, |s| s.clause_idx);

    let n = segs.len();
    let key = |s: &SegmentRecord, b: Boundary| match b {
        Boundary::Syllable => s.syllable_idx,
        Boundary::Word => s.word_idx,
        Boundary::Phrase => s.phrase_idx,
        Boundary::Clause => s.clause_idx,
        Boundary::Sentence => 0,
    };
    Ok(segs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let first = Boundary::ALL.map(|b| i == 0 || key(&segs[i - 1], b) != key(s, b));
            let last = Boundary::ALL.map(|b| i + 1 == n || key(&segs[i + 1], b) != key(s, b));
            PositionedSegment {
                record: s.clone(),
                utterance_id: utt.id.clone(),
                position: i,
                role: roles[i],
                first,
                last,
                in_word_final_syllable: s.syllable_idx == word_final[i],
                in_phrase_final_syllable: s.syllable_idx == phrase_final[i],
                in_clause_final_syllable: s.syllable_idx == clause_final[i],
                prev_phone: i.checked_sub(1).map(|j| segs[j].phone.clone()),
                next_phone: segs.get(i + 1).map(|x| x.phone.clone()),
            }
        })
        .collect())
}

/// Derives positioned segments for every utterance, in corpus order.
pub fn derive_positions(
    corpus: &Corpus,
    inventory: &PhoneInventory,
) -> Result<Vec<Vec<PositionedSegment>>, CorpusError> {
    corpus
        .utterances
        .iter()
        .map(|u| position_utterance(u, inventory))
        .collect()
}

/// Splits whole utterances into (train, test); `held_out` utterances go to
/// test. Both sides keep corpus order.
pub fn split_train_test(
    corpus: &Corpus,
    held_out: usize,
    seed: u64,
) -> Result<(Corpus, Corpus), CorpusError> {
    if held_out >= corpus.len() {
        return Err(CorpusError::HeldOut {
            held_out,
            utterances: corpus.len(),
        });
    }
    let mut order: Vec<usize> = (0..corpus.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut test_idx = order[..held_out].to_vec();
    test_idx.sort_unstable();
    let mut is_test = vec![false; corpus.len()];
    for &i in &test_idx {
        is_test[i] = true;
    }
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for (i, utt) in corpus.utterances.iter().enumerate() {
        if is_test[i] {
            test.push(utt.clone());
        } else {
            train.push(utt.clone());
        }
    }
    Ok((
        Corpus {
            utterances: train,
            source: corpus.source.clone(),
        },
        Corpus {
            utterances: test,
            source: corpus.source.clone(),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv() -> PhoneInventory {
        PhoneInventory::timit()
    }

    const THREE: &str = "utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type\n\
        u1 k 60 0 0 0 0 P C\n\
        u1 ae 120 0 0 0 0 P C\n\
        u1 t 70 0 0 0 0 P C\n";

    #[test]
    fn ingests_three_rows() {
        let c = parse_corpus(THREE, &inv()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.utterances[0].segments.len(), 3);
        assert_eq!(c.utterances[0].segments[1].duration_ms, Some(120.0));
    }

    #[test]
    fn negative_duration_names_line() {
        let text = THREE.replace("ae 120", "ae -5");
        let err = parse_corpus(&text, &inv()).unwrap_err();
        assert_eq!(err, CorpusError::NegativeDuration { line: 3 });
        assert_eq!(err.to_string(), "negative duration, line 3");
    }

    #[test]
    fn unknown_phone_names_symbol_and_line() {
        let text = THREE.replace("u1 t 70", "u1 xx 70");
        let err = parse_corpus(&text, &inv()).unwrap_err();
        assert_eq!(
            err,
            CorpusError::UnknownPhone {
                line: 4,
                phone: "xx".into()
            }
        );
    }

    #[test]
    fn interleaved_utterances_rejected() {
        let text = "utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type\n\
            a k 60 0 0 0 0 P C\n\
            a ae 120 0 0 0 0 P C\n\
            b t 70 0 0 0 0 P C\n\
            b iy 90 0 0 0 0 P C\n\
            a s 80 1 1 0 0 U F\n\
            a ih 50 1 1 0 0 U F\n";
        let err = parse_corpus(text, &inv()).unwrap_err();
        assert_eq!(
            err,
            CorpusError::NotContiguous {
                line: 6,
                utterance: "a".into()
            }
        );
        assert!(err.to_string().starts_with("utterance rows not contiguous"));
    }

    #[test]
    fn non_monotone_and_broken_chain_rejected() {
        let dec = "utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type\n\
            a k 60 1 0 0 0 P C\na ae 120 0 0 0 0 P C\n";
        assert!(matches!(
            parse_corpus(dec, &inv()),
            Err(CorpusError::Structure { .. })
        ));
        // word changes without a syllable change
        let chain = "utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type\n\
            a ae 60 0 0 0 0 P C\na iy 120 0 1 0 0 P C\n";
        assert!(matches!(
            parse_corpus(chain, &inv()),
            Err(CorpusError::Structure { .. })
        ));
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse_corpus("", &inv()), Err(CorpusError::Empty));
        assert_eq!(parse_corpus("# nothing\n", &inv()), Err(CorpusError::Empty));
        assert_eq!(
            parse_corpus(HEADER, &inv()),
            Err(CorpusError::Empty)
        );
    }

    #[test]
    fn unlabeled_accepts_dash() {
        let text = THREE.replace("ae 120", "ae -");
        assert_eq!(
            parse_corpus(&text, &inv()),
            Err(CorpusError::MissingDuration { line: 3 })
        );
        let c = parse_unlabeled_corpus(&text, &inv()).unwrap();
        assert_eq!(c.utterances[0].segments[1].duration_ms, None);
    }

    #[test]
    fn single_segment_utterance_is_first_and_last_everywhere() {
        let text = "utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type\n\
            a aa 100 0 0 0 0 P C\n";
        let c = parse_corpus(text, &inv()).unwrap();
        let p = &derive_positions(&c, &inv()).unwrap()[0][0];
        assert!(p.boundary_flags().iter().all(|&f| f));
        assert!(p.in_word_final_syllable && p.in_phrase_final_syllable && p.in_clause_final_syllable);
        assert_eq!(p.role, SyllableRole::Nucleus);
        assert_eq!((p.prev_phone.as_deref(), p.next_phone.as_deref()), (None, None));
    }

    #[test]
    fn cv_cv_word_final_syllable() {
        let text = "utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type\n\
            a b 60 0 0 0 0 P C\n\
            a aa 100 0 0 0 0 P C\n\
            a d 60 1 0 0 0 U C\n\
            a iy 90 1 0 0 0 U C\n";
        let c = parse_corpus(text, &inv()).unwrap();
        let p = &derive_positions(&c, &inv()).unwrap()[0];
        assert!(!p[1].in_word_final_syllable);
        assert!(p[3].in_word_final_syllable);
        assert_eq!(p[2].role, SyllableRole::Onset);
        assert!(p[2].first_in(Boundary::Syllable) && !p[2].first_in(Boundary::Word));
        assert!(p[3].last_in(Boundary::Clause) && p[3].last_in(Boundary::Sentence));
        assert_eq!(p[1].next_phone.as_deref(), Some("d"));
    }

    #[test]
    fn derivation_rejects_two_nuclei() {
        let text = "utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type\n\
            a aa 60 0 0 0 0 P C\na iy 100 0 0 0 0 P C\n";
        let c = parse_corpus(text, &inv()).unwrap();
        assert_eq!(
            derive_positions(&c, &inv()),
            Err(CorpusError::Syllabification {
                utterance: "a".into(),
                syllable: 0,
                nuclei: 2
            })
        );
    }

    #[test]
    fn explicit_roles_are_kept() {
        let text = "utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type role\n\
            a m 60 0 0 0 0 P C on\na en 100 0 0 0 0 P C nu\na aa 100 1 1 0 0 P C nu\n";
        let c = parse_corpus(text, &inv()).unwrap();
        let p = &derive_positions(&c, &inv()).unwrap()[0];
        assert_eq!(p[1].role, SyllableRole::Nucleus);
    }

    fn corpus_of(n: usize) -> Corpus {
        let utts = (0..n)
            .map(|i| Utterance {
                id: format!("u{i}"),
                segments: vec![SegmentRecord {
                    phone: "aa".into(),
                    duration_ms: Some(100.0 + i as f64),
                    syllable_idx: 0,
                    word_idx: 0,
                    phrase_idx: 0,
                    clause_idx: 0,
                    stress: Stress::Primary,
                    word_type: WordType::Content,
                    role: None,
                }],
            })
            .collect();
        Corpus::new(utts, "test").unwrap()
    }

    #[test]
    fn split_150_holds_out_10() {
        let c = corpus_of(150);
        let (train, test) = split_train_test(&c, 10, 7).unwrap();
        assert_eq!((train.len(), test.len()), (140, 10));
        let mut ids: Vec<_> = train
            .utterances
            .iter()
            .chain(&test.utterances)
            .map(|u| u.id.clone())
            .collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 150);
        let again = split_train_test(&c, 10, 7).unwrap();
        assert_eq!(again.1, test);
        assert_ne!(split_train_test(&c, 10, 8).unwrap().1, test);
    }

    #[test]
    fn split_zero_and_too_many() {
        let c = corpus_of(5);
        let (train, test) = split_train_test(&c, 0, 1).unwrap();
        assert_eq!(train, c);
        assert!(test.is_empty());
        assert!(matches!(
            split_train_test(&c, 5, 1),
            Err(CorpusError::HeldOut { .. })
        ));
    }
}
