//! Condition halves of a Klatt-style duration rule system.
//!
//! Each [`RuleCase`] is a boolean predicate over a [`PositionedSegment`]; the
//! duration adjustments a rule system would apply are not modelled. A
//! segment's [`RuleFiringVector`] has one bit per case.
//!
//! Rule tables are written in a line-based format:
//!
//! ```text
//! @version my-rules-v2
//! # id   variant    predicate
//! R01    unsplit    nucleus & clause_final_syll
//! R19    near       syllabic & next.stop & !next.voiced
//! ```
//!
//! `variant` is `unsplit`, `near` or `elsewhere`. A `near` case conjoins its
//! predicate with "segment lies in a phrase- or clause-final syllable",
//! `elsewhere` with the negation, so the two halves of a split rule are
//! disjoint and together cover the base predicate.
//!
//! Predicate grammar (`!` binds tightest, then `&`, then `|`):
//!
//! ```text
//! expr  := conj ('|' conj)*
//! conj  := unary ('&' unary)*
//! unary := '!' unary | '(' expr ')' | atom
//! atom  := flag | 'stress:'(P|S|U) | 'word:'(C|F|O) | 'phone:'SYM
//!        | FEATURE | ('prev'|'next') '.' ('exists' | FEATURE | 'phone:'SYM)
//! ```
//!
//! Flags: `first_<unit>`/`last_<unit>` for unit in syllable, word, phrase,
//! clause, sentence; `word_final_syll`, `phrase_final_syll`,
//! `clause_final_syll`, `near_boundary`; `onset`, `nucleus`, `coda`.
//! `FEATURE` is any articulatory feature name in the inventory.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::corpus::{Boundary, PositionedSegment, Stress, SyllableRole, WordType};
use crate::fingerprint;
use crate::inventory::PhoneInventory;

const DEFAULT_RULES: &str = include_str!("../data/default_rules.txt");

/// Number of cases in the default table.
pub const DEFAULT_RULE_COUNT: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("line {line}: {detail}")]
    Syntax { line: usize, detail: String },
    #[error("line {line}: unknown variant {value:?}")]
    Variant { line: usize, value: String },
    #[error("duplicate rule id {0:?}")]
    DuplicateId(String),
    #[error("rule set has {0} cases, strict mode requires 30")]
    Count(usize),
    #[error("rule set is empty")]
    Empty,
    #[error("rule {rule}: feature {feature:?} is not in the inventory")]
    UnknownFeature { rule: String, feature: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryVariant {
    NearBoundary,
    Elsewhere,
    Unsplit,
}

impl BoundaryVariant {
    pub fn code(self) -> &'static str {
        match self {
            BoundaryVariant::NearBoundary => "near",
            BoundaryVariant::Elsewhere => "elsewhere",
            BoundaryVariant::Unsplit => "unsplit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Prev,
    Next,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NeighborTest {
    Exists,
    Feature(String),
    Phone(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    First(Boundary),
    Last(Boundary),
    WordFinalSyllable,
    PhraseFinalSyllable,
    ClauseFinalSyllable,
    NearBoundary,
    Role(SyllableRole),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Flag(Flag),
    Stress(Stress),
    WordType(WordType),
    Phone(String),
    Feature(String),
    Neighbor(Side, NeighborTest),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Flag(flag) => match flag {
                Flag::First(b) => write!(f, "first_{b}"),
                Flag::Last(b) => write!(f, "last_{b}"),
                Flag::WordFinalSyllable => f.write_str("word_final_syll"),
                Flag::PhraseFinalSyllable => f.write_str("phrase_final_syll"),
                Flag::ClauseFinalSyllable => f.write_str("clause_final_syll"),
                Flag::NearBoundary => f.write_str("near_boundary"),
                Flag::Role(r) => f.write_str(match r {
                    SyllableRole::Onset => "onset",
                    SyllableRole::Nucleus => "nucleus",
                    SyllableRole::Coda => "coda",
                }),
            },
            Atom::Stress(s) => write!(f, "stress:{}", s.code()),
            Atom::WordType(w) => write!(f, "word:{}", w.code()),
            Atom::Phone(p) => write!(f, "phone:{p}"),
            Atom::Feature(x) => f.write_str(x),
            Atom::Neighbor(side, test) => {
                let side = match side {
                    Side::Prev => "prev",
                    Side::Next => "next",
                };
                match test {
                    NeighborTest::Exists => write!(f, "{side}.exists"),
                    NeighborTest::Feature(x) => write!(f, "{side}.{x}"),
                    NeighborTest::Phone(p) => write!(f, "{side}.phone:{p}"),
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, xs: &[Expr], sep: &str) -> fmt::Result {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                match x {
                    Expr::Or(_) | Expr::And(_) => write!(f, "({x})")?,
                    _ => write!(f, "{x}")?,
                }
            }
            Ok(())
        }
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Not(e) => match **e {
                Expr::Atom(_) | Expr::Not(_) => write!(f, "!{e}"),
                _ => write!(f, "!({e})"),
            },
            Expr::And(xs) => join(f, xs, " & "),
            Expr::Or(xs) => join(f, xs, " | "),
        }
    }
}

fn parse_atom(word: &str) -> Result<Atom, String> {
    let flag = |b: &str| Boundary::ALL.into_iter().find(|x| x.name() == b);
    if let Some(rest) = word.strip_prefix("first_") {
        if let Some(b) = flag(rest) {
            return Ok(Atom::Flag(Flag::First(b)));
        }
    }
    if let Some(rest) = word.strip_prefix("last_") {
        if let Some(b) = flag(rest) {
            return Ok(Atom::Flag(Flag::Last(b)));
        }
    }
    let simple = match word {
        "word_final_syll" => Some(Flag::WordFinalSyllable),
        "phrase_final_syll" => Some(Flag::PhraseFinalSyllable),
        "clause_final_syll" => Some(Flag::ClauseFinalSyllable),
        "near_boundary" => Some(Flag::NearBoundary),
        "onset" => Some(Flag::Role(SyllableRole::Onset)),
        "nucleus" => Some(Flag::Role(SyllableRole::Nucleus)),
        "coda" => Some(Flag::Role(SyllableRole::Coda)),
        _ => None,
    };
    if let Some(f) = simple {
        return Ok(Atom::Flag(f));
    }
    if let Some(v) = word.strip_prefix("stress:") {
        return Stress::from_code(v)
            .map(Atom::Stress)
            .ok_or_else(|| format!("bad stress value {v:?}"));
    }
    if let Some(v) = word.strip_prefix("word:") {
        return WordType::from_code(v)
            .map(Atom::WordType)
            .ok_or_else(|| format!("bad word type {v:?}"));
    }
    if let Some(v) = word.strip_prefix("phone:") {
        return Ok(Atom::Phone(v.to_owned()));
    }
    for (prefix, side) in [("prev.", Side::Prev), ("next.", Side::Next)] {
        if let Some(rest) = word.strip_prefix(prefix) {
            let test = match rest {
                "exists" => NeighborTest::Exists,
                _ => match rest.strip_prefix("phone:") {
                    Some(p) => NeighborTest::Phone(p.to_owned()),
                    None if is_ident(rest) => NeighborTest::Feature(rest.to_owned()),
                    None => return Err(format!("bad neighbour test {word:?}")),
                },
            };
            return Ok(Atom::Neighbor(side, test));
        }
    }
    if is_ident(word) {
        Ok(Atom::Feature(word.to_owned()))
    } else {
        Err(format!("bad atom {word:?}"))
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    LParen,
    RParen,
    And,
    Or,
    Not,
    Word(&'a str),
}

fn tokenize(s: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut rest = s;
    loop {
        rest = rest.trim_start();
        let Some(c) = rest.chars().next() else { break };
        let tok = match c {
            '(' => Token::LParen,
            ')' => Token::RParen,
            '&' => Token::And,
            '|' => Token::Or,
            '!' => Token::Not,
            _ => {
                let end = rest
                    .find(|c: char| c.is_whitespace() || "()&|!".contains(c))
                    .unwrap_or(rest.len());
                out.push(Token::Word(&rest[..end]));
                rest = &rest[end..];
                continue;
            }
        };
        out.push(tok);
        rest = &rest[1..];
    }
    out
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn or(&mut self) -> Result<Expr, String> {
        let mut xs = vec![self.and()?];
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            xs.push(self.and()?);
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { Expr::Or(xs) })
    }

    fn and(&mut self) -> Result<Expr, String> {
        let mut xs = vec![self.unary()?];
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            xs.push(self.unary()?);
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { Expr::And(xs) })
    }

    fn unary(&mut self) -> Result<Expr, String> {
        let tok = self.tokens.get(self.pos).ok_or("unexpected end of expression")?;
        self.pos += 1;
        match tok {
            Token::Not => Ok(Expr::Not(Box::new(self.unary()?))),
            Token::LParen => {
                let e = self.or()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err("missing `)`".into());
                }
                self.pos += 1;
                Ok(e)
            }
            Token::Word(w) => parse_atom(w).map(Expr::Atom),
            other => Err(format!("unexpected {other:?}")),
        }
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut p = Parser {
            tokens: tokenize(text),
            pos: 0,
        };
        let e = p.or()?;
        if p.pos != p.tokens.len() {
            return Err(format!("trailing input after token {}", p.pos));
        }
        Ok(e)
    }

    fn atoms<'e>(&'e self, out: &mut Vec<&'e Atom>) {
        match self {
            Expr::Atom(a) => out.push(a),
            Expr::Not(e) => e.atoms(out),
            Expr::And(xs) | Expr::Or(xs) => xs.iter().for_each(|x| x.atoms(out)),
        }
    }

    pub fn eval(&self, seg: &PositionedSegment, inv: &PhoneInventory) -> bool {
        match self {
            Expr::Atom(a) => a.eval(seg, inv),
            Expr::Not(e) => !e.eval(seg, inv),
            Expr::And(xs) => xs.iter().all(|x| x.eval(seg, inv)),
            Expr::Or(xs) => xs.iter().any(|x| x.eval(seg, inv)),
        }
    }
}

impl Atom {
    pub fn eval(&self, seg: &PositionedSegment, inv: &PhoneInventory) -> bool {
        match self {
            Atom::Flag(flag) => match *flag {
                Flag::First(b) => seg.first_in(b),
                Flag::Last(b) => seg.last_in(b),
                Flag::WordFinalSyllable => seg.in_word_final_syllable,
                Flag::PhraseFinalSyllable => seg.in_phrase_final_syllable,
                Flag::ClauseFinalSyllable => seg.in_clause_final_syllable,
                Flag::NearBoundary => seg.near_boundary(),
                Flag::Role(r) => seg.role == r,
            },
            Atom::Stress(s) => seg.record.stress == *s,
            Atom::WordType(w) => seg.record.word_type == *w,
            Atom::Phone(p) => seg.record.phone == *p,
            Atom::Feature(x) => inv.has_feature(&seg.record.phone, x).unwrap_or(false),
            Atom::Neighbor(side, test) => {
                let phone = match side {
                    Side::Prev => seg.prev_phone.as_deref(),
                    Side::Next => seg.next_phone.as_deref(),
                };
                match (phone, test) {
                    (None, _) => false,
                    (Some(_), NeighborTest::Exists) => true,
                    (Some(p), NeighborTest::Feature(x)) => inv.has_feature(p, x).unwrap_or(false),
                    (Some(p), NeighborTest::Phone(q)) => p == q,
                }
            }
        }
    }

    fn feature_name(&self) -> Option<&str> {
        match self {
            Atom::Feature(x) | Atom::Neighbor(_, NeighborTest::Feature(x)) => Some(x),
            _ => None,
        }
    }
}

/// One condition case of a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleCase {
    pub id: String,
    pub variant: BoundaryVariant,
    /// Predicate before the boundary variant is applied.
    pub base: Expr,
}

impl RuleCase {
    pub fn base_holds(&self, seg: &PositionedSegment, inv: &PhoneInventory) -> bool {
        self.base.eval(seg, inv)
    }

    pub fn fires(&self, seg: &PositionedSegment, inv: &PhoneInventory) -> bool {
        let near = seg.near_boundary();
        match self.variant {
            BoundaryVariant::Unsplit => self.base_holds(seg, inv),
            BoundaryVariant::NearBoundary => near && self.base_holds(seg, inv),
            BoundaryVariant::Elsewhere => !near && self.base_holds(seg, inv),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    cases: Vec<RuleCase>,
    version: String,
}

/// Bit per rule case, in rule-set order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleFiringVector(Vec<bool>);

impl RuleFiringVector {
    pub fn zeros(width: usize) -> Self {
        Self(vec![false; width])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }
}

/// One line of [`RuleSet::explain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiringTrace {
    pub id: String,
    pub fired: bool,
    pub reason: String,
}

impl RuleSet {
    /// The built-in 30-case table.
    pub fn default_klatt() -> Self {
        Self::parse(DEFAULT_RULES, true).expect("built-in rule table is valid")
    }

    /// Parses a rules config. With `strict30` the table must have exactly 30 cases.
    pub fn parse(text: &str, strict30: bool) -> Result<Self, RuleError> {
        let mut cases: Vec<RuleCase> = Vec::new();
        let mut version = None;
        let mut ids = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            if let Some(v) = l.strip_prefix("@version") {
                version = Some(v.trim().to_owned());
                continue;
            }
            let (id, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            let rest = rest.trim_start();
            let (variant, expr) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let expr = expr.trim();
            if expr.is_empty() {
                return Err(RuleError::Syntax {
                    line,
                    detail: "expected `id variant predicate`".into(),
                });
            }
            let variant = match variant {
                "unsplit" => BoundaryVariant::Unsplit,
                "near" => BoundaryVariant::NearBoundary,
                "elsewhere" => BoundaryVariant::Elsewhere,
                v => {
                    return Err(RuleError::Variant {
                        line,
                        value: v.to_owned(),
                    })
                }
            };
            let base = Expr::parse(expr).map_err(|detail| RuleError::Syntax { line, detail })?;
            if !ids.insert(id.to_owned()) {
                return Err(RuleError::DuplicateId(id.to_owned()));
            }
            cases.push(RuleCase {
                id: id.to_owned(),
                variant,
                base,
            });
        }
        if cases.is_empty() {
            return Err(RuleError::Empty);
        }
        if strict30 && cases.len() != DEFAULT_RULE_COUNT {
            return Err(RuleError::Count(cases.len()));
        }
        let version = version.unwrap_or_else(|| format!("custom-{}", fingerprint(text.as_bytes())));
        Ok(Self { cases, version })
    }

    pub fn cases(&self) -> &[RuleCase] {
        &self.cases
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.cases.iter().position(|c| c.id == id)
    }

    /// Checks that every feature the predicates mention exists in `inv`.
    pub fn check_inventory(&self, inv: &PhoneInventory) -> Result<(), RuleError> {
        for case in &self.cases {
            let mut atoms = Vec::new();
            case.base.atoms(&mut atoms);
            if let Some(f) = atoms
                .iter()
                .filter_map(|a| a.feature_name())
                .find(|f| inv.feature_index(f).is_none())
            {
                return Err(RuleError::UnknownFeature {
                    rule: case.id.clone(),
                    feature: f.to_owned(),
                });
            }
        }
        Ok(())
    }

    pub fn fire(&self, inv: &PhoneInventory, seg: &PositionedSegment) -> RuleFiringVector {
        RuleFiringVector(self.cases.iter().map(|c| c.fires(seg, inv)).collect())
    }

    /// Per-case firing with the atom values that decided it.
    pub fn explain(&self, inv: &PhoneInventory, seg: &PositionedSegment) -> Vec<FiringTrace> {
        self.cases
            .iter()
            .map(|c| {
                let fired = c.fires(seg, inv);
                let mut atoms = Vec::new();
                c.base.atoms(&mut atoms);
                let mut reason = atoms
                    .iter()
                    .map(|a| format!("{a}={}", a.eval(seg, inv)))
                    .collect::<Vec<_>>()
                    .join(", ");
                if c.variant != BoundaryVariant::Unsplit {
                    reason.push_str(&format!(
                        "; variant {} with near_boundary={}",
                        c.variant.code(),
                        seg.near_boundary()
                    ));
                }
                FiringTrace {
                    id: c.id.clone(),
                    fired,
                    reason,
                }
            })
            .collect()
    }

    pub fn to_config(&self) -> String {
        let mut out = format!("@version {}\n", self.version);
        for c in &self.cases {
            out.push_str(&format!("{}\t{}\t{}\n", c.id, c.variant.code(), c.base));
        }
        out
    }
}

impl Default for RuleSet {
    fn default() -> Self {
        Self::default_klatt()
    }
}

/// `load_ruleset`: the built-in table when `config` is `None`.
pub fn load_ruleset(config: Option<&str>, strict30: bool) -> Result<RuleSet, RuleError> {
    match config {
        None => Ok(RuleSet::default_klatt()),
        Some(text) => RuleSet::parse(text, strict30),
    }
}

pub fn fire_rules(ruleset: &RuleSet, inv: &PhoneInventory, seg: &PositionedSegment) -> RuleFiringVector {
    ruleset.fire(inv, seg)
}

pub fn explain_firing(ruleset: &RuleSet, inv: &PhoneInventory, seg: &PositionedSegment) -> Vec<FiringTrace> {
    ruleset.explain(inv, seg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{derive_positions, parse_corpus};

    const HEAD: &str = "utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type\n";

    fn positions(rows: &str) -> Vec<PositionedSegment> {
        let inv = PhoneInventory::timit();
        let c = parse_corpus(&format!("{HEAD}{rows}"), &inv).unwrap();
        derive_positions(&c, &inv).unwrap().remove(0)
    }

    fn bit(rs: &RuleSet, v: &RuleFiringVector, id: &str) -> bool {
        v.get(rs.index_of(id).unwrap())
    }

    #[test]
    fn default_has_thirty_unique_cases() {
        let rs = RuleSet::default_klatt();
        assert_eq!(rs.len(), 30);
        assert_eq!(rs.version(), "klatt-conditions-v1");
        let ids: HashSet<_> = rs.cases().iter().map(|c| &c.id).collect();
        assert_eq!(ids.len(), 30);
        rs.check_inventory(&PhoneInventory::timit()).unwrap();
    }

    #[test]
    fn expression_display_round_trips() {
        for c in RuleSet::default_klatt().cases() {
            assert_eq!(Expr::parse(&c.base.to_string()).unwrap(), c.base);
        }
    }

    #[test]
    fn config_passthrough_and_errors() {
        let twelve: String = (1..=12).map(|i| format!("X{i} unsplit nucleus\n")).collect();
        assert_eq!(load_ruleset(Some(&twelve), false).unwrap().len(), 12);
        assert_eq!(load_ruleset(Some(&twelve), true), Err(RuleError::Count(12)));
        assert_eq!(
            load_ruleset(Some("A unsplit coda\nA near coda\n"), false),
            Err(RuleError::DuplicateId("A".into()))
        );
        assert!(matches!(
            load_ruleset(Some("A sideways coda\n"), false),
            Err(RuleError::Variant { line: 1, .. })
        ));
        assert!(matches!(
            load_ruleset(Some("A unsplit coda & (nucleus\n"), false),
            Err(RuleError::Syntax { line: 1, .. })
        ));
        let bad = load_ruleset(Some("A unsplit sparkly\n"), false).unwrap();
        assert!(matches!(
            bad.check_inventory(&PhoneInventory::timit()),
            Err(RuleError::UnknownFeature { .. })
        ));
    }

    #[test]
    fn operator_precedence() {
        let e = Expr::parse("!onset & coda | nucleus").unwrap();
        assert_eq!(
            e,
            Expr::Or(vec![
                Expr::And(vec![
                    Expr::Not(Box::new(Expr::Atom(Atom::Flag(Flag::Role(SyllableRole::Onset))))),
                    Expr::Atom(Atom::Flag(Flag::Role(SyllableRole::Coda))),
                ]),
                Expr::Atom(Atom::Flag(Flag::Role(SyllableRole::Nucleus))),
            ])
        );
    }

    #[test]
    fn clause_final_nucleus_and_coda() {
        // "cat": k ae t, one syllable closing the clause
        let p = positions("u k 60 0 0 0 0 P C\nu ae 120 0 0 0 0 P C\nu t 70 0 0 0 0 P C\n");
        let rs = RuleSet::default_klatt();
        let inv = PhoneInventory::timit();
        let v = rs.fire(&inv, &p[1]);
        assert!(bit(&rs, &v, "R01"));
        assert!(!bit(&rs, &v, "R02"));
        let v = rs.fire(&inv, &p[2]);
        assert!(bit(&rs, &v, "R02"));
        assert!(!bit(&rs, &v, "R01"));
        // ae followed by voiceless stop near a boundary
        let v = rs.fire(&inv, &p[1]);
        assert!(bit(&rs, &v, "R19") && !bit(&rs, &v, "R20"));
    }

    #[test]
    fn word_medial_syllabic() {
        let p = positions("u b 60 0 0 0 0 P C\nu aa 100 0 0 0 0 P C\nu d 60 1 0 0 0 U C\nu iy 90 1 0 0 0 U C\n");
        let rs = RuleSet::default_klatt();
        let inv = PhoneInventory::timit();
        assert!(bit(&rs, &rs.fire(&inv, &p[1]), "R05"));
        assert!(!bit(&rs, &rs.fire(&inv, &p[3]), "R05"));
    }

    #[test]
    fn explain_matches_fire_and_cites_stress() {
        let p = positions("u b 60 0 0 0 0 P C\nu aa 100 0 0 0 0 P C\nu d 60 1 0 0 0 U C\nu iy 90 1 0 0 0 U C\n");
        let rs = RuleSet::default_klatt();
        let inv = PhoneInventory::timit();
        for seg in &p {
            let trace = rs.explain(&inv, seg);
            assert_eq!(trace.len(), rs.len());
            let fired: Vec<bool> = trace.iter().map(|t| t.fired).collect();
            assert_eq!(fired, rs.fire(&inv, seg).bits());
        }
        let r07 = &rs.explain(&inv, &p[2])[rs.index_of("R07").unwrap()];
        assert!(r07.fired);
        assert!(r07.reason.contains("stress:U=true"), "{}", r07.reason);
    }
}
