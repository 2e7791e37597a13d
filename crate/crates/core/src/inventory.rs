//! Phone inventory: the ordered symbol set and its binary articulatory
//! feature table.
//!
//! The default table covers the 61 TIMIT labels over 14 features and ships
//! as `data/timit_inventory.tsv`; any table in the same format can replace it.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::fingerprint;

const DEFAULT_TABLE: &str = include_str!("../data/timit_inventory.tsv");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InventoryError {
    #[error("inventory has no header line")]
    MissingHeader,
    #[error("line {line}: expected {expected} feature values, found {found}")]
    RowWidth {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: feature value {value:?} is not 0 or 1")]
    BadBit { line: usize, value: String },
    #[error("line {line}: duplicate phone {phone:?}")]
    DuplicatePhone { line: usize, phone: String },
    #[error("duplicate feature name {0:?}")]
    DuplicateFeature(String),
    #[error("inventory has no phones")]
    Empty,
    #[error("no phone is marked syllabic")]
    NoSyllabic,
    #[error("inventory has no `syllabic` feature")]
    MissingSyllabicFeature,
}

/// Ordered phone symbols with one binary feature row per phone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhoneInventory {
    phones: Vec<String>,
    features: Vec<String>,
    rows: Vec<Vec<bool>>,
    index: HashMap<String, usize>,
    syllabic_col: usize,
}

impl PhoneInventory {
    pub fn new(
        phones: Vec<String>,
        features: Vec<String>,
        rows: Vec<Vec<bool>>,
    ) -> Result<Self, InventoryError> {
        if phones.is_empty() {
            return Err(InventoryError::Empty);
        }
        for (i, f) in features.iter().enumerate() {
            if features[..i].contains(f) {
                return Err(InventoryError::DuplicateFeature(f.clone()));
            }
        }
        let mut index = HashMap::with_capacity(phones.len());
        for (i, (p, row)) in phones.iter().zip(&rows).enumerate() {
            if row.len() != features.len() {
                return Err(InventoryError::RowWidth {
                    line: i + 1,
                    expected: features.len(),
                    found: row.len(),
                });
            }
            if index.insert(p.clone(), i).is_some() {
                return Err(InventoryError::DuplicatePhone {
                    line: i + 1,
                    phone: p.clone(),
                });
            }
        }
        if rows.len() != phones.len() {
            return Err(InventoryError::RowWidth {
                line: rows.len().min(phones.len()) + 1,
                expected: features.len(),
                found: 0,
            });
        }
        let syllabic_col = features
            .iter()
            .position(|f| f == "syllabic")
            .ok_or(InventoryError::MissingSyllabicFeature)?;
        if !rows.iter().any(|r| r[syllabic_col]) {
            return Err(InventoryError::NoSyllabic);
        }
        Ok(Self {
            phones,
            features,
            rows,
            index,
            syllabic_col,
        })
    }

    /// The built-in TIMIT table.
    pub fn timit() -> Self {
        Self::parse(DEFAULT_TABLE).expect("built-in inventory table is valid")
    }

    /// Parses `phone f1 f2 ...` rows of 0/1 under a header naming the features.
    /// Lines starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, InventoryError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or(InventoryError::MissingHeader)?;
        let features: Vec<String> = header
            .split_whitespace()
            .skip(1)
            .map(str::to_owned)
            .collect();

        let mut phones = Vec::new();
        let mut rows = Vec::new();
        for (line, l) in lines {
            let mut fields = l.split_whitespace();
            let phone = fields.next().unwrap_or_default().to_owned();
            let row = fields
                .map(|v| match v {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    other => Err(InventoryError::BadBit {
                        line,
                        value: other.to_owned(),
                    }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != features.len() {
                return Err(InventoryError::RowWidth {
                    line,
                    expected: features.len(),
                    found: row.len(),
                });
            }
            if phones.contains(&phone) {
                return Err(InventoryError::DuplicatePhone { line, phone });
            }
            phones.push(phone);
            rows.push(row);
        }
        Self::new(phones, features, rows)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::from("phone");
        for f in &self.features {
            out.push('\t');
            out.push_str(f);
        }
        out.push('\n');
        for (p, row) in self.phones.iter().zip(&self.rows) {
            out.push_str(p);
            for &b in row {
                let _ = write!(out, "\t{}", u8::from(b));
            }
            out.push('\n');
        }
        out
    }

    pub fn phones(&self) -> &[String] {
        &self.phones
    }

    pub fn features(&self) -> &[String] {
        &self.features
    }

    pub fn len(&self) -> usize {
        self.phones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phones.is_empty()
    }

    pub fn index_of(&self, phone: &str) -> Option<usize> {
        self.index.get(phone).copied()
    }

    pub fn contains(&self, phone: &str) -> bool {
        self.index.contains_key(phone)
    }

    pub fn feature_index(&self, feature: &str) -> Option<usize> {
        self.features.iter().position(|f| f == feature)
    }

    pub fn row(&self, phone: &str) -> Option<&[bool]> {
        self.index_of(phone).map(|i| self.rows[i].as_slice())
    }

    pub fn row_at(&self, index: usize) -> &[bool] {
        &self.rows[index]
    }

    /// Value of a named feature for a phone; `None` when either is unknown.
    pub fn has_feature(&self, phone: &str, feature: &str) -> Option<bool> {
        let col = self.feature_index(feature)?;
        self.row(phone).map(|r| r[col])
    }

    pub fn is_syllabic(&self, phone: &str) -> bool {
        self.row(phone).is_some_and(|r| r[self.syllabic_col])
    }

    pub fn fingerprint(&self) -> String {
        fingerprint(self.to_table().as_bytes())
    }
}

impl Default for PhoneInventory {
    fn default() -> Self {
        Self::timit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_table_has_61_phones_and_14_features() {
        let inv = PhoneInventory::timit();
        assert_eq!(inv.len(), 61);
        assert_eq!(inv.features().len(), 14);
        assert_eq!(inv.features()[0], "syllabic");
        assert_eq!(inv.features()[13], "rounded");
    }

    #[test]
    fn iy_row() {
        let inv = PhoneInventory::timit();
        let on: Vec<&str> = inv
            .features()
            .iter()
            .zip(inv.row("iy").unwrap())
            .filter(|(_, &b)| b)
            .map(|(f, _)| f.as_str())
            .collect();
        assert_eq!(on, ["syllabic", "sonorant", "voiced", "high"]);
    }

    #[test]
    fn table_round_trips() {
        let inv = PhoneInventory::timit();
        assert_eq!(PhoneInventory::parse(&inv.to_table()).unwrap(), inv);
    }

    #[test]
    fn rejects_width_mismatch() {
        let err = PhoneInventory::parse("phone syllabic voiced\naa 1 1\nb 0\n").unwrap_err();
        assert_eq!(
            err,
            InventoryError::RowWidth {
                line: 3,
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn rejects_no_syllabic() {
        let err = PhoneInventory::parse("phone syllabic\nb 0\n").unwrap_err();
        assert_eq!(err, InventoryError::NoSyllabic);
    }

    #[test]
    fn rejects_duplicates() {
        assert!(matches!(
            PhoneInventory::parse("phone syllabic\naa 1\naa 1\n"),
            Err(InventoryError::DuplicatePhone { line: 3, .. })
        ));
    }
}
