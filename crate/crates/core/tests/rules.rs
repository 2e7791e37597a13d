//! Rule-set conformance: attested cases, boundary-split pairs, the
//! condition language.

mod common;

use durhybrid::rules::{BoundaryVariant, RuleError};
use durhybrid::{derive_positions, generate_synthetic_corpus, parse_corpus, PhoneInventory, RuleSet, SyntheticSpec};
use proptest::prelude::*;

#[test]
fn attested_cases_fire_on_fixture() {
    let inv = PhoneInventory::timit();
    let rs = RuleSet::default_klatt();
    let corpus = parse_corpus(common::FIXTURE, &inv).unwrap();
    let segs = derive_positions(&corpus, &inv).unwrap().remove(0);
    for (id, what, yes, no) in common::ATTESTED {
        let i = rs.index_of(id).unwrap();
        assert!(rs.fire(&inv, &segs[yes]).get(i), "{id} ({what}) should fire on segment {yes}");
        assert!(!rs.fire(&inv, &segs[no]).get(i), "{id} ({what}) should not fire on segment {no}");
    }
}

#[test]
fn explanation_agrees_with_firing() {
    let inv = PhoneInventory::timit();
    let rs = RuleSet::default_klatt();
    let corpus = parse_corpus(common::FIXTURE, &inv).unwrap();
    for seg in derive_positions(&corpus, &inv).unwrap().remove(0) {
        let fired = rs.fire(&inv, &seg);
        let trace = rs.explain(&inv, &seg);
        assert_eq!(trace.len(), 30);
        for (i, t) in trace.iter().enumerate() {
            assert_eq!(t.fired, fired.get(i));
            assert!(!t.reason.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn split_pairs_partition_their_base(seed in 0u64..100_000) {
        let inv = PhoneInventory::timit();
        let rs = RuleSet::default_klatt();
        let spec = SyntheticSpec { utterances: 4, segments_per_utterance: (3, 30), seed, ..SyntheticSpec::default() };
        let corpus = generate_synthetic_corpus(&spec, &inv).unwrap().corpus;
        let cases = rs.cases();
        for seg in derive_positions(&corpus, &inv).unwrap().into_iter().flatten() {
            let f = rs.fire(&inv, &seg);
            for i in 0..cases.len() {
                if cases[i].variant != BoundaryVariant::NearBoundary {
                    continue;
                }
                let j = i + 1;
                prop_assert_eq!(cases[j].variant, BoundaryVariant::Elsewhere);
                prop_assert_eq!(&cases[j].base, &cases[i].base);
                prop_assert!(!(f.get(i) && f.get(j)));
                prop_assert_eq!(f.get(i) || f.get(j), cases[i].base_holds(&seg, &inv));
                prop_assert_eq!(f.get(i), cases[i].base_holds(&seg, &inv) && seg.near_boundary());
            }
        }
    }
}

#[test]
fn custom_rule_files() {
    let text = "@version mine\nA unsplit (stop | nasal) & !voiced\nB near syllabic\nC elsewhere syllabic\n";
    let rs = RuleSet::parse(text, false).unwrap();
    assert_eq!(rs.version(), "mine");
    assert_eq!(rs.len(), 3);
    assert!(rs.check_inventory(&PhoneInventory::timit()).is_ok());
    assert_eq!(RuleSet::parse(text, true).unwrap_err(), RuleError::Count(3));

    let reparsed = RuleSet::parse(&rs.to_config(), false).unwrap();
    assert_eq!(reparsed.cases(), rs.cases());

    let unknown = RuleSet::parse("X unsplit sparkly\n", false).unwrap();
    assert!(unknown.check_inventory(&PhoneInventory::timit()).is_err());
    assert!(matches!(RuleSet::parse("X sideways nucleus\n", false), Err(RuleError::Variant { line: 1, .. })));
    assert!(matches!(RuleSet::parse("X unsplit nucleus &\n", false), Err(RuleError::Syntax { line: 1, .. })));
    assert!(matches!(RuleSet::parse("X unsplit a\nX unsplit b\n", false), Err(RuleError::DuplicateId(_))));
}
