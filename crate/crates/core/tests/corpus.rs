//! Corpus parsing, emission and position-derivation properties.

use durhybrid::corpus::{emit_corpus, Boundary, CorpusError, SyllableRole};
use durhybrid::{derive_positions, generate_synthetic_corpus, parse_corpus, split_train_test, PhoneInventory, SyntheticSpec};
use proptest::prelude::*;

fn synth(seed: u64, utterances: usize) -> durhybrid::Corpus {
    let spec = SyntheticSpec {
        utterances,
        segments_per_utterance: (2, 25),
        seed,
        ..SyntheticSpec::default()
    };
    generate_synthetic_corpus(&spec, &PhoneInventory::timit()).unwrap().corpus
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn emit_then_parse_is_identity(seed in 0u64..10_000) {
        let c = synth(seed, 6);
        let back = parse_corpus(&emit_corpus(&c), &PhoneInventory::timit()).unwrap();
        prop_assert_eq!(&back.utterances, &c.utterances);
        prop_assert_eq!(emit_corpus(&back), emit_corpus(&c));
    }

    #[test]
    fn boundary_flags_nest(seed in 0u64..10_000) {
        let inv = PhoneInventory::timit();
        for utt in derive_positions(&synth(seed, 5), &inv).unwrap() {
            let n = utt.len();
            for s in &utt {
                // a larger unit's edge is also an edge of every smaller unit
                for w in Boundary::ALL.windows(2) {
                    prop_assert!(!s.last_in(w[1]) || s.last_in(w[0]));
                    prop_assert!(!s.first_in(w[1]) || s.first_in(w[0]));
                }
                prop_assert_eq!(s.first_in(Boundary::Sentence), s.position == 0);
                prop_assert_eq!(s.last_in(Boundary::Sentence), s.position + 1 == n);
                prop_assert!(!s.in_clause_final_syllable || s.in_phrase_final_syllable);
                prop_assert!(!s.in_phrase_final_syllable || s.in_word_final_syllable);
                prop_assert_eq!(s.near_boundary(), s.in_phrase_final_syllable || s.in_clause_final_syllable);
                prop_assert_eq!(s.prev_phone.is_none(), s.position == 0);
                prop_assert_eq!(s.next_phone.is_none(), s.position + 1 == n);
                if s.last_in(Boundary::Phrase) {
                    prop_assert!(s.in_phrase_final_syllable);
                }
            }
            // exactly one nucleus per syllable, and it is syllabic
            let mut start = 0;
            while start < n {
                let syl = utt[start].record.syllable_idx;
                let end = (start..n).find(|&i| utt[i].record.syllable_idx != syl).unwrap_or(n);
                let nuclei: Vec<_> = utt[start..end].iter().filter(|s| s.role == SyllableRole::Nucleus).collect();
                prop_assert_eq!(nuclei.len(), 1);
                prop_assert!(inv.is_syllabic(&nuclei[0].record.phone));
                start = end;
            }
        }
    }

    #[test]
    fn split_partitions_utterances(seed in 0u64..1000, held_out in 1usize..9) {
        let c = synth(3, 10);
        let (train, test) = split_train_test(&c, held_out, seed).unwrap();
        prop_assert_eq!(test.len(), held_out);
        prop_assert_eq!(train.len() + test.len(), c.len());
        let mut ids: Vec<&str> = train.utterances.iter().chain(&test.utterances).map(|u| u.id.as_str()).collect();
        ids.sort_unstable();
        let mut all: Vec<&str> = c.utterances.iter().map(|u| u.id.as_str()).collect();
        all.sort_unstable();
        prop_assert_eq!(ids, all);
        let again = split_train_test(&c, held_out, seed).unwrap();
        prop_assert_eq!(again.1.utterances, test.utterances);
    }
}

const HEAD: &str = "utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type\n";

#[test]
fn parse_errors_carry_line_numbers() {
    let inv = PhoneInventory::timit();
    let bad_phone = format!("{HEAD}u aa 100 0 0 0 0 P C\nu zz 50 0 0 0 0 P C\n");
    assert_eq!(
        parse_corpus(&bad_phone, &inv).unwrap_err(),
        CorpusError::UnknownPhone { line: 3, phone: "zz".into() }
    );
    let negative = format!("{HEAD}u aa -3 0 0 0 0 P C\n");
    assert_eq!(parse_corpus(&negative, &inv).unwrap_err(), CorpusError::NegativeDuration { line: 2 });
    let split = format!("{HEAD}u aa 1 0 0 0 0 P C\nv aa 1 0 0 0 0 P C\nu aa 1 1 1 0 0 P C\n");
    assert!(matches!(parse_corpus(&split, &inv), Err(CorpusError::NotContiguous { line: 4, .. })));
    let unlabeled = format!("{HEAD}u aa - 0 0 0 0 P C\n");
    assert!(parse_corpus(&unlabeled, &inv).is_err());
    assert!(durhybrid::corpus::parse_unlabeled_corpus(&unlabeled, &inv).is_ok());
}

#[test]
fn held_out_must_leave_training_data() {
    let c = synth(1, 4);
    assert!(matches!(split_train_test(&c, 4, 1), Err(CorpusError::HeldOut { .. })));
}
