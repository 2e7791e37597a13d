//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use durhybrid::features::BlockKind;
use durhybrid::{EncodingLayout, Network};
use nalgebra::{DMatrix, DVector};

/// Percent-of-variance error written out longhand.
pub fn brute_force_percent_variance(p: &[f64], t: &[f64]) -> f64 {
    let n = t.len() as f64;
    let mut mean = 0.0;
    for x in t {
        mean += x;
    }
    mean /= n;
    let mut var = 0.0;
    for x in t {
        var += (x - mean) * (x - mean);
    }
    var /= n;
    let mut mse = 0.0;
    for i in 0..t.len() {
        mse += (p[i] - t[i]) * (p[i] - t[i]);
    }
    mse /= n;
    100.0 * mse / var
}

/// Absolute first-layer weights summed per block kind with an explicit
/// double loop over (unit, column), columns located by walking the slots.
pub fn brute_force_block_totals(net: &Network, layout: &EncodingLayout) -> Vec<(BlockKind, f64)> {
    let first = &net.layers()[0];
    let mut owner = Vec::new();
    for _slot in 0..layout.window() {
        for b in layout.slot_blocks() {
            for _ in 0..b.width {
                owner.push(b.kind);
            }
        }
    }
    while owner.len() < layout.total_width() {
        owner.push(BlockKind::Rules);
    }
    let kinds = [
        BlockKind::PhoneOneHot,
        BlockKind::ArticFeatures,
        BlockKind::Stress,
        BlockKind::WordType,
        BlockKind::Boundary,
        BlockKind::Rules,
        BlockKind::Pad,
    ];
    kinds
        .iter()
        .map(|&k| {
            let mut total = 0.0;
            for unit in 0..first.fan_out {
                for (col, &kind) in owner.iter().enumerate().take(first.fan_in) {
                    if kind == k {
                        total += first.weight(unit, col).abs();
                    }
                }
            }
            (k, total)
        })
        .collect()
}

/// Minimum-norm least-squares fit with an intercept; returns a predictor.
pub fn least_squares(xs: &[Vec<f64>], ys: &[f64]) -> impl Fn(&[f64]) -> f64 {
    let d = xs[0].len() + 1;
    let x = DMatrix::from_fn(xs.len(), d, |i, j| if j == 0 { 1.0 } else { xs[i][j - 1] });
    let y = DVector::from_column_slice(ys);
    let beta = x.svd(true, true).solve(&y, 1e-9).expect("svd solve");
    move |v: &[f64]| beta[0] + v.iter().zip(beta.iter().skip(1)).map(|(a, b)| a * b).sum::<f64>()
}

/// One hand-labelled sentence: two clauses, three phrases, five syllables.
///
/// ```text
/// clause 0 [ phrase 0 ( dh ax | k ae t ) phrase 1 ( s ih . t ih ng ) ]
/// clause 1 [ phrase 2 ( d aa g ) ]
/// ```
pub const FIXTURE: &str = "\
utt_id phone duration_ms syll_idx word_idx phrase_idx clause_idx stress word_type
f1 dh 40 0 0 0 0 U F
f1 ax 45 0 0 0 0 U F
f1 k 70 1 1 0 0 P C
f1 ae 150 1 1 0 0 P C
f1 t 60 1 1 0 0 P C
f1 s 95 2 2 1 0 P C
f1 ih 70 2 2 1 0 P C
f1 t 55 3 2 1 0 S C
f1 ih 90 3 2 1 0 S C
f1 ng 80 3 2 1 0 S C
f1 d 60 4 3 2 1 P C
f1 aa 180 4 3 2 1 P C
f1 g 75 4 3 2 1 P C
";

/// Rule cases the hybrid's source names explicitly, each with a fixture
/// position where it must fire and one where it must not.
/// (rule id, description, fires at, silent at)
pub const ATTESTED: [(&str, &str, usize, usize); 8] = [
    ("R01", "nucleus of last syllable in clause", 8, 3),
    ("R03", "nucleus of last syllable in phrase", 3, 6),
    ("R02", "in coda of last syllable in clause", 9, 4),
    ("R05", "syllabic, not in word-final syllable", 6, 8),
    ("R06", "syllabic, in non-phrase-final syllable", 6, 3),
    ("R02", "coda of clause-final syllable (second clause)", 12, 10),
    ("R07", "phone in unstressed syllable", 1, 3),
    ("R08", "nucleus of secondary-stressed syllable", 8, 6),
];
