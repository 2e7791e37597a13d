//! Per-phone duration statistics, z-score scaling, and the
//! percent-of-variance error metric.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::corpus::Corpus;
use crate::fingerprint;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("empty corpus")]
    Empty,
    #[error("degenerate corpus: zero variance")]
    Degenerate,
    #[error("utterance {utterance:?}, segment {segment}: missing duration")]
    MissingDuration { utterance: String, segment: usize },
    #[error("phone {0:?} has no statistics")]
    UnknownPhone(String),
    #[error("length mismatch: {predicted} predictions, {target} targets")]
    LengthMismatch { predicted: usize, target: usize },
    #[error("no values to score")]
    NoValues,
    #[error("target variance is zero")]
    ZeroTargetVariance,
    #[error("stats file line {line}: {detail}")]
    Parse { line: usize, detail: String },
}

/// Scaled duration, in standard deviations from the phone mean.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ZScore(pub f64);

impl ZScore {
    pub fn value(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhoneStat {
    pub mean_ms: f64,
    pub std_ms: f64,
    pub count: usize,
    /// `std_ms` was replaced by the global std (singleton or zero-spread phone).
    pub fallback: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhoneStats {
    phones: BTreeMap<String, PhoneStat>,
    global_mean_ms: f64,
    global_std_ms: f64,
    global_count: usize,
    /// Scale phones missing from the table with the global mean/std instead
    /// of failing.
    pub unknown_fallback: bool,
}

fn mean_and_population_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Mean and population standard deviation of durations per phone.
///
/// Phones seen once, or whose durations never vary, take the global std and
/// are flagged as fallbacks. A corpus in which no phone's duration varies is
/// rejected as degenerate.
pub fn compute_phone_stats(corpus: &Corpus) -> Result<PhoneStats, StatsError> {
    let mut by_phone: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    let mut all = Vec::with_capacity(corpus.segment_count());
    for utt in &corpus.utterances {
        for (i, seg) in utt.segments.iter().enumerate() {
            let d = seg.duration_ms.ok_or_else(|| StatsError::MissingDuration {
                utterance: utt.id.clone(),
                segment: i,
            })?;
            by_phone.entry(&seg.phone).or_default().push(d);
            all.push(d);
        }
    }
    if all.is_empty() {
        return Err(StatsError::Empty);
    }
    let (global_mean_ms, global_std_ms) = mean_and_population_std(&all);
    // z-scores carry no information unless some phone varies
    let no_spread = by_phone.values().all(|ds| mean_and_population_std(ds).1 == 0.0);
    if global_std_ms == 0.0 || no_spread {
        return Err(StatsError::Degenerate);
    }
    let phones = by_phone
        .into_iter()
        .map(|(phone, ds)| {
            let (mean_ms, std_ms) = mean_and_population_std(&ds);
            let fallback = ds.len() < 2 || std_ms == 0.0;
            let stat = PhoneStat {
                mean_ms,
                std_ms: if fallback { global_std_ms } else { std_ms },
                count: ds.len(),
                fallback,
            };
            (phone.to_owned(), stat)
        })
        .collect();
    Ok(PhoneStats {
        phones,
        global_mean_ms,
        global_std_ms,
        global_count: all.len(),
        unknown_fallback: false,
    })
}

impl PhoneStats {
    pub fn get(&self, phone: &str) -> Option<&PhoneStat> {
        self.phones.get(phone)
    }

    pub fn phones(&self) -> impl Iterator<Item = (&str, &PhoneStat)> {
        self.phones.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn global_mean_ms(&self) -> f64 {
        self.global_mean_ms
    }

    pub fn global_std_ms(&self) -> f64 {
        self.global_std_ms
    }

    pub fn with_unknown_fallback(mut self, enabled: bool) -> Self {
        self.unknown_fallback = enabled;
        self
    }

    fn params(&self, phone: &str) -> Result<(f64, f64), StatsError> {
        match self.phones.get(phone) {
            Some(s) => Ok((s.mean_ms, s.std_ms)),
            None if self.unknown_fallback => Ok((self.global_mean_ms, self.global_std_ms)),
            None => Err(StatsError::UnknownPhone(phone.to_owned())),
        }
    }

    pub fn scale_duration(&self, duration_ms: f64, phone: &str) -> Result<ZScore, StatsError> {
        let (mean, std) = self.params(phone)?;
        Ok(ZScore((duration_ms - mean) / std))
    }

    pub fn unscale(&self, z: ZScore, phone: &str) -> Result<f64, StatsError> {
        let (mean, std) = self.params(phone)?;
        Ok(z.0 * std + mean)
    }

    /// `phone mean_ms std_ms count fallback`; the `*` row holds the global values.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("phone\tmean_ms\tstd_ms\tcount\tfallback\n");
        let _ = writeln!(
            out,
            "*\t{}\t{}\t{}\t0",
            self.global_mean_ms, self.global_std_ms, self.global_count
        );
        for (p, s) in &self.phones {
            let _ = writeln!(
                out,
                "{p}\t{}\t{}\t{}\t{}",
                s.mean_ms,
                s.std_ms,
                s.count,
                u8::from(s.fallback)
            );
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self, StatsError> {
        let mut phones = BTreeMap::new();
        let mut global = None;
        let mut saw_header = false;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !saw_header {
                if !line.starts_with("phone") {
                    return Err(StatsError::Parse {
                        line: line_no,
                        detail: "missing header".into(),
                    });
                }
                saw_header = true;
                continue;
            }
            let bad = |detail: &str| StatsError::Parse {
                line: line_no,
                detail: detail.to_owned(),
            };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 5 {
                return Err(bad("expected 5 fields"));
            }
            let mean_ms: f64 = f[1].parse().map_err(|_| bad("bad mean"))?;
            let std_ms: f64 = f[2].parse().map_err(|_| bad("bad std"))?;
            let count: usize = f[3].parse().map_err(|_| bad("bad count"))?;
            let fallback = match f[4] {
                "0" => false,
                "1" => true,
                _ => return Err(bad("bad fallback flag")),
            };
            if std_ms.is_nan() || std_ms < 0.0 || !mean_ms.is_finite() {
                return Err(bad("std must be nonnegative and mean finite"));
            }
            if f[0] == "*" {
                global = Some((mean_ms, std_ms, count));
            } else {
                phones.insert(
                    f[0].to_owned(),
                    PhoneStat {
                        mean_ms,
                        std_ms,
                        count,
                        fallback,
                    },
                );
            }
        }
        let (global_mean_ms, global_std_ms, global_count) = global.ok_or(StatsError::Parse {
            line: 0,
            detail: "missing global `*` row".into(),
        })?;
        Ok(Self {
            phones,
            global_mean_ms,
            global_std_ms,
            global_count,
            unknown_fallback: false,
        })
    }

    pub fn fingerprint(&self) -> String {
        fingerprint(self.to_tsv().as_bytes())
    }
}

/// `100 · mean((p − t)²) / var(t)`, population variance.
pub fn mse_percent_variance(predicted: &[f64], target: &[f64]) -> Result<f64, StatsError> {
    if predicted.len() != target.len() {
        return Err(StatsError::LengthMismatch {
            predicted: predicted.len(),
            target: target.len(),
        });
    }
    if target.is_empty() {
        return Err(StatsError::NoValues);
    }
    let n = target.len() as f64;
    let mean_t = target.iter().sum::<f64>() / n;
    let var = target.iter().map(|t| (t - mean_t).powi(2)).sum::<f64>() / n;
    if var == 0.0 {
        return Err(StatsError::ZeroTargetVariance);
    }
    let mse = predicted
        .iter()
        .zip(target)
        .map(|(p, t)| (p - t).powi(2))
        .sum::<f64>()
        / n;
    Ok(100.0 * mse / var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{SegmentRecord, Stress, Utterance, WordType};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn seg(phone: &str, d: f64) -> SegmentRecord {
        SegmentRecord {
            phone: phone.into(),
            duration_ms: Some(d),
            syllable_idx: 0,
            word_idx: 0,
            phrase_idx: 0,
            clause_idx: 0,
            stress: Stress::Primary,
            word_type: WordType::Content,
            role: None,
        }
    }

    fn corpus(segs: Vec<SegmentRecord>) -> Corpus {
        Corpus::new(
            vec![Utterance {
                id: "u".into(),
                segments: segs,
            }],
            "",
        )
        .unwrap()
    }

    fn a_stats() -> PhoneStats {
        compute_phone_stats(&corpus(vec![seg("aa", 80.0), seg("aa", 120.0)])).unwrap()
    }

    #[test]
    fn two_point_population_std() {
        let s = a_stats();
        let a = s.get("aa").unwrap();
        assert_eq!((a.mean_ms, a.std_ms, a.count, a.fallback), (100.0, 20.0, 2, false));
    }

    #[test]
    fn singleton_falls_back_to_global_std() {
        // 9 segments of two phones plus one singleton
        let mut segs = vec![];
        for d in [60.0, 70.0, 80.0, 90.0, 100.0] {
            segs.push(seg("aa", d));
        }
        for d in [40.0, 45.0, 55.0, 65.0] {
            segs.push(seg("t", d));
        }
        segs.push(seg("iy", 50.0));
        let all: Vec<f64> = segs.iter().map(|s| s.duration_ms.unwrap()).collect();
        // direct formula
        let m = all.iter().sum::<f64>() / 10.0;
        let g = (all.iter().map(|d| (d - m) * (d - m)).sum::<f64>() / 10.0).sqrt();
        let s = compute_phone_stats(&corpus(segs)).unwrap();
        let iy = s.get("iy").unwrap();
        assert_eq!(iy.mean_ms, 50.0);
        assert!(iy.fallback);
        assert_abs_diff_eq!(iy.std_ms, g, epsilon = 1e-12);
        assert_abs_diff_eq!(s.global_std_ms(), g, epsilon = 1e-12);
        assert!(!s.get("aa").unwrap().fallback);
    }

    #[test]
    fn zero_variance_is_degenerate() {
        let err = compute_phone_stats(&corpus(vec![seg("aa", 50.0), seg("t", 50.0)])).unwrap_err();
        assert_eq!(err.to_string(), "degenerate corpus: zero variance");
        // per-phone constants with different means
        let err = compute_phone_stats(&corpus(vec![seg("aa", 90.0), seg("aa", 90.0), seg("t", 50.0)]));
        assert_eq!(err, Err(StatsError::Degenerate));
    }

    #[test]
    fn empty_corpus() {
        assert_eq!(compute_phone_stats(&Corpus::default()), Err(StatsError::Empty));
    }

    #[test]
    fn scale_examples() {
        let s = a_stats();
        assert_eq!(s.scale_duration(120.0, "aa").unwrap(), ZScore(1.0));
        assert_eq!(s.scale_duration(100.0, "aa").unwrap(), ZScore(0.0));
        assert_eq!(s.scale_duration(70.0, "aa").unwrap(), ZScore(-1.5));
        assert_eq!(s.unscale(ZScore(1.0), "aa").unwrap(), 120.0);
        assert_eq!(s.unscale(ZScore(0.0), "aa").unwrap(), 100.0);
    }

    #[test]
    fn unknown_phone() {
        let s = a_stats();
        assert_eq!(
            s.scale_duration(1.0, "zz"),
            Err(StatsError::UnknownPhone("zz".into()))
        );
        assert!(s.unscale(ZScore(0.0), "zz").is_err());
        let s = s.with_unknown_fallback(true);
        assert_eq!(s.scale_duration(100.0, "zz").unwrap(), ZScore(0.0));
    }

    #[test]
    fn tsv_round_trip_is_exact() {
        let s = compute_phone_stats(&corpus(vec![
            seg("aa", 81.3),
            seg("aa", 119.7),
            seg("t", 33.3333),
        ]))
        .unwrap();
        let back = PhoneStats::from_tsv(&s.to_tsv()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.fingerprint(), s.fingerprint());
    }

    #[test]
    fn metric_reference_points() {
        let t = [0.5, -1.0, 2.0, 0.0, 1.5];
        assert_eq!(mse_percent_variance(&t, &t).unwrap(), 0.0);
        let m = t.iter().sum::<f64>() / 5.0;
        assert_abs_diff_eq!(mse_percent_variance(&[m; 5], &t).unwrap(), 100.0, epsilon = 1e-12);
    }

    #[test]
    fn metric_brute_force_five_pairs() {
        let p = [0.1, -0.7, 1.2, 0.4, 0.9];
        let t = [0.5, -1.0, 2.0, 0.0, 1.5];
        let mut sq = 0.0;
        let mut tsum = 0.0;
        for i in 0..5 {
            sq += (p[i] - t[i]) * (p[i] - t[i]);
            tsum += t[i];
        }
        let tm = tsum / 5.0;
        let mut v = 0.0;
        for x in t {
            v += (x - tm) * (x - tm);
        }
        let expected = 100.0 * (sq / 5.0) / (v / 5.0);
        assert_abs_diff_eq!(mse_percent_variance(&p, &t).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn metric_errors() {
        assert_eq!(
            mse_percent_variance(&[1.0], &[1.0, 2.0]),
            Err(StatsError::LengthMismatch {
                predicted: 1,
                target: 2
            })
        );
        assert_eq!(
            mse_percent_variance(&[1.0, 2.0], &[3.0, 3.0]),
            Err(StatsError::ZeroTargetVariance)
        );
        assert_eq!(mse_percent_variance(&[], &[]), Err(StatsError::NoValues));
    }

    proptest! {
        #[test]
        fn scale_unscale_identity(d in -1e4f64..1e4, mean in 10.0f64..300.0, std in 0.5f64..9.0) {
            let s = compute_phone_stats(&corpus(vec![seg("aa", mean - std), seg("aa", mean + std)])).unwrap();
            let z = s.scale_duration(d, "aa").unwrap();
            prop_assert!((s.unscale(z, "aa").unwrap() - d).abs() < 1e-9);
        }

        #[test]
        fn metric_affine_invariant(
            pairs in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 3..40),
            a in prop_oneof![-4.0f64..-0.25, 0.25f64..4.0],
            b in -10.0f64..10.0,
        ) {
            let (p, t): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            prop_assume!(mse_percent_variance(&p, &t).is_ok());
            let base = mse_percent_variance(&p, &t).unwrap();
            let pa: Vec<f64> = p.iter().map(|x| a * x + b).collect();
            let ta: Vec<f64> = t.iter().map(|x| a * x + b).collect();
            let moved = mse_percent_variance(&pa, &ta).unwrap();
            prop_assert!((base - moved).abs() <= 1e-7 * base.max(1.0));
        }

        #[test]
        fn metric_zero_only_at_target(
            t in proptest::collection::vec(-5.0f64..5.0, 3..20),
            i in any::<proptest::sample::Index>(),
            delta in prop_oneof![-1.0f64..-1e-3, 1e-3f64..1.0],
        ) {
            prop_assume!(mse_percent_variance(&t, &t).is_ok());
            let mut p = t.clone();
            let k = i.index(p.len());
            p[k] += delta;
            prop_assert!(mse_percent_variance(&p, &t).unwrap() > 0.0);
        }
    }
}
