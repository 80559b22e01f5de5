//! Exact-match span precision, recall and F1.
//!
//! A predicted span counts only when a gold span in the same sequence has
//! the same type, start and end. All rates are ratios of integer counts, so
//! they are rendered by exact integer rounding rather than through floats.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::label::TagScheme;
use crate::parse::parse_spans;
use crate::span::{ResolutionPolicy, Span};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("gold has {gold} sequences but predictions have {predicted}")]
    SequenceCount { gold: usize, predicted: usize },
    #[error("sequence {index}: gold has {gold} labels but prediction has {predicted}")]
    SequenceLength {
        index: usize,
        gold: usize,
        predicted: usize,
    },
}

/// Counts and rates for one entity type, or for all types combined.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TypeScore {
    pub gold_count: usize,
    pub predicted_count: usize,
    pub correct_count: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// A ratio rendered with a fixed number of decimals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub numerator: usize,
    pub denominator: usize,
}

impl Ratio {
    /// Zero when the denominator is zero.
    pub fn value(self) -> f64 {
        if self.denominator == 0 {
            0.0
        } else {
            self.numerator as f64 / self.denominator as f64
        }
    }

    /// Four decimals, ties rounded up.
    pub fn format4(self) -> String {
        if self.denominator == 0 {
            return "0.0000".to_string();
        }
        let (num, den) = (self.numerator as u128, self.denominator as u128);
        let scaled = (2 * num * 10_000 + den) / (2 * den);
        format!("{}.{:04}", scaled / 10_000, scaled % 10_000)
    }
}

impl TypeScore {
    fn from_counts(gold: usize, predicted: usize, correct: usize) -> Self {
        let mut s = TypeScore {
            gold_count: gold,
            predicted_count: predicted,
            correct_count: correct,
            ..Default::default()
        };
        s.precision = s.precision_ratio().value();
        s.recall = s.recall_ratio().value();
        s.f1 = s.f1_ratio().value();
        s
    }

    pub fn precision_ratio(&self) -> Ratio {
        Ratio {
            numerator: self.correct_count,
            denominator: self.predicted_count,
        }
    }

    pub fn recall_ratio(&self) -> Ratio {
        Ratio {
            numerator: self.correct_count,
            denominator: self.gold_count,
        }
    }

    /// 2PR/(P+R) reduces to 2·correct/(gold+predicted).
    pub fn f1_ratio(&self) -> Ratio {
        Ratio {
            numerator: 2 * self.correct_count,
            denominator: self.gold_count + self.predicted_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoreReport {
    pub per_type: BTreeMap<String, TypeScore>,
    pub micro: TypeScore,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Counts {
    gold: usize,
    predicted: usize,
    correct: usize,
}

/// Accumulates per-type counts one sequence at a time. Accumulators built
/// over disjoint parts of a corpus can be merged in any order.
#[derive(Debug, Clone, Default)]
pub struct Scorer {
    counts: BTreeMap<String, Counts>,
}

impl Scorer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_sequence(&mut self, gold: &[Span], predicted: &[Span]) {
        let mut unmatched: HashMap<(&str, usize, usize), usize> = HashMap::new();
        for s in gold {
            self.counts
                .entry(s.entity_type().to_string())
                .or_default()
                .gold += 1;
            *unmatched.entry(key(s)).or_default() += 1;
        }
        for s in predicted {
            let c = self.counts.entry(s.entity_type().to_string()).or_default();
            c.predicted += 1;
            if let Some(n) = unmatched.get_mut(&key(s)).filter(|n| **n > 0) {
                *n -= 1;
                c.correct += 1;
            }
        }
    }

    pub fn merge(&mut self, other: &Scorer) {
        for (ty, c) in &other.counts {
            let mine = self.counts.entry(ty.clone()).or_default();
            mine.gold += c.gold;
            mine.predicted += c.predicted;
            mine.correct += c.correct;
        }
    }

    pub fn report(&self) -> ScoreReport {
        let mut total = Counts::default();
        let per_type = self
            .counts
            .iter()
            .map(|(ty, c)| {
                total.gold += c.gold;
                total.predicted += c.predicted;
                total.correct += c.correct;
                (
                    ty.clone(),
                    TypeScore::from_counts(c.gold, c.predicted, c.correct),
                )
            })
            .collect();
        ScoreReport {
            per_type,
            micro: TypeScore::from_counts(total.gold, total.predicted, total.correct),
        }
    }
}

fn key(s: &Span) -> (&str, usize, usize) {
    (s.entity_type(), s.start(), s.end())
}

/// Scores predicted span lists against gold, sequence by sequence.
pub fn score(gold: &[Vec<Span>], predicted: &[Vec<Span>]) -> Result<ScoreReport, ScoreError> {
    if gold.len() != predicted.len() {
        return Err(ScoreError::SequenceCount {
            gold: gold.len(),
            predicted: predicted.len(),
        });
    }
    let mut scorer = Scorer::new();
    for (g, p) in gold.iter().zip(predicted) {
        scorer.add_sequence(g, p);
    }
    Ok(scorer.report())
}

/// Parses both sides with `policy` (robustly, so malformed gold does not
/// abort scoring) and scores the resulting spans.
pub fn score_labels<S: AsRef<str>>(
    gold: &[Vec<S>],
    predicted: &[Vec<S>],
    scheme: TagScheme,
    policy: ResolutionPolicy,
) -> Result<ScoreReport, ScoreError> {
    if gold.len() != predicted.len() {
        return Err(ScoreError::SequenceCount {
            gold: gold.len(),
            predicted: predicted.len(),
        });
    }
    let mut scorer = Scorer::new();
    for (index, (g, p)) in gold.iter().zip(predicted).enumerate() {
        if g.len() != p.len() {
            return Err(ScoreError::SequenceLength {
                index,
                gold: g.len(),
                predicted: p.len(),
            });
        }
        let g = parse_spans(g, scheme, policy).spans;
        let p = parse_spans(p, scheme, policy).spans;
        scorer.add_sequence(&g, &p);
    }
    Ok(scorer.report())
}

impl ScoreReport {
    /// Aligned table with one row per type and a final `micro` row.
    pub fn render_table(&self) -> String {
        let width = self
            .per_type
            .keys()
            .map(|k| k.chars().count())
            .max()
            .unwrap_or(0)
            .max(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>6}  {:>7}  {:>9}  {:>6}  {:>6}",
            "type", "gold", "pred", "correct", "precision", "recall", "f1"
        );
        let mut row = |name: &str, s: &TypeScore| {
            let _ = writeln!(
                out,
                "{:<width$}  {:>6}  {:>6}  {:>7}  {:>9}  {:>6}  {:>6}",
                name,
                s.gold_count,
                s.predicted_count,
                s.correct_count,
                s.precision_ratio().format4(),
                s.recall_ratio().format4(),
                s.f1_ratio().format4(),
            );
        };
        for (ty, s) in &self.per_type {
            row(ty, s);
        }
        row("micro", &self.micro);
        out
    }

    /// `metric.<type>.<field>=<value>` lines; the combined row uses `micro`.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        let entries = self.per_type.iter().map(|(k, v)| (k.as_str(), v));
        for (name, s) in entries.chain(std::iter::once(("micro", &self.micro))) {
            let _ = writeln!(out, "metric.{name}.gold={}", s.gold_count);
            let _ = writeln!(out, "metric.{name}.predicted={}", s.predicted_count);
            let _ = writeln!(out, "metric.{name}.correct={}", s.correct_count);
            let _ = writeln!(
                out,
                "metric.{name}.precision={}",
                s.precision_ratio().format4()
            );
            let _ = writeln!(out, "metric.{name}.recall={}", s.recall_ratio().format4());
            let _ = writeln!(out, "metric.{name}.f1={}", s.f1_ratio().format4());
        }
        out
    }
}
