//! Which labels may follow which, per scheme, and the mask built from it.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::label::{decode_label, Function, LabelError, TagScheme, TokenLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransitionError {
    #[error(transparent)]
    InvalidLabel(#[from] LabelError),
    #[error("at least one entity type is required")]
    NoTypes,
    #[error("entity type names must be non-empty")]
    EmptyType,
    #[error("entity type '{0}' is listed more than once")]
    DuplicateType(String),
}

/// Legality of `cur` immediately after `prev` under `scheme`, on decoded
/// labels. Sequence start is modelled as following an Outside label.
pub fn label_follows(prev: &TokenLabel, cur: &TokenLabel, scheme: TagScheme) -> bool {
    use Function::*;
    let same_type = prev.entity_type() == cur.entity_type();
    match scheme {
        TagScheme::Iobes | TagScheme::Bilou | TagScheme::Bmewo => match prev.function() {
            Begin | Inside => matches!(cur.function(), Inside | End) && same_type,
            Outside | End | Single => matches!(cur.function(), Outside | Begin | Single),
        },
        TagScheme::Bio => match cur.function() {
            Outside | Begin => true,
            Inside => !prev.is_outside() && same_type,
            End | Single => false,
        },
        TagScheme::Iob => match cur.function() {
            Outside | Inside => true,
            // B- only separates two touching spans of the same type.
            Begin => !prev.is_outside() && same_type,
            End | Single => false,
        },
    }
}

/// Whether `label` may end a sequence.
pub fn label_ends(label: &TokenLabel, scheme: TagScheme) -> bool {
    if scheme.is_iobes_family() {
        matches!(
            label.function(),
            Function::Outside | Function::End | Function::Single
        )
    } else {
        true
    }
}

/// Whether `label` may start a sequence.
pub fn label_starts(label: &TokenLabel, scheme: TagScheme) -> bool {
    label_follows(&TokenLabel::outside(), label, scheme)
}

pub fn is_legal_transition(
    from: &str,
    to: &str,
    scheme: TagScheme,
) -> Result<bool, TransitionError> {
    let from = decode_label(from, scheme)?;
    let to = decode_label(to, scheme)?;
    Ok(label_follows(&from, &to, scheme))
}

pub fn sequence_start_legal(label: &str, scheme: TagScheme) -> Result<bool, TransitionError> {
    Ok(label_starts(&decode_label(label, scheme)?, scheme))
}

pub fn sequence_end_legal(label: &str, scheme: TagScheme) -> Result<bool, TransitionError> {
    Ok(label_ends(&decode_label(label, scheme)?, scheme))
}

/// Full legality of a label vocabulary: pairwise matrix plus start/end
/// vectors, all indexed in `labels` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionTable {
    scheme: TagScheme,
    labels: Vec<String>,
    allowed: Vec<Vec<bool>>,
    start_allowed: Vec<bool>,
    end_allowed: Vec<bool>,
}

impl TransitionTable {
    pub fn scheme(&self) -> TagScheme {
        self.scheme
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `allowed()[from][to]`.
    pub fn allowed(&self) -> &[Vec<bool>] {
        &self.allowed
    }

    pub fn is_allowed(&self, from: usize, to: usize) -> bool {
        self.allowed[from][to]
    }

    pub fn start_allowed(&self) -> &[bool] {
        &self.start_allowed
    }

    pub fn end_allowed(&self) -> &[bool] {
        &self.end_allowed
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// One line per ordered pair plus `START ->` and `-> END` lines.
    pub fn render_table(&self) -> String {
        let word = |b: bool| if b { "legal" } else { "illegal" };
        let mut out = String::new();
        for (label, &ok) in self.labels.iter().zip(&self.start_allowed) {
            let _ = writeln!(out, "START -> {label} : {}", word(ok));
        }
        for (from, row) in self.labels.iter().zip(&self.allowed) {
            for (to, &ok) in self.labels.iter().zip(row) {
                let _ = writeln!(out, "{from} -> {to} : {}", word(ok));
            }
        }
        for (label, &ok) in self.labels.iter().zip(&self.end_allowed) {
            let _ = writeln!(out, "{label} -> END : {}", word(ok));
        }
        out
    }

    /// Vocabulary line, one 0/1 row per from-label, then `START:` and `END:`.
    pub fn render_mask(&self) -> String {
        let bits = |v: &[bool]| {
            v.iter()
                .map(|&b| if b { "1" } else { "0" })
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.labels.join(" "));
        for row in &self.allowed {
            let _ = writeln!(out, "{}", bits(row));
        }
        let _ = writeln!(out, "START: {}", bits(&self.start_allowed));
        let _ = writeln!(out, "END: {}", bits(&self.end_allowed));
        out
    }
}

/// Vocabulary is `O`, then for each type in caller order one label per
/// scheme prefix (Begin, Inside, End, Single where present).
pub fn build_transition_table<S: AsRef<str>>(
    types: &[S],
    scheme: TagScheme,
) -> Result<TransitionTable, TransitionError> {
    if types.is_empty() {
        return Err(TransitionError::NoTypes);
    }
    let mut seen = HashSet::new();
    for ty in types {
        let ty = ty.as_ref();
        if ty.is_empty() {
            return Err(TransitionError::EmptyType);
        }
        if !seen.insert(ty) {
            return Err(TransitionError::DuplicateType(ty.to_string()));
        }
    }

    let mut vocab = vec![TokenLabel::outside()];
    for ty in types {
        for function in scheme.format().functions() {
            vocab.push(TokenLabel::new(function, ty.as_ref(), scheme)?);
        }
    }

    let allowed = vocab
        .iter()
        .map(|from| {
            vocab
                .iter()
                .map(|to| label_follows(from, to, scheme))
                .collect()
        })
        .collect();
    Ok(TransitionTable {
        scheme,
        start_allowed: vocab.iter().map(|l| label_starts(l, scheme)).collect(),
        end_allowed: vocab.iter().map(|l| label_ends(l, scheme)).collect(),
        labels: vocab.iter().map(|l| l.surface().to_string()).collect(),
        allowed,
    })
}

/// `O` is always index 0 of a [`TransitionTable`].
pub const OUTSIDE_INDEX: usize = 0;
