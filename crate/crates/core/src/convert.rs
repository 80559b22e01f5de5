//! Scheme conversion, always mediated by spans.
//!
//! Rewriting prefixes token by token is how `I-MISC B-MISC I-MISC` (IOB)
//! turns into three single-token entities; going through the span list makes
//! that class of bug impossible.

use crate::label::TagScheme;
use crate::parse::{parse_spans_strict, write_tags, StrictError};

/// Converts `labels` from one scheme to another. Malformed input is refused
/// with the complete error list; nothing is partially converted.
pub fn convert<S: AsRef<str>>(
    labels: &[S],
    from: TagScheme,
    to: TagScheme,
) -> Result<Vec<String>, StrictError> {
    let spans = parse_spans_strict(labels, from)?;
    Ok(write_tags(&spans, labels.len(), to)
        .expect("spans from a strict parse are sorted, disjoint and in range"))
}
