//! Parsing, validation, conversion and scoring of token-level span
//! annotations in the IOB, BIO, IOBES, BILOU and BMEWO encodings.
//!
//! ```
//! use spantag::{parse_spans, ResolutionPolicy, TagScheme};
//!
//! let labels = ["O", "B-ORG", "I-MISC", "E-ORG"];
//! let conll = parse_spans(&labels, TagScheme::Iobes, ResolutionPolicy::Conlleval);
//! assert_eq!(conll.spans.len(), 3);
//! let begin_end = parse_spans(&labels, TagScheme::Iobes, ResolutionPolicy::BeginEndOnly);
//! assert_eq!(begin_end.spans.len(), 1);
//! ```

pub mod cli;
pub mod conll;
pub mod convert;
pub mod label;
pub mod metrics;
pub mod parse;
pub mod span;
pub mod transitions;

pub use convert::convert;
pub use label::{
    decode_label, encode_label, Function, LabelError, SpanFormat, TagScheme, TokenLabel,
};
pub use metrics::{score, score_labels, ScoreError, ScoreReport, Scorer, TypeScore};
pub use parse::{
    parse_spans, parse_spans_strict, write_tags, ParseResult, StrictError, WriteError,
};
pub use span::{ErrorKind, ResolutionPolicy, Span, SpanError};
pub use transitions::{
    build_transition_table, is_legal_transition, sequence_end_legal, sequence_start_legal,
    TransitionError, TransitionTable,
};
