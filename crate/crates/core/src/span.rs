use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A typed, contiguous run of tokens. `end` is exclusive, so
/// `&tokens[span.start..span.end]` recovers the covered tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    // Field order gives the derived Ord "by start, then end".
    start: usize,
    end: usize,
    entity_type: String,
    tokens: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpanBuildError {
    #[error("span must cover at least one token (start {start}, end {end})")]
    Empty { start: usize, end: usize },
    #[error("span entity type is empty")]
    EmptyType,
}

impl Span {
    pub fn new(
        entity_type: impl Into<String>,
        start: usize,
        end: usize,
    ) -> Result<Self, SpanBuildError> {
        let entity_type = entity_type.into();
        if start >= end {
            return Err(SpanBuildError::Empty { start, end });
        }
        if entity_type.is_empty() {
            return Err(SpanBuildError::EmptyType);
        }
        Ok(Span {
            start,
            end,
            entity_type,
            tokens: (start..end).collect(),
        })
    }

    pub fn entity_type(&self) -> &str {
        &self.entity_type
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    /// Indices `start..end`, materialized.
    pub fn tokens(&self) -> &[usize] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@({},{})", self.entity_type, self.start, self.end)
    }
}

/// Diagnostic categories. Declaration order is the tie-break when two
/// errors share a token index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ErrorKind {
    InvalidLabelFormat,
    IllegalStart,
    TypeSwitchInsideSpan,
    MissingEnd,
    DanglingEnd,
    IllegalFollow,
}

impl ErrorKind {
    pub const ALL: [ErrorKind; 6] = [
        ErrorKind::InvalidLabelFormat,
        ErrorKind::IllegalStart,
        ErrorKind::TypeSwitchInsideSpan,
        ErrorKind::MissingEnd,
        ErrorKind::DanglingEnd,
        ErrorKind::IllegalFollow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::InvalidLabelFormat => "InvalidLabelFormat",
            ErrorKind::IllegalStart => "IllegalStart",
            ErrorKind::TypeSwitchInsideSpan => "TypeSwitchInsideSpan",
            ErrorKind::MissingEnd => "MissingEnd",
            ErrorKind::DanglingEnd => "DanglingEnd",
            ErrorKind::IllegalFollow => "IllegalFollow",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A structured problem found while parsing a label sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpanError {
    pub kind: ErrorKind,
    pub token_index: usize,
    /// Surface label at `token_index`.
    pub label: String,
    pub message: String,
}

impl fmt::Display for SpanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at token {}: {} (label '{}')",
            self.kind, self.token_index, self.message, self.label
        )
    }
}

/// How malformed label sequences are resolved into spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ResolutionPolicy {
    /// Any change of entity type closes the open span and starts a new one,
    /// even when the new span starts illegally.
    #[default]
    Conlleval,
    /// Spans are opened only by Begin and closed only by an End of the same
    /// type; intervening labels do not affect span structure. Applies to the
    /// IOBES family; IOB and BIO fall back to [`ResolutionPolicy::Conlleval`].
    BeginEndOnly,
}

impl ResolutionPolicy {
    pub fn name(self) -> &'static str {
        match self {
            ResolutionPolicy::Conlleval => "conlleval",
            ResolutionPolicy::BeginEndOnly => "begin-end",
        }
    }
}

impl fmt::Display for ResolutionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown resolution policy '{0}' (expected conlleval or begin-end)")]
pub struct UnknownPolicy(pub String);

impl FromStr for ResolutionPolicy {
    type Err = UnknownPolicy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "conlleval" => Ok(ResolutionPolicy::Conlleval),
            "begin-end" => Ok(ResolutionPolicy::BeginEndOnly),
            other => Err(UnknownPolicy(other.to_string())),
        }
    }
}
