//! Encoding schemes, their prefix tables, and single-label decoding.
//!
//! Every scheme is described by a [`SpanFormat`]: the prefix character used
//! for each token function. Parsing, writing and transition logic only ever
//! consult the format, never literal prefix strings, so one code path serves
//! all five schemes.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Separator between the prefix character and the entity type.
pub const SEPARATOR: char = '-';

/// The label used for tokens outside of any span.
pub const OUTSIDE: &str = "O";

/// Prefix characters for one encoding scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpanFormat {
    pub begin: char,
    pub inside: char,
    pub end: Option<char>,
    pub single: Option<char>,
}

impl SpanFormat {
    pub const IOB: SpanFormat = SpanFormat {
        begin: 'B',
        inside: 'I',
        end: None,
        single: None,
    };
    pub const BIO: SpanFormat = SpanFormat {
        begin: 'B',
        inside: 'I',
        end: None,
        single: None,
    };
    pub const IOBES: SpanFormat = SpanFormat {
        begin: 'B',
        inside: 'I',
        end: Some('E'),
        single: Some('S'),
    };
    pub const BILOU: SpanFormat = SpanFormat {
        begin: 'B',
        inside: 'I',
        end: Some('L'),
        single: Some('U'),
    };
    pub const BMEWO: SpanFormat = SpanFormat {
        begin: 'B',
        inside: 'M',
        end: Some('E'),
        single: Some('W'),
    };

    /// The prefix character for `function`, or `None` if the format has no
    /// such prefix (End/Single under IOB and BIO, and always for Outside).
    pub fn prefix(&self, function: Function) -> Option<char> {
        match function {
            Function::Begin => Some(self.begin),
            Function::Inside => Some(self.inside),
            Function::End => self.end,
            Function::Single => self.single,
            Function::Outside => None,
        }
    }

    /// Reverse lookup of [`SpanFormat::prefix`].
    pub fn function_of(&self, prefix: char) -> Option<Function> {
        Function::SPAN_FUNCTIONS
            .into_iter()
            .find(|&f| self.prefix(f) == Some(prefix))
    }

    /// Span functions available in this format, in declaration order
    /// (Begin, Inside, End, Single).
    pub fn functions(&self) -> impl Iterator<Item = Function> + '_ {
        Function::SPAN_FUNCTIONS
            .into_iter()
            .filter(move |&f| self.prefix(f).is_some())
    }

    /// True when the format marks span ends and single-token spans explicitly.
    pub fn has_end_markers(&self) -> bool {
        self.end.is_some() && self.single.is_some()
    }
}

/// One of the five supported span encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TagScheme {
    /// IOB1: `I-` is the default span prefix, `B-` only separates two
    /// touching spans of the same type.
    Iob,
    /// IOB2: every span starts with `B-`.
    Bio,
    Iobes,
    Bilou,
    Bmewo,
}

impl TagScheme {
    pub const ALL: [TagScheme; 5] = [
        TagScheme::Iob,
        TagScheme::Bio,
        TagScheme::Iobes,
        TagScheme::Bilou,
        TagScheme::Bmewo,
    ];

    pub fn format(self) -> &'static SpanFormat {
        match self {
            TagScheme::Iob => &SpanFormat::IOB,
            TagScheme::Bio => &SpanFormat::BIO,
            TagScheme::Iobes => &SpanFormat::IOBES,
            TagScheme::Bilou => &SpanFormat::BILOU,
            TagScheme::Bmewo => &SpanFormat::BMEWO,
        }
    }

    /// IOBES, BILOU and BMEWO share one grammar and differ only in prefixes.
    pub fn is_iobes_family(self) -> bool {
        self.format().has_end_markers()
    }

    /// Lowercase name as used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            TagScheme::Iob => "iob",
            TagScheme::Bio => "bio",
            TagScheme::Iobes => "iobes",
            TagScheme::Bilou => "bilou",
            TagScheme::Bmewo => "bmewo",
        }
    }
}

impl fmt::Display for TagScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown tag scheme '{0}' (expected one of iob, bio, iobes, bilou, bmewo)")]
pub struct UnknownScheme(pub String);

impl FromStr for TagScheme {
    type Err = UnknownScheme;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iob" => Ok(TagScheme::Iob),
            "bio" => Ok(TagScheme::Bio),
            "iobes" => Ok(TagScheme::Iobes),
            "bilou" => Ok(TagScheme::Bilou),
            "bmewo" => Ok(TagScheme::Bmewo),
            other => Err(UnknownScheme(other.to_string())),
        }
    }
}

/// The role a token plays with respect to the span it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Function {
    Begin,
    Inside,
    End,
    Single,
    Outside,
}

impl Function {
    pub const SPAN_FUNCTIONS: [Function; 4] = [
        Function::Begin,
        Function::Inside,
        Function::End,
        Function::Single,
    ];
}

/// A decoded single-token annotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TokenLabel {
    function: Function,
    entity_type: String,
    surface: String,
}

impl TokenLabel {
    pub fn outside() -> Self {
        TokenLabel {
            function: Function::Outside,
            entity_type: String::new(),
            surface: OUTSIDE.to_string(),
        }
    }

    /// Builds a span label, rendering its surface form under `scheme`.
    pub fn new(
        function: Function,
        entity_type: impl Into<String>,
        scheme: TagScheme,
    ) -> Result<Self, LabelError> {
        if function == Function::Outside {
            return Ok(Self::outside());
        }
        let entity_type = entity_type.into();
        if entity_type.is_empty() {
            return Err(LabelError::EmptyType);
        }
        let prefix = scheme
            .format()
            .prefix(function)
            .ok_or(LabelError::UnsupportedFunction { function, scheme })?;
        let surface = format!("{prefix}{SEPARATOR}{entity_type}");
        Ok(TokenLabel {
            function,
            entity_type,
            surface,
        })
    }

    pub fn function(&self) -> Function {
        self.function
    }

    /// Entity type; empty for Outside.
    pub fn entity_type(&self) -> &str {
        &self.entity_type
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn is_outside(&self) -> bool {
        self.function == Function::Outside
    }
}

impl fmt::Display for TokenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.surface)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("label is empty")]
    Empty,
    #[error("label '{0}' has no '-' separator and is not 'O'")]
    MissingSeparator(String),
    #[error("label '{0}' has a prefix longer than one character")]
    LongPrefix(String),
    #[error("label '{label}' uses prefix '{prefix}', which is not part of the {scheme} scheme")]
    UnknownPrefix {
        label: String,
        prefix: String,
        scheme: TagScheme,
    },
    #[error("label '{0}' has an empty entity type")]
    EmptyLabelType(String),
    #[error("entity type is empty")]
    EmptyType,
    #[error("the {scheme} scheme cannot encode a {function:?} token")]
    UnsupportedFunction {
        function: Function,
        scheme: TagScheme,
    },
}

/// Decodes a surface label such as `B-ORG` under `scheme`.
///
/// Only the first `-` is structural, so `I-creative-work` has type
/// `creative-work`. Prefixes are matched case-sensitively.
pub fn decode_label(surface: &str, scheme: TagScheme) -> Result<TokenLabel, LabelError> {
    if surface.is_empty() {
        return Err(LabelError::Empty);
    }
    if surface == OUTSIDE {
        return Ok(TokenLabel::outside());
    }
    let (prefix, entity_type) = surface
        .split_once(SEPARATOR)
        .ok_or_else(|| LabelError::MissingSeparator(surface.to_string()))?;
    let mut chars = prefix.chars();
    let prefix_char = match (chars.next(), chars.next()) {
        (Some(c), None) => c,
        (None, _) => {
            return Err(LabelError::UnknownPrefix {
                label: surface.to_string(),
                prefix: String::new(),
                scheme,
            })
        }
        (Some(_), Some(_)) => return Err(LabelError::LongPrefix(surface.to_string())),
    };
    let function =
        scheme
            .format()
            .function_of(prefix_char)
            .ok_or_else(|| LabelError::UnknownPrefix {
                label: surface.to_string(),
                prefix: prefix.to_string(),
                scheme,
            })?;
    if entity_type.is_empty() {
        return Err(LabelError::EmptyLabelType(surface.to_string()));
    }
    Ok(TokenLabel {
        function,
        entity_type: entity_type.to_string(),
        surface: surface.to_string(),
    })
}

/// Renders `label` under `scheme`'s prefix table.
///
/// A label decoded under one IOBES-family scheme can be re-encoded under
/// another; only the prefix character changes.
pub fn encode_label(label: &TokenLabel, scheme: TagScheme) -> Result<String, LabelError> {
    match label.function {
        Function::Outside => Ok(OUTSIDE.to_string()),
        function => {
            TokenLabel::new(function, label.entity_type.as_str(), scheme).map(|l| l.surface)
        }
    }
}

/// Uppercases the prefix part of a label (`b-org` → `B-org`, `o` → `O`),
/// leaving the entity type untouched.
pub fn normalize_prefix(surface: &str) -> String {
    if surface == "o" {
        return OUTSIDE.to_string();
    }
    match surface.split_once(SEPARATOR) {
        Some((prefix, rest)) => format!("{}{SEPARATOR}{rest}", prefix.to_uppercase()),
        None => surface.to_string(),
    }
}
