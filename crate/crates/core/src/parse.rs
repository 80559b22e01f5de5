//! Turning label sequences into spans, and spans back into labels.
//!
//! Parsing is robust: it always returns spans together with every problem
//! it found. [`parse_spans_strict`] layers a fail-on-any-error contract on
//! top for gold data.
//!
//! The conlleval policy is a two-step state machine over `(prev, cur)`
//! pairs, where `prev` is Outside before the first token:
//!
//! * close the open span when `cur` is Outside, changes type, is a Begin or
//!   Single (BIO and the IOBES family), follows an End or Single (IOBES
//!   family), or is an IOB Begin repeating the previous type;
//! * open a span whenever `cur` is a span label and nothing is open.

use thiserror::Error;

use crate::label::{decode_label, Function, TagScheme, TokenLabel};
use crate::span::{ErrorKind, ResolutionPolicy, Span, SpanError};
use crate::transitions::label_follows;

/// Spans ordered by `(start, end)` and errors ordered by token index, ties
/// broken by [`ErrorKind`] declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParseResult {
    pub spans: Vec<Span>,
    pub errors: Vec<SpanError>,
}

impl ParseResult {
    pub fn is_clean(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Strict parsing failed; carries every error found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} span error(s), first: {}", errors.len(), errors[0])]
pub struct StrictError {
    pub errors: Vec<SpanError>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WriteError {
    #[error("span {second} overlaps span {first}")]
    Overlap { first: Box<Span>, second: Box<Span> },
    #[error("span {span} does not fit in a sequence of {length} tokens")]
    OutOfRange { span: Box<Span>, length: usize },
}

struct Decoded {
    labels: Vec<TokenLabel>,
    surfaces: Vec<String>,
    errors: Vec<SpanError>,
}

fn decode_all<S: AsRef<str>>(labels: &[S], scheme: TagScheme) -> Decoded {
    let mut errors = Vec::new();
    let decoded = labels
        .iter()
        .enumerate()
        .map(|(i, s)| {
            decode_label(s.as_ref(), scheme).unwrap_or_else(|e| {
                errors.push(SpanError {
                    kind: ErrorKind::InvalidLabelFormat,
                    token_index: i,
                    label: s.as_ref().to_string(),
                    message: e.to_string(),
                });
                TokenLabel::outside()
            })
        })
        .collect();
    Decoded {
        labels: decoded,
        surfaces: labels.iter().map(|s| s.as_ref().to_string()).collect(),
        errors,
    }
}

struct Reporter<'a> {
    scheme: TagScheme,
    surfaces: &'a [String],
    errors: Vec<SpanError>,
}

impl Reporter<'_> {
    fn push(&mut self, kind: ErrorKind, index: usize, message: String) {
        self.errors.push(SpanError {
            kind,
            token_index: index,
            label: self.surfaces[index].clone(),
            message,
        });
    }

    fn prefix(&self, function: Function) -> char {
        self.scheme.format().prefix(function).unwrap_or('?')
    }

    fn missing_end(&self, ty: &str, start: usize) -> String {
        format!(
            "span of type '{ty}' starting at token {start} is not closed by {}- or {}-",
            self.prefix(Function::End),
            self.prefix(Function::Single)
        )
    }
}

fn is_continuation(function: Function, scheme: TagScheme) -> bool {
    match scheme {
        TagScheme::Iob => false,
        TagScheme::Bio => function == Function::Inside,
        _ => matches!(function, Function::Inside | Function::End),
    }
}

fn ends_span(function: Function) -> bool {
    matches!(function, Function::End | Function::Single)
}

/// Parses `labels` under `scheme`, resolving malformed sequences with
/// `policy`. Never fails; problems are listed in [`ParseResult::errors`].
pub fn parse_spans<S: AsRef<str>>(
    labels: &[S],
    scheme: TagScheme,
    policy: ResolutionPolicy,
) -> ParseResult {
    let decoded = decode_all(labels, scheme);
    let (conll_spans, mut errors) = resolve_conlleval(&decoded, scheme);
    let spans = match policy {
        ResolutionPolicy::BeginEndOnly if scheme.is_iobes_family() => {
            let (spans, extra) = resolve_begin_end(&decoded, scheme);
            errors.extend(extra);
            spans
        }
        _ => conll_spans,
    };
    // Stable: equal (index, kind) pairs keep emission order.
    errors.sort_by_key(|e| (e.token_index, e.kind));
    ParseResult { spans, errors }
}

fn resolve_conlleval(decoded: &Decoded, scheme: TagScheme) -> (Vec<Span>, Vec<SpanError>) {
    let family = scheme.is_iobes_family();
    let mut report = Reporter {
        scheme,
        surfaces: &decoded.surfaces,
        errors: decoded.errors.clone(),
    };
    let mut spans = Vec::new();
    let mut open: Option<(usize, &str)> = None;
    let outside = TokenLabel::outside();
    let mut prev = &outside;

    for (i, cur) in decoded.labels.iter().enumerate() {
        let before = report.errors.len();
        let mut switched = false;

        if let Some((start, ty)) = open {
            let close = cur.is_outside()
                || cur.entity_type() != ty
                || (scheme != TagScheme::Iob
                    && matches!(cur.function(), Function::Begin | Function::Single))
                || (family && ends_span(prev.function()))
                || (scheme == TagScheme::Iob
                    && cur.function() == Function::Begin
                    && cur.entity_type() == prev.entity_type());
            if close {
                spans.push(span(ty, start, i));
                if family && !ends_span(prev.function()) {
                    let msg = report.missing_end(ty, start);
                    report.push(ErrorKind::MissingEnd, i, msg);
                }
                if matches!(prev.function(), Function::Begin | Function::Inside)
                    && is_continuation(cur.function(), scheme)
                    && cur.entity_type() != prev.entity_type()
                {
                    switched = true;
                    report.push(
                        ErrorKind::TypeSwitchInsideSpan,
                        i,
                        format!(
                            "entity type changes from '{}' to '{}' inside a span",
                            prev.entity_type(),
                            cur.entity_type()
                        ),
                    );
                }
                open = None;
            }
        }

        if open.is_none() && !cur.is_outside() {
            open = Some((i, cur.entity_type()));
            if is_continuation(cur.function(), scheme) && !switched {
                let msg = format!(
                    "span of type '{}' starts with {}- instead of {}-",
                    cur.entity_type(),
                    report.prefix(cur.function()),
                    report.prefix(Function::Begin)
                );
                report.push(ErrorKind::IllegalStart, i, msg);
            }
        }

        if report.errors.len() == before && !label_follows(prev, cur, scheme) {
            let msg = if i == 0 {
                format!("'{}' cannot start a sequence under {scheme}", cur.surface())
            } else {
                format!(
                    "'{}' cannot follow '{}' under {scheme}",
                    cur.surface(),
                    prev.surface()
                )
            };
            report.push(ErrorKind::IllegalFollow, i, msg);
        }
        prev = cur;
    }

    if let Some((start, ty)) = open {
        let last = decoded.labels.len() - 1;
        spans.push(span(ty, start, last + 1));
        if family && !ends_span(prev.function()) {
            let msg = report.missing_end(ty, start);
            report.push(ErrorKind::MissingEnd, last, msg);
        }
    }
    (spans, report.errors)
}

fn resolve_begin_end(decoded: &Decoded, scheme: TagScheme) -> (Vec<Span>, Vec<SpanError>) {
    let mut report = Reporter {
        scheme,
        surfaces: &decoded.surfaces,
        errors: Vec::new(),
    };
    let mut spans = Vec::new();
    let mut open: Option<(usize, &str)> = None;

    let abandon = |report: &mut Reporter, start: usize, ty: &str| {
        let msg = format!(
            "{}-{ty} opened here is never closed by {}-{ty}; no span produced",
            report.prefix(Function::Begin),
            report.prefix(Function::End)
        );
        report.push(ErrorKind::MissingEnd, start, msg);
    };

    for (i, cur) in decoded.labels.iter().enumerate() {
        match cur.function() {
            Function::Begin => {
                if let Some((start, ty)) = open {
                    abandon(&mut report, start, ty);
                }
                open = Some((i, cur.entity_type()));
            }
            Function::Single => {
                if let Some((start, ty)) = open.take() {
                    abandon(&mut report, start, ty);
                }
                spans.push(span(cur.entity_type(), i, i + 1));
            }
            Function::End => match open {
                Some((start, ty)) if ty == cur.entity_type() => {
                    spans.push(span(ty, start, i + 1));
                    open = None;
                }
                _ => {
                    let msg = format!(
                        "{} has no open {}-{} span to close",
                        cur.surface(),
                        report.prefix(Function::Begin),
                        cur.entity_type()
                    );
                    report.push(ErrorKind::DanglingEnd, i, msg);
                }
            },
            Function::Inside | Function::Outside => {}
        }
    }
    if let Some((start, ty)) = open {
        abandon(&mut report, start, ty);
    }
    (spans, report.errors)
}

fn span(ty: &str, start: usize, end: usize) -> Span {
    Span::new(ty, start, end).expect("parser only builds non-empty typed spans")
}

/// Parses with the conlleval policy and fails unless the sequence is
/// completely well-formed.
pub fn parse_spans_strict<S: AsRef<str>>(
    labels: &[S],
    scheme: TagScheme,
) -> Result<Vec<Span>, StrictError> {
    let result = parse_spans(labels, scheme, ResolutionPolicy::Conlleval);
    if result.errors.is_empty() {
        Ok(result.spans)
    } else {
        Err(StrictError {
            errors: result.errors,
        })
    }
}

/// Renders `spans` as `length` labels under `scheme`.
///
/// Under IOB, a span starts with `B-` only when a span of the same type ends
/// immediately before it; otherwise every token is `I-`.
pub fn write_tags(
    spans: &[Span],
    length: usize,
    scheme: TagScheme,
) -> Result<Vec<String>, WriteError> {
    let mut sorted: Vec<&Span> = spans.iter().collect();
    sorted.sort();
    for pair in sorted.windows(2) {
        if pair[1].start() < pair[0].end() {
            return Err(WriteError::Overlap {
                first: Box::new(pair[0].clone()),
                second: Box::new(pair[1].clone()),
            });
        }
    }
    if let Some(s) = sorted.iter().find(|s| s.end() > length) {
        return Err(WriteError::OutOfRange {
            span: Box::new((*s).clone()),
            length,
        });
    }

    let format = scheme.format();
    let label = |prefix: char, ty: &str| format!("{prefix}-{ty}");
    let mut out = vec![crate::label::OUTSIDE.to_string(); length];
    let mut previous: Option<&Span> = None;
    for s in sorted {
        let ty = s.entity_type();
        let range = s.start()..s.end();
        match (format.end, format.single) {
            (Some(end), Some(single)) => {
                if s.len() == 1 {
                    out[s.start()] = label(single, ty);
                } else {
                    for i in range {
                        out[i] = label(format.inside, ty);
                    }
                    out[s.start()] = label(format.begin, ty);
                    out[s.end() - 1] = label(end, ty);
                }
            }
            _ => {
                for i in range {
                    out[i] = label(format.inside, ty);
                }
                let touching =
                    previous.is_some_and(|p| p.end() == s.start() && p.entity_type() == ty);
                if scheme == TagScheme::Bio || touching {
                    out[s.start()] = label(format.begin, ty);
                }
            }
        }
        previous = Some(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ErrorKind::*;
    use ResolutionPolicy::*;
    use TagScheme::*;

    fn sp(ty: &str, start: usize, end: usize) -> Span {
        Span::new(ty, start, end).unwrap()
    }

    fn kinds(r: &ParseResult) -> Vec<(usize, ErrorKind)> {
        r.errors.iter().map(|e| (e.token_index, e.kind)).collect()
    }

    #[test]
    fn conlleval_splits_on_type_change() {
        let r = parse_spans(&["O", "B-ORG", "I-MISC", "E-ORG"], Iobes, Conlleval);
        assert_eq!(
            r.spans,
            [sp("ORG", 1, 2), sp("MISC", 2, 3), sp("ORG", 3, 4)]
        );
        let idx: Vec<_> = r.errors.iter().map(|e| e.token_index).collect();
        assert!(idx.iter().all(|&i| i == 2 || i == 3));
        assert!(idx.contains(&2) && idx.contains(&3));
        assert_eq!(
            kinds(&r),
            [
                (2, TypeSwitchInsideSpan),
                (2, MissingEnd),
                (3, TypeSwitchInsideSpan),
                (3, MissingEnd)
            ]
        );
    }

    #[test]
    fn begin_end_only_ignores_inner_labels() {
        let r = parse_spans(&["O", "B-ORG", "I-MISC", "E-ORG"], Iobes, BeginEndOnly);
        assert_eq!(r.spans, [sp("ORG", 1, 4)]);
        assert!(!r.errors.is_empty());
    }

    #[test]
    fn iob_examples() {
        let r = parse_spans(&["I-ORG", "I-ORG"], Iob, Conlleval);
        assert_eq!(
            r,
            ParseResult {
                spans: vec![sp("ORG", 0, 2)],
                errors: vec![]
            }
        );

        let r = parse_spans(&["I-MISC", "B-MISC", "I-MISC"], Iob, Conlleval);
        assert_eq!(r.spans, [sp("MISC", 0, 1), sp("MISC", 1, 3)]);
        assert!(r.errors.is_empty());
    }

    #[test]
    fn iob_begin_misuse_is_illegal_follow() {
        let r = parse_spans(&["B-LOC", "I-LOC"], Iob, Conlleval);
        assert_eq!(r.spans, [sp("LOC", 0, 2)]);
        assert_eq!(kinds(&r), [(0, IllegalFollow)]);

        let r = parse_spans(&["I-PER", "B-LOC"], Iob, Conlleval);
        assert_eq!(r.spans, [sp("PER", 0, 1), sp("LOC", 1, 2)]);
        assert_eq!(kinds(&r), [(1, IllegalFollow)]);
    }

    #[test]
    fn trivial_inputs() {
        let empty: [&str; 0] = [];
        assert_eq!(
            parse_spans(&empty, Iobes, Conlleval),
            ParseResult::default()
        );
        assert_eq!(
            parse_spans(&["O", "O", "O"], Bio, Conlleval),
            ParseResult::default()
        );
    }

    #[test]
    fn bio_type_switch() {
        let r = parse_spans(&["B-PER", "I-LOC"], Bio, Conlleval);
        assert_eq!(r.spans, [sp("PER", 0, 1), sp("LOC", 1, 2)]);
        assert_eq!(kinds(&r), [(1, TypeSwitchInsideSpan)]);
    }

    #[test]
    fn bio_inside_after_outside() {
        let r = parse_spans(&["O", "I-PER", "I-PER"], Bio, Conlleval);
        assert_eq!(r.spans, [sp("PER", 1, 3)]);
        assert_eq!(kinds(&r), [(1, IllegalStart)]);
    }

    #[test]
    fn iobes_inside_start() {
        let r = parse_spans(&["I-ORG", "E-ORG"], Iobes, Conlleval);
        assert_eq!(r.spans, [sp("ORG", 0, 2)]);
        assert_eq!(kinds(&r), [(0, IllegalStart)]);
    }

    #[test]
    fn end_of_different_type_becomes_single_span() {
        let r = parse_spans(&["B-PER", "I-PER", "E-LOC"], Iobes, Conlleval);
        assert_eq!(r.spans, [sp("PER", 0, 2), sp("LOC", 2, 3)]);
        assert_eq!(kinds(&r), [(2, TypeSwitchInsideSpan), (2, MissingEnd)]);
    }

    #[test]
    fn missing_end_at_sequence_end() {
        let r = parse_spans(&["O", "B-PER", "I-PER"], Bilou, Conlleval);
        assert_eq!(r.spans, [sp("PER", 1, 3)]);
        assert_eq!(kinds(&r), [(2, MissingEnd)]);
        assert_eq!(r.errors[0].label, "I-PER");
        assert!(r.errors[0].message.contains("L- or U-"));
    }

    #[test]
    fn invalid_labels_act_as_outside() {
        let r = parse_spans(&["B-PER", "E-PER", "I-PER"], Bio, Conlleval);
        assert_eq!(r.spans, [sp("PER", 0, 1), sp("PER", 2, 3)]);
        assert_eq!(kinds(&r), [(1, InvalidLabelFormat), (2, IllegalStart)]);
        assert_eq!(r.errors[0].label, "E-PER");
    }

    #[test]
    fn dangling_end_under_begin_end() {
        let r = parse_spans(&["O", "E-PER", "S-LOC"], Iobes, BeginEndOnly);
        assert_eq!(r.spans, [sp("LOC", 2, 3)]);
        assert_eq!(kinds(&r), [(1, IllegalStart), (1, DanglingEnd)]);
    }

    #[test]
    fn begin_end_abandons_unclosed_begin() {
        let r = parse_spans(&["B-PER", "O", "B-LOC", "E-LOC"], Iobes, BeginEndOnly);
        assert_eq!(r.spans, [sp("LOC", 2, 4)]);
        assert_eq!(kinds(&r), [(0, MissingEnd), (1, MissingEnd)]);

        let r = parse_spans(&["B-PER", "S-LOC", "B-X"], Iobes, BeginEndOnly);
        assert_eq!(r.spans, [sp("LOC", 1, 2)]);
        assert_eq!(
            kinds(&r),
            [
                (0, MissingEnd),
                (1, MissingEnd),
                (2, MissingEnd),
                (2, MissingEnd)
            ]
        );
    }

    #[test]
    fn begin_end_falls_back_for_bio() {
        let labels = ["B-PER", "I-LOC"];
        assert_eq!(
            parse_spans(&labels, Bio, BeginEndOnly),
            parse_spans(&labels, Bio, Conlleval)
        );
    }

    #[test]
    fn strict_examples() {
        assert_eq!(
            parse_spans_strict(&["B-ORG", "E-ORG"], Iobes),
            Ok(vec![sp("ORG", 0, 2)])
        );
        let err = parse_spans_strict(&["I-PER"], Bio).unwrap_err();
        assert_eq!(err.errors.len(), 1);
        assert_eq!(
            (err.errors[0].kind, err.errors[0].token_index),
            (IllegalStart, 0)
        );
        assert_eq!(parse_spans_strict(&["O"], Iob), Ok(vec![]));
    }

    #[test]
    fn write_examples() {
        assert_eq!(
            write_tags(&[sp("ORG", 0, 2)], 2, Iobes).unwrap(),
            ["B-ORG", "E-ORG"]
        );
        assert_eq!(
            write_tags(&[sp("MISC", 0, 1), sp("MISC", 1, 3)], 3, Iob).unwrap(),
            ["I-MISC", "B-MISC", "I-MISC"]
        );
        assert_eq!(write_tags(&[], 3, Bio).unwrap(), ["O", "O", "O"]);
        assert_eq!(
            write_tags(&[sp("X", 1, 2)], 3, Bmewo).unwrap(),
            ["O", "W-X", "O"]
        );
        assert_eq!(
            write_tags(&[sp("X", 0, 3)], 3, Bmewo).unwrap(),
            ["B-X", "M-X", "E-X"]
        );
        assert_eq!(write_tags(&[sp("X", 0, 1)], 1, Bio).unwrap(), ["B-X"]);
    }

    #[test]
    fn write_rejects_bad_spans() {
        assert!(matches!(
            write_tags(&[sp("A", 0, 2), sp("B", 1, 3)], 3, Bio),
            Err(WriteError::Overlap { .. })
        ));
        assert!(matches!(
            write_tags(&[sp("A", 2, 4)], 3, Bio),
            Err(WriteError::OutOfRange { length: 3, .. })
        ));
    }

    #[test]
    fn errors_are_deterministic() {
        let labels = ["I-A", "B-B", "E-A", "X", "S-B", "I-B"];
        let a = parse_spans(&labels, Iobes, Conlleval);
        let b = parse_spans(&labels, Iobes, Conlleval);
        assert_eq!(a, b);
        assert!(a
            .errors
            .windows(2)
            .all(|w| (w[0].token_index, w[0].kind) <= (w[1].token_index, w[1].kind)));
    }
}
