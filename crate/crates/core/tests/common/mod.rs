//! Test-only helpers: an independent reference parser and exhaustive
//! sequence enumeration. Nothing here calls into the parser under test.

#![allow(dead_code)]

use spantag::{ErrorKind, TagScheme};

/// Role of a token as seen by the reference: 'B', 'I', 'E', 'S', or 'O'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefTag {
    pub role: char,
    pub ty: String,
}

fn prefixes(scheme: TagScheme) -> &'static str {
    // Position in the string is the role: B, I, E, S.
    match scheme {
        TagScheme::Iob | TagScheme::Bio => "BI",
        TagScheme::Iobes => "BIES",
        TagScheme::Bilou => "BILU",
        TagScheme::Bmewo => "BMEW",
    }
}

fn family(scheme: TagScheme) -> bool {
    prefixes(scheme).len() == 4
}

/// Decodes a label; `None` for anything malformed.
pub fn ref_decode(label: &str, scheme: TagScheme) -> Option<RefTag> {
    if label == "O" {
        return Some(RefTag {
            role: 'O',
            ty: String::new(),
        });
    }
    let bytes = label.as_bytes();
    if bytes.len() < 3 || bytes[1] != b'-' {
        return None;
    }
    let pos = prefixes(scheme).find(bytes[0] as char)?;
    Some(RefTag {
        role: "BIES".as_bytes()[pos] as char,
        ty: label[2..].to_string(),
    })
}

fn outside() -> RefTag {
    RefTag {
        role: 'O',
        ty: String::new(),
    }
}

/// conlleval-style chunk end test between two adjacent tags.
fn end_of_chunk(prev: &RefTag, cur: &RefTag, scheme: TagScheme) -> bool {
    if prev.role == 'O' {
        return false;
    }
    if cur.role == 'O' || cur.ty != prev.ty {
        return true;
    }
    match scheme {
        TagScheme::Iob => cur.role == 'B',
        TagScheme::Bio => cur.role == 'B',
        _ => matches!(cur.role, 'B' | 'S') || matches!(prev.role, 'E' | 'S'),
    }
}

fn start_of_chunk(prev: &RefTag, cur: &RefTag, scheme: TagScheme) -> bool {
    cur.role != 'O' && (prev.role == 'O' || end_of_chunk(prev, cur, scheme))
}

pub type RefSpans = Vec<(String, usize, usize)>;
pub type RefErrors = Vec<(usize, ErrorKind)>;

/// Spans as `(type, start, end)` plus errors as `(index, kind)`, sorted.
pub fn reference_parse(labels: &[&str], scheme: TagScheme) -> (RefSpans, RefErrors) {
    let mut errors = Vec::new();
    let tags: Vec<RefTag> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            ref_decode(l, scheme).unwrap_or_else(|| {
                errors.push((i, ErrorKind::InvalidLabelFormat));
                outside()
            })
        })
        .collect();

    let mut spans = Vec::new();
    for i in 0..tags.len() {
        let prev = if i == 0 {
            outside()
        } else {
            tags[i - 1].clone()
        };
        if !start_of_chunk(&prev, &tags[i], scheme) {
            continue;
        }
        let mut end = i + 1;
        while end < tags.len() && !end_of_chunk(&tags[end - 1], &tags[end], scheme) {
            end += 1;
        }
        spans.push((tags[i].ty.clone(), i, end));
    }

    for i in 0..tags.len() {
        let p = if i == 0 {
            outside()
        } else {
            tags[i - 1].clone()
        };
        let c = &tags[i];
        let differ = p.ty != c.ty;
        let in_span = matches!(p.role, 'B' | 'I');
        match scheme {
            _ if family(scheme) => {
                if in_span && matches!(c.role, 'I' | 'E') && differ {
                    errors.push((i, ErrorKind::TypeSwitchInsideSpan));
                    errors.push((i, ErrorKind::MissingEnd));
                } else if in_span && matches!(c.role, 'O' | 'B' | 'S') {
                    errors.push((i, ErrorKind::MissingEnd));
                } else if !in_span && matches!(c.role, 'I' | 'E') {
                    errors.push((i, ErrorKind::IllegalStart));
                }
            }
            TagScheme::Bio => {
                if in_span && c.role == 'I' && differ {
                    errors.push((i, ErrorKind::TypeSwitchInsideSpan));
                } else if p.role == 'O' && c.role == 'I' {
                    errors.push((i, ErrorKind::IllegalStart));
                }
            }
            _ => {
                if c.role == 'B' && (p.role == 'O' || differ) {
                    errors.push((i, ErrorKind::IllegalFollow));
                }
            }
        }
    }
    if family(scheme) {
        if let Some(last) = tags.last() {
            if matches!(last.role, 'B' | 'I') {
                errors.push((tags.len() - 1, ErrorKind::MissingEnd));
            }
        }
    }
    errors.sort();
    (spans, errors)
}

/// Valid labels for `types` under `scheme`, built from literal prefixes.
pub fn valid_vocabulary(scheme: TagScheme, types: &[&str]) -> Vec<String> {
    let mut v = vec!["O".to_string()];
    for ty in types {
        for p in prefixes(scheme).chars() {
            v.push(format!("{p}-{ty}"));
        }
    }
    v
}

/// Valid labels plus two malformed ones (foreign prefix, empty type).
pub fn fuzz_vocabulary(scheme: TagScheme, types: &[&str]) -> Vec<String> {
    let mut v = valid_vocabulary(scheme, types);
    v.push("X-A".to_string());
    v.push("B-".to_string());
    v
}

/// Every sequence over `vocab` with length `0..=max_len`.
pub fn all_sequences(vocab: &[String], max_len: usize) -> Vec<Vec<&str>> {
    let mut out: Vec<Vec<&str>> = vec![vec![]];
    let mut frontier: Vec<Vec<&str>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            for label in vocab {
                let mut s = seq.clone();
                s.push(label.as_str());
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}
