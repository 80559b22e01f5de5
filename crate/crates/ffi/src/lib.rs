//! C ABI for `spantag`.
//!
//! Every fallible function returns a [`SpantagStatus`]; results are written
//! through out-pointers. Heap results are opaque handles that must be
//! released with their matching `*_free` function. Strings handed out by a
//! handle stay valid until that handle is freed. After a non-OK status,
//! [`spantag_last_error`] describes the failure on the calling thread.
//!
//! Schemes and policies are passed as the `SPANTAG_SCHEME_*` and
//! `SPANTAG_POLICY_*` integer constants.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spantag::{
    build_transition_table, convert, is_legal_transition, parse_spans, ErrorKind, ParseResult,
    ResolutionPolicy, Scorer, TagScheme, TransitionTable, TypeScore,
};

pub const SPANTAG_SCHEME_IOB: u32 = 0;
pub const SPANTAG_SCHEME_BIO: u32 = 1;
pub const SPANTAG_SCHEME_IOBES: u32 = 2;
pub const SPANTAG_SCHEME_BILOU: u32 = 3;
pub const SPANTAG_SCHEME_BMEWO: u32 = 4;

pub const SPANTAG_POLICY_CONLLEVAL: u32 = 0;
pub const SPANTAG_POLICY_BEGIN_END: u32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpantagStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    InvalidLabel = 4,
    /// The label sequence violates the scheme; see the error handle.
    MalformedSequence = 5,
    OutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpantagErrorKind {
    InvalidLabelFormat = 0,
    IllegalStart = 1,
    TypeSwitchInsideSpan = 2,
    MissingEnd = 3,
    DanglingEnd = 4,
    IllegalFollow = 5,
}

impl From<ErrorKind> for SpantagErrorKind {
    fn from(kind: ErrorKind) -> Self {
        match kind {
            ErrorKind::InvalidLabelFormat => SpantagErrorKind::InvalidLabelFormat,
            ErrorKind::IllegalStart => SpantagErrorKind::IllegalStart,
            ErrorKind::TypeSwitchInsideSpan => SpantagErrorKind::TypeSwitchInsideSpan,
            ErrorKind::MissingEnd => SpantagErrorKind::MissingEnd,
            ErrorKind::DanglingEnd => SpantagErrorKind::DanglingEnd,
            ErrorKind::IllegalFollow => SpantagErrorKind::IllegalFollow,
        }
    }
}

/// A span borrowed from a parse result. `end` is exclusive.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SpantagSpan {
    pub entity_type: *const c_char,
    pub start: usize,
    pub end: usize,
}

/// A diagnostic borrowed from a parse result.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SpantagSpanError {
    pub kind: SpantagErrorKind,
    pub token_index: usize,
    pub label: *const c_char,
    pub message: *const c_char,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SpantagCounts {
    pub gold: usize,
    pub predicted: usize,
    pub correct: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl From<&TypeScore> for SpantagCounts {
    fn from(s: &TypeScore) -> Self {
        SpantagCounts {
            gold: s.gold_count,
            predicted: s.predicted_count,
            correct: s.correct_count,
            precision: s.precision,
            recall: s.recall,
            f1: s.f1,
        }
    }
}

/// Opaque: spans and errors from one parse.
pub struct SpantagParseResult {
    spans: Vec<(CString, usize, usize)>,
    errors: Vec<(ErrorKind, usize, CString, CString)>,
}

/// Opaque: an owned list of label strings.
pub struct SpantagLabels {
    labels: Vec<CString>,
}

/// Opaque: a transition table with its vocabulary.
pub struct SpantagTransitionTable {
    table: TransitionTable,
    labels: Vec<CString>,
}

/// Opaque: an accumulating span scorer.
pub struct SpantagScorer {
    scorer: Scorer,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(message).ok());
}

/// Message for the last failure on this thread, or NULL. Valid until the
/// next `spantag_*` call on the same thread.
#[no_mangle]
pub extern "C" fn spantag_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

struct Failure(SpantagStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn fail<T>(status: SpantagStatus, message: impl Into<String>) -> FfiResult<T> {
    Err(Failure(status, message.into()))
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> SpantagStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpantagStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            SpantagStatus::Panic
        }
    }
}

fn scheme(code: u32) -> FfiResult<TagScheme> {
    match code {
        SPANTAG_SCHEME_IOB => Ok(TagScheme::Iob),
        SPANTAG_SCHEME_BIO => Ok(TagScheme::Bio),
        SPANTAG_SCHEME_IOBES => Ok(TagScheme::Iobes),
        SPANTAG_SCHEME_BILOU => Ok(TagScheme::Bilou),
        SPANTAG_SCHEME_BMEWO => Ok(TagScheme::Bmewo),
        other => fail(
            SpantagStatus::InvalidArgument,
            format!("unknown scheme code {other}"),
        ),
    }
}

fn policy(code: u32) -> FfiResult<ResolutionPolicy> {
    match code {
        SPANTAG_POLICY_CONLLEVAL => Ok(ResolutionPolicy::Conlleval),
        SPANTAG_POLICY_BEGIN_END => Ok(ResolutionPolicy::BeginEndOnly),
        other => fail(
            SpantagStatus::InvalidArgument,
            format!("unknown policy code {other}"),
        ),
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> FfiResult<&'a str> {
    if p.is_null() {
        return fail(SpantagStatus::NullPointer, "string argument is NULL");
    }
    CStr::from_ptr(p).to_str().or_else(|_| {
        fail(
            SpantagStatus::InvalidUtf8,
            "string argument is not valid UTF-8",
        )
    })
}

unsafe fn str_array<'a>(p: *const *const c_char, len: usize) -> FfiResult<Vec<&'a str>> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if p.is_null() {
        return fail(SpantagStatus::NullPointer, "array argument is NULL");
    }
    std::slice::from_raw_parts(p, len)
        .iter()
        .map(|&s| str_arg(s))
        .collect()
}

fn out_ptr<T>(p: *mut T) -> FfiResult<*mut T> {
    if p.is_null() {
        fail(SpantagStatus::NullPointer, "output pointer is NULL")
    } else {
        Ok(p)
    }
}

fn c_string(s: &str) -> CString {
    CString::new(s.replace('\0', " ")).expect("NULs removed")
}

fn handle<'a, T>(p: *const T) -> FfiResult<&'a T> {
    // SAFETY: callers pass handles obtained from this library.
    unsafe { p.as_ref() }.map_or_else(|| fail(SpantagStatus::NullPointer, "handle is NULL"), Ok)
}

fn to_handle(result: ParseResult) -> *mut SpantagParseResult {
    Box::into_raw(Box::new(SpantagParseResult {
        spans: result
            .spans
            .iter()
            .map(|s| (c_string(s.entity_type()), s.start(), s.end()))
            .collect(),
        errors: result
            .errors
            .iter()
            .map(|e| {
                (
                    e.kind,
                    e.token_index,
                    c_string(&e.label),
                    c_string(&e.message),
                )
            })
            .collect(),
    }))
}

/// Parses `len` labels under `scheme_code` with `policy_code`. Never reports
/// a malformed sequence as a failure: problems are listed in the result.
///
/// # Safety
/// `labels` must point to `len` NUL-terminated strings (it may be NULL when
/// `len` is 0). `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn spantag_parse(
    labels: *const *const c_char,
    len: usize,
    scheme_code: u32,
    policy_code: u32,
    out: *mut *mut SpantagParseResult,
) -> SpantagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let labels = str_array(labels, len)?;
        let result = parse_spans(&labels, scheme(scheme_code)?, policy(policy_code)?);
        *out = to_handle(result);
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn spantag_parse_result_span_count(result: *const SpantagParseResult) -> usize {
    handle(result).map_or(0, |r| r.spans.len())
}

#[no_mangle]
pub extern "C" fn spantag_parse_result_error_count(result: *const SpantagParseResult) -> usize {
    handle(result).map_or(0, |r| r.errors.len())
}

/// # Safety
/// `result` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spantag_parse_result_span(
    result: *const SpantagParseResult,
    index: usize,
    out: *mut SpantagSpan,
) -> SpantagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let r = handle(result)?;
        let Some((ty, start, end)) = r.spans.get(index) else {
            return fail(
                SpantagStatus::OutOfRange,
                format!("span index {index} out of range"),
            );
        };
        *out = SpantagSpan {
            entity_type: ty.as_ptr(),
            start: *start,
            end: *end,
        };
        Ok(())
    })
}

/// # Safety
/// `result` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spantag_parse_result_error(
    result: *const SpantagParseResult,
    index: usize,
    out: *mut SpantagSpanError,
) -> SpantagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let r = handle(result)?;
        let Some((kind, token_index, label, message)) = r.errors.get(index) else {
            return fail(
                SpantagStatus::OutOfRange,
                format!("error index {index} out of range"),
            );
        };
        *out = SpantagSpanError {
            kind: (*kind).into(),
            token_index: *token_index,
            label: label.as_ptr(),
            message: message.as_ptr(),
        };
        Ok(())
    })
}

/// # Safety
/// `result` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spantag_parse_result_free(result: *mut SpantagParseResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Converts labels between schemes. On a malformed sequence returns
/// `SPANTAG_STATUS_MALFORMED_SEQUENCE` and, if `errors_out` is non-NULL,
/// stores a parse result carrying every error there.
///
/// # Safety
/// `labels` must point to `len` NUL-terminated strings. `out` must be valid;
/// `errors_out` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn spantag_convert(
    labels: *const *const c_char,
    len: usize,
    from_scheme: u32,
    to_scheme: u32,
    out: *mut *mut SpantagLabels,
    errors_out: *mut *mut SpantagParseResult,
) -> SpantagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let labels = str_array(labels, len)?;
        match convert(&labels, scheme(from_scheme)?, scheme(to_scheme)?) {
            Ok(converted) => {
                *out = Box::into_raw(Box::new(SpantagLabels {
                    labels: converted.iter().map(|l| c_string(l)).collect(),
                }));
                Ok(())
            }
            Err(e) => {
                let message = e.to_string();
                if !errors_out.is_null() {
                    *errors_out = to_handle(ParseResult {
                        spans: Vec::new(),
                        errors: e.errors,
                    });
                }
                fail(SpantagStatus::MalformedSequence, message)
            }
        }
    })
}

#[no_mangle]
pub extern "C" fn spantag_labels_count(labels: *const SpantagLabels) -> usize {
    handle(labels).map_or(0, |l| l.labels.len())
}

/// The label at `index`, or NULL when out of range.
#[no_mangle]
pub extern "C" fn spantag_labels_get(labels: *const SpantagLabels, index: usize) -> *const c_char {
    handle(labels)
        .ok()
        .and_then(|l| l.labels.get(index))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// # Safety
/// `labels` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spantag_labels_free(labels: *mut SpantagLabels) {
    if !labels.is_null() {
        drop(Box::from_raw(labels));
    }
}

/// # Safety
/// `from` and `to` must be NUL-terminated strings; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spantag_is_legal_transition(
    from: *const c_char,
    to: *const c_char,
    scheme_code: u32,
    out: *mut bool,
) -> SpantagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let legal = is_legal_transition(str_arg(from)?, str_arg(to)?, scheme(scheme_code)?)
            .or_else(|e| fail(SpantagStatus::InvalidLabel, e.to_string()))?;
        *out = legal;
        Ok(())
    })
}

/// Builds the transition table for `types` (in order) under a scheme.
///
/// # Safety
/// `types` must point to `len` NUL-terminated strings; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spantag_transition_table_new(
    types: *const *const c_char,
    len: usize,
    scheme_code: u32,
    out: *mut *mut SpantagTransitionTable,
) -> SpantagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let types = str_array(types, len)?;
        let table = build_transition_table(&types, scheme(scheme_code)?)
            .or_else(|e| fail(SpantagStatus::InvalidArgument, e.to_string()))?;
        let labels = table.labels().iter().map(|l| c_string(l)).collect();
        *out = Box::into_raw(Box::new(SpantagTransitionTable { table, labels }));
        Ok(())
    })
}

/// Vocabulary size (matrix dimension).
#[no_mangle]
pub extern "C" fn spantag_transition_table_size(table: *const SpantagTransitionTable) -> usize {
    handle(table).map_or(0, |t| t.labels.len())
}

#[no_mangle]
pub extern "C" fn spantag_transition_table_label(
    table: *const SpantagTransitionTable,
    index: usize,
) -> *const c_char {
    handle(table)
        .ok()
        .and_then(|t| t.labels.get(index))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// Copies the mask row-major (`mask[from * size + to]`, 1 = legal).
/// `capacity` must be at least `size * size`.
///
/// # Safety
/// `mask` must point to `capacity` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn spantag_transition_table_copy_mask(
    table: *const SpantagTransitionTable,
    mask: *mut u8,
    capacity: usize,
) -> SpantagStatus {
    guard(|| {
        let mask = out_ptr(mask)?;
        let t = handle(table)?;
        let n = t.labels.len();
        if capacity < n * n {
            return fail(
                SpantagStatus::OutOfRange,
                format!("mask needs {} bytes", n * n),
            );
        }
        let dst = std::slice::from_raw_parts_mut(mask, n * n);
        for (i, row) in t.table.allowed().iter().enumerate() {
            for (j, &ok) in row.iter().enumerate() {
                dst[i * n + j] = ok as u8;
            }
        }
        Ok(())
    })
}

/// Copies the sequence-start (`which` = 0) or sequence-end (`which` = 1)
/// vector into `out`, which must hold `size` bytes.
///
/// # Safety
/// `out` must point to `capacity` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn spantag_transition_table_copy_boundary(
    table: *const SpantagTransitionTable,
    which: u32,
    out: *mut u8,
    capacity: usize,
) -> SpantagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let t = handle(table)?;
        let v = match which {
            0 => t.table.start_allowed(),
            1 => t.table.end_allowed(),
            other => {
                return fail(
                    SpantagStatus::InvalidArgument,
                    format!("unknown boundary {other}"),
                )
            }
        };
        if capacity < v.len() {
            return fail(
                SpantagStatus::OutOfRange,
                format!("vector needs {} bytes", v.len()),
            );
        }
        for (i, &ok) in v.iter().enumerate() {
            *out.add(i) = ok as u8;
        }
        Ok(())
    })
}

/// # Safety
/// `table` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spantag_transition_table_free(table: *mut SpantagTransitionTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

#[no_mangle]
pub extern "C" fn spantag_scorer_new() -> *mut SpantagScorer {
    Box::into_raw(Box::new(SpantagScorer {
        scorer: Scorer::new(),
    }))
}

/// Parses one gold/predicted label pair robustly and adds its spans.
///
/// # Safety
/// `gold` and `predicted` must each point to `len` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn spantag_scorer_add_labels(
    scorer: *mut SpantagScorer,
    gold: *const *const c_char,
    predicted: *const *const c_char,
    len: usize,
    scheme_code: u32,
    policy_code: u32,
) -> SpantagStatus {
    guard(|| {
        let Some(s) = scorer.as_mut() else {
            return fail(SpantagStatus::NullPointer, "handle is NULL");
        };
        let (scheme, policy) = (scheme(scheme_code)?, policy(policy_code)?);
        let gold = parse_spans(&str_array(gold, len)?, scheme, policy);
        let predicted = parse_spans(&str_array(predicted, len)?, scheme, policy);
        s.scorer.add_sequence(&gold.spans, &predicted.spans);
        Ok(())
    })
}

/// Micro-averaged counts and rates so far.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spantag_scorer_micro(
    scorer: *const SpantagScorer,
    out: *mut SpantagCounts,
) -> SpantagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = (&handle(scorer)?.scorer.report().micro).into();
        Ok(())
    })
}

/// Counts for one entity type; all zeros if the type was never seen.
///
/// # Safety
/// `entity_type` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spantag_scorer_type(
    scorer: *const SpantagScorer,
    entity_type: *const c_char,
    out: *mut SpantagCounts,
) -> SpantagStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let ty = str_arg(entity_type)?;
        let report = handle(scorer)?.scorer.report();
        *out = report
            .per_type
            .get(ty)
            .map(SpantagCounts::from)
            .unwrap_or_default();
        Ok(())
    })
}

/// # Safety
/// `scorer` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spantag_scorer_free(scorer: *mut SpantagScorer) {
    if !scorer.is_null() {
        drop(Box::from_raw(scorer));
    }
}
