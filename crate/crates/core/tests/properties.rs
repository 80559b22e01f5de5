mod common;

use proptest::prelude::*;
use spantag::{parse_spans, parse_spans_strict, write_tags, ResolutionPolicy, TagScheme};

fn scheme() -> impl Strategy<Value = TagScheme> {
    prop::sample::select(TagScheme::ALL.to_vec())
}

fn labels_for(scheme: TagScheme) -> impl Strategy<Value = Vec<String>> {
    let vocab = common::fuzz_vocabulary(scheme, &["A", "B"]);
    prop::collection::vec(prop::sample::select(vocab), 0..12)
}

fn scheme_and_labels() -> impl Strategy<Value = (TagScheme, Vec<String>)> {
    scheme().prop_flat_map(|s| (Just(s), labels_for(s)))
}

proptest! {
    #[test]
    fn spans_are_sorted_disjoint_and_in_range((scheme, labels) in scheme_and_labels()) {
        for policy in [ResolutionPolicy::Conlleval, ResolutionPolicy::BeginEndOnly] {
            let result = parse_spans(&labels, scheme, policy);
            for s in &result.spans {
                prop_assert!(s.start() < s.end() && s.end() <= labels.len());
            }
            for w in result.spans.windows(2) {
                prop_assert!(w[0].end() <= w[1].start());
            }
            for e in &result.errors {
                prop_assert!(e.token_index < labels.len());
                prop_assert_eq!(&e.label, &labels[e.token_index]);
            }
            let keys: Vec<_> = result.errors.iter().map(|e| (e.token_index, e.kind)).collect();
            let mut sorted = keys.clone();
            sorted.sort();
            prop_assert_eq!(keys, sorted);
        }
    }

    #[test]
    fn policies_agree_on_clean_input((scheme, labels) in scheme_and_labels()) {
        let conll = parse_spans(&labels, scheme, ResolutionPolicy::Conlleval);
        if conll.is_clean() {
            let be = parse_spans(&labels, scheme, ResolutionPolicy::BeginEndOnly);
            prop_assert!(be.is_clean());
            prop_assert_eq!(&be.spans, &conll.spans);
            prop_assert_eq!(parse_spans_strict(&labels, scheme).unwrap(), conll.spans);
        } else {
            prop_assert!(parse_spans_strict(&labels, scheme).is_err());
        }
    }

    #[test]
    fn strict_parse_reports_the_robust_errors((scheme, labels) in scheme_and_labels()) {
        let robust = parse_spans(&labels, scheme, ResolutionPolicy::Conlleval);
        if let Err(e) = parse_spans_strict(&labels, scheme) {
            prop_assert_eq!(e.errors, robust.errors);
        }
    }

    #[test]
    fn robust_spans_rewrite_to_clean_labels((scheme, labels) in scheme_and_labels()) {
        let robust = parse_spans(&labels, scheme, ResolutionPolicy::Conlleval);
        let repaired = write_tags(&robust.spans, labels.len(), scheme).unwrap();
        prop_assert_eq!(parse_spans_strict(&repaired, scheme).unwrap(), robust.spans);
    }
}
