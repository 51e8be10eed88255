//! Surface-form normalization and the small morphological fallback used when
//! a lemma is not found verbatim in the index.

use alloc::string::String;
use alloc::vec::Vec;

use super::Pos;

/// Lowercases, trims and joins words with underscores, the WNDB lemma form.
pub fn normalize_lemma(surface: &str) -> String {
    let mut out = String::with_capacity(surface.len());
    for word in surface.split_whitespace() {
        if !out.is_empty() {
            out.push('_');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}

/// Role labels keep spaces: lowercase, single-spaced.
pub fn normalize_role(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    for word in label.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}

const NOUN_RULES: &[(&str, &str)] = &[("s", ""), ("es", ""), ("ies", "y")];

const VERB_RULES: &[(&str, &str)] =
    &[("s", ""), ("ies", "y"), ("es", "e"), ("es", ""), ("ed", "e"), ("ed", ""), ("ing", "e"), ("ing", "")];

fn apply_rules(form: &str, rules: &[(&str, &str)], out: &mut Vec<String>) {
    for (suffix, replacement) in rules {
        if let Some(stem) = form.strip_suffix(suffix) {
            if !stem.is_empty() {
                let mut candidate = String::from(stem);
                candidate.push_str(replacement);
                out.push(candidate);
            }
        }
    }
}

/// "sitting" -> "sit", "stopped" -> "stop".
fn undouble(form: &str, out: &mut Vec<String>) {
    for suffix in ["ing", "ed"] {
        if let Some(stem) = form.strip_suffix(suffix) {
            let bytes = stem.as_bytes();
            let n = bytes.len();
            if n >= 3 && bytes[n - 1] == bytes[n - 2] && !b"aeiou".contains(&bytes[n - 1]) {
                out.push(String::from(&stem[..n - 1]));
            }
        }
    }
}

/// Candidate base forms for an already-normalized lemma, in lookup order.
/// The lemma itself is not included.
pub(crate) fn fallback_forms(lemma: &str, pos: Pos) -> Vec<String> {
    let mut out = Vec::new();
    match pos {
        Pos::Noun => apply_rules(lemma, NOUN_RULES, &mut out),
        Pos::Verb => {
            apply_rules(lemma, VERB_RULES, &mut out);
            undouble(lemma, &mut out);
            // Multi-word labels such as "sitting_at": inflect the head verb,
            // then fall back to the head verb alone.
            if let Some((head, rest)) = lemma.split_once('_') {
                let mut heads = Vec::new();
                apply_rules(head, VERB_RULES, &mut heads);
                undouble(head, &mut heads);
                for h in &heads {
                    let mut joined = h.clone();
                    joined.push('_');
                    joined.push_str(rest);
                    out.push(joined);
                }
                out.push(String::from(head));
                out.extend(heads);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_case_and_spacing() {
        assert_eq!(normalize_lemma("  Dining   Tables "), "dining_tables");
        assert_eq!(normalize_lemma("Dog"), "dog");
        assert_eq!(normalize_role(" Next   TO "), "next to");
    }

    #[test]
    fn noun_plural_forms() {
        assert_eq!(fallback_forms("ponies", Pos::Noun), ["ponie", "poni", "pony"]);
        assert_eq!(fallback_forms("boxes", Pos::Noun), ["boxe", "box"]);
        assert!(fallback_forms("dog", Pos::Noun).is_empty());
    }

    #[test]
    fn verb_forms_prefer_silent_e() {
        let forms = fallback_forms("riding", Pos::Verb);
        let ride = forms.iter().position(|f| f == "ride").unwrap();
        let rid = forms.iter().position(|f| f == "rid").unwrap();
        assert!(ride < rid);
        assert!(fallback_forms("sitting", Pos::Verb).contains(&String::from("sit")));
        assert!(fallback_forms("sitting_at", Pos::Verb).contains(&String::from("sit")));
    }
}
