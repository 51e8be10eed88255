//! CHAIR baselines.

/// Instance-level CHAIR: hallucinated over predicted objects. `hallucinated`
/// must be a sub-multiset of `predicted`.
pub fn chair_i<T: PartialEq>(predicted: &[T], hallucinated: &[T]) -> Option<f64> {
    debug_assert!(hallucinated.len() <= predicted.len());
    debug_assert!(hallucinated
        .iter()
        .all(|h| { predicted.iter().filter(|p| *p == h).count() >= hallucinated.iter().filter(|x| *x == h).count() }));
    (!predicted.is_empty()).then(|| hallucinated.len() as f64 / predicted.len() as f64)
}

/// Sentence-level CHAIR: fraction of captions with at least one
/// hallucinated object.
pub fn chair_s<I: IntoIterator<Item = bool>>(has_hallucination: I) -> Option<f64> {
    let (mut hit, mut total) = (0usize, 0usize);
    for h in has_hallucination {
        total += 1;
        hit += usize::from(h);
    }
    (total > 0).then(|| hit as f64 / total as f64)
}
