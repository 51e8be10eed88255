//! Reference-based n-gram metrics.
//!
//! Text is lowercased, every non-alphanumeric character becomes a space and
//! the result is split on whitespace. ROUGE scores are F1. An empty
//! candidate scores 0 everywhere.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub fn tokenize(text: &str) -> Vec<String> {
    let cleaned: String =
        text.chars().flat_map(char::to_lowercase).map(|c| if c.is_alphanumeric() { c } else { ' ' }).collect();
    cleaned.split_whitespace().map(String::from).collect()
}

fn ngrams(tokens: &[String], n: usize) -> BTreeMap<&[String], usize> {
    let mut counts = BTreeMap::new();
    if n > 0 && tokens.len() >= n {
        for w in tokens.windows(n) {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

fn clipped_overlap(cand: &BTreeMap<&[String], usize>, reference: &BTreeMap<&[String], usize>) -> usize {
    cand.iter().map(|(g, c)| (*c).min(reference.get(g).copied().unwrap_or(0))).sum()
}

fn f1(hits: usize, cand_len: usize, ref_len: usize) -> f64 {
    if hits == 0 || cand_len == 0 || ref_len == 0 {
        return 0.0;
    }
    let p = hits as f64 / cand_len as f64;
    let r = hits as f64 / ref_len as f64;
    2.0 * p * r / (p + r)
}

/// ROUGE-N F1 against one reference.
pub fn rouge_n(candidate: &str, reference: &str, n: usize) -> f64 {
    let (c, r) = (tokenize(candidate), tokenize(reference));
    let (cg, rg) = (ngrams(&c, n), ngrams(&r, n));
    let hits = clipped_overlap(&cg, &rg);
    f1(hits, cg.values().sum(), rg.values().sum())
}

fn lcs_table(a: &[String], b: &[String]) -> Vec<Vec<usize>> {
    let mut dp = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            dp[i][j] = if a[i - 1] == b[j - 1] { dp[i - 1][j - 1] + 1 } else { dp[i - 1][j].max(dp[i][j - 1]) };
        }
    }
    dp
}

/// Indices into `a` of one longest common subsequence with `b`.
fn lcs_indices(a: &[String], b: &[String]) -> Vec<usize> {
    let dp = lcs_table(a, b);
    let (mut i, mut j) = (a.len(), b.len());
    let mut out = Vec::new();
    while i > 0 && j > 0 {
        if a[i - 1] == b[j - 1] {
            out.push(i - 1);
            i -= 1;
            j -= 1;
        } else if dp[i - 1][j] >= dp[i][j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    out.reverse();
    out
}

/// ROUGE-L F1 against one reference.
pub fn rouge_l(candidate: &str, reference: &str) -> f64 {
    let (c, r) = (tokenize(candidate), tokenize(reference));
    let hits = lcs_table(&c, &r)[c.len()][r.len()];
    f1(hits, c.len(), r.len())
}

fn sentences(text: &str) -> Vec<Vec<String>> {
    text.split(['\n', '.', '!', '?']).map(tokenize).filter(|s| !s.is_empty()).collect()
}

/// Summary-level ROUGE-L F1 against one reference: texts are split into
/// sentences and each reference sentence takes the union of its LCS hits
/// over all candidate sentences. Tokens are consumed so none counts twice.
pub fn rouge_lsum(candidate: &str, reference: &str) -> f64 {
    let (cs, rs) = (sentences(candidate), sentences(reference));
    let mut cand_left: BTreeMap<&str, usize> = BTreeMap::new();
    let mut ref_left: BTreeMap<&str, usize> = BTreeMap::new();
    for tok in cs.iter().flatten() {
        *cand_left.entry(tok.as_str()).or_insert(0) += 1;
    }
    for tok in rs.iter().flatten() {
        *ref_left.entry(tok.as_str()).or_insert(0) += 1;
    }
    let cand_len: usize = cand_left.values().sum();
    let ref_len: usize = ref_left.values().sum();

    let mut hits = 0;
    for r in &rs {
        let mut union: Vec<usize> = cs.iter().flat_map(|c| lcs_indices(r, c)).collect();
        union.sort_unstable();
        union.dedup();
        for idx in union {
            let tok = r[idx].as_str();
            let (Some(cl), Some(rl)) = (cand_left.get_mut(tok), ref_left.get_mut(tok)) else { continue };
            if *cl > 0 && *rl > 0 {
                *cl -= 1;
                *rl -= 1;
                hits += 1;
            }
        }
    }
    f1(hits, cand_len, ref_len)
}

/// Sentence BLEU-4 with uniform weights, clipped counts against the
/// maximum reference count, and a brevity penalty from the closest
/// reference length (shorter on ties). No smoothing: a missing n-gram
/// order scores 0.
pub fn bleu(candidate: &str, references: &[&str]) -> f64 {
    let c = tokenize(candidate);
    let refs: Vec<Vec<String>> = references.iter().map(|r| tokenize(r)).collect();
    if c.is_empty() || refs.is_empty() {
        return 0.0;
    }
    let mut log_sum = 0.0;
    for n in 1..=4 {
        let cg = ngrams(&c, n);
        let total: usize = cg.values().sum();
        let ref_grams: Vec<_> = refs.iter().map(|r| ngrams(r, n)).collect();
        let hits: usize = cg
            .iter()
            .map(|(g, cnt)| {
                let max_ref = ref_grams.iter().map(|rg| rg.get(g).copied().unwrap_or(0)).max().unwrap_or(0);
                (*cnt).min(max_ref)
            })
            .sum();
        if hits == 0 || total == 0 {
            return 0.0;
        }
        log_sum += libm::log(hits as f64 / total as f64);
    }
    let cl = c.len();
    let closest = refs.iter().map(Vec::len).min_by_key(|&rl| (rl.abs_diff(cl), rl)).unwrap_or(0);
    let bp = if cl > closest { 1.0 } else { libm::exp(1.0 - closest as f64 / cl as f64) };
    bp * libm::exp(log_sum / 4.0)
}

/// Google BLEU (GLEU) over 1- to 4-grams: matching n-grams divided by the
/// larger of the candidate and reference n-gram totals, i.e. the minimum of
/// pooled precision and recall, taken at the best reference.
pub fn google_bleu(candidate: &str, references: &[&str]) -> f64 {
    let c = tokenize(candidate);
    if c.is_empty() {
        return 0.0;
    }
    let mut best = 0.0f64;
    for reference in references {
        let r = tokenize(reference);
        let (mut hits, mut c_total, mut r_total) = (0, 0, 0);
        for n in 1..=4 {
            let (cg, rg) = (ngrams(&c, n), ngrams(&r, n));
            hits += clipped_overlap(&cg, &rg);
            c_total += cg.values().sum::<usize>();
            r_total += rg.values().sum::<usize>();
        }
        let denom = c_total.max(r_total);
        if denom > 0 {
            best = best.max(hits as f64 / denom as f64);
        }
    }
    best
}
