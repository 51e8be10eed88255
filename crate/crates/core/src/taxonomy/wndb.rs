//! Line parsers for the Princeton WNDB `data.*` and `index.*` files.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Pos, SynsetId, TaxonomyError};

/// One parsed `data.*` line, restricted to what the taxonomy keeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct DataLine {
    pub id: SynsetId,
    pub lemmas: Vec<String>,
    pub hypernyms: Vec<SynsetId>,
}

/// One parsed `index.*` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IndexLine {
    pub lemma: String,
    pub senses: Vec<SynsetId>,
}

/// License header lines start with two spaces; blank lines carry nothing.
pub(crate) fn is_skipped(line: &str) -> bool {
    line.starts_with("  ") || line.trim().is_empty()
}

fn parse_error(source: &str, line: usize, message: impl ToString) -> TaxonomyError {
    TaxonomyError::Parse { source_name: source.to_string(), line, message: message.to_string() }
}

struct Fields<'a> {
    inner: core::str::SplitAsciiWhitespace<'a>,
    source: &'a str,
    line: usize,
}

impl<'a> Fields<'a> {
    fn next(&mut self, what: &str) -> Result<&'a str, TaxonomyError> {
        self.inner.next().ok_or_else(|| parse_error(self.source, self.line, alloc::format!("missing {what}")))
    }

    fn number(&mut self, what: &str, radix: u32) -> Result<usize, TaxonomyError> {
        let raw = self.next(what)?;
        usize::from_str_radix(raw, radix)
            .map_err(|_| parse_error(self.source, self.line, alloc::format!("bad {what} `{raw}`")))
    }

    fn offset(&mut self, what: &str) -> Result<u32, TaxonomyError> {
        let raw = self.next(what)?;
        if raw.len() != 8 || !raw.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_error(self.source, self.line, alloc::format!("bad {what} `{raw}`")));
        }
        raw.parse().map_err(|_| parse_error(self.source, self.line, alloc::format!("bad {what} `{raw}`")))
    }
}

/// Parses a `data.*` line:
/// `offset lex_filenum ss_type w_cnt word lex_id [word lex_id...] p_cnt [ptr...] ... | gloss`.
///
/// Hypernym pointers are `@` and `@i`; all other pointers are ignored.
pub(crate) fn parse_data_line(pos: Pos, source: &str, line_no: usize, line: &str) -> Result<DataLine, TaxonomyError> {
    let body = line.split('|').next().unwrap_or(line);
    let mut f = Fields { inner: body.split_ascii_whitespace(), source, line: line_no };

    let offset = f.offset("synset offset")?;
    f.next("lex_filenum")?;
    let ss_type = f.next("ss_type")?;
    if ss_type != pos.code() {
        return Err(parse_error(
            source,
            line_no,
            alloc::format!("ss_type `{ss_type}` does not match part of speech `{}`", pos.code()),
        ));
    }
    let w_cnt = f.number("w_cnt", 16)?;
    if w_cnt == 0 {
        return Err(parse_error(source, line_no, "synset without words"));
    }
    let mut lemmas = Vec::with_capacity(w_cnt);
    for _ in 0..w_cnt {
        let word = f.next("word")?;
        f.next("lex_id")?;
        lemmas.push(word.to_lowercase());
    }
    let p_cnt = f.number("p_cnt", 10)?;
    let mut hypernyms = Vec::new();
    for _ in 0..p_cnt {
        let symbol = f.next("pointer symbol")?;
        let target = f.offset("pointer offset")?;
        let target_pos = f.next("pointer pos")?;
        f.next("pointer source/target")?;
        if symbol == "@" || symbol == "@i" {
            let target_pos = Pos::from_code(target_pos).ok_or_else(|| {
                parse_error(source, line_no, alloc::format!("hypernym pointer to pos `{target_pos}`"))
            })?;
            if target_pos != pos {
                return Err(TaxonomyError::PosMismatch {
                    synset: SynsetId::new(pos, offset),
                    hypernym: SynsetId::new(target_pos, target),
                });
            }
            hypernyms.push(SynsetId::new(pos, target));
        }
    }
    Ok(DataLine { id: SynsetId::new(pos, offset), lemmas, hypernyms })
}

/// Parses an `index.*` line:
/// `lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt tagsense_cnt synset_offset...`.
pub(crate) fn parse_index_line(pos: Pos, source: &str, line_no: usize, line: &str) -> Result<IndexLine, TaxonomyError> {
    let mut f = Fields { inner: line.split_ascii_whitespace(), source, line: line_no };
    let lemma = f.next("lemma")?.to_lowercase();
    let line_pos = f.next("pos")?;
    if line_pos != pos.code() {
        return Err(parse_error(source, line_no, alloc::format!("pos `{line_pos}` does not match `{}`", pos.code())));
    }
    let synset_cnt = f.number("synset_cnt", 10)?;
    let p_cnt = f.number("p_cnt", 10)?;
    for _ in 0..p_cnt {
        f.next("pointer symbol")?;
    }
    f.number("sense_cnt", 10)?;
    f.number("tagsense_cnt", 10)?;
    let mut senses = Vec::with_capacity(synset_cnt);
    for _ in 0..synset_cnt {
        senses.push(SynsetId::new(pos, f.offset("synset offset")?));
    }
    Ok(IndexLine { lemma, senses })
}
