//! The WordNet hypernym hierarchy and the semantic primitives computed on it.
//!
//! A [`Taxonomy`] is built once from WNDB text (see [`TaxonomyBuilder`]) and
//! is immutable afterwards, so it can be shared between threads for
//! read-only queries.
//!
//! Distances are counted in hypernym hops. The distance between two synsets
//! is the length of the shortest path that climbs from each of them to a
//! common hypernym, so the distance from any noun to the root is its depth.

mod lemma;
mod wndb;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cost::SemanticCost;

pub use lemma::{normalize_lemma, normalize_role};

/// Lemma of the noun root synset (`entity.n.01`).
pub const ROOT_LEMMA: &str = "entity";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    Noun,
    Verb,
}

impl Pos {
    pub const fn code(self) -> &'static str {
        match self {
            Pos::Noun => "n",
            Pos::Verb => "v",
        }
    }

    pub fn from_code(code: &str) -> Option<Pos> {
        match code {
            "n" => Some(Pos::Noun),
            "v" => Some(Pos::Verb),
            _ => None,
        }
    }

    /// WNDB file suffix, as in `data.noun`.
    pub const fn file_suffix(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
        }
    }
}

/// Part of speech plus 8-digit byte offset, written `n02084071`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SynsetId {
    pos: Pos,
    offset: u32,
}

impl SynsetId {
    pub const fn new(pos: Pos, offset: u32) -> Self {
        SynsetId { pos, offset }
    }

    pub const fn pos(self) -> Pos {
        self.pos
    }

    pub const fn offset(self) -> u32 {
        self.offset
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:08}", self.pos.code(), self.offset)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid synset id `{0}` (expected e.g. n02084071)")]
pub struct ParseSynsetIdError(pub String);

impl FromStr for SynsetId {
    type Err = ParseSynsetIdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseSynsetIdError(s.to_string());
        if s.len() != 9 || !s.is_char_boundary(1) {
            return Err(err());
        }
        let pos = Pos::from_code(&s[..1]).ok_or_else(err)?;
        let digits = &s[1..];
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let offset = digits.parse().map_err(|_| err())?;
        Ok(SynsetId::new(pos, offset))
    }
}

impl Serialize for SynsetId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SynsetId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <&str>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synset {
    pub id: SynsetId,
    /// Lowercase, underscore-joined, in data-file order.
    pub lemmas: Vec<String>,
    pub hypernyms: Vec<SynsetId>,
}

impl Synset {
    pub fn pos(&self) -> Pos {
        self.id.pos
    }

    /// `dog.n` style label built from the first lemma.
    pub fn head_lemma(&self) -> &str {
        self.lemmas.first().map(String::as_str).unwrap_or("")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaxonomyError {
    #[error("{source_name}:{line}: {message}")]
    Parse { source_name: String, line: usize, message: String },
    #[error("synset {0} is defined twice")]
    DuplicateSynset(SynsetId),
    #[error("synset {synset} points to unknown hypernym {hypernym}")]
    DanglingHypernym { synset: SynsetId, hypernym: SynsetId },
    #[error("synset {synset} has hypernym {hypernym} of a different part of speech")]
    PosMismatch { synset: SynsetId, hypernym: SynsetId },
    #[error("index entry `{lemma}` refers to unknown synset {synset}")]
    UnknownIndexSense { lemma: String, synset: SynsetId },
    #[error("hypernym cycle through synset {0}")]
    Cycle(SynsetId),
    #[error("no noun root synset with lemma `entity` and no hypernyms")]
    MissingRoot,
    #[error("noun synset {0} does not reach the root `entity`")]
    Unrooted(SynsetId),
}

#[derive(Debug, Clone)]
struct Node {
    synset: Synset,
    up: Vec<u32>,
    down: Vec<u32>,
    depth: u32,
}

/// Accumulates parsed WNDB files and validates them into a [`Taxonomy`].
#[derive(Debug, Default)]
pub struct TaxonomyBuilder {
    synsets: BTreeMap<SynsetId, Synset>,
    index: BTreeMap<(Pos, String), Vec<SynsetId>>,
}

impl TaxonomyBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the contents of a `data.noun` / `data.verb` file. `source` names
    /// the file in error messages.
    pub fn add_data(&mut self, pos: Pos, source: &str, text: &str) -> Result<&mut Self, TaxonomyError> {
        for (i, line) in text.lines().enumerate() {
            if wndb::is_skipped(line) {
                continue;
            }
            let parsed = wndb::parse_data_line(pos, source, i + 1, line)?;
            if self.synsets.contains_key(&parsed.id) {
                return Err(TaxonomyError::DuplicateSynset(parsed.id));
            }
            self.synsets
                .insert(parsed.id, Synset { id: parsed.id, lemmas: parsed.lemmas, hypernyms: parsed.hypernyms });
        }
        Ok(self)
    }

    /// Adds the contents of an `index.noun` / `index.verb` file.
    pub fn add_index(&mut self, pos: Pos, source: &str, text: &str) -> Result<&mut Self, TaxonomyError> {
        for (i, line) in text.lines().enumerate() {
            if wndb::is_skipped(line) {
                continue;
            }
            let parsed = wndb::parse_index_line(pos, source, i + 1, line)?;
            self.index.insert((pos, parsed.lemma), parsed.senses);
        }
        Ok(self)
    }

    pub fn build(self) -> Result<Taxonomy, TaxonomyError> {
        let TaxonomyBuilder { synsets, index } = self;
        let ids: Vec<SynsetId> = synsets.keys().copied().collect();
        let position = |id: &SynsetId| ids.binary_search(id).ok().map(|i| i as u32);

        let mut nodes: Vec<Node> = Vec::with_capacity(ids.len());
        for synset in synsets.into_values() {
            let mut up = Vec::with_capacity(synset.hypernyms.len());
            for h in &synset.hypernyms {
                if h.pos != synset.id.pos {
                    return Err(TaxonomyError::PosMismatch { synset: synset.id, hypernym: *h });
                }
                let idx = position(h).ok_or(TaxonomyError::DanglingHypernym { synset: synset.id, hypernym: *h })?;
                if !up.contains(&idx) {
                    up.push(idx);
                }
            }
            nodes.push(Node { synset, up, down: Vec::new(), depth: u32::MAX });
        }
        let broken = break_verb_cycles(&mut nodes);
        for i in 0..nodes.len() {
            for k in 0..nodes[i].up.len() {
                let parent = nodes[i].up[k] as usize;
                nodes[parent].down.push(i as u32);
            }
        }

        check_acyclic(&nodes)?;

        for ((pos, lemma), senses) in &index {
            for s in senses {
                if s.pos != *pos || position(s).is_none() {
                    return Err(TaxonomyError::UnknownIndexSense { lemma: lemma.clone(), synset: *s });
                }
            }
        }

        let root = assign_depths(&mut nodes)?;
        Ok(Taxonomy { nodes, index, root, broken })
    }
}

/// Removes the verb hypernym pointers that close a cycle and returns them
/// as `(synset, hypernym)` pairs. Depth-first from each verb in id order,
/// following pointers in file order; the pointer that reaches a synset
/// still on the stack is dropped. Noun cycles are left for
/// [`check_acyclic`] to reject.
fn break_verb_cycles(nodes: &mut [Node]) -> Vec<(SynsetId, SynsetId)> {
    const NEW: u8 = 0;
    const OPEN: u8 = 1;
    const DONE: u8 = 2;
    let mut state = vec![NEW; nodes.len()];
    let mut broken = Vec::new();
    for start in 0..nodes.len() {
        if nodes[start].synset.id.pos != Pos::Verb || state[start] != NEW {
            continue;
        }
        state[start] = OPEN;
        let mut stack = vec![(start, 0usize)];
        while let Some(&mut (i, ref mut k)) = stack.last_mut() {
            if *k == nodes[i].up.len() {
                state[i] = DONE;
                stack.pop();
                continue;
            }
            let p = nodes[i].up[*k] as usize;
            match state[p] {
                OPEN => {
                    let (child, parent) = (nodes[i].synset.id, nodes[p].synset.id);
                    broken.push((child, parent));
                    nodes[i].up.remove(*k);
                    nodes[i].synset.hypernyms.retain(|h| *h != parent);
                }
                NEW => {
                    *k += 1;
                    state[p] = OPEN;
                    stack.push((p, 0));
                }
                _ => *k += 1,
            }
        }
    }
    broken
}

fn check_acyclic(nodes: &[Node]) -> Result<(), TaxonomyError> {
    let mut pending: Vec<usize> = nodes.iter().map(|n| n.up.len()).collect();
    let mut queue: VecDeque<usize> = (0..nodes.len()).filter(|&i| pending[i] == 0).collect();
    let mut seen = 0usize;
    while let Some(i) = queue.pop_front() {
        seen += 1;
        for &child in &nodes[i].down {
            let c = child as usize;
            pending[c] -= 1;
            if pending[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    if seen == nodes.len() {
        return Ok(());
    }
    let stuck = pending.iter().position(|&p| p > 0).expect("unfinished node exists");
    Err(TaxonomyError::Cycle(nodes[stuck].synset.id))
}

/// Breadth-first depths from the hypernym-less synsets. Nouns must all hang
/// below the single `entity` root; verbs may have many tops.
fn assign_depths(nodes: &mut [Node]) -> Result<Option<u32>, TaxonomyError> {
    let has_nouns = nodes.iter().any(|n| n.synset.id.pos == Pos::Noun);
    let root = nodes
        .iter()
        .position(|n| {
            n.synset.id.pos == Pos::Noun && n.up.is_empty() && n.synset.lemmas.iter().any(|l| l == ROOT_LEMMA)
        })
        .map(|i| i as u32);
    if has_nouns && root.is_none() {
        return Err(TaxonomyError::MissingRoot);
    }

    let mut queue = VecDeque::new();
    for (i, node) in nodes.iter_mut().enumerate() {
        let is_top = match node.synset.id.pos {
            Pos::Noun => Some(i as u32) == root,
            Pos::Verb => node.up.is_empty(),
        };
        if is_top {
            node.depth = 0;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        let next = nodes[i].depth + 1;
        for k in 0..nodes[i].down.len() {
            let c = nodes[i].down[k] as usize;
            if nodes[c].depth == u32::MAX {
                nodes[c].depth = next;
                queue.push_back(c);
            }
        }
    }
    if let Some(n) = nodes.iter().find(|n| n.depth == u32::MAX) {
        return Err(TaxonomyError::Unrooted(n.synset.id));
    }
    Ok(root)
}

/// Immutable hypernym DAG with a lemma index and cached depths.
#[derive(Debug, Clone)]
pub struct Taxonomy {
    nodes: Vec<Node>,
    index: BTreeMap<(Pos, String), Vec<SynsetId>>,
    root: Option<u32>,
    broken: Vec<(SynsetId, SynsetId)>,
}

impl Taxonomy {
    /// Verb hypernym pointers dropped at load time because they closed a
    /// cycle, as `(synset, hypernym)` pairs.
    pub fn broken_cycle_pointers(&self) -> &[(SynsetId, SynsetId)] {
        &self.broken
    }

    pub fn builder() -> TaxonomyBuilder {
        TaxonomyBuilder::new()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn count(&self, pos: Pos) -> usize {
        self.nodes.iter().filter(|n| n.synset.id.pos == pos).count()
    }

    pub fn has_pos(&self, pos: Pos) -> bool {
        self.nodes.iter().any(|n| n.synset.id.pos == pos)
    }

    /// The noun root `entity.n.01`, if nouns were loaded.
    pub fn root(&self) -> Option<SynsetId> {
        self.root.map(|r| self.nodes[r as usize].synset.id)
    }

    pub fn synsets(&self) -> impl Iterator<Item = &Synset> + '_ {
        self.nodes.iter().map(|n| &n.synset)
    }

    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        self.idx(id).map(|i| &self.nodes[i as usize].synset)
    }

    pub fn contains(&self, id: SynsetId) -> bool {
        self.idx(id).is_some()
    }

    /// Hops on the shortest hypernym path to the root (or to the nearest top
    /// synset for verbs).
    pub fn depth(&self, id: SynsetId) -> Option<u32> {
        self.idx(id).map(|i| self.nodes[i as usize].depth)
    }

    pub fn max_depth(&self) -> u32 {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Synsets listed for a normalized lemma, in sense order.
    pub fn senses(&self, pos: Pos, lemma: &str) -> &[SynsetId] {
        self.index.get(&(pos, String::from(lemma))).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Maps a surface form to the first listed sense of its lemma.
    ///
    /// The surface is lowercased, trimmed and underscore-joined. On a miss,
    /// plural suffixes (nouns) or inflections (verbs) are stripped and the
    /// lookup retried. Unmappable input yields `None`.
    pub fn map_lemma(&self, surface: &str, pos: Pos) -> Option<SynsetId> {
        let lemma = normalize_lemma(surface);
        if lemma.is_empty() {
            return None;
        }
        if let Some(first) = self.senses(pos, &lemma).first() {
            return Some(*first);
        }
        lemma::fallback_forms(&lemma, pos).iter().find_map(|form| self.senses(pos, form).first().copied())
    }

    fn idx(&self, id: SynsetId) -> Option<u32> {
        self.nodes.binary_search_by(|n| n.synset.id.cmp(&id)).ok().map(|i| i as u32)
    }

    fn id_at(&self, idx: u32) -> SynsetId {
        self.nodes[idx as usize].synset.id
    }

    /// Every hypernym ancestor including `idx` itself, with the hop count of
    /// the shortest climb, sorted by node index.
    fn up_distances(&self, idx: u32) -> Vec<(u32, u32)> {
        let mut dist: BTreeMap<u32, u32> = BTreeMap::new();
        let mut queue = VecDeque::new();
        dist.insert(idx, 0);
        queue.push_back(idx);
        while let Some(i) = queue.pop_front() {
            let d = dist[&i];
            for &p in &self.nodes[i as usize].up {
                if let alloc::collections::btree_map::Entry::Vacant(e) = dist.entry(p) {
                    e.insert(d + 1);
                    queue.push_back(p);
                }
            }
        }
        dist.into_iter().collect()
    }

    /// Common ancestors of two synsets as `(node, climb from a, climb from b)`.
    fn common_ancestors(&self, a: u32, b: u32) -> Vec<(u32, u32, u32)> {
        let ua = self.up_distances(a);
        let ub = self.up_distances(b);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < ua.len() && j < ub.len() {
            match ua[i].0.cmp(&ub[j].0) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    out.push((ua[i].0, ua[i].1, ub[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Transitive hypernyms of `id`, excluding `id`, in id order.
    pub fn hypernym_closure(&self, id: SynsetId) -> Vec<SynsetId> {
        let Some(idx) = self.idx(id) else { return Vec::new() };
        self.up_distances(idx).into_iter().filter(|&(n, _)| n != idx).map(|(n, _)| self.id_at(n)).collect()
    }

    /// Number of distinct transitive hypernyms of `id`.
    pub fn ancestor_count(&self, id: SynsetId) -> usize {
        self.idx(id).map_or(0, |i| self.up_distances(i).len() - 1)
    }

    /// `true` when `general` is `specific` or one of its transitive hypernyms.
    pub fn subsumes(&self, general: SynsetId, specific: SynsetId) -> bool {
        match (self.idx(general), self.idx(specific)) {
            (Some(g), Some(s)) => self.up_distances(s).binary_search_by(|e| e.0.cmp(&g)).is_ok(),
            _ => false,
        }
    }

    /// Shortest path length between two synsets through a common hypernym.
    ///
    /// Symmetric, zero only for identical synsets. Pairs without a common
    /// hypernym (verbs under different tops, mixed parts of speech, unknown
    /// ids) get [`SemanticCost::INFINITE`].
    pub fn path_cost(&self, a: SynsetId, b: SynsetId) -> SemanticCost {
        let (Some(ia), Some(ib)) = (self.idx(a), self.idx(b)) else {
            return SemanticCost::INFINITE;
        };
        if ia == ib {
            return SemanticCost::ZERO;
        }
        self.common_ancestors(ia, ib)
            .into_iter()
            .map(|(_, da, db)| da + db)
            .min()
            .map_or(SemanticCost::INFINITE, SemanticCost::new)
    }

    /// Least common ancestor.
    ///
    /// If one synset subsumes the other, it is the answer. Otherwise the
    /// deepest common hypernym wins, ties going to the smallest id. `None`
    /// only when the synsets share no hypernym.
    pub fn lca(&self, a: SynsetId, b: SynsetId) -> Option<SynsetId> {
        self.lca_with_climbs(a, b).map(|(l, _, _)| self.id_at(l))
    }

    fn lca_with_climbs(&self, a: SynsetId, b: SynsetId) -> Option<(u32, u32, u32)> {
        let (ia, ib) = (self.idx(a)?, self.idx(b)?);
        let common = self.common_ancestors(ia, ib);
        if let Some(&hit) = common.iter().find(|c| c.0 == ib) {
            return Some(hit);
        }
        if let Some(&hit) = common.iter().find(|c| c.0 == ia) {
            return Some(hit);
        }
        // Ascending index = ascending id, so the first maximum is the smallest id.
        let mut best: Option<(u32, u32, u32)> = None;
        for c in common {
            let deeper = match best {
                None => true,
                Some(b) => self.nodes[c.0 as usize].depth > self.nodes[b.0 as usize].depth,
            };
            if deeper {
                best = Some(c);
            }
        }
        best
    }

    /// Wu-Palmer similarity `2·d(l) / (d_l(a) + d_l(b))`.
    ///
    /// Depths count the root as 1. `d_l(x)` is measured along the climb from
    /// `x` to the LCA `l`, which equals `x`'s own depth on tree-shaped
    /// regions and keeps the value in `(0, 1]` where WordNet has multiple
    /// inheritance.
    pub fn wu_palmer(&self, a: SynsetId, b: SynsetId) -> Option<f64> {
        let (l, climb_a, climb_b) = self.lca_with_climbs(a, b)?;
        let dl = self.nodes[l as usize].depth as f64 + 1.0;
        Some(2.0 * dl / ((dl + climb_a as f64) + (dl + climb_b as f64)))
    }

    /// All synset ids of one part of speech, ascending.
    pub fn ids(&self, pos: Pos) -> Vec<SynsetId> {
        self.nodes.iter().map(|n| n.synset.id).filter(|id| id.pos == pos).collect()
    }

    /// Distinct lemmas of the index for one part of speech.
    pub fn lemmas(&self, pos: Pos) -> BTreeSet<&str> {
        self.index.keys().filter(|(p, _)| *p == pos).map(|(_, l)| l.as_str()).collect()
    }

    /// Ids of the direct hypernyms; empty for top synsets.
    pub fn parents(&self, id: SynsetId) -> Vec<SynsetId> {
        self.idx(id).map(|i| self.nodes[i as usize].up.iter().map(|&p| self.id_at(p)).collect()).unwrap_or_default()
    }
}
