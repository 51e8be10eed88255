//! Evaluation instances and their mapping onto the taxonomy.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::roles::{Edge, RoleLabel, SceneGraph};
use crate::taxonomy::{normalize_lemma, normalize_role, Pos, SynsetId, Taxonomy};

/// `[head, role, tail]` as surface text.
pub type Triple = [String; 3];

/// Most reference captions used for the linguistic metrics.
pub const MAX_REFERENCES: usize = 5;

/// One line of a dataset file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caption_text: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reference_captions: Vec<String>,
    pub caption_objects: Vec<String>,
    pub image_objects: Vec<String>,
    #[serde(default)]
    pub caption_triples: Vec<Triple>,
    #[serde(default)]
    pub image_triples: Vec<Triple>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Caption,
    Image,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Caption => "caption",
            Side::Image => "image",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("record id is empty")]
    EmptyId,
    #[error("record `{id}` has {count} reference captions, at most {MAX_REFERENCES} are allowed")]
    TooManyReferences { id: String, count: usize },
    #[error("record `{id}`: {} triple {triple:?} uses `{missing}`, which is not among the {} objects", side.as_str(), side.as_str())]
    DanglingTriple { id: String, side: Side, triple: Triple, missing: String },
    #[error("record `{id}`: {} triple {triple:?} has an empty element", side.as_str())]
    EmptyTripleElement { id: String, side: Side, triple: Triple },
}

impl InstanceRecord {
    /// Checks the record-level invariants: non-empty id, at most five
    /// references, and triple endpoints drawn from the same side's objects.
    pub fn validate(&self) -> Result<(), RecordError> {
        if self.id.trim().is_empty() {
            return Err(RecordError::EmptyId);
        }
        if self.reference_captions.len() > MAX_REFERENCES {
            return Err(RecordError::TooManyReferences { id: self.id.clone(), count: self.reference_captions.len() });
        }
        for (side, objects, triples) in [
            (Side::Caption, &self.caption_objects, &self.caption_triples),
            (Side::Image, &self.image_objects, &self.image_triples),
        ] {
            let known: Vec<String> = objects.iter().map(|o| normalize_lemma(o)).collect();
            for triple in triples {
                if triple.iter().any(|part| part.trim().is_empty()) {
                    return Err(RecordError::EmptyTripleElement { id: self.id.clone(), side, triple: triple.clone() });
                }
                for endpoint in [&triple[0], &triple[2]] {
                    if !known.contains(&normalize_lemma(endpoint)) {
                        return Err(RecordError::DanglingTriple {
                            id: self.id.clone(),
                            side,
                            triple: triple.clone(),
                            missing: endpoint.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Per-lemma sense overrides, keyed by normalized lemma.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides(BTreeMap<String, SynsetId>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OverridesError {
    #[error("overrides line {line}: expected `lemma<TAB>synset_id`")]
    Malformed { line: usize },
    #[error("overrides line {line}: {message}")]
    BadSynset { line: usize, message: String },
    #[error("override for `{lemma}` names {synset}, which is not in the taxonomy")]
    UnknownSynset { lemma: String, synset: SynsetId },
}

impl Overrides {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `lemma<TAB>synset_id` lines. Blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self, OverridesError> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (lemma, id) = line.split_once('\t').ok_or(OverridesError::Malformed { line: i + 1 })?;
            let lemma = normalize_lemma(lemma);
            if lemma.is_empty() {
                return Err(OverridesError::Malformed { line: i + 1 });
            }
            let id: SynsetId = id.trim().parse().map_err(|e: crate::taxonomy::ParseSynsetIdError| {
                OverridesError::BadSynset { line: i + 1, message: e.to_string() }
            })?;
            map.insert(lemma, id);
        }
        Ok(Overrides(map))
    }

    pub fn insert(&mut self, lemma: &str, synset: SynsetId) {
        self.0.insert(normalize_lemma(lemma), synset);
    }

    pub fn get(&self, lemma: &str) -> Option<SynsetId> {
        self.0.get(&normalize_lemma(lemma)).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every override must name a noun synset present in `t`.
    pub fn check(&self, t: &Taxonomy) -> Result<(), OverridesError> {
        for (lemma, id) in &self.0 {
            if id.pos() != Pos::Noun || !t.contains(*id) {
                return Err(OverridesError::UnknownSynset { lemma: lemma.clone(), synset: *id });
            }
        }
        Ok(())
    }
}

/// A surface concept together with the synset it was mapped to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Concept {
    pub surface: String,
    pub synset: SynsetId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unmapped {
    pub lemma: String,
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DropReason {
    /// An endpoint could not be mapped to the taxonomy.
    UnmappedEndpoint,
    /// An endpoint is not among the side's objects.
    MissingEndpoint,
    /// Same head, role and tail as an earlier triple.
    DuplicateEdge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DroppedTriple {
    pub side: Side,
    pub triple: Triple,
    pub reason: DropReason,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MapOptions {
    /// Collapse repeated object lemmas per side into one concept.
    pub dedupe: bool,
}

/// An instance with both sides mapped onto the taxonomy.
///
/// The caption concepts `S` are the nodes of `caption_graph`, the image
/// concepts `T` the nodes of `image_graph`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappedInstance {
    pub id: String,
    pub caption_text: Option<String>,
    pub reference_captions: Vec<String>,
    pub caption_graph: SceneGraph,
    pub image_graph: SceneGraph,
    pub unmapped: Vec<Unmapped>,
    pub dropped_triples: Vec<DroppedTriple>,
    /// Objects removed by `dedupe`, per side (caption, image).
    pub collapsed: [usize; 2],
}

impl MappedInstance {
    /// Caption concepts `S`.
    pub fn caption_concepts(&self) -> &[Concept] {
        &self.caption_graph.nodes
    }

    /// Image concepts `T`.
    pub fn image_concepts(&self) -> &[Concept] {
        &self.image_graph.nodes
    }

    pub fn unmapped_on(&self, side: Side) -> usize {
        self.unmapped.iter().filter(|u| u.side == side).count()
    }
}

#[allow(clippy::too_many_arguments)]
fn map_side(
    t: &Taxonomy,
    side: Side,
    objects: &[String],
    triples: &[Triple],
    overrides: &Overrides,
    options: MapOptions,
    unmapped: &mut Vec<Unmapped>,
    dropped: &mut Vec<DroppedTriple>,
) -> (SceneGraph, usize) {
    let mut nodes: Vec<Concept> = Vec::new();
    // normalized lemma -> node index of its first mapped occurrence, or None if unmapped
    let mut first: BTreeMap<String, Option<usize>> = BTreeMap::new();
    let mut collapsed = 0;

    for surface in objects {
        let key = normalize_lemma(surface);
        if options.dedupe && first.contains_key(&key) {
            collapsed += 1;
            continue;
        }
        let mapped = overrides.get(&key).or_else(|| t.map_lemma(&key, Pos::Noun));
        match mapped {
            Some(synset) => {
                first.entry(key).or_insert(Some(nodes.len()));
                nodes.push(Concept { surface: surface.clone(), synset });
            }
            None => {
                first.entry(key).or_insert(None);
                unmapped.push(Unmapped { lemma: surface.clone(), side });
            }
        }
    }

    let mut edges: Vec<Edge> = Vec::new();
    for triple in triples {
        let endpoint = |s: &String| first.get(&normalize_lemma(s)).copied();
        let (head, tail) = match (endpoint(&triple[0]), endpoint(&triple[2])) {
            (Some(Some(h)), Some(Some(tl))) => (h, tl),
            (None, _) | (_, None) => {
                dropped.push(DroppedTriple { side, triple: triple.clone(), reason: DropReason::MissingEndpoint });
                continue;
            }
            _ => {
                dropped.push(DroppedTriple { side, triple: triple.clone(), reason: DropReason::UnmappedEndpoint });
                continue;
            }
        };
        let text = normalize_role(&triple[1]);
        if edges.iter().any(|e| e.head == head && e.tail == tail && e.role.text == text) {
            dropped.push(DroppedTriple { side, triple: triple.clone(), reason: DropReason::DuplicateEdge });
            continue;
        }
        let role = RoleLabel::mapped(t, &text);
        edges.push(Edge { head, role, tail });
    }

    (SceneGraph { nodes, edges }, collapsed)
}

/// Maps every object lemma (overrides first, then the first WordNet sense)
/// and builds both scene graphs. Unmappable objects are recorded in
/// `unmapped` and every triple touching them is dropped and recorded.
pub fn map_instance(
    t: &Taxonomy,
    record: &InstanceRecord,
    overrides: &Overrides,
    options: MapOptions,
) -> MappedInstance {
    let mut unmapped = Vec::new();
    let mut dropped_triples = Vec::new();
    let (caption_graph, c_collapsed) = map_side(
        t,
        Side::Caption,
        &record.caption_objects,
        &record.caption_triples,
        overrides,
        options,
        &mut unmapped,
        &mut dropped_triples,
    );
    let (image_graph, i_collapsed) = map_side(
        t,
        Side::Image,
        &record.image_objects,
        &record.image_triples,
        overrides,
        options,
        &mut unmapped,
        &mut dropped_triples,
    );
    MappedInstance {
        id: record.id.clone(),
        caption_text: record.caption_text.clone(),
        reference_captions: record.reference_captions.clone(),
        caption_graph,
        image_graph,
        unmapped,
        dropped_triples,
        collapsed: [c_collapsed, i_collapsed],
    }
}
