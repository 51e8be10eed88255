//! Role-level edits between scene graphs.
//!
//! The caption graph `G_S` is transformed into the image graph `G_T`. Nodes
//! are matched with one linear assignment (a bipartite approximation of the
//! graph edit distance); the edges are then resolved against that node
//! matching:
//!
//! 1. an edge with a deleted endpoint is deleted as collateral damage;
//! 2. an edge whose matched endpoints carry an equivalent target edge is
//!    correct;
//! 3. an edge whose matched endpoints carry a different target role is
//!    replaced by it (cheapest role first);
//! 4. an edge whose role reappears in the image attached to one of the
//!    same matched endpoints but a different other endpoint is replaced by
//!    that re-anchored triple;
//! 5. any other edge is a hallucinated role and deleted;
//! 6. target edges left over are insert suggestions.
//!
//! Steps 3 and 4 are the post-hoc replacement reasoning: a role deletion
//! paired with a role insertion on the same objects reads as a replacement.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::SemanticCost;
use crate::ingest::{Concept, Triple};
use crate::objects::{edit_matrix, solve_edit_matrix, EditKind, Match};
use crate::taxonomy::{Pos, SynsetId, Taxonomy};

pub const ROLE_DELETE_COST: u32 = 1;
pub const ROLE_INSERT_COST: u32 = 1;
/// Substitution cost between roles that cannot be compared in the verb
/// hierarchy; larger than deleting one role and inserting the other.
pub const UNSEEN_ROLE_COST: u32 = ROLE_DELETE_COST + ROLE_INSERT_COST + 1;
/// Largest graph, per side, accepted by [`exact_ged`] unless overridden.
pub const DEFAULT_NODE_LIMIT: usize = 5;

/// A normalized role label and, when it maps, its verb synset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleLabel {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synset: Option<SynsetId>,
}

impl RoleLabel {
    /// `text` must already be normalized.
    pub fn mapped(t: &Taxonomy, text: &str) -> Self {
        let synset = if t.has_pos(Pos::Verb) { t.map_lemma(text, Pos::Verb) } else { None };
        RoleLabel { text: String::from(text), synset }
    }

    pub fn unmapped(text: &str) -> Self {
        RoleLabel { text: String::from(text), synset: None }
    }
}

/// Directed labelled edge between node indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub head: usize,
    pub role: RoleLabel,
    pub tail: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SceneGraph {
    pub nodes: Vec<Concept>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge endpoint {0} is not a node index")]
    BadEndpoint(usize),
    #[error("parallel edge with the same role `{0}`")]
    DuplicateEdge(String),
}

impl SceneGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, surface: &str, synset: SynsetId) -> usize {
        self.nodes.push(Concept { surface: String::from(surface), synset });
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, head: usize, role: RoleLabel, tail: usize) -> Result<usize, GraphError> {
        for end in [head, tail] {
            if end >= self.nodes.len() {
                return Err(GraphError::BadEndpoint(end));
            }
        }
        if self.edges.iter().any(|e| e.head == head && e.tail == tail && e.role.text == role.text) {
            return Err(GraphError::DuplicateEdge(role.text));
        }
        self.edges.push(Edge { head, role, tail });
        Ok(self.edges.len() - 1)
    }

    pub fn synsets(&self) -> Vec<SynsetId> {
        self.nodes.iter().map(|c| c.synset).collect()
    }

    /// Surface triple of edge `e`.
    pub fn triple(&self, e: usize) -> Triple {
        let edge = &self.edges[e];
        [self.nodes[edge.head].surface.clone(), edge.role.text.clone(), self.nodes[edge.tail].surface.clone()]
    }

    fn incident(&self, v: usize) -> Vec<(Direction, &RoleLabel)> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.head == v {
                out.push((Direction::Out, &e.role));
            }
            if e.tail == v {
                out.push((Direction::In, &e.role));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Out,
    In,
}

/// Identical labels cost nothing; labels mapped into a shared verb hierarchy
/// cost their taxonomy distance; anything else costs [`UNSEEN_ROLE_COST`].
pub fn role_substitution_cost(t: &Taxonomy, a: &RoleLabel, b: &RoleLabel) -> SemanticCost {
    if a.text == b.text {
        return SemanticCost::ZERO;
    }
    if let (Some(x), Some(y)) = (a.synset, b.synset) {
        let c = t.path_cost(x, y);
        if c.is_finite() {
            return c;
        }
    }
    SemanticCost::new(UNSEEN_ROLE_COST)
}

/// Cost charged for replacing one role by another: never more than deleting
/// the first and inserting the second.
fn replace_charge(c: SemanticCost) -> u32 {
    c.hops().unwrap_or(u32::MAX).min(ROLE_DELETE_COST + ROLE_INSERT_COST)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoleCause {
    /// Both objects are kept but the image has no matching relation.
    HallucinatedRole,
    /// An endpoint object was deleted.
    Collateral,
    /// Deleted role paired with an added role on the same objects.
    PostHocReplacement,
    /// Image relation with no caption counterpart.
    UncoveredTarget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleEdit {
    pub kind: EditKind,
    pub source_edge: Option<usize>,
    pub target_edge: Option<usize>,
    pub source_triple: Option<Triple>,
    pub target_triple: Option<Triple>,
    pub cause: RoleCause,
    pub cost: SemanticCost,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RolePlan {
    /// Target node for each caption node, `None` when deleted.
    pub node_matching: Vec<Option<usize>>,
    /// `(source edge, target edge)` pairs that need no edit.
    pub correct_roles: Vec<(usize, usize)>,
    /// Source edges in input order, then inserts in target order.
    pub role_edits: Vec<RoleEdit>,
    /// Node substitutions, deletions and insertions.
    pub node_cost: SemanticCost,
    /// Full edit-path cost: nodes and roles, inserts included.
    pub ged_cost: SemanticCost,
}

impl RolePlan {
    pub fn count(&self, kind: EditKind) -> usize {
        self.role_edits.iter().filter(|e| e.kind == kind).count()
    }

    /// `|D^r| + |R^r|`.
    pub fn hallucinated(&self) -> usize {
        self.count(EditKind::Delete) + self.count(EditKind::Replace)
    }

    /// Edit-path cost without any insertion, node or role.
    pub fn cost_without_inserts(&self, t: &Taxonomy, target: &SceneGraph) -> SemanticCost {
        let mut matched = vec![false; target.nodes.len()];
        for j in self.node_matching.iter().flatten() {
            matched[*j] = true;
        }
        let node_inserts =
            target.nodes.iter().zip(&matched).filter(|(_, m)| !**m).fold(SemanticCost::ZERO, |acc, (c, _)| {
                acc + t.depth(c.synset).map_or(SemanticCost::INFINITE, SemanticCost::new)
            });
        let role_inserts = self.count(EditKind::Insert) as u32 * ROLE_INSERT_COST;
        let total = self.ged_cost.hops().unwrap_or(u32::MAX);
        match node_inserts.hops() {
            Some(n) if total != u32::MAX => SemanticCost::new(total - n - role_inserts),
            _ => SemanticCost::INFINITE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GedConfig {
    /// Add half of the optimal incident-role assignment to each node cost.
    /// With `false` nodes are matched on taxonomy costs alone.
    pub edge_augmented: bool,
}

impl Default for GedConfig {
    fn default() -> Self {
        GedConfig { edge_augmented: true }
    }
}

fn depth_cost(t: &Taxonomy, s: SynsetId) -> SemanticCost {
    t.depth(s).map_or(SemanticCost::INFINITE, SemanticCost::new)
}

/// Resolves nodes and edges for a fixed node matching and prices the result.
pub fn plan_for_matching(
    t: &Taxonomy,
    source: &SceneGraph,
    target: &SceneGraph,
    matching: &[Option<usize>],
) -> RolePlan {
    assert_eq!(matching.len(), source.nodes.len());

    let mut node_cost = SemanticCost::ZERO;
    let mut target_matched = vec![false; target.nodes.len()];
    for (i, m) in matching.iter().enumerate() {
        match m {
            Some(j) => {
                debug_assert!(!target_matched[*j], "matching must be injective");
                target_matched[*j] = true;
                node_cost = node_cost + t.path_cost(source.nodes[i].synset, target.nodes[*j].synset);
            }
            None => node_cost = node_cost + depth_cost(t, source.nodes[i].synset),
        }
    }
    for (j, matched) in target_matched.iter().enumerate() {
        if !matched {
            node_cost = node_cost + depth_cost(t, target.nodes[j].synset);
        }
    }

    let n_src = source.edges.len();
    let mut used = vec![false; target.edges.len()];
    let mut resolved: Vec<Option<RoleEdit>> = vec![None; n_src];
    let mut is_correct = vec![false; n_src];
    let mut correct_roles = Vec::new();
    let mut open = vec![true; n_src];

    let image = |e: &Edge| (matching[e.head], matching[e.tail]);
    let source_triple = |e: usize| Some(source.triple(e));
    let target_triple = |f: usize| Some(target.triple(f));

    // 1. collateral deletions
    for (e, edge) in source.edges.iter().enumerate() {
        if let (Some(_), Some(_)) = image(edge) {
            continue;
        }
        open[e] = false;
        resolved[e] = Some(RoleEdit {
            kind: EditKind::Delete,
            source_edge: Some(e),
            target_edge: None,
            source_triple: source_triple(e),
            target_triple: None,
            cause: RoleCause::Collateral,
            cost: SemanticCost::new(ROLE_DELETE_COST),
        });
    }

    // 2. correct roles
    for (e, edge) in source.edges.iter().enumerate() {
        if !open[e] {
            continue;
        }
        let (h, tl) = image(edge);
        let hit = target.edges.iter().enumerate().position(|(f, g)| {
            !used[f]
                && Some(g.head) == h
                && Some(g.tail) == tl
                && role_substitution_cost(t, &edge.role, &g.role).is_zero()
        });
        if let Some(f) = hit {
            used[f] = true;
            open[e] = false;
            is_correct[e] = true;
            correct_roles.push((e, f));
        }
    }

    // 3. replacements between the same matched objects, cheapest first
    let mut candidates = Vec::new();
    for (e, edge) in source.edges.iter().enumerate() {
        if !open[e] {
            continue;
        }
        let (h, tl) = image(edge);
        for (f, g) in target.edges.iter().enumerate() {
            if !used[f] && Some(g.head) == h && Some(g.tail) == tl {
                candidates.push((role_substitution_cost(t, &edge.role, &g.role), e, f));
            }
        }
    }
    candidates.sort();
    for (c, e, f) in candidates {
        if !open[e] || used[f] {
            continue;
        }
        used[f] = true;
        open[e] = false;
        resolved[e] = Some(RoleEdit {
            kind: EditKind::Replace,
            source_edge: Some(e),
            target_edge: Some(f),
            source_triple: source_triple(e),
            target_triple: target_triple(f),
            cause: RoleCause::PostHocReplacement,
            cost: SemanticCost::new(replace_charge(c)),
        });
    }

    // 4. the same role re-anchored on one different endpoint
    for (e, edge) in source.edges.iter().enumerate() {
        if !open[e] {
            continue;
        }
        let (h, tl) = image(edge);
        let hit = target.edges.iter().enumerate().position(|(f, g)| {
            !used[f]
                && ((Some(g.head) == h) != (Some(g.tail) == tl))
                && role_substitution_cost(t, &edge.role, &g.role).is_zero()
        });
        if let Some(f) = hit {
            used[f] = true;
            open[e] = false;
            resolved[e] = Some(RoleEdit {
                kind: EditKind::Replace,
                source_edge: Some(e),
                target_edge: Some(f),
                source_triple: source_triple(e),
                target_triple: target_triple(f),
                cause: RoleCause::PostHocReplacement,
                cost: SemanticCost::new(ROLE_DELETE_COST + ROLE_INSERT_COST),
            });
        }
    }

    // 5. hallucinated roles
    for e in 0..n_src {
        if open[e] {
            resolved[e] = Some(RoleEdit {
                kind: EditKind::Delete,
                source_edge: Some(e),
                target_edge: None,
                source_triple: source_triple(e),
                target_triple: None,
                cause: RoleCause::HallucinatedRole,
                cost: SemanticCost::new(ROLE_DELETE_COST),
            });
        }
    }

    let mut role_edits: Vec<RoleEdit> = resolved.into_iter().flatten().collect();
    // 6. uncovered image relations
    for (f, was_used) in used.iter().enumerate() {
        if !was_used {
            role_edits.push(RoleEdit {
                kind: EditKind::Insert,
                source_edge: None,
                target_edge: Some(f),
                source_triple: None,
                target_triple: target_triple(f),
                cause: RoleCause::UncoveredTarget,
                cost: SemanticCost::new(ROLE_INSERT_COST),
            });
        }
    }

    let ged_cost = role_edits.iter().fold(node_cost, |acc, r| acc + r.cost);
    RolePlan { node_matching: matching.to_vec(), correct_roles, role_edits, node_cost, ged_cost }
}

/// Optimal assignment cost between the incident roles of two nodes, with
/// direction-preserving substitutions.
fn incident_assignment_cost(t: &Taxonomy, a: &[(Direction, &RoleLabel)], b: &[(Direction, &RoleLabel)]) -> i64 {
    if a.is_empty() || b.is_empty() {
        return (a.len() as i64) * ROLE_DELETE_COST as i64 + (b.len() as i64) * ROLE_INSERT_COST as i64;
    }
    let matrix = edit_matrix(
        a.len(),
        b.len(),
        (ROLE_DELETE_COST + ROLE_INSERT_COST) as i64,
        |i, j| (a[i].0 == b[j].0).then(|| replace_charge(role_substitution_cost(t, a[i].1, b[j].1)) as i64),
        |_| ROLE_DELETE_COST as i64,
        |_| ROLE_INSERT_COST as i64,
    );
    let assignment = crate::assignment::solve(&matrix);
    crate::assignment::total_cost(&matrix, &assignment)
}

/// Approximate graph edit distance.
///
/// Nodes are matched by one linear assignment over the object edit matrix;
/// with `edge_augmented` each entry also carries half the cost of optimally
/// assigning the incident roles (entries are doubled to stay integral).
/// Edges are then resolved against that node matching, and `ged_cost` is
/// the exact cost of the resulting edit path, so it bounds the true graph
/// edit distance from above.
pub fn approx_ged(t: &Taxonomy, source: &SceneGraph, target: &SceneGraph, config: GedConfig) -> RolePlan {
    let (n, m) = (source.nodes.len(), target.nodes.len());
    let depth = |s: SynsetId| i64::from(t.depth(s).unwrap_or(0));
    let src_inc: Vec<_> = (0..n).map(|i| source.incident(i)).collect();
    let tgt_inc: Vec<_> = (0..m).map(|j| target.incident(j)).collect();

    let mut sub = vec![None; n * m];
    for i in 0..n {
        for j in 0..m {
            if let Some(c) = t.path_cost(source.nodes[i].synset, target.nodes[j].synset).hops() {
                let mut v = 2 * i64::from(c);
                if config.edge_augmented {
                    v += incident_assignment_cost(t, &src_inc[i], &tgt_inc[j]);
                }
                sub[i * m + j] = Some(v);
            }
        }
    }
    let del: Vec<i64> = (0..n)
        .map(|i| {
            let edges = if config.edge_augmented { src_inc[i].len() as i64 * ROLE_DELETE_COST as i64 } else { 0 };
            2 * depth(source.nodes[i].synset) + edges
        })
        .collect();
    let ins: Vec<i64> = (0..m)
        .map(|j| {
            let edges = if config.edge_augmented { tgt_inc[j].len() as i64 * ROLE_INSERT_COST as i64 } else { 0 };
            2 * depth(target.nodes[j].synset) + edges
        })
        .collect();
    let bound = sub.iter().flatten().chain(&del).chain(&ins).copied().max().unwrap_or(0);

    let matrix = edit_matrix(n, m, bound, |i, j| sub[i * m + j], |i| del[i], |j| ins[j]);
    let mut matching = vec![None; n];
    for outcome in solve_edit_matrix(n, m, &matrix) {
        if let Match::Pair(i, j) = outcome {
            matching[i] = Some(j);
        }
    }
    plan_for_matching(t, source, target, &matching)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GedError {
    #[error("exact GED refused: {side} graph has {nodes} nodes, limit is {limit}")]
    NodeLimit { side: &'static str, nodes: usize, limit: usize },
}

/// Minimum of [`plan_for_matching`] over every injective partial node
/// matching. Exponential; intended as a test oracle on small graphs.
pub fn exact_ged(
    t: &Taxonomy,
    source: &SceneGraph,
    target: &SceneGraph,
    node_limit: usize,
) -> Result<RolePlan, GedError> {
    for (side, g) in [("caption", source), ("image", target)] {
        if g.nodes.len() > node_limit {
            return Err(GedError::NodeLimit { side, nodes: g.nodes.len(), limit: node_limit });
        }
    }

    struct Search<'a> {
        t: &'a Taxonomy,
        source: &'a SceneGraph,
        target: &'a SceneGraph,
        used: Vec<bool>,
        current: Vec<Option<usize>>,
        best: Option<RolePlan>,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize) {
            if i == self.source.nodes.len() {
                let plan = plan_for_matching(self.t, self.source, self.target, &self.current);
                if self.best.as_ref().is_none_or(|b| plan.ged_cost < b.ged_cost) {
                    self.best = Some(plan);
                }
                return;
            }
            self.current.push(None);
            self.go(i + 1);
            self.current.pop();
            for j in 0..self.target.nodes.len() {
                if !self.used[j] {
                    self.used[j] = true;
                    self.current.push(Some(j));
                    self.go(i + 1);
                    self.current.pop();
                    self.used[j] = false;
                }
            }
        }
    }

    let mut search = Search {
        t,
        source,
        target,
        used: vec![false; target.nodes.len()],
        current: Vec::with_capacity(source.nodes.len()),
        best: None,
    };
    search.go(0);
    Ok(search.best.expect("at least the all-delete matching is enumerated"))
}
