//! Object-level edit plans.
//!
//! The caption concepts `S` are transformed into the image concepts `T` by an
//! optimal assignment over the square matrix
//!
//! ```text
//!            T (m)          deletions (n)
//! S (n)   [ substitution | diag(delete)  ]
//! dummy   [ diag(insert) | 0             ]
//!   (m)
//! ```
//!
//! with off-diagonal entries of the deletion and insertion blocks set to a
//! sentinel larger than any feasible plan. Substitution costs are taxonomy
//! distances; deleting or inserting a concept costs its depth, the distance
//! to the root.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::assignment::{self, CostMatrix};
use crate::cost::SemanticCost;
use crate::taxonomy::{SynsetId, Taxonomy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EditKind {
    Replace,
    Delete,
    Insert,
}

/// Classification of one edit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Phenomenon {
    /// Zero-cost match: the caption concept is in the image.
    Correct,
    /// Replacement by an unrelated concept (neither subsumes the other).
    #[serde(rename = "R")]
    Replacement,
    /// The caption concept is more specific than the image concept.
    #[serde(rename = "O")]
    OverSpecialization,
    /// The caption concept is more generic than the image concept.
    #[serde(rename = "U")]
    UnderSpecialization,
    #[serde(rename = "D")]
    Deletion,
    #[serde(rename = "I")]
    Insertion,
}

impl Phenomenon {
    pub fn code(self) -> &'static str {
        match self {
            Phenomenon::Correct => "Correct",
            Phenomenon::Replacement => "R",
            Phenomenon::OverSpecialization => "O",
            Phenomenon::UnderSpecialization => "U",
            Phenomenon::Deletion => "D",
            Phenomenon::Insertion => "I",
        }
    }

    /// D, R and O count as hallucinations; U, I and Correct do not.
    pub fn is_hallucination(self) -> bool {
        matches!(self, Phenomenon::Deletion | Phenomenon::Replacement | Phenomenon::OverSpecialization)
    }
}

/// One side of an edit: position in the input multiset and its synset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub index: usize,
    pub synset: SynsetId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edit {
    pub kind: EditKind,
    pub source: Option<Slot>,
    pub target: Option<Slot>,
    pub cost: SemanticCost,
    pub phenomenon: Phenomenon,
}

/// A complete object-level plan: one edit per source concept followed by one
/// insert per uncovered target concept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditPlan {
    pub edits: Vec<Edit>,
    /// Replace and delete costs. Inserts are suggestions and excluded.
    pub total_cost: SemanticCost,
    /// Sum of insert costs, kept apart from `total_cost`.
    pub insert_cost: SemanticCost,
}

impl EditPlan {
    /// `(source index, target index)` for every replace-kind edit, including
    /// correct matches.
    pub fn matched_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edits.iter().filter_map(|e| match (e.kind, e.source, e.target) {
            (EditKind::Replace, Some(s), Some(t)) => Some((s.index, t.index)),
            _ => None,
        })
    }

    pub fn insert_suggestions(&self) -> impl Iterator<Item = &Edit> + '_ {
        self.edits.iter().filter(|e| e.kind == EditKind::Insert)
    }

    pub fn count(&self, phenomenon: Phenomenon) -> usize {
        self.edits.iter().filter(|e| e.phenomenon == phenomenon).count()
    }

    /// `|D| + |R| + |O|`.
    pub fn hallucinated(&self) -> usize {
        self.edits.iter().filter(|e| e.phenomenon.is_hallucination()).count()
    }

    /// Cost of the full transformation, inserts included.
    pub fn cost_with_inserts(&self) -> SemanticCost {
        self.total_cost + self.insert_cost
    }
}

pub fn substitution_cost(t: &Taxonomy, source: SynsetId, target: SynsetId) -> SemanticCost {
    t.path_cost(source, target)
}

/// Distance from the concept to the root.
pub fn deletion_cost(t: &Taxonomy, source: SynsetId) -> SemanticCost {
    t.depth(source).map_or(SemanticCost::INFINITE, SemanticCost::new)
}

pub fn insertion_cost(t: &Taxonomy, target: SynsetId) -> SemanticCost {
    deletion_cost(t, target)
}

/// O when the image concept subsumes the caption concept, U in the reverse
/// direction, R otherwise. Identical synsets are `Correct`.
pub fn classify_pair(t: &Taxonomy, source: SynsetId, target: SynsetId) -> Phenomenon {
    if source == target {
        return Phenomenon::Correct;
    }
    match t.lca(source, target) {
        Some(l) if l == target => Phenomenon::OverSpecialization,
        Some(l) if l == source => Phenomenon::UnderSpecialization,
        _ => Phenomenon::Replacement,
    }
}

/// Outcome of one row of a decoded square assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Match {
    Pair(usize, usize),
    Delete(usize),
    Insert(usize),
}

/// Builds the `(n+m)²` edit matrix. `bound` must be at least every finite
/// entry; `None` substitution costs become the sentinel.
pub(crate) fn edit_matrix(
    n: usize,
    m: usize,
    bound: i64,
    substitute: impl Fn(usize, usize) -> Option<i64>,
    delete: impl Fn(usize) -> i64,
    insert: impl Fn(usize) -> i64,
) -> CostMatrix {
    let size = n + m;
    let sentinel = (size as i64).max(1) * bound.max(1) + 1;
    let mut matrix = CostMatrix::filled(size, sentinel);
    for i in 0..n {
        for j in 0..m {
            if let Some(c) = substitute(i, j) {
                matrix.set(i, j, c);
            }
        }
        matrix.set(i, m + i, delete(i));
    }
    for j in 0..m {
        matrix.set(n + j, j, insert(j));
        for k in 0..n {
            matrix.set(n + j, m + k, 0);
        }
    }
    matrix
}

/// Solves an edit matrix built by [`edit_matrix`] and lists source rows
/// first, then inserts in target order.
pub(crate) fn solve_edit_matrix(n: usize, m: usize, matrix: &CostMatrix) -> Vec<Match> {
    let assignment = assignment::solve(matrix);
    let mut out = Vec::with_capacity(n + m);
    for (i, &col) in assignment.iter().enumerate().take(n) {
        if col < m {
            out.push(Match::Pair(i, col));
        } else {
            debug_assert_eq!(col, m + i, "deletion must use the diagonal");
            out.push(Match::Delete(i));
        }
    }
    let mut inserted: Vec<usize> = assignment[n..].iter().copied().filter(|&c| c < m).collect();
    inserted.sort_unstable();
    out.extend(inserted.into_iter().map(Match::Insert));
    out
}

/// Minimum-cost edit plan transforming `source` (S) into `target` (T).
///
/// The assignment minimizes replace + delete + insert cost; the reported
/// `total_cost` leaves inserts out. Among equal-cost plans the solver's
/// row-scan order decides.
pub fn object_edit_plan(t: &Taxonomy, source: &[SynsetId], target: &[SynsetId]) -> EditPlan {
    let (n, m) = (source.len(), target.len());
    let depth = |s: SynsetId| t.depth(s).unwrap_or(0) as i64;
    let max_depth = source.iter().chain(target).map(|&s| depth(s)).max().unwrap_or(0);
    let matrix = edit_matrix(
        n,
        m,
        2 * max_depth,
        |i, j| t.path_cost(source[i], target[j]).hops().map(i64::from),
        |i| depth(source[i]),
        |j| depth(target[j]),
    );

    let mut edits = Vec::with_capacity(n + m);
    let mut total_cost = SemanticCost::ZERO;
    let mut insert_cost = SemanticCost::ZERO;
    for outcome in solve_edit_matrix(n, m, &matrix) {
        let edit = match outcome {
            Match::Pair(i, j) => {
                let cost = substitution_cost(t, source[i], target[j]);
                Edit {
                    kind: EditKind::Replace,
                    source: Some(Slot { index: i, synset: source[i] }),
                    target: Some(Slot { index: j, synset: target[j] }),
                    cost,
                    phenomenon: classify_pair(t, source[i], target[j]),
                }
            }
            Match::Delete(i) => Edit {
                kind: EditKind::Delete,
                source: Some(Slot { index: i, synset: source[i] }),
                target: None,
                cost: deletion_cost(t, source[i]),
                phenomenon: Phenomenon::Deletion,
            },
            Match::Insert(j) => Edit {
                kind: EditKind::Insert,
                source: None,
                target: Some(Slot { index: j, synset: target[j] }),
                cost: insertion_cost(t, target[j]),
                phenomenon: Phenomenon::Insertion,
            },
        };
        if edit.kind == EditKind::Insert {
            insert_cost = insert_cost + edit.cost;
        } else {
            total_cost = total_cost + edit.cost;
        }
        edits.push(edit);
    }
    EditPlan { edits, total_cost, insert_cost }
}
