//! Per-instance reports.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{chair_i, mean, text};
use crate::ingest::{Concept, MappedInstance};
use crate::objects::{object_edit_plan, EditKind, EditPlan, Phenomenon};
use crate::roles::{approx_ged, GedConfig, RolePlan, SceneGraph};
use crate::taxonomy::Taxonomy;

pub const OBJECT_COLUMNS: [&str; 18] = [
    "n_objects",
    "n_image_objects",
    "n_ancestors",
    "correct",
    "d",
    "r",
    "o",
    "u",
    "i",
    "hal",
    "hal_rate",
    "d_rate",
    "r_rate",
    "o_rate",
    "u_rate",
    "granularity",
    "wup_r",
    "chair_i",
];

pub const ROLE_COLUMNS: [&str; 11] = [
    "n_roles",
    "n_image_roles",
    "role_correct",
    "role_d",
    "role_r",
    "role_i",
    "role_hal",
    "role_hal_rate",
    "role_d_rate",
    "role_r_rate",
    "role_granularity",
];

pub const TEXT_COLUMNS: [&str; 6] = ["rouge1", "rouge2", "rougeL", "rougeLsum", "bleu", "google_bleu"];

fn ratio(count: usize, total: usize) -> Option<f64> {
    (total > 0).then(|| count as f64 / total as f64)
}

fn coverage(inserts: usize, total: usize) -> Option<f64> {
    ratio(inserts, total).map(|r| 1.0 - r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectStats {
    pub n_objects: usize,
    pub n_image_objects: usize,
    /// Sum of hypernym closure sizes over the caption concepts.
    pub n_ancestors: usize,
    pub correct: usize,
    pub d: usize,
    pub r: usize,
    pub o: usize,
    pub u: usize,
    pub i: usize,
    pub hal: usize,
    pub hal_rate: Option<f64>,
    pub d_rate: Option<f64>,
    pub r_rate: Option<f64>,
    pub o_rate: Option<f64>,
    pub u_rate: Option<f64>,
    pub granularity: Option<f64>,
    /// Mean Wu-Palmer similarity over R pairs.
    pub wup_r: Option<f64>,
    pub chair_i: Option<f64>,
}

impl ObjectStats {
    pub fn values(&self) -> [Option<f64>; 18] {
        let c = |v: usize| Some(v as f64);
        [
            c(self.n_objects),
            c(self.n_image_objects),
            c(self.n_ancestors),
            c(self.correct),
            c(self.d),
            c(self.r),
            c(self.o),
            c(self.u),
            c(self.i),
            c(self.hal),
            self.hal_rate,
            self.d_rate,
            self.r_rate,
            self.o_rate,
            self.u_rate,
            self.granularity,
            self.wup_r,
            self.chair_i,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoleStats {
    pub n_roles: usize,
    pub n_image_roles: usize,
    pub correct: usize,
    pub d: usize,
    pub r: usize,
    pub i: usize,
    pub hal: usize,
    pub hal_rate: Option<f64>,
    pub d_rate: Option<f64>,
    pub r_rate: Option<f64>,
    pub granularity: Option<f64>,
}

impl RoleStats {
    pub fn values(&self) -> [Option<f64>; 11] {
        let c = |v: usize| Some(v as f64);
        [
            c(self.n_roles),
            c(self.n_image_roles),
            c(self.correct),
            c(self.d),
            c(self.r),
            c(self.i),
            c(self.hal),
            self.hal_rate,
            self.d_rate,
            self.r_rate,
            self.granularity,
        ]
    }
}

/// Scores averaged over the references.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextStats {
    pub rouge1: f64,
    pub rouge2: f64,
    pub rouge_l: f64,
    pub rouge_lsum: f64,
    pub bleu: f64,
    pub google_bleu: f64,
}

impl TextStats {
    /// `None` without references.
    pub fn compute(candidate: &str, references: &[String]) -> Option<Self> {
        if references.is_empty() {
            return None;
        }
        let avg = |f: &dyn Fn(&str) -> f64| {
            let scores: Vec<f64> = references.iter().map(|r| f(r)).collect();
            mean(&scores).unwrap_or(0.0)
        };
        let refs: Vec<&str> = references.iter().map(String::as_str).collect();
        Some(TextStats {
            rouge1: avg(&|r| text::rouge_n(candidate, r, 1)),
            rouge2: avg(&|r| text::rouge_n(candidate, r, 2)),
            rouge_l: avg(&|r| text::rouge_l(candidate, r)),
            rouge_lsum: avg(&|r| text::rouge_lsum(candidate, r)),
            bleu: text::bleu(candidate, &refs),
            google_bleu: text::google_bleu(candidate, &refs),
        })
    }

    pub fn values(&self) -> [Option<f64>; 6] {
        [
            Some(self.rouge1),
            Some(self.rouge2),
            Some(self.rouge_l),
            Some(self.rouge_lsum),
            Some(self.bleu),
            Some(self.google_bleu),
        ]
    }
}

/// Object statistics of `plan`, which must have been computed from the
/// synsets of `source` and `target`.
pub fn object_report(t: &Taxonomy, plan: &EditPlan, source: &[Concept], target: &[Concept]) -> ObjectStats {
    let n = source.len();
    let count = |p| plan.count(p);
    let (d, r, o, u, i) = (
        count(Phenomenon::Deletion),
        count(Phenomenon::Replacement),
        count(Phenomenon::OverSpecialization),
        count(Phenomenon::UnderSpecialization),
        count(Phenomenon::Insertion),
    );
    let hal = d + r + o;
    let wups: Vec<f64> = plan
        .edits
        .iter()
        .filter(|e| e.phenomenon == Phenomenon::Replacement)
        .filter_map(|e| t.wu_palmer(e.source?.synset, e.target?.synset))
        .collect();
    let predicted: Vec<&str> = source.iter().map(|c| c.surface.as_str()).collect();
    let hallucinated: Vec<&str> = plan
        .edits
        .iter()
        .filter(|e| e.phenomenon.is_hallucination())
        .filter_map(|e| e.source)
        .map(|s| source[s.index].surface.as_str())
        .collect();
    ObjectStats {
        n_objects: n,
        n_image_objects: target.len(),
        n_ancestors: source.iter().map(|c| t.ancestor_count(c.synset)).sum(),
        correct: count(Phenomenon::Correct),
        d,
        r,
        o,
        u,
        i,
        hal,
        hal_rate: ratio(hal, n),
        d_rate: ratio(d, n),
        r_rate: ratio(r, n),
        o_rate: ratio(o, n),
        u_rate: ratio(u, n),
        granularity: coverage(i, target.len()),
        wup_r: mean(&wups),
        chair_i: chair_i(&predicted, &hallucinated),
    }
}

/// Role statistics of `plan`, computed between `source` and `target`.
/// Over- and under-specialization do not apply to roles.
pub fn role_report(plan: &RolePlan, source: &SceneGraph, target: &SceneGraph) -> RoleStats {
    let n = source.edges.len();
    let d = plan.count(EditKind::Delete);
    let r = plan.count(EditKind::Replace);
    let i = plan.count(EditKind::Insert);
    RoleStats {
        n_roles: n,
        n_image_roles: target.edges.len(),
        correct: plan.correct_roles.len(),
        d,
        r,
        i,
        hal: d + r,
        hal_rate: ratio(d + r, n),
        d_rate: ratio(d, n),
        r_rate: ratio(r, n),
        granularity: coverage(i, target.edges.len()),
    }
}

/// One named row of optional values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub id: String,
    pub values: Vec<(String, Option<f64>)>,
}

impl MetricRow {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(k, _)| k == name).and_then(|(_, v)| *v)
    }

    pub fn has(&self, name: &str) -> bool {
        self.values.iter().any(|(k, _)| k == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.values.iter().map(|(k, _)| k.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub id: String,
    pub objects: Option<ObjectStats>,
    pub roles: Option<RoleStats>,
    pub text: Option<TextStats>,
}

impl InstanceReport {
    /// Object and role columns appear when computed; text columns always
    /// appear and are absent-valued without references.
    pub fn to_row(&self) -> MetricRow {
        let mut values = Vec::new();
        let mut push = |names: &[&str], vals: &[Option<f64>]| {
            values.extend(names.iter().zip(vals).map(|(k, v)| (String::from(*k), *v)));
        };
        if let Some(o) = &self.objects {
            push(&OBJECT_COLUMNS, &o.values());
        }
        if let Some(r) = &self.roles {
            push(&ROLE_COLUMNS, &r.values());
        }
        push(&TEXT_COLUMNS, &self.text.as_ref().map_or([None; 6], TextStats::values));
        MetricRow { id: self.id.clone(), values }
    }
}

/// Plans and report for one mapped instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub report: InstanceReport,
    pub object_plan: Option<EditPlan>,
    pub role_plan: Option<RolePlan>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    pub objects: bool,
    pub roles: bool,
    pub ged: GedConfig,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { objects: true, roles: true, ged: GedConfig::default() }
    }
}

pub fn evaluate(t: &Taxonomy, instance: &MappedInstance, options: EvalOptions) -> Evaluation {
    let (s, g) = (&instance.caption_graph, &instance.image_graph);
    let object_plan = options.objects.then(|| object_edit_plan(t, &s.synsets(), &g.synsets()));
    let role_plan = options.roles.then(|| approx_ged(t, s, g, options.ged));
    let text = instance.caption_text.as_deref().and_then(|c| TextStats::compute(c, &instance.reference_captions));
    let report = InstanceReport {
        id: instance.id.clone(),
        objects: object_plan.as_ref().map(|p| object_report(t, p, &s.nodes, &g.nodes)),
        roles: role_plan.as_ref().map(|p| role_report(p, s, g)),
        text,
    };
    Evaluation { report, object_plan, role_plan }
}
