//! Command-line surface: evaluate a dataset, explain one instance, or query
//! the taxonomy.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgAction, Parser, ValueEnum};
use halcece_core::ingest::{MapOptions, Side};
use halcece_core::metrics::{aggregate, evaluate, EvalOptions, Evaluation, MetricRow};
use halcece_core::roles::GedConfig;
use halcece_core::{map_instance, EditKind, MappedInstance, Overrides, Pos, SynsetId, Taxonomy};
use rayon::prelude::*;

use crate::io::{load_dataset, load_overrides, load_taxonomy, Dataset};
use crate::report::{render, write_atomic, Accounting, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Objects,
    Roles,
    Both,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "halcece", version, about = "Explainable hallucination metrics for image captions")]
pub struct Args {
    /// WordNet database directory (data.noun, index.noun, optionally the verb files).
    #[arg(long, env = "HALCECE_WORDNET_DIR", value_name = "DIR")]
    pub wordnet: PathBuf,
    /// JSON-lines dataset of instance records.
    #[arg(long, value_name = "FILE")]
    pub dataset: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    pub mode: Mode,
    /// Collapse repeated object mentions within each side.
    #[arg(long)]
    pub dedupe: bool,
    /// Fail on the first malformed record instead of skipping it.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value_t = Format::JsonLines)]
    pub format: Format,
    /// Report path; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Tab-separated `lemma<TAB>synset` mapping overrides.
    #[arg(long, value_name = "FILE")]
    pub overrides: Option<PathBuf>,
    /// Augment node costs with incident-role assignments when matching scene graphs.
    #[arg(long, value_name = "BOOL", action = ArgAction::Set, default_value_t = true)]
    pub edge_augmented_ged: bool,
    /// Print the edit trace of one instance instead of evaluating.
    #[arg(long, value_name = "ID", conflicts_with = "taxonomy")]
    pub explain: Option<String>,
    /// Print path, LCA and Wu-Palmer similarity for two lemmas. Nouns are
    /// tried before verbs; prefix a lemma with `n:` or `v:` to choose.
    #[arg(long, value_name = "LEMMA1,LEMMA2", value_delimiter = ',')]
    pub taxonomy: Option<Vec<String>>,
}

/// Exit status and message of a failed command.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn config(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

impl Args {
    fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            objects: self.mode != Mode::Roles,
            roles: self.mode != Mode::Objects,
            ged: GedConfig { edge_augmented: self.edge_augmented_ged },
        }
    }
}

/// Runs the command and returns the process exit code. Reports go to `out`,
/// warnings and accounting to `err`.
pub fn run(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = load_taxonomy(&args.wordnet).map_err(|e| config(e.to_string())).and_then(|t| {
        if let Some(pair) = &args.taxonomy {
            cmd_taxonomy(&t, pair, out)
        } else if let Some(id) = &args.explain {
            cmd_explain(&t, args, id, out, err)
        } else {
            cmd_evaluate(&t, args, out, err)
        }
    });
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

struct Inputs {
    dataset: Dataset,
    overrides: Overrides,
}

fn load_inputs(t: &Taxonomy, args: &Args, err: &mut dyn Write) -> Result<Inputs, Failure> {
    let path = args.dataset.as_ref().ok_or_else(|| config("--dataset is required"))?;
    let dataset = load_dataset(path).map_err(|e| config(e.to_string()))?;
    let overrides = match &args.overrides {
        Some(p) => load_overrides(p, t).map_err(|e| config(e.to_string()))?,
        None => Overrides::new(),
    };
    for issue in &dataset.issues {
        let id = issue.id.as_deref().map(|i| format!(" (`{i}`)")).unwrap_or_default();
        let severity = if args.strict { "error" } else { "warning" };
        let _ = writeln!(err, "{severity}: {}:{}{id}: {}", path.display(), issue.line, issue.message);
    }
    if args.strict && !dataset.issues.is_empty() {
        return Err(config(format!("{} malformed record(s) in strict mode", dataset.issues.len())));
    }
    Ok(Inputs { dataset, overrides })
}

/// Maps and evaluates every record, ordered by id.
pub fn evaluate_all(
    t: &Taxonomy,
    dataset: &Dataset,
    overrides: &Overrides,
    dedupe: bool,
    options: EvalOptions,
) -> Vec<(MappedInstance, Evaluation)> {
    let mut done: Vec<_> = dataset
        .records
        .par_iter()
        .map(|r| {
            let m = map_instance(t, r, overrides, MapOptions { dedupe });
            let e = evaluate(t, &m, options);
            (m, e)
        })
        .collect();
    done.sort_by(|a, b| a.0.id.cmp(&b.0.id));
    done
}

pub fn cmd_evaluate(t: &Taxonomy, args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let inputs = load_inputs(t, args, err)?;
    let evaluated = evaluate_all(t, &inputs.dataset, &inputs.overrides, args.dedupe, args.eval_options());
    let rows: Vec<MetricRow> = evaluated.iter().map(|(_, e)| e.report.to_row()).collect();
    let agg = aggregate(&rows).map_err(|e| config(e.to_string()))?;

    let mut accounting = Accounting { skipped_records: inputs.dataset.issues.len(), ..Accounting::default() };
    for (m, _) in &evaluated {
        accounting.unmapped_caption_objects += m.unmapped_on(Side::Caption);
        accounting.unmapped_image_objects += m.unmapped_on(Side::Image);
        accounting.dropped_triples += m.dropped_triples.len();
        accounting.collapsed_duplicates += m.collapsed.iter().sum::<usize>();
    }

    let bytes = render(&rows, &agg, &accounting, args.format);
    match &args.out {
        Some(path) => {
            write_atomic(path, &bytes).map_err(|e| config(format!("cannot write {}: {e}", path.display())))?
        }
        None => out.write_all(&bytes).map_err(|e| config(e.to_string()))?,
    }

    let _ = writeln!(
        err,
        "evaluated {} instance(s), skipped {} record(s); unmapped objects: {} caption, {} image; \
         dropped triples: {}; collapsed duplicates: {}",
        agg.instances,
        accounting.skipped_records,
        accounting.unmapped_caption_objects,
        accounting.unmapped_image_objects,
        accounting.dropped_triples,
        accounting.collapsed_duplicates,
    );
    let excluded: Vec<String> =
        agg.metrics.iter().filter(|m| m.excluded > 0).map(|m| format!("{}={}", m.name, m.excluded)).collect();
    if !excluded.is_empty() {
        let _ = writeln!(err, "excluded from means: {}", excluded.join(", "));
    }
    Ok(())
}

fn describe(t: &Taxonomy, id: SynsetId) -> String {
    let lemma = t.synset(id).map_or("?", |s| s.head_lemma());
    format!("{id} ({lemma})")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.3}"))
}

fn triple_text(t: &Option<[String; 3]>) -> String {
    t.as_ref().map_or_else(String::new, |[h, r, tl]| format!("({h}, {r}, {tl})"))
}

pub fn cmd_explain(
    t: &Taxonomy,
    args: &Args,
    id: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let inputs = load_inputs(t, args, err)?;
    let record = inputs
        .dataset
        .records
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| config(format!("unknown instance id `{id}`")))?;
    let m = map_instance(t, record, &inputs.overrides, MapOptions { dedupe: args.dedupe });
    let e = evaluate(t, &m, args.eval_options());
    let text = explain_text(t, &m, &e);
    out.write_all(text.as_bytes()).map_err(|e| config(e.to_string()))
}

/// Human-readable edit trace of one evaluated instance.
pub fn explain_text(t: &Taxonomy, m: &MappedInstance, e: &Evaluation) -> String {
    let (s, g) = (&m.caption_graph, &m.image_graph);
    let surfaces = |nodes: &[halcece_core::ingest::Concept]| {
        nodes.iter().map(|c| c.surface.as_str()).collect::<Vec<_>>().join(", ")
    };
    let mut w = String::new();
    let _ = writeln!(w, "instance {}", m.id);
    let _ = writeln!(w, "caption objects (S): {}", surfaces(&s.nodes));
    let _ = writeln!(w, "image objects (T): {}", surfaces(&g.nodes));
    for u in &m.unmapped {
        let _ = writeln!(w, "unmapped {} object: {}", u.side.as_str(), u.lemma);
    }
    for d in &m.dropped_triples {
        let _ =
            writeln!(w, "dropped {} triple {}: {:?}", d.side.as_str(), triple_text(&Some(d.triple.clone())), d.reason);
    }

    if let (Some(plan), Some(stats)) = (&e.object_plan, &e.report.objects) {
        let _ = writeln!(w, "object edits:");
        for edit in &plan.edits {
            let src = edit.source.map(|x| s.nodes[x.index].surface.as_str());
            let tgt = edit.target.map(|x| g.nodes[x.index].surface.as_str());
            let what = match (src, tgt) {
                (Some(a), Some(b)) => format!("{a} -> {b}"),
                (Some(a), None) => a.to_string(),
                (None, Some(b)) => b.to_string(),
                (None, None) => unreachable!("an edit touches at least one side"),
            };
            let mut line = format!("  {:<7} {:<28} cost {}", edit.phenomenon.code(), what, edit.cost);
            if edit.kind == EditKind::Replace && edit.phenomenon.is_hallucination() {
                if let Some(wup) = t.wu_palmer(edit.source.unwrap().synset, edit.target.unwrap().synset) {
                    let _ = write!(line, "  wup {wup:.3}");
                }
            }
            let _ = writeln!(w, "{}", line.trim_end());
        }
        let _ = writeln!(
            w,
            "{} hallucinated of {} objects (HalRate {}, granularity {})",
            stats.hal,
            stats.n_objects,
            fmt_opt(stats.hal_rate),
            fmt_opt(stats.granularity)
        );
    }

    if let (Some(plan), Some(stats)) = (&e.role_plan, &e.report.roles) {
        let _ = writeln!(w, "role edits:");
        for (a, _) in &plan.correct_roles {
            let _ = writeln!(w, "  Correct {}", triple_text(&Some(s.triple(*a))));
        }
        for edit in &plan.role_edits {
            let code = match edit.kind {
                EditKind::Replace => "R",
                EditKind::Delete => "D",
                EditKind::Insert => "I",
            };
            let what = match edit.kind {
                EditKind::Replace => {
                    format!("{} -> {}", triple_text(&edit.source_triple), triple_text(&edit.target_triple))
                }
                EditKind::Delete => triple_text(&edit.source_triple),
                EditKind::Insert => triple_text(&edit.target_triple),
            };
            let cause = serde_json::to_value(edit.cause).ok().and_then(|v| v.as_str().map(String::from));
            let _ = writeln!(w, "  {code:<7} {what}  [{}] cost {}", cause.unwrap_or_default(), edit.cost);
        }
        let _ = writeln!(
            w,
            "{} hallucinated of {} roles (HalRate {}, granularity {}), edit path cost {}",
            stats.hal,
            stats.n_roles,
            fmt_opt(stats.hal_rate),
            fmt_opt(stats.granularity),
            plan.ged_cost
        );
    }
    w
}

pub fn cmd_taxonomy(t: &Taxonomy, pair: &[String], out: &mut dyn Write) -> Result<(), Failure> {
    let [a, b] = pair else {
        return Err(config("--taxonomy takes exactly two comma-separated lemmas"));
    };
    let map = |l: &str| match l.split_once(':') {
        Some(("n", rest)) => t.map_lemma(rest, Pos::Noun),
        Some(("v", rest)) => t.map_lemma(rest, Pos::Verb),
        _ => t.map_lemma(l, Pos::Noun).or_else(|| t.map_lemma(l, Pos::Verb)),
    };
    let unmapped: Vec<&str> = [a, b].into_iter().filter(|l| map(l).is_none()).map(String::as_str).collect();
    if !unmapped.is_empty() {
        return Err(Failure { code: 1, message: format!("unmapped lemma(s): {}", unmapped.join(", ")) });
    }
    let (x, y) = (map(a).unwrap(), map(b).unwrap());
    if x.pos() != y.pos() {
        return Err(config(format!("`{a}` and `{b}` map to different parts of speech")));
    }
    let mut w = String::new();
    for (lemma, id) in [(a, x), (b, y)] {
        let depth = t.depth(id).map_or_else(|| "n/a".into(), |d| d.to_string());
        let _ = writeln!(w, "{lemma:<10} {}  depth {depth}", describe(t, id));
    }
    let _ = writeln!(w, "path       {}", t.path_cost(x, y));
    let _ = writeln!(w, "lca        {}", t.lca(x, y).map_or_else(|| "none".into(), |l| describe(t, l)));
    let _ = writeln!(w, "wu-palmer  {}", t.wu_palmer(x, y).map_or_else(|| "n/a".into(), |v| format!("{v:.6}")));
    let note = if x == y {
        format!("{a} and {b} are the same concept")
    } else if t.subsumes(y, x) {
        format!("{a} is more specific than {b}: captioning {a} for {b} is over-specialization (O)")
    } else if t.subsumes(x, y) {
        format!("{a} is more generic than {b}: captioning {a} for {b} is under-specialization (U)")
    } else {
        format!("neither subsumes the other: {a} for {b} is a replacement (R)")
    };
    let _ = writeln!(w, "note       {note}");
    out.write_all(w.as_bytes()).map_err(|e| config(e.to_string()))
}
