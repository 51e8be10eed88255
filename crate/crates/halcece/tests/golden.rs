//! Worked examples pinned by the files under `fixtures/golden/`.

mod common;

use halcece_core::ingest::MapOptions;
use halcece_core::metrics::{evaluate, EvalOptions};
use halcece_core::{map_instance, EditKind, InstanceRecord, Overrides, Phenomenon, RoleCause};
use serde::Deserialize;

#[derive(Deserialize)]
struct ObjectEdit {
    phenomenon: Phenomenon,
    source: Option<String>,
    target: Option<String>,
}

#[derive(Deserialize)]
struct RoleEdit {
    kind: EditKind,
    source: Option<[String; 3]>,
    target: Option<[String; 3]>,
    cause: RoleCause,
}

#[derive(Deserialize)]
struct Golden {
    instance: InstanceRecord,
    expected_object_edits: Option<Vec<ObjectEdit>>,
    expected_role_edits: Vec<RoleEdit>,
}

fn check(name: &str) {
    let path = common::fixtures().join("golden").join(format!("{name}.json"));
    let golden: Golden = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let t = common::scenes();
    let m = map_instance(t, &golden.instance, &Overrides::new(), MapOptions::default());
    assert!(m.unmapped.is_empty() && m.dropped_triples.is_empty(), "{name}: fixture must map fully");
    let e = evaluate(t, &m, EvalOptions::default());

    let role_plan = e.role_plan.unwrap();
    let got: Vec<_> = role_plan
        .role_edits
        .iter()
        .map(|r| (r.kind, r.source_triple.clone(), r.target_triple.clone(), r.cause))
        .collect();
    let want: Vec<_> = golden.expected_role_edits.into_iter().map(|r| (r.kind, r.source, r.target, r.cause)).collect();
    assert_eq!(got, want, "{name}: role edits");

    if let Some(expected) = golden.expected_object_edits {
        let plan = e.object_plan.unwrap();
        let (s, g) = (&m.caption_graph.nodes, &m.image_graph.nodes);
        let got: Vec<_> = plan
            .edits
            .iter()
            .filter(|x| x.phenomenon != Phenomenon::Correct)
            .map(|x| {
                (
                    x.phenomenon,
                    x.source.map(|i| s[i.index].surface.clone()),
                    x.target.map(|i| g[i.index].surface.clone()),
                )
            })
            .collect();
        let want: Vec<_> = expected.into_iter().map(|x| (x.phenomenon, x.source, x.target)).collect();
        assert_eq!(got, want, "{name}: object edits");
    }
}

#[test]
fn figure1_role_edits() {
    check("figure1");
}

#[test]
fn figure2_object_phenomena() {
    check("figure2");
}

#[test]
fn figure3_collateral_and_replacement() {
    check("figure3");
}
