mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use serde_json::json;
use ssu_core::analysis::{
    analyze, check_entrances, check_g_cofinality, check_paths_moved, cycle_infinite_path,
    find_g_cycles, fixed_point_cycle, fixed_points, fixes_all_paths, has_entrance,
    has_entrance_literal, interior_scan, is_g_cycle, no_ultrafilter_check,
    strongly_fixed_prefix_check, FixClass, GCycle, Simplicity,
};
use ssu_core::filters::TightFilter;
use ssu_core::{Bounds, Document, Evidence, GroupElem, Path, Status, System};

use common::{elem, ex53, system};

fn trivial_group(vertices: &[&str], edges: serde_json::Value) -> System {
    let doc = json!({
        "universe": {"kind": "finite", "vertices": vertices},
        "edges": edges,
        "group": {"kind": "finite_table", "elements": ["1"], "table": [["1"]]},
        "action": "trivial",
        "cocycle": "trivial"
    });
    Document::from_json(&doc.to_string())
        .unwrap()
        .build()
        .unwrap()
}

fn single_loop() -> System {
    trivial_group(
        &["v"],
        json!([{"id": "e", "range": "v", "source": "FIN{v}"}]),
    )
}

fn two_loops() -> System {
    trivial_group(
        &["u", "v"],
        json!([
            {"id": "a", "range": "u", "source": "FIN{u}"},
            {"id": "b", "range": "v", "source": "FIN{v}"}
        ]),
    )
}

fn bounds(n: usize) -> Bounds {
    Bounds {
        max_path_len: n,
        group_ball_radius: n,
        lasso_bound: n,
        state_bound: 64,
    }
}

fn cycle(sys: &System, g: &str, path: &str) -> GCycle {
    GCycle {
        g: sys.group().parse(g).unwrap(),
        path: sys.graph().parse_path(path).unwrap(),
    }
}

fn cycle_names(sys: &System, cs: &[GCycle]) -> Vec<String> {
    cs.iter()
        .map(|c| format!("({}, {})", sys.format_group(c.g), sys.format_path(&c.path)))
        .collect()
}

#[test]
fn g_cycles_of_the_swap() {
    let sys = system("ex5.2");
    let cs = find_g_cycles(&sys, &bounds(2)).unwrap();
    let len1: Vec<GCycle> = cs.iter().filter(|c| c.path.len() == 1).cloned().collect();
    assert_eq!(
        cycle_names(&sys, &len1),
        ["(0, e)", "(0, f)", "(1, e)", "(1, f)"]
    );
    // every path into {v, w} closes up, so all 2 · (2 + 4) pairs are G-cycles
    assert_eq!(cs.len(), 12);
}

#[test]
fn g_cycle_predicate() {
    let sys = system("ex5.3-trivial");
    assert!(is_g_cycle(
        &sys,
        GroupElem(1),
        &sys.graph().parse_path("e0").unwrap()
    ));
    assert!(!is_g_cycle(
        &sys,
        GroupElem(0),
        &sys.graph().parse_path("f").unwrap()
    ));
    assert!(!is_g_cycle(&sys, GroupElem(0), &Path::omega()));
    let sys = system("ex5.1");
    // g·r(e_0) = {v_g} lies in s(e_0) exactly when g > 0
    assert!(is_g_cycle(
        &sys,
        GroupElem(1),
        &sys.graph().parse_path("e_0").unwrap()
    ));
    assert!(!is_g_cycle(
        &sys,
        GroupElem(0),
        &sys.graph().parse_path("e_0").unwrap()
    ));
    assert!(!is_g_cycle(
        &sys,
        GroupElem(-2),
        &sys.graph().parse_path("e_0").unwrap()
    ));
}

#[test]
fn entrances() {
    let sys = single_loop();
    let c = cycle(&sys, "1", "e");
    assert!(!has_entrance(&sys, &c));
    assert!(!has_entrance_literal(&sys, &c));
    assert_eq!(check_entrances(&sys, &bounds(3)).status, Status::Fails);
    let sys = system("ex5.2");
    for c in find_g_cycles(&sys, &bounds(3)).unwrap() {
        assert!(has_entrance(&sys, &c));
    }
    assert_eq!(check_entrances(&sys, &bounds(3)).status, Status::Holds);
}

#[test]
fn infinite_paths_of_cycles() {
    let sys = system("ex5.2");
    let b = bounds(4);
    let show = |g: &str, p: &str| {
        sys.format_lasso(&cycle_infinite_path(&sys, &cycle(&sys, g, p), &b).unwrap())
    };
    assert_eq!(show("0", "e"), "/e");
    assert_eq!(show("1", "e"), "/e.f");
    assert_eq!(show("1", "e.e"), "/e.e.f.f");
    let sys = ex53(3, -3);
    let c = GCycle {
        g: GroupElem(1),
        path: sys.graph().parse_path("e0").unwrap(),
    };
    // the states run 1, 3, -3, 3, -3, ... and the blocks alternate e0, e1
    assert_eq!(
        sys.format_lasso(&cycle_infinite_path(&sys, &c, &b).unwrap()),
        "/e0.e1"
    );
}

#[test]
fn cofinality() {
    assert_eq!(
        check_g_cofinality(&two_loops(), &bounds(3)).status,
        Status::Fails
    );
    assert_eq!(
        check_g_cofinality(&single_loop(), &bounds(3)).status,
        Status::Holds
    );
    for name in ["ex5.1", "ex5.2", "ex5.3-trivial"] {
        assert_eq!(
            check_g_cofinality(&system(name), &bounds(4)).status,
            Status::Holds,
            "{name}"
        );
    }
}

#[test]
fn fixed_path_search() {
    let sys = system("ex5.3-trivial");
    let b = bounds(4);
    let set = |s: &str| sys.universe().parse_set(s).unwrap();
    assert_eq!(
        fixes_all_paths(&sys, GroupElem(2), &set("{w}"), &b).status,
        Status::Holds
    );
    assert_eq!(
        fixes_all_paths(&sys, GroupElem(1), &set("{v0}"), &b).status,
        Status::Fails
    );
    assert_eq!(
        fixes_all_paths(&sys, GroupElem(1), &set("{w}"), &b).status,
        Status::Fails
    );
    assert_eq!(
        fixes_all_paths(&sys, GroupElem(0), &set("{v0}"), &b).status,
        Status::Holds
    );
    let sys = system("ex5.1");
    let t = sys.universe().parse_set("TAIL(v,0)").unwrap();
    assert_eq!(
        fixes_all_paths(&sys, GroupElem(1), &t, &b).status,
        Status::Fails
    );
}

#[test]
fn strongly_fixed_prefixes() {
    let b = bounds(4);
    let sys = system("ex5.3-trivial");
    let w = sys.universe().parse_set("{w}").unwrap();
    assert_eq!(
        strongly_fixed_prefix_check(&sys, GroupElem(2), &w, &b).status,
        Status::Fails
    );
    // 2·e0 = e0 with state φ(2, e0) = 3 - 3 = 0
    let sys = ex53(3, -3);
    let w = sys.universe().parse_set("{w}").unwrap();
    assert_eq!(
        strongly_fixed_prefix_check(&sys, GroupElem(2), &w, &b).status,
        Status::Holds
    );
}

#[test]
fn ultrafilters() {
    let sys = system("ex5.1");
    let t = sys.universe().parse_set("TAIL(v,4)").unwrap();
    let v = no_ultrafilter_check(&sys, &t);
    assert_eq!(v.status, Status::Fails);
    assert_eq!(
        v.witnesses,
        [Evidence::Ultrafilter {
            set: "TAIL(v,4)".into(),
            family: "v".into(),
            direction: "+".into()
        }]
    );
    let l = sys.universe().parse_set("LTAIL(v,4)").unwrap();
    assert_eq!(
        no_ultrafilter_check(&sys, &l).witnesses[0],
        Evidence::Ultrafilter {
            set: "LTAIL(v,4)".into(),
            family: "v".into(),
            direction: "-".into()
        }
    );
    let r = sys.universe().parse_set("RANGE(v,1,40)").unwrap();
    assert_eq!(no_ultrafilter_check(&sys, &r).status, Status::Holds);
}

#[test]
fn paths_moved() {
    assert_eq!(
        check_paths_moved(&system("ex5.2"), &bounds(3)).status,
        Status::Holds
    );
    assert_eq!(
        check_paths_moved(&system("ex5.1"), &bounds(3)).status,
        Status::Holds
    );
    // 2 acts trivially on the period-2 permutation action
    let v = check_paths_moved(&system("ex5.3-trivial"), &bounds(3));
    assert_eq!(v.status, Status::Fails);
}

fn fixed_names(sys: &System, s: &str) -> (Vec<(String, FixClass)>, bool) {
    let fp = fixed_points(sys, &elem(sys, s), &bounds(6)).unwrap();
    (
        fp.points
            .iter()
            .map(|(f, c)| (sys.format_filter(f), *c))
            .collect(),
        fp.complete,
    )
}

#[test]
fn fixed_points_of_path_shifts() {
    let sys = system("ex5.2");
    let nontrivial = FixClass::NontrivialCandidate;
    assert_eq!(
        fixed_names(&sys, "(e; {v}; 0; w)"),
        (vec![("lasso:/e".to_string(), nontrivial)], true)
    );
    assert_eq!(
        fixed_names(&sys, "(e; {w}; 1; w)"),
        (vec![("lasso:/e.f".to_string(), nontrivial)], true)
    );
    assert_eq!(fixed_names(&sys, "(e; {v,w}; 1; e)"), (vec![], true));
    let c = fixed_point_cycle(&sys, &elem(&sys, "(e; {w}; 1; w)")).unwrap();
    assert_eq!(c, cycle(&sys, "1", "e"));
    assert_eq!(
        fixed_point_cycle(&sys, &elem(&sys, "(e; {v,w}; 1; e)")),
        None
    );
}

#[test]
fn fixed_points_of_idempotents_are_trivial() {
    let sys = system("ex5.2");
    let (pts, complete) = fixed_names(&sys, "(e; {v,w}; 0; e)");
    assert!(complete);
    assert!(pts
        .iter()
        .all(|(f, c)| *c == FixClass::Trivial
            && (f.starts_with("lasso:e") || f.starts_with("lasso:/e"))));
    let e = sys.graph().parse_edge("e").unwrap();
    for x in sys
        .enumerate_path_filters(&sys.universe().all(), 6)
        .unwrap()
        .into_iter()
        .filter(|x| x.head() == e)
    {
        let name = sys.format_filter(&TightFilter::Path(x));
        assert!(pts.iter().any(|(f, _)| *f == name), "{name}");
    }
    let sys = system("ex5.1");
    assert_eq!(
        fixed_names(&sys, "(e_0; TAIL(v,0); 0; e_0)"),
        (
            vec![("finite:e_0/END(v,+)".to_string(), FixClass::Trivial)],
            false
        )
    );
}

#[test]
fn interior_of_fixed_points() {
    let sys = system("ex5.2");
    let b = bounds(3);
    let s = elem(&sys, "(e; {v}; 0; w)");
    let f = sys.parse_filter("lasso:/e").unwrap();
    // every cylinder around e^∞ holds a path e...ef... that s pushes deeper
    assert_eq!(interior_scan(&sys, &s, &f, &b), Some(true));
    let sys = system("ex5.1");
    let s = elem(&sys, "(e_0; TAIL(v,0); 0; e_0)");
    let f = sys.parse_filter("finite:e_0/END(v,+)").unwrap();
    assert_eq!(interior_scan(&sys, &s, &f, &b), None);
}

#[test]
fn analyses_of_small_graphs() {
    let a = analyze(&single_loop(), &bounds(3));
    assert_eq!(a.entrances.status, Status::Fails);
    assert_eq!(a.effective.status, Status::Fails);
    assert_eq!(a.minimal.status, Status::Holds);
    assert!(matches!(a.simple, Simplicity::NotApplicable { .. }));
    assert_eq!(a.exit_code(), 2);
    let a = analyze(&two_loops(), &bounds(3));
    assert_eq!(a.minimal.status, Status::Fails);
    assert_eq!(a.exit_code(), 2);
}

#[test]
fn invalid_systems_skip_the_checkers() {
    let mut doc: serde_json::Value =
        serde_json::from_str(&ssu_core::fixtures::example_text("ex5.2").unwrap()).unwrap();
    doc["action"]["generators"]["1"]["edges"] = json!({});
    let sys = Document::from_json(&doc.to_string())
        .unwrap()
        .build()
        .unwrap();
    let a = analyze(&sys, &bounds(3));
    assert_eq!(a.validation.status, Status::Fails);
    assert_eq!(a.minimal.status, Status::Unknown);
    assert_eq!(a.g_cycles.total, 0);
    assert_eq!(a.exit_code(), 2);
}

#[test]
fn headline_verdicts() {
    let b = Bounds::default();
    let a = analyze(&system("ex5.2"), &b);
    assert_eq!(a.simple.status(), Some(Status::Holds));
    assert_eq!(a.exit_code(), 0);
    let a = analyze(&system("ex5.3-trivial"), &b);
    assert_eq!(
        (a.minimal.status, a.effective.status, a.simple.status()),
        (Status::Holds, Status::Fails, Some(Status::Fails))
    );
    let a = analyze(&ex53(3, -3), &b);
    assert_eq!(a.condition_star.status, Status::Holds);
    assert_eq!(a.paths_moved.status, Status::Fails);
    assert!(matches!(a.simple, Simplicity::NotApplicable { .. }));
    let a = analyze(&ex53(2, 2), &b);
    assert_eq!(a.effective.status, Status::Unknown);
    assert_eq!(a.exit_code(), 3);
}

#[test]
fn more_search_finds_more_cycles() {
    for sys in [system("ex5.2"), ex53(2, 1), system("ex5.1")] {
        let mut prev: BTreeSet<GCycle> = BTreeSet::new();
        for n in 1..=4 {
            let cur: BTreeSet<GCycle> = find_g_cycles(&sys, &bounds(n))
                .unwrap()
                .into_iter()
                .collect();
            assert!(prev.is_subset(&cur), "{} at {n}", sys.name());
            prev = cur;
        }
    }
}

#[test]
fn exact_verdicts_do_not_depend_on_bounds() {
    let sys = system("ex5.2");
    let base = analyze(&sys, &bounds(3));
    for n in 4..=6 {
        let a = analyze(&sys, &bounds(n));
        assert_eq!(
            (a.minimal.status, a.effective.status, a.simple.status()),
            (
                base.minimal.status,
                base.effective.status,
                base.simple.status()
            )
        );
    }
}

fn cycle_systems() -> [System; 3] {
    [system("ex5.2"), ex53(3, -3), system("ex5.3-trivial")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cycle_path_unrolls(which in 0usize..3, k in 0usize..1000) {
        let sys = &cycle_systems()[which];
        let b = bounds(4);
        let cs = find_g_cycles(sys, &b).unwrap();
        let c = &cs[k % cs.len()];
        let x = cycle_infinite_path(sys, c, &b).unwrap();
        // x = γ·(g·x)
        let gx = sys.act_lasso(c.g, &x, 4096).unwrap();
        prop_assert_eq!(gx.prepend(&c.path), x.clone());
        // (γ, s(γ), g, ω) fixes F_x
        let s = sys.make(c.path.clone(), sys.graph().path_source(&c.path).into_owned(), c.g, Path::omega()).unwrap();
        let f = TightFilter::Path(x);
        prop_assert!(sys.in_domain(&s, &f));
        prop_assert_eq!(sys.theta_apply(&s, &f, 4096).unwrap(), Some(f));
    }
}
