mod common;

use proptest::prelude::*;
use serde_json::{json, Value};
use ssu_core::{fixtures, Document, EdgeId, GroupElem, Lasso, Path, Status, System, Vertex};

use common::{ex53, paths_upto, system};

fn z(n: i64) -> GroupElem {
    GroupElem(n)
}

fn build(doc: Value) -> System {
    Document::from_json(&doc.to_string())
        .unwrap()
        .build()
        .unwrap()
}

fn fixture_value(name: &str) -> Value {
    serde_json::from_str(&fixtures::example_text(name).unwrap()).unwrap()
}

/// `φ(n, e)` straight from the cocycle law with `φ(0, e) = 0`:
/// `φ(n + 1, e) = φ(1, n·e) + φ(n, e)` and `φ(n - 1, e) = φ(n, e) - φ(1, (n - 1)·e)`.
fn phi_oracle(sys: &System, n: i64, e: EdgeId) -> i64 {
    let one = |f: EdgeId| sys.phi(z(1), f).0;
    let mut acc = 0;
    if n >= 0 {
        for k in 0..n {
            acc += one(sys.act_edge(z(k), e));
        }
    } else {
        for k in n..0 {
            acc -= one(sys.act_edge(z(k), e));
        }
    }
    acc
}

#[test]
fn swap_example() {
    let sys = system("ex5.2");
    let g = sys.group().parse("1").unwrap();
    let path = |s: &str| sys.graph().parse_path(s).unwrap();
    let (img, h) = sys.act_path(g, &path("e.f.f"));
    assert_eq!(sys.format_path(&img), "f.e.e");
    assert_eq!(h, g);
    assert_eq!(sys.act_path(g, &Path::omega()), (Path::omega(), g));
    let v = sys.universe().parse_vertex("v").unwrap();
    assert_eq!(sys.universe().vertex_name(sys.act_vertex(g, v)), "w");
    let x = sys.graph().parse_lasso("e/f").unwrap();
    assert_eq!(sys.format_lasso(&sys.act_lasso(g, &x, 16).unwrap()), "f/e");
}

#[test]
fn shift_example() {
    let sys = system("ex5.1");
    let e3 = sys.graph().parse_edge("e_3").unwrap();
    assert_eq!(
        sys.act_edge(z(4), e3),
        EdgeId {
            family: 0,
            index: 7
        }
    );
    assert_eq!(
        sys.act_vertex(
            z(-5),
            Vertex {
                family: 0,
                index: 3
            }
        ),
        Vertex {
            family: 0,
            index: -2
        }
    );
    let s = sys.universe().parse_set("TAIL(v,2)").unwrap();
    assert_eq!(sys.format_set(&sys.act_set(z(3), &s)), "TAIL(v,5)");
    let p = sys.graph().parse_path("e_0.e_5").unwrap();
    let (img, h) = sys.act_path(z(2), &p);
    assert_eq!(sys.format_path(&img), "e_2.e_7");
    assert_eq!(h, z(2));
}

#[test]
fn integer_cocycle_values() {
    let sys = ex53(2, 1);
    let e0 = sys.graph().parse_edge("e0").unwrap();
    let e1 = sys.graph().parse_edge("e1").unwrap();
    let f = sys.graph().parse_edge("f").unwrap();
    assert_eq!(sys.phi(z(1), e0), z(2));
    assert_eq!(sys.phi(z(2), e0), z(3));
    assert_eq!(sys.phi(z(3), e1), z(4));
    assert_eq!(sys.phi(z(-1), e0), z(-1));
    assert_eq!(sys.phi(z(5), f), z(5));
    for n in -30..=30 {
        for e in [e0, e1, f] {
            assert_eq!(sys.phi(z(n), e).0, phi_oracle(&sys, n, e), "n = {n}");
        }
    }
}

#[test]
fn cocycle_along_paths() {
    let sys = ex53(2, 1);
    let p = sys.graph().parse_path("e0.e1.e0").unwrap();
    // 1·e0 = e1 with state 2, 2·e1 = e1 with state 3, 3·e0 = e1 with state 5
    let (img, h) = sys.act_path(z(1), &p);
    assert_eq!(sys.format_path(&img), "e1.e1.e1");
    assert_eq!(h, z(5));
    assert_eq!(sys.cocycle_path(z(1), &p), z(5));
}

#[test]
fn lasso_action_examples() {
    let sys = ex53(0, 1);
    let x = sys.graph().parse_lasso("/e0").unwrap();
    // the state cycles 1 → 0 → 0, so 1·e0^∞ = e1 e0^∞
    assert_eq!(
        sys.format_lasso(&sys.act_lasso(z(1), &x, 16).unwrap()),
        "e1/e0"
    );
    let sys = ex53(2, 2);
    let x = sys.graph().parse_lasso("/e0").unwrap();
    assert_eq!(sys.act_lasso(z(1), &x, 64), None);
}

#[test]
fn bundled_systems_validate() {
    for sys in [
        system("ex5.1"),
        system("ex5.2"),
        system("ex5.3-trivial"),
        ex53(3, -3),
        ex53(2, 1),
    ] {
        assert_eq!(sys.validate(6).status, Status::Holds, "{}", sys.name());
    }
}

#[test]
fn automorphism_violation() {
    let mut doc = fixture_value("ex5.2");
    doc["action"]["generators"]["1"]["edges"] = json!({"e": "e", "f": "f"});
    let v = build(doc).validate(4);
    assert_eq!(v.status, Status::Fails);
    assert!(serde_json::to_string(&v.witnesses)
        .unwrap()
        .contains("r(g·e)"));
}

#[test]
fn homomorphism_violation() {
    let mut doc = fixture_value("ex5.2");
    doc["group"] = json!({
        "kind": "finite_table",
        "elements": ["0", "1", "2"],
        "table": [["0", "1", "2"], ["1", "2", "0"], ["2", "0", "1"]],
        "identity": "0",
        "generators": ["1"],
        "amenable": true
    });
    let v = build(doc).validate(4);
    assert_eq!(v.status, Status::Fails);
    assert!(serde_json::to_string(&v.witnesses)
        .unwrap()
        .contains("homomorphism"));
}

#[test]
fn range_condition_violation() {
    // swapping two loops while every state collapses to the identity keeps the
    // cocycle law but moves s(a) away from φ(1, a)·s(a)
    let doc = json!({
        "universe": {"kind": "finite", "vertices": ["v", "w"]},
        "edges": [
            {"id": "a", "range": "v", "source": "FIN{v}"},
            {"id": "b", "range": "w", "source": "FIN{w}"}
        ],
        "group": {"kind": "finite_table", "elements": ["0", "1"], "table": [["0", "1"], ["1", "0"]],
                  "identity": "0", "generators": ["1"], "amenable": true},
        "action": {"generators": {"1": {"vertices": {"v": "w", "w": "v"}, "edges": {"a": "b", "b": "a"}}}},
        "cocycle": {"kind": "table", "values": {"0": {"a": "0", "b": "0"}, "1": {"a": "0", "b": "0"}}}
    });
    let v = build(doc.clone()).validate(4);
    assert_eq!(v.status, Status::Fails);
    assert!(serde_json::to_string(&v.witnesses)
        .unwrap()
        .contains("range condition"));
    let mut ok = doc;
    ok["cocycle"] = json!("trivial");
    assert_eq!(build(ok).validate(4).status, Status::Holds);
}

fn z_systems() -> Vec<System> {
    vec![ex53(2, 1), ex53(3, -3), ex53(0, 1), system("ex5.3-trivial")]
}

proptest! {
    #[test]
    fn action_is_functorial(g in -25i64..25, h in -25i64..25, which in 0usize..4) {
        let sys = &z_systems()[which];
        for v in sys.universe().vertices().unwrap() {
            prop_assert_eq!(sys.act_vertex(z(g + h), v), sys.act_vertex(z(g), sys.act_vertex(z(h), v)));
        }
        for e in sys.graph().edges().unwrap() {
            prop_assert_eq!(sys.act_edge(z(g + h), e), sys.act_edge(z(g), sys.act_edge(z(h), e)));
            // cocycle law
            prop_assert_eq!(sys.phi(z(g + h), e).0, sys.phi(z(g), sys.act_edge(z(h), e)).0 + sys.phi(z(h), e).0);
        }
    }

    #[test]
    fn cocycle_law_on_paths(g in -25i64..25, h in -25i64..25, which in 0usize..4, k in 0usize..40) {
        let sys = &z_systems()[which];
        let paths = paths_upto(sys, 3);
        let p = &paths[k % paths.len()];
        let (hp, h1) = sys.act_path(z(h), p);
        let (ghp, g1) = sys.act_path(z(g), &hp);
        let (direct, gh1) = sys.act_path(z(g + h), p);
        prop_assert_eq!(direct, ghp);
        prop_assert_eq!(gh1, z(g1.0 + h1.0));
    }

    #[test]
    fn concatenation_coherence(g in -25i64..25, which in 0usize..4, i in 0usize..40, j in 0usize..40) {
        let sys = &z_systems()[which];
        let paths = paths_upto(sys, 3);
        let (a, b) = (&paths[i % paths.len()], &paths[j % paths.len()]);
        if sys.graph().check_word(&a.concat(b).into_edges()).is_err() {
            return Ok(());
        }
        let (ga, ha) = sys.act_path(z(g), a);
        let (hb, hab) = sys.act_path(ha, b);
        let (gab, k) = sys.act_path(z(g), &a.concat(b));
        prop_assert_eq!(gab, ga.concat(&hb));
        prop_assert_eq!(k, hab);
    }

    #[test]
    fn lasso_action_matches_letters(g in -25i64..25, which in 0usize..4, pre in 0usize..40, cyc in 0usize..40) {
        let sys = &z_systems()[which];
        let lassos = sys.enumerate_path_filters(&sys.universe().all(), 5).unwrap();
        let x: &Lasso = &lassos[(pre * 40 + cyc) % lassos.len()];
        if let Some(img) = sys.act_lasso(z(g), x, 4096) {
            let word = Path::new(x.realize(30));
            let (direct, _) = sys.act_path(z(g), &word);
            prop_assert_eq!(img.realize(30), direct.into_edges());
        } else {
            // only unbounded state growth may exhaust the bound
            prop_assert!(!sys.is_trivial_cocycle());
        }
    }
}
