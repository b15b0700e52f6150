mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use ssu_core::filters::TightFilter;
use ssu_core::{Error, Lasso, System};

use common::{elem, ex53, random_elements, rng, system};

fn filter(sys: &System, src: &str) -> TightFilter {
    sys.parse_filter(src).unwrap()
}

fn theta(sys: &System, s: &str, f: &str) -> String {
    let img = sys
        .theta_apply(&elem(sys, s), &filter(sys, f), 256)
        .unwrap()
        .unwrap();
    sys.format_filter(&img)
}

#[test]
fn path_filter_membership() {
    let sys = system("ex5.2");
    let f = filter(&sys, "lasso:/e");
    let has = |p: &str, c: &str| {
        sys.filter_contains(
            &f,
            &sys.graph().parse_path(p).unwrap(),
            &sys.universe().parse_set(c).unwrap(),
        )
    };
    assert!(has("w", "{v,w}"));
    assert!(has("w", "{v}"));
    assert!(!has("w", "{w}"));
    assert!(has("e.e", "{v}"));
    assert!(!has("e.f", "{v,w}"));
    assert!(!has("f", "{v}"));
    let q = elem(&sys, "(e; {v}; 0; e)");
    assert!(sys.filter_contains_elem(&f, &q).unwrap());
    assert_eq!(
        sys.filter_contains_elem(&f, &elem(&sys, "(e; {v}; 1; e)")),
        Err(Error::NotIdempotent)
    );
}

#[test]
fn finite_type_membership() {
    let sys = system("ex5.1");
    let u = sys.universe();
    let f = filter(&sys, "finite:e_0/END(v,+)");
    let p = |s: &str| sys.graph().parse_path(s).unwrap();
    assert!(sys.in_cylinder(&f, &p("e_0"), &u.parse_set("TAIL(v,7)").unwrap()));
    assert!(!sys.in_cylinder(&f, &p("e_0"), &u.parse_set("RANGE(v,1,100)").unwrap()));
    assert!(sys.in_cylinder(&f, &p("w"), &u.parse_set("{v_0}").unwrap()));
    assert!(!sys.in_cylinder(&f, &p("w"), &u.parse_set("{v_1}").unwrap()));
    let up = filter(&sys, "finite:w/UP(TAIL(v,3))");
    assert!(sys.in_cylinder(&up, &p("w"), &u.parse_set("TAIL(v,2)").unwrap()));
    assert!(!sys.in_cylinder(&up, &p("w"), &u.parse_set("TAIL(v,4)").unwrap()));
}

#[test]
fn filter_constraints() {
    let sys = system("ex5.1");
    assert!(matches!(
        sys.parse_filter("finite:w/UP(RANGE(v,0,4))"),
        Err(Error::Constraint(_))
    ));
    assert!(matches!(
        sys.parse_filter("finite:e_3/UP(TAIL(v,1))"),
        Err(Error::Constraint(_))
    ));
    assert!(matches!(
        sys.parse_filter("finite:e_3/END(v,-)"),
        Err(Error::Constraint(_))
    ));
    assert!(sys.parse_filter("finite:w/END(v,-)").is_ok());
}

#[test]
fn theta_on_path_filters() {
    let sys = system("ex5.2");
    assert_eq!(theta(&sys, "(f; {v,w}; 1; e)", "lasso:/e"), "lasso:/f");
    assert_eq!(theta(&sys, "(e; {v,w}; 0; w)", "lasso:f/e"), "lasso:e.f/e");
    let sys = ex53(2, 1);
    // the states along e0^∞ are 1, 2, 3, 5, ... and never repeat
    assert!(sys
        .theta_apply(
            &elem(&sys, "(w; {v0,v1}; 1; w)"),
            &filter(&sys, "lasso:/e0"),
            64
        )
        .unwrap()
        .is_none());
    let sys = ex53(0, 1);
    assert_eq!(
        theta(&sys, "(w; {v0,v1}; 1; w)", "lasso:/e0"),
        "lasso:e1/e0"
    );
}

#[test]
fn theta_on_finite_type_filters() {
    let sys = system("ex5.1");
    assert_eq!(
        theta(&sys, "(w; TAIL(v,2); 2; e_0)", "finite:e_0/END(v,+)"),
        "finite:w/END(v,+)"
    );
    assert_eq!(
        theta(&sys, "(e_1; TAIL(v,3); 2; w)", "finite:e_4/END(v,+)"),
        "finite:e_1.e_6/END(v,+)"
    );
    assert_eq!(
        theta(&sys, "(w; TAIL(v,2); 2; w)", "finite:w/UP(TAIL(v,1))"),
        "finite:w/UP(TAIL(v,3))"
    );
}

#[test]
fn theta_outside_domain() {
    let sys = system("ex5.2");
    let s = elem(&sys, "(f; {v,w}; 1; e)");
    assert_eq!(
        sys.theta_apply(&s, &filter(&sys, "lasso:/f"), 16),
        Err(Error::Domain)
    );
}

#[test]
fn filter_text_round_trip() {
    let sys = system("ex5.1");
    for src in [
        "finite:e_0/END(v,+)",
        "finite:w/UP(TAIL(v,3))",
        "finite:e_2.e_9/END(v,+)",
    ] {
        assert_eq!(sys.format_filter(&filter(&sys, src)), src);
    }
    let sys = system("ex5.2");
    assert_eq!(sys.format_filter(&filter(&sys, "lasso:e.e/e")), "lasso:/e");
}

/// Every `(prefix, cycle)` pair of edge words with total length at most `n`,
/// checked edge by edge and canonicalized by the lasso constructor.
fn brute_lassos(sys: &System, n: usize) -> Vec<Lasso> {
    let g = sys.graph();
    let edges = g.edges().unwrap();
    let mut words: Vec<Vec<_>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &words {
            for &e in &edges {
                let mut x = w.clone();
                x.push(e);
                next.push(x);
            }
        }
        all.extend(next.iter().cloned());
        words = next;
    }
    let mut out = BTreeSet::new();
    for w in &all {
        for split in 0..w.len() {
            let (p, c) = (w[..split].to_vec(), w[split..].to_vec());
            let mut closed = c.clone();
            closed.extend_from_slice(&c);
            let mut word = p.clone();
            word.extend_from_slice(&closed);
            if g.check_word(&word).is_ok() {
                out.insert(Lasso::new(p, c).unwrap());
            }
        }
    }
    out.into_iter().collect()
}

#[test]
fn path_filter_enumeration_matches_brute_force() {
    for sys in [system("ex5.2"), system("ex5.3-trivial")] {
        for n in 1..=5 {
            assert_eq!(
                sys.enumerate_path_filters(&sys.universe().all(), n)
                    .unwrap(),
                brute_lassos(&sys, n)
            );
        }
        let v = sys.universe().vertices().unwrap()[0];
        let only = sys.universe().singleton(v);
        let got = sys.enumerate_path_filters(&only, 4).unwrap();
        let want: Vec<Lasso> = brute_lassos(&sys, 4)
            .into_iter()
            .filter(|x| sys.graph().range(x.head()) == v)
            .collect();
        assert_eq!(got, want);
    }
    assert!(system("ex5.1")
        .enumerate_path_filters(&system("ex5.1").universe().all(), 2)
        .is_err());
}

fn z_systems() -> [System; 3] {
    [ex53(0, 1), ex53(3, -3), system("ex5.3-trivial")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theta_is_a_partial_action(seed in any::<u64>(), which in 0usize..3) {
        let sys = &z_systems()[which];
        let mut r = rng(seed);
        let xs = random_elements(sys, &mut r, 5, 2, 5);
        let lassos = sys.enumerate_path_filters(&sys.universe().all(), 4).unwrap();
        for s in &xs {
            let si = sys.invert(s);
            for t in &xs {
                let st = sys.multiply(s, t);
                for x in &lassos {
                    let f = TightFilter::Path(x.clone());
                    if !sys.in_domain(t, &f) {
                        continue;
                    }
                    let tf = sys.theta_apply(t, &f, 4096).unwrap().unwrap();
                    // θ_s ∘ θ_t agrees with θ_st wherever the composite is defined
                    prop_assert_eq!(sys.in_domain(s, &tf), sys.in_domain(&st, &f));
                    if sys.in_domain(s, &tf) {
                        let stf = sys.theta_apply(s, &tf, 4096).unwrap().unwrap();
                        prop_assert_eq!(Some(stf), sys.theta_apply(&st, &f, 4096).unwrap());
                    }
                }
            }
            for x in &lassos {
                let f = TightFilter::Path(x.clone());
                if sys.in_domain(s, &f) {
                    let img = sys.theta_apply(s, &f, 4096).unwrap().unwrap();
                    prop_assert!(sys.in_domain(&si, &img));
                    prop_assert_eq!(sys.theta_apply(&si, &img, 4096).unwrap(), Some(f));
                }
            }
        }
    }

    #[test]
    fn larger_state_bound_keeps_answers(seed in any::<u64>()) {
        let sys = ex53(2, 1);
        let mut r = rng(seed);
        let lassos = sys.enumerate_path_filters(&sys.universe().all(), 4).unwrap();
        for s in random_elements(&sys, &mut r, 8, 2, 8) {
            for x in &lassos {
                let f = TightFilter::Path(x.clone());
                if !sys.in_domain(&s, &f) {
                    continue;
                }
                if let Some(a) = sys.theta_apply(&s, &f, 8).unwrap() {
                    prop_assert_eq!(sys.theta_apply(&s, &f, 512).unwrap(), Some(a));
                }
            }
        }
    }
}
