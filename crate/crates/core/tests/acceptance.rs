//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;
use ssu_core::analysis::{
    analyze, check_condition_star, closed_form_oracle, cycle_infinite_path, find_g_cycles,
    fixed_points, has_entrance, parity_criterion_ex53, Simplicity,
};
use ssu_core::filters::TightFilter;
use ssu_core::{report, Bounds, Elem, IntervalSet, Status, System, VertexSet};

use common::{ex53, random_elements, rng, system};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Outcome {
    let sys = system("ex5.1");
    let start = Instant::now();
    let a = analyze(&sys, &Bounds::default());
    let took = start.elapsed();
    check(
        a.minimal.status == Status::Holds,
        format!("minimal is {}", a.minimal.status),
    )?;
    check(
        a.effective.status == Status::Holds,
        format!("effective is {}", a.effective.status),
    )?;
    check(
        !a.minimal.witnesses.is_empty() && !a.effective.witnesses.is_empty(),
        "missing witnesses",
    )?;
    check(took < Duration::from_secs(5), format!("took {took:?}"))?;
    Ok(format!(
        "minimal Holds, effective Holds in {} ms",
        took.as_millis()
    ))
}

fn criterion_2() -> Outcome {
    let sys = system("ex5.2");
    let bounds = Bounds::default();
    let a = analyze(&sys, &bounds);
    check(a.cofinal.is_holds(), "cofinality does not hold")?;
    check(a.entrances.is_holds(), "entrance check does not hold")?;
    let all = find_g_cycles(&sys, &bounds).unwrap();
    check(
        all.iter().all(|c| has_entrance(&sys, c)),
        "a G-cycle without entrance",
    )?;
    let short = find_g_cycles(
        &sys,
        &Bounds {
            max_path_len: 1,
            ..bounds
        },
    )
    .unwrap();
    let got: Vec<String> = short
        .iter()
        .map(|c| format!("({},{})", sys.format_group(c.g), sys.format_path(&c.path)))
        .collect();
    check(
        got == ["(0,e)", "(0,f)", "(1,e)", "(1,f)"],
        format!("G-cycles at length 1: {got:?}"),
    )?;
    check(a.condition_star.is_holds(), "star condition does not hold")?;
    let vacuous = a
        .condition_star
        .witnesses
        .iter()
        .any(|w| matches!(w, ssu_core::Evidence::Note { text } if text.contains("no (g, A) satisfies the premise")));
    check(vacuous, "star condition premise fired")?;
    check(
        matches!(&a.simple, Simplicity::Checked { verdict } if verdict.is_holds()),
        format!("simple: {:?}", a.simple),
    )?;
    let golden = include_str!("golden/ex5.2.json");
    let rendered = report::render(&report::analysis_report(&sys, &bounds, &a, None));
    check(
        rendered == golden,
        "report differs from tests/golden/ex5.2.json",
    )?;
    Ok(format!(
        "{} G-cycles with entrances, golden report matches",
        all.len()
    ))
}

fn criterion_3() -> Outcome {
    let bounds = Bounds::default();
    let cases: [(&str, Option<(i64, i64)>, bool); 4] = [
        ("trivial", None, false),
        ("(3,-3)", Some((3, -3)), true),
        ("(2,1)", Some((2, 1)), true),
        ("(0,1)", Some((0, 1)), true),
    ];
    for (label, params, expected) in cases {
        let sys = match params {
            None => system("ex5.3-trivial"),
            Some((t0, t1)) => ex53(t0, t1),
        };
        let parity = parity_criterion_ex53(&sys).map_err(|e| e.to_string())?;
        check(parity == expected, format!("{label}: parity {parity}"))?;
        let star = check_condition_star(&sys, &bounds).status;
        let want = if expected {
            Status::Holds
        } else {
            Status::Fails
        };
        check(
            star == want,
            format!("{label}: star condition {star}, parity {parity}"),
        )?;
    }
    Ok("parity and star condition agree on 4 instances".into())
}

fn criterion_4() -> Outcome {
    let bounds = Bounds::default();
    let mut compared = 0;
    for (t0, t1) in [(1, 1), (3, -3), (2, 2)] {
        let sys = ex53(t0, t1);
        let graph = sys.graph();
        let u = sys.universe();
        let ends: VertexSet = u.parse_set("{v0,v1}").unwrap();
        let paths = graph.enumerate_paths(&ends, 6).unwrap();
        for n in [-6i64, -4, -2, 2, 4, 6] {
            for alpha in &paths {
                let out = closed_form_oracle(&sys, n, alpha, &bounds).map_err(|e| e.to_string())?;
                check(
                    out.equal,
                    format!(
                        "({t0},{t1}) n={n} α={}: {} vs {}",
                        sys.format_path(alpha),
                        out.derived,
                        out.formula
                    ),
                )?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} comparisons of φ(n, α) with n t^|α|"))
}

fn criterion_5() -> Outcome {
    let sys = system("ex5.2");
    let elems = sys.enumerate_elements(2).map_err(|e| e.to_string())?;
    let n = elems.len();
    let prods: Vec<Vec<Elem>> = elems
        .iter()
        .map(|s| elems.iter().map(|t| sys.multiply(s, t)).collect())
        .collect();
    for (i, s) in elems.iter().enumerate() {
        let ss = sys.invert(s);
        check(
            sys.multiply(&sys.multiply(s, &ss), s) == *s,
            format!("s s* s ≠ s for {}", sys.format_elem(s)),
        )?;
        for (j, t) in elems.iter().enumerate() {
            check(
                sys.invert(&prods[i][j]) == sys.multiply(&sys.invert(t), &ss),
                format!(
                    "(st)* ≠ t*s* for {} {}",
                    sys.format_elem(s),
                    sys.format_elem(t)
                ),
            )?;
        }
    }
    for (i, s) in elems.iter().enumerate() {
        for (j, t) in elems.iter().enumerate() {
            let st = &prods[i][j];
            for (k, u) in elems.iter().enumerate() {
                if sys.multiply(st, u) != sys.multiply(s, &prods[j][k]) {
                    return Err(format!(
                        "associativity fails for {} {} {}",
                        sys.format_elem(s),
                        sys.format_elem(t),
                        sys.format_elem(u)
                    ));
                }
            }
        }
    }
    let idem: Vec<&Elem> = elems.iter().filter(|s| sys.is_idempotent(s)).collect();
    for p in &idem {
        for q in &idem {
            check(
                sys.multiply(p, q) == sys.multiply(q, p),
                "idempotents do not commute",
            )?;
            check(
                sys.leq(p, q).unwrap() == sys.leq_by_product(p, q).unwrap(),
                "order tests disagree",
            )?;
        }
    }
    let sys3 = system("ex5.3-trivial");
    let mut r = rng(53);
    let pool = random_elements(&sys3, &mut r, 300, 2, 3);
    for _ in 0..1000 {
        let s = &pool[r.gen_range(0..pool.len())];
        let t = &pool[r.gen_range(0..pool.len())];
        let u = &pool[r.gen_range(0..pool.len())];
        let st = sys3.multiply(s, t);
        check(
            sys3.multiply(&sys3.multiply(s, &sys3.invert(s)), s) == *s,
            "s s* s ≠ s on ex5.3",
        )?;
        check(
            sys3.invert(&st) == sys3.multiply(&sys3.invert(t), &sys3.invert(s)),
            "(st)* ≠ t*s* on ex5.3",
        )?;
        check(
            sys3.multiply(&st, u) == sys3.multiply(s, &sys3.multiply(t, u)),
            "associativity fails on ex5.3",
        )?;
        let (p, q) = (
            sys3.multiply(s, &sys3.invert(s)),
            sys3.multiply(&sys3.invert(t), t),
        );
        check(
            sys3.multiply(&p, &q) == sys3.multiply(&q, &p),
            "idempotents do not commute on ex5.3",
        )?;
    }
    Ok(format!(
        "{n} elements ({} triples), {} idempotent pairs, 1000 random triples",
        n * n * n,
        idem.len() * idem.len()
    ))
}

fn criterion_6() -> Outcome {
    let sys = system("ex5.2");
    let sb = Bounds::default().state_bound;
    let elems = sys.enumerate_elements(2).map_err(|e| e.to_string())?;
    let lassos = sys
        .enumerate_path_filters(&sys.universe().all(), 3)
        .map_err(|e| e.to_string())?;
    let filters: Vec<TightFilter> = lassos.into_iter().map(TightFilter::Path).collect();
    let theta = |s: &Elem, f: &TightFilter| {
        sys.theta_apply(s, f, sb)
            .unwrap()
            .expect("finite group orbit closes")
    };
    let mut checks = 0u64;
    for s in &elems {
        let ss = sys.invert(s);
        let images: Vec<Option<TightFilter>> = filters
            .iter()
            .map(|f| sys.in_domain(s, f).then(|| theta(s, f)))
            .collect();
        for (f, img) in filters.iter().zip(&images) {
            if let Some(img) = img {
                check(
                    theta(&ss, img) == *f,
                    format!("θ_s* θ_s ≠ id for {}", sys.format_elem(s)),
                )?;
                checks += 1;
            }
        }
        for t in &elems {
            let ts = sys.multiply(t, s);
            for (f, img) in filters.iter().zip(&images) {
                if !sys.in_domain(&ts, f) {
                    continue;
                }
                let img = img.as_ref().ok_or("F ∈ D(ts) but not in D(s)")?;
                check(sys.in_domain(t, img), "θ_s(F) outside D(t)")?;
                check(
                    theta(&ts, f) == theta(t, img),
                    format!(
                        "θ_ts ≠ θ_t θ_s for {} {}",
                        sys.format_elem(t),
                        sys.format_elem(s)
                    ),
                )?;
                checks += 1;
            }
        }
    }
    let mut fixed = 0;
    for s in &elems {
        for (f, _) in fixed_points(&sys, s, &Bounds::default())
            .map_err(|e| e.to_string())?
            .points
        {
            check(
                theta(s, &f) == f,
                format!("fixed point moved by {}", sys.format_elem(s)),
            )?;
            fixed += 1;
        }
    }
    Ok(format!(
        "{checks} action identities over {} lassos, {fixed} fixed points round-trip",
        filters.len()
    ))
}

fn criterion_7() -> Outcome {
    let bounds = Bounds::default();
    let mut total = 0;
    let instances: [(&str, System); 3] = [
        ("ex5.2", system("ex5.2")),
        ("ex5.3-trivial", system("ex5.3-trivial")),
        ("ex5.3(3,-3)", ex53(3, -3)),
    ];
    for (label, sys) in &instances {
        for c in find_g_cycles(sys, &bounds).unwrap() {
            let x = cycle_infinite_path(sys, &c, &bounds).ok_or_else(|| {
                format!(
                    "{label}: no lasso for ({}, {})",
                    c.g.0,
                    sys.format_path(&c.path)
                )
            })?;
            let gx = sys
                .act_lasso(c.g, &x, bounds.state_bound)
                .ok_or_else(|| format!("{label}: g·x unknown"))?;
            let depth = 3 * x.size();
            let rhs: Vec<_> = c
                .path
                .edges()
                .iter()
                .copied()
                .chain(gx.realize(depth))
                .take(depth)
                .collect();
            check(
                x.realize(depth) == rhs,
                format!(
                    "{label}: x ≠ γ(g·x) for ({}, {})",
                    c.g.0,
                    sys.format_path(&c.path)
                ),
            )?;
            total += 1;
        }
    }
    Ok(format!("{total} G-cycles satisfy x = γ (g·x)"))
}

fn criterion_8() -> Outcome {
    let sys = system("ex5.2");
    let start = Instant::now();
    let elems = sys.enumerate_elements(2).map_err(|e| e.to_string())?;
    let maps: Vec<_> = elems.iter().map(|s| sys.crossed_map(s).unwrap()).collect();
    for (i, s) in elems.iter().enumerate() {
        let star = sys.crossed_star(&maps[i]).unwrap();
        check(
            sys.crossed_map(&sys.invert(s)).unwrap() == star,
            format!("star mismatch at {}", sys.format_elem(s)),
        )?;
        for (j, t) in elems.iter().enumerate() {
            let lhs = sys.crossed_map(&sys.multiply(s, t)).unwrap();
            let rhs = sys.crossed_product(&maps[i], &maps[j]).unwrap();
            check(
                lhs == rhs,
                format!(
                    "φ(st) ≠ φ(s)φ(t) for {} {}",
                    sys.format_elem(s),
                    sys.format_elem(t)
                ),
            )?;
        }
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(10), format!("took {took:?}"))?;
    Ok(format!(
        "{} pairs in {} ms",
        elems.len() * elems.len(),
        took.as_millis()
    ))
}

#[derive(Debug)]
enum Expr {
    Empty,
    Point(i64),
    Tail(i64),
    LTail(i64),
    Union(Box<Expr>, Box<Expr>),
    Inter(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
}

fn random_expr(r: &mut impl Rng, depth: u32) -> Expr {
    if depth == 0 || r.gen_bool(0.3) {
        return match r.gen_range(0..4) {
            0 => Expr::Empty,
            1 => Expr::Point(r.gen_range(-25..=25)),
            2 => Expr::Tail(r.gen_range(-25..=25)),
            _ => Expr::LTail(r.gen_range(-25..=25)),
        };
    }
    let a = Box::new(random_expr(r, depth - 1));
    let b = Box::new(random_expr(r, depth - 1));
    match r.gen_range(0..3) {
        0 => Expr::Union(a, b),
        1 => Expr::Inter(a, b),
        _ => Expr::Diff(a, b),
    }
}

fn symbolic(sys: &System, e: &Expr) -> VertexSet {
    let graph = sys.graph();
    let one = |s: IntervalSet| VertexSet::from_families(vec![s]);
    match e {
        Expr::Empty => sys.universe().empty_set(),
        Expr::Point(i) => one(IntervalSet::point(*i)),
        // s(e_i) is the source generator for Tail
        Expr::Tail(i) => graph
            .source(ssu_core::EdgeId {
                family: 0,
                index: *i,
            })
            .into_owned(),
        Expr::LTail(i) => one(IntervalSet::left_tail(*i)),
        Expr::Union(a, b) => symbolic(sys, a).union(&symbolic(sys, b)),
        Expr::Inter(a, b) => symbolic(sys, a).intersect(&symbolic(sys, b)),
        Expr::Diff(a, b) => symbolic(sys, a).difference(&symbolic(sys, b)),
    }
}

fn pointwise(e: &Expr, j: i64) -> bool {
    match e {
        Expr::Empty => false,
        Expr::Point(i) => j == *i,
        Expr::Tail(i) => j > *i,
        Expr::LTail(i) => j <= *i,
        Expr::Union(a, b) => pointwise(a, j) || pointwise(b, j),
        Expr::Inter(a, b) => pointwise(a, j) && pointwise(b, j),
        Expr::Diff(a, b) => pointwise(a, j) && !pointwise(b, j),
    }
}

fn criterion_9() -> Outcome {
    let sys = system("ex5.1");
    let mut r = rng(9);
    for k in 0..10_000 {
        let e = random_expr(&mut r, 8);
        let s = symbolic(&sys, &e);
        for j in -20..=20 {
            let v = ssu_core::Vertex {
                family: 0,
                index: j,
            };
            check(
                s.contains(v) == pointwise(&e, j),
                format!("expression {k} disagrees at index {j}: {e:?}"),
            )?;
        }
    }
    Ok("10000 expressions agree on [-20, 20]".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("ex5.1 minimal and effective", criterion_1),
        ("ex5.2 report", criterion_2),
        ("ex5.3 parity vs star condition", criterion_3),
        ("φ(n, α) = n t^|α| oracle", criterion_4),
        ("inverse-semigroup axioms", criterion_5),
        ("θ-action identities and fixed points", criterion_6),
        ("G-cycle path identity", criterion_7),
        ("crossed-product homomorphism", criterion_8),
        ("set-algebra oracle", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{ms} ms]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{ms} ms]", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
