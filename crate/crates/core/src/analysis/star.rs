//! The star condition and the path-moving hypothesis used for simplicity.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::action::System;
use crate::group::GroupElem;
use crate::par;
use crate::sets::VertexSet;
use crate::ultragraph::{EdgeId, Lasso, Path};
use crate::verdict::{Bounds, Evidence, Status, Verdict};

use super::cycles::{successors, window};

fn path_evidence(sys: &System, g: GroupElem, a: &VertexSet, path: &Path, note: &str) -> Evidence {
    Evidence::Path {
        g: sys.format_group(g),
        set: sys.format_set(a),
        path: sys.format_path(path),
        note: note.into(),
    }
}

/// `g·x = x` for every `x ∈ A U^∞`, by search over states `(h, C)`: every
/// edge into `C` must be fixed by `h`, and `(φ(h, e), s(e))` must again be a
/// good state. States with `h` acting trivially are accepted. For `Z` acting
/// by permutations whose cocycle sums over an orbit are multiples of the
/// period, `h` is tracked modulo the period, which is exact.
pub fn fixes_all_paths(sys: &System, g: GroupElem, a: &VertexSet, bounds: &Bounds) -> Verdict {
    let graph = sys.graph();
    let grp = sys.group();
    if grp.is_identity(g) {
        return Verdict::holds(vec![Evidence::Note {
            text: "identity fixes every path".into(),
        }]);
    }
    if a.is_empty() {
        return Verdict::holds(vec![Evidence::Note {
            text: "no paths from the empty set".into(),
        }]);
    }
    if !graph.is_finite() {
        let ins = graph.edges_into(a);
        for (f, slice) in &ins.families {
            if sys.edge_shift(*f).unwrap_or(0) != 0 && !slice.is_empty() {
                let index = slice.intervals().iter().find_map(|&(lo, hi)| {
                    if lo != i64::MIN {
                        Some(lo)
                    } else if hi != i64::MAX {
                        Some(hi)
                    } else {
                        Some(0)
                    }
                });
                let e = EdgeId {
                    family: *f,
                    index: index.unwrap(),
                };
                return Verdict::fails(vec![path_evidence(sys, g, a, &Path::edge(e), "g·e ≠ e")]);
            }
        }
        return Verdict::unknown(vec![Evidence::Note {
            text: "fixed-path search over edge families not moved by the group".into(),
        }]);
    }
    let modulus = sys.residue_period();
    let norm = |h: GroupElem| match modulus {
        Some(p) => GroupElem(h.0.rem_euclid(p)),
        None => h,
    };
    let trivial = |h: GroupElem| match modulus {
        Some(_) => h.0 == 0,
        None => grp.is_identity(h),
    };
    let finite_states = modulus.is_some() || grp.is_finite();
    let start = (norm(g), a.clone());
    let mut seen: HashMap<(GroupElem, VertexSet), Path> = HashMap::new();
    seen.insert(start.clone(), Path::omega());
    let mut queue = VecDeque::from([start]);
    while let Some((h, c)) = queue.pop_front() {
        if trivial(h) {
            continue;
        }
        let via = seen[&(h, c.clone())].clone();
        for e in graph.edges_into(&c).to_vec().expect("finite") {
            let path = via.push(e);
            if sys.act_edge(h, e) != e {
                return Verdict::fails(vec![path_evidence(
                    sys,
                    g,
                    a,
                    &path,
                    "g·x ≠ x for paths through this prefix",
                )]);
            }
            let Ok(next) = sys.try_phi(h, e) else {
                return Verdict::unknown(vec![Evidence::Violation {
                    detail: "cocycle overflow".into(),
                }]);
            };
            let key = (norm(next), graph.source(e).into_owned());
            if !seen.contains_key(&key) {
                if !finite_states && seen.len() >= bounds.state_bound {
                    return Verdict::unknown(vec![Evidence::Exhausted {
                        bound: "state_bound".into(),
                        value: bounds.state_bound as u64,
                    }]);
                }
                seen.insert(key.clone(), path);
                queue.push_back(key);
            }
        }
    }
    Verdict::holds(vec![Evidence::Note {
        text: format!("{} states closed under transport", seen.len()),
    }])
}

/// Clause (1): every `x ∈ A U^(≤∞)` has an initial subpath strongly fixed
/// by `g`. Searches the states `(h, C)` with `h ≠ 1` reached by fixed
/// prefixes; fails on a moved edge, on a cycle of such states, or on a
/// prefix with infinite source.
pub fn strongly_fixed_prefix_check(
    sys: &System,
    g: GroupElem,
    a: &VertexSet,
    bounds: &Bounds,
) -> Verdict {
    let graph = sys.graph();
    let grp = sys.group();
    if grp.is_identity(g) {
        return Verdict::holds(vec![Evidence::Note {
            text: "every edge is strongly fixed by the identity".into(),
        }]);
    }
    type State = (GroupElem, VertexSet);
    let start: State = (g, a.clone());
    let mut order: Vec<State> = vec![start.clone()];
    let mut index: HashMap<State, usize> = HashMap::from([(start, 0)]);
    let mut via: Vec<Path> = vec![Path::omega()];
    let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new()];
    let mut k = 0;
    while k < order.len() {
        let (h, c) = order[k].clone();
        if k > 0 && !c.is_finite() {
            return Verdict::fails(vec![path_evidence(
                sys,
                g,
                a,
                &via[k],
                "finite path with infinite source and no strongly fixed prefix",
            )]);
        }
        let ins = graph.edges_into(&c);
        let Ok(list) = ins.to_vec() else {
            return Verdict::unknown(vec![Evidence::Note {
                text: "infinitely many edges into a state set".into(),
            }]);
        };
        for e in list {
            let path = via[k].push(e);
            if sys.act_edge(h, e) != e {
                return Verdict::fails(vec![path_evidence(sys, g, a, &path, "g moves this path")]);
            }
            let Ok(next) = sys.try_phi(h, e) else {
                return Verdict::unknown(vec![Evidence::Violation {
                    detail: "cocycle overflow".into(),
                }]);
            };
            if grp.is_identity(next) {
                continue;
            }
            let key: State = (next, graph.source(e).into_owned());
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if order.len() >= bounds.state_bound {
                        return Verdict::unknown(vec![Evidence::Exhausted {
                            bound: "state_bound".into(),
                            value: bounds.state_bound as u64,
                        }]);
                    }
                    order.push(key.clone());
                    index.insert(key, order.len() - 1);
                    via.push(path);
                    adj.push(Vec::new());
                    order.len() - 1
                }
            };
            adj[k].push((j, e));
        }
        k += 1;
    }
    // peel states with no successors; what remains lies on or leads to a cycle
    let n = order.len();
    let mut alive = vec![true; n];
    loop {
        let dead: Vec<usize> = (0..n)
            .filter(|&i| alive[i] && !adj[i].iter().any(|&(j, _)| alive[j]))
            .collect();
        if dead.is_empty() {
            break;
        }
        for i in dead {
            alive[i] = false;
        }
    }
    if let Some(s0) = (0..n).find(|&i| alive[i]) {
        let mut seen: Vec<usize> = Vec::new();
        let mut word: Vec<EdgeId> = Vec::new();
        let mut cur = s0;
        while !seen.contains(&cur) {
            seen.push(cur);
            let &(j, e) = adj[cur].iter().find(|&&(j, _)| alive[j]).unwrap();
            word.push(e);
            cur = j;
        }
        let at = seen.iter().position(|&s| s == cur).unwrap();
        let mut prefix = via[s0].edges().to_vec();
        prefix.extend_from_slice(&word[..at]);
        let x = Lasso::new(prefix, word[at..].to_vec()).expect("nonempty cycle");
        return Verdict::fails(vec![Evidence::Path {
            g: sys.format_group(g),
            set: sys.format_set(a),
            path: sys.format_lasso(&x),
            note: "infinite path fixed by g with no strongly fixed prefix".into(),
        }]);
    }
    Verdict::holds(vec![Evidence::Note {
        text: format!("every branch reaches cocycle value 1 ({} open states)", n),
    }])
}

/// Clause (2): no ultrafilter of the set algebra contains `A` when `A` is
/// infinite. An infinite set of intervals contains a tail, and the sets
/// containing a tail of that family form an ultrafilter.
pub fn no_ultrafilter_check(sys: &System, a: &VertexSet) -> Verdict {
    if a.is_finite() {
        return Verdict::holds(vec![Evidence::Note {
            text: "A is finite".into(),
        }]);
    }
    for f in 0..a.family_count() as u32 {
        let s = a.family(f);
        for (right, dir) in [(true, "+"), (false, "-")] {
            let has = if right {
                s.has_right_tail()
            } else {
                s.has_left_tail()
            };
            if has {
                return Verdict::fails(vec![Evidence::Ultrafilter {
                    set: sys.format_set(a),
                    family: sys.universe().names()[f as usize].clone(),
                    direction: dir.into(),
                }]);
            }
        }
    }
    Verdict::unknown(vec![Evidence::Note {
        text: "infinite set without a tail".into(),
    }])
}

/// Sets over which the premise is tested: singletons, sources, and their
/// intersections.
fn candidate_sets(sys: &System) -> Vec<VertexSet> {
    let graph = sys.graph();
    let u = sys.universe();
    let mut out: BTreeSet<VertexSet> = BTreeSet::new();
    for v in graph.vertex_representatives() {
        out.insert(u.singleton(v));
    }
    let reps = graph.edge_representatives();
    let mut sources: BTreeSet<VertexSet> =
        reps.iter().map(|&e| graph.source(e).into_owned()).collect();
    if graph.is_finite() {
        loop {
            let list: Vec<VertexSet> = sources.iter().cloned().collect();
            let mut grew = false;
            for i in 0..list.len() {
                for j in i + 1..list.len() {
                    let m = list[i].intersect(&list[j]);
                    if !m.is_empty() && sources.insert(m) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }
    out.extend(sources);
    out.into_iter().collect()
}

fn nonidentity_elements(sys: &System, bounds: &Bounds) -> Vec<GroupElem> {
    let grp = sys.group();
    sys.test_elements(bounds.group_ball_radius)
        .into_iter()
        .filter(|&g| !grp.is_identity(g))
        .collect()
}

fn scope_note(sys: &System, bounds: &Bounds) -> Option<Evidence> {
    (!sys.group().is_finite()).then(|| Evidence::Note {
        text: format!(
            "g ranges over the ball of radius {}",
            bounds.group_ball_radius
        ),
    })
}

pub fn check_condition_star(sys: &System, bounds: &Bounds) -> Verdict {
    let graph = sys.graph();
    if !graph.is_finite()
        && graph
            .edge_representatives()
            .iter()
            .all(|e| sys.edge_shift(e.family).unwrap_or(0) != 0)
    {
        return Verdict::holds(vec![Evidence::Note {
            text: "every nonzero n moves every edge, so no (g, A) satisfies the premise".into(),
        }]);
    }
    let sets = candidate_sets(sys);
    let mut jobs = Vec::new();
    for g in nonidentity_elements(sys, bounds) {
        for a in &sets {
            jobs.push((g, a.clone()));
        }
    }
    let results = par::map(&jobs, |(g, a)| {
        let premise = fixes_all_paths(sys, *g, a, bounds);
        match premise.status {
            Status::Fails => None,
            Status::Unknown => Some(premise),
            Status::Holds => {
                let mut v = Verdict::all([
                    strongly_fixed_prefix_check(sys, *g, a, bounds),
                    no_ultrafilter_check(sys, a),
                ]);
                v.witnesses.insert(
                    0,
                    path_evidence(
                        sys,
                        *g,
                        a,
                        &Path::omega(),
                        "g fixes every infinite path from A",
                    ),
                );
                Some(v)
            }
        }
    });
    let fired: Vec<Verdict> = results.into_iter().flatten().collect();
    let count = fired.len();
    let mut v = Verdict::all(fired);
    if v.is_holds() {
        v.witnesses.clear();
        let text = if count == 0 {
            "no (g, A) satisfies the premise".to_string()
        } else {
            format!("{count} premise instances, each with strongly fixed prefixes")
        };
        v.witnesses.push(Evidence::Note { text });
        v.witnesses.extend(scope_note(sys, bounds));
    }
    v
}

/// For every vertex `v` and `g ≠ 1`, some `α` with `r(α) = {v}` and
/// `g·α ≠ α`. When none is found within bounds, `g` fixing every path
/// from `v` refutes the hypothesis.
pub fn check_paths_moved(sys: &System, bounds: &Bounds) -> Verdict {
    let graph = sys.graph();
    let u = sys.universe();
    let w = window(bounds);
    let vertices = graph.vertex_representatives();
    let elems = nonidentity_elements(sys, bounds);
    let mut jobs = Vec::new();
    for &v in &vertices {
        for &g in &elems {
            jobs.push((v, g));
        }
    }
    let results = par::map(&jobs, |&(v, g)| {
        let mut layer: Vec<Path> = graph
            .edges_into_vertex(v)
            .into_iter()
            .map(Path::edge)
            .collect();
        for depth in 1..=bounds.max_path_len {
            for p in &layer {
                match sys.try_act_path(g, p) {
                    Ok((q, _)) if q != *p => {
                        return Verdict::holds(vec![Evidence::Moves {
                            vertex: u.vertex_name(v),
                            g: sys.format_group(g),
                            path: sys.format_path(p),
                        }])
                    }
                    Ok(_) => {}
                    Err(_) => {
                        return Verdict::unknown(vec![Evidence::Violation {
                            detail: "cocycle overflow".into(),
                        }])
                    }
                }
            }
            if depth < bounds.max_path_len {
                layer = layer
                    .iter()
                    .flat_map(|p| {
                        successors(sys, p.last().unwrap(), w)
                            .into_iter()
                            .map(|e| p.push(e))
                    })
                    .collect();
            }
        }
        let fix = fixes_all_paths(sys, g, &u.singleton(v), bounds);
        if fix.is_holds() {
            Verdict::fails(vec![Evidence::Path {
                g: sys.format_group(g),
                set: sys.format_set(&u.singleton(v)),
                path: "w".into(),
                note: "g fixes every path with this range".into(),
            }])
        } else {
            Verdict::unknown(vec![Evidence::Exhausted {
                bound: "max_path_len".into(),
                value: bounds.max_path_len as u64,
            }])
        }
    });
    let mut v = Verdict::all(results);
    v.witnesses.extend(scope_note(sys, bounds));
    if !graph.is_finite() {
        v.witnesses.push(Evidence::Note {
            text: "vertex family representatives; translation invariant".into(),
        });
    }
    v
}
