//! G-cycles, entrances and the infinite path of a G-cycle.

use serde::{Deserialize, Serialize};

use crate::action::System;
use crate::error::Result;
use crate::group::GroupElem;
use crate::par;
use crate::sets::IntervalSet;
use crate::ultragraph::{EdgeId, Lasso, Path};
use crate::verdict::{Bounds, Evidence, Verdict};

/// `(g, γ)` with `g·r(γ) ⊆ s(γ)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GCycle {
    pub g: GroupElem,
    pub path: Path,
}

/// Index window used for edge families: `[-w, w]` around the origin.
pub(crate) fn window(bounds: &Bounds) -> i64 {
    (bounds.max_path_len + bounds.group_ball_radius) as i64
}

/// Edges that may follow `e`. Family slices are clipped to `[-w, w]`.
pub(crate) fn successors(sys: &System, e: EdgeId, w: i64) -> Vec<EdgeId> {
    let ins = sys.graph().edges_into(&sys.graph().source(e));
    let mut out = ins.explicit.clone();
    let clip = IntervalSet::range(-w, w);
    for (f, slice) in &ins.families {
        let pts = slice.intersect(&clip).points().unwrap_or_default();
        out.extend(pts.into_iter().map(|index| EdgeId { family: *f, index }));
    }
    out.sort_unstable();
    out
}

/// Paths to test as G-cycles: every path up to `max_path_len` on a finite
/// ultragraph; on an indexed one, paths starting at some `e_0` with later
/// indices inside the window (G-cycles are translation invariant).
pub(crate) fn candidate_paths(sys: &System, bounds: &Bounds) -> Result<Vec<Path>> {
    let graph = sys.graph();
    if graph.is_finite() {
        return graph.enumerate_paths(&sys.universe().all(), bounds.max_path_len);
    }
    let w = window(bounds);
    let mut out = Vec::new();
    let mut layer: Vec<Path> = graph
        .edge_representatives()
        .into_iter()
        .map(Path::edge)
        .collect();
    for len in 1..=bounds.max_path_len {
        out.extend(layer.iter().cloned());
        if len == bounds.max_path_len {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|p| {
                successors(sys, p.last().unwrap(), w)
                    .into_iter()
                    .map(|e| p.push(e))
            })
            .collect();
    }
    out.sort();
    Ok(out)
}

pub fn is_g_cycle(sys: &System, g: GroupElem, path: &Path) -> bool {
    match (path.first(), path.last()) {
        (Some(first), Some(last)) => sys
            .graph()
            .source(last)
            .contains(sys.act_vertex(g, sys.graph().range(first))),
        _ => false,
    }
}

/// All G-cycles with `g` in the ball and `|γ| ≤ max_path_len`, sorted by
/// `(g, γ)`.
pub fn find_g_cycles(sys: &System, bounds: &Bounds) -> Result<Vec<GCycle>> {
    let paths = candidate_paths(sys, bounds)?;
    let elems = sys.group().ball(bounds.group_ball_radius);
    let mut out = par::flat_map(&elems, |&g| {
        paths
            .iter()
            .filter(|p| is_g_cycle(sys, g, p))
            .map(|p| GCycle { g, path: p.clone() })
            .collect()
    });
    out.sort();
    Ok(out)
}

/// The edge expected after position `i` of the cycle's infinite path.
fn expected_next(sys: &System, c: &GCycle, i: usize) -> EdgeId {
    let e = c.path.edges();
    if i + 1 < e.len() {
        e[i + 1]
    } else {
        sys.act_edge(c.g, e[0])
    }
}

/// An edge of `s(e_i) U^1` other than the expected successor, for the first
/// position where one exists.
pub fn entrance_witness(sys: &System, c: &GCycle) -> Option<EdgeId> {
    let graph = sys.graph();
    for (i, &e) in c.path.edges().iter().enumerate() {
        let want = expected_next(sys, c, i);
        let ins = graph.edges_into(&graph.source(e));
        if let Some(x) = ins.explicit.iter().find(|&&x| x != want) {
            return Some(*x);
        }
        for (f, slice) in &ins.families {
            for &(lo, hi) in slice.intervals() {
                let base = if lo != i64::MIN {
                    lo
                } else if hi != i64::MAX {
                    hi
                } else {
                    0
                };
                for index in [base, base.saturating_add(1), base.saturating_sub(1)] {
                    let cand = EdgeId { family: *f, index };
                    if slice.contains(index) && cand != want {
                        return Some(cand);
                    }
                }
            }
        }
    }
    None
}

/// Not the no-entrance pattern `s(e_i) U^1 = {e_(i+1)}`, `s(e_n) U^1 = {g·e_1}`.
pub fn has_entrance(sys: &System, c: &GCycle) -> bool {
    let graph = sys.graph();
    c.path
        .edges()
        .iter()
        .any(|&e| graph.edges_into(&graph.source(e)).len() != Some(1))
}

/// Some `e ≠ e_i` with `r(e) = r(e_i)`.
pub fn has_entrance_literal(sys: &System, c: &GCycle) -> bool {
    let graph = sys.graph();
    c.path
        .edges()
        .iter()
        .any(|&e| graph.edges_into_vertex(graph.range(e)).len() > 1)
}

/// `γ_1 γ_2 ...` with `γ_(n+1) = g_n·γ_n`, `g_(n+1) = φ(g_n, γ_n)`.
pub fn cycle_infinite_path(sys: &System, c: &GCycle, bounds: &Bounds) -> Option<Lasso> {
    sys.cycle_path(c.g, &c.path, bounds.state_bound)
}

/// Evidence record for a G-cycle.
pub fn g_cycle_evidence(sys: &System, c: &GCycle) -> Evidence {
    Evidence::GCycle {
        g: sys.format_group(c.g),
        path: sys.format_path(&c.path),
        entrance: entrance_witness(sys, c).map(|e| sys.graph().edge_name(e)),
    }
}

/// Whether every G-cycle has an entrance. An entrance-free G-cycle forces a
/// chain of singleton in-sets starting at its first edge, so the check
/// follows that chain from every edge. Exact on finite ultragraphs; on
/// indexed ones the chain is followed for `max_path_len` steps from each
/// family representative.
pub fn check_entrances(sys: &System, bounds: &Bounds) -> Verdict {
    let graph = sys.graph();
    let (starts, limit, exact) = match graph.edges() {
        Some(all) => {
            let n = all.len();
            (all, n + 1, true)
        }
        None => (graph.edge_representatives(), bounds.max_path_len, false),
    };
    let results = par::map(&starts, |&e1| {
        let mut path = vec![e1];
        for _ in 0..limit {
            let ins = graph.edges_into(&graph.source(*path.last().unwrap()));
            if ins.len() != Some(1) {
                return Ok(());
            }
            let next = ins.to_vec().expect("singleton")[0];
            if let Some(g) = sys.solve_edge(e1, next) {
                return Err(Some(GCycle {
                    g,
                    path: Path::new(path),
                }));
            }
            path.push(next);
        }
        if exact {
            Ok(())
        } else {
            Err(None)
        }
    });
    let mut unresolved = Vec::new();
    for (r, &e1) in results.into_iter().zip(&starts) {
        match r {
            Ok(()) => {}
            Err(Some(c)) => {
                return Verdict::fails(vec![g_cycle_evidence(sys, &c)]);
            }
            Err(None) => unresolved.push(Evidence::Note {
                text: format!(
                    "singleton in-sets continue past {limit} steps from {}",
                    graph.edge_name(e1)
                ),
            }),
        }
    }
    if !unresolved.is_empty() {
        unresolved.push(Evidence::Exhausted {
            bound: "max_path_len".into(),
            value: bounds.max_path_len as u64,
        });
        return Verdict::unknown(unresolved);
    }
    let scope = if exact {
        "every G-cycle has an entrance (exhaustive over chains of singleton in-sets)"
    } else {
        "every G-cycle has an entrance (in-sets of family representatives, translation invariant)"
    };
    Verdict::holds(vec![Evidence::Note { text: scope.into() }])
}
