//! Fixed points of `θ_s`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::action::System;
use crate::error::{Error, Result};
use crate::filters::{SetFilter, TightFilter};
use crate::group::GroupElem;
use crate::semigroup::Elem;
use crate::ultragraph::{Lasso, Path};
use crate::verdict::Bounds;

use super::cycles::{is_g_cycle, GCycle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixClass {
    /// Some idempotent below `s` contains the filter.
    Trivial,
    NontrivialCandidate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoints {
    pub points: Vec<(TightFilter, FixClass)>,
    /// False when a bound or an unsupported case cut the search short.
    pub complete: bool,
}

/// Whether `y` has an initial subpath strongly fixed by `g`, following the
/// states `(position in cycle, h)` until they repeat.
fn has_strongly_fixed_prefix(
    sys: &System,
    g: GroupElem,
    y: &Lasso,
    bounds: &Bounds,
) -> Option<bool> {
    let grp = sys.group();
    if grp.is_identity(g) {
        return Some(true);
    }
    let mut h = g;
    let mut seen = HashSet::new();
    let p = y.prefix().len();
    for k in 0.. {
        if k >= p && !seen.insert(((k - p) % y.cycle().len(), h)) {
            return Some(false);
        }
        if seen.len() > bounds.state_bound {
            return None;
        }
        let e = y.letter(k);
        if sys.act_edge(h, e) != e {
            return Some(false);
        }
        h = sys.try_phi(h, e).ok()?;
        if grp.is_identity(h) {
            return Some(true);
        }
    }
    unreachable!()
}

/// Fixed points of `θ_s` for `s = (α, A, g, β)`.
///
/// When `|α| ≠ |β|` there is at most one, of path type, coming from a
/// G-cycle. When `α = β` the search covers lassos of size up to
/// `lasso_bound` on finite ultragraphs and tail filters at `α`.
pub fn fixed_points(sys: &System, s: &Elem, bounds: &Bounds) -> Result<FixedPoints> {
    let Elem::Quad(q) = s else {
        return Err(Error::Domain);
    };
    let grp = sys.group();
    let mut points = Vec::new();
    let mut complete = true;
    if q.alpha.len() != q.beta.len() {
        let (base, g, gamma, set) = if let Some(gamma) = q.alpha.strip_prefix(&q.beta) {
            (q.beta.clone(), q.g, gamma, q.set.clone())
        } else if let Some(gamma) = q.beta.strip_prefix(&q.alpha) {
            let gi = grp.inv(q.g);
            (q.alpha.clone(), gi, gamma, sys.act_set(gi, &q.set))
        } else {
            return Ok(FixedPoints { points, complete });
        };
        let r = sys.act_vertex(g, sys.graph().range(gamma.edges()[0]));
        if is_g_cycle(sys, g, &gamma) && set.contains(r) {
            match sys.cycle_path(g, &gamma, bounds.state_bound) {
                Some(x) => {
                    let f = TightFilter::Path(x.prepend(&base));
                    points.push((f, FixClass::NontrivialCandidate));
                }
                None => complete = false,
            }
        }
    } else if q.alpha == q.beta {
        let dom = sys.act_set(grp.inv(q.g), &q.set);
        if sys.graph().is_finite() {
            for y in sys.enumerate_path_filters(&dom, bounds.lasso_bound)? {
                match sys.act_lasso(q.g, &y, bounds.state_bound) {
                    Some(gy) if gy == y => {}
                    Some(_) => continue,
                    None => {
                        complete = false;
                        continue;
                    }
                }
                let class = match has_strongly_fixed_prefix(sys, q.g, &y, bounds) {
                    Some(true) => FixClass::Trivial,
                    Some(false) => FixClass::NontrivialCandidate,
                    None => {
                        complete = false;
                        FixClass::NontrivialCandidate
                    }
                };
                points.push((TightFilter::Path(y.prepend(&q.alpha)), class));
            }
        } else {
            complete = false;
            for fam in 0..sys.universe().family_count() as u32 {
                for right in [true, false] {
                    let filter = SetFilter::End { family: fam, right };
                    let Ok(f) = sys.finite_filter(q.alpha.clone(), filter) else {
                        continue;
                    };
                    if sys.in_domain(s, &f) {
                        let class = if grp.is_identity(q.g) {
                            FixClass::Trivial
                        } else {
                            FixClass::NontrivialCandidate
                        };
                        points.push((f, class));
                    }
                }
            }
        }
    }
    points.retain(|(f, _)| {
        sys.in_domain(s, f)
            && matches!(sys.theta_apply(s, f, bounds.state_bound), Ok(Some(ref img)) if img == f)
    });
    points.sort();
    Ok(FixedPoints { points, complete })
}

/// For a path-type fixed point `F_x`, checks that each cylinder
/// `Z(x_1...x_k, s(x_k))`, `k ≤ lasso_bound`, holds a filter in the domain
/// of `s` that `θ_s` moves. `None` if `F` is not path type or the
/// ultragraph is not finite.
pub fn interior_scan(sys: &System, s: &Elem, f: &TightFilter, bounds: &Bounds) -> Option<bool> {
    let TightFilter::Path(x) = f else { return None };
    if !sys.graph().is_finite() {
        return None;
    }
    let all = sys.universe().all();
    let depth = bounds.lasso_bound;
    let candidates = sys.enumerate_path_filters(&all, 2 * depth).ok()?;
    for k in 1..=depth {
        let prefix = Path::new(x.realize(k));
        let moved = candidates.iter().any(|y| {
            if !y.starts_with(&prefix) {
                return false;
            }
            let g = TightFilter::Path(y.clone());
            sys.in_domain(s, &g) && matches!(sys.theta_apply(s, &g, bounds.state_bound), Ok(Some(ref img)) if *img != g)
        });
        if !moved {
            return Some(false);
        }
    }
    Some(true)
}

/// The G-cycle behind a path-type fixed point of an element with
/// `|α| ≠ |β|`, if any.
pub fn fixed_point_cycle(sys: &System, s: &Elem) -> Option<GCycle> {
    let Elem::Quad(q) = s else { return None };
    if let Some(gamma) = q.alpha.strip_prefix(&q.beta).filter(|p| !p.is_empty()) {
        return is_g_cycle(sys, q.g, &gamma).then_some(GCycle {
            g: q.g,
            path: gamma,
        });
    }
    let gamma = q.beta.strip_prefix(&q.alpha).filter(|p| !p.is_empty())?;
    let gi = sys.group().inv(q.g);
    is_g_cycle(sys, gi, &gamma).then_some(GCycle { g: gi, path: gamma })
}
