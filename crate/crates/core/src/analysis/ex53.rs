//! Checks specific to the three-vertex family with two swapped loops and
//! an extra edge into a fixed vertex.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::action::System;
use crate::error::{Error, Result};
use crate::group::{Group, GroupElem};
use crate::sets::Vertex;
use crate::ultragraph::{EdgeId, Path};
use crate::verdict::{Bounds, Status};

use super::star::fixes_all_paths;

/// The recognised roles in an instance of the shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ex53Shape {
    pub v0: Vertex,
    pub v1: Vertex,
    pub w: Vertex,
    pub e0: EdgeId,
    pub e1: EdgeId,
    pub f: EdgeId,
}

fn mismatch(msg: &str) -> Error {
    Error::ShapeMismatch(msg.to_string())
}

/// Detects the shape: `Z` acting with period 2, vertices `v0 ↔ v1` swapped
/// and `w` fixed, one edge into each vertex, `e0 ↔ e1` swapped, `f` fixed,
/// and every source equal to `{v0, v1}`.
pub fn detect_ex53_shape(sys: &System) -> Result<Ex53Shape> {
    let graph = sys.graph();
    if !matches!(sys.group(), Group::Integers) || sys.action().period() != Some(2) {
        return Err(mismatch("needs Z acting with period 2"));
    }
    let vs = sys
        .universe()
        .vertices()
        .ok_or_else(|| mismatch("needs a finite universe"))?;
    let es = graph.edges().unwrap_or_default();
    if vs.len() != 3 || es.len() != 3 {
        return Err(mismatch("needs three vertices and three edges"));
    }
    let one = GroupElem(1);
    let fixed: Vec<Vertex> = vs
        .iter()
        .copied()
        .filter(|&v| sys.act_vertex(one, v) == v)
        .collect();
    let [w] = fixed[..] else {
        return Err(mismatch("needs exactly one fixed vertex"));
    };
    let moved: Vec<Vertex> = vs.iter().copied().filter(|&v| v != w).collect();
    let (v0, v1) = (moved[0], moved[1]);
    let only_in = |v: Vertex| -> Result<EdgeId> {
        match graph.edges_into_vertex(v)[..] {
            [e] => Ok(e),
            _ => Err(mismatch("each vertex must receive exactly one edge")),
        }
    };
    let (e0, e1, f) = (only_in(v0)?, only_in(v1)?, only_in(w)?);
    if sys.act_edge(one, e0) != e1 || sys.act_edge(one, f) != f {
        return Err(mismatch("loops must be swapped and f fixed"));
    }
    let pair = sys
        .universe()
        .singleton(v0)
        .union(&sys.universe().singleton(v1));
    if [e0, e1, f].iter().any(|&e| *graph.source(e) != pair) {
        return Err(mismatch("every source must be {v0, v1}"));
    }
    Ok(Ex53Shape {
        v0,
        v1,
        w,
        e0,
        e1,
        f,
    })
}

/// `(φ(1, e0), φ(1, e1))`.
pub fn ex53_parameters(sys: &System) -> Result<(i64, i64)> {
    let s = detect_ex53_shape(sys)?;
    Ok((
        sys.try_phi(GroupElem(1), s.e0)?.0,
        sys.try_phi(GroupElem(1), s.e1)?.0,
    ))
}

/// `t0 + t1 ∈ {0} ∪ (2Z + 1)`.
pub fn parity_criterion_ex53(sys: &System) -> Result<bool> {
    let (t0, t1) = ex53_parameters(sys)?;
    let sum = t0.checked_add(t1).ok_or(Error::Overflow)?;
    Ok(sum == 0 || sum.rem_euclid(2) == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormOutcome {
    /// `φ(n, α)` from the cocycle recursion.
    pub derived: i64,
    /// `n t^|α|` with `t = (t0 + t1) / 2`.
    pub formula: String,
    pub equal: bool,
    /// Status of "n fixes every infinite path from {v0}".
    pub premise: Status,
}

pub fn closed_form_oracle(
    sys: &System,
    n: i64,
    alpha: &Path,
    bounds: &Bounds,
) -> Result<ClosedFormOutcome> {
    let shape = detect_ex53_shape(sys)?;
    if n == 0 || n % 2 != 0 {
        return Err(Error::Constraint("n must be even and nonzero".into()));
    }
    let graph = sys.graph();
    match alpha.first() {
        Some(e) if [shape.v0, shape.v1].contains(&graph.range(e)) => {}
        _ => return Err(Error::Constraint("α must have range {v0} or {v1}".into())),
    }
    let (t0, t1) = ex53_parameters(sys)?;
    let derived = sys.try_act_path(GroupElem(n), alpha)?.1 .0;
    let t = BigRational::new(BigInt::from(t0) + BigInt::from(t1), BigInt::from(2));
    let power = (0..alpha.len()).fold(BigRational::one(), |acc, _| acc * &t);
    let formula = BigRational::from_integer(BigInt::from(n)) * power;
    let equal = BigRational::from_integer(BigInt::from(derived)) == formula;
    let premise = fixes_all_paths(
        sys,
        GroupElem(n),
        &sys.universe().singleton(shape.v0),
        bounds,
    )
    .status;
    let formula = if formula.is_zero() {
        "0".to_string()
    } else {
        formula.to_string()
    };
    Ok(ClosedFormOutcome {
        derived,
        formula,
        equal,
        premise,
    })
}
