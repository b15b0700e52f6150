//! The inverse semigroup of quadruples `(α, A, g, β)` with a zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::System;
use crate::error::{Error, Result};
use crate::group::GroupElem;
use crate::sets::VertexSet;
use crate::ultragraph::Path;

/// `(α, A, g, β)` with `∅ ≠ A ⊆ s(α) ∩ g·s(β)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Quad {
    pub alpha: Path,
    pub set: VertexSet,
    pub g: GroupElem,
    pub beta: Path,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Elem {
    Zero,
    Quad(Quad),
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        matches!(self, Elem::Zero)
    }

    pub fn quad(&self) -> Option<&Quad> {
        match self {
            Elem::Zero => None,
            Elem::Quad(q) => Some(q),
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:?}; {:?}; {}; {:?})",
            self.alpha, self.set, self.g.0, self.beta
        )
    }
}

impl System {
    /// Why `(α, A, g, β)` is not an element, if it is not.
    pub fn quad_violation(
        &self,
        alpha: &Path,
        set: &VertexSet,
        g: GroupElem,
        beta: &Path,
    ) -> Option<String> {
        if let Err(e) = self
            .graph()
            .check_word(alpha.edges())
            .and_then(|_| self.graph().check_word(beta.edges()))
        {
            return Some(e.to_string());
        }
        if set.family_count() != self.universe().family_count() {
            return Some("set belongs to another universe".into());
        }
        if set.is_empty() {
            return Some("A is empty".into());
        }
        if !set.is_subset(&self.graph().path_source(alpha)) {
            return Some("A is not contained in s(α)".into());
        }
        if !set.is_subset(&self.act_set(g, &self.graph().path_source(beta))) {
            return Some("A is not contained in g·s(β)".into());
        }
        None
    }

    /// Builds `(α, A, g, β)`, rejecting tuples outside the semigroup.
    pub fn make(&self, alpha: Path, set: VertexSet, g: GroupElem, beta: Path) -> Result<Elem> {
        match self.quad_violation(&alpha, &set, g, &beta) {
            Some(reason) => Err(Error::Constraint(reason)),
            None => Ok(Elem::Quad(Quad {
                alpha,
                set,
                g,
                beta,
            })),
        }
    }

    /// `q_(α, A) = (α, A, 1, α)`.
    pub fn idempotent(&self, alpha: Path, set: VertexSet) -> Result<Elem> {
        let id = self.identity();
        self.make(alpha.clone(), set, id, alpha)
    }

    pub fn is_idempotent(&self, s: &Elem) -> bool {
        match s {
            Elem::Zero => true,
            Elem::Quad(q) => self.group().is_identity(q.g) && q.alpha == q.beta,
        }
    }

    /// # Panics
    /// If a cocycle value overflows.
    pub fn multiply(&self, s: &Elem, t: &Elem) -> Elem {
        self.try_multiply(s, t).expect("cocycle value overflow")
    }

    pub fn try_multiply(&self, s: &Elem, t: &Elem) -> Result<Elem> {
        let (Elem::Quad(s), Elem::Quad(t)) = (s, t) else {
            return Ok(Elem::Zero);
        };
        let graph = self.graph();
        let grp = self.group();
        let (alpha, a, g, beta) = (&s.alpha, &s.set, s.g, &s.beta);
        let (gamma, b, h, delta) = (&t.alpha, &t.set, t.g, &t.beta);

        let out = if let Some(eps) = gamma.strip_prefix(beta).filter(|p| !p.is_empty()) {
            // γ = βε
            let r = self.act_vertex(g, graph.range(eps.edges()[0]));
            if !a.contains(r) {
                return Ok(Elem::Zero);
            }
            let (g_eps, phi) = self.try_act_path(g, &eps)?;
            let set = self
                .act_set(g, &graph.path_source(&eps))
                .intersect(&self.act_set(phi, b));
            Quad {
                alpha: alpha.concat(&g_eps),
                set,
                g: grp.try_mul(phi, h)?,
                beta: delta.clone(),
            }
        } else if let Some(eps) = beta.strip_prefix(gamma).filter(|p| !p.is_empty()) {
            // β = γε
            if !b.contains(graph.range(eps.edges()[0])) {
                return Ok(Elem::Zero);
            }
            let h_inv = grp.inv(h);
            let (h_eps, phi) = self.try_act_path(h_inv, &eps)?;
            let k = grp.try_mul(g, grp.inv(phi))?;
            let set = a.intersect(&self.act_set(grp.try_mul(k, h_inv)?, &graph.path_source(beta)));
            Quad {
                alpha: alpha.clone(),
                set,
                g: k,
                beta: delta.concat(&h_eps),
            }
        } else if gamma == beta {
            let set = a.intersect(&self.act_set(g, b));
            if set.is_empty() {
                return Ok(Elem::Zero);
            }
            Quad {
                alpha: alpha.clone(),
                set,
                g: grp.try_mul(g, h)?,
                beta: delta.clone(),
            }
        } else {
            return Ok(Elem::Zero);
        };
        debug_assert!(
            self.quad_violation(&out.alpha, &out.set, out.g, &out.beta)
                .is_none(),
            "product left the semigroup: {out}"
        );
        Ok(Elem::Quad(out))
    }

    /// `(α, A, g, β)* = (β, g⁻¹·A, g⁻¹, α)`.
    pub fn invert(&self, s: &Elem) -> Elem {
        match s {
            Elem::Zero => Elem::Zero,
            Elem::Quad(q) => {
                let gi = self.group().inv(q.g);
                let out = Quad {
                    alpha: q.beta.clone(),
                    set: self.act_set(gi, &q.set),
                    g: gi,
                    beta: q.alpha.clone(),
                };
                debug_assert!(self
                    .quad_violation(&out.alpha, &out.set, out.g, &out.beta)
                    .is_none());
                Elem::Quad(out)
            }
        }
    }

    fn idempotent_parts<'a>(&self, q: &'a Elem) -> Result<(&'a Path, &'a VertexSet)> {
        match q {
            Elem::Quad(x) if self.is_idempotent(q) => Ok((&x.alpha, &x.set)),
            _ => Err(Error::NotIdempotent),
        }
    }

    /// Order on idempotents: `q_(α,A) ≤ q_(β,B)` iff `α = β` and `A ⊆ B`, or
    /// `α = βγ` with `|γ| ≥ 1` and `r(γ) ⊆ B`.
    pub fn leq(&self, q1: &Elem, q2: &Elem) -> Result<bool> {
        let (alpha, a) = self.idempotent_parts(q1)?;
        let (beta, b) = self.idempotent_parts(q2)?;
        if alpha == beta {
            return Ok(a.is_subset(b));
        }
        Ok(match alpha.strip_prefix(beta) {
            Some(gamma) if !gamma.is_empty() => b.contains(self.graph().range(gamma.edges()[0])),
            _ => false,
        })
    }

    /// `q1 ≤ q2` tested as `q1 q2 = q1`.
    pub fn leq_by_product(&self, q1: &Elem, q2: &Elem) -> Result<bool> {
        self.idempotent_parts(q1)?;
        self.idempotent_parts(q2)?;
        Ok(self.multiply(q1, q2) == *q1)
    }

    pub fn intersects(&self, q1: &Elem, q2: &Elem) -> Result<bool> {
        self.idempotent_parts(q1)?;
        self.idempotent_parts(q2)?;
        Ok(!self.multiply(q1, q2).is_zero())
    }

    /// `(α; A; g; β)` with instance names, or `0`.
    pub fn format_elem(&self, s: &Elem) -> String {
        match s {
            Elem::Zero => "0".into(),
            Elem::Quad(q) => format!(
                "({}; {}; {}; {})",
                self.format_path(&q.alpha),
                self.format_set(&q.set),
                self.format_group(q.g),
                self.format_path(&q.beta)
            ),
        }
    }

    /// Every element with `|α|, |β| ≤ max_len` and `A` ranging over the
    /// nonempty subsets of `s(α) ∩ g·s(β)`. Finite instances only.
    pub fn enumerate_elements(&self, max_len: usize) -> Result<Vec<Elem>> {
        let graph = self.graph();
        let elems = self
            .group()
            .elements()
            .ok_or_else(|| Error::Unsupported("element enumeration needs a finite group".into()))?;
        if !graph.is_finite() {
            return Err(Error::Unsupported(
                "element enumeration needs a finite universe".into(),
            ));
        }
        let mut paths = vec![Path::omega()];
        paths.extend(graph.enumerate_paths(&self.universe().all(), max_len)?);
        let mut out = Vec::new();
        for alpha in &paths {
            let sa = graph.path_source(alpha);
            for &g in &elems {
                for beta in &paths {
                    let cap = sa.intersect(&self.act_set(g, &graph.path_source(beta)));
                    for set in nonempty_subsets(&cap) {
                        out.push(Elem::Quad(Quad {
                            alpha: alpha.clone(),
                            set,
                            g,
                            beta: beta.clone(),
                        }));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Nonempty subsets of a finite single-family set.
pub fn nonempty_subsets(a: &VertexSet) -> Vec<VertexSet> {
    let Some(pts) = a.family(0).points() else {
        return Vec::new();
    };
    let n = pts.len();
    assert!(n < 32, "subset enumeration over {n} points");
    (1u32..(1 << n))
        .map(|mask| {
            let chosen = (0..n).filter(|k| mask & (1 << k) != 0).map(|k| pts[k]);
            VertexSet::from_families(vec![crate::sets::IntervalSet::from_points(chosen)])
        })
        .collect()
}
