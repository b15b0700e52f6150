//! Tight filters, cylinders and the partial action `θ`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::action::System;
use crate::error::{parse_err, Error, Result};
use crate::semigroup::Elem;
use crate::sets::VertexSet;
use crate::ultragraph::{Lasso, Path};

/// A filter in the set algebra whose members are all infinite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SetFilter {
    /// Upward closure of one infinite set.
    Principal(VertexSet),
    /// Sets containing a right (`right = true`) or left tail of a family.
    End { family: u32, right: bool },
}

impl SetFilter {
    pub fn contains(&self, c: &VertexSet) -> bool {
        match self {
            SetFilter::Principal(b) => b.is_subset(c),
            SetFilter::End {
                family,
                right: true,
            } => c.family(*family).has_right_tail(),
            SetFilter::End {
                family,
                right: false,
            } => c.family(*family).has_left_tail(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TightFilter {
    /// `F_x` for an eventually periodic infinite path.
    Path(Lasso),
    /// `F_(α, B)`.
    Finite { alpha: Path, filter: SetFilter },
}

impl System {
    /// `F_(α, B)`, checking that `B` lives in the sets below `s(α)` and has
    /// only infinite members.
    pub fn finite_filter(&self, alpha: Path, filter: SetFilter) -> Result<TightFilter> {
        self.graph().check_word(alpha.edges())?;
        let src = self.graph().path_source(&alpha);
        match &filter {
            SetFilter::Principal(b) => {
                if b.is_finite() {
                    return Err(Error::Constraint("filter base must be infinite".into()));
                }
                if !b.is_subset(&src) {
                    return Err(Error::Constraint("filter base must lie in s(α)".into()));
                }
            }
            SetFilter::End { family, .. } => {
                if *family as usize >= self.universe().family_count() || !filter.contains(&src) {
                    return Err(Error::Constraint("s(α) is not in the tail filter".into()));
                }
            }
        }
        Ok(TightFilter::Finite { alpha, filter })
    }

    /// `q_(β, C) ∈ F`.
    pub fn filter_contains(&self, f: &TightFilter, beta: &Path, c: &VertexSet) -> bool {
        let graph = self.graph();
        match f {
            TightFilter::Path(x) => {
                if !x.starts_with(beta) {
                    return false;
                }
                let next = x.letter(beta.len());
                c.contains(graph.range(next)) && c.is_subset(&graph.path_source(beta))
            }
            TightFilter::Finite { alpha, filter } => {
                if alpha == beta {
                    filter.contains(c) && c.is_subset(&graph.path_source(beta))
                } else if let Some(rest) = alpha.strip_prefix(beta) {
                    c.contains(graph.range(rest.edges()[0]))
                        && c.is_subset(&graph.path_source(beta))
                } else {
                    false
                }
            }
        }
    }

    /// Membership of an idempotent.
    pub fn filter_contains_elem(&self, f: &TightFilter, q: &Elem) -> Result<bool> {
        match q {
            Elem::Quad(x) if self.is_idempotent(q) => Ok(self.filter_contains(f, &x.alpha, &x.set)),
            _ => Err(Error::NotIdempotent),
        }
    }

    /// `F ∈ Z(α, A)`.
    pub fn in_cylinder(&self, f: &TightFilter, alpha: &Path, a: &VertexSet) -> bool {
        self.filter_contains(f, alpha, a)
    }

    /// `F ∈ D^(s*s)`.
    pub fn in_domain(&self, s: &Elem, f: &TightFilter) -> bool {
        match s {
            Elem::Zero => false,
            Elem::Quad(q) => {
                let gi = self.group().inv(q.g);
                self.filter_contains(f, &q.beta, &self.act_set(gi, &q.set))
            }
        }
    }

    /// `θ_s(F)`. `Ok(None)` means the lasso orbit did not close within
    /// `state_bound` states.
    pub fn theta_apply(
        &self,
        s: &Elem,
        f: &TightFilter,
        state_bound: usize,
    ) -> Result<Option<TightFilter>> {
        if !self.in_domain(s, f) {
            return Err(Error::Domain);
        }
        let Elem::Quad(q) = s else { unreachable!() };
        match f {
            TightFilter::Path(x) => {
                let y = x
                    .strip_prefix(&q.beta)
                    .expect("domain membership implies the prefix");
                Ok(self
                    .act_lasso(q.g, &y, state_bound)
                    .map(|gy| TightFilter::Path(gy.prepend(&q.alpha))))
            }
            TightFilter::Finite { alpha: a0, filter } => {
                let gamma = a0
                    .strip_prefix(&q.beta)
                    .expect("domain membership implies the prefix");
                let Ok((g_gamma, phi)) = self.try_act_path(q.g, &gamma) else {
                    return Ok(None);
                };
                let alpha = q.alpha.concat(&g_gamma);
                let filter = match filter {
                    SetFilter::Principal(b) => {
                        let mut base = self
                            .act_set(phi, b)
                            .intersect(&self.graph().path_source(&alpha));
                        if gamma.is_omega() {
                            base = base.intersect(&q.set);
                        }
                        SetFilter::Principal(base)
                    }
                    end => end.clone(),
                };
                Ok(Some(TightFilter::Finite { alpha, filter }))
            }
        }
    }

    /// Canonical lassos of size at most `lasso_bound` whose range lies in
    /// `in_set`. Finite universes only.
    pub fn enumerate_path_filters(
        &self,
        in_set: &VertexSet,
        lasso_bound: usize,
    ) -> Result<Vec<Lasso>> {
        let graph = self.graph();
        if !graph.is_finite() {
            return Err(Error::Unsupported(
                "path filter enumeration needs a finite universe".into(),
            ));
        }
        let mut out = BTreeSet::new();
        for w in graph.enumerate_paths(in_set, lasso_bound)? {
            let e = w.edges();
            for p in 0..e.len() {
                if graph.follows(e[e.len() - 1], e[p]) {
                    out.insert(Lasso::new(e[..p].to_vec(), e[p..].to_vec())?);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    pub fn format_filter(&self, f: &TightFilter) -> String {
        match f {
            TightFilter::Path(x) => format!("lasso:{}", self.format_lasso(x)),
            TightFilter::Finite { alpha, filter } => {
                let b = match filter {
                    SetFilter::Principal(b) => format!("UP({})", self.format_set(b)),
                    SetFilter::End { family, right } => {
                        format!(
                            "END({},{})",
                            self.universe().names()[*family as usize],
                            if *right { "+" } else { "-" }
                        )
                    }
                };
                format!("finite:{}/{}", self.format_path(alpha), b)
            }
        }
    }

    /// Inverse of [`System::format_filter`].
    pub fn parse_filter(&self, src: &str) -> Result<TightFilter> {
        let src = src.trim();
        if let Some(rest) = src.strip_prefix("lasso:") {
            return Ok(TightFilter::Path(self.graph().parse_lasso(rest)?));
        }
        let rest = src.strip_prefix("finite:").ok_or_else(|| {
            parse_err(format!("filter `{src}` must start with lasso: or finite:"))
        })?;
        let (path, b) = rest
            .split_once('/')
            .ok_or_else(|| parse_err("finite filter needs the form path/FILTER".to_string()))?;
        let alpha = self.graph().parse_path(path)?;
        let b = b.trim();
        let inner = |tag: &str| -> Option<&str> {
            b.strip_prefix(tag)?.strip_prefix('(')?.strip_suffix(')')
        };
        let filter = if let Some(set) = inner("UP") {
            SetFilter::Principal(self.universe().parse_set(set)?)
        } else if let Some(args) = inner("END") {
            let (fam, dir) = args
                .split_once(',')
                .ok_or_else(|| parse_err("END needs (family,+|-)"))?;
            let right = match dir.trim() {
                "+" => true,
                "-" => false,
                d => return Err(parse_err(format!("END direction `{d}` must be + or -"))),
            };
            SetFilter::End {
                family: self.universe().family_index(fam.trim())?,
                right,
            }
        } else {
            return Err(parse_err(format!(
                "set filter `{b}` must be UP(set) or END(family,±)"
            )));
        };
        self.finite_filter(alpha, filter)
    }
}
