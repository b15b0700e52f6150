//! Three-valued results of the bounded checkers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "Holds",
            Status::Fails => "Fails",
            Status::Unknown => "Unknown",
        })
    }
}

/// A `(g, γ)` pair rendered with instance names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GPath {
    pub g: String,
    pub path: String,
}

/// Structured evidence attached to a verdict. All names are rendered with
/// the instance's own identifiers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// A G-cycle, with the edge witnessing its entrance if there is one.
    GCycle {
        g: String,
        path: String,
        entrance: Option<String>,
    },
    /// `r(γ) = {g·v}` and `s(γ) = s(e)`.
    Reach {
        vertex: String,
        edge: String,
        g: String,
        path: String,
    },
    /// Finitely many `(g_i, γ_i)` from `v` whose sources cover `s(e)`.
    Cover {
        vertex: String,
        edge: String,
        pieces: Vec<GPath>,
    },
    /// A path from `v` moved by `g`.
    Moves {
        vertex: String,
        g: String,
        path: String,
    },
    /// A path relevant to the star condition or fixed paths.
    Path {
        g: String,
        set: String,
        path: String,
        note: String,
    },
    /// An ultrafilter of the set algebra containing `set`.
    Ultrafilter {
        set: String,
        family: String,
        direction: String,
    },
    Violation {
        detail: String,
    },
    /// A search stopped at this bound.
    Exhausted {
        bound: String,
        value: u64,
    },
    Note {
        text: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub witnesses: Vec<Evidence>,
}

impl Verdict {
    pub fn holds(witnesses: Vec<Evidence>) -> Self {
        Verdict {
            status: Status::Holds,
            witnesses,
        }
    }

    pub fn fails(witnesses: Vec<Evidence>) -> Self {
        Verdict {
            status: Status::Fails,
            witnesses,
        }
    }

    pub fn unknown(witnesses: Vec<Evidence>) -> Self {
        Verdict {
            status: Status::Unknown,
            witnesses,
        }
    }

    pub fn violation(detail: impl Into<String>) -> Self {
        Self::fails(vec![Evidence::Violation {
            detail: detail.into(),
        }])
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn is_unknown(&self) -> bool {
        self.status == Status::Unknown
    }

    /// Conjunction: any `Fails` wins, then any `Unknown`. Witnesses of the
    /// deciding parts are kept.
    pub fn all(parts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let parts: Vec<Verdict> = parts.into_iter().collect();
        let status = if parts.iter().any(Verdict::is_fails) {
            Status::Fails
        } else if parts.iter().any(Verdict::is_unknown) {
            Status::Unknown
        } else {
            Status::Holds
        };
        let witnesses = parts
            .into_iter()
            .filter(|v| v.status == status)
            .flat_map(|v| v.witnesses)
            .collect();
        Verdict { status, witnesses }
    }
}

/// Search limits shared by all checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_path_len: usize,
    pub group_ball_radius: usize,
    pub lasso_bound: usize,
    pub state_bound: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_path_len: 6,
            group_ball_radius: 6,
            lasso_bound: 6,
            state_bound: 64,
        }
    }
}

impl Bounds {
    /// Applies `key=value,...` overrides.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| parse_err(format!("bound `{item}` is not key=value")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bound `{item}` needs an integer")))?;
            if v == 0 {
                return Err(parse_err(format!(
                    "bound `{}` must be at least 1",
                    k.trim()
                )));
            }
            match k.trim() {
                "max_path_len" => self.max_path_len = v,
                "group_ball_radius" => self.group_ball_radius = v,
                "lasso_bound" => self.lasso_bound = v,
                "state_bound" => self.state_bound = v,
                other => return Err(parse_err(format!("unknown bound `{other}`"))),
            }
        }
        Ok(self)
    }
}
