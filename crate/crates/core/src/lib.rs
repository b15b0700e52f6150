//! Symbolic computation with self-similar ultragraphs.
//!
//! The crate models a group acting on an ultragraph together with a
//! 1-cocycle, the inverse semigroup of quadruples `(α, A, g, β)` built from
//! it, tight filters and the partial action on them, and bounded checkers
//! for cofinality, entrances and the star condition. Every checker returns a
//! three-valued [`Verdict`].

pub mod action;
pub mod analysis;
pub mod document;
pub mod error;
pub mod filters;
pub mod fixtures;
pub mod group;
pub mod notation;
pub mod par;
pub mod report;
pub mod semigroup;
pub mod setexpr;
pub mod sets;
pub mod span;
pub mod ultragraph;
pub mod verdict;

pub use action::System;
pub use document::Document;
pub use error::{Error, Result};
pub use group::{Group, GroupElem};
pub use semigroup::Elem;
pub use sets::{IntervalSet, Vertex, VertexSet};
pub use ultragraph::{EdgeId, Lasso, Path, Ultragraph, Universe};
pub use verdict::{Bounds, Evidence, Status, Verdict};
