//! Interval normal form for the vertex set algebra.
//!
//! Every vertex is addressed as `(family, index)`. A finite universe is a
//! single family whose indices run over `0..n`; an integer-indexed universe
//! has one family per name with indices ranging over all of `Z`.
//!
//! Invariants of [`IntervalSet`]:
//! - intervals are inclusive, sorted, pairwise disjoint and non-adjacent;
//! - `NEG_INF` only appears as a lower end and `POS_INF` only as an upper end.
//!
//! With these invariants two sets are equal iff their interval lists are.

use serde::{Deserialize, Serialize};

/// Lower sentinel for left-unbounded intervals.
pub const NEG_INF: i64 = i64::MIN;
/// Upper sentinel for right-unbounded intervals.
pub const POS_INF: i64 = i64::MAX;
/// Largest magnitude accepted for a concrete index.
pub const MAX_INDEX: i64 = 1 << 60;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntervalSet {
    ivs: Vec<(i64, i64)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { ivs: Vec::new() }
    }

    pub fn full() -> Self {
        IntervalSet {
            ivs: vec![(NEG_INF, POS_INF)],
        }
    }

    pub fn point(i: i64) -> Self {
        IntervalSet { ivs: vec![(i, i)] }
    }

    /// `[lo, hi]`; empty when `lo > hi`.
    pub fn range(lo: i64, hi: i64) -> Self {
        if lo > hi {
            Self::empty()
        } else {
            IntervalSet {
                ivs: vec![(lo, hi)],
            }
        }
    }

    /// `{ j : j > k }`
    pub fn tail(k: i64) -> Self {
        IntervalSet {
            ivs: vec![(k + 1, POS_INF)],
        }
    }

    /// `{ j : j <= k }`
    pub fn left_tail(k: i64) -> Self {
        IntervalSet {
            ivs: vec![(NEG_INF, k)],
        }
    }

    pub fn from_points<I: IntoIterator<Item = i64>>(points: I) -> Self {
        Self::from_intervals(points.into_iter().map(|p| (p, p)).collect())
    }

    pub fn from_intervals(mut ivs: Vec<(i64, i64)>) -> Self {
        ivs.retain(|&(a, b)| a <= b);
        ivs.sort_unstable();
        let mut out: Vec<(i64, i64)> = Vec::with_capacity(ivs.len());
        for (a, b) in ivs {
            match out.last_mut() {
                Some(last) if last.1 == POS_INF || a <= last.1 + 1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => out.push((a, b)),
            }
        }
        IntervalSet { ivs: out }
    }

    pub fn intervals(&self) -> &[(i64, i64)] {
        &self.ivs
    }

    pub fn is_empty(&self) -> bool {
        self.ivs.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.ivs.iter().all(|&(a, b)| a != NEG_INF && b != POS_INF)
    }

    pub fn cardinality(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        Some(self.ivs.iter().map(|&(a, b)| (b - a) as u64 + 1).sum())
    }

    pub fn contains(&self, i: i64) -> bool {
        // intervals are sorted by lower end; find the last one starting at or before i
        let pos = self.ivs.partition_point(|&(a, _)| a <= i);
        pos > 0 && self.ivs[pos - 1].1 >= i
    }

    pub fn union(&self, other: &Self) -> Self {
        if other.ivs.is_empty() {
            return self.clone();
        }
        if self.ivs.is_empty() {
            return other.clone();
        }
        let mut all = self.ivs.clone();
        all.extend_from_slice(&other.ivs);
        Self::from_intervals(all)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.ivs.len() && j < other.ivs.len() {
            let (a1, b1) = self.ivs[i];
            let (a2, b2) = other.ivs[j];
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if lo <= hi {
                out.push((lo, hi));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        // pieces of a canonical pair stay disjoint and non-adjacent
        IntervalSet { ivs: out }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let mut j = 0;
        for &(a, b) in &self.ivs {
            let mut lo = a;
            while j < other.ivs.len() && other.ivs[j].1 < lo {
                j += 1;
            }
            let mut k = j;
            let mut done = false;
            while k < other.ivs.len() && other.ivs[k].0 <= b {
                let (c, d) = other.ivs[k];
                if c > lo {
                    out.push((lo, c - 1));
                }
                if d >= b {
                    done = true;
                    break;
                }
                lo = d + 1;
                k += 1;
            }
            if !done {
                out.push((lo, b));
            }
        }
        IntervalSet { ivs: out }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.intersect(other).is_empty()
    }

    /// Translate every element by `n`; unbounded ends stay unbounded.
    pub fn shift(&self, n: i64) -> Self {
        if n == 0 {
            return self.clone();
        }
        let mv = |x: i64| {
            if x == NEG_INF || x == POS_INF {
                x
            } else {
                x + n
            }
        };
        IntervalSet {
            ivs: self.ivs.iter().map(|&(a, b)| (mv(a), mv(b))).collect(),
        }
    }

    /// `{ -j : j ∈ self }`.
    pub fn negate(&self) -> Self {
        let neg = |x: i64| match x {
            NEG_INF => POS_INF,
            POS_INF => NEG_INF,
            x => -x,
        };
        IntervalSet {
            ivs: self
                .ivs
                .iter()
                .rev()
                .map(|&(a, b)| (neg(b), neg(a)))
                .collect(),
        }
    }

    /// Contains `{ j : j > k }` for some `k`.
    pub fn has_right_tail(&self) -> bool {
        self.ivs.last().is_some_and(|&(_, b)| b == POS_INF)
    }

    /// Contains `{ j : j <= k }` for some `k`.
    pub fn has_left_tail(&self) -> bool {
        self.ivs.first().is_some_and(|&(a, _)| a == NEG_INF)
    }

    pub fn min(&self) -> Option<i64> {
        self.ivs.first().map(|&(a, _)| a)
    }

    pub fn max(&self) -> Option<i64> {
        self.ivs.last().map(|&(_, b)| b)
    }

    /// Elements of a finite set in increasing order.
    pub fn points(&self) -> Option<Vec<i64>> {
        if !self.is_finite() {
            return None;
        }
        Some(self.ivs.iter().flat_map(|&(a, b)| a..=b).collect())
    }
}

/// A vertex addressed by family and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub family: u32,
    pub index: i64,
}

/// An element of the set algebra, one [`IntervalSet`] per vertex family.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    fams: Vec<IntervalSet>,
}

impl VertexSet {
    pub fn empty(families: usize) -> Self {
        VertexSet {
            fams: vec![IntervalSet::empty(); families],
        }
    }

    pub fn from_families(fams: Vec<IntervalSet>) -> Self {
        VertexSet { fams }
    }

    pub fn singleton(families: usize, v: Vertex) -> Self {
        let mut s = Self::empty(families);
        s.fams[v.family as usize] = IntervalSet::point(v.index);
        s
    }

    pub fn family_count(&self) -> usize {
        self.fams.len()
    }

    pub fn family(&self, f: u32) -> &IntervalSet {
        &self.fams[f as usize]
    }

    pub fn families(&self) -> &[IntervalSet] {
        &self.fams
    }

    fn zip(&self, other: &Self, op: impl Fn(&IntervalSet, &IntervalSet) -> IntervalSet) -> Self {
        debug_assert_eq!(self.fams.len(), other.fams.len());
        VertexSet {
            fams: self
                .fams
                .iter()
                .zip(&other.fams)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, IntervalSet::union)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.zip(other, IntervalSet::intersect)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, IntervalSet::difference)
    }

    pub fn is_empty(&self) -> bool {
        self.fams.iter().all(IntervalSet::is_empty)
    }

    pub fn is_finite(&self) -> bool {
        self.fams.iter().all(IntervalSet::is_finite)
    }

    pub fn cardinality(&self) -> Option<u64> {
        self.fams.iter().map(IntervalSet::cardinality).sum()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.fams
            .get(v.family as usize)
            .is_some_and(|s| s.contains(v.index))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.fams.len(), other.fams.len());
        self.fams
            .iter()
            .zip(&other.fams)
            .all(|(a, b)| a.is_subset(b))
    }

    pub fn intersects(&self, other: &Self) -> bool {
        debug_assert_eq!(self.fams.len(), other.fams.len());
        self.fams
            .iter()
            .zip(&other.fams)
            .any(|(a, b)| a.intersects(b))
    }

    /// The unique element of a one-point set.
    pub fn as_singleton(&self) -> Option<Vertex> {
        if self.cardinality() != Some(1) {
            return None;
        }
        self.fams.iter().enumerate().find_map(|(f, s)| {
            s.min().map(|index| Vertex {
                family: f as u32,
                index,
            })
        })
    }

    /// Vertices of a finite set in `(family, index)` order.
    pub fn vertices(&self) -> Option<Vec<Vertex>> {
        let mut out = Vec::new();
        for (f, s) in self.fams.iter().enumerate() {
            for index in s.points()? {
                out.push(Vertex {
                    family: f as u32,
                    index,
                });
            }
        }
        Some(out)
    }

    /// Translate family `f` by `shifts[f]`.
    pub fn shift_families(&self, shifts: &[i64]) -> Self {
        VertexSet {
            fams: self
                .fams
                .iter()
                .zip(shifts)
                .map(|(s, &n)| s.shift(n))
                .collect(),
        }
    }

    /// Translate every family by the same amount.
    pub fn shift_all(&self, n: i64) -> Self {
        VertexSet {
            fams: self.fams.iter().map(|s| s.shift(n)).collect(),
        }
    }
}
