//! Discrete groups: finite groups given by a Cayley table, and `Z`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

/// A group element. For finite groups this is an index into the element
/// list; for `Z` it is the integer itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElem(pub i64);

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    names: Vec<String>,
    lookup: HashMap<String, u32>,
    table: Vec<Vec<u32>>,
    identity: u32,
    inverse: Vec<u32>,
    generators: Vec<u32>,
}

impl FiniteGroup {
    /// Validates the group axioms on the full table.
    pub fn new(
        names: Vec<String>,
        table: Vec<Vec<u32>>,
        generators: Option<Vec<u32>>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::GroupAxiom("group has no elements".into()));
        }
        let mut lookup = HashMap::new();
        for (k, name) in names.iter().enumerate() {
            if lookup.insert(name.clone(), k as u32).is_some() {
                return Err(parse_err(format!("duplicate group element `{name}`")));
            }
        }
        if table.len() != n
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&x| x as usize >= n))
        {
            return Err(Error::GroupAxiom(
                "Cayley table must be n x n over the element list".into(),
            ));
        }
        let identity = (0..n as u32)
            .find(|&e| {
                (0..n).all(|a| table[e as usize][a] == a as u32 && table[a][e as usize] == a as u32)
            })
            .ok_or_else(|| Error::GroupAxiom("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n as u32)
                .find(|&b| table[a][b as usize] == identity && table[b as usize][a] == identity)
                .ok_or_else(|| Error::GroupAxiom(format!("`{}` has no inverse", names[a])))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = table[a][b] as usize;
                    let bc = table[b][c] as usize;
                    if table[ab][c] != table[a][bc] {
                        return Err(Error::GroupAxiom(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let generators =
            generators.unwrap_or_else(|| (0..n as u32).filter(|&g| g != identity).collect());
        let g = FiniteGroup {
            names,
            lookup,
            table,
            identity,
            inverse,
            generators,
        };
        if g.ball(n).len() != n {
            return Err(Error::GroupAxiom(
                "generators do not generate the group".into(),
            ));
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Elements reachable by words of length `<= r` in the generators and
    /// their inverses, in breadth-first order (ties by index).
    fn ball(&self, r: usize) -> Vec<u32> {
        let n = self.names.len();
        let mut seen = vec![false; n];
        seen[self.identity as usize] = true;
        let mut out = vec![self.identity];
        let mut layer = vec![self.identity];
        let mut steps: Vec<u32> = self
            .generators
            .iter()
            .flat_map(|&s| [s, self.inverse[s as usize]])
            .collect();
        steps.sort_unstable();
        steps.dedup();
        for _ in 0..r {
            let mut next = Vec::new();
            for &a in &layer {
                for &s in &steps {
                    let b = self.table[a as usize][s as usize];
                    if !seen[b as usize] {
                        seen[b as usize] = true;
                        next.push(b);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            out.extend_from_slice(&next);
            layer = next;
        }
        out
    }
}

#[derive(Clone, Debug)]
pub enum Group {
    Finite(FiniteGroup),
    Integers,
}

impl Group {
    pub fn identity(&self) -> GroupElem {
        match self {
            Group::Finite(g) => GroupElem(g.identity as i64),
            Group::Integers => GroupElem(0),
        }
    }

    pub fn is_identity(&self, g: GroupElem) -> bool {
        g == self.identity()
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Group::Finite(_))
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Group::Finite(g) => Some(g.order()),
            Group::Integers => None,
        }
    }

    pub fn try_mul(&self, a: GroupElem, b: GroupElem) -> Result<GroupElem> {
        match self {
            Group::Finite(g) => Ok(GroupElem(g.table[a.0 as usize][b.0 as usize] as i64)),
            Group::Integers => a.0.checked_add(b.0).map(GroupElem).ok_or(Error::Overflow),
        }
    }

    /// # Panics
    /// On integer overflow in `Z`.
    pub fn mul(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        self.try_mul(a, b).expect("group element overflow")
    }

    pub fn inv(&self, a: GroupElem) -> GroupElem {
        match self {
            Group::Finite(g) => GroupElem(g.inverse[a.0 as usize] as i64),
            Group::Integers => GroupElem(-a.0),
        }
    }

    /// Deterministic ball of radius `r` around the identity. For `Z` the
    /// order is `0, -1, 1, -2, 2, ...`.
    pub fn ball(&self, r: usize) -> Vec<GroupElem> {
        match self {
            Group::Finite(g) => g.ball(r).into_iter().map(|x| GroupElem(x as i64)).collect(),
            Group::Integers => {
                let mut out = vec![GroupElem(0)];
                for k in 1..=r as i64 {
                    out.push(GroupElem(-k));
                    out.push(GroupElem(k));
                }
                out
            }
        }
    }

    /// All elements of a finite group in index order.
    pub fn elements(&self) -> Option<Vec<GroupElem>> {
        match self {
            Group::Finite(g) => Some((0..g.order() as i64).map(GroupElem).collect()),
            Group::Integers => None,
        }
    }

    pub fn name(&self, a: GroupElem) -> String {
        match self {
            Group::Finite(g) => g.names[a.0 as usize].clone(),
            Group::Integers => a.0.to_string(),
        }
    }

    pub fn parse(&self, s: &str) -> Result<GroupElem> {
        let s = s.trim();
        match self {
            Group::Finite(g) => g
                .lookup
                .get(s)
                .map(|&k| GroupElem(k as i64))
                .ok_or_else(|| Error::Unknown {
                    kind: "group element",
                    name: s.to_string(),
                }),
            Group::Integers => s.parse::<i64>().map(GroupElem).map_err(|_| Error::Unknown {
                kind: "group element",
                name: s.to_string(),
            }),
        }
    }
}
