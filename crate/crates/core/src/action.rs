//! Group actions by ultragraph automorphisms, 1-cocycles, and their
//! extension to paths, sets and lassos.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Group, GroupElem};
use crate::sets::{Vertex, VertexSet};
use crate::ultragraph::{EdgeId, Lasso, Path, Ultragraph, Universe};
use crate::verdict::{Evidence, Verdict};

/// Largest period accepted for `Z` acting on a finite universe.
const MAX_PERIOD: usize = 1 << 16;

/// Permutation tables, one row per slot. For a finite group the slot is the
/// element index; for `Z` it is `n mod period`.
#[derive(Clone, Debug)]
pub struct PermTables {
    vertex: Vec<Vec<u32>>,
    edge: Vec<Vec<u32>>,
    period: Option<i64>,
}

#[derive(Clone, Debug)]
pub enum Action {
    Perm(PermTables),
    /// `n · v_i = v_(i + n k_f)` per vertex family, likewise for edge families.
    Shift {
        vertex: Vec<i64>,
        edge: Vec<i64>,
    },
}

fn is_bijection(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| (x as usize) < p.len() && !std::mem::replace(&mut seen[x as usize], true))
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&x| a[x as usize]).collect()
}

impl Action {
    /// Extends generator permutations of a finite group on `nv` vertices and
    /// `ne` edges to every element.
    pub fn from_finite_generators(
        group: &Group,
        nv: usize,
        ne: usize,
        gens: &[(GroupElem, Vec<u32>, Vec<u32>)],
    ) -> Result<Action> {
        let n = group.order().expect("finite group");
        let id = group.identity();
        let mut vertex: Vec<Option<Vec<u32>>> = vec![None; n];
        let mut edge: Vec<Option<Vec<u32>>> = vec![None; n];
        vertex[id.0 as usize] = Some((0..nv as u32).collect());
        edge[id.0 as usize] = Some((0..ne as u32).collect());
        let mut queue = vec![id];
        while let Some(a) = queue.pop() {
            for (s, vs, es) in gens {
                let b = group.mul(a, *s);
                if vertex[b.0 as usize].is_none() {
                    vertex[b.0 as usize] =
                        Some(compose(vertex[a.0 as usize].as_ref().unwrap(), vs));
                    edge[b.0 as usize] = Some(compose(edge[a.0 as usize].as_ref().unwrap(), es));
                    queue.push(b);
                }
            }
        }
        if vertex.iter().any(Option::is_none) {
            return Err(Error::Constraint(
                "action generators do not reach every group element".into(),
            ));
        }
        Ok(Action::Perm(PermTables {
            vertex: vertex.into_iter().map(Option::unwrap).collect(),
            edge: edge.into_iter().map(Option::unwrap).collect(),
            period: None,
        }))
    }

    /// Powers of the permutation given for `1 ∈ Z`.
    pub fn from_integer_generator(vs: Vec<u32>, es: Vec<u32>) -> Result<Action> {
        if !is_bijection(&vs) || !is_bijection(&es) {
            return Err(Error::Constraint(
                "the action of 1 is not a bijection".into(),
            ));
        }
        let mut vertex = vec![(0..vs.len() as u32).collect::<Vec<_>>()];
        let mut edge = vec![(0..es.len() as u32).collect::<Vec<_>>()];
        loop {
            let v = compose(&vs, vertex.last().unwrap());
            let e = compose(&es, edge.last().unwrap());
            if v == vertex[0] && e == edge[0] {
                break;
            }
            if vertex.len() >= MAX_PERIOD {
                return Err(Error::Unsupported("action period too large".into()));
            }
            vertex.push(v);
            edge.push(e);
        }
        let period = Some(vertex.len() as i64);
        Ok(Action::Perm(PermTables {
            vertex,
            edge,
            period,
        }))
    }

    fn slot(t: &PermTables, g: GroupElem) -> usize {
        match t.period {
            Some(p) => g.0.rem_euclid(p) as usize,
            None => g.0 as usize,
        }
    }

    /// Period of `Z` acting through permutations.
    pub fn period(&self) -> Option<i64> {
        match self {
            Action::Perm(t) => t.period,
            Action::Shift { .. } => None,
        }
    }
}

/// Representation of `φ`.
#[derive(Clone, Debug)]
pub enum Cocycle {
    /// `φ(g, e) = g`.
    Trivial,
    /// Full table `[g][e]` for a finite group on a finite ultragraph.
    Table(Vec<Vec<u32>>),
    /// `Z` cocycle from `φ(1, ·)`. `prefix[slot][r] = Σ_{k<r} φ(1, k·e)` over
    /// one period; slots are explicit edges or edge families.
    Integer { period: i64, prefix: Vec<Vec<i64>> },
}

impl Cocycle {
    /// Derives all of `φ(n, ·)` on a finite ultragraph from `φ(1, ·)`.
    pub fn integer_on_finite(action: &Action, gen_values: Vec<i64>) -> Result<Cocycle> {
        let Action::Perm(t) = action else {
            return Err(Error::Unsupported(
                "integer cocycle on a shift action needs family values".into(),
            ));
        };
        let period = t
            .period
            .ok_or_else(|| Error::Unsupported("integer cocycle needs a Z action".into()))?;
        let mut prefix = Vec::with_capacity(gen_values.len());
        for e in 0..gen_values.len() {
            let mut acc = vec![0i64];
            for k in 0..period as usize {
                let ke = t.edge[k][e] as usize;
                let next = acc
                    .last()
                    .unwrap()
                    .checked_add(gen_values[ke])
                    .ok_or(Error::Overflow)?;
                acc.push(next);
            }
            prefix.push(acc);
        }
        Ok(Cocycle::Integer { period, prefix })
    }

    /// `φ(1, e_i) = c_F` for every index of family `F`, hence `φ(n, e_i) = n c_F`.
    pub fn integer_on_families(values: Vec<i64>) -> Cocycle {
        Cocycle::Integer {
            period: 1,
            prefix: values.into_iter().map(|c| vec![0, c]).collect(),
        }
    }
}

/// A self-similar ultragraph `(G, U, φ)`.
#[derive(Clone, Debug)]
pub struct System {
    name: String,
    graph: Ultragraph,
    group: Group,
    action: Action,
    cocycle: Cocycle,
    amenable: bool,
    digest: String,
}

impl System {
    pub fn new(
        name: String,
        graph: Ultragraph,
        group: Group,
        action: Action,
        cocycle: Cocycle,
        amenable: bool,
        digest: String,
    ) -> Self {
        System {
            name,
            graph,
            group,
            action,
            cocycle,
            amenable,
            digest,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn graph(&self) -> &Ultragraph {
        &self.graph
    }

    pub fn universe(&self) -> &Universe {
        self.graph.universe()
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn amenable(&self) -> bool {
        self.amenable
    }

    pub fn is_trivial_cocycle(&self) -> bool {
        matches!(self.cocycle, Cocycle::Trivial)
    }

    pub fn identity(&self) -> GroupElem {
        self.group.identity()
    }

    pub fn act_vertex(&self, g: GroupElem, v: Vertex) -> Vertex {
        match &self.action {
            Action::Perm(t) => Vertex {
                family: 0,
                index: t.vertex[Action::slot(t, g)][v.index as usize] as i64,
            },
            Action::Shift { vertex, .. } => Vertex {
                family: v.family,
                index: v.index + g.0 * vertex[v.family as usize],
            },
        }
    }

    pub fn act_edge(&self, g: GroupElem, e: EdgeId) -> EdgeId {
        match &self.action {
            Action::Perm(t) => EdgeId {
                family: 0,
                index: t.edge[Action::slot(t, g)][e.index as usize] as i64,
            },
            Action::Shift { edge, .. } => EdgeId {
                family: e.family,
                index: e.index + g.0 * edge[e.family as usize],
            },
        }
    }

    pub fn act_set(&self, g: GroupElem, a: &VertexSet) -> VertexSet {
        match &self.action {
            Action::Perm(t) => {
                let row = &t.vertex[Action::slot(t, g)];
                let pts = a.family(0).points().expect("finite universe");
                let img = crate::sets::IntervalSet::from_points(
                    pts.into_iter().map(|i| row[i as usize] as i64),
                );
                VertexSet::from_families(vec![img])
            }
            Action::Shift { vertex, .. } => {
                let shifts: Vec<i64> = vertex.iter().map(|k| g.0 * k).collect();
                a.shift_families(&shifts)
            }
        }
    }

    pub fn try_phi(&self, g: GroupElem, e: EdgeId) -> Result<GroupElem> {
        match &self.cocycle {
            Cocycle::Trivial => Ok(g),
            Cocycle::Table(t) => Ok(GroupElem(t[g.0 as usize][e.index as usize] as i64)),
            Cocycle::Integer { period, prefix } => {
                let slot = if self.graph.is_finite() {
                    e.index as usize
                } else {
                    e.family as usize
                };
                let row = &prefix[slot];
                let q = g.0.div_euclid(*period);
                let r = g.0.rem_euclid(*period) as usize;
                let total = row[*period as usize];
                q.checked_mul(total)
                    .and_then(|x| x.checked_add(row[r]))
                    .map(GroupElem)
                    .ok_or(Error::Overflow)
            }
        }
    }

    /// # Panics
    /// If a `Z` cocycle value overflows `i64`.
    pub fn phi(&self, g: GroupElem, e: EdgeId) -> GroupElem {
        self.try_phi(g, e).expect("cocycle value overflow")
    }

    /// `(g·α, φ(g, α))`, with `g·ω = ω` and `φ(g, ω) = g`.
    pub fn try_act_path(&self, g: GroupElem, p: &Path) -> Result<(Path, GroupElem)> {
        let mut h = g;
        let mut out = Vec::with_capacity(p.len());
        for &e in p.edges() {
            out.push(self.act_edge(h, e));
            h = self.try_phi(h, e)?;
        }
        Ok((Path::new(out), h))
    }

    pub fn act_path(&self, g: GroupElem, p: &Path) -> (Path, GroupElem) {
        self.try_act_path(g, p).expect("cocycle value overflow")
    }

    pub fn cocycle_path(&self, g: GroupElem, p: &Path) -> GroupElem {
        self.act_path(g, p).1
    }

    /// `g·x` for a lasso `x`, or `None` if the cycle-entry states do not
    /// repeat within `state_bound` distinct values (or overflow).
    pub fn act_lasso(&self, g: GroupElem, x: &Lasso, state_bound: usize) -> Option<Lasso> {
        let (pre, mut h) = self.try_act_path(g, &Path::new(x.prefix().to_vec())).ok()?;
        let cycle = Path::new(x.cycle().to_vec());
        let mut seen: HashMap<GroupElem, usize> = HashMap::new();
        let mut blocks: Vec<Path> = Vec::new();
        loop {
            if let Some(&k0) = seen.get(&h) {
                let mut prefix = pre.into_edges();
                for b in &blocks[..k0] {
                    prefix.extend_from_slice(b.edges());
                }
                let cyc: Vec<EdgeId> = blocks[k0..]
                    .iter()
                    .flat_map(|b| b.edges().to_vec())
                    .collect();
                return Lasso::new(prefix, cyc).ok();
            }
            if seen.len() >= state_bound {
                return None;
            }
            seen.insert(h, blocks.len());
            let (img, h2) = self.try_act_path(h, &cycle).ok()?;
            blocks.push(img);
            h = h2;
        }
    }

    /// The infinite path `γ_1 γ_2 ...` of a G-cycle `(g, γ)`:
    /// `γ_1 = γ`, `g_1 = g`, `γ_(n+1) = g_n·γ_n`, `g_(n+1) = φ(g_n, γ_n)`.
    pub fn cycle_path(&self, g: GroupElem, gamma: &Path, state_bound: usize) -> Option<Lasso> {
        let mut seen: HashMap<(Path, GroupElem), usize> = HashMap::new();
        let mut blocks: Vec<Path> = Vec::new();
        let (mut cur, mut h) = (gamma.clone(), g);
        loop {
            if let Some(&k0) = seen.get(&(cur.clone(), h)) {
                let prefix: Vec<EdgeId> = blocks[..k0]
                    .iter()
                    .flat_map(|b| b.edges().to_vec())
                    .collect();
                let cyc: Vec<EdgeId> = blocks[k0..]
                    .iter()
                    .flat_map(|b| b.edges().to_vec())
                    .collect();
                return Lasso::new(prefix, cyc).ok();
            }
            if seen.len() >= state_bound {
                return None;
            }
            seen.insert((cur.clone(), h), blocks.len());
            let (next, h2) = self.try_act_path(h, &cur).ok()?;
            blocks.push(cur);
            cur = next;
            h = h2;
        }
    }

    /// One element per distinct way of acting on the ultragraph: every element
    /// of a finite group, or one integer per residue class for `Z` acting by
    /// permutations. `None` for shift actions.
    pub fn action_representatives(&self) -> Option<Vec<GroupElem>> {
        if let Some(all) = self.group.elements() {
            return Some(all);
        }
        let p = self.action.period()?;
        Some(
            (0..p)
                .map(|r| GroupElem(if 2 * r > p { r - p } else { r }))
                .collect(),
        )
    }

    /// Some `g` with `g·from = to`, found exactly.
    pub fn solve_edge(&self, from: EdgeId, to: EdgeId) -> Option<GroupElem> {
        match &self.action {
            Action::Perm(_) => self
                .action_representatives()?
                .into_iter()
                .find(|&g| self.act_edge(g, from) == to),
            Action::Shift { edge, .. } => {
                if from.family != to.family {
                    return None;
                }
                let k = edge[from.family as usize];
                let d = to.index - from.index;
                match (k, d) {
                    (_, 0) => Some(self.identity()),
                    (0, _) => None,
                    _ => (d % k == 0).then(|| GroupElem(d / k)),
                }
            }
        }
    }

    /// Translation amount of `1 ∈ Z` on a vertex family of an indexed universe.
    pub fn vertex_shift(&self, family: u32) -> Option<i64> {
        match &self.action {
            Action::Shift { vertex, .. } => Some(vertex[family as usize]),
            Action::Perm(_) => None,
        }
    }

    /// Translation amount of `1 ∈ Z` on an edge family.
    pub fn edge_shift(&self, family: u32) -> Option<i64> {
        match &self.action {
            Action::Shift { edge, .. } => Some(edge[family as usize]),
            Action::Perm(_) => None,
        }
    }

    /// For `Z` acting with period `P` on a finite ultragraph: `Some(P)` when
    /// `φ(n, e) mod P` depends only on `n mod P` for every edge.
    pub fn residue_period(&self) -> Option<i64> {
        let p = self.action.period()?;
        match &self.cocycle {
            Cocycle::Trivial => Some(p),
            Cocycle::Integer { period, prefix } => prefix
                .iter()
                .all(|row| row[*period as usize] % p == 0)
                .then_some(p),
            Cocycle::Table(_) => None,
        }
    }

    pub fn format_group(&self, g: GroupElem) -> String {
        self.group.name(g)
    }

    pub fn format_set(&self, a: &VertexSet) -> String {
        self.universe().format_set(a)
    }

    pub fn format_path(&self, p: &Path) -> String {
        self.graph.format_path(p)
    }

    pub fn format_lasso(&self, x: &Lasso) -> String {
        self.graph.format_lasso(x)
    }

    /// Group elements to test against: the whole group when finite, the
    /// ball of the given radius otherwise.
    pub fn test_elements(&self, radius: usize) -> Vec<GroupElem> {
        self.group
            .elements()
            .unwrap_or_else(|| self.group.ball(radius))
    }

    /// Checks the automorphism, cocycle and range conditions. Exhaustive for
    /// finite groups; on the ball of `radius` for `Z`, where edge families
    /// are checked at their representative `e_0` (all conditions are
    /// translation invariant).
    pub fn validate(&self, radius: usize) -> Verdict {
        let elems = self.test_elements(radius);
        let reps = self.graph.edge_representatives();
        let id = self.identity();
        let name = |g: GroupElem, e: EdgeId| {
            format!("({}, {})", self.format_group(g), self.graph.edge_name(e))
        };

        // automorphism conditions
        for &g in &elems {
            for &e in &reps {
                let ge = self.act_edge(g, e);
                if self.graph.range(ge) != self.act_vertex(g, self.graph.range(e)) {
                    return Verdict::violation(format!("r(g·e) != g·r(e) at {}", name(g, e)));
                }
                if *self.graph.source(ge) != self.act_set(g, &self.graph.source(e)) {
                    return Verdict::violation(format!("s(g·e) != g·s(e) at {}", name(g, e)));
                }
            }
        }
        if let (Action::Perm(t), Some(all)) = (&self.action, self.group.elements()) {
            for (k, row) in t.vertex.iter().chain(&t.edge).enumerate() {
                if !is_bijection(row) {
                    let g = all[k % all.len()];
                    return Verdict::violation(format!(
                        "{} does not act bijectively",
                        self.format_group(g)
                    ));
                }
            }
            for &a in &all {
                for &b in &all {
                    let ab = self.group.mul(a, b);
                    let (ta, tb, tab) = (a.0 as usize, b.0 as usize, ab.0 as usize);
                    if compose(&t.vertex[ta], &t.vertex[tb]) != t.vertex[tab]
                        || compose(&t.edge[ta], &t.edge[tb]) != t.edge[tab]
                    {
                        return Verdict::violation(format!(
                            "action is not a homomorphism at ({}, {})",
                            self.format_group(a),
                            self.format_group(b)
                        ));
                    }
                }
            }
        }

        // cocycle identity law, cocycle law, range condition
        for &e in &reps {
            match self.try_phi(id, e) {
                Ok(x) if x == id => {}
                _ => return Verdict::violation(format!("φ(1_G, e) != 1_G at {}", name(id, e))),
            }
        }
        for &g in &elems {
            for &h in &elems {
                let Ok(gh) = self.group.try_mul(g, h) else {
                    continue;
                };
                for &e in &reps {
                    let lhs = self.try_phi(gh, e);
                    let rhs = self
                        .try_phi(g, self.act_edge(h, e))
                        .and_then(|a| self.try_phi(h, e).and_then(|b| self.group.try_mul(a, b)));
                    if let (Ok(l), Ok(r)) = (lhs, rhs) {
                        if l != r {
                            return Verdict::violation(format!(
                                "cocycle law fails for g = {}, h = {}, e = {}",
                                self.format_group(g),
                                self.format_group(h),
                                self.graph.edge_name(e)
                            ));
                        }
                    }
                }
            }
            for &e in &reps {
                let Ok(p) = self.try_phi(g, e) else {
                    return Verdict::unknown(vec![Evidence::Violation {
                        detail: "cocycle overflow".into(),
                    }]);
                };
                let src = self.graph.source(e);
                if !self.act_set(p, &src).is_subset(&self.act_set(g, &src)) {
                    return Verdict::violation(format!(
                        "range condition φ(g,e)·s(e) ⊆ g·s(e) fails at {}",
                        name(g, e)
                    ));
                }
            }
        }
        let scope = if self.group.is_finite() {
            "exhaustive over the finite group".to_string()
        } else {
            format!("checked on the ball of radius {radius}")
        };
        Verdict::holds(vec![Evidence::Note { text: scope }])
    }
}
