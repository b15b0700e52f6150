//! Ultragraphs with singleton ranges and set-valued sources, their paths and
//! eventually periodic infinite paths.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::sets::{IntervalSet, Vertex, VertexSet, MAX_INDEX, NEG_INF, POS_INF};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UniverseKind {
    Finite,
    IntIndexed,
}

/// The vertex set `U^0`.
///
/// A finite universe is stored as one family indexed by declaration order.
#[derive(Clone, Debug)]
pub struct Universe {
    kind: UniverseKind,
    names: Vec<String>,
    lookup: HashMap<String, u32>,
}

impl Universe {
    pub fn finite(vertices: Vec<String>) -> Result<Self> {
        Self::new(UniverseKind::Finite, vertices, "vertex")
    }

    pub fn int_indexed(families: Vec<String>) -> Result<Self> {
        Self::new(UniverseKind::IntIndexed, families, "vertex family")
    }

    fn new(kind: UniverseKind, names: Vec<String>, what: &str) -> Result<Self> {
        let mut lookup = HashMap::new();
        for (k, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains(|c: char| c.is_whitespace() || "{}()[],;*+/".contains(c))
            {
                return Err(parse_err(format!("invalid {what} name `{n}`")));
            }
            if lookup.insert(n.clone(), k as u32).is_some() {
                return Err(parse_err(format!("duplicate {what} `{n}`")));
            }
        }
        if names.is_empty() {
            return Err(parse_err("universe is empty"));
        }
        Ok(Universe {
            kind,
            names,
            lookup,
        })
    }

    pub fn kind(&self) -> UniverseKind {
        self.kind
    }

    pub fn is_finite(&self) -> bool {
        self.kind == UniverseKind::Finite
    }

    pub fn family_count(&self) -> usize {
        match self.kind {
            UniverseKind::Finite => 1,
            UniverseKind::IntIndexed => self.names.len(),
        }
    }

    /// Vertex names (finite) or family names (indexed).
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.family_count())
    }

    pub fn all(&self) -> VertexSet {
        match self.kind {
            UniverseKind::Finite => {
                VertexSet::from_families(vec![IntervalSet::range(0, self.names.len() as i64 - 1)])
            }
            UniverseKind::IntIndexed => {
                VertexSet::from_families(vec![IntervalSet::full(); self.names.len()])
            }
        }
    }

    pub fn singleton(&self, v: Vertex) -> VertexSet {
        VertexSet::singleton(self.family_count(), v)
    }

    /// Every vertex of a finite universe, in declaration order.
    pub fn vertices(&self) -> Option<Vec<Vertex>> {
        self.is_finite().then(|| {
            (0..self.names.len() as i64)
                .map(|index| Vertex { family: 0, index })
                .collect()
        })
    }

    pub fn family_index(&self, name: &str) -> Result<u32> {
        match self.kind {
            UniverseKind::IntIndexed => {
                self.lookup
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::Unknown {
                        kind: "vertex family",
                        name: name.to_string(),
                    })
            }
            UniverseKind::Finite => Err(parse_err(format!(
                "family `{name}` used in a finite universe; list vertices with FIN{{...}}"
            ))),
        }
    }

    pub(crate) fn family_set(&self, family: &str, s: IntervalSet) -> Result<VertexSet> {
        let f = self.family_index(family)?;
        let mut fams = vec![IntervalSet::empty(); self.family_count()];
        fams[f as usize] = s;
        Ok(VertexSet::from_families(fams))
    }

    pub fn parse_vertex(&self, id: &str) -> Result<Vertex> {
        let unknown = || Error::Unknown {
            kind: "vertex",
            name: id.to_string(),
        };
        match self.kind {
            UniverseKind::Finite => self
                .lookup
                .get(id)
                .map(|&k| Vertex {
                    family: 0,
                    index: k as i64,
                })
                .ok_or_else(unknown),
            UniverseKind::IntIndexed => {
                let (fam, idx) = split_indexed(id).ok_or_else(unknown)?;
                let family = *self.lookup.get(fam).ok_or_else(unknown)?;
                Ok(Vertex { family, index: idx })
            }
        }
    }

    pub fn vertex_name(&self, v: Vertex) -> String {
        match self.kind {
            UniverseKind::Finite => self.names[v.index as usize].clone(),
            UniverseKind::IntIndexed => format!("{}_{}", self.names[v.family as usize], v.index),
        }
    }

    /// Rejects sets that mention families or indices outside this universe.
    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.family_count() != self.family_count() || !s.is_subset(&self.all()) {
            return Err(Error::UniverseMismatch);
        }
        Ok(())
    }

    pub fn parse_set(&self, src: &str) -> Result<VertexSet> {
        crate::setexpr::SetExpr::parse(src)?.eval(self, None)
    }

    /// Canonical rendering that [`Universe::parse_set`] reads back.
    pub fn format_set(&self, s: &VertexSet) -> String {
        if self.is_finite() {
            let names: Vec<String> = s
                .vertices()
                .expect("finite universe")
                .into_iter()
                .map(|v| self.vertex_name(v))
                .collect();
            return format!("{{{}}}", names.join(","));
        }
        let mut points = Vec::new();
        let mut pieces = Vec::new();
        for (f, fam) in s.families().iter().enumerate() {
            let name = &self.names[f];
            for &(a, b) in fam.intervals() {
                match (a == NEG_INF, b == POS_INF) {
                    (true, true) => pieces.push(format!("ALL({name})")),
                    (true, false) => pieces.push(format!("LTAIL({name},{b})")),
                    (false, true) => pieces.push(format!("TAIL({name},{})", a - 1)),
                    (false, false) if b - a < 8 => {
                        points.extend((a..=b).map(|i| format!("{name}_{i}")));
                    }
                    (false, false) => pieces.push(format!("RANGE({name},{a},{b})")),
                }
            }
        }
        if !points.is_empty() || pieces.is_empty() {
            pieces.insert(0, format!("{{{}}}", points.join(",")));
        }
        if pieces.len() == 1 {
            pieces.pop().unwrap()
        } else {
            format!("UNION({})", pieces.join(","))
        }
    }
}

/// `name_index` with an integer index after the last underscore.
fn split_indexed(id: &str) -> Option<(&str, i64)> {
    let (fam, idx) = id.rsplit_once('_')?;
    let idx: i64 = idx.parse().ok()?;
    (idx.abs() < MAX_INDEX).then_some((fam, idx))
}

/// Edge identifier. Explicit edges use family 0 and their position in the
/// id-sorted edge list; indexed edges use their family and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId {
    pub family: u32,
    pub index: i64,
}

#[derive(Clone, Debug)]
pub struct ExplicitEdge {
    pub name: String,
    pub range: Vertex,
    pub source: VertexSet,
}

/// Edges `e_i`, `i` in `Z`, with `r(e_i) = {v_(i+offset)}` in `range_family`
/// and `s(e_i)` the translate of `source0` by `i`.
#[derive(Clone, Debug)]
pub struct EdgeFamily {
    pub name: String,
    pub range_family: u32,
    pub offset: i64,
    pub source0: VertexSet,
}

#[derive(Clone, Debug)]
enum Edges {
    Explicit(Vec<ExplicitEdge>),
    Families(Vec<EdgeFamily>),
}

/// Edges whose range lies in a given set: explicit ids plus index slices of
/// edge families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    pub explicit: Vec<EdgeId>,
    pub families: Vec<(u32, IntervalSet)>,
}

impl EdgeSet {
    pub fn is_finite(&self) -> bool {
        self.families.iter().all(|(_, s)| s.is_finite())
    }

    pub fn len(&self) -> Option<u64> {
        let mut n = self.explicit.len() as u64;
        for (_, s) in &self.families {
            n += s.cardinality()?;
        }
        Some(n)
    }

    pub fn is_empty(&self) -> bool {
        self.explicit.is_empty() && self.families.iter().all(|(_, s)| s.is_empty())
    }

    pub fn to_vec(&self) -> Result<Vec<EdgeId>> {
        let mut out = self.explicit.clone();
        for (f, s) in &self.families {
            let pts = s.points().ok_or_else(|| {
                Error::InfiniteAnswer(format!("edge family #{f} slice is infinite"))
            })?;
            out.extend(pts.into_iter().map(|index| EdgeId { family: *f, index }));
        }
        out.sort_unstable();
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct Ultragraph {
    universe: Universe,
    edges: Edges,
    in_edges: Vec<Vec<EdgeId>>,
    edge_lookup: HashMap<String, u32>,
}

impl Ultragraph {
    /// Builds a finite ultragraph. Edges are reordered by id.
    pub fn finite(universe: Universe, mut edges: Vec<ExplicitEdge>) -> Result<Self> {
        if !universe.is_finite() {
            return Err(parse_err("explicit edge lists need a finite universe"));
        }
        edges.sort_by(|a, b| a.name.cmp(&b.name));
        let mut edge_lookup = HashMap::new();
        let mut in_edges = vec![Vec::new(); universe.names().len()];
        for (k, e) in edges.iter().enumerate() {
            if edge_lookup.insert(e.name.clone(), k as u32).is_some() {
                return Err(parse_err(format!("duplicate edge `{}`", e.name)));
            }
            if e.source.is_empty() {
                return Err(Error::EmptySource(e.name.clone()));
            }
            universe.check_set(&e.source)?;
            in_edges[e.range.index as usize].push(EdgeId {
                family: 0,
                index: k as i64,
            });
        }
        for (k, ins) in in_edges.iter().enumerate() {
            if ins.is_empty() {
                return Err(Error::RegularityViolation(universe.names()[k].clone()));
            }
        }
        Ok(Ultragraph {
            universe,
            edges: Edges::Explicit(edges),
            in_edges,
            edge_lookup,
        })
    }

    /// Builds an integer-indexed ultragraph. Families are reordered by name.
    pub fn indexed(universe: Universe, mut families: Vec<EdgeFamily>) -> Result<Self> {
        if universe.is_finite() {
            return Err(parse_err("edge families need an int_indexed universe"));
        }
        families.sort_by(|a, b| a.name.cmp(&b.name));
        let mut edge_lookup = HashMap::new();
        let mut covered = vec![false; universe.family_count()];
        for (k, e) in families.iter().enumerate() {
            if edge_lookup.insert(e.name.clone(), k as u32).is_some() {
                return Err(parse_err(format!("duplicate edge family `{}`", e.name)));
            }
            if e.source0.is_empty() {
                return Err(Error::EmptySource(format!("{}_i", e.name)));
            }
            universe.check_set(&e.source0)?;
            covered[e.range_family as usize] = true;
        }
        if let Some(f) = covered.iter().position(|c| !c) {
            return Err(Error::RegularityViolation(format!(
                "{}_i",
                universe.names()[f]
            )));
        }
        Ok(Ultragraph {
            universe,
            edges: Edges::Families(families),
            in_edges: Vec::new(),
            edge_lookup,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn is_finite(&self) -> bool {
        self.universe.is_finite()
    }

    pub fn explicit_edges(&self) -> &[ExplicitEdge] {
        match &self.edges {
            Edges::Explicit(e) => e,
            Edges::Families(_) => &[],
        }
    }

    pub fn edge_families(&self) -> &[EdgeFamily] {
        match &self.edges {
            Edges::Families(f) => f,
            Edges::Explicit(_) => &[],
        }
    }

    /// All edges of a finite ultragraph, in id order.
    pub fn edges(&self) -> Option<Vec<EdgeId>> {
        match &self.edges {
            Edges::Explicit(e) => Some(
                (0..e.len() as i64)
                    .map(|index| EdgeId { family: 0, index })
                    .collect(),
            ),
            Edges::Families(_) => None,
        }
    }

    /// One representative `e_0` per edge family, or every edge when finite.
    pub fn edge_representatives(&self) -> Vec<EdgeId> {
        match &self.edges {
            Edges::Explicit(_) => self.edges().unwrap(),
            Edges::Families(f) => (0..f.len() as u32)
                .map(|family| EdgeId { family, index: 0 })
                .collect(),
        }
    }

    /// One representative `v_0` per vertex family, or every vertex when finite.
    pub fn vertex_representatives(&self) -> Vec<Vertex> {
        match self.universe.vertices() {
            Some(vs) => vs,
            None => (0..self.universe.family_count() as u32)
                .map(|family| Vertex { family, index: 0 })
                .collect(),
        }
    }

    pub fn range(&self, e: EdgeId) -> Vertex {
        match &self.edges {
            Edges::Explicit(es) => es[e.index as usize].range,
            Edges::Families(fs) => {
                let f = &fs[e.family as usize];
                Vertex {
                    family: f.range_family,
                    index: e.index + f.offset,
                }
            }
        }
    }

    pub fn range_set(&self, e: EdgeId) -> VertexSet {
        self.universe.singleton(self.range(e))
    }

    pub fn source(&self, e: EdgeId) -> Cow<'_, VertexSet> {
        match &self.edges {
            Edges::Explicit(es) => Cow::Borrowed(&es[e.index as usize].source),
            Edges::Families(fs) => Cow::Owned(fs[e.family as usize].source0.shift_all(e.index)),
        }
    }

    pub fn edge_name(&self, e: EdgeId) -> String {
        match &self.edges {
            Edges::Explicit(es) => es[e.index as usize].name.clone(),
            Edges::Families(fs) => format!("{}_{}", fs[e.family as usize].name, e.index),
        }
    }

    pub fn parse_edge(&self, id: &str) -> Result<EdgeId> {
        let unknown = || Error::Unknown {
            kind: "edge",
            name: id.to_string(),
        };
        match &self.edges {
            Edges::Explicit(_) => self
                .edge_lookup
                .get(id)
                .map(|&k| EdgeId {
                    family: 0,
                    index: k as i64,
                })
                .ok_or_else(unknown),
            Edges::Families(_) => {
                let (fam, index) = split_indexed(id).ok_or_else(unknown)?;
                let family = *self.edge_lookup.get(fam).ok_or_else(unknown)?;
                Ok(EdgeId { family, index })
            }
        }
    }

    /// `A U^1`: the edges whose range lies in `a`.
    pub fn edges_into(&self, a: &VertexSet) -> EdgeSet {
        match &self.edges {
            Edges::Explicit(_) => {
                let mut explicit: Vec<EdgeId> = a
                    .family(0)
                    .points()
                    .expect("finite universe sets are finite")
                    .into_iter()
                    .flat_map(|i| self.in_edges[i as usize].iter().copied())
                    .collect();
                explicit.sort_unstable();
                EdgeSet {
                    explicit,
                    families: Vec::new(),
                }
            }
            Edges::Families(fs) => {
                let families = fs
                    .iter()
                    .enumerate()
                    .filter_map(|(k, f)| {
                        let slice = a.family(f.range_family).shift(-f.offset);
                        (!slice.is_empty()).then_some((k as u32, slice))
                    })
                    .collect();
                EdgeSet {
                    explicit: Vec::new(),
                    families,
                }
            }
        }
    }

    /// Edges into a vertex; always finite by regularity.
    pub fn edges_into_vertex(&self, v: Vertex) -> Vec<EdgeId> {
        match &self.edges {
            Edges::Explicit(_) => self.in_edges[v.index as usize].clone(),
            Edges::Families(fs) => fs
                .iter()
                .enumerate()
                .filter(|(_, f)| f.range_family == v.family)
                .map(|(k, f)| EdgeId {
                    family: k as u32,
                    index: v.index - f.offset,
                })
                .collect(),
        }
    }

    /// `s(α)`, with `s(ω) = U^0`.
    pub fn path_source(&self, p: &Path) -> Cow<'_, VertexSet> {
        match p.last() {
            Some(e) => self.source(e),
            None => Cow::Owned(self.universe.all()),
        }
    }

    /// `r(α)`, with `r(ω) = U^0`.
    pub fn path_range(&self, p: &Path) -> VertexSet {
        match p.first() {
            Some(e) => self.range_set(e),
            None => self.universe.all(),
        }
    }

    /// `r(f) ⊆ s(e)`, i.e. `e f` is a path.
    pub fn follows(&self, e: EdgeId, f: EdgeId) -> bool {
        self.source(e).contains(self.range(f))
    }

    pub fn check_word(&self, w: &[EdgeId]) -> Result<()> {
        for pair in w.windows(2) {
            if !self.follows(pair[0], pair[1]) {
                return Err(Error::NotComposable(format!(
                    "{} cannot follow {}",
                    self.edge_name(pair[1]),
                    self.edge_name(pair[0])
                )));
            }
        }
        Ok(())
    }

    pub fn check_lasso(&self, x: &Lasso) -> Result<()> {
        let mut word = x.prefix.clone();
        word.extend_from_slice(&x.cycle);
        word.push(x.cycle[0]);
        self.check_word(&word)
    }

    /// Paths of length `1..=max_len` with range inside `a`, lexicographic by
    /// edge id.
    pub fn enumerate_paths(&self, a: &VertexSet, max_len: usize) -> Result<Vec<Path>> {
        let mut out = Vec::new();
        if max_len == 0 {
            return Ok(out);
        }
        let mut frontier: Vec<Path> = self
            .edges_into(a)
            .to_vec()?
            .into_iter()
            .map(Path::edge)
            .collect();
        for len in 1..=max_len {
            out.extend(frontier.iter().cloned());
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for p in &frontier {
                let last = p.last().unwrap();
                for e in self.edges_into(&self.source(last)).to_vec()? {
                    next.push(p.push(e));
                }
            }
            frontier = next;
        }
        out.sort();
        Ok(out)
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.is_omega() {
            return "w".to_string();
        }
        p.edges()
            .iter()
            .map(|&e| self.edge_name(e))
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn format_lasso(&self, x: &Lasso) -> String {
        let pre: Vec<String> = x.prefix.iter().map(|&e| self.edge_name(e)).collect();
        let cyc: Vec<String> = x.cycle.iter().map(|&e| self.edge_name(e)).collect();
        format!("{}/{}", pre.join("."), cyc.join("."))
    }

    /// Dot-joined edge ids; `w`, `ω` or `omega` for the empty path.
    pub fn parse_path(&self, src: &str) -> Result<Path> {
        let src = src.trim();
        if src.is_empty() || matches!(src, "w" | "ω" | "omega") {
            return Ok(Path::omega());
        }
        let edges = src
            .split('.')
            .map(|t| self.parse_edge(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        self.check_word(&edges)?;
        Ok(Path::new(edges))
    }

    /// `prefix/cycle` with dot-joined edge ids on each side.
    pub fn parse_lasso(&self, src: &str) -> Result<Lasso> {
        let (pre, cyc) = src
            .split_once('/')
            .ok_or_else(|| parse_err(format!("lasso `{src}` needs the form prefix/cycle")))?;
        let word = |s: &str| -> Result<Vec<EdgeId>> {
            let s = s.trim();
            if s.is_empty() {
                return Ok(Vec::new());
            }
            s.split('.').map(|t| self.parse_edge(t.trim())).collect()
        };
        let x = Lasso::new(word(pre)?, word(cyc)?)?;
        self.check_lasso(&x)?;
        Ok(x)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}:{}", self.family, self.index)
    }
}

/// A finite path; the empty path stands for ω.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path(Vec<EdgeId>);

impl Path {
    pub fn omega() -> Self {
        Path(Vec::new())
    }

    pub fn new(edges: Vec<EdgeId>) -> Self {
        Path(edges)
    }

    pub fn edge(e: EdgeId) -> Self {
        Path(vec![e])
    }

    pub fn is_omega(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn first(&self) -> Option<EdgeId> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<EdgeId> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Path) -> Path {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Path(v)
    }

    pub fn push(&self, e: EdgeId) -> Path {
        let mut v = self.0.clone();
        v.push(e);
        Path(v)
    }

    /// `ε` with `self = prefix ε`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|r| Path(r.to_vec()))
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn take(&self, n: usize) -> Path {
        Path(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn into_edges(self) -> Vec<EdgeId> {
        self.0
    }
}

/// `prefix · cycle^∞`, kept in canonical form: primitive cycle and minimal
/// prefix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lasso {
    prefix: Vec<EdgeId>,
    cycle: Vec<EdgeId>,
}

impl Lasso {
    pub fn new(prefix: Vec<EdgeId>, cycle: Vec<EdgeId>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(parse_err("lasso cycle must be nonempty"));
        }
        Ok(Self::canonical(prefix, cycle))
    }

    fn canonical(mut prefix: Vec<EdgeId>, mut cycle: Vec<EdgeId>) -> Self {
        let n = cycle.len();
        if let Some(d) = (1..n).find(|&d| n % d == 0 && (d..n).all(|k| cycle[k] == cycle[k - d])) {
            cycle.truncate(d);
        }
        while prefix.last().is_some_and(|&e| Some(&e) == cycle.last()) {
            prefix.pop();
            cycle.rotate_right(1);
        }
        Lasso { prefix, cycle }
    }

    pub fn prefix(&self) -> &[EdgeId] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[EdgeId] {
        &self.cycle
    }

    /// Total length of prefix and cycle.
    pub fn size(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    /// Letter at 0-based position `n`.
    pub fn letter(&self, n: usize) -> EdgeId {
        let p = self.prefix.len();
        if n < p {
            self.prefix[n]
        } else {
            self.cycle[(n - p) % self.cycle.len()]
        }
    }

    pub fn head(&self) -> EdgeId {
        self.letter(0)
    }

    /// The shifted word `x_2 x_3 ...`.
    pub fn tail(&self) -> Lasso {
        if self.prefix.is_empty() {
            let mut c = self.cycle.clone();
            c.rotate_left(1);
            Lasso {
                prefix: Vec::new(),
                cycle: c,
            }
        } else {
            Lasso {
                prefix: self.prefix[1..].to_vec(),
                cycle: self.cycle.clone(),
            }
        }
    }

    /// First `n` letters.
    pub fn realize(&self, n: usize) -> Vec<EdgeId> {
        (0..n).map(|k| self.letter(k)).collect()
    }

    /// `p · x`.
    pub fn prepend(&self, p: &Path) -> Lasso {
        let mut prefix = p.edges().to_vec();
        prefix.extend_from_slice(&self.prefix);
        Self::canonical(prefix, self.cycle.clone())
    }

    /// `y` with `self = p · y`.
    pub fn strip_prefix(&self, p: &Path) -> Option<Lasso> {
        let mut x = self.clone();
        for &e in p.edges() {
            if x.head() != e {
                return None;
            }
            x = x.tail();
        }
        Some(x)
    }

    pub fn starts_with(&self, p: &Path) -> bool {
        p.edges()
            .iter()
            .enumerate()
            .all(|(k, &e)| self.letter(k) == e)
    }
}
