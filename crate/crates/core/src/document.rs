//! JSON instance documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::action::{Action, Cocycle, System};
use crate::error::{parse_err, Error, Result};
use crate::group::{FiniteGroup, Group, GroupElem};
use crate::setexpr::SetExpr;
use crate::ultragraph::{EdgeFamily, ExplicitEdge, Ultragraph, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub universe: UniverseDoc,
    pub edges: Vec<EdgeDoc>,
    pub group: GroupDoc,
    pub action: ActionDoc,
    pub cocycle: CocycleDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum UniverseDoc {
    Finite { vertices: Vec<String> },
    IntIndexed { families: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeDoc {
    Explicit {
        id: String,
        range: String,
        source: String,
    },
    Family {
        family: String,
        range_rule: RangeRule,
        source_expr: String,
    },
}

/// `r(e_i) = {family_(i + offset)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeRule {
    pub family: String,
    #[serde(default)]
    pub offset: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDoc {
    FiniteTable {
        elements: Vec<String>,
        table: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        identity: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inverse: Option<BTreeMap<String, String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
        #[serde(default)]
        amenable: bool,
    },
    Integers {
        #[serde(default)]
        amenable: bool,
    },
}

/// Generator images; vertices and edges not listed are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermDoc {
    #[serde(default)]
    pub vertices: BTreeMap<String, String>,
    #[serde(default)]
    pub edges: BTreeMap<String, String>,
}

/// Per-family translation amounts for the action of `1 ∈ Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftDoc {
    #[serde(default)]
    pub vertices: BTreeMap<String, i64>,
    #[serde(default)]
    pub edges: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionDoc {
    /// Only `"trivial"`.
    Named(String),
    Generators {
        generators: BTreeMap<String, PermDoc>,
    },
    Shifts {
        shifts: ShiftDoc,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CocycleDoc {
    /// Only `"trivial"`.
    Named(String),
    Spec(CocycleSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CocycleSpec {
    /// `values[g][e] = φ(g, e)` for every element and edge.
    Table {
        values: BTreeMap<String, BTreeMap<String, String>>,
    },
    /// `values[e] = φ(1, e)` keyed by edge id, or by family name for
    /// indexed edges.
    GeneratorValues { values: BTreeMap<String, i64> },
}

impl Document {
    pub fn from_json(src: &str) -> Result<Document> {
        serde_json::from_str(src).map_err(|e| parse_err(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    /// Hex SHA-256 of the compact serialization.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("document serializes");
        hex::encode(Sha256::digest(bytes))
    }

    pub fn build(&self) -> Result<System> {
        let universe = match &self.universe {
            UniverseDoc::Finite { vertices } => Universe::finite(vertices.clone())?,
            UniverseDoc::IntIndexed { families } => Universe::int_indexed(families.clone())?,
        };
        let graph = build_graph(universe, &self.edges)?;
        let (group, amenable) = build_group(&self.group)?;
        let action = build_action(&graph, &group, &self.action)?;
        let cocycle = build_cocycle(&graph, &group, &action, &self.cocycle)?;
        let name = self.name.clone().unwrap_or_else(|| "unnamed".to_string());
        Ok(System::new(
            name,
            graph,
            group,
            action,
            cocycle,
            amenable,
            self.digest(),
        ))
    }
}

fn build_graph(universe: Universe, edges: &[EdgeDoc]) -> Result<Ultragraph> {
    let explicit: Vec<_> = edges
        .iter()
        .filter(|e| matches!(e, EdgeDoc::Explicit { .. }))
        .collect();
    if !explicit.is_empty() && explicit.len() != edges.len() {
        return Err(parse_err(
            "mixing explicit edges and edge families is not supported",
        ));
    }
    if universe.is_finite() {
        let mut out = Vec::new();
        for e in edges {
            let EdgeDoc::Explicit { id, range, source } = e else {
                return Err(parse_err("edge families need an int_indexed universe"));
            };
            let range = match universe.parse_vertex(range.trim()) {
                Ok(v) => v,
                Err(_) => universe
                    .parse_set(range)?
                    .as_singleton()
                    .ok_or_else(|| Error::NonSingletonRange(id.clone()))?,
            };
            let source = universe.parse_set(source)?;
            out.push(ExplicitEdge {
                name: id.clone(),
                range,
                source,
            });
        }
        Ultragraph::finite(universe, out)
    } else {
        let mut out = Vec::new();
        for e in edges {
            let EdgeDoc::Family {
                family,
                range_rule,
                source_expr,
            } = e
            else {
                return Err(parse_err("explicit edges need a finite universe"));
            };
            let expr = SetExpr::parse(source_expr)?;
            if !expr.is_translation_covariant() {
                return Err(Error::Unsupported(format!(
                    "source of edge family `{family}` must use indices relative to i"
                )));
            }
            let source0 = expr.eval(&universe, Some(0))?;
            out.push(EdgeFamily {
                name: family.clone(),
                range_family: universe.family_index(&range_rule.family)?,
                offset: range_rule.offset,
                source0,
            });
        }
        Ultragraph::indexed(universe, out)
    }
}

fn build_group(doc: &GroupDoc) -> Result<(Group, bool)> {
    match doc {
        GroupDoc::Integers { amenable } => Ok((Group::Integers, *amenable)),
        GroupDoc::FiniteTable {
            elements,
            table,
            identity,
            inverse,
            generators,
            amenable,
        } => {
            let index = |s: &str| -> Result<u32> {
                elements
                    .iter()
                    .position(|x| x == s)
                    .map(|k| k as u32)
                    .ok_or_else(|| Error::Unknown {
                        kind: "group element",
                        name: s.to_string(),
                    })
            };
            let t = table
                .iter()
                .map(|row| row.iter().map(|x| index(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let gens = generators
                .as_ref()
                .map(|gs| gs.iter().map(|g| index(g)).collect::<Result<Vec<_>>>())
                .transpose()?;
            let fg = FiniteGroup::new(elements.clone(), t, gens)?;
            let group = Group::Finite(fg);
            if let Some(id) = identity {
                if group.identity() != GroupElem(index(id)? as i64) {
                    return Err(Error::GroupAxiom(format!("`{id}` is not the identity")));
                }
            }
            if let Some(inv) = inverse {
                for (a, b) in inv {
                    let (a, b) = (GroupElem(index(a)? as i64), GroupElem(index(b)? as i64));
                    if group.inv(a) != b {
                        return Err(Error::GroupAxiom(format!(
                            "inverse map is wrong at `{}`",
                            group.name(a)
                        )));
                    }
                }
            }
            Ok((group, *amenable))
        }
    }
}

fn perm_from_doc(graph: &Ultragraph, p: &PermDoc) -> Result<(Vec<u32>, Vec<u32>)> {
    let u = graph.universe();
    let mut vs: Vec<u32> = (0..u.names().len() as u32).collect();
    for (a, b) in &p.vertices {
        vs[u.parse_vertex(a)?.index as usize] = u.parse_vertex(b)?.index as u32;
    }
    let mut es: Vec<u32> = (0..graph.explicit_edges().len() as u32).collect();
    for (a, b) in &p.edges {
        es[graph.parse_edge(a)?.index as usize] = graph.parse_edge(b)?.index as u32;
    }
    Ok((vs, es))
}

fn build_action(graph: &Ultragraph, group: &Group, doc: &ActionDoc) -> Result<Action> {
    let trivial = match doc {
        ActionDoc::Named(n) if n == "trivial" => true,
        ActionDoc::Named(n) => return Err(parse_err(format!("unknown action `{n}`"))),
        _ => false,
    };
    match (graph.is_finite(), group) {
        (true, Group::Finite(fg)) => {
            let gens: BTreeMap<String, PermDoc> = match doc {
                _ if trivial => fg
                    .generators()
                    .iter()
                    .map(|&g| (group.name(GroupElem(g as i64)), PermDoc::default()))
                    .collect(),
                ActionDoc::Generators { generators } => generators.clone(),
                _ => return Err(parse_err("finite universes take generator permutations")),
            };
            let mut list = Vec::new();
            for (g, p) in &gens {
                let (vs, es) = perm_from_doc(graph, p)?;
                list.push((group.parse(g)?, vs, es));
            }
            let nv = graph.universe().names().len();
            let ne = graph.explicit_edges().len();
            Action::from_finite_generators(group, nv, ne, &list)
        }
        (true, Group::Integers) => {
            let p = match doc {
                _ if trivial => PermDoc::default(),
                ActionDoc::Generators { generators } => {
                    if generators.keys().any(|k| k != "1") {
                        return Err(parse_err(
                            "Z actions are given by the image of the generator \"1\"",
                        ));
                    }
                    generators.get("1").cloned().unwrap_or_default()
                }
                _ => return Err(parse_err("finite universes take generator permutations")),
            };
            let (vs, es) = perm_from_doc(graph, &p)?;
            Action::from_integer_generator(vs, es)
        }
        (false, Group::Integers) => {
            let s = match doc {
                _ if trivial => ShiftDoc::default(),
                ActionDoc::Shifts { shifts } => shifts.clone(),
                _ => return Err(parse_err("int_indexed universes take family shifts")),
            };
            let u = graph.universe();
            let mut vertex = vec![0i64; u.family_count()];
            for (f, k) in &s.vertices {
                vertex[u.family_index(f)? as usize] = *k;
            }
            let fams = graph.edge_families();
            let mut edge = vec![0i64; fams.len()];
            for (f, k) in &s.edges {
                let pos = fams
                    .iter()
                    .position(|x| &x.name == f)
                    .ok_or_else(|| Error::Unknown {
                        kind: "edge family",
                        name: f.clone(),
                    })?;
                edge[pos] = *k;
            }
            Ok(Action::Shift { vertex, edge })
        }
        (false, Group::Finite(_)) => Err(Error::Unsupported(
            "finite groups acting on int_indexed universes".into(),
        )),
    }
}

fn build_cocycle(
    graph: &Ultragraph,
    group: &Group,
    action: &Action,
    doc: &CocycleDoc,
) -> Result<Cocycle> {
    let spec = match doc {
        CocycleDoc::Named(n) if n == "trivial" => return Ok(Cocycle::Trivial),
        CocycleDoc::Named(n) => return Err(parse_err(format!("unknown cocycle `{n}`"))),
        CocycleDoc::Spec(s) => s,
    };
    match (spec, group) {
        (CocycleSpec::Table { values }, Group::Finite(_)) => {
            let elems = group.elements().unwrap();
            let edges = graph.edges().ok_or_else(|| {
                Error::Unsupported("cocycle tables need finite ultragraphs".into())
            })?;
            let mut t = vec![vec![0u32; edges.len()]; elems.len()];
            for &g in &elems {
                let row = values.get(&group.name(g)).ok_or_else(|| {
                    parse_err(format!("cocycle table misses element `{}`", group.name(g)))
                })?;
                for &e in &edges {
                    let v = row.get(&graph.edge_name(e)).ok_or_else(|| {
                        parse_err(format!(
                            "cocycle table misses ({}, {})",
                            group.name(g),
                            graph.edge_name(e)
                        ))
                    })?;
                    t[g.0 as usize][e.index as usize] = group.parse(v)?.0 as u32;
                }
            }
            Ok(Cocycle::Table(t))
        }
        (CocycleSpec::GeneratorValues { values }, Group::Integers) => {
            if graph.is_finite() {
                let edges = graph.edges().unwrap();
                let mut vals = vec![0i64; edges.len()];
                for &e in &edges {
                    vals[e.index as usize] = *values.get(&graph.edge_name(e)).ok_or_else(|| {
                        parse_err(format!("missing φ(1, {})", graph.edge_name(e)))
                    })?;
                }
                if values.len() != edges.len() {
                    return Err(parse_err("generator values mention unknown edges"));
                }
                Cocycle::integer_on_finite(action, vals)
            } else {
                let fams = graph.edge_families();
                let mut vals = Vec::with_capacity(fams.len());
                for f in fams {
                    vals.push(
                        *values
                            .get(&f.name)
                            .ok_or_else(|| parse_err(format!("missing φ(1, {}_i)", f.name)))?,
                    );
                }
                if values.len() != fams.len() {
                    return Err(parse_err("generator values mention unknown edge families"));
                }
                Ok(Cocycle::integer_on_families(vals))
            }
        }
        _ => Err(parse_err("cocycle kind does not match the group")),
    }
}
