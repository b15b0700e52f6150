//! The algebraic span of the monomials `s_α u_(A,g) s*_β` over the
//! rationals, and the crossed product `C*(U) ⋊_η G` for trivial cocycles.
//!
//! Monomials are semigroup quadruples. A path of the form `α = A ∈ U^0`
//! never appears: such monomials are written with `α = ω` and `A` in the
//! middle projection.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::action::System;
use crate::error::{Error, Result};
use crate::group::GroupElem;
use crate::semigroup::{Elem, Quad};
use crate::sets::Vertex;
use crate::ultragraph::{EdgeId, Path};

/// A finite rational combination of monomials, with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpanElement {
    terms: BTreeMap<Quad, BigRational>,
}

fn add_term<K: Ord>(map: &mut BTreeMap<K, BigRational>, k: K, c: BigRational) {
    let slot = map.entry(k).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        map.retain(|_, v| !v.is_zero());
    }
}

impl SpanElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The monomial of `s`, or the zero element.
    pub fn monomial(s: &Elem) -> Self {
        Self::scaled(s, BigRational::one())
    }

    pub fn scaled(s: &Elem, c: BigRational) -> Self {
        let mut out = Self::zero();
        if let Elem::Quad(q) = s {
            add_term(&mut out.terms, q.clone(), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Quad, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SpanElement {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }
}

impl System {
    pub fn span_product(&self, x: &SpanElement, y: &SpanElement) -> SpanElement {
        let mut out = SpanElement::zero();
        for (s, a) in &x.terms {
            for (t, b) in &y.terms {
                if let Elem::Quad(p) = self.multiply(&Elem::Quad(s.clone()), &Elem::Quad(t.clone()))
                {
                    add_term(&mut out.terms, p, a * b);
                }
            }
        }
        out
    }

    pub fn span_star(&self, x: &SpanElement) -> SpanElement {
        let mut out = SpanElement::zero();
        for (s, a) in &x.terms {
            if let Elem::Quad(p) = self.invert(&Elem::Quad(s.clone())) {
                add_term(&mut out.terms, p, a.clone());
            }
        }
        out
    }

    pub fn format_span(&self, x: &SpanElement) -> String {
        format_sum(
            x.terms
                .iter()
                .map(|(q, c)| (c, self.format_elem(&Elem::Quad(q.clone())))),
        )
    }

    /// `s_e = (e, s(e), 1, ω)`.
    pub fn s_edge(&self, e: EdgeId) -> Elem {
        let src = self.graph().source(e).into_owned();
        Elem::Quad(Quad {
            alpha: Path::edge(e),
            set: src,
            g: self.identity(),
            beta: Path::omega(),
        })
    }

    /// `p_A = (ω, A, 1, ω)` for a single vertex.
    pub fn p_vertex(&self, v: Vertex) -> Elem {
        let set = self.universe().singleton(v);
        Elem::Quad(Quad {
            alpha: Path::omega(),
            set,
            g: self.identity(),
            beta: Path::omega(),
        })
    }

    /// Edges used to probe the CK4 relation at `v`: every edge on a finite
    /// ultragraph, otherwise the edges of each family with index within 2 of
    /// `v`.
    fn probe_edges(&self, v: Vertex) -> Vec<EdgeId> {
        match self.graph().edges() {
            Some(all) => all,
            None => (0..self.graph().edge_families().len() as u32)
                .flat_map(|f| {
                    (v.index - 2..=v.index + 2).map(move |index| EdgeId { family: f, index })
                })
                .collect(),
        }
    }

    /// `p_{v}` and `Σ_{r(e) = {v}} s_e s_e*`, compared through their products
    /// `s_f* · X` and `X · s_f` with probe edges `f`.
    pub fn ck4_identity(&self, v: Vertex) -> Ck4 {
        let lhs = SpanElement::monomial(&self.p_vertex(v));
        let mut rhs = SpanElement::zero();
        for e in self.graph().edges_into_vertex(v) {
            let se = self.s_edge(e);
            rhs = rhs.add(&SpanElement::monomial(
                &self.multiply(&se, &self.invert(&se)),
            ));
        }
        let mut probes = 0;
        let mut equal = true;
        for f in self.probe_edges(v) {
            let sf = SpanElement::monomial(&self.s_edge(f));
            let sf_star = self.span_star(&sf);
            equal &= self.span_product(&sf_star, &lhs) == self.span_product(&sf_star, &rhs);
            equal &= self.span_product(&lhs, &sf) == self.span_product(&rhs, &sf);
            probes += 2;
        }
        Ck4 {
            lhs,
            rhs,
            probes,
            equal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ck4 {
    pub lhs: SpanElement,
    pub rhs: SpanElement,
    pub probes: usize,
    pub equal: bool,
}

/// A finite rational combination of `a δ_g`, with `a = s_α p_A s*_β` a
/// CK monomial stored as a quadruple with `g = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossedElement {
    terms: BTreeMap<(Quad, GroupElem), BigRational>,
}

impl CrossedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Quad, GroupElem), &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_term(&mut out.terms, k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CrossedElement {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }
}

impl System {
    fn require_trivial(&self) -> Result<()> {
        if self.is_trivial_cocycle() {
            Ok(())
        } else {
            Err(Error::NontrivialCocycle)
        }
    }

    /// `(α, A, g, β) ↦ s_α p_A s*_(g·β) δ_g`; zero goes to the empty sum.
    pub fn crossed_map(&self, s: &Elem) -> Result<CrossedElement> {
        self.require_trivial()?;
        let mut out = CrossedElement::zero();
        if let Elem::Quad(q) = s {
            let beta = self.act_path(q.g, &q.beta).0;
            debug_assert!(self
                .quad_violation(&q.alpha, &q.set, self.identity(), &beta)
                .is_none());
            let ck = Quad {
                alpha: q.alpha.clone(),
                set: q.set.clone(),
                g: self.identity(),
                beta,
            };
            add_term(&mut out.terms, (ck, q.g), BigRational::one());
        }
        Ok(out)
    }

    /// `a δ_g` for a CK monomial `a` given as a quadruple with `g = 1`.
    pub fn crossed_monomial(&self, ck: &Elem, g: GroupElem) -> Result<CrossedElement> {
        self.require_trivial()?;
        let mut out = CrossedElement::zero();
        if let Elem::Quad(q) = ck {
            if !self.group().is_identity(q.g) {
                return Err(Error::Constraint("CK monomials carry the identity".into()));
            }
            add_term(&mut out.terms, (q.clone(), g), BigRational::one());
        }
        Ok(out)
    }

    /// `η_g(s_α p_A s*_β) = s_(g·α) p_(g·A) s*_(g·β)`.
    pub fn eta(&self, g: GroupElem, ck: &Quad) -> Quad {
        Quad {
            alpha: self.act_path(g, &ck.alpha).0,
            set: self.act_set(g, &ck.set),
            g: ck.g,
            beta: self.act_path(g, &ck.beta).0,
        }
    }

    /// `(a δ_g)(b δ_h) = a η_g(b) δ_(gh)`.
    pub fn crossed_product(
        &self,
        x: &CrossedElement,
        y: &CrossedElement,
    ) -> Result<CrossedElement> {
        self.require_trivial()?;
        let grp = self.group();
        let mut out = CrossedElement::zero();
        for ((a, g), c) in &x.terms {
            for ((b, h), d) in &y.terms {
                let eb = Elem::Quad(self.eta(*g, b));
                if let Elem::Quad(p) = self.try_multiply(&Elem::Quad(a.clone()), &eb)? {
                    add_term(&mut out.terms, (p, grp.try_mul(*g, *h)?), c * d);
                }
            }
        }
        Ok(out)
    }

    /// `(a δ_g)* = η_(g⁻¹)(a*) δ_(g⁻¹)`.
    pub fn crossed_star(&self, x: &CrossedElement) -> Result<CrossedElement> {
        self.require_trivial()?;
        let mut out = CrossedElement::zero();
        for ((a, g), c) in &x.terms {
            let gi = self.group().inv(*g);
            if let Elem::Quad(astar) = self.invert(&Elem::Quad(a.clone())) {
                add_term(&mut out.terms, (self.eta(gi, &astar), gi), c.clone());
            }
        }
        Ok(out)
    }

    pub fn format_crossed(&self, x: &CrossedElement) -> String {
        format_sum(x.terms.iter().map(|((q, g), c)| {
            (
                c,
                format!(
                    "{} delta[{}]",
                    self.format_elem(&Elem::Quad(q.clone())),
                    self.format_group(*g)
                ),
            )
        }))
    }
}

fn format_sum<'a>(terms: impl Iterator<Item = (&'a BigRational, String)>) -> String {
    let mut out = String::new();
    for (c, body) in terms {
        let neg = *c < BigRational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            let _ = write!(out, "{mag} ");
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
