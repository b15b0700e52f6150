//! Text notation for semigroup products and span-algebra expressions.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := factor ('*'? factor)*
//! factor  := primary ('^-1')*
//! primary := '(' alpha ';' set ';' g ';' beta ')' | '(' sum ')'
//!          | '0' | rational | 'delta[' g ']'
//! ```
//!
//! Paths are dot-joined edge ids with `w` for ω. Semigroup expressions use
//! only terms, `0`, `*` and `^-1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::action::System;
use crate::error::{parse_err, Error, Result};
use crate::group::GroupElem;
use crate::semigroup::Elem;
use crate::span::{CrossedElement, SpanElement};

#[derive(Clone, Debug, PartialEq)]
enum Ast {
    Elem(Elem),
    Scalar(BigRational),
    Delta(GroupElem),
    Mul(Box<Ast>, Box<Ast>),
    Inv(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
}

struct Parser<'a> {
    sys: &'a System,
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        parse_err(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn sum(&mut self) -> Result<Ast> {
        let mut acc = if self.eat("-") {
            Ast::Neg(Box::new(self.product()?))
        } else {
            self.product()?
        };
        loop {
            if self.eat("+") {
                acc = Ast::Add(Box::new(acc), Box::new(self.product()?));
            } else if self.eat("-") {
                acc = Ast::Add(Box::new(acc), Box::new(Ast::Neg(Box::new(self.product()?))));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Ast> {
        let mut acc = self.factor()?;
        loop {
            if self.eat("*") {
                acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
                continue;
            }
            match self.peek() {
                Some(c) if c == '(' || c == 'd' || c.is_ascii_digit() => {
                    acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        let mut acc = self.primary()?;
        while self.eat("^-1") {
            acc = Ast::Inv(Box::new(acc));
        }
        Ok(acc)
    }

    /// Byte length of the parenthesised group starting at the current
    /// position, and whether it holds a `;` at depth one.
    fn group_extent(&self) -> Result<(usize, bool)> {
        let mut depth = 0i32;
        let mut semi = false;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' | '{' | '[' => depth += 1,
                ')' | '}' | ']' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok((i + 1, semi));
                    }
                }
                ';' if depth == 1 => semi = true,
                _ => {}
            }
        }
        Err(self.err("unbalanced parenthesis"))
    }

    fn primary(&mut self) -> Result<Ast> {
        match self.peek() {
            Some('(') => {
                let (len, is_term) = self.group_extent()?;
                if is_term {
                    let body = &self.rest()[1..len - 1];
                    let elem = parse_term(self.sys, body)?;
                    self.pos += len;
                    Ok(Ast::Elem(elem))
                } else {
                    self.pos += 1;
                    let inner = self.sum()?;
                    if !self.eat(")") {
                        return Err(self.err("expected `)`"));
                    }
                    Ok(inner)
                }
            }
            Some('d') if self.eat("delta[") => {
                let end = self
                    .rest()
                    .find(']')
                    .ok_or_else(|| self.err("expected `]`"))?;
                let g = self.sys.group().parse(self.rest()[..end].trim())?;
                self.pos += end + 1;
                Ok(Ast::Delta(g))
            }
            Some(c) if c.is_ascii_digit() => {
                let len = self
                    .rest()
                    .find(|c: char| !(c.is_ascii_digit() || c == '/'))
                    .unwrap_or(self.rest().len());
                let text = &self.rest()[..len];
                self.pos += len;
                Ok(Ast::Scalar(
                    parse_rational(text).ok_or_else(|| self.err("bad rational"))?,
                ))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    match text.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

/// Splits on `;` outside brackets.
fn split_top(body: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            ';' if depth == 0 => {
                out.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&body[start..]);
    out
}

/// `alpha; A; g; beta`, without the parentheses.
pub fn parse_term(sys: &System, body: &str) -> Result<Elem> {
    let parts = split_top(body);
    let [a, set, g, b] = parts[..] else {
        return Err(parse_err(format!(
            "term `({body})` needs four `;`-separated parts"
        )));
    };
    let graph = sys.graph();
    sys.make(
        graph.parse_path(a.trim())?,
        sys.universe().parse_set(set.trim())?,
        sys.group().parse(g.trim())?,
        graph.parse_path(b.trim())?,
    )
}

fn parse(sys: &System, src: &str) -> Result<Ast> {
    let mut p = Parser { sys, src, pos: 0 };
    let ast = p.sum()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(ast)
}

fn eval_semigroup(sys: &System, ast: &Ast) -> Result<Elem> {
    match ast {
        Ast::Elem(e) => Ok(e.clone()),
        Ast::Scalar(c) if c.is_zero() => Ok(Elem::Zero),
        Ast::Mul(a, b) => sys.try_multiply(&eval_semigroup(sys, a)?, &eval_semigroup(sys, b)?),
        Ast::Inv(a) => Ok(sys.invert(&eval_semigroup(sys, a)?)),
        _ => Err(parse_err(
            "semigroup expressions allow only terms, `0`, `*` and `^-1`",
        )),
    }
}

/// Evaluates a product of semigroup terms.
pub fn eval_semigroup_expr(sys: &System, src: &str) -> Result<Elem> {
    eval_semigroup(sys, &parse(sys, src)?)
}

/// Result of an algebra expression: a span element, or a crossed-product
/// element when `delta[g]` appears.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraValue {
    Span(SpanElement),
    Crossed(CrossedElement),
}

impl System {
    pub fn format_algebra(&self, v: &AlgebraValue) -> String {
        match v {
            AlgebraValue::Span(x) => self.format_span(x),
            AlgebraValue::Crossed(x) => self.format_crossed(x),
        }
    }
}

fn has_delta(ast: &Ast) -> bool {
    match ast {
        Ast::Delta(_) => true,
        Ast::Elem(_) | Ast::Scalar(_) => false,
        Ast::Mul(a, b) | Ast::Add(a, b) => has_delta(a) || has_delta(b),
        Ast::Inv(a) | Ast::Neg(a) => has_delta(a),
    }
}

/// Intermediate value: a bare scalar until it meets a monomial.
enum Val<T> {
    Scalar(BigRational),
    Vec(T),
}

trait Algebra: Sized + Clone {
    fn zero() -> Self;
    fn scale(&self, c: &BigRational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(sys: &System, a: &Self, b: &Self) -> Result<Self>;
    fn star(sys: &System, a: &Self) -> Result<Self>;
    fn leaf(sys: &System, ast: &Ast) -> Result<Self>;
}

impl Algebra for SpanElement {
    fn zero() -> Self {
        SpanElement::zero()
    }
    fn scale(&self, c: &BigRational) -> Self {
        SpanElement::scale(self, c)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(sys: &System, a: &Self, b: &Self) -> Result<Self> {
        Ok(sys.span_product(a, b))
    }
    fn star(sys: &System, a: &Self) -> Result<Self> {
        Ok(sys.span_star(a))
    }
    fn leaf(_: &System, ast: &Ast) -> Result<Self> {
        match ast {
            Ast::Elem(e) => Ok(SpanElement::monomial(e)),
            _ => unreachable!("delta outside crossed mode"),
        }
    }
}

impl Algebra for CrossedElement {
    fn zero() -> Self {
        CrossedElement::zero()
    }
    fn scale(&self, c: &BigRational) -> Self {
        CrossedElement::scale(self, c)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(sys: &System, a: &Self, b: &Self) -> Result<Self> {
        sys.crossed_product(a, b)
    }
    fn star(sys: &System, a: &Self) -> Result<Self> {
        sys.crossed_star(a)
    }
    /// A term maps through `(α, A, g, β) ↦ s_α p_A s*_(g·β) δ_g`; `delta[g]`
    /// is `p_(U^0) δ_g`.
    fn leaf(sys: &System, ast: &Ast) -> Result<Self> {
        match ast {
            Ast::Elem(e) => sys.crossed_map(e),
            Ast::Delta(g) => {
                let unit =
                    sys.idempotent(crate::ultragraph::Path::omega(), sys.universe().all())?;
                sys.crossed_monomial(&unit, *g)
            }
            _ => unreachable!(),
        }
    }
}

fn eval<T: Algebra>(sys: &System, ast: &Ast) -> Result<Val<T>> {
    Ok(match ast {
        Ast::Scalar(c) => Val::Scalar(c.clone()),
        Ast::Elem(_) | Ast::Delta(_) => Val::Vec(T::leaf(sys, ast)?),
        Ast::Neg(a) => match eval::<T>(sys, a)? {
            Val::Scalar(c) => Val::Scalar(-c),
            Val::Vec(x) => Val::Vec(x.scale(&-BigRational::one())),
        },
        Ast::Inv(a) => match eval::<T>(sys, a)? {
            Val::Scalar(c) => Val::Scalar(c),
            Val::Vec(x) => Val::Vec(T::star(sys, &x)?),
        },
        Ast::Mul(a, b) => match (eval::<T>(sys, a)?, eval::<T>(sys, b)?) {
            (Val::Scalar(c), Val::Scalar(d)) => Val::Scalar(c * d),
            (Val::Scalar(c), Val::Vec(x)) | (Val::Vec(x), Val::Scalar(c)) => Val::Vec(x.scale(&c)),
            (Val::Vec(x), Val::Vec(y)) => Val::Vec(T::times(sys, &x, &y)?),
        },
        Ast::Add(a, b) => Val::Vec(to_vec(eval::<T>(sys, a)?)?.plus(&to_vec(eval::<T>(sys, b)?)?)),
    })
}

fn to_vec<T: Algebra>(v: Val<T>) -> Result<T> {
    match v {
        Val::Vec(x) => Ok(x),
        Val::Scalar(c) if c.is_zero() => Ok(T::zero()),
        Val::Scalar(_) => Err(parse_err("a nonzero scalar needs a monomial")),
    }
}

/// Evaluates a rational combination of terms.
pub fn eval_algebra_expr(sys: &System, src: &str) -> Result<AlgebraValue> {
    let ast = parse(sys, src)?;
    if has_delta(&ast) {
        Ok(AlgebraValue::Crossed(to_vec(eval::<CrossedElement>(
            sys, &ast,
        )?)?))
    } else {
        Ok(AlgebraValue::Span(to_vec(eval::<SpanElement>(sys, &ast)?)?))
    }
}
