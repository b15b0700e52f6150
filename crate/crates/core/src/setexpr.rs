//! Set-expression grammar shared by instance documents and the CLI.
//!
//! ```text
//! expr  := FIN{id,...} | {id,...} | TAIL(fam,k) | LTAIL(fam,k) | RANGE(fam,a,b)
//!        | ALL(fam) | UNION(expr,...) | INTER(expr,...) | DIFF(expr,expr)
//! k     := int | i | i+int | i-int
//! ```
//!
//! `TAIL(f,k)` is `{ f_j : j > k }` and `LTAIL(f,k)` is `{ f_j : j <= k }`.
//! The index variable `i` is only meaningful inside edge-family sources.

use crate::error::{parse_err, Result};
use crate::sets::{IntervalSet, VertexSet};
use crate::ultragraph::Universe;

/// `c` or `i + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexTerm {
    pub var: bool,
    pub c: i64,
}

impl IndexTerm {
    fn eval(self, i: Option<i64>) -> Result<i64> {
        match (self.var, i) {
            (false, _) => Ok(self.c),
            (true, Some(i)) => Ok(i + self.c),
            (true, None) => Err(parse_err("index variable `i` used outside an edge family")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Fin(Vec<String>),
    Tail(String, IndexTerm),
    LTail(String, IndexTerm),
    Range(String, IndexTerm, IndexTerm),
    All(String),
    Union(Vec<SetExpr>),
    Inter(Vec<SetExpr>),
    Diff(Box<SetExpr>, Box<SetExpr>),
}

impl SetExpr {
    pub fn parse(src: &str) -> Result<SetExpr> {
        let mut c = Cursor::new(src);
        let e = parse_expr(&mut c)?;
        c.skip_ws();
        if !c.at_end() {
            return Err(parse_err(format!(
                "trailing input in set expression `{src}`"
            )));
        }
        Ok(e)
    }

    pub fn eval(&self, u: &Universe, i: Option<i64>) -> Result<VertexSet> {
        Ok(match self {
            SetExpr::Fin(ids) => {
                let mut s = u.empty_set();
                for id in ids {
                    s = s.union(&VertexSet::singleton(u.family_count(), u.parse_vertex(id)?));
                }
                s
            }
            SetExpr::Tail(f, k) => u.family_set(f, IntervalSet::tail(k.eval(i)?))?,
            SetExpr::LTail(f, k) => u.family_set(f, IntervalSet::left_tail(k.eval(i)?))?,
            SetExpr::Range(f, a, b) => {
                u.family_set(f, IntervalSet::range(a.eval(i)?, b.eval(i)?))?
            }
            SetExpr::All(f) => u.family_set(f, IntervalSet::full())?,
            SetExpr::Union(xs) => {
                let mut s = u.empty_set();
                for x in xs {
                    s = s.union(&x.eval(u, i)?);
                }
                s
            }
            SetExpr::Inter(xs) => {
                let mut it = xs.iter();
                let first = it
                    .next()
                    .ok_or_else(|| parse_err("INTER needs an argument"))?;
                let mut s = first.eval(u, i)?;
                for x in it {
                    s = s.intersect(&x.eval(u, i)?);
                }
                s
            }
            SetExpr::Diff(a, b) => a.eval(u, i)?.difference(&b.eval(u, i)?),
        })
    }

    /// True when every index in the expression is relative to `i`, so the set
    /// it describes for index `i` is the translate of the set for index 0.
    pub fn is_translation_covariant(&self) -> bool {
        match self {
            SetExpr::Fin(ids) => ids.is_empty(),
            SetExpr::Tail(_, k) | SetExpr::LTail(_, k) => k.var,
            SetExpr::Range(_, a, b) => a.var && b.var,
            SetExpr::All(_) => true,
            SetExpr::Union(xs) | SetExpr::Inter(xs) => {
                xs.iter().all(Self::is_translation_covariant)
            }
            SetExpr::Diff(a, b) => a.is_translation_covariant() && b.is_translation_covariant(),
        }
    }
}

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub(crate) fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub(crate) fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(parse_err(format!("expected `{s}` at `{}`", self.rest())))
        }
    }

    /// A run of characters that are not delimiters or whitespace.
    pub(crate) fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let r = self.rest();
        let len = r
            .find(|ch: char| ch.is_whitespace() || "{}()[],;*+/".contains(ch))
            .unwrap_or(r.len());
        if len == 0 {
            return Err(parse_err(format!("expected identifier at `{r}`")));
        }
        self.pos += len;
        Ok(&r[..len])
    }

    pub(crate) fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let r = self.rest();
        let mut len = 0;
        for (k, ch) in r.char_indices() {
            if ch.is_ascii_digit() || (k == 0 && (ch == '-' || ch == '+')) {
                len = k + ch.len_utf8();
            } else {
                break;
            }
        }
        let v = r[..len]
            .parse::<i64>()
            .map_err(|_| parse_err(format!("expected integer at `{r}`")))?;
        self.pos += len;
        Ok(v)
    }
}

fn parse_index(c: &mut Cursor) -> Result<IndexTerm> {
    if c.eat("i") {
        c.skip_ws();
        if c.rest().starts_with('+') || c.rest().starts_with('-') {
            let k = c.int()?;
            return Ok(IndexTerm { var: true, c: k });
        }
        return Ok(IndexTerm { var: true, c: 0 });
    }
    Ok(IndexTerm {
        var: false,
        c: c.int()?,
    })
}

fn parse_list(c: &mut Cursor) -> Result<Vec<SetExpr>> {
    c.expect("(")?;
    let mut out = vec![parse_expr(c)?];
    while c.eat(",") {
        out.push(parse_expr(c)?);
    }
    c.expect(")")?;
    Ok(out)
}

fn parse_ids(c: &mut Cursor) -> Result<Vec<String>> {
    c.expect("{")?;
    let mut ids = Vec::new();
    if c.eat("}") {
        return Ok(ids);
    }
    loop {
        ids.push(c.ident()?.to_string());
        if c.eat("}") {
            return Ok(ids);
        }
        c.expect(",")?;
    }
}

fn parse_expr(c: &mut Cursor) -> Result<SetExpr> {
    if c.peek() == Some('{') {
        return Ok(SetExpr::Fin(parse_ids(c)?));
    }
    let head = c.ident()?;
    match head {
        "FIN" => Ok(SetExpr::Fin(parse_ids(c)?)),
        "TAIL" | "LTAIL" => {
            c.expect("(")?;
            let f = c.ident()?.to_string();
            c.expect(",")?;
            let k = parse_index(c)?;
            c.expect(")")?;
            Ok(if head == "TAIL" {
                SetExpr::Tail(f, k)
            } else {
                SetExpr::LTail(f, k)
            })
        }
        "RANGE" => {
            c.expect("(")?;
            let f = c.ident()?.to_string();
            c.expect(",")?;
            let a = parse_index(c)?;
            c.expect(",")?;
            let b = parse_index(c)?;
            c.expect(")")?;
            Ok(SetExpr::Range(f, a, b))
        }
        "ALL" => {
            c.expect("(")?;
            let f = c.ident()?.to_string();
            c.expect(")")?;
            Ok(SetExpr::All(f))
        }
        "UNION" => Ok(SetExpr::Union(parse_list(c)?)),
        "INTER" => Ok(SetExpr::Inter(parse_list(c)?)),
        "DIFF" => {
            let mut xs = parse_list(c)?;
            if xs.len() != 2 {
                return Err(parse_err("DIFF takes exactly two arguments"));
            }
            let b = xs.pop().unwrap();
            let a = xs.pop().unwrap();
            Ok(SetExpr::Diff(Box::new(a), Box::new(b)))
        }
        other => Err(parse_err(format!("unknown set constructor `{other}`"))),
    }
}
