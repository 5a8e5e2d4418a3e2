//! Text format for bound quiver presentations.
//!
//! ```text
//! # comments start with '#'
//! field fp:7
//! quiver { vertices: v1 v2 v3 ; arrows: a: v1 -> v2 ; b: v1 -> v2 ; c: v2 -> v3 }
//! order { a b c }            # optional, largest arrow first
//! relations { c*a - 2*c*b ; }
//! ```
//!
//! A relation `m = rest` with a single path on the left designates `m` as
//! its leading term; a bare expression `expr` means `expr = 0` and its
//! leading term comes from the order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::field::{field_parse, FieldDescriptor};
use crate::presentation::{BoundQuiverPresentation, OrderPolicy, PresentationError, Relation};
use crate::quiver::{AlgebraElement, Quiver, QuiverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("non-composable path: {0}")]
    NotComposable(String),
    #[error("relation terms are not parallel: {0}")]
    NotParallel(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {kind}")]
pub struct DslError {
    pub line: usize,
    pub col: usize,
    pub kind: DslErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let push = |out: &mut Vec<Token>, tok| {
                out.push(Token {
                    tok,
                    line: li + 1,
                    col,
                })
            };
            if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                push(&mut out, Tok::Number(chars[start..i].iter().collect()));
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                push(&mut out, Tok::Sym("->"));
                i += 2;
            } else {
                let sym = match c {
                    '{' => "{",
                    '}' => "}",
                    ';' => ";",
                    ':' => ":",
                    '*' => "*",
                    '+' => "+",
                    '-' => "-",
                    '=' => "=",
                    '/' => "/",
                    _ => {
                        return Err(DslError {
                            line: li + 1,
                            col,
                            kind: DslErrorKind::Syntax(format!("unexpected character `{c}`")),
                        })
                    }
                };
                push(&mut out, Tok::Sym(sym));
                i += 1;
            }
        }
    }
    let (line, col) = out.last().map(|t| (t.line, t.col + 1)).unwrap_or((1, 1));
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// A parsed term: coefficient literal and written arrow names.
struct RawTerm {
    coeff: String,
    arrows: Vec<(String, usize, usize)>,
    line: usize,
    col: usize,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, kind: DslErrorKind) -> Result<T, DslError> {
        Err(DslError {
            line: t.line,
            col: t.col,
            kind,
        })
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("`{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, s: &'static str) -> Result<Token, DslError> {
        let t = self.next();
        if t.tok == Tok::Sym(s) {
            Ok(t)
        } else {
            self.err(
                &t,
                DslErrorKind::Syntax(format!("expected `{s}`, found {}", Self::describe(&t.tok))),
            )
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Token), DslError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => self.err(
                &t,
                DslErrorKind::Syntax(format!("expected a name, found {}", Self::describe(other))),
            ),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), DslError> {
        let (name, t) = self.expect_ident()?;
        if name == kw {
            Ok(())
        } else {
            self.err(
                &t,
                DslErrorKind::Syntax(format!("expected `{kw}`, found `{name}`")),
            )
        }
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn parse_field(&mut self) -> Result<FieldDescriptor, DslError> {
        let (name, t) = self.expect_ident()?;
        let text = if name == "fp" {
            self.expect_sym(":")?;
            let n = self.next();
            match &n.tok {
                Tok::Number(d) => format!("fp:{d}"),
                other => {
                    return self.err(
                        &n,
                        DslErrorKind::Syntax(format!(
                            "expected a modulus, found {}",
                            Self::describe(other)
                        )),
                    )
                }
            }
        } else {
            name
        };
        field_parse(&text).or_else(|e| self.err(&t, DslErrorKind::Invalid(e.to_string())))
    }

    fn parse_quiver(&mut self) -> Result<Quiver, DslError> {
        self.expect_sym("{")?;
        self.expect_keyword("vertices")?;
        self.expect_sym(":")?;
        let mut q = Quiver::new();
        while let Tok::Ident(_) = self.peek().tok {
            let (name, t) = self.expect_ident()?;
            q.add_vertex(name)
                .or_else(|e| self.err(&t, DslErrorKind::Invalid(e.to_string())))?;
        }
        if self.at_sym(";") {
            self.next();
        }
        if !self.at_sym("}") {
            self.expect_keyword("arrows")?;
            self.expect_sym(":")?;
            loop {
                if self.at_sym("}") {
                    break;
                }
                let (name, t) = self.expect_ident()?;
                self.expect_sym(":")?;
                let (src, st) = self.expect_ident()?;
                self.expect_sym("->")?;
                let (tgt, tt) = self.expect_ident()?;
                let s = match q.vertex_index(&src) {
                    Some(s) => s,
                    None => return self.err(&st, DslErrorKind::UnknownVertex(src)),
                };
                let d = match q.vertex_index(&tgt) {
                    Some(d) => d,
                    None => return self.err(&tt, DslErrorKind::UnknownVertex(tgt)),
                };
                q.add_arrow(name, s, d)
                    .or_else(|e| self.err(&t, DslErrorKind::Invalid(e.to_string())))?;
                if self.at_sym(";") {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect_sym("}")?;
        Ok(q)
    }

    fn parse_order(&mut self, q: &Quiver) -> Result<OrderPolicy, DslError> {
        let open = self.expect_sym("{")?;
        let mut prec = Vec::new();
        while let Tok::Ident(_) = self.peek().tok {
            let (name, t) = self.expect_ident()?;
            match q.arrow_index(&name) {
                Some(a) => prec.push(a),
                None => return self.err(&t, DslErrorKind::UnknownArrow(name)),
            }
        }
        self.expect_sym("}")?;
        OrderPolicy::from_precedence(q, &prec).or_else(|e| self.err(&open, DslErrorKind::Invalid(e)))
    }

    /// Expression: optional sign, then terms joined by `+`/`-`. A bare `0`
    /// is the zero expression.
    fn parse_expr(&mut self) -> Result<Vec<RawTerm>, DslError> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut neg = false;
            if self.at_sym("-") {
                self.next();
                neg = true;
            } else if self.at_sym("+") {
                if first {
                    let t = self.peek().clone();
                    return self.err(&t, DslErrorKind::Syntax("unexpected `+`".into()));
                }
                self.next();
            } else if !first {
                break;
            }
            first = false;
            let start = self.peek().clone();
            let mut coeff = String::new();
            if let Tok::Number(n) = &start.tok {
                coeff.push_str(n);
                self.next();
                if self.at_sym("/") {
                    self.next();
                    let d = self.next();
                    match &d.tok {
                        Tok::Number(dn) => {
                            coeff.push('/');
                            coeff.push_str(dn);
                        }
                        other => {
                            return self.err(
                                &d,
                                DslErrorKind::Syntax(format!(
                                    "expected a denominator, found {}",
                                    Self::describe(other)
                                )),
                            )
                        }
                    }
                }
                if !self.at_sym("*") {
                    // bare scalar: only a literal zero is meaningful
                    if coeff == "0" {
                        continue;
                    }
                    return self.err(
                        &start,
                        DslErrorKind::Syntax("a coefficient must be followed by `*path`".into()),
                    );
                }
                self.next();
            } else {
                coeff.push('1');
            }
            if neg {
                coeff.insert(0, '-');
            }
            let mut arrows = Vec::new();
            loop {
                let (name, t) = self.expect_ident()?;
                arrows.push((name, t.line, t.col));
                if self.at_sym("*") {
                    self.next();
                } else {
                    break;
                }
            }
            terms.push(RawTerm {
                coeff,
                arrows,
                line: start.line,
                col: start.col,
            });
        }
        Ok(terms)
    }
}

fn build_element(
    q: &Quiver,
    field: FieldDescriptor,
    terms: &[RawTerm],
) -> Result<AlgebraElement, DslError> {
    let mut e = AlgebraElement::zero(field);
    for t in terms {
        let mut traversal = Vec::new();
        for (name, line, col) in t.arrows.iter().rev() {
            match q.arrow_index(name) {
                Some(a) => traversal.push(a),
                None => {
                    return Err(DslError {
                        line: *line,
                        col: *col,
                        kind: DslErrorKind::UnknownArrow(name.clone()),
                    })
                }
            }
        }
        let path = q.path_from_traversal(traversal).map_err(|err| DslError {
            line: t.line,
            col: t.col,
            kind: match err {
                QuiverError::NotComposable(m) => DslErrorKind::NotComposable(m),
                other => DslErrorKind::Invalid(other.to_string()),
            },
        })?;
        let c = field.parse_scalar(&t.coeff).map_err(|err| DslError {
            line: t.line,
            col: t.col,
            kind: DslErrorKind::Invalid(err.to_string()),
        })?;
        e.add_term(path, c);
    }
    Ok(e)
}

pub fn parse_presentation(text: &str) -> Result<BoundQuiverPresentation, DslError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut field = None;
    let mut quiver: Option<Quiver> = None;
    let mut order_spec: Option<OrderPolicy> = None;
    let mut relations = Vec::new();
    let mut rel_positions = Vec::new();
    loop {
        let t = p.peek().clone();
        match &t.tok {
            Tok::Eof => break,
            Tok::Ident(kw) if kw == "field" => {
                p.next();
                field = Some(p.parse_field()?);
            }
            Tok::Ident(kw) if kw == "quiver" => {
                p.next();
                quiver = Some(p.parse_quiver()?);
            }
            Tok::Ident(kw) if kw == "order" => {
                p.next();
                let q = match &quiver {
                    Some(q) => q,
                    None => {
                        return p.err(&t, DslErrorKind::Syntax("`order` before `quiver`".into()))
                    }
                };
                order_spec = Some(p.parse_order(q)?);
            }
            Tok::Ident(kw) if kw == "relations" => {
                p.next();
                let q = match &quiver {
                    Some(q) => q.clone(),
                    None => {
                        return p.err(&t, DslErrorKind::Syntax("`relations` before `quiver`".into()))
                    }
                };
                let f = *field.get_or_insert(FieldDescriptor::Rationals);
                p.expect_sym("{")?;
                while !p.at_sym("}") {
                    let start = p.peek().clone();
                    let lhs = p.parse_expr()?;
                    let rel = if p.at_sym("=") {
                        p.next();
                        let rhs = p.parse_expr()?;
                        if lhs.len() != 1 {
                            return p.err(
                                &start,
                                DslErrorKind::Syntax(
                                    "the left side of `=` must be a single path".into(),
                                ),
                            );
                        }
                        let l = build_element(&q, f, &lhs)?;
                        let r = build_element(&q, f, &rhs)?;
                        let (lead, c) = l.terms().next().map(|(p, c)| (p.clone(), c.clone())).unwrap();
                        let rest = r.scaled(&c.inverse().unwrap());
                        Relation::with_lead(lead, &rest)
                    } else {
                        Relation::new(build_element(&q, f, &lhs)?)
                    };
                    if rel.element.is_zero() {
                        return p.err(&start, DslErrorKind::Invalid("relation is zero".into()));
                    }
                    relations.push(rel);
                    rel_positions.push(start);
                    if p.at_sym(";") {
                        p.next();
                    } else if !p.at_sym("}") {
                        let n = p.peek().clone();
                        return p.err(
                            &n,
                            DslErrorKind::Syntax(format!(
                                "expected `;` or `}}`, found {}",
                                Parser::describe(&n.tok)
                            )),
                        );
                    }
                }
                p.expect_sym("}")?;
            }
            other => {
                return p.err(
                    &t,
                    DslErrorKind::Syntax(format!(
                        "expected `field`, `quiver`, `order` or `relations`, found {}",
                        Parser::describe(other)
                    )),
                )
            }
        }
    }
    let eof = p.peek().clone();
    let quiver = match quiver {
        Some(q) => q,
        None => return p.err(&eof, DslErrorKind::Syntax("missing `quiver` block".into())),
    };
    let field = field.unwrap_or(FieldDescriptor::Rationals);
    let order = order_spec.unwrap_or_else(|| OrderPolicy::default_for(&quiver));
    BoundQuiverPresentation::with_order(quiver, field, relations, order).map_err(|e| {
        let (idx, kind) = match e {
            PresentationError::Quiver(QuiverError::NotParallel(m)) => {
                (None, DslErrorKind::NotParallel(m))
            }
            PresentationError::BadRelation { index, message } => {
                (Some(index), DslErrorKind::Invalid(message))
            }
            other => (None, DslErrorKind::Invalid(other.to_string())),
        };
        let at = idx
            .and_then(|i| rel_positions.get(i))
            .or_else(|| rel_positions.first())
            .cloned()
            .unwrap_or(eof);
        DslError {
            line: at.line,
            col: at.col,
            kind,
        }
    })
}

/// Serializes a presentation; `parse_presentation` inverts it exactly.
pub fn serialize_presentation(pres: &BoundQuiverPresentation) -> String {
    let q = &pres.quiver;
    let mut out = String::new();
    writeln!(out, "field {}", pres.field).unwrap();
    writeln!(out, "quiver {{").unwrap();
    writeln!(out, "  vertices: {} ;", q.vertices().join(" ")).unwrap();
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| {
            format!(
                "{}: {} -> {}",
                a.name,
                q.vertex_name(a.source),
                q.vertex_name(a.target)
            )
        })
        .collect();
    if arrows.is_empty() {
        writeln!(out, "}}").unwrap();
    } else {
        writeln!(out, "  arrows:\n    {}\n}}", arrows.join(" ;\n    ")).unwrap();
    }
    if !pres.order.is_default() {
        let names: Vec<&str> = pres
            .order
            .precedence()
            .into_iter()
            .map(|a| q.arrow(a).name.as_str())
            .collect();
        writeln!(out, "order {{ {} }}", names.join(" ")).unwrap();
    }
    writeln!(out, "relations {{").unwrap();
    for rel in &pres.relations {
        match &rel.lead {
            Some(lead) => {
                let c = rel.element.coefficient(lead);
                let mut rest = AlgebraElement::zero(pres.field);
                for (p, d) in rel.element.terms() {
                    if p != lead {
                        rest.add_term(p.clone(), -(d.checked_div(&c).unwrap()));
                    }
                }
                let lead_text = if c.is_one() {
                    q.path_name(lead)
                } else {
                    // keep the stored scaling: c*m = c*rest
                    format!("{}*{}", c, q.path_name(lead))
                };
                let rest = if c.is_one() { rest } else { rest.scaled(&c) };
                writeln!(out, "  {} = {} ;", lead_text, q.element_to_string(&rest)).unwrap();
            }
            None => {
                writeln!(out, "  {} ;", q.element_to_string(&rel.element)).unwrap();
            }
        }
    }
    writeln!(out, "}}").unwrap();
    out
}
