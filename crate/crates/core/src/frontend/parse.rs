//! Lexer and recursive-descent parser for system documents.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::diffpoly::{DiffMonomial, DiffPolynomial, JetVar};
use crate::error::{Error, Result};
use crate::frontend::Document;
use crate::rational::{fmt_q, Q};
use crate::scalar::{is_square_free, CoeffValuation, Scalar};
use crate::series::{Exponent, SeriesSpace, SupportSet, TruncatedSeries};
use crate::transform::TransformSpec;
use crate::transseries::{BoolTransseries, LogMonomial};

const RESERVED: &[&str] = &[
    "D", "O", "sqrt", "log", "bound", "indep", "dep", "grid", "weight", "field", "valuation",
    "series", "support", "logsupport", "spec",
];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(n) => format!("'{n}'"),
        Tok::Str(s) => format!("\"{s}\""),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"))
        } else if c == '"' {
            i += 1;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if i >= chars.len() || chars[i] != '"' {
                return Err(Error::Syntax {
                    line,
                    col,
                    message: "unterminated string".into(),
                });
            }
            i += 1;
            Tok::Str(chars[start + 1..i - 1].iter().collect())
        } else if "+-*/^()[]{},;='".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(Error::Syntax {
                line,
                col,
                message: format!("unexpected character '{c}'"),
            });
        };
        out.push(Token { tok, line, col });
        col += i - start;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// Resolved declarations, fixed once the first generator or candidate is
/// read.
struct Env {
    indep: Vec<String>,
    dep: Vec<String>,
    space: Arc<SeriesSpace>,
    /// Factor turning bounds written in the declared weight into bounds for
    /// the normalised weight.
    bound_factor: Q,
    field: Option<u64>,
}

#[derive(Default)]
struct Decls {
    indep: Option<Vec<String>>,
    dep: Option<Vec<String>>,
    grid: Option<Vec<u64>>,
    weight: Option<Vec<Q>>,
    field: Option<u64>,
    valuation: Option<CoeffValuation>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    decls: Decls,
    env: Option<Env>,
    names: BTreeSet<String>,
    doc: Option<Document>,
}

type Pos = (usize, usize);

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.0,
        col: pos.1,
        message: message.into(),
    }
}

fn semantic(pos: Pos, message: impl Into<String>) -> Error {
    Error::Semantic {
        line: pos.0,
        col: pos.1,
        message: message.into(),
    }
}

/// Parses a complete document.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        decls: Decls::default(),
        env: None,
        names: BTreeSet::new(),
        doc: None,
    };
    while p.peek() != &Tok::Eof {
        p.statement()?;
    }
    let end = p.here();
    p.finalize(end)?;
    let doc = p.doc.take().expect("finalized");
    if doc.generators.is_empty() {
        return Err(semantic(end, "no generators"));
    }
    Ok(doc)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> Pos {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == &Tok::Sym(c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            let t = &self.toks[self.pos];
            Err(syntax((t.line, t.col), format!("expected '{c}', found {}", describe(&t.tok))))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Pos)> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, (t.line, t.col))),
            other => Err(syntax((t.line, t.col), format!("expected a name, found {}", describe(&other)))),
        }
    }

    fn expect_int(&mut self) -> Result<(BigInt, Pos)> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok((n, (t.line, t.col))),
            other => Err(syntax((t.line, t.col), format!("expected an integer, found {}", describe(&other)))),
        }
    }

    fn expect_u64(&mut self) -> Result<(u64, Pos)> {
        let (n, pos) = self.expect_int()?;
        n.to_u64()
            .map(|v| (v, pos))
            .ok_or_else(|| semantic(pos, format!("integer {n} is too large")))
    }

    fn expect_u32(&mut self) -> Result<(u32, Pos)> {
        let (n, pos) = self.expect_int()?;
        n.to_u32()
            .map(|v| (v, pos))
            .ok_or_else(|| semantic(pos, format!("integer {n} is too large")))
    }

    /// `[-] n [/ d]`
    fn signed_rational(&mut self) -> Result<Q> {
        let neg = self.eat_sym('-');
        let (n, _) = self.expect_int()?;
        let mut v = Q::from_integer(n);
        if self.eat_sym('/') {
            let (d, pos) = self.expect_int()?;
            if d.is_zero() {
                return Err(semantic(pos, "zero denominator"));
            }
            v /= Q::from_integer(d);
        }
        Ok(if neg { -v } else { v })
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat_sym('-');
        let (n, pos) = self.expect_int()?;
        let v = n.to_i64().ok_or_else(|| semantic(pos, "integer too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn env(&self) -> &Env {
        self.env.as_ref().expect("finalized")
    }

    fn statement(&mut self) -> Result<()> {
        let (kw, pos) = self.expect_ident()?;
        match kw.as_str() {
            "indep" | "dep" | "grid" | "weight" | "field" | "valuation" => {
                if self.env.is_some() {
                    return Err(semantic(pos, "declarations must come before generators and candidates"));
                }
                self.declaration(&kw, pos)?;
            }
            "series" | "support" | "logsupport" | "spec" => {
                self.finalize(pos)?;
                let (name, npos) = self.new_name()?;
                self.expect_sym('=')?;
                match kw.as_str() {
                    "series" => {
                        let v = self.bracketed(|p| p.series_value())?;
                        self.check_count(v.len(), npos)?;
                        self.doc_mut().series.push((name, v));
                    }
                    "support" => {
                        let v = self.bracketed(|p| p.support_value())?;
                        self.check_count(v.len(), npos)?;
                        self.doc_mut().supports.push((name, v));
                    }
                    "logsupport" => {
                        if self.env().indep.len() != 1 {
                            return Err(semantic(pos, "log supports need one independent variable"));
                        }
                        let v = self.bracketed(|p| p.logsupport_value())?;
                        self.check_count(v.len(), npos)?;
                        self.doc_mut().logsupports.push((name, v));
                    }
                    _ => {
                        let t = self.next();
                        let Tok::Str(text) = t.tok else {
                            return Err(syntax((t.line, t.col), "expected a quoted transform spec"));
                        };
                        let m = self.env().indep.len();
                        let spec = TransformSpec::parse(&text, m).map_err(|e| semantic((t.line, t.col), e.to_string()))?;
                        if spec.num_vars() != m {
                            return Err(semantic((t.line, t.col), format!("spec is for {} variables, document has {m}", spec.num_vars())));
                        }
                        self.doc_mut().specs.push((name, spec));
                    }
                }
            }
            _ => {
                if RESERVED.contains(&kw.as_str()) {
                    return Err(syntax(pos, format!("unexpected keyword '{kw}'")));
                }
                self.finalize(pos)?;
                if !self.names.insert(kw.clone()) {
                    return Err(semantic(pos, format!("name '{kw}' is defined twice")));
                }
                self.check_not_variable(&kw, pos)?;
                self.expect_sym('=')?;
                let f = self.poly()?;
                self.doc_mut().generators.push((kw, f));
            }
        }
        self.expect_sym(';')
    }

    fn doc_mut(&mut self) -> &mut Document {
        self.doc.as_mut().expect("finalized")
    }

    fn check_count(&self, k: usize, pos: Pos) -> Result<()> {
        let n = self.env().dep.len();
        if k != n {
            return Err(semantic(pos, format!("found {k} entries for {n} dependent variable(s); give one entry each")));
        }
        Ok(())
    }

    fn check_not_variable(&self, name: &str, pos: Pos) -> Result<()> {
        let env = self.env();
        if env.indep.iter().chain(&env.dep).any(|v| v == name) {
            return Err(semantic(pos, format!("'{name}' is a variable")));
        }
        Ok(())
    }

    fn new_name(&mut self) -> Result<(String, Pos)> {
        let (name, pos) = self.expect_ident()?;
        if RESERVED.contains(&name.as_str()) {
            return Err(syntax(pos, format!("'{name}' is reserved")));
        }
        self.check_not_variable(&name, pos)?;
        if !self.names.insert(name.clone()) {
            return Err(semantic(pos, format!("name '{name}' is defined twice")));
        }
        Ok((name, pos))
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = vec![item(self)?];
        while self.eat_sym(',') {
            out.push(item(self)?);
        }
        Ok(out)
    }

    fn bracketed<T>(&mut self, item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect_sym('[')?;
        let v = self.list(item)?;
        self.expect_sym(']')?;
        Ok(v)
    }

    fn declaration(&mut self, kw: &str, pos: Pos) -> Result<()> {
        let dup = |set: bool| if set { Err(semantic(pos, format!("'{kw}' is declared twice"))) } else { Ok(()) };
        match kw {
            "indep" | "dep" => {
                let names = self.list(|p| {
                    let (n, npos) = p.expect_ident()?;
                    if RESERVED.contains(&n.as_str()) {
                        return Err(syntax(npos, format!("'{n}' is reserved")));
                    }
                    Ok(n)
                })?;
                if kw == "indep" {
                    dup(self.decls.indep.is_some())?;
                    self.decls.indep = Some(names);
                } else {
                    dup(self.decls.dep.is_some())?;
                    self.decls.dep = Some(names);
                }
            }
            "grid" => {
                dup(self.decls.grid.is_some())?;
                let g = self.list(|p| {
                    let (d, dpos) = p.expect_u64()?;
                    if d == 0 {
                        return Err(semantic(dpos, "grid denominators must be positive"));
                    }
                    Ok(d)
                })?;
                self.decls.grid = Some(g);
            }
            "weight" => {
                dup(self.decls.weight.is_some())?;
                let w = self.list(|p| p.signed_rational())?;
                self.decls.weight = Some(w);
            }
            "field" => {
                dup(self.decls.field.is_some())?;
                let (s, spos) = self.expect_ident()?;
                if s != "sqrt" {
                    return Err(syntax(spos, "expected sqrt(D)"));
                }
                self.expect_sym('(')?;
                let (d, dpos) = self.expect_u64()?;
                if d < 2 || !is_square_free(d) {
                    return Err(semantic(dpos, format!("{d} is not a square-free integer >= 2")));
                }
                self.expect_sym(')')?;
                self.decls.field = Some(d);
            }
            _ => {
                dup(self.decls.valuation.is_some())?;
                let (v, vpos) = self.expect_ident()?;
                let val = match v.as_str() {
                    "trivial" => CoeffValuation::Trivial,
                    "padic" => {
                        let (p, ppos) = self.expect_u64()?;
                        if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
                            return Err(semantic(ppos, format!("{p} is not a prime")));
                        }
                        CoeffValuation::PAdic(p)
                    }
                    _ => return Err(syntax(vpos, "expected 'trivial' or 'padic p'")),
                };
                self.decls.valuation = Some(val);
            }
        }
        Ok(())
    }

    fn finalize(&mut self, pos: Pos) -> Result<()> {
        if self.env.is_some() {
            return Ok(());
        }
        let d = std::mem::take(&mut self.decls);
        let indep = d.indep.unwrap_or_else(|| vec!["t".into()]);
        let dep = d.dep.unwrap_or_else(|| vec!["x".into()]);
        let mut seen = BTreeSet::new();
        for v in indep.iter().chain(&dep) {
            if !seen.insert(v) {
                return Err(semantic(pos, format!("variable '{v}' is declared twice")));
            }
        }
        let m = indep.len();
        let grid = d.grid.unwrap_or_else(|| vec![1; m]);
        let weight = d.weight.unwrap_or_else(|| vec![Q::one(); m]);
        if grid.len() != m || weight.len() != m {
            return Err(semantic(pos, format!("grid and weight need {m} entries")));
        }
        let (space, bound_factor) = SeriesSpace::new(grid, weight).map_err(|e| semantic(pos, e.to_string()))?;
        let valuation = d.valuation.unwrap_or(CoeffValuation::Trivial);
        self.doc = Some(Document::new(indep.clone(), dep.clone(), space.clone(), d.field, valuation));
        self.env = Some(Env {
            indep,
            dep,
            space,
            bound_factor,
            field: d.field,
        });
        Ok(())
    }

    fn constant(&self, c: Scalar) -> DiffPolynomial {
        DiffPolynomial::from_series(TruncatedSeries::constant(self.env().space.clone(), c), self.env().dep.len())
    }

    fn poly(&mut self) -> Result<DiffPolynomial> {
        let neg = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            let pos = self.here();
            if self.eat_sym('+') {
                let t = self.term()?;
                acc = acc.checked_add(&t).map_err(|e| semantic(pos, e.to_string()))?;
            } else if self.eat_sym('-') {
                let t = self.term()?;
                acc = acc.checked_sub(&t).map_err(|e| semantic(pos, e.to_string()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffPolynomial> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.here();
            if self.eat_sym('*') {
                let f = self.factor()?;
                acc = acc.checked_mul(&f).map_err(|e| semantic(pos, e.to_string()))?;
            } else if self.eat_sym('/') {
                let dpos = self.here();
                let f = self.factor()?;
                let c = as_constant(&f)
                    .and_then(|c| c.inv())
                    .ok_or_else(|| semantic(dpos, "division is only by nonzero constants"))?;
                acc = acc.scale(&c);
            } else {
                return Ok(acc);
            }
        }
    }

    fn nat_power(&mut self, base: DiffPolynomial) -> Result<DiffPolynomial> {
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let paren = self.eat_sym('(');
        let (k, pos) = self.expect_u32()?;
        if paren {
            self.expect_sym(')')?;
        }
        base.pow(k).map_err(|e| semantic(pos, e.to_string()))
    }

    fn factor(&mut self) -> Result<DiffPolynomial> {
        let t = self.next();
        let pos = (t.line, t.col);
        match t.tok {
            Tok::Int(n) => {
                let c = self.constant(Scalar::rational(Q::from_integer(n)));
                self.nat_power(c)
            }
            Tok::Sym('(') => {
                let p = self.poly()?;
                self.expect_sym(')')?;
                self.nat_power(p)
            }
            Tok::Ident(name) => match name.as_str() {
                "sqrt" => {
                    self.expect_sym('(')?;
                    let (d, dpos) = self.expect_u64()?;
                    self.expect_sym(')')?;
                    match self.env().field {
                        Some(f) if f == d => {}
                        Some(f) => return Err(semantic(dpos, format!("sqrt({d}) is not in the declared field sqrt({f})"))),
                        None => return Err(semantic(dpos, format!("sqrt({d}) needs 'field sqrt({d});'"))),
                    }
                    let c = self.constant(Scalar::sqrt(d));
                    self.nat_power(c)
                }
                "O" => {
                    self.expect_sym('[')?;
                    let n = self.signed_rational()?;
                    self.expect_sym(']')?;
                    let env = self.env();
                    let s = TruncatedSeries::unknown(env.space.clone(), n * &env.bound_factor);
                    Ok(DiffPolynomial::from_series(s, env.dep.len()))
                }
                "D" => {
                    let jet = self.d_jet()?;
                    let p = DiffPolynomial::jet(self.env().space.clone(), self.env().dep.len(), jet);
                    self.nat_power(p)
                }
                _ => {
                    if let Some(j) = self.env().indep.iter().position(|v| *v == name) {
                        self.t_power(j, pos)
                    } else if let Some(i) = self.env().dep.iter().position(|v| *v == name) {
                        let mut k = 0;
                        while self.eat_sym('\'') {
                            k += 1;
                        }
                        let m = self.env().indep.len();
                        if k > 0 && m != 1 {
                            return Err(semantic(pos, "quotes need one independent variable; use D[..]"));
                        }
                        let mut deriv = vec![0; m];
                        if m == 1 {
                            deriv[0] = k;
                        }
                        let p = DiffPolynomial::jet(self.env().space.clone(), self.env().dep.len(), JetVar::new(i, deriv));
                        self.nat_power(p)
                    } else {
                        Err(semantic(pos, format!("undeclared variable '{name}'")))
                    }
                }
            },
            other => Err(syntax(pos, format!("unexpected {}", describe(&other)))),
        }
    }

    /// `D[x;t1^2;t2]`
    fn d_jet(&mut self) -> Result<JetVar> {
        self.expect_sym('[')?;
        let (x, xpos) = self.expect_ident()?;
        let i = self
            .env()
            .dep
            .iter()
            .position(|v| *v == x)
            .ok_or_else(|| semantic(xpos, format!("'{x}' is not a dependent variable")))?;
        let m = self.env().indep.len();
        let mut deriv = vec![0u32; m];
        self.expect_sym(';')?;
        loop {
            let (t, tpos) = self.expect_ident()?;
            let j = self
                .env()
                .indep
                .iter()
                .position(|v| *v == t)
                .ok_or_else(|| semantic(tpos, format!("'{t}' is not an independent variable")))?;
            let k = if self.eat_sym('^') { self.expect_u32()?.0 } else { 1 };
            deriv[j] += k;
            if !self.eat_sym(';') {
                break;
            }
        }
        self.expect_sym(']')?;
        Ok(JetVar::new(i, deriv))
    }

    /// `t`, `t^3`, `t^-1`, `t^(1/2)`.
    fn t_power(&mut self, j: usize, pos: Pos) -> Result<DiffPolynomial> {
        let e = if self.eat_sym('^') {
            if self.eat_sym('(') {
                let v = self.signed_rational()?;
                self.expect_sym(')')?;
                v
            } else {
                let neg = self.eat_sym('-');
                let (n, _) = self.expect_int()?;
                let v = Q::from_integer(n);
                if neg {
                    -v
                } else {
                    v
                }
            }
        } else {
            Q::one()
        };
        let env = self.env();
        let mut ex = Exponent::zero(env.indep.len());
        ex.0[j] = e.clone();
        if !env.space.on_grid(&ex) {
            return Err(semantic(
                pos,
                format!("exponent {} of {} is off the declared grid", fmt_q(&e), env.indep[j]),
            ));
        }
        let s = TruncatedSeries::monomial(env.space.clone(), Scalar::one(), ex).map_err(|e| semantic(pos, e.to_string()))?;
        Ok(DiffPolynomial::from_series(s, env.dep.len()))
    }

    fn series_value(&mut self) -> Result<TruncatedSeries> {
        let pos = self.here();
        let p = self.poly()?;
        if p.terms().keys().any(|m| !m.is_one()) {
            return Err(semantic(pos, "candidate series cannot contain dependent variables"));
        }
        Ok(p
            .coeff(&DiffMonomial::one())
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(self.env().space.clone())))
    }

    fn point(&mut self) -> Result<Exponent> {
        let m = self.env().indep.len();
        if m == 1 {
            return Ok(Exponent(vec![self.signed_rational()?]));
        }
        let pos = self.here();
        self.expect_sym('(')?;
        let v = self.list(|p| p.signed_rational())?;
        self.expect_sym(')')?;
        if v.len() != m {
            return Err(semantic(pos, format!("point needs {m} coordinates")));
        }
        Ok(Exponent(v))
    }

    fn support_value(&mut self) -> Result<SupportSet> {
        let pos = self.here();
        self.expect_sym('{')?;
        let pts = if self.is_sym('}') { Vec::new() } else { self.list(|p| p.point())? };
        self.expect_sym('}')?;
        let bound = if self.peek() == &Tok::Ident("bound".into()) {
            self.next();
            Some(self.signed_rational()? * &self.env().bound_factor)
        } else {
            None
        };
        SupportSet::new(self.env().space.clone(), pts, bound).map_err(|e| semantic(pos, e.to_string()))
    }

    fn log_monomial(&mut self) -> Result<LogMonomial> {
        let pos = self.here();
        if let Tok::Int(n) = self.peek().clone() {
            self.next();
            if n.is_one() {
                return Ok(LogMonomial::new(0, 0));
            }
            return Err(semantic(pos, "expected 1 or t^a*log^b"));
        }
        let tname = self.env().indep[0].clone();
        let mut m = LogMonomial::new(0, 0);
        let mut seen = (false, false);
        loop {
            let (name, npos) = self.expect_ident()?;
            let k = if self.eat_sym('^') {
                if self.eat_sym('(') {
                    let v = self.signed_int()?;
                    self.expect_sym(')')?;
                    v
                } else {
                    self.signed_int()?
                }
            } else {
                1
            };
            if name == tname && !seen.0 {
                m.a = k;
                seen.0 = true;
            } else if name == "log" && !seen.1 {
                m.b = k;
                seen.1 = true;
            } else {
                return Err(semantic(npos, format!("unexpected '{name}' in a log monomial")));
            }
            if !self.eat_sym('*') {
                return Ok(m);
            }
        }
    }

    fn logsupport_value(&mut self) -> Result<BoolTransseries> {
        let pos = self.here();
        self.expect_sym('{')?;
        let pts = if self.is_sym('}') { Vec::new() } else { self.list(|p| p.log_monomial())? };
        self.expect_sym('}')?;
        let bound = if self.peek() == &Tok::Ident("bound".into()) {
            self.next();
            Some(self.log_monomial()?)
        } else {
            None
        };
        BoolTransseries::new(pts, bound).map_err(|e| semantic(pos, e.to_string()))
    }
}

/// The scalar value of a constant polynomial with an exact coefficient.
fn as_constant(p: &DiffPolynomial) -> Option<Scalar> {
    if p.is_zero() {
        return Some(Scalar::zero());
    }
    if p.terms().len() != 1 {
        return None;
    }
    let c = p.coeff(&DiffMonomial::one())?;
    if !c.is_exact() || c.terms().len() != 1 {
        return None;
    }
    let (e, s) = c.terms().iter().next()?;
    e.is_zero().then(|| s.clone())
}
