//! Sparse multivariate polynomials over a [`FieldCtx`] and their text format.
//!
//! The text format is the usual sparse notation, e.g. `3*x1^2*y - 1/2`.
//! Products may be written with `*` or juxtaposed with parentheses,
//! `^` takes a nonnegative integer exponent, and systems are separated by
//! `;`. Variables are ordered by first appearance unless given explicitly.
//! Over an extension context the generator name (usually `t`) is a scalar.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

pub type Exp = Vec<u32>;

/// Monomial order used for leading terms and Gröbner bases.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    /// Compares two exponent vectors; `Greater` means `a` is the larger monomial.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => Err(Error::Parse(format!("unknown monomial order '{s}'"))),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: FieldCtx,
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Exp, FieldElem>,
}

impl MultiPoly {
    pub fn zero(ctx: &FieldCtx, vars: &Arc<Vec<String>>) -> Self {
        MultiPoly {
            ctx: ctx.clone(),
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &FieldCtx, vars: &Arc<Vec<String>>, c: FieldElem) -> Self {
        let mut p = Self::zero(ctx, vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(ctx: &FieldCtx, vars: &Arc<Vec<String>>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(ctx, vars, e, ctx.one())
    }

    pub fn monomial(ctx: &FieldCtx, vars: &Arc<Vec<String>>, exp: Exp, c: FieldElem) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length must match variable count");
        let mut p = Self::zero(ctx, vars);
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(
        ctx: &FieldCtx,
        vars: &Arc<Vec<String>>,
        terms: impl IntoIterator<Item = (Exp, FieldElem)>,
    ) -> Self {
        let mut p = Self::zero(ctx, vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length must match variable count");
            p.add_term(e, c);
        }
        p
    }

    /// Shared variable list from names.
    pub fn var_list<S: AsRef<str>>(names: &[S]) -> Arc<Vec<String>> {
        Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn add_term(&mut self, exp: Exp, c: FieldElem) {
        if self.ctx.is_zero(&c) {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.ctx.add(o.get(), &c);
                if self.ctx.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> FieldElem {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Whether the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(self.ctx.zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Leading exponent and coefficient under `order`.
    pub fn leading(&self, order: MonomialOrder) -> Option<(&Exp, &FieldElem)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Exp, FieldElem)> {
        let mut t: Vec<(Exp, FieldElem)> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        t
    }

    fn check(&self, other: &MultiPoly) {
        assert!(
            self.ctx == other.ctx && self.vars == other.vars,
            "polynomials over different rings"
        );
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.ctx.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElem) -> MultiPoly {
        let mut out = Self::zero(&self.ctx, &self.vars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), self.ctx.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut out = Self::zero(&self.ctx, &self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, self.ctx.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::constant(&self.ctx, &self.vars, self.ctx.one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Evaluates at a point whose coordinates live in `target`, which must
    /// contain the coefficient field.
    pub fn eval_in(&self, target: &FieldCtx, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.nvars() {
            return Err(Error::Invalid(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.nvars()
            )));
        }
        let mut acc = target.zero();
        for (e, c) in &self.terms {
            let mut t = target.embed(&self.ctx, c)?;
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = target.mul(&t, &target.pow(x, k as u64));
                }
            }
            acc = target.add(&acc, &t);
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        self.eval_in(&self.ctx, point)
    }

    /// Partial derivative with respect to the `i`-th variable.
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(&self.ctx, &self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, self.ctx.mul(c, &self.ctx.from_int(e[i] as i64)));
        }
        out
    }

    /// Substitutes polynomials (over a common ring) for each variable.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars());
        let (ctx, vars) = (&images[0].ctx, &images[0].vars);
        let mut out = Self::zero(ctx, vars);
        for (e, c) in &self.terms {
            let mut t = Self::constant(ctx, vars, ctx.embed(&self.ctx, c).expect("coefficients embed"));
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&img.pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Re-expresses the polynomial in a larger variable list; `map[i]` is the
    /// position of the `i`-th current variable in `vars`.
    pub fn embed_vars(&self, vars: &Arc<Vec<String>>, map: &[usize]) -> MultiPoly {
        let mut out = Self::zero(&self.ctx, vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Same polynomial over a field containing the coefficient field.
    pub fn change_field(&self, target: &FieldCtx) -> Result<MultiPoly> {
        let mut out = Self::zero(target, &self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), target.embed(&self.ctx, c)?);
        }
        Ok(out)
    }

    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<MultiPoly> {
        let mut v = parse_system(ctx, text)?;
        if v.len() != 1 {
            return Err(Error::Parse(format!("expected one polynomial, found {}", v.len())));
        }
        Ok(v.remove(0))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .sorted_terms(MonomialOrder::DegRevLex)
            .into_iter()
            .map(|(e, c)| serde_json::json!({ "coeff": self.ctx.encode_elem(&c), "exp": e }))
            .collect();
        serde_json::json!({ "vars": *self.vars, "terms": terms })
    }

    pub fn from_json(ctx: &FieldCtx, v: &serde_json::Value) -> Result<MultiPoly> {
        #[derive(Deserialize)]
        struct Term {
            coeff: serde_json::Value,
            exp: Exp,
        }
        #[derive(Deserialize)]
        struct Repr {
            vars: Vec<String>,
            terms: Vec<Term>,
        }
        let r: Repr = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let vars = Arc::new(r.vars);
        let mut p = Self::zero(ctx, &vars);
        for t in r.terms {
            if t.exp.len() != vars.len() {
                return Err(Error::Parse("exponent length does not match variables".into()));
            }
            p.add_term(t.exp, ctx.decode_elem(&t.coeff)?);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, (e, c)) in self.sorted_terms(MonomialOrder::DegRevLex).into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let mut coeff = self.ctx.format_elem(&c);
            let compound = !self.ctx.is_ground() && coeff.contains([' ', '*']);
            let negative = !compound && coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if compound {
                coeff = format!("({coeff})");
            }
            let body = match (mono.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => mono.join("*"),
                _ => format!("{coeff}*{}", mono.join("*")),
            };
            match (k, negative) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        f.write_str(&out)
    }
}

#[derive(Clone, Debug)]
enum Ast {
    Num(BigRational),
    Sym(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = cs[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = if self.eat('-') {
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat('/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.power()?));
            } else if matches!(self.peek(), Some(Tok::Op('(')) | Some(Tok::Ident(_))) {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = (&n)
                        .try_into()
                        .map_err(|_| Error::Parse(format!("exponent {n} too large")))?;
                    Ok(Ast::Pow(Box::new(base), k))
                }
                _ => Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Ast::Num(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Ast::Sym(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.power()?)))
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

fn parse_ast(s: &str) -> Result<Ast> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {:?}", p.toks[p.pos])));
    }
    Ok(e)
}

fn collect_syms(a: &Ast, scalar: Option<&str>, out: &mut Vec<String>) {
    match a {
        Ast::Num(_) => {}
        Ast::Sym(s) => {
            if Some(s.as_str()) != scalar && !out.contains(s) {
                out.push(s.clone());
            }
        }
        Ast::Neg(x) | Ast::Pow(x, _) => collect_syms(x, scalar, out),
        Ast::Add(x, y) | Ast::Sub(x, y) | Ast::Mul(x, y) | Ast::Div(x, y) => {
            collect_syms(x, scalar, out);
            collect_syms(y, scalar, out);
        }
    }
}

fn build(ctx: &FieldCtx, vars: &Arc<Vec<String>>, a: &Ast) -> Result<MultiPoly> {
    Ok(match a {
        Ast::Num(q) => MultiPoly::constant(ctx, vars, ctx.from_rational(q)?),
        Ast::Sym(s) => {
            if let Some(i) = vars.iter().position(|v| v == s) {
                MultiPoly::var(ctx, vars, i)
            } else if ctx.generator_name() == Some(s.as_str()) {
                MultiPoly::constant(ctx, vars, ctx.generator().expect("extension generator"))
            } else {
                return Err(Error::Parse(format!("unknown variable '{s}'")));
            }
        }
        Ast::Neg(x) => build(ctx, vars, x)?.neg(),
        Ast::Add(x, y) => build(ctx, vars, x)?.add(&build(ctx, vars, y)?),
        Ast::Sub(x, y) => build(ctx, vars, x)?.sub(&build(ctx, vars, y)?),
        Ast::Mul(x, y) => build(ctx, vars, x)?.mul(&build(ctx, vars, y)?),
        Ast::Div(x, y) => {
            let d = build(ctx, vars, y)?
                .as_constant()
                .ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
            build(ctx, vars, x)?.scale(&ctx.inv(&d).map_err(|_| Error::Parse("division by zero".into()))?)
        }
        Ast::Pow(x, k) => build(ctx, vars, x)?.pow(*k),
    })
}

/// Parses a `;`-separated system; variables are ordered by first appearance.
pub fn parse_system(ctx: &FieldCtx, text: &str) -> Result<Vec<MultiPoly>> {
    let asts = split_system(text)
        .iter()
        .map(|s| parse_ast(s))
        .collect::<Result<Vec<_>>>()?;
    let mut names = Vec::new();
    for a in &asts {
        collect_syms(a, ctx.generator_name(), &mut names);
    }
    let vars = Arc::new(names);
    asts.iter().map(|a| build(ctx, &vars, a)).collect()
}

/// Parses a system over an explicit variable list.
pub fn parse_system_with_vars<S: AsRef<str>>(ctx: &FieldCtx, text: &str, vars: &[S]) -> Result<Vec<MultiPoly>> {
    let vars = MultiPoly::var_list(vars);
    split_system(text)
        .iter()
        .map(|s| build(ctx, &vars, &parse_ast(s)?))
        .collect()
}

fn split_system(text: &str) -> Vec<&str> {
    text.split([';', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

/// Parses a constant expression such as `-3/2` or `2*t + 1` into a field element.
pub fn parse_scalar(ctx: &FieldCtx, text: &str) -> Result<FieldElem> {
    let vars = Arc::new(Vec::new());
    build(ctx, &vars, &parse_ast(text)?)?
        .as_constant()
        .ok_or_else(|| Error::Parse(format!("'{text}' is not a constant")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let q = FieldCtx::rationals();
        let p = MultiPoly::parse(&q, "3*x1^2*y - 1/2").unwrap();
        assert_eq!(**p.vars(), vec!["x1".to_string(), "y".to_string()]);
        assert_eq!(p.to_string(), "3*x1^2*y - 1/2");
        let again = MultiPoly::parse(&q, &p.to_string()).unwrap();
        assert_eq!(again, p);
        let s = parse_system(&q, "x^2-1;y^2-x^2;z^2+x^2").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[2].to_string(), "x^2 + z^2");
    }

    #[test]
    fn parentheses_and_products() {
        let q = FieldCtx::rationals();
        let p = MultiPoly::parse(&q, "(x-1)(x-2)*(x - 3)").unwrap();
        assert_eq!(p.to_string(), "x^3 - 6*x^2 + 11*x - 6");
        assert_eq!(parse_scalar(&q, "-(3/4)^2").unwrap(), q.from_rational(&BigRational::new(9.into(), (-16).into())).unwrap());
    }

    #[test]
    fn prime_field_and_extension() {
        let f7 = FieldCtx::prime(7).unwrap();
        let p = MultiPoly::parse(&f7, "x/2 + 8").unwrap();
        assert_eq!(p.coeff(&[1]), FieldElem::Fp(4));
        assert_eq!(p.coeff(&[0]), FieldElem::Fp(1));
        let alg = crate::field::make_extension(
            &FieldCtx::rationals(),
            &crate::upoly::from_ints(&FieldCtx::rationals(), &[1, 1, 1]),
        )
        .unwrap();
        let k = alg.ctx();
        let p = MultiPoly::parse(k, "t*x - 1").unwrap();
        assert_eq!(p.nvars(), 1);
        let root = k.inv(&k.generator().unwrap()).unwrap();
        assert!(k.is_zero(&p.eval(&[root]).unwrap()));
    }

    #[test]
    fn derivatives_and_json() {
        let q = FieldCtx::rationals();
        let p = MultiPoly::parse(&q, "x^3*y + 2*y^2").unwrap();
        assert_eq!(p.partial(0).to_string(), "3*x^2*y");
        assert_eq!(p.partial(1).to_string(), "x^3 + 4*y");
        let j = p.to_json();
        assert_eq!(MultiPoly::from_json(&q, &j).unwrap(), p);
    }

    #[test]
    fn orders() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
    }

    #[test]
    fn parse_errors() {
        let q = FieldCtx::rationals();
        assert!(MultiPoly::parse(&q, "x^").is_err());
        assert!(MultiPoly::parse(&q, "x/y").is_err());
        assert!(MultiPoly::parse(&q, "x $ 2").is_err());
        assert!(MultiPoly::parse(&q, "x/0").is_err());
    }
}
