//! Exact base fields and finite étale extensions.
//!
//! A [`FieldCtx`] describes where arithmetic happens: the rationals, a prime
//! field, or a quotient `base[t]/(m(t))` by a monic squarefree modulus. The
//! quotient need not be a field; callers that need inverses get
//! [`Error::NotInvertible`] on zero divisors. Elements are plain values
//! ([`FieldElem`]) and every operation goes through the context, so towers
//! are flattened by the caller.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::upoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldCtx {
    Rationals,
    Prime(u64),
    Ext(Arc<ExtField>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    base: FieldCtx,
    /// Monic modulus, constant term first.
    modulus: Vec<FieldElem>,
    name: String,
}

/// An element of some [`FieldCtx`]. Extension elements are coordinate
/// vectors on the power basis `1, t, ..., t^(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElem {
    Q(BigRational),
    Fp(u64),
    Ext(Vec<FieldElem>),
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

impl FieldCtx {
    pub fn rationals() -> Self {
        FieldCtx::Rationals
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharTwo);
        }
        if !arith::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldCtx::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Rationals => 0,
            FieldCtx::Prime(p) => *p,
            FieldCtx::Ext(e) => e.base.characteristic(),
        }
    }

    /// Degree over the immediate base (1 for ground fields).
    pub fn degree(&self) -> usize {
        match self {
            FieldCtx::Ext(e) => e.modulus.len() - 1,
            _ => 1,
        }
    }

    pub fn base(&self) -> Option<&FieldCtx> {
        match self {
            FieldCtx::Ext(e) => Some(&e.base),
            _ => None,
        }
    }

    pub fn modulus(&self) -> Option<&[FieldElem]> {
        match self {
            FieldCtx::Ext(e) => Some(&e.modulus),
            _ => None,
        }
    }

    /// Name of the extension generator (used when printing and parsing).
    pub fn generator_name(&self) -> Option<&str> {
        match self {
            FieldCtx::Ext(e) => Some(&e.name),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        !matches!(self, FieldCtx::Ext(_))
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            FieldCtx::Rationals => FieldElem::Q(BigRational::zero()),
            FieldCtx::Prime(_) => FieldElem::Fp(0),
            FieldCtx::Ext(e) => FieldElem::Ext(vec![e.base.zero(); e.modulus.len() - 1]),
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match self {
            FieldCtx::Rationals => FieldElem::Q(BigRational::from_integer(n.clone())),
            FieldCtx::Prime(p) => {
                let r = n % BigInt::from(*p);
                let r = if r.is_negative() { r + BigInt::from(*p) } else { r };
                FieldElem::Fp(r.to_u64().expect("residue fits"))
            }
            FieldCtx::Ext(e) => self.lift_base(e.base.from_bigint(n)),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        self.div(&num, &den)
    }

    /// Embeds an element of the immediate base as a constant.
    pub fn lift_base(&self, c: FieldElem) -> FieldElem {
        match self {
            FieldCtx::Ext(e) => {
                let mut v = vec![e.base.zero(); e.modulus.len() - 1];
                v[0] = c;
                FieldElem::Ext(v)
            }
            _ => c,
        }
    }

    /// Embeds an element of `from`, which must be this context or one of
    /// its bases.
    pub fn embed(&self, from: &FieldCtx, c: &FieldElem) -> Result<FieldElem> {
        if self == from {
            return Ok(c.clone());
        }
        match self {
            FieldCtx::Ext(e) => Ok(self.lift_base(e.base.embed(from, c)?)),
            _ => Err(Error::FieldMismatch(format!(
                "cannot embed element of {from} into {self}"
            ))),
        }
    }

    /// The element back in the immediate base, if it is constant.
    pub fn as_base(&self, a: &FieldElem) -> Option<FieldElem> {
        match (self, a) {
            (FieldCtx::Ext(e), FieldElem::Ext(v)) => {
                if v[1..].iter().all(|c| e.base.is_zero(c)) {
                    Some(v[0].clone())
                } else {
                    None
                }
            }
            _ => Some(a.clone()),
        }
    }

    /// The element as a rational number, descending through constant
    /// extension coordinates.
    pub fn as_rational(&self, a: &FieldElem) -> Option<BigRational> {
        match (self, a) {
            (FieldCtx::Rationals, FieldElem::Q(q)) => Some(q.clone()),
            (FieldCtx::Ext(e), _) => e.base.as_rational(&self.as_base(a)?),
            _ => None,
        }
    }

    pub fn generator(&self) -> Option<FieldElem> {
        match self {
            FieldCtx::Ext(e) => {
                let d = e.modulus.len() - 1;
                let mut v = vec![e.base.zero(); d];
                if d == 1 {
                    // t = -m0 when the modulus is linear.
                    v[0] = e.base.neg(&e.modulus[0]);
                } else {
                    v[1] = e.base.one();
                }
                Some(FieldElem::Ext(v))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Q(q) => q.is_zero(),
            FieldElem::Fp(x) => *x == 0,
            FieldElem::Ext(v) => {
                let base = self.base().expect("extension element in ground context");
                v.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        *a == self.one()
    }

    pub fn contains(&self, a: &FieldElem) -> bool {
        match (self, a) {
            (FieldCtx::Rationals, FieldElem::Q(_)) => true,
            (FieldCtx::Prime(p), FieldElem::Fp(x)) => x < p,
            (FieldCtx::Ext(e), FieldElem::Ext(v)) => {
                v.len() == e.modulus.len() - 1 && v.iter().all(|c| e.base.contains(c))
            }
            _ => false,
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (_, FieldElem::Q(x), FieldElem::Q(y)) => FieldElem::Q(x + y),
            (FieldCtx::Prime(p), FieldElem::Fp(x), FieldElem::Fp(y)) => {
                let s = x + y;
                FieldElem::Fp(if s >= *p { s - p } else { s })
            }
            (FieldCtx::Ext(e), FieldElem::Ext(x), FieldElem::Ext(y)) => {
                FieldElem::Ext(x.iter().zip(y).map(|(u, v)| e.base.add(u, v)).collect())
            }
            _ => panic!("field element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (self, a) {
            (_, FieldElem::Q(x)) => FieldElem::Q(-x),
            (FieldCtx::Prime(p), FieldElem::Fp(x)) => FieldElem::Fp(if *x == 0 { 0 } else { p - x }),
            (FieldCtx::Ext(e), FieldElem::Ext(x)) => {
                FieldElem::Ext(x.iter().map(|u| e.base.neg(u)).collect())
            }
            _ => panic!("field element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (_, FieldElem::Q(x), FieldElem::Q(y)) => FieldElem::Q(x - y),
            (FieldCtx::Prime(p), FieldElem::Fp(x), FieldElem::Fp(y)) => {
                FieldElem::Fp(if x >= y { x - y } else { p - y + x })
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (_, FieldElem::Q(x), FieldElem::Q(y)) => FieldElem::Q(x * y),
            (FieldCtx::Prime(p), FieldElem::Fp(x), FieldElem::Fp(y)) => FieldElem::Fp(mul_mod(*x, *y, *p)),
            (FieldCtx::Ext(e), FieldElem::Ext(x), FieldElem::Ext(y)) => {
                let prod = upoly::mul(&e.base, x, y);
                FieldElem::Ext(e.reduce(prod))
            }
            _ => panic!("field element does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::NotInvertible);
        }
        match (self, a) {
            (_, FieldElem::Q(x)) => Ok(FieldElem::Q(x.recip())),
            (FieldCtx::Prime(p), FieldElem::Fp(x)) => Ok(FieldElem::Fp(pow_mod(*x, p - 2, *p))),
            (FieldCtx::Ext(e), FieldElem::Ext(x)) => {
                let (g, s, _) = upoly::xgcd(&e.base, &upoly::trim(&e.base, x.clone()), &e.modulus);
                if g.len() != 1 {
                    return Err(Error::NotInvertible);
                }
                let ginv = e.base.inv(&g[0])?;
                let s = upoly::scale(&e.base, &s, &ginv);
                Ok(FieldElem::Ext(e.reduce(s)))
            }
            _ => panic!("field element does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by `a` on the power basis, over the base.
    /// Entry `[i][j]` is the coefficient of `t^i` in `a * t^j`.
    pub fn mult_matrix(&self, a: &FieldElem) -> Result<Vec<Vec<FieldElem>>> {
        if self.is_ground() {
            return Ok(vec![vec![a.clone()]]);
        }
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = a.clone();
        let t = self.generator().expect("extension generator");
        for _ in 0..d {
            let FieldElem::Ext(v) = &cur else { unreachable!() };
            cols.push(v.clone());
            cur = self.mul(&cur, &t);
        }
        Ok((0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect())
    }

    /// Trace of multiplication-by-`a` down to the immediate base.
    pub fn trace(&self, a: &FieldElem) -> FieldElem {
        match self {
            FieldCtx::Ext(e) => {
                let m = self.mult_matrix(a).expect("multiplication matrix");
                m.iter()
                    .enumerate()
                    .fold(e.base.zero(), |acc, (i, row)| e.base.add(&acc, &row[i]))
            }
            _ => a.clone(),
        }
    }

    /// Renders an element; extension generators print as their name.
    pub fn format_elem(&self, a: &FieldElem) -> String {
        match (self, a) {
            (_, FieldElem::Q(q)) => q.to_string(),
            (FieldCtx::Prime(_), FieldElem::Fp(x)) => x.to_string(),
            (FieldCtx::Ext(e), FieldElem::Ext(v)) => {
                let mut parts: Vec<String> = Vec::new();
                for (i, c) in v.iter().enumerate().rev() {
                    if e.base.is_zero(c) {
                        continue;
                    }
                    let coeff = e.base.format_elem(c);
                    let coeff = if e.base.is_ground() { coeff } else { format!("({coeff})") };
                    let mono = match i {
                        0 => String::new(),
                        1 => e.name.clone(),
                        _ => format!("{}^{}", e.name, i),
                    };
                    parts.push(match (i, coeff.as_str()) {
                        (0, _) => coeff,
                        (_, "1") => mono,
                        (_, "-1") => format!("-{mono}"),
                        _ => format!("{coeff}*{mono}"),
                    });
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ").replace("+ -", "- ")
                }
            }
            _ => format!("{a:?}"),
        }
    }

    /// JSON encoding of an element: integers as numbers, non-integral
    /// rationals as "a/b" strings, extension elements as coefficient arrays.
    pub fn encode_elem(&self, a: &FieldElem) -> serde_json::Value {
        match a {
            FieldElem::Q(q) if q.is_integer() => match q.numer().to_i64() {
                Some(n) => serde_json::Value::from(n),
                None => serde_json::Value::from(q.to_string()),
            },
            FieldElem::Q(q) => serde_json::Value::from(q.to_string()),
            FieldElem::Fp(x) => serde_json::Value::from(*x),
            FieldElem::Ext(v) => {
                let base = self.base().expect("extension context");
                serde_json::Value::Array(v.iter().map(|c| base.encode_elem(c)).collect())
            }
        }
    }

    pub fn decode_elem(&self, v: &serde_json::Value) -> Result<FieldElem> {
        match (self, v) {
            (FieldCtx::Ext(e), serde_json::Value::Array(items)) => {
                let d = self.degree();
                if items.len() > d {
                    return Err(Error::Parse(format!("too many coordinates for degree {d}")));
                }
                let mut coords = items
                    .iter()
                    .map(|c| e.base.decode_elem(c))
                    .collect::<Result<Vec<_>>>()?;
                coords.resize(d, e.base.zero());
                Ok(FieldElem::Ext(coords))
            }
            (FieldCtx::Ext(e), _) => Ok(self.lift_base(e.base.decode_elem(v)?)),
            (_, serde_json::Value::Number(n)) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("not an integer: {n}")))?;
                Ok(self.from_int(i))
            }
            (_, serde_json::Value::String(s)) => {
                let q = parse_rational(s)?;
                self.from_rational(&q)
            }
            (_, serde_json::Value::Array(items)) if items.len() == 1 => self.decode_elem(&items[0]),
            _ => Err(Error::Parse(format!("cannot decode field element {v}"))),
        }
    }

    /// Machine-readable description matching [`FieldSpec`].
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldCtx::Rationals => FieldSpec::Q,
            FieldCtx::Prime(p) => FieldSpec::Fp { p: *p },
            FieldCtx::Ext(e) => FieldSpec::Ext {
                base: Box::new(e.base.spec()),
                modulus: e.modulus.iter().map(|c| e.base.encode_elem(c)).collect(),
            },
        }
    }
}

impl ExtField {
    fn reduce(&self, mut p: Vec<FieldElem>) -> Vec<FieldElem> {
        let d = self.modulus.len() - 1;
        while p.len() > d {
            let lead = p.pop().expect("nonempty");
            if self.base.is_zero(&lead) {
                continue;
            }
            let off = p.len() - d;
            for (i, m) in self.modulus[..d].iter().enumerate() {
                let t = self.base.mul(&lead, m);
                p[off + i] = self.base.sub(&p[off + i], &t);
            }
        }
        p.resize(d, self.base.zero());
        p
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rationals => write!(f, "Q"),
            FieldCtx::Prime(p) => write!(f, "F_{p}"),
            FieldCtx::Ext(e) => {
                let m = crate::upoly::format(&e.base, &e.modulus, &e.name);
                write!(f, "{}[{}]/({})", e.base, e.name, m)
            }
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer '{t}'")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Whether a modulus has been shown irreducible over its base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Certified,
    Reducible,
    Unverified,
}

/// A finite étale algebra `base[t]/(m(t))` with `m` monic and squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleAlgebra {
    ctx: FieldCtx,
    irreducible: Irreducibility,
}

/// Builds `base[t]/(modulus)`. Squarefreeness is verified; irreducibility is
/// certified for degree <= 3 by a root search and flagged otherwise.
pub fn make_extension(base: &FieldCtx, modulus: &[FieldElem]) -> Result<EtaleAlgebra> {
    make_extension_named(base, modulus, "t")
}

pub fn make_extension_named(base: &FieldCtx, modulus: &[FieldElem], name: &str) -> Result<EtaleAlgebra> {
    if base.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    let m = upoly::trim(base, modulus.to_vec());
    if m.len() < 2 || !base.is_one(m.last().expect("nonempty")) {
        return Err(Error::BadModulus);
    }
    if m.iter().any(|c| !base.contains(c)) {
        return Err(Error::FieldMismatch("modulus coefficients not in base".into()));
    }
    let dm = upoly::derivative(base, &m);
    let g = upoly::gcd(base, &m, &dm);
    if g.len() != 1 {
        return Err(Error::NotSquarefree);
    }
    let deg = m.len() - 1;
    let irreducible = if deg == 1 {
        Irreducibility::Certified
    } else {
        match upoly::has_root(base, &m) {
            Some(true) => Irreducibility::Reducible,
            Some(false) if deg <= 3 => Irreducibility::Certified,
            _ => Irreducibility::Unverified,
        }
    };
    let ctx = FieldCtx::Ext(Arc::new(ExtField {
        base: base.clone(),
        modulus: m,
        name: name.to_string(),
    }));
    Ok(EtaleAlgebra { ctx, irreducible })
}

impl EtaleAlgebra {
    /// The degree-one algebra `base[t]/(t - value)`, whose generator is `value`.
    pub fn rational(base: &FieldCtx, value: &FieldElem) -> Self {
        let ctx = FieldCtx::Ext(Arc::new(ExtField {
            base: base.clone(),
            modulus: vec![base.neg(value), base.one()],
            name: "t".into(),
        }));
        EtaleAlgebra {
            ctx,
            irreducible: Irreducibility::Certified,
        }
    }

    /// Marks the modulus irreducible on external grounds (cyclotomic
    /// polynomials over the rationals).
    pub(crate) fn known_irreducible(mut self) -> Self {
        self.irreducible = Irreducibility::Certified;
        self
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn base(&self) -> &FieldCtx {
        self.ctx.base().expect("extension context")
    }

    pub fn degree(&self) -> usize {
        self.ctx.degree()
    }

    pub fn modulus(&self) -> &[FieldElem] {
        self.ctx.modulus().expect("extension context")
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducible
    }

    pub fn generator(&self) -> FieldElem {
        self.ctx.generator().expect("extension context")
    }

    /// Trace down to the base field.
    pub fn trace_of(&self, a: &FieldElem) -> FieldElem {
        self.ctx.trace(a)
    }

    /// Element from base-field coordinates on the power basis.
    pub fn elem(&self, coords: &[FieldElem]) -> FieldElem {
        let mut v = coords.to_vec();
        v.resize(self.degree(), self.base().zero());
        FieldElem::Ext(v)
    }
}

/// Serialized field description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "field")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Fp")]
    Fp { p: u64 },
    #[serde(rename = "ext")]
    Ext {
        base: Box<FieldSpec>,
        modulus: Vec<serde_json::Value>,
    },
}

/// Accepts `Q`, `fp:<p>` or a JSON description such as
/// `{"field": "ext", "base": {"field": "Q"}, "modulus": [1, 1, 1]}`.
impl std::str::FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "Q" | "q" | "QQ") {
            return Ok(FieldSpec::Q);
        }
        if let Some(p) = s.strip_prefix("fp:").or_else(|| s.strip_prefix("Fp:")) {
            let p = p.trim().parse().map_err(|_| Error::Parse(format!("bad prime '{p}'")))?;
            return Ok(FieldSpec::Fp { p });
        }
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        Err(Error::Parse(format!("unknown field '{s}'")))
    }
}

impl FieldSpec {
    pub fn build(&self) -> Result<FieldCtx> {
        match self {
            FieldSpec::Q => Ok(FieldCtx::Rationals),
            FieldSpec::Fp { p } => FieldCtx::prime(*p),
            FieldSpec::Ext { base, modulus } => {
                let base = base.build()?;
                let m = modulus
                    .iter()
                    .map(|c| base.decode_elem(c))
                    .collect::<Result<Vec<_>>>()?;
                Ok(make_extension(&base, &m)?.ctx)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElem {
        FieldCtx::Rationals.from_int(n)
    }

    fn qpoly(cs: &[i64]) -> Vec<FieldElem> {
        cs.iter().map(|&c| q(c)).collect()
    }

    #[test]
    fn cyclotomic_three() {
        let k3 = make_extension(&FieldCtx::Rationals, &qpoly(&[1, 1, 1])).unwrap();
        assert_eq!(k3.degree(), 2);
        assert_eq!(k3.irreducibility(), Irreducibility::Certified);
        let z = k3.generator();
        assert_eq!(k3.trace_of(&z), q(-1));
        let z2 = k3.ctx().mul(&z, &z);
        let three_z2 = k3.ctx().mul(&k3.ctx().lift_base(q(3)), &z2);
        assert_eq!(k3.trace_of(&three_z2), q(-3));
        assert_eq!(k3.trace_of(&k3.ctx().one()), q(2));
        assert!(k3.ctx().is_one(&k3.ctx().pow(&z, 3)));
    }

    #[test]
    fn degree_one_and_split() {
        let a = make_extension(&FieldCtx::Rationals, &qpoly(&[-5, 1])).unwrap();
        assert_eq!(a.degree(), 1);
        assert_eq!(a.generator(), FieldElem::Ext(vec![q(5)]));
        let split = make_extension(&FieldCtx::Rationals, &qpoly(&[-1, 0, 1])).unwrap();
        assert_eq!(split.irreducibility(), Irreducibility::Reducible);
        // t - 1 is a zero divisor in Q x Q.
        let t = split.generator();
        let zd = split.ctx().sub(&t, &split.ctx().one());
        assert_eq!(split.ctx().inv(&zd), Err(Error::NotInvertible));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FieldCtx::prime(2), Err(Error::CharTwo));
        assert_eq!(FieldCtx::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(
            make_extension(&FieldCtx::Rationals, &qpoly(&[1, 2, 1])).unwrap_err(),
            Error::NotSquarefree
        );
        assert_eq!(
            make_extension(&FieldCtx::Rationals, &qpoly(&[1, 2])).unwrap_err(),
            Error::BadModulus
        );
    }

    #[test]
    fn gaussian_rationals() {
        let qi = make_extension(&FieldCtx::Rationals, &qpoly(&[1, 0, 1])).unwrap();
        let i = qi.generator();
        assert_eq!(qi.trace_of(&i), q(0));
        let inv = qi.ctx().inv(&qi.ctx().add(&qi.ctx().one(), &i)).unwrap();
        // 1/(1+i) = (1-i)/2
        let half = FieldElem::Q(BigRational::new(1.into(), 2.into()));
        assert_eq!(inv, FieldElem::Ext(vec![half.clone(), FieldElem::Q(-half.as_q().clone())]));
        assert_eq!(qi.ctx().format_elem(&qi.ctx().mul(&qi.ctx().lift_base(q(8)), &i)), "8*t");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f7 = FieldCtx::prime(7).unwrap();
        let a = f7.from_int(-3);
        assert_eq!(a, FieldElem::Fp(4));
        assert_eq!(f7.mul(&a, &f7.inv(&a).unwrap()), f7.one());
        let half = f7.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half, FieldElem::Fp(4));
    }

    #[test]
    fn field_spec_round_trip() {
        let json = r#"{"field":"ext","base":{"field":"Q"},"modulus":[1,1,1]}"#;
        let spec: FieldSpec = serde_json::from_str(json).unwrap();
        let ctx = spec.build().unwrap();
        assert_eq!(ctx.degree(), 2);
        assert_eq!(serde_json::to_string(&ctx.spec()).unwrap(), json);
        let fp: FieldSpec = serde_json::from_str(r#"{"field":"Fp","p":7}"#).unwrap();
        assert_eq!(fp.build().unwrap(), FieldCtx::Prime(7));
    }

    impl FieldElem {
        fn as_q(&self) -> &BigRational {
            match self {
                FieldElem::Q(q) => q,
                _ => panic!(),
            }
        }
    }
}
