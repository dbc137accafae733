//! Elements of the Grothendieck-Witt group GW(k).
//!
//! A class is stored as `m·H + Σ <a_i>` where the residual square classes
//! contain no pair `{<a>, <-a>}`. Over the rationals square classes are
//! squarefree integers, over a prime field they are `1` or the least
//! non-residue, and over extension contexts the representative is whatever
//! element was supplied (flagged as non-canonical).
//!
//! Equality is decided by classical invariants: rank and discriminant over
//! a prime field; rank, signature, discriminant and the local Witt
//! invariants over the rationals (Hasse-Minkowski).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::arith::{self, Place};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// A nonzero element up to multiplication by squares.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    ctx: FieldCtx,
    rep: FieldElem,
}

fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&a| arith::legendre_u64(a as i64, p) == -1)
        .expect("odd prime has a non-residue")
}

impl SquareClass {
    pub fn new(ctx: &FieldCtx, a: &FieldElem) -> Result<Self> {
        if ctx.is_zero(a) {
            return Err(Error::ZeroEntry);
        }
        let rep = match (ctx, a) {
            (FieldCtx::Rationals, FieldElem::Q(q)) => {
                FieldElem::Q(BigRational::from_integer(arith::rational_squarefree(q)?))
            }
            (FieldCtx::Prime(p), FieldElem::Fp(x)) => {
                if arith::legendre_u64(*x as i64, *p) == 1 {
                    FieldElem::Fp(1)
                } else {
                    FieldElem::Fp(least_nonresidue(*p))
                }
            }
            _ => {
                if !ctx.contains(a) {
                    return Err(Error::FieldMismatch(format!("{a:?} is not in {ctx}")));
                }
                a.clone()
            }
        };
        Ok(SquareClass { ctx: ctx.clone(), rep })
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        SquareClass {
            ctx: ctx.clone(),
            rep: ctx.one(),
        }
    }

    pub fn from_int(ctx: &FieldCtx, n: i64) -> Result<Self> {
        Self::new(ctx, &ctx.from_int(n))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rep(&self) -> &FieldElem {
        &self.rep
    }

    /// Representatives over extension contexts carry no canonical form.
    pub fn is_canonical(&self) -> bool {
        self.ctx.is_ground()
    }

    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass> {
        SquareClass::new(&self.ctx, &self.ctx.mul(&self.rep, &other.rep))
    }

    pub fn neg(&self) -> SquareClass {
        SquareClass::new(&self.ctx, &self.ctx.neg(&self.rep)).expect("nonzero")
    }

    /// The squarefree integer representative (rationals only).
    pub fn as_integer(&self) -> Option<BigInt> {
        match &self.rep {
            FieldElem::Q(q) if q.is_integer() && self.ctx == FieldCtx::Rationals => {
                Some(q.numer().clone())
            }
            _ => None,
        }
    }

    fn sort_key(&self) -> (FieldElem, bool, FieldElem) {
        match &self.rep {
            FieldElem::Q(q) => (FieldElem::Q(q.abs()), q.is_negative(), self.rep.clone()),
            _ => (self.rep.clone(), false, self.rep.clone()),
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.ctx.format_elem(&self.rep))
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.ctx.encode_elem(&self.rep).serialize(s)
    }
}

/// An element `m·H + Σ <a_i>` of GW(k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWClass {
    ctx: FieldCtx,
    hyperbolic: u64,
    residual: Vec<SquareClass>,
}

/// Rank, discriminant, signature and the places where the Witt invariant
/// is nontrivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GWInvariants {
    pub rank: usize,
    /// Square class of the product of diagonal entries.
    pub disc: SquareClass,
    /// Defined over the rationals only.
    pub signature: Option<i64>,
    /// Places where the Witt invariant (the Hasse invariant normalized so that
    /// adding `H` leaves it unchanged) equals -1. Rationals only.
    pub hasse: Option<Vec<Place>>,
}

impl GWInvariants {
    /// `(rank, signature, disc)` with the discriminant as a squarefree integer.
    pub fn triple(&self) -> Option<(usize, i64, BigInt)> {
        Some((self.rank, self.signature?, self.disc.as_integer()?))
    }
}

/// Local data of a diagonal rational form: rank, squarefree discriminant,
/// signature, and the Hasse invariant `∏_{i<j} (a_i, a_j)_v` per place.
struct RationalLocal {
    rank: usize,
    disc: BigInt,
    signature: i64,
    places: Vec<Place>,
    hasse: Vec<i8>,
}

fn hilbert(a: &BigInt, b: &BigInt, v: &Place) -> i8 {
    arith::hilbert_symbol(
        &BigRational::from_integer(a.clone()),
        &BigRational::from_integer(b.clone()),
        v,
    )
}

impl RationalLocal {
    fn compute(entries: &[BigInt], extra_places: &BTreeSet<Place>) -> Result<Self> {
        let mut places: BTreeSet<Place> = extra_places.clone();
        places.insert(Place::prime(2));
        places.insert(Place::Infinity);
        for a in entries {
            for (p, _) in arith::factor(a.magnitude())? {
                places.insert(Place::Prime(p));
            }
        }
        let places: Vec<Place> = places.into_iter().collect();
        let mut hasse = vec![1i8; places.len()];
        let mut d = BigInt::one();
        for a in entries {
            for (h, v) in hasse.iter_mut().zip(&places) {
                *h *= hilbert(&d, a, v);
            }
            d = arith::squarefree_part(&(d * a))?;
        }
        let signature = entries.iter().map(|a| if a.is_negative() { -1 } else { 1 }).sum();
        Ok(RationalLocal {
            rank: entries.len(),
            disc: d,
            signature,
            places,
            hasse,
        })
    }

    /// Witt invariant at the i-th place: Hasse invariant corrected by a
    /// rank- and discriminant-dependent symbol so that it is stable under
    /// adding hyperbolic planes.
    fn witt(&self, i: usize) -> i8 {
        let v = &self.places[i];
        let minus_one = BigInt::from(-1);
        let correction = match self.rank % 8 {
            1 | 2 => 1,
            3 | 4 => hilbert(&minus_one, &-&self.disc, v),
            5 | 6 => hilbert(&minus_one, &minus_one, v),
            _ => hilbert(&minus_one, &self.disc, v),
        };
        self.hasse[i] * correction
    }

    /// Whether the form is isotropic at every place (Hasse-Minkowski).
    fn is_isotropic(&self, hasse: &[i8], disc: &BigInt, rank: usize) -> bool {
        let minus_one = BigInt::from(-1);
        match rank {
            0 | 1 => false,
            // Binary forms: isotropic iff -d is a square.
            2 => (-disc).is_one(),
            _ => self.places.iter().zip(hasse).all(|(v, &eps)| match v {
                Place::Infinity => (self.signature.unsigned_abs() as usize) < rank,
                _ => match rank {
                    3 => hilbert(&minus_one, &-disc, v) == eps,
                    4 => !arith::is_local_square(disc, v) || eps == hilbert(&minus_one, &minus_one, v),
                    _ => true,
                },
            }),
        }
    }

    /// Rank of the anisotropic part, peeling hyperbolic planes while the
    /// remaining form is isotropic. Places outside the tracked set only see
    /// unit forms, which are isotropic in rank >= 3.
    fn anisotropic_rank(&self) -> usize {
        let mut rank = self.rank;
        let mut disc = self.disc.clone();
        let mut hasse = self.hasse.clone();
        while self.is_isotropic(&hasse, &disc, rank) {
            // q = H ⊥ q': disc(q') = -disc(q), eps(q') = eps(q)·(disc(q'), -1).
            disc = -disc;
            for (h, v) in hasse.iter_mut().zip(&self.places) {
                *h *= hilbert(&disc, &BigInt::from(-1), v);
            }
            rank -= 2;
        }
        rank
    }
}

/// Folds `{<a>, <-a>}` pairs into hyperbolic planes and sorts the residual.
pub fn gw_simplify(ctx: &FieldCtx, terms: Vec<SquareClass>) -> Result<GWClass> {
    let mut c = GWClass::zero(ctx);
    for t in terms {
        if t.ctx != *ctx {
            return Err(Error::FieldMismatch(format!("square class over {} in GW({ctx})", t.ctx)));
        }
        c.push(t);
    }
    c.sort();
    Ok(c)
}

impl GWClass {
    pub fn zero(ctx: &FieldCtx) -> Self {
        GWClass {
            ctx: ctx.clone(),
            hyperbolic: 0,
            residual: Vec::new(),
        }
    }

    pub fn hyperbolic(ctx: &FieldCtx, m: u64) -> Self {
        GWClass {
            hyperbolic: m,
            ..GWClass::zero(ctx)
        }
    }

    /// `m·H + Σ <a_i>` from diagonal entries.
    pub fn from_diagonal(ctx: &FieldCtx, entries: &[FieldElem]) -> Result<Self> {
        let terms = entries
            .iter()
            .map(|a| SquareClass::new(ctx, a))
            .collect::<Result<Vec<_>>>()?;
        gw_simplify(ctx, terms)
    }

    pub fn from_ints(ctx: &FieldCtx, hyperbolic: u64, entries: &[i64]) -> Result<Self> {
        let entries: Vec<FieldElem> = entries.iter().map(|&a| ctx.from_int(a)).collect();
        let mut c = Self::from_diagonal(ctx, &entries)?;
        c.hyperbolic += hyperbolic;
        Ok(c)
    }

    fn push(&mut self, t: SquareClass) {
        let neg = t.neg();
        if let Some(i) = self.residual.iter().position(|r| *r == neg) {
            self.residual.swap_remove(i);
            self.hyperbolic += 1;
        } else {
            self.residual.push(t);
        }
    }

    fn sort(&mut self) {
        self.residual.sort_by_key(|a| a.sort_key());
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn hyperbolic_count(&self) -> u64 {
        self.hyperbolic
    }

    pub fn residual(&self) -> &[SquareClass] {
        &self.residual
    }

    pub fn rank(&self) -> usize {
        2 * self.hyperbolic as usize + self.residual.len()
    }

    pub fn add(&self, other: &GWClass) -> Result<GWClass> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch("adding classes over different fields".into()));
        }
        let mut c = self.clone();
        c.hyperbolic += other.hyperbolic;
        for t in &other.residual {
            c.push(t.clone());
        }
        c.sort();
        Ok(c)
    }

    /// Product `<a> · c`.
    pub fn scale(&self, a: &SquareClass) -> Result<GWClass> {
        let terms = self
            .residual
            .iter()
            .map(|t| t.mul(a))
            .collect::<Result<Vec<_>>>()?;
        let mut c = gw_simplify(&self.ctx, terms)?;
        c.hyperbolic += self.hyperbolic;
        Ok(c)
    }

    /// Representative of the image in the Witt group: drop the hyperbolic part.
    pub fn witt_class(&self) -> GWClass {
        GWClass {
            hyperbolic: 0,
            ..self.clone()
        }
    }

    /// Diagonal entries with every `H` expanded as `<1> + <-1>`.
    pub fn expanded_diagonal(&self) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(self.rank());
        for _ in 0..self.hyperbolic {
            out.push(self.ctx.one());
            out.push(self.ctx.from_int(-1));
        }
        out.extend(self.residual.iter().map(|t| t.rep.clone()));
        out
    }

    pub fn disc(&self) -> Result<SquareClass> {
        let prod = self
            .expanded_diagonal()
            .iter()
            .fold(self.ctx.one(), |acc, a| self.ctx.mul(&acc, a));
        SquareClass::new(&self.ctx, &prod)
    }

    fn rational_entries(&self) -> Vec<BigInt> {
        self.expanded_diagonal()
            .iter()
            .map(|a| match a {
                FieldElem::Q(q) => q.numer().clone(),
                _ => unreachable!("rational context"),
            })
            .collect()
    }

    fn rational_local(&self, extra: &BTreeSet<Place>) -> Result<RationalLocal> {
        RationalLocal::compute(&self.rational_entries(), extra)
    }

    pub fn invariants(&self) -> Result<GWInvariants> {
        match &self.ctx {
            FieldCtx::Rationals => {
                let local = self.rational_local(&BTreeSet::new())?;
                let hasse = (0..local.places.len())
                    .filter(|&i| local.witt(i) == -1)
                    .map(|i| local.places[i].clone())
                    .collect();
                Ok(GWInvariants {
                    rank: self.rank(),
                    disc: self.disc()?,
                    signature: Some(local.signature),
                    hasse: Some(hasse),
                })
            }
            FieldCtx::Prime(_) => Ok(GWInvariants {
                rank: self.rank(),
                disc: self.disc()?,
                signature: None,
                hasse: None,
            }),
            FieldCtx::Ext(_) => Err(Error::UnsupportedField(
                "invariants over extension contexts are limited to rank".into(),
            )),
        }
    }

    /// Signature over the rationals (each `H` contributes zero).
    pub fn signature(&self) -> Option<i64> {
        match self.ctx {
            FieldCtx::Rationals => Some(
                self.residual
                    .iter()
                    .map(|t| match &t.rep {
                        FieldElem::Q(q) if q.is_negative() => -1,
                        _ => 1,
                    })
                    .sum(),
            ),
            _ => None,
        }
    }

    /// Equality in GW(k) for k the rationals or a prime field.
    pub fn gw_equal(&self, other: &GWClass) -> Result<bool> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch("comparing classes over different fields".into()));
        }
        match &self.ctx {
            FieldCtx::Prime(_) => Ok(self.rank() == other.rank() && self.disc()? == other.disc()?),
            FieldCtx::Rationals => {
                if self.rank() != other.rank()
                    || self.signature() != other.signature()
                    || self.disc()? != other.disc()?
                {
                    return Ok(false);
                }
                let mut places = BTreeSet::new();
                for c in [self, other] {
                    for a in c.rational_entries() {
                        for (p, _) in arith::factor(a.magnitude())? {
                            places.insert(Place::Prime(p));
                        }
                    }
                }
                let a = self.rational_local(&places)?;
                let b = other.rational_local(&places)?;
                debug_assert_eq!(a.places, b.places);
                Ok(a.hasse == b.hasse)
            }
            FieldCtx::Ext(_) => Err(Error::UnsupportedField(
                "equality over extension contexts".into(),
            )),
        }
    }

    /// Rank of the anisotropic part; `(rank - anisotropic_rank) / 2` is the
    /// Witt index.
    pub fn anisotropic_rank(&self) -> Result<usize> {
        match &self.ctx {
            FieldCtx::Prime(_) => {
                let n = self.rank();
                if n % 2 == 1 {
                    return Ok(1);
                }
                let hyperbolic_disc = SquareClass::from_int(&self.ctx, if (n / 2) % 2 == 0 { 1 } else { -1 })?;
                Ok(if self.disc()? == hyperbolic_disc { 0 } else { 2 })
            }
            FieldCtx::Rationals => Ok(self.rational_local(&BTreeSet::new())?.anisotropic_rank()),
            FieldCtx::Ext(_) => Err(Error::UnsupportedField("anisotropic part over extensions".into())),
        }
    }

    /// Parses the text rendering, e.g. `2H + 3<1> + <-3>`.
    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<GWClass> {
        let mut terms = Vec::new();
        let mut hyperbolic = 0u64;
        let text = text.trim();
        if text == "0" || text.is_empty() {
            return Ok(GWClass::zero(ctx));
        }
        for raw in split_terms(text) {
            let raw = raw.trim();
            let (mult, body) = match raw.find(|c: char| !c.is_ascii_digit()) {
                Some(0) => (1u64, raw),
                Some(i) => (
                    raw[..i]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad multiplicity in '{raw}'")))?,
                    raw[i..].trim_start_matches('*').trim(),
                ),
                None => return Err(Error::Parse(format!("term '{raw}' has no class"))),
            };
            if body == "H" {
                hyperbolic += mult;
            } else if let Some(inner) = body.strip_prefix('<').and_then(|b| b.strip_suffix('>')) {
                let a = crate::poly::parse_scalar(ctx, inner)?;
                let t = SquareClass::new(ctx, &a)?;
                terms.extend(std::iter::repeat_n(t, mult as usize));
            } else {
                return Err(Error::Parse(format!("cannot parse GW term '{raw}'")));
            }
        }
        let mut c = gw_simplify(ctx, terms)?;
        c.hyperbolic += hyperbolic;
        Ok(c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let residual: Vec<serde_json::Value> = self
            .residual
            .iter()
            .map(|t| match self.ctx.encode_elem(&t.rep) {
                v @ serde_json::Value::Array(_) => v,
                v => serde_json::Value::Array(vec![v]),
            })
            .collect();
        serde_json::json!({ "H": self.hyperbolic, "residual": residual })
    }
}

/// Splits on top-level `+` signs, leaving those inside `<...>` alone.
fn split_terms(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '<' => depth += 1,
            '>' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

impl fmt::Display for GWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.hyperbolic {
            0 => {}
            1 => parts.push("H".into()),
            m => parts.push(format!("{m}H")),
        }
        let mut i = 0;
        while i < self.residual.len() {
            let mut j = i;
            while j < self.residual.len() && self.residual[j] == self.residual[i] {
                j += 1;
            }
            let count = j - i;
            if count == 1 {
                parts.push(self.residual[i].to_string());
            } else {
                parts.push(format!("{count}{}", self.residual[i]));
            }
            i = j;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for GWClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
