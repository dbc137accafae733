//! A1-local and global degrees: Jacobian indices at simple zeros, fiber
//! decomposition of triangular systems, and the comparison between the sum
//! of local indices and the global Scheja-Storch class.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{make_extension, EtaleAlgebra, FieldCtx, FieldElem, Irreducibility};
use crate::form::scharlau_transfer;
use crate::groebner::groebner;
use crate::gw::{GWClass, GWInvariants};
use crate::poly::{MonomialOrder, MultiPoly};
use crate::scheja_storch::{determinant, ss_class, CommRing};
use crate::upoly::{self, UPoly};

/// How a local index over a residue field is pushed down to the base.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransferMode {
    /// Trace-form (Scharlau) transfer.
    #[default]
    Scharlau,
    /// `[k(p):k]·<v>` whenever the Jacobian value `v` lies in the base field;
    /// otherwise falls back to the trace form.
    Naive,
}

impl std::str::FromStr for TransferMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scharlau" => Ok(TransferMode::Scharlau),
            "naive" => Ok(TransferMode::Naive),
            _ => Err(Error::Parse(format!("unknown transfer mode '{s}'"))),
        }
    }
}

impl std::fmt::Display for TransferMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TransferMode::Scharlau => "scharlau",
            TransferMode::Naive => "naive",
        })
    }
}

/// A closed point: a residue algebra and the coordinates of the point in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPoint {
    pub residue: EtaleAlgebra,
    pub coords: Vec<FieldElem>,
}

impl ClosedPoint {
    /// A point with coordinates in the base field.
    pub fn rational(base: &FieldCtx, coords: &[FieldElem]) -> Self {
        let residue = EtaleAlgebra::rational(base, &base.zero());
        let k = residue.ctx().clone();
        ClosedPoint {
            residue,
            coords: coords.iter().map(|c| k.lift_base(c.clone())).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.residue.degree()
    }

    /// Whether every `gᵢ - valueᵢ` vanishes at the point.
    pub fn satisfies(&self, g: &[MultiPoly], value: &[FieldElem]) -> Result<bool> {
        let k = self.residue.ctx();
        for (gi, vi) in g.iter().zip(value) {
            let x = gi.eval_in(k, &self.coords)?;
            if !k.is_zero(&k.sub(&x, &k.embed(gi.ctx(), vi)?)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates as base-field values when rational, otherwise in terms of `t`.
    pub fn describe(&self) -> Vec<String> {
        let k = self.residue.ctx();
        self.coords
            .iter()
            .map(|c| match k.as_base(c) {
                Some(b) => self.residue.base().format_elem(&b),
                None => k.format_elem(c),
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let base = self.residue.base();
        serde_json::json!({
            "degree": self.degree(),
            "modulus": upoly::format(base, self.residue.modulus(), "t"),
            "irreducibility": self.residue.irreducibility(),
            "coords": self.describe(),
        })
    }
}

/// Polynomials over a fixed ring, for symbolic determinants.
pub struct PolyRing {
    pub ctx: FieldCtx,
    pub vars: Arc<Vec<String>>,
}

impl CommRing for PolyRing {
    type Elem = MultiPoly;
    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(&self.ctx, &self.vars)
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.add(b)
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        a.neg()
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.mul(b)
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
}

/// The Jacobian matrix `[∂gᵢ/∂xⱼ]`.
pub fn jacobian(g: &[MultiPoly]) -> Vec<Vec<MultiPoly>> {
    g.iter()
        .map(|gi| (0..gi.nvars()).map(|j| gi.partial(j)).collect())
        .collect()
}

/// `det Jac(g)` as a polynomial.
pub fn jacobian_determinant(g: &[MultiPoly]) -> Result<MultiPoly> {
    let first = g.first().ok_or_else(|| Error::Invalid("empty system".into()))?;
    if first.nvars() != g.len() {
        return Err(Error::Invalid("Jacobian determinant needs a square system".into()));
    }
    let ring = PolyRing {
        ctx: first.ctx().clone(),
        vars: first.vars().clone(),
    };
    Ok(determinant(&ring, &jacobian(g)))
}

/// `det Jac(g)` evaluated at a closed point.
pub fn jacobian_at(g: &[MultiPoly], p: &ClosedPoint) -> Result<FieldElem> {
    jacobian_determinant(g)?.eval_in(p.residue.ctx(), &p.coords)
}

/// Index of `g` at a simple zero: the trace form of `<det Jac>` over the residue field.
pub fn local_index_simple(g: &[MultiPoly], p: &ClosedPoint) -> Result<GWClass> {
    local_index(g, p, TransferMode::Scharlau)
}

pub fn local_index(g: &[MultiPoly], p: &ClosedPoint, mode: TransferMode) -> Result<GWClass> {
    let j = jacobian_at(g, p)?;
    transfer_value(&p.residue, &j, mode)
}

/// Pushes `<v>` for `v` in a residue algebra down to the base.
pub fn transfer_value(residue: &EtaleAlgebra, v: &FieldElem, mode: TransferMode) -> Result<GWClass> {
    let k = residue.ctx();
    if k.is_zero(v) {
        return Err(Error::NotSimple);
    }
    if mode == TransferMode::Naive {
        if let Some(b) = k.as_base(v) {
            return GWClass::from_diagonal(residue.base(), &vec![b; residue.degree()]);
        }
    }
    scharlau_transfer(residue, &GWClass::from_diagonal(k, std::slice::from_ref(v))?)
}

/// `gᵢ - valueᵢ`.
pub fn shifted_system(g: &[MultiPoly], value: &[FieldElem]) -> Result<Vec<MultiPoly>> {
    if g.len() != value.len() {
        return Err(Error::Invalid(format!(
            "target has {} coordinates for {} equations",
            value.len(),
            g.len()
        )));
    }
    Ok(g.iter()
        .zip(value)
        .map(|(gi, vi)| gi.sub(&MultiPoly::constant(gi.ctx(), gi.vars(), vi.clone())))
        .collect())
}

/// Splits a univariate polynomial into irreducible factors, first dividing
/// out caller-supplied irreducible factors and then peeling small ones.
/// Returns each factor with a flag telling whether it came from `hints`.
pub fn factor_with_hints(ctx: &FieldCtx, p: &[FieldElem], hints: &[UPoly]) -> Result<Vec<(UPoly, bool)>> {
    let mut rest = upoly::monic(ctx, p)?;
    let dp = upoly::derivative(ctx, &rest);
    let common = upoly::gcd(ctx, &rest, &dp);
    rest = upoly::divrem(ctx, &rest, &common)?.0;
    rest = upoly::monic(ctx, &rest)?;
    let mut out = Vec::new();
    for h in hints {
        let h = upoly::monic(ctx, h)?;
        if h.len() < 2 {
            continue;
        }
        let (q, r) = upoly::divrem(ctx, &rest, &h)?;
        if r.is_empty() {
            rest = q;
            out.push((h, true));
        }
    }
    if rest.len() > 1 {
        out.extend(upoly::factor_small(ctx, &rest)?.into_iter().map(|f| (f, false)));
    }
    Ok(out)
}

/// Closed points of `g = value` for systems that become triangular under a
/// lex Gröbner basis with `x₁` smallest. `hints` are known irreducible
/// factors of the eliminant in `x₁` (for instance cyclotomic polynomials).
pub fn fiber_points(g: &[MultiPoly], value: &[FieldElem], hints: &[UPoly]) -> Result<Vec<ClosedPoint>> {
    let h = shifted_system(g, value)?;
    let first = h.first().ok_or_else(|| Error::Invalid("empty system".into()))?;
    let ctx = first.ctx().clone();
    let r = first.nvars();

    let rev_names: Vec<String> = first.vars().iter().rev().cloned().collect();
    let rev_vars = Arc::new(rev_names);
    let map: Vec<usize> = (0..r).map(|i| r - 1 - i).collect();
    let reversed: Vec<MultiPoly> = h.iter().map(|p| p.embed_vars(&rev_vars, &map)).collect();
    let gb = groebner(&reversed, MonomialOrder::Lex)?;
    if gb.is_unit_ideal() {
        return Ok(Vec::new());
    }
    // Back to the original variable numbering.
    let polys: Vec<MultiPoly> = gb
        .polys()
        .iter()
        .map(|p| p.embed_vars(first.vars(), &map))
        .collect();
    let support = |p: &MultiPoly| -> usize {
        p.terms()
            .flat_map(|(e, _)| e.iter().enumerate().filter(|(_, k)| **k > 0).map(|(i, _)| i))
            .max()
            .map_or(0, |m| m + 1)
    };

    let univariate: Vec<&MultiPoly> = polys.iter().filter(|p| support(p) == 1).collect();
    if univariate.len() != 1 {
        return Err(Error::NotTriangular(format!(
            "expected one eliminant in {}, found {}",
            first.vars()[0],
            univariate.len()
        )));
    }
    let elim: UPoly = {
        let u = univariate[0];
        let deg = u.total_degree().unwrap_or(0) as usize;
        let mut c = vec![ctx.zero(); deg + 1];
        for (e, a) in u.terms() {
            c[e[0] as usize] = a.clone();
        }
        c
    };

    let mut points = Vec::new();
    for (factor, hinted) in factor_with_hints(&ctx, &elim, hints)? {
        let residue = if factor.len() == 2 {
            EtaleAlgebra::rational(&ctx, &ctx.neg(&factor[0]))
        } else {
            let alg = make_extension(&ctx, &factor)?;
            match (hinted, alg.irreducibility()) {
                (_, Irreducibility::Reducible) => {
                    return Err(Error::Invalid(format!(
                        "factor {} is reducible",
                        upoly::format(&ctx, &factor, "t")
                    )))
                }
                (true, _) => alg.known_irreducible(),
                (false, _) => alg,
            }
        };
        let k = residue.ctx().clone();
        let mut coords = vec![residue.generator()];
        for var in 1..r {
            let mut acc: Option<UPoly> = None;
            for p in polys.iter().filter(|p| support(p) == var + 1) {
                let mut u: UPoly = Vec::new();
                for (e, c) in p.terms() {
                    let mut t = k.embed(&ctx, c)?;
                    for (x, &ei) in coords.iter().zip(e.iter()) {
                        t = k.mul(&t, &k.pow(x, ei as u64));
                    }
                    let d = e[var] as usize;
                    if u.len() <= d {
                        u.resize(d + 1, k.zero());
                    }
                    u[d] = k.add(&u[d], &t);
                }
                let u = upoly::trim(&k, u);
                if u.is_empty() {
                    continue;
                }
                acc = Some(match acc {
                    None => upoly::monic(&k, &u)?,
                    Some(a) => upoly::gcd(&k, &a, &u),
                });
            }
            match acc {
                Some(lin) if lin.len() == 2 => coords.push(k.neg(&lin[0])),
                Some(lin) if lin.len() == 1 => {
                    return Err(Error::NotTriangular(format!(
                        "no value of {} over a factor of the eliminant",
                        first.vars()[var]
                    )))
                }
                _ => {
                    return Err(Error::NotTriangular(format!(
                        "{} is not determined linearly by the earlier coordinates",
                        first.vars()[var]
                    )))
                }
            }
        }
        let point = ClosedPoint { residue, coords };
        debug_assert!(point.satisfies(g, value).unwrap_or(false));
        points.push(point);
    }
    Ok(points)
}

/// Global degree of `g` over `value`: the Scheja-Storch class of `g - value`.
pub fn global_degree(g: &[MultiPoly], value: &[FieldElem], order: MonomialOrder) -> Result<GWClass> {
    Ok(ss_class(&shifted_system(g, value)?, order)?.class)
}

#[derive(Clone, Debug, Serialize)]
pub struct PointIndex {
    pub point: serde_json::Value,
    pub jacobian: String,
    pub index: String,
}

/// Sum of local indices against the global class.
#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub points: Vec<PointIndex>,
    pub local_sum: String,
    pub global: String,
    pub local_sum_invariants: Option<GWInvariants>,
    pub global_invariants: Option<GWInvariants>,
    pub rank_agrees: bool,
    pub disc_agrees: Option<bool>,
    pub gw_equal: Option<bool>,
    /// `equal`, `invariants-agree`, `mismatch` or `undecided`.
    pub verdict: String,
    #[serde(skip)]
    pub local_sum_class: GWClass,
    #[serde(skip)]
    pub global_class: GWClass,
}

pub fn consistency_report(
    g: &[MultiPoly],
    value: &[FieldElem],
    hints: &[UPoly],
    order: MonomialOrder,
) -> Result<ConsistencyReport> {
    let ctx = g.first().ok_or_else(|| Error::Invalid("empty system".into()))?.ctx().clone();
    let points = fiber_points(g, value, hints)?;
    let global = global_degree(g, value, order)?;
    let mut sum = GWClass::zero(&ctx);
    let mut rows = Vec::new();
    for p in &points {
        let j = jacobian_at(g, p)?;
        let idx = local_index_simple(g, p)?;
        rows.push(PointIndex {
            point: p.to_json(),
            jacobian: p.residue.ctx().format_elem(&j),
            index: idx.to_string(),
        });
        sum = sum.add(&idx)?;
    }
    let si = sum.invariants().ok();
    let gi = global.invariants().ok();
    let disc_agrees = match (&si, &gi) {
        (Some(a), Some(b)) => Some(a.disc == b.disc && a.signature == b.signature),
        _ => None,
    };
    let gw_equal = sum.gw_equal(&global).ok();
    let rank_agrees = sum.rank() == global.rank();
    let verdict = match (gw_equal, disc_agrees) {
        (Some(true), _) => "equal",
        (Some(false), Some(true)) if rank_agrees => "invariants-agree",
        (Some(false), _) => "mismatch",
        (None, _) if !rank_agrees => "mismatch",
        (None, _) => "undecided",
    };
    Ok(ConsistencyReport {
        points: rows,
        local_sum: sum.to_string(),
        global: global.to_string(),
        local_sum_invariants: si,
        global_invariants: gi,
        rank_agrees,
        disc_agrees,
        gw_equal,
        verdict: verdict.into(),
        local_sum_class: sum,
        global_class: global,
    })
}
