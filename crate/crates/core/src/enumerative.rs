//! End-to-end computations: Euler numbers of `O(n)` on the projective line
//! (scheme-level and on the square-root stack chart) and lines meeting
//! `2n - 2` codimension-two planes in `P^n`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::degree::{fiber_points, jacobian_determinant, transfer_value, ClosedPoint, TransferMode};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::form::determinant;
use crate::groebner::{groebner_with_budget, GroebnerBasis, QuotientAlgebra};
use crate::gw::{GWClass, GWInvariants};
use crate::poly::{MonomialOrder, MultiPoly};
use crate::rng::{self, SplitMix64};
use crate::scheja_storch::ss_class_in;
use crate::upoly::{self, UPoly};

/// Largest `n` whose cyclotomic factors of `x^n - 1` are supplied.
pub const BUILTIN_CYCLOTOMIC_MAX: u64 = 12;

/// Contribution of one closed point of a fiber.
#[derive(Clone, Debug, Serialize)]
pub struct PointContribution {
    pub point: serde_json::Value,
    pub jacobian: String,
    pub contribution: String,
}

fn contribution(p: &ClosedPoint, jac: &FieldElem, mode: TransferMode) -> Result<(GWClass, PointContribution)> {
    let c = transfer_value(&p.residue, jac, mode)?;
    let k = p.residue.ctx();
    let jac_text = match k.as_base(jac) {
        Some(b) => p.residue.base().format_elem(&b),
        None => k.format_elem(jac),
    };
    let row = PointContribution {
        point: p.to_json(),
        jacobian: jac_text,
        contribution: c.to_string(),
    };
    Ok((c, row))
}

/// Euler number of `O(n)` with section `sign·x₁ⁿ`.
#[derive(Clone, Debug)]
pub struct ONResult {
    pub n: u64,
    pub sign: i64,
    pub mode: TransferMode,
    pub class: GWClass,
    pub points: Vec<PointContribution>,
}

impl ONResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "sign": self.sign,
            "mode": self.mode,
            "class": self.class.to_string(),
            "class_json": self.class.to_json(),
            "invariants": self.class.invariants().ok(),
            "points": self.points,
        })
    }
}

fn cyclotomic_hints(ctx: &FieldCtx, n: u64, negate: bool) -> Vec<UPoly> {
    if *ctx != FieldCtx::Rationals || n > BUILTIN_CYCLOTOMIC_MAX {
        return Vec::new();
    }
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| {
            let phi = upoly::cyclotomic(ctx, d);
            if negate {
                let flipped: UPoly = phi
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 1 { ctx.neg(c) } else { c.clone() })
                    .collect();
                upoly::monic(ctx, &flipped).expect("nonzero")
            } else {
                phi
            }
        })
        .collect()
}

fn one_var(ctx: &FieldCtx, name: &str) -> (Arc<Vec<String>>, MultiPoly) {
    let vars = MultiPoly::var_list(&[name]);
    let x = MultiPoly::var(ctx, &vars, 0);
    (vars, x)
}

/// `Σ_{xⁿ = 1} Tr⟨sign·n·x^(n-1)⟩` over the rationals.
pub fn euler_o_n(n: u64, sign: i64, mode: TransferMode) -> Result<ONResult> {
    euler_o_n_over(&FieldCtx::rationals(), n, sign, mode)
}

pub fn euler_o_n_over(ctx: &FieldCtx, n: u64, sign: i64, mode: TransferMode) -> Result<ONResult> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Invalid("sign must be +1 or -1".into()));
    }
    let (_, x) = one_var(ctx, "x");
    let g = vec![x.pow(n as u32)];
    let points = fiber_points(&g, &[ctx.one()], &cyclotomic_hints(ctx, n, false))?;
    let jac = jacobian_determinant(&g)?.scale(&ctx.from_int(sign));
    let mut class = GWClass::zero(ctx);
    let mut rows = Vec::new();
    for p in &points {
        let j = jac.eval_in(p.residue.ctx(), &p.coords)?;
        let (c, row) = contribution(p, &j, mode)?;
        class = class.add(&c)?;
        rows.push(row);
    }
    Ok(ONResult {
        n,
        sign,
        mode,
        class,
        points: rows,
    })
}

/// Euler number on the chart `V = {y² = -x^(n-2)}` of the square-root stack.
#[derive(Clone, Debug)]
pub struct StackyResult {
    pub n: u64,
    pub mode: TransferMode,
    /// `det Jac` reduced modulo the chart relation.
    pub reduced_jacobian: String,
    /// Class for the pulled-back section `x₁ⁿ`.
    pub class: GWClass,
    /// Class for the pulled-back section `-x₁ⁿ`.
    pub class_opposite: GWClass,
    pub points: Vec<PointContribution>,
}

impl StackyResult {
    pub fn section_independent(&self) -> bool {
        self.class == self.class_opposite
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "mode": self.mode,
            "relation": format!("y^2 + x^{}", self.n - 2),
            "reduced_jacobian": self.reduced_jacobian,
            "class": self.class.to_string(),
            "class_json": self.class.to_json(),
            "invariants": self.class.invariants().ok(),
            "class_opposite_section": self.class_opposite.to_string(),
            "section_independent": self.section_independent(),
            "points": self.points,
        })
    }
}

/// Odd `n >= 3`. The map `(x, y) ↦ ε(xⁿ, yⁿ)` on the chart is examined over
/// `ε(-1, 1)` for `ε = ±1`; on the chart `y` is the polynomial
/// `(-1)^((n+1)/2) x^((n-2)(n+1)/2)` in `x` along this fiber.
pub fn euler_o_n_stacky(n: u64, mode: TransferMode) -> Result<StackyResult> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Invalid("the stacky computation needs odd n >= 3".into()));
    }
    let ctx = FieldCtx::rationals();
    let vars = MultiPoly::var_list(&["x", "y"]);
    let x = MultiPoly::var(&ctx, &vars, 0);
    let y = MultiPoly::var(&ctx, &vars, 1);
    let relation = y.pow(2).add(&x.pow((n - 2) as u32));

    // Fiber of xⁿ = -1 on the chart.
    let y_sign = if ((n + 1) / 2) % 2 == 0 { 1 } else { -1 };
    let y_exp = (((n - 2) * (n + 1) / 2) % (2 * n)) as u32;
    let param = vec![x.pow(n as u32), y.sub(&x.pow(y_exp).scale(&ctx.from_int(y_sign)))];
    let points = fiber_points(&param, &[ctx.from_int(-1), ctx.zero()], &cyclotomic_hints(&ctx, n, true))?;

    let mut classes = Vec::new();
    let mut rows = Vec::new();
    let mut reduced_text = String::new();
    for eps in [1i64, -1] {
        let e = ctx.from_int(eps);
        let f = vec![x.pow(n as u32).scale(&e), y.pow(n as u32).scale(&e)];
        let target = [ctx.from_int(-eps), ctx.from_int(eps)];
        let reduced = reduce_y_square(&jacobian_determinant(&f)?, n);
        if eps == 1 {
            reduced_text = reduced.to_string();
        }
        let mut class = GWClass::zero(&ctx);
        for p in &points {
            let k = p.residue.ctx();
            let on_chart = k.is_zero(&relation.eval_in(k, &p.coords)?);
            if !on_chart || !p.satisfies(&f, &target)? {
                return Err(Error::Invalid("fiber point off the chart".into()));
            }
            let j = reduced.eval_in(k, &p.coords)?;
            let (c, row) = contribution(p, &j, mode)?;
            class = class.add(&c)?;
            if eps == 1 {
                rows.push(row);
            }
        }
        classes.push(class);
    }
    let class_opposite = classes.pop().expect("two signs");
    let class = classes.pop().expect("two signs");
    Ok(StackyResult {
        n,
        mode,
        reduced_jacobian: reduced_text,
        class,
        class_opposite,
        points: rows,
    })
}

/// Rewrites `y²` as `-x^(n-2)` until `y` appears at most linearly.
fn reduce_y_square(p: &MultiPoly, n: u64) -> MultiPoly {
    let ctx = p.ctx();
    let mut out = MultiPoly::zero(ctx, p.vars());
    for (e, c) in p.terms() {
        let half = e[1] / 2;
        let c = if half % 2 == 1 { ctx.neg(c) } else { c.clone() };
        let exp = vec![e[0] + half * (n as u32 - 2), e[1] % 2];
        out = out.add(&MultiPoly::monomial(ctx, p.vars(), exp, c));
    }
    out
}

/// `2n - 2` codimension-two planes `{αᵢ = βᵢ = 0}` in `Pⁿ`, given by
/// covectors on `e₁..e_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneConfig {
    ctx: FieldCtx,
    n: usize,
    planes: Vec<(Vec<FieldElem>, Vec<FieldElem>)>,
}

#[derive(Serialize, Deserialize)]
struct PlaneJson {
    alpha: Vec<serde_json::Value>,
    beta: Vec<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    n: usize,
    planes: Vec<PlaneJson>,
}

fn independent(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> bool {
    (0..a.len()).any(|i| {
        (i + 1..a.len()).any(|j| !ctx.is_zero(&ctx.sub(&ctx.mul(&a[i], &b[j]), &ctx.mul(&a[j], &b[i]))))
    })
}

impl PlaneConfig {
    pub fn new(ctx: &FieldCtx, n: usize, planes: Vec<(Vec<FieldElem>, Vec<FieldElem>)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("ambient dimension must be at least 2".into()));
        }
        if planes.len() != 2 * n - 2 {
            return Err(Error::Invalid(format!("expected {} planes, got {}", 2 * n - 2, planes.len())));
        }
        for (i, (a, b)) in planes.iter().enumerate() {
            if a.len() != n + 1 || b.len() != n + 1 {
                return Err(Error::Invalid(format!("plane {i}: covectors need {} entries", n + 1)));
            }
            if !independent(ctx, a, b) {
                return Err(Error::Invalid(format!("plane {i}: alpha and beta are dependent")));
            }
        }
        Ok(PlaneConfig {
            ctx: ctx.clone(),
            n,
            planes,
        })
    }

    pub fn from_ints(ctx: &FieldCtx, n: usize, planes: &[(Vec<i64>, Vec<i64>)]) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| ctx.from_int(x)).collect::<Vec<_>>();
        Self::new(ctx, n, planes.iter().map(|(a, b)| (conv(a), conv(b))).collect())
    }

    /// Random configuration: uniform residues over a prime field, integers
    /// in `-3..=3` over the rationals. Dependent pairs are redrawn.
    pub fn random(ctx: &FieldCtx, n: usize, rng: &mut SplitMix64) -> Result<Self> {
        let draw = |rng: &mut SplitMix64| match ctx {
            FieldCtx::Prime(p) => FieldElem::Fp(rng::below(rng, *p)),
            _ => ctx.from_int(rng::in_range(rng, -3, 3)),
        };
        let mut planes = Vec::with_capacity(2 * n - 2);
        while planes.len() < 2 * n - 2 {
            let a: Vec<FieldElem> = (0..=n).map(|_| draw(rng)).collect();
            let b: Vec<FieldElem> = (0..=n).map(|_| draw(rng)).collect();
            if independent(ctx, &a, &b) {
                planes.push((a, b));
            }
        }
        Self::new(ctx, n, planes)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn planes(&self) -> &[(Vec<FieldElem>, Vec<FieldElem>)] {
        &self.planes
    }

    /// Exchanges `α₁` and `β₁`.
    pub fn swap_first_pair(&self) -> Self {
        let mut c = self.clone();
        let (a, b) = c.planes[0].clone();
        c.planes[0] = (b, a);
        c
    }

    pub fn to_json(&self) -> serde_json::Value {
        let enc = |v: &[FieldElem]| v.iter().map(|x| self.ctx.encode_elem(x)).collect();
        serde_json::to_value(ConfigJson {
            n: self.n,
            planes: self
                .planes
                .iter()
                .map(|(a, b)| PlaneJson {
                    alpha: enc(a),
                    beta: enc(b),
                })
                .collect(),
        })
        .expect("configuration serializes")
    }

    pub fn from_json(ctx: &FieldCtx, v: &serde_json::Value) -> Result<Self> {
        let c: ConfigJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let dec = |v: &[serde_json::Value]| v.iter().map(|x| ctx.decode_elem(x)).collect::<Result<Vec<_>>>();
        let planes = c
            .planes
            .iter()
            .map(|p| Ok((dec(&p.alpha)?, dec(&p.beta)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, c.n, planes)
    }
}

/// Chart variable names `a1..a_{n-1}, b1..b_{n-1}`.
pub fn chart_vars(n: usize) -> Arc<Vec<String>> {
    let mut names: Vec<String> = (1..n).map(|i| format!("a{i}")).collect();
    names.extend((1..n).map(|i| format!("b{i}")));
    Arc::new(names)
}

/// `fᵢ = αᵢ(ẽ_n)βᵢ(ẽ_{n+1}) - αᵢ(ẽ_{n+1})βᵢ(ẽ_n)` with
/// `ẽ_n = e_n + Σ aⱼeⱼ` and `ẽ_{n+1} = e_{n+1} + Σ bⱼeⱼ`.
pub fn grassmann_section(planes: &PlaneConfig) -> Vec<MultiPoly> {
    let (ctx, n) = (&planes.ctx, planes.n);
    let vars = chart_vars(n);
    // Covector evaluated on a deformed basis vector, as a linear polynomial.
    let pair = |c: &[FieldElem], last: usize, offset: usize| {
        let mut p = MultiPoly::constant(ctx, &vars, c[last].clone());
        for j in 0..n - 1 {
            p = p.add(&MultiPoly::var(ctx, &vars, offset + j).scale(&c[j]));
        }
        p
    };
    planes
        .planes
        .iter()
        .map(|(a, b)| {
            let a_n = pair(a, n - 1, 0);
            let a_n1 = pair(a, n, n - 1);
            let b_n = pair(b, n - 1, 0);
            let b_n1 = pair(b, n, n - 1);
            a_n.mul(&b_n1).sub(&a_n1.mul(&b_n))
        })
        .collect()
}

/// The local index matrix at `W = Span(e_n, e_{n+1})`: column `i` holds
/// `a_ij b_i(n+1) - a_i(n+1) b_ij` for `j < n` followed by
/// `a_in b_ij - a_ij b_in`.
pub fn lines_index_matrix(planes: &PlaneConfig) -> Vec<Vec<FieldElem>> {
    let (ctx, n) = (&planes.ctx, planes.n);
    let m = 2 * n - 2;
    let mut out = vec![vec![ctx.zero(); m]; m];
    for (i, (a, b)) in planes.planes.iter().enumerate() {
        for j in 0..n - 1 {
            out[j][i] = ctx.sub(&ctx.mul(&a[j], &b[n]), &ctx.mul(&a[n], &b[j]));
            out[n - 1 + j][i] = ctx.sub(&ctx.mul(&a[n - 1], &b[j]), &ctx.mul(&a[j], &b[n - 1]));
        }
    }
    out
}

/// Local index at the chart origin, which must be a zero of the section.
pub fn lines_local_index(planes: &PlaneConfig) -> Result<GWClass> {
    let (ctx, n) = (&planes.ctx, planes.n);
    for (i, (a, b)) in planes.planes.iter().enumerate() {
        let f0 = ctx.sub(&ctx.mul(&a[n - 1], &b[n]), &ctx.mul(&a[n], &b[n - 1]));
        if !ctx.is_zero(&f0) {
            return Err(Error::Invalid(format!(
                "plane {i} does not meet the line Span(e_n, e_(n+1))"
            )));
        }
    }
    let d = determinant(ctx, &lines_index_matrix(planes));
    if ctx.is_zero(&d) {
        return Err(Error::SingularIndex);
    }
    GWClass::from_diagonal(ctx, &[d])
}

/// `(2n - 2)! / (n! (n - 1)!)`.
pub fn catalan(n: usize) -> usize {
    let mut c: u128 = 1;
    let m = (n - 1) as u128;
    for k in 0..m {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c as usize
}

/// Euler class of the lines problem on the standard chart.
#[derive(Clone, Debug)]
pub struct LinesResult {
    pub n: usize,
    pub dim: usize,
    pub catalan: usize,
    pub class: GWClass,
    /// Class after exchanging `α₁` and `β₁`.
    pub class_swapped: GWClass,
    pub groebner_steps: u64,
    pub order: MonomialOrder,
}

#[derive(Serialize)]
struct LinesReport {
    n: usize,
    dim: usize,
    catalan: usize,
    order: MonomialOrder,
    groebner_steps: u64,
    class: String,
    class_json: serde_json::Value,
    invariants: Option<GWInvariants>,
    class_swapped: String,
    invariants_swapped: Option<GWInvariants>,
}

impl LinesResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LinesReport {
            n: self.n,
            dim: self.dim,
            catalan: self.catalan,
            order: self.order,
            groebner_steps: self.groebner_steps,
            class: self.class.to_string(),
            class_json: self.class.to_json(),
            invariants: self.class.invariants().ok(),
            class_swapped: self.class_swapped.to_string(),
            invariants_swapped: self.class_swapped.invariants().ok(),
        })
        .expect("report serializes")
    }
}

/// Lines-problem quotient algebra on the chart.
pub fn lines_algebra(planes: &PlaneConfig, order: MonomialOrder, budget: u64) -> Result<(Vec<MultiPoly>, QuotientAlgebra)> {
    let g = grassmann_section(planes);
    let gb: GroebnerBasis = groebner_with_budget(&g, order, budget)?;
    let alg = QuotientAlgebra::from_groebner(g.clone(), gb)?;
    Ok((g, alg))
}

pub fn euler_lines(planes: &PlaneConfig, order: MonomialOrder) -> Result<LinesResult> {
    euler_lines_with_budget(planes, order, crate::groebner::budget_from_env())
}

pub fn euler_lines_with_budget(planes: &PlaneConfig, order: MonomialOrder, budget: u64) -> Result<LinesResult> {
    let (g, alg) = lines_algebra(planes, order, budget)?;
    let expected = catalan(planes.n);
    if alg.dim() != expected {
        return Err(Error::ChartDegenerate {
            dim: alg.dim(),
            expected,
        });
    }
    let class = ss_class_in(&alg, &g)?.class;
    // Swapping α₁ and β₁ negates f₁ and leaves the ideal unchanged.
    let mut swapped = g.clone();
    swapped[0] = swapped[0].neg();
    let class_swapped = ss_class_in(&alg, &swapped)?.class;
    Ok(LinesResult {
        n: planes.n,
        dim: alg.dim(),
        catalan: expected,
        class,
        class_swapped,
        groebner_steps: alg.groebner().steps(),
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn o_n_small_cases() {
        let r = euler_o_n(2, 1, TransferMode::Scharlau).unwrap();
        assert_eq!(r.class.to_string(), "H");
        let r = euler_o_n(3, 1, TransferMode::Scharlau).unwrap();
        assert_eq!(r.class.invariants().unwrap().triple(), Some((3, 1, BigInt::from(-1))));
        let r = euler_o_n(3, -1, TransferMode::Scharlau).unwrap();
        assert_eq!(r.class.invariants().unwrap().triple(), Some((3, -1, BigInt::from(1))));
        assert_eq!(r.points.len(), 2);
    }

    #[test]
    fn o_n_beyond_builtin_factors() {
        assert!(matches!(
            euler_o_n(13, 1, TransferMode::Scharlau),
            Err(Error::FactorDegreeTooHigh(_))
        ));
    }

    #[test]
    fn stacky_three() {
        let r = euler_o_n_stacky(3, TransferMode::Naive).unwrap();
        assert_eq!(r.class.to_string(), "3<1>");
        assert!(r.section_independent());
        assert_eq!(r.reduced_jacobian, "-9*x^3");
        let s = euler_o_n_stacky(3, TransferMode::Scharlau).unwrap();
        assert_eq!(s.class.invariants().unwrap().triple(), Some((3, 1, BigInt::from(-3))));
        assert!(s.section_independent());
    }

    #[test]
    fn section_examples() {
        let q = FieldCtx::rationals();
        let mut planes = vec![(vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0])];
        for i in 0..5 {
            planes.push((vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1 + i]));
        }
        let c = PlaneConfig::from_ints(&q, 4, &planes).unwrap();
        let f = grassmann_section(&c);
        let expect = crate::poly::parse_system_with_vars(&q, "a1*b2 - a2*b1", &chart_vars(4)).unwrap();
        assert_eq!(f[0], expect[0]);
        assert_eq!(f[1].to_string(), "1");
    }

    #[test]
    fn catalan_numbers() {
        assert_eq!(catalan(2), 1);
        assert_eq!(catalan(3), 2);
        assert_eq!(catalan(4), 5);
        assert_eq!(catalan(5), 14);
    }
}
