//! The Scheja-Storch (EKL) bilinear form of a finite complete intersection.
//!
//! For `A = k[x₁..x_r]/(g₁..g_r)` the divided differences `a_ij` satisfy
//! `Σᵢ a_ij (Xᵢ - Yᵢ) = g_j(X) - g_j(Y)`. The image `Δ` of `det(a_ij)` in
//! `A ⊗ A` determines a functional `η` by `Σ η(b_m) c_m = 1` where
//! `Δ = Σ b_m ⊗ c_m`, and `β(u, v) = η(uv)` is the bilinear form.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::form::{GramForm, Matrix};
use crate::groebner::QuotientAlgebra;
use crate::gw::{GWClass, GWInvariants};
use crate::poly::{Exp, MonomialOrder, MultiPoly};

/// Divided differences in the variables `X₁..X_r, Y₁..Y_r`.
#[derive(Clone, Debug)]
pub struct DividedDifferenceMatrix {
    /// `entries[i][j]` is `a_ij`.
    pub entries: Vec<Vec<MultiPoly>>,
    pub substitution: Vec<usize>,
}

impl DividedDifferenceMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Checks `Σᵢ a_ij (Xᵢ - Yᵢ) = g_j(X) - g_j(Y)` for every column.
    pub fn verify(&self, g: &[MultiPoly]) -> bool {
        let r = self.size();
        let Some(first) = self.entries.first().and_then(|row| row.first()) else {
            return g.is_empty();
        };
        let (ctx, vars) = (first.ctx(), first.vars());
        let xs: Vec<MultiPoly> = (0..r).map(|i| MultiPoly::var(ctx, vars, i)).collect();
        let ys: Vec<MultiPoly> = (0..r).map(|i| MultiPoly::var(ctx, vars, r + i)).collect();
        g.iter().enumerate().all(|(j, gj)| {
            let lhs = (0..r).fold(MultiPoly::zero(ctx, vars), |acc, i| {
                acc.add(&self.entries[i][j].mul(&xs[i].sub(&ys[i])))
            });
            lhs == gj.compose(&xs).sub(&gj.compose(&ys))
        })
    }
}

fn doubled_vars(vars: &[String]) -> Arc<Vec<String>> {
    let mut out: Vec<String> = vars.iter().map(|v| format!("X_{v}")).collect();
    out.extend(vars.iter().map(|v| format!("Y_{v}")));
    Arc::new(out)
}

/// Divided differences by sequential substitution in the natural variable order.
pub fn divided_differences(g: &[MultiPoly]) -> Result<DividedDifferenceMatrix> {
    let r = g.first().map_or(0, MultiPoly::nvars);
    divided_differences_in_order(g, &(0..r).collect::<Vec<_>>())
}

/// Divided differences substituting `Xᵥ → Yᵥ` in the order `substitution`:
/// at step `s` the variables `substitution[..s]` are already `Y`.
pub fn divided_differences_in_order(g: &[MultiPoly], substitution: &[usize]) -> Result<DividedDifferenceMatrix> {
    let r = g.len();
    let first = g.first().ok_or_else(|| Error::Invalid("empty system".into()))?;
    if first.nvars() != r || g.iter().any(|p| p.nvars() != r || p.vars() != first.vars()) {
        return Err(Error::Invalid(format!(
            "a square system is required: {} equations in {} variables",
            r,
            first.nvars()
        )));
    }
    let mut seen = vec![false; r];
    if substitution.len() != r || substitution.iter().any(|&v| v >= r || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::Invalid("substitution order must be a permutation".into()));
    }
    let ctx = first.ctx();
    let vars = doubled_vars(first.vars());
    let mut entries = vec![vec![MultiPoly::zero(ctx, &vars); r]; r];
    for (j, gj) in g.iter().enumerate() {
        for (e, c) in gj.terms() {
            for (s, &v) in substitution.iter().enumerate() {
                if e[v] == 0 {
                    continue;
                }
                let mut base = vec![0u32; 2 * r];
                for (w, &k) in e.iter().enumerate() {
                    if w == v {
                        continue;
                    }
                    let already_y = substitution[..s].contains(&w);
                    base[if already_y { r + w } else { w }] = k;
                }
                // (X^k - Y^k) / (X - Y) = Σ_{a+b=k-1} X^a Y^b
                let k = e[v];
                for a in 0..k {
                    let mut m = base.clone();
                    m[v] += a;
                    m[r + v] += k - 1 - a;
                    entries[v][j].add_term(m, c.clone());
                }
            }
        }
    }
    let dd = DividedDifferenceMatrix {
        entries,
        substitution: substitution.to_vec(),
    };
    debug_assert!(dd.verify(g), "divided differences must telescope exactly");
    Ok(dd)
}

/// Minimal commutative ring interface for division-free determinants.
pub trait CommRing {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Determinant by Laplace expansion along rows, memoizing minors on the
/// set of remaining columns.
pub fn determinant<R: CommRing>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    assert!(n < 32, "determinant size");
    let mut memo: HashMap<u32, R::Elem> = HashMap::new();
    minor(ring, m, 0, (1u32 << n) - 1, &mut memo)
}

fn minor<R: CommRing>(ring: &R, m: &[Vec<R::Elem>], row: usize, cols: u32, memo: &mut HashMap<u32, R::Elem>) -> R::Elem {
    if cols == 0 {
        unreachable!("minor over no columns");
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let n = m.len();
    let mut acc = ring.zero();
    let mut sign_pos = true;
    for c in 0..n {
        if cols & (1 << c) == 0 {
            continue;
        }
        let a = &m[row][c];
        if !ring.is_zero(a) {
            let term = if row + 1 == n {
                a.clone()
            } else {
                let sub = minor(ring, m, row + 1, cols & !(1 << c), memo);
                ring.mul(a, &sub)
            };
            acc = if sign_pos { ring.add(&acc, &term) } else { ring.add(&acc, &ring.neg(&term)) };
        }
        sign_pos = !sign_pos;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// `A ⊗_k A` with elements stored as `d×d` coefficient arrays on `eᵢ ⊗ eⱼ`.
struct TensorSquare<'a> {
    alg: &'a QuotientAlgebra,
    /// Sparse coordinates of `eᵢ·eⱼ`.
    products: Vec<Vec<Vec<(usize, FieldElem)>>>,
}

impl<'a> TensorSquare<'a> {
    fn new(alg: &'a QuotientAlgebra) -> Self {
        let ctx = alg.ctx();
        let basis = alg.basis();
        let products = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let e: Exp = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        sparse(ctx, &alg.monomial_coords(&e))
                    })
                    .collect()
            })
            .collect();
        TensorSquare { alg, products }
    }

    fn d(&self) -> usize {
        self.alg.dim()
    }

    /// Image of a polynomial in `X, Y` under `X ↦ x ⊗ 1`, `Y ↦ 1 ⊗ x`.
    fn image(&self, p: &MultiPoly) -> Vec<FieldElem> {
        let ctx = self.alg.ctx();
        let (d, r) = (self.d(), p.nvars() / 2);
        let mut out = vec![ctx.zero(); d * d];
        for (e, c) in p.terms() {
            let u = sparse(ctx, &self.alg.monomial_coords(&e[..r]));
            let v = sparse(ctx, &self.alg.monomial_coords(&e[r..]));
            for (i, x) in &u {
                let cx = ctx.mul(c, x);
                for (j, y) in &v {
                    let t = &mut out[i * d + j];
                    *t = ctx.add(t, &ctx.mul(&cx, y));
                }
            }
        }
        out
    }
}

fn sparse(ctx: &FieldCtx, v: &[FieldElem]) -> Vec<(usize, FieldElem)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !ctx.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

impl CommRing for TensorSquare<'_> {
    type Elem = Vec<FieldElem>;

    fn zero(&self) -> Vec<FieldElem> {
        vec![self.alg.ctx().zero(); self.d() * self.d()]
    }

    fn add(&self, a: &Vec<FieldElem>, b: &Vec<FieldElem>) -> Vec<FieldElem> {
        let ctx = self.alg.ctx();
        a.iter().zip(b).map(|(x, y)| ctx.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<FieldElem>) -> Vec<FieldElem> {
        let ctx = self.alg.ctx();
        a.iter().map(|x| ctx.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<FieldElem>, b: &Vec<FieldElem>) -> Vec<FieldElem> {
        let ctx = self.alg.ctx();
        let d = self.d();
        let sa = sparse(ctx, a);
        let sb = sparse(ctx, b);
        let mut out = self.zero();
        for (ia, x) in &sa {
            let (m1, n1) = (ia / d, ia % d);
            for (ib, y) in &sb {
                let (m2, n2) = (ib / d, ib % d);
                let xy = ctx.mul(x, y);
                for (u, cu) in &self.products[m1][m2] {
                    let xyu = ctx.mul(&xy, cu);
                    for (v, cv) in &self.products[n1][n2] {
                        let t = &mut out[u * d + v];
                        *t = ctx.add(t, &ctx.mul(&xyu, cv));
                    }
                }
            }
        }
        out
    }

    fn is_zero(&self, a: &Vec<FieldElem>) -> bool {
        let ctx = self.alg.ctx();
        a.iter().all(|x| ctx.is_zero(x))
    }
}

/// Solves `M x = b` exactly; `None` if `M` is singular.
pub fn solve(ctx: &FieldCtx, m: &Matrix, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let n = m.len();
    let mut a: Vec<Vec<FieldElem>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&i| ctx.inv(&a[i][k]).is_ok())?;
        a.swap(piv, k);
        let inv = ctx.inv(&a[k][k]).ok()?;
        for x in a[k].iter_mut() {
            *x = ctx.mul(x, &inv);
        }
        for i in 0..n {
            if i == k || ctx.is_zero(&a[i][k]) {
                continue;
            }
            let f = a[i][k].clone();
            for j in k..=n {
                let t = ctx.mul(&f, &a[k][j]);
                a[i][j] = ctx.sub(&a[i][j], &t);
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Output of the Scheja-Storch computation.
#[derive(Clone, Debug)]
pub struct SsResult {
    pub dim: usize,
    /// `η` on the staircase basis.
    pub eta: Vec<FieldElem>,
    pub gram: GramForm,
    pub class: GWClass,
    pub basis: Vec<String>,
    pub order: MonomialOrder,
}

#[derive(Serialize)]
struct SsReport {
    dim: usize,
    basis: Vec<String>,
    order: MonomialOrder,
    eta: Vec<serde_json::Value>,
    gram: serde_json::Value,
    class: String,
    class_json: serde_json::Value,
    invariants: Option<GWInvariants>,
}

impl SsResult {
    pub fn to_json(&self) -> serde_json::Value {
        let ctx = self.gram.ctx();
        serde_json::to_value(SsReport {
            dim: self.dim,
            basis: self.basis.clone(),
            order: self.order,
            eta: self.eta.iter().map(|x| ctx.encode_elem(x)).collect(),
            gram: self.gram.to_json(),
            class: self.class.to_string(),
            class_json: self.class.to_json(),
            invariants: self.class.invariants().ok(),
        })
        .expect("report serializes")
    }
}

/// Scheja-Storch class of a square system with isolated zeros.
pub fn ss_class(g: &[MultiPoly], order: MonomialOrder) -> Result<SsResult> {
    let alg = QuotientAlgebra::new(g, order)?;
    ss_class_in(&alg, g)
}

/// Scheja-Storch class computed over an already built quotient algebra.
/// `g` must generate the same ideal as the algebra's generators.
pub fn ss_class_in(alg: &QuotientAlgebra, g: &[MultiPoly]) -> Result<SsResult> {
    let r = g.len();
    ss_class_in_order(alg, g, &(0..r).collect::<Vec<_>>())
}

pub fn ss_class_in_order(alg: &QuotientAlgebra, g: &[MultiPoly], substitution: &[usize]) -> Result<SsResult> {
    let ctx = alg.ctx();
    let d = alg.dim();
    if d == 0 {
        return Ok(SsResult {
            dim: 0,
            eta: Vec::new(),
            gram: GramForm::new(ctx, Vec::new())?,
            class: GWClass::zero(ctx),
            basis: Vec::new(),
            order: alg.order(),
        });
    }
    let dd = divided_differences_in_order(g, substitution)?;
    let ring = TensorSquare::new(alg);
    let images: Vec<Vec<Vec<FieldElem>>> = dd
        .entries
        .iter()
        .map(|row| row.iter().map(|a| ring.image(a)).collect())
        .collect();
    let delta = determinant(&ring, &images);

    // Σ_m η(e_m) Δ[m][m'] = [e_m' = 1]
    let one = alg.one_index().expect("nonzero algebra contains 1");
    let system: Matrix = (0..d)
        .map(|mp| (0..d).map(|m| delta[m * d + mp].clone()).collect())
        .collect();
    let rhs: Vec<FieldElem> = (0..d).map(|i| if i == one { ctx.one() } else { ctx.zero() }).collect();
    let eta = solve(ctx, &system, &rhs).ok_or(Error::Degenerate)?;

    let gram: Matrix = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    ring.products[i][j]
                        .iter()
                        .fold(ctx.zero(), |acc, (k, c)| ctx.add(&acc, &ctx.mul(c, &eta[*k])))
                })
                .collect()
        })
        .collect();
    let gram = GramForm::new(ctx, gram)?;
    let class = gram.class()?;
    Ok(SsResult {
        dim: d,
        eta,
        gram,
        class,
        basis: (0..d).map(|i| alg.basis_poly(i).to_string()).collect(),
        order: alg.order(),
    })
}
