//! Symmetric bilinear forms given by Gram matrices, congruence
//! diagonalization, trace forms and the Scharlau transfer.

use crate::error::{Error, Result};
use crate::field::{EtaleAlgebra, FieldCtx, FieldElem};
use crate::gw::{gw_simplify, GWClass, SquareClass};

pub type Matrix = Vec<Vec<FieldElem>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    ctx: FieldCtx,
    matrix: Matrix,
}

/// Result of congruence diagonalization: `Pᵀ G P = diag(entries)`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub entries: Vec<FieldElem>,
    pub p: Matrix,
}

impl GramForm {
    pub fn new(ctx: &FieldCtx, matrix: Matrix) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("Gram matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(GramForm { ctx: ctx.clone(), matrix })
    }

    pub fn from_ints(ctx: &FieldCtx, rows: &[&[i64]]) -> Result<Self> {
        let m = rows
            .iter()
            .map(|r| r.iter().map(|&x| ctx.from_int(x)).collect())
            .collect();
        Self::new(ctx, m)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn det(&self) -> FieldElem {
        determinant(&self.ctx, &self.matrix)
    }

    /// Symmetric Gaussian elimination. Pivots on the first nonzero diagonal
    /// entry; when the remaining diagonal vanishes, `v_i ← v_i + v_j` for the
    /// first nonzero off-diagonal pair creates one.
    pub fn diagonalize_with_basis(&self) -> Result<Diagonalization> {
        let ctx = &self.ctx;
        let n = self.dim();
        let mut g = self.matrix.clone();
        let mut p: Matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { ctx.one() } else { ctx.zero() }).collect())
            .collect();
        for k in 0..n {
            let pivot = match (k..n).find(|&i| !ctx.is_zero(&g[i][i])) {
                Some(i) => i,
                None => {
                    let (i, j) = (k..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .find(|&(i, j)| !ctx.is_zero(&g[i][j]))
                        .ok_or(Error::Degenerate)?;
                    add_basis_vector(ctx, &mut g, &mut p, i, j, &ctx.one());
                    i
                }
            };
            if pivot != k {
                g.swap(pivot, k);
                for row in g.iter_mut() {
                    row.swap(pivot, k);
                }
                for row in p.iter_mut() {
                    row.swap(pivot, k);
                }
            }
            let d = ctx.inv(&g[k][k])?;
            for j in k + 1..n {
                if ctx.is_zero(&g[k][j]) {
                    continue;
                }
                let c = ctx.neg(&ctx.mul(&g[k][j], &d));
                add_basis_vector(ctx, &mut g, &mut p, j, k, &c);
            }
        }
        let entries: Vec<FieldElem> = (0..n).map(|i| g[i][i].clone()).collect();
        #[cfg(debug_assertions)]
        self.check_congruence(&entries, &p);
        Ok(Diagonalization { entries, p })
    }

    #[cfg(debug_assertions)]
    fn check_congruence(&self, entries: &[FieldElem], p: &Matrix) {
        let ctx = &self.ctx;
        let prod = entries.iter().fold(ctx.one(), |a, b| ctx.mul(&a, b));
        let dp = determinant(ctx, p);
        let expected = ctx.mul(&ctx.mul(&dp, &dp), &self.det());
        assert_eq!(prod, expected, "diagonal product must equal det(P)^2 det(G)");
    }

    /// Diagonal entries of a congruent diagonal form.
    pub fn diagonalize(&self) -> Result<Vec<SquareClass>> {
        self.diagonalize_with_basis()?
            .entries
            .iter()
            .map(|a| SquareClass::new(&self.ctx, a))
            .collect()
    }

    pub fn class(&self) -> Result<GWClass> {
        gw_simplify(&self.ctx, self.diagonalize()?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.matrix
                .iter()
                .map(|r| serde_json::Value::Array(r.iter().map(|x| self.ctx.encode_elem(x)).collect()))
                .collect(),
        )
    }

    pub fn from_json(ctx: &FieldCtx, v: &serde_json::Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("Gram matrix must be an array of rows".into()))?;
        let m = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("Gram row must be an array".into()))?
                    .iter()
                    .map(|x| ctx.decode_elem(x))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Matrix>>()?;
        Self::new(ctx, m)
    }
}

/// Basis change `v_i ← v_i + c·v_j` applied to both the Gram matrix and `P`.
fn add_basis_vector(ctx: &FieldCtx, g: &mut Matrix, p: &mut Matrix, i: usize, j: usize, c: &FieldElem) {
    let n = g.len();
    for r in 0..n {
        let t = ctx.mul(c, &g[r][j]);
        g[r][i] = ctx.add(&g[r][i], &t);
    }
    for col in 0..n {
        let t = ctx.mul(c, &g[j][col]);
        g[i][col] = ctx.add(&g[i][col], &t);
    }
    for row in p.iter_mut() {
        let t = ctx.mul(c, &row[j]);
        row[i] = ctx.add(&row[i], &t);
    }
}

/// Determinant by Gaussian elimination over a field.
pub fn determinant(ctx: &FieldCtx, m: &Matrix) -> FieldElem {
    let n = m.len();
    let mut a = m.clone();
    let mut det = ctx.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| ctx.inv(&a[i][k]).is_ok()) else {
            return ctx.zero();
        };
        if piv != k {
            a.swap(piv, k);
            det = ctx.neg(&det);
        }
        det = ctx.mul(&det, &a[k][k]);
        let inv = ctx.inv(&a[k][k]).expect("pivot chosen invertible");
        for i in k + 1..n {
            if ctx.is_zero(&a[i][k]) {
                continue;
            }
            let f = ctx.mul(&a[i][k], &inv);
            for j in k..n {
                let t = ctx.mul(&f, &a[k][j]);
                a[i][j] = ctx.sub(&a[i][j], &t);
            }
        }
    }
    det
}

pub fn mat_mul(ctx: &FieldCtx, a: &Matrix, b: &Matrix) -> Matrix {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(ctx.zero(), |acc, (x, brow)| ctx.add(&acc, &ctx.mul(x, &brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Gram matrix `[Tr(a·eᵢ·eⱼ)]` of the trace form on the power basis of `alg`.
pub fn trace_form(alg: &EtaleAlgebra, a: &FieldElem) -> Result<GramForm> {
    let k = alg.ctx();
    if k.is_zero(a) {
        return Err(Error::Degenerate);
    }
    let d = alg.degree();
    let t = alg.generator();
    // Tr(a·t^(i+j)) depends only on i + j.
    let mut power = a.clone();
    let mut traces = Vec::with_capacity(2 * d - 1);
    for _ in 0..2 * d - 1 {
        traces.push(alg.trace_of(&power));
        power = k.mul(&power, &t);
    }
    let m = (0..d).map(|i| (0..d).map(|j| traces[i + j].clone()).collect()).collect();
    GramForm::new(alg.base(), m)
}

/// Pushes a class over `alg` down to its base: each `<a>` becomes the trace
/// form of `a`, each `H` becomes `[A:k]·H`.
pub fn scharlau_transfer(alg: &EtaleAlgebra, c: &GWClass) -> Result<GWClass> {
    if c.ctx() != alg.ctx() {
        return Err(Error::FieldMismatch(format!(
            "class over {} transferred along {}",
            c.ctx(),
            alg.ctx()
        )));
    }
    let base = alg.base();
    let mut out = GWClass::hyperbolic(base, c.hyperbolic_count() * alg.degree() as u64);
    for t in c.residual() {
        out = out.add(&trace_form(alg, t.rep())?.class()?)?;
    }
    Ok(out)
}
