//! Buchberger's algorithm with the Gebauer-Möller pair criteria, and finite
//! quotient algebras `k[x]/I` with their staircase bases.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::form::Matrix;
use crate::poly::{Exp, MonomialOrder, MultiPoly};

/// Environment variable holding the S-pair budget.
pub const BUDGET_ENV: &str = "GW_EULER_BUDGET";
pub const DEFAULT_BUDGET: u64 = 200_000;

/// Budget from `GW_EULER_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

type Terms = Vec<(Exp, FieldElem)>;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn exp_sub(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `p - c·x^m·g`, both inputs sorted by decreasing monomial.
fn sub_scaled(ctx: &FieldCtx, order: MonomialOrder, p: &[(Exp, FieldElem)], g: &[(Exp, FieldElem)], m: &[u32], c: &FieldElem) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let shifted = g.iter().map(|(e, a)| {
        let e: Exp = e.iter().zip(m).map(|(x, y)| x + y).collect();
        (e, ctx.neg(&ctx.mul(a, c)))
    });
    let mut pi = p.iter().peekable();
    let mut gi = shifted.peekable();
    loop {
        let ord = match (pi.peek(), gi.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
        };
        match ord {
            Ordering::Greater => out.push(pi.next().unwrap().clone()),
            Ordering::Less => out.push(gi.next().unwrap()),
            Ordering::Equal => {
                let (e, a) = pi.next().unwrap();
                let (_, b) = gi.next().unwrap();
                let s = ctx.add(a, &b);
                if !ctx.is_zero(&s) {
                    out.push((e.clone(), s));
                }
            }
        }
    }
    out
}

fn make_monic(ctx: &FieldCtx, p: &mut Terms) {
    if let Some((_, lc)) = p.first() {
        if !ctx.is_one(lc) {
            let inv = ctx.inv(lc).expect("leading coefficient of a field polynomial");
            for (_, c) in p.iter_mut() {
                *c = ctx.mul(c, &inv);
            }
        }
    }
}

/// Full reduction of `f` by polynomials with monic leading terms.
fn reduce(ctx: &FieldCtx, order: MonomialOrder, f: Terms, basis: &[&Terms]) -> Terms {
    let mut p = f;
    let mut rem: Terms = Vec::new();
    while !p.is_empty() {
        let lt = &p[0].0;
        match basis.iter().find(|g| divides(&g[0].0, lt)) {
            Some(g) => {
                let m = exp_sub(lt, &g[0].0);
                let c = p[0].1.clone();
                p = sub_scaled(ctx, order, &p, g, &m, &c);
            }
            None => rem.push(p.remove(0)),
        }
    }
    rem
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by increasing
/// leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ctx: FieldCtx,
    vars: Arc<Vec<String>>,
    order: MonomialOrder,
    polys: Vec<Terms>,
    steps: u64,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
}

/// Reduced Gröbner basis of the ideal generated by `gens`, with the step
/// budget read from the environment.
pub fn groebner(gens: &[MultiPoly], order: MonomialOrder) -> Result<GroebnerBasis> {
    groebner_with_budget(gens, order, budget_from_env())
}

/// `budget` bounds the number of S-pair reductions.
pub fn groebner_with_budget(gens: &[MultiPoly], order: MonomialOrder, budget: u64) -> Result<GroebnerBasis> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Invalid("empty generator list".into()))?;
    let ctx = first.ctx().clone();
    let vars = first.vars().clone();
    if gens.iter().any(|g| *g.ctx() != ctx || *g.vars() != vars) {
        return Err(Error::FieldMismatch("generators over different rings".into()));
    }

    let mut arena: Vec<Terms> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut steps = 0u64;

    let insert = |h: Terms, arena: &mut Vec<Terms>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>| {
        let hi = arena.len();
        let lh = h[0].0.clone();
        arena.push(h);
        // Chain criterion among the new pairs.
        let mut cand: Vec<(usize, Exp)> = active.iter().map(|&g| (g, lcm(&lh, &arena[g][0].0))).collect();
        cand.sort_by(|a, b| order.cmp(&a.1, &b.1).then(a.0.cmp(&b.0)));
        let mut kept: Vec<(usize, Exp)> = Vec::new();
        for (k, (g, l)) in cand.iter().enumerate() {
            let lg = &arena[*g][0].0;
            let redundant = !coprime(&lh, lg)
                && cand
                    .iter()
                    .enumerate()
                    .any(|(k2, (_, l2))| k2 != k && divides(l2, l) && (l2 != l || k2 < k));
            if !redundant {
                kept.push((*g, l.clone()));
            }
        }
        // Product criterion.
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !coprime(&lh, &arena[*g][0].0))
            .map(|(g, l)| Pair { i: g, j: hi, lcm: l })
            .collect();
        // Drop old pairs made redundant by the new leading term.
        pairs.retain(|p| {
            !(divides(&lh, &p.lcm)
                && lcm(&arena[p.i][0].0, &lh) != p.lcm
                && lcm(&arena[p.j][0].0, &lh) != p.lcm)
        });
        pairs.extend(new_pairs);
        active.retain(|&g| !divides(&lh, &arena[g][0].0));
        active.push(hi);
    };

    let mut inputs: Vec<Terms> = gens
        .iter()
        .map(|g| g.sorted_terms(order))
        .filter(|t| !t.is_empty())
        .collect();
    inputs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for f in inputs {
        let basis: Vec<&Terms> = active.iter().map(|&i| &arena[i]).collect();
        let mut h = reduce(&ctx, order, f, &basis);
        if h.is_empty() {
            continue;
        }
        make_monic(&ctx, &mut h);
        insert(h, &mut arena, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then((pairs[a].j, pairs[a].i).cmp(&(pairs[b].j, pairs[b].i)))
            })
            .unwrap();
        let Pair { i, j, lcm: l } = pairs.swap_remove(k);
        steps += 1;
        if steps > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let (fi, fj) = (&arena[i], &arena[j]);
        let mi = exp_sub(&l, &fi[0].0);
        let mj = exp_sub(&l, &fj[0].0);
        let shifted: Terms = fi
            .iter()
            .map(|(e, c)| (e.iter().zip(&mi).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        let s = sub_scaled(&ctx, order, &shifted, fj, &mj, &ctx.one());
        let basis: Vec<&Terms> = active.iter().map(|&i| &arena[i]).collect();
        let mut h = reduce(&ctx, order, s, &basis);
        if h.is_empty() {
            continue;
        }
        make_monic(&ctx, &mut h);
        insert(h, &mut arena, &mut active, &mut pairs);
    }

    // Inter-reduce the minimal basis.
    let mut minimal: Vec<Terms> = active.iter().map(|&i| arena[i].clone()).collect();
    minimal.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Terms> = minimal
            .iter()
            .enumerate()
            .filter(|(k2, _)| *k2 != k)
            .map(|(_, t)| t)
            .collect();
        let head = minimal[k][0].clone();
        let tail = reduce(&ctx, order, minimal[k][1..].to_vec(), &others);
        let mut g = vec![head];
        g.extend(tail);
        reduced.push(g);
    }
    Ok(GroebnerBasis {
        ctx,
        vars,
        order,
        polys: reduced,
        steps,
    })
}

impl GroebnerBasis {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Number of S-pairs reduced while computing the basis.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        self.polys
            .iter()
            .map(|t| MultiPoly::from_terms(&self.ctx, &self.vars, t.iter().cloned()))
            .collect()
    }

    pub fn leading_exps(&self) -> Vec<Exp> {
        self.polys.iter().map(|t| t[0].0.clone()).collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|t| t[0].0.iter().all(|&k| k == 0))
    }

    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        let basis: Vec<&Terms> = self.polys.iter().collect();
        let r = reduce(&self.ctx, self.order, f.sorted_terms(self.order), &basis);
        MultiPoly::from_terms(&self.ctx, &self.vars, r)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// `k[x₁..x_r]/I` for a zero-dimensional ideal `I`, with the staircase basis
/// sorted by total degree and then lexicographically from the top.
#[derive(Debug)]
pub struct QuotientAlgebra {
    generators: Vec<MultiPoly>,
    gb: GroebnerBasis,
    basis: Vec<Exp>,
    index: HashMap<Exp, usize>,
    var_mats: Vec<Matrix>,
    cache: Mutex<HashMap<Exp, Arc<Vec<FieldElem>>>>,
}

impl Clone for QuotientAlgebra {
    fn clone(&self) -> Self {
        QuotientAlgebra {
            generators: self.generators.clone(),
            gb: self.gb.clone(),
            basis: self.basis.clone(),
            index: self.index.clone(),
            var_mats: self.var_mats.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl QuotientAlgebra {
    pub fn new(gens: &[MultiPoly], order: MonomialOrder) -> Result<Self> {
        Self::from_groebner(gens.to_vec(), groebner(gens, order)?)
    }

    pub fn with_budget(gens: &[MultiPoly], order: MonomialOrder, budget: u64) -> Result<Self> {
        Self::from_groebner(gens.to_vec(), groebner_with_budget(gens, order, budget)?)
    }

    pub fn from_groebner(generators: Vec<MultiPoly>, gb: GroebnerBasis) -> Result<Self> {
        let basis = staircase(&gb)?;
        let index: HashMap<Exp, usize> = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut q = QuotientAlgebra {
            generators,
            gb,
            basis,
            index,
            var_mats: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        };
        let n = q.gb.vars.len();
        q.var_mats = (0..n)
            .map(|v| {
                let cols: Vec<Vec<FieldElem>> = q
                    .basis
                    .iter()
                    .map(|b| {
                        let mut e = b.clone();
                        e[v] += 1;
                        q.reduce_monomial(&e)
                    })
                    .collect();
                crate::form::transpose(&cols)
            })
            .collect();
        Ok(q)
    }

    fn reduce_monomial(&self, e: &[u32]) -> Vec<FieldElem> {
        let ctx = &self.gb.ctx;
        let mono = MultiPoly::monomial(ctx, &self.gb.vars, e.to_vec(), ctx.one());
        self.coords_of_normal_form(&self.gb.normal_form(&mono))
    }

    fn coords_of_normal_form(&self, nf: &MultiPoly) -> Vec<FieldElem> {
        let ctx = &self.gb.ctx;
        let mut v = vec![ctx.zero(); self.basis.len()];
        for (e, c) in nf.terms() {
            v[self.index[e]] = c.clone();
        }
        v
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.gb.ctx
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.gb.vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn order(&self) -> MonomialOrder {
        self.gb.order
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Exp] {
        &self.basis
    }

    /// Index of the basis monomial `1`, if the algebra is nonzero.
    pub fn one_index(&self) -> Option<usize> {
        self.index.get(&vec![0; self.gb.vars.len()]).copied()
    }

    pub fn basis_poly(&self, i: usize) -> MultiPoly {
        let ctx = self.ctx();
        MultiPoly::monomial(ctx, self.vars(), self.basis[i].clone(), ctx.one())
    }

    /// Matrix of multiplication by the `v`-th variable.
    pub fn var_matrix(&self, v: usize) -> &Matrix {
        &self.var_mats[v]
    }

    /// Coordinates of the normal form of a monomial on the staircase basis.
    pub fn monomial_coords(&self, e: &[u32]) -> Arc<Vec<FieldElem>> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(e) {
            return v.clone();
        }
        let ctx = self.ctx();
        let v = if let Some(&i) = self.index.get(e) {
            let mut v = vec![ctx.zero(); self.dim()];
            v[i] = ctx.one();
            v
        } else {
            let var = e.iter().position(|&k| k > 0).expect("constant monomial is in the basis");
            let mut smaller = e.to_vec();
            smaller[var] -= 1;
            let prev = self.monomial_coords(&smaller);
            mat_vec(ctx, &self.var_mats[var], &prev)
        };
        let v = Arc::new(v);
        self.cache.lock().expect("cache lock").insert(e.to_vec(), v.clone());
        v
    }

    /// Coordinates of `f` on the staircase basis.
    pub fn coords(&self, f: &MultiPoly) -> Vec<FieldElem> {
        let ctx = self.ctx();
        let mut out = vec![ctx.zero(); self.dim()];
        for (e, c) in f.terms() {
            let m = self.monomial_coords(e);
            for (o, x) in out.iter_mut().zip(m.iter()) {
                if !ctx.is_zero(x) {
                    *o = ctx.add(o, &ctx.mul(c, x));
                }
            }
        }
        out
    }

    pub fn from_coords(&self, v: &[FieldElem]) -> MultiPoly {
        MultiPoly::from_terms(
            self.ctx(),
            self.vars(),
            self.basis.iter().cloned().zip(v.iter().cloned()),
        )
    }

    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        self.from_coords(&self.coords(f))
    }

    /// Product of two elements given in coordinates.
    pub fn mul_coords(&self, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let ctx = self.ctx();
        let mut out = vec![ctx.zero(); self.dim()];
        for (i, x) in a.iter().enumerate() {
            if ctx.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if ctx.is_zero(y) {
                    continue;
                }
                let e: Exp = self.basis[i].iter().zip(&self.basis[j]).map(|(p, q)| p + q).collect();
                let m = self.monomial_coords(&e);
                let xy = ctx.mul(x, y);
                for (o, z) in out.iter_mut().zip(m.iter()) {
                    if !ctx.is_zero(z) {
                        *o = ctx.add(o, &ctx.mul(&xy, z));
                    }
                }
            }
        }
        out
    }

    /// `M[i][j]` is the coefficient of `eᵢ` in `f·eⱼ`.
    pub fn mult_matrix(&self, f: &MultiPoly) -> Matrix {
        let ctx = self.ctx();
        let fc = self.coords(f);
        let cols: Vec<Vec<FieldElem>> = (0..self.dim())
            .map(|j| {
                let mut ej = vec![ctx.zero(); self.dim()];
                ej[j] = ctx.one();
                self.mul_coords(&fc, &ej)
            })
            .collect();
        crate::form::transpose(&cols)
    }
}

fn mat_vec(ctx: &FieldCtx, m: &Matrix, v: &[FieldElem]) -> Vec<FieldElem> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(ctx.zero(), |acc, (a, b)| {
                if ctx.is_zero(a) || ctx.is_zero(b) {
                    acc
                } else {
                    ctx.add(&acc, &ctx.mul(a, b))
                }
            })
        })
        .collect()
}

/// Standard monomials of a zero-dimensional ideal.
pub fn staircase(gb: &GroebnerBasis) -> Result<Vec<Exp>> {
    let n = gb.vars.len();
    let lts = gb.leading_exps();
    let mut bounds = Vec::with_capacity(n);
    for v in 0..n {
        let pure = lts
            .iter()
            .filter(|e| e.iter().enumerate().all(|(w, &k)| w == v || k == 0) && e[v] > 0)
            .map(|e| e[v])
            .min();
        match pure {
            Some(d) => bounds.push(d),
            None if gb.is_unit_ideal() => bounds.push(0),
            None => return Err(Error::NonIsolatedZeros),
        }
    }
    let mut out = Vec::new();
    if gb.is_unit_ideal() {
        return Ok(out);
    }
    let mut e = vec![0u32; n];
    'outer: loop {
        if !lts.iter().any(|l| divides(l, &e)) {
            out.push(e.clone());
        }
        for v in (0..n).rev() {
            e[v] += 1;
            if e[v] < bounds[v] {
                continue 'outer;
            }
            e[v] = 0;
        }
        break;
    }
    out.sort_by(|a, b| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_system, parse_system_with_vars};

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    fn gb_strings(sys: &str, order: MonomialOrder) -> Vec<String> {
        let g = parse_system(&q(), sys).unwrap();
        groebner(&g, order).unwrap().polys().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn groebner_examples() {
        assert_eq!(gb_strings("x^2 - 1", MonomialOrder::DegRevLex), vec!["x^2 - 1"]);
        assert_eq!(
            gb_strings("x^2-1; y^2-x^2; z^2+x^2", MonomialOrder::DegRevLex),
            vec!["z^2 + 1", "y^2 - 1", "x^2 - 1"]
        );
        let g = parse_system_with_vars(&q(), "x*y; x + y", &["x", "y"]).unwrap();
        let b: Vec<String> = groebner(&g, MonomialOrder::Lex)
            .unwrap()
            .polys()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(b, vec!["y^2", "x + y"]);
    }

    #[test]
    fn staircase_examples() {
        let g = parse_system(&q(), "x^2-1; y^2-x^2; z^2+x^2").unwrap();
        let a = QuotientAlgebra::new(&g, MonomialOrder::DegRevLex).unwrap();
        let names: Vec<String> = (0..a.dim()).map(|i| a.basis_poly(i).to_string()).collect();
        assert_eq!(names, vec!["1", "x", "y", "z", "x*y", "x*z", "y*z", "x*y*z"]);

        let a = QuotientAlgebra::new(&parse_system(&q(), "x").unwrap(), MonomialOrder::DegRevLex).unwrap();
        assert_eq!(a.dim(), 1);

        let g = parse_system(&q(), "x^2; x*y").unwrap();
        assert_eq!(
            QuotientAlgebra::new(&g, MonomialOrder::DegRevLex).unwrap_err(),
            Error::NonIsolatedZeros
        );
    }

    #[test]
    fn mult_matrix_examples() {
        let ints = |m: &Matrix| -> Vec<Vec<String>> {
            m.iter().map(|r| r.iter().map(|x| q().format_elem(x)).collect()).collect()
        };
        let a = QuotientAlgebra::new(&parse_system(&q(), "x^2 - 1").unwrap(), MonomialOrder::DegRevLex).unwrap();
        let x = MultiPoly::var(&q(), a.vars(), 0);
        assert_eq!(ints(&a.mult_matrix(&x)), vec![vec!["0", "1"], vec!["1", "0"]]);
        let one = MultiPoly::constant(&q(), a.vars(), q().one());
        assert_eq!(ints(&a.mult_matrix(&one)), vec![vec!["1", "0"], vec!["0", "1"]]);

        let a = QuotientAlgebra::new(&parse_system(&q(), "x^2").unwrap(), MonomialOrder::DegRevLex).unwrap();
        let x = MultiPoly::var(&q(), a.vars(), 0);
        assert_eq!(ints(&a.mult_matrix(&x)), vec![vec!["0", "0"], vec!["1", "0"]]);
    }

    #[test]
    fn unit_ideal_has_empty_basis() {
        let a = QuotientAlgebra::new(&parse_system(&q(), "x; x - 1").unwrap(), MonomialOrder::DegRevLex).unwrap();
        assert_eq!(a.dim(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let g = parse_system(&q(), "x^2 + y*z - 2; y^2 + x*z - 3; z^2 + x*y - 4").unwrap();
        assert_eq!(
            groebner_with_budget(&g, MonomialOrder::DegRevLex, 1).unwrap_err(),
            Error::BudgetExceeded(1)
        );
        assert!(groebner_with_budget(&g, MonomialOrder::DegRevLex, 10_000).is_ok());
    }

    #[test]
    fn orders_agree_on_dimension() {
        let g = parse_system(&q(), "x^2 + y^2 - 5; x*y - 2").unwrap();
        let a = QuotientAlgebra::new(&g, MonomialOrder::DegRevLex).unwrap();
        let b = QuotientAlgebra::new(&g, MonomialOrder::Lex).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(b.dim(), 4);
    }
}
