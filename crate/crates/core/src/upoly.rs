//! Dense univariate polynomials over a [`FieldCtx`], constant term first.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

pub type UPoly = Vec<FieldElem>;

pub fn trim(ctx: &FieldCtx, mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| ctx.is_zero(c)) {
        p.pop();
    }
    p
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(ctx: &FieldCtx, p: &[FieldElem]) -> Option<usize> {
    p.iter().rposition(|c| !ctx.is_zero(c))
}

pub fn add(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> UPoly {
    let n = a.len().max(b.len());
    let zero = ctx.zero();
    let out = (0..n)
        .map(|i| ctx.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(ctx, out)
}

pub fn sub(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> UPoly {
    let n = a.len().max(b.len());
    let zero = ctx.zero();
    let out = (0..n)
        .map(|i| ctx.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(ctx, out)
}

pub fn scale(ctx: &FieldCtx, a: &[FieldElem], c: &FieldElem) -> UPoly {
    trim(ctx, a.iter().map(|x| ctx.mul(x, c)).collect())
}

pub fn mul(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ctx.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
        }
    }
    trim(ctx, out)
}

/// Division with remainder; the divisor's leading coefficient must be a unit.
pub fn divrem(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Result<(UPoly, UPoly)> {
    let b = trim(ctx, b.to_vec());
    let db = b.len().checked_sub(1).ok_or(Error::NotInvertible)?;
    let lead_inv = ctx.inv(&b[db])?;
    let mut r = trim(ctx, a.to_vec());
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![ctx.zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = ctx.mul(&r[r.len() - 1], &lead_inv);
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = ctx.sub(&r[k + i], &ctx.mul(&c, bi));
        }
        q[k] = c;
        r.pop();
        r = trim(ctx, r);
    }
    Ok((trim(ctx, q), r))
}

pub fn monic(ctx: &FieldCtx, a: &[FieldElem]) -> Result<UPoly> {
    let a = trim(ctx, a.to_vec());
    match a.last() {
        None => Ok(a),
        Some(l) => {
            let inv = ctx.inv(l)?;
            Ok(scale(ctx, &a, &inv))
        }
    }
}

/// Monic gcd over a field base.
pub fn gcd(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> UPoly {
    let mut x = trim(ctx, a.to_vec());
    let mut y = trim(ctx, b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(ctx, &x, &y).expect("division over a field");
        x = y;
        y = r;
    }
    monic(ctx, &x).expect("nonzero leading coefficient")
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`.
pub fn xgcd(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> (UPoly, UPoly, UPoly) {
    let (mut r0, mut r1) = (trim(ctx, a.to_vec()), trim(ctx, b.to_vec()));
    let (mut s0, mut s1) = (vec![ctx.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![ctx.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(ctx, &r0, &r1).expect("division over a field");
        let s = sub(ctx, &s0, &mul(ctx, &q, &s1));
        let t = sub(ctx, &t0, &mul(ctx, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

pub fn derivative(ctx: &FieldCtx, a: &[FieldElem]) -> UPoly {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ctx.mul(&ctx.from_int(i as i64), c))
        .collect();
    trim(ctx, out)
}

pub fn eval(ctx: &FieldCtx, a: &[FieldElem], x: &FieldElem) -> FieldElem {
    a.iter()
        .rev()
        .fold(ctx.zero(), |acc, c| ctx.add(&ctx.mul(&acc, x), c))
}

/// Evaluates a polynomial over `ctx` at a point of an extension `target`.
pub fn eval_in(ctx: &FieldCtx, a: &[FieldElem], target: &FieldCtx, x: &FieldElem) -> Result<FieldElem> {
    let mut acc = target.zero();
    for c in a.iter().rev() {
        acc = target.add(&target.mul(&acc, x), &target.embed(ctx, c)?);
    }
    Ok(acc)
}

pub fn from_ints(ctx: &FieldCtx, cs: &[i64]) -> UPoly {
    trim(ctx, cs.iter().map(|&c| ctx.from_int(c)).collect())
}

fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let mut out = vec![BigUint::one()];
    for (p, e) in arith::factor(n)? {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    Ok(out)
}

/// Roots of `a` lying in the ground field `ctx` (rationals or a prime
/// field), without multiplicity.
pub fn roots(ctx: &FieldCtx, a: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let a = trim(ctx, a.to_vec());
    if a.len() <= 1 {
        return Ok(Vec::new());
    }
    match ctx {
        FieldCtx::Prime(p) => {
            if *p > 1 << 20 {
                return Err(Error::UnsupportedField(format!(
                    "root search over F_{p} is limited to p < 2^20"
                )));
            }
            Ok((0..*p)
                .map(FieldElem::Fp)
                .filter(|x| ctx.is_zero(&eval(ctx, &a, x)))
                .collect())
        }
        FieldCtx::Rationals => {
            // Clear denominators, then test +-d/e with d | a0 and e | an.
            let lcm = a.iter().fold(BigInt::one(), |acc, c| match c {
                FieldElem::Q(q) => acc.lcm(q.denom()),
                _ => unreachable!(),
            });
            let ints: Vec<BigInt> = a
                .iter()
                .map(|c| match c {
                    FieldElem::Q(q) => (q * BigRational::from_integer(lcm.clone())).to_integer(),
                    _ => unreachable!(),
                })
                .collect();
            let mut out = Vec::new();
            let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero poly");
            if low > 0 {
                out.push(ctx.zero());
            }
            let ints = &ints[low..];
            if ints.len() == 1 {
                return Ok(out);
            }
            let num_divs = divisors(ints[0].magnitude())?;
            let den_divs = divisors(ints[ints.len() - 1].magnitude())?;
            let mut cands: Vec<BigRational> = Vec::new();
            for d in &num_divs {
                for e in &den_divs {
                    let r = BigRational::new(BigInt::from(d.clone()), BigInt::from(e.clone()));
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            for r in cands {
                let mut acc = BigRational::zero();
                for c in ints.iter().rev() {
                    acc = acc * &r + BigRational::from_integer(c.clone());
                }
                if acc.is_zero() {
                    out.push(FieldElem::Q(r));
                }
            }
            Ok(out)
        }
        FieldCtx::Ext(_) => Err(Error::UnsupportedField(
            "root search over extension fields".into(),
        )),
    }
}

/// Whether `a` has a root in its coefficient field; `None` when undecided.
pub fn has_root(ctx: &FieldCtx, a: &[FieldElem]) -> Option<bool> {
    roots(ctx, a).ok().map(|r| !r.is_empty())
}

/// Splits `a` into irreducible monic factors of degree <= 3 by peeling off
/// roots. Repeated factors are reported once.
pub fn factor_small(ctx: &FieldCtx, a: &[FieldElem]) -> Result<Vec<UPoly>> {
    let mut rest = monic(ctx, a)?;
    let mut out: Vec<UPoly> = Vec::new();
    for r in roots(ctx, &rest)? {
        let lin = vec![ctx.neg(&r), ctx.one()];
        loop {
            let (q, rem) = divrem(ctx, &rest, &lin)?;
            if !rem.is_empty() {
                break;
            }
            rest = q;
        }
        out.push(lin);
    }
    match rest.len() {
        0 | 1 => {}
        2..=4 => out.push(rest),
        _ => {
            // A squarefree quartic or higher without roots may still split.
            let sqfree_part = {
                let g = gcd(ctx, &rest, &derivative(ctx, &rest));
                divrem(ctx, &rest, &g)?.0
            };
            if sqfree_part.len() <= 4 {
                out.push(monic(ctx, &sqfree_part)?);
            } else {
                return Err(Error::FactorDegreeTooHigh(format(ctx, &rest, "x")));
            }
        }
    }
    Ok(out)
}

/// The n-th cyclotomic polynomial, computed by exact division.
pub fn cyclotomic(ctx: &FieldCtx, n: u64) -> UPoly {
    let mut num = vec![ctx.zero(); n as usize + 1];
    num[0] = ctx.from_int(-1);
    num[n as usize] = ctx.one();
    for d in 1..n {
        if n % d == 0 {
            let phi = cyclotomic(ctx, d);
            num = divrem(ctx, &num, &phi).expect("monic divisor").0;
        }
    }
    num
}

pub fn format(ctx: &FieldCtx, a: &[FieldElem], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in a.iter().enumerate().rev() {
        if ctx.is_zero(c) {
            continue;
        }
        let cs = ctx.format_elem(c);
        let cs = if ctx.is_ground() { cs } else { format!("({cs})") };
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (i, cs.as_str()) {
            (0, _) => cs,
            (_, "1") => mono,
            (_, "-1") => format!("-{mono}"),
            _ => format!("{cs}*{mono}"),
        });
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ").replace("+ -", "- ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomics() {
        let q = FieldCtx::Rationals;
        assert_eq!(cyclotomic(&q, 3), from_ints(&q, &[1, 1, 1]));
        assert_eq!(cyclotomic(&q, 6), from_ints(&q, &[1, -1, 1]));
        assert_eq!(cyclotomic(&q, 12), from_ints(&q, &[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(&q, 10), from_ints(&q, &[1, -1, 1, -1, 1]));
    }

    #[test]
    fn rational_roots_and_factoring() {
        let q = FieldCtx::Rationals;
        // x^3 - 1
        let f = from_ints(&q, &[-1, 0, 0, 1]);
        assert_eq!(roots(&q, &f).unwrap(), vec![q.one()]);
        let fs = factor_small(&q, &f).unwrap();
        assert_eq!(fs, vec![from_ints(&q, &[-1, 1]), from_ints(&q, &[1, 1, 1])]);
        // 6x^2 - 5x + 1 = (2x-1)(3x-1)
        let g = from_ints(&q, &[1, -5, 6]);
        assert_eq!(roots(&q, &g).unwrap().len(), 2);
        // x^5 - 1 has an irreducible quartic factor.
        assert!(matches!(
            factor_small(&q, &from_ints(&q, &[-1, 0, 0, 0, 0, 1])),
            Err(Error::FactorDegreeTooHigh(_))
        ));
    }

    #[test]
    fn xgcd_identity() {
        let f7 = FieldCtx::prime(7).unwrap();
        let a = from_ints(&f7, &[1, 2, 3, 1]);
        let b = from_ints(&f7, &[5, 0, 1]);
        let (g, s, t) = xgcd(&f7, &a, &b);
        assert_eq!(add(&f7, &mul(&f7, &s, &a), &mul(&f7, &t, &b)), g);
    }
}
