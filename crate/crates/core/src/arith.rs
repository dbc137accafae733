//! Integer and rational number theory: factoring, squarefree parts,
//! Legendre and Hilbert symbols.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Trial division bound used before falling back to Pollard rho.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Iteration budget for a single Pollard-rho split.
pub const RHO_BUDGET: u64 = 2_000_000;

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first thirteen prime bases. Deterministic below
/// 3.3e24, which covers every number this crate is expected to see.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'bases: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

fn pollard_rho(n: &BigUint) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    // Brent's variant, several increments before giving up.
    for c in 1u32..20 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut iterations: u64 = 0;
        let m: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            iterations += r;
            if iterations > RHO_BUDGET {
                break;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

fn push_factor(out: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
        slot.1 += e;
    } else {
        out.push((p, e));
    }
}

fn split_large(n: BigUint, out: &mut Vec<(BigUint, u32)>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        push_factor(out, n, 1);
        return Ok(());
    }
    let root = n.sqrt();
    if &root * &root == n {
        let mut sub = Vec::new();
        split_large(root, &mut sub)?;
        for (p, e) in sub {
            push_factor(out, p, 2 * e);
        }
        return Ok(());
    }
    let d = pollard_rho(&n).ok_or_else(|| Error::FactorBudgetExceeded(n.to_string()))?;
    let rest = &n / &d;
    split_large(d, out)?;
    split_large(rest, out)
}

/// Prime factorization of a positive integer, sorted by prime.
pub fn factor(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    let mut out = Vec::new();
    if n.is_zero() {
        return Err(Error::ZeroEntry);
    }
    let mut rest = n.clone();
    let mut d: u64 = 2;
    while d <= TRIAL_DIVISION_BOUND {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            e += 1;
        }
        if e > 0 {
            out.push((dd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            push_factor(&mut out, rest, 1);
        } else {
            split_large(rest, &mut out)?;
        }
    }
    out.sort();
    Ok(out)
}

/// Squarefree integer in the square class of `n` (sign preserved).
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroEntry);
    }
    let mut acc = BigUint::one();
    for (p, e) in factor(n.magnitude())? {
        if e % 2 == 1 {
            acc *= p;
        }
    }
    Ok(BigInt::from_biguint(n.sign(), acc))
}

/// Squarefree integer representing the square class of a nonzero rational.
pub fn rational_squarefree(q: &BigRational) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::ZeroEntry);
    }
    squarefree_part(&(q.numer() * q.denom()))
}

/// Legendre symbol via Euler's criterion. `p` must be an odd prime.
pub fn legendre(a: &BigInt, p: &BigUint) -> i8 {
    let pi = BigInt::from(p.clone());
    let r = a.mod_floor(&pi).to_biguint().expect("nonnegative residue");
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

pub fn legendre_u64(a: i64, p: u64) -> i8 {
    legendre(&BigInt::from(a), &BigUint::from(p))
}

/// A place of the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Prime(BigUint),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Self {
        Place::Prime(BigUint::from(p))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Prime(a), Place::Prime(b)) => a.cmp(b),
            (Place::Prime(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Prime(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Splits a nonzero rational as `p^v * u` with `u` a `p`-adic unit, returning
/// `(v, numerator(u) * denominator(u))`. The product lies in the same square
/// class of units as `u` and is coprime to `p`.
fn split_valuation(q: &BigRational, p: &BigUint) -> (i64, BigInt) {
    let pi = BigInt::from(p.clone());
    let mut num = q.numer().clone();
    let mut den = q.denom().clone();
    let mut v = 0i64;
    while (&num % &pi).is_zero() {
        num /= &pi;
        v += 1;
    }
    while (&den % &pi).is_zero() {
        den /= &pi;
        v -= 1;
    }
    (v, num * den)
}

fn mod8(u: &BigInt) -> u32 {
    u.mod_floor(&BigInt::from(8)).to_u32().expect("residue mod 8")
}

/// Hilbert symbol `(a, b)_v` for nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if *p == BigUint::from(2u32) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let (u8_, v8) = (mod8(&u), mod8(&v));
            let eps = |x: u32| ((x - 1) / 2) % 2;
            let omega = |x: u32| ((x * x - 1) / 8) % 2;
            let e = eps(u8_) * eps(v8)
                + (alpha.rem_euclid(2) as u32) * omega(v8)
                + (beta.rem_euclid(2) as u32) * omega(u8_);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let alpha = alpha.rem_euclid(2);
            let beta = beta.rem_euclid(2);
            let mut s: i8 = 1;
            // (-1)^(alpha*beta*(p-1)/2)
            if alpha * beta == 1 && Integer::is_odd(&((p - 1u32) >> 1usize)) {
                s = -s;
            }
            if beta == 1 {
                s *= legendre(&u, p);
            }
            if alpha == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    }
}

/// Convenience wrapper over integers.
pub fn hilbert_symbol_int(a: i64, b: i64, place: &Place) -> i8 {
    hilbert_symbol(
        &BigRational::from_integer(a.into()),
        &BigRational::from_integer(b.into()),
        place,
    )
}

/// Primes dividing the numerator or denominator of `q`.
pub fn prime_support(q: &BigRational) -> Result<Vec<BigUint>> {
    let mut out: Vec<BigUint> = factor(q.numer().magnitude())?
        .into_iter()
        .chain(factor(q.denom().magnitude())?)
        .map(|(p, _)| p)
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether a squarefree integer is a square in the completion at `place`.
pub(crate) fn is_local_square(d: &BigInt, place: &Place) -> bool {
    if d.is_one() {
        return true;
    }
    match place {
        Place::Infinity => d.sign() == Sign::Plus,
        Place::Prime(p) if *p == BigUint::from(2u32) => d.is_odd() && mod8(d) == 1,
        Place::Prime(p) => {
            let pi = BigInt::from(p.clone());
            !(d % &pi).is_zero() && legendre(d, p) == 1
        }
    }
}
