use std::collections::{HashMap, VecDeque};

use gw_euler_core::arith::{hilbert_symbol, prime_support, Place};
use gw_euler_core::{FieldCtx, FieldElem, GWClass, GramForm, SquareClass};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-60i64..=-1, 1i64..=60]
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn places_for(values: &[i64]) -> Vec<Place> {
    let mut places = vec![Place::Infinity, Place::prime(2)];
    for &v in values {
        for p in prime_support(&rational(v)).unwrap() {
            let p: u64 = p.try_into().unwrap();
            if !places.contains(&Place::prime(p)) {
                places.push(Place::prime(p));
            }
        }
    }
    places
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn opposite_pair_is_hyperbolic_over_q(a in nonzero(), h in 0u64..3) {
        let q = FieldCtx::rationals();
        let c = GWClass::from_ints(&q, h, &[a, -a]).unwrap();
        prop_assert_eq!(c.clone(), GWClass::hyperbolic(&q, h + 1));
        prop_assert_eq!(c.anisotropic_rank().unwrap(), 0);
    }

    #[test]
    fn opposite_pair_is_hyperbolic_over_fp(a in 1u64..1000, p in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
        let k = FieldCtx::prime(p).unwrap();
        let x = FieldElem::Fp(a % p);
        prop_assume!(!k.is_zero(&x));
        let c = GWClass::from_diagonal(&k, &[x.clone(), k.neg(&x)]).unwrap();
        prop_assert!(c.gw_equal(&GWClass::hyperbolic(&k, 1)).unwrap());
    }

    #[test]
    fn hilbert_bimultiplicative(a in nonzero(), b in nonzero(), c in nonzero()) {
        for place in places_for(&[a, b, c]) {
            let ab = hilbert_symbol(&(rational(a) * rational(b)), &rational(c), &place);
            let split = hilbert_symbol(&rational(a), &rational(c), &place) * hilbert_symbol(&rational(b), &rational(c), &place);
            prop_assert_eq!(ab, split, "place {:?}", place);
            let sym = hilbert_symbol(&rational(c), &rational(a), &place);
            prop_assert_eq!(sym, hilbert_symbol(&rational(a), &rational(c), &place));
        }
    }

    #[test]
    fn hilbert_product_formula(a in nonzero(), b in nonzero()) {
        let product: i8 = places_for(&[a, b])
            .iter()
            .map(|v| hilbert_symbol(&rational(a), &rational(b), v))
            .product();
        prop_assert_eq!(product, 1);
    }

    #[test]
    fn hilbert_degenerate_pairs(a in nonzero()) {
        for place in places_for(&[a]) {
            prop_assert_eq!(hilbert_symbol(&rational(a), &rational(-a), &place), 1);
        }
        if a != 1 {
            for place in places_for(&[a, 1 - a]) {
                prop_assert_eq!(hilbert_symbol(&rational(a), &rational(1 - a), &place), 1);
            }
        }
    }

    #[test]
    fn rank_and_disc_are_additive(xs in prop::collection::vec(nonzero(), 1..5), ys in prop::collection::vec(nonzero(), 1..5)) {
        let q = FieldCtx::rationals();
        let a = GWClass::from_ints(&q, 0, &xs).unwrap();
        let b = GWClass::from_ints(&q, 1, &ys).unwrap();
        let s = a.add(&b).unwrap();
        prop_assert_eq!(s.rank(), a.rank() + b.rank());
        prop_assert_eq!(s.disc().unwrap(), a.disc().unwrap().mul(&b.disc().unwrap()).unwrap());
        prop_assert_eq!(s.signature().unwrap(), a.signature().unwrap() + b.signature().unwrap());
    }

    #[test]
    fn square_factors_do_not_change_class(a in nonzero(), b in 1i64..20) {
        let q = FieldCtx::rationals();
        prop_assert_eq!(SquareClass::from_int(&q, a * b * b).unwrap(), SquareClass::from_int(&q, a).unwrap());
    }

    #[test]
    fn text_round_trip(h in 0u64..4, xs in prop::collection::vec(nonzero(), 0..5)) {
        let q = FieldCtx::rationals();
        let c = GWClass::from_ints(&q, h, &xs).unwrap();
        prop_assert_eq!(GWClass::parse(&q, &c.to_string()).unwrap(), c);
    }
}

fn small_symmetric() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6).prop_flat_map(|n| {
        prop::collection::vec(-9i64..=9, n * (n + 1) / 2).prop_map(move |upper| {
            let mut m = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i..n {
                    let v = it.next().unwrap();
                    m[i][j] = v;
                    m[j][i] = v;
                }
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn signature_matches_float_eigenvalues(m in small_symmetric()) {
        let q = FieldCtx::rationals();
        let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
        let form = GramForm::from_ints(&q, &rows).unwrap();
        prop_assume!(!q.is_zero(&form.det()));
        let n = m.len();
        let fm = DMatrix::from_fn(n, n, |i, j| m[i][j] as f64);
        let eig = fm.symmetric_eigenvalues();
        prop_assume!(eig.iter().all(|e| e.abs() > 1e-6));
        let float_sig: i64 = eig.iter().map(|e| if *e > 0.0 { 1 } else { -1 }).sum();
        let class = form.class().unwrap();
        prop_assert_eq!(class.signature(), Some(float_sig));
        prop_assert_eq!(class.rank(), n);
    }
}

/// Labels every nondegenerate symmetric `n×n` matrix over `F_p` by its
/// congruence orbit, reached through elementary congruences.
fn congruence_orbits(p: u64, n: usize) -> HashMap<Vec<u64>, usize> {
    let idx: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let get = |m: &[u64], i: usize, j: usize| {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        m[idx.iter().position(|&t| t == (a, b)).unwrap()]
    };
    let det = |m: &[u64]| -> u64 {
        let k = FieldCtx::prime(p).unwrap();
        let rows: Vec<Vec<FieldElem>> = (0..n).map(|i| (0..n).map(|j| FieldElem::Fp(get(m, i, j))).collect()).collect();
        match gw_euler_core::form::determinant(&k, &rows) {
            FieldElem::Fp(d) => d,
            _ => unreachable!(),
        }
    };
    let generator = (2..p).find(|&g| (1..p - 1).all(|e| g.pow(e as u32) % p != 1)).unwrap_or(1);
    // E = I + c·e_ij or a diagonal scaling; EᵀME applied entrywise.
    let moves = |m: &[u64]| -> Vec<Vec<u64>> {
        let full = |m: &[u64]| -> Vec<Vec<u64>> { (0..n).map(|i| (0..n).map(|j| get(m, i, j)).collect()).collect() };
        let pack = |f: &Vec<Vec<u64>>| -> Vec<u64> { idx.iter().map(|&(i, j)| f[i][j] % p).collect() };
        let mut out = Vec::new();
        let base = full(m);
        for i in 0..n {
            let mut f = base.clone();
            for k in 0..n {
                f[i][k] = f[i][k] * generator % p;
                f[k][i] = f[k][i] * generator % p;
            }
            f[i][i] = base[i][i] * generator % p * generator % p;
            out.push(pack(&f));
            for j in 0..n {
                if i == j {
                    continue;
                }
                // Replace basis vector v_i by v_i + v_j.
                let mut f = base.clone();
                for k in 0..n {
                    if k != i {
                        let v = (base[i][k] + base[j][k]) % p;
                        f[i][k] = v;
                        f[k][i] = v;
                    }
                }
                f[i][i] = (base[i][i] + 2 * base[i][j] + base[j][j]) % p;
                out.push(pack(&f));
            }
        }
        out
    };
    let mut label = HashMap::new();
    let total = p.pow(idx.len() as u32);
    let mut next = 0;
    for code in 0..total {
        let mut c = code;
        let m: Vec<u64> = (0..idx.len())
            .map(|_| {
                let v = c % p;
                c /= p;
                v
            })
            .collect();
        if label.contains_key(&m) || det(&m) == 0 {
            continue;
        }
        let mut queue = VecDeque::from([m.clone()]);
        label.insert(m, next);
        while let Some(cur) = queue.pop_front() {
            for nb in moves(&cur) {
                if !label.contains_key(&nb) {
                    label.insert(nb.clone(), next);
                    queue.push_back(nb);
                }
            }
        }
        next += 1;
    }
    label
}

#[test]
fn gw_equal_matches_congruence_orbits_over_small_fields() {
    for p in [3u64, 5, 7] {
        for n in 1..=3usize {
            if p == 7 && n == 3 {
                continue;
            }
            let k = FieldCtx::prime(p).unwrap();
            let orbits = congruence_orbits(p, n);
            let diag_key = |d: &[u64]| -> Vec<u64> {
                let mut v = Vec::new();
                for i in 0..n {
                    for j in i..n {
                        v.push(if i == j { d[i] } else { 0 });
                    }
                }
                v
            };
            let tuples: Vec<Vec<u64>> = (0..(p - 1).pow(n as u32))
                .map(|mut c| {
                    (0..n)
                        .map(|_| {
                            let v = c % (p - 1) + 1;
                            c /= p - 1;
                            v
                        })
                        .collect()
                })
                .collect();
            for a in &tuples {
                for b in &tuples {
                    let ca = GWClass::from_diagonal(&k, &a.iter().map(|&x| FieldElem::Fp(x)).collect::<Vec<_>>()).unwrap();
                    let cb = GWClass::from_diagonal(&k, &b.iter().map(|&x| FieldElem::Fp(x)).collect::<Vec<_>>()).unwrap();
                    let same_orbit = orbits[&diag_key(a)] == orbits[&diag_key(b)];
                    assert_eq!(ca.gw_equal(&cb).unwrap(), same_orbit, "p={p} {a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn gw_equal_matches_orbits_rank_three_mod_seven() {
    let p = 7;
    let k = FieldCtx::prime(p).unwrap();
    let orbits = congruence_orbits(p, 3);
    let key = |d: [u64; 3]| vec![d[0], 0, 0, d[1], 0, d[2]];
    let samples = [[1, 1, 1], [1, 1, 3], [3, 3, 3], [3, 5, 6], [2, 4, 1], [6, 6, 6], [5, 1, 1]];
    for a in samples {
        for b in samples {
            let ca = GWClass::from_diagonal(&k, &a.map(FieldElem::Fp)).unwrap();
            let cb = GWClass::from_diagonal(&k, &b.map(FieldElem::Fp)).unwrap();
            assert_eq!(ca.gw_equal(&cb).unwrap(), orbits[&key(a)] == orbits[&key(b)], "{a:?} {b:?}");
        }
    }
}
