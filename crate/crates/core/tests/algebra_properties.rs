use gw_euler_core::form::{determinant, mat_mul, transpose};
use gw_euler_core::poly::parse_system_with_vars;
use gw_euler_core::{make_extension, trace_form, FieldCtx, FieldElem, GramForm, MonomialOrder, QuotientAlgebra};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0xa17e),
        failure_persistence: None,
        ..Config::default()
    }
}

fn symmetric(n: usize, upper: &[i64]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    let mut it = upper.iter();
    for i in 0..n {
        for j in i..n {
            let v = *it.next().unwrap();
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

fn field() -> impl Strategy<Value = FieldCtx> {
    prop_oneof![
        Just(FieldCtx::rationals()),
        prop::sample::select(vec![3u64, 5, 7, 11, 101]).prop_map(|p| FieldCtx::prime(p).unwrap()),
    ]
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn congruence_identity(k in field(), n in 1usize..6, upper in prop::collection::vec(-5i64..=5, 15)) {
        let m = symmetric(n, &upper);
        let g: Vec<Vec<FieldElem>> = m.iter().map(|r| r.iter().map(|&x| k.from_int(x)).collect()).collect();
        let form = GramForm::new(&k, g.clone()).unwrap();
        prop_assume!(!k.is_zero(&form.det()));
        let d = form.diagonalize_with_basis().unwrap();
        let congruent = mat_mul(&k, &mat_mul(&k, &transpose(&d.p), &g), &d.p);
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { d.entries[i].clone() } else { k.zero() };
                prop_assert_eq!(&congruent[i][j], &expected);
            }
        }
        let dp = determinant(&k, &d.p);
        prop_assert!(!k.is_zero(&dp));
        let prod = d.entries.iter().fold(k.one(), |a, b| k.mul(&a, b));
        prop_assert_eq!(prod, k.mul(&k.mul(&dp, &dp), &form.det()));
    }
}

fn squarefree_modulus(k: &FieldCtx, coeffs: &[i64]) -> Option<Vec<FieldElem>> {
    let mut m: Vec<FieldElem> = coeffs.iter().map(|&c| k.from_int(c)).collect();
    m.push(k.one());
    let d = gw_euler_core::upoly::derivative(k, &m);
    (gw_euler_core::upoly::gcd(k, &m, &d).len() == 1).then_some(m)
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn trace_form_nondegenerate_on_etale_algebras(
        k in field(),
        coeffs in prop::collection::vec(-6i64..=6, 1..5),
        a in prop::collection::vec(-4i64..=4, 4),
    ) {
        let Some(m) = squarefree_modulus(&k, &coeffs) else { return Ok(()) };
        let alg = make_extension(&k, &m).unwrap();
        let ext = alg.ctx();
        let d = alg.degree();
        let elem = alg.elem(&a[..d].iter().map(|&x| k.from_int(x)).collect::<Vec<_>>());
        prop_assume!(!ext.is_zero(&elem));
        let units = ext.inv(&elem).is_ok();
        let form = trace_form(&alg, &elem).unwrap();
        prop_assert_eq!(form.dim(), d);
        // Tr(a·x·y) is nondegenerate exactly when a is a unit of the étale algebra.
        prop_assert_eq!(!k.is_zero(&form.det()), units);
        if units {
            prop_assert_eq!(form.class().unwrap().rank(), d);
        }
    }
}

fn systems() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, i64)> {
    (
        prop::collection::vec(-3i64..=3, 2..4),
        prop::collection::vec(-3i64..=3, 2..4),
        -2i64..=2,
    )
}

fn product_text(var: &str, roots: &[i64], shift: &str) -> String {
    roots
        .iter()
        .map(|r| format!("({var} - ({r}) {shift})"))
        .collect::<Vec<_>>()
        .join("*")
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn normal_form_is_multiplicative(
        (xs, ys, c) in systems(),
        f in prop::collection::vec(-3i64..=3, 6),
        g in prop::collection::vec(-3i64..=3, 6),
        lex in any::<bool>(),
    ) {
        let q = FieldCtx::rationals();
        let vars = ["x", "y"];
        let text = format!(
            "{}; {}",
            product_text("x", &xs, ""),
            product_text("y", &ys, &format!("- ({c})*x"))
        );
        let gens = parse_system_with_vars(&q, &text, &vars).unwrap();
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let alg = QuotientAlgebra::new(&gens, order).unwrap();
        let poly = |v: &[i64]| {
            let t = format!("{}*x^3*y + {}*x^2 + {}*x*y^2 + {}*y^3 + {}*x + {}", v[0], v[1], v[2], v[3], v[4], v[5]);
            parse_system_with_vars(&q, &t, &vars).unwrap().remove(0)
        };
        let (pf, pg) = (poly(&f), poly(&g));
        let nf_prod = alg.normal_form(&pf.mul(&pg));
        let prod_nf = alg.normal_form(&alg.normal_form(&pf).mul(&alg.normal_form(&pg)));
        prop_assert_eq!(&nf_prod, &prod_nf);
        prop_assert_eq!(alg.coords(&pf.mul(&pg)), alg.mul_coords(&alg.coords(&pf), &alg.coords(&pg)));
        for gen in &gens {
            prop_assert!(alg.normal_form(gen).as_constant().map(|c| q.is_zero(&c)).unwrap_or(false));
        }
    }
}
