use conecert::cone::{apply_a, operator_matrix, sigma_rotate, OperatorKind};
use conecert::harmonic::fischer_decompose;
use conecert::poly::json::{from_json_str, to_json_string};
use conecert::poly::{BiPoly, ExactComplex, Monomial, MultiIndex, Wirtinger};
use num_complex::Complex64;
use proptest::prelude::*;

fn coef() -> impl Strategy<Value = ExactComplex> {
    (-6i64..=6, -6i64..=6, 1i64..=3).prop_map(|(a, b, d)| &ExactComplex::from_gaussian(a, b) / &ExactComplex::from_int(d))
}

/// Random bihomogeneous polynomial with `p, q ≤ 3`, `n ≤ 3`.
fn bihomogeneous(n: usize) -> impl Strategy<Value = BiPoly> {
    (0u32..=3, 0u32..=3).prop_flat_map(move |(p, q)| {
        let monos: Vec<Monomial> = MultiIndex::all_of_degree(n, p)
            .into_iter()
            .flat_map(|a| MultiIndex::all_of_degree(n, q).into_iter().map(move |b| Monomial::new(a.clone(), b)))
            .collect();
        let len = monos.len();
        proptest::collection::vec((0..len, coef()), 1..5).prop_map(move |terms| {
            BiPoly::from_terms(n, terms.into_iter().map(|(i, c)| (monos[i].clone(), c))).unwrap()
        })
    })
    .prop_filter("nonzero", |p| !p.is_zero())
}

fn pair() -> impl Strategy<Value = (BiPoly, BiPoly)> {
    (2usize..=3).prop_flat_map(|n| (bihomogeneous(n), bihomogeneous(n)))
}

fn point(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn laplacian_leibniz((p, q) in pair()) {
        let n = p.n();
        let mut cross = BiPoly::zero(n);
        for k in 0..n {
            cross = &cross + &(&(&p.d(k) * &q.dbar(k)) + &(&p.dbar(k) * &q.d(k)));
        }
        let rhs = &(&(&p.laplacian() * &q) + &(&p * &q.laplacian())) + &cross.scale_int(4);
        prop_assert_eq!((&p * &q).laplacian(), rhs);
    }

    #[test]
    fn mixed_partials_commute(p in (1usize..=3).prop_flat_map(bihomogeneous), j in 0usize..3, k in 0usize..3) {
        let n = p.n();
        prop_assume!(j < n && k < n);
        let a = p.differentiate(j, Wirtinger::Holo).unwrap().differentiate(k, Wirtinger::Anti).unwrap();
        let b = p.differentiate(k, Wirtinger::Anti).unwrap().differentiate(j, Wirtinger::Holo).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn evaluate_is_multiplicative(((p, q), z) in pair().prop_flat_map(|(p, q)| { let n = p.n(); (Just((p, q)), point(n)) })) {
        let lhs = (&p * &q).evaluate(&z).unwrap();
        let rhs = p.evaluate(&z).unwrap() * q.evaluate(&z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn phase_identity((p, z) in (2usize..=3).prop_flat_map(|n| (bihomogeneous(n), point(n)))) {
        let info = p.grade_info();
        for j in 0..16 {
            let theta = 0.4 * j as f64;
            let rot: Vec<Complex64> = z.iter().map(|w| w * Complex64::from_polar(1.0, theta)).collect();
            let expect = info.phase_factor(theta).unwrap() * p.evaluate(&z).unwrap();
            prop_assert!((p.evaluate(&rot).unwrap() - expect).norm() < 1e-12 * (1.0 + expect.norm()));
        }
    }

    #[test]
    fn euler_degrees_scale(p in (1usize..=3).prop_flat_map(bihomogeneous)) {
        let (pp, qq) = p.require_bidegree().unwrap();
        let (a, b) = p.euler_degrees().unwrap();
        prop_assert_eq!(a, p.scale_int(pp as i64));
        prop_assert_eq!(b, p.scale_int(qq as i64));
    }

    #[test]
    fn conj_is_involution_and_exact(p in (1usize..=3).prop_flat_map(bihomogeneous), q in (1usize..=3).prop_flat_map(bihomogeneous)) {
        prop_assume!(p.n() == q.n());
        prop_assert_eq!(p.conj().conj(), p.clone());
        prop_assert_eq!(&(&p + &q) - &q, p);
    }

    #[test]
    fn json_round_trip(p in (1usize..=3).prop_flat_map(bihomogeneous)) {
        let text = to_json_string(&p);
        let back = from_json_str(&text).unwrap();
        prop_assert!(back.warnings.is_empty());
        prop_assert_eq!(&back.value, &p);
        prop_assert_eq!(to_json_string(&back.value), text);
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn fischer_round_trip(p in (2usize..=3).prop_flat_map(bihomogeneous)) {
        let d = fischer_decompose(&p).unwrap();
        prop_assert_eq!(d.recompose(), p);
        prop_assert!(d.components.iter().all(BiPoly::is_harmonic));
    }

    #[test]
    fn sigma_commutes_with_laplacian(p in bihomogeneous(2)) {
        let lhs = sigma_rotate(&p).unwrap().map(BiPoly::laplacian);
        let rhs = sigma_rotate(&p.laplacian()).unwrap();
        prop_assert_eq!(lhs.at_pi_multiple(1), rhs.at_pi_multiple(1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operator_matrix_columns_match_direct_application(p in bihomogeneous(2)) {
        if let Some((pp, qq)) = p.bidegree() {
            let m = operator_matrix(2, pp, qq, &OperatorKind::A).unwrap();
            prop_assert_eq!(m.apply(&p).unwrap(), apply_a(&p).unwrap());
        }
    }
}
