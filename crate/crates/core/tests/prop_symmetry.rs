mod common;

use common::*;
use pcx_core::polyalg::{parse_poly, Chart, Polynomial};
use pcx_core::symmetry::{infinitesimal_poissonoid_check, master_symmetry_degree, twisted_boundary, twisted_d};
use pcx_core::tensorcalc::{
    df, ham_vf, lie_bivector, lie_bracket, poisson_bracket, sharp, Bivector, KForm, VectorField,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn free_particle() -> (Chart, Bivector, Polynomial) {
    let (c, pi) = canonical_standard(2);
    let h = parse_poly("1/2*p1^2 + 1/2*p2^2", &c).unwrap();
    (c, pi, h)
}

/// `G = A(p) + sum q_i B_i(p)`: for the free particle `{H, {H, G}} = 0`.
fn linear_in_q() -> impl Strategy<Value = Polynomial> {
    let c = Chart::canonical(2);
    let p = Chart::new(["p1", "p2"]).unwrap();
    (poly(p.clone(), 3, 3), poly(p.clone(), 2, 2), poly(p, 2, 2)).prop_map(move |(a, b1, b2)| {
        let lift = |f: &Polynomial| f.substitute(&[Polynomial::var(&c, 2), Polynomial::var(&c, 3)]).unwrap();
        &(&lift(&a) + &(&Polynomial::var(&c, 0) * &lift(&b1))) + &(&Polynomial::var(&c, 1) * &lift(&b2))
    })
}

/// `[X_H, X_F] = pi # d_X F` with `d_X F = d(X[F])`, 20 random pairs on each structure.
#[test]
fn bracket_with_hamiltonian_field_is_sharp_of_twisted_d() {
    for (name, pi) in structures() {
        let chart = pi.chart().clone();
        let deg = if chart.dim() > 4 { 2 } else { 3 };
        let mut runner = TestRunner::new(Config::with_cases(20));
        let cases = std::cell::Cell::new(0);
        runner
            .run(&(poly(chart.clone(), deg, 4), poly(chart, deg, 4)), |(h, f)| {
                cases.set(cases.get() + 1);
                let x = ham_vf(&pi, &h).unwrap();
                let xf = ham_vf(&pi, &f).unwrap();
                let lhs = lie_bracket(&x, &xf).unwrap();
                let rhs = sharp(&pi, &twisted_d(&x, &KForm::function(&f)).unwrap()).unwrap();
                prop_assert_eq!(&lhs, &rhs, "{}", name);
                prop_assert_eq!(rhs.components().to_vec(), sharp_of(&pi, &grad(&apply(&x, &f))));
                Ok(())
            })
            .unwrap();
        assert_eq!(cases.get(), 20, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// `L_X^k (pi # dT) = pi # d(X^k[T])` along the whole chain.
    #[test]
    fn iterates_are_natural(
        (i, h, t) in (0usize..5).prop_flat_map(|i| {
            let c = structures()[i].1.chart().clone();
            (Just(i), poly(c.clone(), 2, 3), poly(c, 3, 3))
        })
    ) {
        let pi = &structures()[i].1;
        let x = ham_vf(pi, &h).unwrap();
        prop_assert!(lie_bivector(&x, pi).unwrap().is_zero());
        let mut xi = ham_vf(pi, &t).unwrap();
        let mut tk = t;
        for _ in 0..3 {
            xi = lie_bracket(&x, &xi).unwrap();
            tk = x.apply(&tk).unwrap();
            prop_assert_eq!(&xi, &ham_vf(pi, &tk).unwrap());
        }
    }

    #[test]
    fn master_degree_verdict_is_consistent(xi in field(Chart::canonical(2), 3)) {
        let (_, pi, h) = free_particle();
        let x = ham_vf(&pi, &h).unwrap();
        let v = master_symmetry_degree(&x, &xi, 12).unwrap();
        // X = p d/dq lowers the q-degree, so the chain always terminates.
        let m = v.degree.expect("free particle chain terminates");
        prop_assert_eq!(v.iterates.len(), m + 2);
        prop_assert!(v.iterates[m + 1].is_zero());
        prop_assert!(m == 0 && xi.is_zero() || !v.iterates[m].is_zero());
    }

    /// With `L_X^{m+1} xi = 0`, the iterate `L_X^m xi` commutes with `X` and is an
    /// infinitesimal Poissonoid transformation with constant `F`.
    #[test]
    fn last_nonzero_iterate_is_infinitesimally_poissonoid(xi in field(Chart::canonical(2), 3), g in linear_in_q()) {
        let (_, pi, h) = free_particle();
        let x = ham_vf(&pi, &h).unwrap();
        for seed in [xi, ham_vf(&pi, &g).unwrap()] {
            let v = master_symmetry_degree(&x, &seed, 12).unwrap();
            let m = v.degree.unwrap();
            let f = infinitesimal_poissonoid_check(&pi, &x, &v.iterates[m], 2).unwrap();
            prop_assert!(f.is_some_and(|f| f.is_constant()));
        }
    }

    /// If `[xi, X] = pi # dF` and `[xi, X][H] = 0`, then `{F, H} = 0` and the
    /// master degree is at most 1.
    #[test]
    fn special_integral(g in linear_in_q(), noise in field(Chart::canonical(2), 2), use_noise in any::<bool>()) {
        let (_, pi, h) = free_particle();
        let x = ham_vf(&pi, &h).unwrap();
        let mut xi = ham_vf(&pi, &g).unwrap();
        if use_noise {
            xi = xi.checked_add(&noise).unwrap();
        }
        let f = infinitesimal_poissonoid_check(&pi, &x, &xi, 4).unwrap();
        let flows_along_h = lie_bracket(&xi, &x).unwrap().apply(&h).unwrap().is_zero();
        if !use_noise {
            // The family is built to meet both hypotheses.
            prop_assert!(f.is_some() && flows_along_h);
        }
        if let (Some(f), true) = (f, flows_along_h) {
            prop_assert!(poisson_bracket(&pi, &f, &h).unwrap().is_zero());
            let v = master_symmetry_degree(&x, &xi, 1).unwrap();
            prop_assert!(v.degree.is_some_and(|m| m <= 1));
        }
    }

    #[test]
    fn twisted_boundary_of_exact_form_is_second_derivative(x in field(Chart::canonical(2), 2), f in poly(Chart::canonical(2), 3, 4)) {
        let lhs = twisted_boundary(&x, &df(&f)).unwrap();
        prop_assert_eq!(lhs, KForm::function(&apply(&x, &apply(&x, &f))));
        prop_assert!(twisted_boundary(&VectorField::zero(x.chart()), &df(&f)).unwrap().is_zero());
    }

    #[test]
    fn twisted_d_kills_integrals(h in poly(Chart::canonical(2), 2, 4)) {
        let (_, pi, _) = free_particle();
        let x = ham_vf(&pi, &h).unwrap();
        prop_assert!(twisted_d(&x, &KForm::function(&h)).unwrap().is_zero());
    }
}

/// The iterate one step before the last need not be Poissonoid: for
/// `xi = q1 q2 d/dq1` the chain is `xi, (p1 q2 + q1 p2) d/dq1, 2 p1 p2 d/dq1, 0`,
/// and `[L_X xi, X] = -2 p1 p2 d/dq1` does not preserve the structure.
#[test]
fn second_to_last_iterate_can_fail() {
    let (c, pi, h) = free_particle();
    let x = ham_vf(&pi, &h).unwrap();
    let xi = VectorField::parse(&c, &["q1*q2", "0", "0", "0"]).unwrap();
    let v = master_symmetry_degree(&x, &xi, 6).unwrap();
    assert_eq!(v.degree, Some(2));
    assert_eq!(
        v.iterates[2],
        VectorField::parse(&c, &["2*p1*p2", "0", "0", "0"]).unwrap()
    );
    let bracket = lie_bracket(&v.iterates[1], &x).unwrap();
    // On R^4 with a symplectic structure, Hamiltonian iff L_Y pi = 0, at any degree.
    assert!(!lie_bivector(&bracket, &pi).unwrap().is_zero());
    assert_eq!(
        infinitesimal_poissonoid_check(&pi, &x, &v.iterates[1], 4).unwrap(),
        None
    );
}
