//! Shared strategies and brute-force oracles for the property suites.
#![allow(dead_code)]

use pcx_core::linalg::RationalMatrix;
use pcx_core::poissonoid::models::{e3, e3_chart, eta_tilde, so3, so3_chart, so4, so4_chart};
use pcx_core::polyalg::{frac, int, Chart, Monomial, Polynomial, Rational};
use pcx_core::tensorcalc::{Bivector, KForm, VectorField};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=3, any::<bool>()).prop_map(|(n, d, neg)| frac(if neg { -n } else { n }, d))
}

/// Random polynomial of total degree at most `max_deg` with up to `max_terms` terms.
pub fn poly(chart: Chart, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let dim = chart.dim();
    prop::collection::vec((rational(), prop::collection::vec(0..=max_deg, dim)), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(
            &chart,
            terms.into_iter().map(|(c, mut e)| {
                // Trim exponents from the back until the degree fits.
                let mut i = e.len();
                while e.iter().sum::<u32>() > max_deg {
                    i = if i == 0 { e.len() - 1 } else { i - 1 };
                    e[i] = e[i].saturating_sub(1);
                }
                (Monomial::from_exponents(e), c)
            }),
        )
    })
}

pub fn field(chart: Chart, max_deg: u32) -> impl Strategy<Value = VectorField> {
    let dim = chart.dim();
    prop::collection::vec(poly(chart.clone(), max_deg, 3), dim).prop_map(move |c| VectorField::new(&chart, c).unwrap())
}

pub fn one_form(chart: Chart, max_deg: u32) -> impl Strategy<Value = KForm> {
    let dim = chart.dim();
    prop::collection::vec(poly(chart.clone(), max_deg, 3), dim).prop_map(move |c| KForm::one_form(&chart, c).unwrap())
}

pub fn canonical_standard(n: usize) -> (Chart, Bivector) {
    let c = Chart::canonical(n);
    let pi = Bivector::standard(&c).unwrap();
    (c, pi)
}

/// The five Poisson structures used throughout the suites.
pub fn structures() -> Vec<(&'static str, Bivector)> {
    let (_, std4) = canonical_standard(2);
    vec![
        ("standard", std4),
        ("so3", so3(&so3_chart()).unwrap()),
        ("so4", so4(&so4_chart()).unwrap()),
        ("e3", e3(&e3_chart()).unwrap()),
        ("eta_tilde", eta_tilde(&e3_chart(), &[int(6), int(2), int(1)]).unwrap()),
    ]
}

/// One corrupted variant of each structure: an entry pair is replaced by
/// something that breaks the Jacobi identity.
pub fn corrupted() -> Vec<(&'static str, Bivector)> {
    let var = |pi: &Bivector, name: &str| Polynomial::var_named(pi.chart(), name).unwrap();
    structures()
        .into_iter()
        .map(|(name, pi)| {
            let bad = match name {
                // A constant structure stays Poisson under sign flips, so make one entry linear.
                "standard" => pi.with_entry(0, 2, var(&pi, "q2")).unwrap(),
                "so3" => pi.with_entry(0, 1, -var(&pi, "m1")).unwrap(),
                "so4" => pi.with_entry(0, 1, var(&pi, "m23")).unwrap(),
                "e3" => pi.with_entry(3, 4, var(&pi, "m3")).unwrap(),
                "eta_tilde" => pi.with_entry(1, 3, var(&pi, "p2")).unwrap(),
                _ => unreachable!(),
            };
            (name, bad)
        })
        .collect()
}

/// `{f, g} = sum_ij pi^ij d_i f d_j g`, straight from the entries.
pub fn bracket(pi: &Bivector, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = pi.chart().dim();
    let mut out = Polynomial::zero(pi.chart());
    for i in 0..n {
        for j in 0..n {
            out += &(&(pi.entry(i, j) * &f.diff_index(i)) * &g.diff_index(j));
        }
    }
    out
}

pub fn cyclic(pi: &Bivector, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Polynomial {
    let a = bracket(pi, &bracket(pi, f, g), h);
    let b = bracket(pi, &bracket(pi, g, h), f);
    let c = bracket(pi, &bracket(pi, h, f), g);
    &(&a + &b) + &c
}

/// All coordinate Jacobiators vanish.
pub fn jacobi_by_brute_force(pi: &Bivector) -> bool {
    let c = pi.chart();
    let n = c.dim();
    let x: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(c, i)).collect();
    (0..n).all(|i| (i + 1..n).all(|j| (j + 1..n).all(|k| cyclic(pi, &x[i], &x[j], &x[k]).is_zero())))
}

/// `X[f] = sum_i X^i d_i f`.
pub fn apply(x: &VectorField, f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(x.chart());
    for (i, xi) in x.components().iter().enumerate() {
        out += &(xi * &f.diff_index(i));
    }
    out
}

/// `(L_X a)_k = sum_j X^j d_j a_k + a_j d_k X^j`.
pub fn lie_one_form(x: &VectorField, a: &[Polynomial]) -> Vec<Polynomial> {
    let n = a.len();
    (0..n)
        .map(|k| {
            let mut out = apply(x, &a[k]);
            for j in 0..n {
                out += &(&a[j] * &x.component(j).diff_index(k));
            }
            out
        })
        .collect()
}

/// `(L_X w)_ij = X[w_ij] + sum_l w_lj d_i X^l + w_il d_j X^l` on a full matrix.
pub fn lie_two_form(x: &VectorField, w: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let n = w.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut out = apply(x, &w[i][j]);
                    for l in 0..n {
                        out += &(&w[l][j] * &x.component(l).diff_index(i));
                        out += &(&w[i][l] * &x.component(l).diff_index(j));
                    }
                    out
                })
                .collect()
        })
        .collect()
}

/// `(pi # a)^i = sum_j pi^ij a_j`.
pub fn sharp_of(pi: &Bivector, a: &[Polynomial]) -> Vec<Polynomial> {
    let n = a.len();
    (0..n)
        .map(|i| {
            let mut out = Polynomial::zero(pi.chart());
            for (j, aj) in a.iter().enumerate() {
                out += &(pi.entry(i, j) * aj);
            }
            out
        })
        .collect()
}

pub fn grad(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.chart().dim()).map(|i| f.diff_index(i)).collect()
}

/// Invertible integer matrices as products of elementary row operations.
pub fn unimodular(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 1..6).prop_map(move |ops| {
        let mut a = RationalMatrix::identity(n);
        for (i, j, c) in ops {
            if i == j {
                continue;
            }
            let mut e = RationalMatrix::identity(n);
            e[(i, j)] = int(c);
            a = &e * &a;
        }
        a
    })
}

/// Invertible diagonal-times-unimodular matrices.
pub fn invertible(n: usize) -> impl Strategy<Value = RationalMatrix> {
    (unimodular(n), prop::collection::vec(nonzero_rational(), n)).prop_map(|(u, d)| &RationalMatrix::diagonal(&d) * &u)
}
