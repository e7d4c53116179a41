use num_traits::{Signed, Zero};
use serde::Serialize;

use super::models::{clebsch_hamiltonian, e3, e3_casimir_c1, e3_chart, eta_tilde, f_chart};
use super::{compatible, is_poisson};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::polyalg::{format_rational, frac, int, parse_poly, sqrt_exact, Polynomial, Rational};
use crate::tensorcalc::{df, ham_vf, pullback_bivector, pullback_function, sharp};

#[derive(Clone, Debug, PartialEq)]
pub struct KirchhoffParams {
    pub omega: [Rational; 3],
    pub eps: Rational,
    pub a: Rational,
}

/// The matrix `M` with `(p, m) = M F`, together with `A`, `B`, `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct KirchhoffMatrix {
    pub m: RationalMatrix,
    pub big_a: Rational,
    pub big_b: Rational,
    pub big_c: Rational,
}

pub fn kirchhoff_matrix(params: &KirchhoffParams) -> Result<KirchhoffMatrix> {
    let [w1, w2, w3] = &params.omega;
    if !(w1 > w2 && w2 > w3 && !w3.is_negative()) {
        return Err(Error::InvalidParameter("need w1 > w2 > w3 >= 0".into()));
    }
    let (eps, a) = (&params.eps, &params.a);
    if eps.is_zero() || a.is_zero() {
        return Err(Error::InvalidParameter("eps and a must be nonzero".into()));
    }
    let a2 = w1 - w2;
    let b2 = &(w1 - w3) - &(&(eps * eps) * &int(4));
    let big_a = sqrt_exact(&a2).ok_or_else(|| {
        Error::InvalidParameter(format!("w1 - w2 = {} is not a rational square", format_rational(&a2)))
    })?;
    let big_b = sqrt_exact(&b2).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "w1 - w3 - 4 eps^2 = {} is not a rational square",
            format_rational(&b2)
        ))
    })?;
    let big_c = w1 - w3;
    let half = frac(1, 2);
    let a_2e = a / &(eps * &int(2));
    let z = Rational::zero;
    let m = RationalMatrix::from_rows(vec![
        vec![a.clone(), z(), -(&a_2e * &big_b), z(), z(), z()],
        vec![z(), z(), z(), z(), &big_a * &half, z()],
        vec![z(), z(), z(), &big_b * &half, z(), eps.clone()],
        vec![z(), z(), z(), -(eps * &big_a), z(), &(&big_a * &big_b) * &half],
        vec![z(), -(&a_2e * &big_c), z(), z(), z(), z()],
        vec![-(&a_2e * &(&big_a * &big_b)), z(), -(a * &big_a), z(), z(), z()],
    ])?;
    Ok(KirchhoffMatrix { m, big_a, big_b, big_c })
}

#[derive(Clone, Debug, Serialize)]
pub struct KirchhoffReport {
    #[serde(rename = "A")]
    pub big_a: String,
    #[serde(rename = "B")]
    pub big_b: String,
    #[serde(rename = "C")]
    pub big_c: String,
    pub matrix: Vec<Vec<String>>,
    pub det: String,
    pub expected_det: String,
    pub det_matches: bool,
    /// `f* pi_F = -1/2 eta~` entrywise.
    pub pullback_matches: bool,
    /// `C1` written in the `F` coordinates.
    pub c1_in_f: String,
    pub c1_matches_expansion: bool,
    /// `X = (f* pi_F) # dC1`.
    pub vector_field_certificate: bool,
    pub eta_is_poisson: bool,
    pub eta_compatible: bool,
    /// `X = eta~ # d(-1/2 C1)`.
    pub eta_hamiltonian: bool,
}

impl KirchhoffReport {
    pub fn passed(&self) -> bool {
        self.det_matches
            && self.pullback_matches
            && self.c1_matches_expansion
            && self.vector_field_certificate
            && self.eta_is_poisson
            && self.eta_compatible
            && self.eta_hamiltonian
    }
}

/// `a^2 F1^2 + (aB/2e)^2 F3^2 + B^2/4 F4^2 + A^2/4 F5^2 + e^2 F6^2 - (a^2/e) B F1 F3 + e B F4 F6`.
fn printed_c1(params: &KirchhoffParams, km: &KirchhoffMatrix) -> Result<Polynomial> {
    let (a, e, b, aa) = (&params.a, &params.eps, &km.big_b, &km.big_a);
    let q = |r: Rational| format_rational(&r);
    let a_b_2e = &(a * b) / &(e * &int(2));
    let text = format!(
        "({})*F1^2 + ({})*F3^2 + ({})*F4^2 + ({})*F5^2 + ({})*F6^2 - ({})*F1*F3 + ({})*F4*F6",
        q(a * a),
        q(&a_b_2e * &a_b_2e),
        q(&(b * b) / &int(4)),
        q(&(aa * aa) / &int(4)),
        q(e * e),
        q(&(&(a * a) / e) * b),
        q(e * b),
    );
    parse_poly(&text, &f_chart())
}

pub fn kirchhoff_certificate(params: &KirchhoffParams) -> Result<KirchhoffReport> {
    let km = kirchhoff_matrix(params)?;
    let x_chart = e3_chart();
    let f = f_chart();
    let pi_f = e3(&f)?.relabel(&x_chart)?;
    let m_inv = km.m.inverse()?;
    // f(x) = M^-1 x, so f* pi_F = M pi_F(M^-1 x) M^t.
    let pulled = pullback_bivector(&m_inv, &pi_f)?;
    let eta = eta_tilde(&x_chart, &params.omega)?;
    let pullback_matches = pulled == eta.scale(&frac(-1, 2));

    let det = km.m.det()?;
    let base = &(&(&params.a * &km.big_a) * &km.big_c) / &(&params.eps * &int(4));
    let expected_det = -(&(&base * &base) * &base);

    let c1 = e3_casimir_c1(&x_chart)?;
    let c1_in_f = c1.compose_linear(&km.m)?.relabel(&f)?;
    let c1_matches_expansion = c1_in_f == printed_c1(params, &km)?;

    let h1 = clebsch_hamiltonian(&x_chart, &params.omega)?;
    let pi = e3(&x_chart)?;
    let x = ham_vf(&pi, &h1)?;
    let k_back = pullback_function(&m_inv, &c1_in_f.relabel(&x_chart)?)?;
    let vector_field_certificate = sharp(&pulled, &df(&k_back))? == x;

    let eta_is_poisson = is_poisson(&eta);
    let eta_compatible = eta_is_poisson && compatible(&pi, &eta)?;
    let eta_hamiltonian = ham_vf(&eta, &c1.scale(&frac(-1, 2)))? == x;

    Ok(KirchhoffReport {
        big_a: format_rational(&km.big_a),
        big_b: format_rational(&km.big_b),
        big_c: format_rational(&km.big_c),
        matrix: km.m.to_strings(),
        det_matches: det == expected_det,
        det: format_rational(&det),
        expected_det: format_rational(&expected_det),
        pullback_matches,
        c1_in_f: c1_in_f.to_string(),
        c1_matches_expansion,
        vector_field_certificate,
        eta_is_poisson,
        eta_compatible,
        eta_hamiltonian,
    })
}
