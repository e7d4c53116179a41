//! Linear canonoid transformations of `R^{2n}` with the standard structure.
//!
//! A linear map `X = A x` is canonoid for `H = 1/2 x^t S x` when
//! `Gamma^t J S + S J Gamma = 0` with `Gamma = A^t J A`. It is canonical when
//! `Gamma = a J` for a nonzero scalar `a`.
//!
//! # Key Operations
//!
//! - [`check_canonoid`]: the condition plus the transformed matrix `C`
//! - [`gamma_nullspace`]: all admissible `Gamma` for a given `S`
//! - [`transformed_hamiltonian`], [`omega2`]: `K`, `H2` and the new 2-form
//! - [`rescaling_check`]: the diagonal special case `BS = SB`

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
pub use crate::linalg::RationalMatrix;
use crate::linalg::{in_span, reduced_basis};
use crate::polyalg::{format_rational, Chart, Monomial, Polynomial, Rational};
use crate::tensorcalc::KForm;

/// `[[0, I], [-I, 0]]` of size `2n`.
pub fn standard_j(n: usize) -> RationalMatrix {
    assert!(n >= 1, "standard_j needs n >= 1");
    let i = RationalMatrix::identity(n);
    let z = RationalMatrix::zeros(n, n);
    RationalMatrix::from_blocks(&z, &i, &(-&i), &z).expect("square blocks")
}

#[derive(Clone, Debug, PartialEq)]
pub struct CanonoidVerdict {
    pub is_canonoid: bool,
    pub is_canonical: bool,
    pub gamma: RationalMatrix,
    pub c: Option<RationalMatrix>,
    pub scale_a: Option<Rational>,
}

fn half_dim(m: &RationalMatrix, what: &str) -> Result<usize> {
    if !m.is_square() || m.rows() == 0 || !m.rows().is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "{what} must be 2n x 2n, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.rows() / 2)
}

/// `Some(a)` when `gamma = a J` with `a != 0`.
fn scale_of_j(gamma: &RationalMatrix, j: &RationalMatrix) -> Option<Rational> {
    let n = j.rows() / 2;
    let a = gamma[(0, n)].clone();
    if a.is_zero() || *gamma != j.scale(&a) {
        return None;
    }
    Some(a)
}

/// `Gamma^t J S + S J Gamma`.
fn condition_residual(gamma: &RationalMatrix, s: &RationalMatrix, j: &RationalMatrix) -> RationalMatrix {
    &(&(&gamma.transpose() * j) * s) + &(&(s * j) * gamma)
}

pub fn check_canonoid(a: &RationalMatrix, s: &RationalMatrix) -> Result<CanonoidVerdict> {
    let n = half_dim(a, "A")?;
    if half_dim(s, "S")? != n {
        return Err(Error::Dimension("A and S must have the same size".into()));
    }
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let a_inv = a.inverse()?;
    let j = standard_j(n);
    let gamma = &(&a.transpose() * &j) * a;
    let scale_a = scale_of_j(&gamma, &j);
    let is_canonoid = condition_residual(&gamma, s, &j).is_zero();
    let c = if is_canonoid {
        let ajsa = &(&(a * &j) * s) * &a_inv;
        let c = -&(&j * &ajsa);
        if !c.is_symmetric() {
            return Err(Error::Internal(format!(
                "C = {c} is not symmetric although (3.1) holds"
            )));
        }
        if ajsa != &j * &c {
            return Err(Error::Internal("A J S A^-1 differs from J C".into()));
        }
        Some(c)
    } else {
        None
    };
    Ok(CanonoidVerdict {
        is_canonoid,
        is_canonical: scale_a.is_some(),
        gamma,
        c,
        scale_a,
    })
}

/// Antisymmetric coordinates `(i, j)`, `i < j`, in graded-lex order.
fn antisym_coords(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()
}

fn antisym_from_coords(d: usize, v: &[Rational]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(d, d);
    for (k, &(i, j)) in antisym_coords(d).iter().enumerate() {
        m[(i, j)] = v[k].clone();
        m[(j, i)] = -v[k].clone();
    }
    m
}

fn antisym_to_coords(m: &RationalMatrix) -> Vec<Rational> {
    antisym_coords(m.rows())
        .iter()
        .map(|&(i, j)| m[(i, j)].clone())
        .collect()
}

/// Basis of `{Gamma antisymmetric : Gamma^t J S + S J Gamma = 0}`, reduced
/// row-echelon over the `n(2n-1)` antisymmetric coordinates.
pub fn gamma_nullspace(s: &RationalMatrix) -> Result<Vec<RationalMatrix>> {
    let n = half_dim(s, "S")?;
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let d = 2 * n;
    let j = standard_j(n);
    let coords = antisym_coords(d);
    // Column k of the system is the residual of the k-th unit antisymmetric Gamma.
    let mut system = RationalMatrix::zeros(d * d, coords.len());
    for k in 0..coords.len() {
        let mut e = vec![Rational::zero(); coords.len()];
        e[k] = Rational::one();
        let r = condition_residual(&antisym_from_coords(d, &e), s, &j);
        for row in 0..d {
            for col in 0..d {
                system[(row * d + col, k)] = r[(row, col)].clone();
            }
        }
    }
    let basis = reduced_basis(&system.nullspace(), coords.len());
    Ok(basis.iter().map(|v| antisym_from_coords(d, v)).collect())
}

/// Whether `gamma` is antisymmetric and lies in the span of a Gamma basis.
pub fn gamma_in_span(basis: &[RationalMatrix], gamma: &RationalMatrix) -> bool {
    if !gamma.is_antisymmetric() || basis.iter().any(|b| b.rows() != gamma.rows()) {
        return false;
    }
    let vecs: Vec<Vec<Rational>> = basis.iter().map(antisym_to_coords).collect();
    in_span(&vecs, &antisym_to_coords(gamma))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformedHamiltonian {
    pub c: RationalMatrix,
    /// `K = 1/2 X^t C X` over `Q.., P..`.
    pub k: Polynomial,
    /// `H2 = K(A x) = 1/2 x^t (A^t C A) x` over `q.., p..`.
    pub h2: Polynomial,
}

/// `1/2 x^t M x` over `chart`.
pub fn quadratic_form(chart: &Chart, m: &RationalMatrix) -> Result<Polynomial> {
    let d = chart.dim();
    if m.rows() != d || m.cols() != d {
        return Err(Error::Dimension("quadratic form size".into()));
    }
    let half = Rational::new(1.into(), 2.into());
    let mut terms = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut e = vec![0u32; d];
            e[i] += 1;
            e[j] += 1;
            terms.push((Monomial::from_exponents(e), &m[(i, j)] * &half));
        }
    }
    Ok(Polynomial::from_terms(chart, terms))
}

/// Symmetric `S` with `H = 1/2 x^t S x`; fails unless `H` is a pure quadratic form.
pub fn hessian(h: &Polynomial) -> Result<RationalMatrix> {
    let d = h.chart().dim();
    if h.terms().any(|(m, _)| m.degree() != 2) {
        return Err(Error::InvalidParameter(format!("`{h}` is not a homogeneous quadratic")));
    }
    let mut s = RationalMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            s[(i, j)] = h.diff_index(i).diff_index(j).constant_term();
        }
    }
    Ok(s)
}

pub fn transformed_hamiltonian(a: &RationalMatrix, s: &RationalMatrix) -> Result<TransformedHamiltonian> {
    let verdict = check_canonoid(a, s)?;
    let n = a.rows() / 2;
    let Some(c) = verdict.c else {
        return Err(Error::Hypothesis(
            "the transformation is not canonoid for this S".into(),
        ));
    };
    let k = quadratic_form(&Chart::canonical_upper(n), &c)?;
    let h2 = quadratic_form(&Chart::canonical(n), &(&(&a.transpose() * &c) * a))?;
    Ok(TransformedHamiltonian { c, k, h2 })
}

/// Constant 2-form with matrix `A^t J A` on `q.., p..`.
pub fn omega2(a: &RationalMatrix) -> Result<KForm> {
    let n = half_dim(a, "A")?;
    if a.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let j = standard_j(n);
    KForm::from_constant_matrix(&Chart::canonical(n), &(&(&a.transpose() * &j) * a))
}

/// Diagonal rescaling `Q_i = a_i q_i, P_i = b_i p_i`: canonoid iff `BS = SB`
/// with `B = diag(-a b, -a b)`.
pub fn rescaling_check(a: &[Rational], b: &[Rational], s: &RationalMatrix) -> Result<bool> {
    let n = a.len();
    if b.len() != n || half_dim(s, "S")? != n {
        return Err(Error::Dimension("scale vectors must have length n".into()));
    }
    if a.iter().chain(b).any(Zero::is_zero) {
        return Err(Error::InvalidParameter("zero scale factor".into()));
    }
    let ab: Vec<Rational> = a.iter().zip(b).map(|(x, y)| -(x * y)).collect();
    let doubled: Vec<Rational> = ab.iter().chain(&ab).cloned().collect();
    let bm = RationalMatrix::diagonal(&doubled);
    Ok(&bm * s == s * &bm)
}

/// JSON-friendly view of a verdict plus the derived Hamiltonian data.
#[derive(Clone, Debug, Serialize)]
pub struct CanonoidReport {
    pub is_canonoid: bool,
    pub is_canonical: bool,
    pub gamma: Vec<Vec<String>>,
    #[serde(rename = "C")]
    pub c: Option<Vec<Vec<String>>>,
    pub scale_a: Option<String>,
    #[serde(rename = "K")]
    pub k: Option<String>,
    #[serde(rename = "H2")]
    pub h2: Option<String>,
    pub omega2: Vec<Vec<String>>,
}

pub fn canonoid_report(a: &RationalMatrix, s: &RationalMatrix) -> Result<CanonoidReport> {
    let v = check_canonoid(a, s)?;
    let th = if v.is_canonoid {
        Some(transformed_hamiltonian(a, s)?)
    } else {
        None
    };
    Ok(CanonoidReport {
        is_canonoid: v.is_canonoid,
        is_canonical: v.is_canonical,
        omega2: v.gamma.to_strings(),
        gamma: v.gamma.to_strings(),
        c: v.c.as_ref().map(RationalMatrix::to_strings),
        scale_a: v.scale_a.as_ref().map(format_rational),
        k: th.as_ref().map(|t| t.k.to_string()),
        h2: th.as_ref().map(|t| t.h2.to_string()),
    })
}
