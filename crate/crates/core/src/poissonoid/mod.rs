//! Poissonoid checks on polynomial Poisson manifolds.
//!
//! # Key Operations
//!
//! - [`is_poisson`], [`compatible`]: Schouten-bracket tests
//! - [`hamiltonize`]: solve `pi # dK = X` over polynomials of bounded degree
//! - [`casimirs`]: the kernel of the same system
//! - [`check_poissonoid_linear`]: push `X` forward, pull `pi` back, hamiltonize
//! - [`kirchhoff_certificate`]: the 6x6 transformation of the Clebsch case
//!
//! # Design Notes
//!
//! The unknowns of [`hamiltonize`] are the coefficients of all monomials of
//! degree `1..=deg`, ordered by descending graded-lex. The returned `K` is the
//! particular solution with every free coefficient zero, so it is unique for a
//! given input and has no constant term. Solutions differ by Casimirs, which
//! are reported separately in `kernel_basis`.

mod kirchhoff;
pub mod models;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{in_span, reduced_basis, solve_affine, RationalMatrix};
use crate::polyalg::{Monomial, Polynomial, Rational};
use crate::tensorcalc::{
    df, ham_vf, lie_bivector, poisson_bracket, pullback_bivector, pullback_function, pushforward_vf, schouten, sharp,
    Bivector, VectorField,
};

pub use kirchhoff::{kirchhoff_certificate, kirchhoff_matrix, KirchhoffParams, KirchhoffReport};

pub fn is_poisson(pi: &Bivector) -> bool {
    schouten(pi, pi).expect("same chart").is_zero()
}

/// `[pi1, pi2] = 0` for two Poisson bivectors.
pub fn compatible(pi1: &Bivector, pi2: &Bivector) -> Result<bool> {
    pi1.chart().ensure_same(pi2.chart())?;
    for (name, p) in [("first", pi1), ("second", pi2)] {
        if !is_poisson(p) {
            return Err(Error::NotPoisson(format!("{name} bivector fails the Jacobi identity")));
        }
    }
    Ok(schouten(pi1, pi2)?.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonizeStatus {
    UniqueUpToKernel,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonizeResult {
    pub status: HamiltonizeStatus,
    pub k: Option<Polynomial>,
    pub kernel_basis: Vec<Polynomial>,
    pub degree_bound: u32,
}

impl HamiltonizeResult {
    pub fn is_feasible(&self) -> bool {
        self.status == HamiltonizeStatus::UniqueUpToKernel
    }

    /// Whether `candidate` solves the same system, i.e. differs from `k` by a
    /// kernel element plus a constant.
    pub fn admits(&self, candidate: &Polynomial) -> bool {
        let Some(k) = &self.k else { return false };
        if k.chart() != candidate.chart() {
            return false;
        }
        let diff = candidate - k;
        let diff = &diff - &Polynomial::constant(k.chart(), diff.constant_term());
        if diff.degree().is_some_and(|d| d > self.degree_bound) {
            return false;
        }
        let monos = Monomial::all_of_degree(k.chart().dim(), 1, self.degree_bound);
        let coords = |p: &Polynomial| monos.iter().map(|m| p.coefficient(m)).collect::<Vec<_>>();
        let basis: Vec<Vec<Rational>> = self.kernel_basis.iter().map(coords).collect();
        in_span(&basis, &coords(&diff))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "status": self.status,
            "K": self.k.as_ref().map(ToString::to_string),
            "kernel_basis": self.kernel_basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "degree_bound": self.degree_bound,
        })
    }
}

/// Solve `pi # dK = X` for `K` of total degree at most `deg`.
pub fn hamiltonize(pi: &Bivector, x: &VectorField, deg: u32) -> Result<HamiltonizeResult> {
    if deg < 1 {
        return Err(Error::InvalidParameter("degree bound must be at least 1".into()));
    }
    let chart = pi.chart();
    chart.ensure_same(x.chart())?;
    let monos = Monomial::all_of_degree(chart.dim(), 1, deg);
    let columns = monos
        .iter()
        .map(|m| {
            ham_vf(
                pi,
                &Polynomial::monomial(chart, m.clone(), Rational::from_integer(1.into())),
            )
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let fields = columns.iter().chain(std::iter::once(x));
    for f in fields {
        for (i, comp) in f.components().iter().enumerate() {
            for (m, _) in comp.terms() {
                let next = rows.len();
                rows.entry((i, m.clone())).or_insert(next);
            }
        }
    }
    let mut a = RationalMatrix::zeros(rows.len(), monos.len());
    for (col, f) in columns.iter().enumerate() {
        for (i, comp) in f.components().iter().enumerate() {
            for (m, c) in comp.terms() {
                a[(rows[&(i, m.clone())], col)] = c.clone();
            }
        }
    }
    let mut b = vec![Rational::zero(); rows.len()];
    for (i, comp) in x.components().iter().enumerate() {
        for (m, c) in comp.terms() {
            b[rows[&(i, m.clone())]] = c.clone();
        }
    }

    let to_poly = |v: &[Rational]| Polynomial::from_terms(chart, monos.iter().cloned().zip(v.iter().cloned()));
    let kernel = reduced_basis(&a.nullspace(), monos.len());
    let kernel_basis: Vec<Polynomial> = kernel.iter().map(|v| to_poly(v)).collect();
    let k = solve_affine(&a, &b)?.map(|v| to_poly(&v));
    if let Some(k) = &k {
        if ham_vf(pi, k)? != *x {
            return Err(Error::Internal("hamiltonize solution fails pi # dK = X".into()));
        }
    }
    Ok(HamiltonizeResult {
        status: if k.is_some() {
            HamiltonizeStatus::UniqueUpToKernel
        } else {
            HamiltonizeStatus::Infeasible
        },
        k,
        kernel_basis,
        degree_bound: deg,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CasimirBasis {
    pub degree_bound: u32,
    pub basis: Vec<Polynomial>,
}

/// Nonconstant polynomial Casimirs up to degree `deg`, in reduced form.
pub fn casimirs(pi: &Bivector, deg: u32) -> Result<CasimirBasis> {
    let r = hamiltonize(pi, &VectorField::zero(pi.chart()), deg)?;
    Ok(CasimirBasis {
        degree_bound: deg,
        basis: r.kernel_basis,
    })
}

/// `{F, H} = 0`.
pub fn constant_of_motion_check(pi: &Bivector, h: &Polynomial, f: &Polynomial) -> Result<bool> {
    Ok(poisson_bracket(pi, f, h)?.is_zero())
}

/// `L_X pi = 0`.
pub fn poisson_vf_check(pi: &Bivector, x: &VectorField) -> Result<bool> {
    Ok(lie_bivector(x, pi)?.is_zero())
}

#[derive(Clone, Debug)]
pub struct PoissonoidReport {
    pub vector_field: VectorField,
    pub pushed: VectorField,
    pub pulled: Bivector,
    pub hamiltonize: HamiltonizeResult,
    /// `f* K`, present when `K` was found.
    pub pulled_k: Option<Polynomial>,
    /// `X = (f* pi) # d(f* K)` holds exactly.
    pub certificate: bool,
    pub weakly_poissonoid: bool,
    pub compatible: bool,
}

impl PoissonoidReport {
    pub fn is_poissonoid(&self) -> bool {
        self.hamiltonize.is_feasible() && self.certificate
    }

    pub fn is_bihamiltonian(&self) -> bool {
        self.is_poissonoid() && self.compatible
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "poissonoid": self.is_poissonoid(),
            "bihamiltonian": self.is_bihamiltonian(),
            "weakly_poissonoid": self.weakly_poissonoid,
            "compatible": self.compatible,
            "certificate": self.certificate,
            "X": self.vector_field.to_strings(),
            "pushforward": self.pushed.to_strings(),
            "pullback": self.pulled.to_strings(),
            "hamiltonize": self.hamiltonize.to_json(),
            "pulled_K": self.pulled_k.as_ref().map(ToString::to_string),
        })
    }
}

/// Full check of a linear map `f(x) = A x` against `X = pi # dH`.
///
/// Source and target share chart labels.
pub fn check_poissonoid_linear(
    pi: &Bivector,
    a: &RationalMatrix,
    h: &Polynomial,
    deg: u32,
) -> Result<PoissonoidReport> {
    if !is_poisson(pi) {
        return Err(Error::NotPoisson("source bivector fails the Jacobi identity".into()));
    }
    let x = ham_vf(pi, h)?;
    let pushed = pushforward_vf(a, &x)?;
    let pulled = pullback_bivector(a, pi)?;
    let ham = hamiltonize(pi, &pushed, deg)?;
    let pulled_k = ham.k.as_ref().map(|k| pullback_function(a, k)).transpose()?;
    let certificate = match &pulled_k {
        Some(fk) => sharp(&pulled, &df(fk))? == x,
        None => false,
    };
    let weakly_poissonoid = lie_bivector(&x, &pulled)?.is_zero();
    let compatible = compatible(pi, &pulled)?;
    Ok(PoissonoidReport {
        vector_field: x,
        pushed,
        pulled,
        hamiltonize: ham,
        pulled_k,
        certificate,
        weakly_poissonoid,
        compatible,
    })
}

/// Casimirs of `f* pi` that are constants of motion of `(pi, H)`.
pub fn pulled_casimirs_are_integrals(pi: &Bivector, a: &RationalMatrix, h: &Polynomial, deg: u32) -> Result<bool> {
    let pulled = pullback_bivector(a, pi)?;
    for c in casimirs(&pulled, deg)?.basis {
        if !constant_of_motion_check(pi, h, &c)? {
            return Ok(false);
        }
    }
    Ok(true)
}
