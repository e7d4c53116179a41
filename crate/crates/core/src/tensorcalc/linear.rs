//! Pullback and pushforward along invertible linear maps `f(x) = A x`.
//!
//! Source and target share the chart labels; use `relabel` when a separate
//! naming of the target coordinates is wanted.

use super::bivector::Bivector;
use super::field::VectorField;
use super::form::{increasing_tuples, KForm};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::polyalg::{Chart, Polynomial};

fn check_map(a: &RationalMatrix, chart: &Chart) -> Result<()> {
    let d = chart.dim();
    if a.rows() != d || a.cols() != d {
        return Err(Error::Dimension(format!(
            "map is {}x{}, chart {chart} has dimension {d}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// `L P L^t` for a constant `L` and a polynomial matrix `P`.
fn congruence(l: &RationalMatrix, p: &[Vec<Polynomial>], chart: &Chart) -> Vec<Vec<Polynomial>> {
    let d = p.len();
    let lp: Vec<Vec<Polynomial>> = (0..d)
        .map(|j| {
            (0..d)
                .map(|s| {
                    let mut acc = Polynomial::zero(chart);
                    for r in 0..d {
                        if !p[r][s].is_zero() {
                            acc += &p[r][s].scale(&l[(j, r)]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    (0..d)
        .map(|j| {
            (0..d)
                .map(|k| {
                    let mut acc = Polynomial::zero(chart);
                    for s in 0..d {
                        if !lp[j][s].is_zero() {
                            acc += &lp[j][s].scale(&l[(k, s)]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `(f*pi)^{jk}(x) = (A^-1)^j_r (A^-1)^k_s pi^{rs}(A x)`.
pub fn pullback_bivector(a: &RationalMatrix, pi: &Bivector) -> Result<Bivector> {
    check_map(a, pi.chart())?;
    let inv = a.inverse()?;
    let composed = pi
        .rows()
        .iter()
        .map(|r| r.iter().map(|p| p.compose_linear(a)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Bivector::new(pi.chart(), congruence(&inv, &composed, pi.chart()))
}

/// `(f*rho)_J(x) = sum_R rho_R(A x) det A[R, J]` for increasing tuples.
pub fn pullback_form(a: &RationalMatrix, rho: &KForm) -> Result<KForm> {
    let chart = rho.chart();
    check_map(a, chart)?;
    let k = rho.degree();
    let targets = increasing_tuples(chart.dim(), k);
    let mut entries = Vec::new();
    for (r, coeff) in rho.entries() {
        let composed = coeff.compose_linear(a)?;
        for j in &targets {
            let minor = minor(a, r, j)?;
            if num_traits::Zero::is_zero(&minor) {
                continue;
            }
            entries.push((j.clone(), composed.scale(&minor)));
        }
    }
    KForm::from_entries(chart, k, entries)
}

fn minor(a: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Result<crate::polyalg::Rational> {
    if rows.is_empty() {
        return Ok(crate::polyalg::int(1));
    }
    let m = RationalMatrix::from_rows(
        rows.iter()
            .map(|&r| cols.iter().map(|&c| a[(r, c)].clone()).collect())
            .collect(),
    )?;
    m.det()
}

/// `(f_* X)(y) = A X(A^-1 y)`.
pub fn pushforward_vf(a: &RationalMatrix, x: &VectorField) -> Result<VectorField> {
    let chart = x.chart();
    check_map(a, chart)?;
    let inv = a.inverse()?;
    let composed = x
        .components()
        .iter()
        .map(|p| p.compose_linear(&inv))
        .collect::<Result<Vec<_>>>()?;
    let d = chart.dim();
    let comps = (0..d)
        .map(|i| {
            let mut acc = Polynomial::zero(chart);
            for j in 0..d {
                if !composed[j].is_zero() {
                    acc += &composed[j].scale(&a[(i, j)]);
                }
            }
            acc
        })
        .collect();
    VectorField::new(chart, comps)
}

/// `f* F = F(A x)`.
pub fn pullback_function(a: &RationalMatrix, f: &Polynomial) -> Result<Polynomial> {
    check_map(a, f.chart())?;
    f.compose_linear(a)
}
