//! Whittaker generators: 1-forms `Theta` with `L_X Theta = 0` (absolute) or
//! `L_X dTheta = 0` (relative), and the Hamiltonian `K = i_X Theta` they induce.
//!
//! Only verification is offered. Whether `Theta = P_i dQ^i` in some chart is
//! not decided, so reports carry `certificate_only`.

use std::collections::HashMap;

use serde_json::json;

use crate::error::{Error, Result};
use crate::polyalg::Polynomial;
use crate::tensorcalc::{d, df, interior, lie_form, liouville_form, KForm, VectorField};

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorReport {
    pub absolute: bool,
    pub relative: bool,
    pub k: Polynomial,
    pub d_theta: KForm,
    /// Determinant of the coefficient matrix of `dTheta`.
    pub determinant: Polynomial,
    pub nondegenerate: bool,
    pub is_identity_shift: bool,
    /// `i_X(-dTheta) = dK`; checked only for nondegenerate absolute generators.
    pub certificate: Option<bool>,
}

impl GeneratorReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "absolute": self.absolute,
            "relative": self.relative,
            "K": self.k.to_string(),
            "dTheta": self.d_theta.matrix().map(|m| m.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()).ok(),
            "determinant": self.determinant.to_string(),
            "nondegenerate": self.nondegenerate,
            "is_identity_shift": self.is_identity_shift,
            "certificate": self.certificate,
            "certificate_only": true,
        })
    }
}

fn check_inputs(x: &VectorField, theta: &KForm) -> Result<()> {
    x.chart().ensure_same(theta.chart())?;
    if theta.degree() != 1 {
        return Err(Error::Degree {
            op: "generator check",
            degree: theta.degree(),
        });
    }
    Ok(())
}

pub fn generator_check(x: &VectorField, theta: &KForm) -> Result<GeneratorReport> {
    check_inputs(x, theta)?;
    let chart = x.chart();
    if !chart.dim().is_multiple_of(2) {
        return Err(Error::Dimension(format!("{chart} is odd-dimensional")));
    }
    let absolute = lie_form(x, theta)?.is_zero();
    let d_theta = d(theta)?;
    let relative = lie_form(x, &d_theta)?.is_zero();
    // Second evaluation order: dTheta is closed, so L_X dTheta = d(i_X dTheta).
    if relative != d(&interior(x, &d_theta)?)?.is_zero() {
        return Err(Error::Internal("L_X dTheta and d i_X dTheta disagree".into()));
    }
    let k = interior(x, theta)?.as_function()?;
    let determinant = poly_det(&d_theta.matrix()?);
    let nondegenerate = !determinant.is_zero();
    let certificate = if absolute && nondegenerate {
        Some(interior(x, &d_theta.neg())? == df(&k))
    } else {
        None
    };
    let is_identity_shift = d(&theta.checked_sub(&liouville_form(chart)?)?)?.is_zero();
    Ok(GeneratorReport {
        absolute,
        relative,
        k,
        d_theta,
        determinant,
        nondegenerate,
        is_identity_shift,
        certificate,
    })
}

/// Components of `L_X Theta`; all zero iff `Theta` is an absolute generator.
pub fn integrability_probe(x: &VectorField, theta: &KForm) -> Result<Vec<Polynomial>> {
    check_inputs(x, theta)?;
    lie_form(x, theta)?.components()
}

/// Determinant of a square polynomial matrix by Laplace expansion along rows,
/// memoized on the set of remaining columns.
pub fn poly_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    assert!(n > 0 && n < 64, "poly_det needs 1..64 rows");
    let chart = m[0][0].chart().clone();
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    return rec(m, 0, (1u64 << n) - 1, &chart, &mut memo);

    fn rec(
        m: &[Vec<Polynomial>],
        row: usize,
        cols: u64,
        chart: &crate::polyalg::Chart,
        memo: &mut HashMap<u64, Polynomial>,
    ) -> Polynomial {
        if cols == 0 {
            return Polynomial::one(chart);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(chart);
        let mut sign_neg = false;
        for c in 0..m.len() {
            if cols & (1 << c) == 0 {
                continue;
            }
            let entry = &m[row][c];
            if !entry.is_zero() {
                let minor = rec(m, row + 1, cols & !(1 << c), chart, memo);
                let t = entry * &minor;
                if sign_neg {
                    acc -= &t;
                } else {
                    acc += &t;
                }
            }
            sign_neg = !sign_neg;
        }
        memo.insert(cols, acc.clone());
        acc
    }
}
