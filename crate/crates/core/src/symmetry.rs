//! Infinitesimal Poissonoid transformations and master symmetries.
//!
//! # Key Operations
//!
//! - [`twisted_d`] (`d i_X d`) and [`twisted_boundary`] (`i_X d i_X`)
//! - [`master_symmetry_degree`]: first `m` with `L_X^{m+1} xi = 0`
//! - [`master_generator_check`]: the same question for a function `T`
//! - [`beta_sharp_master_check`]: compares `beta#` with `i_X beta`

use serde_json::json;

use crate::error::{Error, Result};
use crate::poissonoid::{hamiltonize, is_poisson};
use crate::polyalg::Polynomial;
use crate::tensorcalc::{d, interior, lie_bivector, lie_bracket, sharp, Bivector, KForm, VectorField};

/// `d_X = d i_X d` on forms of degree 0..=2.
pub fn twisted_d(x: &VectorField, f: &KForm) -> Result<KForm> {
    if f.degree() > 2 {
        return Err(Error::Degree {
            op: "twisted d",
            degree: f.degree(),
        });
    }
    d(&interior(x, &d(f)?)?)
}

/// `del_X = i_X d i_X` on forms of degree at least 1.
pub fn twisted_boundary(x: &VectorField, f: &KForm) -> Result<KForm> {
    if f.degree() == 0 {
        return Err(Error::Degree {
            op: "twisted boundary",
            degree: 0,
        });
    }
    interior(x, &d(&interior(x, f)?)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MasterSymmetryVerdict {
    pub degree: Option<usize>,
    /// `xi, L_X xi, L_X^2 xi, ...` up to the first zero or the probe bound.
    pub iterates: Vec<VectorField>,
}

impl MasterSymmetryVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "degree": self.degree,
            "iterates": self.iterates.iter().map(VectorField::to_strings).collect::<Vec<_>>(),
        })
    }
}

/// Smallest `m <= max_m` with `L_X^{m+1} xi = 0`.
pub fn master_symmetry_degree(x: &VectorField, xi: &VectorField, max_m: usize) -> Result<MasterSymmetryVerdict> {
    x.chart().ensure_same(xi.chart())?;
    let mut iterates = vec![xi.clone()];
    for m in 0..=max_m {
        let next = lie_bracket(x, &iterates[m])?;
        let done = next.is_zero();
        iterates.push(next);
        if done {
            return Ok(MasterSymmetryVerdict {
                degree: Some(m),
                iterates,
            });
        }
    }
    Ok(MasterSymmetryVerdict { degree: None, iterates })
}

/// `F` with `[xi, X] = pi # dF`, or `None` if no such `F` exists up to `deg`.
pub fn infinitesimal_poissonoid_check(
    pi: &Bivector,
    x: &VectorField,
    xi: &VectorField,
    deg: u32,
) -> Result<Option<Polynomial>> {
    if !is_poisson(pi) {
        return Err(Error::NotPoisson("infinitesimal Poissonoid check".into()));
    }
    Ok(hamiltonize(pi, &lie_bracket(xi, x)?, deg)?.k)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorVerdict {
    /// First `k <= m` with `L_X^{k+1} T = 0`.
    pub constants_degree: Option<usize>,
    /// First `k <= m` with `pi # d(L_X^{k+1} T) = 0`.
    pub hamiltonian_degree: Option<usize>,
    /// `T, X[T], X[X[T]], ...`
    pub iterates: Vec<Polynomial>,
}

impl GeneratorVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "constants_degree": self.constants_degree,
            "hamiltonian_degree": self.hamiltonian_degree,
            "iterates": self.iterates.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

pub fn master_generator_check(pi: &Bivector, x: &VectorField, t: &Polynomial, m: usize) -> Result<GeneratorVerdict> {
    pi.chart().ensure_same(x.chart())?;
    let mut iterates = vec![t.clone()];
    let mut constants_degree = None;
    let mut hamiltonian_degree = None;
    for k in 0..=m {
        let next = x.apply(&iterates[k])?;
        if constants_degree.is_none() && next.is_zero() {
            constants_degree = Some(k);
        }
        if hamiltonian_degree.is_none() && sharp(pi, &crate::tensorcalc::df(&next))?.is_zero() {
            hamiltonian_degree = Some(k);
        }
        iterates.push(next);
        if constants_degree.is_some() {
            break;
        }
    }
    Ok(GeneratorVerdict {
        constants_degree,
        hamiltonian_degree,
        iterates,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BetaSharpVerdict {
    pub master: MasterSymmetryVerdict,
    pub generator: GeneratorVerdict,
    /// `L_X pi = 0`.
    pub x_preserves_pi: bool,
    /// Master degree `m >= 1` goes with generator degree `m - 1`; generator
    /// degree 0 also admits master degree 0.
    pub consistent: bool,
}

impl BetaSharpVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "master_degree": self.master.degree,
            "generator_degree": self.generator.hamiltonian_degree,
            "x_preserves_pi": self.x_preserves_pi,
            "consistent": self.consistent,
            "master": self.master.to_json(),
            "generator": self.generator.to_json(),
        })
    }
}

/// Compare `beta#` as a master symmetry with `i_X beta` as a generator.
///
/// Requires `d_X beta = 0`. Probes master degrees up to `max_m >= 1` and
/// generator degrees up to `max_m - 1`.
pub fn beta_sharp_master_check(pi: &Bivector, x: &VectorField, beta: &KForm, max_m: usize) -> Result<BetaSharpVerdict> {
    if beta.degree() != 1 {
        return Err(Error::Degree {
            op: "beta sharp check",
            degree: beta.degree(),
        });
    }
    if max_m == 0 {
        return Err(Error::InvalidParameter("probe bound must be at least 1".into()));
    }
    if !twisted_d(x, beta)?.is_zero() {
        return Err(Error::Hypothesis("d_X beta is not zero".into()));
    }
    let master = master_symmetry_degree(x, &sharp(pi, beta)?, max_m)?;
    let t = interior(x, beta)?.as_function()?;
    let generator = master_generator_check(pi, x, &t, max_m - 1)?;
    let consistent = match (master.degree, generator.hamiltonian_degree) {
        (None, None) | (Some(0), Some(0)) => true,
        (Some(m), Some(g)) => m >= 1 && g == m - 1,
        _ => false,
    };
    Ok(BetaSharpVerdict {
        master,
        generator,
        x_preserves_pi: lie_bivector(x, pi)?.is_zero(),
        consistent,
    })
}
