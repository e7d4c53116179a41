//! Named bundles of chart, structure, Hamiltonian, transforms and integrals,
//! loaded from JSON and checked against the values they record.
//!
//! # Key Operations
//!
//! - [`load_scenario`] / [`parse_scenario`]: schema plus invariants (Poisson
//!   structure, every integral conserved)
//! - [`run_scenario`]: executes the declared checks and diffs them against
//!   `expected`
//! - [`builtin_names`], [`load_builtin`]: the data files shipped in
//!   `scenarios/`

mod run;
pub mod schema;

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;

pub use run::{run_scenario, run_scenario_with, CheckOutcome, Mismatch, RunOptions, ScenarioReport};
pub use schema::CheckKind;
use schema::{Cell, CellMatrix, Expected, ScenarioFile, StructureFile};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::poissonoid::{constant_of_motion_check, is_poisson};
use crate::polyalg::{parse_poly, parse_rational, Chart, Polynomial, Rational};
use crate::tensorcalc::{poisson_bracket, Bivector};

const BUILTINS: [(&str, &str); 9] = [
    ("free_particle", include_str!("../../scenarios/free_particle.json")),
    (
        "harmonic_oscillator_2d",
        include_str!("../../scenarios/harmonic_oscillator_2d.json"),
    ),
    ("oscillator_1d", include_str!("../../scenarios/oscillator_1d.json")),
    ("euler_so3", include_str!("../../scenarios/euler_so3.json")),
    ("manakov_so4", include_str!("../../scenarios/manakov_so4.json")),
    (
        "clebsch_kirchhoff",
        include_str!("../../scenarios/clebsch_kirchhoff.json"),
    ),
    (
        "oscillator_k1_isotropic",
        include_str!("../../scenarios/oscillator_k1_isotropic.json"),
    ),
    (
        "oscillator_k2_isotropic",
        include_str!("../../scenarios/oscillator_k2_isotropic.json"),
    ),
    (
        "embedded_oscillator_k2",
        include_str!("../../scenarios/embedded_oscillator_k2.json"),
    ),
];

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub chart: Chart,
    pub pi: Bivector,
    /// The constant symplectic matrix `W` when the structure was given that
    /// way; then `pi = -W^-1`.
    pub symplectic: Option<RationalMatrix>,
    pub hamiltonian: Polynomial,
    pub transforms: Vec<(String, RationalMatrix)>,
    pub integrals: Vec<(String, Polynomial)>,
    pub params: BTreeMap<String, Rational>,
    pub checks: Vec<CheckKind>,
    pub expected: Expected,
}

impl Scenario {
    pub fn transform(&self, name: &str) -> Result<&RationalMatrix> {
        self.transforms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a)
            .ok_or_else(|| self.error(format!("no transform named `{name}`")))
    }

    pub fn integral(&self, name: &str) -> Result<&Polynomial> {
        self.integrals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| self.error(format!("no integral named `{name}`")))
    }

    pub fn param(&self, name: &str) -> Result<&Rational> {
        self.params
            .get(name)
            .ok_or_else(|| self.error(format!("missing parameter `{name}`")))
    }

    /// The Hamiltonian followed by every listed integral.
    pub fn invariants(&self) -> Vec<(String, Polynomial)> {
        let mut out = vec![("H".to_string(), self.hamiltonian.clone())];
        out.extend(self.integrals.iter().filter(|(n, _)| n != "H").cloned());
        out
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Scenario {
            scenario: self.name.clone(),
            message: message.into(),
        }
    }
}

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|(n, _)| *n)
}

pub fn builtin_source(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load_builtin(name: &str) -> Result<Scenario> {
    let text = builtin_source(name).ok_or_else(|| Error::Scenario {
        scenario: name.to_string(),
        message: "no builtin scenario with this name".into(),
    })?;
    parse_scenario(text)
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_scenario(&text)
}

/// A file path if it exists, otherwise a builtin name (a trailing `.json` is
/// ignored, so `euler_so3.json` works from any directory).
pub fn resolve_scenario(target: &str) -> Result<Scenario> {
    let path = Path::new(target);
    if path.exists() {
        return load_scenario(path);
    }
    let stem = target.strip_suffix(".json").unwrap_or(target);
    if builtin_source(stem).is_some() {
        return load_builtin(stem);
    }
    Err(Error::Io {
        path: target.to_string(),
        message: "no such file and no builtin scenario with this name".into(),
    })
}

pub(crate) fn cell_rational(c: &Cell) -> Result<Rational> {
    match c {
        Cell::Int(n) => Ok(Rational::from_integer((*n).into())),
        Cell::Text(s) => parse_rational(s),
    }
}

pub(crate) fn cell_poly(c: &Cell, chart: &Chart) -> Result<Polynomial> {
    parse_poly(&c.to_string(), chart)
}

pub(crate) fn rational_matrix(rows: &CellMatrix) -> Result<RationalMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(cell_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(rows)
}

pub(crate) fn poly_matrix(rows: &CellMatrix, chart: &Chart) -> Result<Vec<Vec<Polynomial>>> {
    rows.iter()
        .map(|r| r.iter().map(|c| cell_poly(c, chart)).collect())
        .collect()
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let file: ScenarioFile = serde_json::from_str(text)?;
    let name = file.name.clone();
    let err = |message: String| Error::Scenario {
        scenario: name.clone(),
        message,
    };
    let invariant = |item: &str, message: String| Error::Invariant {
        scenario: name.clone(),
        item: item.to_string(),
        message,
    };
    // Wrap parse errors so the offending item is named.
    let at = |item: &str| {
        let name = name.clone();
        let item = item.to_string();
        move |e: Error| Error::Scenario {
            scenario: name,
            message: format!("{item}: {e}"),
        }
    };

    if file.schema != 1 {
        return Err(err(format!("unsupported schema version {}", file.schema)));
    }
    let chart = Chart::new(file.chart.iter().cloned()).map_err(at("chart"))?;
    let dim = chart.dim();

    let (pi, symplectic) = match &file.structure {
        StructureFile::Bivector(rows) => {
            let pi =
                Bivector::new(&chart, poly_matrix(rows, &chart).map_err(at("structure"))?).map_err(at("structure"))?;
            if !is_poisson(&pi) {
                return Err(invariant("structure", "the bivector fails the Jacobi identity".into()));
            }
            (pi, None)
        }
        StructureFile::SymplecticMatrix(rows) => {
            let w = rational_matrix(rows).map_err(at("structure"))?;
            if w.rows() != dim || w.cols() != dim {
                return Err(err(format!("structure: expected a {dim}x{dim} matrix")));
            }
            if !w.is_antisymmetric() {
                return Err(invariant(
                    "structure",
                    "the symplectic matrix is not antisymmetric".into(),
                ));
            }
            if w.det()?.is_zero() {
                return Err(invariant("structure", "the symplectic matrix is degenerate".into()));
            }
            let pi = Bivector::from_constant_matrix(&chart, &-&w.inverse()?).map_err(at("structure"))?;
            (pi, Some(w))
        }
    };

    let hamiltonian = parse_poly(&file.hamiltonian, &chart).map_err(at("hamiltonian"))?;

    let mut transforms: Vec<(String, RationalMatrix)> = Vec::new();
    for t in &file.transforms {
        if transforms.iter().any(|(n, _)| *n == t.name) {
            return Err(err(format!("duplicate transform `{}`", t.name)));
        }
        let a = rational_matrix(&t.matrix).map_err(at(&format!("transform `{}`", t.name)))?;
        if a.rows() != dim || a.cols() != dim {
            return Err(err(format!("transform `{}`: expected a {dim}x{dim} matrix", t.name)));
        }
        if a.det()?.is_zero() {
            return Err(invariant(&t.name, "the transform is singular".into()));
        }
        transforms.push((t.name.clone(), a));
    }

    let mut integrals: Vec<(String, Polynomial)> = Vec::new();
    for f in &file.integrals {
        if integrals.iter().any(|(n, _)| *n == f.name) {
            return Err(err(format!("duplicate integral `{}`", f.name)));
        }
        let p = parse_poly(&f.poly, &chart).map_err(at(&format!("integral `{}`", f.name)))?;
        if !constant_of_motion_check(&pi, &hamiltonian, &p)? {
            let bracket = poisson_bracket(&pi, &p, &hamiltonian)?;
            return Err(invariant(&f.name, format!("{{F, H}} = {bracket}, not 0")));
        }
        integrals.push((f.name.clone(), p));
    }
    // Integral names double as variables in relations.
    if !integrals.is_empty() {
        Chart::new(integrals.iter().map(|(n, _)| n.clone())).map_err(at("integral names"))?;
    }

    let params = file
        .params
        .iter()
        .map(|(k, v)| Ok((k.clone(), cell_rational(v).map_err(at(&format!("param `{k}`")))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;

    let mut checks = file.checks.clone();
    checks.sort();
    checks.dedup();
    if checks.len() != file.checks.len() {
        return Err(err("a check is listed twice".into()));
    }

    let s = Scenario {
        name: file.name.clone(),
        description: file.description.clone(),
        chart,
        pi,
        symplectic,
        hamiltonian,
        transforms,
        integrals,
        params,
        checks: file.checks.clone(),
        expected: file.expected,
    };
    validate_references(&s)?;
    Ok(s)
}

/// Every declared check has data, and every name in `expected` resolves.
fn validate_references(s: &Scenario) -> Result<()> {
    let e = &s.expected;
    for check in &s.checks {
        let present = match check {
            CheckKind::Canonoid => !e.canonoid.is_empty(),
            CheckKind::GammaSpace => e.gamma_space.is_some(),
            CheckKind::Poissonoid => !e.poissonoid.is_empty(),
            CheckKind::Casimirs => e.casimirs.is_some(),
            CheckKind::Compatible => !e.compatible.is_empty(),
            CheckKind::Biham => !e.biham.is_empty(),
            CheckKind::IntegralRelations => !e.integral_relations.is_empty(),
            CheckKind::Whittaker => e.whittaker.is_some(),
            CheckKind::MasterSymmetry => !e.master_symmetry.is_empty(),
            CheckKind::MasterGenerator => !e.master_generator.is_empty(),
            CheckKind::Kirchhoff => e.kirchhoff.is_some(),
            CheckKind::Dynamics => e.dynamics.is_some(),
            CheckKind::Noether => true,
        };
        if !present {
            return Err(s.error(format!("check `{check}` is declared but `expected.{check}` is missing")));
        }
    }
    for name in e.canonoid.keys().chain(e.poissonoid.keys()) {
        s.transform(name)?;
    }
    for b in &e.biham {
        s.integral(&b.integral)?;
    }
    Ok(())
}
