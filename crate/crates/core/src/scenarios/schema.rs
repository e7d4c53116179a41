//! Serde mirror of the scenario file format (`"schema": 1`).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A matrix or list entry: either a JSON integer or a string (rational or
/// polynomial text).
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Text(String),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(n) => write!(f, "{n}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

pub type CellMatrix = Vec<Vec<Cell>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema: u32,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub chart: Vec<String>,
    pub structure: StructureFile,
    pub hamiltonian: String,
    #[serde(default)]
    pub transforms: Vec<TransformFile>,
    #[serde(default)]
    pub integrals: Vec<IntegralFile>,
    #[serde(default)]
    pub params: BTreeMap<String, Cell>,
    #[serde(default)]
    pub checks: Vec<CheckKind>,
    #[serde(default)]
    pub expected: Expected,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum StructureFile {
    Bivector(CellMatrix),
    SymplecticMatrix(CellMatrix),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformFile {
    pub name: String,
    pub matrix: CellMatrix,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralFile {
    pub name: String,
    pub poly: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Canonoid,
    GammaSpace,
    Poissonoid,
    Casimirs,
    Compatible,
    Biham,
    IntegralRelations,
    Whittaker,
    MasterSymmetry,
    MasterGenerator,
    Noether,
    Kirchhoff,
    Dynamics,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Canonoid => "canonoid",
            CheckKind::GammaSpace => "gamma_space",
            CheckKind::Poissonoid => "poissonoid",
            CheckKind::Casimirs => "casimirs",
            CheckKind::Compatible => "compatible",
            CheckKind::Biham => "biham",
            CheckKind::IntegralRelations => "integral_relations",
            CheckKind::Whittaker => "whittaker",
            CheckKind::MasterSymmetry => "master_symmetry",
            CheckKind::MasterGenerator => "master_generator",
            CheckKind::Noether => "noether",
            CheckKind::Kirchhoff => "kirchhoff",
            CheckKind::Dynamics => "dynamics",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default)]
    pub canonoid: BTreeMap<String, CanonoidExpect>,
    pub gamma_space: Option<GammaSpaceExpect>,
    #[serde(default)]
    pub poissonoid: BTreeMap<String, PoissonoidExpect>,
    pub casimirs: Option<CasimirExpect>,
    #[serde(default)]
    pub compatible: Vec<CompatibleExpect>,
    #[serde(default)]
    pub biham: Vec<BihamExpect>,
    #[serde(default)]
    pub integral_relations: Vec<RelationExpect>,
    pub whittaker: Option<WhittakerExpect>,
    #[serde(default)]
    pub master_symmetry: Vec<MasterSymmetryExpect>,
    #[serde(default)]
    pub master_generator: Vec<MasterGeneratorExpect>,
    pub kirchhoff: Option<KirchhoffExpect>,
    pub dynamics: Option<DynamicsExpect>,
}

/// `num / den`, both polynomials in the entry names of `A`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioExpect {
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyExpect {
    /// `K = 1/2 (P1^2 + P2^2 + Q1^2 + Q2^2)`.
    K1Isotropic,
    /// `K = P1 P2 + k Q1 Q2`.
    K2Product { k: Cell, k_formula: Option<RatioExpect> },
    /// `K = P1 P2 + k (alpha1 Q1 - alpha2 Q2)^2`.
    K2Square { k: Cell, alpha: [Cell; 2] },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonoidExpect {
    pub is_canonoid: bool,
    pub is_canonical: Option<bool>,
    pub gamma: Option<CellMatrix>,
    pub c: Option<CellMatrix>,
    pub k: Option<String>,
    pub h2: Option<String>,
    pub omega2: Option<CellMatrix>,
    pub det: Option<Cell>,
    pub det_formula: Option<RatioExpect>,
    /// Polynomials in the entry names `a11, a12, b11, ...` that vanish at `A`.
    #[serde(default)]
    pub residuals: Vec<String>,
    pub family: Option<FamilyExpect>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaSpaceExpect {
    pub dimension: usize,
    #[serde(default)]
    pub contains: Vec<CellMatrix>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonoidExpect {
    pub poissonoid: bool,
    pub compatible: Option<bool>,
    pub degree: Option<u32>,
    pub pullback: Option<CellMatrix>,
    pub pushforward: Option<Vec<String>>,
    /// A Hamiltonian the target field must admit.
    pub k_member: Option<String>,
    /// `k_member` composed with the transform.
    pub pulled_k: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CasimirExpect {
    pub degree: u32,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompatibleExpect {
    pub name: String,
    pub bivector: CellMatrix,
    pub compatible: bool,
    pub hamiltonian: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BihamExpect {
    pub name: String,
    pub omega: CellMatrix,
    pub integral: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationExpect {
    pub name: String,
    /// Polynomial in the integral names.
    pub relation: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WhittakerExpect {
    pub theta: Vec<String>,
    pub k: Option<String>,
    pub d_theta: Option<CellMatrix>,
    pub absolute: Option<bool>,
    pub relative: Option<bool>,
    pub nondegenerate: Option<bool>,
    pub is_identity_shift: Option<bool>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MasterSymmetryExpect {
    pub name: String,
    pub xi: Vec<String>,
    pub max_m: usize,
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MasterGeneratorExpect {
    pub name: String,
    pub t: String,
    pub m: usize,
    pub constants_degree: Option<usize>,
    pub hamiltonian_degree: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KirchhoffExpect {
    pub matrix: Option<CellMatrix>,
    pub det: Option<Cell>,
    pub c1_in_f: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DynamicsExpect {
    pub x0: Vec<f64>,
    pub t_end: f64,
    pub step: f64,
    pub tolerance: f64,
}
