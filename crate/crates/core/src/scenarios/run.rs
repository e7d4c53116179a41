use serde::Serialize;
use serde_json::{json, Value};

use super::schema::{
    BihamExpect, CanonoidExpect, CasimirExpect, CheckKind, CompatibleExpect, DynamicsExpect, FamilyExpect,
    GammaSpaceExpect, KirchhoffExpect, MasterGeneratorExpect, MasterSymmetryExpect, PoissonoidExpect, RatioExpect,
    RelationExpect, WhittakerExpect,
};
use super::{cell_rational, poly_matrix, rational_matrix, Scenario};
use crate::canonoid::{
    check_canonoid, gamma_in_span, gamma_nullspace, hessian, omega2, standard_j, transformed_hamiltonian,
};
use crate::dynamics::{drift_report, integrate};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::poissonoid::models::{clebsch_hamiltonian, e3, f_chart};
use crate::poissonoid::{
    casimirs, check_poissonoid_linear, compatible, constant_of_motion_check, hamiltonize, is_poisson,
    kirchhoff_certificate, kirchhoff_matrix, poisson_vf_check, pulled_casimirs_are_integrals, KirchhoffParams,
};
use crate::polyalg::{format_rational, parse_poly, Chart, Monomial, Polynomial, Rational};
use crate::symmetry::{master_generator_check, master_symmetry_degree};
use crate::tensorcalc::{df, ham_vf, interior, poisson_bracket, pullback_function, Bivector, KForm, VectorField};
use crate::whittaker::generator_check;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Default ansatz degree for `hamiltonize`.
    pub degree: u32,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { degree: 2 }
    }
}

/// One field that disagrees with `expected`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: Value,
    pub actual: Value,
    /// `actual - expected` for polynomials, the differing entries for matrices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub check: CheckKind,
    pub item: String,
    pub passed: bool,
    pub mismatches: Vec<Mismatch>,
    /// Set when the check could not be evaluated at all.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckOutcome {
    fn new(check: CheckKind, item: impl Into<String>) -> Self {
        CheckOutcome {
            check,
            item: item.into(),
            passed: true,
            mismatches: Vec::new(),
            error: None,
        }
    }

    fn push(&mut self, field: &str, expected: Value, actual: Value, diff: Option<Value>) {
        self.passed = false;
        self.mismatches.push(Mismatch {
            field: field.to_string(),
            expected,
            actual,
            diff,
        });
    }

    fn flag<T: PartialEq + Serialize>(&mut self, field: &str, expected: T, actual: T) {
        if expected != actual {
            self.push(field, json!(expected), json!(actual), None);
        }
    }

    fn rational(&mut self, field: &str, expected: &Rational, actual: &Rational) {
        if expected != actual {
            self.push(
                field,
                json!(format_rational(expected)),
                json!(format_rational(actual)),
                None,
            );
        }
    }

    fn poly(&mut self, field: &str, expected: &Polynomial, actual: &Polynomial) {
        if expected != actual {
            let diff = actual.checked_sub(expected).map(|d| json!(d.to_string())).ok();
            self.push(field, json!(expected.to_string()), json!(actual.to_string()), diff);
        }
    }

    fn polys(&mut self, field: &str, expected: &[Polynomial], actual: &[Polynomial]) {
        if expected == actual {
            return;
        }
        let strings = |v: &[Polynomial]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let diff: Vec<Value> = expected
            .iter()
            .zip(actual)
            .enumerate()
            .filter(|(_, (e, a))| e != a)
            .map(|(i, (e, a))| json!({"index": i, "expected": e.to_string(), "actual": a.to_string()}))
            .collect();
        self.push(
            field,
            json!(strings(expected)),
            json!(strings(actual)),
            Some(json!(diff)),
        );
    }

    fn poly_matrix(&mut self, field: &str, expected: &[Vec<Polynomial>], actual: &[Vec<Polynomial>]) {
        if expected == actual {
            return;
        }
        let strings = |m: &[Vec<Polynomial>]| {
            m.iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        let mut diff = Vec::new();
        for (i, (er, ar)) in expected.iter().zip(actual).enumerate() {
            for (j, (e, a)) in er.iter().zip(ar).enumerate() {
                if e != a {
                    diff.push(json!({"row": i, "col": j, "expected": e.to_string(), "actual": a.to_string()}));
                }
            }
        }
        if expected.len() != actual.len() || expected.iter().zip(actual).any(|(e, a)| e.len() != a.len()) {
            diff.push(json!({"shape": "differs"}));
        }
        self.push(
            field,
            json!(strings(expected)),
            json!(strings(actual)),
            Some(json!(diff)),
        );
    }

    fn matrix(&mut self, field: &str, expected: &RationalMatrix, actual: &RationalMatrix) {
        if expected == actual {
            return;
        }
        let mut diff = Vec::new();
        if expected.rows() == actual.rows() && expected.cols() == actual.cols() {
            for i in 0..expected.rows() {
                for j in 0..expected.cols() {
                    if expected[(i, j)] != actual[(i, j)] {
                        diff.push(json!({
                            "row": i,
                            "col": j,
                            "expected": format_rational(&expected[(i, j)]),
                            "actual": format_rational(&actual[(i, j)]),
                        }));
                    }
                }
            }
        } else {
            diff.push(json!({"shape": "differs"}));
        }
        self.push(
            field,
            json!(expected.to_strings()),
            json!(actual.to_strings()),
            Some(json!(diff)),
        );
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub passed: bool,
    pub outcomes: Vec<CheckOutcome>,
}

impl ScenarioReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

pub fn run_scenario(s: &Scenario) -> ScenarioReport {
    run_scenario_with(s, &RunOptions::default())
}

/// Run every declared check in file order. A check that cannot be evaluated
/// is reported as failed with its error text.
pub fn run_scenario_with(s: &Scenario, opts: &RunOptions) -> ScenarioReport {
    let mut outcomes = Vec::new();
    for &check in &s.checks {
        match run_check(s, check, opts) {
            Ok(mut v) => outcomes.append(&mut v),
            Err(e) => {
                let mut o = CheckOutcome::new(check, "*");
                o.passed = false;
                o.error = Some(e.to_string());
                outcomes.push(o);
            }
        }
    }
    ScenarioReport {
        scenario: s.name.clone(),
        passed: outcomes.iter().all(|o| o.passed),
        outcomes,
    }
}

/// Run each item separately so one failing item does not hide the rest.
fn per_item<T>(
    check: CheckKind,
    items: impl IntoIterator<Item = (String, T)>,
    mut f: impl FnMut(&mut CheckOutcome, T) -> Result<()>,
) -> Vec<CheckOutcome> {
    items
        .into_iter()
        .map(|(name, item)| {
            let mut o = CheckOutcome::new(check, name);
            if let Err(e) = f(&mut o, item) {
                o.passed = false;
                o.error = Some(e.to_string());
            }
            o
        })
        .collect()
}

fn run_check(s: &Scenario, check: CheckKind, opts: &RunOptions) -> Result<Vec<CheckOutcome>> {
    let e = &s.expected;
    Ok(match check {
        CheckKind::Canonoid => per_item(
            check,
            e.canonoid.iter().map(|(n, x)| (n.clone(), (n, x))),
            |o, (n, x)| canonoid(s, o, n, x),
        ),
        CheckKind::GammaSpace => {
            let x = e.gamma_space.as_ref().expect("validated at load");
            per_item(check, [("S".to_string(), x)], |o, x| gamma_space(s, o, x))
        }
        CheckKind::Poissonoid => per_item(
            check,
            e.poissonoid.iter().map(|(n, x)| (n.clone(), (n, x))),
            |o, (n, x)| poissonoid(s, o, n, x, opts),
        ),
        CheckKind::Casimirs => {
            let x = e.casimirs.as_ref().expect("validated at load");
            per_item(check, [("basis".to_string(), x)], |o, x| casimir(s, o, x))
        }
        CheckKind::Compatible => per_item(check, e.compatible.iter().map(|x| (x.name.clone(), x)), |o, x| {
            compatible_with(s, o, x)
        }),
        CheckKind::Biham => per_item(check, e.biham.iter().map(|x| (x.name.clone(), x)), |o, x| {
            biham(s, o, x)
        }),
        CheckKind::IntegralRelations => per_item(
            check,
            e.integral_relations.iter().map(|x| (x.name.clone(), x)),
            |o, x| relation(s, o, x),
        ),
        CheckKind::Whittaker => {
            let x = e.whittaker.as_ref().expect("validated at load");
            per_item(check, [("theta".to_string(), x)], |o, x| whittaker(s, o, x))
        }
        CheckKind::MasterSymmetry => per_item(check, e.master_symmetry.iter().map(|x| (x.name.clone(), x)), |o, x| {
            master_symmetry(s, o, x)
        }),
        CheckKind::MasterGenerator => {
            per_item(check, e.master_generator.iter().map(|x| (x.name.clone(), x)), |o, x| {
                master_generator(s, o, x)
            })
        }
        CheckKind::Noether => per_item(check, s.integrals.iter().map(|(n, f)| (n.clone(), f)), |o, f| {
            noether(s, o, f, opts)
        }),
        CheckKind::Kirchhoff => {
            let x = e.kirchhoff.as_ref().expect("validated at load");
            per_item(check, [("certificate".to_string(), x)], |o, x| kirchhoff(s, o, x))
        }
        CheckKind::Dynamics => {
            let x = e.dynamics.as_ref().expect("validated at load");
            per_item(check, [("rk4".to_string(), x)], |o, x| dynamics(s, o, x))
        }
    })
}

fn vector_field(s: &Scenario) -> Result<VectorField> {
    ham_vf(&s.pi, &s.hamiltonian)
}

/// Entry names of a `2n x 2n` matrix in row-major order: `a11, a12, b11, b12,
/// a21, ...` for the blocks `[[a, b], [c, d]]`.
pub fn entry_chart(n: usize) -> Chart {
    let names = (0..2 * n).flat_map(|r| {
        (0..2 * n).map(move |c| {
            let block = match (r < n, c < n) {
                (true, true) => 'a',
                (true, false) => 'b',
                (false, true) => 'c',
                (false, false) => 'd',
            };
            format!("{block}{}{}", r % n + 1, c % n + 1)
        })
    });
    Chart::new(names).expect("generated names are valid")
}

fn entries(a: &RationalMatrix) -> Vec<Rational> {
    (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| a[(i, j)].clone()))
        .collect()
}

fn eval_ratio(r: &RatioExpect, chart: &Chart, point: &[Rational]) -> Result<Rational> {
    let num = parse_poly(&r.num, chart)?.eval_at(point)?;
    let den = parse_poly(&r.den, chart)?.eval_at(point)?;
    if num_traits::Zero::is_zero(&den) {
        return Err(Error::InvalidParameter(format!("`{}` vanishes at the instance", r.den)));
    }
    Ok(num / den)
}

fn family_k(f: &FamilyExpect, n: usize) -> Result<Polynomial> {
    let chart = Chart::canonical_upper(n);
    if n != 2 {
        return Err(Error::Dimension(
            "solution families are stated for two degrees of freedom".into(),
        ));
    }
    let text = match f {
        FamilyExpect::K1Isotropic => "1/2*(P1^2 + P2^2 + Q1^2 + Q2^2)".to_string(),
        FamilyExpect::K2Product { k, .. } => {
            format!("P1*P2 + ({})*Q1*Q2", format_rational(&cell_rational(k)?))
        }
        FamilyExpect::K2Square { k, alpha } => format!(
            "P1*P2 + ({})*(({})*Q1 - ({})*Q2)^2",
            format_rational(&cell_rational(k)?),
            format_rational(&cell_rational(&alpha[0])?),
            format_rational(&cell_rational(&alpha[1])?),
        ),
    };
    parse_poly(&text, &chart)
}

fn canonical_s(s: &Scenario) -> Result<RationalMatrix> {
    let n = s.chart.dim() / 2;
    let standard = s.chart.dim().is_multiple_of(2) && s.symplectic.as_ref() == Some(&standard_j(n));
    if !standard {
        return Err(s.error("canonoid checks need the standard symplectic matrix J"));
    }
    hessian(&s.hamiltonian)
}

fn canonoid(s: &Scenario, o: &mut CheckOutcome, name: &str, x: &CanonoidExpect) -> Result<()> {
    let sm = canonical_s(s)?;
    let a = s.transform(name)?;
    let n = a.rows() / 2;
    let v = check_canonoid(a, &sm)?;
    o.flag("is_canonoid", x.is_canonoid, v.is_canonoid);
    if let Some(c) = x.is_canonical {
        o.flag("is_canonical", c, v.is_canonical);
    }
    o.flag(
        "gamma_in_span",
        v.is_canonoid,
        gamma_in_span(&gamma_nullspace(&sm)?, &v.gamma),
    );
    if let Some(g) = &x.gamma {
        o.matrix("gamma", &rational_matrix(g)?, &v.gamma);
    }
    if let Some(w) = &x.omega2 {
        let actual = omega2(a)?.constant_matrix()?.expect("constant form");
        o.matrix("omega2", &rational_matrix(w)?, &actual);
    }
    let det = a.det()?;
    if let Some(d) = &x.det {
        o.rational("det", &cell_rational(d)?, &det);
    }
    let names = entry_chart(n);
    let point = entries(a);
    if let Some(f) = &x.det_formula {
        o.rational("det_formula", &eval_ratio(f, &names, &point)?, &det);
    }
    for r in &x.residuals {
        let value = parse_poly(r, &names)?.eval_at(&point)?;
        o.rational(&format!("residual `{r}`"), &Rational::from_integer(0.into()), &value);
    }
    if !v.is_canonoid {
        return Ok(());
    }
    let th = transformed_hamiltonian(a, &sm)?;
    if let Some(c) = &x.c {
        o.matrix("C", &rational_matrix(c)?, &th.c);
    }
    if let Some(k) = &x.k {
        o.poly("K", &parse_poly(k, th.k.chart())?, &th.k);
    }
    if let Some(h2) = &x.h2 {
        o.poly("H2", &parse_poly(h2, &s.chart)?, &th.h2.relabel(&s.chart)?);
    }
    if let Some(f) = &x.family {
        o.poly("family", &family_k(f, n)?, &th.k);
        if let FamilyExpect::K2Product { k, k_formula: Some(r) } = f {
            o.rational("k_formula", &cell_rational(k)?, &eval_ratio(r, &names, &point)?);
        }
    }
    Ok(())
}

fn gamma_space(s: &Scenario, o: &mut CheckOutcome, x: &GammaSpaceExpect) -> Result<()> {
    let basis = gamma_nullspace(&canonical_s(s)?)?;
    o.flag("dimension", x.dimension, basis.len());
    for (i, g) in x.contains.iter().enumerate() {
        o.flag(
            &format!("contains[{i}]"),
            true,
            gamma_in_span(&basis, &rational_matrix(g)?),
        );
    }
    Ok(())
}

fn poissonoid(s: &Scenario, o: &mut CheckOutcome, name: &str, x: &PoissonoidExpect, opts: &RunOptions) -> Result<()> {
    let a = s.transform(name)?;
    let deg = x.degree.unwrap_or(opts.degree);
    let r = check_poissonoid_linear(&s.pi, a, &s.hamiltonian, deg)?;
    o.flag("poissonoid", x.poissonoid, r.is_poissonoid());
    if let Some(c) = x.compatible {
        o.flag("compatible", c, r.compatible);
    }
    if let Some(p) = &x.pullback {
        o.poly_matrix("pullback", &poly_matrix(p, &s.chart)?, r.pulled.rows());
    }
    if let Some(p) = &x.pushforward {
        let expected = p.iter().map(|t| parse_poly(t, &s.chart)).collect::<Result<Vec<_>>>()?;
        o.polys("pushforward", &expected, r.pushed.components());
    }
    if let Some(k) = &x.k_member {
        let k = parse_poly(k, &s.chart)?;
        o.flag("k_member_admitted", true, r.hamiltonize.admits(&k));
        if let Some(pk) = &x.pulled_k {
            o.poly("pulled_k", &parse_poly(pk, &s.chart)?, &pullback_function(a, &k)?);
        }
    }
    if let Some(k) = &r.hamiltonize.k {
        // F is conserved by (pi, K) iff F o f is conserved by (pi, H).
        for (fname, f) in &s.integrals {
            let target = constant_of_motion_check(&s.pi, k, f)?;
            let source = constant_of_motion_check(&s.pi, &s.hamiltonian, &pullback_function(a, f)?)?;
            o.flag(&format!("preservation `{fname}`"), target, source);
        }
        if r.is_poissonoid() {
            o.flag(
                "pulled_casimirs_are_integrals",
                true,
                pulled_casimirs_are_integrals(&s.pi, a, &s.hamiltonian, deg)?,
            );
        }
    }
    Ok(())
}

/// Coefficient rows of `polys` over all monomials of degree `1..=deg`.
fn coefficient_rows(polys: &[Polynomial], chart: &Chart, deg: u32) -> Vec<Vec<Rational>> {
    let monos = Monomial::all_of_degree(chart.dim(), 1, deg);
    polys
        .iter()
        .map(|p| monos.iter().map(|m| p.coefficient(m)).collect())
        .collect()
}

fn rank(rows: Vec<Vec<Rational>>) -> Result<usize> {
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(RationalMatrix::from_rows(rows)?.rank())
}

fn casimir(s: &Scenario, o: &mut CheckOutcome, x: &CasimirExpect) -> Result<()> {
    let basis = casimirs(&s.pi, x.degree)?.basis;
    let expected = x
        .basis
        .iter()
        .map(|t| parse_poly(t, &s.chart))
        .collect::<Result<Vec<_>>>()?;
    o.flag("dimension", expected.len(), basis.len());
    let ours = coefficient_rows(&basis, &s.chart, x.degree);
    let theirs = coefficient_rows(&expected, &s.chart, x.degree);
    let joint: Vec<Vec<Rational>> = ours.iter().chain(&theirs).cloned().collect();
    let (r_ours, r_theirs, r_joint) = (rank(ours)?, rank(theirs)?, rank(joint)?);
    let same_span = r_ours == r_theirs && r_ours == r_joint;
    if !same_span {
        let strings = |v: &[Polynomial]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        o.push("span", json!(strings(&expected)), json!(strings(&basis)), None);
    }
    Ok(())
}

fn compatible_with(s: &Scenario, o: &mut CheckOutcome, x: &CompatibleExpect) -> Result<()> {
    let other = Bivector::new(&s.chart, poly_matrix(&x.bivector, &s.chart)?)?;
    let poisson = is_poisson(&other);
    o.flag("is_poisson", true, poisson);
    if poisson {
        o.flag("compatible", x.compatible, compatible(&s.pi, &other)?);
    }
    if let Some(k) = &x.hamiltonian {
        let k = parse_poly(k, &s.chart)?;
        let actual = ham_vf(&other, &k)?;
        o.polys("hamiltonian_field", vector_field(s)?.components(), actual.components());
    }
    Ok(())
}

fn biham(s: &Scenario, o: &mut CheckOutcome, x: &BihamExpect) -> Result<()> {
    let w = rational_matrix(&x.omega)?;
    o.flag("antisymmetric", true, w.is_antisymmetric());
    o.flag("nondegenerate", true, !num_traits::Zero::is_zero(&w.det()?));
    let form = KForm::from_constant_matrix(&s.chart, &w)?;
    let lhs = interior(&vector_field(s)?, &form)?;
    let rhs = df(s.integral(&x.integral)?);
    o.polys("i_X omega = dW", &rhs.components()?, &lhs.components()?);
    Ok(())
}

fn relation(s: &Scenario, o: &mut CheckOutcome, x: &RelationExpect) -> Result<()> {
    let names = Chart::new(s.integrals.iter().map(|(n, _)| n.clone()))?;
    let images: Vec<Polynomial> = s.integrals.iter().map(|(_, f)| f.clone()).collect();
    let value = parse_poly(&x.relation, &names)?.substitute(&images)?;
    o.poly("relation", &Polynomial::zero(&s.chart), &value);
    Ok(())
}

fn whittaker(s: &Scenario, o: &mut CheckOutcome, x: &WhittakerExpect) -> Result<()> {
    let theta = KForm::parse_one_form(&s.chart, &x.theta)?;
    let r = generator_check(&vector_field(s)?, &theta)?;
    for (field, expected, actual) in [
        ("absolute", x.absolute, r.absolute),
        ("relative", x.relative, r.relative),
        ("nondegenerate", x.nondegenerate, r.nondegenerate),
        ("is_identity_shift", x.is_identity_shift, r.is_identity_shift),
    ] {
        if let Some(e) = expected {
            o.flag(field, e, actual);
        }
    }
    if let Some(c) = r.certificate {
        o.flag("certificate", true, c);
    }
    if let Some(k) = &x.k {
        o.poly("K", &parse_poly(k, &s.chart)?, &r.k);
    }
    if let Some(m) = &x.d_theta {
        o.poly_matrix("dTheta", &poly_matrix(m, &s.chart)?, &r.d_theta.matrix()?);
    }
    o.flag(
        "{H, K} = 0",
        true,
        poisson_bracket(&s.pi, &s.hamiltonian, &r.k)?.is_zero(),
    );
    Ok(())
}

fn master_symmetry(s: &Scenario, o: &mut CheckOutcome, x: &MasterSymmetryExpect) -> Result<()> {
    let xi = VectorField::parse(&s.chart, &x.xi)?;
    let v = master_symmetry_degree(&vector_field(s)?, &xi, x.max_m)?;
    o.flag("degree", x.degree, v.degree);
    Ok(())
}

fn master_generator(s: &Scenario, o: &mut CheckOutcome, x: &MasterGeneratorExpect) -> Result<()> {
    let t = parse_poly(&x.t, &s.chart)?;
    let v = master_generator_check(&s.pi, &vector_field(s)?, &t, x.m)?;
    o.flag("constants_degree", x.constants_degree, v.constants_degree);
    o.flag("hamiltonian_degree", x.hamiltonian_degree, v.hamiltonian_degree);
    Ok(())
}

/// `X_F` preserves `pi` and `H`, and `hamiltonize` recovers `F`.
fn noether(s: &Scenario, o: &mut CheckOutcome, f: &Polynomial, opts: &RunOptions) -> Result<()> {
    let xf = ham_vf(&s.pi, f)?;
    o.flag("L_XF pi = 0", true, poisson_vf_check(&s.pi, &xf)?);
    o.poly("X_F[H]", &Polynomial::zero(&s.chart), &xf.apply(&s.hamiltonian)?);
    let deg = f.degree().unwrap_or(0).max(opts.degree).max(1);
    let r = hamiltonize(&s.pi, &xf, deg)?;
    o.flag("recovered", true, r.admits(f));
    Ok(())
}

fn kirchhoff(s: &Scenario, o: &mut CheckOutcome, x: &KirchhoffExpect) -> Result<()> {
    let params = KirchhoffParams {
        omega: [s.param("w1")?.clone(), s.param("w2")?.clone(), s.param("w3")?.clone()],
        eps: s.param("eps")?.clone(),
        a: s.param("a")?.clone(),
    };
    // The scenario data must be the model the certificate is built from.
    let model_pi = e3(&s.chart)?;
    o.poly_matrix("structure", model_pi.rows(), s.pi.rows());
    o.poly(
        "hamiltonian",
        &clebsch_hamiltonian(&s.chart, &params.omega)?,
        &s.hamiltonian,
    );
    let r = kirchhoff_certificate(&params)?;
    o.flag("det_matches", true, r.det_matches);
    o.flag("pullback_matches", true, r.pullback_matches);
    o.flag("c1_matches_expansion", true, r.c1_matches_expansion);
    o.flag("vector_field_certificate", true, r.vector_field_certificate);
    o.flag("eta_is_poisson", true, r.eta_is_poisson);
    o.flag("eta_compatible", true, r.eta_compatible);
    o.flag("eta_hamiltonian", true, r.eta_hamiltonian);
    if let Some(m) = &x.matrix {
        o.matrix("matrix", &rational_matrix(m)?, &kirchhoff_matrix(&params)?.m);
    }
    if let Some(d) = &x.det {
        o.flag("det", format_rational(&cell_rational(d)?), r.det.clone());
    }
    if let Some(c) = &x.c1_in_f {
        let f = f_chart();
        o.poly("c1_in_f", &parse_poly(c, &f)?, &parse_poly(&r.c1_in_f, &f)?);
    }
    Ok(())
}

fn dynamics(s: &Scenario, o: &mut CheckOutcome, x: &DynamicsExpect) -> Result<()> {
    let traj = integrate(&s.pi, &s.hamiltonian, &x.x0, x.t_end, x.step)?;
    let report = drift_report(&traj, &s.invariants())?;
    for e in &report.entries {
        if e.max_drift > x.tolerance {
            o.push(
                &format!("drift `{}`", e.name),
                json!({ "at_most": x.tolerance }),
                json!(e.max_drift),
                None,
            );
        }
    }
    Ok(())
}
