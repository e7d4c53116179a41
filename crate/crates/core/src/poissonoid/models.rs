//! Lie-Poisson structures and Hamiltonians of the rigid-body family.
//!
//! Charts: `(m1,m2,m3)` for so*(3), `(p1,p2,p3,m1,m2,m3)` for e*(3) and
//! `(m12,m13,m14,m23,m24,m34)` for so*(4).

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::polyalg::{frac, int, Chart, Monomial, Polynomial, Rational};
use crate::tensorcalc::Bivector;

pub fn so3_chart() -> Chart {
    Chart::new(["m1", "m2", "m3"]).expect("valid chart")
}

pub fn e3_chart() -> Chart {
    Chart::new(["p1", "p2", "p3", "m1", "m2", "m3"]).expect("valid chart")
}

pub fn so4_chart() -> Chart {
    Chart::new(["m12", "m13", "m14", "m23", "m24", "m34"]).expect("valid chart")
}

/// Coordinates `F1..F6` used by the Kirchhoff transformation.
pub fn f_chart() -> Chart {
    Chart::new(["F1", "F2", "F3", "F4", "F5", "F6"]).expect("valid chart")
}

/// Bivector whose upper entries are `c * x_k`.
fn linear(chart: &Chart, upper: &[(usize, usize, Rational, usize)]) -> Result<Bivector> {
    Bivector::from_upper(
        chart,
        upper
            .iter()
            .map(|(i, j, c, k)| (*i, *j, Polynomial::var(chart, *k).scale(c))),
    )
}

fn require_dim(chart: &Chart, d: usize, what: &str) -> Result<()> {
    if chart.dim() != d {
        return Err(Error::Dimension(format!(
            "{what} needs a {d}-dimensional chart, got {chart}"
        )));
    }
    Ok(())
}

pub fn so3(chart: &Chart) -> Result<Bivector> {
    require_dim(chart, 3, "so*(3)")?;
    linear(chart, &[(0, 1, int(-1), 2), (0, 2, int(1), 1), (1, 2, int(-1), 0)])
}

pub fn e3(chart: &Chart) -> Result<Bivector> {
    require_dim(chart, 6, "e*(3)")?;
    let (one, neg) = (int(1), int(-1));
    linear(
        chart,
        &[
            (0, 4, neg.clone(), 2),
            (0, 5, one.clone(), 1),
            (1, 3, one.clone(), 2),
            (1, 5, neg.clone(), 0),
            (2, 3, neg.clone(), 1),
            (2, 4, one.clone(), 0),
            (3, 4, neg.clone(), 5),
            (3, 5, one, 4),
            (4, 5, neg, 3),
        ],
    )
}

pub fn so4(chart: &Chart) -> Result<Bivector> {
    require_dim(chart, 6, "so*(4)")?;
    let (one, neg) = (int(1), int(-1));
    linear(
        chart,
        &[
            (0, 1, neg.clone(), 3),
            (0, 2, neg.clone(), 4),
            (0, 3, one.clone(), 1),
            (0, 4, one.clone(), 2),
            (1, 2, neg.clone(), 5),
            (1, 3, neg.clone(), 0),
            (1, 5, one.clone(), 2),
            (2, 4, neg.clone(), 0),
            (2, 5, neg.clone(), 1),
            (3, 4, neg.clone(), 5),
            (3, 5, one, 4),
            (4, 5, neg, 3),
        ],
    )
}

/// The second Clebsch structure on e*(3).
pub fn eta_tilde(chart: &Chart, w: &[Rational; 3]) -> Result<Bivector> {
    require_dim(chart, 6, "eta tilde")?;
    let [w1, w2, w3] = w;
    let one = int(1);
    let neg = int(-1);
    linear(
        chart,
        &[
            (0, 1, neg.clone(), 5),
            (0, 2, one.clone(), 4),
            (1, 2, neg, 3),
            (1, 3, w1 - w2, 2),
            (1, 5, w2 - w1, 0),
            (2, 3, w3 - w1, 1),
            (2, 4, w1 - w3, 0),
            (3, 4, w3 - w1, 5),
            (3, 5, w1 - w2, 4),
        ],
    )
}

/// `sum_i c_i x_i^2`.
pub fn diagonal_quadratic(chart: &Chart, c: &[Rational]) -> Polynomial {
    Polynomial::from_terms(
        chart,
        c.iter().enumerate().map(|(i, ci)| {
            let mut e = vec![0u32; chart.dim()];
            e[i] = 2;
            (Monomial::from_exponents(e), ci.clone())
        }),
    )
}

/// `H = 1/2 (m1^2/I1 + m2^2/I2 + m3^2/I3)`.
pub fn euler_hamiltonian(chart: &Chart, inertia: &[Rational; 3]) -> Result<Polynomial> {
    require_dim(chart, 3, "Euler Hamiltonian")?;
    if inertia.iter().any(num_traits::Zero::is_zero) {
        return Err(Error::InvalidParameter("zero moment of inertia".into()));
    }
    let half = frac(1, 2);
    let c: Vec<Rational> = inertia.iter().map(|i| &half / i).collect();
    Ok(diagonal_quadratic(chart, &c))
}

/// Index pairs `(i, j)`, `i < j`, in the so*(4) chart order.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn complement(i: usize, j: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&k| k != i && k != j);
    (rest.next().unwrap(), rest.next().unwrap())
}

/// `a_ij = J_l^2 + J_k^2` with `{i,j,l,k} = {1,2,3,4}`.
pub fn manakov_coefficients(j: &[Rational; 4]) -> [Rational; 6] {
    PAIRS.map(|(a, b)| {
        let (l, k) = complement(a, b);
        &j[l] * &j[l] + &j[k] * &j[k]
    })
}

/// `H = 1/2 sum a_ij m_ij^2`.
pub fn manakov_hamiltonian(chart: &Chart, j: &[Rational; 4]) -> Result<Polynomial> {
    require_dim(chart, 6, "Manakov Hamiltonian")?;
    let half = frac(1, 2);
    let c: Vec<Rational> = manakov_coefficients(j).iter().map(|a| a * &half).collect();
    Ok(diagonal_quadratic(chart, &c))
}

/// `I1 = sum J_l^2 J_k^2 m_ij^2`.
pub fn manakov_integral(chart: &Chart, j: &[Rational; 4]) -> Result<Polynomial> {
    require_dim(chart, 6, "Manakov integral")?;
    let c: Vec<Rational> = PAIRS
        .iter()
        .map(|&(a, b)| {
            let (l, k) = complement(a, b);
            &(&j[l] * &j[l]) * &(&j[k] * &j[k])
        })
        .collect();
    Ok(diagonal_quadratic(chart, &c))
}

/// The rescaling `n_ij = m_ij / (J_i J_j)`.
pub fn manakov_rescaling(j: &[Rational; 4]) -> Result<RationalMatrix> {
    if j.iter().any(num_traits::Zero::is_zero) {
        return Err(Error::InvalidParameter("J_i must be nonzero".into()));
    }
    let d: Vec<Rational> = PAIRS.iter().map(|&(a, b)| (&j[a] * &j[b]).recip()).collect();
    Ok(RationalMatrix::diagonal(&d))
}

/// `H1 = 1/2 (|m|^2 + w1 p1^2 + w2 p2^2 + w3 p3^2)`.
pub fn clebsch_hamiltonian(chart: &Chart, w: &[Rational; 3]) -> Result<Polynomial> {
    require_dim(chart, 6, "Clebsch Hamiltonian")?;
    let half = frac(1, 2);
    let c = [
        &w[0] * &half,
        &w[1] * &half,
        &w[2] * &half,
        half.clone(),
        half.clone(),
        half,
    ];
    Ok(diagonal_quadratic(chart, &c))
}

/// `I = 1/2 (w1 m1^2 + w2 m2^2 + w3 m3^2 - w2 w3 p1^2 - w3 w1 p2^2 - w1 w2 p3^2)`.
pub fn clebsch_integral(chart: &Chart, w: &[Rational; 3]) -> Result<Polynomial> {
    require_dim(chart, 6, "Clebsch integral")?;
    let h = frac(1, 2);
    let [w1, w2, w3] = w;
    let c = [
        -(&(w2 * w3) * &h),
        -(&(w3 * w1) * &h),
        -(&(w1 * w2) * &h),
        w1 * &h,
        w2 * &h,
        w3 * &h,
    ];
    Ok(diagonal_quadratic(chart, &c))
}

/// `C1 = p1^2 + p2^2 + p3^2`.
pub fn e3_casimir_c1(chart: &Chart) -> Result<Polynomial> {
    require_dim(chart, 6, "e*(3) Casimir")?;
    Ok(diagonal_quadratic(
        chart,
        &[int(1), int(1), int(1), int(0), int(0), int(0)],
    ))
}

/// `C2 = m1 p1 + m2 p2 + m3 p3`.
pub fn e3_casimir_c2(chart: &Chart) -> Result<Polynomial> {
    require_dim(chart, 6, "e*(3) Casimir")?;
    let mut acc = Polynomial::zero(chart);
    for i in 0..3 {
        acc += &(Polynomial::var(chart, i) * Polynomial::var(chart, i + 3));
    }
    Ok(acc)
}
