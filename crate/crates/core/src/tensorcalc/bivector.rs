use std::collections::BTreeMap;

use super::field::VectorField;
use super::form::{df, KForm};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::polyalg::{parse_poly, Chart, Polynomial, Rational};

/// Antisymmetric 2-vector `pi^{ij}` stored as a full matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bivector {
    chart: Chart,
    entries: Vec<Vec<Polynomial>>,
}

impl Bivector {
    /// Full matrix input; fails unless `entries[i][j] = -entries[j][i]`.
    pub fn new(chart: &Chart, entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let d = chart.dim();
        if entries.len() != d || entries.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension(format!("bivector on {chart} must be {d}x{d}")));
        }
        for row in &entries {
            for p in row {
                chart.ensure_same(p.chart())?;
            }
        }
        for i in 0..d {
            for j in 0..=i {
                if entries[i][j] != -&entries[j][i] {
                    return Err(Error::NotAntisymmetric { row: i, col: j });
                }
            }
        }
        Ok(Bivector {
            chart: chart.clone(),
            entries,
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        let d = chart.dim();
        Bivector {
            chart: chart.clone(),
            entries: vec![vec![Polynomial::zero(chart); d]; d],
        }
    }

    /// Build from upper-triangle entries `(i, j, pi^{ij})` with `i < j`.
    pub fn from_upper<I>(chart: &Chart, upper: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Polynomial)>,
    {
        let mut b = Self::zero(chart);
        for (i, j, p) in upper {
            if i >= j || j >= chart.dim() {
                return Err(Error::Dimension(format!("({i}, {j}) is not an upper-triangle entry")));
            }
            chart.ensure_same(p.chart())?;
            b.entries[j][i] = -&p;
            b.entries[i][j] = p;
        }
        Ok(b)
    }

    pub fn from_constant_matrix(chart: &Chart, m: &RationalMatrix) -> Result<Self> {
        let d = chart.dim();
        if m.rows() != d || m.cols() != d {
            return Err(Error::Dimension("bivector matrix shape".into()));
        }
        let rows = (0..d)
            .map(|i| (0..d).map(|j| Polynomial::constant(chart, m[(i, j)].clone())).collect())
            .collect();
        Self::new(chart, rows)
    }

    /// Canonical bivector on `(q.., p..)`: `{q_i, p_i} = 1`, matrix `J`.
    pub fn standard(chart: &Chart) -> Result<Self> {
        let d = chart.dim();
        if !d.is_multiple_of(2) {
            return Err(Error::Dimension(format!("{chart} is odd-dimensional")));
        }
        let n = d / 2;
        Self::from_upper(chart, (0..n).map(|i| (i, n + i, Polynomial::one(chart))))
    }

    /// Parse a `d x d` array of polynomial strings. The upper triangle is
    /// authoritative; every lower entry must equal the negated upper one.
    pub fn parse<S: AsRef<str>>(chart: &Chart, rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_poly(s.as_ref(), chart))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(chart, parsed)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Result<Self> {
        self.chart.ensure_same(&other.chart)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(Bivector {
            chart: self.chart.clone(),
            entries,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Bivector {
            chart: self.chart.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|p| p.scale(c)).collect())
                .collect(),
        }
    }

    pub fn relabel(&self, chart: &Chart) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.relabel(chart)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(chart, entries)
    }

    /// Copy with `pi^{ij}` replaced (and `pi^{ji}` negated to match).
    pub fn with_entry(&self, i: usize, j: usize, p: Polynomial) -> Result<Self> {
        if i == j {
            return Err(Error::NotAntisymmetric { row: i, col: j });
        }
        self.chart.ensure_same(p.chart())?;
        let mut out = self.clone();
        out.entries[j][i] = -&p;
        out.entries[i][j] = p;
        Ok(out)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }
}

/// Totally antisymmetric 3-vector, only `i < j < k` stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trivector {
    chart: Chart,
    coeffs: BTreeMap<[usize; 3], Polynomial>,
}

impl Trivector {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Polynomial {
        self.coeffs
            .get(&[i, j, k])
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.chart))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize; 3], &Polynomial)> {
        self.coeffs.iter()
    }
}

/// `(pi # a)^i = pi^{ij} a_j`.
pub fn sharp(pi: &Bivector, alpha: &KForm) -> Result<VectorField> {
    pi.chart.ensure_same(alpha.chart())?;
    let a = alpha.components()?;
    let comps = pi
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .zip(&a)
                .fold(Polynomial::zero(&pi.chart), |mut acc, (p, aj)| {
                    if !p.is_zero() && !aj.is_zero() {
                        acc += &(p * aj);
                    }
                    acc
                })
        })
        .collect();
    VectorField::new(&pi.chart, comps)
}

/// Hamiltonian vector field `pi # dH`.
pub fn ham_vf(pi: &Bivector, h: &Polynomial) -> Result<VectorField> {
    pi.chart.ensure_same(h.chart())?;
    sharp(pi, &df(h))
}

/// `{F, G} = pi^{ij} d_i F d_j G`.
pub fn poisson_bracket(pi: &Bivector, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    pi.chart.ensure_same(f.chart())?;
    pi.chart.ensure_same(g.chart())?;
    ham_vf(pi, g)?.apply(f)
}

/// `{{F,G},H} + {{G,H},F} + {{H,F},G}`.
pub fn jacobiator(pi: &Bivector, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Result<Polynomial> {
    let b = |a: &Polynomial, c: &Polynomial| poisson_bracket(pi, a, c);
    Ok(b(&b(f, g)?, h)? + b(&b(g, h)?, f)? + b(&b(h, f)?, g)?)
}

/// Schouten bracket of two bivectors.
///
/// Convention: `[P,Q]^{ijk} = cyc_{ijk} sum_l (P^{li} d_l Q^{jk} + Q^{li} d_l P^{jk})`.
/// With `P = Q` every component is twice the coordinate Jacobiator.
pub fn schouten(p: &Bivector, q: &Bivector) -> Result<Trivector> {
    p.chart.ensure_same(&q.chart)?;
    let d = p.chart.dim();
    let dp = derivatives(p);
    let dq = derivatives(q);
    let term = |a: usize, b: usize, c: usize| {
        let mut acc = Polynomial::zero(&p.chart);
        for l in 0..d {
            let (pla, qla) = (&p.entries[l][a], &q.entries[l][a]);
            if !pla.is_zero() && !dq[l][b][c].is_zero() {
                acc += &(pla * &dq[l][b][c]);
            }
            if !qla.is_zero() && !dp[l][b][c].is_zero() {
                acc += &(qla * &dp[l][b][c]);
            }
        }
        acc
    };
    let mut coeffs = BTreeMap::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let v = term(i, j, k) + term(j, k, i) + term(k, i, j);
                if !v.is_zero() {
                    coeffs.insert([i, j, k], v);
                }
            }
        }
    }
    Ok(Trivector {
        chart: p.chart.clone(),
        coeffs,
    })
}

/// `dp[l][i][j] = d_l pi^{ij}`.
fn derivatives(pi: &Bivector) -> Vec<Vec<Vec<Polynomial>>> {
    let d = pi.chart.dim();
    (0..d)
        .map(|l| {
            pi.entries
                .iter()
                .map(|row| row.iter().map(|p| p.diff_index(l)).collect())
                .collect()
        })
        .collect()
}

/// `(L_X pi)^{ij} = X^l d_l pi^{ij} - pi^{lj} d_l X^i - pi^{il} d_l X^j`.
pub fn lie_bivector(x: &VectorField, pi: &Bivector) -> Result<Bivector> {
    x.chart().ensure_same(&pi.chart)?;
    let d = pi.chart.dim();
    let dx: Vec<Vec<Polynomial>> = (0..d)
        .map(|i| (0..d).map(|l| x.component(i).diff_index(l)).collect())
        .collect();
    let mut upper = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut acc = x.apply(&pi.entries[i][j])?;
            for l in 0..d {
                if !dx[i][l].is_zero() && !pi.entries[l][j].is_zero() {
                    acc -= &(&pi.entries[l][j] * &dx[i][l]);
                }
                if !dx[j][l].is_zero() && !pi.entries[i][l].is_zero() {
                    acc -= &(&pi.entries[i][l] * &dx[j][l]);
                }
            }
            upper.push((i, j, acc));
        }
    }
    Bivector::from_upper(&pi.chart, upper)
}
