use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::field::VectorField;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::polyalg::{parse_poly, Chart, Polynomial, Rational};

pub const MAX_FORM_DEGREE: usize = 3;

/// Differential k-form with polynomial coefficients, `k <= 3`.
///
/// Only strictly increasing index tuples are stored and zero coefficients are
/// dropped, so equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KForm {
    chart: Chart,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Polynomial>,
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

impl KForm {
    pub fn zero(chart: &Chart, degree: usize) -> Result<Self> {
        if degree > MAX_FORM_DEGREE {
            return Err(Error::Degree {
                op: "form construction",
                degree,
            });
        }
        Ok(KForm {
            chart: chart.clone(),
            degree,
            coeffs: BTreeMap::new(),
        })
    }

    /// A function viewed as a 0-form.
    pub fn function(f: &Polynomial) -> Self {
        let mut k = KForm {
            chart: f.chart().clone(),
            degree: 0,
            coeffs: BTreeMap::new(),
        };
        k.accumulate(Vec::new(), f.clone());
        k
    }

    /// Build from `(indices, coefficient)` pairs in any index order; repeated
    /// tuples accumulate and unsorted tuples pick up the permutation sign.
    pub fn from_entries<I>(chart: &Chart, degree: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        let mut k = Self::zero(chart, degree)?;
        for (idx, p) in entries {
            chart.ensure_same(p.chart())?;
            if idx.len() != degree || idx.iter().any(|&i| i >= chart.dim()) {
                return Err(Error::Dimension(format!(
                    "index tuple {idx:?} invalid for a {degree}-form on {chart}"
                )));
            }
            if let Some((sorted, sign)) = sort_sign(&idx) {
                k.accumulate(sorted, if sign < 0 { -p } else { p });
            }
        }
        Ok(k)
    }

    /// `sum_i a_i dx^i`.
    pub fn one_form(chart: &Chart, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != chart.dim() {
            return Err(Error::Dimension("one-form component count".into()));
        }
        Self::from_entries(chart, 1, components.into_iter().enumerate().map(|(i, p)| (vec![i], p)))
    }

    pub fn parse_one_form<S: AsRef<str>>(chart: &Chart, components: &[S]) -> Result<Self> {
        let comps = components
            .iter()
            .map(|s| parse_poly(s.as_ref(), chart))
            .collect::<Result<Vec<_>>>()?;
        Self::one_form(chart, comps)
    }

    /// 2-form from its full antisymmetric coefficient matrix `w_{ij}`.
    pub fn two_form_from_matrix(chart: &Chart, m: &[Vec<Polynomial>]) -> Result<Self> {
        let d = chart.dim();
        if m.len() != d || m.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension("two-form matrix shape".into()));
        }
        for i in 0..d {
            for j in 0..=i {
                if m[i][j] != -&m[j][i] {
                    return Err(Error::NotAntisymmetric { row: i, col: j });
                }
            }
        }
        let entries = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j)));
        Self::from_entries(
            chart,
            2,
            entries.map(|(i, j)| (vec![i, j], m[i][j].clone())).collect::<Vec<_>>(),
        )
    }

    /// Constant-coefficient 2-form with matrix `m`.
    pub fn from_constant_matrix(chart: &Chart, m: &RationalMatrix) -> Result<Self> {
        let d = chart.dim();
        if m.rows() != d || m.cols() != d {
            return Err(Error::Dimension("two-form matrix shape".into()));
        }
        let rows: Vec<Vec<Polynomial>> = (0..d)
            .map(|i| (0..d).map(|j| Polynomial::constant(chart, m[(i, j)].clone())).collect())
            .collect();
        Self::two_form_from_matrix(chart, &rows)
    }

    fn accumulate(&mut self, idx: Vec<usize>, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&idx) {
            Some(existing) => {
                *existing += &p;
                if existing.is_zero() {
                    self.coeffs.remove(&idx);
                }
            }
            None => {
                self.coeffs.insert(idx, p);
            }
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored `(increasing indices, coefficient)` pairs.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.coeffs.iter()
    }

    /// Coefficient for any index tuple, with the permutation sign applied.
    pub fn coefficient(&self, idx: &[usize]) -> Polynomial {
        match sort_sign(idx) {
            Some((sorted, sign)) => match self.coeffs.get(&sorted) {
                Some(p) if sign < 0 => -p,
                Some(p) => p.clone(),
                None => Polynomial::zero(&self.chart),
            },
            None => Polynomial::zero(&self.chart),
        }
    }

    /// The function of a 0-form.
    pub fn as_function(&self) -> Result<Polynomial> {
        if self.degree != 0 {
            return Err(Error::Degree {
                op: "as_function",
                degree: self.degree,
            });
        }
        Ok(self.coefficient(&[]))
    }

    /// Components `a_i` of a 1-form.
    pub fn components(&self) -> Result<Vec<Polynomial>> {
        if self.degree != 1 {
            return Err(Error::Degree {
                op: "components",
                degree: self.degree,
            });
        }
        Ok((0..self.chart.dim()).map(|i| self.coefficient(&[i])).collect())
    }

    /// Full antisymmetric coefficient matrix of a 2-form.
    pub fn matrix(&self) -> Result<Vec<Vec<Polynomial>>> {
        if self.degree != 2 {
            return Err(Error::Degree {
                op: "matrix",
                degree: self.degree,
            });
        }
        let d = self.chart.dim();
        Ok((0..d)
            .map(|i| (0..d).map(|j| self.coefficient(&[i, j])).collect())
            .collect())
    }

    /// Constant matrix of a constant-coefficient 2-form, if it is one.
    pub fn constant_matrix(&self) -> Result<Option<RationalMatrix>> {
        let m = self.matrix()?;
        if m.iter().flatten().any(|p| !p.is_constant()) {
            return Ok(None);
        }
        let rows = m
            .iter()
            .map(|r| r.iter().map(Polynomial::constant_term).collect())
            .collect();
        RationalMatrix::from_rows(rows).map(Some)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_kind(other)?;
        let mut out = self.clone();
        for (idx, p) in &other.coeffs {
            out.accumulate(idx.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_integer((-1).into()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return KForm {
                coeffs: BTreeMap::new(),
                ..self.clone()
            };
        }
        KForm {
            chart: self.chart.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(k, p)| (k.clone(), p.scale(c))).collect(),
        }
    }

    fn same_kind(&self, other: &Self) -> Result<()> {
        self.chart.ensure_same(&other.chart)?;
        if self.degree != other.degree {
            return Err(Error::Dimension(format!(
                "adding a {}-form to a {}-form",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn relabel(&self, chart: &Chart) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, p)| Ok((k.clone(), p.relabel(chart)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(KForm {
            chart: chart.clone(),
            degree: self.degree,
            coeffs,
        })
    }

    pub fn to_wire(&self) -> FormWire {
        FormWire {
            degree: self.degree,
            entries: self
                .coeffs
                .iter()
                .map(|(k, p)| FormEntryWire {
                    indices: k.clone(),
                    poly: p.to_string(),
                })
                .collect(),
        }
    }

    /// Parse the wire form. Indices are 0-based chart positions and must be
    /// strictly increasing; each tuple may appear once.
    pub fn from_wire(chart: &Chart, wire: &FormWire) -> Result<Self> {
        let mut k = Self::zero(chart, wire.degree)?;
        for e in &wire.entries {
            if e.indices.len() != wire.degree
                || e.indices.windows(2).any(|w| w[0] >= w[1])
                || e.indices.iter().any(|&i| i >= chart.dim())
            {
                return Err(Error::Dimension(format!(
                    "form entry indices {:?} must be {} strictly increasing positions below {}",
                    e.indices,
                    wire.degree,
                    chart.dim()
                )));
            }
            if k.coeffs.contains_key(&e.indices) {
                return Err(Error::Dimension(format!("duplicate form entry {:?}", e.indices)));
            }
            k.accumulate(e.indices.clone(), parse_poly(&e.poly, chart)?);
        }
        Ok(k)
    }
}

/// JSON shape of a form: `{degree, entries: [{indices, poly}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormWire {
    pub degree: usize,
    pub entries: Vec<FormEntryWire>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormEntryWire {
    pub indices: Vec<usize>,
    pub poly: String,
}

/// Exterior derivative of a form of degree at most 2.
pub fn d(f: &KForm) -> Result<KForm> {
    if f.degree >= MAX_FORM_DEGREE {
        return Err(Error::Degree {
            op: "exterior derivative",
            degree: f.degree,
        });
    }
    let mut out = KForm::zero(&f.chart, f.degree + 1)?;
    for (idx, a) in &f.coeffs {
        for j in 0..f.chart.dim() {
            if idx.contains(&j) {
                continue;
            }
            let da = a.diff_index(j);
            if da.is_zero() {
                continue;
            }
            // dx^j ^ dx^I: moving j to its sorted slot passes `pos` indices.
            let pos = idx.iter().filter(|&&i| i < j).count();
            let mut sorted = idx.clone();
            sorted.insert(pos, j);
            out.accumulate(sorted, if pos % 2 == 1 { -da } else { da });
        }
    }
    Ok(out)
}

/// Differential of a function, as a 1-form.
pub fn df(f: &Polynomial) -> KForm {
    d(&KForm::function(f)).expect("degree 0")
}

/// Interior product `i_X f` for a form of degree at least 1.
pub fn interior(x: &VectorField, f: &KForm) -> Result<KForm> {
    x.chart().ensure_same(&f.chart)?;
    if f.degree == 0 {
        return Err(Error::Degree {
            op: "interior product",
            degree: 0,
        });
    }
    let mut out = KForm::zero(&f.chart, f.degree - 1)?;
    for (idx, a) in &f.coeffs {
        for (p, &i) in idx.iter().enumerate() {
            let xi = x.component(i);
            if xi.is_zero() {
                continue;
            }
            let mut rest = idx.clone();
            rest.remove(p);
            let t = xi * a;
            out.accumulate(rest, if p % 2 == 1 { -t } else { t });
        }
    }
    Ok(out)
}

/// Lie derivative of a form along `X`.
///
/// Cartan's formula for degrees 0..=2; 3-forms use the componentwise formula
/// since `d` of a 3-form is out of range.
pub fn lie_form(x: &VectorField, f: &KForm) -> Result<KForm> {
    x.chart().ensure_same(&f.chart)?;
    match f.degree {
        0 => Ok(KForm::function(&x.apply(&f.as_function()?)?)),
        3 => lie_form_componentwise(x, f),
        _ => interior(x, &d(f)?)?.checked_add(&d(&interior(x, f)?)?),
    }
}

/// `(L_X a)_I = X^j d_j a_I + sum_p a_{I[p -> j]} d_{I_p} X^j`.
fn lie_form_componentwise(x: &VectorField, f: &KForm) -> Result<KForm> {
    let dim = f.chart.dim();
    let mut entries = Vec::new();
    for idx in increasing_tuples(dim, f.degree) {
        let mut acc = x.apply(&f.coefficient(&idx))?;
        for p in 0..idx.len() {
            for j in 0..dim {
                let dxj = x.component(j).diff_index(idx[p]);
                if dxj.is_zero() {
                    continue;
                }
                let mut swapped = idx.clone();
                swapped[p] = j;
                acc += &(&f.coefficient(&swapped) * &dxj);
            }
        }
        entries.push((idx, acc));
    }
    KForm::from_entries(&f.chart, f.degree, entries)
}

/// All strictly increasing tuples of length `k` from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    rec(n, k, 0, &mut cur, &mut out);
    return out;

    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
}

/// Liouville form `theta = sum_i p_i dq^i` on a chart ordered `(q.., p..)`.
pub fn liouville_form(chart: &Chart) -> Result<KForm> {
    let d = chart.dim();
    if !d.is_multiple_of(2) {
        return Err(Error::Dimension(format!("{chart} is odd-dimensional")));
    }
    let n = d / 2;
    KForm::from_entries(chart, 1, (0..n).map(|i| (vec![i], Polynomial::var(chart, n + i))))
}
