use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::chart::Chart;
use super::rational::{to_f64, Rational};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;

/// Exponent vector indexed by chart position.
///
/// Stored densely; a variable with exponent zero simply does not appear in
/// the printed form. Ordered graded-lexicographically: total degree first,
/// then the exponent of the earliest chart variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All monomials of total degree in `lo..=hi`, descending graded-lex.
    pub fn all_of_degree(dim: usize, lo: u32, hi: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for deg in (lo..=hi).rev() {
            let mut cur = vec![0u32; dim];
            fill(&mut cur, 0, deg, &mut out);
        }
        return out;

        // Lex-descending enumeration of exponent vectors with a fixed sum.
        fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                fill(cur, pos + 1, left - e, out);
            }
            cur[pos] = 0;
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients over a chart.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    chart: Chart,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(chart: &Chart) -> Self {
        Polynomial {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Chart, c: Rational) -> Self {
        let mut p = Self::zero(chart);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(chart.dim()), c);
        }
        p
    }

    pub fn one(chart: &Chart) -> Self {
        Self::constant(chart, Rational::one())
    }

    /// The coordinate function `x^i`.
    pub fn var(chart: &Chart, i: usize) -> Self {
        assert!(i < chart.dim(), "variable index out of range");
        let mut p = Self::zero(chart);
        p.terms.insert(Monomial::var(chart.dim(), i), Rational::one());
        p
    }

    pub fn var_named(chart: &Chart, name: &str) -> Result<Self> {
        let i = chart.index_of(name).ok_or_else(|| Error::UnknownVariable {
            name: name.into(),
            offset: 0,
        })?;
        Ok(Self::var(chart, i))
    }

    pub fn monomial(chart: &Chart, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), chart.dim(), "monomial arity");
        let mut p = Self::zero(chart);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(chart: &Chart, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(chart);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.chart.dim()))
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = Self::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Self::one(&self.chart);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to the named chart variable.
    pub fn diff(&self, var: &str) -> Result<Polynomial> {
        let i = self.chart.index_of(var).ok_or_else(|| Error::UnknownVariable {
            name: var.into(),
            offset: 0,
        })?;
        Ok(self.diff_index(i))
    }

    /// Partial derivative with respect to chart position `i`.
    pub fn diff_index(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Exact value at a point given in chart order.
    pub fn eval_at(&self, point: &[Rational]) -> Result<Rational> {
        self.check_point_len(point.len())?;
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact value at a named point; every chart variable must be assigned.
    pub fn eval(&self, point: &HashMap<String, Rational>) -> Result<Rational> {
        let values = self.ordered_point(point)?;
        self.eval_at(&values)
    }

    /// Double-precision value at a point given in chart order.
    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        self.check_point_len(point.len())?;
        Ok(self.eval_f64_unchecked(point))
    }

    /// Double-precision value at a named point.
    pub fn eval_f64_named(&self, point: &HashMap<String, f64>) -> Result<f64> {
        let values = self.ordered_point(point)?;
        self.eval_f64(&values)
    }

    fn ordered_point<T: Clone>(&self, point: &HashMap<String, T>) -> Result<Vec<T>> {
        self.chart
            .names()
            .iter()
            .map(|n| point.get(n).cloned().ok_or_else(|| Error::MissingAssignment(n.clone())))
            .collect()
    }

    pub(crate) fn eval_f64_unchecked(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(to_f64(c), |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    fn check_point_len(&self, n: usize) -> Result<()> {
        if n == self.chart.dim() {
            Ok(())
        } else if n < self.chart.dim() {
            Err(Error::MissingAssignment(self.chart.name(n).to_string()))
        } else {
            Err(Error::Dimension(format!(
                "point has {n} coordinates, chart {} has {}",
                self.chart,
                self.chart.dim()
            )))
        }
    }

    /// Replace every chart variable `x^i` by `images[i]`.
    ///
    /// The images share a target chart, which becomes the chart of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.chart.dim() {
            return Err(Error::Dimension(format!(
                "substitution needs {} images, got {}",
                self.chart.dim(),
                images.len()
            )));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.chart.clone();
        for im in images {
            target.ensure_same(&im.chart)?;
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(&target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out += &t;
        }
        Ok(out)
    }

    /// `p(A x)`: substitute `x^r -> sum_j A[r][j] x^j` on the same chart.
    pub fn compose_linear(&self, a: &RationalMatrix) -> Result<Polynomial> {
        let d = self.chart.dim();
        if a.rows() != d || a.cols() != d {
            return Err(Error::Dimension(format!(
                "linear map is {}x{}, chart dimension is {d}",
                a.rows(),
                a.cols()
            )));
        }
        let images: Vec<Polynomial> = (0..d)
            .map(|r| Polynomial::from_terms(&self.chart, (0..d).map(|j| (Monomial::var(d, j), a[(r, j)].clone()))))
            .collect();
        self.substitute(&images)
    }

    /// Same terms, coordinates renamed to those of `chart`.
    pub fn relabel(&self, chart: &Chart) -> Result<Polynomial> {
        if chart.dim() != self.chart.dim() {
            return Err(Error::Dimension(format!("cannot relabel {} as {chart}", self.chart)));
        }
        Ok(Polynomial {
            chart: chart.clone(),
            terms: self.terms.clone(),
        })
    }
}

impl fmt::Display for Polynomial {
    /// Emits the parser grammar, terms in descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            // The grammar has no unary minus on identifiers, so a leading
            // negative unit keeps its explicit 1.
            if !abs.is_one() || (k == 0 && neg) {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(self.chart.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.chart.names().join(","))
    }
}

// Operator forms panic on chart mismatch; use the `checked_*` methods at
// trust boundaries.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial chart mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.chart.ensure_same(&rhs.chart).expect("polynomial chart mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.chart.ensure_same(&rhs.chart).expect("polynomial chart mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
