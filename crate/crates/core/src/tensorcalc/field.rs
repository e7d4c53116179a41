use crate::error::{Error, Result};
use crate::polyalg::{parse_poly, Chart, Polynomial, Rational};

/// Polynomial vector field `X = X^i d/dx^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    chart: Chart,
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(chart: &Chart, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != chart.dim() {
            return Err(Error::Dimension(format!(
                "vector field on {chart} needs {} components, got {}",
                chart.dim(),
                components.len()
            )));
        }
        for c in &components {
            chart.ensure_same(c.chart())?;
        }
        Ok(VectorField {
            chart: chart.clone(),
            components,
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        VectorField {
            chart: chart.clone(),
            components: vec![Polynomial::zero(chart); chart.dim()],
        }
    }

    /// The coordinate field `d/dx^i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut x = Self::zero(chart);
        x.components[i] = Polynomial::one(chart);
        x
    }

    pub fn parse<S: AsRef<str>>(chart: &Chart, components: &[S]) -> Result<Self> {
        let comps = components
            .iter()
            .map(|s| parse_poly(s.as_ref(), chart))
            .collect::<Result<Vec<_>>>()?;
        Self::new(chart, comps)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Directional derivative `X[f] = X^i d_i f`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.chart.ensure_same(f.chart())?;
        let mut out = Polynomial::zero(&self.chart);
        for (i, xi) in self.components.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            out += &(xi * &f.diff_index(i));
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Result<Self> {
        self.chart.ensure_same(&other.chart)?;
        Ok(VectorField {
            chart: self.chart.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiply every component by a polynomial.
    pub fn mul_poly(&self, f: &Polynomial) -> Result<Self> {
        self.chart.ensure_same(f.chart())?;
        Ok(VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|p| p * f).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|p| -p).collect(),
        }
    }

    pub fn relabel(&self, chart: &Chart) -> Result<Self> {
        let comps = self
            .components
            .iter()
            .map(|p| p.relabel(chart))
            .collect::<Result<Vec<_>>>()?;
        Self::new(chart, comps)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.components.iter().map(ToString::to_string).collect()
    }
}

/// `[X,Y]^i = X^j d_j Y^i - Y^j d_j X^i`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    x.chart.ensure_same(&y.chart)?;
    let comps = (0..x.chart.dim())
        .map(|i| Ok(x.apply(&y.components[i])? - y.apply(&x.components[i])?))
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(&x.chart, comps)
}
