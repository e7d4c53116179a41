//! Fixed-step RK4 for `x' = pi # dH` and conservation drift of invariants.
//!
//! The only floating-point part of the crate. The vector field is computed
//! exactly once, then compiled to `f64` monomials.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyalg::{to_f64, Chart, Polynomial};
use crate::tensorcalc::{ham_vf, Bivector, VectorField};

/// A polynomial compiled to `f64` coefficients and exponent vectors.
#[derive(Clone, Debug)]
struct CompiledPoly(Vec<(f64, Vec<u32>)>);

impl CompiledPoly {
    fn new(p: &Polynomial) -> Self {
        CompiledPoly(p.terms().map(|(m, c)| (to_f64(c), m.exponents().to_vec())).collect())
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .map(|(c, e)| {
                e.iter()
                    .zip(x)
                    .filter(|(k, _)| **k > 0)
                    .fold(*c, |acc, (k, xi)| acc * xi.powi(*k as i32))
            })
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct CompiledField(Vec<CompiledPoly>);

impl CompiledField {
    pub fn new(x: &VectorField) -> Self {
        CompiledField(x.components().iter().map(CompiledPoly::new).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.0.iter().map(|c| c.eval(x)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn last(&self) -> &[f64] {
        self.states.last().expect("nonempty trajectory")
    }

    pub fn step(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    /// `t,<chart names>` header then one row per sample.
    pub fn to_csv(&self, chart: &Chart) -> String {
        let mut out = String::from("t");
        for n in chart.names() {
            out.push(',');
            out.push_str(n);
        }
        out.push('\n');
        for (t, x) in self.times.iter().zip(&self.states) {
            out.push_str(&t.to_string());
            for v in x {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Integrate the Hamiltonian flow of `h` from `x0` up to `t_end`.
///
/// Uses `n = round(t_end / h)` (at least 1) steps of size `t_end / n`, so the
/// grid is uniform and ends exactly at `t_end`.
pub fn integrate(pi: &Bivector, h: &Polynomial, x0: &[f64], t_end: f64, step: f64) -> Result<Trajectory> {
    let field = CompiledField::new(&ham_vf(pi, h)?);
    integrate_field(&field, x0, t_end, step)
}

pub fn integrate_field(field: &CompiledField, x0: &[f64], t_end: f64, step: f64) -> Result<Trajectory> {
    if !(step > 0.0 && step.is_finite() && t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter("need finite t_end > 0 and step > 0".into()));
    }
    if x0.len() != field.dim() {
        return Err(Error::Dimension(format!(
            "x0 has {} entries, chart has {}",
            x0.len(),
            field.dim()
        )));
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { last_time: 0.0 });
    }
    let n = ((t_end / step).round() as usize).max(1);
    let dt = t_end / n as f64;
    let mut times = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    times.push(0.0);
    states.push(x0.to_vec());
    let axpy = |x: &[f64], k: &[f64], s: f64| -> Vec<f64> { x.iter().zip(k).map(|(a, b)| a + s * b).collect() };
    for i in 0..n {
        let x = &states[i];
        let k1 = field.eval(x);
        let k2 = field.eval(&axpy(x, &k1, dt / 2.0));
        let k3 = field.eval(&axpy(x, &k2, dt / 2.0));
        let k4 = field.eval(&axpy(x, &k3, dt));
        let next: Vec<f64> = (0..x.len())
            .map(|j| x[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]))
            .collect();
        if next.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { last_time: times[i] });
        }
        times.push((i + 1) as f64 * dt);
        states.push(next);
    }
    Ok(Trajectory { times, states })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftEntry {
    pub name: String,
    pub initial: f64,
    pub max_drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftReport {
    pub entries: Vec<DriftEntry>,
}

impl DriftReport {
    pub fn max_drift(&self) -> f64 {
        self.entries.iter().map(|e| e.max_drift).fold(0.0, f64::max)
    }

    pub fn within(&self, tolerance: f64) -> bool {
        self.entries.iter().all(|e| e.max_drift <= tolerance)
    }
}

/// `max_t |F(x(t)) - F(x(0))|` for every named invariant.
pub fn drift_report(traj: &Trajectory, invariants: &[(String, Polynomial)]) -> Result<DriftReport> {
    let entries = invariants
        .iter()
        .map(|(name, f)| {
            let c = CompiledPoly::new(f);
            if f.chart().dim() != traj.states[0].len() {
                return Err(Error::Dimension(format!("invariant `{name}` is on a different chart")));
            }
            let initial = c.eval(&traj.states[0]);
            let max_drift = traj
                .states
                .iter()
                .map(|x| (c.eval(x) - initial).abs())
                .fold(0.0, f64::max);
            Ok(DriftEntry {
                name: name.clone(),
                initial,
                max_drift,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DriftReport { entries })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderCheck {
    pub coarse_error: f64,
    pub fine_error: f64,
    pub ratio: f64,
}

/// One period of `H = (q^2 + p^2)/2` from `(1, 0)` at steps `2pi/40` and
/// `2pi/80`; errors are distances to the exact endpoint `(1, 0)`.
pub fn rk4_order_check() -> Result<OrderCheck> {
    let chart = Chart::canonical(1);
    let pi = Bivector::standard(&chart)?;
    let h = crate::polyalg::parse_poly("1/2*q1^2 + 1/2*p1^2", &chart)?;
    let period = 2.0 * std::f64::consts::PI;
    let err = |step: f64| -> Result<f64> {
        let t = integrate(&pi, &h, &[1.0, 0.0], period, step)?;
        let x = t.last();
        Ok(((x[0] - 1.0).powi(2) + x[1].powi(2)).sqrt())
    };
    let coarse_error = err(period / 40.0)?;
    let fine_error = err(period / 80.0)?;
    Ok(OrderCheck {
        coarse_error,
        fine_error,
        ratio: coarse_error / fine_error,
    })
}
