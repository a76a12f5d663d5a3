//! Fixed-step RK4 flows.
//!
//! The integrator runs directly on jets: starting from the identity jet of
//! the initial point, every stage evaluates the field at the current jet
//! point, so the result carries the derivatives of the discrete flow map
//! with respect to the initial point. The order-1 part is the solution of
//! the variational equation.

use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::jet::Jet;

use super::field::{compose_jets, values, Chart, ChartMap, Diffeo, VectorField};

pub const DEFAULT_STEPS_PER_UNIT: usize = 256;

type TimeEval = Arc<dyn Fn(f64, &[f64], usize) -> Result<Vec<Jet>> + Send + Sync>;

/// Time-dependent vector field `X_t`.
#[derive(Clone)]
pub struct TimeVectorField {
    chart: Chart,
    eval: TimeEval,
}

impl TimeVectorField {
    pub fn new(chart: &Chart, f: impl Fn(f64) -> VectorField + Send + Sync + 'static) -> Self {
        TimeVectorField {
            chart: chart.clone(),
            eval: Arc::new(move |t, p, k| f(t).jet(p, k)),
        }
    }

    pub fn autonomous(x: &VectorField) -> Self {
        let a = x.evaluator().clone();
        TimeVectorField {
            chart: x.chart().clone(),
            eval: Arc::new(move |_, p, k| a(p, k)),
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn jet(&self, t: f64, p: &[f64], k: usize) -> Result<Vec<Jet>> {
        (self.eval)(t, p, k)
    }
}

fn axpy(y: &[Jet], h: f64, k: &[Jet]) -> Vec<Jet> {
    y.iter().zip(k).map(|(a, b)| a + &b.scale(h)).collect()
}

/// Integrates `ẏ = X_t(y)` from `t0` to `t1` starting at jets `y0`.
pub fn integrate_jets(
    x: &TimeVectorField,
    y0: Vec<Jet>,
    t0: f64,
    t1: f64,
    steps_per_unit: usize,
) -> Result<Vec<Jet>> {
    let n = (((t1 - t0).abs() * steps_per_unit as f64).ceil() as usize).max(1);
    let h = (t1 - t0) / n as f64;
    let order = y0[0].order();
    let eval = |t: f64, y: &[Jet]| -> Result<Vec<Jet>> {
        let p = values(y);
        if !x.chart.contains(&p) {
            return Err(GeomError::TrajectoryLeftChart {
                chart: x.chart.name().to_string(),
                time: t,
            });
        }
        Ok(compose_jets(&x.jet(t, &p, order)?, y))
    };
    let mut y = y0;
    for s in 0..n {
        let t = t0 + s as f64 * h;
        let k1 = eval(t, &y)?;
        let k2 = eval(t + 0.5 * h, &axpy(&y, 0.5 * h, &k1))?;
        let k3 = eval(t + 0.5 * h, &axpy(&y, 0.5 * h, &k2))?;
        let k4 = eval(t + h, &axpy(&y, h, &k3))?;
        y = y
            .iter()
            .enumerate()
            .map(|(i, yi)| {
                let inc = &(&k1[i] + &k4[i]) + &(&k2[i] + &k3[i]).scale(2.0);
                yi + &inc.scale(h / 6.0)
            })
            .collect();
    }
    if !x.chart.contains(&values(&y)) {
        return Err(GeomError::TrajectoryLeftChart {
            chart: x.chart.name().to_string(),
            time: t1,
        });
    }
    Ok(y)
}

/// Point reached from `p` after time `t` along `X`.
pub fn flow(x: &VectorField, p: &[f64], t: f64, steps_per_unit: usize) -> Result<Vec<f64>> {
    x.chart().check(p)?;
    let y0: Vec<Jet> = p.iter().map(|&v| Jet::constant(v, p.len(), 0)).collect();
    Ok(values(&integrate_jets(
        &TimeVectorField::autonomous(x),
        y0,
        0.0,
        t,
        steps_per_unit,
    )?))
}

/// The time-`t0 → t1` flow of `X_t` as a chart map with jets.
pub fn time_flow_map(x: &TimeVectorField, t0: f64, t1: f64, steps_per_unit: usize) -> ChartMap {
    let f = x.clone();
    ChartMap::from_evaluator(
        &x.chart,
        &x.chart,
        Arc::new(move |p, k| {
            f.chart.check(p)?;
            integrate_jets(&f, Jet::coordinates(p, k), t0, t1, steps_per_unit)
        }),
    )
}

pub fn flow_map(x: &VectorField, t: f64, steps_per_unit: usize) -> ChartMap {
    time_flow_map(&TimeVectorField::autonomous(x), 0.0, t, steps_per_unit)
}

/// `e^{tX}` with its inverse `e^{-tX}`.
pub fn flow_diffeo(x: &VectorField, t: f64, steps_per_unit: usize) -> Diffeo {
    Diffeo::new(flow_map(x, t, steps_per_unit), flow_map(x, -t, steps_per_unit))
}

/// Flow `λ_t` of a time-dependent field from 0 to `t`, with inverse obtained by
/// integrating backwards from `t` to 0.
pub fn time_flow_diffeo(x: &TimeVectorField, t: f64, steps_per_unit: usize) -> Diffeo {
    Diffeo::new(
        time_flow_map(x, 0.0, t, steps_per_unit),
        time_flow_map(x, t, 0.0, steps_per_unit),
    )
}
