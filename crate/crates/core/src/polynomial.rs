//! Random polynomial fields of degree at most two, for property suites.

use rand::Rng;

use crate::calculus::{Chart, Form, FormJet, GvField, ScalarField, VectorField};
use crate::exterior::blade_of;
use crate::jet::Jet;

/// `c + Σ bᵢxᵢ + Σ_{i≤j} a_{ij}xᵢxⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic {
    pub c: f64,
    pub linear: Vec<f64>,
    pub quadratic: Vec<(usize, usize, f64)>,
}

impl Quadratic {
    pub fn random(rng: &mut impl Rng, dim: usize, scale: f64) -> Self {
        let mut q = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                q.push((i, j, scale * rng.gen_range(-1.0..1.0)));
            }
        }
        Quadratic {
            c: scale * rng.gen_range(-1.0..1.0),
            linear: (0..dim).map(|_| scale * rng.gen_range(-1.0..1.0)).collect(),
            quadratic: q,
        }
    }

    pub fn eval(&self, x: &[Jet]) -> Jet {
        let mut s = x[0].constant_like(self.c);
        for (xi, b) in x.iter().zip(&self.linear) {
            s = &s + &xi.scale(*b);
        }
        for &(i, j, a) in &self.quadratic {
            s = &s + &(&x[i] * &x[j]).scale(a);
        }
        s
    }
}

fn quadratics(rng: &mut impl Rng, n: usize, dim: usize, scale: f64) -> Vec<Quadratic> {
    (0..n).map(|_| Quadratic::random(rng, dim, scale)).collect()
}

pub fn random_scalar(rng: &mut impl Rng, chart: &Chart, scale: f64) -> ScalarField {
    let q = Quadratic::random(rng, chart.dim(), scale);
    ScalarField::new(chart, move |x| q.eval(x))
}

pub fn random_vector_field(rng: &mut impl Rng, chart: &Chart, scale: f64) -> VectorField {
    let qs = quadratics(rng, chart.dim(), chart.dim(), scale);
    VectorField::new(chart, move |x| qs.iter().map(|q| q.eval(x)).collect())
}

pub fn random_section(rng: &mut impl Rng, chart: &Chart, scale: f64) -> GvField {
    let m = chart.dim();
    let v = quadratics(rng, m, m, scale);
    let c = quadratics(rng, m, m, scale);
    GvField::new(chart, move |x| {
        (v.iter().map(|q| q.eval(x)).collect(), c.iter().map(|q| q.eval(x)).collect())
    })
}

/// Random `k`-form with quadratic coefficients on every blade.
pub fn random_form(rng: &mut impl Rng, chart: &Chart, k: usize, scale: f64) -> Form {
    let m = chart.dim();
    let blades: Vec<Vec<usize>> = combinations(m, k);
    let qs = quadratics(rng, blades.len(), m, scale);
    Form::new(chart, Some(k), move |x| {
        let mut w = FormJet::zero(m);
        for (b, q) in blades.iter().zip(&qs) {
            w.accumulate(blade_of(b), q.eval(x));
        }
        w
    })
}

/// Increasing `k`-subsets of `0..m`.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}
