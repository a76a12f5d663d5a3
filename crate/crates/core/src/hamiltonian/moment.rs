//! Moment maps for torus actions and the checks attached to them.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::calculus::{
    compose_jets, exterior_d, interior, lie_bracket, lie_derivative, pullback, pullback_scalar,
    wedge, Chart, ChartMap, Form, GvField, ScalarField, VectorField,
};
use crate::courant::gv_residual;
use crate::error::{GeomError, Result};
use crate::jet::Jet;

use super::structure::GcsField;

/// Components `μ_i` of a moment map with `𝕁(dμ_i) = X_i + ξ_i`.
#[derive(Clone)]
pub struct MomentMapSpec {
    pub mu: Vec<ScalarField>,
    pub x: Vec<VectorField>,
    pub xi: Vec<Form>,
}

impl MomentMapSpec {
    pub fn new(mu: Vec<ScalarField>, x: Vec<VectorField>, xi: Vec<Form>) -> Result<Self> {
        if mu.is_empty() || x.len() != mu.len() || xi.len() != mu.len() {
            return Err(GeomError::InvalidParameter(format!(
                "moment map with {} components, {} generators, {} covectors",
                mu.len(),
                x.len(),
                xi.len()
            )));
        }
        let c = mu[0].chart().clone();
        for i in 0..mu.len() {
            c.same(mu[i].chart())?;
            c.same(x[i].chart())?;
            c.same(xi[i].chart())?;
            xi[i].require_degree(1)?;
        }
        Ok(MomentMapSpec { mu, x, xi })
    }

    /// Generators read off from `𝕁(dμ_i)`.
    pub fn from_structure(s: &GcsField, mu: Vec<ScalarField>) -> Result<Self> {
        let mut x = Vec::new();
        let mut xi = Vec::new();
        for f in &mu {
            let h = s.hamiltonian_field(f)?;
            x.push(h.vector());
            xi.push(h.covector());
        }
        Self::new(mu, x, xi)
    }

    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    pub fn chart(&self) -> &Chart {
        self.mu[0].chart()
    }

    pub fn generator(&self, i: usize) -> GvField {
        GvField::from_parts(&self.x[i], &self.xi[i])
    }

    /// Diagonal action on `a × b`, with moment map `μ_a + μ_b`.
    pub fn diagonal(&self, other: &MomentMapSpec) -> Result<MomentMapSpec> {
        if self.rank() != other.rank() {
            return Err(GeomError::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        let (ca, cb) = (self.chart().clone(), other.chart().clone());
        let (pa, pb) = ChartMap::projections(&ca, &cb);
        let prod = ca.product(&cb);
        let (m1, m) = (ca.dim(), ca.dim() + cb.dim());
        let mut mu = Vec::new();
        let mut x = Vec::new();
        let mut xi = Vec::new();
        for i in 0..self.rank() {
            mu.push(pullback_scalar(&pa, &self.mu[i])?.add(&pullback_scalar(&pb, &other.mu[i])?));
            xi.push(pullback(&pa, &self.xi[i])?.add(&pullback(&pb, &other.xi[i])?));
            let (xa, xb) = (self.x[i].clone(), other.x[i].clone());
            x.push(VectorField::from_evaluator(
                &prod,
                Arc::new(move |p, k| {
                    let xs = Jet::coordinates(p, k);
                    let mut out = compose_jets(&xa.jet(&p[..m1], k)?, &xs[..m1]);
                    out.extend(compose_jets(&xb.jet(&p[m1..], k)?, &xs[m1..]));
                    debug_assert_eq!(out.len(), m);
                    Ok(out)
                }),
            ));
        }
        MomentMapSpec::new(mu, x, xi)
    }
}

/// Largest residuals of the Hamiltonian action checks over sampled points.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HamiltonianReport {
    /// `𝕁(dμ_i) − (X_i + ξ_i)`.
    pub generator: f64,
    /// `dξ_i − ι_{X_i}H`.
    pub closed_twist: f64,
    /// `[X_i, X_j]`.
    pub commutation: f64,
    /// `ι_{X_i}dμ_j`.
    pub equivariance: f64,
    /// Smallest singular value of `(dμ_i)` (a margin: larger is better).
    pub regularity: f64,
    /// Smallest singular value of `(X_i)` (a margin: larger is better).
    pub freeness: f64,
}

impl HamiltonianReport {
    /// Largest of the residuals that should vanish.
    pub fn max_residual(&self) -> f64 {
        self.generator
            .max(self.closed_twist)
            .max(self.commutation)
            .max(self.equivariance)
    }
}

fn smallest_singular(cols: &[Vec<f64>]) -> f64 {
    let m = DMatrix::from_fn(cols[0].len(), cols.len(), |i, j| cols[j][i]);
    m.svd(false, false).singular_values.min()
}

pub fn check_hamiltonian_action(
    s: &GcsField,
    spec: &MomentMapSpec,
    points: &[Vec<f64>],
) -> Result<HamiltonianReport> {
    s.chart().same(spec.chart())?;
    let r = spec.rank();
    let h = s.twist();
    let mut out = HamiltonianReport {
        regularity: f64::INFINITY,
        freeness: f64::INFINITY,
        ..Default::default()
    };
    let ham: Vec<GvField> = spec
        .mu
        .iter()
        .map(|f| s.hamiltonian_field(f))
        .collect::<Result<_>>()?;
    let closed: Vec<Form> = (0..r)
        .map(|i| exterior_d(&spec.xi[i]).sub(&interior(&spec.x[i], &h)))
        .collect();
    let dmu: Vec<Form> = spec.mu.iter().map(|f| exterior_d(&f.to_form())).collect();
    for p in points {
        let mut grads = Vec::new();
        let mut gens = Vec::new();
        for i in 0..r {
            out.generator = out.generator.max(gv_residual(&ham[i], &spec.generator(i), p)?);
            out.closed_twist = out.closed_twist.max(closed[i].value(p)?.max_magnitude());
            for j in 0..r {
                let e = interior(&spec.x[i], &dmu[j]).value(p)?.max_magnitude();
                out.equivariance = out.equivariance.max(e);
                if j > i {
                    let c = lie_bracket(&spec.x[i], &spec.x[j]).value(p)?;
                    out.commutation = c.iter().fold(out.commutation, |m, v| m.max(v.abs()));
                }
            }
            grads.push(spec.mu[i].gradient(p)?);
            gens.push(spec.x[i].value(p)?);
        }
        out.regularity = out.regularity.min(smallest_singular(&grads));
        out.freeness = out.freeness.min(smallest_singular(&gens));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BInvarianceReport {
    /// `ℒ_{X_i}B`.
    pub lie_derivative: f64,
    /// `𝕁′(dμ_i) − (X_i + ξ_i + ι_{X_i}B)` for `𝕁′ = e^{B}𝕁e^{−B}`.
    pub moment: f64,
}

/// Invariance of the action under the B-field transform
/// `X + ξ ↦ X + ξ + ι_XB`, with unchanged moment map.
pub fn b_transform_invariance(
    s: &GcsField,
    spec: &MomentMapSpec,
    b: &Form,
    points: &[Vec<f64>],
) -> Result<BInvarianceReport> {
    let moved = s.b_transform(&b.neg())?;
    let mut out = BInvarianceReport::default();
    for i in 0..spec.rank() {
        let l = lie_derivative(&spec.x[i], b);
        let got = moved.hamiltonian_field(&spec.mu[i])?;
        let want = GvField::from_parts(&spec.x[i], &spec.xi[i].add(&interior(&spec.x[i], b)));
        for p in points {
            out.lie_derivative = out.lie_derivative.max(l.value(p)?.max_magnitude());
            out.moment = out.moment.max(gv_residual(&got, &want, p)?);
        }
    }
    Ok(out)
}

/// Largest `|θ_i(X_j) − δ_ij|` over the points.
pub fn connection_residual(theta: &[Form], spec: &MomentMapSpec, points: &[Vec<f64>]) -> Result<f64> {
    if theta.len() != spec.rank() {
        return Err(GeomError::RankMismatch {
            expected: spec.rank(),
            found: theta.len(),
        });
    }
    let mut worst: f64 = 0.0;
    for p in points {
        for (i, t) in theta.iter().enumerate() {
            let tv = t.value(p)?;
            for j in 0..spec.rank() {
                let x = spec.x[j].value(p)?;
                let v = tv.contract(&x)?.get(0).copied().unwrap_or(0.0);
                let d = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - d).abs());
            }
        }
    }
    Ok(worst)
}

/// `B₁ = Σ θ_i∧ξ_i − ½ Σ θ_j∧θ_k ι_{X_k}ξ_j`.
pub fn b1_form(theta: &[Form], spec: &MomentMapSpec) -> Result<Form> {
    let r = spec.rank();
    if theta.len() != r {
        return Err(GeomError::RankMismatch {
            expected: r,
            found: theta.len(),
        });
    }
    let mut out = Form::zero(spec.chart(), 2);
    for i in 0..r {
        theta[i].require_degree(1)?;
        out = out.add(&wedge(&theta[i], &spec.xi[i]));
    }
    for j in 0..r {
        for k in 0..r {
            let c = interior(&spec.x[k], &spec.xi[j]);
            out = out.sub(&wedge(&wedge(&theta[j], &theta[k]), &c).scale(0.5));
        }
    }
    Ok(out.homogeneous(2))
}

/// Largest `|ι_{X_l}B₁ − ξ_l|` over the points.
pub fn b1_contraction_residual(b1: &Form, spec: &MomentMapSpec, points: &[Vec<f64>]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for l in 0..spec.rank() {
        let d = interior(&spec.x[l], b1).sub(&spec.xi[l]);
        for p in points {
            worst = worst.max(d.value(p)?.max_magnitude());
        }
    }
    Ok(worst)
}

/// Values of `μ` at `p`.
pub fn moment_values(spec: &MomentMapSpec, p: &[f64]) -> Result<Vec<f64>> {
    spec.mu.iter().map(|f| f.value(p)).collect()
}
