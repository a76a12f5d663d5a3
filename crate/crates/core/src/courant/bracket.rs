//! The `H`-twisted Courant bracket on sections of `TM ⊕ T*M`.
//!
//! `[X+ξ, Y+η]_H = [X,Y] + ℒ_Xη − ℒ_Yξ − ½d(ι_Xη − ι_Yξ) + ι_Yι_XH`.
//! With the pairing `⟨X+ξ, Y+η⟩ = η(X) + ξ(Y)` the operator `𝒟` is `½d`.

use std::sync::Arc;

use crate::calculus::{
    bracket_jet, d_jet, exterior_d, lie_derivative_jet, Chart, Form, FormJet, GvField, GvJet,
    ScalarField, VectorField,
};
use crate::error::Result;
use crate::exterior::GvValue;
use crate::jet::Jet;

/// Bracket on jets: `a`, `b` of order `k+1`, `h` of order `k`; result of order `k`.
pub fn courant_jet(a: &GvJet, b: &GvJet, h: Option<&FormJet>) -> Result<GvJet> {
    let m = a.vec.len();
    let (x, y) = (&a.vec, &b.vec);
    let xi = FormJet::one_form(a.cov.clone());
    let eta = FormJet::one_form(b.cov.clone());
    let vec = bracket_jet(x, y);
    let k = vec[0].order();
    let pair = eta.contract(x)?.sub(&xi.contract(y)?)?;
    let mut cov = lie_derivative_jet(x, &eta)?
        .sub(&lie_derivative_jet(y, &xi)?)?
        .sub(&d_jet(&pair).scale(0.5))?;
    if let Some(h) = h {
        cov = cov.add(&h.contract(x)?.contract(y)?)?;
    }
    let cov = (0..m)
        .map(|i| {
            cov.get(1 << i)
                .map(|c| c.truncate(k))
                .unwrap_or_else(|| Jet::zero(m, k))
        })
        .collect();
    Ok(GvValue { vec, cov })
}

/// Chart together with a twisting 3-form.
#[derive(Clone)]
pub struct TwistedCourant {
    chart: Chart,
    h: Option<Form>,
}

/// Pointwise residuals of the five Courant algebroid identities.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    /// `[anchor, jacobiator, leibniz, d_null, invariance]` at each point.
    pub per_point: Vec<[f64; 5]>,
}

impl AxiomReport {
    pub const NAMES: [&'static str; 5] = ["anchor", "jacobiator", "leibniz", "d_null", "invariance"];

    pub fn max(&self) -> [f64; 5] {
        self.per_point.iter().fold([0.0; 5], |mut acc, r| {
            for (a, b) in acc.iter_mut().zip(r) {
                *a = a.max(*b);
            }
            acc
        })
    }
}

/// Largest component of `a − b` at `p`.
pub fn gv_residual(a: &GvField, b: &GvField, p: &[f64]) -> Result<f64> {
    let (u, v) = (a.value(p)?, b.value(p)?);
    Ok(u.stacked()
        .iter()
        .zip(v.stacked())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs())))
}

impl TwistedCourant {
    pub fn new(h: &Form) -> Result<Self> {
        h.require_degree(3)?;
        Ok(TwistedCourant {
            chart: h.chart().clone(),
            h: Some(h.clone()),
        })
    }

    pub fn untwisted(chart: &Chart) -> Self {
        TwistedCourant {
            chart: chart.clone(),
            h: None,
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn h(&self) -> Option<&Form> {
        self.h.as_ref()
    }

    /// Largest coefficient of `dH` over the points.
    pub fn closure_residual(&self, points: &[Vec<f64>]) -> Result<f64> {
        let Some(h) = &self.h else { return Ok(0.0) };
        let dh = exterior_d(h);
        points
            .iter()
            .try_fold(0.0f64, |m, p| Ok(m.max(dh.value(p)?.max_magnitude())))
    }

    pub fn bracket(&self, a: &GvField, b: &GvField) -> Result<GvField> {
        self.chart.same(a.chart())?;
        self.chart.same(b.chart())?;
        let (ea, eb) = (a.evaluator().clone(), b.evaluator().clone());
        let eh = self.h.as_ref().map(|h| h.evaluator().clone());
        Ok(GvField::from_evaluator(
            &self.chart,
            Arc::new(move |p, k| {
                let h = match &eh {
                    Some(e) => Some(e(p, k)?),
                    None => None,
                };
                courant_jet(&ea(p, k + 1)?, &eb(p, k + 1)?, h.as_ref())
            }),
        ))
    }

    /// `𝒟f = ½df`.
    pub fn d_operator(&self, f: &ScalarField) -> GvField {
        GvField::from_covector(&exterior_d(&f.to_form()).scale(0.5))
    }

    pub fn anchor(&self, a: &GvField) -> VectorField {
        a.vector()
    }

    /// Residuals of the anchor homomorphism, `Jac = 𝒟Nij`, the Leibniz rule,
    /// `⟨𝒟f, 𝒟g⟩ = 0` and invariance of the pairing.
    pub fn axiom_residuals(
        &self,
        a: &GvField,
        b: &GvField,
        c: &GvField,
        f: &ScalarField,
        g: &ScalarField,
        points: &[Vec<f64>],
    ) -> Result<AxiomReport> {
        let ab = self.bracket(a, b)?;
        let bc = self.bracket(b, c)?;
        let ca = self.bracket(c, a)?;
        let ac = self.bracket(a, c)?;

        let anchor_l = ab.vector();
        let anchor_r = crate::calculus::lie_bracket(&a.vector(), &b.vector());

        let jac = self
            .bracket(&ab, c)?
            .add(&self.bracket(&bc, a)?)
            .add(&self.bracket(&ca, b)?);
        let nij = ab
            .pairing(c)
            .add(&bc.pairing(a))
            .add(&ca.pairing(b))
            .scale(1.0 / 3.0);
        let d_nij = self.d_operator(&nij);

        let fb = b.mul_scalar(f);
        let af = crate::calculus::directional(&a.vector(), f);
        let leib_l = self.bracket(a, &fb)?;
        let leib_r = ab
            .mul_scalar(f)
            .add(&b.mul_scalar(&af))
            .sub(&self.d_operator(f).mul_scalar(&a.pairing(b)));

        let dfdg = self.d_operator(f).pairing(&self.d_operator(g));

        let inv_l = crate::calculus::directional(&a.vector(), &b.pairing(c));
        let inv_r = ab
            .add(&self.d_operator(&a.pairing(b)))
            .pairing(c)
            .add(&b.pairing(&ac.add(&self.d_operator(&a.pairing(c)))));

        let mut out = AxiomReport::default();
        for p in points {
            let r1 = crate::calculus::vector_residual(&anchor_l, &anchor_r, p)?;
            let r2 = gv_residual(&jac, &d_nij, p)?;
            let r3 = gv_residual(&leib_l, &leib_r, p)?;
            let r4 = dfdg.value(p)?.abs();
            let r5 = (inv_l.value(p)? - inv_r.value(p)?).abs();
            out.per_point.push([r1, r2, r3, r4, r5]);
        }
        Ok(out)
    }
}
