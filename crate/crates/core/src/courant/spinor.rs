//! Actions on (complex) differential forms regarded as spinors.

use std::sync::Arc;

use crate::calculus::{lie_derivative, push_form, twisted_d, wedge, ComplexForm, Form};
use crate::error::Result;
use crate::jet::Jet;

use super::infinitesimal::InfSymmetry;
use super::symmetry::GenSymmetry;

/// `e^{−α} ∧ ω` for a real form.
pub fn exp_neg_wedge(alpha: &Form, w: &Form) -> Result<Form> {
    alpha.chart().same(w.chart())?;
    let (a, b) = (alpha.evaluator().clone(), w.evaluator().clone());
    let m = alpha.chart().dim();
    Ok(Form::from_evaluator(
        w.chart(),
        None,
        Arc::new(move |p, k| {
            let e = a(p, k)?.neg().exp_wedge_with(Jet::constant(1.0, m, k))?;
            e.wedge(&b(p, k)?)
        }),
    ))
}

fn both(rho: &ComplexForm, f: impl Fn(&Form) -> Result<Form>) -> Result<ComplexForm> {
    Ok(ComplexForm::new(f(&rho.re)?, f(&rho.im)?))
}

/// `g∘ρ = (λ⁻¹)^*(e^{−α} ∧ ρ)`.
pub fn spinor_act(g: &GenSymmetry, rho: &ComplexForm) -> Result<ComplexForm> {
    g.chart().same(rho.chart())?;
    both(rho, |w| push_form(&g.diffeo, &exp_neg_wedge(&g.alpha, w)?))
}

/// `(X,A)∘ρ = −ℒ_Xρ − A∧ρ`.
pub fn spinor_inf_act(p: &InfSymmetry, rho: &ComplexForm) -> Result<ComplexForm> {
    p.chart().same(rho.chart())?;
    both(rho, |w| Ok(lie_derivative(&p.x, w).neg().sub(&wedge(&p.a, w))))
}

/// `d_Hρ` applied to real and imaginary parts.
pub fn twisted_d_complex(h: &Form, rho: &ComplexForm) -> Result<ComplexForm> {
    both(rho, |w| twisted_d(h, w))
}

/// Largest residual of `d_{g∘H}(g∘ρ) = g∘(d_Hρ)` over the points.
pub fn d_h_compatibility_residual(
    g: &GenSymmetry,
    h: &Form,
    rho: &ComplexForm,
    points: &[Vec<f64>],
) -> Result<f64> {
    let lhs = twisted_d_complex(&g.transport_h(h)?, &spinor_act(g, rho)?)?;
    let rhs = spinor_act(g, &twisted_d_complex(h, rho)?)?;
    complex_residual(&lhs, &rhs, points)
}

/// Largest coefficient modulus of `a − b` over the points.
pub fn complex_residual(a: &ComplexForm, b: &ComplexForm, points: &[Vec<f64>]) -> Result<f64> {
    points.iter().try_fold(0.0f64, |m, p| {
        Ok(m.max(a.value(p)?.sub(&b.value(p)?)?.max_magnitude()))
    })
}
