//! Exterior calculus on chart fields.

use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::exterior::{Blade, Multivector};
use crate::jet::Jet;

use super::field::{
    compose_form, compose_jets, values, ChartMap, Diffeo, Form, FormJet, ScalarField, VectorField,
};

/// `d` on jets; the result has one order less.
pub fn d_jet(w: &FormJet) -> FormJet {
    let m = w.dim();
    let mut out = FormJet::zero(m);
    for (b, c) in w.terms() {
        for j in 0..m {
            if b & (1 << j) != 0 {
                continue;
            }
            let below = (b & ((1u32 << j) - 1)).count_ones();
            let dc = c.derivative(j);
            let dc = if below % 2 == 1 { -dc } else { dc };
            out.accumulate(b | (1 << j), dc);
        }
    }
    out
}

pub fn exterior_d(w: &Form) -> Form {
    let a = w.evaluator().clone();
    Form::from_evaluator(
        w.chart(),
        w.degree().map(|k| k + 1),
        Arc::new(move |p, k| Ok(d_jet(&a(p, k + 1)?))),
    )
}

pub fn d_scalar(f: &ScalarField) -> Form {
    exterior_d(&f.to_form())
}

pub fn wedge(a: &Form, b: &Form) -> Form {
    let (x, y) = (a.evaluator().clone(), b.evaluator().clone());
    let degree = match (a.degree(), b.degree()) {
        (Some(i), Some(j)) => Some(i + j),
        _ => None,
    };
    Form::from_evaluator(
        a.chart(),
        degree,
        Arc::new(move |p, k| x(p, k)?.wedge(&y(p, k)?)),
    )
}

pub fn interior(x: &VectorField, w: &Form) -> Form {
    let (a, b) = (x.evaluator().clone(), w.evaluator().clone());
    Form::from_evaluator(
        w.chart(),
        w.degree().map(|k| k.saturating_sub(1)),
        Arc::new(move |p, k| b(p, k)?.contract(&a(p, k)?)),
    )
}

/// `X(f)` for a function `f`.
pub fn directional(x: &VectorField, f: &ScalarField) -> ScalarField {
    interior(x, &d_scalar(f)).to_scalar()
}

/// `[X, Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let (a, b) = (x.evaluator().clone(), y.evaluator().clone());
    VectorField::from_evaluator(
        x.chart(),
        Arc::new(move |p, k| Ok(bracket_jet(&a(p, k + 1)?, &b(p, k + 1)?))),
    )
}

/// `[X, Y]` on jets of order `k+1`, giving order `k`.
pub fn bracket_jet(xs: &[Jet], ys: &[Jet]) -> Vec<Jet> {
    let m = xs.len();
    (0..m)
        .map(|i| {
            let mut acc = &xs[0] * &ys[i].derivative(0) - &ys[0] * &xs[i].derivative(0);
            for j in 1..m {
                acc = &acc + &(&xs[j] * &ys[i].derivative(j));
                acc = &acc - &(&ys[j] * &xs[i].derivative(j));
            }
            acc
        })
        .collect()
}

/// `ℒ_X ω = d ι_X ω + ι_X dω` on jets of order `k+1`, giving order `k`.
pub fn lie_derivative_jet(x: &[Jet], w: &FormJet) -> Result<FormJet> {
    d_jet(&w.contract(x)?).add(&d_jet(w).contract(x)?)
}

/// Cartan formula `ℒ_X ω = d ι_X ω + ι_X dω`.
pub fn lie_derivative(x: &VectorField, w: &Form) -> Form {
    let (a, b) = (x.evaluator().clone(), w.evaluator().clone());
    Form::from_evaluator(
        w.chart(),
        w.degree(),
        Arc::new(move |p, k| lie_derivative_jet(&a(p, k + 1)?, &b(p, k + 1)?)),
    )
}

/// `d_H ρ = dρ − H ∧ ρ`.
pub fn twisted_d(h: &Form, rho: &Form) -> Result<Form> {
    h.require_degree(3)?;
    let out = exterior_d(rho).sub(&wedge(h, rho));
    Ok(Form::from_evaluator(out.chart(), None, out.evaluator().clone()))
}

/// Pull back form jets at `φ(p)` along jets `φ` (order `k+1`) to order `k`.
pub fn pullback_jet(phi: &[Jet], w: &FormJet) -> FormJet {
    let src = phi[0].nvars();
    let dphi: Vec<FormJet> = phi
        .iter()
        .map(|f| FormJet::one_form((0..src).map(|i| f.derivative(i)).collect()))
        .collect();
    let mut out = FormJet::zero(src);
    for (b, c) in w.terms() {
        let coef = c.compose(phi);
        let mut term = FormJet::scalar(src, coef);
        let mut bits: Blade = b;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            term = term.wedge(&dphi[j]).expect("same dimension");
        }
        for (bb, cc) in term.terms() {
            out.accumulate(bb, cc.clone());
        }
    }
    out
}

pub fn pullback(phi: &ChartMap, w: &Form) -> Result<Form> {
    phi.target().same(w.chart())?;
    let (f, a) = (phi.clone(), w.evaluator().clone());
    Ok(Form::from_evaluator(
        phi.source(),
        w.degree(),
        Arc::new(move |p, k| {
            let js = f.jet(p, k + 1)?;
            let at = a(&values(&js), k)?;
            Ok(pullback_jet(&js, &at))
        }),
    ))
}

pub fn pullback_scalar(phi: &ChartMap, f: &ScalarField) -> Result<ScalarField> {
    Ok(pullback(phi, &f.to_form())?.to_scalar())
}

/// `λ_* X (q) = Dλ(λ⁻¹ q) X(λ⁻¹ q)`.
pub fn pushforward(lambda: &Diffeo, x: &VectorField) -> Result<VectorField> {
    lambda.chart().same(x.chart())?;
    let (l, a) = (lambda.clone(), x.evaluator().clone());
    Ok(VectorField::from_evaluator(
        lambda.forward.target(),
        Arc::new(move |q, k| {
            let inv = l.inverse.jet(q, k)?;
            let p = values(&inv);
            let fwd = l.forward.jet(&p, k + 1)?;
            let xs = compose_jets(&a(&p, k)?, &inv);
            let m = fwd.len();
            Ok((0..m)
                .map(|i| {
                    let mut acc = xs[0].zero_like();
                    for (j, xj) in xs.iter().enumerate() {
                        acc = &acc + &(&fwd[i].derivative(j).compose(&inv) * xj);
                    }
                    acc
                })
                .collect())
        }),
    ))
}

/// `(λ⁻¹)^* ω`, i.e. the push-forward of a form.
pub fn push_form(lambda: &Diffeo, w: &Form) -> Result<Form> {
    pullback(&lambda.inverse, w)
}

/// Pointwise form jets of `ω` composed with explicit jets of a point.
pub fn form_at_jets(w: &Form, at: &[Jet]) -> Result<FormJet> {
    let k = at[0].order();
    Ok(compose_form(&w.jet(&values(at), k)?, at))
}

/// Independent oracle for `d`: central differences of order-0 evaluations.
pub fn finite_diff_oracle_d(w: &Form, p: &[f64], step: f64) -> Result<Multivector<f64>> {
    let m = p.len();
    let mut out = Multivector::<f64>::zero(m);
    for j in 0..m {
        let mut plus = p.to_vec();
        let mut minus = p.to_vec();
        plus[j] += step;
        minus[j] -= step;
        let diff = w.value(&plus)?.sub(&w.value(&minus)?)?.scale(0.5 / step);
        let dxj = Multivector::term(m, &[j], 1.0);
        out = out.add(&dxj.wedge(&diff)?)?;
    }
    Ok(out)
}

/// Largest coefficient of `a − b` at `p`.
pub fn form_residual(a: &Form, b: &Form, p: &[f64]) -> Result<f64> {
    Ok(a.value(p)?.sub(&b.value(p)?)?.max_magnitude())
}

pub fn vector_residual(a: &VectorField, b: &VectorField, p: &[f64]) -> Result<f64> {
    let (x, y) = (a.value(p)?, b.value(p)?);
    if x.len() != y.len() {
        return Err(GeomError::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(x.iter().zip(&y).fold(0.0, |m, (u, v)| m.max((u - v).abs())))
}
