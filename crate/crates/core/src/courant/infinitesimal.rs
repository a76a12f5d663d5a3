//! Infinitesimal symmetries `(X, A)`, their twisted bracket, exponentials and
//! the `α_ρ` cochains.

use std::sync::Arc;

use crate::calculus::{
    exterior_d, interior, lie_bracket, lie_derivative, pullback_jet, time_flow_diffeo, values,
    Chart, Form, FormJet, GvField, TimeVectorField, VectorField, DEFAULT_STEPS_PER_UNIT,
};
use crate::calculus::flow::integrate_jets;
use crate::error::{GeomError, Result};
use crate::jet::Jet;

use super::symmetry::GenSymmetry;

#[derive(Clone)]
pub struct InfSymmetry {
    pub x: VectorField,
    pub a: Form,
}

fn twist_or_zero(h: Option<&Form>, chart: &Chart) -> Form {
    h.cloned().unwrap_or_else(|| Form::zero(chart, 3))
}

impl InfSymmetry {
    pub fn new(x: &VectorField, a: &Form) -> Result<Self> {
        a.require_degree(2)?;
        x.chart().same(a.chart())?;
        Ok(InfSymmetry {
            x: x.clone(),
            a: a.clone(),
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        InfSymmetry {
            x: VectorField::zero(chart),
            a: Form::zero(chart, 2),
        }
    }

    pub fn chart(&self) -> &Chart {
        self.x.chart()
    }

    pub fn add(&self, o: &InfSymmetry) -> InfSymmetry {
        InfSymmetry {
            x: self.x.add(&o.x),
            a: self.a.add(&o.a),
        }
    }

    pub fn sub(&self, o: &InfSymmetry) -> InfSymmetry {
        InfSymmetry {
            x: self.x.sub(&o.x),
            a: self.a.sub(&o.a),
        }
    }

    pub fn scale(&self, s: f64) -> InfSymmetry {
        InfSymmetry {
            x: self.x.scale(s),
            a: self.a.scale(s),
        }
    }

    /// Largest component difference at `p`.
    pub fn residual(&self, o: &InfSymmetry, p: &[f64]) -> Result<f64> {
        let v = crate::calculus::vector_residual(&self.x, &o.x, p)?;
        let f = crate::calculus::form_residual(&self.a, &o.a, p)?;
        Ok(v.max(f))
    }

    /// Largest coefficient of `d(ι_XH + A)` over the points.
    pub fn preservation_residual(&self, h: Option<&Form>, points: &[Vec<f64>]) -> Result<f64> {
        let h = twist_or_zero(h, self.chart());
        let w = exterior_d(&interior(&self.x, &h).add(&self.a));
        points
            .iter()
            .try_fold(0.0f64, |m, p| Ok(m.max(w.value(p)?.max_magnitude())))
    }
}

/// `[(X,A),(Y,B)]_H = ([X,Y], ℒ_XB − ℒ_YA + dι_Yι_XH)`.
pub fn twisted_lie_bracket(h: Option<&Form>, p: &InfSymmetry, q: &InfSymmetry) -> Result<InfSymmetry> {
    p.chart().same(q.chart())?;
    let h = twist_or_zero(h, p.chart());
    let a = lie_derivative(&p.x, &q.a)
        .sub(&lie_derivative(&q.x, &p.a))
        .add(&exterior_d(&interior(&q.x, &interior(&p.x, &h))))
        .homogeneous(2);
    Ok(InfSymmetry {
        x: lie_bracket(&p.x, &q.x),
        a,
    })
}

/// `ψ_H(X, A) = (X, A − ι_XH)`.
pub fn psi_h(h: &Form, p: &InfSymmetry) -> Result<InfSymmetry> {
    h.require_degree(3)?;
    Ok(InfSymmetry {
        x: p.x.clone(),
        a: p.a.sub(&interior(&p.x, h)).homogeneous(2),
    })
}

/// `(X,A)·(Y+η) = −[X,Y] − ℒ_Xη + ι_YA − ι_Yι_XH`.
pub fn inf_action(p: &InfSymmetry, s: &GvField, h: Option<&Form>) -> Result<GvField> {
    p.chart().same(s.chart())?;
    let y = s.vector();
    let mut cov = lie_derivative(&p.x, &s.covector()).neg().add(&interior(&y, &p.a));
    if let Some(h) = h {
        cov = cov.sub(&interior(&y, &interior(&p.x, h)));
    }
    Ok(GvField::from_parts(&lie_bracket(&p.x, &y).scale(-1.0), &cov))
}

/// Integration controls for exponentials.
#[derive(Clone, Copy, Debug)]
pub struct ExpOptions {
    pub steps_per_unit: usize,
    /// Simpson intervals per unit time (rounded up to an even count, at least 2).
    pub intervals_per_unit: usize,
}

impl Default for ExpOptions {
    fn default() -> Self {
        ExpOptions {
            steps_per_unit: DEFAULT_STEPS_PER_UNIT,
            intervals_per_unit: 32,
        }
    }
}

/// Time-dependent generator `(X_t, A_t)`.
#[derive(Clone)]
pub struct InfPath {
    pub x: TimeVectorField,
    pub a: Arc<dyn Fn(f64) -> Form + Send + Sync>,
}

impl InfPath {
    pub fn new(x: TimeVectorField, a: impl Fn(f64) -> Form + Send + Sync + 'static) -> Self {
        InfPath { x, a: Arc::new(a) }
    }

    pub fn autonomous(p: &InfSymmetry) -> Self {
        let a = p.a.clone();
        InfPath::new(TimeVectorField::autonomous(&p.x), move |_| a.clone())
    }

    pub fn at(&self, t: f64) -> Result<InfSymmetry> {
        let vf = self.x.clone();
        let x = VectorField::from_evaluator(self.x.chart(), Arc::new(move |p, k| vf.jet(t, p, k)));
        InfSymmetry::new(&x, &(self.a)(t))
    }
}

/// `(λ_t, ∫₀ᵗ λ_s^*A_s ds)` with `λ_t` the flow of `X_t`: RK4 along the
/// trajectory and composite Simpson quadrature of the pulled-back forms.
pub fn gsym_path(path: &InfPath, t: f64, opts: ExpOptions) -> Result<GenSymmetry> {
    let chart = path.x.chart().clone();
    let m = chart.dim();
    let diffeo = time_flow_diffeo(&path.x, t, opts.steps_per_unit);
    let n = {
        let raw = (t.abs() * opts.intervals_per_unit as f64).ceil() as usize;
        (raw.max(2) + 1) / 2 * 2
    };
    let pth = path.clone();
    let spu = opts.steps_per_unit;
    let alpha = Form::from_evaluator(
        &chart,
        Some(2),
        Arc::new(move |p, k| {
            pth.x.chart().check(p)?;
            if t == 0.0 {
                return Ok(FormJet::zero(m));
            }
            let h = t / n as f64;
            let mut y = Jet::coordinates(p, k + 1);
            let mut acc = FormJet::zero(m);
            for i in 0..=n {
                let s = i as f64 * h;
                if i > 0 {
                    y = integrate_jets(&pth.x, y, s - h, s, spu)?;
                }
                let w = pullback_jet(&y, &(pth.a)(s).jet(&values(&y), k)?);
                let weight = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                acc = acc.add(&w.scale(weight))?;
            }
            Ok(acc.scale(h / 3.0))
        }),
    );
    GenSymmetry::new(diffeo, alpha)
}

/// `e^{t(X,A)}`.
pub fn gsym_exp(p: &InfSymmetry, t: f64, opts: ExpOptions) -> Result<GenSymmetry> {
    gsym_path(&InfPath::autonomous(p), t, opts)
}

/// Recovers `(X_t, A_t)` from a path of symmetries by central differences
/// and returns the largest mismatch of `d/dt λ_t = X_t∘λ_t` and
/// `α̇_t = λ_t^*A_t` over the points.
pub fn generator_residual(
    g: impl Fn(f64) -> Result<GenSymmetry>,
    gen: &InfPath,
    t: f64,
    dt: f64,
    points: &[Vec<f64>],
) -> Result<f64> {
    let (gp, gm, g0) = (g(t + dt)?, g(t - dt)?, g(t)?);
    let a_t = (gen.a)(t);
    let mut worst: f64 = 0.0;
    for p in points {
        let lp = gp.diffeo.forward.apply(p)?;
        let lm = gm.diffeo.forward.apply(p)?;
        let l0 = g0.diffeo.forward.jet(p, 1)?;
        let q = values(&l0);
        let xq = gen.x.jet(t, &q, 0)?;
        for i in 0..p.len() {
            let fd = (lp[i] - lm[i]) / (2.0 * dt);
            worst = worst.max((fd - xq[i].value()).abs());
        }
        let adot = gp.alpha.value(p)?.sub(&gm.alpha.value(p)?)?.scale(0.5 / dt);
        let pulled = pullback_jet(&l0, &a_t.jet(&q, 0)?).value();
        worst = worst.max(adot.sub(&pulled)?.max_magnitude());
    }
    Ok(worst)
}

/// `α_ρ(X₁,…,X_k) = dι_{X_k}⋯ι_{X₁}ρ` for a `(k+1)`-form `ρ`.
pub fn alpha_cochain(rho: &Form, xs: &[VectorField]) -> Result<Form> {
    rho.require_degree(xs.len() + 1)?;
    let mut w = rho.clone();
    for x in xs {
        w.chart().same(x.chart())?;
        w = interior(x, &w);
    }
    Ok(exterior_d(&w))
}

/// `(∂α_ρ)(Y₀,…,Y_k)` with the module action `X∘A = ℒ_XA`.
pub fn alpha_coboundary(rho: &Form, ys: &[VectorField]) -> Result<Form> {
    let k = ys
        .len()
        .checked_sub(1)
        .ok_or_else(|| GeomError::InvalidParameter("coboundary needs at least one argument".into()))?;
    rho.require_degree(k + 1)?;
    let sign = |n: usize| if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut out = Form::zero(rho.chart(), 2);
    for i in 0..=k {
        let rest: Vec<VectorField> = (0..=k).filter(|&l| l != i).map(|l| ys[l].clone()).collect();
        let term = lie_derivative(&ys[i], &alpha_cochain(rho, &rest)?);
        out = out.add(&term.scale(sign(i)));
    }
    for i in 0..=k {
        for j in i + 1..=k {
            let mut args = vec![lie_bracket(&ys[i], &ys[j])];
            args.extend((0..=k).filter(|&l| l != i && l != j).map(|l| ys[l].clone()));
            out = out.add(&alpha_cochain(rho, &args)?.scale(sign(i + j)));
        }
    }
    Ok(out.homogeneous(2))
}

/// Largest residual of `∂α_ρ = α_{dρ}` over the points.
pub fn coboundary_residual(rho: &Form, ys: &[VectorField], points: &[Vec<f64>]) -> Result<f64> {
    let lhs = alpha_coboundary(rho, ys)?;
    let rhs = alpha_cochain(&exterior_d(rho), ys)?;
    points.iter().try_fold(0.0f64, |m, p| {
        Ok(m.max(crate::calculus::form_residual(&lhs, &rhs, p)?))
    })
}
