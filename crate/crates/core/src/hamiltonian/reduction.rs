//! Reduction by a torus action through an explicit slice and connection.
//!
//! For `q` in the quotient chart the level-set point is `σ(q)`. The tangent
//! directions `dσ e_a` are made horizontal, `Ỹ_a = dσ e_a − Σ θ_i(dσ e_a) X_i`,
//! and lifted to `Ỹ_a − Σ ξ_i(Ỹ_a) θ_i`; the cotangent directions are the
//! covectors dual to `Ỹ_a` that kill every `X_i`. Writing `Φ` for these lifts
//! and `S = K ⊕ 𝕁K`, the reduced structure is read off from `𝕁Φ = Φ J_Q + S c`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::calculus::{
    compose_form, compose_jets, exterior_d, flow_map, interior, lie_derivative, one_form_coeffs,
    pullback, values, wedge, Chart, ChartMap, ComplexForm, Form, VectorField,
};
use crate::courant::exp_neg_wedge;
use crate::error::{GeomError, Result};
use crate::jet::Jet;
use crate::jetmat::JetMat;
use crate::linear::{check_gcs, linear_reduce, pairing_matrix, GcsValue};

use super::moment::{b1_form, connection_residual, MomentMapSpec};
use super::structure::GcsField;

/// Gauge data for a reduction: `σ` maps the quotient chart into the level
/// set `μ = level`, and `θ_i` is a connection for the generators.
#[derive(Clone)]
pub struct ReductionSetup {
    pub quotient: Chart,
    pub slice: ChartMap,
    pub theta: Vec<Form>,
    pub level: Vec<f64>,
}

impl ReductionSetup {
    pub fn new(slice: ChartMap, theta: Vec<Form>, level: Vec<f64>) -> Self {
        ReductionSetup {
            quotient: slice.source().clone(),
            slice,
            theta,
            level,
        }
    }

    /// Same gauge with the slice moved along the flow of `Σ X_i` for time `t`.
    pub fn shifted(&self, spec: &MomentMapSpec, t: f64, steps_per_unit: usize) -> Self {
        let sum = spec.x.iter().skip(1).fold(spec.x[0].clone(), |a, x| a.add(x));
        ReductionSetup {
            slice: self.slice.then(&flow_map(&sum, t, steps_per_unit)),
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReductionOptions {
    pub tol: f64,
    /// Flow time used to produce a second preimage for descent checks.
    pub shift: f64,
    pub steps_per_unit: usize,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            tol: 1e-8,
            shift: 0.37,
            steps_per_unit: 400,
        }
    }
}

/// Largest residuals over the quotient sample points.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ReductionDiagnostics {
    /// `|μ(σ(q)) − level|`.
    pub level: f64,
    /// `|θ_i(X_j) − δ_ij|` on the slice.
    pub connection: f64,
    /// Isotropy, vector-part margin and horizontality from the linear step.
    pub linear: [f64; 3],
    /// Residual of `𝕁Φ = Φ J_Q + S c`.
    pub solve: f64,
    /// `ι_{X_i}(H + dB₁)` restricted to the level set.
    pub horizontal: f64,
    /// `ι_{X_l}B₁ − ξ_l`.
    pub b1_contraction: f64,
    /// `dh`.
    pub dh: f64,
    /// Reduced structure computed through a shifted slice.
    pub descent_structure: f64,
    /// `h` computed through a shifted slice.
    pub descent_h: f64,
}

impl ReductionDiagnostics {
    /// Largest residual that should vanish (the linear margin is excluded).
    pub fn max_residual(&self) -> f64 {
        [
            self.level,
            self.connection,
            self.linear[0],
            self.linear[2],
            self.solve,
            self.horizontal,
            self.b1_contraction,
            self.dh,
            self.descent_structure,
            self.descent_h,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Clone)]
pub struct ReductionResult {
    /// Reduced structure on the quotient chart, twisted by `h`.
    pub structure: GcsField,
    pub h: Form,
    pub b1: Form,
    /// `H + dB₁` on the ambient chart.
    pub total_twist: Form,
    pub diagnostics: ReductionDiagnostics,
}

/// `Π_i (1 − θ_i ∧ ι_{X_i})`, the horizontal part of a form.
pub fn horizontal_part(w: &Form, theta: &[Form], x: &[VectorField]) -> Form {
    theta
        .iter()
        .zip(x)
        .fold(w.clone(), |acc, (t, xi)| acc.sub(&wedge(t, &interior(xi, &acc))))
}

#[derive(Clone)]
struct Gauge {
    s: GcsField,
    spec: MomentMapSpec,
    setup: ReductionSetup,
}

struct Frame {
    j: JetMat,
    phi: JetMat,
    kk: JetMat,
    a: JetMat,
    point: Vec<f64>,
}

impl Gauge {
    fn new(s: &GcsField, spec: &MomentMapSpec, setup: &ReductionSetup) -> Result<Self> {
        s.chart().same(spec.chart())?;
        s.chart().same(setup.slice.target())?;
        setup.quotient.same(setup.slice.source())?;
        let r = spec.rank();
        if setup.theta.len() != r || setup.level.len() != r {
            return Err(GeomError::RankMismatch {
                expected: r,
                found: setup.theta.len().min(setup.level.len()),
            });
        }
        let n = setup.quotient.dim();
        if n + 2 * r != s.chart().dim() {
            return Err(GeomError::DimensionMismatch {
                expected: s.chart().dim() - 2 * r,
                found: n,
            });
        }
        Ok(Gauge {
            s: s.clone(),
            spec: spec.clone(),
            setup: setup.clone(),
        })
    }

    /// Lifts, `S` and `𝕁` at `σ(q)` as jets of order `k` in the quotient variables.
    fn frame(&self, q: &[f64], k: usize) -> Result<Frame> {
        let m = self.s.chart().dim();
        let n = self.setup.quotient.dim();
        let r = self.spec.rank();
        let sig = self.setup.slice.jet(q, k + 1)?;
        let sk: Vec<Jet> = sig.iter().map(|j| j.truncate(k)).collect();
        let p = values(&sig);
        let j = self.s.jet(&p, k)?.compose(&sk);
        let dmu: Vec<Vec<Jet>> = self
            .spec
            .mu
            .iter()
            .map(|f| {
                let g = f.jet(&p, k + 1)?;
                Ok((0..m).map(|i| g.derivative(i).compose(&sk)).collect())
            })
            .collect::<Result<_>>()?;
        let xs: Vec<Vec<Jet>> = self
            .spec
            .x
            .iter()
            .map(|x| Ok(compose_jets(&x.jet(&p, k)?, &sk)))
            .collect::<Result<_>>()?;
        let covec = |w: &Form| -> Result<Vec<Jet>> {
            Ok(one_form_coeffs(&compose_form(&w.jet(&p, k)?, &sk), n, k))
        };
        let xis: Vec<Vec<Jet>> = self.spec.xi.iter().map(covec).collect::<Result<_>>()?;
        let thetas: Vec<Vec<Jet>> = self.setup.theta.iter().map(covec).collect::<Result<_>>()?;
        let zero = Jet::zero(n, k);
        let dot = |a: &[Jet], b: &[Jet]| a.iter().zip(b).fold(zero.clone(), |s, (x, y)| &s + &(x * y));

        let mut ytil = Vec::with_capacity(n);
        for a in 0..n {
            let mut y: Vec<Jet> = sig.iter().map(|s| s.derivative(a)).collect();
            for i in 0..r {
                let c = dot(&thetas[i], &y);
                for (yy, xx) in y.iter_mut().zip(&xs[i]) {
                    *yy = &*yy - &(&c * xx);
                }
            }
            ytil.push(y);
        }
        let mut cols: Vec<Vec<Jet>> = Vec::with_capacity(2 * n);
        for y in &ytil {
            let mut cov = vec![zero.clone(); m];
            for i in 0..r {
                let c = dot(&xis[i], y);
                for (cc, t) in cov.iter_mut().zip(&thetas[i]) {
                    *cc = &*cc - &(&c * t);
                }
            }
            let mut col = y.clone();
            col.extend(cov);
            cols.push(col);
        }
        let mut tang = ytil.clone();
        tang.extend(xs.iter().cloned());
        let dual = JetMat::from_columns(&tang).pinv()?;
        for a in 0..n {
            let mut col = vec![zero.clone(); m];
            col.extend((0..m).map(|i| dual.get(a, i).clone()));
            cols.push(col);
        }
        let phi = JetMat::from_columns(&cols);
        let kcols: Vec<Vec<Jet>> = dmu
            .into_iter()
            .map(|g| {
                let mut c = vec![zero.clone(); m];
                c.extend(g);
                c
            })
            .collect();
        let kmat = JetMat::from_columns(&kcols);
        let kk = JetMat::hcat(&[&kmat, &j.mul(&kmat)]);
        let a = JetMat::hcat(&[&phi, &kk]);
        Ok(Frame {
            j,
            phi,
            kk,
            a,
            point: p,
        })
    }

    fn reduced_jet(&self, q: &[f64], k: usize) -> Result<(JetMat, f64)> {
        let n = self.setup.quotient.dim();
        let f = self.frame(q, k)?;
        let rhs = f.j.mul(&f.phi);
        let c = JetMat::solve_lstsq(&f.a, &rhs)?;
        let res = f.a.mul(&c).sub(&rhs).max_abs_value();
        Ok((c.block(0, 0, 2 * n, 2 * n), res))
    }

    /// Descends `comp` through the split `e = φ − S c` with `⟨e, comp·K ⊕ 𝕁·comp·K⟩ = 0`.
    fn companion_jet(&self, comp: &GcsField, q: &[f64], k: usize) -> Result<(JetMat, f64)> {
        let n = self.setup.quotient.dim();
        let m = self.s.chart().dim();
        let f = self.frame(q, k)?;
        let sk = self.setup.slice.jet(q, k)?;
        let j2 = comp.jet(&f.point, k)?.compose(&sk);
        let r = self.spec.rank();
        let kmat = f.kk.block(0, 0, 2 * m, r);
        let j2k = j2.mul(&kmat);
        let gs = JetMat::hcat(&[&j2k, &f.j.mul(&j2k)]);
        let pm = JetMat::constant(&pairing_matrix(m), f.j.get(0, 0));
        let gtp = gs.transpose().mul(&pm);
        let coef = gtp.mul(&f.kk).inverse()?.mul(&gtp.mul(&f.phi));
        let e = f.phi.sub(&f.kk.mul(&coef));
        let rhs = j2.mul(&e);
        let c = JetMat::solve_lstsq(&f.a, &rhs)?;
        let res = f.a.mul(&c).sub(&rhs).max_abs_value();
        Ok((c.block(0, 0, 2 * n, 2 * n), res))
    }

    fn structure(&self) -> GcsField {
        let g = self.clone();
        GcsField::from_evaluator(
            &self.setup.quotient,
            Arc::new(move |q, k| Ok(g.reduced_jet(q, k)?.0)),
        )
    }
}

fn gcs_distance(a: &GcsField, b: &GcsField, q: &[f64]) -> Result<f64> {
    let d = a.value(q)?.mat() - b.value(q)?.mat();
    Ok(d.iter().fold(0.0, |m, x| m.max(x.abs())))
}

fn par_max<F>(points: &[Vec<f64>], f: F) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64> + Sync + Send,
{
    points
        .par_iter()
        .map(|q| f(q))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// Reduce `s` by the action described in `spec` using the gauge `setup`.
///
/// The diagnostics are evaluated at `points` of the quotient chart.
pub fn reduce(
    s: &GcsField,
    spec: &MomentMapSpec,
    setup: &ReductionSetup,
    points: &[Vec<f64>],
    opts: ReductionOptions,
) -> Result<ReductionResult> {
    let gauge = Gauge::new(s, spec, setup)?;
    let level = par_max(points, |q| {
        let p = setup.slice.apply(q)?;
        let mut worst: f64 = 0.0;
        for (f, c) in spec.mu.iter().zip(&setup.level) {
            worst = worst.max((f.value(&p)? - c).abs());
        }
        Ok(worst)
    })?;
    if !(level <= opts.tol) {
        return Err(GeomError::SliceOffLevel(level));
    }
    let slice_points: Vec<Vec<f64>> = points
        .iter()
        .map(|q| setup.slice.apply(q))
        .collect::<Result<_>>()?;
    let connection = connection_residual(&setup.theta, spec, &slice_points)?;
    if connection > opts.tol {
        return Err(GeomError::NotConnection(connection));
    }

    let mut linear = [0.0f64, f64::INFINITY, 0.0];
    for p in &slice_points {
        let kmat = {
            let m = s.chart().dim();
            let mut k = nalgebra::DMatrix::zeros(2 * m, spec.rank());
            for (i, f) in spec.mu.iter().enumerate() {
                for (a, g) in f.gradient(p)?.into_iter().enumerate() {
                    k[(m + a, i)] = g;
                }
            }
            k
        };
        let lr = linear_reduce(&s.value(p)?, &kmat, opts.tol.max(1e-9))?;
        linear[0] = linear[0].max(lr.assumption_residuals[0]);
        linear[1] = linear[1].min(lr.assumption_residuals[1]);
        linear[2] = linear[2].max(lr.assumption_residuals[2]);
    }

    let b1 = b1_form(&setup.theta, spec)?;
    let total = s.twist().add(&exterior_d(&b1)).homogeneous(3);
    let h = pullback(
        &setup.slice,
        &horizontal_part(&total, &setup.theta, &spec.x),
    )?
    .homogeneous(3);
    let structure = gauge.structure().with_twist(&h)?;

    let solve = par_max(points, |q| Ok(gauge.reduced_jet(q, 0)?.1))?;
    let mut horizontal: f64 = 0.0;
    for i in 0..spec.rank() {
        let c = interior(&spec.x[i], &total);
        let on_level = pullback(&setup.slice, &c)?;
        horizontal = horizontal.max(par_max(points, |q| Ok(on_level.value(q)?.max_magnitude()))?);
        for xj in &spec.x {
            let cc = interior(xj, &c);
            horizontal = horizontal.max(par_max(&slice_points, |p| Ok(cc.value(p)?.max_magnitude()))?);
        }
    }
    let b1_contraction = super::moment::b1_contraction_residual(&b1, spec, &slice_points)?;
    let dh_form = exterior_d(&h);
    let dh = par_max(points, |q| Ok(dh_form.value(q)?.max_magnitude()))?;

    let shifted = setup.shifted(spec, opts.shift, opts.steps_per_unit);
    let other = Gauge::new(s, spec, &shifted)?.structure();
    let descent_structure = par_max(points, |q| gcs_distance(&structure, &other, q))?;
    let h_other = pullback(
        &shifted.slice,
        &horizontal_part(&total, &setup.theta, &spec.x),
    )?;
    let descent_h = par_max(points, |q| Ok(h.value(q)?.sub(&h_other.value(q)?)?.max_magnitude()))?;

    Ok(ReductionResult {
        structure,
        h,
        b1,
        total_twist: total,
        diagnostics: ReductionDiagnostics {
            level,
            connection,
            linear,
            solve,
            horizontal,
            b1_contraction,
            dh,
            descent_structure,
            descent_h,
        },
    })
}

/// A second structure `comp` descended along the reduction of `s`.
///
/// Lifts are split off `S` orthogonally to `comp·K ⊕ 𝕁·comp·K` before `comp`
/// is applied. Returns the descended field and the largest solve residual.
pub fn companion_descent(
    s: &GcsField,
    comp: &GcsField,
    spec: &MomentMapSpec,
    setup: &ReductionSetup,
    points: &[Vec<f64>],
) -> Result<(GcsField, f64)> {
    s.chart().same(comp.chart())?;
    let gauge = Gauge::new(s, spec, setup)?;
    let res = par_max(points, |q| Ok(gauge.companion_jet(comp, q, 0)?.1))?;
    let (g, c) = (gauge.clone(), comp.clone());
    let field = GcsField::from_evaluator(
        &setup.quotient,
        Arc::new(move |q, k| Ok(g.companion_jet(&c, q, k)?.0)),
    );
    Ok((field, res))
}

/// Compares reductions through two connections on the same slice.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ConnectionReport {
    /// `ι_{X_i}(B₁′ − B₁)` on the level set.
    pub contraction: f64,
    /// `ℒ_{X_i}(B₁′ − B₁)` on the level set.
    pub invariance: f64,
    /// `h′ − h − db` with `b = σ^*(B₁′ − B₁)`.
    pub twist: f64,
    /// `J_Q′` against the `b`-transform of `J_Q`.
    pub structure: f64,
}

impl ConnectionReport {
    pub fn max(&self) -> f64 {
        self.contraction
            .max(self.invariance)
            .max(self.twist)
            .max(self.structure)
    }
}

pub fn connection_independence(
    s: &GcsField,
    spec: &MomentMapSpec,
    setup: &ReductionSetup,
    other: &ReductionSetup,
    points: &[Vec<f64>],
    opts: ReductionOptions,
) -> Result<ConnectionReport> {
    setup.quotient.same(&other.quotient)?;
    let r1 = reduce(s, spec, setup, points, opts)?;
    let r2 = reduce(s, spec, other, points, opts)?;
    let delta = r2.b1.sub(&r1.b1);
    let b = pullback(&setup.slice, &delta)?.homogeneous(2);
    let db = exterior_d(&b);
    let moved = r1.structure.b_transform(&b)?;
    let slice_points: Vec<Vec<f64>> = points
        .iter()
        .map(|q| setup.slice.apply(q))
        .collect::<Result<_>>()?;
    let mut out = ConnectionReport::default();
    for x in &spec.x {
        let (c, l) = (interior(x, &delta), lie_derivative(x, &delta));
        out.contraction = out.contraction.max(par_max(&slice_points, |p| Ok(c.value(p)?.max_magnitude()))?);
        out.invariance = out.invariance.max(par_max(&slice_points, |p| Ok(l.value(p)?.max_magnitude()))?);
    }
    let diff = r2.h.sub(&r1.h).sub(&db);
    out.twist = par_max(points, |q| Ok(diff.value(q)?.max_magnitude()))?;
    out.structure = par_max(points, |q| gcs_distance(&r2.structure, &moved, q))?;
    Ok(out)
}

/// Pieces of `h = h₀ + Σ Ω_i∧ζ_i`.
#[derive(Clone)]
pub struct DhTerms {
    /// Descended horizontal part of `H`.
    pub h0: Form,
    /// Descended curvatures `dθ_i`.
    pub curvature: Vec<Form>,
    /// Descended horizontal parts of `ξ_i`.
    pub zeta: Vec<Form>,
}

pub fn dh_terms(s: &GcsField, spec: &MomentMapSpec, setup: &ReductionSetup) -> Result<DhTerms> {
    let hor = |w: &Form| horizontal_part(w, &setup.theta, &spec.x);
    let h0 = pullback(&setup.slice, &hor(&s.twist()))?.homogeneous(3);
    let curvature = setup
        .theta
        .iter()
        .map(|t| pullback(&setup.slice, &exterior_d(t)).map(|f| f.homogeneous(2)))
        .collect::<Result<_>>()?;
    let zeta = spec
        .xi
        .iter()
        .map(|x| pullback(&setup.slice, &hor(x)).map(|f| f.homogeneous(1)))
        .collect::<Result<_>>()?;
    Ok(DhTerms { h0, curvature, zeta })
}

/// Largest residual of `h − h₀ − Σ Ω_i∧ζ_i` at the quotient points.
pub fn dh_check(
    result: &ReductionResult,
    s: &GcsField,
    spec: &MomentMapSpec,
    setup: &ReductionSetup,
    points: &[Vec<f64>],
) -> Result<f64> {
    let t = dh_terms(s, spec, setup)?;
    let mut rhs = t.h0.clone();
    for (o, z) in t.curvature.iter().zip(&t.zeta) {
        rhs = rhs.add(&wedge(o, z));
    }
    let diff = result.h.sub(&rhs);
    par_max(points, |q| Ok(diff.value(q)?.max_magnitude()))
}

/// `σ^*Π_hor(e^{B₁} ∧ ρ)`.
pub fn spinor_descend(
    spec: &MomentMapSpec,
    setup: &ReductionSetup,
    b1: &Form,
    rho: &ComplexForm,
) -> Result<ComplexForm> {
    let neg = b1.neg();
    let part = |w: &Form| -> Result<Form> {
        let e = exp_neg_wedge(&neg, w)?;
        pullback(&setup.slice, &horizontal_part(&e, &setup.theta, &spec.x))
    };
    Ok(ComplexForm::new(part(&rho.re)?, part(&rho.im)?))
}

/// Structure residuals of a reduced field at the points.
pub fn reduced_gcs_residual(structure: &GcsField, points: &[Vec<f64>]) -> Result<f64> {
    par_max(points, |q| {
        let v: GcsValue = structure.value(q)?;
        Ok(check_gcs(&v).max())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::ScalarField;
    use crate::linear::from_symplectic;
    use nalgebra::DMatrix;

    fn std_omega(n: usize) -> DMatrix<f64> {
        let mut w = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            w[(2 * i + 1, 2 * i)] = 1.0;
            w[(2 * i, 2 * i + 1)] = -1.0;
        }
        w
    }

    /// Rotation of the first plane of ℝ⁴ at `|z₁|² = 1`, slice `(1, 0, u, v)`.
    fn symplectic_setup() -> (GcsField, MomentMapSpec, ReductionSetup) {
        let c = Chart::euclidean(4);
        let s = GcsField::constant(&c, &from_symplectic(&std_omega(2)).unwrap());
        let mu = ScalarField::new(&c, |x| (&(&x[0] * &x[0]) + &(&x[1] * &x[1])).scale(0.5));
        let spec = MomentMapSpec::from_structure(&s, vec![mu]).unwrap();
        let q = Chart::euclidean(2);
        let slice = ChartMap::new(&q, &c, |y| {
            vec![y[0].constant_like(1.0), y[0].zero_like(), y[0].clone(), y[1].clone()]
        });
        let theta = Form::one_form(&c, |x| {
            let r2 = &(&x[0] * &x[0]) + &(&x[1] * &x[1]);
            let inv = r2.recip();
            vec![-&(&x[1] * &inv), &x[0] * &inv, x[0].zero_like(), x[0].zero_like()]
        });
        (s, spec, ReductionSetup::new(slice, vec![theta], vec![0.5]))
    }

    #[test]
    fn symplectic_quotient_is_standard() {
        let (s, spec, setup) = symplectic_setup();
        let pts = vec![vec![0.3, -0.2], vec![1.1, 0.4]];
        let r = reduce(&s, &spec, &setup, &pts, ReductionOptions::default()).unwrap();
        let want = from_symplectic(&std_omega(1)).unwrap();
        for q in &pts {
            let d = r.structure.value(q).unwrap().mat() - want.mat();
            assert!(d.amax() < 1e-12, "{d}");
            assert!(r.h.value(q).unwrap().max_magnitude() < 1e-14);
        }
        assert!(r.diagnostics.max_residual() < 1e-8, "{:?}", r.diagnostics);
        assert!(r.structure.involutivity_residual(&pts).unwrap() < 1e-12);
    }

    #[test]
    fn off_level_slice_is_rejected() {
        let (s, spec, mut setup) = symplectic_setup();
        setup.level = vec![0.7];
        let e = reduce(&s, &spec, &setup, &[vec![0.0, 0.0]], ReductionOptions::default());
        assert!(matches!(e, Err(GeomError::SliceOffLevel(_))));
    }

    #[test]
    fn symplectic_spinor_descends_to_exponential() {
        let (s, spec, setup) = symplectic_setup();
        let c = s.chart().clone();
        let omega = Form::basis(&c, &[0, 1], 1.0).add(&Form::basis(&c, &[2, 3], 1.0));
        let rho = {
            let (a, b) = (omega.clone(), omega.clone());
            ComplexForm::new(
                Form::from_evaluator(&c, None, Arc::new(move |p, k| {
                    let w = a.jet(p, k)?;
                    let one = Jet::constant(1.0, 4, k);
                    let w2 = w.wedge(&w)?.scale(-0.5);
                    Multiv::scalar(4, one).add(&w2)
                })),
                b,
            )
        };
        let r = reduce(&s, &spec, &setup, &[vec![0.1, 0.2]], ReductionOptions::default()).unwrap();
        let got = spinor_descend(&spec, &setup, &r.b1, &rho).unwrap();
        let v = got.value(&[0.1, 0.2]).unwrap();
        assert!((v.coeff_of(&[]).unwrap().re - 1.0).abs() < 1e-14);
        assert!((v.coeff_of(&[0, 1]).unwrap().im - 1.0).abs() < 1e-14);
    }

    type Multiv = crate::exterior::Multivector<Jet>;
}
