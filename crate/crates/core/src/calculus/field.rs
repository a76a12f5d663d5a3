//! Charts and lazily evaluated smooth fields.
//!
//! Every field is a pure evaluator `(point, order) -> jets`. Operators built
//! on top (d, brackets, pullbacks) ask their inputs for one extra order and
//! differentiate the jets, so a field tree of depth `n` evaluated to order
//! `k` needs its leaves to order `k + n` and nothing is ever symbolically
//! expanded.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::exterior::{GvValue, Multivector};
use crate::jet::Jet;

pub type Evaluator<T> = Arc<dyn Fn(&[f64], usize) -> Result<T> + Send + Sync>;
pub type FormJet = Multivector<Jet>;
pub type GvJet = GvValue<Jet>;

type Domain = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// An open subset of `R^m` given by a membership predicate.
#[derive(Clone)]
pub struct Chart {
    name: Arc<str>,
    dim: usize,
    domain: Domain,
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({}, dim={})", self.name, self.dim)
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.name == other.name
    }
}

impl Chart {
    pub fn new(
        name: &str,
        dim: usize,
        domain: impl Fn(&[f64]) -> bool + Send + Sync + 'static,
    ) -> Chart {
        Chart {
            name: name.into(),
            dim,
            domain: Arc::new(domain),
        }
    }

    pub fn euclidean(dim: usize) -> Chart {
        Chart::new(&format!("R{dim}"), dim, |_| true)
    }

    /// `self × other` with coordinates concatenated.
    pub fn product(&self, other: &Chart) -> Chart {
        let (a, b) = (self.clone(), other.clone());
        let m = self.dim;
        Chart::new(
            &format!("{}x{}", self.name, other.name),
            self.dim + other.dim,
            move |p| a.contains(&p[..m]) && b.contains(&p[m..]),
        )
    }

    /// Restriction to the points where `pred` holds.
    pub fn restrict(
        &self,
        name: &str,
        pred: impl Fn(&[f64]) -> bool + Send + Sync + 'static,
    ) -> Chart {
        let a = self.clone();
        Chart::new(name, self.dim, move |p| a.contains(p) && pred(p))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.len() == self.dim && p.iter().all(|x| x.is_finite()) && (self.domain)(p)
    }

    pub fn check(&self, p: &[f64]) -> Result<()> {
        if p.len() != self.dim {
            return Err(GeomError::DimensionMismatch {
                expected: self.dim,
                found: p.len(),
            });
        }
        if !self.contains(p) {
            return Err(GeomError::OutsideChart {
                chart: self.name.to_string(),
                point: p.to_vec(),
            });
        }
        Ok(())
    }

    pub(crate) fn same(&self, other: &Chart) -> Result<()> {
        if self != other {
            return Err(GeomError::InvalidParameter(format!(
                "chart mismatch: {} vs {}",
                self.name, other.name
            )));
        }
        Ok(())
    }
}

/// Jets of `f ∘ inner`, where `f` are jets at `values(inner)`.
pub fn compose_jets(f: &[Jet], inner: &[Jet]) -> Vec<Jet> {
    f.iter().map(|j| j.compose(inner)).collect()
}

pub fn compose_form(f: &FormJet, inner: &[Jet]) -> FormJet {
    f.map(|j| j.compose(inner))
}

/// Coefficients `w_i` of the 1-form part of `w`, as jets in `nvars` variables
/// of the given order.
pub fn one_form_coeffs(w: &FormJet, nvars: usize, order: usize) -> Vec<Jet> {
    (0..w.dim())
        .map(|i| {
            w.get(1 << i)
                .map(|c| c.truncate(order))
                .unwrap_or_else(|| Jet::zero(nvars, order))
        })
        .collect()
}

pub fn values(js: &[Jet]) -> Vec<f64> {
    js.iter().map(Jet::value).collect()
}

fn closed_form<T: 'static>(
    chart: &Chart,
    f: impl Fn(&[Jet]) -> T + Send + Sync + 'static,
) -> Evaluator<T> {
    let c = chart.clone();
    Arc::new(move |p: &[f64], k: usize| {
        c.check(p)?;
        Ok(f(&Jet::coordinates(p, k)))
    })
}

/// Smooth function on a chart.
#[derive(Clone)]
pub struct ScalarField {
    chart: Chart,
    eval: Evaluator<Jet>,
}

impl ScalarField {
    /// From a closed-form expression in the coordinate jets.
    pub fn new(chart: &Chart, f: impl Fn(&[Jet]) -> Jet + Send + Sync + 'static) -> Self {
        ScalarField {
            chart: chart.clone(),
            eval: closed_form(chart, f),
        }
    }

    pub fn from_evaluator(chart: &Chart, eval: Evaluator<Jet>) -> Self {
        ScalarField {
            chart: chart.clone(),
            eval,
        }
    }

    pub fn constant(chart: &Chart, c: f64) -> Self {
        Self::new(chart, move |x| x[0].constant_like(c))
    }

    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        Self::new(chart, move |x| x[i].clone())
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn jet(&self, p: &[f64], order: usize) -> Result<Jet> {
        (self.eval)(p, order)
    }

    pub fn value(&self, p: &[f64]) -> Result<f64> {
        Ok(self.jet(p, 0)?.value())
    }

    pub fn gradient(&self, p: &[f64]) -> Result<Vec<f64>> {
        Ok(self.jet(p, 1)?.gradient())
    }

    fn binary(&self, o: &ScalarField, f: fn(&Jet, &Jet) -> Jet) -> ScalarField {
        let (a, b) = (self.eval.clone(), o.eval.clone());
        ScalarField {
            chart: self.chart.clone(),
            eval: Arc::new(move |p, k| Ok(f(&a(p, k)?, &b(p, k)?))),
        }
    }

    pub fn add(&self, o: &ScalarField) -> ScalarField {
        self.binary(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &ScalarField) -> ScalarField {
        self.binary(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &ScalarField) -> ScalarField {
        self.binary(o, |a, b| a * b)
    }

    pub fn scale(&self, s: f64) -> ScalarField {
        self.map(move |j| j.scale(s))
    }

    /// Post-compose with a jet function (e.g. `Jet::ln`).
    pub fn map(&self, f: impl Fn(&Jet) -> Jet + Send + Sync + 'static) -> ScalarField {
        let a = self.eval.clone();
        ScalarField {
            chart: self.chart.clone(),
            eval: Arc::new(move |p, k| Ok(f(&a(p, k)?))),
        }
    }

    pub fn to_form(&self) -> Form {
        let a = self.eval.clone();
        let m = self.chart.dim();
        Form::from_evaluator(
            &self.chart,
            Some(0),
            Arc::new(move |p, k| Ok(FormJet::scalar(m, a(p, k)?))),
        )
    }
}

/// Vector field on a chart.
#[derive(Clone)]
pub struct VectorField {
    chart: Chart,
    eval: Evaluator<Vec<Jet>>,
}

impl VectorField {
    pub fn new(chart: &Chart, f: impl Fn(&[Jet]) -> Vec<Jet> + Send + Sync + 'static) -> Self {
        VectorField {
            chart: chart.clone(),
            eval: closed_form(chart, f),
        }
    }

    pub fn from_evaluator(chart: &Chart, eval: Evaluator<Vec<Jet>>) -> Self {
        VectorField {
            chart: chart.clone(),
            eval,
        }
    }

    pub fn zero(chart: &Chart) -> Self {
        let m = chart.dim();
        Self::new(chart, move |x| vec![x[0].zero_like(); m])
    }

    /// Constant coordinate field `∂_i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let m = chart.dim();
        Self::new(chart, move |x| {
            (0..m)
                .map(|j| x[0].constant_like(if i == j { 1.0 } else { 0.0 }))
                .collect()
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn jet(&self, p: &[f64], order: usize) -> Result<Vec<Jet>> {
        (self.eval)(p, order)
    }

    pub fn value(&self, p: &[f64]) -> Result<Vec<f64>> {
        Ok(values(&self.jet(p, 0)?))
    }

    pub(crate) fn evaluator(&self) -> &Evaluator<Vec<Jet>> {
        &self.eval
    }

    fn zip(&self, o: &VectorField, f: fn(&Jet, &Jet) -> Jet) -> VectorField {
        let (a, b) = (self.eval.clone(), o.eval.clone());
        VectorField {
            chart: self.chart.clone(),
            eval: Arc::new(move |p, k| {
                let (x, y) = (a(p, k)?, b(p, k)?);
                Ok(x.iter().zip(&y).map(|(u, v)| f(u, v)).collect())
            }),
        }
    }

    pub fn add(&self, o: &VectorField) -> VectorField {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &VectorField) -> VectorField {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> VectorField {
        let a = self.eval.clone();
        VectorField {
            chart: self.chart.clone(),
            eval: Arc::new(move |p, k| Ok(a(p, k)?.iter().map(|j| j.scale(s)).collect())),
        }
    }

    /// `f X`.
    pub fn mul_scalar(&self, f: &ScalarField) -> VectorField {
        let (a, b) = (self.eval.clone(), f.eval.clone());
        VectorField {
            chart: self.chart.clone(),
            eval: Arc::new(move |p, k| {
                let c = b(p, k)?;
                Ok(a(p, k)?.iter().map(|j| j * &c).collect())
            }),
        }
    }
}

/// Differential form (possibly of mixed degree) on a chart.
#[derive(Clone)]
pub struct Form {
    chart: Chart,
    degree: Option<usize>,
    eval: Evaluator<FormJet>,
}

impl Form {
    pub fn new(
        chart: &Chart,
        degree: Option<usize>,
        f: impl Fn(&[Jet]) -> FormJet + Send + Sync + 'static,
    ) -> Self {
        Form {
            chart: chart.clone(),
            degree,
            eval: closed_form(chart, f),
        }
    }

    pub fn from_evaluator(chart: &Chart, degree: Option<usize>, eval: Evaluator<FormJet>) -> Self {
        Form {
            chart: chart.clone(),
            degree,
            eval,
        }
    }

    pub fn zero(chart: &Chart, degree: usize) -> Self {
        let m = chart.dim();
        Form::new(chart, Some(degree), move |_| FormJet::zero(m))
    }

    /// The constant function 1 as a 0-form.
    pub fn one(chart: &Chart) -> Self {
        let m = chart.dim();
        Form::new(chart, Some(0), move |x| FormJet::scalar(m, x[0].constant_like(1.0)))
    }

    /// `Σ_i c_i dx^i` from component functions.
    pub fn one_form(chart: &Chart, f: impl Fn(&[Jet]) -> Vec<Jet> + Send + Sync + 'static) -> Self {
        Form::new(chart, Some(1), move |x| FormJet::one_form(f(x)))
    }

    /// Constant-coefficient form `dx^{i_1} ∧ … ∧ dx^{i_k}` scaled by `c`.
    pub fn basis(chart: &Chart, indices: &[usize], c: f64) -> Self {
        let m = chart.dim();
        let idx = indices.to_vec();
        Form::new(chart, Some(idx.len()), move |x| {
            FormJet::term(m, &idx, x[0].constant_like(c))
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn jet(&self, p: &[f64], order: usize) -> Result<FormJet> {
        (self.eval)(p, order)
    }

    pub fn value(&self, p: &[f64]) -> Result<Multivector<f64>> {
        Ok(self.jet(p, 0)?.value())
    }

    pub(crate) fn evaluator(&self) -> &Evaluator<FormJet> {
        &self.eval
    }

    pub fn require_degree(&self, k: usize) -> Result<()> {
        if self.degree != Some(k) {
            return Err(GeomError::DegreeMismatch {
                expected: k,
                found: self.degree,
            });
        }
        Ok(())
    }

    fn zip(&self, o: &Form, sign: f64) -> Form {
        let (a, b) = (self.eval.clone(), o.eval.clone());
        let degree = if self.degree == o.degree {
            self.degree
        } else {
            None
        };
        Form {
            chart: self.chart.clone(),
            degree,
            eval: Arc::new(move |p, k| a(p, k)?.add(&b(p, k)?.scale(sign))),
        }
    }

    pub fn add(&self, o: &Form) -> Form {
        self.zip(o, 1.0)
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.zip(o, -1.0)
    }

    pub fn scale(&self, s: f64) -> Form {
        self.map_jet(move |w| Ok(w.scale(s)))
    }

    pub fn neg(&self) -> Form {
        self.scale(-1.0)
    }

    /// `f ω`.
    pub fn mul_scalar(&self, f: &ScalarField) -> Form {
        let (a, b) = (self.eval.clone(), f.eval.clone());
        Form {
            chart: self.chart.clone(),
            degree: self.degree,
            eval: Arc::new(move |p, k| Ok(a(p, k)?.mul_scalar(&b(p, k)?))),
        }
    }

    /// Pointwise transformation of the jets at the same order.
    pub fn map_jet(&self, f: impl Fn(FormJet) -> Result<FormJet> + Send + Sync + 'static) -> Form {
        let a = self.eval.clone();
        Form {
            chart: self.chart.clone(),
            degree: self.degree,
            eval: Arc::new(move |p, k| f(a(p, k)?)),
        }
    }

    pub fn homogeneous(&self, d: usize) -> Form {
        let mut out = self.map_jet(move |w| Ok(w.homogeneous(d)));
        out.degree = Some(d);
        out
    }

    /// The degree-0 part as a function.
    pub fn to_scalar(&self) -> ScalarField {
        let a = self.eval.clone();
        let c = self.chart.clone();
        ScalarField::from_evaluator(
            &self.chart,
            Arc::new(move |p, k| {
                let w = a(p, k)?;
                Ok(w.get(0)
                    .cloned()
                    .unwrap_or_else(|| Jet::zero(c.dim(), k)))
            }),
        )
    }
}

/// Section `X + ξ` of `TM ⊕ T*M` on a chart.
#[derive(Clone)]
pub struct GvField {
    chart: Chart,
    eval: Evaluator<GvJet>,
}

impl GvField {
    pub fn new(
        chart: &Chart,
        f: impl Fn(&[Jet]) -> (Vec<Jet>, Vec<Jet>) + Send + Sync + 'static,
    ) -> Self {
        let g = closed_form(chart, f);
        GvField {
            chart: chart.clone(),
            eval: Arc::new(move |p, k| {
                let (v, c) = g(p, k)?;
                Ok(GvValue { vec: v, cov: c })
            }),
        }
    }

    pub fn from_evaluator(chart: &Chart, eval: Evaluator<GvJet>) -> Self {
        GvField {
            chart: chart.clone(),
            eval,
        }
    }

    pub fn from_parts(x: &VectorField, xi: &Form) -> Self {
        let (a, b) = (x.eval.clone(), xi.eval.clone());
        let m = x.chart.dim();
        GvField {
            chart: x.chart.clone(),
            eval: Arc::new(move |p, k| {
                let v = a(p, k)?;
                let w = b(p, k)?;
                let cov = (0..m)
                    .map(|i| w.get(1 << i).cloned().unwrap_or_else(|| Jet::zero(m, k)))
                    .collect();
                Ok(GvValue { vec: v, cov })
            }),
        }
    }

    pub fn from_vector(x: &VectorField) -> Self {
        Self::from_parts(x, &Form::zero(&x.chart, 1))
    }

    pub fn from_covector(xi: &Form) -> Self {
        Self::from_parts(&VectorField::zero(&xi.chart), xi)
    }

    pub fn zero(chart: &Chart) -> Self {
        Self::from_parts(&VectorField::zero(chart), &Form::zero(chart, 1))
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn jet(&self, p: &[f64], order: usize) -> Result<GvJet> {
        (self.eval)(p, order)
    }

    pub(crate) fn evaluator(&self) -> &Evaluator<GvJet> {
        &self.eval
    }

    pub fn value(&self, p: &[f64]) -> Result<GvValue<f64>> {
        let g = self.jet(p, 0)?;
        Ok(GvValue {
            vec: values(&g.vec),
            cov: values(&g.cov),
        })
    }

    pub fn vector(&self) -> VectorField {
        let a = self.eval.clone();
        VectorField::from_evaluator(&self.chart, Arc::new(move |p, k| Ok(a(p, k)?.vec)))
    }

    pub fn covector(&self) -> Form {
        let a = self.eval.clone();
        Form::from_evaluator(
            &self.chart,
            Some(1),
            Arc::new(move |p, k| Ok(FormJet::one_form(a(p, k)?.cov))),
        )
    }

    fn zip(&self, o: &GvField, s: f64) -> GvField {
        let (a, b) = (self.eval.clone(), o.eval.clone());
        GvField {
            chart: self.chart.clone(),
            eval: Arc::new(move |p, k| {
                let (x, y) = (a(p, k)?, b(p, k)?);
                let f = |u: &Vec<Jet>, v: &Vec<Jet>| -> Vec<Jet> {
                    u.iter().zip(v).map(|(a, b)| a + &b.scale(s)).collect()
                };
                Ok(GvValue {
                    vec: f(&x.vec, &y.vec),
                    cov: f(&x.cov, &y.cov),
                })
            }),
        }
    }

    pub fn add(&self, o: &GvField) -> GvField {
        self.zip(o, 1.0)
    }

    pub fn sub(&self, o: &GvField) -> GvField {
        self.zip(o, -1.0)
    }

    pub fn scale(&self, s: f64) -> GvField {
        self.mul_scalar(&ScalarField::constant(&self.chart, s))
    }

    pub fn mul_scalar(&self, f: &ScalarField) -> GvField {
        let (a, b) = (self.eval.clone(), f.eval.clone());
        GvField {
            chart: self.chart.clone(),
            eval: Arc::new(move |p, k| {
                let g = a(p, k)?;
                let c = b(p, k)?;
                Ok(GvValue {
                    vec: g.vec.iter().map(|j| j * &c).collect(),
                    cov: g.cov.iter().map(|j| j * &c).collect(),
                })
            }),
        }
    }

    /// `⟨self, o⟩` as a function.
    pub fn pairing(&self, o: &GvField) -> ScalarField {
        let (a, b) = (self.eval.clone(), o.eval.clone());
        ScalarField::from_evaluator(&self.chart, Arc::new(move |p, k| a(p, k)?.pairing(&b(p, k)?)))
    }
}

/// Smooth map between charts, as jets of its components in source variables.
#[derive(Clone)]
pub struct ChartMap {
    source: Chart,
    target: Chart,
    eval: Evaluator<Vec<Jet>>,
}

impl ChartMap {
    pub fn new(
        source: &Chart,
        target: &Chart,
        f: impl Fn(&[Jet]) -> Vec<Jet> + Send + Sync + 'static,
    ) -> Self {
        let g = closed_form(source, f);
        let t = target.clone();
        ChartMap {
            source: source.clone(),
            target: target.clone(),
            eval: Arc::new(move |p, k| {
                let out = g(p, k)?;
                t.check(&values(&out))?;
                Ok(out)
            }),
        }
    }

    pub fn from_evaluator(source: &Chart, target: &Chart, eval: Evaluator<Vec<Jet>>) -> Self {
        ChartMap {
            source: source.clone(),
            target: target.clone(),
            eval,
        }
    }

    pub fn identity(chart: &Chart) -> Self {
        Self::new(chart, chart, |x| x.to_vec())
    }

    /// Projections of `a × b` onto its factors.
    pub fn projections(a: &Chart, b: &Chart) -> (ChartMap, ChartMap) {
        let prod = a.product(b);
        let m = a.dim();
        (
            ChartMap::new(&prod, a, move |x| x[..m].to_vec()),
            ChartMap::new(&prod, b, move |x| x[m..].to_vec()),
        )
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn target(&self) -> &Chart {
        &self.target
    }

    pub fn jet(&self, p: &[f64], order: usize) -> Result<Vec<Jet>> {
        (self.eval)(p, order)
    }

    pub fn apply(&self, p: &[f64]) -> Result<Vec<f64>> {
        Ok(values(&self.jet(p, 0)?))
    }

    /// `∂φ^i/∂x^j` at `p`.
    pub fn jacobian(&self, p: &[f64]) -> Result<DMatrix<f64>> {
        let js = self.jet(p, 1)?;
        let n = self.source.dim();
        Ok(DMatrix::from_fn(js.len(), n, |i, j| js[i].gradient()[j]))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChartMap) -> ChartMap {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        ChartMap {
            source: self.source.clone(),
            target: other.target.clone(),
            eval: Arc::new(move |p, k| {
                let inner = a(p, k)?;
                let outer = b(&values(&inner), k)?;
                Ok(compose_jets(&outer, &inner))
            }),
        }
    }
}

/// Diffeomorphism of a chart given with its inverse.
#[derive(Clone)]
pub struct Diffeo {
    pub forward: ChartMap,
    pub inverse: ChartMap,
}

impl Diffeo {
    pub fn new(forward: ChartMap, inverse: ChartMap) -> Self {
        Diffeo { forward, inverse }
    }

    pub fn identity(chart: &Chart) -> Self {
        Diffeo::new(ChartMap::identity(chart), ChartMap::identity(chart))
    }

    pub fn chart(&self) -> &Chart {
        self.forward.source()
    }

    pub fn inverse(&self) -> Diffeo {
        Diffeo::new(self.inverse.clone(), self.forward.clone())
    }

    /// `self ∘ other` (apply `other` first).
    pub fn after(&self, other: &Diffeo) -> Diffeo {
        Diffeo::new(
            other.forward.then(&self.forward),
            self.inverse.then(&other.inverse),
        )
    }

    /// Largest `|λ⁻¹(λ(p)) − p|` over the given points.
    pub fn roundtrip_residual(&self, points: &[Vec<f64>]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for p in points {
            let q = self.inverse.apply(&self.forward.apply(p)?)?;
            for (a, b) in q.iter().zip(p) {
                worst = worst.max((a - b).abs());
            }
        }
        Ok(worst)
    }
}

/// Complex-valued form `re + i·im`, used for spinors.
#[derive(Clone)]
pub struct ComplexForm {
    pub re: Form,
    pub im: Form,
}

impl ComplexForm {
    pub fn new(re: Form, im: Form) -> Self {
        ComplexForm { re, im }
    }

    pub fn real(re: Form) -> Self {
        let im = re.scale(0.0);
        ComplexForm { re, im }
    }

    pub fn chart(&self) -> &Chart {
        self.re.chart()
    }

    pub fn value(&self, p: &[f64]) -> Result<crate::exterior::MultivectorValue> {
        let re = self.re.value(p)?.complexify();
        let im = self.im.value(p)?.complexify();
        re.add(&im.map(|c| c * num_complex::Complex64::i()))
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> ComplexForm {
        ComplexForm {
            re: f(&self.re),
            im: f(&self.im),
        }
    }

    pub fn sub(&self, o: &ComplexForm) -> ComplexForm {
        ComplexForm {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn scale(&self, s: f64) -> ComplexForm {
        self.map(|f| f.scale(s))
    }
}
