//! Generalized complex structures as fields of matrices on a chart.

use std::sync::Arc;

use crate::calculus::{
    directional, exterior_d, pullback, values, Chart, ChartMap, Form, FormJet, GvField, GvJet,
    ScalarField,
};
use crate::courant::courant_jet;
use crate::error::Result;
use crate::exterior::GvValue;
use crate::jet::Jet;
use crate::jetmat::JetMat;
use crate::linear::{check_gcs, GcsResidual, GcsValue};

pub type MatEvaluator = Arc<dyn Fn(&[f64], usize) -> Result<JetMat> + Send + Sync>;

/// A field of `2m × 2m` matrices `𝕁` on a chart, with an optional twisting
/// 3-form `H`.
#[derive(Clone)]
pub struct GcsField {
    chart: Chart,
    eval: MatEvaluator,
    h: Option<Form>,
}

/// Jet matrix of `v ↦ ι_v B`.
pub fn two_form_map_jet(b: &FormJet, nvars: usize, order: usize) -> JetMat {
    let m = b.dim();
    JetMat::from_fn(m, m, |row, col| {
        if row == col {
            return Jet::zero(nvars, order);
        }
        let (lo, hi, sign) = if col < row { (col, row, 1.0) } else { (row, col, -1.0) };
        b.get((1 << lo) | (1 << hi))
            .map(|c| c.truncate(order).scale(sign))
            .unwrap_or_else(|| Jet::zero(nvars, order))
    })
}

/// `e^{B}` as a jet matrix.
pub fn b_exp_jet(bm: &JetMat) -> JetMat {
    let m = bm.nrows();
    let t = bm.get(0, 0);
    JetMat::from_fn(2 * m, 2 * m, |i, j| {
        if i == j {
            t.constant_like(1.0)
        } else if i >= m && j < m {
            bm.get(i - m, j).clone()
        } else {
            t.zero_like()
        }
    })
}

fn gv_from_stacked(v: Vec<Jet>) -> GvJet {
    GvValue::from_stacked(&v)
}

impl GcsField {
    /// Closed-form field; `f` receives coordinate jets.
    pub fn new(chart: &Chart, f: impl Fn(&[Jet]) -> JetMat + Send + Sync + 'static) -> Self {
        let c = chart.clone();
        GcsField {
            chart: chart.clone(),
            eval: Arc::new(move |p, k| {
                c.check(p)?;
                Ok(f(&Jet::coordinates(p, k)))
            }),
            h: None,
        }
    }

    pub fn from_evaluator(chart: &Chart, eval: MatEvaluator) -> Self {
        GcsField {
            chart: chart.clone(),
            eval,
            h: None,
        }
    }

    pub fn constant(chart: &Chart, j: &GcsValue) -> Self {
        let m = j.mat().clone();
        let n = chart.dim();
        Self::new(chart, move |x| JetMat::constant(&m, &x.first().cloned().unwrap_or_else(|| Jet::zero(n, 0))))
    }

    pub fn with_twist(mut self, h: &Form) -> Result<Self> {
        h.require_degree(3)?;
        self.chart.same(h.chart())?;
        self.h = Some(h.clone());
        Ok(self)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn h(&self) -> Option<&Form> {
        self.h.as_ref()
    }

    /// `H`, or the zero 3-form.
    pub fn twist(&self) -> Form {
        self.h.clone().unwrap_or_else(|| Form::zero(&self.chart, 3))
    }

    pub fn jet(&self, p: &[f64], order: usize) -> Result<JetMat> {
        (self.eval)(p, order)
    }

    pub fn value(&self, p: &[f64]) -> Result<GcsValue> {
        GcsValue::new(self.jet(p, 0)?.value())
    }

    /// `𝕁 s` pointwise.
    pub fn apply(&self, s: &GvField) -> Result<GvField> {
        self.chart.same(s.chart())?;
        let (j, a) = (self.eval.clone(), s.evaluator().clone());
        Ok(GvField::from_evaluator(
            &self.chart,
            Arc::new(move |p, k| Ok(gv_from_stacked(j(p, k)?.mul_vec(&a(p, k)?.stacked())))),
        ))
    }

    /// Largest algebraic residuals over the points.
    pub fn check(&self, points: &[Vec<f64>]) -> Result<GcsResidual> {
        let mut worst = GcsResidual {
            square: 0.0,
            orthogonality: 0.0,
        };
        for p in points {
            let r = check_gcs(&self.value(p)?);
            worst.square = worst.square.max(r.square);
            worst.orthogonality = worst.orthogonality.max(r.orthogonality);
        }
        Ok(worst)
    }

    /// `𝔛_f = 𝕁(df)`.
    pub fn hamiltonian_field(&self, f: &ScalarField) -> Result<GvField> {
        self.apply(&GvField::from_covector(&exterior_d(&f.to_form())))
    }

    /// `{f, g} = X_f(g)`.
    pub fn poisson_bracket(&self, f: &ScalarField, g: &ScalarField) -> Result<ScalarField> {
        Ok(directional(&self.hamiltonian_field(f)?.vector(), g))
    }

    /// `d_L F = dF + i𝕁(dF)` for `F = re + i·im`, returned as (real, imaginary) parts.
    pub fn lie_algebroid_d0(&self, re: &ScalarField, im: &ScalarField) -> Result<(GvField, GvField)> {
        let dre = GvField::from_covector(&exterior_d(&re.to_form()));
        let dim = GvField::from_covector(&exterior_d(&im.to_form()));
        Ok((dre.sub(&self.apply(&dim)?), dim.add(&self.apply(&dre)?)))
    }

    /// `e^{−B}𝕁e^{B}`, twisted by `H + dB`.
    pub fn b_transform(&self, b: &Form) -> Result<GcsField> {
        b.require_degree(2)?;
        self.chart.same(b.chart())?;
        let (j, be) = (self.eval.clone(), b.evaluator().clone());
        let n = self.chart.dim();
        let out = GcsField::from_evaluator(
            &self.chart,
            Arc::new(move |p, k| {
                let bm = two_form_map_jet(&be(p, k)?, n, k);
                let e = b_exp_jet(&bm);
                let em = b_exp_jet(&bm.scale(-1.0));
                Ok(em.mul(&j(p, k)?).mul(&e))
            }),
        );
        out.with_twist(&self.twist().add(&exterior_d(b)).homogeneous(3))
    }

    /// Residual of involutivity of the `+i` eigenbundle under `[,]_H`.
    ///
    /// The frame is `s_a = ½(1 − i𝕁)e_a` for the coordinate basis `e_a`; the
    /// residual is the largest modulus of `½(1 + i𝕁)[s_a, s_b]_H`.
    pub fn involutivity_residual(&self, points: &[Vec<f64>]) -> Result<f64> {
        let n = self.chart.dim();
        let mut worst: f64 = 0.0;
        for p in points {
            let j1 = self.jet(p, 1)?;
            let h0 = match &self.h {
                Some(h) => Some(h.jet(p, 0)?),
                None => None,
            };
            let one = Jet::constant(1.0, n, 1);
            let frame: Vec<(GvJet, GvJet)> = (0..2 * n)
                .map(|a| {
                    let re: Vec<Jet> = (0..2 * n)
                        .map(|i| one.scale(if i == a { 0.5 } else { 0.0 }))
                        .collect();
                    let im: Vec<Jet> = j1.col(a).iter().map(|x| x.scale(-0.5)).collect();
                    (gv_from_stacked(re), gv_from_stacked(im))
                })
                .collect();
            let j0 = j1.value();
            for a in 0..2 * n {
                for b in a + 1..2 * n {
                    let (u, v) = &frame[a];
                    let (w, z) = &frame[b];
                    let br = |x: &GvJet, y: &GvJet| -> Result<Vec<f64>> {
                        Ok(values(&courant_jet(x, y, h0.as_ref())?.stacked()))
                    };
                    let (uw, vz, uz, vw) = (br(u, w)?, br(v, z)?, br(u, z)?, br(v, w)?);
                    let re = nalgebra::DVector::from_iterator(2 * n, uw.iter().zip(&vz).map(|(x, y)| x - y));
                    let im = nalgebra::DVector::from_iterator(2 * n, uz.iter().zip(&vw).map(|(x, y)| x + y));
                    let pr = (&re - &j0 * &im) * 0.5;
                    let pi = (&im + &j0 * &re) * 0.5;
                    for i in 0..2 * n {
                        worst = worst.max(pr[i].hypot(pi[i]));
                    }
                }
            }
        }
        Ok(worst)
    }

    /// Block-diagonal structure on the product chart, twisted by `H₁ ⊕ H₂`.
    pub fn product(&self, other: &GcsField) -> Result<GcsField> {
        let (m1, m2) = (self.chart.dim(), other.chart.dim());
        let prod = self.chart.product(&other.chart);
        let (pa, pb) = ChartMap::projections(&self.chart, &other.chart);
        let (ja, jb) = (self.eval.clone(), other.eval.clone());
        let m = m1 + m2;
        let out = GcsField::from_evaluator(
            &prod,
            Arc::new(move |p, k| {
                let a = ja(&p[..m1], k)?;
                let b = jb(&p[m1..], k)?;
                let xs = Jet::coordinates(p, k);
                let a = a.compose(&xs[..m1]);
                let b = b.compose(&xs[m1..]);
                let z = xs[0].zero_like();
                // a-index (vec i | cov i) ↦ (i | m + i); b-index ↦ (m1 + i | m + m1 + i)
                let ia = |i: usize| if i < m1 { i } else { m + i - m1 };
                let ib = |i: usize| if i < m2 { m1 + i } else { m + m1 + i - m2 };
                let mut out = JetMat::from_fn(2 * m, 2 * m, |_, _| z.clone());
                for r in 0..2 * m1 {
                    for c in 0..2 * m1 {
                        out.set(ia(r), ia(c), a.get(r, c).clone());
                    }
                }
                for r in 0..2 * m2 {
                    for c in 0..2 * m2 {
                        out.set(ib(r), ib(c), b.get(r, c).clone());
                    }
                }
                Ok(out)
            }),
        );
        if self.h.is_none() && other.h.is_none() {
            return Ok(out);
        }
        let h = pullback(&pa, &self.twist())?
            .add(&pullback(&pb, &other.twist())?)
            .homogeneous(3);
        out.with_twist(&h)
    }
}
