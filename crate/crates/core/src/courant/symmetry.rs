//! The group of generalized symmetries: pairs `(λ, α)` of a diffeomorphism
//! and a 2-form acting by `λ_*X + (λ⁻¹)^*(ξ + ι_Xα)`.

use crate::calculus::{
    exterior_d, interior, pullback, push_form, pushforward, values, Chart, Diffeo, Form, GvField,
};
use crate::error::{GeomError, Result};

use super::bracket::{gv_residual, TwistedCourant};

#[derive(Clone)]
pub struct GenSymmetry {
    pub diffeo: Diffeo,
    pub alpha: Form,
}

impl GenSymmetry {
    pub fn new(diffeo: Diffeo, alpha: Form) -> Result<Self> {
        alpha.require_degree(2)?;
        diffeo.chart().same(alpha.chart())?;
        Ok(GenSymmetry { diffeo, alpha })
    }

    pub fn identity(chart: &Chart) -> Self {
        GenSymmetry {
            diffeo: Diffeo::identity(chart),
            alpha: Form::zero(chart, 2),
        }
    }

    /// `(id, B)`.
    pub fn b_field(b: &Form) -> Result<Self> {
        Self::new(Diffeo::identity(b.chart()), b.clone())
    }

    /// `(λ, 0)`.
    pub fn diffeomorphism(d: &Diffeo) -> Self {
        GenSymmetry {
            diffeo: d.clone(),
            alpha: Form::zero(d.chart(), 2),
        }
    }

    pub fn chart(&self) -> &Chart {
        self.diffeo.chart()
    }

    pub fn act(&self, s: &GvField) -> Result<GvField> {
        self.chart().same(s.chart())?;
        let x = s.vector();
        let vec = pushforward(&self.diffeo, &x)?;
        let cov = push_form(&self.diffeo, &s.covector().add(&interior(&x, &self.alpha)))?;
        Ok(GvField::from_parts(&vec, &cov))
    }

    /// `(λ, α)·(μ, β) = (λμ, μ^*α + β)`.
    pub fn compose(&self, other: &GenSymmetry) -> Result<GenSymmetry> {
        self.chart().same(other.chart())?;
        let alpha = pullback(&other.diffeo.forward, &self.alpha)?.add(&other.alpha);
        GenSymmetry::new(self.diffeo.after(&other.diffeo), alpha)
    }

    /// `(λ⁻¹, −(λ⁻¹)^*α)`.
    pub fn inverse(&self) -> Result<GenSymmetry> {
        GenSymmetry::new(self.diffeo.inverse(), push_form(&self.diffeo, &self.alpha)?.neg())
    }

    /// `(λ⁻¹)^*(H − dα)`, the twisting that makes the action a bracket map.
    pub fn transport_h(&self, h: &Form) -> Result<Form> {
        let out = push_form(&self.diffeo, &h.sub(&exterior_d(&self.alpha)))?;
        Ok(out.homogeneous(3))
    }

    /// Largest residual of `g∘[A,B]_H = [g∘A, g∘B]_{g∘H}` over the points.
    pub fn bracket_transport_residual(
        &self,
        ctx: &TwistedCourant,
        a: &GvField,
        b: &GvField,
        points: &[Vec<f64>],
    ) -> Result<f64> {
        let h = match ctx.h() {
            Some(h) => h.clone(),
            None => Form::zero(ctx.chart(), 3),
        };
        let moved = TwistedCourant::new(&self.transport_h(&h)?)?;
        let lhs = self.act(&ctx.bracket(a, b)?)?;
        let rhs = moved.bracket(&self.act(a)?, &self.act(b)?)?;
        points
            .iter()
            .try_fold(0.0f64, |m, p| Ok(m.max(gv_residual(&lhs, &rhs, p)?)))
    }

    pub fn roundtrip_residual(&self, points: &[Vec<f64>]) -> Result<f64> {
        self.diffeo.roundtrip_residual(points)
    }

    /// Largest difference of the maps and of the 2-forms over the points.
    pub fn distance(&self, other: &GenSymmetry, points: &[Vec<f64>]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for p in points {
            let (u, v) = (self.diffeo.forward.jet(p, 0)?, other.diffeo.forward.jet(p, 0)?);
            if u.len() != v.len() {
                return Err(GeomError::DimensionMismatch {
                    expected: u.len(),
                    found: v.len(),
                });
            }
            for (a, b) in values(&u).iter().zip(values(&v)) {
                worst = worst.max((a - b).abs());
            }
            let d = self.alpha.value(p)?.sub(&other.alpha.value(p)?)?;
            worst = worst.max(d.max_magnitude());
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{ChartMap, FormJet, VectorField};

    fn rotation(c: &Chart, t: f64) -> Diffeo {
        let rot = move |s: f64| {
            move |x: &[crate::jet::Jet]| {
                vec![
                    &x[0] * s.cos() - &x[1] * s.sin(),
                    &x[0] * s.sin() + &x[1] * s.cos(),
                    x[2].clone(),
                ]
            }
        };
        Diffeo::new(ChartMap::new(c, c, rot(t)), ChartMap::new(c, c, rot(-t)))
    }

    fn section(c: &Chart) -> GvField {
        GvField::new(c, |x| {
            (
                vec![x[1].sin(), &x[0] * &x[2], x[0].clone()],
                vec![x[2].cos(), &x[1] * &x[1], x[0].exp()],
            )
        })
    }

    #[test]
    fn identity_and_b_field() {
        let c = Chart::euclidean(3);
        let s = section(&c);
        let p = [0.2, 0.5, -0.4];
        let id = GenSymmetry::identity(&c).act(&s).unwrap();
        assert!(gv_residual(&id, &s, &p).unwrap() == 0.0);
        let b = Form::new(&c, Some(2), |x| FormJet::term(3, &[0, 2], x[1].clone()));
        let g = GenSymmetry::b_field(&b).unwrap();
        let expect = s.add(&GvField::from_covector(&interior(&s.vector(), &b)));
        assert!(gv_residual(&g.act(&s).unwrap(), &expect, &p).unwrap() < 1e-15);
    }

    #[test]
    fn action_respects_composition() {
        let c = Chart::euclidean(3);
        let a1 = Form::new(&c, Some(2), |x| FormJet::term(3, &[0, 1], x[2].sin()));
        let a2 = Form::new(&c, Some(2), |x| FormJet::term(3, &[1, 2], &x[0] * &x[1]));
        let g = GenSymmetry::new(rotation(&c, 0.4), a1).unwrap();
        let h = GenSymmetry::new(rotation(&c, -1.1), a2).unwrap();
        let s = section(&c);
        let p = [0.3, -0.6, 0.2];
        let lhs = g.compose(&h).unwrap().act(&s).unwrap();
        let rhs = g.act(&h.act(&s).unwrap()).unwrap();
        assert!(gv_residual(&lhs, &rhs, &p).unwrap() < 1e-13);
        let e = g.compose(&g.inverse().unwrap()).unwrap();
        assert!(e.distance(&GenSymmetry::identity(&c), &[p.to_vec()]).unwrap() < 1e-14);
    }

    #[test]
    fn closed_b_field_preserves_bracket() {
        let c = Chart::euclidean(3);
        let h = Form::new(&c, Some(3), |x| FormJet::term(3, &[0, 1, 2], x[0].cos()));
        let ctx = TwistedCourant::new(&h).unwrap();
        let b = Form::basis(&c, &[0, 1], 2.0);
        let g = GenSymmetry::b_field(&b).unwrap();
        let s = section(&c);
        let t = GvField::from_vector(&VectorField::coordinate(&c, 2)).add(&s.scale(0.5));
        let r = g
            .bracket_transport_residual(&ctx, &s, &t, &[vec![0.1, 0.2, 0.3]])
            .unwrap();
        assert!(r < 1e-13);
    }
}
