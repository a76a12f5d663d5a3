//! Cutting a circle action at a level `ε` by reducing `M × ℂ`.
//!
//! The plane carries the standard symplectic structure with moment map
//! `g = ½|z|²`, and `M × ℂ` is reduced at `F = f + g = ε`. Over `{f < ε}` the
//! slice `p ↦ (p, √(2(ε − f(p))), 0)` is used with the connection `dφ_z`.

use std::sync::Arc;

use crate::calculus::{exterior_d, pullback, Chart, ChartMap, Form, ScalarField};
use crate::error::{GeomError, Result};
use crate::jet::Jet;
use crate::linear::from_symplectic;

use super::moment::MomentMapSpec;
use super::reduction::{reduce, ReductionOptions, ReductionResult, ReductionSetup};
use super::structure::GcsField;

/// `M × ℂ` with the product structure and the diagonal action.
#[derive(Clone)]
pub struct CutSpace {
    pub structure: GcsField,
    pub spec: MomentMapSpec,
    /// Connection `dφ_z` pulled back to the product.
    pub theta: Form,
}

pub fn plane_chart() -> Chart {
    Chart::euclidean(2)
}

/// The plane with `ω = dx∧dy` and moment map `½|z|²`.
pub fn plane() -> Result<(GcsField, MomentMapSpec)> {
    let c = plane_chart();
    let w = nalgebra::DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
    let s = GcsField::constant(&c, &from_symplectic(&w)?);
    let g = ScalarField::new(&c, |z| (&(&z[0] * &z[0]) + &(&z[1] * &z[1])).scale(0.5));
    let spec = MomentMapSpec::from_structure(&s, vec![g])?;
    Ok((s, spec))
}

pub fn cut_space(s: &GcsField, spec: &MomentMapSpec) -> Result<CutSpace> {
    if spec.rank() != 1 {
        return Err(GeomError::RankMismatch {
            expected: 1,
            found: spec.rank(),
        });
    }
    let (ps, pspec) = plane()?;
    let structure = s.product(&ps)?;
    let diag = spec.diagonal(&pspec)?;
    let (_, pb) = ChartMap::projections(s.chart(), &plane_chart());
    let dphi = Form::one_form(&plane_chart(), |z| {
        let inv = (&(&z[0] * &z[0]) + &(&z[1] * &z[1])).recip();
        vec![-&(&z[1] * &inv), &z[0] * &inv]
    });
    let theta = pullback(&pb, &dphi)?;
    Ok(CutSpace {
        structure,
        spec: diag,
        theta,
    })
}

/// Gauge over `{f < ε}` for the cut at `ε`.
pub fn cut_setup(s: &GcsField, spec: &MomentMapSpec, space: &CutSpace, eps: f64) -> ReductionSetup {
    let f = spec.mu[0].clone();
    let f2 = f.clone();
    let q = s.chart().restrict("below cut", move |p| f2.value(p).map(|v| v < eps).unwrap_or(false));
    let slice = ChartMap::from_evaluator(
        &q,
        space.structure.chart(),
        Arc::new(move |p, k| {
            let y = Jet::coordinates(p, k);
            let fy = f.jet(p, k)?;
            let z = fy.scale(-2.0).add_scalar(2.0 * eps).sqrt();
            let mut out = y;
            out.push(z.clone());
            out.push(z.zero_like());
            Ok(out)
        }),
    );
    ReductionSetup::new(slice, vec![space.theta.clone()], vec![eps])
}

#[derive(Clone)]
pub struct CutReport {
    /// `None` when no sample point lies below the cut.
    pub result: Option<ReductionResult>,
    pub sampled: usize,
    /// `J_cut − e^{−b}𝕁e^{b}` with `b = σ^*B₁`.
    pub structure: f64,
    /// `h − (H + db)`.
    pub twist: f64,
}

/// Cut `s` at `ε`, compared with `s` on the sample points below the cut.
pub fn cut(
    s: &GcsField,
    spec: &MomentMapSpec,
    eps: f64,
    points: &[Vec<f64>],
    opts: ReductionOptions,
) -> Result<CutReport> {
    let space = cut_space(s, spec)?;
    let setup = cut_setup(s, spec, &space, eps);
    let below: Vec<Vec<f64>> = points
        .iter()
        .filter(|p| setup.quotient.contains(p))
        .cloned()
        .collect();
    if below.is_empty() {
        return Ok(CutReport {
            result: None,
            sampled: 0,
            structure: 0.0,
            twist: 0.0,
        });
    }
    let result = reduce(&space.structure, &space.spec, &setup, &below, opts)?;
    let b = pullback(&setup.slice, &result.b1)?.homogeneous(2);
    let (bj, db) = (b.clone(), exterior_d(&b));
    let sc = s.chart().clone();
    let b_here = Form::from_evaluator(&sc, Some(2), Arc::new(move |p, k| bj.jet(p, k)));
    let moved = s.b_transform(&b_here)?;
    let mut structure: f64 = 0.0;
    let mut twist: f64 = 0.0;
    for p in &below {
        let d = result.structure.value(p)?.mat() - moved.value(p)?.mat();
        structure = structure.max(d.amax());
        let want = s.twist().value(p)?.add(&db.value(p)?)?;
        twist = twist.max(result.h.value(p)?.sub(&want)?.max_magnitude());
    }
    Ok(CutReport {
        result: Some(result),
        sampled: below.len(),
        structure,
        twist,
    })
}

/// Largest difference between the `TQ ⊕ T*Q` block of `outer` along
/// `q ↦ (q, 0, …, 0)` and the structure `inner` of `Q`.
pub fn block_compatibility(outer: &GcsField, inner: &GcsField, points: &[Vec<f64>]) -> Result<f64> {
    let (big, n) = (outer.chart().dim(), inner.chart().dim());
    let idx: Vec<usize> = (0..n).chain(big..big + n).collect();
    let mut worst: f64 = 0.0;
    for q in points {
        let mut p = q.clone();
        p.resize(big, 0.0);
        let a = outer.value(&p)?;
        let b = inner.value(q)?;
        for (i, &r) in idx.iter().enumerate() {
            for (j, &c) in idx.iter().enumerate() {
                worst = worst.max((a.mat()[(r, c)] - b.mat()[(i, j)]).abs());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{std_omega, symplectic_flat};

    #[test]
    fn plane_generator_is_rotation() {
        let (_, spec) = plane().unwrap();
        let x = spec.x[0].value(&[0.3, 0.5]).unwrap();
        assert!((x[0] + 0.5).abs() < 1e-15 && (x[1] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn symplectic_plane_cut_is_disc() {
        let c = Chart::euclidean(2);
        let s = GcsField::constant(&c, &symplectic_flat(1));
        let mu = ScalarField::new(&c, |z| (&(&z[0] * &z[0]) + &(&z[1] * &z[1])).scale(0.5));
        let spec = MomentMapSpec::from_structure(&s, vec![mu]).unwrap();
        let pts = vec![vec![0.3, 0.4], vec![-0.8, 0.1], vec![2.0, 0.0]];
        let rep = cut(&s, &spec, 1.0, &pts, ReductionOptions::default()).unwrap();
        assert_eq!(rep.sampled, 2);
        assert!(rep.structure < 1e-10 && rep.twist < 1e-12, "{} {}", rep.structure, rep.twist);
        let r = rep.result.unwrap();
        let want = from_symplectic(&std_omega(1)).unwrap();
        let d = r.structure.value(&pts[0]).unwrap().mat() - want.mat();
        assert!(d.amax() < 1e-10);
    }

    #[test]
    fn empty_region_is_reported() {
        let c = Chart::euclidean(2);
        let s = GcsField::constant(&c, &symplectic_flat(1));
        let mu = ScalarField::new(&c, |z| (&(&z[0] * &z[0]) + &(&z[1] * &z[1])).scale(0.5));
        let spec = MomentMapSpec::from_structure(&s, vec![mu]).unwrap();
        let rep = cut(&s, &spec, -1.0, &[vec![0.3, 0.4]], ReductionOptions::default()).unwrap();
        assert_eq!(rep.sampled, 0);
        assert!(rep.result.is_none());
    }
}
