use gencx_core::calculus::{pullback, Chart, ChartMap, Form, FormJet, ScalarField, VectorField};
use gencx_core::courant::{AxiomReport, TwistedCourant};
use gencx_core::error::Result;
use gencx_core::fixtures::*;
use gencx_core::hamiltonian::*;
use gencx_core::linear::{check_gcs, from_symplectic, linear_reduce, pairing_matrix};
use gencx_core::polynomial::{random_scalar, random_section};
use gencx_core::rational::{q, QMatrix, Q};
use gencx_core::sampling::{box_points, disc_points, shell_points, shell_points_off_axis};
use nalgebra::DMatrix;

use super::hopf::level_setup;
use super::{max_over, Config};
use crate::report::Check;

pub const AXIOMS: &str = "twisted Courant bracket axioms";
pub const LINEAR: &str = "linear reduction equals the Marsden–Weinstein quotient";
pub const CUT_PLANE: &str = "cutting the plane at ε gives the disc";
pub const CUT_HOPF: &str = "below the cut the structure is a b-transform of the original";
pub const DH: &str = "variation of the reduced twist: h − h₀ = Ω∧ζ";
pub const CONNECTION: &str = "changing connection changes h by an exact form";

pub fn axioms(cfg: &Config) -> Result<Vec<Check>> {
    let c = hopf_chart();
    let ctx = TwistedCourant::new(&hopf_h())?;
    let mut g = cfg.rng(0);
    let pts = shell_points(&mut g, cfg.samples_or(50), 4, cfg.rmin.max(0.3), cfg.rmax);
    let mut out = vec![Check::new("closure", AXIOMS, ctx.closure_residual(&pts)?, 1e-10)];
    let mut worst = AxiomReport::default();
    for _ in 0..20 {
        let (a, b, s) = (random_section(&mut g, &c, 1.0), random_section(&mut g, &c, 1.0), random_section(&mut g, &c, 1.0));
        let (f, h) = (random_scalar(&mut g, &c, 1.0), random_scalar(&mut g, &c, 1.0));
        worst.per_point.extend(ctx.axiom_residuals(&a, &b, &s, &f, &h, &pts)?.per_point);
    }
    for (name, v) in AxiomReport::NAMES.iter().zip(worst.max()) {
        out.push(Check::new(name, AXIOMS, v, 1e-6));
    }
    let open = Form::new(&c, Some(3), |x| FormJet::term(4, &[0, 1, 2], &x[3] * &x[3]));
    let bad = TwistedCourant::new(&open)?;
    let (a, b, s) = (random_section(&mut g, &c, 1.0), random_section(&mut g, &c, 1.0), random_section(&mut g, &c, 1.0));
    let f = random_scalar(&mut g, &c, 1.0);
    let r = bad.axiom_residuals(&a, &b, &s, &f, &f, &pts[..pts.len().min(3)])?.max();
    out.push(Check::flag("open_twist_breaks_jacobiator", AXIOMS, r[1] > 1e-3));
    Ok(out)
}

fn exact_oracle(omega: &DMatrix<f64>, reduced: &DMatrix<f64>, inclusion: &DMatrix<f64>) -> bool {
    let (Some(om), Some(inc), Some(got)) = (QMatrix::from_f64(omega), QMatrix::from_f64(inclusion), QMatrix::from_f64(reduced))
    else {
        return false;
    };
    let m = om.nrows();
    let n = inc.ncols() / 2;
    let w: Vec<Vec<Q>> = (0..n).map(|a| inc.column(a)[..m].to_vec()).collect();
    let wm = QMatrix::from_columns(&w);
    let red = wm.transpose().mul(&om).mul(&wm);
    let Some(inv) = red.inverse() else {
        return false;
    };
    let mut rows = vec![vec![q(0); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            rows[i][n + j] = -inv[(i, j)].clone();
            rows[n + i][j] = red[(i, j)].clone();
        }
    }
    got == QMatrix::from_rows(&rows)
}

pub fn linear(cfg: &Config) -> Result<Vec<Check>> {
    let mut k = DMatrix::zeros(8, 1);
    k[(4, 0)] = 1.0;
    let r = linear_reduce(&symplectic_flat(2), &k, 1e-12)?;
    let mut out = vec![
        Check::flag("exact_quotient", LINEAR, exact_oracle(&std_omega(2), r.reduced.mat(), &r.inclusion)),
        Check::new("matches_standard_plane", LINEAR, (r.reduced.mat() - symplectic_flat(1).mat()).amax(), 1e-12),
        Check::new("pairing", LINEAR, (&r.pairing - pairing_matrix(2)).amax(), 1e-12),
        Check::new("solve", LINEAR, r.solve_residual, 1e-12),
    ];
    let mut worst: f64 = 0.0;
    let mut g = cfg.rng(0);
    for e in box_points(&mut g, cfg.samples_or(20), 16, -0.3, 0.3) {
        let a = DMatrix::identity(4, 4) + DMatrix::from_vec(4, 4, e);
        let omega = a.transpose() * std_omega(2) * &a;
        let r = linear_reduce(&from_symplectic(&omega)?, &k, 1e-10)?;
        worst = worst.max(check_gcs(&r.reduced).max()).max(r.solve_residual);
    }
    out.push(Check::new("deformed_forms", LINEAR, worst, 1e-9));
    Ok(out)
}

pub fn cutting(cfg: &Config) -> Result<Vec<Check>> {
    let n = cfg.samples_or(40);
    let c = Chart::euclidean(2);
    let s = GcsField::constant(&c, &symplectic_flat(1));
    let mu = ScalarField::new(&c, |z| (&(&z[0] * &z[0]) + &(&z[1] * &z[1])).scale(0.5));
    let spec = MomentMapSpec::from_structure(&s, vec![mu])?;
    let pts = disc_points(&mut cfg.rng(0), n, 2.0f64.sqrt(), 0.05);
    let rep = cut(&s, &spec, 1.0, &pts, ReductionOptions::default())?;
    let mut out = vec![Check::flag("plane_sampled", CUT_PLANE, rep.sampled == pts.len())];
    if let Some(r) = &rep.result {
        let want = symplectic_flat(1);
        out.push(Check::new(
            "plane_structure",
            CUT_PLANE,
            max_over(&pts, |p| Ok((r.structure.value(p)?.mat() - want.mat()).amax()))?,
            1e-6,
        ));
    }
    let hp = shell_points_off_axis(&mut cfg.rng(1), n, cfg.rmin, cfg.rmax, 0.1);
    let hop = cut(&hopf_j1(), &hopf_spec1(), 0.5, &hp, ReductionOptions::default())?;
    out.push(Check::flag("hopf_sampled", CUT_HOPF, hop.sampled > 0));
    out.push(Check::new("hopf_structure", CUT_HOPF, hop.structure, 1e-5));
    out.push(Check::new("hopf_twist", CUT_HOPF, hop.twist, 1e-8));
    Ok(out)
}

fn product(wiggle: f64) -> Result<(GcsField, MomentMapSpec, ReductionSetup)> {
    let torus = Chart::euclidean(2);
    let s = hopf_j1().product(&GcsField::constant(&torus, &complex_flat(1)))?;
    let zero = MomentMapSpec::new(
        vec![ScalarField::constant(&torus, 0.0)],
        vec![VectorField::zero(&torus)],
        vec![Form::zero(&torus, 1)],
    )?;
    let spec = hopf_spec1().diagonal(&zero)?;
    let quotient = Chart::new("disc x T2", 4, |p| p[0] * p[0] + p[1] * p[1] < 1.0);
    let slice = ChartMap::new(&quotient, s.chart(), |y| {
        let rest = (&(&y[0] * &y[0]) + &(&y[1] * &y[1])).scale(-1.0).add_scalar(1.0);
        vec![rest.sqrt(), y[0].zero_like(), y[0].clone(), y[1].clone(), y[2].clone(), y[3].clone()]
    });
    let (pa, _) = ChartMap::projections(&hopf_chart(), &torus);
    let extra = Form::new(s.chart(), Some(1), move |x| FormJet::term(6, &[5], &(&x[2] * &x[2]).scale(wiggle) + &x[4].sin()));
    let theta = pullback(&pa, &dphi1())?.add(&extra);
    Ok((s, spec, ReductionSetup::new(slice, vec![theta], vec![0.0])))
}

pub fn dh(cfg: &Config) -> Result<Vec<Check>> {
    let n = cfg.samples_or(30);
    let (s, spec, st) = product(1.0)?;
    let mut g = cfg.rng(0);
    let pts: Vec<Vec<f64>> = disc_points(&mut g, n, 1.0, 0.05)
        .into_iter()
        .zip(box_points(&mut g, n, 2, 0.0, 6.28))
        .map(|(mut q, t)| {
            q.extend(t);
            q
        })
        .collect();
    let r = reduce(&s, &spec, &st, &pts, ReductionOptions::default())?;
    let mut out = vec![
        Check::new("reduction_diagnostics", DH, r.diagnostics.max_residual(), 1e-6),
        Check::new("dh_formula", DH, dh_check(&r, &s, &spec, &st, &pts)?, 1e-6),
    ];
    let (_, _, other) = product(-0.5)?;
    let rep = connection_independence(&s, &spec, &st, &other, &pts, ReductionOptions::default())?;
    out.push(Check::new("product_connection_change", CONNECTION, rep.max(), 1e-6));
    let disc = disc_points(&mut g, n, 1.0, 0.05);
    let shifted = ReductionSetup::new(
        level_setup(1.0).slice.clone(),
        vec![dphi1().add(&Form::new(&hopf_chart(), Some(1), |x| FormJet::term(4, &[3], x[2].clone())))],
        vec![0.0],
    );
    let rep = connection_independence(&hopf_j1(), &hopf_spec1(), &level_setup(1.0), &shifted, &disc, ReductionOptions::default())?;
    out.push(Check::new("disc_connection_change", CONNECTION, rep.max(), 1e-6));
    Ok(out)
}
