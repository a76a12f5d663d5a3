use gencx_core::calculus::{exterior_d, Chart, ComplexForm, Form};
use gencx_core::cohomology::*;
use gencx_core::courant::{
    alpha_cochain, coboundary_residual, d_h_compatibility_residual, gsym_exp, twisted_d_complex, ExpOptions,
    InfSymmetry,
};
use gencx_core::error::Result;
use gencx_core::exterior::MultivectorValue;
use gencx_core::fixtures::*;
use gencx_core::linear::{i_eigenbundle, map_to_two_form, pure_spinor_line};
use gencx_core::polynomial::{random_form, random_vector_field};
use gencx_core::rational::Q;
use gencx_core::sampling::{box_points, shell_points, shell_points_off_axis};
use num_complex::Complex64;
use num_traits::Zero;

use super::{max_over, Config};
use crate::report::Check;

pub const COBOUNDARY: &str = "Chevalley–Eilenberg coboundary squares to zero";
pub const EXTENSION: &str = "abelian extensions are Lie exactly for 2-cocycles";
pub const BRIDGE: &str = "the cochain α_ρ of invariant forms on the rotation algebra";
pub const SPINOR_LINES: &str = "pure spinor lines e^{iω} and dz₁∧dz₂";
pub const DH_COMPAT: &str = "generalized symmetries intertwine d_H";

fn cases(cfg: &Config) -> Result<Vec<(FinLieAlgebra, LieModule)>> {
    let mut g = cfg.rng(0);
    let so3 = FinLieAlgebra::so3().change_basis(&random_unimodular(&mut g, 3))?;
    let gl2 = FinLieAlgebra::gl2().change_basis(&random_unimodular(&mut g, 4))?;
    let ha = FinLieAlgebra::heisenberg().direct_sum(&FinLieAlgebra::aff1());
    let b2 = FinLieAlgebra::borel2().change_basis(&random_unimodular(&mut g, 3))?;
    let sa = FinLieAlgebra::so3().direct_sum(&FinLieAlgebra::aff1());
    Ok(vec![
        (so3.clone(), LieModule::adjoint(&so3)),
        (gl2.clone(), LieModule::adjoint(&gl2).direct_sum(&LieModule::trivial(&gl2, 1))),
        (ha.clone(), LieModule::adjoint(&ha)),
        (b2.clone(), LieModule::adjoint(&b2).direct_sum(&LieModule::trivial(&b2, 2))),
        (sa.clone(), LieModule::trivial(&sa, 2)),
    ])
}

fn random_cocycle(g: &mut impl rand::RngCore, a: &FinLieAlgebra, v: &LieModule) -> Result<Cochain> {
    let basis = coboundary_matrix(a, v, 2).null_space();
    let mut w = vec![Q::zero(); basis.first().map_or(0, Vec::len)];
    for b in &basis {
        let s = random_vector(g, 1).remove(0);
        for (x, y) in w.iter_mut().zip(b) {
            *x += &s * y;
        }
    }
    Cochain::from_values(a, v, 2, w.chunks(v.dim()).map(<[Q]>::to_vec).collect())
}

fn is_lie(a: &FinLieAlgebra, v: &LieModule, omega: &Cochain) -> Result<bool> {
    let e = |i: usize| ExtElement { x: a.basis(i), a: vec![Q::zero(); v.dim()] };
    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            for k in j + 1..a.dim() {
                let jac = extension_jacobiator(a, v, omega, &e(i), &e(j), &e(k))?;
                if !jac.x.iter().chain(&jac.a).all(Zero::is_zero) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn cohomology(cfg: &Config) -> Result<Vec<Check>> {
    let cases = cases(cfg)?;
    let mut g = cfg.rng(1);
    let mut nonzero = 0usize;
    for (a, v) in &cases {
        for n in 0..a.dim() {
            let c = Cochain::random(&mut g, a, v, n);
            nonzero += usize::from(!coboundary(a, v, &coboundary(a, v, &c)).is_zero());
        }
    }
    let trials = cfg.samples_or(20);
    let mut mismatches = 0usize;
    for t in 0..trials {
        let (a, v) = &cases[t % cases.len()];
        let omega = if t % 2 == 0 { Cochain::random(&mut g, a, v, 2) } else { random_cocycle(&mut g, a, v)? };
        let (cocycle, _) = cocycle_check(a, v, &omega);
        mismatches += usize::from(cocycle != is_lie(a, v, &omega)?);
    }
    let so3 = FinLieAlgebra::so3();
    let mut out = vec![
        Check::new("d_squared_nonzero_cases", COBOUNDARY, nonzero as f64, 0.5),
        Check::new("jacobi_cocycle_mismatches", EXTENSION, mismatches as f64, 0.5),
        Check::new("so3_h2_trivial", COBOUNDARY, cohomology_dim(&so3, &LieModule::trivial(&so3, 1), 2) as f64, 0.5),
    ];
    let xs = [hopf_x1(), hopf_x2()];
    let pts = shell_points_off_axis(&mut cfg.rng(2), 10, cfg.rmin.max(0.4), cfg.rmax, 0.2);
    out.push(Check::new("alpha_b_coboundary", BRIDGE, coboundary_residual(&hopf_b(), &xs, &pts)?, 1e-8));
    out.push(Check::new(
        "alpha_h_coboundary",
        BRIDGE,
        coboundary_residual(&hopf_h(), &[xs[0].clone(), xs[1].clone(), xs[0].add(&xs[1])], &pts)?,
        1e-8,
    ));
    let a = alpha_cochain(&hopf_h(), &xs)?;
    out.push(Check::new("alpha_h_vanishes", BRIDGE, max_over(&pts, |p| Ok(a.value(p)?.max_magnitude()))?, 1e-8));
    Ok(out)
}

pub fn spinors(cfg: &Config) -> Result<Vec<Check>> {
    let sym = pure_spinor_line(&i_eigenbundle(&symplectic_flat(2), 1e-10)?, 1e-10)?;
    let e_iw = map_to_two_form(&std_omega(2)).complexify().mul_scalar(&Complex64::i()).exp_wedge()?;
    let cx = pure_spinor_line(&i_eigenbundle(&complex_flat(2), 1e-10)?, 1e-10)?;
    let one = Complex64::new(1.0, 0.0);
    let dz = |a: u32, b: u32| MultivectorValue::from_terms(4, [(1 << a, one), (1 << b, Complex64::i())]);
    let mut out = vec![
        Check::new("symplectic_line", SPINOR_LINES, sym.residual(&e_iw)?, 1e-12),
        Check::new("complex_line", SPINOR_LINES, cx.residual(&dz(0, 1).wedge(&dz(2, 3))?)?, 1e-12),
    ];
    let pts = shell_points(&mut cfg.rng(0), cfg.samples_or(10), 4, cfg.rmin, cfg.rmax);
    let rho = hopf_spinor();
    out.push(Check::new(
        "hopf_spinor_line",
        SPINOR_LINES,
        max_over(&pts, |p| pure_spinor_line(&i_eigenbundle(&hopf_j1().value(p)?, 1e-10)?, 1e-10)?.residual(&rho.value(p)?))?,
        1e-10,
    ));
    let d = twisted_d_complex(&hopf_h(), &rho)?;
    out.push(Check::new("hopf_spinor_closed", DH_COMPAT, max_over(&pts, |p| Ok(d.value(p)?.max_magnitude()))?, 1e-10));

    let c = Chart::euclidean(4);
    let mut g = cfg.rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let h = exterior_d(&random_form(&mut g, &c, 2, 0.5));
        let gen = InfSymmetry::new(&random_vector_field(&mut g, &c, 0.2), &random_form(&mut g, &c, 2, 0.5))?;
        let sym = gsym_exp(&gen, 0.3, ExpOptions::default())?;
        let (mut re, mut im) = (Form::zero(&c, 0), Form::zero(&c, 0));
        for k in 0..=4 {
            re = re.add(&random_form(&mut g, &c, k, 0.5));
            im = im.add(&random_form(&mut g, &c, k, 0.5));
        }
        let pts = box_points(&mut g, 5, 4, -0.5, 0.5);
        worst = worst.max(d_h_compatibility_residual(&sym, &h, &ComplexForm::new(re, im), &pts)?);
    }
    out.push(Check::new("d_h_compatibility", DH_COMPAT, worst, 1e-7));
    Ok(out)
}
