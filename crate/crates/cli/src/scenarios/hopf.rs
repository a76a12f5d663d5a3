//! Scenarios on `ℂ² \ {0}` with the two rotation-invariant structures.

use gencx_core::calculus::{exterior_d, pullback, Chart, ChartMap, Diffeo, Form, FormJet};
use gencx_core::courant::{generator_residual, gsym_exp, gv_residual, ExpOptions, GenSymmetry, InfPath, InfSymmetry};
use gencx_core::error::Result;
use gencx_core::exterior::blade_of;
use gencx_core::fixtures::*;
use gencx_core::hamiltonian::*;
use gencx_core::jet::Jet;
use gencx_core::linear::{check_gcs, from_complex, from_symplectic};
use gencx_core::polynomial::{random_form, random_section};
use gencx_core::sampling::{box_points, disc_points, shell_points, shell_points_off_axis};
use nalgebra::DMatrix;

use super::{max_over, Config};
use crate::report::Check;

pub const OPPOSITE_COMPLEX: &str = "Hopf example: quotient by X₁ is the disc with the opposite complex structure";
pub const TWIST_VANISHES: &str = "Hopf example: H = −dB, so the reduced twist vanishes";
pub const OPPOSITE_SYMPLECTIC: &str = "Hopf example: 𝕁₂ descends to r⁻² times the opposite symplectic structure";
pub const PRINTED_J2: &str = "Hopf example: displayed matrix of e^{−B}𝕁₂e^{B}";
pub const FIXTURE: &str = "Hopf example: 𝕁₁, 𝕁₂ are H-twisted generalized complex";
pub const GENERATORS: &str = "Hopf example: 𝕁(d ln r) = X + ξ and ι_X H = dξ";
pub const POLAR_H: &str = "Hopf example: H = −sin 2λ dλ∧dφ₁∧dφ₂";
pub const PRINTED_J1: &str = "Hopf example: displayed matrix of e^{−B}𝕁₁e^{B}";
const SYMMETRIES: &str = "generalized symmetries: composition law and exponential";

fn disc(radius: f64) -> Chart {
    Chart::new("disc", 2, move |p| p[0] * p[0] + p[1] * p[1] < radius * radius)
}

/// Gauge `z₁ > 0` on the sphere of the given radius, with connection `dφ₁`.
pub(crate) fn level_setup(radius: f64) -> ReductionSetup {
    let slice = ChartMap::new(&disc(radius), &hopf_chart(), move |y| {
        let rest = (&(&y[0] * &y[0]) + &(&y[1] * &y[1])).scale(-1.0).add_scalar(radius * radius);
        vec![rest.sqrt(), y[0].zero_like(), y[0].clone(), y[1].clone()]
    });
    ReductionSetup::new(slice, vec![dphi1()], vec![radius.ln()])
}

fn opposite_complex() -> DMatrix<f64> {
    from_complex(&jmat()).expect("standard").into_mat()
}

pub fn j1_reduction(cfg: &Config) -> Result<Vec<Check>> {
    let n = cfg.samples_or(40);
    let mut out = Vec::new();
    for (k, radius) in [1.0f64, 2.0].into_iter().enumerate() {
        let pts = disc_points(&mut cfg.rng(k as u64), n, radius, 0.05);
        let r = reduce(&hopf_j1(), &hopf_spec1(), &level_setup(radius), &pts, ReductionOptions::default())?;
        let want = opposite_complex();
        let tag = |s: &str| format!("{s}_r{radius}");
        out.push(Check::new(
            &tag("structure"),
            OPPOSITE_COMPLEX,
            max_over(&pts, |q| Ok((r.structure.value(q)?.mat() - &want).amax()))?,
            1e-6,
        ));
        out.push(Check::new(&tag("twist"), TWIST_VANISHES, max_over(&pts, |q| Ok(r.h.value(q)?.max_magnitude()))?, 1e-10));
        out.push(Check::new(&tag("diagnostics"), OPPOSITE_COMPLEX, r.diagnostics.max_residual(), 1e-6));
        let dh = exterior_d(&r.h);
        out.push(Check::new(&tag("dh"), TWIST_VANISHES, max_over(&pts, |q| Ok(dh.value(q)?.max_magnitude()))?, 1e-7));
        out.push(Check::new(
            &tag("involutivity"),
            OPPOSITE_COMPLEX,
            r.structure.involutivity_residual(&pts[..pts.len().min(5)])?,
            1e-5,
        ));
    }
    Ok(out)
}

pub fn j2_reduction(cfg: &Config) -> Result<Vec<Check>> {
    let n = cfg.samples_or(30);
    let mut out = Vec::new();
    for (k, radius) in [1.0f64, 2.0].into_iter().enumerate() {
        let pts = disc_points(&mut cfg.rng(k as u64), n, radius, 0.05);
        let (f, consistency) = companion_descent(&hopf_j1(), &hopf_j2(), &hopf_spec1(), &level_setup(radius), &pts)?;
        let tag = |s: &str| format!("{s}_r{radius}");
        out.push(Check::new(&tag("descent_consistency"), OPPOSITE_SYMPLECTIC, consistency, 1e-8));
        let target = from_symplectic(&(-jmat() / (radius * radius)))?.into_mat();
        out.push(Check::new(
            &tag("vs_r_inverse_square"),
            OPPOSITE_SYMPLECTIC,
            max_over(&pts, |q| Ok((f.value(q)?.mat() - &target).amax()))?,
            1e-6,
        ));
        out.push(Check::new(
            &tag("vs_z1_inverse_square"),
            OPPOSITE_SYMPLECTIC,
            max_over(&pts, |q| {
                let z1 = radius * radius - q[0] * q[0] - q[1] * q[1];
                Ok((f.value(q)?.mat() - from_symplectic(&(-jmat() / z1))?.mat()).amax())
            })?,
            1e-9,
        ));
    }
    let pts = shell_points_off_axis(&mut cfg.rng(5), n, cfg.rmin, cfg.rmax, 0.1);
    let moved = hopf_j2().b_transform(&hopf_b())?;
    let diff = |p: &[f64]| -> Result<DMatrix<f64>> {
        Ok(moved.value(p)?.mat() - printed_j2_prime(&Jet::coordinates(p, 0)).value())
    };
    out.push(Check::new("printed_j2_prime", PRINTED_J2, max_over(&pts, |p| Ok(diff(p)?.amax()))?, 1e-9));
    out.push(Check::new(
        "printed_j2_prime_outside_t*z1_tz2",
        PRINTED_J2,
        max_over(&pts, |p| {
            let d = diff(p)?;
            Ok((0..8)
                .flat_map(|i| (0..8).map(move |j| (i, j)))
                .filter(|&(i, j)| !((4..6).contains(&i) && (2..4).contains(&j)))
                .map(|(i, j)| d[(i, j)].abs())
                .fold(0.0, f64::max))
        })?,
        1e-9,
    ));
    Ok(out)
}

fn rotation(c: &Chart, s: f64) -> Diffeo {
    let f = move |s: f64| {
        move |x: &[Jet]| {
            vec![
                &x[0] * s.cos() - &x[1] * s.sin(),
                &x[0] * s.sin() + &x[1] * s.cos(),
                x[2].clone(),
                x[3].clone(),
            ]
        }
    };
    Diffeo::new(ChartMap::new(c, c, f(s)), ChartMap::new(c, c, f(-s)))
}

pub fn symmetry_suite(cfg: &Config) -> Result<Vec<Check>> {
    let n = cfg.samples_or(100);
    let pts = shell_points(&mut cfg.rng(0), n, 4, cfg.rmin, cfg.rmax);
    let off = shell_points_off_axis(&mut cfg.rng(1), n, cfg.rmin, cfg.rmax, 0.1);
    let mut out = Vec::new();
    for (name, s, spec) in [("j1", hopf_j1(), hopf_spec1()), ("j2", hopf_j2(), hopf_spec2())] {
        out.push(Check::new(
            &format!("{name}_gcs"),
            FIXTURE,
            max_over(&pts, |p| Ok(check_gcs(&s.value(p)?).max()))?,
            1e-9,
        ));
        out.push(Check::new(
            &format!("{name}_involutivity"),
            FIXTURE,
            s.involutivity_residual(&pts[..pts.len().min(10)])?,
            1e-5,
        ));
        let rep = check_hamiltonian_action(&s, &spec, &pts)?;
        out.push(Check::new(&format!("{name}_generator"), GENERATORS, rep.generator, 1e-12));
        out.push(Check::new(&format!("{name}_contraction"), GENERATORS, rep.closed_twist, 1e-9));
    }

    let angles = Chart::new("angles", 3, |_| true);
    let phi = ChartMap::new(&angles, &hopf_chart(), |y| {
        let (s, c) = (y[0].sin(), y[0].cos());
        vec![&s * &y[1].cos(), &s * &y[1].sin(), &c * &y[2].cos(), &c * &y[2].sin()]
    });
    let pulled = pullback(&phi, &hopf_h())?;
    let ang = box_points(&mut cfg.rng(2), n, 3, 0.05, 1.5);
    out.push(Check::new(
        "h_in_angles",
        POLAR_H,
        max_over(&ang, |y| {
            let mut v = pulled.value(y)?;
            v.accumulate(blade_of(&[0, 1, 2]), (2.0 * y[0]).sin());
            Ok(v.max_magnitude())
        })?,
        1e-9,
    ));
    let moved = hopf_j1().b_transform(&hopf_b())?;
    out.push(Check::new(
        "printed_j1_prime",
        PRINTED_J1,
        max_over(&off, |p| Ok((moved.value(p)?.mat() - printed_j1_prime(&Jet::coordinates(p, 0)).value()).amax()))?,
        1e-9,
    ));
    let total = hopf_h().add(&exterior_d(&hopf_b()));
    out.push(Check::new("h_plus_db", TWIST_VANISHES, max_over(&off, |p| Ok(total.value(p)?.max_magnitude()))?, 1e-8));

    let c = hopf_chart();
    let few = &off[..off.len().min(10)];
    let mut g = cfg.rng(3);
    let gs: Vec<GenSymmetry> = (0..3)
        .map(|i| GenSymmetry::new(rotation(&c, 0.3 + i as f64), random_form(&mut g, &c, 2, 1.0)))
        .collect::<Result<_>>()?;
    let assoc = gs[0].compose(&gs[1])?.compose(&gs[2])?.distance(&gs[0].compose(&gs[1].compose(&gs[2])?)?, few)?;
    out.push(Check::new("composition_associative", SYMMETRIES, assoc, 1e-12));
    let sec = random_section(&mut g, &c, 1.0);
    let lhs = gs[0].compose(&gs[1])?.act(&sec)?;
    let rhs = gs[0].act(&gs[1].act(&sec)?)?;
    out.push(Check::new("composition_acts", SYMMETRIES, max_over(few, |p| gv_residual(&lhs, &rhs, p))?, 1e-12));
    let gen = InfSymmetry::new(&hopf_x1(), &Form::new(&c, Some(2), |x| FormJet::term(4, &[1, 2], x[0].constant_like(-1.0))))?;
    let o = ExpOptions::default();
    let rec = generator_residual(|s| gsym_exp(&gen, s, o), &InfPath::autonomous(&gen), 0.5, 1e-4, few)?;
    out.push(Check::new("exponential_generator", SYMMETRIES, rec, 1e-4));
    let fixed = GenSymmetry::diffeomorphism(&rotation(&c, 0.7)).act(&hopf_spec1().generator(0))?;
    out.push(Check::new(
        "rotation_fixes_x1_plus_xi1",
        SYMMETRIES,
        max_over(few, |p| gv_residual(&fixed, &hopf_spec1().generator(0), p))?,
        1e-12,
    ));
    Ok(out)
}
