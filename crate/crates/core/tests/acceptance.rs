//! One line per acceptance criterion. Criteria whose literal target cannot be
//! met are printed as FAIL; their attainable parts are still asserted.

use gencx_core::calculus::*;
use gencx_core::cohomology::*;
use gencx_core::courant::*;
use gencx_core::exterior::MultivectorValue;
use gencx_core::fixtures::*;
use gencx_core::hamiltonian::*;
use gencx_core::jet::Jet;
use gencx_core::linear::*;
use gencx_core::polynomial::*;
use gencx_core::rational::{q, QMatrix, Q};
use gencx_core::sampling::*;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn fmax(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn disc(radius: f64) -> Chart {
    Chart::new("disc", 2, move |p| p[0] * p[0] + p[1] * p[1] < radius * radius)
}

fn level_setup(radius: f64, theta: Form) -> ReductionSetup {
    let slice = ChartMap::new(&disc(radius), &hopf_chart(), move |y| {
        let rest = (&(&y[0] * &y[0]) + &(&y[1] * &y[1])).scale(-1.0).add_scalar(radius * radius);
        vec![rest.sqrt(), y[0].zero_like(), y[0].clone(), y[1].clone()]
    });
    ReductionSetup::new(slice, vec![theta], vec![radius.ln()])
}

fn c1() -> Outcome {
    let pts = shell_points(&mut rng(1), 1000, 4, 0.2, 5.0);
    let mut gcs: f64 = 0.0;
    let mut inv: f64 = 0.0;
    for s in [hopf_j1(), hopf_j2()] {
        gcs = gcs.max(fmax(pts.iter().map(|p| check_gcs(&s.value(p).unwrap()).max())));
        inv = inv.max(s.involutivity_residual(&pts[..100]).unwrap());
    }
    outcome(gcs < 1e-9 && inv < 1e-5, format!("check_gcs {gcs:.1e}, involutivity {inv:.1e}"))
}

fn c2() -> Outcome {
    let pts = shell_points(&mut rng(2), 200, 4, 0.2, 5.0);
    let mut gen: f64 = 0.0;
    let mut closed: f64 = 0.0;
    for (s, spec) in [(hopf_j1(), hopf_spec1()), (hopf_j2(), hopf_spec2())] {
        let rep = check_hamiltonian_action(&s, &spec, &pts).unwrap();
        gen = gen.max(rep.generator);
        closed = closed.max(rep.closed_twist);
    }
    outcome(gen < 1e-12 && closed < 1e-9, format!("generator {gen:.1e}, ι_X H − dξ {closed:.1e}"))
}

fn c3() -> Outcome {
    // the unit sphere in angles, written out directly
    let angles = Chart::new("angles", 3, |_| true);
    let phi = ChartMap::new(&angles, &hopf_chart(), |y| {
        let (s, c) = (y[0].sin(), y[0].cos());
        vec![&s * &y[1].cos(), &s * &y[1].sin(), &c * &y[2].cos(), &c * &y[2].sin()]
    });
    let pulled = pullback(&phi, &hopf_h()).unwrap();
    let mut g = rng(3);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let y = [g.gen_range(0.05..1.52), g.gen_range(0.0..6.28), g.gen_range(0.0..6.28)];
        let mut v = pulled.value(&y).unwrap();
        v.accumulate(gencx_core::exterior::blade_of(&[0, 1, 2]), (2.0 * y[0]).sin());
        worst = worst.max(v.max_magnitude());
    }
    outcome(worst < 1e-9, format!("max deviation {worst:.1e}"))
}

fn c4() -> Outcome {
    let pts = shell_points_off_axis(&mut rng(4), 200, 0.3, 3.0, 0.1);
    let j1 = hopf_j1().b_transform(&hopf_b()).unwrap();
    let j2 = hopf_j2().b_transform(&hopf_b()).unwrap();
    let (mut d1, mut d2, mut d2_other, mut printed_sq): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for p in &pts {
        let x = Jet::coordinates(p, 0);
        d1 = d1.max((j1.value(p).unwrap().mat() - printed_j1_prime(&x).value()).amax());
        let printed = printed_j2_prime(&x).value();
        let d = j2.value(p).unwrap().mat() - &printed;
        d2 = d2.max(d.amax());
        let outside = d.iter().enumerate().filter(|(k, _)| !((4..6).contains(&(k % 8)) && (2..4).contains(&(k / 8))));
        d2_other = d2_other.max(fmax(outside.map(|(_, v)| v.abs())));
        printed_sq = printed_sq.max((&printed * &printed + DMatrix::identity(8, 8)).amax());
    }
    assert!(d1 < 1e-9 && d2_other < 1e-9, "{d1} {d2_other}");
    outcome(
        d1 < 1e-9 && d2 < 1e-9,
        format!(
            "𝕁₁′ {d1:.1e}; 𝕁₂′ {d2:.1e} (outside the (T*z₁,Tz₂) block {d2_other:.1e}; printed 𝕁₂′ has |𝕁²+1| = {printed_sq:.2})"
        ),
    )
}

fn c5() -> Outcome {
    let pts = disc_points(&mut rng(5), 100, 1.0, 0.05);
    let r = reduce(&hopf_j1(), &hopf_spec1(), &level_setup(1.0, dphi1()), &pts, ReductionOptions::default()).unwrap();
    let opposite = from_complex(&jmat()).unwrap();
    let j1 = fmax(pts.iter().map(|q| (r.structure.value(q).unwrap().mat() - opposite.mat()).amax()));
    let h = fmax(pts.iter().map(|q| r.h.value(q).unwrap().max_magnitude()));
    let (mut scaled_r, mut scaled_z1): (f64, f64) = (0.0, 0.0);
    for radius in [1.0, 2.0] {
        let qs = disc_points(&mut rng(6), 20, radius, 0.05);
        let (f, _) = companion_descent(&hopf_j1(), &hopf_j2(), &hopf_spec1(), &level_setup(radius, dphi1()), &qs).unwrap();
        let target = from_symplectic(&(-jmat() / (radius * radius))).unwrap();
        for q in &qs {
            let got = f.value(q).unwrap();
            scaled_r = scaled_r.max((got.mat() - target.mat()).amax());
            let z1 = radius * radius - q[0] * q[0] - q[1] * q[1];
            scaled_z1 = scaled_z1.max((got.mat() - from_symplectic(&(-jmat() / z1)).unwrap().mat()).amax());
        }
    }
    assert!(j1 < 1e-6 && h < 1e-12 && scaled_z1 < 1e-9, "{j1} {h} {scaled_z1}");
    outcome(
        j1 < 1e-6 && h < 1e-12 && scaled_r < 1e-6,
        format!("𝕁₁ {j1:.1e}, h {h:.1e}; 𝕁₂ vs r⁻² {scaled_r:.2} (vs |z₁|⁻² {scaled_z1:.1e})"),
    )
}

fn c6() -> Outcome {
    let total = hopf_h().add(&exterior_d(&hopf_b()));
    let pts = shell_points_off_axis(&mut rng(7), 200, 0.2, 5.0, 0.05);
    let worst = fmax(pts.iter().map(|p| total.value(p).unwrap().max_magnitude()));
    outcome(worst < 1e-8, format!("|H + dB| {worst:.1e}"))
}

fn c7() -> Outcome {
    let c = hopf_chart();
    let ctx = TwistedCourant::new(&hopf_h()).unwrap();
    let mut g = rng(8);
    let pts = shell_points(&mut g, 100, 4, 0.5, 2.0);
    let mut worst = AxiomReport::default();
    for _ in 0..20 {
        let (a, b, s) = (random_section(&mut g, &c, 1.0), random_section(&mut g, &c, 1.0), random_section(&mut g, &c, 1.0));
        let (f, h) = (random_scalar(&mut g, &c, 1.0), random_scalar(&mut g, &c, 1.0));
        worst.per_point.extend(ctx.axiom_residuals(&a, &b, &s, &f, &h, &pts).unwrap().per_point);
    }
    let m = worst.max();
    let open = Form::new(&c, Some(3), |x| FormJet::term(4, &[0, 1, 2], &x[3] * &x[3]));
    let bad = TwistedCourant::new(&open).unwrap();
    let (a, b, s) = (random_section(&mut g, &c, 1.0), random_section(&mut g, &c, 1.0), random_section(&mut g, &c, 1.0));
    let f = random_scalar(&mut g, &c, 1.0);
    let flagged = bad.axiom_residuals(&a, &b, &s, &f, &f, &pts[..3]).unwrap().max()[1];
    outcome(
        m.iter().all(|&v| v < 1e-6) && flagged > 1e-3,
        format!("max axiom residual {:.1e}, open-twist jacobiator {flagged:.1e}", fmax(m)),
    )
}

fn c8() -> Outcome {
    let c = Chart::euclidean(4);
    let mut g = rng(9);
    let pts = box_points(&mut g, 3, 4, -1.0, 1.0);
    let mut psi: f64 = 0.0;
    for _ in 0..20 {
        let h = exterior_d(&random_form(&mut g, &c, 2, 1.0));
        let h2 = exterior_d(&random_form(&mut g, &c, 2, 1.0));
        let mut inf = || InfSymmetry::new(&random_vector_field(&mut g, &c, 1.0), &random_form(&mut g, &c, 2, 1.0)).unwrap();
        let (a, b) = (inf(), inf());
        let lhs = twisted_lie_bracket(Some(&h2.sub(&h)), &psi_h(&h, &a).unwrap(), &psi_h(&h, &b).unwrap()).unwrap();
        let rhs = psi_h(&h, &twisted_lie_bracket(Some(&h2), &a, &b).unwrap()).unwrap();
        psi = psi.max(fmax(pts.iter().map(|p| lhs.residual(&rhs, p).unwrap())));
    }

    let hc = hopf_chart();
    let spts = shell_points_off_axis(&mut g, 10, 0.3, 2.0, 0.1);
    let rot = |s: f64| {
        let f = move |s: f64| move |x: &[Jet]| vec![&x[0] * s.cos() - &x[1] * s.sin(), &x[0] * s.sin() + &x[1] * s.cos(), x[2].clone(), x[3].clone()];
        Diffeo::new(ChartMap::new(&hc, &hc, f(s)), ChartMap::new(&hc, &hc, f(-s)))
    };
    let gs: Vec<GenSymmetry> = (0..3).map(|i| GenSymmetry::new(rot(0.3 + i as f64), random_form(&mut g, &hc, 2, 1.0)).unwrap()).collect();
    let assoc = gs[0].compose(&gs[1]).unwrap().compose(&gs[2]).unwrap()
        .distance(&gs[0].compose(&gs[1].compose(&gs[2]).unwrap()).unwrap(), &spts).unwrap();
    let sec = random_section(&mut g, &hc, 1.0);
    let lhs = gs[0].compose(&gs[1]).unwrap().act(&sec).unwrap();
    let rhs = gs[0].act(&gs[1].act(&sec).unwrap()).unwrap();
    let action = fmax(spts.iter().map(|p| gv_residual(&lhs, &rhs, p).unwrap()));

    let gen = InfSymmetry::new(&hopf_x1(), &Form::basis(&hc, &[2, 1], 1.0)).unwrap();
    let o = ExpOptions::default();
    let recovery = generator_residual(|s| gsym_exp(&gen, s, o), &InfPath::autonomous(&gen), 0.5, 1e-4, &spts).unwrap();
    outcome(
        psi < 1e-6 && assoc < 1e-12 && action < 1e-12 && recovery < 1e-4,
        format!("ψ identity {psi:.1e}, composition {:.1e}, generator recovery {recovery:.1e}", assoc.max(action)),
    )
}

fn c9() -> Outcome {
    let c = Chart::euclidean(4);
    let mut g = rng(10);
    let pts = box_points(&mut g, 50, 4, -1.0, 1.0);
    let mut worst: f64 = 0.0;
    for k in [1usize, 2] {
        let rho = random_form(&mut g, &c, k + 1, 1.0);
        let ys: Vec<VectorField> = (0..=k).map(|_| random_vector_field(&mut g, &c, 1.0)).collect();
        worst = worst.max(coboundary_residual(&rho, &ys, &pts).unwrap());
    }
    outcome(worst < 1e-6, format!("residual {worst:.1e}"))
}

fn c10() -> Outcome {
    let mut k = DMatrix::zeros(8, 1);
    k[(4, 0)] = 1.0;
    let r = linear_reduce(&symplectic_flat(2), &k, 1e-12).unwrap();
    let omega = QMatrix::from_f64(&std_omega(2)).unwrap();
    let inc = QMatrix::from_f64(&r.inclusion).unwrap();
    let w: Vec<Vec<Q>> = (0..r.quotient_dim).map(|a| inc.column(a)[..4].to_vec()).collect();
    // W ⊂ ker dx¹ and complementary to its ω-orthogonal
    let in_kernel = w.iter().all(|v| v[0].is_zero());
    let c = QMatrix::from_rows(&[vec![q(1), q(0), q(0), q(0)]]).null_space();
    let c_perp = QMatrix::from_rows(&c.iter().map(|v| omega.mul_vec(v)).collect::<Vec<_>>()).null_space();
    let complementary = QMatrix::from_columns(&[w.clone(), c_perp].concat()).rank() == 3;
    let wm = QMatrix::from_columns(&w);
    let red = wm.transpose().mul(&omega).mul(&wm);
    let inv = red.inverse().unwrap();
    let n = red.nrows();
    let mut rows = vec![vec![q(0); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            rows[i][n + j] = -inv[(i, j)].clone();
            rows[n + i][j] = red[(i, j)].clone();
        }
    }
    let oracle = QMatrix::from_rows(&rows);
    let got = QMatrix::from_f64(r.reduced.mat()).unwrap();
    let equal = got == oracle;
    outcome(
        in_kernel && complementary && equal,
        format!("exact equality {equal}, representatives valid {}", in_kernel && complementary),
    )
}

fn c11() -> Outcome {
    let mut g = rng(11);
    let so3 = FinLieAlgebra::so3().change_basis(&random_unimodular(&mut g, 3)).unwrap();
    let gl2 = FinLieAlgebra::gl2().change_basis(&random_unimodular(&mut g, 4)).unwrap();
    let ha = FinLieAlgebra::heisenberg().direct_sum(&FinLieAlgebra::aff1());
    let b2 = FinLieAlgebra::borel2().change_basis(&random_unimodular(&mut g, 3)).unwrap();
    let sa = FinLieAlgebra::so3().direct_sum(&FinLieAlgebra::aff1());
    let cases = vec![
        (so3.clone(), LieModule::adjoint(&so3)),
        (gl2.clone(), LieModule::adjoint(&gl2).direct_sum(&LieModule::trivial(&gl2, 1))),
        (ha.clone(), LieModule::adjoint(&ha)),
        (b2.clone(), LieModule::adjoint(&b2).direct_sum(&LieModule::trivial(&b2, 2))),
        (sa.clone(), LieModule::trivial(&sa, 2)),
    ];
    let dd_zero = cases.iter().all(|(a, v)| {
        (0..a.dim()).all(|n| coboundary(a, v, &coboundary(a, v, &Cochain::random(&mut g, a, v, n))).is_zero())
    });
    let mut agree = 0;
    let mut cocycles = 0;
    for t in 0..20 {
        let (a, v) = &cases[t % cases.len()];
        let omega = if t % 2 == 0 {
            Cochain::random(&mut g, a, v, 2)
        } else {
            let basis = coboundary_matrix(a, v, 2).null_space();
            let mut w = vec![Q::zero(); basis.first().map_or(0, Vec::len)];
            for b in &basis {
                let s = random_vector(&mut g, 1).remove(0);
                for (x, y) in w.iter_mut().zip(b) {
                    *x += &s * y;
                }
            }
            Cochain::from_values(a, v, 2, w.chunks(v.dim()).map(<[Q]>::to_vec).collect()).unwrap()
        };
        let (cocycle, _) = cocycle_check(a, v, &omega);
        let e = |i: usize| ExtElement { x: a.basis(i), a: vec![Q::zero(); v.dim()] };
        let lie = (0..a.dim()).all(|i| {
            (0..a.dim()).all(|j| {
                (0..a.dim()).all(|k| {
                    let jac = extension_jacobiator(a, v, &omega, &e(i), &e(j), &e(k)).unwrap();
                    jac.x.iter().chain(&jac.a).all(Zero::is_zero)
                })
            })
        });
        agree += usize::from(cocycle == lie);
        cocycles += usize::from(cocycle);
    }
    outcome(
        dd_zero && agree == 20 && cocycles > 0 && cocycles < 20,
        format!("∂² = 0 {dd_zero}; Jacobi ⇔ cocycle on {agree}/20 ({cocycles} cocycles)"),
    )
}

fn c12() -> Outcome {
    let pts = disc_points(&mut rng(12), 10, 1.0, 0.05);
    let shifted = dphi1().add(&Form::new(&hopf_chart(), Some(1), |x| FormJet::term(4, &[3], x[2].clone())));
    let rep = connection_independence(
        &hopf_j1(),
        &hopf_spec1(),
        &level_setup(1.0, dphi1()),
        &level_setup(1.0, shifted),
        &pts,
        ReductionOptions::default(),
    )
    .unwrap();
    outcome(rep.max() < 1e-6, format!("h′ − h − db {:.1e}", rep.max()))
}

fn product_space() -> (GcsField, MomentMapSpec, ReductionSetup, Vec<Vec<f64>>) {
    let torus = Chart::euclidean(2);
    let s = hopf_j1().product(&GcsField::constant(&torus, &complex_flat(1))).unwrap();
    let zero = MomentMapSpec::new(
        vec![ScalarField::constant(&torus, 0.0)],
        vec![VectorField::zero(&torus)],
        vec![Form::zero(&torus, 1)],
    )
    .unwrap();
    let spec = hopf_spec1().diagonal(&zero).unwrap();
    let quotient = Chart::new("disc x T2", 4, |p| p[0] * p[0] + p[1] * p[1] < 1.0);
    let slice = ChartMap::new(&quotient, s.chart(), |y| {
        let rest = (&(&y[0] * &y[0]) + &(&y[1] * &y[1])).scale(-1.0).add_scalar(1.0);
        vec![rest.sqrt(), y[0].zero_like(), y[0].clone(), y[1].clone(), y[2].clone(), y[3].clone()]
    });
    let (pa, _) = ChartMap::projections(&hopf_chart(), &torus);
    let extra = Form::new(s.chart(), Some(1), |x| FormJet::term(6, &[5], &(&x[2] * &x[2]) + &x[4].sin()));
    let theta = pullback(&pa, &dphi1()).unwrap().add(&extra);
    let setup = ReductionSetup::new(slice, vec![theta], vec![0.0]);
    let mut g = rng(13);
    let pts = disc_points(&mut g, 100, 1.0, 0.05)
        .into_iter()
        .map(|mut q| {
            q.extend([g.gen_range(0.0..6.28), g.gen_range(0.0..6.28)]);
            q
        })
        .collect();
    (s, spec, setup, pts)
}

fn c13() -> Outcome {
    let (s, spec, setup, pts) = product_space();
    let r = reduce(&s, &spec, &setup, &pts, ReductionOptions::default()).unwrap();
    let res = dh_check(&r, &s, &spec, &setup, &pts).unwrap();
    outcome(res < 1e-6, format!("h − h₀ − Ω∧ζ {res:.1e} at {} points", pts.len()))
}

fn c14() -> Outcome {
    let c = Chart::euclidean(2);
    let s = GcsField::constant(&c, &symplectic_flat(1));
    let mu = ScalarField::new(&c, |z| (&(&z[0] * &z[0]) + &(&z[1] * &z[1])).scale(0.5));
    let spec = MomentMapSpec::from_structure(&s, vec![mu]).unwrap();
    let pts = disc_points(&mut rng(14), 50, 2.0f64.sqrt(), 0.05);
    let rep = cut(&s, &spec, 1.0, &pts, ReductionOptions::default()).unwrap();
    let r = rep.result.unwrap();
    let want = symplectic_flat(1);
    let plane = fmax(pts.iter().map(|p| (r.structure.value(p).unwrap().mat() - want.mat()).amax()));

    let hpts = shell_points_off_axis(&mut rng(15), 20, 0.3, 2.5, 0.1);
    let hop = cut(&hopf_j1(), &hopf_spec1(), 0.5, &hpts, ReductionOptions::default()).unwrap();
    outcome(
        plane < 1e-6 && hop.structure < 1e-5 && hop.sampled > 0,
        format!("plane {plane:.1e}; Hopf below ε {:.1e} at {} points", hop.structure, hop.sampled),
    )
}

fn c15() -> Outcome {
    let sym = pure_spinor_line(&i_eigenbundle(&symplectic_flat(2), 1e-10).unwrap(), 1e-10).unwrap();
    let e_iw = map_to_two_form(&std_omega(2)).complexify().mul_scalar(&Complex64::i()).exp_wedge().unwrap();
    let r_sym = sym.residual(&e_iw).unwrap();
    let cx = pure_spinor_line(&i_eigenbundle(&complex_flat(2), 1e-10).unwrap(), 1e-10).unwrap();
    let one = Complex64::new(1.0, 0.0);
    let dz = |a: u32, b: u32| MultivectorValue::from_terms(4, [(1 << a, one), (1 << b, Complex64::i())]);
    let r_cx = cx.residual(&dz(0, 1).wedge(&dz(2, 3)).unwrap()).unwrap();

    let c = Chart::euclidean(4);
    let mut g = rng(16);
    let mut compat: f64 = 0.0;
    for _ in 0..3 {
        let h = exterior_d(&random_form(&mut g, &c, 2, 0.5));
        let gen = InfSymmetry::new(&random_vector_field(&mut g, &c, 0.2), &random_form(&mut g, &c, 2, 0.5)).unwrap();
        let sym = gsym_exp(&gen, 0.3, ExpOptions::default()).unwrap();
        let (mut re, mut im) = (Form::zero(&c, 0), Form::zero(&c, 0));
        for k in 0..=4 {
            re = re.add(&random_form(&mut g, &c, k, 0.5));
            im = im.add(&random_form(&mut g, &c, k, 0.5));
        }
        let pts = box_points(&mut g, 5, 4, -0.5, 0.5);
        compat = compat.max(d_h_compatibility_residual(&sym, &h, &ComplexForm::new(re, im), &pts).unwrap());
    }
    outcome(
        r_sym < 1e-12 && r_cx < 1e-12 && compat < 1e-7,
        format!("e^{{iω}} line {r_sym:.1e}, dz₁∧dz₂ line {r_cx:.1e}, d_H compatibility {compat:.1e}"),
    )
}

/// Criteria whose literal target is not reachable; see the README.
const UNMET: [usize; 2] = [4, 5];

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("Hopf fixture validity", c1),
        ("Hamiltonian identities", c2),
        ("coordinate identity for H", c3),
        ("B-transform reproduction", c4),
        ("reduction reproduction", c5),
        ("H + dB vanishes on M₁", c6),
        ("Courant axiom suite", c7),
        ("symmetry algebra", c8),
        ("cochain identity", c9),
        ("linear reduction oracle", c10),
        ("Lie cohomology", c11),
        ("connection independence", c12),
        ("DH formula", c13),
        ("cutting", c14),
        ("spinor suite", c15),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let line = format!("{:>2} {} {name}: {}\n", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        // written directly so the summary survives output capture
        let _ = std::io::Write::write_all(&mut std::io::stderr(), line.as_bytes());
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.iter().all(|n| UNMET.contains(n)), "unexpected failures: {failed:?}");
}
