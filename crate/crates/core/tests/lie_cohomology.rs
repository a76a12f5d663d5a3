use gencx_core::cohomology::*;
use gencx_core::courant::{alpha_cochain, coboundary_residual};
use gencx_core::fixtures::*;
use gencx_core::rational::{from_f64, Q};
use gencx_core::sampling::{rng, shell_points_off_axis};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;

fn random_cases(seed: u64) -> Vec<(FinLieAlgebra, LieModule)> {
    let mut g = rng(seed);
    let so3 = FinLieAlgebra::so3().change_basis(&random_unimodular(&mut g, 3)).unwrap();
    let gl2 = FinLieAlgebra::gl2().change_basis(&random_unimodular(&mut g, 4)).unwrap();
    let ha = FinLieAlgebra::heisenberg().direct_sum(&FinLieAlgebra::aff1());
    let b2 = FinLieAlgebra::borel2().change_basis(&random_unimodular(&mut g, 3)).unwrap();
    let sa = FinLieAlgebra::so3().direct_sum(&FinLieAlgebra::aff1());
    vec![
        (so3.clone(), LieModule::adjoint(&so3)),
        (gl2.clone(), LieModule::adjoint(&gl2).direct_sum(&LieModule::trivial(&gl2, 1))),
        (ha.clone(), LieModule::adjoint(&ha)),
        (b2.clone(), LieModule::adjoint(&b2).direct_sum(&LieModule::trivial(&b2, 2))),
        (sa.clone(), LieModule::trivial(&sa, 2)),
    ]
}

#[test]
fn coboundary_squares_to_zero() {
    let mut g = rng(100);
    for (alg, module) in random_cases(101) {
        for n in 0..alg.dim() {
            let c = Cochain::random(&mut g, &alg, &module, n);
            let dd = coboundary(&alg, &module, &coboundary(&alg, &module, &c));
            assert!(dd.is_zero(), "degree {n} on dim {}", alg.dim());
        }
    }
}

#[test]
fn coboundary_matrices_compose_to_zero() {
    for (alg, module) in random_cases(102).into_iter().take(3) {
        for n in 0..alg.dim().saturating_sub(1) {
            let a = coboundary_matrix(&alg, &module, n);
            let b = coboundary_matrix(&alg, &module, n + 1);
            assert!(b.mul(&a).is_zero());
        }
    }
}

#[test]
fn abelian_trivial_coboundary_vanishes() {
    let g = FinLieAlgebra::abelian(3);
    let v = LieModule::trivial(&g, 2);
    for n in 0..3 {
        let c = Cochain::random(&mut rng(103), &g, &v, n);
        assert!(coboundary(&g, &v, &c).is_zero());
    }
}

fn ext(alg: &FinLieAlgebra, v: &LieModule, g: &mut rand_chacha::ChaCha8Rng) -> ExtElement {
    ExtElement {
        x: random_vector(g, alg.dim()),
        a: random_vector(g, v.dim()),
    }
}

/// Jacobiator of the extension equals `−∂ω(X,Y,Z)`.
fn jacobi_matches_coboundary(alg: &FinLieAlgebra, v: &LieModule, omega: &Cochain, g: &mut rand_chacha::ChaCha8Rng) -> bool {
    let d = coboundary(alg, v, omega);
    let (p, r, s) = (ext(alg, v, g), ext(alg, v, g), ext(alg, v, g));
    let j = extension_jacobiator(alg, v, omega, &p, &r, &s).unwrap();
    let want: Vec<Q> = d.eval(&[p.x, r.x, s.x]).into_iter().map(|x| -x).collect();
    j.x.iter().all(Zero::is_zero) && j.a == want
}

fn jacobi_holds(alg: &FinLieAlgebra, v: &LieModule, omega: &Cochain, g: &mut rand_chacha::ChaCha8Rng) -> bool {
    (0..alg.dim()).all(|i| {
        (0..alg.dim()).all(|j| {
            (0..alg.dim()).all(|k| {
                let e = |n: usize| ExtElement { x: alg.basis(n), a: vec![Q::zero(); v.dim()] };
                let jac = extension_jacobiator(alg, v, omega, &e(i), &e(j), &e(k)).unwrap();
                jac.a.iter().chain(&jac.x).all(Zero::is_zero)
            })
        })
    }) && {
        let (p, r, s) = (ext(alg, v, g), ext(alg, v, g), ext(alg, v, g));
        let jac = extension_jacobiator(alg, v, omega, &p, &r, &s).unwrap();
        jac.a.iter().chain(&jac.x).all(Zero::is_zero)
    }
}

#[test]
fn extension_is_lie_exactly_for_cocycles() {
    let mut g = rng(104);
    let cases = random_cases(105);
    let mut seen = (0, 0);
    for t in 0..20 {
        let (alg, v) = &cases[t % cases.len()];
        let omega = if t % 2 == 0 {
            Cochain::random(&mut g, alg, v, 2)
        } else {
            // random element of ker ∂₂
            let basis = coboundary_matrix(alg, v, 2).null_space();
            let mut w = vec![Q::zero(); basis.first().map_or(0, Vec::len)];
            for b in &basis {
                let s = random_vector(&mut g, 1).remove(0);
                for (x, y) in w.iter_mut().zip(b) {
                    *x += &s * y;
                }
            }
            let values = w.chunks(v.dim()).map(<[Q]>::to_vec).collect();
            Cochain::from_values(alg, v, 2, values).unwrap()
        };
        let (cocycle, _) = cocycle_check(alg, v, &omega);
        let lie = jacobi_holds(alg, v, &omega, &mut g);
        assert_eq!(cocycle, lie, "trial {t}");
        assert!(jacobi_matches_coboundary(alg, v, &omega, &mut g));
        if cocycle {
            seen.0 += 1;
        } else {
            seen.1 += 1;
        }
    }
    assert!(seen.0 >= 10 && seen.1 >= 5, "{seen:?}");
}

#[test]
fn zero_cocycle_gives_semidirect_product() {
    let alg = FinLieAlgebra::gl2();
    let v = LieModule::adjoint(&alg);
    let omega = Cochain::zero(&alg, &v, 2);
    assert!(jacobi_holds(&alg, &v, &omega, &mut rng(106)));
}

#[test]
fn abelian_plane_cocycle_extends() {
    let alg = FinLieAlgebra::abelian(2);
    let v = LieModule::trivial(&alg, 1);
    let omega = Cochain::random(&mut rng(107), &alg, &v, 2);
    assert!(cocycle_check(&alg, &v, &omega).0);
    assert!(jacobi_holds(&alg, &v, &omega, &mut rng(108)));
}

#[test]
fn non_cocycle_is_rejected_and_has_no_primitive() {
    let alg = FinLieAlgebra::heisenberg();
    let v = LieModule::adjoint(&alg);
    let mut g = rng(109);
    let c = loop {
        let c = Cochain::random(&mut g, &alg, &v, 2);
        if !cocycle_check(&alg, &v, &c).0 {
            break c;
        }
    };
    let (ok, res) = cocycle_check(&alg, &v, &c);
    assert!(!ok && res > 0.0);
    assert!(coboundary_check(&alg, &v, &c).is_none());
    assert!(extension_bracket(&alg, &v, &Cochain::zero(&alg, &v, 1), &ext(&alg, &v, &mut g), &ext(&alg, &v, &mut g)).is_err());
}

#[test]
fn so3_cocycles_are_coboundaries() {
    let g = FinLieAlgebra::so3();
    let v = LieModule::trivial(&g, 1);
    let z2 = coboundary_matrix(&g, &v, 2).null_space();
    assert_eq!(z2.len(), coboundary_matrix(&g, &v, 1).rank());
    for z in z2 {
        let c = Cochain::from_values(&g, &v, 2, z.chunks(1).map(<[Q]>::to_vec).collect()).unwrap();
        assert!(coboundary_check(&g, &v, &c).is_some());
    }
}

/// Values of `α_ρ` at a point on the rotation algebra span`{X₁, X₂}`, which
/// acts trivially on its invariant forms.
#[test]
fn rotation_algebra_bridge() {
    let alg = FinLieAlgebra::abelian(2);
    let pts = shell_points_off_axis(&mut rng(110), 10, 0.4, 2.5, 0.2);
    let xs = [hopf_x1(), hopf_x2()];
    let b = hopf_b();
    for p in &pts {
        let vals: Vec<Vec<Q>> = xs
            .iter()
            .map(|x| {
                let w = alpha_cochain(&b, &[x.clone()]).unwrap().value(p).unwrap();
                gencx_core::polynomial::combinations(4, 2)
                    .iter()
                    .map(|bl| from_f64(w.coeff_of(bl).copied().unwrap_or(0.0)).unwrap())
                    .collect()
            })
            .collect();
        let v = LieModule::trivial(&alg, 6);
        let c = Cochain::from_values(&alg, &v, 1, vals).unwrap();
        assert!(coboundary(&alg, &v, &c).is_zero());
    }
    assert!(coboundary_residual(&b, &xs, &pts).unwrap() < 1e-8);
    assert!(coboundary_residual(&hopf_h(), &[xs[0].clone(), xs[1].clone(), xs[0].add(&xs[1])], &pts).unwrap() < 1e-8);
    let a = alpha_cochain(&hopf_h(), &xs).unwrap();
    for p in &pts {
        assert!(a.value(p).unwrap().max_magnitude() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn coboundary_is_linear(seed in 0u64..10_000, case in 0usize..5, n in 0usize..3) {
        let (alg, v) = random_cases(seed % 7).swap_remove(case);
        let mut g = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (Cochain::random(&mut g, &alg, &v, n), Cochain::random(&mut g, &alg, &v, n));
        let s = random_vector(&mut g, 1).remove(0);
        let lhs = coboundary(&alg, &v, &a.add(&b.scale(&s)));
        let rhs = coboundary(&alg, &v, &a).add(&coboundary(&alg, &v, &b).scale(&s));
        prop_assert_eq!(lhs, rhs);
    }
}
