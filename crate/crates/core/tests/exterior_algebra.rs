use gencx_core::calculus::{exterior_d, interior, pullback};
use gencx_core::exterior::{blade_of, operator_matrix, Blade, GvValue, Multivector, MultivectorValue};
use gencx_core::fixtures::*;
use gencx_core::linear::pairing_matrix;
use num_complex::Complex64;
use proptest::prelude::*;

type MV = Multivector<f64>;

fn mv_strategy(dim: usize) -> impl Strategy<Value = MV> {
    prop::collection::vec(-2.0f64..2.0, 1 << dim)
        .prop_map(move |cs| MV::from_terms(dim, cs.into_iter().enumerate().map(|(b, c)| (b as Blade, c))))
}

fn homogeneous_strategy(dim: usize) -> impl Strategy<Value = MV> {
    (mv_strategy(dim), 0..=dim).prop_map(|(w, k)| w.homogeneous(k))
}

fn cmv(w: &MV, im: &MV) -> MultivectorValue {
    w.complexify().add(&im.complexify().mul_scalar(&Complex64::i())).unwrap()
}

fn gv(v: &[f64]) -> GvValue<Complex64> {
    GvValue::from_stacked(&v.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>())
}

proptest! {
    #[test]
    fn wedge_is_associative(a in mv_strategy(4), b in mv_strategy(4), c in mv_strategy(4)) {
        let l = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let r = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert!(l.sub(&r).unwrap().max_magnitude() < 1e-12);
    }

    #[test]
    fn wedge_is_graded_commutative(a in homogeneous_strategy(5), b in homogeneous_strategy(5)) {
        let (p, q) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
        let s = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
        let d = a.wedge(&b).unwrap().sub(&b.wedge(&a).unwrap().scale(s)).unwrap();
        prop_assert!(d.max_magnitude() < 1e-12);
    }

    #[test]
    fn contraction_is_an_antiderivation(
        x in prop::collection::vec(-2.0f64..2.0, 4),
        a in homogeneous_strategy(4),
        b in mv_strategy(4),
    ) {
        let p = a.degree().unwrap_or(0);
        let s = if p % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = a.wedge(&b).unwrap().contract(&x).unwrap();
        let rhs = a.contract(&x).unwrap().wedge(&b).unwrap()
            .add(&a.wedge(&b.contract(&x).unwrap()).unwrap().scale(s)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().max_magnitude() < 1e-11);
        prop_assert!(b.contract(&x).unwrap().contract(&x).unwrap().max_magnitude() < 1e-12);
    }

    #[test]
    fn clifford_relation(
        v in prop::collection::vec(-2.0f64..2.0, 8),
        w in prop::collection::vec(-2.0f64..2.0, 8),
        re in mv_strategy(4),
        im in mv_strategy(4),
    ) {
        let rho = cmv(&re, &im);
        let (v, w) = (gv(&v), gv(&w));
        let vw = rho.clifford(&w).unwrap().clifford(&v).unwrap();
        let wv = rho.clifford(&v).unwrap().clifford(&w).unwrap();
        let want = rho.mul_scalar(&v.pairing(&w).unwrap());
        prop_assert!(vw.add(&wv).unwrap().sub(&want).unwrap().max_magnitude() < 1e-10);
    }

    #[test]
    fn pairing_is_symmetric(v in prop::collection::vec(-2.0f64..2.0, 8), w in prop::collection::vec(-2.0f64..2.0, 8)) {
        let (a, b) = (gv(&v), gv(&w));
        prop_assert!((a.pairing(&b).unwrap() - b.pairing(&a).unwrap()).norm() < 1e-14);
        let p = pairing_matrix(4);
        let direct: f64 = (0..8).map(|i| (0..8).map(|j| v[i] * p[(i, j)] * w[j]).sum::<f64>()).sum();
        prop_assert!((a.pairing(&b).unwrap().re - direct).abs() < 1e-12);
    }
}

/// `(∂₁ + dx¹)` squared through explicit blade-by-blade interior and exterior products.
#[test]
fn clifford_square_by_brute_force() {
    let m = 4;
    let brute = |b: Blade| -> Vec<(Blade, f64)> {
        // ι_{∂₀} then dx⁰∧, each on a single blade
        let iota = |b: Blade| if b & 1 == 1 { vec![(b & !1, 1.0)] } else { vec![] };
        let ext = |b: Blade| if b & 1 == 0 { vec![(b | 1, 1.0)] } else { vec![] };
        let once = |b: Blade| [iota(b), ext(b)].concat();
        once(b).into_iter().flat_map(|(c, s)| once(c).into_iter().map(move |(d, t)| (d, s * t))).collect()
    };
    let v = gv(&[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    let op = operator_matrix(m, |r| r.clifford(&v)?.clifford(&v)).unwrap();
    for b in 0..(1u32 << m) {
        let mut col = vec![0.0; 1 << m];
        for (d, s) in brute(b) {
            col[d as usize] += s;
        }
        for (i, c) in col.iter().enumerate() {
            assert_eq!(op[(i, b as usize)], Complex64::new(*c, 0.0));
        }
        assert_eq!(col[b as usize], 1.0);
    }
}

#[test]
fn unit_and_basic_contractions() {
    let w = MV::from_terms(3, [(blade_of(&[0, 1]), 2.0), (blade_of(&[2]), -1.0)]);
    assert_eq!(MV::scalar(3, 1.0).wedge(&w).unwrap(), w);
    let e01 = MV::term(3, &[0, 1], 1.0);
    assert_eq!(e01.contract(&[1.0, 0.0, 0.0]).unwrap(), MV::term(3, &[1], 1.0));
    assert_eq!(MV::term(3, &[0], 1.0).wedge(&MV::term(3, &[1], 1.0)).unwrap(), MV::term(3, &[1], 1.0).wedge(&MV::term(3, &[0], 1.0)).unwrap().neg());
    let dx = MultivectorValue::term(2, &[0], Complex64::new(1.0, 0.0));
    let one = MultivectorValue::scalar(2, Complex64::new(1.0, 0.0));
    assert_eq!(dx.clifford(&gv(&[1.0, 0.0, 0.0, 0.0])).unwrap(), one);
    assert_eq!(one.clifford(&gv(&[0.0, 0.0, 1.0, 0.0])).unwrap(), dx);
    assert_eq!(pairing_matrix(2), nalgebra::DMatrix::from_row_slice(4, 4, &[
        0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0,
    ]));
}

#[test]
fn b_field_on_level_set_in_angles() {
    // on (λ, φ₁, φ₂): dφ₁ ∧ (−cos²λ dφ₂) at λ = π/4
    let lambda = std::f64::consts::FRAC_PI_4;
    let a = MV::term(3, &[1], 1.0);
    let b = MV::term(3, &[2], -lambda.cos().powi(2));
    let want = MV::term(3, &[1, 2], -0.5);
    assert!(a.wedge(&b).unwrap().sub(&want).unwrap().max_magnitude() < 1e-15);
    // the same coefficient from B = dφ₁∧ξ₁ pulled back to (r, λ, φ₁, φ₂) at r = 1
    let pb = pullback(&hopf_polar_map(), &hopf_b()).unwrap();
    let v = pb.value(&[1.0, lambda, 0.3, 1.1]).unwrap();
    assert!((v.coeff_of(&[2, 3]).copied().unwrap_or(0.0) + 0.5).abs() < 1e-12);
    assert!(v.coeff_of(&[0, 2]).map_or(true, |c| c.abs() < 1e-12));
}

#[test]
fn rotation_contraction_of_twist_is_exact() {
    let lhs = interior(&hopf_x1(), &hopf_h());
    let rhs = exterior_d(&hopf_xi1());
    for p in [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 1.0, 0.0], [0.3, -0.4, 0.8, 0.2]] {
        let d = lhs.value(&p).unwrap().sub(&rhs.value(&p).unwrap()).unwrap();
        assert!(d.max_magnitude() < 1e-12, "{p:?}");
    }
}

#[test]
fn hamiltonian_section_is_isotropic() {
    let s = hopf_spec1().generator(0);
    let v = s.value(&[0.0, 1.0, 1.0, 0.0]).unwrap();
    assert!(v.pairing(&v).unwrap().abs() < 1e-15);
}
