use gencx_core::calculus::{Chart, Form, FormJet, GvField, ScalarField};
use gencx_core::courant::{gv_residual, AxiomReport, TwistedCourant};
use gencx_core::fixtures::*;
use gencx_core::jet::Jet;
use gencx_core::polynomial::{random_scalar, random_section};
use gencx_core::sampling::{rng, shell_points, shell_points_off_axis};

/// Coordinate formula for the untwisted bracket, from first-order jets.
fn textbook_bracket(a: &GvField, b: &GvField, p: &[f64]) -> Vec<f64> {
    let m = p.len();
    let (ja, jb) = (a.jet(p, 1).unwrap(), b.jet(p, 1).unwrap());
    let d = |j: &Jet, i: usize| j.gradient()[i];
    let mut out = vec![0.0; 2 * m];
    for k in 0..m {
        for i in 0..m {
            out[k] += ja.vec[i].value() * d(&jb.vec[k], i) - jb.vec[i].value() * d(&ja.vec[k], i);
        }
    }
    for j in 0..m {
        let mut s = 0.0;
        for i in 0..m {
            let (x, y) = (&ja.vec[i], &jb.vec[i]);
            let (xi, eta) = (&ja.cov[i], &jb.cov[i]);
            s += x.value() * d(&jb.cov[j], i) + eta.value() * d(x, j);
            s -= y.value() * d(&ja.cov[j], i) + xi.value() * d(y, j);
            let pair = eta.value() * d(x, j) + x.value() * d(eta, j) - xi.value() * d(y, j) - y.value() * d(xi, j);
            s -= 0.5 * pair;
        }
        out[m + j] = s;
    }
    out
}

#[test]
fn untwisted_bracket_matches_coordinate_formula() {
    let c = Chart::euclidean(4);
    let mut g = rng(70);
    let ctx = TwistedCourant::untwisted(&c);
    for _ in 0..5 {
        let (a, b) = (random_section(&mut g, &c, 1.0), random_section(&mut g, &c, 1.0));
        let ab = ctx.bracket(&a, &b).unwrap();
        for p in shell_points(&mut g, 4, 4, 0.1, 2.0) {
            let got = ab.value(&p).unwrap().stacked();
            let want = textbook_bracket(&a, &b, &p);
            for (x, y) in got.iter().zip(&want) {
                assert!((x - y).abs() < 1e-9, "{x} {y}");
            }
        }
    }
}

#[test]
fn coordinate_sections_bracket_to_zero() {
    let c = Chart::euclidean(4);
    let ctx = TwistedCourant::untwisted(&c);
    let e = |i| GvField::from_vector(&gencx_core::calculus::VectorField::coordinate(&c, i));
    let z = ctx.bracket(&e(0), &e(1)).unwrap();
    assert_eq!(z.value(&[0.1, 0.2, 0.3, 0.4]).unwrap().stacked(), vec![0.0; 8]);
}

#[test]
fn d_operator_pairs_to_half_derivative() {
    let c = Chart::euclidean(4);
    let mut g = rng(71);
    let ctx = TwistedCourant::untwisted(&c);
    let f = random_scalar(&mut g, &c, 1.0);
    let a = random_section(&mut g, &c, 1.0);
    let lhs = ctx.d_operator(&f).pairing(&a);
    let rhs = gencx_core::calculus::directional(&a.vector(), &f).scale(0.5);
    let p = [0.2, -0.1, 0.5, 0.3];
    assert!((lhs.value(&p).unwrap() - rhs.value(&p).unwrap()).abs() < 1e-14);
    let k = ctx.d_operator(&ScalarField::constant(&c, 2.5));
    assert_eq!(k.value(&p).unwrap().stacked(), vec![0.0; 8]);
}

#[test]
fn hamiltonian_field_brackets_trivially_with_moment() {
    let ctx = TwistedCourant::new(&hopf_h()).unwrap();
    let x = hopf_spec1().generator(0);
    let dmu = GvField::from_covector(&gencx_core::calculus::d_scalar(&ln_r()));
    let br = ctx.bracket(&x, &dmu).unwrap();
    for p in shell_points_off_axis(&mut rng(72), 20, 0.3, 3.0, 0.1) {
        let v = br.value(&p).unwrap().stacked();
        assert!(v.iter().all(|c| c.abs() < 1e-12), "{v:?}");
    }
}

#[test]
fn hopf_axiom_suite() {
    let c = hopf_chart();
    let ctx = TwistedCourant::new(&hopf_h()).unwrap();
    let mut g = rng(73);
    let pts = shell_points(&mut g, 100, 4, 0.5, 2.0);
    assert!(ctx.closure_residual(&pts).unwrap() < 1e-10);
    let mut worst = AxiomReport::default();
    for _ in 0..20 {
        let (a, b, s) = (
            random_section(&mut g, &c, 1.0),
            random_section(&mut g, &c, 1.0),
            random_section(&mut g, &c, 1.0),
        );
        let (f, h) = (random_scalar(&mut g, &c, 1.0), random_scalar(&mut g, &c, 1.0));
        let r = ctx.axiom_residuals(&a, &b, &s, &f, &h, &pts).unwrap();
        worst.per_point.extend(r.per_point);
    }
    for (name, v) in AxiomReport::NAMES.iter().zip(worst.max()) {
        assert!(v < 1e-6, "{name}: {v}");
    }
}

#[test]
fn open_twist_is_flagged_by_jacobiator() {
    let c = hopf_chart();
    let h = Form::new(&c, Some(3), |x| FormJet::term(4, &[0, 1, 2], &x[3] * &x[3]));
    let ctx = TwistedCourant::new(&h).unwrap();
    let mut g = rng(74);
    let pts = shell_points(&mut g, 3, 4, 0.5, 2.0);
    let (a, b, s) = (
        random_section(&mut g, &c, 1.0),
        random_section(&mut g, &c, 1.0),
        random_section(&mut g, &c, 1.0),
    );
    let f = random_scalar(&mut g, &c, 1.0);
    let r = ctx.axiom_residuals(&a, &b, &s, &f, &f, &pts).unwrap().max();
    assert!(r[1] > 1e-3, "{r:?}");
    assert!(r[0] < 1e-12 && r[2] < 1e-10 && r[4] < 1e-10, "{r:?}");
}

#[test]
fn bracket_antisymmetry_under_twist() {
    let c = hopf_chart();
    let ctx = TwistedCourant::new(&hopf_h()).unwrap();
    let mut g = rng(75);
    let (a, b) = (random_section(&mut g, &c, 1.0), random_section(&mut g, &c, 1.0));
    let ab = ctx.bracket(&a, &b).unwrap();
    let ba = ctx.bracket(&b, &a).unwrap().scale(-1.0);
    for p in shell_points(&mut g, 10, 4, 0.3, 3.0) {
        assert!(gv_residual(&ab, &ba, &p).unwrap() < 1e-12);
    }
}
