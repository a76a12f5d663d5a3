//! The Hopf example on `ℂ² \ {0}` and a few flat baselines.
//!
//! Coordinates are `(x₁, y₁, x₂, y₂)`; generalized vectors are ordered
//! `(Tz₁, Tz₂, T*z₁, T*z₂)` with `2×2` blocks and `J = [[0, −1], [1, 0]]`.

use nalgebra::DMatrix;

use crate::calculus::{Chart, ChartMap, ComplexForm, Form, FormJet, ScalarField, VectorField};
use crate::exterior::Multivector;
use crate::hamiltonian::{GcsField, MomentMapSpec};
use crate::jet::Jet;
use crate::jetmat::JetMat;
use crate::linear::{from_complex, from_symplectic, GcsValue};

pub fn jmat() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])
}

/// Standard symplectic form `Σ dx_i∧dy_i` as a matrix on `ℝ^{2n}`.
pub fn std_omega(n: usize) -> DMatrix<f64> {
    let mut w = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        w.view_mut((2 * i, 2 * i), (2, 2)).copy_from(&jmat());
    }
    w
}

/// Standard complex structure `J ⊕ … ⊕ J` on `ℝ^{2n}`.
pub fn std_complex(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j.view_mut((2 * i, 2 * i), (2, 2)).copy_from(&jmat());
    }
    j
}

pub fn symplectic_flat(n: usize) -> GcsValue {
    from_symplectic(&std_omega(n)).expect("standard form is nondegenerate")
}

pub fn complex_flat(n: usize) -> GcsValue {
    from_complex(&std_complex(n)).expect("standard complex structure")
}

fn r2(x: &[Jet]) -> Jet {
    x.iter().fold(x[0].zero_like(), |s, v| &s + &(v * v))
}

fn z1sq(x: &[Jet]) -> Jet {
    &(&x[0] * &x[0]) + &(&x[1] * &x[1])
}

/// `ℂ² \ {0}`.
pub fn hopf_chart() -> Chart {
    Chart::new("C2*", 4, |p| p.iter().map(|v| v * v).sum::<f64>() > 0.0)
}

/// `ℂ² \ {z₁ = 0}`.
pub fn hopf_m1_chart() -> Chart {
    Chart::new("C2 minus z1=0", 4, |p| p[0] * p[0] + p[1] * p[1] > 0.0)
}

/// `c·J` as a jet block.
fn jblock(c: &Jet) -> JetMat {
    JetMat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 1) => c.scale(-1.0),
        (1, 0) => c.clone(),
        _ => c.zero_like(),
    })
}

fn assemble(blocks: [[Option<JetMat>; 4]; 4], template: &Jet) -> JetMat {
    let mut out = JetMat::from_fn(8, 8, |_, _| template.zero_like());
    for (bi, row) in blocks.iter().enumerate() {
        for (bj, blk) in row.iter().enumerate() {
            if let Some(b) = blk {
                for i in 0..2 {
                    for j in 0..2 {
                        out.set(2 * bi + i, 2 * bj + j, b.get(i, j).clone());
                    }
                }
            }
        }
    }
    out
}

pub fn hopf_j1_matrix(x: &[Jet]) -> JetMat {
    let r2 = r2(x);
    let one = r2.constant_like(1.0);
    let minus = one.scale(-1.0);
    assemble(
        [
            [None, None, Some(jblock(&r2)), None],
            [None, Some(jblock(&minus)), None, None],
            [Some(jblock(&r2.recip())), None, None, None],
            [None, None, None, Some(jblock(&minus))],
        ],
        &one,
    )
}

pub fn hopf_j2_matrix(x: &[Jet]) -> JetMat {
    let r2 = r2(x);
    let one = r2.constant_like(1.0);
    assemble(
        [
            [Some(jblock(&one)), None, None, None],
            [None, None, None, Some(jblock(&r2.scale(-1.0)))],
            [None, None, Some(jblock(&one)), None],
            [None, Some(jblock(&r2.recip().scale(-1.0))), None, None],
        ],
        &one,
    )
}

/// `H = (2/r⁴)(y₁dx₁ − x₁dy₁ + y₂dx₂ − x₂dy₂)∧(dx₁∧dy₁ + dx₂∧dy₂)`.
pub fn hopf_h() -> Form {
    Form::new(&hopf_chart(), Some(3), |x| {
        let c = r2(x).powi(-2).scale(2.0);
        let a = Multivector::one_form(vec![x[1].clone(), -&x[0], x[3].clone(), -&x[2]]);
        let one = c.constant_like(1.0);
        let w = Multivector::term(4, &[0, 1], one.clone()).add(&Multivector::term(4, &[2, 3], one)).unwrap();
        a.wedge(&w).unwrap().mul_scalar(&c)
    })
}

pub fn hopf_j1() -> GcsField {
    GcsField::new(&hopf_chart(), hopf_j1_matrix)
        .with_twist(&hopf_h())
        .expect("H is a 3-form on the same chart")
}

pub fn hopf_j2() -> GcsField {
    GcsField::new(&hopf_chart(), hopf_j2_matrix)
        .with_twist(&hopf_h())
        .expect("H is a 3-form on the same chart")
}

/// `f = ln r`.
pub fn ln_r() -> ScalarField {
    ScalarField::new(&hopf_chart(), |x| r2(x).ln().scale(0.5))
}

/// `X₁ = x₁∂_{y₁} − y₁∂_{x₁}`.
pub fn hopf_x1() -> VectorField {
    VectorField::new(&hopf_chart(), |x| {
        vec![-&x[1], x[0].clone(), x[0].zero_like(), x[0].zero_like()]
    })
}

/// `ξ₁ = r⁻²(y₂dx₂ − x₂dy₂)`.
pub fn hopf_xi1() -> Form {
    Form::one_form(&hopf_chart(), |x| {
        let s = r2(x).recip();
        vec![x[0].zero_like(), x[0].zero_like(), &x[3] * &s, -&(&x[2] * &s)]
    })
}

/// `X₂ = −x₂∂_{y₂} + y₂∂_{x₂}`.
pub fn hopf_x2() -> VectorField {
    VectorField::new(&hopf_chart(), |x| {
        vec![x[0].zero_like(), x[0].zero_like(), x[3].clone(), -&x[2]]
    })
}

/// `ξ₂ = −r⁻²(y₁dx₁ − x₁dy₁)`.
pub fn hopf_xi2() -> Form {
    Form::one_form(&hopf_chart(), |x| {
        let s = r2(x).recip();
        vec![-&(&x[1] * &s), &x[0] * &s, x[0].zero_like(), x[0].zero_like()]
    })
}

/// The `X₁` action with moment map `ln r`, generators as printed.
pub fn hopf_spec1() -> MomentMapSpec {
    MomentMapSpec::new(vec![ln_r()], vec![hopf_x1()], vec![hopf_xi1()]).expect("rank one")
}

/// The `X₂` action with moment map `ln r`, generators as printed.
pub fn hopf_spec2() -> MomentMapSpec {
    MomentMapSpec::new(vec![ln_r()], vec![hopf_x2()], vec![hopf_xi2()]).expect("rank one")
}

/// `dφ₁ = (x₁dy₁ − y₁dx₁)/|z₁|²`.
pub fn dphi1() -> Form {
    Form::one_form(&hopf_chart(), |x| {
        let s = z1sq(x).recip();
        vec![-&(&x[1] * &s), &x[0] * &s, x[0].zero_like(), x[0].zero_like()]
    })
}

/// `dφ₂ = (x₂dy₂ − y₂dx₂)/|z₂|²`.
pub fn dphi2() -> Form {
    Form::one_form(&hopf_chart(), |x| {
        let s = (&(&x[2] * &x[2]) + &(&x[3] * &x[3])).recip();
        vec![x[0].zero_like(), x[0].zero_like(), -&(&x[3] * &s), &x[2] * &s]
    })
}

/// `B = dφ₁∧ξ₁`, defined where `z₁ ≠ 0`.
pub fn hopf_b() -> Form {
    crate::calculus::wedge(&dphi1(), &hopf_xi1())
}

/// `b = (r²|z₁|²)⁻¹ (−y₁, x₁)ᵀ(−y₂, x₂)`.
pub fn hopf_b_block(x: &[Jet]) -> JetMat {
    let c = (&r2(x) * &z1sq(x)).recip();
    let u = [-&x[1], x[0].clone()];
    let v = [-&x[3], x[2].clone()];
    JetMat::from_fn(2, 2, |i, j| &(&u[i] * &v[j]) * &c)
}

fn jm(template: &Jet) -> JetMat {
    JetMat::constant(&jmat(), template)
}

/// `𝕁₁′` exactly as printed.
pub fn printed_j1_prime(x: &[Jet]) -> JetMat {
    let r2 = r2(x);
    let one = r2.constant_like(1.0);
    let j = jm(&one);
    let b = hopf_b_block(x);
    let bt = b.transpose();
    assemble(
        [
            [None, Some(j.mul(&b).scale_jet(&r2)), Some(jblock(&r2)), None],
            [None, Some(j.scale(-1.0)), None, None],
            [Some(jblock(&r2.recip())), Some(b.mul(&j)), None, None],
            [Some(j.mul(&bt)), None, Some(bt.mul(&j).scale_jet(&r2)), Some(j.scale(-1.0))],
        ],
        &one,
    )
}

/// `𝕁₂′` exactly as printed, including its `(T*z₁, Tz₂)` block `0`.
pub fn printed_j2_prime(x: &[Jet]) -> JetMat {
    printed_j2_prime_with(x, false)
}

/// `𝕁₂′` with the `(T*z₁, Tz₂)` block set to `Jb`, the value of `e^{−B}𝕁₂e^{B}`.
pub fn corrected_j2_prime(x: &[Jet]) -> JetMat {
    printed_j2_prime_with(x, true)
}

fn printed_j2_prime_with(x: &[Jet], fix: bool) -> JetMat {
    let r2 = r2(x);
    let one = r2.constant_like(1.0);
    let j = jm(&one);
    let b = hopf_b_block(x);
    let bt = b.transpose();
    assemble(
        [
            [Some(j.clone()), None, None, None],
            [Some(j.mul(&bt).scale_jet(&r2)), None, None, Some(jblock(&r2.scale(-1.0)))],
            [None, if fix { Some(j.mul(&b)) } else { None }, Some(j.clone()), Some(b.mul(&j).scale_jet(&r2))],
            [Some(bt.mul(&j)), Some(jblock(&r2.recip().scale(-1.0))), None, None],
        ],
        &one,
    )
}

/// `ρ = e^{i r⁻² dx₁∧dy₁} ∧ dz₂`.
pub fn hopf_spinor() -> ComplexForm {
    let c = hopf_chart();
    let re = Form::new(&c, Some(1), |x| {
        let w = r2(x).recip();
        let mut out: FormJet = Multivector::term(4, &[2], w.constant_like(1.0));
        out.accumulate(crate::exterior::blade_of(&[0, 1, 3]), w.scale(-1.0));
        out
    });
    let im = Form::new(&c, Some(1), |x| {
        let w = r2(x).recip();
        let mut out: FormJet = Multivector::term(4, &[3], w.constant_like(1.0));
        out.accumulate(crate::exterior::blade_of(&[0, 1, 2]), w);
        out
    });
    ComplexForm::new(re, im)
}

/// `(r, λ, φ₁, φ₂) ↦ (r e^{iφ₁} sin λ, r e^{iφ₂} cos λ)`.
pub fn hopf_polar_map() -> ChartMap {
    let src = Chart::new("r lambda phi1 phi2", 4, |p| p[0] > 0.0);
    ChartMap::new(&src, &hopf_chart(), |y| {
        let (s, c) = (y[1].sin(), y[1].cos());
        vec![
            &(&y[0] * &s) * &y[2].cos(),
            &(&y[0] * &s) * &y[2].sin(),
            &(&y[0] * &c) * &y[3].cos(),
            &(&y[0] * &c) * &y[3].sin(),
        ]
    })
}

/// `−sin(2λ) dλ∧dφ₁∧dφ₂` on the polar chart.
pub fn hopf_h_polar() -> Form {
    let src = hopf_polar_map().source().clone();
    Form::new(&src, Some(3), |y| {
        FormJet::term(4, &[1, 2, 3], y[1].scale(2.0).sin().scale(-1.0))
    })
}
