//! Linear reduction of a generalized complex structure by an isotropic
//! subspace `K ⊂ V*`.
//!
//! With `S = K ⊕ 𝕁K`, the quotient `Ann(S)/S` inherits the pairing and `𝕁`.
//! Quotient representatives are built from `W = Ann_V(K) ∩ N^⊥` (Euclidean
//! complement inside `Ann_V(K)` of `N`, the vector part of `𝕁K`) via
//! `w ↦ w − Σ g_j(w) v_j*` and `w* ↦ w*`, where `𝕁u_l = v_l + g_l` and
//! `{v_j*}` is the Euclidean dual basis of `N`. In this basis the reduced
//! pairing is the standard one.

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};

use super::gcs::{pairing_matrix, GcsValue};
use super::subspace::{null_space, rank};

#[derive(Clone, Debug)]
pub struct LinearReductionResult {
    /// `dim W`; the reduced space is `W ⊕ W*`.
    pub quotient_dim: usize,
    /// `2m × 2n` matrix of representatives.
    pub inclusion: DMatrix<f64>,
    /// `2n × 2m` map sending `Ann(S)` to quotient coordinates, killing `S`.
    pub projection: DMatrix<f64>,
    /// Reduced pairing in quotient coordinates.
    pub pairing: DMatrix<f64>,
    pub reduced: GcsValue,
    /// `Σ g_j ∧ v_j*` as a map matrix, present when `g_l(v_j) = 0`.
    pub splitting: Option<DMatrix<f64>>,
    /// Isotropy violation, smallest singular value of the vector part of
    /// `𝕁K` (a margin: larger is better), and horizontality violation `|g_l(v_j)|`.
    pub assumption_residuals: [f64; 3],
    /// Orthonormal basis of `Ann(S)`.
    pub annihilator: DMatrix<f64>,
    /// Residual of `𝕁 Ψ = Ψ J_K + S c`.
    pub solve_residual: f64,
    /// `W` as columns.
    pub w: DMatrix<f64>,
}

fn max_abs(a: &DMatrix<f64>) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn hcat(parts: &[&DMatrix<f64>]) -> DMatrix<f64> {
    let rows = parts[0].nrows();
    let cols: Vec<_> = parts
        .iter()
        .flat_map(|p| p.column_iter().map(|c| c.into_owned()))
        .collect();
    if cols.is_empty() {
        return DMatrix::zeros(rows, 0);
    }
    DMatrix::from_columns(&cols)
}

/// Orthonormal basis of the Euclidean complement of `span(a)` in `R^m`,
/// obtained by Gram–Schmidt on projected standard basis vectors so that
/// coordinate-aligned inputs give coordinate-aligned outputs.
fn complement(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let m = a.nrows();
    let mut basis: Vec<nalgebra::DVector<f64>> = Vec::new();
    let q = super::subspace::column_space(a, tol);
    for i in 0..m {
        let mut v = nalgebra::DVector::zeros(m);
        v[i] = 1.0;
        for c in q.column_iter() {
            let d = c.dot(&v);
            v -= c * d;
        }
        for b in &basis {
            let d = b.dot(&v);
            v -= b * d;
        }
        let n = v.norm();
        if n > 1e-6 {
            basis.push(v / n);
        }
    }
    if basis.is_empty() {
        return DMatrix::zeros(m, 0);
    }
    DMatrix::from_columns(&basis)
}

/// Reduce `J` by `K` (columns of a `2m × k` matrix lying in `V*`).
pub fn linear_reduce(j: &GcsValue, k: &DMatrix<f64>, tol: f64) -> Result<LinearReductionResult> {
    let m = j.m();
    let jm = j.mat();
    if k.nrows() != 2 * m {
        return Err(GeomError::DimensionMismatch {
            expected: 2 * m,
            found: k.nrows(),
        });
    }
    let kk = k.ncols();
    let leak = max_abs(&k.rows(0, m).into_owned());
    if leak > tol {
        return Err(GeomError::KNotInCovectors(leak));
    }
    let rk = rank(k, tol);
    if rk != kk {
        return Err(GeomError::RankMismatch { expected: kk, found: rk });
    }
    let p = pairing_matrix(m);
    let jk = jm * k;
    let s = hcat(&[k, &jk]);

    let gram = s.transpose() * &p * &s;
    let a1 = max_abs(&gram);
    if a1 > tol {
        let (idx, _) = gram
            .iter()
            .enumerate()
            .fold((0, 0.0), |(bi, bm), (i, x)| if x.abs() > bm { (i, x.abs()) } else { (bi, bm) });
        let col = idx / gram.nrows();
        return Err(GeomError::AssumptionViolated {
            which: 1,
            magnitude: a1,
            witness: s.column(col).iter().copied().collect(),
        });
    }

    let u = k.rows(m, m).into_owned();
    let v = jk.rows(0, m).into_owned();
    let g = jk.rows(m, m).into_owned();
    let a2 = if kk == 0 {
        0.0
    } else {
        v.clone().svd(false, false).singular_values.min()
    };
    if kk > 0 && a2 <= tol {
        let ker = null_space(&v, tol);
        let c = ker.column(0).into_owned();
        return Err(GeomError::AssumptionViolated {
            which: 2,
            magnitude: a2,
            witness: (&jk * c).iter().copied().collect(),
        });
    }

    let w = complement(&hcat(&[&u, &v]), tol);
    let n = w.ncols();
    if n + 2 * kk != m {
        return Err(GeomError::RankMismatch {
            expected: m - 2 * kk,
            found: n,
        });
    }
    // v_j* with v_j*(v_l) = δ_jl, lying in span(N)
    let vstar = if kk == 0 {
        DMatrix::zeros(m, 0)
    } else {
        let gi = (v.transpose() * &v)
            .try_inverse()
            .ok_or_else(|| GeomError::Singular("Gram matrix of N".into()))?;
        &v * gi
    };

    let mut psi = DMatrix::zeros(2 * m, 2 * n);
    for a in 0..n {
        let wa = w.column(a);
        psi.view_mut((0, a), (m, 1)).copy_from(&wa);
        let mut cov = nalgebra::DVector::zeros(m);
        for jj in 0..kk {
            cov -= vstar.column(jj) * g.column(jj).dot(&wa);
        }
        psi.view_mut((m, a), (m, 1)).copy_from(&cov);
        psi.view_mut((m, n + a), (m, 1)).copy_from(&wa);
    }

    let a = hcat(&[&psi, &s]);
    let pinv = (a.transpose() * &a)
        .try_inverse()
        .ok_or_else(|| GeomError::Singular("quotient basis".into()))?
        * a.transpose();
    let rhs = jm * &psi;
    let coef = &pinv * &rhs;
    let solve_residual = max_abs(&(&a * &coef - &rhs));
    let reduced = GcsValue::new(coef.rows(0, 2 * n).into_owned())?;
    let projection = pinv.rows(0, 2 * n).into_owned();
    let pairing = psi.transpose() * &p * &psi;

    let a3 = max_abs(&(g.transpose() * &v));
    let splitting = (a3 <= tol).then(|| {
        let mut bm = DMatrix::zeros(m, m);
        for jj in 0..kk {
            bm += vstar.column(jj) * g.column(jj).transpose() - g.column(jj) * vstar.column(jj).transpose();
        }
        bm
    });

    let annihilator = null_space(&(s.transpose() * &p), tol);
    Ok(LinearReductionResult {
        quotient_dim: n,
        inclusion: psi,
        projection,
        pairing,
        reduced,
        splitting,
        assumption_residuals: [a1, a2, a3],
        annihilator,
        solve_residual,
        w,
    })
}
