//! Generalized complex structures on a single vector space `V ⊕ V*`.
//!
//! Matrices act on stacked coordinates `(X, ξ)` in the basis
//! `∂_1 .. ∂_m, dx^1 .. dx^m`. A 2-form `B` enters as the matrix of the map
//! `v ↦ ι_v B`, which is minus its Gram matrix `B(e_i, e_j)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::exterior::{blade_of, Multivector};

use super::subspace::{column_space, complexify, IsotropicSubspace};

/// `[[0, I], [I, 0]]`.
pub fn pairing_matrix(m: usize) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        p[(i, m + i)] = 1.0;
        p[(m + i, i)] = 1.0;
    }
    p
}

fn max_abs(a: &DMatrix<f64>) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Pointwise generalized (almost) complex structure.
#[derive(Clone, Debug, PartialEq)]
pub struct GcsValue {
    mat: DMatrix<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GcsResidual {
    /// `max |J² + I|`
    pub square: f64,
    /// `max |JᵀPJ − P|`
    pub orthogonality: f64,
}

impl GcsResidual {
    pub fn max(&self) -> f64 {
        self.square.max(self.orthogonality)
    }
}

impl GcsValue {
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() % 2 != 0 {
            return Err(GeomError::DimensionMismatch {
                expected: mat.nrows(),
                found: mat.ncols(),
            });
        }
        Ok(GcsValue { mat })
    }

    pub fn m(&self) -> usize {
        self.mat.nrows() / 2
    }

    pub fn mat(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn into_mat(self) -> DMatrix<f64> {
        self.mat
    }
}

pub fn check_gcs(j: &GcsValue) -> GcsResidual {
    let n = j.mat.nrows();
    let p = pairing_matrix(j.m());
    GcsResidual {
        square: max_abs(&(&j.mat * &j.mat + DMatrix::identity(n, n))),
        orthogonality: max_abs(&(j.mat.transpose() * &p * &j.mat - p)),
    }
}

fn skewness(b: &DMatrix<f64>) -> f64 {
    max_abs(&(b + b.transpose()))
}

/// `[[0, −ω⁻¹], [ω, 0]]` for `ω` given as the map `V → V*`.
pub fn from_symplectic(omega: &DMatrix<f64>) -> Result<GcsValue> {
    let s = skewness(omega);
    if s > 1e-12 * (1.0 + max_abs(omega)) {
        return Err(GeomError::NotSkew(s));
    }
    let m = omega.nrows();
    let inv = omega
        .clone()
        .try_inverse()
        .ok_or_else(|| GeomError::Singular("symplectic form".into()))?;
    let mut j = DMatrix::zeros(2 * m, 2 * m);
    j.view_mut((0, m), (m, m)).copy_from(&(-inv));
    j.view_mut((m, 0), (m, m)).copy_from(omega);
    GcsValue::new(j)
}

/// `[[−J, 0], [0, Jᵀ]]` for a complex structure `J` on `V`.
pub fn from_complex(jc: &DMatrix<f64>) -> Result<GcsValue> {
    let m = jc.nrows();
    let r = max_abs(&(jc * jc + DMatrix::identity(m, m)));
    if r > 1e-12 * (1.0 + max_abs(jc)) {
        return Err(GeomError::NotComplexStructure(r));
    }
    let mut j = DMatrix::zeros(2 * m, 2 * m);
    j.view_mut((0, 0), (m, m)).copy_from(&(-jc));
    j.view_mut((m, m), (m, m)).copy_from(&jc.transpose());
    GcsValue::new(j)
}

/// `e^B = [[I, 0], [B, I]]`.
pub fn b_exp(b: &DMatrix<f64>) -> DMatrix<f64> {
    let m = b.nrows();
    let mut e = DMatrix::identity(2 * m, 2 * m);
    e.view_mut((m, 0), (m, m)).copy_from(b);
    e
}

/// `e^{−B} J e^{B}`.
pub fn b_transform(j: &GcsValue, b: &DMatrix<f64>) -> Result<GcsValue> {
    let s = skewness(b);
    if s > 1e-12 * (1.0 + max_abs(b)) {
        return Err(GeomError::NotSkew(s));
    }
    if b.nrows() != j.m() {
        return Err(GeomError::DimensionMismatch {
            expected: j.m(),
            found: b.nrows(),
        });
    }
    GcsValue::new(b_exp(&(-b)) * &j.mat * b_exp(b))
}

/// Map matrix `v ↦ ι_v B` of a 2-form.
pub fn two_form_map(b: &Multivector<f64>) -> DMatrix<f64> {
    let m = b.dim();
    DMatrix::from_fn(m, m, |row, col| {
        // (ι_{e_col} B)_row = B(e_col, e_row)
        if row == col {
            return 0.0;
        }
        let (lo, hi, sign) = if col < row { (col, row, 1.0) } else { (row, col, -1.0) };
        sign * b.get(blade_of(&[lo, hi])).copied().unwrap_or(0.0)
    })
}

/// Inverse of [`two_form_map`].
pub fn map_to_two_form(bm: &DMatrix<f64>) -> Multivector<f64> {
    let m = bm.nrows();
    let mut out = Multivector::zero(m);
    for i in 0..m {
        for j in i + 1..m {
            out.accumulate(blade_of(&[i, j]), bm[(j, i)]);
        }
    }
    out
}

/// `+i` eigenspace, spanned by the columns of `I − iJ`.
pub fn i_eigenbundle(j: &GcsValue, tol: f64) -> Result<IsotropicSubspace> {
    let n = j.mat.nrows();
    let a = complexify(&DMatrix::identity(n, n)) - complexify(&j.mat) * Complex64::i();
    let basis = column_space(&a, tol);
    if basis.ncols() != j.m() {
        return Err(GeomError::RankMismatch {
            expected: j.m(),
            found: basis.ncols(),
        });
    }
    IsotropicSubspace::new(basis, tol.max(1e-9))
}
