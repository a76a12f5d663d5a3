//! Subspaces of `V ⊕ V*` and their pure spinor lines.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::exterior::{operator_matrix, GvValue, MultivectorValue};

use super::gcs::pairing_matrix;

pub const RANK_TOL: f64 = 1e-9;

/// Singular values of `a`, largest first.
fn singular_values<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    s
}

/// Numerical rank with a relative tolerance.
pub fn rank<T: ComplexField<RealField = f64>>(a: &DMatrix<T>, tol: f64) -> usize {
    let s = singular_values(a);
    let top = s.first().copied().unwrap_or(0.0);
    s.iter().filter(|&&x| x > tol * top.max(1.0)).count()
}

/// Orthonormal basis of `ker a` (columns).
pub fn null_space<T: ComplexField<RealField = f64>>(a: &DMatrix<T>, tol: f64) -> DMatrix<T> {
    let n = a.ncols();
    if a.nrows() == 0 {
        return DMatrix::identity(n, n);
    }
    // pad to at least square so the SVD returns a full V
    let rows = a.nrows().max(n);
    let mut padded = DMatrix::<T>::zeros(rows, n);
    padded.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let top = svd.singular_values.max();
    let cols: Vec<_> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= tol * top.max(1.0))
        .map(|i| vt.row(i).adjoint())
        .collect();
    if cols.is_empty() {
        return DMatrix::zeros(n, 0);
    }
    DMatrix::from_columns(&cols)
}

/// Orthonormal basis of the column space.
pub fn column_space<T: ComplexField<RealField = f64>>(a: &DMatrix<T>, tol: f64) -> DMatrix<T> {
    if a.ncols() == 0 {
        return DMatrix::zeros(a.nrows(), 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("u requested");
    let top = svd.singular_values.max();
    let cols: Vec<_> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > tol * top.max(1.0))
        .map(|i| u.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        return DMatrix::zeros(a.nrows(), 0);
    }
    DMatrix::from_columns(&cols)
}

/// Do the column spans of `a` and `b` coincide?
pub fn same_span<T: ComplexField<RealField = f64>>(a: &DMatrix<T>, b: &DMatrix<T>, tol: f64) -> bool {
    let ra = rank(a, tol);
    let rb = rank(b, tol);
    let both = DMatrix::from_columns(
        &a.column_iter()
            .chain(b.column_iter())
            .map(|c| c.into_owned())
            .collect::<Vec<_>>(),
    );
    ra == rb && rank(&both, tol) == ra
}

pub fn complexify(a: &DMatrix<f64>) -> DMatrix<Complex64> {
    a.map(|x| Complex64::new(x, 0.0))
}

/// Complex isotropic subspace of `(V ⊕ V*)_C`, stored as spanning columns.
#[derive(Clone, Debug)]
pub struct IsotropicSubspace {
    basis: DMatrix<Complex64>,
}

impl IsotropicSubspace {
    /// Checks isotropy and full column rank.
    pub fn new(basis: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        let k = basis.ncols();
        let r = rank(&basis, tol);
        if r != k {
            return Err(GeomError::RankMismatch { expected: k, found: r });
        }
        let s = Self { basis };
        let iso = s.isotropy_residual();
        if iso > tol {
            return Err(GeomError::AssumptionViolated {
                which: 0,
                magnitude: iso,
                witness: Vec::new(),
            });
        }
        Ok(s)
    }

    pub fn from_real(basis: &DMatrix<f64>, tol: f64) -> Result<Self> {
        Self::new(complexify(basis), tol)
    }

    pub fn basis(&self) -> &DMatrix<Complex64> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows() / 2
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    /// Largest `|⟨c_i, c_j⟩|` (complex bilinear pairing).
    pub fn isotropy_residual(&self) -> f64 {
        let p = complexify(&pairing_matrix(self.dim()));
        let g = self.basis.transpose() * p * &self.basis;
        g.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Dimension of `L ∩ L̄`.
    pub fn real_index(&self, tol: f64) -> usize {
        let conj = self.basis.map(|z| z.conj());
        let both = DMatrix::from_columns(
            &self
                .basis
                .column_iter()
                .chain(conj.column_iter())
                .map(|c| c.into_owned())
                .collect::<Vec<_>>(),
        );
        2 * self.rank() - rank(&both, tol)
    }

    pub fn column(&self, j: usize) -> GvValue<Complex64> {
        let v: Vec<Complex64> = self.basis.column(j).iter().copied().collect();
        GvValue::from_stacked(&v)
    }
}

/// One-dimensional line of forms annihilated by a maximal isotropic subspace.
#[derive(Clone, Debug)]
pub struct PureSpinorLine {
    generator: MultivectorValue,
}

impl PureSpinorLine {
    pub fn generator(&self) -> &MultivectorValue {
        &self.generator
    }

    /// Is `rho` a multiple of the generator? Returns the residual of the best fit.
    pub fn residual(&self, rho: &MultivectorValue) -> Result<f64> {
        let n = 1usize << self.generator.dim();
        let g = to_vector(&self.generator, n);
        let r = to_vector(rho, n);
        let c = g.dotc(&r) / g.dotc(&g);
        Ok((r - g * c).iter().fold(0.0, |m, z| m.max(z.norm())))
    }
}

fn to_vector(w: &MultivectorValue, n: usize) -> nalgebra::DVector<Complex64> {
    let mut v = nalgebra::DVector::zeros(n);
    for (b, c) in w.terms() {
        v[b as usize] = *c;
    }
    v
}

/// Joint kernel of the Clifford actions of the columns of `L`.
pub fn pure_spinor_line(l: &IsotropicSubspace, tol: f64) -> Result<PureSpinorLine> {
    let m = l.dim();
    let n = 1usize << m;
    let mut stacked = DMatrix::<Complex64>::zeros(n * l.rank(), n);
    for j in 0..l.rank() {
        let v = l.column(j);
        let op = operator_matrix(m, |rho| rho.clifford(&v))?;
        stacked.view_mut((j * n, 0), (n, n)).copy_from(&op);
    }
    let ker = null_space(&stacked, tol);
    if ker.ncols() != 1 {
        return Err(GeomError::KernelDimension(ker.ncols()));
    }
    let col = ker.column(0);
    let (imax, _) = col
        .iter()
        .enumerate()
        .fold((0, 0.0), |(bi, bm), (i, z)| if z.norm() > bm { (i, z.norm()) } else { (bi, bm) });
    let scale = col[imax];
    let generator = MultivectorValue::from_terms(
        m,
        col.iter()
            .enumerate()
            .map(|(i, z)| (i as u32, z / scale))
            .filter(|(_, z)| z.norm() > 1e-13),
    );
    Ok(PureSpinorLine { generator })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_wide_matrix() {
        let a = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let k = null_space(&a, 1e-12);
        assert_eq!(k.ncols(), 2);
        assert!((&a * &k).norm() < 1e-14);
    }

    #[test]
    fn spans() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let b = DMatrix::from_row_slice(3, 2, &[1.0, 1.0, 1.0, -1.0, 0.0, 0.0]);
        assert!(same_span(&a, &b, 1e-12));
        let c = DMatrix::from_row_slice(3, 1, &[0.0, 0.0, 1.0]);
        assert!(!same_span(&a, &c, 1e-12));
    }
}
