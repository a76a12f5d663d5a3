//! Dense matrices of jets: pointwise linear algebra that keeps derivatives.

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::jet::Jet;

#[derive(Clone, Debug)]
pub struct JetMat {
    rows: usize,
    cols: usize,
    data: Vec<Jet>,
}

impl JetMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Jet>) -> Self {
        assert_eq!(data.len(), rows * cols, "JetMat shape");
        JetMat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Jet) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        JetMat { rows, cols, data }
    }

    /// Constant matrix with jets shaped like `template`.
    pub fn constant(m: &DMatrix<f64>, template: &Jet) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| template.constant_like(m[(i, j)]))
    }

    pub fn identity(n: usize, template: &Jet) -> Self {
        Self::constant(&DMatrix::identity(n, n), template)
    }

    /// Column matrix.
    pub fn column(v: Vec<Jet>) -> Self {
        let n = v.len();
        JetMat::new(n, 1, v)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Jet {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Jet) {
        self.data[i * self.cols + j] = v;
    }

    pub fn order(&self) -> usize {
        self.data.iter().map(Jet::order).min().unwrap_or(0)
    }

    pub fn value(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).value())
    }

    pub fn col(&self, j: usize) -> Vec<Jet> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &JetMat) -> Self {
        assert_eq!(self.cols, o.rows, "JetMat product shape");
        Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = self.get(i, 0) * o.get(0, j);
            for l in 1..self.cols {
                acc = &acc + &(self.get(i, l) * o.get(l, j));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Jet]) -> Vec<Jet> {
        self.mul(&JetMat::column(v.to_vec())).data
    }

    pub fn add(&self, o: &JetMat) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + o.get(i, j))
    }

    pub fn sub(&self, o: &JetMat) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - o.get(i, j))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).scale(s))
    }

    /// Every entry multiplied by the jet `c`.
    pub fn scale_jet(&self, c: &Jet) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn hcat(parts: &[&JetMat]) -> Self {
        let rows = parts[0].rows;
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        Self::from_fn(rows, cols, |i, mut j| {
            for p in parts {
                if j < p.cols {
                    return p.get(i, j).clone();
                }
                j -= p.cols;
            }
            unreachable!()
        })
    }

    pub fn from_columns(cols: &[Vec<Jet>]) -> Self {
        let rows = cols[0].len();
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Substitute jets for the variables of every entry.
    pub fn compose(&self, inner: &[Jet]) -> Self {
        JetMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|j| j.compose(inner)).collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        JetMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|j| j.truncate(order)).collect(),
        }
    }

    /// Inverse by the terminating series `Σ (−M₀⁻¹N)^n M₀⁻¹`, `M = M₀ + N`.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(GeomError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let m0 = self.value();
        let svd = m0.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if !(smin > 1e-13 * smax.max(1e-300)) {
            return Err(GeomError::Singular(format!(
                "jet matrix with singular values in [{smin:.3e}, {smax:.3e}]"
            )));
        }
        let inv0 = m0
            .try_inverse()
            .ok_or_else(|| GeomError::Singular("jet matrix".into()))?;
        let template = self.data[0].truncate(self.order());
        let c = JetMat::constant(&inv0, &template);
        let n = self.truncate(self.order()).sub(&JetMat::constant(&self.value(), &template));
        let cn = c.mul(&n);
        let mut x = c.clone();
        for _ in 0..self.order() {
            x = c.sub(&cn.mul(&x));
        }
        Ok(x)
    }

    /// Least-squares solution of `A X = B` through the normal equations.
    pub fn solve_lstsq(a: &JetMat, b: &JetMat) -> Result<Self> {
        let at = a.transpose();
        Ok(at.mul(a).inverse()?.mul(&at.mul(b)))
    }

    /// Left pseudo-inverse `(MᵀM)⁻¹Mᵀ` of a full-column-rank matrix.
    pub fn pinv(&self) -> Result<Self> {
        let t = self.transpose();
        Ok(t.mul(self).inverse()?.mul(&t))
    }

    pub fn max_abs_value(&self) -> f64 {
        self.data.iter().fold(0.0, |m, j| m.max(j.value().abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_carries_derivatives() {
        // M(t) = [[1+t, t^2],[0, 2+t]] at t = 0.3; d/dt M^{-1} = -M^{-1} M' M^{-1}
        let t = Jet::variable(0, 0.3, 1, 2);
        let one = t.constant_like(1.0);
        let m = JetMat::new(
            2,
            2,
            vec![&one + &t, &t * &t, t.zero_like(), &(&one + &one) + &t],
        );
        let inv = m.inverse().unwrap();
        let m0 = m.value();
        let dm = DMatrix::from_row_slice(2, 2, &[1.0, 0.6, 0.0, 1.0]);
        let i0 = m0.clone().try_inverse().unwrap();
        let expect = -&i0 * dm * &i0;
        for i in 0..2 {
            for j in 0..2 {
                assert!((inv.get(i, j).value() - i0[(i, j)]).abs() < 1e-14);
                assert!((inv.get(i, j).gradient()[0] - expect[(i, j)]).abs() < 1e-13);
            }
        }
        let prod = m.mul(&inv);
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((prod.get(i, j).value() - want).abs() < 1e-14);
                assert!(prod.get(i, j).partial(&[2]).abs() < 1e-12);
            }
        }
    }
}
