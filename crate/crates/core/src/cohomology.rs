//! Chevalley–Eilenberg cochains of a finite-dimensional Lie algebra with
//! values in a module, over `ℚ`.
//!
//! `(∂ω)(Y₀,…,Y_n) = Σ_i (−1)^i Y_i∘ω(…Ŷ_i…) + Σ_{i<j} (−1)^{i+j} ω([Y_i,Y_j], …Ŷ_i…Ŷ_j…)`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{GeomError, Result};
use crate::polynomial::combinations;
use crate::rational::{frac, q, QMatrix, Q};

/// Structure constants `c[i][j][k] = c^k_{ij}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FinLieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Q>>>,
}

fn zero_vec(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

fn add_into(acc: &mut [Q], v: &[Q], s: &Q) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += s * b;
    }
}

fn sign(n: usize) -> Q {
    if n % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

impl FinLieAlgebra {
    /// Validates antisymmetry and the Jacobi identity exactly.
    pub fn new(dim: usize, c: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let shape_ok = c.len() == dim && c.iter().all(|r| r.len() == dim && r.iter().all(|v| v.len() == dim));
        if !shape_ok {
            return Err(GeomError::InvalidParameter("structure constants have the wrong shape".into()));
        }
        let g = FinLieAlgebra { dim, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if g.c[i][j][k] != -g.c[j][i][k].clone() {
                        return Err(GeomError::InvalidParameter("structure constants are not antisymmetric".into()));
                    }
                }
            }
        }
        if g.jacobi_defect() != 0.0 {
            return Err(GeomError::InvalidParameter("structure constants fail the Jacobi identity".into()));
        }
        Ok(g)
    }

    /// From brackets of basis elements, `[e_i, e_j] = Σ_k v_k e_k` for `i < j`.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<i64>)]) -> Result<Self> {
        let mut c = vec![vec![zero_vec(dim); dim]; dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(GeomError::InvalidParameter("bracket out of range".into()));
            }
            for k in 0..dim {
                c[*i][*j][k] = q(v[k]);
                c[*j][*i][k] = q(-v[k]);
            }
        }
        Self::new(dim, c)
    }

    pub fn abelian(dim: usize) -> Self {
        FinLieAlgebra {
            dim,
            c: vec![vec![zero_vec(dim); dim]; dim],
        }
    }

    /// `so(3)` with `[e_i, e_j] = ε_{ijk} e_k`.
    pub fn so3() -> Self {
        Self::from_brackets(3, &[(0, 1, vec![0, 0, 1]), (1, 2, vec![1, 0, 0]), (0, 2, vec![0, -1, 0])])
            .expect("so(3)")
    }

    /// `gl(2)` in the basis `E₁₁, E₁₂, E₂₁, E₂₂`.
    pub fn gl2() -> Self {
        Self::from_brackets(
            4,
            &[
                (0, 1, vec![0, 1, 0, 0]),
                (0, 2, vec![0, 0, -1, 0]),
                (1, 2, vec![1, 0, 0, -1]),
                (1, 3, vec![0, 1, 0, 0]),
                (2, 3, vec![0, 0, -1, 0]),
            ],
        )
        .expect("gl(2)")
    }

    /// Heisenberg algebra `[x, y] = z`.
    pub fn heisenberg() -> Self {
        Self::from_brackets(3, &[(0, 1, vec![0, 0, 1])]).expect("heisenberg")
    }

    /// Affine line `[a, b] = b`.
    pub fn aff1() -> Self {
        Self::from_brackets(2, &[(0, 1, vec![0, 1])]).expect("aff(1)")
    }

    /// Upper triangular `2×2` matrices in the basis `E₁₁, E₁₂, E₂₂`.
    pub fn borel2() -> Self {
        Self::from_brackets(3, &[(0, 1, vec![0, 1, 0]), (1, 2, vec![0, 1, 0])]).expect("borel")
    }

    pub fn direct_sum(&self, o: &FinLieAlgebra) -> FinLieAlgebra {
        let n = self.dim + o.dim;
        let mut c = vec![vec![zero_vec(n); n]; n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    c[i][j][k] = self.c[i][j][k].clone();
                }
            }
        }
        for i in 0..o.dim {
            for j in 0..o.dim {
                for k in 0..o.dim {
                    c[self.dim + i][self.dim + j][self.dim + k] = o.c[i][j][k].clone();
                }
            }
        }
        FinLieAlgebra { dim: n, c }
    }

    /// Same algebra in the basis `f_a = Σ_i P_{ia} e_i`.
    pub fn change_basis(&self, p: &QMatrix) -> Result<FinLieAlgebra> {
        let pinv = p.inverse().ok_or_else(|| GeomError::Singular("basis change".into()))?;
        let n = self.dim;
        let mut c = vec![vec![zero_vec(n); n]; n];
        for a in 0..n {
            for b in 0..n {
                let br = self.bracket(&p.column(a), &p.column(b));
                c[a][b] = pinv.mul_vec(&br);
            }
        }
        FinLieAlgebra::new(n, c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self, i: usize, j: usize) -> &[Q] {
        &self.c[i][j]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = zero_vec(self.dim);
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                add_into(&mut out, &self.c[i][j], &(&x[i] * &y[j]));
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = zero_vec(self.dim);
        v[i] = Q::one();
        v
    }

    /// Largest entry of the Jacobiator over basis triples.
    pub fn jacobi_defect(&self) -> f64 {
        let mut worst = QMatrix::zeros(1, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let mut s = self.bracket(&self.bracket(&x, &y), &z);
                    add_into(&mut s, &self.bracket(&self.bracket(&y, &z), &x), &Q::one());
                    add_into(&mut s, &self.bracket(&self.bracket(&z, &x), &y), &Q::one());
                    let row = QMatrix::from_rows(&[s]);
                    if row.max_abs() > worst.max_abs() {
                        worst = row;
                    }
                }
            }
        }
        worst.max_abs()
    }
}

/// Representation `ρ: 𝔤 → gl(V)` given on basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct LieModule {
    dim: usize,
    rho: Vec<QMatrix>,
}

impl LieModule {
    /// Validates `[ρ(e_i), ρ(e_j)] = ρ([e_i, e_j])` exactly.
    pub fn new(g: &FinLieAlgebra, rho: Vec<QMatrix>) -> Result<Self> {
        if rho.len() != g.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: g.dim(),
                found: rho.len(),
            });
        }
        let dim = rho.first().map_or(0, QMatrix::nrows);
        if rho.iter().any(|r| r.nrows() != dim || r.ncols() != dim) {
            return Err(GeomError::InvalidParameter("action matrices have mixed shapes".into()));
        }
        let m = LieModule { dim, rho };
        if m.representation_defect(g) != 0.0 {
            return Err(GeomError::InvalidParameter("action is not a representation".into()));
        }
        Ok(m)
    }

    pub fn trivial(g: &FinLieAlgebra, dim: usize) -> Self {
        LieModule {
            dim,
            rho: vec![QMatrix::zeros(dim, dim); g.dim()],
        }
    }

    pub fn adjoint(g: &FinLieAlgebra) -> Self {
        let n = g.dim();
        let rho = (0..n)
            .map(|i| QMatrix::from_columns(&(0..n).map(|j| g.structure(i, j).to_vec()).collect::<Vec<_>>()))
            .collect();
        LieModule { dim: n, rho }
    }

    pub fn direct_sum(&self, o: &LieModule) -> LieModule {
        let n = self.dim + o.dim;
        let rho = self
            .rho
            .iter()
            .zip(&o.rho)
            .map(|(a, b)| {
                let mut m = QMatrix::zeros(n, n);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m[(i, j)] = a[(i, j)].clone();
                    }
                }
                for i in 0..o.dim {
                    for j in 0..o.dim {
                        m[(self.dim + i, self.dim + j)] = b[(i, j)].clone();
                    }
                }
                m
            })
            .collect();
        LieModule { dim: n, rho }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `ρ(x)v`.
    pub fn act(&self, x: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = zero_vec(self.dim);
        for (xi, r) in x.iter().zip(&self.rho) {
            if !xi.is_zero() {
                add_into(&mut out, &r.mul_vec(v), xi);
            }
        }
        out
    }

    pub fn representation_defect(&self, g: &FinLieAlgebra) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let lhs = self.rho[i].commutator(&self.rho[j]);
                let mut rhs = QMatrix::zeros(self.dim, self.dim);
                for (k, c) in g.structure(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        rhs = rhs.add(&self.rho[k].scale(c));
                    }
                }
                worst = worst.max(lhs.sub(&rhs).max_abs());
            }
        }
        worst
    }
}

/// Alternating `n`-linear map `𝔤ⁿ → V`, stored on increasing index tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    degree: usize,
    gdim: usize,
    vdim: usize,
    values: Vec<Vec<Q>>,
}

/// Position of each increasing tuple, and the sign sorting a tuple.
fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

impl Cochain {
    pub fn zero(g: &FinLieAlgebra, v: &LieModule, degree: usize) -> Self {
        let n = combinations(g.dim(), degree).len();
        Cochain {
            degree,
            gdim: g.dim(),
            vdim: v.dim(),
            values: vec![zero_vec(v.dim()); n],
        }
    }

    pub fn from_values(g: &FinLieAlgebra, v: &LieModule, degree: usize, values: Vec<Vec<Q>>) -> Result<Self> {
        let n = combinations(g.dim(), degree).len();
        if values.len() != n || values.iter().any(|x| x.len() != v.dim()) {
            return Err(GeomError::DimensionMismatch {
                expected: n,
                found: values.len(),
            });
        }
        Ok(Cochain {
            degree,
            gdim: g.dim(),
            vdim: v.dim(),
            values,
        })
    }

    /// Cochain with entries `p/q`, `|p| ≤ 5`, `q ∈ 1..=3`.
    pub fn random(rng: &mut impl Rng, g: &FinLieAlgebra, v: &LieModule, degree: usize) -> Self {
        let mut c = Self::zero(g, v, degree);
        for val in c.values.iter_mut() {
            for x in val.iter_mut() {
                *x = frac(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            }
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Vec<Q>] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        QMatrix::from_rows(&[self.flatten()]).max_abs()
    }

    fn flatten(&self) -> Vec<Q> {
        self.values.iter().flatten().cloned().collect()
    }

    fn index(&self) -> HashMap<Vec<usize>, usize> {
        combinations(self.gdim, self.degree)
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect()
    }

    /// Value on basis elements in any order.
    pub fn on_basis(&self, idx: &[usize]) -> Vec<Q> {
        self.on_basis_with(&self.index(), idx)
    }

    fn on_basis_with(&self, index: &HashMap<Vec<usize>, usize>, idx: &[usize]) -> Vec<Q> {
        match sort_with_sign(idx) {
            None => zero_vec(self.vdim),
            Some((sorted, odd)) => {
                let v = &self.values[index[&sorted]];
                if odd {
                    v.iter().map(|x| -x.clone()).collect()
                } else {
                    v.clone()
                }
            }
        }
    }

    /// Multilinear value on arbitrary algebra elements.
    pub fn eval(&self, xs: &[Vec<Q>]) -> Vec<Q> {
        assert_eq!(xs.len(), self.degree, "wrong number of arguments");
        let index = self.index();
        let mut out = zero_vec(self.vdim);
        let mut idx = vec![0usize; self.degree];
        loop {
            let coeff = idx.iter().enumerate().fold(Q::one(), |c, (a, &i)| c * &xs[a][i]);
            if !coeff.is_zero() {
                add_into(&mut out, &self.on_basis_with(&index, &idx), &coeff);
            }
            let mut a = 0;
            loop {
                if a == self.degree {
                    return out;
                }
                idx[a] += 1;
                if idx[a] < self.gdim {
                    break;
                }
                idx[a] = 0;
                a += 1;
            }
        }
    }

    pub fn add(&self, o: &Cochain) -> Cochain {
        let mut c = self.clone();
        for (a, b) in c.values.iter_mut().zip(&o.values) {
            add_into(a, b, &Q::one());
        }
        c
    }

    pub fn scale(&self, s: &Q) -> Cochain {
        let mut c = self.clone();
        for x in c.values.iter_mut().flatten() {
            *x *= s;
        }
        c
    }
}

pub fn coboundary(g: &FinLieAlgebra, v: &LieModule, c: &Cochain) -> Cochain {
    let n = c.degree;
    let mut out = Cochain::zero(g, v, n + 1);
    let index = c.index();
    for (slot, tuple) in combinations(g.dim(), n + 1).into_iter().enumerate() {
        let mut acc = zero_vec(v.dim());
        for i in 0..=n {
            let rest: Vec<usize> = tuple.iter().enumerate().filter(|&(l, _)| l != i).map(|(_, &t)| t).collect();
            let w = c.on_basis_with(&index, &rest);
            add_into(&mut acc, &v.act(&g.basis(tuple[i]), &w), &sign(i));
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|&(l, _)| l != i && l != j)
                    .map(|(_, &t)| t)
                    .collect();
                for (k, ck) in g.structure(tuple[i], tuple[j]).iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    let mut args = vec![k];
                    args.extend(&rest);
                    add_into(&mut acc, &c.on_basis_with(&index, &args), &(ck * sign(i + j)));
                }
            }
        }
        out.values[slot] = acc;
    }
    out
}

/// Matrix of `∂_n` in the bases of increasing tuples times module coordinates.
pub fn coboundary_matrix(g: &FinLieAlgebra, v: &LieModule, n: usize) -> QMatrix {
    let src = combinations(g.dim(), n).len() * v.dim();
    let dst = combinations(g.dim(), n + 1).len() * v.dim();
    let mut cols = Vec::with_capacity(src);
    for s in 0..src {
        let mut e = Cochain::zero(g, v, n);
        e.values[s / v.dim()][s % v.dim()] = Q::one();
        cols.push(coboundary(g, v, &e).flatten());
    }
    if cols.is_empty() {
        return QMatrix::zeros(dst, 0);
    }
    QMatrix::from_columns(&cols)
}

/// `(∂c = 0, max |∂c|)`.
pub fn cocycle_check(g: &FinLieAlgebra, v: &LieModule, c: &Cochain) -> (bool, f64) {
    let d = coboundary(g, v, c);
    (d.is_zero(), d.max_abs())
}

/// A primitive `b` with `∂b = c`, when `c` is exact.
pub fn coboundary_check(g: &FinLieAlgebra, v: &LieModule, c: &Cochain) -> Option<Cochain> {
    if c.degree == 0 {
        return c.is_zero().then(|| c.clone());
    }
    let m = coboundary_matrix(g, v, c.degree - 1);
    let x = if m.ncols() == 0 {
        if c.is_zero() {
            Vec::new()
        } else {
            return None;
        }
    } else {
        m.solve(&c.flatten())?
    };
    let values = x.chunks(v.dim().max(1)).map(<[Q]>::to_vec).collect();
    Cochain::from_values(g, v, c.degree - 1, values).ok()
}

/// `dim Hⁿ(𝔤, V) = dim ker ∂_n − rank ∂_{n−1}`.
pub fn cohomology_dim(g: &FinLieAlgebra, v: &LieModule, n: usize) -> usize {
    let dn = coboundary_matrix(g, v, n);
    let kernel = dn.ncols() - dn.rank();
    let image = if n == 0 { 0 } else { coboundary_matrix(g, v, n - 1).rank() };
    kernel - image
}

/// Element `(X, A)` of `𝔤 ⊕ V`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtElement {
    pub x: Vec<Q>,
    pub a: Vec<Q>,
}

/// `[(X,A),(Y,B)] = ([X,Y], X∘B − Y∘A + ω(X,Y))`.
pub fn extension_bracket(
    g: &FinLieAlgebra,
    v: &LieModule,
    omega: &Cochain,
    p: &ExtElement,
    r: &ExtElement,
) -> Result<ExtElement> {
    if omega.degree != 2 {
        return Err(GeomError::InvalidParameter(format!(
            "extension cocycle must have degree 2, found {}",
            omega.degree
        )));
    }
    let mut a = v.act(&p.x, &r.a);
    add_into(&mut a, &v.act(&r.x, &p.a), &-Q::one());
    add_into(&mut a, &omega.eval(&[p.x.clone(), r.x.clone()]), &Q::one());
    Ok(ExtElement { x: g.bracket(&p.x, &r.x), a })
}

/// Cyclic sum `[[P,R],S] + [[R,S],P] + [[S,P],R]`.
pub fn extension_jacobiator(
    g: &FinLieAlgebra,
    v: &LieModule,
    omega: &Cochain,
    p: &ExtElement,
    r: &ExtElement,
    s: &ExtElement,
) -> Result<ExtElement> {
    let br = |a: &ExtElement, b: &ExtElement| extension_bracket(g, v, omega, a, b);
    let t1 = br(&br(p, r)?, s)?;
    let t2 = br(&br(r, s)?, p)?;
    let t3 = br(&br(s, p)?, r)?;
    let sum = |a: &[Q], b: &[Q], c: &[Q]| a.iter().zip(b).zip(c).map(|((x, y), z)| x + y + z).collect();
    Ok(ExtElement {
        x: sum(&t1.x, &t2.x, &t3.x),
        a: sum(&t1.a, &t2.a, &t3.a),
    })
}

/// Integer matrix with determinant ±1, as a random basis change.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> QMatrix {
    let mut p = QMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let f = q(rng.gen_range(-2..=2));
        for r in 0..n {
            let t = &p[(r, j)] * &f;
            p[(r, i)] += t;
        }
    }
    p
}

/// Random rational vector with small entries.
pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| frac(rng.gen_range(-4..=4), rng.gen_range(1..=2))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng;

    #[test]
    fn standard_algebras_are_valid() {
        for g in [
            FinLieAlgebra::so3(),
            FinLieAlgebra::gl2(),
            FinLieAlgebra::heisenberg(),
            FinLieAlgebra::aff1(),
            FinLieAlgebra::borel2(),
        ] {
            assert_eq!(g.jacobi_defect(), 0.0);
            assert_eq!(LieModule::adjoint(&g).representation_defect(&g), 0.0);
        }
    }

    #[test]
    fn broken_constants_are_rejected() {
        // [e0,e1] = e0, [e1,e2] = e1, [e0,e2] = e2 fails Jacobi
        let r = FinLieAlgebra::from_brackets(3, &[(0, 1, vec![1, 0, 0]), (1, 2, vec![0, 1, 0]), (0, 2, vec![0, 0, 1])]);
        assert!(r.is_err());
    }

    #[test]
    fn sort_sign() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], false)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], true)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
    }

    #[test]
    fn so3_has_no_second_cohomology() {
        let g = FinLieAlgebra::so3();
        assert_eq!(cohomology_dim(&g, &LieModule::trivial(&g, 1), 2), 0);
        assert_eq!(cohomology_dim(&g, &LieModule::trivial(&g, 1), 3), 1);
        let h = FinLieAlgebra::heisenberg();
        assert_eq!(cohomology_dim(&h, &LieModule::trivial(&h, 1), 1), 2);
    }

    #[test]
    fn degree_above_dimension_is_zero() {
        let g = FinLieAlgebra::aff1();
        let v = LieModule::adjoint(&g);
        let c = Cochain::random(&mut rng(1), &g, &v, 2);
        let d = coboundary(&g, &v, &c);
        assert_eq!(d.values().len(), 0);
        assert!(d.is_zero());
    }

    #[test]
    fn exact_cochain_has_primitive() {
        let g = FinLieAlgebra::gl2();
        let v = LieModule::adjoint(&g);
        let b = Cochain::random(&mut rng(2), &g, &v, 1);
        let c = coboundary(&g, &v, &b);
        let p = coboundary_check(&g, &v, &c).unwrap();
        assert_eq!(coboundary(&g, &v, &p), c);
    }

    #[test]
    fn basis_change_preserves_invariants() {
        let g = FinLieAlgebra::so3();
        let p = random_unimodular(&mut rng(3), 3);
        let h = g.change_basis(&p).unwrap();
        assert_eq!(h.jacobi_defect(), 0.0);
        assert_eq!(cohomology_dim(&h, &LieModule::trivial(&h, 1), 3), 1);
    }
}
