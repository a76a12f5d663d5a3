//! Exterior algebra at a point, the Clifford action of `V ⊕ V*` on forms, and
//! the pairing on `V ⊕ V*`.
//!
//! Blades are bitmasks over basis covectors `dx^0 .. dx^{m-1}`; bit `i` set
//! means `dx^i` is a factor. Coefficients are sparse: a missing blade is zero.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::jet::Jet;

pub type Blade = u32;

pub const MAX_DIM: usize = 16;

/// Scalar types a [`Multivector`] can carry.
pub trait Coeff: Clone + fmt::Debug {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, s: f64) -> Self;
    fn is_zero(&self) -> bool;
    /// Size used for residuals; for jets this is the size of the value.
    fn magnitude(&self) -> f64;
}

impl Coeff for f64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Coeff for Complex64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Coeff for Jet {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: f64) -> Self {
        Jet::scale(self, s)
    }
    fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&c| c == 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.value().abs()
    }
}

pub fn blade_of(indices: &[usize]) -> Blade {
    indices.iter().fold(0, |b, &i| b | (1 << i))
}

pub fn blade_indices(b: Blade) -> Vec<usize> {
    (0..32).filter(|i| b & (1 << i) != 0).collect()
}

pub fn grade(b: Blade) -> usize {
    b.count_ones() as usize
}

/// Sign of `e_a ∧ e_b` relative to the sorted blade `a | b` (0 if they overlap).
fn wedge_sign(a: Blade, b: Blade) -> i32 {
    if a & b != 0 {
        return 0;
    }
    // count pairs (i in a, j in b) with i > j
    let mut swaps = 0;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Element of `Λ•(R^m)*` (or its complexification) with coefficients in `R`.
#[derive(Clone, PartialEq)]
pub struct Multivector<R> {
    dim: usize,
    terms: BTreeMap<Blade, R>,
}

/// Complex-valued multivector at a point.
pub type MultivectorValue = Multivector<Complex64>;

impl<R: Coeff> fmt::Debug for Multivector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(dim={}", self.dim)?;
        for (b, c) in &self.terms {
            write!(f, ", {:?}: {:?}", blade_indices(*b), c)?;
        }
        write!(f, ")")
    }
}

impl<R: Coeff> Multivector<R> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Multivector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: R) -> Self {
        Self::term(dim, &[], c)
    }

    /// `c · dx^{i_1} ∧ … ∧ dx^{i_k}`; indices may come in any order.
    pub fn term(dim: usize, indices: &[usize], c: R) -> Self {
        let mut out = Self::zero(dim);
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return out;
            }
        }
        assert!(sorted.iter().all(|&i| i < dim), "index out of range");
        // parity of the sorting permutation
        let mut inv = 0;
        for a in 0..indices.len() {
            for b in a + 1..indices.len() {
                if indices[a] > indices[b] {
                    inv += 1;
                }
            }
        }
        let c = if inv % 2 == 1 { c.neg() } else { c };
        out.insert(blade_of(&sorted), c);
        out
    }

    /// The 1-form `Σ c_i dx^i`.
    pub fn one_form(cs: Vec<R>) -> Self {
        let mut out = Self::zero(cs.len());
        for (i, c) in cs.into_iter().enumerate() {
            out.insert(1 << i, c);
        }
        out
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Blade, R)>) -> Self {
        let mut out = Self::zero(dim);
        for (b, c) in terms {
            out.accumulate(b, c);
        }
        out
    }

    fn insert(&mut self, b: Blade, c: R) {
        if !c.is_zero() {
            self.terms.insert(b, c);
        }
    }

    /// Adds `c` to the coefficient of blade `b`.
    pub fn accumulate(&mut self, b: Blade, c: R) {
        debug_assert!(b >> self.dim == 0, "blade outside dimension");
        match self.terms.get_mut(&b) {
            Some(old) => {
                *old = old.add(&c);
                if old.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => self.insert(b, c),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, b: Blade) -> Option<&R> {
        self.terms.get(&b)
    }

    pub fn coeff_of(&self, indices: &[usize]) -> Option<&R> {
        self.terms.get(&blade_of(indices))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &R)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Part of degree `k`.
    pub fn homogeneous(&self, k: usize) -> Self {
        Multivector {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| grade(**b) == k)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    /// Degree if all terms share one, `None` for mixed or zero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|b| grade(*b));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> Multivector<S> {
        let mut out = Multivector::zero(self.dim);
        for (b, c) in &self.terms {
            out.insert(*b, f(c));
        }
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(GeomError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.accumulate(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|c| c.scale(s))
    }

    /// Multiply every coefficient by the scalar `c` (a function, for fields).
    pub fn mul_scalar(&self, c: &R) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                match wedge_sign(*a, *b) {
                    0 => {}
                    1 => out.accumulate(a | b, ca.mul(cb)),
                    _ => out.accumulate(a | b, ca.mul(cb).neg()),
                }
            }
        }
        Ok(out)
    }

    /// Interior product `ι_X` with `X = Σ x_i ∂_i`.
    pub fn contract(&self, x: &[R]) -> Result<Self> {
        if x.len() != self.dim {
            return Err(GeomError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.terms {
            let mut bits = *b;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if x[i].is_zero() {
                    continue;
                }
                let below = (b & ((1u32 << i) - 1)).count_ones();
                let term = c.mul(&x[i]);
                let term = if below % 2 == 1 { term.neg() } else { term };
                out.accumulate(b & !(1 << i), term);
            }
        }
        Ok(out)
    }

    /// Clifford action `(X + ξ)·ρ = ι_X ρ + ξ ∧ ρ`.
    pub fn clifford(&self, v: &GvValue<R>) -> Result<Self> {
        let xi = Self::one_form(v.cov.clone());
        self.contract(&v.vec)?.add(&xi.wedge(self)?)
    }

    /// `Σ_n B^n / n!` for an even form `B` without scalar part (the series terminates).
    pub fn exp_wedge(&self) -> Result<Self>
    where
        R: From<f64>,
    {
        self.exp_wedge_with(R::from(1.0))
    }

    /// As [`Multivector::exp_wedge`], with the unit supplied explicitly.
    pub fn exp_wedge_with(&self, one: R) -> Result<Self> {
        let mut out = Self::scalar(self.dim, one.clone());
        let mut power = Self::scalar(self.dim, one);
        for n in 1..=self.dim / 2 + 1 {
            power = power.wedge(self)?.scale(1.0 / n as f64);
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Largest coefficient magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.magnitude()))
    }
}

impl Multivector<Jet> {
    /// Values of all coefficients.
    pub fn value(&self) -> Multivector<f64> {
        self.map(|j| j.value())
    }

    pub fn truncate(&self, order: usize) -> Self {
        self.map(|j| j.truncate(order))
    }
}

impl Multivector<f64> {
    pub fn complexify(&self) -> MultivectorValue {
        self.map(|&c| Complex64::new(c, 0.0))
    }

    /// Evaluate a homogeneous `k`-form on `k` vectors.
    pub fn evaluate(&self, vectors: &[Vec<f64>]) -> Result<f64> {
        let mut cur = self.homogeneous(vectors.len());
        for v in vectors {
            cur = cur.contract(v)?;
        }
        Ok(cur.get(0).copied().unwrap_or(0.0))
    }
}

/// Element `X + ξ` of `V ⊕ V*` (or its complexification).
#[derive(Clone, Debug, PartialEq)]
pub struct GvValue<R> {
    pub vec: Vec<R>,
    pub cov: Vec<R>,
}

impl<R: Coeff> GvValue<R> {
    pub fn new(vec: Vec<R>, cov: Vec<R>) -> Result<Self> {
        if vec.len() != cov.len() {
            return Err(GeomError::DimensionMismatch {
                expected: vec.len(),
                found: cov.len(),
            });
        }
        Ok(GvValue { vec, cov })
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    /// `⟨X + ξ, Y + η⟩ = η(X) + ξ(Y)`.
    pub fn pairing(&self, other: &Self) -> Result<R> {
        if self.dim() != other.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let mut acc: Option<R> = None;
        for i in 0..self.dim() {
            let t = other.cov[i].mul(&self.vec[i]).add(&self.cov[i].mul(&other.vec[i]));
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        acc.ok_or(GeomError::InvalidParameter("empty pairing".into()))
    }

    /// Stacked coordinates `(X, ξ)`.
    pub fn stacked(&self) -> Vec<R> {
        self.vec.iter().chain(&self.cov).cloned().collect()
    }

    pub fn from_stacked(v: &[R]) -> Self {
        let m = v.len() / 2;
        GvValue {
            vec: v[..m].to_vec(),
            cov: v[m..].to_vec(),
        }
    }
}

/// Full matrix of a linear operator `Λ•(C^m)* → Λ•(C^m)*` in the blade basis
/// ordered by bitmask.
pub fn operator_matrix(
    dim: usize,
    op: impl Fn(&MultivectorValue) -> Result<MultivectorValue>,
) -> Result<nalgebra::DMatrix<Complex64>> {
    let n = 1usize << dim;
    let mut m = nalgebra::DMatrix::zeros(n, n);
    for col in 0..n {
        let e = MultivectorValue::from_terms(dim, [(col as Blade, Complex64::new(1.0, 0.0))]);
        for (b, c) in op(&e)?.terms() {
            m[(b as usize, col)] = *c;
        }
    }
    Ok(m)
}
