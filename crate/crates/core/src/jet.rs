//! Truncated multivariate Taylor polynomials ("jets").
//!
//! A [`Jet`] of order `k` in `n` variables stores the Taylor coefficients
//! `f^(α)(p) / α!` of a smooth function at a base point `p` for every
//! multi-index with `|α| ≤ k`. Arithmetic is truncated polynomial arithmetic,
//! so composing jets gives exact derivatives (up to rounding) without any
//! symbolic manipulation.
//!
//! Monomials are ordered by total degree first, then lexicographically, so
//! the coefficient vector of an order-`j` jet is a prefix of the one of an
//! order-`k` jet whenever `j ≤ k`. Mixed-order operations rely on this and
//! return a jet of the smaller order.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// Monomial table shared by all jets with the same `(nvars, order)`.
pub struct Layout {
    nvars: usize,
    order: usize,
    exps: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    /// `sizes[d]` = number of monomials of degree ≤ d.
    sizes: Vec<usize>,
    /// `(a, b, c)` with `x^a * x^b = x^c`, sorted by degree of `c`.
    mul: Vec<(u32, u32, u32)>,
    /// `mul_end[d]` = number of entries of `mul` whose product has degree ≤ d.
    mul_end: Vec<usize>,
    /// Per variable: `(src, dst, factor)` realising `∂_j`.
    deriv: Vec<Vec<(u32, u32, f64)>>,
}

impl fmt::Debug for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Layout")
            .field("nvars", &self.nvars)
            .field("order", &self.order)
            .field("len", &self.exps.len())
            .finish()
    }
}

fn monomials_of_degree(nvars: usize, degree: usize) -> Vec<Vec<u8>> {
    fn rec(nvars: usize, left: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e as u8);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

impl Layout {
    fn build(nvars: usize, order: usize) -> Layout {
        let mut exps = Vec::new();
        let mut sizes = Vec::with_capacity(order + 1);
        for d in 0..=order {
            exps.extend(monomials_of_degree(nvars, d));
            sizes.push(exps.len());
        }
        let index: HashMap<Vec<u8>, usize> =
            exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let degree: Vec<usize> = exps
            .iter()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .collect();

        let mut mul = Vec::new();
        for (a, ea) in exps.iter().enumerate() {
            for (b, eb) in exps.iter().enumerate() {
                if degree[a] + degree[b] > order {
                    continue;
                }
                let ec: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                mul.push((a as u32, b as u32, index[&ec] as u32));
            }
        }
        mul.sort_by_key(|&(_, _, c)| (degree[c as usize], c));
        let mut mul_end = vec![0; order + 1];
        for d in 0..=order {
            mul_end[d] = mul.iter().filter(|t| degree[t.2 as usize] <= d).count();
        }

        let mut deriv = vec![Vec::new(); nvars];
        for (src, e) in exps.iter().enumerate() {
            for (j, dv) in deriv.iter_mut().enumerate() {
                if e[j] > 0 {
                    let mut t = e.clone();
                    t[j] -= 1;
                    dv.push((src as u32, index[&t] as u32, e[j] as f64));
                }
            }
        }
        Layout {
            nvars,
            order,
            exps,
            index,
            sizes,
            mul,
            mul_end,
            deriv,
        }
    }

    /// Shared layout for `(nvars, order)`.
    pub fn get(nvars: usize, order: usize) -> Arc<Layout> {
        thread_local! {
            static LOCAL: RefCell<HashMap<(usize, usize), Arc<Layout>>> = RefCell::new(HashMap::new());
        }
        static GLOBAL: OnceLock<Mutex<HashMap<(usize, usize), Arc<Layout>>>> = OnceLock::new();
        LOCAL.with(|local| {
            if let Some(l) = local.borrow().get(&(nvars, order)) {
                return l.clone();
            }
            let global = GLOBAL.get_or_init(|| Mutex::new(HashMap::new()));
            let l = global
                .lock()
                .expect("layout cache poisoned")
                .entry((nvars, order))
                .or_insert_with(|| Arc::new(Layout::build(nvars, order)))
                .clone();
            local.borrow_mut().insert((nvars, order), l.clone());
            l
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self, i: usize) -> &[u8] {
        &self.exps[i]
    }

    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        self.index.get(exps).copied()
    }
}

/// Truncated Taylor expansion of a scalar function at a point.
#[derive(Clone)]
pub struct Jet {
    layout: Arc<Layout>,
    c: Vec<f64>,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Jet(n={}, k={}, {:?})",
            self.nvars(),
            self.order(),
            &self.c
        )
    }
}

impl Jet {
    pub fn constant(value: f64, nvars: usize, order: usize) -> Jet {
        let layout = Layout::get(nvars, order);
        let mut c = vec![0.0; layout.len()];
        c[0] = value;
        Jet { layout, c }
    }

    pub fn zero(nvars: usize, order: usize) -> Jet {
        Jet::constant(0.0, nvars, order)
    }

    /// The coordinate function `x_i` expanded at a point where it equals `value`.
    pub fn variable(i: usize, value: f64, nvars: usize, order: usize) -> Jet {
        let mut j = Jet::constant(value, nvars, order);
        if order >= 1 {
            let mut e = vec![0u8; nvars];
            e[i] = 1;
            let idx = j.layout.index_of(&e).expect("degree-one monomial");
            j.c[idx] = 1.0;
        }
        j
    }

    /// Identity jets `x_i = p_i + δ_i` for all coordinates of `p`.
    pub fn coordinates(p: &[f64], order: usize) -> Vec<Jet> {
        (0..p.len())
            .map(|i| Jet::variable(i, p[i], p.len(), order))
            .collect()
    }

    pub fn from_coeffs(nvars: usize, order: usize, coeffs: Vec<f64>) -> Jet {
        let layout = Layout::get(nvars, order);
        assert_eq!(coeffs.len(), layout.len(), "coefficient count");
        Jet { layout, c: coeffs }
    }

    pub fn constant_like(&self, value: f64) -> Jet {
        let mut c = vec![0.0; self.c.len()];
        c[0] = value;
        Jet {
            layout: self.layout.clone(),
            c,
        }
    }

    pub fn zero_like(&self) -> Jet {
        self.constant_like(0.0)
    }

    pub fn nvars(&self) -> usize {
        self.layout.nvars
    }

    pub fn order(&self) -> usize {
        self.layout.order
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// First partial derivatives at the base point (requires order ≥ 1).
    pub fn gradient(&self) -> Vec<f64> {
        assert!(self.order() >= 1, "gradient of an order-0 jet");
        (0..self.nvars())
            .map(|j| {
                let mut e = vec![0u8; self.nvars()];
                e[j] = 1;
                self.c[self.layout.index_of(&e).unwrap()]
            })
            .collect()
    }

    /// Mixed partial `∂^α f(p)` for a multi-index given as exponent counts.
    pub fn partial(&self, exps: &[u8]) -> f64 {
        let idx = self
            .layout
            .index_of(exps)
            .expect("multi-index exceeds jet order");
        let fact: f64 = exps
            .iter()
            .map(|&e| (1..=e as u64).product::<u64>() as f64)
            .product();
        self.c[idx] * fact
    }

    pub fn truncate(&self, order: usize) -> Jet {
        if order >= self.order() {
            return self.clone();
        }
        let layout = Layout::get(self.nvars(), order);
        let c = self.c[..layout.len()].to_vec();
        Jet { layout, c }
    }

    fn lower<'a>(&'a self, other: &'a Jet) -> &'a Arc<Layout> {
        debug_assert_eq!(self.nvars(), other.nvars(), "jet variable count");
        if self.order() <= other.order() {
            &self.layout
        } else {
            &other.layout
        }
    }

    /// `∂_j` of this jet, one order lower.
    pub fn derivative(&self, j: usize) -> Jet {
        assert!(self.order() >= 1, "derivative of an order-0 jet");
        let layout = Layout::get(self.nvars(), self.order() - 1);
        let n = layout.len();
        let mut c = vec![0.0; n];
        for &(src, dst, fac) in &self.layout.deriv[j] {
            let dst = dst as usize;
            if dst < n {
                c[dst] += fac * self.c[src as usize];
            }
        }
        Jet { layout, c }
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            layout: self.layout.clone(),
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add_scalar(&self, s: f64) -> Jet {
        let mut out = self.clone();
        out.c[0] += s;
        out
    }

    fn zip_with(&self, other: &Jet, f: impl Fn(f64, f64) -> f64) -> Jet {
        let layout = self.lower(other).clone();
        let n = layout.len();
        let c = (0..n).map(|i| f(self.c[i], other.c[i])).collect();
        Jet { layout, c }
    }

    pub fn mul_jet(&self, other: &Jet) -> Jet {
        let layout = self.lower(other).clone();
        let n = layout.len();
        let mut c = vec![0.0; n];
        let end = layout.mul_end[layout.order];
        for &(a, b, r) in &layout.mul[..end] {
            c[r as usize] += self.c[a as usize] * other.c[b as usize];
        }
        Jet { layout, c }
    }

    /// `Σ g[n] (self − self(p))^n`, with `g[n] = g^(n)(a)/n!` the Taylor
    /// coefficients of a univariate function at `a = self.value()`.
    pub fn compose_univariate(&self, g: &[f64]) -> Jet {
        let k = self.order();
        let mut delta = self.clone();
        delta.c[0] = 0.0;
        let top = k.min(g.len().saturating_sub(1));
        let mut acc = self.constant_like(g[top]);
        for n in (0..top).rev() {
            acc = acc.mul_jet(&delta);
            acc.c[0] += g[n];
        }
        acc
    }

    pub fn recip(&self) -> Jet {
        let a = self.value();
        let k = self.order();
        let mut g = Vec::with_capacity(k + 1);
        let mut t = 1.0 / a;
        for _ in 0..=k {
            g.push(t);
            t *= -1.0 / a;
        }
        self.compose_univariate(&g)
    }

    pub fn powf(&self, p: f64) -> Jet {
        let a = self.value();
        let k = self.order();
        let mut g = Vec::with_capacity(k + 1);
        let mut binom = 1.0;
        for n in 0..=k {
            g.push(binom * a.powf(p - n as f64));
            binom *= (p - n as f64) / (n as f64 + 1.0);
        }
        self.compose_univariate(&g)
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    pub fn powi(&self, n: i32) -> Jet {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = self.constant_like(1.0);
        for _ in 0..n {
            acc = acc.mul_jet(self);
        }
        acc
    }

    pub fn exp(&self) -> Jet {
        let a = self.value().exp();
        let k = self.order();
        let mut g = Vec::with_capacity(k + 1);
        let mut f = 1.0;
        for n in 0..=k {
            if n > 0 {
                f *= n as f64;
            }
            g.push(a / f);
        }
        self.compose_univariate(&g)
    }

    pub fn ln(&self) -> Jet {
        let a = self.value();
        let k = self.order();
        let mut g = vec![a.ln()];
        for n in 1..=k {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            g.push(sign / (n as f64 * a.powi(n as i32)));
        }
        self.compose_univariate(&g)
    }

    fn trig(&self, shift: usize) -> Jet {
        let a = self.value();
        let k = self.order();
        let cycle = [a.sin(), a.cos(), -a.sin(), -a.cos()];
        let mut g = Vec::with_capacity(k + 1);
        let mut f = 1.0;
        for n in 0..=k {
            if n > 0 {
                f *= n as f64;
            }
            g.push(cycle[(n + shift) % 4] / f);
        }
        self.compose_univariate(&g)
    }

    pub fn sin(&self) -> Jet {
        self.trig(0)
    }

    pub fn cos(&self) -> Jet {
        self.trig(1)
    }

    /// Substitute jets for the variables of `self`.
    ///
    /// `self` is an expansion in variables `y` around `y0`; `inner[j]` is a jet
    /// (in other variables) whose value is `y0_j`. The result is the jet of
    /// `self ∘ inner`, of order `min(self.order, inner orders)`.
    pub fn compose(&self, inner: &[Jet]) -> Jet {
        assert_eq!(inner.len(), self.nvars(), "composition arity");
        if inner.is_empty() {
            return self.clone();
        }
        let order = inner
            .iter()
            .map(Jet::order)
            .min()
            .unwrap()
            .min(self.order());
        let template = inner[0].truncate(order);
        let deltas: Vec<Jet> = inner
            .iter()
            .map(|j| {
                let mut d = j.truncate(order);
                d.c[0] = 0.0;
                d
            })
            .collect();
        // powers[j][e] = delta_j^e
        let powers: Vec<Vec<Jet>> = deltas
            .iter()
            .map(|d| {
                let mut v = vec![template.constant_like(1.0)];
                for e in 1..=order {
                    let next = v[e - 1].mul_jet(d);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = template.zero_like();
        let nterms = self.layout.sizes[order];
        for idx in 0..nterms {
            let coef = self.c[idx];
            if coef == 0.0 {
                continue;
            }
            let exps = &self.layout.exps[idx];
            let mut term: Option<Jet> = None;
            for (j, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = &powers[j][e as usize];
                term = Some(match term {
                    None => p.clone(),
                    Some(t) => t.mul_jet(p),
                });
            }
            match term {
                None => acc.c[0] += coef,
                Some(t) => {
                    for (a, b) in acc.c.iter_mut().zip(&t.c) {
                        *a += coef * b;
                    }
                }
            }
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.mul_jet(rhs)
    }
}

impl Div for &Jet {
    type Output = Jet;
    fn div(self, rhs: &Jet) -> Jet {
        self.mul_jet(&rhs.recip())
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                (&self).$m(rhs)
            }
        }
        impl $tr<Jet> for &Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}
