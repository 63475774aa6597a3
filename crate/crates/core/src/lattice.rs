//! Integral lattices given by Gram matrices, short vector enumeration, and
//! kissing configurations.
//!
//! Enumeration is Fincke–Pohst over the exact `LDLᵀ` of the Gram matrix:
//! writing `Q(x) = Σ d_k (y_k + Σ_{i>k} l_ik y_i)²`, coordinates are fixed from
//! the last to the first and each range is bounded by an integer square root,
//! then filtered exactly. No floating point is involved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact::{isqrt, ldl_decompose, rat, Matrix, Rational};

/// Largest kissing configuration for which a dense Gram matrix is built.
pub const MAX_KISSING_POINTS: usize = 20_000;

/// Positive definite symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeGram {
    gram: Vec<Vec<i64>>,
    label: Option<String>,
}

impl LatticeGram {
    pub fn new(gram: Vec<Vec<i64>>, label: Option<String>) -> Result<Self> {
        let d = gram.len();
        if d == 0 {
            return Err(Error::Domain("lattice of dimension 0".into()));
        }
        let m = Matrix::from_i64_rows(&gram)?;
        let ldl = ldl_decompose(&m).map_err(|e| match e {
            Error::NoDiagonalPivot => Error::NotPositiveDefinite,
            e => e,
        })?;
        if !ldl.d.iter().all(Signed::is_positive) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(LatticeGram { gram, label })
    }

    /// `Zⁿ` with the identity Gram matrix.
    pub fn integer(n: usize) -> Result<Self> {
        let g = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        LatticeGram::new(g, Some(format!("Z{n}")))
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// `vᵀ G v` in integer arithmetic.
    pub fn norm(&self, v: &[i64]) -> i128 {
        self.inner(v, v)
    }

    pub fn inner(&self, v: &[i64], w: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, row) in self.gram.iter().enumerate() {
            if v[i] == 0 {
                continue;
            }
            let gw: i128 = row.iter().zip(w).map(|(&g, &x)| g as i128 * x as i128).sum();
            s += v[i] as i128 * gw;
        }
        s
    }

    fn enumerator(&self) -> Enumerator {
        let m = Matrix::from_i64_rows(&self.gram).expect("square");
        let ldl = ldl_decompose(&m).expect("positive definite");
        let n = self.dim();
        let l = (0..n).map(|i| (0..n).map(|k| ldl.l.get(i, k).clone()).collect()).collect();
        Enumerator { n, perm: ldl.perm, l, d: ldl.d }
    }

    /// All nonzero `x` with `Q(x) ≤ bound`, in lexicographic order.
    pub fn vectors_up_to(&self, bound: i64) -> Vec<Vec<i64>> {
        let mut out = self.enumerator().run(&Rational::from_integer(BigInt::from(bound)));
        out.retain(|v| v.iter().any(|&x| x != 0));
        out.sort_unstable();
        out
    }
}

struct Enumerator {
    n: usize,
    perm: Vec<usize>,
    /// `l[i][k]`, unit lower triangular.
    l: Vec<Vec<Rational>>,
    d: Vec<Rational>,
}

impl Enumerator {
    /// Integer range `[lo, hi]` containing every `v` with `d_k (v + c)² ≤ rem`.
    fn range(&self, k: usize, c: &Rational, rem: &Rational) -> (i64, i64, Rational) {
        let q = rem / &self.d[k];
        let s = isqrt(&q.floor().to_integer()) + BigInt::one();
        let centre = -c;
        let lo = centre.floor().to_integer() - &s;
        let hi = centre.ceil().to_integer() + &s;
        (lo.to_i64().expect("coordinate range fits i64"), hi.to_i64().expect("coordinate range fits i64"), q)
    }

    fn centre(&self, k: usize, y: &[i64]) -> Rational {
        let mut c = Rational::zero();
        for i in k + 1..self.n {
            if y[i] != 0 && !self.l[i][k].is_zero() {
                c += &self.l[i][k] * Rational::from_integer(BigInt::from(y[i]));
            }
        }
        c
    }

    fn run(&self, bound: &Rational) -> Vec<Vec<i64>> {
        let top = self.n - 1;
        let zero = Rational::zero();
        let (lo, hi, q) = self.range(top, &zero, bound);
        (lo..=hi)
            .into_par_iter()
            .flat_map_iter(|v| {
                let mut out = Vec::new();
                let t = Rational::from_integer(BigInt::from(v));
                let t2 = &t * &t;
                if t2 <= q {
                    let mut y = vec![0i64; self.n];
                    y[top] = v;
                    let rem = bound - &self.d[top] * t2;
                    self.descend(top, &mut y, &rem, &mut out);
                }
                out
            })
            .collect()
    }

    /// Coordinates `k..n` of `y` are fixed; fill in `k−1..0`.
    fn descend(&self, k: usize, y: &mut Vec<i64>, rem: &Rational, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            let mut x = vec![0i64; self.n];
            for (i, &p) in self.perm.iter().enumerate() {
                x[p] = y[i];
            }
            out.push(x);
            return;
        }
        let k = k - 1;
        let c = self.centre(k, y);
        let (lo, hi, q) = self.range(k, &c, rem);
        for v in lo..=hi {
            let t = Rational::from_integer(BigInt::from(v)) + &c;
            let t2 = &t * &t;
            if t2 <= q {
                y[k] = v;
                let next = rem - &self.d[k] * t2;
                self.descend(k, y, &next, out);
            }
        }
        y[k] = 0;
    }
}

/// Smallest nonzero norm; the least diagonal entry bounds the search.
pub fn minimal_norm(g: &LatticeGram) -> i64 {
    let bound = (0..g.dim()).map(|i| g.gram[i][i]).min().expect("dimension >= 1");
    g.vectors_up_to(bound).iter().map(|v| g.norm(v)).min().expect("basis vectors lie within the bound") as i64
}

/// Lattice vectors of one norm, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortVectorSet {
    pub norm: i64,
    pub vectors: Vec<Vec<i64>>,
}

impl ShortVectorSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Every `v` with `vᵀ G v = m` exactly.
pub fn short_vectors(g: &LatticeGram, m: i64) -> Result<ShortVectorSet> {
    if m < 1 {
        return Err(Error::Domain(format!("norm must be positive, got {m}")));
    }
    let vectors: Vec<Vec<i64>> = g.vectors_up_to(m).into_iter().filter(|v| g.norm(v) == m as i128).collect();
    Ok(ShortVectorSet { norm: m, vectors })
}

/// Minimal vectors normalized to the unit sphere: Gram entries `vᵀGw / m`.
pub fn kissing_configuration(g: &LatticeGram) -> Result<Configuration> {
    let m = minimal_norm(g);
    let set = short_vectors(g, m)?;
    kissing_from_vectors(g, &set)
}

pub fn kissing_from_vectors(g: &LatticeGram, set: &ShortVectorSet) -> Result<Configuration> {
    let n = set.len();
    if n > MAX_KISSING_POINTS {
        return Err(Error::ResourceLimit(format!(
            "{n} minimal vectors exceed the dense Gram limit of {MAX_KISSING_POINTS}"
        )));
    }
    let gv: Vec<Vec<i128>> = set
        .vectors
        .iter()
        .map(|v| g.gram.iter().map(|row| row.iter().zip(v).map(|(&a, &x)| a as i128 * x as i128).sum()).collect())
        .collect();
    let m = set.norm;
    let gram = Matrix::from_fn(n, n, |i, j| {
        let s: i128 = gv[i].iter().zip(&set.vectors[j]).map(|(&a, &x)| a * x as i128).sum();
        let s = i64::try_from(s).expect("inner product fits i64");
        let (q, r) = s.div_rem(&m);
        if r == 0 {
            Rational::from_integer(BigInt::from(q))
        } else {
            rat(s, m)
        }
    });
    let label =
        g.label().map_or_else(|| "kissing configuration".to_string(), |l| format!("kissing configuration of {l}"));
    Configuration::new(gram, Some(label))
}
