//! Exact rational scalars and the dense rational matrix routines the rest of
//! the crate is built on: fraction-free rank, symmetric-pivoted `LDL^T`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// Parses `"k"` or `"p/q"` (optional sign, surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a rational of the form k or p/q"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"k"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::NotSquare { row: i, len: row.len(), expected: cols });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// First `(i, j)` with `a[i][j] != a[j][i]`, if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self.get(i, j) != self.get(j, i) {
                    return Some((j, i));
                }
            }
        }
        None
    }

    pub fn require_symmetric(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare { row: 0, len: self.cols, expected: self.rows });
        }
        match self.asymmetry() {
            Some((i, j)) => Err(Error::NotSymmetric(i, j)),
            None => Ok(()),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Simultaneous row/column relabeling: `out[i][j] = a[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], perm[j]).clone())
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

/// Rank over the rationals via Bareiss fraction-free elimination. Rows are
/// first cleared of denominators (row scaling does not change rank), so the
/// elimination runs entirely in integers.
pub fn matrix_rank(m: &Matrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in rank + 1..rows {
            let factor = a[r][col].clone();
            for c in col + 1..cols {
                let v = (&pivot * &a[r][c] - &factor * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank of a symmetric matrix (the Gram rank of a configuration).
pub fn gram_rank(g: &Matrix) -> Result<usize> {
    g.require_symmetric()?;
    Ok(matrix_rank(g))
}

/// `P·A·P^T = L·D·L^T` with `P` given as `perm` (row `i` of the permuted
/// matrix is row `perm[i]` of `A`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ldl {
    pub perm: Vec<usize>,
    pub l: Matrix,
    pub d: Vec<Rational>,
}

impl Ldl {
    pub fn is_psd(&self) -> bool {
        self.d.iter().all(|x| !x.is_negative())
    }

    pub fn nonzero_pivots(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }

    /// Rebuilds `L·D·L^T` (in pivoted order).
    pub fn reconstruct(&self) -> Matrix {
        let n = self.d.len();
        Matrix::from_fn(n, n, |i, j| {
            let mut s = Rational::zero();
            for k in 0..=i.min(j) {
                if !self.d[k].is_zero() {
                    s += self.l.get(i, k) * &self.d[k] * self.l.get(j, k);
                }
            }
            s
        })
    }
}

/// Symmetric-pivoted `LDL^T`. At each step the remaining diagonal entry of
/// largest absolute value is chosen (smallest index on ties). Once every
/// remaining diagonal entry is zero the remaining block must vanish; for
/// semidefinite input it always does and elimination stops early, so the cost
/// is `O(n^2 * rank)`.
pub fn ldl_decompose(g: &Matrix) -> Result<Ldl> {
    g.require_symmetric()?;
    let n = g.rows();
    let mut a = g.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut l = Matrix::identity(n);
    let mut d = vec![Rational::zero(); n];

    for k in 0..n {
        let mut p = k;
        for i in k + 1..n {
            if a.get(i, i).abs() > a.get(p, p).abs() {
                p = i;
            }
        }
        if a.get(p, p).is_zero() {
            for i in k..n {
                for j in k..=i {
                    if !a.get(i, j).is_zero() {
                        return Err(Error::NoDiagonalPivot);
                    }
                }
            }
            break;
        }
        if p != k {
            swap_symmetric(&mut a, k, p);
            perm.swap(k, p);
            for c in 0..k {
                let t = l.get(k, c).clone();
                l.set(k, c, l.get(p, c).clone());
                l.set(p, c, t);
            }
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let lik = a.get(i, k) / &pivot;
            l.set(i, k, lik);
        }
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            if aik.is_zero() {
                continue;
            }
            let lik = l.get(i, k).clone();
            for j in k + 1..=i {
                let akj = a.get(j, k);
                if akj.is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &lik * akj;
                a.set(i, j, v.clone());
                a.set(j, i, v);
            }
        }
        for i in k + 1..n {
            a.set(i, k, Rational::zero());
            a.set(k, i, Rational::zero());
        }
        d[k] = pivot;
    }
    Ok(Ldl { perm, l, d })
}

fn swap_symmetric(a: &mut Matrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let t = a.get(i, c).clone();
        a.set(i, c, a.get(j, c).clone());
        a.set(j, c, t);
    }
    for r in 0..n {
        let t = a.get(r, i).clone();
        a.set(r, i, a.get(r, j).clone());
        a.set(r, j, t);
    }
}

/// Integer floor of the square root of a nonnegative big integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}
