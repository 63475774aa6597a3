//! Balancedness: every shell sum `S_u(x)` must be a multiple of `x`.
//!
//! The spherical test works on the Gram side only. `S_u(x) - c·x` lies in the
//! span of the configuration, so it vanishes iff its inner product with every
//! point does; with `s_m = Σ_{j in shell} G[j][m]` and `c = s_i` the shell
//! passes iff `s_m = c·G[i][m]` for all `m`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact::{format_rational, Matrix, Rational};
use crate::io::EuclideanInput;

/// Points other than `base`, grouped by their exact inner product with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellDecomposition {
    pub base: usize,
    /// Ascending by inner product.
    pub shells: Vec<(Rational, Vec<usize>)>,
}

impl ShellDecomposition {
    pub fn sizes(&self) -> Vec<(Rational, usize)> {
        self.shells.iter().map(|(u, v)| (u.clone(), v.len())).collect()
    }
}

pub fn shell_decomposition(c: &Configuration, i: usize) -> Result<ShellDecomposition> {
    c.check_index(i)?;
    let mut map: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
    for j in (0..c.len()).filter(|&j| j != i) {
        map.entry(c.inner(i, j).clone()).or_default().push(j);
    }
    Ok(ShellDecomposition { base: i, shells: map.into_iter().collect() })
}

/// Scalar type carried in a report (exact rationals or floats).
pub trait ReportScalar: Clone + std::fmt::Debug + PartialEq {
    fn to_json(&self) -> serde_json::Value;
}

impl ReportScalar for Rational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
}

impl ReportScalar for f64 {
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShellViolation<T> {
    pub point: usize,
    /// Inner product (sphere) or squared distance (Euclidean) of the shell.
    pub shell: T,
    /// Sphere: `<S_u(x) - c·x, x_m>` over all points `m`. Euclidean: centroid minus `x`.
    pub deviation: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BalanceReport<T = Rational> {
    pub balanced: bool,
    pub violations: Vec<ShellViolation<T>>,
}

impl<T> BalanceReport<T> {
    fn from_violations(violations: Vec<ShellViolation<T>>) -> Self {
        BalanceReport { balanced: violations.is_empty(), violations }
    }
}

impl<T: ReportScalar> Serialize for ShellViolation<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ShellViolation", 3)?;
        st.serialize_field("point", &self.point)?;
        st.serialize_field("shell", &self.shell.to_json())?;
        let dev: Vec<_> = self.deviation.iter().map(ReportScalar::to_json).collect();
        st.serialize_field("deviation", &dev)?;
        st.end()
    }
}

impl<T: ReportScalar> Serialize for BalanceReport<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BalanceReport", 2)?;
        st.serialize_field("balanced", &self.balanced)?;
        st.serialize_field("violations", &self.violations)?;
        st.end()
    }
}

/// Exact shell-sum test on the Gram matrix.
pub fn check_balanced(c: &Configuration) -> BalanceReport {
    match ScaledGram::new(c) {
        Some(s) => check_balanced_scaled(&s),
        None => check_balanced_rational(c),
    }
}

/// Gram matrix cleared of denominators, `G = M / den`, when everything fits
/// comfortably in machine integers.
struct ScaledGram {
    n: usize,
    den: i128,
    m: Vec<i64>,
}

impl ScaledGram {
    fn new(c: &Configuration) -> Option<Self> {
        let g = c.gram().matrix();
        let den = g.common_denominator();
        let den64 = den.to_i64()?;
        let n = c.len();
        let mut m = Vec::with_capacity(n * n);
        let mut max = 1i64;
        for i in 0..n {
            for j in 0..n {
                let x = g.get(i, j);
                let v: BigInt = x.numer() * (&den / x.denom());
                let v = v.to_i64()?;
                max = max.max(v.checked_abs()?);
                m.push(v);
            }
        }
        // |D * S_m| and |S_i * M[i][m]| are bounded by n * max * max(den, max).
        let bound = (n as i128).checked_mul(max as i128)?.checked_mul(max.max(den64) as i128)?;
        if bound > i128::MAX / 4 {
            return None;
        }
        Some(ScaledGram { n, den: den64 as i128, m })
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> i64 {
        self.m[i * self.n + j]
    }
}

fn check_balanced_scaled(s: &ScaledGram) -> BalanceReport {
    let n = s.n;
    let den2 = Rational::from_integer(BigInt::from(s.den * s.den));
    let per_point: Vec<Vec<ShellViolation<Rational>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut shells: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for j in (0..n).filter(|&j| j != i) {
                shells.entry(s.at(i, j)).or_default().push(j);
            }
            let mut out = Vec::new();
            let mut sums = vec![0i128; n];
            for (u, members) in shells {
                sums.iter_mut().for_each(|x| *x = 0);
                for &j in &members {
                    let row = &s.m[j * n..(j + 1) * n];
                    for (acc, &v) in sums.iter_mut().zip(row) {
                        *acc += v as i128;
                    }
                }
                let ci = sums[i];
                let dev: Vec<i128> = (0..n).map(|m| s.den * sums[m] - ci * s.at(i, m) as i128).collect();
                if dev.iter().any(|&d| d != 0) {
                    out.push(ShellViolation {
                        point: i,
                        shell: Rational::new(BigInt::from(u), BigInt::from(s.den)),
                        deviation: dev.into_iter().map(|d| Rational::from_integer(BigInt::from(d)) / &den2).collect(),
                    });
                }
            }
            out
        })
        .collect();
    BalanceReport::from_violations(per_point.into_iter().flatten().collect())
}

/// Reference path in plain rational arithmetic (used when the scaled
/// integers would not fit).
pub(crate) fn check_balanced_rational(c: &Configuration) -> BalanceReport {
    let n = c.len();
    let per_point: Vec<Vec<ShellViolation<Rational>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let dec = shell_decomposition(c, i).expect("index in range");
            let mut out = Vec::new();
            for (u, members) in dec.shells {
                let sums: Vec<Rational> =
                    (0..n).map(|m| members.iter().fold(Rational::zero(), |acc, &j| acc + c.inner(j, m))).collect();
                let ci = sums[i].clone();
                let dev: Vec<Rational> = (0..n).map(|m| &sums[m] - &ci * c.inner(i, m)).collect();
                if dev.iter().any(|d| !d.is_zero()) {
                    out.push(ShellViolation { point: i, shell: u, deviation: dev });
                }
            }
            out
        })
        .collect();
    BalanceReport::from_violations(per_point.into_iter().flatten().collect())
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn norm2(v: &[Rational]) -> Rational {
    crate::config::dot(v, v)
}

/// Centroid test for finite or periodic point sets in `R^d`.
///
/// For periodic input `points` is a motif (one representative per translation
/// class) and `period` the rows of a lattice basis; shells out to `cutoff` are
/// gathered over all translates and checked for each representative. For
/// finite input, shells are restricted to distances `<= cutoff` when a cutoff
/// is given.
pub fn check_balanced_euclidean(input: &EuclideanInput) -> Result<BalanceReport> {
    let points = &input.points;
    let dim = points.first().map_or(0, Vec::len);
    if let Some(i) = points.iter().position(|p| p.len() != dim) {
        return Err(Error::Parse(format!("points[{i}] has dimension {}, expected {dim}", points[i].len())));
    }
    let r2 = input.cutoff.as_ref().map(|r| {
        if r.is_negative() {
            Err(Error::Domain("cutoff must be nonnegative".into()))
        } else {
            Ok(r * r)
        }
    });
    let r2 = r2.transpose()?;

    // neighbours[a] = (translated point, squared distance) for every y != x_a in range
    let neighbours: Vec<Vec<(Vec<Rational>, Rational)>> = match &input.period {
        None => (0..points.len())
            .map(|a| {
                (0..points.len())
                    .filter(|&b| b != a)
                    .map(|b| (points[b].clone(), norm2(&sub(&points[b], &points[a]))))
                    .filter(|(_, d2)| r2.as_ref().is_none_or(|r2| d2 <= r2))
                    .collect()
            })
            .collect(),
        Some(basis) => {
            let r2 = r2.clone().ok_or_else(|| Error::Parse("periodic input requires a cutoff".into()))?;
            periodic_neighbours(points, basis, &r2)?
        }
    };

    for a in 0..points.len() {
        for (y, d2) in &neighbours[a] {
            if d2.is_zero() {
                let b = points.iter().position(|p| p == y).unwrap_or(a);
                return Err(Error::DuplicatePoint(a.min(b), a.max(b)));
            }
        }
    }
    if (points.len() > 1 || input.period.is_some()) && neighbours.iter().all(Vec::is_empty) {
        let cutoff = input.cutoff.as_ref().map(format_rational).unwrap_or_default();
        return Err(Error::CutoffTooSmall { cutoff });
    }

    let mut violations = Vec::new();
    for (a, x) in points.iter().enumerate() {
        let mut shells: BTreeMap<&Rational, Vec<&Vec<Rational>>> = BTreeMap::new();
        for (y, d2) in &neighbours[a] {
            shells.entry(d2).or_default().push(y);
        }
        for (d2, ys) in shells {
            let k = Rational::from_integer(BigInt::from(ys.len()));
            let centroid_offset: Vec<Rational> =
                (0..dim).map(|t| ys.iter().fold(Rational::zero(), |acc, y| acc + &y[t] - &x[t]) / &k).collect();
            if centroid_offset.iter().any(|v| !v.is_zero()) {
                violations.push(ShellViolation { point: a, shell: d2.clone(), deviation: centroid_offset });
            }
        }
    }
    Ok(BalanceReport::from_violations(violations))
}

/// A lattice translate of a point and its squared distance from the base point.
type Neighbour = (Vec<Rational>, Rational);

fn periodic_neighbours(
    points: &[Vec<Rational>],
    basis: &[Vec<Rational>],
    r2: &Rational,
) -> Result<Vec<Vec<Neighbour>>> {
    let dim = points.first().map_or(0, Vec::len);
    if basis.len() != dim || basis.iter().any(|b| b.len() != dim) {
        return Err(Error::Parse(format!("period must be a {dim}x{dim} basis")));
    }
    let gram = Matrix::from_fn(dim, dim, |i, j| crate::config::dot(&basis[i], &basis[j]));
    let inv = inverse(&gram).ok_or_else(|| Error::Domain("period basis is singular".into()))?;
    // |c_i| <= |c·B| * |b_i^*| with |b_i^*|^2 = (G^{-1})_{ii}; the box is
    // generous and membership is decided exactly below.
    let r = crate::exact::to_f64(r2).sqrt();
    let mut out = Vec::with_capacity(points.len());
    for (a, x) in points.iter().enumerate() {
        let mut list = Vec::new();
        for (b, p) in points.iter().enumerate() {
            let offset = crate::exact::to_f64(&norm2(&sub(p, x))).sqrt();
            let bounds: Vec<i64> = (0..dim)
                .map(|i| ((r + offset) * crate::exact::to_f64(inv.get(i, i)).sqrt()).floor() as i64 + 1)
                .collect();
            let mut coeff: Vec<i64> = bounds.iter().map(|&m| -m).collect();
            loop {
                if !(b == a && coeff.iter().all(|&t| t == 0)) {
                    let y: Vec<Rational> = (0..dim)
                        .map(|t| {
                            coeff.iter().zip(basis).fold(p[t].clone(), |acc, (&ci, bi)| {
                                acc + Rational::from_integer(BigInt::from(ci)) * &bi[t]
                            })
                        })
                        .collect();
                    let d2 = norm2(&sub(&y, x));
                    if &d2 <= r2 {
                        list.push((y, d2));
                    }
                }
                // odometer increment
                let mut k = 0;
                while k < dim {
                    coeff[k] += 1;
                    if coeff[k] <= bounds[k] {
                        break;
                    }
                    coeff[k] = -bounds[k];
                    k += 1;
                }
                if k == dim {
                    break;
                }
            }
        }
        out.push(list);
    }
    Ok(out)
}

/// Gauss-Jordan inverse; `None` if singular.
fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = m.to_rows();
    let mut inv: Vec<Vec<Rational>> = Matrix::identity(n).to_rows();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let piv = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &piv;
            inv[col][j] = &inv[col][j] / &piv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Matrix::from_rows(inv).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn pair() -> Configuration {
        Configuration::new(Matrix::from_i64_rows(&[vec![1, -1], vec![-1, 1]]).unwrap(), None).unwrap()
    }

    #[test]
    fn antipodal_pair_shells() {
        let d = shell_decomposition(&pair(), 0).unwrap();
        assert_eq!(d.shells, vec![(int(-1), vec![1])]);
        assert!(check_balanced(&pair()).balanced);
        assert!(matches!(shell_decomposition(&pair(), 2), Err(Error::IndexOutOfRange { index: 2, len: 2 })));
    }

    #[test]
    fn single_point_is_balanced() {
        let c = Configuration::new(Matrix::identity(1), None).unwrap();
        assert!(check_balanced(&c).balanced);
    }

    #[test]
    fn three_points_on_a_circle_unbalanced() {
        // (1,0), (0,1), (-1,0): the middle point's two neighbours balance, the ends do not.
        let pts = vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![int(-1), int(0)]];
        let c = Configuration::from_rational_points(&pts, None).unwrap();
        let r = check_balanced(&c);
        assert!(!r.balanced);
        assert!(r.violations.iter().all(|v| v.point != 1));
        assert_eq!(r, check_balanced_rational(&c));
    }

    fn euclid(points: &[&[i64]], period: Option<&[&[i64]]>, cutoff: Option<i64>) -> EuclideanInput {
        let conv = |rows: &[&[i64]]| rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        EuclideanInput { points: conv(points), period: period.map(conv), cutoff: cutoff.map(int) }
    }

    #[test]
    fn euclidean_examples() {
        assert!(check_balanced_euclidean(&euclid(&[&[0, 0]], None, None)).unwrap().balanced);
        assert!(!check_balanced_euclidean(&euclid(&[&[0, 0], &[1, 0]], None, None)).unwrap().balanced);
        let line = check_balanced_euclidean(&euclid(&[&[0], &[1], &[2]], None, None)).unwrap();
        assert!(!line.balanced);
        assert!(line.violations.iter().any(|v| v.point == 0));
        assert!(line.violations.iter().any(|v| v.point == 2));
        let z2 = euclid(&[&[0, 0]], Some(&[&[1, 0], &[0, 1]]), Some(3));
        assert!(check_balanced_euclidean(&z2).unwrap().balanced);
    }

    #[test]
    fn euclidean_errors() {
        let far = euclid(&[&[0, 0], &[5, 0]], None, Some(1));
        assert!(matches!(check_balanced_euclidean(&far), Err(Error::CutoffTooSmall { .. })));
        let no_cutoff = euclid(&[&[0, 0]], Some(&[&[1, 0], &[0, 1]]), None);
        assert!(check_balanced_euclidean(&no_cutoff).is_err());
        let tiny = euclid(&[&[0, 0]], Some(&[&[2, 0], &[0, 2]]), Some(1));
        assert!(matches!(check_balanced_euclidean(&tiny), Err(Error::CutoffTooSmall { .. })));
    }

    #[test]
    fn periodic_rectangular_lattice_with_half_shift_motif() {
        // Centered rectangular lattice written as a motif of two points on a 2x4 cell.
        let mut input = euclid(&[&[0, 0], &[1, 2]], Some(&[&[2, 0], &[0, 4]]), Some(5));
        assert!(check_balanced_euclidean(&input).unwrap().balanced);
        // A motif point off the symmetric position breaks the balance.
        input.points[1] = vec![int(1), rat(3, 2)];
        assert!(!check_balanced_euclidean(&input).unwrap().balanced);
    }
}
