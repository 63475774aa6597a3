//! Spherical design strength from Gegenbauer moment sums, and the
//! "strong design with few inner products implies balanced" criterion.
//!
//! A configuration in `S^{n-1}` is a `t`-design iff
//! `Σ_{x,y} G_k^{(n)}(<x,y>) = 0` for `k = 1..t`, where `G_k^{(n)}` is the
//! Gegenbauer polynomial normalized by `G_k(1) = 1`. The moment sums are
//! always nonnegative.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};
use crate::numerics::CoordinateSet;

/// `G_k^{(n)}(u)` with `G_k(1) = 1`, via
/// `G_k = ((2k+n-4)·u·G_{k-1} - (k-1)·G_{k-2}) / (k+n-3)`.
pub fn gegenbauer_eval(n: usize, k: usize, u: &Rational) -> Result<Rational> {
    if n < 2 {
        return Err(Error::Domain(format!("Gegenbauer polynomials need dimension >= 2, got {n}")));
    }
    Ok(gegenbauer_all(n, k, u).pop().expect("at least G_0"))
}

/// `[G_0(u), ..., G_k(u)]`.
fn gegenbauer_all(n: usize, k: usize, u: &Rational) -> Vec<Rational> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(Rational::one());
    if k >= 1 {
        out.push(u.clone());
    }
    for j in 2..=k {
        let a = Rational::from_integer(BigInt::from(2 * j + n - 4));
        let b = Rational::from_integer(BigInt::from(j - 1));
        let c = Rational::from_integer(BigInt::from(j + n - 3));
        let next = (a * u * &out[j - 1] - b * &out[j - 2]) / c;
        out.push(next);
    }
    out
}

fn gegenbauer_all_f64(n: usize, k: usize, u: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(1.0);
    if k >= 1 {
        out.push(u);
    }
    for j in 2..=k {
        let next = ((2 * j + n - 4) as f64 * u * out[j - 1] - (j - 1) as f64 * out[j - 2]) / (j + n - 3) as f64;
        out.push(next);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignVerdict<T = Rational> {
    /// Largest `t <= cap` with all moments `1..=t` vanishing.
    pub strength: usize,
    pub cap: usize,
    /// `moments[k-1]` is the moment sum for degree `k`.
    pub moments: Vec<T>,
}

impl<T> DesignVerdict<T> {
    pub fn moment(&self, k: usize) -> &T {
        &self.moments[k - 1]
    }
}

impl Serialize for DesignVerdict<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DesignVerdict", 3)?;
        st.serialize_field("strength", &self.strength)?;
        st.serialize_field("cap", &self.cap)?;
        let m: BTreeMap<String, String> =
            self.moments.iter().enumerate().map(|(k, v)| (format!("{:02}", k + 1), format_rational(v))).collect();
        st.serialize_field("moments", &m)?;
        st.end()
    }
}

impl Serialize for DesignVerdict<f64> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DesignVerdict", 3)?;
        st.serialize_field("strength", &self.strength)?;
        st.serialize_field("cap", &self.cap)?;
        let m: BTreeMap<String, f64> =
            self.moments.iter().enumerate().map(|(k, v)| (format!("{:02}", k + 1), *v)).collect();
        st.serialize_field("moments", &m)?;
        st.end()
    }
}

fn strength_of(zero: impl Fn(usize) -> bool, cap: usize) -> usize {
    (1..=cap).take_while(|&k| zero(k)).count()
}

/// Inner-product histogram over all ordered pairs, including `x = y`.
fn gram_histogram(c: &Configuration) -> BTreeMap<Rational, u64> {
    let mut h = BTreeMap::new();
    for i in 0..c.len() {
        for j in 0..c.len() {
            *h.entry(c.inner(i, j).clone()).or_insert(0) += 1;
        }
    }
    h
}

/// Exact design strength up to `cap`.
///
/// In dimension 1 (the sphere `S^0 = {±1}`) even polynomials are constant, so
/// only odd degrees carry information; there the moment for degree `k` is
/// `(Σ_x x^k)^2 = Σ_{x,y} <x,y>^k` for odd `k` and zero for even `k`.
pub fn design_strength(c: &Configuration, cap: usize) -> Result<DesignVerdict> {
    if cap == 0 {
        return Err(Error::Domain("cap must be at least 1".into()));
    }
    let hist = gram_histogram(c);
    let n = c.ambient_dim();
    let mut moments = vec![Rational::zero(); cap];
    for (u, &count) in &hist {
        let w = Rational::from_integer(BigInt::from(count));
        if n >= 2 {
            let g = gegenbauer_all(n, cap, u);
            for k in 1..=cap {
                moments[k - 1] += &w * &g[k];
            }
        } else {
            let mut p = Rational::one();
            for k in 1..=cap {
                p *= u;
                if k % 2 == 1 {
                    moments[k - 1] += &w * &p;
                }
            }
        }
    }
    debug_assert!(moments.iter().all(|m| !m.is_negative()), "Gegenbauer moments must be nonnegative");
    let strength = strength_of(|k| moments[k - 1].is_zero(), cap);
    Ok(DesignVerdict { strength, cap, moments })
}

/// Float design strength for configurations with irrational inner products.
/// A moment counts as zero when `|m_k| <= tol * N^2`.
pub fn design_strength_float(p: &CoordinateSet, cap: usize, tol: f64) -> Result<DesignVerdict<f64>> {
    if cap == 0 {
        return Err(Error::Domain("cap must be at least 1".into()));
    }
    let n = p.span_dim(tol);
    let g = p.gram();
    let npts = p.len();
    let mut moments = vec![0.0; cap];
    for row in &g {
        for &u in row {
            if n >= 2 {
                let gk = gegenbauer_all_f64(n, cap, u);
                for k in 1..=cap {
                    moments[k - 1] += gk[k];
                }
            } else {
                for k in (1..=cap).step_by(2) {
                    moments[k - 1] += u.powi(k as i32);
                }
            }
        }
    }
    let scale = (npts * npts) as f64;
    let strength = strength_of(|k| moments[k - 1].abs() <= tol * scale, cap);
    Ok(DesignVerdict { strength, cap, moments })
}

/// Average of the monomial `x^alpha` over `S^{n-1}`: zero if any exponent is
/// odd, else `Π (alpha_i - 1)!! / (n (n+2) ... (n + |alpha| - 2))`.
pub fn sphere_monomial_average(n: usize, alpha: &[usize]) -> Rational {
    if alpha.iter().any(|a| a % 2 == 1) {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    for &a in alpha {
        let mut k = a as i64 - 1;
        while k > 1 {
            num *= k;
            k -= 2;
        }
    }
    let total: usize = alpha.iter().sum();
    let mut den = BigInt::one();
    let mut k = n;
    while k + 2 <= n + total {
        den *= k;
        k += 2;
    }
    Rational::new(num, den)
}

/// Per-point distance counts against design strength.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremOneVerdict {
    /// `k_i = |{<x_i, y> : y in C, y != ±x_i}|`.
    pub per_point_k: Vec<usize>,
    pub strength: usize,
    pub cap: usize,
    pub applies: bool,
}

impl TheoremOneVerdict {
    pub fn max_k(&self) -> usize {
        self.per_point_k.iter().copied().max().unwrap_or(0)
    }
}

/// Number of distinct inner products from each point, excluding `±1`. In a
/// valid Gram matrix `<x, y> = -1` forces `y = -x` and `+1` forces a
/// duplicate, so both values are dropped outright.
pub fn distance_counts(c: &Configuration) -> Vec<usize> {
    let one = Rational::one();
    let minus_one = -Rational::one();
    (0..c.len())
        .map(|i| {
            let mut seen = std::collections::BTreeSet::new();
            for j in (0..c.len()).filter(|&j| j != i) {
                let u = c.inner(i, j);
                if u != &one && u != &minus_one {
                    seen.insert(u);
                }
            }
            seen.len()
        })
        .collect()
}

pub fn theorem1_check(c: &Configuration, cap: usize) -> Result<TheoremOneVerdict> {
    let d = design_strength(c, cap)?;
    let per_point_k = distance_counts(c);
    let applies = per_point_k.iter().all(|&k| k <= d.strength);
    Ok(TheoremOneVerdict { per_point_k, strength: d.strength, cap, applies })
}

pub fn theorem1_check_float(p: &CoordinateSet, cap: usize, tol: f64) -> Result<TheoremOneVerdict> {
    let d = design_strength_float(p, cap, tol)?;
    let g = p.gram();
    let per_point_k = (0..p.len())
        .map(|i| {
            let mut vals: Vec<f64> =
                (0..p.len()).filter(|&j| j != i).map(|j| g[i][j]).filter(|u| (u.abs() - 1.0).abs() > tol).collect();
            vals.sort_by(f64::total_cmp);
            vals.dedup_by(|a, b| (*a - *b).abs() <= tol);
            vals.len()
        })
        .collect::<Vec<_>>();
    let applies = per_point_k.iter().all(|&k| k <= d.strength);
    Ok(TheoremOneVerdict { per_point_k, strength: d.strength, cap, applies })
}
