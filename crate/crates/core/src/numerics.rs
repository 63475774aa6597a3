//! Floating-point companion to the exact pipeline: coordinates from a Gram
//! matrix, inverse-power energies and forces, finite-difference gradient
//! checks, the cube facet-rotation demonstration, and a tolerance-based
//! balance check for configurations with irrational inner products.
//!
//! Pair potential is `r^{-s}`; the force on `p_i` from `p_j` is
//! `s·r^{-(s+1)}` along `p_i - p_j` (repulsive).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::balance::{BalanceReport, ShellViolation};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact::{ldl_decompose, to_f64};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Points in `R^r` as double-precision coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateSet {
    points: Vec<Vec<f64>>,
    label: Option<String>,
}

impl CoordinateSet {
    pub fn new(points: Vec<Vec<f64>>, label: Option<String>) -> Result<Self> {
        let d = points.first().map_or(0, Vec::len);
        if let Some(i) = points.iter().position(|p| p.len() != d) {
            return Err(Error::Parse(format!("coords[{i}] has dimension {}, expected {d}", points[i].len())));
        }
        if let Some(i) = points.iter().position(|p| p.iter().any(|x| !x.is_finite())) {
            return Err(Error::Parse(format!("coords[{i}] has a non-finite entry")));
        }
        Ok(CoordinateSet { points, label })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn gram(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| self.points.iter().map(|q| fdot(p, q)).collect()).collect()
    }

    /// Numerical dimension of the span (pivoted Cholesky on the Gram matrix).
    pub fn span_dim(&self, tol: f64) -> usize {
        let mut g = self.gram();
        let n = g.len();
        let mut used = vec![false; n];
        let mut rank = 0;
        for _ in 0..n {
            let Some(p) = (0..n).filter(|&i| !used[i]).max_by(|&a, &b| g[a][a].total_cmp(&g[b][b])) else { break };
            let piv = g[p][p];
            if piv <= tol.max(1e-12) {
                break;
            }
            used[p] = true;
            rank += 1;
            let col: Vec<f64> = (0..n).map(|i| g[i][p]).collect();
            for i in 0..n {
                for j in 0..n {
                    g[i][j] -= col[i] * col[j] / piv;
                }
            }
        }
        rank
    }
}

#[inline]
fn fdot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn normalize(v: &mut [f64]) {
    let n = fdot(v, v).sqrt();
    v.iter_mut().for_each(|x| *x /= n);
}

/// Exact `LDL^T` of the Gram matrix, then square roots of the pivots.
/// Point `perm[i]` gets row `i` of `L·sqrt(D)`, restricted to the nonzero
/// pivots, so the result lives in `R^rank`.
pub fn coordinates_from_gram(c: &Configuration) -> Result<CoordinateSet> {
    let f = ldl_decompose(c.gram().matrix())?;
    if let Some(k) = f.d.iter().position(|x| x < &num_traits::Zero::zero()) {
        return Err(Error::NotPsd { pivot: k, value: crate::exact::format_rational(&f.d[k]) });
    }
    let cols: Vec<usize> = (0..f.d.len()).filter(|&k| !num_traits::Zero::is_zero(&f.d[k])).collect();
    let roots: Vec<f64> = cols.iter().map(|&k| to_f64(&f.d[k]).sqrt()).collect();
    let n = c.len();
    let mut points = vec![Vec::new(); n];
    for i in 0..n {
        points[f.perm[i]] = cols.iter().zip(&roots).map(|(&k, r)| to_f64(f.l.get(i, k)) * r).collect();
    }
    CoordinateSet::new(points, c.label().map(str::to_owned))
}

/// `max |<p_i, p_j> - G[i][j]|`.
pub fn reconstruction_residual(c: &Configuration, p: &CoordinateSet) -> f64 {
    let g = p.gram();
    let mut worst = 0.0f64;
    for i in 0..c.len() {
        for j in 0..c.len() {
            worst = worst.max((g[i][j] - to_f64(c.inner(i, j))).abs());
        }
    }
    worst
}

fn check_distinct(p: &CoordinateSet) -> Result<()> {
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if dist(&p.points[i], &p.points[j]) == 0.0 {
                return Err(Error::CoincidentPoints(i, j));
            }
        }
    }
    Ok(())
}

/// `Σ_{i<j} |p_i - p_j|^{-s}`.
pub fn energy(p: &CoordinateSet, s: f64) -> Result<f64> {
    check_distinct(p)?;
    Ok(energy_unchecked(p, s))
}

fn energy_unchecked(p: &CoordinateSet, s: f64) -> f64 {
    let pts = &p.points;
    let mut total = 0.0;
    for i in 0..pts.len() {
        let mut row = 0.0;
        for j in i + 1..pts.len() {
            row += dist(&pts[i], &pts[j]).powf(-s);
        }
        total += row;
    }
    total
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForceReport {
    pub exponent: f64,
    /// Net force on each point with its radial component removed.
    pub tangential: Vec<Vec<f64>>,
    pub max_tangential_norm: f64,
}

fn net_forces(p: &CoordinateSet, s: f64) -> Vec<Vec<f64>> {
    let pts = &p.points;
    let d = p.dim();
    pts.iter()
        .enumerate()
        .map(|(i, x)| {
            let mut f = vec![0.0; d];
            for (j, y) in pts.iter().enumerate() {
                if i == j {
                    continue;
                }
                let r = dist(x, y);
                let mag = s * r.powf(-(s + 2.0));
                for t in 0..d {
                    f[t] += mag * (x[t] - y[t]);
                }
            }
            f
        })
        .collect()
}

fn tangential_part(x: &[f64], f: &[f64]) -> Vec<f64> {
    let radial = fdot(f, x) / fdot(x, x);
    f.iter().zip(x).map(|(a, b)| a - radial * b).collect()
}

pub fn tangential_force(p: &CoordinateSet, s: f64) -> Result<ForceReport> {
    check_distinct(p)?;
    let forces = net_forces(p, s);
    let tangential: Vec<Vec<f64>> = p.points.iter().zip(&forces).map(|(x, f)| tangential_part(x, f)).collect();
    let max_tangential_norm = tangential.iter().map(|t| fdot(t, t).sqrt()).fold(0.0, f64::max);
    Ok(ForceReport { exponent: s, tangential, max_tangential_norm })
}

/// Finite-difference step used by [`gradient_check`].
pub const FD_STEP: f64 = 1e-6;

/// Compares the analytic directional derivative `-Σ_i <F_i, V_i>` with a
/// central difference of the energy along random tangent fields `V`
/// (retracting back onto the sphere). The error for each direction is
/// `|fd - analytic| / Σ_i |F_i|·|V_i|`; the maximum over directions is
/// returned. `F_i` here is the full net force, so the scale stays meaningful
/// at balanced configurations where the tangential part vanishes.
pub fn gradient_check(p: &CoordinateSet, s: f64) -> Result<f64> {
    check_distinct(p)?;
    let n = p.len();
    let d = p.dim();
    if n == 0 || d == 0 {
        return Ok(0.0);
    }
    let forces = net_forces(p, s);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ba1a);
    let mut worst = 0.0f64;
    for _ in 0..6 {
        let field: Vec<Vec<f64>> = p
            .points
            .iter()
            .map(|x| {
                let raw: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let mut v = tangential_part(x, &raw);
                let norm = fdot(&v, &v).sqrt();
                if norm > 0.0 {
                    v.iter_mut().for_each(|t| *t /= norm * (n as f64).sqrt());
                }
                v
            })
            .collect();
        let moved = |h: f64| {
            let points = p
                .points
                .iter()
                .zip(&field)
                .map(|(x, v)| {
                    let mut y: Vec<f64> = x.iter().zip(v).map(|(a, b)| a + h * b).collect();
                    normalize(&mut y);
                    y
                })
                .collect();
            CoordinateSet { points, label: None }
        };
        let fd = (energy_unchecked(&moved(FD_STEP), s) - energy_unchecked(&moved(-FD_STEP), s)) / (2.0 * FD_STEP);
        let analytic: f64 = -forces.iter().zip(&field).map(|(f, v)| fdot(f, v)).sum::<f64>();
        let scale: f64 = forces.iter().zip(&field).map(|(f, v)| fdot(f, f).sqrt() * fdot(v, v).sqrt()).sum();
        let err = if scale > 0.0 { (fd - analytic).abs() / scale } else { (fd - analytic).abs() };
        worst = worst.max(err);
    }
    Ok(worst)
}

/// The cube `(±1,±1,±1)/√3` with its top facet rotated by `theta` about the
/// vertical axis. `theta = π/4` gives the square antiprism.
pub fn rotated_cube(theta: f64) -> CoordinateSet {
    let h = 1.0 / 3f64.sqrt();
    let r = (2.0f64 / 3.0).sqrt();
    let mut points = Vec::with_capacity(8);
    for (z, phase) in [(-h, 0.0), (h, theta)] {
        for k in 0..4 {
            let a = std::f64::consts::FRAC_PI_4 + k as f64 * std::f64::consts::FRAC_PI_2 + phase;
            points.push(vec![r * a.cos(), r * a.sin(), z]);
        }
    }
    CoordinateSet { points, label: Some(format!("cube with top facet rotated by {theta}")) }
}

pub fn cube_facet_rotation(theta: f64, s: f64) -> Result<f64> {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(Error::Domain(format!("rotation angle {theta} outside [0, pi/2]")));
    }
    energy(&rotated_cube(theta), s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaddleDemo {
    pub exponent: f64,
    pub energy_at_zero: f64,
    /// Central difference of `E(θ)` at `θ = 0`.
    pub slope_at_zero: f64,
    pub best_theta: f64,
    pub best_energy: f64,
    pub antiprism_energy: f64,
}

/// Samples `E(θ)` on `(0, π/4]` to show the cube is a critical point that is
/// not a local minimum.
pub fn saddle_demo(s: f64, samples: usize) -> Result<SaddleDemo> {
    let h = 1e-4;
    let e0 = cube_facet_rotation(0.0, s)?;
    let slope = (cube_facet_rotation(h, s)? - energy(&rotated_cube(-h), s)?) / (2.0 * h);
    let quarter = std::f64::consts::FRAC_PI_4;
    let mut best = (quarter, cube_facet_rotation(quarter, s)?);
    for k in 1..=samples.max(1) {
        let theta = quarter * k as f64 / samples.max(1) as f64;
        let e = cube_facet_rotation(theta, s)?;
        if e < best.1 {
            best = (theta, e);
        }
    }
    Ok(SaddleDemo {
        exponent: s,
        energy_at_zero: e0,
        slope_at_zero: slope,
        best_theta: best.0,
        best_energy: best.1,
        antiprism_energy: cube_facet_rotation(quarter, s)?,
    })
}

/// Shell-sum test in floats. Inner products within `tol` form one shell; two
/// shells closer than `10·tol` are rejected as ambiguous. A shell passes when
/// `|S_u(x) - <S_u(x), x>·x| <= tol·|shell|`.
pub fn check_balanced_float(p: &CoordinateSet, tol: f64) -> Result<BalanceReport<f64>> {
    if tol <= 0.0 {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let g = p.gram();
    let n = p.len();
    let mut violations = Vec::new();
    for i in 0..n {
        for (u, members) in float_shells(&g, i, tol)? {
            let d = p.dim();
            let mut sum = vec![0.0; d];
            for &j in &members {
                for t in 0..d {
                    sum[t] += p.points[j][t];
                }
            }
            let resid = tangential_part(&p.points[i], &sum);
            if fdot(&resid, &resid).sqrt() > tol * members.len() as f64 {
                let c = fdot(&sum, &p.points[i]);
                let deviation = (0..n).map(|m| members.iter().map(|&j| g[j][m]).sum::<f64>() - c * g[i][m]).collect();
                violations.push(ShellViolation { point: i, shell: u, deviation });
            }
        }
    }
    Ok(BalanceReport { balanced: violations.is_empty(), violations })
}

/// Float shells around point `i`, ascending by inner product (value is the
/// shell mean).
pub fn float_shells(g: &[Vec<f64>], i: usize, tol: f64) -> Result<Vec<(f64, Vec<usize>)>> {
    let mut others: Vec<(f64, usize)> = (0..g.len()).filter(|&j| j != i).map(|j| (g[i][j], j)).collect();
    others.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut shells: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (u, j) in others {
        let gap = u - last;
        if gap <= tol {
            shells.last_mut().expect("shell exists").1.push(j);
        } else {
            if gap <= 10.0 * tol {
                return Err(Error::AmbiguousShells { point: i, a: last, b: u });
            }
            shells.push((u, vec![j]));
        }
        last = u;
    }
    for (u, members) in &mut shells {
        *u = members.iter().map(|&j| g[i][j]).sum::<f64>() / members.len() as f64;
        members.sort_unstable();
    }
    Ok(shells)
}
