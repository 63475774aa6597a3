//! Named configurations: strongly regular graph embeddings, simplex edge
//! midpoints, tetrahedron inversion, antipodal unions and small polytopes.

use std::f64::consts::PI;

use num_integer::Roots;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact::{int, matrix_rank, rat, Matrix, Rational};
use crate::numerics::CoordinateSet;

/// Parameters `(N, k, λ, μ)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

/// Integer eigenvalues other than `k`, with multiplicities; `r > s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrgSpectrum {
    pub r: i64,
    pub s: i64,
    pub mult_r: usize,
    pub mult_s: usize,
}

impl SrgParams {
    /// `k(k − λ − 1) = (N − k − 1)μ`.
    pub fn is_feasible(&self) -> bool {
        let (n, k, l, m) = (self.n as i64, self.k as i64, self.lambda as i64, self.mu as i64);
        k * (k - l - 1) == (n - k - 1) * m
    }

    /// Complete multipartite (`μ = k`) or a disjoint union of cliques (`μ = 0`).
    pub fn is_degenerate(&self) -> bool {
        self.mu == self.k || self.mu == 0
    }

    pub fn spectrum(&self) -> Result<SrgSpectrum> {
        let (n, k, l, m) = (self.n as i64, self.k as i64, self.lambda as i64, self.mu as i64);
        let b = l - m;
        let disc = b * b + 4 * (k - m);
        let root = if disc >= 0 { disc.sqrt() } else { -1 };
        if root < 0 || root * root != disc {
            return Err(Error::IrrationalEigenvalues(disc));
        }
        if root == 0 {
            return Err(Error::Domain("degenerate graph: repeated eigenvalue".into()));
        }
        // b and root have the same parity since disc ≡ b² (mod 4)
        let r = (b + root) / 2;
        let s = (b - root) / 2;
        let num = 2 * k + (n - 1) * b;
        let twice = (n - 1) * (r - s) - num;
        if twice % (r - s) != 0 || (twice / (r - s)) % 2 != 0 || twice < 0 {
            return Err(Error::Inconsistent(format!("non-integral multiplicity for {self:?}")));
        }
        let mult_r = (twice / (r - s) / 2) as usize;
        let mult_s = (n - 1) as usize - mult_r;
        Ok(SrgSpectrum { r, s, mult_r, mult_s })
    }
}

fn check_simple_graph(adj: &[Vec<u8>]) -> Result<()> {
    let n = adj.len();
    for (i, row) in adj.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare { row: i, len: row.len(), expected: n });
        }
        if row[i] != 0 {
            return Err(Error::Domain(format!("vertex {i} has a loop")));
        }
        for j in 0..n {
            if row[j] > 1 {
                return Err(Error::Parse(format!("entry ({i}, {j}) is not 0 or 1")));
            }
            if row[j] != adj[j][i] {
                return Err(Error::NotSymmetric(i.min(j), i.max(j)));
            }
        }
    }
    Ok(())
}

/// Reads off `(N, k, λ, μ)`, checking regularity and constancy of common
/// neighbour counts. Errors name the first offending vertex or pair.
pub fn srg_params(adj: &[Vec<u8>]) -> Result<SrgParams> {
    check_simple_graph(adj)?;
    let n = adj.len();
    if n == 0 {
        return Err(Error::NotStronglyRegular("empty graph".into()));
    }
    let deg: Vec<usize> = adj.iter().map(|r| r.iter().filter(|&&x| x == 1).count()).collect();
    let k = deg[0];
    if let Some(v) = deg.iter().position(|&d| d != k) {
        return Err(Error::NotStronglyRegular(format!("vertex {v} has degree {}, vertex 0 has {k}", deg[v])));
    }
    let mut lambda = None;
    let mut mu = None;
    for i in 0..n {
        for j in i + 1..n {
            let common = (0..n).filter(|&w| adj[i][w] == 1 && adj[j][w] == 1).count();
            let (slot, name) = if adj[i][j] == 1 { (&mut lambda, "lambda") } else { (&mut mu, "mu") };
            match *slot {
                None => *slot = Some(common),
                Some(v) if v != common => {
                    return Err(Error::NotStronglyRegular(format!(
                        "pair ({i}, {j}) has {common} common neighbours, expected {name} = {v}"
                    )))
                }
                _ => {}
            }
        }
    }
    let (Some(lambda), Some(mu)) = (lambda, mu) else {
        return Err(Error::NotStronglyRegular("complete or edgeless graph".into()));
    };
    Ok(SrgParams { n, k, lambda, mu })
}

/// Which non-principal eigenspace to project onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenChoice {
    /// The larger eigenvalue `r`.
    #[default]
    R,
    S,
}

/// Unit-normalized projection of the standard basis onto an eigenspace.
///
/// For choice `r` the projection is `(A − sI − ((k − s)/N)J)/(r − s)`; its
/// diagonal is `m_r/N`, so the Gram matrix is the projection times `N/m_r`.
pub fn srg_spectral_embedding(adj: &[Vec<u8>], choice: EigenChoice) -> Result<Configuration> {
    let p = srg_params(adj)?;
    if p.is_degenerate() {
        return Err(Error::Domain(format!(
            "degenerate strongly regular graph {:?} (complete multipartite or union of cliques)",
            (p.n, p.k, p.lambda, p.mu)
        )));
    }
    let sp = p.spectrum()?;
    let (this, other, mult) = match choice {
        EigenChoice::R => (sp.r, sp.s, sp.mult_r),
        EigenChoice::S => (sp.s, sp.r, sp.mult_s),
    };
    if mult < 2 {
        return Err(Error::Domain(format!("eigenspace of {this} has multiplicity {mult}")));
    }
    let n = p.n as i64;
    let shift = rat(p.k as i64 - other, n);
    let denom = int(this - other);
    let proj = Matrix::from_fn(p.n, p.n, |i, j| {
        let a = int(adj[i][j] as i64) - if i == j { int(other) } else { Rational::zero() };
        (a - &shift) / &denom
    });
    let diag = proj.get(0, 0).clone();
    if diag != rat(mult as i64, n) || (0..p.n).any(|i| proj.get(i, i) != &diag) {
        return Err(Error::Inconsistent("projection diagonal differs from m/N".into()));
    }
    let rank = matrix_rank(&proj);
    if rank != mult {
        return Err(Error::Inconsistent(format!("projection rank {rank} but multiplicity {mult}")));
    }
    let scale = Rational::one() / diag;
    let gram = Matrix::from_fn(p.n, p.n, |i, j| proj.get(i, j) * &scale);
    let c = Configuration::new(gram, Some(format!("SRG{:?} eigenvalue {this}", (p.n, p.k, p.lambda, p.mu))))?;
    debug_assert_eq!(c.ambient_dim(), mult);
    Ok(c)
}

pub fn complement(adj: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = adj.len();
    (0..n).map(|i| (0..n).map(|j| u8::from(i != j && adj[i][j] == 0)).collect()).collect()
}

/// The 2-subsets of `{1..m}` in lexicographic order.
fn pairs(m: usize) -> Vec<(usize, usize)> {
    (1..=m).flat_map(|a| (a + 1..=m).map(move |b| (a, b))).collect()
}

fn pair_label(a: usize, b: usize, m: usize) -> String {
    if m <= 9 {
        format!("{a}{b}")
    } else {
        format!("{a}-{b}")
    }
}

/// Normalized midpoints of the edges of a regular simplex in `R^n`.
/// Points are the pairs `{a, b} ⊂ {1..n+1}`; inner products are
/// `(n−3)/(2n−2)` for pairs sharing a vertex and `−2/(n−1)` for disjoint pairs.
pub fn simplex_midpoints(n: usize) -> Result<Configuration> {
    if n < 3 {
        return Err(Error::Domain(format!("simplex midpoints need n >= 3, got {n}")));
    }
    let m = n + 1;
    let ps = pairs(m);
    let n_i = n as i64;
    let share = rat(n_i - 3, 2 * n_i - 2);
    let disjoint = rat(-2, n_i - 1);
    let gram = Matrix::from_fn(ps.len(), ps.len(), |i, j| {
        let (p, q) = (ps[i], ps[j]);
        let common = [p.0, p.1].iter().filter(|x| **x == q.0 || **x == q.1).count();
        match common {
            2 => Rational::one(),
            1 => share.clone(),
            _ => disjoint.clone(),
        }
    });
    let labels = ps.iter().map(|&(a, b)| pair_label(a, b, m)).collect();
    Configuration::new(gram, Some(format!("C{n}")))?.with_labels(labels)
}

fn is_minus_third(x: &Rational) -> bool {
    *x == rat(-1, 3)
}

/// Replaces four points with pairwise inner product `−1/3` by their antipodes.
pub fn invert_tetrahedron(c: &Configuration, tetra: [usize; 4]) -> Result<Configuration> {
    for &t in &tetra {
        c.check_index(t)?;
    }
    for a in 0..4 {
        for b in a + 1..4 {
            if !is_minus_third(c.inner(tetra[a], tetra[b])) {
                return Err(Error::NotTetrahedron(format!(
                    "points {} and {} have inner product {}",
                    tetra[a],
                    tetra[b],
                    crate::exact::format_rational(c.inner(tetra[a], tetra[b]))
                )));
            }
        }
    }
    let sign = |i: usize| tetra.contains(&i);
    let n = c.len();
    let gram = Matrix::from_fn(n, n, |i, j| {
        let v = c.inner(i, j).clone();
        if sign(i) != sign(j) {
            -v
        } else {
            v
        }
    });
    let label = c.label().map(|l| format!("{l}'")).unwrap_or_else(|| "inverted".into());
    let out = Configuration::new(gram, Some(label))?;
    match c.labels() {
        Some(l) => out.with_labels(
            l.iter().enumerate().map(|(i, s)| if sign(i) { format!("-{s}") } else { s.clone() }).collect(),
        ),
        None => Ok(out),
    }
}

/// C₇ with the tetrahedron `{12, 34, 56, 78}` replaced by its antipode.
pub fn c7_prime() -> Result<Configuration> {
    let c7 = simplex_midpoints(7)?;
    let labels = c7.labels().expect("labeled");
    let find = |s: &str| labels.iter().position(|l| l == s).expect("pair label");
    let tetra = [find("12"), find("34"), find("56"), find("78")];
    Ok(invert_tetrahedron(&c7, tetra)?.with_label("C7'"))
}

/// Number of 4-subsets containing `i` with all six inner products `−1/3`.
pub fn count_tetrahedra(c: &Configuration, i: usize) -> Result<usize> {
    c.check_index(i)?;
    let nb: Vec<usize> = (0..c.len()).filter(|&j| j != i && is_minus_third(c.inner(i, j))).collect();
    let mut count = 0;
    for (a, &x) in nb.iter().enumerate() {
        for (b, &y) in nb.iter().enumerate().skip(a + 1) {
            if !is_minus_third(c.inner(x, y)) {
                continue;
            }
            count +=
                nb[b + 1..].iter().filter(|&&z| is_minus_third(c.inner(x, z)) && is_minus_third(c.inner(y, z))).count();
        }
    }
    Ok(count)
}

/// `C ∪ −C`, with Gram `[[G, −G], [−G, G]]`.
pub fn antipodal_union(c: &Configuration) -> Result<Configuration> {
    let n = c.len();
    let minus_one = -Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            if *c.inner(i, j) == minus_one {
                return Err(Error::AntipodePresent(i, j));
            }
        }
    }
    let gram = Matrix::from_fn(2 * n, 2 * n, |i, j| {
        let v = c.inner(i % n, j % n).clone();
        if (i < n) != (j < n) {
            -v
        } else {
            v
        }
    });
    let label = c.label().map_or_else(|| "antipodal union".to_string(), |l| format!("{l} ∪ -{l}"));
    let out = Configuration::new(gram, Some(label))?;
    match c.labels() {
        Some(l) => out.with_labels(l.iter().cloned().chain(l.iter().map(|s| format!("-{s}"))).collect()),
        None => Ok(out),
    }
}

/// Small standard configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polytope {
    Cube,
    CrossPolytope(usize),
    Simplex(usize),
    PolesAndRing(usize),
}

impl std::str::FromStr for Polytope {
    type Err = Error;

    /// Accepts `cube`, `cross-polytope:N`, `simplex:N`, `poles-and-ring:K`
    /// (underscores are accepted in place of hyphens).
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        let (name, arg) = match norm.split_once(':') {
            Some((a, b)) => (a.to_string(), Some(b.to_string())),
            None => (norm.clone(), None),
        };
        let param = || -> Result<usize> {
            arg.as_deref()
                .ok_or_else(|| Error::Parse(format!("polytope `{name}` needs a parameter, e.g. `{name}:4`")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad parameter in `{s}`")))
        };
        match name.as_str() {
            "cube" => Ok(Polytope::Cube),
            "cross-polytope" | "cross" => Ok(Polytope::CrossPolytope(param()?)),
            "simplex" => Ok(Polytope::Simplex(param()?)),
            "poles-and-ring" => Ok(Polytope::PolesAndRing(param()?)),
            _ => Err(Error::Parse(format!("unknown polytope `{s}`"))),
        }
    }
}

/// Either an exact configuration or, for irrational inner products, coordinates.
#[derive(Debug, Clone)]
pub enum PolytopeConfig {
    Exact(Configuration),
    Float(CoordinateSet),
}

pub fn standard_polytope(p: Polytope) -> Result<PolytopeConfig> {
    match p {
        Polytope::Cube => Ok(PolytopeConfig::Exact(cube())),
        Polytope::CrossPolytope(n) => cross_polytope(n).map(PolytopeConfig::Exact),
        Polytope::Simplex(n) => simplex(n).map(PolytopeConfig::Exact),
        Polytope::PolesAndRing(k) => poles_and_ring(k).map(PolytopeConfig::Float),
    }
}

/// Vertices `(±1, ±1, ±1)/√3`, in binary order of the sign pattern.
pub fn cube() -> Configuration {
    let sign = |m: usize, b: usize| if m >> b & 1 == 1 { -1i64 } else { 1 };
    let gram = Matrix::from_fn(8, 8, |i, j| rat((0..3).map(|b| sign(i, b) * sign(j, b)).sum(), 3));
    Configuration::new(gram, Some("cube".into())).expect("cube Gram is valid")
}

/// `±e_1, …, ±e_n`, ordered `e_1, −e_1, e_2, …`.
pub fn cross_polytope(n: usize) -> Result<Configuration> {
    if n == 0 {
        return Err(Error::Domain("cross polytope needs n >= 1".into()));
    }
    let gram = Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if i / 2 != j / 2 {
            Rational::zero()
        } else if i == j {
            Rational::one()
        } else {
            -Rational::one()
        }
    });
    Configuration::new(gram, Some(format!("cross polytope {n}")))
}

/// Regular simplex: `n + 1` points in `R^n` with inner products `−1/n`.
pub fn simplex(n: usize) -> Result<Configuration> {
    if n == 0 {
        return Err(Error::Domain("simplex needs n >= 1".into()));
    }
    let off = rat(-1, n as i64);
    let gram = Matrix::from_fn(n + 1, n + 1, |i, j| if i == j { Rational::one() } else { off.clone() });
    Configuration::new(gram, Some(format!("simplex {n}")))
}

/// North pole, south pole, and `k` equally spaced equatorial points.
pub fn poles_and_ring(k: usize) -> Result<CoordinateSet> {
    if k == 0 {
        return Err(Error::Domain("ring needs k >= 1".into()));
    }
    let mut pts = vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, -1.0]];
    for j in 0..k {
        let a = 2.0 * PI * j as f64 / k as f64;
        pts.push(vec![a.cos(), a.sin(), 0.0]);
    }
    CoordinateSet::new(pts, Some(format!("poles and ring {k}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::inner_product_spectrum;

    fn cycle(n: usize) -> Vec<Vec<u8>> {
        (0..n).map(|i| (0..n).map(|j| u8::from((i + 1) % n == j || (j + 1) % n == i)).collect()).collect()
    }

    fn petersen() -> Vec<Vec<u8>> {
        let ps = pairs(5);
        ps.iter()
            .map(|p| ps.iter().map(|q| u8::from(p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1)).collect())
            .collect()
    }

    #[test]
    fn petersen_params() {
        let p = srg_params(&petersen()).unwrap();
        assert_eq!(p, SrgParams { n: 10, k: 3, lambda: 0, mu: 1 });
        assert!(p.is_feasible());
        let sp = p.spectrum().unwrap();
        assert_eq!((sp.r, sp.s, sp.mult_r, sp.mult_s), (1, -2, 5, 4));
    }

    #[test]
    fn petersen_embeddings() {
        let c = srg_spectral_embedding(&petersen(), EigenChoice::R).unwrap();
        assert_eq!(c.ambient_dim(), 5);
        let c = srg_spectral_embedding(&petersen(), EigenChoice::S).unwrap();
        assert_eq!(c.ambient_dim(), 4);
    }

    #[test]
    fn non_srg_rejected() {
        let path = vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]];
        assert!(matches!(srg_params(&path), Err(Error::NotStronglyRegular(_))));
        assert!(matches!(srg_spectral_embedding(&cycle(5), EigenChoice::R), Err(Error::IrrationalEigenvalues(5))));
        // K_{3,3} is complete bipartite
        let k33: Vec<Vec<u8>> = (0..6).map(|i| (0..6).map(|j| u8::from(i / 3 != j / 3)).collect()).collect();
        assert!(srg_params(&k33).unwrap().is_degenerate());
        assert!(srg_spectral_embedding(&k33, EigenChoice::R).is_err());
    }

    #[test]
    fn midpoint_spectra() {
        assert_eq!(inner_product_spectrum(&simplex_midpoints(7).unwrap()), vec![rat(-1, 3), rat(1, 3)]);
        assert_eq!(inner_product_spectrum(&simplex_midpoints(3).unwrap()), vec![int(-1), int(0)]);
        assert_eq!(inner_product_spectrum(&simplex_midpoints(4).unwrap()), vec![rat(-2, 3), rat(1, 6)]);
        assert_eq!(simplex_midpoints(4).unwrap().ambient_dim(), 4);
        assert!(simplex_midpoints(2).is_err());
        assert_eq!(simplex_midpoints(9).unwrap().labels().unwrap()[0], "1-2");
    }

    #[test]
    fn c7_prime_tetrahedra() {
        let c = c7_prime().unwrap();
        assert_eq!(inner_product_spectrum(&c), vec![rat(-1, 3), rat(1, 3)]);
        let l = c.labels().unwrap();
        let i12 = l.iter().position(|s| s == "-12").unwrap();
        let i13 = l.iter().position(|s| s == "13").unwrap();
        assert_eq!(count_tetrahedra(&c, i12).unwrap(), 7);
        assert_eq!(count_tetrahedra(&c, i13).unwrap(), 11);
        let c7 = simplex_midpoints(7).unwrap();
        assert_eq!(count_tetrahedra(&c7, 0).unwrap(), 15);
    }

    #[test]
    fn bad_tetrahedron() {
        let c7 = simplex_midpoints(7).unwrap();
        // 12 and 13 share a vertex: +1/3
        assert!(matches!(invert_tetrahedron(&c7, [0, 1, 20, 27]), Err(Error::NotTetrahedron(_))));
    }

    #[test]
    fn antipodal() {
        let u = antipodal_union(&simplex_midpoints(7).unwrap()).unwrap();
        assert_eq!(u.len(), 56);
        assert_eq!(inner_product_spectrum(&u), vec![int(-1), rat(-1, 3), rat(1, 3)]);
        assert!(matches!(antipodal_union(&u), Err(Error::AntipodePresent(_, _))));
        let one = Configuration::new(Matrix::identity(1), None).unwrap();
        assert_eq!(inner_product_spectrum(&antipodal_union(&one).unwrap()), vec![int(-1)]);
    }

    #[test]
    fn polytopes() {
        assert_eq!(inner_product_spectrum(&cube()), vec![int(-1), rat(-1, 3), rat(1, 3)]);
        assert_eq!(inner_product_spectrum(&cross_polytope(4).unwrap()), vec![int(-1), int(0)]);
        assert_eq!(inner_product_spectrum(&simplex(5).unwrap()), vec![rat(-1, 5)]);
        assert_eq!(poles_and_ring(5).unwrap().len(), 7);
        assert_eq!("poles_and_ring:5".parse::<Polytope>().unwrap(), Polytope::PolesAndRing(5));
        assert!("dodecahedron".parse::<Polytope>().is_err());
    }
}
