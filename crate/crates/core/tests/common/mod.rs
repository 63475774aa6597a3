//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use balanced_core::assets::{bundled_lattice, paulus_adjacency};
use balanced_core::constructors::{
    antipodal_union, c7_prime, complement, cross_polytope, cube, simplex, simplex_midpoints, srg_spectral_embedding,
};
use balanced_core::lattice::kissing_configuration;
use balanced_core::{Configuration, EigenChoice, Rational};
use num_traits::{One, Zero};

/// Every exactly representable configuration the crate can build on its own
/// at modest size.
pub fn bundled_exact() -> Vec<(String, Configuration)> {
    let paulus = paulus_adjacency();
    let mut out = vec![
        ("paulus r".into(), srg_spectral_embedding(&paulus, EigenChoice::R).unwrap()),
        ("paulus s".into(), srg_spectral_embedding(&paulus, EigenChoice::S).unwrap()),
        ("paulus complement".into(), srg_spectral_embedding(&complement(&paulus), EigenChoice::R).unwrap()),
        ("C7'".into(), c7_prime().unwrap()),
        ("C7 u -C7".into(), antipodal_union(&simplex_midpoints(7).unwrap()).unwrap()),
        ("cube".into(), cube()),
        ("cross polytope 3".into(), cross_polytope(3).unwrap()),
        ("cross polytope 5".into(), cross_polytope(5).unwrap()),
        ("simplex 4".into(), simplex(4).unwrap()),
    ];
    for n in 3..=8 {
        out.push((format!("C{n}"), simplex_midpoints(n).unwrap()));
    }
    for name in ["z3", "d4", "e8"] {
        out.push((format!("kissing {name}"), kissing_configuration(&bundled_lattice(name).unwrap()).unwrap()));
    }
    out
}

pub fn r(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Inverse of a small nonsingular rational matrix by Gauss-Jordan elimination.
pub fn inverse(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero()).expect("nonsingular");
        m.swap(col, p);
        let piv = m[col][col].clone();
        m[col].iter_mut().for_each(|x| *x /= &piv);
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// All `x` with `xᵀGx = m`, found by scanning the box `|x_i| ≤ sqrt(m (G⁻¹)_ii)`.
pub fn box_short_vectors(gram: &[Vec<i64>], m: i64) -> Vec<Vec<i64>> {
    let n = gram.len();
    let g: Vec<Vec<Rational>> = gram.iter().map(|row| row.iter().map(|&x| r(x, 1)).collect()).collect();
    let inv = inverse(&g);
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let q = &inv[i][i] * r(m, 1);
            let mut b = 0i64;
            while r((b + 1) * (b + 1), 1) <= q {
                b += 1;
            }
            b
        })
        .collect();
    let mut out = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let norm: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * gram[i][j] * x[j]).sum::<i64>()).sum();
        if norm == m {
            out.push(x.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if x[k] < bounds[k] {
                x[k] += 1;
                break;
            }
            x[k] = -bounds[k];
        }
    }
}
