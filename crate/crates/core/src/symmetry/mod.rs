//! Symmetry groups of configurations.
//!
//! A permutation of the points that preserves the Gram matrix extends to a
//! unique orthogonal map of their span, so the isometry group of a
//! configuration is computed as the automorphism group of an edge-colored
//! complete graph whose colors are the distinct inner products.

mod perm;
mod search;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use perm::{Permutation, PermutationGroup, StabilizerChain};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact::{matrix_rank, Matrix, Rational};

/// Complete graph with colored edges and an initial vertex partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    /// Row-major `n × n`; the diagonal holds `num_colors - 1`, a color no
    /// edge uses.
    colors: Vec<u32>,
    num_colors: usize,
    vertex_colors: Vec<u32>,
}

impl ColoredGraph {
    /// Builds a graph from a symmetric matrix of edge colors. Colors are
    /// compacted to `0..k` preserving their order; the diagonal is ignored.
    pub fn from_edge_colors(edge: &[Vec<u32>]) -> Result<Self> {
        let n = edge.len();
        for (i, row) in edge.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { row: i, len: row.len(), expected: n });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if edge[i][j] != edge[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        let mut distinct: Vec<u32> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| edge[i][j])
            .collect();
        distinct.sort_unstable();
        distinct.dedup();
        let k = distinct.len();
        let mut colors = vec![k as u32; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    colors[i * n + j] = distinct.binary_search(&edge[i][j]).expect("present") as u32;
                }
            }
        }
        Ok(ColoredGraph { n, colors, num_colors: k + 1, vertex_colors: vec![0; n] })
    }

    /// Simple graph from a 0/1 adjacency matrix: non-edges get color 0,
    /// edges color 1 (when both occur).
    pub fn from_adjacency(adj: &[Vec<u8>]) -> Result<Self> {
        let edge: Vec<Vec<u32>> = adj.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect();
        Self::from_edge_colors(&edge)
    }

    /// Replaces the initial partition. Colors are compacted preserving order.
    pub fn with_vertex_colors(mut self, colors: &[u32]) -> Result<Self> {
        if colors.len() != self.n {
            return Err(Error::Domain(format!("{} vertex colors for {} vertices", colors.len(), self.n)));
        }
        let mut distinct = colors.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        self.vertex_colors = colors.iter().map(|c| distinct.binary_search(c).expect("present") as u32).collect();
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of edge colors, counting the diagonal sentinel.
    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Number of colors used by edges between distinct vertices.
    pub fn num_edge_colors(&self) -> usize {
        self.num_colors - 1
    }

    #[inline]
    pub fn color(&self, i: usize, j: usize) -> u32 {
        self.colors[i * self.n + j]
    }

    pub(crate) fn row(&self, i: usize) -> &[u32] {
        &self.colors[i * self.n..(i + 1) * self.n]
    }

    pub fn vertex_colors(&self) -> &[u32] {
        &self.vertex_colors
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n
            && (0..self.n).all(|i| self.vertex_colors[p.apply(i)] == self.vertex_colors[i])
            && (0..self.n).all(|i| {
                let pi = p.apply(i);
                (i + 1..self.n).all(|j| self.color(pi, p.apply(j)) == self.color(i, j))
            })
    }
}

/// Colors are the ranks of the off-diagonal Gram values in ascending order.
pub fn colored_graph_from_config(c: &Configuration) -> ColoredGraph {
    let n = c.len();
    let mut index: BTreeMap<&Rational, u32> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                index.insert(c.inner(i, j), 0);
            }
        }
    }
    for (k, v) in index.values_mut().enumerate() {
        *v = k as u32;
    }
    let edge: Vec<Vec<u32>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { index[c.inner(i, j)] }).collect()).collect();
    ColoredGraph::from_edge_colors(&edge).expect("Gram matrices are square and symmetric")
}

/// Full automorphism group of `g`. The order found by the search is checked
/// against the Schreier-Sims order of the returned generators.
pub fn automorphism_group(g: &ColoredGraph) -> PermutationGroup {
    let outcome = search::search_automorphisms(g);
    for p in &outcome.generators {
        assert!(g.is_automorphism(p), "search produced a non-automorphism");
    }
    let group = PermutationGroup::new(g.len(), outcome.generators.clone());
    assert_eq!(group.order(), outcome.order(), "search and Schreier-Sims orders disagree");
    group
}

/// Isometry group of a configuration as a permutation group of its points.
pub fn isometry_group(c: &Configuration) -> PermutationGroup {
    automorphism_group(&colored_graph_from_config(c))
}

pub fn preserves_gram(c: &Configuration, p: &Permutation) -> bool {
    let n = c.len();
    p.degree() == n && (0..n).all(|i| (i + 1..n).all(|j| c.inner(p.apply(i), p.apply(j)) == c.inner(i, j)))
}

pub fn orbits(g: &PermutationGroup) -> Vec<Vec<usize>> {
    g.orbits()
}

pub fn point_stabilizer(g: &PermutationGroup, i: usize) -> Result<PermutationGroup> {
    if i >= g.degree() {
        return Err(Error::IndexOutOfRange { index: i, len: g.degree() });
    }
    Ok(g.stabilizer(i))
}

/// Dimension of the subspace of span(C) fixed by `h`. The fixed space is
/// spanned by the orbit sums, whose Gram matrix is `B G Bᵀ`.
pub fn fixed_subspace_dim(c: &Configuration, h: &PermutationGroup) -> Result<usize> {
    if h.degree() != c.len() {
        return Err(Error::Domain(format!("group of degree {} acting on {} points", h.degree(), c.len())));
    }
    if let Some(k) = h.generators().iter().position(|p| !preserves_gram(c, p)) {
        return Err(Error::NotAnAutomorphism(k));
    }
    let orbits = h.orbits();
    let m = Matrix::from_fn(orbits.len(), orbits.len(), |a, b| {
        let mut s = Rational::default();
        for &i in &orbits[a] {
            for &j in &orbits[b] {
                s += c.inner(i, j);
            }
        }
        s
    });
    Ok(matrix_rank(&m))
}

/// Per-orbit outcome of the group-balance test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitFixedDim {
    pub orbit: Vec<usize>,
    pub stabilizer_order: String,
    pub fixed_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupBalance {
    pub group_balanced: bool,
    /// Points whose stabilizer fixes more than the line through them.
    pub witnesses: Vec<usize>,
    pub orbits: Vec<OrbitFixedDim>,
}

/// Group-balance test with an already computed isometry group.
pub fn group_balance_with(c: &Configuration, g: &PermutationGroup) -> Result<GroupBalance> {
    let orbits = g.orbits();
    let per_orbit: Vec<Result<OrbitFixedDim>> = orbits
        .par_iter()
        .map(|orbit| {
            let stab = g.stabilizer(orbit[0]);
            let fixed_dim = fixed_subspace_dim(c, &stab)?;
            Ok(OrbitFixedDim { orbit: orbit.clone(), stabilizer_order: stab.order().to_string(), fixed_dim })
        })
        .collect();
    let per_orbit = per_orbit.into_iter().collect::<Result<Vec<_>>>()?;
    let mut witnesses: Vec<usize> =
        per_orbit.iter().filter(|o| o.fixed_dim > 1).flat_map(|o| o.orbit.iter().copied()).collect();
    witnesses.sort_unstable();
    Ok(GroupBalance { group_balanced: witnesses.is_empty(), witnesses, orbits: per_orbit })
}

/// True iff every point's stabilizer fixes only the line through that point.
/// One stabilizer per orbit is examined; conjugate stabilizers have equal
/// fixed dimensions.
pub fn check_group_balanced(c: &Configuration) -> (bool, Vec<usize>) {
    let g = isometry_group(c);
    let r = group_balance_with(c, &g).expect("the isometry group preserves the Gram matrix");
    (r.group_balanced, r.witnesses)
}

/// Serialized form `{ "order", "generators", "orbits" }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub order: String,
    pub generators: Vec<Vec<usize>>,
    pub orbits: Vec<Vec<usize>>,
}

impl GroupSummary {
    pub fn of(g: &PermutationGroup) -> Self {
        GroupSummary {
            order: g.order().to_string(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
            orbits: g.orbits(),
        }
    }
}
