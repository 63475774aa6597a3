//! Automorphisms of edge-colored complete graphs by individualization and
//! refinement.
//!
//! The first path of the search tree (always individualizing the least vertex
//! of the first smallest non-singleton cell) fixes a base `b_0, b_1, ...`.
//! Levels are then processed bottom-up: at level `l` every vertex `w` of the
//! target cell not yet known to share an orbit with `b_l` gets its subtree
//! searched exhaustively for a leaf equivalent to the first leaf. A hit is an
//! automorphism fixing `b_0..b_{l-1}` and mapping `b_l` to `w`; a miss proves
//! no such automorphism exists. The generators found form a strong generating
//! set and the group order is the product of the level orbit sizes.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::One;

use super::perm::Permutation;
use super::ColoredGraph;

#[derive(Clone)]
struct Node {
    /// Ordered partition: `cell_of[v]` is the index of `v`'s cell.
    cell_of: Vec<u32>,
    ncells: usize,
    /// Hash of the refinement keys; equal for nodes related by an automorphism.
    invariant: u64,
}

impl Node {
    fn is_discrete(&self) -> bool {
        self.ncells == self.cell_of.len()
    }

    /// Index of the first smallest non-singleton cell.
    fn target_cell(&self) -> Option<u32> {
        let mut sizes = vec![0usize; self.ncells];
        for &c in &self.cell_of {
            sizes[c as usize] += 1;
        }
        sizes.iter().enumerate().filter(|(_, &s)| s > 1).min_by_key(|(i, &s)| (s, *i)).map(|(i, _)| i as u32)
    }

    fn members(&self, cell: u32) -> Vec<usize> {
        (0..self.cell_of.len()).filter(|&v| self.cell_of[v] == cell).collect()
    }
}

/// Refines an ordered partition to the coarsest equitable partition below it.
/// Each round keys every vertex by its current cell and the counts of
/// (neighbour cell, edge color) pairs; cells are split and ordered by key.
fn refine(g: &ColoredGraph, mut cell_of: Vec<u32>) -> Node {
    let n = g.len();
    let k = g.num_colors();
    let mut ncells = (cell_of.iter().copied().max().map_or(0, |m| m as usize + 1)).min(n);
    loop {
        let width = ncells * k;
        let mut keys: Vec<Vec<u32>> = Vec::with_capacity(n);
        for v in 0..n {
            let mut key = vec![0u32; width + 1];
            key[0] = cell_of[v];
            let row = g.row(v);
            for u in 0..n {
                if u != v {
                    key[1 + cell_of[u] as usize * k + row[u] as usize] += 1;
                }
            }
            keys.push(key);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut new_cell = vec![0u32; n];
        let mut count = 0u32;
        let mut hasher = DefaultHasher::new();
        for (idx, &v) in order.iter().enumerate() {
            if idx > 0 && keys[v] != keys[order[idx - 1]] {
                count += 1;
            }
            if idx == 0 || keys[v] != keys[order[idx - 1]] {
                keys[v].hash(&mut hasher);
            }
            new_cell[v] = count;
        }
        let new_ncells = if n == 0 { 0 } else { count as usize + 1 };
        // cell sizes are part of the invariant
        for v in &order {
            new_cell[*v].hash(&mut hasher);
        }
        cell_of = new_cell;
        if new_ncells == ncells {
            return Node { cell_of, ncells, invariant: hasher.finish() };
        }
        ncells = new_ncells;
    }
}

fn individualize(g: &ColoredGraph, node: &Node, v: usize) -> Node {
    let cv = node.cell_of[v];
    let cell_of = node.cell_of.iter().enumerate().map(|(u, &c)| if c < cv || u == v { c } else { c + 1 }).collect();
    refine(g, cell_of)
}

struct Search<'a> {
    graph: &'a ColoredGraph,
    /// First path: `path[d]` is the refined node at depth `d`.
    path: Vec<Node>,
    /// `first_leaf_vertex[p]` is the vertex in position `p` of the first leaf.
    first_leaf_vertex: Vec<usize>,
    base: Vec<usize>,
}

impl Search<'_> {
    /// Looks below `node` for a leaf whose permutation is an automorphism
    /// fixing `base[..level]` and sending `base[level]` to `target`.
    fn subtree(&self, node: Node, depth: usize, level: usize, target: usize) -> Option<Permutation> {
        let reference = self.path.get(depth)?;
        if node.invariant != reference.invariant || node.ncells != reference.ncells {
            return None;
        }
        if node.is_discrete() {
            let images: Vec<usize> = {
                let mut at = vec![0usize; node.cell_of.len()];
                for (v, &c) in node.cell_of.iter().enumerate() {
                    at[c as usize] = v;
                }
                let mut img = vec![0usize; at.len()];
                for (p, &v0) in self.first_leaf_vertex.iter().enumerate() {
                    img[v0] = at[p];
                }
                img
            };
            let perm = Permutation::from_images(images);
            let fits = self.base[..level].iter().all(|&b| perm.apply(b) == b) && perm.apply(self.base[level]) == target;
            return (fits && self.graph.is_automorphism(&perm)).then_some(perm);
        }
        let cell = node.target_cell()?;
        for v in node.members(cell) {
            let child = individualize(self.graph, &node, v);
            if let Some(p) = self.subtree(child, depth + 1, level, target) {
                return Some(p);
            }
        }
        None
    }
}

/// Strong generators plus the orbit sizes along the search base.
pub(crate) struct SearchOutcome {
    pub generators: Vec<Permutation>,
    pub orbit_sizes: Vec<usize>,
}

impl SearchOutcome {
    pub fn order(&self) -> BigUint {
        self.orbit_sizes.iter().fold(BigUint::one(), |acc, &s| acc * s)
    }
}

pub(crate) fn search_automorphisms(g: &ColoredGraph) -> SearchOutcome {
    let n = g.len();
    let root = refine(g, g.vertex_colors().to_vec());
    let mut path = vec![root];
    let mut base = Vec::new();
    while let Some(cell) = path.last().expect("root").target_cell() {
        let node = path.last().expect("root");
        let v = node.members(cell)[0];
        base.push(v);
        let child = individualize(g, node, v);
        path.push(child);
    }
    let leaf = path.last().expect("root");
    let mut first_leaf_vertex = vec![0usize; n];
    for (v, &c) in leaf.cell_of.iter().enumerate() {
        first_leaf_vertex[c as usize] = v;
    }
    let search = Search { graph: g, path, first_leaf_vertex, base: base.clone() };

    let mut generators: Vec<Permutation> = Vec::new();
    let mut orbit_sizes = vec![0usize; base.len()];
    for level in (0..base.len()).rev() {
        let node = &search.path[level];
        let cell = node.target_cell().expect("non-discrete on the first path");
        let mut orbit = orbit_of(n, &generators, base[level]);
        for w in node.members(cell) {
            if orbit[w] {
                continue;
            }
            let child = individualize(g, node, w);
            if let Some(p) = search.subtree(child, level + 1, level, w) {
                generators.push(p);
                orbit = orbit_of(n, &generators, base[level]);
            }
        }
        orbit_sizes[level] = orbit.iter().filter(|&&x| x).count();
    }
    SearchOutcome { generators, orbit_sizes }
}

fn orbit_of(n: usize, gens: &[Permutation], start: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for g in gens {
            let v = g.apply(u);
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}
