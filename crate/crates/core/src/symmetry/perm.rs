//! Permutations and permutation groups with a Schreier-Sims stabilizer chain.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

/// A permutation of `0..n`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Panics unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(x < images.len() && !seen[x], "not a permutation: {images:?}");
            seen[x] = true;
        }
        Permutation(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `self` first, then `other`: `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Self {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(i, &x)| *i != x).map(|(i, _)| i)
    }
}

struct Level {
    point: usize,
    /// `transversal[u]` maps `point` to `u` for every `u` in the orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

/// Base and strong generating set. `strong[i]` holds the strong generators
/// first added at level `i`; the group at level `i` is generated by
/// `strong[i..]`.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
    strong: Vec<Vec<Permutation>>,
}

impl StabilizerChain {
    /// Deterministic Schreier-Sims. The base starts with `prefix` and is
    /// extended with the least point moved by a new strong generator.
    pub fn build(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabilizerChain { degree, levels: Vec::new(), strong: Vec::new() };
        for &p in prefix {
            chain.push_level(p);
        }
        for g in generators.iter().filter(|g| !g.is_identity()) {
            let (residue, level) = chain.sift(g, 0);
            if !residue.is_identity() {
                chain.add_strong(residue, level);
            }
        }
        let mut i = chain.levels.len();
        while i > 0 {
            i -= 1;
            chain.recompute_orbit(i);
            if let Some((residue, level)) = chain.first_failing_schreier_generator(i) {
                chain.add_strong(residue, level);
                i = level + 1;
            }
        }
        chain
    }

    fn push_level(&mut self, point: usize) {
        let mut transversal = vec![None; self.degree];
        transversal[point] = Some(Permutation::identity(self.degree));
        self.levels.push(Level { point, transversal, orbit: vec![point] });
        self.strong.push(Vec::new());
    }

    fn add_strong(&mut self, g: Permutation, level: usize) {
        if level == self.levels.len() {
            let p = g.first_moved().expect("nontrivial residue");
            self.push_level(p);
        }
        self.strong[level].push(g);
        for i in 0..=level {
            self.recompute_orbit(i);
        }
    }

    fn level_generators(&self, i: usize) -> impl Iterator<Item = &Permutation> {
        self.strong[i..].iter().flatten()
    }

    fn recompute_orbit(&mut self, i: usize) {
        let gens: Vec<Permutation> = self.level_generators(i).cloned().collect();
        let level = &mut self.levels[i];
        let mut k = 0;
        while k < level.orbit.len() {
            let u = level.orbit[k];
            for s in &gens {
                let v = s.apply(u);
                if level.transversal[v].is_none() {
                    let t = level.transversal[u].as_ref().expect("orbit point").then(s);
                    level.transversal[v] = Some(t);
                    level.orbit.push(v);
                }
            }
            k += 1;
        }
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// at which it got stuck (`levels.len()` if it passed every level).
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for i in from..self.levels.len() {
            let level = &self.levels[i];
            let image = h.apply(level.point);
            match &level.transversal[image] {
                Some(t) => h = h.then(&t.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn first_failing_schreier_generator(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for &u in &level.orbit {
            let tu = level.transversal[u].as_ref().expect("orbit point");
            for s in self.level_generators(i) {
                let v = s.apply(u);
                let tv = level.transversal[v].as_ref().expect("orbit closed");
                let schreier = tu.then(s).then(&tv.inverse());
                let (residue, at) = self.sift(&schreier, i + 1);
                if !residue.is_identity() {
                    return Some((residue, at));
                }
            }
        }
        None
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * l.orbit.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Strong generators of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        self.strong.get(k..).map(|s| s.iter().flatten().cloned().collect()).unwrap_or_default()
    }
}

/// A permutation group given by generators, with a lazily built chain.
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        PermutationGroup::new(self.degree, self.generators.clone())
    }
}

impl std::fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        assert!(generators.iter().all(|g| g.degree() == degree), "generator degree mismatch");
        PermutationGroup { degree, generators, chain: OnceLock::new() }
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup::new(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Chain with the natural base order.
    pub fn chain(&self) -> &StabilizerChain {
        self.chain.get_or_init(|| StabilizerChain::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Orbit partition: each orbit sorted, orbits sorted by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            label[start] = id;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let u = orbit[k];
                for g in &self.generators {
                    let v = g.apply(u);
                    if label[v] == usize::MAX {
                        label[v] = id;
                        orbit.push(v);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn orbit_of(&self, i: usize) -> Vec<usize> {
        self.orbits().into_iter().find(|o| o.binary_search(&i).is_ok()).unwrap_or_default()
    }

    /// Generators of the stabilizer of `i`, read off a chain whose first base
    /// point is `i`. The orbit-stabilizer identity is asserted.
    pub fn stabilizer(&self, i: usize) -> PermutationGroup {
        assert!(i < self.degree, "point {i} out of range");
        let chain = StabilizerChain::build(self.degree, &self.generators, &[i]);
        let stab = PermutationGroup::new(self.degree, chain.stabilizer_generators(1));
        assert_eq!(stab.order() * chain.orbit_sizes()[0], chain.order(), "orbit-stabilizer identity violated");
        stab
    }
}
