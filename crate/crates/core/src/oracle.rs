//! Brute-force ground truth.
//!
//! Fibonacci and Lucas cubes are built as explicit graphs and their vertex
//! and edge sets are partitioned into orbits by union-find over the images
//! of every element under a set of generating automorphisms. Nothing here
//! consults the closed forms in [`crate::formulas`].
//!
//! For `Γ_n` with `n >= 2` the acting group is `{id, β}`; for `Λ_n` with
//! `n >= 3` it is generated by `α` and `β`. The degenerate small cases
//! (`Γ_0`, `Γ_1`, `Λ_0`, `Λ_1`, `Λ_2`) use the automorphism group computed by
//! [`automorphism_group`], which also serves to check those premises for
//! small `n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{ExactInt, SizeHistogram};
use crate::strings::{self, CubeKind, CubeString, DihedralElement};

/// Largest dimension [`CubeGraph::build`] accepts.
pub const MAX_DIMENSION: usize = 30;

/// Largest vertex count [`automorphism_group`] accepts.
pub const MAX_AUTOMORPHISM_VERTICES: usize = 60;

/// `Γ_n` or `Λ_n` as an explicit graph. Vertices are in ascending
/// lexicographic order; each edge `(a, b)` has `a < b`, and edges are sorted.
#[derive(Debug, Clone)]
pub struct CubeGraph {
    kind: CubeKind,
    n: usize,
    vertices: Vec<CubeString>,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl CubeGraph {
    pub fn build(n: usize, kind: CubeKind) -> Result<Self> {
        if n > MAX_DIMENSION {
            return Err(Error::above("CubeGraph::build", MAX_DIMENSION, n));
        }
        let vertices = strings::enumerate(n, kind)?;
        let mut graph = CubeGraph {
            kind,
            n,
            neighbors: vec![Vec::new(); vertices.len()],
            vertices,
            edges: Vec::new(),
        };
        // Setting a 0 to 1 gives the heavier endpoint, which sorts later.
        for a in 0..graph.vertices.len() {
            let u = graph.vertices[a];
            for i in 0..n {
                if u.bit(i) == 1 {
                    continue;
                }
                if let Some(b) = graph.index_of(&u.with_bit_flipped(i)) {
                    graph.edges.push((a, b));
                }
            }
        }
        graph.edges.sort_unstable();
        for &(a, b) in &graph.edges {
            graph.neighbors[a].push(b);
            graph.neighbors[b].push(a);
        }
        for list in &mut graph.neighbors {
            list.sort_unstable();
        }
        Ok(graph)
    }

    pub fn kind(&self) -> CubeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[CubeString] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, u: &CubeString) -> Option<usize> {
        if u.len() != self.n {
            return None;
        }
        self.vertices.binary_search(u).ok()
    }

    /// Index of the edge joining `a` and `b`, in either order.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).ok()
    }

    pub fn edge_strings(&self, e: usize) -> (CubeString, CubeString) {
        let (a, b) = self.edges[e];
        (self.vertices[a], self.vertices[b])
    }

    /// The vertex permutation induced by a string map, or `None` when the
    /// map sends some vertex outside the graph.
    pub fn permutation_of(&self, g: DihedralElement) -> Option<Permutation> {
        self.vertices
            .iter()
            .map(|u| self.index_of(&g.act(u)))
            .collect::<Option<Vec<_>>>()
            .map(Permutation)
    }

    fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }
}

/// A bijection on vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Preserves both adjacency and non-adjacency.
    pub fn is_automorphism(&self, g: &CubeGraph) -> bool {
        if self.0.len() != g.vertex_count() {
            return false;
        }
        // A bijection mapping edges into edges of a finite graph maps E onto E.
        g.edges()
            .iter()
            .all(|&(a, b)| g.is_adjacent(self.image(a), self.image(b)))
    }

    pub fn preserves_weight(&self, g: &CubeGraph) -> bool {
        g.vertices()
            .iter()
            .enumerate()
            .all(|(i, u)| g.vertices()[self.image(i)].weight() == u.weight())
    }

    /// Image of edge `e` under this vertex permutation.
    pub fn edge_image(&self, g: &CubeGraph, e: usize) -> usize {
        let (a, b) = g.edges()[e];
        g.edge_index(self.image(a), self.image(b))
            .expect("automorphism maps edges to edges")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ground {
    Vertices,
    Edges,
}

/// One orbit: element indices in ascending order. The first member is the
/// canonical representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A partition of the vertex or edge set into orbits, sorted by
/// representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub ground: Ground,
    pub orbits: Vec<Orbit>,
}

impl OrbitPartition {
    pub fn histogram(&self) -> SizeHistogram {
        histogram(self)
    }

    /// Orbit index of every element.
    pub fn orbit_index(&self) -> Vec<usize> {
        let len = self.orbits.iter().map(Orbit::len).sum();
        let mut out = vec![usize::MAX; len];
        for (k, orbit) in self.orbits.iter().enumerate() {
            for &m in &orbit.members {
                out[m] = k;
            }
        }
        out
    }

    pub fn sizes(&self) -> std::collections::BTreeSet<u64> {
        self.orbits.iter().map(|o| o.len() as u64).collect()
    }
}

pub fn histogram(p: &OrbitPartition) -> SizeHistogram {
    p.orbits
        .iter()
        .map(|o| (o.len() as u64, ExactInt::from(1)))
        .collect()
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root so that roots are orbit minima.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    fn into_partition(mut self, ground: Ground) -> OrbitPartition {
        let len = self.parent.len();
        let mut slot = vec![usize::MAX; len];
        let mut orbits: Vec<Orbit> = Vec::new();
        for x in 0..len {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = orbits.len();
                orbits.push(Orbit { members: Vec::new() });
            }
            orbits[slot[r]].members.push(x);
        }
        OrbitPartition { ground, orbits }
    }
}

/// Vertex permutations generating the group whose orbits are reported.
pub fn acting_generators(g: &CubeGraph) -> Result<Vec<Permutation>> {
    let generators = match (g.kind(), g.n()) {
        (CubeKind::Gamma, n) if n >= 2 => vec![DihedralElement::BETA],
        (CubeKind::Lambda, n) if n >= 3 => vec![DihedralElement::ALPHA, DihedralElement::BETA],
        _ => return automorphism_group(g),
    };
    Ok(generators
        .into_iter()
        .map(|d| {
            g.permutation_of(d)
                .expect("cube is closed under its generators")
        })
        .collect())
}

fn partition_by(len: usize, ground: Ground, image_of: impl Fn(usize) -> Vec<usize>) -> OrbitPartition {
    let mut sets = DisjointSets::new(len);
    for x in 0..len {
        for y in image_of(x) {
            sets.union(x, y);
        }
    }
    sets.into_partition(ground)
}

pub fn vertex_orbits(g: &CubeGraph) -> Result<OrbitPartition> {
    let gens = acting_generators(g)?;
    Ok(partition_by(g.vertex_count(), Ground::Vertices, |v| {
        gens.iter().map(|p| p.image(v)).collect()
    }))
}

/// The edge `{u, v}` is mapped to `{g(u), g(v)}`.
pub fn edge_orbits(g: &CubeGraph) -> Result<OrbitPartition> {
    let gens = acting_generators(g)?;
    Ok(partition_by(g.edge_count(), Ground::Edges, |e| {
        gens.iter().map(|p| p.edge_image(g, e)).collect()
    }))
}

/// Orbits under the rotations `α^j` alone (necklaces), for `n >= 1`.
pub fn rotation_orbits(g: &CubeGraph) -> Result<OrbitPartition> {
    if g.n() == 0 {
        return Err(Error::EmptyString);
    }
    let alpha = g
        .permutation_of(DihedralElement::ALPHA)
        .ok_or(Error::Unsupported("rotation orbits need a cube closed under the cyclic shift"))?;
    Ok(partition_by(g.vertex_count(), Ground::Vertices, |v| {
        vec![alpha.image(v)]
    }))
}

/// Every automorphism of `g`, found by backtracking over degree-compatible
/// assignments in BFS order with adjacency checks against all previously
/// placed vertices. Results are sorted.
pub fn automorphism_group(g: &CubeGraph) -> Result<Vec<Permutation>> {
    let v = g.vertex_count();
    if v > MAX_AUTOMORPHISM_VERTICES {
        return Err(Error::above("automorphism_group vertex count", MAX_AUTOMORPHISM_VERTICES, v));
    }
    let adjacency: Vec<u64> = (0..v)
        .map(|a| g.neighbors(a).iter().fold(0u64, |m, &b| m | (1 << b)))
        .collect();
    let degree: Vec<u32> = adjacency.iter().map(|m| m.count_ones()).collect();

    // BFS order; anchor[i] is an earlier-placed neighbour of order[i], if any.
    let mut order = Vec::with_capacity(v);
    let mut anchor = Vec::with_capacity(v);
    let mut seen = 0u64;
    for start in 0..v {
        if seen & (1 << start) != 0 {
            continue;
        }
        seen |= 1 << start;
        order.push(start);
        anchor.push(None);
        let mut head = order.len() - 1;
        while head < order.len() {
            let x = order[head];
            for &y in g.neighbors(x) {
                if seen & (1 << y) == 0 {
                    seen |= 1 << y;
                    order.push(y);
                    anchor.push(Some(x));
                }
            }
            head += 1;
        }
    }

    let search = AutomorphismSearch {
        adjacency: &adjacency,
        degree: &degree,
        order: &order,
        anchor: &anchor,
    };
    let mut mapping = vec![usize::MAX; v];
    let mut found = Vec::new();
    search.extend(0, &mut mapping, 0, &mut found);
    found.sort();
    Ok(found)
}

struct AutomorphismSearch<'a> {
    adjacency: &'a [u64],
    degree: &'a [u32],
    order: &'a [usize],
    anchor: &'a [Option<usize>],
}

impl AutomorphismSearch<'_> {
    fn extend(&self, pos: usize, mapping: &mut [usize], used: u64, found: &mut Vec<Permutation>) {
        let v = self.order.len();
        if pos == v {
            found.push(Permutation(mapping.to_vec()));
            return;
        }
        let x = self.order[pos];
        let all = if v == 64 { u64::MAX } else { (1u64 << v) - 1 };
        let mut candidates = match self.anchor[pos] {
            Some(a) => self.adjacency[mapping[a]],
            None => all,
        } & !used;
        while candidates != 0 {
            let y = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if self.degree[y] != self.degree[x] {
                continue;
            }
            let consistent = self.order[..pos].iter().all(|&z| {
                let xz = self.adjacency[x] & (1 << z) != 0;
                let yz = self.adjacency[y] & (1 << mapping[z]) != 0;
                xz == yz
            });
            if !consistent {
                continue;
            }
            mapping[x] = y;
            self.extend(pos + 1, mapping, used | (1 << y), found);
            mapping[x] = usize::MAX;
        }
    }
}

/// The dihedral string map inducing `perm` on `g`, if there is one.
pub fn dihedral_realization(perm: &Permutation, g: &CubeGraph) -> Option<DihedralElement> {
    if g.n() == 0 {
        return perm.is_identity().then_some(DihedralElement::IDENTITY);
    }
    DihedralElement::all(g.n()).find(|&d| {
        g.vertices()
            .iter()
            .enumerate()
            .all(|(i, u)| g.index_of(&d.act(u)) == Some(perm.image(i)))
    })
}

/// Indices of the vertices or edges of `g` fixed by a dihedral string map.
pub fn fixed_points(elem: DihedralElement, g: &CubeGraph, ground: Ground) -> Result<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyString);
    }
    if elem.shift >= n {
        return Err(Error::ShiftOutOfRange { shift: elem.shift, n });
    }
    let fixed = |u: &CubeString| elem.act(u) == *u;
    Ok(match ground {
        Ground::Vertices => (0..g.vertex_count())
            .filter(|&i| fixed(&g.vertices()[i]))
            .collect(),
        Ground::Edges => (0..g.edge_count())
            .filter(|&e| {
                let (u, v) = g.edge_strings(e);
                let (gu, gv) = (elem.act(&u), elem.act(&v));
                (gu == u && gv == v) || (gu == v && gv == u)
            })
            .collect(),
    })
}

/// Exhaustive classification of Lucas strings of length `n >= 1` by the
/// definitions: primitive when all `n` rotations differ, asymmetric when the
/// dihedral orbit has `2n` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassCounts {
    pub primitive: u64,
    pub primitive_symmetric: u64,
    pub asymmetric: u64,
}

pub fn classify_lucas_strings(n: usize) -> Result<ClassCounts> {
    if n == 0 {
        return Err(Error::EmptyString);
    }
    let mut counts = ClassCounts::default();
    for u in strings::enumerate(n, CubeKind::Lambda)? {
        let rotations: std::collections::BTreeSet<_> = (0..n).map(|j| u.rotate(j)).collect();
        let orbit = u.dihedral_orbit()?;
        let primitive = rotations.len() == n;
        let asymmetric = orbit.len() == 2 * n;
        if primitive {
            counts.primitive += 1;
            if asymmetric {
                counts.asymmetric += 1;
            } else {
                counts.primitive_symmetric += 1;
            }
        } else {
            assert!(!asymmetric, "asymmetric string {u} is not primitive");
        }
    }
    Ok(counts)
}
