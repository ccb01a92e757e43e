//! The `m`-uniform hypergraph model and its constructions.
//!
//! Vertices are labeled `1..=n`. Edges are stored sorted ascending and the
//! edge list is kept in lexicographic order, so two hypergraphs with the same
//! edge set compare equal.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::modring::{Modulus, ZmMatrix};

pub type Vertex = usize;
pub type Edge = Vec<Vertex>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniformHypergraph {
    m: usize,
    n: usize,
    edges: Vec<Edge>,
}

/// First violated invariant of an edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Uniformity(usize),
    WrongArity { edge: usize, len: usize },
    RepeatedVertex { edge: usize, vertex: Vertex },
    OutOfRange { edge: usize, vertex: Vertex },
    DuplicateEdge { edge: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Uniformity(m) => write!(f, "uniformity {m} is below 2"),
            Violation::WrongArity { edge, len } => write!(f, "edge {edge} has {len} vertices"),
            Violation::RepeatedVertex { edge, vertex } => {
                write!(f, "edge {edge} repeats vertex {vertex}")
            }
            Violation::OutOfRange { edge, vertex } => {
                write!(f, "edge {edge} has vertex {vertex} out of range")
            }
            Violation::DuplicateEdge { edge } => write!(f, "edge {edge} is a duplicate"),
        }
    }
}

/// Validate raw edges; `edge` indices in the diagnostics are 0-based
/// positions in the input list.
pub fn validate(m: usize, n: usize, edges: &[Edge]) -> std::result::Result<(), Violation> {
    if m < 2 {
        return Err(Violation::Uniformity(m));
    }
    let mut seen = BTreeSet::new();
    for (idx, edge) in edges.iter().enumerate() {
        if edge.len() != m {
            return Err(Violation::WrongArity { edge: idx, len: edge.len() });
        }
        if let Some(&vertex) = edge.iter().find(|&&v| v == 0 || v > n) {
            return Err(Violation::OutOfRange { edge: idx, vertex });
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Violation::RepeatedVertex { edge: idx, vertex: w[0] });
        }
        if !seen.insert(sorted) {
            return Err(Violation::DuplicateEdge { edge: idx });
        }
    }
    Ok(())
}

impl UniformHypergraph {
    pub fn new(m: usize, n: usize, edges: Vec<Edge>) -> Result<Self> {
        validate(m, n, &edges).map_err(|v| Error::InvalidHypergraph(v.to_string()))?;
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect();
        edges.sort();
        Ok(UniformHypergraph { m, n, edges })
    }

    /// The one-vertex hypergraph with no edges.
    pub fn trivial(m: usize) -> Result<Self> {
        Self::new(m, 1, Vec::new())
    }

    #[inline]
    pub fn uniformity(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn modulus(&self) -> Modulus {
        Modulus::new(self.m as u64).expect("uniformity is at least 2")
    }

    pub fn is_trivial(&self) -> bool {
        self.n <= 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v - 1] += 1;
            }
        }
        deg
    }

    /// Common vertex degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    /// Connectivity of the bipartite vertex–edge incidence graph.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut dsu = Dsu::new(self.n);
        for e in &self.edges {
            for w in e.windows(2) {
                dsu.union(w[0] - 1, w[1] - 1);
            }
        }
        let root = dsu.find(0);
        (1..self.n).all(|v| dsu.find(v) == root)
    }

    /// Connected and nontrivial, as every index computation requires.
    pub fn require_indexable(&self) -> Result<()> {
        if self.is_trivial() {
            return Err(Error::Trivial);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// `k × n` 0/1 matrix over `Z_m`, rows in edge order, columns by label.
    pub fn incidence_matrix(&self) -> ZmMatrix {
        let mut b = ZmMatrix::zeros(self.edges.len(), self.n, self.modulus());
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                b.set(i, v - 1, 1);
            }
        }
        b
    }

    /// Relabel vertices by `map[old - 1] = new`, keeping `new_n` vertices.
    pub fn relabel(&self, new_n: usize, map: &[Vertex]) -> Result<Self> {
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| map[v - 1]).collect())
            .collect();
        Self::new(self.m, new_n, edges)
    }

    /// Acyclic: the incidence bipartite graph is a tree (given connectivity).
    pub fn is_hypertree(&self) -> bool {
        self.is_connected() && self.n + self.edges.len() == self.edges.len() * self.m + 1
    }
}

impl fmt::Debug for UniformHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniformHypergraph(m={}, n={}, edges={:?})", self.m, self.n, self.edges)
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn same_uniformity(g1: &UniformHypergraph, g2: &UniformHypergraph) -> Result<()> {
    if g1.m != g2.m {
        return Err(Error::UniformityMismatch(g1.m, g2.m));
    }
    Ok(())
}

fn check_vertex(g: &UniformHypergraph, v: Vertex) -> Result<()> {
    if v == 0 || v > g.n {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n });
    }
    Ok(())
}

/// Identify `v1 ∈ G1` with `v2 ∈ G2`.
///
/// `G1` keeps labels `1..=n1` and the merged vertex is `v1`; the vertices of
/// `G2` other than `v2` take `n1 + 1..` in ascending order.
pub fn coalesce(g1: &UniformHypergraph, v1: Vertex, g2: &UniformHypergraph, v2: Vertex) -> Result<UniformHypergraph> {
    same_uniformity(g1, g2)?;
    check_vertex(g1, v1)?;
    check_vertex(g2, v2)?;
    g1.require_indexable()?;
    g2.require_indexable()?;
    let n = g1.n + g2.n - 1;
    let map: Vec<Vertex> = (1..=g2.n)
        .map(|v| match v.cmp(&v2) {
            std::cmp::Ordering::Less => g1.n + v,
            std::cmp::Ordering::Equal => v1,
            std::cmp::Ordering::Greater => g1.n + v - 1,
        })
        .collect();
    let mut edges = g1.edges.clone();
    edges.extend(g2.edges.iter().map(|e| e.iter().map(|&v| map[v - 1]).collect()));
    UniformHypergraph::new(g1.m, n, edges)
}

/// Label of the product vertex `(i, j)`.
#[inline]
pub fn product_label(i: Vertex, j: Vertex, n2: usize) -> Vertex {
    (i - 1) * n2 + j
}

/// Edges of `G1 □ G2` in the canonical order: first `{u} × f` for each
/// vertex `u` of `G1` and edge `f` of `G2` (`u` major), then `e × {v}` for
/// each edge `e` of `G1` and vertex `v` of `G2` (`e` major). This is the row
/// order under which the incidence matrix is `[I ⊗ In(G2); In(G1) ⊗ I]`.
pub fn cartesian_edges_canonical(g1: &UniformHypergraph, g2: &UniformHypergraph) -> Vec<Edge> {
    let n2 = g2.n;
    let mut edges = Vec::with_capacity(g1.n * g2.edges.len() + g1.edges.len() * n2);
    for u in 1..=g1.n {
        for f in &g2.edges {
            edges.push(f.iter().map(|&j| product_label(u, j, n2)).collect());
        }
    }
    for e in &g1.edges {
        for v in 1..=n2 {
            edges.push(e.iter().map(|&i| product_label(i, v, n2)).collect());
        }
    }
    edges
}

pub fn cartesian_product(g1: &UniformHypergraph, g2: &UniformHypergraph) -> Result<UniformHypergraph> {
    same_uniformity(g1, g2)?;
    UniformHypergraph::new(g1.m, g1.n * g2.n, cartesian_edges_canonical(g1, g2))
}

/// `[I_{n1} ⊗ In(G2); In(G1) ⊗ I_{n2}]`.
pub fn kronecker_incidence(g1: &UniformHypergraph, g2: &UniformHypergraph) -> Result<ZmMatrix> {
    same_uniformity(g1, g2)?;
    let md = g1.modulus();
    let upper = ZmMatrix::identity(g1.n, md).kronecker(&g2.incidence_matrix())?;
    let lower = g1.incidence_matrix().kronecker(&ZmMatrix::identity(g2.n, md))?;
    upper.vstack(&lower)
}

/// Incidence matrix of `G1 □ G2` with rows in the canonical edge order.
pub fn cartesian_incidence_canonical(g1: &UniformHypergraph, g2: &UniformHypergraph) -> Result<ZmMatrix> {
    same_uniformity(g1, g2)?;
    let edges = cartesian_edges_canonical(g1, g2);
    let n = g1.n * g2.n;
    let mut b = ZmMatrix::zeros(edges.len(), n, g1.modulus());
    for (r, e) in edges.iter().enumerate() {
        for &v in e {
            b.set(r, v - 1, 1);
        }
    }
    Ok(b)
}

/// Left fold of [`cartesian_product`].
pub fn cartesian_product_n(factors: &[UniformHypergraph]) -> Result<UniformHypergraph> {
    let (first, rest) = factors
        .split_first()
        .ok_or(Error::TooFewInputs { needed: 1, got: 0 })?;
    rest.iter().try_fold(first.clone(), |acc, g| cartesian_product(&acc, g))
}

/// One block with its map back to parent labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub hypergraph: UniformHypergraph,
    /// `vertex_map[i]` is the parent label of block vertex `i + 1`.
    pub vertex_map: Vec<Vertex>,
    /// Indices into the parent's edge list.
    pub parent_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: BTreeSet<Vertex>,
}

/// Blocks from the biconnected components of the vertex–edge incidence
/// graph. Components sharing an edge-node are one block; cut vertices are
/// the vertex-node articulation points.
pub fn blocks(g: &UniformHypergraph) -> Result<BlockDecomposition> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n;
    let k = g.edges.len();
    // nodes 0..n are vertices, n..n+k are edges
    let total = n + k;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (ei, e) in g.edges.iter().enumerate() {
        for &v in e {
            adj[v - 1].push(n + ei);
            adj[n + ei].push(v - 1);
        }
    }

    let mut disc = vec![usize::MAX; total];
    let mut low = vec![0usize; total];
    let mut timer = 0;
    let mut link_stack: Vec<(usize, usize)> = Vec::new();
    let mut components: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut articulation = vec![false; total];

    // iterative DFS: (node, parent, next neighbour index)
    let root = 0;
    disc[root] = timer;
    low[root] = timer;
    timer += 1;
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    let mut root_children = 0;
    while let Some(frame) = stack.last_mut() {
        let (u, parent, idx) = *frame;
        if idx < adj[u].len() {
            frame.2 += 1;
            let w = adj[u][idx];
            if disc[w] == usize::MAX {
                link_stack.push((u, w));
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                if u == root {
                    root_children += 1;
                }
                stack.push((w, u, 0));
            } else if w != parent && disc[w] < disc[u] {
                link_stack.push((u, w));
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[u]);
                if low[u] >= disc[p] {
                    if p != root {
                        articulation[p] = true;
                    }
                    let mut comp = Vec::new();
                    while let Some(link) = link_stack.pop() {
                        comp.push(link);
                        if link == (p, u) {
                            break;
                        }
                    }
                    components.push(comp);
                }
            }
        }
    }
    if root_children > 1 {
        articulation[root] = true;
    }

    // merge biconnected components through shared edge-nodes
    let mut edge_group = Dsu::new(k);
    for comp in &components {
        let mut edge_nodes = comp.iter().flat_map(|&(a, b)| [a, b]).filter(|&x| x >= n).map(|x| x - n);
        if let Some(first) = edge_nodes.next() {
            for other in edge_nodes {
                edge_group.union(first, other);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for ei in 0..k {
        groups.entry(edge_group.find(ei)).or_default().push(ei);
    }

    let mut blocks = Vec::with_capacity(groups.len());
    for edge_ids in groups.into_values() {
        let vertices: BTreeSet<Vertex> = edge_ids.iter().flat_map(|&ei| g.edges[ei].iter().copied()).collect();
        let vertex_map: Vec<Vertex> = vertices.into_iter().collect();
        let local = |v: Vertex| vertex_map.binary_search(&v).expect("vertex in block") + 1;
        let edges = edge_ids
            .iter()
            .map(|&ei| g.edges[ei].iter().map(|&v| local(v)).collect())
            .collect();
        let hypergraph = UniformHypergraph::new(g.m, vertex_map.len(), edges)?;
        blocks.push(Block {
            hypergraph,
            vertex_map,
            parent_edges: edge_ids,
        });
    }
    let cut_vertices = (0..n).filter(|&v| articulation[v]).map(|v| v + 1).collect();
    Ok(BlockDecomposition { blocks, cut_vertices })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    SingleEdge,
    PathHypertree,
    RandomHypertree,
    Complete,
    LooseCycle,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::SingleEdge => "single_edge",
            GeneratorKind::PathHypertree => "path_hypertree",
            GeneratorKind::RandomHypertree => "random_hypertree",
            GeneratorKind::Complete => "complete",
            GeneratorKind::LooseCycle => "loose_cycle",
        }
    }
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "single_edge" => GeneratorKind::SingleEdge,
            "path_hypertree" => GeneratorKind::PathHypertree,
            "random_hypertree" => GeneratorKind::RandomHypertree,
            "complete" => GeneratorKind::Complete,
            "loose_cycle" => GeneratorKind::LooseCycle,
            other => return Err(Error::InvalidGenerator(format!("unknown kind {other:?}"))),
        })
    }
}

/// `count` is the edge count `s` for hypertrees and cycles, and the vertex
/// count `n` for complete hypergraphs; single edges ignore it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub m: usize,
    pub count: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn single_edge(m: usize) -> Self {
        GeneratorSpec { kind: GeneratorKind::SingleEdge, m, count: 1, seed: 0 }
    }

    pub fn path_hypertree(m: usize, s: usize) -> Self {
        GeneratorSpec { kind: GeneratorKind::PathHypertree, m, count: s, seed: 0 }
    }

    pub fn random_hypertree(m: usize, s: usize, seed: u64) -> Self {
        GeneratorSpec { kind: GeneratorKind::RandomHypertree, m, count: s, seed }
    }

    pub fn complete(m: usize, n: usize) -> Self {
        GeneratorSpec { kind: GeneratorKind::Complete, m, count: n, seed: 0 }
    }

    pub fn loose_cycle(m: usize, s: usize) -> Self {
        GeneratorSpec { kind: GeneratorKind::LooseCycle, m, count: s, seed: 0 }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<UniformHypergraph> {
    let GeneratorSpec { kind, m, count, seed } = *spec;
    let bad = |msg: String| Err(Error::InvalidGenerator(msg));
    if m < 2 {
        return bad(format!("uniformity {m} is below 2"));
    }
    match kind {
        GeneratorKind::SingleEdge => UniformHypergraph::new(m, m, vec![(1..=m).collect()]),
        GeneratorKind::PathHypertree => {
            if count < 1 {
                return bad("a hypertree needs at least one edge".into());
            }
            let edges = (0..count)
                .map(|i| (i * (m - 1) + 1..=i * (m - 1) + m).collect())
                .collect();
            UniformHypergraph::new(m, count * (m - 1) + 1, edges)
        }
        GeneratorKind::RandomHypertree => {
            if count < 1 {
                return bad("a hypertree needs at least one edge".into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges: Vec<Edge> = vec![(1..=m).collect()];
            let mut n = m;
            for _ in 1..count {
                let anchor = rng.gen_range(1..=n);
                let mut e = vec![anchor];
                e.extend(n + 1..=n + m - 1);
                n += m - 1;
                edges.push(e);
            }
            UniformHypergraph::new(m, n, edges)
        }
        GeneratorKind::Complete => {
            let n = count;
            if n < m + 1 {
                return bad(format!("complete hypergraph needs n >= m + 1, got n={n}, m={m}"));
            }
            UniformHypergraph::new(m, n, combinations(n, m))
        }
        GeneratorKind::LooseCycle => {
            if count < 2 || count * (m - 1) < 3 {
                return bad(format!("loose cycle needs s >= 2 and s(m-1) >= 3, got s={count}, m={m}"));
            }
            let n = count * (m - 1);
            let edges = (0..count)
                .map(|i| (0..m).map(|t| (i * (m - 1) + t) % n + 1).collect())
                .collect();
            UniformHypergraph::new(m, n, edges)
        }
    }
}

/// All `k`-subsets of `1..=n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i + 1) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
