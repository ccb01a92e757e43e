#![allow(dead_code)]

use hyperindex::hypergraph::{coalesce, generate, GeneratorSpec, UniformHypergraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn gen(spec: GeneratorSpec) -> UniformHypergraph {
    generate(&spec).unwrap()
}

/// Random connected simple graph: a random spanning tree plus extra edges.
pub fn random_connected_graph(n: usize, extra: usize, seed: u64) -> UniformHypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Vec<usize>> = (2..=n).map(|v| vec![rng.gen_range(1..v), v]).collect();
    let mut attempts = 0;
    while edges.len() < n - 1 + extra && attempts < 1000 {
        attempts += 1;
        let a = rng.gen_range(1..=n);
        let b = rng.gen_range(1..=n);
        if a == b {
            continue;
        }
        let e = vec![a.min(b), a.max(b)];
        if !edges.iter().any(|f| {
            let mut f = f.clone();
            f.sort();
            f == e
        }) {
            edges.push(e);
        }
    }
    UniformHypergraph::new(2, n, edges).unwrap()
}

/// Two-coloring by BFS, independent of any modular computation.
pub fn is_bipartite(g: &UniformHypergraph) -> bool {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        adj[e[0] - 1].push(e[1] - 1);
        adj[e[1] - 1].push(e[0] - 1);
    }
    let mut color = vec![usize::MAX; n];
    for s in 0..n {
        if color[s] != usize::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if color[w] == usize::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Connected building blocks for uniformity `m`, named.
pub fn base_family(m: usize, seed: u64) -> Vec<(String, UniformHypergraph)> {
    let mut out = vec![
        (format!("edge(m={m})"), gen(GeneratorSpec::single_edge(m))),
        (format!("path(m={m},s=2)"), gen(GeneratorSpec::path_hypertree(m, 2))),
        (format!("rtree(m={m},s=3,seed={seed})"), gen(GeneratorSpec::random_hypertree(m, 3, seed))),
        (format!("complete(m={m},n={})", m + 1), gen(GeneratorSpec::complete(m, m + 1))),
    ];
    for s in [2usize, 3, 4] {
        if s * (m - 1) >= 3 {
            out.push((format!("cycle(m={m},s={s})"), gen(GeneratorSpec::loose_cycle(m, s))));
        }
    }
    out
}

/// Standard corpus used by the oracle-agreement checks.
pub fn corpus() -> Vec<(String, UniformHypergraph)> {
    let mut out = Vec::new();
    for m in 2..=6usize {
        out.push((format!("edge(m={m})"), gen(GeneratorSpec::single_edge(m))));
    }
    for m in 3..=5usize {
        for s in 1..=3usize {
            out.push((format!("path(m={m},s={s})"), gen(GeneratorSpec::path_hypertree(m, s))));
            out.push((format!("rtree(m={m},s={s})"), gen(GeneratorSpec::random_hypertree(m, s, s as u64))));
        }
    }
    for (m, n) in [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6)] {
        out.push((format!("complete(m={m},n={n})"), gen(GeneratorSpec::complete(m, n))));
    }
    for (m, s) in [(2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (3, 5), (4, 2), (4, 3), (6, 2), (6, 3)] {
        out.push((format!("cycle(m={m},s={s})"), gen(GeneratorSpec::loose_cycle(m, s))));
    }
    let k4 = gen(GeneratorSpec::complete(3, 4));
    let e3 = gen(GeneratorSpec::single_edge(3));
    out.push(("bowtie(m=3)".into(), coalesce(&e3, 1, &e3, 1).unwrap()));
    out.push(("k4+edge".into(), coalesce(&k4, 1, &e3, 2).unwrap()));
    out.push((
        "cycle3+cycle3".into(),
        coalesce(&gen(GeneratorSpec::loose_cycle(3, 3)), 2, &gen(GeneratorSpec::loose_cycle(3, 2)), 4).unwrap(),
    ));
    let c6 = gen(GeneratorSpec::loose_cycle(6, 2));
    out.push(("cycle6+edge6".into(), coalesce(&c6, 3, &gen(GeneratorSpec::single_edge(6)), 1).unwrap()));
    for seed in 0..6u64 {
        out.push((format!("graph(n=7,seed={seed})"), random_connected_graph(7, (seed % 4) as usize, seed)));
    }
    // one block each; nontrivial torsion for m = 4
    for m in [3usize, 4, 6] {
        out.push((format!("twin(m={m})"), twin(m)));
    }
    out
}

/// Two edges sharing `m - 1` vertices.
pub fn twin(m: usize) -> UniformHypergraph {
    let mut e2: Vec<usize> = (1..m).collect();
    e2.push(m + 1);
    UniformHypergraph::new(m, m + 1, vec![(1..=m).collect(), e2]).unwrap()
}
