//! Property tests over generated hypergraphs: format round trip, product
//! and coalescence identities, blocks, and oracle agreement.

mod common;

use common::gen;
use hyperindex::format::{parse_uhg, serialize_uhg};
use hyperindex::hypergraph::{
    blocks, cartesian_incidence_canonical, cartesian_product, coalesce, kronecker_incidence, GeneratorKind,
    GeneratorSpec, UniformHypergraph,
};
use hyperindex::indices::{cyclic_index, predict_cartesian, predict_coalescence, stabilizing_index};
use hyperindex::oracle::{brute_cyclic_jobs, brute_stabilizing, brute_stabilizing_jobs};
use num_bigint::BigUint;
use num_integer::Integer;
use proptest::prelude::*;

fn spec_for(m: usize) -> BoxedStrategy<GeneratorSpec> {
    let cycle_min = if m == 2 { 3 } else { 2 };
    prop_oneof![
        Just(GeneratorSpec::single_edge(m)),
        (1usize..=5).prop_map(move |s| GeneratorSpec::path_hypertree(m, s)),
        (1usize..=5, any::<u64>()).prop_map(move |(s, seed)| GeneratorSpec::random_hypertree(m, s, seed)),
        (m + 1..=m + 3).prop_map(move |n| GeneratorSpec::complete(m, n)),
        (cycle_min..=5usize).prop_map(move |s| GeneratorSpec::loose_cycle(m, s)),
    ]
    .boxed()
}

fn spec() -> impl Strategy<Value = GeneratorSpec> {
    (2usize..=6).prop_flat_map(spec_for)
}

fn spec_pair() -> impl Strategy<Value = (GeneratorSpec, GeneratorSpec)> {
    (2usize..=5).prop_flat_map(|m| (spec_for(m), spec_for(m)))
}

fn small_hypergraph() -> impl Strategy<Value = UniformHypergraph> {
    spec().prop_map(gen).prop_filter("brute force stays small", |g| {
        (g.uniformity() as f64).powi(g.vertex_count() as i32) <= 50_000.0
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parse_serialize_identity(s in spec()) {
        let g = gen(s);
        let text = serialize_uhg(&g);
        prop_assert_eq!(&parse_uhg(&text).unwrap().hypergraph, &g);
        prop_assert!(text.ends_with('\n'));
    }

    #[test]
    fn generators_are_deterministic(s in spec()) {
        prop_assert_eq!(gen(s), gen(s));
    }

    #[test]
    fn hypertree_shape_and_index(m in 2usize..=6, s in 1usize..=6, seed in any::<u64>()) {
        let t = gen(GeneratorSpec::random_hypertree(m, s, seed));
        prop_assert!(t.is_hypertree());
        prop_assert_eq!(t.vertex_count(), s * (m - 1) + 1);
        let r = stabilizing_index(&t).unwrap();
        prop_assert_eq!(r.stabilizing_index, BigUint::from(m).pow((s * (m - 2)) as u32));
        prop_assert_eq!(r.cyclic_index, m as u64);
        // every block of a hypertree is a single edge
        let dec = blocks(&t).unwrap();
        prop_assert_eq!(dec.blocks.len(), s);
        prop_assert!(dec.blocks.iter().all(|b| b.hypergraph.edge_count() == 1));
    }

    #[test]
    fn report_is_self_consistent(s in spec()) {
        let g = gen(s);
        let r = stabilizing_index(&g).unwrap();
        prop_assert_eq!(r.rank() + r.free_rank, g.vertex_count() - 1);
        prop_assert_eq!(r.cardinality_from_divisors(), r.stabilizing_index.clone());
        prop_assert_eq!(r.decomposition.cardinality(r.modulus()), r.stabilizing_index.clone());
        for w in r.invariant_divisors.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        prop_assert!(r.invariant_divisors.iter().all(|&d| (g.uniformity() as u64).is_multiple_of(d)));
        prop_assert_eq!((g.uniformity() as u64) % r.cyclic_index, 0);
        let c = cyclic_index(&g).unwrap();
        prop_assert_eq!(c.value, r.cyclic_index);
    }

    #[test]
    fn brute_force_matches_snf(g in small_hypergraph(), jobs in 1usize..=4) {
        let r = stabilizing_index(&g).unwrap();
        prop_assert_eq!(BigUint::from(brute_stabilizing_jobs(&g, 1_000_000, jobs).unwrap()), r.stabilizing_index);
        prop_assert_eq!(brute_cyclic_jobs(&g, 1_000_000, jobs).unwrap(), r.cyclic_index);
    }

    #[test]
    fn coalescence_laws((a, b) in spec_pair(), v1 in any::<prop::sample::Index>(), v2 in any::<prop::sample::Index>()) {
        let g1 = gen(a);
        let g2 = gen(b);
        let g = coalesce(&g1, v1.index(g1.vertex_count()) + 1, &g2, v2.index(g2.vertex_count()) + 1).unwrap();
        let (r1, r2, r) = (stabilizing_index(&g1).unwrap(), stabilizing_index(&g2).unwrap(), stabilizing_index(&g).unwrap());
        prop_assert_eq!(g.vertex_count(), g1.vertex_count() + g2.vertex_count() - 1);
        prop_assert_eq!(&r.stabilizing_index, &(&r1.stabilizing_index * &r2.stabilizing_index));
        prop_assert_eq!(r.cyclic_index, r1.cyclic_index.gcd(&r2.cyclic_index));
        prop_assert!(predict_coalescence(&r1, &r2).unwrap().agrees_with(&r));
    }

    #[test]
    fn cartesian_laws((a, b) in spec_pair()) {
        let g1 = gen(a);
        let g2 = gen(b);
        prop_assume!(g1.vertex_count() * g2.vertex_count() <= 120);
        let p = cartesian_product(&g1, &g2).unwrap();
        prop_assert_eq!(p.vertex_count(), g1.vertex_count() * g2.vertex_count());
        prop_assert_eq!(p.edge_count(), g1.vertex_count() * g2.edge_count() + g1.edge_count() * g2.vertex_count());
        prop_assert_eq!(kronecker_incidence(&g1, &g2).unwrap(), cartesian_incidence_canonical(&g1, &g2).unwrap());
        let (r1, r2) = (stabilizing_index(&g1).unwrap(), stabilizing_index(&g2).unwrap());
        let r = stabilizing_index(&p).unwrap();
        prop_assert!(predict_cartesian(&r1, &r2).unwrap().agrees_with(&r));
    }
}

#[test]
fn generator_kinds_round_trip_names() {
    for kind in [
        GeneratorKind::SingleEdge,
        GeneratorKind::PathHypertree,
        GeneratorKind::RandomHypertree,
        GeneratorKind::Complete,
        GeneratorKind::LooseCycle,
    ] {
        assert_eq!(kind.name().parse::<GeneratorKind>().unwrap(), kind);
    }
}

#[test]
fn torsion_example_matches_brute_force() {
    // edge sums a+b, a+c, b+c over vertex pairs; 2a = 0 leaves a Z_2 summand
    let g = UniformHypergraph::new(4, 6, vec![vec![1, 2, 3, 4], vec![1, 2, 5, 6], vec![3, 4, 5, 6]]).unwrap();
    let r = stabilizing_index(&g).unwrap();
    assert_eq!(r.invariant_divisors, vec![1, 1, 2]);
    assert_eq!(r.decomposition.cyclic_orders, vec![2]);
    assert_eq!(BigUint::from(brute_stabilizing(&g, 1_000_000).unwrap()), r.stabilizing_index);
    assert_eq!(r.stabilizing_index, BigUint::from(32u32));
}
