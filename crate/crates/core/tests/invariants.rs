//! Property tests over random small multigraphs, checked against the
//! brute-force counters in `common`.

mod common;

use common::*;
use kflow::oracle::oracle_enumerate;
use kflow::{
    corpus, count_compatible_tco, count_flows, count_nowhere_zero_integer, count_nowhere_zero_kvec,
    count_nowhere_zero_zk, enumerate_flows, enumerate_totally_cyclic, interpolate_univariate,
    is_totally_cyclic, per_orientation_closed_count, per_orientation_open_count,
    weighted_tco_flow_count, BoundMode, CapacityVector, Counter, FlowCountQuery, Multigraph,
    Orientation, PieceAtlas, Sign, ZeroMode,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

fn kvec(g: &Multigraph, k: &[u64]) -> BigUint {
    count_nowhere_zero_kvec(g, &caps(k)).unwrap()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn orientation_independence(c in arb_case(4)) {
        let flipped = c.graph.reoriented(&orientation_from_flips(&c.flips)).unwrap();
        prop_assert_eq!(kvec(&flipped, &c.k), kvec(&c.graph, &c.k));
        prop_assert_eq!(
            count_nowhere_zero_zk(&flipped, 3).unwrap(),
            count_nowhere_zero_zk(&c.graph, 3).unwrap()
        );
        prop_assert_eq!(
            enumerate_totally_cyclic(&flipped).unwrap().len(),
            enumerate_totally_cyclic(&c.graph).unwrap().len()
        );
    }

    #[test]
    fn automorphism_symmetry(c in arb_case(4)) {
        let auts = automorphisms(&c.graph);
        let perm = &auts[c.pick % auts.len()];
        let mut moved = vec![0; c.k.len()];
        for (e, &k) in c.k.iter().enumerate() {
            moved[perm[e]] = k;
        }
        prop_assert_eq!(kvec(&c.graph, &moved), kvec(&c.graph, &c.k));
    }

    #[test]
    fn negation_symmetry(c in arb_case(4)) {
        let q = FlowCountQuery::nowhere_zero(caps(&c.k));
        let mut flows = enumerate_flows(&c.graph, &q).unwrap();
        let mut negated: Vec<_> = flows.iter().map(|x| x.negated()).collect();
        flows.sort();
        negated.sort();
        prop_assert_eq!(&flows, &negated);
        if c.graph.edge_count() > 0 {
            prop_assert_eq!(flows.len() % 2, 0);
        }
    }

    #[test]
    fn monotonicity(c in arb_case(4)) {
        let larger: Vec<u64> = c.k.iter().zip(&c.bump).map(|(k, b)| k + b).collect();
        prop_assert!(kvec(&c.graph, &c.k) <= kvec(&c.graph, &larger));
    }

    #[test]
    fn bridge_annihilation(c in arb_case(4)) {
        let n = c.graph.vertex_count();
        let edges = c.graph.edges().iter().map(|e| (e.tail, e.head)).chain([(n - 1, n)]);
        let pendant = Multigraph::new(n + 1, edges).unwrap();
        let mut k = c.k.clone();
        k.push(4);
        prop_assert!(!pendant.is_bridgeless());
        prop_assert_eq!(kvec(&pendant, &k), BigUint::from(0u32));
        for z in 1..=4 {
            prop_assert_eq!(count_nowhere_zero_zk(&pendant, z).unwrap(), BigUint::from(0u32));
        }
        prop_assert!(enumerate_totally_cyclic(&pendant).unwrap().is_empty());
    }

    #[test]
    fn specialization(c in arb_case(1), k in 1u64..=5) {
        let uniform = vec![k; c.graph.edge_count()];
        prop_assert_eq!(kvec(&c.graph, &uniform), count_nowhere_zero_integer(&c.graph, k).unwrap());
    }

    #[test]
    fn per_orientation_decomposition(c in arb_case(3)) {
        let tcos = enumerate_totally_cyclic(&c.graph).unwrap();
        let total: BigUint = tcos
            .iter()
            .map(|s| per_orientation_open_count(&c.graph, s, &caps(&c.k)).unwrap())
            .sum();
        prop_assert_eq!(total, kvec(&c.graph, &c.k));
    }

    #[test]
    fn nowhere_zero_flows_have_one_compatible_orientation(c in arb_case(3)) {
        for x in enumerate_flows(&c.graph, &FlowCountQuery::nowhere_zero(caps(&c.k))).unwrap() {
            prop_assert_eq!(count_compatible_tco(&c.graph, &x).unwrap(), 1);
            let induced = Orientation::new(
                x.values().iter().map(|&v| if v > 0 { Sign::Plus } else { Sign::Minus }).collect(),
            );
            prop_assert!(is_totally_cyclic(&c.graph, &induced).unwrap());
        }
    }

    #[test]
    fn reversal_pairs_orientations(c in arb_case(1)) {
        let tcos = enumerate_totally_cyclic(&c.graph).unwrap();
        for s in tcos.iter() {
            prop_assert!(tcos.contains(&s.reversed()));
        }
        if c.graph.edge_count() > 0 {
            prop_assert_eq!(tcos.len() % 2, 0);
        }
    }

}

// These scan whole capacity boxes, so they run fewer cases.
proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn counts_match_brute_force(c in arb_case(3)) {
        prop_assert_eq!(kvec(&c.graph, &c.k), BigUint::from(brute_nowhere_zero(&c.graph, &c.k)));
        for k in 1..=3 {
            prop_assert_eq!(count_nowhere_zero_zk(&c.graph, k).unwrap(), BigUint::from(brute_zk(&c.graph, k)));
        }
    }

    #[test]
    fn orientation_multiplicity_identity(c in arb_case(2)) {
        let tcos = enumerate_totally_cyclic(&c.graph).unwrap();
        let weighted = weighted_tco_flow_count(&c.graph, &c.k).unwrap();
        let closed: BigUint = tcos
            .iter()
            .map(|s| per_orientation_closed_count(&c.graph, s, &caps(&c.k)).unwrap())
            .sum();
        let list: Vec<Orientation> = tcos.iter().cloned().collect();
        prop_assert_eq!(&weighted, &closed);
        prop_assert_eq!(weighted, BigUint::from(brute_weighted(&c.graph, &c.k, &list)));
    }

    #[test]
    fn oracle_equivalence(c in arb_case(2)) {
        for bound in [BoundMode::Open, BoundMode::Closed] {
            for zeros in [ZeroMode::NowhereZero, ZeroMode::ZerosAllowed] {
                let q = FlowCountQuery::new(caps(&c.k), bound, zeros);
                let mut fast = enumerate_flows(&c.graph, &q).unwrap();
                let mut slow = oracle_enumerate(&c.graph, &q).unwrap();
                fast.sort();
                slow.sort();
                prop_assert_eq!(count_flows(&c.graph, &q).unwrap(), BigUint::from(fast.len()));
                prop_assert_eq!(fast, slow);
            }
        }
    }
}

#[test]
fn univariate_consistency() {
    for (name, g) in corpus::bridgeless() {
        if g.edge_count() > 6 {
            continue;
        }
        let xi = g.cyclomatic_number();
        let uni = interpolate_univariate(Counter::Integer, &g, xi).unwrap();
        assert_eq!(uni.total_degree(), Some(xi as u32), "{name}");
        let mut atlas = PieceAtlas::new(&g).unwrap();
        for k in 2..=4u64 {
            let point = CapacityVector::uniform(g.edge_count(), k).unwrap();
            let Ok(i) = atlas.locate(&point) else {
                continue;
            };
            let at_point = atlas.pieces()[i]
                .piece
                .evaluate_i64(&vec![k as i64; g.edge_count()])
                .unwrap();
            let along = uni.evaluate_i64(&[k as i64]).unwrap();
            assert_eq!(at_point, along, "{name} at k = {k}");
            assert_eq!(
                at_point,
                BigRational::from_integer(BigInt::from(kvec(&g, point.values())))
            );
        }
    }
}
