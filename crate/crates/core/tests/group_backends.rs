use coxflip_core::exec::Exec;
use coxflip_core::group::{restriction, ExplicitSet, MatrixGroup, StabilizerChain};
use coxflip_core::{CoxeterGraph, Family, GeneratorSet, Gf2Matrix};
use num_bigint::BigUint;
use proptest::prelude::*;

fn random_graph() -> impl Strategy<Value = CoxeterGraph> {
    (2usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges: Vec<_> = pairs
                .iter()
                .zip(keep)
                .filter_map(|(&e, k)| k.then_some(e))
                .collect();
            CoxeterGraph::build_custom(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chain_and_enumeration_agree(g in random_graph()) {
        let gens = GeneratorSet::new(&g);
        let n = g.n();
        // Skip the few graphs whose groups are too large for a quick test.
        let chain = StabilizerChain::new(gens.matrices(), n).unwrap();
        prop_assume!(chain.order() <= BigUint::from(200_000u32));
        let set = ExplicitSet::enumerate(gens.matrices(), n, 1 << 20, Exec::Sequential).unwrap();
        prop_assert_eq!(BigUint::from(set.len()), chain.order());
        for m in set.iter().step_by(97) {
            prop_assert!(chain.contains(&m));
        }
    }
}

#[test]
fn sequential_and_parallel_enumeration_agree() {
    let gens = GeneratorSet::new(&CoxeterGraph::build_family(Family::D, 6).unwrap());
    let a = ExplicitSet::enumerate(gens.matrices(), 6, 1 << 20, Exec::Sequential).unwrap();
    let b = ExplicitSet::enumerate(gens.matrices(), 6, 1 << 20, Exec::Parallel).unwrap();
    assert_eq!(a.len(), b.len());
    assert!(a.iter().eq(b.iter()));
}

#[test]
fn membership_rejects_outsiders() {
    let g = CoxeterGraph::build_family(Family::E, 6).unwrap();
    let gens = GeneratorSet::new(&g);
    let chain = MatrixGroup::chain(gens.matrices(), 6).unwrap();
    let explicit = MatrixGroup::flipping_group(&g).unwrap();
    // An elementary transvection not generated by the moves.
    let mut t = Gf2Matrix::identity(6).unwrap();
    t.set(0, 5, true);
    assert_eq!(chain.contains(&t), explicit.contains(&t));
    assert!(!chain.contains(&t));
    for s in gens.matrices() {
        assert!(chain.contains(s) && explicit.contains(s));
    }
}

#[test]
fn chain_handles_larger_families() {
    // Orders for D_n: 2^{n-2} n! (n even) or 2^{n-1} n! (n odd), by the kernel parity.
    for n in 7..=10u32 {
        let gens = GeneratorSet::new(&CoxeterGraph::build_family(Family::D, n as usize).unwrap());
        let order = StabilizerChain::new(gens.matrices(), n as usize).unwrap().order();
        let fact: BigUint = (1..=n).map(BigUint::from).product();
        let shift = if n % 2 == 0 { n - 2 } else { n - 1 };
        assert_eq!(order, fact << shift);
    }
}

#[test]
fn e6_restriction_to_d5() {
    let g = CoxeterGraph::build_family(Family::E, 6).unwrap();
    let pair = restriction(&g, &[2, 3, 4, 5, 6]).unwrap();
    let sub = MatrixGroup::chain(&pair.sub_generators, 6).unwrap();
    assert_eq!(sub.order(), BigUint::from(1920u32));
    let restricted = MatrixGroup::chain(&pair.restricted_generators, 5).unwrap();
    assert_eq!(restricted.order(), BigUint::from(1920u32));
}
