use std::sync::Arc;

use kerphi_abelian::{BlockDecomposition, ZVec};
use proptest::prelude::*;

fn decomposition() -> impl Strategy<Value = Arc<BlockDecomposition>> {
    prop::collection::vec(1usize..4, 3..7)
        .prop_map(|sizes| Arc::new(BlockDecomposition::new(sizes).unwrap()))
}

fn vectors(count: usize) -> impl Strategy<Value = (Arc<BlockDecomposition>, Vec<ZVec>)> {
    decomposition().prop_flat_map(move |dec| {
        let m = dec.m();
        let d = Arc::clone(&dec);
        prop::collection::vec(prop::collection::vec(-1000i64..1000, m), count).prop_map(
            move |rows| {
                let vs = rows
                    .into_iter()
                    .map(|r| ZVec::from_coords(&d, r).unwrap())
                    .collect();
                (Arc::clone(&d), vs)
            },
        )
    })
}

proptest! {
    #[test]
    fn blocks_partition_coordinates((dec, vs) in vectors(1)) {
        let v = &vs[0];
        let mut total = ZVec::zero(&dec);
        for j in 1..=dec.n() {
            let b = v.project_block(j).unwrap();
            total = total.add(&ZVec::embed_block(&dec, &b).unwrap()).unwrap();
        }
        prop_assert_eq!(&total, v);
    }

    #[test]
    fn projection_is_additive((dec, vs) in vectors(2)) {
        let sum = vs[0].add(&vs[1]).unwrap();
        for j in 1..=dec.n() {
            let lhs = sum.project_block(j).unwrap();
            let rhs = vs[0].project_block(j).unwrap().add(&vs[1].project_block(j).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn embed_then_project_round_trips((dec, vs) in vectors(1)) {
        for j in 1..=dec.n() {
            let b = vs[0].project_block(j).unwrap();
            let back = ZVec::embed_block(&dec, &b).unwrap().project_block(j).unwrap();
            prop_assert_eq!(back, b);
        }
    }

    #[test]
    fn addition_is_commutative_and_associative((_dec, vs) in vectors(3)) {
        let (a, b, c) = (&vs[0], &vs[1], &vs[2]);
        prop_assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
        prop_assert_eq!(a.add(b).unwrap().add(c).unwrap(), a.add(&b.add(c).unwrap()).unwrap());
        prop_assert!(a.add(&a.neg().unwrap()).unwrap().is_zero());
    }
}
