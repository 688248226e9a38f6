use kerphi_factor::{Letter, Word};
use kerphi_product::{Instance, ProductElement};
use proptest::prelude::*;

fn word(p: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..p, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn element(n: usize) -> impl Strategy<Value = ProductElement> {
    prop::collection::vec(word(2 * n, 6), 2 * n).prop_map(ProductElement::from_entries)
}

fn subset(two_n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(any::<bool>(), two_n)
        .prop_map(|bits| bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1).collect())
}

#[test]
fn padded_calculus_example() {
    let inst = Instance::doubled_free(3).unwrap();
    let a = ProductElement::from_entries((0..6).map(|i| Word::gen(i).mul(&Word::gen(5 - i))).collect());
    let b = ProductElement::from_entries((0..6).map(Word::gen).collect());
    let alpha6 = [6];
    let complement = [1, 2, 3, 4, 5];
    let lhs = a.multiply(&a.pad(alpha6).invert().multiply(&b.pad(alpha6)));
    let rhs = a.pad(complement).multiply(&b.pad(alpha6));
    assert_eq!(lhs, rhs);
    assert_eq!(ProductElement::convert(&a, &b, alpha6), a.pad(alpha6).invert().multiply(&b.pad(alpha6)));
    assert_eq!(inst.two_n(), 6);
}

proptest! {
    #[test]
    fn phi_is_a_homomorphism(g in element(3), h in element(3)) {
        let inst = Instance::doubled_free(3).unwrap();
        let lhs = inst.phi(&g.multiply(&h)).unwrap();
        let rhs = inst.phi(&g).unwrap().add(&inst.phi(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_laws(g in element(4), h in element(4), k in element(4)) {
        prop_assert!(g.multiply(&g.invert()).is_identity());
        prop_assert_eq!(g.multiply(&h).invert(), h.invert().multiply(&g.invert()));
        prop_assert_eq!(g.multiply(&h).multiply(&k), g.multiply(&h.multiply(&k)));
    }

    #[test]
    fn complementary_pads_recombine(g in element(3), a in subset(6)) {
        let comp: Vec<usize> = (1..=6).filter(|i| !a.contains(i)).collect();
        prop_assert_eq!(g.pad(a.iter().copied()).multiply(&g.pad(comp.iter().copied())), g.clone());
        prop_assert_eq!(g.pad(comp.iter().copied()).multiply(&g.pad(a.iter().copied())), g);
    }

    #[test]
    fn restricted_distance_is_a_sub_sum(g in element(3), h in element(3), a in subset(6)) {
        let inst = Instance::doubled_free(3).unwrap();
        let comp: Vec<usize> = (1..=6).filter(|i| !a.contains(i)).collect();
        let da = inst.restricted_distance(&g, &h, a.iter().copied()).unwrap();
        let dc = inst.restricted_distance(&g, &h, comp.iter().copied()).unwrap();
        let total = inst.l1_distance(&g, &h).unwrap();
        prop_assert!(da.value <= total.value);
        prop_assert_eq!(da.value + dc.value, total.value);
        prop_assert!(total.exact);
    }
}
