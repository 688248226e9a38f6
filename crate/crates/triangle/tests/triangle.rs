use std::collections::BTreeSet;
use std::sync::Arc;

use kerphi_lattice::{Generator, Label, Lattice};
use kerphi_product::{Instance, ProductElement};
use kerphi_triangle::{area_bound, Actualization, BoundExpr, BoundTerm, Local, Triangle, TriangleError, VertexId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn triangle(n: usize) -> Triangle {
    let inst = Arc::new(Instance::doubled_free(n).unwrap());
    Triangle::new(Arc::new(Lattice::new(inst).unwrap()))
}

fn random_kernel(lat: &Lattice, rng: &mut ChaCha8Rng, max_size: usize) -> ProductElement {
    let xbar: Vec<Generator> = lat
        .xbar()
        .into_iter()
        .filter(|g| !g.is_trivial(lat.instance()))
        .collect();
    loop {
        let len = rng.gen_range(0..=max_size / 2);
        let word: Vec<_> = (0..len)
            .map(|_| xbar[rng.gen_range(0..xbar.len())].letter(rng.gen_bool(0.5)))
            .collect();
        let g = lat.evaluate(&word).unwrap();
        if g.size() <= max_size {
            return g;
        }
    }
}

#[test]
fn identity_pair_gives_empty_path() {
    let t = triangle(3);
    let e = t.lattice().instance().identity();
    let p = t.spanning_path(&e, &e).unwrap();
    assert_eq!(p.segments.len(), 7);
    assert!(p.segments.iter().all(|s| s.is_empty() && s.bound_value.value == 0));
    assert_eq!(p.bound6.value, 0);
}

#[test]
fn identity_triple_gives_empty_loops() {
    let t = triangle(4);
    let e = t.lattice().instance().identity();
    let act = t.actualize(&e, &e, &e).unwrap();
    assert!(act.values.iter().all(ProductElement::is_identity));
    assert!(act.regions.iter().all(|r| r.word.is_empty()));
    assert_eq!(act.d.value, 0);
}

#[test]
fn spanning_path_labels_and_record_bounds() {
    let t = triangle(3);
    let e = t.lattice().instance().identity();
    let p = t.spanning_path(&e, &e).unwrap();
    let labels: Vec<String> = p.segments.iter().map(|s| s.label.to_string()).collect();
    assert_eq!(labels, ["G6N", "A3N(1,6)", "G12[456]", "A1(1,4)", "G34[156]", "A2N(3,5)", "G5N"]);
    let bounds: Vec<String> = p.segments.iter().map(|s| s.bound.to_string()).collect();
    assert_eq!(
        bounds,
        ["d6(a,b)", "d6(a,b)", "d12(a,b)", "d345(a,b)", "d34(b,a)", "d5(b,a)", "d5(b,a)"]
    );
    let names: Vec<String> = p.vertices.iter().map(|v| v.name()).collect();
    assert_eq!(names, ["A", "AC1", "AC2", "A1", "C2", "CA2", "CA1", "C"]);
}

#[test]
fn spanning_path_for_a_single_vector_generator() {
    let t = triangle(3);
    let lat = t.lattice();
    let inst = lat.instance();
    let a = lat.realize(Generator::Z { j: 1, i: 1, k: 4, b: 1 }).unwrap();
    let b = inst.identity();
    let p = t.spanning_path(&a, &b).unwrap();
    let lengths: Vec<usize> = p.segments.iter().map(|s| s.len()).collect();
    // Cross-check every restricted distance against breadth-first search.
    for s in &p.segments {
        let mut bfs = 0;
        for term in &s.bound.0 {
            let (x, y) = ([&a, &b][term.x as usize], [&a, &b][term.y as usize]);
            for &c in &term.classes {
                for &i in lat.sequences().alpha(c as usize) {
                    bfs += inst.factor(i).unwrap().bfs_distance(x.entry(i), y.entry(i)).unwrap().value;
                }
            }
        }
        assert_eq!(s.bound_value.value, bfs);
        assert!(s.len() as u64 <= bfs);
    }
    assert_eq!(lengths, [0, 0, 1, 1, 1, 0, 0]);
    assert_eq!(p.len(), 3);
    assert_eq!(p.bound6.value, 4);
}

#[test]
fn p4_agrees_with_p4_prime() {
    let t = triangle(5);
    let lat = t.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let e = lat.instance().identity();
    for _ in 0..20 {
        let a = random_kernel(lat, &mut rng, 20);
        let b = random_kernel(lat, &mut rng, 20);
        let find = |n: &str| kerphi_triangle::FORMULAS.iter().find(|f| f.name == n).unwrap();
        let p4 = find("P4").evaluate(lat, [&a, &b, &e]).unwrap();
        let p4p = find("P4'").evaluate(lat, [&a, &b, &e]).unwrap();
        assert_eq!(p4, p4p);
        let p = t.spanning_path(&a, &b).unwrap();
        assert_eq!(p.values[3], p4);
    }
}

#[test]
fn middle_segment_also_meets_the_other_bound() {
    let t = triangle(3);
    let lat = t.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let a = random_kernel(lat, &mut rng, 20);
        let b = random_kernel(lat, &mut rng, 20);
        let p = t.spanning_path(&a, &b).unwrap();
        let d126 = lat
            .instance()
            .restricted_distance(&a, &b, lat.sequences().union(&[1, 2, 6]))
            .unwrap();
        assert!(p.segments[3].len() as u64 <= d126.value);
    }
}

#[test]
fn single_generator_displacements_stay_within_six() {
    let t = triangle(3);
    let lat = t.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let bases = [lat.instance().identity(), random_kernel(lat, &mut rng, 12)];
    for a in &bases {
        for g in lat.xbar() {
            let x = lat.realize(g).unwrap();
            let b = a.multiply(&x);
            let p = t.spanning_path(a, &b).unwrap();
            assert!(p.len() <= 6, "{g}: {}", p.len());
            assert!(p.bound6.value <= 6);
            if matches!(g, Generator::Y { .. }) {
                assert!(p.bound6.value <= 3);
            }
        }
    }
}

#[test]
fn region_census_per_third() {
    let t = triangle(3);
    let tpl = t.template();
    let third0: Vec<String> = tpl.faces[..8].iter().map(|f| f.label.to_string()).collect();
    assert_eq!(third0, ["G36N", "A3G3N", "A3G6N", "A33N", "G123", "G126", "A3G12", "A1G23"]);
    assert_eq!(tpl.faces[24].label, Label::L);
    let all: BTreeSet<Label> = tpl.faces.iter().map(|f| f.label).collect();
    assert_eq!(all.len(), 25);
}

#[test]
fn every_edge_group_lies_in_its_faces() {
    let t = triangle(4);
    let tpl = t.template();
    for e in 0..tpl.edges.len() {
        for f in tpl.faces_of_edge(e) {
            let r = t.lattice().verify_edge_in_face(tpl.edges[e].label, tpl.faces[f].label).unwrap();
            assert!(r.pass, "{} in {}", tpl.edges[e].label, tpl.faces[f].label);
        }
    }
}

#[test]
fn random_triples_actualize() {
    for n in [3, 4, 5] {
        let t = triangle(n);
        let lat = t.lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..10 {
            let a = random_kernel(lat, &mut rng, 16);
            let b = random_kernel(lat, &mut rng, 16);
            let c = random_kernel(lat, &mut rng, 16);
            let act = t.actualize(&a, &b, &c).unwrap();
            assert_eq!(act.segments.len(), 60);
            assert_eq!(act.regions.len(), 25);
            for r in 0..3 {
                let side = act.side_word(t.template(), r);
                let (x, y) = (&act.triple[r], &act.triple[(r + 1) % 3]);
                assert_eq!(&x.multiply(&lat.evaluate(&side).unwrap()), y);
            }
            let d = act.d.value;
            for s in &act.segments {
                assert!(s.len() as u64 <= 4 * d);
            }
        }
    }
}

#[test]
fn sides_match_standalone_spanning_paths() {
    let t = triangle(3);
    let lat = t.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let a = random_kernel(lat, &mut rng, 16);
    let b = random_kernel(lat, &mut rng, 16);
    let c = random_kernel(lat, &mut rng, 16);
    let act = t.actualize(&a, &b, &c).unwrap();
    let pairs = [(&a, &b), (&b, &c), (&c, &a)];
    for (r, (x, y)) in pairs.into_iter().enumerate() {
        let side = act.side_word(t.template(), r);
        let p = t.spanning_path(x, y).unwrap();
        assert_eq!(p.len(), side.len(), "side {r}");
        let v = p.values.clone();
        assert_eq!(v[0], *x);
    }
}

#[test]
fn area_bound_quadratic_example() {
    let t = triangle(3);
    let e = t.lattice().instance().identity();
    let mut act: Actualization = t.actualize(&e, &e, &e).unwrap();
    act.d.value = 10;
    let ab = area_bound(&act, |x| (x as u128) * (x as u128));
    assert_eq!(ab.total, 1_440_000);
    assert_eq!(ab.per_region, 0);
    act.d.value = 0;
    assert_eq!(area_bound(&act, |x| x as u128 + 1).total, 25);
}

#[test]
fn per_region_area_stays_below_total() {
    let t = triangle(3);
    let lat = t.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..5 {
        let a = random_kernel(lat, &mut rng, 16);
        let b = random_kernel(lat, &mut rng, 16);
        let c = random_kernel(lat, &mut rng, 16);
        let act = t.actualize(&a, &b, &c).unwrap();
        let ab = area_bound(&act, |x| (x as u128) * (x as u128));
        assert!(ab.per_region <= ab.total);
    }
}

#[test]
fn non_kernel_inputs_are_rejected() {
    let t = triangle(3);
    let inst = t.lattice().instance();
    let x = ProductElement::single(6, 1, "x1".parse().unwrap());
    let e = inst.identity();
    assert!(matches!(t.spanning_path(&x, &e), Err(TriangleError::NotInKernel(_))));
    assert!(matches!(t.actualize(&e, &e, &x), Err(TriangleError::NotInKernel(_))));
}

fn failing_context(t: &Triangle, seed: u64) -> Option<String> {
    let lat = t.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let a = random_kernel(lat, &mut rng, 16);
        let b = random_kernel(lat, &mut rng, 16);
        let c = random_kernel(lat, &mut rng, 16);
        if let Err(TriangleError::Verification { context, .. }) = t.actualize(&a, &b, &c) {
            return Some(context);
        }
    }
    None
}

#[test]
fn corrupted_templates_are_caught() {
    let base = triangle(3);
    let lat = base.lattice().clone();

    let mut tpl = base.template().clone();
    tpl.edges[3].bound = BoundExpr(vec![BoundTerm { classes: vec![6], x: 0, y: 1 }]);
    let ctx = failing_context(&Triangle::with_template(lat.clone(), tpl), 1).expect("tight bound");
    assert!(ctx.starts_with("segment A1 → C2"), "{ctx}");

    let mut tpl = base.template().clone();
    tpl.faces[0].label = Label::GN(1);
    let ctx = failing_context(&Triangle::with_template(lat.clone(), tpl), 2).expect("wrong face");
    assert!(ctx.starts_with("region G14N"), "{ctx}");

    let mut tpl = base.template().clone();
    let inr = VertexId::new(0, Local::InR);
    tpl.specs[inr.0].la = "(1 2 3 ; 4 5 3)".parse().unwrap();
    assert!(failing_context(&Triangle::with_template(lat.clone(), tpl), 3).is_some());

    let mut tpl = base.template().clone();
    tpl.edges[0].label = "G3N".parse().unwrap();
    assert!(failing_context(&Triangle::with_template(lat, tpl), 4).is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn actualization_invariants_hold(seed in any::<u64>(), n in 3usize..=4) {
        let t = triangle(n);
        let lat = t.lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_kernel(lat, &mut rng, 12);
        let b = random_kernel(lat, &mut rng, 12);
        let c = random_kernel(lat, &mut rng, 12);
        let act = t.actualize(&a, &b, &c).unwrap();
        for v in &act.values {
            prop_assert!(lat.instance().in_kernel(v).unwrap());
        }
        for r in &act.regions {
            prop_assert!(lat.evaluate(&r.word).unwrap().is_identity());
            prop_assert!(r.perimeter() as u64 <= 24 * act.d.value);
        }
    }

    #[test]
    fn spanning_path_total_within_bound6(seed in any::<u64>()) {
        let t = triangle(3);
        let lat = t.lattice();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_kernel(lat, &mut rng, 20);
        let b = random_kernel(lat, &mut rng, 20);
        let p = t.spanning_path(&a, &b).unwrap();
        prop_assert!(p.len() as u64 <= p.bound6.value);
        prop_assert_eq!(a.multiply(&lat.evaluate(&p.word()).unwrap()), b);
    }
}
