use std::sync::Arc;

use kerphi_filler::{
    dominance_check, pad_loop, random_kernel_loop, superadditive_closure, tessellate, Branch, DehnModel, FareyDiagram,
    Filler, FillerError, KernelLoop, QUARTER,
};
use kerphi_lattice::{Generator, Lattice};
use kerphi_product::Instance;
use kerphi_triangle::Triangle;
use proptest::prelude::*;

fn triangle(n: usize) -> Triangle {
    let inst = Arc::new(Instance::doubled_free(n).unwrap());
    Triangle::new(Arc::new(Lattice::new(inst).unwrap()))
}

fn stays(len: usize) -> KernelLoop {
    KernelLoop { steps: vec![None; len] }
}

/// `x²` on even arguments, `x² + 50x` on odd ones.
fn parity_model(len: usize) -> DehnModel {
    let t = (0..len as u128).map(|x| if x % 2 == 0 { x * x } else { x * x + 50 * x }).collect();
    DehnModel::table(t, false)
}

#[test]
fn padding_brackets_the_length() {
    assert_eq!(pad_loop(&stays(3)).unwrap().1, 0);
    assert_eq!(pad_loop(&stays(3)).unwrap().0.len(), 3);
    let (p, k) = pad_loop(&stays(7)).unwrap();
    assert_eq!((k, p.len()), (2, 12));
    assert!(3 << (k - 1) <= 7 && 7 <= 3 << k);
    assert_eq!(pad_loop(&stays(96)).unwrap().1, 5);
    assert_eq!(pad_loop(&stays(96)).unwrap().0.len(), 96);
    for len in 3..=400usize {
        let (p, k) = pad_loop(&stays(len)).unwrap();
        assert_eq!(p.len(), 3 << k);
        assert!(len <= 3 << k);
        assert!(k == 0 || 3 << (k - 1) <= len);
    }
    assert!(matches!(pad_loop(&stays(2)), Err(FillerError::Loop(_))));
}

#[test]
fn census_matches_closed_form() {
    for k in 0..=8u32 {
        let d = FareyDiagram::layout(k);
        let c = d.census();
        assert_eq!(c.enumerated, 3 * (1 << (k + 2)) - 2, "k = {k}");
        assert!(c.matches());
        assert_eq!(c.nondegenerate, 3 * (1 << k) - 2);
        assert_eq!(c.bigons, 3 << k);
        for depth in 1..=(k as usize + 2) {
            let count = d.triangles.iter().filter(|t| t.depth() == depth).count();
            assert_eq!(count, 3 << (depth - 1));
        }
    }
    assert_eq!(FareyDiagram::layout(2).census().enumerated, 46);
    assert_eq!(FareyDiagram::layout(0).census().nondegenerate, 1);
}

/// Labels by inserting all midpoints layer by layer: the new letter is the one
/// missing from both neighbours, and the sequence extends the deeper
/// neighbour's.
fn layered_labels(k: u32) -> Vec<(char, Vec<u8>)> {
    let circ = (QUARTER * (3 << k)) as usize;
    let mut labels: Vec<Option<(char, Vec<u8>)>> = vec![None; circ];
    labels[0] = Some(('a', vec![]));
    labels[circ / 3] = Some(('b', vec![]));
    labels[2 * circ / 3] = Some(('c', vec![]));
    let mut gap = circ / 3;
    let mut layer = 0;
    while gap > 1 {
        layer += 1;
        let half = gap / 2;
        for v in (half..circ).step_by(gap) {
            let (l, r) = (labels[v - half].clone().unwrap(), labels[(v + half) % circ].clone().unwrap());
            let letter = ['a', 'b', 'c'].into_iter().find(|&x| x != l.0 && x != r.0).unwrap();
            if layer > 1 {
                assert_ne!(l.1.len(), r.1.len());
            }
            let deeper = if l.1.len() >= r.1.len() { l.1 } else { r.1 };
            let mut beta = deeper;
            beta.push(letter as u8 - b'a' + 1);
            labels[v] = Some((letter, beta));
        }
        gap = half;
    }
    labels.into_iter().map(Option::unwrap).collect()
}

#[test]
fn labels_follow_the_neighbour_rule() {
    for k in 0..=6 {
        let d = FareyDiagram::layout(k);
        assert!(d.label_violations().is_empty(), "k = {k}: {:?}", d.label_violations());
        let oracle = layered_labels(k);
        for (v, (letter, beta)) in d.vertex_labels.iter().zip(oracle) {
            assert_eq!((v.letter, &v.beta), (letter, &beta), "position {}", v.position);
            assert_eq!(v.depth(), v.beta.len());
        }
    }
}

#[test]
fn depth_one_vertex_between_c_and_a_is_b2() {
    let d = FareyDiagram::layout(3);
    let circ = QUARTER * 24;
    let v = &d.vertex_labels[(5 * circ / 6) as usize];
    assert_eq!((v.letter, v.beta.as_slice()), ('b', &[2u8][..]));
    assert_eq!(v.name(), "b_2");
    let a3 = &d.vertex_labels[(circ / 6) as usize];
    assert_eq!(a3.name(), "c_3");
}

#[test]
fn each_bigon_has_one_owner_of_full_depth() {
    for k in 0..=5 {
        let d = FareyDiagram::layout(k);
        for b in &d.bigons {
            let t = &d.triangles[b.triangle];
            assert!(!t.degenerate);
            assert_eq!(t.depth(), k as usize);
            let (x, y) = t.side(b.side);
            let (from, to) = if b.forward { (x, y) } else { (y, x) };
            assert_eq!(from, QUARTER * b.step as u64);
            assert_eq!(to % (QUARTER * (3 << k)), (QUARTER * (b.step as u64 + 1)) % (QUARTER * (3 << k)));
        }
    }
}

fn partitions(n: usize, max: usize, f: &[u128], best: &mut u128, acc: u128) {
    if n == 0 {
        *best = (*best).max(acc);
        return;
    }
    for part in (1..=n.min(max)).rev() {
        partitions(n - part, part, f, best, acc + f[part - 1]);
    }
}

fn brute_closure(f: &[u128]) -> Vec<u128> {
    (1..=f.len())
        .map(|n| {
            let mut best = 0;
            partitions(n, n, f, &mut best, 0);
            best
        })
        .collect()
}

#[test]
fn closure_examples() {
    let sq: Vec<u128> = (1..=30u128).map(|x| x * x).collect();
    assert_eq!(superadditive_closure(&sq), sq);
    let mut f = vec![1u128; 10];
    f[0] = 5;
    let c = superadditive_closure(&f);
    assert_eq!(&c[..3], &[5, 10, 15]);
    assert_eq!(brute_closure(&f)[..3], [5, 10, 15]);
}

proptest! {
    #[test]
    fn closure_is_partition_maximum(f in proptest::collection::vec(0u128..1000, 1..=20)) {
        let c = superadditive_closure(&f);
        prop_assert_eq!(&c, &brute_closure(&f));
        for i in 0..f.len() {
            prop_assert!(c[i] >= f[i]);
            for j in 0..f.len() {
                if i + j + 1 < f.len() {
                    prop_assert!(c[i + j + 1] >= c[i] + c[j]);
                }
            }
        }
    }
}

#[test]
fn dominance_examples() {
    let sq = |n: u64| (n as u128) * (n as u128);
    let lin = |n: u64| n as u128;
    assert_eq!(dominance_check(sq, sq, 10, 100).c, Some(1));
    assert_eq!(dominance_check(lin, sq, 10, 1000).c, Some(1));
    let v = dominance_check(sq, lin, 2, 100);
    assert_eq!(v.c, None);
    assert!(v.heuristic);
}

#[test]
fn superadditivity_of_ratio() {
    assert!(DehnModel::quadratic().check_superadditive_ratio(200).unwrap());
    assert!(DehnModel::polynomial(3).check_superadditive_ratio(100).unwrap());
    assert!(!DehnModel::polynomial(1).superadditive);
    assert!(!parity_model(300).check_superadditive_ratio(200).unwrap());
    assert!(parity_model(10).eval(10).is_err());
    assert_eq!(parity_model(10).eval(3).unwrap(), 159);
}

#[test]
fn loop_files_round_trip() {
    let src = "# sample\nY(1,2)\n\nY(1,2,-)\ne\nZ(1,1,4,1,+)\nZ(1,1,4,1,-)\n";
    let l: KernelLoop = src.parse().unwrap();
    assert_eq!(l.len(), 5);
    assert_eq!(l.steps[2], None);
    assert_eq!(l.to_string().parse::<KernelLoop>().unwrap(), l);
    assert!("Q(1)".parse::<KernelLoop>().is_err());
    let t = triangle(3);
    l.validate(t.lattice()).unwrap();
    let open: KernelLoop = "Z(1,1,4,1,+)\nZ(1,1,4,1,+)\ne\n".parse().unwrap();
    assert!(matches!(open.validate(t.lattice()), Err(FillerError::Loop(_))));
}

#[test]
fn random_loops_are_deterministic_kernel_loops() {
    let t = triangle(3);
    let lat = t.lattice();
    let small = random_kernel_loop(&t, 3, 1).unwrap();
    assert_eq!(small, KernelLoop { steps: vec![None; 3] });
    assert_eq!(random_kernel_loop(&t, 48, 9).unwrap(), random_kernel_loop(&t, 48, 9).unwrap());
    assert_ne!(random_kernel_loop(&t, 48, 9).unwrap(), random_kernel_loop(&t, 48, 10).unwrap());
    let xbar: Vec<Generator> = lat.xbar();
    for seed in 0..100 {
        let l = random_kernel_loop(&t, 48, seed).unwrap();
        assert!((3..=48).contains(&l.len()));
        assert!(l.letters().len() > 10, "seed {seed}: length {}", l.len());
        l.validate(lat).unwrap();
        for letter in l.letters() {
            assert!(xbar.contains(&letter.gen));
            assert!(lat.instance().in_kernel(&lat.realize_letter(letter).unwrap()).unwrap());
        }
        assert!(lat.evaluate(&l.letters()).unwrap().is_identity());
    }
}

#[test]
fn trivial_loop_costs_only_bigons() {
    let t = triangle(3);
    let r = Filler::new(&t, DehnModel::quadratic()).fill(&stays(3)).unwrap();
    assert_eq!(r.m, 49);
    assert_eq!(r.triangles.len(), 1);
    assert_eq!(r.exact_sum, 49 * 3);
    assert_eq!(r.closed_form_bound, 100 * 96 * 96 + 49 * 3);
    assert_eq!(r.branch, Branch::Superadditive);
    assert_eq!(r.max_bigon_perimeter, 0);
    assert!(r.pass);
}

#[test]
fn quadratic_closed_form() {
    let t = triangle(3);
    let f = Filler::new(&t, DehnModel::quadratic());
    for k in 0..6u32 {
        let n = 3u128 << k;
        assert_eq!(f.closed_form(k).unwrap().2, 100 * (32 * n) * (32 * n) + 49 * n);
    }
    let g = Filler::new(&t, parity_model(24 * 96 + 1));
    let (branch, bar, v) = g.closed_form(5).unwrap();
    assert_eq!(branch, Branch::Log);
    let bar = bar.unwrap();
    // the closure of the parity table is reached by odd parts of size 1
    let odd_one = 51u128 * 24 * 96;
    assert!(bar >= odd_one);
    assert_eq!(v, (75 * 5 + 25) * bar + g.closed_form(5).unwrap().2 - (75 * 5 + 25) * bar);
}

#[test]
fn unset_bigon_constant_is_a_configuration_error() {
    let t = triangle(3);
    let f = Filler::new(&t, DehnModel::quadratic()).with_m(None);
    assert!(matches!(f.fill(&stays(3)), Err(FillerError::Config(_))));
}

#[test]
fn random_loops_fill_within_both_bounds() {
    let t = triangle(3);
    let quad = Filler::new(&t, DehnModel::quadratic());
    let parity = Filler::new(&t, parity_model(40_000));
    for (seed, target) in [(0u64, 7usize), (1, 12), (2, 24), (3, 48), (4, 40)] {
        let l = random_kernel_loop(&t, target, seed).unwrap();
        let q = quad.fill(&l).unwrap();
        assert!(q.pass, "{}", q.to_text());
        assert!(q.exact_sum <= q.closed_form_bound);
        assert!(q.refined_sum <= q.exact_sum);
        assert!(q.max_bigon_perimeter <= 7);
        assert_eq!(q.bigon_count, q.n as u64);
        assert_eq!(q.triangles.len() as u64, q.census.nondegenerate);
        assert_eq!(q.shared_sides as u64, q.census.nondegenerate - 1);
        let p = parity.fill(&l).unwrap();
        assert_eq!(p.branch, Branch::Log);
        assert!(p.pass, "{}", p.to_text());
        assert_eq!(p.m, 7 * 7 + 50 * 7);
    }
}

#[test]
fn tessellation_attaches_prefix_values() {
    let t = triangle(3);
    let l = random_kernel_loop(&t, 24, 5).unwrap();
    let (padded, k) = pad_loop(&l).unwrap();
    let d = tessellate(t.lattice(), &padded).unwrap();
    let p = padded.prefixes(t.lattice()).unwrap();
    assert_eq!(d.k, k);
    assert!(p[padded.len()].is_identity());
    for tri in d.triangles.iter().filter(|x| !x.degenerate) {
        let vals = tri.values.as_ref().unwrap();
        for r in 0..3 {
            assert_eq!(vals[r], p[(tri.positions[r] / QUARTER) as usize]);
        }
    }
    assert!(tessellate(t.lattice(), &stays(7)).is_err());
}
