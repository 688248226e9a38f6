//! Generating sets and determinacy index sets of every face and edge group.

use kerphi_product::Instance;

use crate::gen::Generator;
use crate::label::Label;
use crate::seq::{class3, class6, LabelSequences};

/// Classes of the standard sinks shared by the non-standard groups of class `t`.
pub fn std_sink_classes(t: usize) -> [usize; 2] {
    match t {
        1 => [2, 3],
        2 => [1, 6],
        _ => [4, 5],
    }
}

fn cyc(start: usize, len: usize) -> Vec<usize> {
    (0..len).map(|d| class6((start + d) as i64)).collect()
}

/// Source classes and standard sink classes of each label, if it has that shape.
fn sources_and_sinks(label: Label) -> Option<(Vec<usize>, Vec<usize>)> {
    let complement = |src: &[usize]| (1..=6).filter(|c| !src.contains(c)).collect::<Vec<_>>();
    Some(match label {
        Label::G3(c) => {
            let s = cyc(c as usize, 3);
            let t = complement(&s);
            (s, t)
        }
        Label::AG(c) => {
            let s = cyc(c as usize, 2);
            let t = complement(&s);
            (s, t)
        }
        Label::GN(t) => (vec![t as usize, t as usize + 3], std_sink_classes(t as usize).to_vec()),
        Label::AGN(k) | Label::EdgeG(k) => {
            let k = k as usize;
            let mut sinks = std_sink_classes(class3(k as i64)).to_vec();
            sinks.push(class6(k as i64 + 3));
            (vec![k], sinks)
        }
        Label::EdgeGN(k) => (vec![k as usize], std_sink_classes(class3(k as i64)).to_vec()),
        Label::EdgeGG { start, slots } => (cyc(start as usize, 2), slots.iter().map(|&s| s as usize).collect()),
        _ => return None,
    })
}

fn push_z(inst: &Instance, out: &mut Vec<Generator>, j: usize, i: usize, k: usize) {
    let size = inst.decomposition().block_sizes()[j - 1];
    out.extend((1..=size).map(|b| Generator::Z { j, i, k, b }));
}

fn push_y(inst: &Instance, out: &mut Vec<Generator>, i: usize) {
    let p = inst.factors()[i - 1].spec().generator_count();
    out.extend((0..p).map(|idx| Generator::Y { i, idx }));
}

/// The defining generating set of `label`, in definition order.
pub fn generators(label: Label, seq: &LabelSequences, inst: &Instance) -> Vec<Generator> {
    let n = seq.n();
    let mut out = Vec::new();
    if let Some((src, sinks)) = sources_and_sinks(label) {
        let sink_coords = seq.union(&sinks);
        let ns_class = if label.is_nonstandard() { label.block_class() } else { None };
        for i in seq.union(&src) {
            push_y(inst, &mut out, i);
            for &k in &sink_coords {
                push_z(inst, &mut out, seq.star(k), i, k);
            }
            if let Some(t) = ns_class {
                for &j in seq.alpha(t) {
                    push_z(inst, &mut out, j, i, seq.ns_coord(j));
                }
            }
        }
        return out;
    }
    match label {
        Label::L => {
            for j in 1..=n {
                push_z(inst, &mut out, j, j, j + n);
            }
        }
        Label::AAN(t) => {
            for &j in seq.alpha(t as usize) {
                push_z(inst, &mut out, j, j, j + n);
                push_z(inst, &mut out, j, j, seq.ns_coord(j));
            }
        }
        Label::EdgeAN(s) => {
            let s = s as usize;
            for &j in seq.alpha(class3(s as i64)) {
                push_z(inst, &mut out, j, seq.std_coord(j, s), seq.ns_coord(j));
            }
        }
        Label::EdgeA(t) => {
            for &j in seq.alpha(t as usize) {
                push_z(inst, &mut out, j, j, j + n);
            }
        }
        _ => unreachable!("labels with sources are handled above"),
    }
    out
}

/// An index set `A` together with the block read off at each coordinate of its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetSpec {
    pub a_set: Vec<usize>,
    pub b_blocks: Vec<(usize, usize)>,
}

impl DetSpec {
    fn standard(seq: &LabelSequences, a_classes: &[usize]) -> Self {
        Self::from_a(seq, seq.union(a_classes))
    }

    fn from_a(seq: &LabelSequences, mut a_set: Vec<usize>) -> Self {
        a_set.sort_unstable();
        let b_blocks = (1..=2 * seq.n())
            .filter(|k| !a_set.contains(k))
            .map(|k| (k, seq.star(k)))
            .collect();
        Self { a_set, b_blocks }
    }

    /// The common determinacy data of the non-standard groups of class `t`.
    pub fn nonstandard(seq: &LabelSequences, t: usize) -> Self {
        let mut b_blocks: Vec<(usize, usize)> = seq
            .union(&std_sink_classes(t))
            .into_iter()
            .map(|k| (k, seq.star(k)))
            .collect();
        b_blocks.extend(seq.alpha(t).iter().map(|&j| (seq.ns_coord(j), j)));
        b_blocks.sort_unstable();
        let a_set = (1..=2 * seq.n())
            .filter(|k| !b_blocks.iter().any(|&(c, _)| c == *k))
            .collect();
        Self { a_set, b_blocks }
    }

    /// Block expected at coordinate `k ∈ B`.
    pub fn block_at(&self, k: usize) -> Option<usize> {
        self.b_blocks.iter().find(|&&(c, _)| c == k).map(|&(_, j)| j)
    }
}

/// Every admissible index set `A` of `label`.
pub fn det_specs(label: Label, seq: &LabelSequences) -> Vec<DetSpec> {
    match label {
        Label::G3(c) => vec![DetSpec::standard(seq, &cyc(c as usize, 3))],
        Label::AG(c) => vec![
            DetSpec::standard(seq, &cyc(c as usize, 3)),
            DetSpec::standard(seq, &cyc(class6(c as i64 - 1), 3)),
        ],
        Label::L => vec![DetSpec::standard(seq, &[1, 2, 3]), DetSpec::standard(seq, &[4, 5, 6])],
        Label::EdgeA(_) => vec![DetSpec::standard(seq, &[1, 2, 3]), DetSpec::standard(seq, &[4, 5, 6])],
        Label::EdgeG(_) | Label::EdgeGG { .. } => {
            let (_, sinks) = sources_and_sinks(label).expect("edge with sources");
            vec![DetSpec::standard(seq, &(1..=6).filter(|c| !sinks.contains(c)).collect::<Vec<_>>())]
        }
        _ => vec![DetSpec::nonstandard(seq, label.block_class().expect("non-standard label"))],
    }
}
