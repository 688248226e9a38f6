//! Which face groups border each edge group in the algebraic triangle.

use crate::label::Label;
use crate::label::Label::*;

/// Edge groups of one third of the triangle with every face they border there.
const THIRD: &[(Label, &[Label])] = &[
    (EdgeGN(6), &[GN(3), AGN(6)]),
    (EdgeGN(3), &[GN(3), AGN(3)]),
    (EdgeAN(6), &[AGN(3), AAN(3)]),
    (EdgeAN(3), &[AGN(6), AAN(3)]),
    (EdgeA(3), &[AAN(3), AG(1), L]),
    (EdgeG(3), &[AGN(3), G3(1)]),
    (EdgeG(6), &[AGN(6), G3(6)]),
    (EdgeGG { start: 1, slots: [4, 5, 6] }, &[G3(1), AG(1)]),
    (EdgeGG { start: 1, slots: [4, 5, 3] }, &[G3(6), AG(1)]),
    (EdgeA(1), &[AG(2), L]),
    (EdgeGG { start: 2, slots: [4, 5, 6] }, &[G3(1), AG(2)]),
    (EdgeGG { start: 2, slots: [1, 5, 6] }, &[AG(2), G3(2)]),
];

/// Every edge group with the faces adjacent to it, closed under rotation.
pub fn adjacency() -> Vec<(Label, Vec<Label>)> {
    let mut out: Vec<(Label, Vec<Label>)> = Vec::new();
    for r in 0..3 {
        for (e, faces) in THIRD {
            let e = e.rotate(r);
            let idx = match out.iter().position(|(x, _)| *x == e) {
                Some(i) => i,
                None => {
                    out.push((e, Vec::new()));
                    out.len() - 1
                }
            };
            for f in faces.iter() {
                let f = f.rotate(r);
                if !out[idx].1.contains(&f) {
                    out[idx].1.push(f);
                }
            }
        }
    }
    out
}
